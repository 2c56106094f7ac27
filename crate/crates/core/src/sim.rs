//! Greatest L-simulations and k-simulations between finite interpretations.
//!
//! One refinement pass answers both questions. Starting from the pairs that
//! satisfy (Atom), round `i` removes the pairs violating (Rel) (and (iRel)
//! for ELI) relative to the pairs that survived round `i - 1`. The round in
//! which a pair disappears is recorded as its *level*: `(d₁, d₂)` is in the
//! greatest k-simulation iff `k < level`, and pairs that are never removed
//! form the greatest simulation. Only pairs depending on a pair removed in
//! the previous round are rechecked.

use std::collections::BTreeSet;

use crate::interp::{Elem, Interpretation, PointedInterp};
use crate::syntax::{Base, Logic, Role, Sym};

/// Level of pairs that survive every round.
pub const UNBOUNDED: u32 = u32::MAX;

/// A relation between the domains of two interpretations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Simulation {
    pub pairs: BTreeSet<(Elem, Elem)>,
    /// Every element of the left interpretation has a partner.
    pub total: bool,
}

impl Simulation {
    pub fn image(&self, d: Elem) -> BTreeSet<Elem> {
        self.pairs.range((d, 0)..=(d, Elem::MAX)).map(|&(_, e)| e).collect()
    }

    pub fn contains(&self, d: Elem, e: Elem) -> bool {
        self.pairs.contains(&(d, e))
    }

    /// Restates the relation by element names (for certificates).
    pub fn named_pairs(&self, i1: &Interpretation, i2: &Interpretation) -> Vec<(String, String)> {
        self.pairs.iter().map(|&(d, e)| (i1.element_name(d).to_string(), i2.element_name(e).to_string())).collect()
    }
}

/// Removal levels for every pair of elements.
#[derive(Clone, Debug)]
pub struct SimTable {
    n1: usize,
    n2: usize,
    level: Vec<u32>,
}

fn role_succ<'a>(i: &'a Interpretation, e: Elem, r: &'a Sym, inverse: bool) -> impl Iterator<Item = Elem> + 'a {
    let set = if inverse { i.in_edges(e) } else { i.out_edges(e) };
    set.range((r.clone(), 0)..=(r.clone(), Elem::MAX)).map(|(_, x)| *x)
}

impl SimTable {
    pub fn compute(base: Base, i1: &Interpretation, i2: &Interpretation) -> SimTable {
        let (n1, n2) = (i1.len(), i2.len());
        let mut level = vec![UNBOUNDED; n1 * n2];
        let mut candidates = Vec::new();
        for d in 0..n1 {
            for e in 0..n2 {
                if i1.labels(d).is_subset(i2.labels(e)) {
                    candidates.push((d, e));
                } else {
                    level[d * n2 + e] = 0;
                }
            }
        }
        let eli = base == Base::Eli;
        let mut stamp = vec![u32::MAX; n1 * n2];
        let mut round: u32 = 0;
        loop {
            // Membership in R_round is `level > round`.
            let in_round = |level: &[u32], x: Elem, y: Elem| level[x * n2 + y] > round;
            let violates = |level: &[u32], d: Elem, e: Elem| -> bool {
                let forward = i1
                    .out_edges(d)
                    .iter()
                    .any(|(r, d2)| !role_succ(i2, e, r, false).any(|e2| in_round(level, *d2, e2)));
                forward
                    || (eli
                        && i1
                            .in_edges(d)
                            .iter()
                            .any(|(r, d2)| !role_succ(i2, e, r, true).any(|e2| in_round(level, *d2, e2))))
            };
            let removed: Vec<(Elem, Elem)> = candidates
                .iter()
                .copied()
                .filter(|&(d, e)| level[d * n2 + e] == UNBOUNDED && violates(&level, d, e))
                .collect();
            if removed.is_empty() {
                break;
            }
            for &(d, e) in &removed {
                level[d * n2 + e] = round + 1;
            }
            round += 1;
            // Pairs whose check looked at a removed pair.
            let mut next = Vec::new();
            for &(x, y) in &removed {
                let mut push = |d: Elem, e: Elem, next: &mut Vec<(Elem, Elem)>| {
                    let k = d * n2 + e;
                    if level[k] == UNBOUNDED && stamp[k] != round {
                        stamp[k] = round;
                        next.push((d, e));
                    }
                };
                for (r, d) in i1.in_edges(x) {
                    for e in role_succ(i2, y, r, true) {
                        push(*d, e, &mut next);
                    }
                }
                if eli {
                    for (r, d) in i1.out_edges(x) {
                        for e in role_succ(i2, y, r, false) {
                            push(*d, e, &mut next);
                        }
                    }
                }
            }
            next.sort_unstable();
            candidates = next;
        }
        SimTable { n1, n2, level }
    }

    pub fn level(&self, d1: Elem, d2: Elem) -> u32 {
        self.level[d1 * self.n2 + d2]
    }

    /// `(d₁, d₂)` belongs to the greatest k-simulation.
    pub fn related(&self, k: usize, d1: Elem, d2: Elem) -> bool {
        let l = self.level(d1, d2);
        l == UNBOUNDED || (k as u64) < u64::from(l)
    }

    pub fn in_greatest(&self, d1: Elem, d2: Elem) -> bool {
        self.level(d1, d2) == UNBOUNDED
    }

    fn rows(&self) -> usize {
        self.n1
    }

    /// Smallest `k` such that every pair in the k-relation of row `d₁` is in
    /// the greatest simulation. Characteristic concepts of this depth at
    /// `d₁` already pin down full simulation.
    pub fn row_depth(&self, d1: Elem) -> usize {
        (0..self.n2)
            .map(|e| self.level(d1, e))
            .filter(|&l| l != UNBOUNDED)
            .max()
            .unwrap_or(0) as usize
    }

    /// Smallest `k` from which the k-relations no longer change.
    pub fn stabilization(&self) -> usize {
        self.level.iter().copied().filter(|&l| l != UNBOUNDED).max().unwrap_or(0) as usize
    }

    /// Every left element has a partner, at depth `k` or in the greatest
    /// simulation (`None`).
    pub fn total_at(&self, k: Option<usize>) -> bool {
        (0..self.rows()).all(|d| (0..self.n2).any(|e| self.related_at(k, d, e)))
    }

    fn related_at(&self, k: Option<usize>, d: Elem, e: Elem) -> bool {
        match k {
            Some(k) => self.related(k, d, e),
            None => self.in_greatest(d, e),
        }
    }

    /// Left elements with no partner in the greatest simulation.
    pub fn unmatched(&self) -> Vec<Elem> {
        (0..self.rows()).filter(|&d| (0..self.n2).all(|e| !self.in_greatest(d, e))).collect()
    }

    pub fn greatest(&self) -> Simulation {
        let mut pairs = BTreeSet::new();
        for d in 0..self.rows() {
            for e in 0..self.n2 {
                if self.in_greatest(d, e) {
                    pairs.insert((d, e));
                }
            }
        }
        Simulation { pairs, total: self.total_at(None) }
    }

    /// The part of the greatest simulation needed to justify the pairs of
    /// elements without incoming edges: those pairs, closed under taking
    /// every partner of every role step. Elements never reached this way
    /// keep all their pairs. Totality is the same as for the greatest one.
    pub fn supported(&self, base: Base, i1: &Interpretation, i2: &Interpretation) -> Simulation {
        let mut pairs = BTreeSet::new();
        let mut stack = Vec::new();
        let seed = |d: Elem, pairs: &mut BTreeSet<(Elem, Elem)>, stack: &mut Vec<(Elem, Elem)>| {
            for e in 0..self.n2 {
                if self.in_greatest(d, e) && pairs.insert((d, e)) {
                    stack.push((d, e));
                }
            }
        };
        let roots: Vec<Elem> = i1.elements().filter(|&d| i1.in_edges(d).is_empty()).collect();
        let mut pending = roots.into_iter().chain(i1.elements());
        loop {
            while let Some((d, e)) = stack.pop() {
                let mut steps: Vec<(Role, Elem)> =
                    i1.out_edges(d).iter().map(|(r, d2)| (Role::new(r.clone()), *d2)).collect();
                if base == Base::Eli {
                    steps.extend(i1.in_edges(d).iter().map(|(r, d2)| (Role::inv(r.clone()), *d2)));
                }
                for (r, d2) in steps {
                    for e2 in i2.neighbors(e, &r) {
                        if self.in_greatest(d2, e2) && pairs.insert((d2, e2)) {
                            stack.push((d2, e2));
                        }
                    }
                }
            }
            match pending.find(|&d| !pairs.iter().any(|&(x, _)| x == d)) {
                Some(d) => seed(d, &mut pairs, &mut stack),
                None => break,
            }
        }
        Simulation { pairs, total: self.total_at(None) }
    }
}

/// Greatest relation satisfying (Atom), (Rel) and, for ELI, (iRel). The
/// `total` flag tells whether it is left-total; for ⊥-logics an
/// L-simulation exists iff it is.
pub fn max_simulation(logic: Logic, i1: &Interpretation, i2: &Interpretation) -> Simulation {
    SimTable::compute(logic.base, i1, i2).greatest()
}

/// `(I₁, d₁) ≼_L (I₂, d₂)`.
pub fn simulates(logic: Logic, (i1, d1): (&Interpretation, Elem), (i2, d2): (&Interpretation, Elem)) -> bool {
    let t = SimTable::compute(logic.base, i1, i2);
    t.in_greatest(d1, d2) && (!logic.bottom || t.total_at(None))
}

/// `(I₁, d₁) ≼^k_L (I₂, d₂)`.
pub fn k_simulates(logic: Logic, k: usize, (i1, d1): (&Interpretation, Elem), (i2, d2): (&Interpretation, Elem)) -> bool {
    let t = SimTable::compute(logic.base, i1, i2);
    t.related(k, d1, d2) && (!logic.bottom || t.total_at(Some(k)))
}

pub fn simulates_pointed(logic: Logic, p1: &PointedInterp, p2: &PointedInterp) -> bool {
    simulates(logic, (&p1.interp, p1.point), (&p2.interp, p2.point))
}

/// Checks (Atom), (Rel), (iRel) for ELI, and (Tot) for ⊥-logics. Returns a
/// description of the first violation.
pub fn audit_simulation(
    logic: Logic,
    i1: &Interpretation,
    i2: &Interpretation,
    pairs: &BTreeSet<(Elem, Elem)>,
) -> Result<(), String> {
    for &(d, e) in pairs {
        if d >= i1.len() || e >= i2.len() {
            return Err(format!("pair ({d},{e}) outside the domains"));
        }
        if !i1.labels(d).is_subset(i2.labels(e)) {
            return Err(format!("(Atom) fails at ({}, {})", i1.element_name(d), i2.element_name(e)));
        }
        let mut roles: Vec<Role> = i1.out_edges(d).iter().map(|(r, _)| Role::new(r.clone())).collect();
        if logic.base == Base::Eli {
            roles.extend(i1.in_edges(d).iter().map(|(r, _)| Role::inv(r.clone())));
        }
        roles.dedup();
        for r in &roles {
            for d2 in i1.neighbors(d, r) {
                if !i2.neighbors(e, r).any(|e2| pairs.contains(&(d2, e2))) {
                    return Err(format!(
                        "step {} from ({}, {}) has no partner",
                        r,
                        i1.element_name(d),
                        i2.element_name(e)
                    ));
                }
            }
        }
    }
    if logic.bottom {
        for d in i1.elements() {
            if !pairs.iter().any(|&(x, _)| x == d) {
                return Err(format!("(Tot) fails: {} has no partner", i1.element_name(d)));
            }
        }
    }
    Ok(())
}
