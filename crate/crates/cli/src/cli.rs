//! Subcommands and exit codes.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use hornfit::entail::{chase_universal_model, check_chase_input, tree_chase};
use hornfit::fit::verify::entailment;
use hornfit::fit::{decide, gen_coloring_instance, synthesize, verify_fit, FitConfig, FitDecision, Synthesis, Tri, Verdict};
use hornfit::sim::SimTable;
use hornfit::{ExampleCollection, Logic, QueryLang};
use thiserror::Error;

use crate::format::{self, Flavor, FormatError};
use crate::report::Report;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_CANT_CREATE: i32 = 73;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {err}")]
    Parse { path: String, err: FormatError },
    #[error("cannot read {path}: {err}")]
    Read { path: String, err: std::io::Error },
    #[error("cannot write {path}: {err}")]
    Write { path: String, err: std::io::Error },
    #[error("{0}")]
    Core(#[from] hornfit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse { .. } => EXIT_DATA,
            CliError::Read { .. } => EXIT_NO_INPUT,
            CliError::Write { .. } => EXIT_CANT_CREATE,
            CliError::Core(hornfit::Error::Invalid(_) | hornfit::Error::Logic(_)) => EXIT_DATA,
            CliError::Core(_) => EXIT_SOFTWARE,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "hornfit", version, about = "Fit Horn description-logic ontologies to labeled examples")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Tuning {
    /// Override the instance's logic.
    #[arg(long, value_parser = ["el", "elb", "eli", "elib"])]
    logic: Option<String>,
    /// Override the instance's query language.
    #[arg(long = "query-lang", value_parser = ["consistency", "aq", "cq", "ucq"])]
    query_lang: Option<String>,
    /// Largest domain per negative tried by the ELI witness search.
    #[arg(long = "max-witness-size", default_value_t = 4)]
    max_witness_size: usize,
    /// Depth of the tree chase in bounded (ELI) reasoning.
    #[arg(long = "chase-depth", default_value_t = 4)]
    chase_depth: usize,
    /// Countermodels may use this many elements beyond the individuals.
    #[arg(long = "model-bound", default_value_t = 2)]
    model_bound: usize,
}

impl Tuning {
    fn config(&self) -> FitConfig {
        FitConfig {
            max_witness_size: self.max_witness_size,
            chase_depth: self.chase_depth,
            model_extra: self.model_bound,
            ..FitConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide whether a fitting ontology exists; on YES write one.
    Decide {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, default_value = "char", value_parser = ["char", "poly", "interp", "vbar"])]
        synthesis: String,
        /// Where to write the ontology (default: `<input stem>.fit.ont` next to the input).
        #[arg(long)]
        out: Option<String>,
    },
    /// Print a fitting ontology, or fail if there is none.
    Synth {
        #[arg(long = "in")]
        input: String,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, default_value = "char", value_parser = ["char", "poly", "interp", "vbar"])]
        synthesis: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check that an ontology fits an instance.
    Verify {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        ontology: String,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Decide whether ABox and ontology entail a query (or are inconsistent).
    Entail {
        #[arg(long)]
        abox: String,
        #[arg(long)]
        ontology: String,
        /// A file holding `(query ...)`; without it, checks inconsistency.
        #[arg(long)]
        query: Option<String>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Compute the greatest simulation from one ABox into another.
    Sim {
        #[arg(long, value_parser = ["el", "elb", "eli", "elib"])]
        logic: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Chase an ABox with an ontology and print the resulting model.
    Chase {
        #[arg(long)]
        abox: String,
        #[arg(long)]
        ontology: String,
        #[arg(long = "chase-depth", default_value_t = 4)]
        chase_depth: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Generate a fitting instance from a graph and protected vertices.
    GenColoring {
        /// Edge list, one `u v` pair per line; `vertices N` declares isolated vertices.
        #[arg(long)]
        graph: String,
        /// Comma-separated protected vertices (may be empty).
        #[arg(long, default_value = "")]
        protected: String,
        #[arg(long, default_value = "el", value_parser = ["el", "elb"])]
        logic: String,
        #[arg(long)]
        out: Option<String>,
    },
}

/// Runs the command line `argv` (including the program name), writing the
/// report to `out`. Returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok((report, code)) => {
            let _ = out.write_all(report.render().as_bytes());
            code
        }
        Err(e) => {
            let mut r = Report::new("error");
            r.put("error", &e);
            let _ = out.write_all(r.render().as_bytes());
            e.exit_code()
        }
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|err| CliError::Read { path: path.to_string(), err })
}

fn write(path: &str, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|err| CliError::Write { path: path.to_string(), err })
}

fn parsed<T>(path: &str, r: std::result::Result<T, FormatError>) -> Result<T> {
    r.map_err(|err| CliError::Parse { path: path.to_string(), err })
}

/// Reads, overrides and normalizes an instance.
fn load_instance(path: &str, t: &Tuning) -> Result<ExampleCollection> {
    let text = read(path)?;
    let mut e = parsed(path, format::parse_instance_as(&text, Flavor::of_path(path)))?;
    if let Some(l) = &t.logic {
        e.logic = Logic::parse(l).expect("validated by clap");
    }
    if let Some(l) = &t.query_lang {
        e.lang = QueryLang::parse(l).expect("validated by clap");
    }
    e.validate()?;
    Ok(e.normalized())
}

fn load_ontology(path: &str, logic: Option<Logic>) -> Result<hornfit::Ontology> {
    let text = read(path)?;
    parsed(path, format::parse_ontology_as(&text, logic, Flavor::of_path(path)))
}

fn load_abox(path: &str) -> Result<hornfit::ABox> {
    let text = read(path)?;
    parsed(path, format::parse_abox_as(&text, Flavor::of_path(path)))
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn tri_code(t: Tri) -> i32 {
    match t {
        Tri::True => EXIT_YES,
        Tri::False => EXIT_NO,
        Tri::Unknown => EXIT_UNKNOWN,
    }
}

fn default_out(input: &str) -> String {
    let p = Path::new(input);
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
    dir.join(format!("{stem}.fit.ont")).to_string_lossy().into_owned()
}

fn describe(r: &mut Report, e: &ExampleCollection, d: &FitDecision) {
    r.put("logic", e.logic.tag());
    r.put("query-lang", e.lang.tag());
    r.put("positives", e.positives.len());
    r.put("negatives", e.negatives.len());
    r.put("verdict", d.verdict);
    if let Some(c) = &d.certificate {
        r.put("certificate", c);
    }
    if let Some(b) = d.bound {
        r.put("bound", b);
    }
}

fn fit(input: &str, tuning: &Tuning, synthesis: &str, command: &str) -> Result<(Report, ExampleCollection, FitDecision, Option<String>)> {
    let mut r = Report::new(command);
    let cfg = tuning.config();
    let e = r.timed("parse", || load_instance(input, tuning))?;
    let d = r.timed("decide", || decide(&e, &cfg))?;
    describe(&mut r, &e, &d);
    let mut text = None;
    if d.verdict == Verdict::Yes {
        let mode = Synthesis::parse(synthesis).expect("validated by clap");
        let o = r.timed("synthesize", || synthesize(&e, &d, mode, &cfg))?;
        r.put("synthesis", synthesis);
        r.put("cis", o.len());
        text = Some(o);
    }
    let text = text.map(|o| format::serialize_ontology(&o, Flavor::Text));
    Ok((r, e, d, text))
}

fn dispatch(cmd: Cmd) -> Result<(Report, i32)> {
    match cmd {
        Cmd::Decide { input, tuning, synthesis, out } => {
            let (mut r, _, d, text) = fit(&input, &tuning, &synthesis, "decide")?;
            if let Some(text) = text {
                let path = out.unwrap_or_else(|| default_out(&input));
                let text = reflavor(&path, text)?;
                write(&path, &text)?;
                r.put("ontology", path);
            }
            Ok((r, verdict_code(d.verdict)))
        }
        Cmd::Synth { input, tuning, synthesis, out } => {
            let (mut r, _, d, text) = fit(&input, &tuning, &synthesis, "synth")?;
            match (text, out) {
                (Some(text), Some(path)) => {
                    let text = reflavor(&path, text)?;
                    write(&path, &text)?;
                    r.put("ontology", path);
                }
                (Some(text), None) => r.put("ontology", text.trim_end()),
                (None, _) => {}
            }
            Ok((r, verdict_code(d.verdict)))
        }
        Cmd::Verify { input, ontology, tuning } => {
            let mut r = Report::new("verify");
            let cfg = tuning.config();
            let e = r.timed("parse", || load_instance(&input, &tuning))?;
            let o = load_ontology(&ontology, Some(e.logic))?;
            let v = r.timed("verify", || verify_fit(&o, &e, &cfg))?;
            r.put("logic", e.logic.tag());
            r.put("query-lang", e.lang.tag());
            let tags = |ts: &[Tri]| ts.iter().map(|t| t.tag()).collect::<Vec<_>>().join(" ");
            r.put("positives", tags(&v.positives));
            r.put("negatives", tags(&v.negatives));
            r.put("fits", v.overall.tag());
            Ok((r, tri_code(v.overall)))
        }
        Cmd::Entail { abox, ontology, query, tuning } => {
            let mut r = Report::new("entail");
            let cfg = tuning.config();
            let a = load_abox(&abox)?;
            let logic = tuning.logic.as_deref().and_then(Logic::parse);
            let o = load_ontology(&ontology, logic)?;
            let q = match &query {
                Some(p) => Some(parsed(p, format::parse_query(&read(p)?))?),
                None => None,
            };
            if let Some(q) = &q {
                if let Some(x) = q.individuals().into_iter().find(|x| !a.individuals().contains(x)) {
                    return Err(CliError::Usage(format!("query individual `{x}` does not occur in the ABox")));
                }
            }
            let bottom = logic.is_none_or(|l| l.bottom);
            let t = r.timed("entail", || entailment(&a, q.as_ref(), &o, bottom, &cfg))?;
            r.put("goal", if q.is_some() { "query" } else { "inconsistency" });
            r.put("entailed", t.tag());
            Ok((r, tri_code(t)))
        }
        Cmd::Sim { logic, from, to } => {
            let mut r = Report::new("sim");
            let logic = Logic::parse(&logic).expect("validated by clap");
            let (a, b) = (load_abox(&from)?, load_abox(&to)?);
            let (i1, i2) = (a.to_interpretation(), b.to_interpretation());
            let table = r.timed("simulate", || SimTable::compute(logic.base, &i1, &i2));
            let s = table.greatest();
            let total = s.total;
            r.put("logic", logic.tag());
            r.put("total", total);
            let pairs: Vec<String> = s.named_pairs(&i1, &i2).iter().map(|(x, y)| format!("({x},{y})")).collect();
            r.put("simulation", pairs.join(" "));
            if !total {
                let names: Vec<&str> = table.unmatched().into_iter().map(|d| i1.element_name(d)).collect();
                r.put("unmatched", names.join(" "));
            }
            Ok((r, if total { EXIT_YES } else { EXIT_NO }))
        }
        Cmd::Chase { abox, ontology, chase_depth, out } => {
            let mut r = Report::new("chase");
            let a = load_abox(&abox)?;
            let o = load_ontology(&ontology, None)?;
            let (model, inconsistent, complete, kind) = if check_chase_input(&o).is_ok() {
                let m = r.timed("chase", || chase_universal_model(&a, &o))?;
                (m.interp, m.inconsistent, true, "universal")
            } else {
                let t = r.timed("chase", || tree_chase(&a, &o, chase_depth))?;
                (t.interp, t.inconsistent, t.complete, "tree")
            };
            r.put("kind", kind);
            r.put("consistent", !inconsistent);
            r.put("complete", complete);
            r.put("elements", model.len());
            let text = format::write_interp(&model);
            match out {
                Some(p) => {
                    write(&p, &(text + "\n"))?;
                    r.put("model", p);
                }
                None => r.put("model", text),
            }
            Ok((r, if inconsistent { EXIT_NO } else { EXIT_YES }))
        }
        Cmd::GenColoring { graph, protected, logic, out } => {
            let mut r = Report::new("gen-coloring");
            let (n, edges) = parse_graph(&graph, &read(&graph)?)?;
            let prot = parse_protected(&protected, n)?;
            // protected vertices first, in the given order
            let mut order: Vec<usize> = prot.clone();
            order.extend((1..=n).filter(|v| !prot.contains(v)));
            let rank = |v: usize| order.iter().position(|&x| x == v).unwrap() + 1;
            let relabeled: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (rank(u), rank(v))).collect();
            let logic = Logic::parse(&logic).expect("validated by clap");
            let e = gen_coloring_instance(n, &relabeled, prot.len(), logic)?;
            let text = format::serialize_instance(&e, out.as_deref().map_or(Flavor::Text, Flavor::of_path));
            r.put("vertices", n);
            r.put("edges", edges.len());
            r.put("protected", prot.len());
            match out {
                Some(p) => {
                    write(&p, &text)?;
                    r.put("instance", p);
                }
                None => r.put("instance", text.trim_end()),
            }
            Ok((r, EXIT_YES))
        }
    }
}

fn reflavor(path: &str, text: String) -> Result<String> {
    if Flavor::of_path(path) == Flavor::Text {
        return Ok(text);
    }
    let o = format::parse_ontology(&text, None).map_err(|err| CliError::Parse { path: path.to_string(), err })?;
    Ok(format::serialize_ontology(&o, Flavor::Json))
}

/// `u v` per line (1-based vertices); `vertices N` raises the vertex count;
/// `#` starts a comment.
pub fn parse_graph(path: &str, text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut n = 0;
    let mut edges = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| CliError::Parse {
            path: path.to_string(),
            err: FormatError {
                kind: format::ErrorKind::Syntax,
                pos: Some(crate::sexp::Pos { line: k + 1, col: 1 }),
                msg: msg.to_string(),
            },
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[..] {
            ["vertices", m] => n = n.max(m.parse().map_err(|_| bad("bad vertex count"))?),
            [u, v] => {
                let u: usize = u.parse().map_err(|_| bad("vertices are positive integers"))?;
                let v: usize = v.parse().map_err(|_| bad("vertices are positive integers"))?;
                if u == 0 || v == 0 {
                    return Err(bad("vertices are numbered from 1"));
                }
                if u == v {
                    return Err(bad("self-loops are not allowed"));
                }
                n = n.max(u).max(v);
                edges.push((u.min(v), u.max(v)));
            }
            _ => return Err(bad("expected `u v` or `vertices N`")),
        }
    }
    edges.sort();
    edges.dedup();
    Ok((n, edges))
}

fn parse_protected(s: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for w in s.split(',').map(str::trim).filter(|w| !w.is_empty()) {
        match w.parse::<usize>() {
            Ok(v) if (1..=n).contains(&v) => {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
            _ => return Err(CliError::Usage(format!("--protected: `{w}` is not a vertex in 1..={n}"))),
        }
    }
    Ok(out)
}
