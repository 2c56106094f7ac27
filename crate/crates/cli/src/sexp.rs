//! A small s-expression reader with source positions.
//!
//! Atoms are runs of characters other than whitespace, parentheses, `;` and
//! `"`; a double-quoted string is also an atom (with `\"` and `\\`
//! escapes). `;` starts a comment running to the end of the line.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(xs, _) => Some(xs),
            Sexp::Atom(..) => None,
        }
    }

    /// The head symbol of a list like `(head ...)`.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|xs| xs.first()).and_then(Sexp::atom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub msg: String,
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Reader<'_> {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn err<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { pos, msg: msg.into() })
    }

    fn read(&mut self) -> Result<Option<Sexp>, SyntaxError> {
        self.skip_blank();
        let start = self.pos();
        let Some(&c) = self.chars.peek() else { return Ok(None) };
        match c {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        None => return self.err(start, "unclosed `(`"),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List(items, start)));
                        }
                        Some(_) => items.push(self.read()?.expect("input remains")),
                    }
                }
            }
            ')' => self.err(start, "unexpected `)`"),
            '"' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return self.err(start, "unterminated string"),
                        Some('"') => return Ok(Some(Sexp::Atom(s, start))),
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => s.push(c),
                            _ => return self.err(self.pos(), "bad escape in string"),
                        },
                        Some(c) => s.push(c),
                    }
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ';' | '"') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Atom(s, start)))
            }
        }
    }
}

/// Reads every top-level expression of `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, SyntaxError> {
    let mut r = Reader { chars: text.chars().peekable(), line: 1, col: 1 };
    let mut out = Vec::new();
    while let Some(x) = r.read()? {
        out.push(x);
    }
    Ok(out)
}

/// Writes `s` as an atom, quoting it when it would not read back as one.
pub fn atom(s: &str) -> String {
    let plain = !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ';' | '"' | '\\'));
    if plain {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let xs = read_all("; header\n(a (b c)) \"x y\"\n  d").unwrap();
        assert_eq!(xs.len(), 3);
        assert_eq!(xs[0].pos(), Pos { line: 2, col: 1 });
        assert_eq!(xs[0].list().unwrap()[1].pos(), Pos { line: 2, col: 4 });
        assert_eq!(xs[1].atom(), Some("x y"));
        assert_eq!(xs[2].pos(), Pos { line: 3, col: 3 });
    }

    #[test]
    fn unbalanced_input_is_located() {
        assert_eq!(read_all("(a\n (b)").unwrap_err().pos, Pos { line: 1, col: 1 });
        assert_eq!(read_all("a )").unwrap_err().pos, Pos { line: 1, col: 3 });
    }

    #[test]
    fn quoting_round_trips() {
        for s in ["a", "(a,b)", "x y", "q\"\\", ""] {
            let xs = read_all(&atom(s)).unwrap();
            assert_eq!(xs[0].atom(), Some(s));
        }
    }
}
