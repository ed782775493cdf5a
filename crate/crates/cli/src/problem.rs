//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! ring: x, y, z
//! variety: x^3 + x^2*y^2 + y^7 + z^2      # `;` between generators, may repeat
//! map: y + z^2 ; x^2 + x*y + y^2           # one or two components
//! linear: x + y, x - y + 3*z | x + y - z, x - y + 5*z
//! suspension: w ; w^3                      # new variables ; h
//! ```
//!
//! Only `ring:` is required. An empty or missing `variety:` is the smooth
//! ambient space. `linear:` lists linear functions whose differentials form
//! the reference collection, `,` inside a subcollection and `|` between them.

use std::fmt;
use std::path::Path;

use germinv_core::logarithmic::VarietyGerm;
use germinv_core::{parse_polynomial, Error, Polynomial, Ring, RingContext};

/// A problem-file error, located at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {diag}")]
    Invalid { path: String, diag: Diagnostic },
}

#[derive(Clone, Debug)]
pub struct Suspension {
    pub ring: Ring,
    pub h: Polynomial,
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Ring,
    pub variety: VarietyGerm,
    pub map: Vec<Polynomial>,
    pub linear: Option<Vec<Vec<Polynomial>>>,
    pub suspension: Option<Suspension>,
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}", self.ring.names().join(", "))?;
        let join = |ps: &[Polynomial], sep: &str| ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep);
        writeln!(f, "variety: {}", join(self.variety.generators(), " ; "))?;
        writeln!(f, "map: {}", join(&self.map, " ; "))?;
        if let Some(l) = &self.linear {
            let subs: Vec<String> = l.iter().map(|s| join(s, ", ")).collect();
            writeln!(f, "linear: {}", subs.join(" | "))?;
        }
        if let Some(s) = &self.suspension {
            writeln!(f, "suspension: {} ; {}", s.ring.names().join(", "), s.h)?;
        }
        Ok(())
    }
}

pub fn load_problem_file(path: &Path) -> Result<ProblemFile, LoadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: shown.clone(), source })?;
    parse_problem(&text).map_err(|diag| LoadError::Invalid { path: shown, diag })
}

/// A piece of a line: its 1-based column and trimmed text.
#[derive(Clone, Copy, Debug)]
struct Piece<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

impl<'a> Piece<'a> {
    fn error(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic { line: self.line, column: self.column, message: message.into() }
    }

    /// Splits on `sep`, trimming each part and keeping columns exact.
    fn split(&self, sep: char) -> Vec<Piece<'a>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, c) in self.text.char_indices().chain([(self.text.len(), sep)]) {
            if c == sep {
                out.push(self.sub(start, i));
                start = i + c.len_utf8();
            }
        }
        out
    }

    fn sub(&self, from: usize, to: usize) -> Piece<'a> {
        let raw = &self.text[from..to];
        let lead = raw.len() - raw.trim_start().len();
        Piece { line: self.line, column: self.column + self.text[..from + lead].chars().count(), text: raw.trim() }
    }

    fn column_at(&self, byte: usize) -> usize {
        self.column + self.text[..byte.min(self.text.len())].chars().count()
    }

    fn polynomial(&self, ring: &Ring) -> Result<Polynomial, Diagnostic> {
        if self.text.is_empty() {
            return Err(self.error("empty polynomial"));
        }
        parse_polynomial(self.text, ring).map_err(|e| match e {
            Error::Syntax { position, message } => Diagnostic {
                line: self.line,
                column: self.column_at(position),
                message: format!("syntax error: {message}"),
            },
            Error::UnknownVariable { name, position } => Diagnostic {
                line: self.line,
                column: self.column_at(position),
                message: format!("undeclared variable `{name}`"),
            },
            other => self.error(other.to_string()),
        })
    }

    fn vanishing_polynomial(&self, ring: &Ring, what: &str) -> Result<Polynomial, Diagnostic> {
        let p = self.polynomial(ring)?;
        if !p.vanishes_at_origin() {
            return Err(self.error(format!("{what} `{}` does not vanish at the origin", self.text)));
        }
        Ok(p)
    }
}

fn ring_from(piece: Piece<'_>) -> Result<Ring, Diagnostic> {
    let names: Vec<Piece<'_>> = piece.split(',');
    if let Some(empty) = names.iter().find(|n| n.text.is_empty()) {
        return Err(empty.error("empty variable name"));
    }
    RingContext::new(names.iter().map(|n| n.text)).map_err(|e| piece.error(e.to_string()))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, Diagnostic> {
    let mut entries: Vec<(&str, Piece<'_>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let whole = Piece { line: i + 1, column: 1, text: content };
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(whole.sub(0, content.len()).error("expected `key: value`"));
        };
        let key = whole.sub(0, colon);
        let value = whole.sub(colon + 1, content.len());
        match key.text {
            "ring" | "variety" | "map" | "linear" | "suspension" => {}
            other => return Err(key.error(format!("unknown key `{other}`"))),
        }
        let repeatable = key.text == "variety";
        if !repeatable && entries.iter().any(|(k, _)| *k == key.text) {
            return Err(key.error(format!("`{}:` given twice", key.text)));
        }
        entries.push((key.text, value));
    }
    let find = |k: &str| -> Vec<Piece<'_>> {
        entries.iter().filter(|(key, _)| *key == k).map(|(_, v)| *v).collect()
    };

    let ring_piece = find("ring").first().copied().ok_or(Diagnostic {
        line: 1,
        column: 1,
        message: "missing `ring:` declaration".into(),
    })?;
    let ring = ring_from(ring_piece)?;

    let mut generators = Vec::new();
    for v in find("variety") {
        if v.text.is_empty() {
            continue;
        }
        for g in v.split(';') {
            generators.push(g.vanishing_polynomial(&ring, "variety generator")?);
        }
    }
    let variety = VarietyGerm::new(&ring, generators).map_err(|e| ring_piece.error(e.to_string()))?;

    let mut map = Vec::new();
    if let Some(v) = find("map").first() {
        let parts = v.split(';');
        if parts.len() > 2 {
            return Err(v.error(format!("a map has one or two components, found {}", parts.len())));
        }
        for c in parts {
            map.push(c.vanishing_polynomial(&ring, "map component")?);
        }
    }

    let linear = match find("linear").first() {
        None => None,
        Some(v) => {
            let mut subs = Vec::new();
            for sub in v.split('|') {
                let mut forms = Vec::new();
                for form in sub.split(',') {
                    let p = form.polynomial(&ring)?;
                    if p.is_zero() || p.terms().iter().any(|(m, _)| m.degree() != 1) {
                        return Err(form.error(format!("`{}` is not a nonzero linear form", form.text)));
                    }
                    forms.push(p);
                }
                subs.push(forms);
            }
            Some(subs)
        }
    };

    let suspension = match find("suspension").first() {
        None => None,
        Some(v) => {
            let parts = v.split(';');
            let [vars, h] = parts.as_slice() else {
                return Err(v.error("expected `suspension: new variables ; h`"));
            };
            let t = ring_from(*vars)?;
            if let Some(clash) = t.names().iter().find(|n| ring.index_of(n).is_some()) {
                return Err(vars.error(format!("suspension variable `{clash}` is already declared in the ring")));
            }
            let h = h.vanishing_polynomial(&t, "suspension function")?;
            Some(Suspension { ring: t, h })
        }
    };

    Ok(ProblemFile { ring, variety, map, linear, suspension })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SURFACE: &str = "\
# the surface and its map to the plane
ring: x, y, z
variety: x^3 + x^2*y^2 + y^7 + z^2
map: y + z^2 ; x^2 + x*y + y^2
linear: x + y, x - y + 3*z | x + y - z, x - y + 5*z
";

    #[test]
    fn surface_file_loads() {
        let p = parse_problem(SURFACE).unwrap();
        assert_eq!(p.ring.nvars(), 3);
        assert_eq!(p.variety.generators().len(), 1);
        assert_eq!(p.map.len(), 2);
        assert_eq!(p.linear.as_ref().unwrap().len(), 2);
        assert!(p.suspension.is_none());
    }

    #[test]
    fn empty_variety_is_smooth() {
        let p = parse_problem("ring: x, y\nvariety:\nmap: x ; y^3 + x*y\n").unwrap();
        assert!(p.variety.generators().is_empty());
        assert_eq!(p.variety.dim(), 2);
    }

    #[test]
    fn constant_map_component_is_rejected() {
        let err = parse_problem("ring: x, y\nmap: x ; 1 + y\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 10));
        assert!(err.message.contains("does not vanish"), "{err}");
    }

    #[test]
    fn undeclared_variable_is_located() {
        let err = parse_problem("ring: x, y\nvariety: x^2 + q\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 16));
        assert!(err.message.contains("`q`"));
    }

    #[test]
    fn syntax_errors_are_located() {
        let err = parse_problem("ring: x\n\nmap:  x + * x\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.column >= 7, "{err}");
    }

    #[test]
    fn structural_errors() {
        assert_eq!(parse_problem("variety: x\n").unwrap_err().message, "missing `ring:` declaration");
        assert!(parse_problem("ring: x\nring: y\n").unwrap_err().message.contains("twice"));
        assert!(parse_problem("ring: x\ncolour: red\n").unwrap_err().message.contains("unknown key"));
        assert!(parse_problem("ring: x\njust text\n").unwrap_err().message.contains("key: value"));
        assert!(parse_problem("ring: x, x\n").is_err());
        assert!(parse_problem("ring: x, y\nlinear: x + y^2\n").unwrap_err().message.contains("linear"));
        assert!(parse_problem("ring: x\nmap: x ; x^2 ; x^3\n").unwrap_err().message.contains("two"));
    }

    #[test]
    fn suspension_block() {
        let p = parse_problem("ring: x, y\nvariety: x*y\nmap: x + y\nsuspension: w ; w^3\n").unwrap();
        let s = p.suspension.unwrap();
        assert_eq!(s.ring.names(), ["w"]);
        let err = parse_problem("ring: x, y\nsuspension: x ; x^2\n").unwrap_err();
        assert!(err.message.contains("already declared"));
    }

    #[test]
    fn comments_and_repeated_variety_lines() {
        let p = parse_problem("ring: x, y, z, w # four\nvariety: x*z - y^2\nvariety: x*w - y*z ; y*w - z^2\n").unwrap();
        assert_eq!(p.variety.generators().len(), 3);
    }
}
