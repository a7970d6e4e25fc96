//! Line-oriented document format.
//!
//! Every document starts with `tropkit <kind> v1` and a `rank` line.
//! Vectors are comma-separated exact rationals (`p/q` or integers),
//! vectors on one line are separated by spaces. Rendering is canonical,
//! so parse(render(doc)) returns an equal document.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use tropkit::cone::Cone;
use tropkit::geomtrop::{BoundaryData, Divisor};
use tropkit::polyhedron::{Complex, Polyhedron};
use tropkit::tropical::{Term, ValuedPoly};
use tropkit::{Int, QVec, Rat, ZVec};

pub const FORMAT_VERSION: &str = "v1";

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    /// Cone list; fan axioms are not implied.
    Fan { rank: usize, cones: Vec<Cone> },
    /// Cone list over the working lattice N + scale*Z.
    AdmissibleFan { rank: usize, scale: Int, cones: Vec<Cone> },
    Complex(Complex),
    Polynomial(ValuedPoly),
    Boundary(BoundaryData),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Fan { .. } => "fan",
            Document::AdmissibleFan { .. } => "admissible-fan",
            Document::Complex(_) => "complex",
            Document::Polynomial(_) => "polynomial",
            Document::Boundary(_) => "boundary",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Document::Fan { rank, .. } | Document::AdmissibleFan { rank, .. } => *rank,
            Document::Complex(c) => c.rank(),
            Document::Polynomial(p) => p.rank(),
            Document::Boundary(b) => b.rank(),
        }
    }
}

pub fn parse_rat(s: &str, line: usize) -> Result<Rat, ParseError> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let n: BigInt = match num.parse() {
        Ok(n) => n,
        Err(_) => return err(line, format!("bad rational {s:?}")),
    };
    match den {
        None => Ok(Rat::from_integer(n)),
        Some(d) => {
            let d: BigInt = match d.parse() {
                Ok(d) => d,
                Err(_) => return err(line, format!("bad rational {s:?}")),
            };
            if d.is_zero() {
                return err(line, "zero denominator");
            }
            Ok(Rat::new(n, d))
        }
    }
}

pub fn parse_qvec(s: &str, rank: usize, line: usize) -> Result<QVec, ParseError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != rank {
        return err(line, format!("expected {rank} coordinates, got {}", parts.len()));
    }
    parts.iter().map(|p| parse_rat(p, line)).collect()
}

pub fn parse_zvec(s: &str, rank: usize, line: usize) -> Result<ZVec, ParseError> {
    let q = parse_qvec(s, rank, line)?;
    q.iter()
        .map(|e| {
            if e.denom().is_one() {
                Ok(e.numer().clone())
            } else {
                err(line, format!("expected integer coordinates in {s:?}"))
            }
        })
        .collect()
}

pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn render_qvec(v: &QVec) -> String {
    v.iter().map(render_rat).collect::<Vec<_>>().join(",")
}

pub fn render_zvec(v: &ZVec) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// Split a line into named vector groups, e.g.
/// `rays 1,0 0,1 lineality 1,1` with the allowed group names given.
fn vector_groups<'a>(
    tokens: &[&'a str],
    names: &[&str],
    rank: usize,
    line: usize,
) -> Result<Vec<(String, Vec<QVec>)>, ParseError> {
    let mut out: Vec<(String, Vec<QVec>)> = Vec::new();
    for t in tokens {
        if names.contains(t) {
            if out.iter().any(|(n, _)| n == t) {
                return err(line, format!("duplicate group {t:?}"));
            }
            out.push((t.to_string(), Vec::new()));
        } else {
            match out.last_mut() {
                Some((_, vs)) => vs.push(parse_qvec(t, rank, line)?),
                None => return err(line, format!("unexpected token {t:?}")),
            }
        }
    }
    Ok(out)
}

fn take_group(groups: &[(String, Vec<QVec>)], name: &str) -> Vec<QVec> {
    groups
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, vs)| vs.clone())
        .unwrap_or_default()
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { iter: text.lines().enumerate() }
    }

    /// Next nonempty line with its 1-based number.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.iter.by_ref() {
            let t = l.trim();
            if !t.is_empty() {
                return Some((i + 1, t));
            }
        }
        None
    }
}

pub fn parse_document(text: &str, max_rank: usize) -> Result<Document, ParseError> {
    let mut lines = Lines::new(text);
    let (hline, header) = match lines.next() {
        Some(h) => h,
        None => return err(1, "empty document"),
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 3 || head[0] != "tropkit" || head[2] != FORMAT_VERSION {
        return err(hline, format!("expected header `tropkit <kind> {FORMAT_VERSION}`"));
    }
    let kind = head[1];
    let (rline, rank_line) = match lines.next() {
        Some(l) => l,
        None => return err(hline + 1, "missing rank line"),
    };
    let rank: usize = match rank_line.strip_prefix("rank ") {
        Some(r) => match r.trim().parse() {
            Ok(n) => n,
            Err(_) => return err(rline, "bad rank"),
        },
        None => return err(rline, "expected rank line"),
    };
    if rank == 0 || rank > max_rank {
        return err(rline, format!("rank must be between 1 and {max_rank}"));
    }

    match kind {
        "fan" | "admissible-fan" => {
            let mut scale = Int::one();
            let mut cones: Vec<Cone> = Vec::new();
            let mut first = true;
            while let Some((ln, l)) = lines.next() {
                let tokens: Vec<&str> = l.split_whitespace().collect();
                match tokens[0] {
                    "scale" if kind == "admissible-fan" && first => {
                        if tokens.len() != 2 {
                            return err(ln, "expected `scale <d>`");
                        }
                        scale = match tokens[1].parse() {
                            Ok(s) => s,
                            Err(_) => return err(ln, "bad scale"),
                        };
                        if !scale.is_positive() {
                            return err(ln, "scale must be positive");
                        }
                    }
                    "cone" => {
                        let groups =
                            vector_groups(&tokens[1..], &["rays", "lineality"], rank, ln)?;
                        let rays = take_group(&groups, "rays");
                        let lin = take_group(&groups, "lineality");
                        match Cone::from_rays_q(rank, &rays, &lin) {
                            Ok(c) => cones.push(c),
                            Err(e) => return err(ln, e.to_string()),
                        }
                    }
                    t => return err(ln, format!("unexpected line {t:?}")),
                }
                first = false;
            }
            if kind == "fan" {
                Ok(Document::Fan { rank, cones })
            } else {
                Ok(Document::AdmissibleFan { rank, scale, cones })
            }
        }
        "complex" => {
            let mut cells: Vec<Polyhedron> = Vec::new();
            let mut last_line = rline;
            while let Some((ln, l)) = lines.next() {
                last_line = ln;
                let tokens: Vec<&str> = l.split_whitespace().collect();
                if tokens[0] != "cell" {
                    return err(ln, format!("unexpected line {:?}", tokens[0]));
                }
                let groups = vector_groups(
                    &tokens[1..],
                    &["vertices", "rays", "lineality"],
                    rank,
                    ln,
                )?;
                let vertices = take_group(&groups, "vertices");
                let rays = take_group(&groups, "rays");
                let lin = take_group(&groups, "lineality");
                match Polyhedron::from_generators(rank, &vertices, &rays, &lin) {
                    Ok(p) => cells.push(p),
                    Err(e) => return err(ln, e.to_string()),
                }
            }
            match Complex::validate(rank, cells) {
                Ok(c) => Ok(Document::Complex(c)),
                Err(e) => err(last_line, e.to_string()),
            }
        }
        "polynomial" => {
            let mut terms: Vec<Term> = Vec::new();
            let mut last_line = rline;
            while let Some((ln, l)) = lines.next() {
                last_line = ln;
                let tokens: Vec<&str> = l.split_whitespace().collect();
                if tokens.len() != 7
                    || tokens[0] != "term"
                    || tokens[1] != "exp"
                    || tokens[3] != "val"
                    || tokens[5] != "res"
                {
                    return err(ln, "expected `term exp <v> val <q> res <tag>`");
                }
                terms.push(Term {
                    exponent: parse_zvec(tokens[2], rank, ln)?,
                    valuation: parse_rat(tokens[4], ln)?,
                    residue: tokens[6].to_string(),
                });
            }
            match ValuedPoly::new(rank, terms) {
                Ok(p) => Ok(Document::Polynomial(p)),
                Err(e) => err(last_line, e.to_string()),
            }
        }
        "boundary" => {
            let mut divisors: Vec<Divisor> = Vec::new();
            let mut strata: Vec<Vec<String>> = Vec::new();
            let mut last_line = rline;
            while let Some((ln, l)) = lines.next() {
                last_line = ln;
                let tokens: Vec<&str> = l.split_whitespace().collect();
                match tokens[0] {
                    "divisor" => {
                        if tokens.len() != 4 || tokens[2] != "val" {
                            return err(ln, "expected `divisor <id> val <v>`");
                        }
                        divisors.push(Divisor {
                            id: tokens[1].to_string(),
                            val: parse_zvec(tokens[3], rank, ln)?,
                        });
                    }
                    "stratum" => {
                        strata.push(tokens[1..].iter().map(|s| s.to_string()).collect());
                    }
                    t => return err(ln, format!("unexpected line {t:?}")),
                }
            }
            match BoundaryData::new(rank, divisors, &strata) {
                Ok(b) => Ok(Document::Boundary(b)),
                Err(e) => err(last_line, e.to_string()),
            }
        }
        k => err(hline, format!("unknown document kind {k:?}")),
    }
}

fn render_cone_line(c: &Cone, out: &mut String) {
    out.push_str("cone");
    if !c.rays().is_empty() {
        out.push_str(" rays");
        for r in c.rays() {
            out.push(' ');
            out.push_str(&render_zvec(r));
        }
    }
    if !c.lineality().is_empty() {
        out.push_str(" lineality");
        for l in c.lineality() {
            out.push(' ');
            out.push_str(&render_zvec(l));
        }
    }
    out.push('\n');
}

pub fn render_document(doc: &Document) -> String {
    let mut out = format!("tropkit {} {}\nrank {}\n", doc.kind(), FORMAT_VERSION, doc.rank());
    match doc {
        Document::Fan { cones, .. } => {
            for c in cones {
                render_cone_line(c, &mut out);
            }
        }
        Document::AdmissibleFan { scale, cones, .. } => {
            out.push_str(&format!("scale {scale}\n"));
            for c in cones {
                render_cone_line(c, &mut out);
            }
        }
        Document::Complex(cx) => {
            for cell in cx.cells() {
                out.push_str("cell");
                let vs = cell.vertices();
                if !vs.is_empty() {
                    out.push_str(" vertices");
                    for v in &vs {
                        out.push(' ');
                        out.push_str(&render_qvec(v));
                    }
                }
                let rs = cell.recession_rays();
                if !rs.is_empty() {
                    out.push_str(" rays");
                    for r in &rs {
                        out.push(' ');
                        out.push_str(&render_zvec(r));
                    }
                }
                let ls = cell.lineality();
                if !ls.is_empty() {
                    out.push_str(" lineality");
                    for l in &ls {
                        out.push(' ');
                        out.push_str(&render_zvec(l));
                    }
                }
                out.push('\n');
            }
        }
        Document::Polynomial(p) => {
            for t in p.terms() {
                out.push_str(&format!(
                    "term exp {} val {} res {}\n",
                    render_zvec(&t.exponent),
                    render_rat(&t.valuation),
                    t.residue
                ));
            }
        }
        Document::Boundary(b) => {
            for d in b.divisors() {
                out.push_str(&format!("divisor {} val {}\n", d.id, render_zvec(&d.val)));
            }
            for s in b.strata() {
                out.push_str("stratum");
                for &k in s {
                    out.push(' ');
                    out.push_str(&b.divisors()[k].id);
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Convenience for report output: render a validated fan as a document.
pub fn fan_document(fan: &tropkit::fan::Fan) -> Document {
    Document::Fan { rank: fan.rank(), cones: fan.maximal_cones().to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(text: &str) -> Document {
        let doc = parse_document(text, 8).unwrap();
        let rendered = render_document(&doc);
        let again = parse_document(&rendered, 8).unwrap();
        assert_eq!(doc, again);
        // canonical render is a fixpoint
        assert_eq!(render_document(&again), rendered);
        again
    }

    #[test]
    fn fan_roundtrip() {
        let doc = roundtrip("tropkit fan v1\nrank 2\ncone rays 1,0 0,1\ncone rays -1,0 lineality 0,1\ncone\n");
        assert_eq!(doc.kind(), "fan");
    }

    #[test]
    fn admissible_fan_roundtrip() {
        let doc = roundtrip("tropkit admissible-fan v1\nrank 2\nscale 2\ncone rays 1,2\n");
        match doc {
            Document::AdmissibleFan { scale, .. } => assert_eq!(scale, Int::from(2)),
            _ => panic!(),
        }
    }

    #[test]
    fn complex_roundtrip() {
        roundtrip("tropkit complex v1\nrank 1\ncell vertices 0 1\ncell vertices 1 rays 1\n");
    }

    #[test]
    fn polynomial_roundtrip() {
        let doc = roundtrip(
            "tropkit polynomial v1\nrank 2\nterm exp 0,0 val 0 res c0\nterm exp 1,0 val 1/2 res c1\n",
        );
        assert_eq!(doc.kind(), "polynomial");
    }

    #[test]
    fn boundary_roundtrip() {
        roundtrip(
            "tropkit boundary v1\nrank 2\ndivisor D1 val 1,0\ndivisor D2 val 0,1\nstratum\nstratum D1\nstratum D2\nstratum D1 D2\n",
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_document("tropkit fan v1\nrank 2\ncone rays 1/0,0\n", 8).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("zero denominator"));
        let e = parse_document("tropkit fan v1\nrank 9\n", 8).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_document("tropkit widget v1\nrank 2\n", 8).unwrap_err();
        assert!(e.message.contains("unknown document kind"));
    }
}
