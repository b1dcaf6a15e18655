//! Plain-text input format for complexes, binary complexes and
//! representations.
//!
//! ```text
//! ring Z            # Z, Q or Fp
//! degree 0 rank 1
//! degree 1 rank 1
//! d 1               # followed by rank(0) rows of rank(1) entries
//! 2
//! dtilde 1          # binary complexes only
//! 1
//! ```
//!
//! Representations use `group <preset>` (or `group table n` followed by
//! n rows), `rank r` and `gen g` blocks of r rows.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::binary::BinaryComplex;
use crate::complex::ChainComplex;
use crate::equivariant::{FiniteGroup, GRep, GroupKind};
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, Matrix, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Complex(ChainComplex),
    Binary(BinaryComplex),
    Rep(GRep),
}

struct Token<'a> {
    column: usize,
    text: &'a str,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

fn lex(input: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        column: content[..s].chars().count() + 1,
                        text: &content[s..pos],
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Cursor<'l, 'a> {
    lines: &'l [Line<'a>],
    next: usize,
    last_line: usize,
}

impl<'l, 'a> Cursor<'l, 'a> {
    fn next_line(&mut self) -> Option<&'l Line<'a>> {
        let l = self.lines.get(self.next)?;
        self.next += 1;
        self.last_line = l.number;
        Some(l)
    }

    /// Reads `rows` lines of `cols` scalars.
    fn matrix(&mut self, ring: Ring, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let eof = self.last_line + 1;
            let line = self
                .next_line()
                .ok_or_else(|| err(eof, 1, format!("{what}: expected row {} of {rows}", r + 1)))?;
            if line.tokens.len() != cols {
                let column = line.tokens.get(cols).map_or(1, |t| t.column);
                return Err(err(
                    line.number,
                    column,
                    format!("{what}: expected {cols} entries, found {}", line.tokens.len()),
                ));
            }
            for t in &line.tokens {
                data.push(scalar(ring, line.number, t)?);
            }
        }
        Matrix::from_scalars(ring, rows, cols, data)
    }
}

fn scalar(ring: Ring, line: usize, t: &Token<'_>) -> Result<Scalar> {
    let bad = || err(line, t.column, format!("{:?} is not a number", t.text));
    let value = match t.text.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| bad())?;
            let b: BigInt = b.parse().map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(err(line, t.column, "zero denominator"));
            }
            BigRational::new(a, b)
        }
        None => BigRational::from_integer(t.text.parse().map_err(|_| bad())?),
    };
    ring.coerce(value)
        .map_err(|e| err(line, t.column, e.to_string()))
}

fn number(line: &Line<'_>, index: usize) -> Result<usize> {
    let t = line
        .tokens
        .get(index)
        .ok_or_else(|| err(line.number, line.tokens.last().map_or(1, |t| t.column + t.text.len()), "expected a number"))?;
    t.text
        .parse()
        .map_err(|_| err(line.number, t.column, format!("{:?} is not a nonnegative integer", t.text)))
}

fn expect_len(line: &Line<'_>, n: usize) -> Result<()> {
    if line.tokens.len() > n {
        let t = &line.tokens[n];
        return Err(err(line.number, t.column, format!("unexpected {:?}", t.text)));
    }
    Ok(())
}

/// Parses a complex, binary complex or representation and validates it.
pub fn parse(input: &str) -> Result<Parsed> {
    let lines = lex(input);
    let mut cur = Cursor {
        lines: &lines,
        next: 0,
        last_line: 0,
    };
    let mut ring: Option<Ring> = None;
    let mut ranks: Vec<usize> = Vec::new();
    let mut d: Vec<(usize, Matrix)> = Vec::new();
    let mut dt: Vec<(usize, Matrix)> = Vec::new();
    let mut group: Option<Arc<FiniteGroup>> = None;
    let mut rep_rank: Option<usize> = None;
    let mut gens: Vec<(usize, Matrix)> = Vec::new();
    let mut first_kind: Option<(usize, &'static str)> = None;

    while let Some(line) = cur.next_line() {
        let (no, head) = (line.number, &line.tokens[0]);
        let need_ring = |ring: Option<Ring>| ring.ok_or_else(|| err(no, 1, "`ring` must come first"));
        let kind = match head.text {
            "degree" | "d" | "dtilde" => "complex",
            "group" | "rank" | "gen" => "representation",
            _ => "",
        };
        if !kind.is_empty() {
            match first_kind {
                None => first_kind = Some((no, kind)),
                Some((_, k)) if k != kind => {
                    return Err(err(no, 1, format!("`{}` does not belong in a {k} file", head.text)));
                }
                _ => {}
            }
        }
        match head.text {
            "ring" => {
                if ring.is_some() {
                    return Err(err(no, 1, "duplicate `ring`"));
                }
                let t = line.tokens.get(1).ok_or_else(|| err(no, 5, "expected a ring tag"))?;
                expect_len(line, 2)?;
                ring = Some(Ring::parse_tag(t.text).map_err(|e| err(no, t.column, e.to_string()))?);
            }
            "degree" => {
                need_ring(ring)?;
                let i = number(line, 1)?;
                if line.tokens.get(2).map(|t| t.text) != Some("rank") {
                    return Err(err(no, line.tokens.get(2).map_or(1, |t| t.column), "expected `rank`"));
                }
                let r = number(line, 3)?;
                expect_len(line, 4)?;
                if i != ranks.len() {
                    return Err(err(no, line.tokens[1].column, format!("expected degree {}", ranks.len())));
                }
                ranks.push(r);
            }
            "d" | "dtilde" => {
                let ring = need_ring(ring)?;
                let i = number(line, 1)?;
                expect_len(line, 2)?;
                if i == 0 || i >= ranks.len() {
                    return Err(err(no, line.tokens[1].column, format!("no differential out of degree {i}")));
                }
                let which = if head.text == "d" { &mut d } else { &mut dt };
                if which.iter().any(|(j, _)| *j == i) {
                    return Err(err(no, 1, format!("duplicate `{} {i}`", head.text)));
                }
                let label = format!("{} {i}", head.text);
                let m = cur.matrix(ring, ranks[i - 1], ranks[i], &label)?;
                let which = if head.text == "d" { &mut d } else { &mut dt };
                which.push((i, m));
            }
            "group" => {
                need_ring(ring)?;
                if group.is_some() {
                    return Err(err(no, 1, "duplicate `group`"));
                }
                let rest: Vec<&str> = line.tokens[1..].iter().map(|t| t.text).collect();
                let col = line.tokens.get(1).map_or(7, |t| t.column);
                let g = if rest.first() == Some(&"table") {
                    let n = number(line, 2)?;
                    expect_len(line, 3)?;
                    let mut rows = Vec::with_capacity(n);
                    for _ in 0..n {
                        let eof = cur.last_line + 1;
                        let row = cur.next_line().ok_or_else(|| err(eof, 1, "group table: expected a row"))?;
                        if row.tokens.len() != n {
                            return Err(err(row.number, 1, format!("group table: expected {n} entries")));
                        }
                        rows.push((0..n).map(|j| number(row, j)).collect::<Result<Vec<_>>>()?);
                    }
                    FiniteGroup::from_table(rows).map_err(|e| err(no, col, e.to_string()))?
                } else {
                    FiniteGroup::preset(&rest.join(" ")).map_err(|e| err(no, col, e.to_string()))?
                };
                group = Some(Arc::new(g));
            }
            "rank" => {
                need_ring(ring)?;
                if rep_rank.is_some() {
                    return Err(err(no, 1, "duplicate `rank`"));
                }
                rep_rank = Some(number(line, 1)?);
                expect_len(line, 2)?;
            }
            "gen" => {
                let ring = need_ring(ring)?;
                let g = group.as_ref().ok_or_else(|| err(no, 1, "`group` must precede `gen`"))?;
                let n = rep_rank.ok_or_else(|| err(no, 1, "`rank` must precede `gen`"))?;
                let e = number(line, 1)?;
                expect_len(line, 2)?;
                if e >= g.order() {
                    return Err(err(no, line.tokens[1].column, format!("{e} is not an element")));
                }
                let m = cur.matrix(ring, n, n, &format!("gen {e}"))?;
                gens.push((e, m));
            }
            other => return Err(err(no, head.column, format!("unknown keyword {other:?}"))),
        }
    }
    let ring = ring.ok_or_else(|| err(1, 1, "missing `ring`"))?;
    match first_kind {
        Some((_, "representation")) => {
            let g = group.ok_or_else(|| err(cur.last_line, 1, "missing `group`"))?;
            let n = rep_rank.ok_or_else(|| err(cur.last_line, 1, "missing `rank`"))?;
            Ok(Parsed::Rep(GRep::from_generators(g, ring, n, &gens)?))
        }
        _ => {
            if ranks.is_empty() {
                return Err(err(cur.last_line.max(1), 1, "no degrees declared"));
            }
            let assemble = |given: &[(usize, Matrix)]| {
                (1..ranks.len())
                    .map(|i| {
                        given
                            .iter()
                            .find(|(j, _)| *j == i)
                            .map(|(_, m)| m.clone())
                            .unwrap_or_else(|| Matrix::zeros(ring, ranks[i - 1], ranks[i]))
                    })
                    .collect::<Vec<_>>()
            };
            if dt.is_empty() {
                Ok(Parsed::Complex(ChainComplex::new(ring, ranks.clone(), assemble(&d))?))
            } else {
                Ok(Parsed::Binary(BinaryComplex::new(ring, ranks.clone(), assemble(&d), assemble(&dt))?))
            }
        }
    }
}

pub fn parse_complex(input: &str) -> Result<ChainComplex> {
    match parse(input)? {
        Parsed::Complex(c) => Ok(c),
        _ => Err(err(1, 1, "expected a chain complex")),
    }
}

pub fn parse_binary(input: &str) -> Result<BinaryComplex> {
    match parse(input)? {
        Parsed::Binary(b) => Ok(b),
        Parsed::Complex(c) => Ok(BinaryComplex::diag(&c)),
        Parsed::Rep(_) => Err(err(1, 1, "expected a binary complex")),
    }
}

pub fn parse_rep(input: &str) -> Result<GRep> {
    match parse(input)? {
        Parsed::Rep(r) => Ok(r),
        _ => Err(err(1, 1, "expected a representation")),
    }
}

fn write_matrix(out: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(format_scalar).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn write_graded(out: &mut String, ring: Ring, ranks: &[usize]) {
    out.push_str(&format!("ring {}\n", ring.tag()));
    for (i, r) in ranks.iter().enumerate() {
        out.push_str(&format!("degree {i} rank {r}\n"));
    }
}

fn write_differentials(out: &mut String, keyword: &str, diffs: &[Matrix]) {
    for (i, m) in diffs.iter().enumerate() {
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        out.push_str(&format!("{keyword} {}\n", i + 1));
        write_matrix(out, m);
    }
}

/// Canonical text form: every degree declared, every differential between
/// nonzero modules written.
pub fn write_complex(c: &ChainComplex) -> String {
    let mut out = String::new();
    write_graded(&mut out, c.ring(), c.ranks());
    write_differentials(&mut out, "d", c.differentials());
    out
}

pub fn write_binary(b: &BinaryComplex) -> String {
    let mut out = write_complex(&b.bottom());
    write_differentials(&mut out, "dtilde", b.top().differentials());
    out
}

/// Writes the matrices of the group's greedy generators.
pub fn write_rep(v: &GRep) -> String {
    let g = v.group();
    let mut out = format!("ring {}\n", v.ring().tag());
    match g.kind() {
        GroupKind::Table => {
            out.push_str(&format!("group table {}\n", g.order()));
            for row in g.table() {
                let row: Vec<String> = row.iter().map(usize::to_string).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        _ => out.push_str(&format!("group {g}\n")),
    }
    out.push_str(&format!("rank {}\n", v.rank()));
    for e in g.generators() {
        out.push_str(&format!("gen {e}\n"));
        write_matrix(&mut out, v.matrix(e));
    }
    out
}
