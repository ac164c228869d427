//! Text formats.
//!
//! * Triple system: `v b`, then `b` lines of three sorted 0-based points, lines
//!   in lexicographic order.
//! * Loop: CSV Cayley table with a header row and column of element labels;
//!   `W` is the identity.
//! * Factor system: `w t`, then one line `i j k bits` per triple of the quotient
//!   in its canonical order, `bits` being the value in binary with `t` digits.
//! * Square: `n` rows of `n` labels, `W` for the identity.
//! * Operator: `m n`, then the `m²` blocks in row-major `(P, Q)` order, each as
//!   `n` rows of `n` labels.
//!
//! Lines starting with `#` and blank lines are ignored on input.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::loops::SteinerLoop;
use crate::operator::{LatinSquare, SteinerOperator};
use crate::schreier::FactorSystem;
use crate::system::TripleSystem;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| err(line, format!("expected a number, got `{t}`"))))
        .collect()
}

fn label(x: usize) -> String {
    if x == 0 {
        "W".into()
    } else {
        x.to_string()
    }
}

fn parse_label(line: usize, s: &str) -> Result<usize> {
    if s == "W" {
        Ok(0)
    } else {
        s.parse().map_err(|_| err(line, format!("bad element label `{s}`")))
    }
}

pub fn write_system(s: &TripleSystem) -> String {
    let mut out = format!("{} {}\n", s.v(), s.b());
    for [a, b, c] in s.triples() {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

pub fn parse_system(text: &str) -> Result<TripleSystem> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let h = numbers(ln, header)?;
    let [v, b] = h[..] else { return Err(err(ln, "header must be `v b`")) };
    let mut triples = Vec::with_capacity(b);
    for (ln, l) in lines {
        let t = numbers(ln, l)?;
        let [x, y, z] = t[..] else { return Err(err(ln, "expected three points")) };
        triples.push([x, y, z]);
    }
    if triples.len() != b {
        return Err(err(ln, format!("header announces {b} triples, found {}", triples.len())));
    }
    TripleSystem::new(v, triples)
}

pub fn write_loop_csv(l: &SteinerLoop) -> String {
    let n = l.order();
    let mut out = String::new();
    let header: Vec<String> = (0..n).map(label).collect();
    writeln!(out, ",{}", header.join(",")).unwrap();
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| label(l.mul(x, y))).collect();
        writeln!(out, "{},{}", label(x), row.join(",")).unwrap();
    }
    out
}

pub fn parse_loop_csv(text: &str) -> Result<SteinerLoop> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let cols: Vec<usize> = header
        .split(',')
        .skip(1)
        .map(|s| parse_label(ln, s.trim()))
        .collect::<Result<_>>()?;
    let n = cols.len();
    if cols.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(err(ln, "header must list W, 1, 2, .. in order"));
    }
    let mut table = vec![0; n * n];
    let mut rows = 0;
    for (ln, l) in lines {
        let cells: Vec<usize> = l.split(',').map(|s| parse_label(ln, s.trim())).collect::<Result<_>>()?;
        if cells.len() != n + 1 || cells[0] != rows {
            return Err(err(ln, format!("expected row {} with {n} entries", label(rows))));
        }
        table[rows * n..(rows + 1) * n].copy_from_slice(&cells[1..]);
        rows += 1;
        if rows > n {
            return Err(err(ln, "too many rows"));
        }
    }
    if rows != n {
        return Err(err(ln, format!("expected {n} rows, found {rows}")));
    }
    SteinerLoop::from_table(n, &table)
}

pub fn write_factor_system(f: &FactorSystem) -> String {
    let q = f.quotient();
    let t = f.t() as usize;
    let mut out = format!("{} {}\n", q.v(), t);
    for (&[a, b, c], &v) in q.triples().iter().zip(f.values()) {
        writeln!(out, "{a} {b} {c} {:0t$b}", v).unwrap();
    }
    out
}

/// Reads a factor system over `q`; triples must match `q`'s in order.
pub fn parse_factor_system(text: &str, q: Arc<TripleSystem>) -> Result<FactorSystem> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let h = numbers(ln, header)?;
    let [w, t] = h[..] else { return Err(err(ln, "header must be `w t`")) };
    if w != q.v() {
        return Err(err(ln, format!("quotient has {} points, file says {w}", q.v())));
    }
    if t >= 32 {
        return Err(err(ln, "dimension too large"));
    }
    let mut values = Vec::with_capacity(q.b());
    for (ln, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(err(ln, "expected `i j k bits`"));
        }
        let pts = numbers(ln, &parts[..3].join(" "))?;
        let i = values.len();
        if i >= q.b() || pts[..] != q.triples()[i][..] {
            return Err(err(ln, format!("triple {pts:?} out of canonical order")));
        }
        let bits = parts[3];
        if bits.len() != t || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(err(ln, format!("expected {t} binary digits, got `{bits}`")));
        }
        values.push(if t == 0 { 0 } else { u32::from_str_radix(bits, 2).unwrap() });
    }
    FactorSystem::new(q, t as u32, values)
}

pub fn write_square(sq: &LatinSquare) -> String {
    let mut out = String::new();
    for row in sq.rows() {
        let cells: Vec<String> = row.into_iter().map(label).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

fn parse_rows(lines: &mut dyn Iterator<Item = (usize, &str)>, n: usize) -> Result<LatinSquare> {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| err(0, "unexpected end of input"))?;
        let row: Vec<usize> = l.split_whitespace().map(|s| parse_label(ln, s)).collect::<Result<_>>()?;
        if row.len() != n {
            return Err(err(ln, format!("expected {n} labels")));
        }
        if row.iter().any(|&x| x >= n) {
            return Err(err(ln, format!("label out of range 0..{n}")));
        }
        rows.push(row);
    }
    Ok(LatinSquare::from_rows(&rows))
}

pub fn parse_square(text: &str) -> Result<LatinSquare> {
    let n = content_lines(text).count();
    let mut lines = content_lines(text);
    parse_rows(&mut lines, n)
}

pub fn write_operator(op: &SteinerOperator) -> String {
    let (m, n) = (op.q().order(), op.n_loop().order());
    let mut out = format!("{m} {n}\n");
    for (i, b) in op.blocks().iter().enumerate() {
        writeln!(out, "# block ({}, {})", label(i / m), label(i % m)).unwrap();
        out.push_str(&write_square(b));
    }
    out
}

/// Reads an operator over the quotient loop `q`; `L_N` is taken from the
/// identity block.
pub fn parse_operator(text: &str, q: &SteinerLoop) -> Result<SteinerOperator> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let h = numbers(ln, header)?;
    let [m, n] = h[..] else { return Err(err(ln, "header must be `m n`")) };
    if m != q.order() {
        return Err(err(ln, format!("quotient loop has order {}, file says {m}", q.order())));
    }
    let blocks = (0..m * m).map(|_| parse_rows(&mut lines, n)).collect::<Result<Vec<_>>>()?;
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "trailing data"));
    }
    let n_loop = SteinerLoop::from_table(n, &blocks[0].rows().concat())?;
    SteinerOperator::new(q.clone(), n_loop, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::operator::schreier_operator;

    #[test]
    fn system_round_trip() {
        let s = catalog::sts15_2();
        assert_eq!(parse_system(&write_system(&s)).unwrap(), s);
        let one = catalog::sts1();
        assert_eq!(write_system(&one), "1 0\n");
        assert_eq!(parse_system("# header\n1 0\n").unwrap(), one);
    }

    #[test]
    fn system_errors() {
        assert!(matches!(parse_system("3 1\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_system("3 2\n0 1 2\n"), Err(Error::Parse { .. })));
        assert_eq!(parse_system("7 1\n0 1 2\n"), Err(Error::PairMissing(0, 3)));
        assert_eq!(parse_system("5 0\n"), Err(Error::NotAdmissible(5)));
    }

    #[test]
    fn loop_round_trip() {
        let l = catalog::sts9_loop_table();
        let text = write_loop_csv(&l);
        assert!(text.starts_with(",W,1,2"));
        assert_eq!(parse_loop_csv(&text).unwrap(), l);
    }

    #[test]
    fn factor_round_trip() {
        let f = catalog::f_sts15_example();
        let text = write_factor_system(&f);
        assert!(text.starts_with("7 1\n0 1 2 0\n"));
        assert_eq!(parse_factor_system(&text, f.quotient().clone()).unwrap(), f);
        let bad = text.replace("0 1 2 0", "0 1 2 01");
        assert!(matches!(parse_factor_system(&bad, f.quotient().clone()), Err(Error::Parse { .. })));
    }

    #[test]
    fn square_and_operator_round_trip() {
        let sq = catalog::phi_11();
        assert_eq!(parse_square(&write_square(&sq)).unwrap(), sq);
        let op = schreier_operator(&catalog::f_sts15_example());
        assert_eq!(parse_operator(&write_operator(&op), op.q()).unwrap(), op);
    }
}
