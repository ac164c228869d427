//! Generators for the classical systems and the fixed worked examples.
//!
//! Labelled fixtures use 0-based points: `P_i` is point `i − 1`. In the
//! `STS(15) #2` list, hex labels `0..e` are read as the integers `0..14`.
//! Loop tables and squares use loop elements directly (0 is the identity).

use std::sync::Arc;

use serde::Serialize;

use crate::census::pasch_configurations;
use crate::error::{Error, Result};
use crate::loops::SteinerLoop;
use crate::operator::LatinSquare;
use crate::schreier::FactorSystem;
use crate::system::TripleSystem;

/// Point-line design of `PG(n, 2)`: point `p` is the nonzero vector `p + 1`.
pub fn pg(n: u32) -> TripleSystem {
    assert!((1..20).contains(&n), "unsupported dimension {n}");
    let v = (1usize << (n + 1)) - 1;
    let mut triples = Vec::new();
    for a in 1..=v {
        for b in a + 1..=v {
            let c = a ^ b;
            if c > b {
                triples.push([a - 1, b - 1, c - 1]);
            }
        }
    }
    TripleSystem::new(v, triples).expect("projective space")
}

/// Point-line design of `AG(n, 3)`: point `p` has base-3 digits as coordinates.
pub fn ag(n: u32) -> TripleSystem {
    assert!((1..12).contains(&n), "unsupported dimension {n}");
    let v = 3usize.pow(n);
    let third = |a: usize, b: usize| {
        let (mut a, mut b, mut c, mut place) = (a, b, 0, 1);
        for _ in 0..n {
            c += ((6 - a % 3 - b % 3) % 3) * place;
            a /= 3;
            b /= 3;
            place *= 3;
        }
        c
    };
    let mut triples = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            let c = third(a, b);
            if c > b {
                triples.push([a, b, c]);
            }
        }
    }
    TripleSystem::new(v, triples).expect("affine space")
}

pub fn sts1() -> TripleSystem {
    TripleSystem::new(1, []).unwrap()
}

fn from_labels(v: usize, triples: &[[usize; 3]]) -> TripleSystem {
    TripleSystem::new(v, triples.iter().map(|t| t.map(|p| p - 1))).expect("valid fixture")
}

/// The Fano plane with points `P1..P7`: the triangle `P1 P3 P5` with side
/// midpoints `P2, P6, P4` and centre `P7`.
pub fn fano_labeled() -> TripleSystem {
    from_labels(
        7,
        &[[1, 2, 3], [1, 4, 5], [3, 6, 5], [1, 7, 6], [3, 7, 4], [5, 7, 2], [2, 4, 6]],
    )
}

/// `STS(9)` on the grid `P1 P2 P3 / P4 P5 P6 / P7 P8 P9`.
pub fn sts9_labeled() -> TripleSystem {
    from_labels(
        9,
        &[
            [1, 2, 3],
            [1, 4, 7],
            [1, 5, 9],
            [1, 6, 8],
            [2, 4, 9],
            [2, 5, 8],
            [2, 6, 7],
            [3, 4, 8],
            [3, 5, 7],
            [3, 6, 9],
            [4, 5, 6],
            [7, 8, 9],
        ],
    )
}

const STS15_2: [&str; 3] = [
    "00000001111112222223333444455556666",
    "13579bd3478bc3478bc789a789a789a789a",
    "2468ace569ade65a9edbcdecbededcbdebc",
];

/// `STS(15) #2`, the system with exactly one Veblen point (point 0).
pub fn sts15_2() -> TripleSystem {
    let rows: Vec<Vec<usize>> = STS15_2
        .iter()
        .map(|r| r.chars().map(|c| c.to_digit(16).unwrap() as usize).collect())
        .collect();
    TripleSystem::new(15, (0..35).map(|i| [rows[0][i], rows[1][i], rows[2][i]])).expect("valid fixture")
}

/// The cyclic `STS(13)` with base blocks `{0,1,4}` and `{0,2,7}` mod 13.
pub fn sts13_a() -> TripleSystem {
    let base = [[0, 1, 4], [0, 2, 7]];
    let triples = base.iter().flat_map(|b| (0..13).map(move |i| b.map(|x| (x + i) % 13)));
    TripleSystem::new(13, triples).expect("difference family")
}

/// The other `STS(13)`, obtained from [`sts13_a`] by switching its first Pasch
/// configuration `{abc, ade, bdf, cef}` to `{abd, ace, bcf, def}`.
pub fn sts13_b() -> TripleSystem {
    let a = sts13_a();
    let p = pasch_configurations(&a)[0];
    let [pa, pb, pc, pd, pe, pf] = p.points;
    let mut triples: Vec<[usize; 3]> = a
        .triples()
        .iter()
        .enumerate()
        .filter(|(i, _)| !p.blocks.contains(i))
        .map(|(_, t)| *t)
        .collect();
    triples.extend([[pa, pb, pd], [pa, pc, pe], [pb, pc, pf], [pd, pe, pf]]);
    TripleSystem::new(13, triples).expect("Pasch switch")
}

fn parse_square(rows: &[&str]) -> Vec<Vec<usize>> {
    rows.iter()
        .map(|r| r.split_whitespace().map(|s| if s == "W" { 0 } else { s.parse().unwrap() }).collect())
        .collect()
}

const STS9_LOOP: [&str; 10] = [
    "W 1 2 3 4 5 6 7 8 9",
    "1 W 3 2 7 9 8 4 6 5",
    "2 3 W 1 9 8 7 6 5 4",
    "3 2 1 W 8 7 9 5 4 6",
    "4 7 9 8 W 6 5 1 3 2",
    "5 9 8 7 6 W 4 3 2 1",
    "6 8 7 9 5 4 W 2 1 3",
    "7 4 6 5 1 3 2 W 9 8",
    "8 6 5 4 3 2 1 9 W 7",
    "9 5 4 6 2 1 3 8 7 W",
];

const PHI_11: [&str; 10] = [
    "W 7 6 5 4 9 8 2 1 3",
    "7 W 5 6 2 8 9 4 3 1",
    "6 5 W 7 8 2 1 3 4 9",
    "5 6 7 W 1 3 4 9 8 2",
    "4 2 8 1 W 5 3 7 9 6",
    "9 8 2 3 5 W 7 1 6 4",
    "8 9 1 4 3 7 W 6 2 5",
    "2 4 3 9 7 1 6 W 5 8",
    "1 3 4 8 9 6 2 5 W 7",
    "3 1 9 2 6 4 5 8 7 W",
];

const PHI_OM1: [&str; 10] = [
    "W 1 2 3 4 5 6 7 8 9",
    "8 9 6 4 3 7 2 5 W 1",
    "7 4 5 9 1 2 8 W 6 3",
    "9 8 7 5 6 3 4 2 1 W",
    "4 7 8 6 W 9 3 1 2 5",
    "3 2 1 W 5 4 9 8 7 6",
    "2 3 W 1 9 8 7 6 5 4",
    "1 W 3 2 7 6 5 4 9 8",
    "6 5 4 8 2 1 W 9 3 7",
    "5 6 9 7 8 W 1 3 4 2",
];

/// The order-10 Steiner loop of an `STS(9)` in the fixed labelling used by the
/// doubling example.
pub fn sts9_loop_table() -> SteinerLoop {
    let rows = parse_square(&STS9_LOOP);
    SteinerLoop::from_table(10, &rows.concat()).expect("valid fixture")
}

/// The symmetric square `Φ_{1̄,1̄}` of the `STS(19)` doubling example.
pub fn phi_11() -> LatinSquare {
    LatinSquare::from_rows(&parse_square(&PHI_11))
}

/// The block `Φ_{Ω̄,1̄}` determined by [`phi_11`].
pub fn phi_om1() -> LatinSquare {
    LatinSquare::from_rows(&parse_square(&PHI_OM1))
}

/// Factor system over [`fano_labeled`] with value 1 on `{P3,P5,P6}` and
/// `{P3,P4,P7}`; its extension is `STS(15) #2`.
pub fn f_sts15_example() -> FactorSystem {
    FactorSystem::zero(Arc::new(fano_labeled()), 1)
        .with_triple(2, 4, 1)
        .and_then(|f| f.with_triple(2, 3, 1))
        .unwrap()
}

/// Factor system over [`sts9_labeled`] with value 1 on `{P3,P6,P9}`.
pub fn f1_sts9() -> FactorSystem {
    FactorSystem::zero(Arc::new(sts9_labeled()), 1).with_triple(2, 5, 1).unwrap()
}

/// Factor system over [`sts9_labeled`] with value 1 on `{P3,P4,P8}`.
pub fn f2_sts9() -> FactorSystem {
    FactorSystem::zero(Arc::new(sts9_labeled()), 1).with_triple(2, 3, 1).unwrap()
}

/// The automorphism `(P4 P6 P5)(P7 P8 P9)` of [`sts9_labeled`], as a point map.
pub fn beta_465_789() -> Vec<usize> {
    vec![0, 1, 2, 5, 3, 4, 7, 8, 6]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    System(TripleSystem),
    Loop(SteinerLoop),
    Square(LatinSquare),
    Factor(FactorSystem),
    Permutation(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureInfo {
    pub key: &'static str,
    pub kind: &'static str,
    pub description: &'static str,
    /// Not one of the worked examples; built by a standard construction.
    pub external: bool,
}

const FIXTURES: &[FixtureInfo] = &[
    FixtureInfo { key: "sts15_2", kind: "system", description: "STS(15) #2, one Veblen point", external: false },
    FixtureInfo { key: "fano_labeled", kind: "system", description: "Fano plane on P1..P7", external: false },
    FixtureInfo { key: "sts9_labeled", kind: "system", description: "STS(9) on the 3x3 grid P1..P9", external: false },
    FixtureInfo { key: "sts9_loop_table", kind: "loop", description: "order-10 loop of the doubling example", external: false },
    FixtureInfo { key: "phi_11", kind: "square", description: "diagonal block of the STS(19) doubling", external: false },
    FixtureInfo { key: "phi_om1", kind: "square", description: "derived block of the STS(19) doubling", external: false },
    FixtureInfo { key: "f_sts15_example", kind: "factor", description: "factor system over the Fano plane giving STS(15) #2", external: false },
    FixtureInfo { key: "f1_sts9", kind: "factor", description: "factor system over STS(9), value 1 on {P3,P6,P9}", external: false },
    FixtureInfo { key: "f2_sts9", kind: "factor", description: "factor system over STS(9), value 1 on {P3,P4,P8}", external: false },
    FixtureInfo { key: "beta_465_789", kind: "permutation", description: "automorphism (P4 P6 P5)(P7 P8 P9) of STS(9)", external: false },
    FixtureInfo { key: "sts13_a", kind: "system", description: "cyclic STS(13), base blocks {0,1,4} {0,2,7}", external: true },
    FixtureInfo { key: "sts13_b", kind: "system", description: "non-cyclic STS(13), Pasch switch of sts13_a", external: true },
];

pub fn list() -> &'static [FixtureInfo] {
    FIXTURES
}

pub fn fixture(key: &str) -> Result<Fixture> {
    Ok(match key {
        "sts15_2" => Fixture::System(sts15_2()),
        "fano_labeled" => Fixture::System(fano_labeled()),
        "sts9_labeled" => Fixture::System(sts9_labeled()),
        "sts9_loop_table" => Fixture::Loop(sts9_loop_table()),
        "phi_11" => Fixture::Square(phi_11()),
        "phi_om1" => Fixture::Square(phi_om1()),
        "f_sts15_example" => Fixture::Factor(f_sts15_example()),
        "f1_sts9" => Fixture::Factor(f1_sts9()),
        "f2_sts9" => Fixture::Factor(f2_sts9()),
        "beta_465_789" => Fixture::Permutation(beta_465_789()),
        "sts13_a" => Fixture::System(sts13_a()),
        "sts13_b" => Fixture::System(sts13_b()),
        _ => return Err(Error::UnknownKey(key.to_string())),
    })
}

/// A triple system by name: a system fixture, a loop fixture (as its
/// system), `sts1`, `sts3`, `fano`, `pg<n>` or `ag<n>`.
pub fn system_by_name(name: &str) -> Result<TripleSystem> {
    let dim = |prefix: &str| name.strip_prefix(prefix).and_then(|d| d.parse::<u32>().ok());
    match name {
        "sts1" => return Ok(sts1()),
        "sts3" => return Ok(pg(1)),
        "fano" => return Ok(fano_labeled()),
        _ => {}
    }
    if let Some(n) = dim("pg").filter(|n| (1..=5).contains(n)) {
        return Ok(pg(n));
    }
    if let Some(n) = dim("ag").filter(|n| (1..=3).contains(n)) {
        return Ok(ag(n));
    }
    match fixture(name)? {
        Fixture::System(s) => Ok(s),
        Fixture::Loop(l) => Ok(l.to_system()),
        _ => Err(Error::UnknownKey(name.to_string())),
    }
}
