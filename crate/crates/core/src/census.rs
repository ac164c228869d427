//! Pasch configurations and Fano subplanes.
//!
//! A Pasch configuration is found from every pair of blocks `{a,b,c}`, `{a,d,e}`
//! sharing a point whose "cross" products agree (`b·d = c·e = f`); it is keyed by
//! its four block indices so the six discoveries collapse to one. A Pasch
//! configuration extends to a Fano plane iff its three pairs of opposite points
//! have a common third point; planes are keyed by their sorted 7-point set.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::system::TripleSystem;

/// Per-point and per-block configuration counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigCensus {
    pub pasch_through: Vec<usize>,
    pub fano_through: Vec<usize>,
    /// Indexed like `TripleSystem::triples`.
    pub fano_containing_triple: Vec<usize>,
    pub pasch_total: usize,
    pub fano_total: usize,
}

/// A Pasch configuration as four block indices (sorted) and its six points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pasch {
    pub blocks: [usize; 4],
    /// `[a, b, c, d, e, f]` with blocks `abc, ade, bdf, cef`.
    pub points: [usize; 6],
}

impl Pasch {
    /// Opposite (non-collinear) point pairs.
    pub fn opposite_pairs(&self) -> [(usize, usize); 3] {
        let [a, b, c, d, e, f] = self.points;
        [(a, f), (b, e), (c, d)]
    }
}

fn block(s: &TripleSystem, x: usize, y: usize) -> usize {
    s.triple_index(x, y).expect("distinct points")
}

/// All Pasch configurations of `s`, sorted by block indices.
pub fn pasch_configurations(s: &TripleSystem) -> Vec<Pasch> {
    let found: Vec<Vec<Pasch>> = (0..s.v())
        .into_par_iter()
        .map(|a| {
            let through: Vec<(usize, usize)> = s
                .triples_through(a)
                .map(|t| {
                    let mut o = t.iter().copied().filter(|&p| p != a);
                    (o.next().unwrap(), o.next().unwrap())
                })
                .collect();
            let mut out = Vec::new();
            for (i, &(b, c)) in through.iter().enumerate() {
                for &(d0, e0) in &through[i + 1..] {
                    for (d, e) in [(d0, e0), (e0, d0)] {
                        let f = s.third(b, d).unwrap();
                        if s.third(c, e) == Some(f) {
                            let mut blocks =
                                [block(s, a, b), block(s, a, d), block(s, b, d), block(s, c, e)];
                            blocks.sort_unstable();
                            out.push(Pasch { blocks, points: [a, b, c, d, e, f] });
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut all: Vec<Pasch> = found.into_iter().flatten().collect();
    all.sort_unstable_by_key(|x| x.blocks);
    all.dedup_by(|x, y| x.blocks == y.blocks);
    all
}

/// All Fano subplanes as sorted 7-point sets.
pub fn fano_subplanes(s: &TripleSystem) -> Vec<[usize; 7]> {
    fano_from_pasch(s, &pasch_configurations(s))
}

fn fano_from_pasch(s: &TripleSystem, pasch: &[Pasch]) -> Vec<[usize; 7]> {
    let mut planes = BTreeSet::new();
    for p in pasch {
        let [(a, f), (b, e), (c, d)] = p.opposite_pairs();
        let g = s.third(a, f).unwrap();
        if s.third(b, e) == Some(g) && s.third(c, d) == Some(g) {
            let mut pts = [a, b, c, d, e, f, g];
            pts.sort_unstable();
            planes.insert(pts);
        }
    }
    planes.into_iter().collect()
}

pub fn census(s: &TripleSystem) -> ConfigCensus {
    let pasch = pasch_configurations(s);
    let planes = fano_from_pasch(s, &pasch);
    let mut pasch_through = vec![0; s.v()];
    for p in &pasch {
        for &x in &p.points {
            pasch_through[x] += 1;
        }
    }
    let mut fano_through = vec![0; s.v()];
    let mut fano_containing_triple = vec![0; s.b()];
    for plane in &planes {
        for (i, &x) in plane.iter().enumerate() {
            fano_through[x] += 1;
            for &y in &plane[i + 1..] {
                let z = s.third(x, y).unwrap();
                if z > y {
                    fano_containing_triple[block(s, x, y)] += 1;
                }
            }
        }
    }
    ConfigCensus {
        pasch_through,
        fano_through,
        fano_containing_triple,
        pasch_total: pasch.len(),
        fano_total: planes.len(),
    }
}
