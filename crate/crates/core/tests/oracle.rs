//! Values computed by exhaustive brute force, independently of the library's
//! algorithms, and frozen here.

use std::collections::BTreeSet;
use std::sync::Arc;

use steiner_core::catalog;
use steiner_core::census::census;
use steiner_core::iso::{are_isomorphic, automorphisms};
use steiner_core::schreier::{
    build_schreier, coboundary_matrix, count_nonequivalent, enumerate_factor_systems, hom_dimension,
    FactorSystem,
};
use steiner_core::veblen::{central_elements, veblen_points};
use steiner_core::{SteinerLoop, TripleSystem};

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn brute_aut_order(s: &TripleSystem) -> u128 {
    let blocks: BTreeSet<[usize; 3]> = s.triples().iter().copied().collect();
    let mut p: Vec<usize> = (0..s.v()).collect();
    let mut count = 0;
    loop {
        let preserved = s.triples().iter().all(|t| {
            let mut img = t.map(|x| p[x]);
            img.sort_unstable();
            blocks.contains(&img)
        });
        count += preserved as u128;
        if !next_permutation(&mut p) {
            return count;
        }
    }
}

/// Maps `φ: points → GF(2)` with `φ(a) + φ(b) + φ(c) = 0` on every block.
fn brute_hom_count(s: &TripleSystem) -> usize {
    (0u64..1 << s.v())
        .filter(|phi| s.triples().iter().all(|t| t.iter().map(|&p| phi >> p & 1).sum::<u64>() % 2 == 0))
        .count()
}

/// Distinct coboundaries of all `2^w` cochains, as block bitmasks.
fn brute_coboundaries(s: &TripleSystem) -> BTreeSet<u64> {
    (0u64..1 << s.v())
        .map(|phi| {
            s.triples()
                .iter()
                .enumerate()
                .map(|(i, t)| (t.iter().map(|&p| phi >> p & 1).sum::<u64>() % 2) << i)
                .sum()
        })
        .collect()
}

#[test]
fn automorphism_group_orders() {
    for (s, order) in [(catalog::fano_labeled(), 168), (catalog::pg(2), 168), (catalog::ag(2), 432)] {
        assert_eq!(brute_aut_order(&s), order);
        assert_eq!(automorphisms(&s).unwrap().order, order);
    }
    assert_eq!(automorphisms(&catalog::pg(3)).unwrap().order, 20160);
}

#[test]
fn hom_dimensions() {
    for (s, count) in [
        (catalog::sts1(), 2),
        (catalog::pg(1), 4),
        (catalog::fano_labeled(), 8),
        (catalog::sts9_labeled(), 1),
        (catalog::sts13_a(), 1),
        (catalog::pg(3), 16),
    ] {
        assert_eq!(brute_hom_count(&s), count);
        assert_eq!(1 << hom_dimension(&s), count);
    }
}

#[test]
fn coboundary_space_sizes() {
    for (s, count) in [(catalog::fano_labeled(), 16), (catalog::sts9_labeled(), 512), (catalog::sts13_b(), 8192)] {
        assert_eq!(brute_coboundaries(&s).len(), count);
        assert_eq!(1 << coboundary_matrix(&s).rank(), count);
    }
}

#[test]
fn fano_classes_by_brute_force() {
    let q = Arc::new(catalog::fano_labeled());
    let all: Vec<FactorSystem> = enumerate_factor_systems(q.clone(), 1, 24).unwrap().collect();
    assert_eq!(all.len(), 128);

    let cobs = brute_coboundaries(&q);
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for i in 0u64..128 {
        if seen.insert(i) {
            classes += 1;
            seen.extend(cobs.iter().map(|c| i ^ c));
        }
    }
    assert_eq!(classes, 8);
    assert_eq!(count_nonequivalent(&q, 1).unwrap(), 8);

    let mut reps: Vec<TripleSystem> = Vec::new();
    for f in &all {
        let s = build_schreier(f).to_system();
        if !reps.iter().any(|r| are_isomorphic(r, &s).unwrap().is_some()) {
            reps.push(s);
        }
    }
    assert_eq!(reps.len(), 2);
}

#[test]
fn sts9_class_count() {
    let q = catalog::sts9_labeled();
    let classes = (1u64 << q.b()) / brute_coboundaries(&q).len() as u64;
    assert_eq!(classes, 8);
    assert_eq!(count_nonequivalent(&q, 1).unwrap(), 8);
}

#[test]
fn pg3_configuration_counts() {
    let s = catalog::pg(3);
    let v = s.v();
    let t = s.triples();
    let mut pasch = vec![0usize; v];
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            for c in b + 1..t.len() {
                for d in c + 1..t.len() {
                    let mut deg = vec![0u8; v];
                    for blk in [t[a], t[b], t[c], t[d]] {
                        for p in blk {
                            deg[p] += 1;
                        }
                    }
                    let pts: Vec<usize> = (0..v).filter(|&p| deg[p] > 0).collect();
                    if pts.len() == 6 && pts.iter().all(|&p| deg[p] == 2) {
                        for p in pts {
                            pasch[p] += 1;
                        }
                    }
                }
            }
        }
    }
    let mut fano = vec![0usize; v];
    let mut subset = Vec::with_capacity(7);
    for mask in 0u32..1 << v {
        if mask.count_ones() != 7 {
            continue;
        }
        subset.clear();
        subset.extend((0..v).filter(|&p| mask >> p & 1 == 1));
        if s.is_subsystem(&subset) {
            for &p in &subset {
                fano[p] += 1;
            }
        }
    }
    let c = census(&s);
    assert_eq!(pasch, vec![42; v]);
    assert_eq!(fano, vec![7; v]);
    assert_eq!(c.pasch_through, pasch);
    assert_eq!(c.fano_through, fano);
    assert_eq!(c.pasch_total, 105);
    assert_eq!(c.fano_total, 15);
}

#[test]
fn center_by_direct_check() {
    // z is central iff (xz)y = x(zy) and (xy)z = x(yz) for all x, y
    fn brute_center(l: &SteinerLoop) -> Vec<usize> {
        let n = l.order();
        (1..n)
            .filter(|&z| {
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        l.mul(l.mul(x, z), y) == l.mul(x, l.mul(z, y))
                            && l.mul(l.mul(x, y), z) == l.mul(x, l.mul(y, z))
                    })
                })
            })
            .collect()
    }
    for s in [catalog::sts15_2(), catalog::pg(3), catalog::ag(2), catalog::sts13_a()] {
        let l = SteinerLoop::from_system(&s);
        assert_eq!(central_elements(&l), brute_center(&l));
    }
    assert_eq!(veblen_points(&catalog::sts15_2()), vec![0]);
}
