//! Veblen points, projective hyperplanes and normal triples.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::{
    element_of_point, generated_subloop, is_normal, point_of_element, SteinerLoop, Subloop,
};
use crate::gf2::BitVec;
use crate::schreier::coboundary_matrix;
use crate::system::TripleSystem;

/// Veblen points of `s`, computed as the non-identity central elements of its
/// Steiner loop.
pub fn veblen_points(s: &TripleSystem) -> Vec<usize> {
    central_elements(&SteinerLoop::from_system(s))
        .into_iter()
        .map(point_of_element)
        .collect()
}

/// Non-identity central elements of `l`, sorted.
pub fn central_elements(l: &SteinerLoop) -> Vec<usize> {
    (1..l.order())
        .into_par_iter()
        .filter(|&z| l.is_central(z))
        .collect()
}

/// Pasch-closure test for a single point: whenever `{x,a,b}`, `{x,c,d}` and
/// `{y,a,c}` are blocks, `{y,b,d}` is a block too.
pub fn is_veblen_point_by_pasch(s: &TripleSystem, x: usize) -> bool {
    let through: Vec<(usize, usize)> = s
        .triples_through(x)
        .map(|t| {
            let mut o = t.iter().copied().filter(|&p| p != x);
            (o.next().unwrap(), o.next().unwrap())
        })
        .collect();
    for (i, &(a, b)) in through.iter().enumerate() {
        for &(c, d) in &through[i + 1..] {
            // the two labellings of the second block
            if s.third(a, c) != s.third(b, d) || s.third(a, d) != s.third(b, c) {
                return false;
            }
        }
    }
    true
}

/// Veblen points via the Pasch-closure definition.
pub fn veblen_points_by_pasch(s: &TripleSystem) -> Vec<usize> {
    (0..s.v()).filter(|&x| is_veblen_point_by_pasch(s, x)).collect()
}

/// `true` iff the Steiner loop of `s` is a group, i.e. `s` is a projective
/// space over GF(2).
pub fn is_projective(s: &TripleSystem) -> bool {
    SteinerLoop::from_system(s).is_associative()
}

/// `true` iff the subsystem on `points` meets every block. Fails when `points`
/// is not closed.
pub fn is_projective_hyperplane(s: &TripleSystem, points: &[usize]) -> Result<bool> {
    if !s.is_subsystem(points) {
        return Err(Error::NotASubsystem);
    }
    let mut inside = vec![false; s.v()];
    for &p in points {
        inside[p] = true;
    }
    let meets_all = s.triples().iter().all(|t| t.iter().any(|&p| inside[p]));
    let proper = inside.iter().filter(|&&b| b).count() < s.v();
    Ok(meets_all && proper)
}

/// All projective hyperplanes of `s`, each as a sorted point list.
///
/// A hyperplane is the zero set of a nonzero `h: points → GF(2)` summing to
/// zero on every block, so they are read off the kernel of the incidence
/// matrix.
pub fn hyperplanes(s: &TripleSystem) -> Vec<Vec<usize>> {
    let kernel = coboundary_matrix(s).kernel();
    let k = kernel.len();
    let mut out: Vec<Vec<usize>> = (1u64..1 << k)
        .map(|mask| {
            let mut h = BitVec::zeros(s.v());
            for (i, b) in kernel.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    h.xor_assign(b);
                }
            }
            (0..s.v()).filter(|&p| !h.get(p)).collect()
        })
        .collect();
    out.sort();
    out
}

/// For a normal triple `t` (an order-4 subloop) and an element `a` outside it,
/// checks that `t ∪ {a}` generates a Fano plane.
pub fn check_normal_triple_fano(l: &SteinerLoop, t: &Subloop, a: usize) -> Result<bool> {
    if t.order() != 4 {
        return Err(Error::ShapeMismatch(format!(
            "expected a triple (order-4 subloop), got order {}",
            t.order()
        )));
    }
    if !is_normal(l, t)? {
        return Err(Error::NotNormal);
    }
    if t.contains(a) {
        return Err(Error::ElementInsideN(a));
    }
    let mut seed = t.members().to_vec();
    seed.push(a);
    let g = generated_subloop(l, &seed);
    Ok(g.order() == 8 && l.restrict(&g).is_associative())
}

/// The subloop formed by the Veblen points of `s` together with Ω.
pub fn veblen_subloop(s: &TripleSystem) -> Subloop {
    let l = SteinerLoop::from_system(s);
    Subloop::new(&l, veblen_points(s).into_iter().map(element_of_point))
        .expect("the center is a subloop")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn both_definitions_agree_on_catalog() {
        for s in [
            catalog::pg(1),
            catalog::pg(2),
            catalog::pg(3),
            catalog::ag(2),
            catalog::sts15_2(),
            catalog::sts13_a(),
            catalog::sts13_b(),
        ] {
            assert_eq!(veblen_points(&s), veblen_points_by_pasch(&s));
        }
    }

    #[test]
    fn known_veblen_sets() {
        assert_eq!(veblen_points(&catalog::sts15_2()), vec![0]);
        assert_eq!(veblen_points(&catalog::pg(3)).len(), 15);
        assert!(veblen_points(&catalog::ag(2)).is_empty());
    }

    #[test]
    fn hyperplane_checks() {
        let fano = catalog::pg(2);
        let t = fano.triples()[0].to_vec();
        assert!(is_projective_hyperplane(&fano, &t).unwrap());
        let s = catalog::sts15_2();
        let t = s.triples()[0].to_vec();
        assert!(!is_projective_hyperplane(&s, &t).unwrap());
        assert_eq!(is_projective_hyperplane(&s, &[0, 1]), Err(Error::NotASubsystem));
    }

    #[test]
    fn hyperplane_enumeration() {
        let pg3 = catalog::pg(3);
        let hs = hyperplanes(&pg3);
        assert_eq!(hs.len(), 15);
        for h in &hs {
            assert_eq!(h.len(), 7);
            assert!(is_projective_hyperplane(&pg3, h).unwrap());
        }
        assert!(hyperplanes(&catalog::ag(2)).is_empty());
        for h in hyperplanes(&catalog::sts15_2()) {
            assert!(is_projective_hyperplane(&catalog::sts15_2(), &h).unwrap());
        }
    }

    #[test]
    fn normal_triple_generates_fano() {
        let pg = SteinerLoop::from_system(&catalog::pg(3));
        for t in 0..3 {
            let tri = catalog::pg(3).triples()[t];
            let sub = Subloop::new(&pg, tri.map(element_of_point)).unwrap();
            for a in 1..16 {
                if !sub.contains(a) {
                    assert!(check_normal_triple_fano(&pg, &sub, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn non_normal_triple_is_refused() {
        let l = SteinerLoop::from_system(&catalog::sts15_2());
        let sub = Subloop::new(&l, [5, 9, 12].map(element_of_point)).unwrap();
        assert_eq!(check_normal_triple_fano(&l, &sub, 1), Err(Error::NotNormal));
    }
}
