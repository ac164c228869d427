//! Steiner triple systems on the point set `{0, .., v-1}`.

use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// `true` iff an STS of order `v` exists, i.e. `v ≡ 1, 3 (mod 6)`.
pub fn admissible(v: usize) -> bool {
    matches!(v % 6, 1 | 3)
}

/// Checks a factorization `order = f_1 · f_2 · …` of a loop order, where each
/// factor `f_i` is the order of a Steiner loop and so must satisfy
/// `admissible(f_i - 1)`.
pub fn admissible_factorization(order: usize, factors: &[usize]) -> bool {
    if factors.is_empty() {
        return false;
    }
    let product = factors
        .iter()
        .try_fold(1usize, |acc, &f| acc.checked_mul(f));
    product == Some(order) && factors.iter().all(|&f| f >= 2 && admissible(f - 1))
}

/// A validated Steiner triple system.
///
/// Triples are stored sorted within themselves and lexicographically across the
/// list, so two systems compare equal iff they have the same blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    v: usize,
    triples: Vec<[usize; 3]>,
    third: Vec<u32>,
}

impl TripleSystem {
    /// Validates a raw point count and block list.
    pub fn new(v: usize, raw: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        if !admissible(v) {
            return Err(Error::NotAdmissible(v));
        }
        let mut triples = Vec::with_capacity(v * (v - 1) / 6);
        for t in raw {
            if t.iter().any(|&p| p >= v) {
                return Err(Error::BadTriple(t, "label out of range"));
            }
            if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(Error::BadTriple(t, "repeated point"));
            }
            let mut s = t;
            s.sort_unstable();
            triples.push(s);
        }
        triples.sort_unstable();

        let mut third = vec![NONE; v * v];
        for &[a, b, c] in &triples {
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                if third[x * v + y] != NONE {
                    return Err(Error::PairDuplicated(x, y));
                }
                third[x * v + y] = z as u32;
                third[y * v + x] = z as u32;
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                if third[x * v + y] == NONE {
                    return Err(Error::PairMissing(x, y));
                }
            }
        }
        let expected = v * (v - 1) / 6;
        if triples.len() != expected {
            return Err(Error::TripleCount { expected, found: triples.len() });
        }
        Ok(TripleSystem { v, triples, third })
    }

    /// Order (number of points).
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of blocks, `v(v-1)/6`.
    pub fn b(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Third point of the block through the distinct points `x` and `y`.
    #[inline]
    pub fn third(&self, x: usize, y: usize) -> Option<usize> {
        match self.third[x * self.v + y] {
            NONE => None,
            z => Some(z as usize),
        }
    }

    pub fn is_triple(&self, a: usize, b: usize, c: usize) -> bool {
        a != b && self.third(a, b) == Some(c)
    }

    /// Index of the block containing the distinct points `x` and `y`.
    pub fn triple_index(&self, x: usize, y: usize) -> Option<usize> {
        let z = self.third(x, y)?;
        let mut t = [x, y, z];
        t.sort_unstable();
        self.triples.binary_search(&t).ok()
    }

    /// Blocks through `p`, in canonical order.
    pub fn triples_through(&self, p: usize) -> impl Iterator<Item = &[usize; 3]> + '_ {
        self.triples.iter().filter(move |t| t.contains(&p))
    }

    /// Image of the system under a point permutation (`perm[p]` is the image of `p`).
    pub fn relabel(&self, perm: &[usize]) -> Result<TripleSystem> {
        if perm.len() != self.v {
            return Err(Error::ShapeMismatch(format!(
                "permutation of length {} applied to STS({})",
                perm.len(),
                self.v
            )));
        }
        TripleSystem::new(
            self.v,
            self.triples.iter().map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]]),
        )
    }

    /// `true` iff `points` is closed under taking third points.
    pub fn is_subsystem(&self, points: &[usize]) -> bool {
        let mut inside = vec![false; self.v];
        for &p in points {
            if p >= self.v {
                return false;
            }
            inside[p] = true;
        }
        points.iter().all(|&x| {
            points
                .iter()
                .all(|&y| x == y || self.third(x, y).is_some_and(|z| inside[z]))
        })
    }

    /// The subsystem on `points`, relabelled `0..k` in increasing label order.
    pub fn induced(&self, points: &[usize]) -> Result<TripleSystem> {
        if !self.is_subsystem(points) {
            return Err(Error::NotASubsystem);
        }
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let mut index = vec![usize::MAX; self.v];
        for (i, &p) in pts.iter().enumerate() {
            index[p] = i;
        }
        TripleSystem::new(
            pts.len(),
            self.triples
                .iter()
                .filter(|t| t.iter().all(|&p| index[p] != usize::MAX))
                .map(|t| [index[t[0]], index[t[1]], index[t[2]]]),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Vec<[usize; 3]> {
        vec![[0, 3, 4], [2, 4, 5], [0, 1, 2], [0, 5, 6], [2, 3, 6], [1, 4, 6], [1, 3, 5]]
    }

    #[test]
    fn fano_is_valid_and_normalized() {
        let s = TripleSystem::new(7, fano()).unwrap();
        assert_eq!(s.b(), 7);
        assert_eq!(s.triples()[0], [0, 1, 2]);
        assert!(s.triples().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s.third(4, 3), Some(0));
    }

    #[test]
    fn trivial_orders() {
        let s1 = TripleSystem::new(1, []).unwrap();
        assert_eq!(s1.b(), 0);
        let s3 = TripleSystem::new(3, [[2, 0, 1]]).unwrap();
        assert_eq!(s3.triples(), &[[0, 1, 2]]);
    }

    #[test]
    fn missing_triple_is_reported() {
        let mut t = fano();
        t.remove(3);
        assert!(matches!(TripleSystem::new(7, t), Err(Error::PairMissing(_, _))));
    }

    #[test]
    fn duplicated_pair_is_reported() {
        let mut t = fano();
        t[0] = [0, 1, 5];
        assert!(matches!(TripleSystem::new(7, t), Err(Error::PairDuplicated(_, _))));
    }

    #[test]
    fn bad_triples() {
        assert!(matches!(
            TripleSystem::new(3, [[0, 0, 1]]),
            Err(Error::BadTriple(_, _))
        ));
        assert!(matches!(
            TripleSystem::new(3, [[0, 1, 3]]),
            Err(Error::BadTriple(_, _))
        ));
        assert_eq!(TripleSystem::new(5, []), Err(Error::NotAdmissible(5)));
    }

    #[test]
    fn admissibility() {
        assert!(!admissible(5));
        assert!(admissible(1) && admissible(3) && admissible(7) && admissible(9));
        assert!(!admissible_factorization(14, &[2, 7]));
        assert!(admissible_factorization(20, &[2, 10]));
        assert!(admissible_factorization(16, &[2, 8]));
        assert!(!admissible_factorization(20, &[2, 8]));
    }

    #[test]
    fn induced_subsystem() {
        let s = TripleSystem::new(7, fano()).unwrap();
        let line = s.induced(&[0, 3, 4]).unwrap();
        assert_eq!(line.v(), 3);
        assert!(s.induced(&[0, 1, 3]).is_err());
    }
}
