//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 bits per word. Elimination always pivots on the lowest
//! available column and the lowest available row, so results are reproducible.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set position.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    /// Lexicographic order with position 0 most significant.
    pub fn lex_cmp(&self, other: &BitVec) -> Ordering {
        for i in 0..self.len.min(other.len) {
            match (self.get(i), other.get(i)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        self.len.cmp(&other.len)
    }
}

/// A subspace stored as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim_ambient: usize,
    /// Basis rows; `rows[i]` has a 1 at `pivots[i]` and 0 at every other pivot.
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of `gens` inside `GF(2)^len`.
    pub fn span(len: usize, gens: impl IntoIterator<Item = BitVec>) -> Self {
        let mut s = Subspace { dim_ambient: len, rows: Vec::new(), pivots: Vec::new() };
        for g in gens {
            s.insert(g);
        }
        s
    }

    /// Adds a vector, keeping the basis fully reduced. Returns `false` if it was
    /// already in the span.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        v = self.reduce(v);
        let Some(p) = v.first_one() else { return false };
        for r in &mut self.rows {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// The unique coset representative with zeros at all pivot positions; it is
    /// the lexicographically least element of `v + self`.
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    /// Positions that are not pivots, ascending.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.dim_ambient).filter(|p| self.pivots.binary_search(p).is_err()).collect()
    }
}

/// A dense `rows × cols` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix { cols, rows: vec![BitVec::zeros(cols); rows] }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    /// Gauss–Jordan elimination in place, applying the same row operations to
    /// `rhs`. Returns pivot columns in row order.
    fn eliminate(&mut self, mut rhs: Option<&mut BitVec>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            if let Some(b) = rhs.as_deref_mut() {
                let (x, y) = (b.get(r), b.get(p));
                b.set(r, y);
                b.set(p, x);
            }
            let pivot_row = self.rows[r].clone();
            let pivot_rhs = rhs.as_deref().map(|b| b.get(r));
            for i in 0..self.rows.len() {
                if i != r && self.rows[i].get(c) {
                    self.rows[i].xor_assign(&pivot_row);
                    if let (Some(b), Some(true)) = (rhs.as_deref_mut(), pivot_rhs) {
                        b.flip(i);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate(None).len()
    }

    /// Some `x` with `self · x = b`, free variables set to zero; `None` if the
    /// system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows.len());
        let mut m = self.clone();
        let mut rhs = b.clone();
        let pivots = m.eliminate(Some(&mut rhs));
        if (pivots.len()..m.rows.len()).any(|i| rhs.get(i)) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &c) in pivots.iter().enumerate() {
            x.set(c, rhs.get(i));
        }
        Some(x)
    }

    /// Basis of the right kernel `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.eliminate(None);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = BitVec::zeros(self.cols);
                x.set(f, true);
                for (i, &c) in pivots.iter().enumerate() {
                    if m.rows[i].get(f) {
                        x.set(c, true);
                    }
                }
                x
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            let parity = r.words.iter().zip(&x.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            out.set(i, parity % 2 == 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(bits: &str) -> BitVec {
        BitVec::from_bools(&bits.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = BitMatrix::from_rows(3, vec![bv("110"), bv("011"), bv("101")]);
        assert_eq!(a.rank(), 2);
        let x = a.solve(&bv("110")).unwrap();
        assert_eq!(a.mul_vec(&x), bv("110"));
        assert!(a.solve(&bv("100")).is_none());
        assert_eq!(a.kernel(), vec![bv("111")]);
    }

    #[test]
    fn reduce_gives_lex_least() {
        let s = Subspace::span(4, [bv("1100"), bv("0110")]);
        assert_eq!(s.reduce(bv("1111")), bv("0011"));
        assert_eq!(s.free_positions(), vec![2, 3]);
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
        (1usize..10, 1usize..10).prop_flat_map(|(r, c)| {
            (Just(c), proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((c, rows) in arb_matrix()) {
            let m = BitMatrix::from_rows(c, rows.iter().map(|r| BitVec::from_bools(r)).collect());
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), c);
            for x in &k {
                prop_assert!(m.mul_vec(x).is_zero());
            }
        }

        #[test]
        fn solve_is_correct_on_image((c, rows) in arb_matrix(), seed in any::<u64>()) {
            let m = BitMatrix::from_rows(c, rows.iter().map(|r| BitVec::from_bools(r)).collect());
            let x = BitVec::from_bools(&(0..c).map(|i| seed >> (i % 64) & 1 == 1).collect::<Vec<_>>());
            let b = m.mul_vec(&x);
            let y = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&y), b);
        }

        #[test]
        fn coset_rep_is_lex_min(gens in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 6), 0..4),
                                v in proptest::collection::vec(any::<bool>(), 6)) {
            let s = Subspace::span(6, gens.iter().map(|g| BitVec::from_bools(g)));
            let v = BitVec::from_bools(&v);
            let rep = s.reduce(v.clone());
            // brute force over the span
            let basis = s.basis().to_vec();
            for mask in 0u32..(1 << basis.len()) {
                let mut w = v.clone();
                for (i, b) in basis.iter().enumerate() {
                    if mask >> i & 1 == 1 { w.xor_assign(b); }
                }
                prop_assert_ne!(w.lex_cmp(&rep), Ordering::Less);
            }
        }
    }
}
