//! Central (Schreier) extensions of Steiner loops by elementary abelian
//! 2-groups.
//!
//! An extension of `N = (Z/2)^t` by a Steiner loop `Q` is the loop on pairs
//! `(P, x)` with `(P,x)∘(Q,y) = (PQ, x + y + f(P,Q))`, where the factor system
//! `f` vanishes on the diagonal and on the identity and is constant on the
//! triples of `Q`. It is stored as one `t`-bit value per triple.
//!
//! Element encoding of a built extension: `(P, x) ↦ P·2^t + x`, so the embedded
//! copy of `N` is `{0, .., 2^t − 1}` and `(Ω̄, Ω′)` is the identity `0`.

mod classify;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::iso::all_automorphisms;
use crate::loops::SteinerLoop;
use crate::system::{admissible, TripleSystem};
use crate::veblen::central_elements;

pub use classify::{classify, ClassificationReport, EquivalenceClass, IsomorphismClass};

/// Default cap on `t·b` for enumeration.
pub const DEFAULT_TB_BOUND: usize = 24;

/// The elementary abelian group `(Z/2)^t`, elements as `t`-bit integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElemAbelian2 {
    pub t: u32,
}

impl ElemAbelian2 {
    pub fn new(t: u32) -> Self {
        assert!(t < 32, "dimension {t} too large");
        ElemAbelian2 { t }
    }

    pub fn order(&self) -> usize {
        1 << self.t
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        x ^ y
    }

    pub fn as_loop(&self) -> SteinerLoop {
        SteinerLoop::elementary_abelian(self.t)
    }
}

/// An invertible linear map of `(Z/2)^t`, stored by the images of the unit
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearMap {
    cols: Vec<u32>,
}

impl LinearMap {
    pub fn identity(t: u32) -> Self {
        LinearMap { cols: (0..t).map(|j| 1 << j).collect() }
    }

    pub fn from_cols(t: u32, cols: Vec<u32>) -> Result<Self> {
        if cols.len() != t as usize || cols.iter().any(|&c| c >> t != 0) {
            return Err(Error::NotAutomorphism(format!("{cols:?} is not a {t}x{t} matrix")));
        }
        let m = LinearMap { cols };
        if m.rank() != t as usize {
            return Err(Error::NotAutomorphism(format!("{:?} is singular", m.cols)));
        }
        Ok(m)
    }

    pub fn t(&self) -> u32 {
        self.cols.len() as u32
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.cols
            .iter()
            .enumerate()
            .filter(|(j, _)| x >> j & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap { cols: other.cols.iter().map(|&c| self.apply(c)).collect() }
    }

    fn rank(&self) -> usize {
        let mut rows = self.cols.clone();
        let mut rank = 0;
        for bit in 0..32 {
            let Some(i) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, i);
            let p = rows[rank];
            for r in rows.iter_mut().skip(rank + 1) {
                if *r >> bit & 1 == 1 {
                    *r ^= p;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Every element of `GL(t, 2)`; only sensible for small `t`.
    pub fn all(t: u32) -> Vec<LinearMap> {
        let n = 1u32 << t;
        let mut out = Vec::new();
        let mut cols = vec![0u32; t as usize];
        fn rec(j: usize, n: u32, cols: &mut Vec<u32>, out: &mut Vec<LinearMap>) {
            if j == cols.len() {
                let m = LinearMap { cols: cols.clone() };
                if m.rank() == cols.len() {
                    out.push(m);
                }
                return;
            }
            for c in 1..n {
                cols[j] = c;
                rec(j + 1, n, cols, out);
            }
        }
        rec(0, n, &mut cols, &mut out);
        out
    }

    /// A generating set of `GL(t, 2)`: the whole group for `t ≤ 2`, otherwise
    /// the elementary transvections and adjacent coordinate swaps.
    pub fn generators(t: u32) -> Vec<LinearMap> {
        if t <= 2 {
            return Self::all(t);
        }
        let t = t as usize;
        let mut gens = Vec::new();
        for i in 0..t {
            for j in 0..t {
                if i != j {
                    let mut cols: Vec<u32> = (0..t).map(|k| 1 << k).collect();
                    cols[j] |= 1 << i;
                    gens.push(LinearMap { cols });
                }
            }
        }
        for i in 0..t - 1 {
            let mut cols: Vec<u32> = (0..t).map(|k| 1 << k).collect();
            cols.swap(i, i + 1);
            gens.push(LinearMap { cols });
        }
        gens
    }
}

/// A factor system: one `t`-bit value per triple of the quotient system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorSystem {
    q: Arc<TripleSystem>,
    t: u32,
    values: Vec<u32>,
}

impl FactorSystem {
    pub fn new(q: Arc<TripleSystem>, t: u32, values: Vec<u32>) -> Result<Self> {
        if t >= 32 {
            return Err(Error::ShapeMismatch(format!("dimension {t} too large")));
        }
        if values.len() != q.b() {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} triples",
                values.len(),
                q.b()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >> t != 0) {
            return Err(Error::ShapeMismatch(format!("value {v} does not fit in {t} bits")));
        }
        Ok(FactorSystem { q, t, values })
    }

    pub fn zero(q: Arc<TripleSystem>, t: u32) -> Self {
        let b = q.b();
        FactorSystem { q, t, values: vec![0; b] }
    }

    /// Sets the value on the triple through points `a`, `b` of the quotient.
    pub fn with_triple(mut self, a: usize, b: usize, value: u32) -> Result<Self> {
        let i = self
            .q
            .triple_index(a, b)
            .ok_or_else(|| Error::ShapeMismatch(format!("{{{a}, {b}}} is not a pair of points")))?;
        if value >> self.t != 0 {
            return Err(Error::ShapeMismatch(format!("value {value} does not fit")));
        }
        self.values[i] = value;
        Ok(self)
    }

    pub fn quotient(&self) -> &Arc<TripleSystem> {
        &self.q
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `f(P, Q)` for quotient loop elements `P`, `Q`.
    pub fn eval(&self, p: usize, q: usize) -> u32 {
        if p == 0 || q == 0 || p == q {
            return 0;
        }
        self.values[self.q.triple_index(p - 1, q - 1).expect("distinct points")]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn same_shape(&self, other: &FactorSystem) -> Result<()> {
        if self.t != other.t || *self.q != *other.q {
            return Err(Error::ShapeMismatch("factor systems over different data".into()));
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn add(&self, other: &FactorSystem) -> Result<FactorSystem> {
        self.same_shape(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a ^ b).collect();
        Ok(FactorSystem { q: self.q.clone(), t: self.t, values })
    }

    /// Bit string with bit `j` of triple `i` at position `i·t + j`.
    pub fn to_bits(&self) -> BitVec {
        let t = self.t as usize;
        let mut bits = BitVec::zeros(self.values.len() * t);
        for (i, &v) in self.values.iter().enumerate() {
            for j in 0..t {
                bits.set(i * t + j, v >> j & 1 == 1);
            }
        }
        bits
    }

    pub fn from_bits(q: Arc<TripleSystem>, t: u32, bits: &BitVec) -> Self {
        let tt = t as usize;
        let values = (0..q.b())
            .map(|i| (0..tt).filter(|&j| bits.get(i * tt + j)).fold(0u32, |v, j| v | 1 << j))
            .collect();
        FactorSystem { q, t, values }
    }

    /// The factor system numbered `index` in enumeration order (the integer
    /// whose bit `i·t + j` is bit `j` of triple `i`).
    pub fn from_index(q: Arc<TripleSystem>, t: u32, index: u64) -> Self {
        let mask = (1u64 << t) - 1;
        let values = (0..q.b()).map(|i| ((index >> (i as u32 * t)) & mask) as u32).collect();
        FactorSystem { q, t, values }
    }
}

/// A 1-cochain `φ: Q → N` with `φ(Ω̄) = Ω′`, stored per point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub t: u32,
    pub values: Vec<u32>,
}

impl Cochain {
    pub fn zero(w: usize, t: u32) -> Self {
        Cochain { t, values: vec![0; w] }
    }

    /// `φ(P)` for a quotient loop element.
    pub fn eval(&self, p: usize) -> u32 {
        if p == 0 {
            0
        } else {
            self.values[p - 1]
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain {
            t: self.t,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a ^ b).collect(),
        }
    }
}

/// Loop element of `(P, x)` in an extension by `(Z/2)^t`.
pub fn pair_element(t: u32, p: usize, x: u32) -> usize {
    p << t | x as usize
}

/// Inverse of [`pair_element`].
pub fn element_pair(t: u32, e: usize) -> (usize, u32) {
    (e >> t, (e & ((1 << t) - 1)) as u32)
}

/// The Schreier extension defined by `f`.
pub fn build_schreier(f: &FactorSystem) -> SteinerLoop {
    let t = f.t;
    let m = f.q.v() + 1;
    let ql = SteinerLoop::from_system(&f.q);
    SteinerLoop::from_fn_unchecked(m << t, |a, b| {
        let (p, x) = element_pair(t, a);
        let (q, y) = element_pair(t, b);
        pair_element(t, ql.mul(p, q), x ^ y ^ f.eval(p, q))
    })
}

/// The `b × w` incidence matrix of triples against points; `δ¹` acts on each
/// bit component as this matrix.
pub fn coboundary_matrix(q: &TripleSystem) -> BitMatrix {
    let mut m = BitMatrix::zeros(q.b(), q.v());
    for (i, t) in q.triples().iter().enumerate() {
        for &p in t {
            m.set(i, p, true);
        }
    }
    m
}

/// `δ¹φ`, whose value on a triple `{P,Q,R}` is `φ(P) + φ(Q) + φ(R)`.
pub fn coboundary(q: &Arc<TripleSystem>, phi: &Cochain) -> FactorSystem {
    let values = q
        .triples()
        .iter()
        .map(|&[a, b, c]| phi.values[a] ^ phi.values[b] ^ phi.values[c])
        .collect();
    FactorSystem { q: q.clone(), t: phi.t, values }
}

/// Some `φ` with `δ¹φ = f`, solving one GF(2) system per bit.
pub fn is_coboundary(f: &FactorSystem) -> Option<Cochain> {
    let m = coboundary_matrix(&f.q);
    let mut phi = Cochain::zero(f.q.v(), f.t);
    for bit in 0..f.t {
        let rhs = BitVec::from_bools(&f.values.iter().map(|v| v >> bit & 1 == 1).collect::<Vec<_>>());
        let x = m.solve(&rhs)?;
        for p in x.ones() {
            phi.values[p] |= 1 << bit;
        }
    }
    Some(phi)
}

/// A cochain `φ` with `f1 + f2 = δ¹φ`, if the factor systems are equivalent.
pub fn are_equivalent(f1: &FactorSystem, f2: &FactorSystem) -> Result<Option<Cochain>> {
    Ok(is_coboundary(&f1.add(f2)?))
}

/// The element map `(P, x) ↦ (P, x + φ(P))` between built extensions.
pub fn equivalence_map(w: usize, phi: &Cochain) -> Vec<usize> {
    let t = phi.t;
    (0..(w + 1) << t)
        .map(|e| {
            let (p, x) = element_pair(t, e);
            pair_element(t, p, x ^ phi.eval(p))
        })
        .collect()
}

fn check_tb(q: &TripleSystem, t: u32, bound: usize) -> Result<usize> {
    let tb = t as usize * q.b();
    if tb > bound || tb >= 64 {
        return Err(Error::BoundExceeded(format!("t*b = {tb} exceeds {bound}")));
    }
    Ok(tb)
}

/// Streams all `2^{tb}` factor systems over `q` in index order.
pub fn enumerate_factor_systems(
    q: Arc<TripleSystem>,
    t: u32,
    bound: usize,
) -> Result<impl Iterator<Item = FactorSystem>> {
    let tb = check_tb(&q, t, bound)?;
    Ok((0..1u64 << tb).map(move |i| FactorSystem::from_index(q.clone(), t, i)))
}

/// Dimension over GF(2) of `Hom(L_Q, Z/2)`.
pub fn hom_dimension(q: &TripleSystem) -> usize {
    q.v() - coboundary_matrix(q).rank()
}

/// Every loop homomorphism `L_Q → (Z/2)^t`, as cochains.
pub fn hom_set(q: &TripleSystem, t: u32, bound: usize) -> Result<Vec<Cochain>> {
    let kernel = coboundary_matrix(q).kernel();
    let d = kernel.len() * t as usize;
    if d > bound || d >= 64 {
        return Err(Error::BoundExceeded(format!("|Hom| = 2^{d} exceeds 2^{bound}")));
    }
    let mut out = Vec::with_capacity(1 << d);
    for idx in 0u64..1 << d {
        let mut phi = Cochain::zero(q.v(), t);
        for bit in 0..t as usize {
            for (k, vec) in kernel.iter().enumerate() {
                if idx >> (bit * kernel.len() + k) & 1 == 1 {
                    for p in vec.ones() {
                        phi.values[p] ^= 1 << bit;
                    }
                }
            }
        }
        out.push(phi);
    }
    Ok(out)
}

/// Number of inequivalent extensions from the closed form
/// `2^{t·w(w−7)/6} · |Hom(L_Q, N)|`.
pub fn count_nonequivalent(q: &TripleSystem, t: u32) -> Result<u128> {
    let w = q.v() as i64;
    // w(w−7)/6 = b − w, which is negative for w ∈ {1, 3}
    let exp = t as i64 * (w * (w - 7) / 6) + t as i64 * hom_dimension(q) as i64;
    if !(0..128).contains(&exp) {
        return Err(Error::BoundExceeded(format!("2^{exp} does not fit")));
    }
    Ok(1u128 << exp)
}

/// `log2` of the number of equivalence classes from the rank of `δ¹`.
pub fn equivalence_class_log2(q: &TripleSystem, t: u32) -> usize {
    t as usize * (q.b() - coboundary_matrix(q).rank())
}

/// `(α, β)·f`, the factor system `g(P,Q) = α(f(β⁻¹P, β⁻¹Q))`; `beta` permutes
/// the points of the quotient.
pub fn apply_aut(f: &FactorSystem, alpha: &LinearMap, beta: &[usize]) -> Result<FactorSystem> {
    if alpha.t() != f.t {
        return Err(Error::NotAutomorphism(format!(
            "linear map of dimension {} on a group of dimension {}",
            alpha.t(),
            f.t
        )));
    }
    let image = f.q.relabel(beta).map_err(|e| Error::NotAutomorphism(e.to_string()))?;
    if image != *f.q {
        return Err(Error::NotAutomorphism(format!("{beta:?} does not preserve the triples")));
    }
    Ok(apply_aut_unchecked(f, alpha, beta))
}

pub(crate) fn apply_aut_unchecked(f: &FactorSystem, alpha: &LinearMap, beta: &[usize]) -> FactorSystem {
    let mut values = vec![0; f.values.len()];
    for (i, &[a, b, _]) in f.q.triples().iter().enumerate() {
        let j = f.q.triple_index(beta[a], beta[b]).expect("automorphism");
        values[j] = alpha.apply(f.values[i]);
    }
    FactorSystem { q: f.q.clone(), t: f.t, values }
}

/// `true` iff `f(P,QR) + f(Q,R) = f(PQ,R) + f(P,Q)` for all `P, Q, R`, the
/// condition for the extension to be a group.
pub fn is_associative_factor(f: &FactorSystem) -> bool {
    let ql = SteinerLoop::from_system(&f.q);
    let m = ql.order();
    (0..m).all(|p| {
        (0..m).all(|q| {
            (0..m).all(|r| {
                ql.mul(ql.mul(p, q), r) == ql.mul(p, ql.mul(q, r))
                    && f.eval(p, ql.mul(q, r)) ^ f.eval(q, r) == f.eval(ql.mul(p, q), r) ^ f.eval(p, q)
            })
        })
    })
}

/// Quotient elements `P ≠ Ω̄` that are central in `Q` and satisfy
/// `f(P,Q) + f(PQ,R) = f(Q,R) + f(P,QR)` for all `Q, R`. For each such `P`
/// every `(P, x)` is central in the extension.
pub fn further_veblen(f: &FactorSystem) -> Vec<usize> {
    let ql = SteinerLoop::from_system(&f.q);
    let m = ql.order();
    central_elements(&ql)
        .into_iter()
        .filter(|&p| {
            (0..m).all(|q| {
                let pq = ql.mul(p, q);
                (0..m).all(|r| f.eval(p, q) ^ f.eval(pq, r) == f.eval(q, r) ^ f.eval(p, ql.mul(q, r)))
            })
        })
        .collect()
}

/// Whether an `STS(v)` can have exactly `2^t − 1` Veblen points, i.e. a center
/// of order `2^t`.
pub fn veblen_existence(v: usize, t: u32) -> Result<bool> {
    if !admissible(v) {
        return Err(Error::NotAdmissible(v));
    }
    if t == 0 || t >= usize::BITS {
        return Ok(t == 0);
    }
    let m = v + 1;
    Ok(m.is_multiple_of(1 << t) && matches!((m >> t) % 6, 2 | 4))
}

/// `⌊(v−7)/8⌋`: an `STS(v)` with more Veblen points than this is projective.
pub fn projectivity_threshold(v: usize) -> Result<usize> {
    if v < 7 {
        return Err(Error::OrderTooSmall(v));
    }
    Ok((v - 7) / 8)
}

/// For `2^n − 1 ≤ v < 2^{n+1} − 1` with `n > 1`, returns `n` and the least
/// Veblen count (`⌈2^{n−3}⌉`) that forces a system of order `v` to be
/// `PG(n−1, 2)`.
pub fn pg_forcing_count(v: usize) -> Option<(u32, usize)> {
    let n = (v + 1).ilog2();
    (n > 1).then(|| (n, 1usize << n.saturating_sub(3)))
}

/// An `(α, β)` with `(α, β)·f1` equivalent to `f2`, together with the
/// cochain realizing that equivalence. Exhaustive over `GL(t,2) × Aut(Q)`.
pub fn find_isomorphism_witness(
    f1: &FactorSystem,
    f2: &FactorSystem,
    limit: usize,
) -> Result<Option<(LinearMap, Vec<usize>, Cochain)>> {
    f1.same_shape(f2)?;
    if f1.t > 4 {
        return Err(Error::BoundExceeded(format!("GL({}, 2) is too large to scan", f1.t)));
    }
    let auts = all_automorphisms(&f1.q, limit)?;
    for alpha in LinearMap::all(f1.t) {
        for beta in &auts {
            let g = apply_aut_unchecked(f1, &alpha, beta);
            if let Some(phi) = is_coboundary(&g.add(f2)?) {
                return Ok(Some((alpha, beta.clone(), phi)));
            }
        }
    }
    Ok(None)
}
