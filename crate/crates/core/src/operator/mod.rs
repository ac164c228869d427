//! General extensions of Steiner loops through Steiner operators.
//!
//! A Steiner operator assigns a Latin square `Φ_{P,Q}` over `L_N` to each pair
//! of elements of `L_Q`; the extension is `(P,x)∘(Q,y) = (PQ, Φ_{P,Q}(x,y))`.
//! Built loops use the element encoding `(P, x) ↦ P·n + x` with `n = |L_N|`.

mod isotopy;
mod latin;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::loops::{quotient, SteinerLoop, Subloop};
use crate::schreier::FactorSystem;
use crate::system::TripleSystem;

pub use isotopy::{find_equivalence, verify_isotopy_family, IsotopyFamily, DEFAULT_SEARCH_BOUND};
pub use latin::{for_each_symmetric_unipotent, LatinSquare};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerOperator {
    q: SteinerLoop,
    n_loop: SteinerLoop,
    /// Row-major over `(P, Q)`.
    blocks: Vec<LatinSquare>,
}

impl SteinerOperator {
    /// Assembles an operator; only shapes are checked here, see
    /// [`SteinerOperator::validate`].
    pub fn new(q: SteinerLoop, n_loop: SteinerLoop, blocks: Vec<LatinSquare>) -> Result<Self> {
        let (m, n) = (q.order(), n_loop.order());
        if blocks.len() != m * m {
            return Err(Error::ShapeMismatch(format!("{} blocks for {m}x{m} quotient", blocks.len())));
        }
        if let Some(b) = blocks.iter().find(|b| b.n() != n) {
            return Err(Error::ShapeMismatch(format!("block of side {} for a loop of order {n}", b.n())));
        }
        Ok(SteinerOperator { q, n_loop, blocks })
    }

    pub fn q(&self) -> &SteinerLoop {
        &self.q
    }

    pub fn n_loop(&self) -> &SteinerLoop {
        &self.n_loop
    }

    pub fn block(&self, p: usize, q: usize) -> &LatinSquare {
        &self.blocks[p * self.q.order() + q]
    }

    pub fn blocks(&self) -> &[LatinSquare] {
        &self.blocks
    }

    /// `Φ_{P,Q}(x, y)`.
    #[inline]
    pub fn phi(&self, p: usize, q: usize, x: usize, y: usize) -> usize {
        self.block(p, q).get(x, y)
    }

    /// Checks conditions (i)–(iv) exhaustively.
    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.q.order(), self.n_loop.order());
        for p in 0..m {
            for q in 0..m {
                if !self.block(p, q).is_latin() {
                    return Err(Error::NotLatin(p, q));
                }
            }
        }
        let id = self.block(0, 0);
        if (0..n).any(|x| (0..n).any(|y| id.get(x, y) != self.n_loop.mul(x, y))) {
            return Err(Error::BadIdentityBlock);
        }
        for p in 0..m {
            for q in 0..m {
                let (a, b) = (self.block(p, q), self.block(q, p));
                if (0..n).any(|x| (0..n).any(|y| b.get(y, x) != a.get(x, y))) {
                    return Err(Error::TransposeViolation(p, q));
                }
            }
        }
        for p in 0..m {
            if (0..n).any(|x| self.phi(p, p, x, x) != 0) {
                return Err(Error::DiagonalViolation(p));
            }
        }
        for p in 0..m {
            for q in 0..m {
                let pq = self.q.mul(p, q);
                let (a, b) = (self.block(p, q), self.block(p, pq));
                if (0..n).any(|x| (0..n).any(|y| b.get(x, a.get(x, y)) != y)) {
                    return Err(Error::TotalSymmetryViolation(p, q));
                }
            }
        }
        debug_assert!((0..m).all(|p| (0..n).all(|x| self.phi(p, 0, x, 0) == x)));
        Ok(())
    }
}

/// The loop defined by a valid operator.
pub fn build_extension(op: &SteinerOperator) -> Result<SteinerLoop> {
    op.validate().map_err(|e| Error::InvalidOperator(Box::new(e)))?;
    let (m, n) = (op.q.order(), op.n_loop.order());
    let mut table = Vec::with_capacity(m * n * m * n);
    for a in 0..m * n {
        let (p, x) = (a / n, a % n);
        for b in 0..m * n {
            let (q, y) = (b / n, b % n);
            table.push(op.q.mul(p, q) * n + op.phi(p, q, x, y));
        }
    }
    SteinerLoop::from_table(m * n, &table).map_err(|e| Error::InvalidOperator(Box::new(e)))
}

/// Decomposes `l` along a normal subloop `n`. `section[i]` is the chosen
/// representative of coset `i` (cosets ordered by least element, coset 0 is
/// `N`); `None` picks least elements. `N`'s members, in increasing order, are
/// relabelled `0, 1, ..`.
///
/// Returns the operator and the isomorphism from its built loop onto `l`,
/// `(P, x) ↦ σ(P)·x`.
pub fn operator_from_extension(
    l: &SteinerLoop,
    n: &Subloop,
    section: Option<&[usize]>,
) -> Result<(SteinerOperator, Vec<usize>)> {
    let quo = quotient(l, n)?;
    let m = quo.cosets.len();
    let sigma: Vec<usize> = match section {
        None => quo.cosets.iter().map(|c| c[0]).collect(),
        Some(s) => {
            if s.len() != m {
                return Err(Error::BadSection(format!("{} representatives for {m} cosets", s.len())));
            }
            if s[0] != 0 {
                return Err(Error::BadSection("the subloop must be represented by the identity".into()));
            }
            for (i, &r) in s.iter().enumerate() {
                if r >= l.order() || quo.epi[r] != i {
                    return Err(Error::BadSection(format!("{r} is not in coset {i}")));
                }
            }
            s.to_vec()
        }
    };
    let members = n.members();
    let size = members.len();
    let mut label = vec![usize::MAX; l.order()];
    for (j, &e) in members.iter().enumerate() {
        label[e] = j;
    }
    let n_loop = l.restrict(n);
    let q_loop = quo.table.clone();
    let embed: Vec<usize> = (0..m * size).map(|e| l.mul(sigma[e / size], members[e % size])).collect();
    let mut blocks = Vec::with_capacity(m * m);
    for p in 0..m {
        for q in 0..m {
            let pq = q_loop.mul(p, q);
            blocks.push(LatinSquare::from_fn(size, |x, y| {
                let prod = l.mul(embed[p * size + x], embed[q * size + y]);
                label[l.mul(sigma[pq], prod)]
            }));
        }
    }
    Ok((SteinerOperator::new(q_loop, n_loop, blocks)?, embed))
}

fn derive_block(
    src: &LatinSquare,
    p: usize,
    q: usize,
    // value written at (x, src(x,y)) given (x, y)
    mut put: impl FnMut(usize, usize) -> (usize, usize, usize),
) -> Result<LatinSquare> {
    let n = src.n();
    let mut out = LatinSquare::from_entries(n, vec![u32::MAX; n * n]);
    for x in 0..n {
        for y in 0..n {
            let (r, c, v) = put(x, y);
            if out.get(r, c) != u32::MAX as usize && out.get(r, c) != v {
                return Err(Error::Incompletable(p, q));
            }
            out.set(r, c, v);
        }
    }
    if !out.is_latin() {
        return Err(Error::Incompletable(p, q));
    }
    Ok(out)
}

/// Rebuilds a full operator from the diagonal blocks `Φ_{P,P}` (including
/// `Φ_{Ω̄,Ω̄}`) and one block `Φ_{P,Q}` per triple of `Q`, where `P < Q` are the
/// two smallest elements of the triple, in triple order.
pub fn complete_from_blocks(
    q: &SteinerLoop,
    n_loop: &SteinerLoop,
    diagonal: &[LatinSquare],
    off: &[LatinSquare],
) -> Result<SteinerOperator> {
    let (m, n) = (q.order(), n_loop.order());
    let qs = q.to_system();
    if diagonal.len() != m || off.len() != qs.b() {
        return Err(Error::ShapeMismatch(format!(
            "need {m} diagonal and {} off-diagonal blocks, got {} and {}",
            qs.b(),
            diagonal.len(),
            off.len()
        )));
    }
    if let Some(b) = diagonal.iter().chain(off).find(|b| b.n() != n) {
        return Err(Error::ShapeMismatch(format!("block of side {} for a loop of order {n}", b.n())));
    }
    let mut blocks: Vec<Option<LatinSquare>> = vec![None; m * m];
    let set = |p: usize, q: usize, b: LatinSquare, blocks: &mut Vec<Option<LatinSquare>>| {
        blocks[q * m + p] = Some(b.transpose());
        blocks[p * m + q] = Some(b);
    };
    for (p, d) in diagonal.iter().enumerate() {
        blocks[p * m + p] = Some(d.clone());
    }
    for p in 1..m {
        // Φ_{P,Ω̄}(x, Φ_{P,P}(x,y)) = y
        let d = &diagonal[p];
        let b = derive_block(d, p, 0, |x, y| (x, d.get(x, y), y))?;
        set(p, 0, b, &mut blocks);
    }
    for (i, &[a, b, c]) in qs.triples().iter().enumerate() {
        let (p, r, s) = (a + 1, b + 1, c + 1);
        let f = &off[i];
        // Φ_{P,S}(x, Φ_{P,R}(x,y)) = y and Φ_{R,S}(y, Φ_{R,P}(y,x)) = x
        let ps = derive_block(f, p, s, |x, y| (x, f.get(x, y), y))?;
        let rs = derive_block(f, r, s, |x, y| (y, f.get(x, y), x))?;
        set(p, r, f.clone(), &mut blocks);
        set(p, s, ps, &mut blocks);
        set(r, s, rs, &mut blocks);
    }
    let blocks = blocks.into_iter().map(|b| b.expect("every block derived")).collect();
    let op = SteinerOperator::new(q.clone(), n_loop.clone(), blocks)?;
    op.validate().map_err(|e| Error::InvalidOperator(Box::new(e)))?;
    Ok(op)
}

/// The index-2 extension of `L_N` given by a symmetric Latin square with
/// identity diagonal, as a triple system whose first `u` points carry `N`.
pub fn double(n_loop: &SteinerLoop, square: &LatinSquare) -> Result<TripleSystem> {
    Ok(build_extension(&doubling_operator(n_loop, square)?)?.to_system())
}

/// The Steiner operator behind [`double`].
pub fn doubling_operator(n_loop: &SteinerLoop, square: &LatinSquare) -> Result<SteinerOperator> {
    if square.n() != n_loop.order() {
        return Err(Error::ShapeMismatch(format!(
            "square of side {} for a loop of order {}",
            square.n(),
            n_loop.order()
        )));
    }
    if !square.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !square.is_unipotent() {
        return Err(Error::BadDiagonal);
    }
    let identity = LatinSquare::from_fn(n_loop.order(), |x, y| n_loop.mul(x, y));
    complete_from_blocks(&SteinerLoop::elementary_abelian(1), n_loop, &[identity, square.clone()], &[])
}

/// Outcome counts of doubling `L_N` with every symmetric unipotent square.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct DoublingSurvey {
    pub squares: usize,
    pub valid: usize,
    pub incompletable: usize,
}

/// Doubles `L_N` with up to `limit` symmetric unipotent squares.
pub fn survey_doubling(n_loop: &SteinerLoop, limit: usize) -> DoublingSurvey {
    let mut survey = DoublingSurvey::default();
    for_each_symmetric_unipotent(n_loop.order(), limit, |sq| {
        survey.squares += 1;
        match double(n_loop, sq) {
            Ok(_) => survey.valid += 1,
            Err(_) => survey.incompletable += 1,
        }
        true
    });
    survey
}

/// The operator `Φ_{P,Q}(x,y) = x + y + f(P,Q)` of a factor system.
pub fn schreier_operator(f: &FactorSystem) -> SteinerOperator {
    let q = SteinerLoop::from_system(f.quotient());
    let m = q.order();
    let n = 1usize << f.t();
    let blocks = (0..m * m)
        .map(|pq| {
            let c = f.eval(pq / m, pq % m) as usize;
            LatinSquare::from_fn(n, |x, y| x ^ y ^ c)
        })
        .collect();
    SteinerOperator { q, n_loop: SteinerLoop::elementary_abelian(f.t()), blocks }
}

/// The factor system of an operator whose blocks all have the form
/// `x + y + c`, if it has that shape.
pub fn as_factor_system(op: &SteinerOperator) -> Option<FactorSystem> {
    let n = op.n_loop.order();
    if !n.is_power_of_two() || op.n_loop != SteinerLoop::elementary_abelian(n.trailing_zeros()) {
        return None;
    }
    let m = op.q.order();
    for p in 0..m {
        for q in 0..m {
            let c = op.phi(p, q, 0, 0);
            if (0..n).any(|x| (0..n).any(|y| op.phi(p, q, x, y) != x ^ y ^ c)) {
                return None;
            }
        }
    }
    let qs = Arc::new(op.q.to_system());
    let values = qs.triples().iter().map(|&[a, b, _]| op.phi(a + 1, b + 1, 0, 0) as u32).collect();
    let f = FactorSystem::new(qs, n.trailing_zeros(), values).ok()?;
    let m = op.q.order();
    (0..m).all(|p| (0..m).all(|q| f.eval(p, q) as usize == op.phi(p, q, 0, 0))).then_some(f)
}
