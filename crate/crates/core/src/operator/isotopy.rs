//! Equivalence of operators through families of isotopies.

use super::SteinerOperator;
use crate::error::{Error, Result};
use crate::schreier::Cochain;

/// Default cap on the `|N|^{|Q|−1}` search space of [`find_equivalence`].
pub const DEFAULT_SEARCH_BOUND: u128 = 1 << 32;

/// Bijections `γ_P` of the `L_N` carrier, one per element of `L_Q`, with
/// `γ_Ω̄ = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopyFamily {
    gammas: Vec<Vec<usize>>,
}

impl IsotopyFamily {
    pub fn new(gammas: Vec<Vec<usize>>) -> Result<Self> {
        let n = gammas.first().map_or(0, |g| g.len());
        if gammas.is_empty() || gammas[0].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::ShapeMismatch("γ of the identity must be the identity".into()));
        }
        for (p, g) in gammas.iter().enumerate() {
            let mut seen = vec![false; n];
            if g.len() != n || g.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::ShapeMismatch(format!("γ_{p} is not a permutation of 0..{n}")));
            }
        }
        Ok(IsotopyFamily { gammas })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        IsotopyFamily { gammas: vec![(0..n).collect(); m] }
    }

    /// `γ_P(x) = x + φ(P)` over an elementary abelian `L_N`.
    pub fn from_cochain(phi: &Cochain) -> Self {
        let n = 1usize << phi.t;
        let gammas = (0..=phi.values.len())
            .map(|p| (0..n).map(|x| x ^ phi.eval(p) as usize).collect())
            .collect();
        IsotopyFamily { gammas }
    }

    pub fn gamma(&self, p: usize) -> &[usize] {
        &self.gammas[p]
    }

    pub fn gammas(&self) -> &[Vec<usize>] {
        &self.gammas
    }
}

fn check_shapes(a: &SteinerOperator, b: &SteinerOperator) -> Result<()> {
    if a.q() != b.q() || a.n_loop().order() != b.n_loop().order() {
        return Err(Error::ShapeMismatch("operators over different loops".into()));
    }
    Ok(())
}

fn pair_holds(a: &SteinerOperator, b: &SteinerOperator, g: &[Vec<usize>], p: usize, q: usize) -> bool {
    let n = a.n_loop().order();
    let pq = a.q().mul(p, q);
    let (fa, fb) = (a.block(p, q), b.block(p, q));
    (0..n).all(|x| (0..n).all(|y| g[pq][fa.get(x, y)] == fb.get(g[p][x], g[q][y])))
}

/// `true` iff `γ_{PQ}(Φ_{P,Q}(x,y)) = Ψ_{P,Q}(γ_P(x), γ_Q(y))` everywhere.
pub fn verify_isotopy_family(
    op1: &SteinerOperator,
    op2: &SteinerOperator,
    gamma: &IsotopyFamily,
) -> Result<bool> {
    check_shapes(op1, op2)?;
    let (m, n) = (op1.q().order(), op1.n_loop().order());
    if gamma.gammas.len() != m || gamma.gammas[0].len() != n {
        return Err(Error::ShapeMismatch("family does not fit the operators".into()));
    }
    Ok((0..m).all(|p| (0..m).all(|q| pair_holds(op1, op2, &gamma.gammas, p, q))))
}

/// Searches for an isotopy family relating two operators.
///
/// Fixing `c = γ_P(Ω′)` determines `γ_P` through the `(P, Ω̄)` block, so each
/// `γ_P` has at most `|N|` candidates; those are filtered against the blocks
/// involving only `P` and `Ω̄`, then combined by backtracking, checking every
/// pair whose three elements are already assigned.
pub fn find_equivalence(
    op1: &SteinerOperator,
    op2: &SteinerOperator,
    bound: u128,
) -> Result<Option<IsotopyFamily>> {
    check_shapes(op1, op2)?;
    let (m, n) = (op1.q().order(), op1.n_loop().order());
    let space = (n as u128).checked_pow(m.saturating_sub(1) as u32);
    if space.is_none_or(|s| s > bound) {
        return Err(Error::BoundExceeded(format!("search space {n}^{} exceeds {bound}", m - 1)));
    }
    let identity: Vec<usize> = (0..n).collect();
    if (0..n).any(|x| (0..n).any(|y| op1.phi(0, 0, x, y) != op2.phi(0, 0, x, y))) {
        return Ok(None);
    }
    let mut candidates: Vec<Vec<Vec<usize>>> = vec![vec![identity.clone()]];
    for p in 1..m {
        let row: Vec<usize> = (0..n).map(|y| op1.phi(p, 0, 0, y)).collect();
        let mut list = Vec::new();
        for c in 0..n {
            let mut g = vec![usize::MAX; n];
            for y in 0..n {
                g[row[y]] = op2.phi(p, 0, c, y);
            }
            let mut trial = vec![identity.clone(); m];
            trial[p] = g;
            if [(p, 0), (0, p), (p, p)].iter().all(|&(a, b)| pair_holds(op1, op2, &trial, a, b)) {
                list.push(trial.swap_remove(p));
            }
        }
        if list.is_empty() {
            return Ok(None);
        }
        candidates.push(list);
    }
    let mut chosen: Vec<Vec<usize>> = vec![identity; m];
    if search(op1, op2, &candidates, 1, &mut chosen) {
        return Ok(Some(IsotopyFamily { gammas: chosen }));
    }
    Ok(None)
}

fn search(
    op1: &SteinerOperator,
    op2: &SteinerOperator,
    candidates: &[Vec<Vec<usize>>],
    p: usize,
    chosen: &mut Vec<Vec<usize>>,
) -> bool {
    let m = candidates.len();
    if p == m {
        return true;
    }
    let q = op1.q();
    for g in &candidates[p] {
        chosen[p] = g.clone();
        // pairs that became fully assigned with p
        let consistent = (1..=p).all(|a| {
            (1..=p).all(|b| {
                let ab = q.mul(a, b);
                a == b || ab > p || (a != p && b != p && ab != p) || pair_holds(op1, op2, chosen, a, b)
            })
        });
        if consistent && search(op1, op2, candidates, p + 1, chosen) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::operator::schreier_operator;
    use crate::schreier::{coboundary, Cochain};
    use std::sync::Arc;

    #[test]
    fn identity_family() {
        let op = schreier_operator(&catalog::f_sts15_example());
        assert!(verify_isotopy_family(&op, &op, &IsotopyFamily::identity(8, 2)).unwrap());
        let found = find_equivalence(&op, &op, DEFAULT_SEARCH_BOUND).unwrap().unwrap();
        assert!(verify_isotopy_family(&op, &op, &found).unwrap());
    }

    #[test]
    fn coboundary_shift_is_an_equivalence() {
        let f = catalog::f_sts15_example();
        let q = Arc::new(catalog::fano_labeled());
        let phi = Cochain { t: 1, values: vec![1, 0, 0, 1, 1, 0, 1] };
        let g = f.add(&coboundary(&q, &phi)).unwrap();
        let (a, b) = (schreier_operator(&f), schreier_operator(&g));
        assert!(verify_isotopy_family(&a, &b, &IsotopyFamily::from_cochain(&phi)).unwrap());
        let found = find_equivalence(&a, &b, DEFAULT_SEARCH_BOUND).unwrap().unwrap();
        assert!(verify_isotopy_family(&a, &b, &found).unwrap());
    }

    #[test]
    fn non_structural_family_fails() {
        let op = schreier_operator(&catalog::f_sts15_example());
        let mut g = IsotopyFamily::identity(8, 2).gammas;
        g[3] = vec![1, 0];
        let fam = IsotopyFamily::new(g).unwrap();
        assert!(!verify_isotopy_family(&op, &op, &fam).unwrap());
    }

    #[test]
    fn inequivalent_example_pair() {
        let (a, b) = (schreier_operator(&catalog::f1_sts9()), schreier_operator(&catalog::f2_sts9()));
        assert_eq!(find_equivalence(&a, &b, DEFAULT_SEARCH_BOUND).unwrap(), None);
    }

    #[test]
    fn family_must_fix_identity() {
        assert!(IsotopyFamily::new(vec![vec![1, 0]]).is_err());
        assert!(IsotopyFamily::new(vec![vec![0, 1], vec![0, 0]]).is_err());
    }
}
