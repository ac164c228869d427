//! Steiner loops, their subloops, normality and quotients.
//!
//! Elements are `0..order`, with `0` the identity Ω. A loop built from a triple
//! system on points `0..v` represents point `i` by element `i + 1`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::system::TripleSystem;

/// Largest order stored as a dense table; larger loops use a pair map.
const DENSE_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Table {
    Dense(Vec<u32>),
    /// Products of distinct non-identity elements keyed by `(min, max)`.
    Sparse(HashMap<(u32, u32), u32>),
}

/// A finite totally symmetric loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerLoop {
    order: usize,
    table: Table,
}

/// Point `p` of a triple system as a loop element.
#[inline]
pub fn element_of_point(p: usize) -> usize {
    p + 1
}

/// Loop element `x != 0` as a point of the associated system.
#[inline]
pub fn point_of_element(x: usize) -> usize {
    debug_assert!(x > 0);
    x - 1
}

impl SteinerLoop {
    /// The Steiner loop of a triple system: `x·y` is the third point of the
    /// block through `x` and `y`, `x·x = Ω`, `x·Ω = x`.
    pub fn from_system(s: &TripleSystem) -> SteinerLoop {
        let order = s.v() + 1;
        Self::from_fn_unchecked(order, |x, y| {
            element_of_point(
                s.third(point_of_element(x), point_of_element(y))
                    .expect("validated system covers every pair"),
            )
        })
    }

    /// Builds a loop from a row-major `order × order` table, checking every
    /// Steiner loop axiom.
    pub fn from_table(order: usize, table: &[usize]) -> Result<SteinerLoop> {
        if order == 0 || table.len() != order * order {
            return Err(Error::NotTotallySymmetric(format!(
                "table has {} entries for order {order}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= order) {
            return Err(Error::NotTotallySymmetric(format!("entry {bad} out of range")));
        }
        let at = |x: usize, y: usize| table[x * order + y];
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::NotTotallySymmetric(format!("0 is not an identity at {x}")));
            }
            if at(x, x) != 0 {
                return Err(Error::NotTotallySymmetric(format!("{x}·{x} is not the identity")));
            }
            for y in 0..order {
                if at(x, y) != at(y, x) {
                    return Err(Error::NotTotallySymmetric(format!("{x}·{y} != {y}·{x}")));
                }
                if at(x, at(x, y)) != y {
                    return Err(Error::NotTotallySymmetric(format!("{x}·({x}·{y}) != {y}")));
                }
            }
        }
        // x·(x·y) = y makes every row a bijection, so the table is Latin.
        Ok(Self::from_fn_unchecked(order, at))
    }

    /// Builds a loop from a product function that is assumed to satisfy the axioms.
    /// The function is only consulted for distinct non-identity arguments.
    pub(crate) fn from_fn_unchecked(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        if order <= DENSE_LIMIT {
            let mut t = vec![0u32; order * order];
            for x in 0..order {
                for y in 0..order {
                    t[x * order + y] = if x == 0 {
                        y
                    } else if y == 0 {
                        x
                    } else if x == y {
                        0
                    } else {
                        f(x, y)
                    } as u32;
                }
            }
            SteinerLoop { order, table: Table::Dense(t) }
        } else {
            let mut m = HashMap::new();
            for x in 1..order {
                for y in x + 1..order {
                    m.insert((x as u32, y as u32), f(x, y) as u32);
                }
            }
            SteinerLoop { order, table: Table::Sparse(m) }
        }
    }

    /// The elementary abelian 2-group of order `2^t` with bitwise xor as product.
    pub fn elementary_abelian(t: u32) -> SteinerLoop {
        Self::from_fn_unchecked(1usize << t, |x, y| x ^ y)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Table::Dense(t) => t[x * self.order + y] as usize,
            Table::Sparse(m) => {
                if x == 0 {
                    y
                } else if y == 0 {
                    x
                } else if x == y {
                    0
                } else {
                    m[&(x.min(y) as u32, x.max(y) as u32)] as usize
                }
            }
        }
    }

    /// Row-major product table.
    pub fn table(&self) -> Vec<usize> {
        let n = self.order;
        (0..n * n).map(|i| self.mul(i / n, i % n)).collect()
    }

    /// The associated triple system: blocks `{x, y, x·y}` for distinct
    /// non-identity `x, y`, shifted down to points.
    pub fn to_system(&self) -> TripleSystem {
        let mut triples = Vec::new();
        for x in 1..self.order {
            for y in x + 1..self.order {
                let z = self.mul(x, y);
                if z > y {
                    triples.push([x - 1, y - 1, z - 1]);
                }
            }
        }
        TripleSystem::new(self.order - 1, triples).expect("Steiner loop yields a triple system")
    }

    /// First `(a, b, c)` with `(a·b)·c != a·(b·c)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 1..self.order {
            for b in 1..self.order {
                let ab = self.mul(a, b);
                for c in 1..self.order {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// `true` iff `z` associates with everything: `(a·z)·b = a·(z·b)` for all `a, b`.
    pub fn is_central(&self, z: usize) -> bool {
        (1..self.order).all(|a| {
            let az = self.mul(a, z);
            (1..self.order).all(|b| self.mul(az, b) == self.mul(a, self.mul(z, b)))
        })
    }

    /// The center as a sorted element list (always contains Ω).
    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| z == 0 || self.is_central(z)).collect()
    }

    /// `true` iff `map` is a bijective homomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &SteinerLoop, map: &[usize]) -> bool {
        if self.order != other.order || map.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &m in map {
            if m >= self.order || std::mem::replace(&mut seen[m], true) {
                return false;
            }
        }
        (0..self.order).all(|x| {
            (0..self.order).all(|y| map[self.mul(x, y)] == other.mul(map[x], map[y]))
        })
    }

    /// The subloop on `n`'s members as a loop in its own right, relabelled in
    /// increasing member order.
    pub fn restrict(&self, n: &Subloop) -> SteinerLoop {
        let members = n.members();
        let mut index = HashMap::with_capacity(members.len());
        for (i, &m) in members.iter().enumerate() {
            index.insert(m, i);
        }
        Self::from_fn_unchecked(members.len(), |i, j| index[&self.mul(members[i], members[j])])
    }
}

/// A subset of a loop containing Ω and closed under the product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subloop {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subloop {
    /// Checks closure of `members ∪ {Ω}` in `l`.
    pub fn new(l: &SteinerLoop, members: impl IntoIterator<Item = usize>) -> Result<Subloop> {
        let mut m: Vec<usize> = members.into_iter().collect();
        m.push(0);
        m.sort_unstable();
        m.dedup();
        if m.last().is_some_and(|&x| x >= l.order()) {
            return Err(Error::NotASubloop);
        }
        let inside = mask(l.order(), &m);
        for &x in &m {
            for &y in &m {
                if !inside[l.mul(x, y)] {
                    return Err(Error::NotASubloop);
                }
            }
        }
        Ok(Subloop { parent_order: l.order(), members: m })
    }

    /// The whole loop.
    pub fn full(l: &SteinerLoop) -> Subloop {
        Subloop { parent_order: l.order(), members: (0..l.order()).collect() }
    }

    /// Sorted member list, starting with Ω.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Member points of the associated subsystem.
    pub fn points(&self) -> Vec<usize> {
        self.members[1..].iter().map(|&x| point_of_element(x)).collect()
    }

    fn check_parent(&self, l: &SteinerLoop) -> Result<()> {
        if self.parent_order != l.order() {
            return Err(Error::NotASubloop);
        }
        Ok(())
    }
}

fn mask(order: usize, members: &[usize]) -> Vec<bool> {
    let mut m = vec![false; order];
    for &x in members {
        m[x] = true;
    }
    m
}

/// Smallest subloop containing `seed ∪ {Ω}`.
pub fn generated_subloop(l: &SteinerLoop, seed: &[usize]) -> Subloop {
    let mut inside = vec![false; l.order()];
    let mut members = vec![0];
    inside[0] = true;
    let mut queue: Vec<usize> = Vec::new();
    for &s in seed {
        if !inside[s] {
            inside[s] = true;
            members.push(s);
            queue.push(s);
        }
    }
    while let Some(x) = queue.pop() {
        let mut i = 0;
        while i < members.len() {
            let z = l.mul(x, members[i]);
            if !inside[z] {
                inside[z] = true;
                members.push(z);
                queue.push(z);
            }
            i += 1;
        }
    }
    members.sort_unstable();
    Subloop { parent_order: l.order(), members }
}

/// First `(x, y, m)` with `x·(y·m) ∉ (x·y)·N`, if any.
///
/// Commutativity reduces the three normality conditions to this one. The scan
/// is `O(|L|² · |N|)`.
pub fn normality_witness(l: &SteinerLoop, n: &Subloop) -> Result<Option<(usize, usize, usize)>> {
    n.check_parent(l)?;
    let inside = mask(l.order(), n.members());
    for x in 0..l.order() {
        for y in 0..l.order() {
            let xy = l.mul(x, y);
            for &m in n.members() {
                if violates_normality_with(l, &inside, x, y, m, xy) {
                    return Ok(Some((x, y, m)));
                }
            }
        }
    }
    Ok(None)
}

fn violates_normality_with(
    l: &SteinerLoop,
    inside: &[bool],
    x: usize,
    y: usize,
    m: usize,
    xy: usize,
) -> bool {
    // z ∈ a·N  ⇔  a·z ∈ N, by total symmetry.
    !inside[l.mul(xy, l.mul(x, l.mul(y, m)))]
}

/// `true` iff the specific triple `(x, y, m)` witnesses non-normality of `n`.
pub fn violates_normality(l: &SteinerLoop, n: &Subloop, x: usize, y: usize, m: usize) -> bool {
    let inside = mask(l.order(), n.members());
    n.contains(m) && violates_normality_with(l, &inside, x, y, m, l.mul(x, y))
}

pub fn is_normal(l: &SteinerLoop, n: &Subloop) -> Result<bool> {
    Ok(normality_witness(l, n)?.is_none())
}

/// The factor loop `L/N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLoop {
    /// Cosets ordered by least element; coset 0 is `N` itself.
    pub cosets: Vec<Vec<usize>>,
    /// `epi[x]` is the coset index of `x`.
    pub epi: Vec<usize>,
    /// Product on coset indices.
    pub table: SteinerLoop,
}

pub fn quotient(l: &SteinerLoop, n: &Subloop) -> Result<QuotientLoop> {
    if !is_normal(l, n)? {
        return Err(Error::NotNormal);
    }
    let mut epi = vec![usize::MAX; l.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..l.order() {
        if epi[x] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = n.members().iter().map(|&m| l.mul(x, m)).collect();
        coset.sort_unstable();
        for &c in &coset {
            epi[c] = cosets.len();
        }
        cosets.push(coset);
    }
    let reps: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let table = SteinerLoop::from_fn_unchecked(cosets.len(), |i, j| epi[l.mul(reps[i], reps[j])]);
    Ok(QuotientLoop { cosets, epi, table })
}

/// The subloop on `xN ∪ N`, for `n` normal and `x ∉ N`.
pub fn coset_generated_subsystem(l: &SteinerLoop, n: &Subloop, x: usize) -> Result<Subloop> {
    if !is_normal(l, n)? {
        return Err(Error::NotNormal);
    }
    if n.contains(x) {
        return Err(Error::ElementInsideN(x));
    }
    let coset: Vec<usize> = n.members().iter().map(|&m| l.mul(x, m)).collect();
    let mut seed = n.members().to_vec();
    seed.extend(&coset);
    let generated = generated_subloop(l, &coset);
    debug_assert_eq!(generated, Subloop::new(l, seed).expect("xN ∪ N is closed"));
    Ok(generated)
}

/// Every subloop of `l`, in order of increasing size then members.
pub fn all_subloops(l: &SteinerLoop) -> Vec<Subloop> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut frontier = vec![generated_subloop(l, &[])];
    seen.insert(frontier[0].members.clone());
    let mut out = Vec::new();
    while let Some(s) = frontier.pop() {
        let inside = mask(l.order(), s.members());
        for x in 0..l.order() {
            if inside[x] {
                continue;
            }
            let mut seed = s.members().to_vec();
            seed.push(x);
            let g = generated_subloop(l, &seed);
            if seen.insert(g.members.clone()) {
                frontier.push(g);
            }
        }
        out.push(s);
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

/// Every normal subloop of `l` (including `{Ω}` and `l`).
pub fn normal_subloops(l: &SteinerLoop) -> Vec<Subloop> {
    all_subloops(l)
        .into_iter()
        .filter(|s| is_normal(l, s).expect("subloop of l"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> TripleSystem {
        TripleSystem::new(
            7,
            [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        )
        .unwrap()
    }

    #[test]
    fn loop_axioms_and_round_trip() {
        let s = fano();
        let l = SteinerLoop::from_system(&s);
        assert_eq!(l.order(), 8);
        assert!(SteinerLoop::from_table(8, &l.table()).is_ok());
        assert_eq!(l.to_system(), s);
        for x in 0..8 {
            assert_eq!(l.mul(0, x), x);
        }
    }

    #[test]
    fn order_two_loop_gives_sts1() {
        let l = SteinerLoop::elementary_abelian(1);
        assert_eq!(l.to_system().v(), 1);
        assert_eq!(l.to_system().b(), 0);
    }

    #[test]
    fn from_table_rejects_bad_tables() {
        // Z4 is commutative with identity 0 but 1·1 = 2.
        let z4: Vec<usize> = (0..16).map(|i| (i / 4 + i % 4) % 4).collect();
        assert!(matches!(
            SteinerLoop::from_table(4, &z4),
            Err(Error::NotTotallySymmetric(_))
        ));
        assert!(SteinerLoop::from_table(3, &[0; 9]).is_err());
    }

    #[test]
    fn generated_subloops() {
        let l = SteinerLoop::from_system(&fano());
        assert_eq!(generated_subloop(&l, &[]).members(), &[0]);
        // points 0 and 1 lie in the block {0, 1, 2}
        assert_eq!(generated_subloop(&l, &[1, 2]).members(), &[0, 1, 2, 3]);
        assert_eq!(generated_subloop(&l, &[1, 2, 4]).order(), 8);
    }

    #[test]
    fn group_case_everything_is_normal() {
        let l = SteinerLoop::from_system(&fano());
        let subs = all_subloops(&l);
        // subgroups of Z2^3: 1 + 7 + 7 + 1
        assert_eq!(subs.len(), 16);
        assert_eq!(normal_subloops(&l).len(), 16);
        let q = quotient(&l, &Subloop::new(&l, [1]).unwrap()).unwrap();
        assert_eq!(q.table.order(), 4);
        assert!(q.table.is_associative());
    }

    #[test]
    fn quotient_by_trivial_subloop_is_the_loop() {
        let l = SteinerLoop::from_system(&fano());
        let q = quotient(&l, &Subloop::new(&l, []).unwrap()).unwrap();
        assert_eq!(q.table, l);
        assert_eq!(q.epi, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn coset_generated_subsystem_errors() {
        let l = SteinerLoop::from_system(&fano());
        let n = Subloop::new(&l, [1]).unwrap();
        assert_eq!(coset_generated_subsystem(&l, &n, 1), Err(Error::ElementInsideN(1)));
        let g = coset_generated_subsystem(&l, &n, 2).unwrap();
        assert_eq!(g.members(), &[0, 1, 2, 3]);
    }

    #[test]
    fn subloop_rejects_unclosed_sets() {
        let l = SteinerLoop::from_system(&fano());
        assert_eq!(Subloop::new(&l, [1, 2]), Err(Error::NotASubloop));
    }
}
