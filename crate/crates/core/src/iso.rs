//! Isomorphisms and automorphisms of triple systems.
//!
//! The search works on Steiner loops: a loop isomorphism is determined by the
//! images of a generating sequence (the *base*), and every other image is forced
//! by `φ(x·y) = φ(x)·φ(y)`. Branching therefore only happens on base elements,
//! whose candidate images are restricted to points with the same invariant
//! (Pasch count through the point and Veblen flag). The base is chosen greedily
//! from the rarest invariant class, ties broken by lowest label.
//!
//! Automorphism group orders come from the stabilizer chain along the base:
//! `|Aut| = Π |orbit of base[k] in the pointwise stabilizer of base[..k]|`.

use crate::census::census;
use crate::error::{Error, Result};
use crate::loops::{generated_subloop, SteinerLoop};
use crate::system::TripleSystem;
use crate::veblen::central_elements;

const NONE: usize = usize::MAX;

/// Search limits and pruning switches.
#[derive(Clone, Copy, Debug)]
pub struct IsoConfig {
    /// Largest order accepted.
    pub max_v: usize,
    /// Prune candidate images by point invariants.
    pub use_invariants: bool,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { max_v: 31, use_invariants: true }
    }
}

/// Generators and exact order of `Aut(S)`; permutations act on points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub order: u128,
    pub generators: Vec<Vec<usize>>,
}

/// Invariant colour of every loop element (Ω gets its own colour).
fn element_colors(s: &TripleSystem, use_invariants: bool) -> Vec<u64> {
    let mut colors = vec![1u64; s.v() + 1];
    colors[0] = 0;
    if use_invariants && s.v() > 0 {
        let c = census(s);
        let l = SteinerLoop::from_system(s);
        let mut veblen = vec![false; s.v() + 1];
        for z in central_elements(&l) {
            veblen[z] = true;
        }
        for p in 0..s.v() {
            colors[p + 1] = 1 + ((c.pasch_through[p] as u64) << 1 | veblen[p + 1] as u64);
        }
    }
    colors
}

fn check_bound(s: &TripleSystem, cfg: &IsoConfig) -> Result<()> {
    if s.v() > cfg.max_v {
        return Err(Error::BoundExceeded(format!(
            "isomorphism search limited to v <= {}, got {}",
            cfg.max_v,
            s.v()
        )));
    }
    Ok(())
}

struct Matcher<'a> {
    a: &'a SteinerLoop,
    b: &'a SteinerLoop,
    color_a: &'a [u64],
    color_b: &'a [u64],
    base: Vec<usize>,
    fwd: Vec<usize>,
    inv: Vec<usize>,
    mapped: Vec<usize>,
}

impl<'a> Matcher<'a> {
    fn new(
        a: &'a SteinerLoop,
        b: &'a SteinerLoop,
        color_a: &'a [u64],
        color_b: &'a [u64],
    ) -> Self {
        let n = a.order();
        let mut fwd = vec![NONE; n];
        let mut inv = vec![NONE; n];
        fwd[0] = 0;
        inv[0] = 0;
        let base = choose_base(a, color_a);
        Matcher { a, b, color_a, color_b, base, fwd, inv, mapped: vec![0] }
    }

    /// Maps `x ↦ y` and closes under products; on conflict the state must be
    /// rolled back by the caller with `undo`.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.fwd[x] != NONE {
            return self.fwd[x] == y;
        }
        if self.inv[y] != NONE || self.color_a[x] != self.color_b[y] {
            return false;
        }
        self.fwd[x] = y;
        self.inv[y] = x;
        self.mapped.push(x);
        let mut queue = vec![x];
        while let Some(e) = queue.pop() {
            let fe = self.fwd[e];
            let mut i = 0;
            while i < self.mapped.len() {
                let d = self.mapped[i];
                i += 1;
                let p = self.a.mul(e, d);
                let q = self.b.mul(fe, self.fwd[d]);
                if self.fwd[p] == NONE {
                    if self.inv[q] != NONE || self.color_a[p] != self.color_b[q] {
                        return false;
                    }
                    self.fwd[p] = q;
                    self.inv[q] = p;
                    self.mapped.push(p);
                    queue.push(p);
                } else if self.fwd[p] != q {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for &x in &self.mapped[mark..] {
            self.inv[self.fwd[x]] = NONE;
            self.fwd[x] = NONE;
        }
        self.mapped.truncate(mark);
    }

    /// Depth-first search over base images from `level`; `leaf` returns `true`
    /// to stop the search.
    fn search(&mut self, level: usize, leaf: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if level == self.base.len() {
            debug_assert_eq!(self.mapped.len(), self.a.order());
            return leaf(&self.fwd);
        }
        let x = self.base[level];
        if self.fwd[x] != NONE {
            return self.search(level + 1, leaf);
        }
        for y in 1..self.b.order() {
            if self.inv[y] != NONE || self.color_b[y] != self.color_a[x] {
                continue;
            }
            let mark = self.mapped.len();
            if self.assign(x, y) && self.search(level + 1, leaf) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

fn choose_base(l: &SteinerLoop, colors: &[u64]) -> Vec<usize> {
    let mut class_size = std::collections::HashMap::new();
    for &c in &colors[1..] {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut base = Vec::new();
    let mut closure = generated_subloop(l, &[]);
    while closure.order() < l.order() {
        let next = (1..l.order())
            .filter(|&x| !closure.contains(x))
            .min_by_key(|&x| (class_size[&colors[x]], x))
            .unwrap();
        base.push(next);
        closure = generated_subloop(l, &base);
    }
    base
}

fn to_point_perm(element_map: &[usize]) -> Vec<usize> {
    element_map[1..].iter().map(|&e| e - 1).collect()
}

/// A point bijection carrying the blocks of `s1` onto those of `s2`, if any.
pub fn are_isomorphic(s1: &TripleSystem, s2: &TripleSystem) -> Result<Option<Vec<usize>>> {
    are_isomorphic_with(s1, s2, &IsoConfig::default())
}

pub fn are_isomorphic_with(
    s1: &TripleSystem,
    s2: &TripleSystem,
    cfg: &IsoConfig,
) -> Result<Option<Vec<usize>>> {
    check_bound(s1, cfg)?;
    check_bound(s2, cfg)?;
    if s1.v() != s2.v() {
        return Ok(None);
    }
    let ca = element_colors(s1, cfg.use_invariants);
    let cb = element_colors(s2, cfg.use_invariants);
    let (mut sa, mut sb) = (ca.clone(), cb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let (la, lb) = (SteinerLoop::from_system(s1), SteinerLoop::from_system(s2));
    let mut m = Matcher::new(&la, &lb, &ca, &cb);
    let mut found = None;
    m.search(0, &mut |map| {
        found = Some(to_point_perm(map));
        true
    });
    Ok(found)
}

/// Loop-level wrapper: an element bijection `l1 → l2` preserving products.
pub fn loop_isomorphism(l1: &SteinerLoop, l2: &SteinerLoop, cfg: &IsoConfig) -> Result<Option<Vec<usize>>> {
    Ok(are_isomorphic_with(&l1.to_system(), &l2.to_system(), cfg)?.map(|p| {
        std::iter::once(0).chain(p.into_iter().map(|x| x + 1)).collect()
    }))
}

pub fn automorphisms(s: &TripleSystem) -> Result<AutomorphismGroup> {
    automorphisms_with(s, &IsoConfig::default())
}

pub fn automorphisms_with(s: &TripleSystem, cfg: &IsoConfig) -> Result<AutomorphismGroup> {
    check_bound(s, cfg)?;
    let colors = element_colors(s, cfg.use_invariants);
    let l = SteinerLoop::from_system(s);
    let base = Matcher::new(&l, &l, &colors, &colors).base;
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..base.len()).rev() {
        let fixed = generated_subloop(&l, &base[..level]);
        let x = base[level];
        let mut orbit = orbit_of(x, &gens, l.order());
        for c in 1..l.order() {
            if orbit[c] || fixed.contains(c) || colors[c] != colors[x] {
                continue;
            }
            let mut m = Matcher::new(&l, &l, &colors, &colors);
            m.base = base.clone();
            let ok = base[..level].iter().all(|&b| m.assign(b, b)) && m.assign(x, c);
            if !ok {
                continue;
            }
            let mut found = None;
            m.search(level + 1, &mut |map| {
                found = Some(map.to_vec());
                true
            });
            if let Some(g) = found {
                gens.push(g);
                orbit = orbit_of(x, &gens, l.order());
            }
        }
        order *= orbit.iter().filter(|&&b| b).count() as u128;
    }
    Ok(AutomorphismGroup { order, generators: gens.iter().map(|g| to_point_perm(g)).collect() })
}

fn orbit_of(x: usize, gens: &[Vec<usize>], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            if !seen[g[y]] {
                seen[g[y]] = true;
                stack.push(g[y]);
            }
        }
    }
    seen
}

/// Every automorphism of `s` as a point permutation, failing if there are more
/// than `limit`.
pub fn all_automorphisms(s: &TripleSystem, limit: usize) -> Result<Vec<Vec<usize>>> {
    let cfg = IsoConfig::default();
    check_bound(s, &cfg)?;
    let colors = element_colors(s, true);
    let l = SteinerLoop::from_system(s);
    let mut m = Matcher::new(&l, &l, &colors, &colors);
    let mut out = Vec::new();
    let mut overflow = false;
    m.search(0, &mut |map| {
        if out.len() == limit {
            overflow = true;
            return true;
        }
        out.push(to_point_perm(map));
        false
    });
    if overflow {
        return Err(Error::BoundExceeded(format!("more than {limit} automorphisms")));
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn small_group_orders() {
        assert_eq!(automorphisms(&catalog::pg(1)).unwrap().order, 6);
        assert_eq!(automorphisms(&catalog::sts1()).unwrap().order, 1);
        assert_eq!(automorphisms(&catalog::pg(3)).unwrap().order, 20160);
    }

    #[test]
    fn generators_preserve_blocks() {
        let s = catalog::sts15_2();
        let g = automorphisms(&s).unwrap();
        for p in &g.generators {
            assert_eq!(s.relabel(p).unwrap(), s);
        }
        assert_eq!(all_automorphisms(&s, 1 << 20).unwrap().len() as u128, g.order);
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let s = catalog::sts15_2();
        let perm: Vec<usize> = (0..15).map(|i| (i * 7 + 3) % 15).collect();
        let t = s.relabel(&perm).unwrap();
        let iso = are_isomorphic(&s, &t).unwrap().unwrap();
        assert_eq!(s.relabel(&iso).unwrap(), t);
    }

    #[test]
    fn bound_is_enforced() {
        let cfg = IsoConfig { max_v: 7, ..Default::default() };
        assert!(matches!(
            automorphisms_with(&catalog::ag(2), &cfg),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn different_orders_are_not_isomorphic() {
        assert_eq!(are_isomorphic(&catalog::pg(2), &catalog::ag(2)).unwrap(), None);
    }
}
