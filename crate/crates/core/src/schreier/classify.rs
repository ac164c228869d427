//! Equivalence and isomorphism classes of Schreier extensions.
//!
//! Factor systems live in `GF(2)^{tb}`; equivalence classes are the cosets of
//! the coboundary space `B²`. Each class is represented by its lexicographically
//! least member, which is the unique member vanishing on the pivot positions of
//! a reduced basis of `B²`, so classes are indexed by their bits on the free
//! positions. Iterating that index upwards visits classes in lexicographic
//! order, hence the first class met in each orbit of `GL(t,2) × Aut(Q)` is the
//! least one and becomes the orbit's representative.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use super::{
    apply_aut_unchecked, check_tb, coboundary, hom_dimension, is_coboundary, Cochain,
    FactorSystem, LinearMap,
};
use crate::error::Result;
use crate::gf2::{BitVec, Subspace};
use crate::iso::automorphisms;
use crate::system::TripleSystem;

/// One equivalence class and how it is reached from its isomorphism class
/// representative `r`: `class = (α, β)·r + δ¹φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    pub representative: Vec<u32>,
    pub alpha: Vec<u32>,
    pub beta: Vec<usize>,
    pub phi: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismClass {
    pub representative: Vec<u32>,
    pub equivalence_classes: Vec<EquivalenceClass>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub w: usize,
    pub b: usize,
    pub t: u32,
    /// `|Ext| = 2^{tb}`.
    pub total: u64,
    pub hom_count: u64,
    /// `|B²|`.
    pub coboundary_count: u64,
    pub equivalence_class_count: u64,
    /// The closed-form count of inequivalent extensions.
    pub closed_form_count: u64,
    pub isomorphism_class_count: usize,
    pub isomorphism_classes: Vec<IsomorphismClass>,
    #[serde(skip)]
    q: Option<Arc<TripleSystem>>,
}

impl ClassificationReport {
    /// Representatives of the isomorphism classes as factor systems.
    pub fn representatives(&self) -> Vec<FactorSystem> {
        let q = self.q.clone().expect("report built by classify");
        self.isomorphism_classes
            .iter()
            .map(|c| FactorSystem::new(q.clone(), self.t, c.representative.clone()).unwrap())
            .collect()
    }

    /// Representatives of all equivalence classes, grouped by isomorphism class.
    pub fn equivalence_representatives(&self) -> Vec<Vec<FactorSystem>> {
        let q = self.q.clone().expect("report built by classify");
        self.isomorphism_classes
            .iter()
            .map(|c| {
                c.equivalence_classes
                    .iter()
                    .map(|e| FactorSystem::new(q.clone(), self.t, e.representative.clone()).unwrap())
                    .collect()
            })
            .collect()
    }
}

struct ClassSpace {
    b2: Subspace,
    free: Vec<usize>,
    len: usize,
}

impl ClassSpace {
    fn rep_of_index(&self, k: u64) -> BitVec {
        let mut v = BitVec::zeros(self.len);
        let n = self.free.len();
        for (i, &pos) in self.free.iter().enumerate() {
            if k >> (n - 1 - i) & 1 == 1 {
                v.set(pos, true);
            }
        }
        v
    }

    fn index_of(&self, v: BitVec) -> u64 {
        let r = self.b2.reduce(v);
        let n = self.free.len();
        self.free
            .iter()
            .enumerate()
            .filter(|(_, &pos)| r.get(pos))
            .fold(0u64, |k, (i, _)| k | 1 << (n - 1 - i))
    }
}

/// Classifies all Schreier extensions of `(Z/2)^t` by `L_Q` up to equivalence
/// and up to isomorphism of extensions.
pub fn classify(q: Arc<TripleSystem>, t: u32, bound: usize) -> Result<ClassificationReport> {
    let tb = check_tb(&q, t, bound)?;
    let w = q.v();
    let unit = |p: usize, bit: u32| {
        let mut phi = Cochain::zero(w, t);
        phi.values[p] = 1 << bit;
        coboundary(&q, &phi).to_bits()
    };
    let b2 = Subspace::span(tb, (0..w).flat_map(|p| (0..t).map(move |bit| (p, bit))).map(|(p, bit)| unit(p, bit)));
    let free = b2.free_positions();
    let space = ClassSpace { b2, free, len: tb };
    let class_count = 1u64 << space.free.len();

    let aut_q = automorphisms(&q)?;
    let mut gens: Vec<(LinearMap, Vec<usize>)> = Vec::new();
    let id_beta: Vec<usize> = (0..w).collect();
    for a in LinearMap::generators(t) {
        if a != LinearMap::identity(t) {
            gens.push((a, id_beta.clone()));
        }
    }
    for beta in aut_q.generators {
        gens.push((LinearMap::identity(t), beta));
    }

    let mut seen = vec![false; class_count as usize];
    let mut classes = Vec::new();
    for start in 0..class_count {
        if seen[start as usize] {
            continue;
        }
        let rep = FactorSystem::from_bits(q.clone(), t, &space.rep_of_index(start));
        seen[start as usize] = true;
        let mut members = vec![(start, LinearMap::identity(t), id_beta.clone())];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (k, alpha, beta) = members[i].clone();
            let current = FactorSystem::from_bits(q.clone(), t, &space.rep_of_index(k));
            for (ga, gb) in &gens {
                let image = apply_aut_unchecked(&current, ga, gb);
                let j = space.index_of(image.to_bits());
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    let beta2: Vec<usize> = beta.iter().map(|&x| gb[x]).collect();
                    members.push((j, ga.compose(&alpha), beta2));
                    queue.push_back(members.len() - 1);
                }
            }
        }
        members.sort_by_key(|m| m.0);
        let equivalence_classes = members
            .into_iter()
            .map(|(k, alpha, beta)| {
                let target = FactorSystem::from_bits(q.clone(), t, &space.rep_of_index(k));
                let moved = apply_aut_unchecked(&rep, &alpha, &beta);
                let phi = is_coboundary(&moved.add(&target).expect("same shape"))
                    .expect("orbit members are equivalent to the moved representative");
                EquivalenceClass {
                    representative: target.values().to_vec(),
                    alpha: alpha.cols().to_vec(),
                    beta,
                    phi: phi.values,
                }
            })
            .collect();
        classes.push(IsomorphismClass { representative: rep.values().to_vec(), equivalence_classes });
    }

    let closed_form = super::count_nonequivalent(&q, t)?;
    Ok(ClassificationReport {
        w,
        b: q.b(),
        t,
        total: 1 << tb,
        hom_count: 1 << (t as usize * hom_dimension(&q)),
        coboundary_count: 1 << space.b2.dim(),
        equivalence_class_count: class_count,
        closed_form_count: closed_form as u64,
        isomorphism_class_count: classes.len(),
        isomorphism_classes: classes,
        q: Some(q),
    })
}
