use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::Serialize;

use crate::chain::StabChain;
use crate::perm::{compose, element_order, identity, inverse, Permutation};

/// A permutation group on `0..degree` given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order: OnceLock<BigUint>,
}

/// Abstract isomorphism type of a small group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SmallGroup {
    Trivial,
    Cyclic(u64),
    Dihedral(u64),
    Klein4,
    ElemAb2(u32),
    Other,
}

/// Serialized form: `{"degree":n,"generators":[[...]],"order":"decimal"}`.
#[derive(Debug, Clone, Serialize)]
pub struct PermGroupRecord {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: String,
}

/// Groups larger than this are never enumerated element by element.
pub const ENUMERATION_LIMIT: usize = 1 << 16;

impl PermGroup {
    /// Panics if a generator is not a permutation of `0..degree`.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        for g in &generators {
            assert!(g.len() == degree && crate::perm::is_permutation(g), "not a permutation of degree {degree}");
        }
        PermGroup { degree, generators, order: OnceLock::new() }
    }

    pub(crate) fn with_order(degree: usize, generators: Vec<Permutation>, order: BigUint) -> Self {
        let g = PermGroup::new(degree, generators);
        let _ = g.order.set(order);
        g
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::with_order(degree, Vec::new(), BigUint::from(1u8))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Exact order from a stabilizer chain on the base `0, 1, 2, ...`.
    pub fn order(&self) -> BigUint {
        self.order
            .get_or_init(|| StabChain::from_generators(self.degree, &self.generators).order())
            .clone()
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        StabChain::from_generators(self.degree, &self.generators).contains(p)
    }

    pub fn orbit(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                if !seen[g[x]] {
                    seen[g[x]] = true;
                    stack.push(g[x]);
                }
            }
        }
        (0..self.degree).filter(|&x| seen[x]).collect()
    }

    /// Orbits meeting `support`, each sorted, listed by least element.
    /// When `support` is invariant this is exactly its orbit partition.
    pub fn orbits(&self, support: &[usize]) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.degree];
        let mut pts = support.to_vec();
        pts.sort_unstable();
        let mut out = Vec::new();
        for v in pts {
            if done[v] {
                continue;
            }
            let o = self.orbit(v);
            for &x in &o {
                done[x] = true;
            }
            out.push(o);
        }
        out.sort();
        out
    }

    pub fn all_orbits(&self) -> Vec<Vec<usize>> {
        self.orbits(&(0..self.degree).collect::<Vec<_>>())
    }

    /// The subgroup fixing `v`, via a stabilizer chain whose base starts at `v`.
    pub fn point_stabilizer(&self, v: usize) -> PermGroup {
        assert!(v < self.degree, "point {v} outside degree {}", self.degree);
        let n = self.degree;
        // relabel so that v becomes point 0
        let mut base: Vec<usize> = vec![v];
        base.extend((0..n).filter(|&x| x != v));
        let to_new = inverse(&base);
        let conj = |g: &[usize]| -> Permutation { (0..n).map(|i| to_new[g[base[i]]]).collect() };
        let back = |g: &[usize]| -> Permutation {
            let mut out = vec![0; n];
            for i in 0..n {
                out[base[i]] = base[g[i]];
            }
            out
        };
        let gens: Vec<Permutation> = self.generators.iter().map(|g| conj(g)).collect();
        let chain = StabChain::from_generators(n, &gens);
        let stab: Vec<Permutation> = chain.generators_from(1).iter().map(|g| back(g)).collect();
        PermGroup::with_order(n, stab, chain.order_from(1))
    }

    /// All elements, or `None` if there are more than `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Permutation>> {
        if let Some(o) = self.order_u64() {
            if o > limit as u64 {
                return None;
            }
        }
        let id = identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let x = compose(g, &out[i]);
                if seen.insert(x.clone()) {
                    if out.len() >= limit {
                        return None;
                    }
                    out.push(x);
                }
            }
            i += 1;
        }
        Some(out)
    }

    pub fn classify(&self) -> SmallGroup {
        let Some(elems) = self.elements(ENUMERATION_LIMIT) else { return SmallGroup::Other };
        classify_elements(&elems)
    }

    pub fn record(&self) -> PermGroupRecord {
        PermGroupRecord {
            degree: self.degree,
            generators: self.generators.clone(),
            order: self.order().to_string(),
        }
    }
}

fn classify_elements(elems: &[Permutation]) -> SmallGroup {
    let size = elems.len() as u64;
    if size == 1 {
        return SmallGroup::Trivial;
    }
    let orders: Vec<u64> = elems.iter().map(|e| element_order(e)).collect();
    if orders.contains(&size) {
        return SmallGroup::Cyclic(size);
    }
    let exponent_two = orders.iter().all(|&o| o <= 2);
    if size == 4 && exponent_two {
        return SmallGroup::Klein4;
    }
    if exponent_two {
        return SmallGroup::ElemAb2(size.trailing_zeros());
    }
    if size.is_multiple_of(2) && size >= 6 {
        let k = size / 2;
        if let Some(ri) = orders.iter().position(|&o| o == k) {
            let r = &elems[ri];
            let mut rotations: HashSet<Permutation> = HashSet::new();
            let mut x = identity(r.len());
            for _ in 0..k {
                rotations.insert(x.clone());
                x = compose(r, &x);
            }
            let r_inv = inverse(r);
            let inverting = elems.iter().zip(&orders).any(|(s, &o)| {
                o == 2 && !rotations.contains(s) && compose(s, &compose(r, s)) == r_inv
            });
            if inverting {
                return SmallGroup::Dihedral(k);
            }
        }
    }
    SmallGroup::Other
}
