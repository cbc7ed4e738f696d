//! Incremental Schreier–Sims over the base `0, 1, 2, ...`.
//!
//! `trans[k][j]`, when present, maps `k` to `j` and fixes every point below `k`.
//! `gens[k]` generates the pointwise stabilizer of `0..k`.

use num_bigint::BigUint;

use crate::perm::{compose, identity, inverse, is_identity, Permutation};

pub(crate) struct StabChain {
    n: usize,
    trans: Vec<Vec<Option<Permutation>>>,
    gens: Vec<Vec<Permutation>>,
}

impl StabChain {
    pub fn new(n: usize) -> Self {
        let trans = (0..n)
            .map(|k| {
                let mut row = vec![None; n];
                row[k] = Some(identity(n));
                row
            })
            .collect();
        StabChain { n, trans, gens: vec![Vec::new(); n] }
    }

    pub fn from_generators(n: usize, gens: &[Permutation]) -> Self {
        let mut c = StabChain::new(n);
        for g in gens {
            c.add(g.clone(), 0);
        }
        c
    }

    /// Sifts `g` through levels `k..n`; true iff it lies in the stored group.
    fn sifts_from(&self, mut g: Permutation, k: usize) -> bool {
        for lvl in k..self.n {
            if is_identity(&g) {
                return true;
            }
            let j = g[lvl];
            if j == lvl {
                continue;
            }
            match &self.trans[lvl][j] {
                Some(t) => g = compose(&inverse(t), &g),
                None => return false,
            }
        }
        is_identity(&g)
    }

    pub fn contains(&self, g: &[usize]) -> bool {
        g.len() == self.n && self.sifts_from(g.to_vec(), 0)
    }

    fn add(&mut self, g: Permutation, k: usize) {
        if k >= self.n || self.sifts_from(g.clone(), k) {
            return;
        }
        self.gens[k].push(g.clone());
        let reps: Vec<Permutation> = self.trans[k].iter().flatten().cloned().collect();
        for t in reps {
            self.update(compose(&g, &t), k);
        }
    }

    fn update(&mut self, g: Permutation, k: usize) {
        let mut stack = vec![g];
        while let Some(g) = stack.pop() {
            let j = g[k];
            if let Some(t) = &self.trans[k][j] {
                let h = compose(&inverse(t), &g);
                self.add(h, k + 1);
            } else {
                for h in &self.gens[k] {
                    stack.push(compose(h, &g));
                }
                self.trans[k][j] = Some(g);
            }
        }
    }

    pub fn order(&self) -> BigUint {
        self.order_from(0)
    }

    /// Order of the pointwise stabilizer of `0..k`.
    pub fn order_from(&self, k: usize) -> BigUint {
        let mut o = BigUint::from(1u8);
        for row in &self.trans[k.min(self.n)..] {
            o *= row.iter().filter(|t| t.is_some()).count();
        }
        o
    }

    /// Strong generators fixing every point below `k`.
    pub fn generators_from(&self, k: usize) -> Vec<Permutation> {
        self.gens[k.min(self.n)..].iter().flatten().cloned().collect()
    }
}
