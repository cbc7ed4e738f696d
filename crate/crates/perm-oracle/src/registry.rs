use graph_core::Graph;

use crate::{isomorphic_graphs_with_cap, OracleError};

/// Sorts colored graphs into isomorphism classes, keeping one representative each.
#[derive(Debug, Clone)]
pub struct IsoRegistry {
    cap: usize,
    reps: Vec<(Vec<u64>, Graph)>,
}

impl IsoRegistry {
    pub fn new(cap: usize) -> Self {
        IsoRegistry { cap, reps: Vec::new() }
    }

    /// Index of the class of `g`, registering a new class if needed.
    pub fn class_of(&mut self, g: &Graph) -> Result<usize, OracleError> {
        let inv = invariant(g);
        for (i, (key, rep)) in self.reps.iter().enumerate() {
            if *key == inv && isomorphic_graphs_with_cap(rep, g, self.cap)?.is_some() {
                return Ok(i);
            }
        }
        self.reps.push((inv, g.clone()));
        Ok(self.reps.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, class: usize) -> &Graph {
        &self.reps[class].1
    }
}

/// Cheap isomorphism invariant: size, edge count, sorted (color, degree) pairs.
fn invariant(g: &Graph) -> Vec<u64> {
    let mut pairs: Vec<u64> = (0..g.n()).map(|v| (u64::from(g.color(v)) << 32) | g.degree(v) as u64).collect();
    pairs.sort_unstable();
    let mut out = vec![g.n() as u64, g.edge_count() as u64];
    out.extend(pairs);
    out
}
