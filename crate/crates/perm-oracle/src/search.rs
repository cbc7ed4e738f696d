//! Individualization–refinement backtracking over ordered partitions.
//!
//! Cells are identified by their start offset in `lab`. Refinement only ever
//! looks at cell offsets, sizes and neighbor counts, so two partitions related
//! by an isomorphism produce identical traces. Traces prune the search; every
//! leaf is still checked edge by edge.

use std::collections::VecDeque;

use graph_core::Graph;
use num_bigint::BigUint;

use crate::perm::{transposition, Permutation};

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    cell: Vec<usize>,
    end: Vec<usize>,
    cells: usize,
}

impl Partition {
    /// Cells ordered by color value; the trace records `(color, size)` per cell.
    fn from_colors(g: &Graph, trace: &mut Vec<u64>) -> Self {
        let n = g.n();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (g.color(v), v));
        let mut p = Partition { pos: vec![0; n], cell: vec![0; n], end: vec![0; n], lab, cells: 0 };
        let mut s = 0;
        while s < n {
            let c = g.color(p.lab[s]);
            let mut e = s;
            while e < n && g.color(p.lab[e]) == c {
                e += 1;
            }
            for i in s..e {
                let v = p.lab[i];
                p.pos[v] = i;
                p.cell[v] = s;
            }
            p.end[s] = e;
            p.cells += 1;
            trace.extend([u64::from(c), (e - s) as u64]);
            s = e;
        }
        p
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s);
            s = self.end[s];
        }
        out
    }

    fn members(&self, start: usize) -> &[usize] {
        &self.lab[start..self.end[start]]
    }

    /// Smallest non-singleton cell, first by offset among equals.
    fn target_cell(&self) -> Option<usize> {
        self.starts()
            .into_iter()
            .filter(|&s| self.end[s] - s > 1)
            .min_by_key(|&s| (self.end[s] - s, s))
    }

    fn refine(&mut self, g: &Graph, splitters: Vec<usize>, trace: &mut Vec<u64>) {
        let n = self.lab.len();
        let mut queued = vec![false; n];
        let mut queue = VecDeque::new();
        for s in splitters {
            queued[s] = true;
            queue.push_back(s);
        }
        let mut cnt = vec![0usize; n];
        let mut touched: Vec<usize> = Vec::new();
        while let Some(sc) = queue.pop_front() {
            queued[sc] = false;
            if self.is_discrete() {
                break;
            }
            for i in sc..self.end[sc] {
                for &u in g.neighbors(self.lab[i]) {
                    if cnt[u] == 0 {
                        touched.push(u);
                    }
                    cnt[u] += 1;
                }
            }
            let mut tcells: Vec<usize> = touched.iter().map(|&u| self.cell[u]).collect();
            tcells.sort_unstable();
            tcells.dedup();
            for c in tcells {
                let e = self.end[c];
                if e - c == 1 {
                    continue;
                }
                self.lab[c..e].sort_unstable_by_key(|&v| (cnt[v], v));
                if cnt[self.lab[c]] == cnt[self.lab[e - 1]] {
                    continue;
                }
                let mut frags = Vec::new();
                let mut s = c;
                for i in c + 1..=e {
                    if i == e || cnt[self.lab[i]] != cnt[self.lab[s]] {
                        frags.push((s, i));
                        s = i;
                    }
                }
                trace.extend([c as u64, frags.len() as u64]);
                for &(s, t) in &frags {
                    trace.extend([cnt[self.lab[s]] as u64, (t - s) as u64]);
                    self.end[s] = t;
                    for i in s..t {
                        let v = self.lab[i];
                        self.pos[v] = i;
                        self.cell[v] = s;
                    }
                }
                self.cells += frags.len() - 1;
                let skip = if queued[c] {
                    None
                } else {
                    let mut best = frags[0];
                    for &f in &frags[1..] {
                        if f.1 - f.0 > best.1 - best.0 {
                            best = f;
                        }
                    }
                    Some(best.0)
                };
                for &(s, _) in &frags {
                    if Some(s) != skip && !queued[s] {
                        queued[s] = true;
                        queue.push_back(s);
                    }
                }
            }
            for u in touched.drain(..) {
                cnt[u] = 0;
            }
        }
        trace.push(self.cells as u64);
    }

    /// Splits `v` off the front of its cell and refines.
    fn individualize(&mut self, g: &Graph, v: usize, trace: &mut Vec<u64>) {
        let s = self.cell[v];
        let e = self.end[s];
        trace.push(s as u64);
        let p = self.pos[v];
        let w = self.lab[s];
        self.lab.swap(s, p);
        self.pos[v] = s;
        self.pos[w] = p;
        self.end[s] = s + 1;
        self.end[s + 1] = e;
        for i in s + 1..e {
            self.cell[self.lab[i]] = s + 1;
        }
        self.cells += 1;
        self.refine(g, vec![s], trace);
    }
}

struct Level {
    part: Partition,
    trace: Vec<u64>,
    /// Cell split at this level and the vertex the first path chose from it.
    target: Option<(usize, usize)>,
}

/// The first path of the search tree on the left graph.
struct FirstPath {
    levels: Vec<Level>,
}

impl FirstPath {
    fn new(g: &Graph) -> Self {
        let mut trace = Vec::new();
        let mut part = Partition::from_colors(g, &mut trace);
        let all = part.starts();
        part.refine(g, all, &mut trace);
        let mut levels = vec![Level { part, trace, target: None }];
        loop {
            let last = levels.last_mut().unwrap();
            let Some(cell) = last.part.target_cell() else { break };
            let v = last.part.lab[cell];
            last.target = Some((cell, v));
            let mut part = last.part.clone();
            let mut trace = Vec::new();
            part.individualize(g, v, &mut trace);
            levels.push(Level { part, trace, target: None });
        }
        FirstPath { levels }
    }

    fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

fn is_isomorphism(g: &Graph, h: &Graph, p: &[usize]) -> bool {
    g.edge_count() == h.edge_count()
        && (0..g.n()).all(|v| g.color(v) == h.color(p[v]))
        && g.edges().iter().all(|&(u, v)| h.has_edge(p[u], p[v]))
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.color(u) == g.color(v)
        && g.neighbors(u).iter().filter(|&&x| x != v).eq(g.neighbors(v).iter().filter(|&&x| x != u))
}

/// Depth-first completion of the right-hand partition at `level` to a leaf
/// whose induced map `g -> h` is an isomorphism.
fn extend(path: &FirstPath, g: &Graph, h: &Graph, level: usize, right: Partition) -> Option<Permutation> {
    let left = &path.levels[level];
    let Some((cell, bv)) = left.target else {
        let mut p = vec![0; g.n()];
        for (i, &v) in left.part.lab.iter().enumerate() {
            p[v] = right.lab[i];
        }
        return is_isomorphism(g, h, &p).then_some(p);
    };
    let mut cands = right.members(cell).to_vec();
    if let Some(i) = cands.iter().position(|&w| w == bv) {
        cands.swap(0, i);
    }
    for w in cands {
        let mut r = right.clone();
        let mut trace = Vec::new();
        r.individualize(h, w, &mut trace);
        if trace != path.levels[level + 1].trace {
            continue;
        }
        if let Some(p) = extend(path, g, h, level + 1, r) {
            return Some(p);
        }
    }
    None
}

pub(crate) struct SearchResult {
    pub generators: Vec<Permutation>,
    pub order: BigUint,
}

/// Generators of the color-preserving automorphism group, and its order as
/// the product of the basic orbit lengths along the first path.
pub(crate) fn automorphisms(g: &Graph) -> SearchResult {
    let n = g.n();
    let path = FirstPath::new(g);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order = BigUint::from(1u8);
    for i in (0..path.depth()).rev() {
        let lvl = &path.levels[i];
        let (cell, b) = lvl.target.expect("non-leaf level has a target");
        let mut orbit = orbit_of(n, &gens, b);
        for &w in lvl.part.members(cell) {
            if orbit[w] {
                continue;
            }
            let found = if are_twins(g, b, w) {
                Some(transposition(n, b, w))
            } else {
                let mut r = lvl.part.clone();
                let mut trace = Vec::new();
                r.individualize(g, w, &mut trace);
                if trace == path.levels[i + 1].trace {
                    extend(&path, g, g, i + 1, r)
                } else {
                    None
                }
            };
            if let Some(p) = found {
                gens.push(p);
                orbit = orbit_of(n, &gens, b);
            }
        }
        order *= orbit.iter().filter(|&&x| x).count();
    }
    SearchResult { generators: gens, order }
}

fn orbit_of(n: usize, gens: &[Permutation], b: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut stack = vec![b];
    while let Some(x) = stack.pop() {
        for p in gens {
            let y = p[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// A color-respecting isomorphism `g -> h`, if one exists.
pub(crate) fn isomorphism(g: &Graph, h: &Graph) -> Option<Permutation> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let path = FirstPath::new(g);
    let mut trace = Vec::new();
    let mut right = Partition::from_colors(h, &mut trace);
    let all = right.starts();
    right.refine(h, all, &mut trace);
    if trace != path.levels[0].trace {
        return None;
    }
    extend(&path, g, h, 0, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_of_a_path_pairs_mirror_vertices() {
        let g = Graph::path(5);
        let mut t = Vec::new();
        let mut p = Partition::from_colors(&g, &mut t);
        let all = p.starts();
        p.refine(&g, all, &mut t);
        assert_eq!(p.cells, 3);
        assert_eq!(p.cell[0], p.cell[4]);
        assert_eq!(p.cell[1], p.cell[3]);
    }

    #[test]
    fn small_orders() {
        assert_eq!(automorphisms(&Graph::cycle(6)).order, BigUint::from(12u8));
        assert_eq!(automorphisms(&Graph::new(5)).order, BigUint::from(120u8));
        assert_eq!(automorphisms(&Graph::path(1)).order, BigUint::from(1u8));
        assert_eq!(automorphisms(&Graph::new(0)).order, BigUint::from(1u8));
    }
}
