use std::collections::{BTreeMap, VecDeque};

use crate::GraphError;

/// A simple undirected graph on vertices `0..n` with a color per vertex.
///
/// Neighbor lists are kept sorted; the adjacency matrix mirrors them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    colors: Vec<u32>,
}

/// Closed-neighborhood equivalence classes, each sorted, listed by least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
            colors: vec![0; n],
        }
    }

    /// Builds a graph from an edge list. Panics on self-loops or out-of-range
    /// endpoints; repeated edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// `K_{1,k}` with center `0`.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges)
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Inserts the edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "edge {u}-{v} out of range for n = {}", self.n);
        assert_ne!(u, v, "self-loop at {u}");
        if self.matrix[u * self.n + v] {
            return false;
        }
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn set_color(&mut self, v: usize, c: u32) {
        self.colors[v] = c;
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Self {
        assert_eq!(colors.len(), self.n);
        self.colors = colors;
        self
    }

    pub fn is_colored(&self) -> bool {
        self.colors.iter().any(|&c| c != 0)
    }

    /// Same graph with every color reset to `0`.
    pub fn uncolored(&self) -> Self {
        let mut g = self.clone();
        g.colors = vec![0; self.n];
        g
    }

    pub fn complement(&self) -> Self {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g.colors = self.colors.clone();
        g
    }

    /// Maximal connected vertex sets, each sorted, listed by least element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Connected; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(Vec::is_empty)
    }

    /// A proper 2-coloring (`false` = side A) with the least vertex of every
    /// component on side A, or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.connected_components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// Sorted closed neighborhood `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut nb = self.adj[v].clone();
        let pos = nb.binary_search(&v).unwrap_err();
        nb.insert(pos, v);
        nb
    }

    pub fn twin_partition(&self) -> TwinPartition {
        let mut by_nbhd: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            by_nbhd.entry(self.closed_neighborhood(v)).or_default().push(v);
        }
        let mut classes: Vec<Vec<usize>> = by_nbhd.into_values().collect();
        classes.sort_by_key(|c| c[0]);
        let mut class_of = vec![0; self.n];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                class_of[v] = i;
            }
        }
        TwinPartition { classes, class_of }
    }

    /// Subgraph induced by `vs`; new vertex `i` is `vs[i]`. Returns the
    /// old-to-new index map alongside the graph. Colors are carried over.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in vs.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            if old_to_new[v].is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
            old_to_new[v] = Some(i);
        }
        let mut h = Graph::new(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            h.colors[i] = self.colors[v];
            for &w in &self.adj[v] {
                if let Some(j) = old_to_new[w] {
                    if i < j {
                        h.add_edge(i, j);
                    }
                }
            }
        }
        Ok((h, old_to_new))
    }

    /// Same as [`Graph::induced_subgraph`] for callers that already know `vs` is valid.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        self.induced_subgraph(vs).expect("valid vertex set").0
    }

    /// Every vertex outside `m` sees all of `m` or none of it.
    pub fn is_module(&self, m: &[usize]) -> Result<bool, GraphError> {
        if m.is_empty() {
            return Err(GraphError::EmptySet);
        }
        let mut inside = vec![false; self.n];
        for &v in m {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            inside[v] = true;
        }
        for x in (0..self.n).filter(|&x| !inside[x]) {
            let first = self.has_edge(x, m[0]);
            if m.iter().any(|&v| self.has_edge(x, v) != first) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Applies `perm`: vertex `v` becomes `perm[v]`, keeping its color.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        for (&p, &c) in perm.iter().zip(&self.colors) {
            g.colors[p] = c;
        }
        g
    }

    /// Vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g.colors[..self.n].copy_from_slice(&self.colors);
        g.colors[self.n..].copy_from_slice(&other.colors);
        g
    }

    /// Maps edges through `perm` and reports whether the edge set is preserved
    /// together with the colors.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n {
            return false;
        }
        (0..self.n).all(|v| self.colors[perm[v]] == self.colors[v])
            && self.edges().iter().all(|&(u, v)| self.has_edge(perm[u], perm[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_triangle_is_edgeless() {
        let g = Graph::complete(3).complement();
        assert_eq!(g.n(), 3);
        assert!(g.is_edgeless());
    }

    #[test]
    fn complement_of_p4_is_p4_bdac() {
        // a-b-c-d complemented: the six pairs leave exactly b-d, d-a, a-c.
        let c = Graph::path(4).complement();
        assert_eq!(c.edges(), vec![(0, 2), (0, 3), (1, 3)]);
        let (a, b, cc, d) = (0, 1, 2, 3);
        assert!(c.has_edge(b, d) && c.has_edge(d, a) && c.has_edge(a, cc));
    }

    #[test]
    fn components_are_sorted_by_least_vertex() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 1)]);
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(Graph::new(4).connected_components().len(), 4);
        assert_eq!(Graph::cycle(5).connected_components().len(), 1);
    }

    #[test]
    fn twin_classes() {
        assert_eq!(Graph::complete(4).twin_partition().classes, vec![vec![0, 1, 2, 3]]);
        assert_eq!(Graph::path(4).twin_partition().classes.len(), 4);
        // Open-neighborhood twins of K_{2,3} are not closed-neighborhood twins.
        assert_eq!(Graph::complete_bipartite(2, 3).twin_partition().classes.len(), 5);
    }

    #[test]
    fn induced_subgraphs() {
        let (p3, map) = Graph::cycle(5).induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(p3, Graph::path(3));
        assert_eq!(map[2], Some(1));
        assert_eq!(map[0], None);
        let k23 = Graph::complete_bipartite(2, 3);
        assert!(k23.induced(&[2, 3, 4]).is_edgeless());
        let g = Graph::petersen();
        let all: Vec<_> = (0..10).collect();
        assert_eq!(g.induced(&all), g);
        assert!(matches!(
            g.induced_subgraph(&[0, 11]),
            Err(GraphError::VertexOutOfRange { vertex: 11, .. })
        ));
    }

    #[test]
    fn modules() {
        let p3 = Graph::path(3);
        assert!(p3.is_module(&[1]).unwrap());
        assert!(p3.is_module(&[0, 1, 2]).unwrap());
        assert!(p3.is_module(&[0, 2]).unwrap());
        assert!(!p3.is_module(&[0, 1]).unwrap());
        assert_eq!(p3.is_module(&[]), Err(GraphError::EmptySet));
    }

    #[test]
    fn bipartition_and_forests() {
        assert!(Graph::cycle(5).bipartition().is_none());
        let side = Graph::path(4).bipartition().unwrap();
        assert_eq!(side, vec![false, true, false, true]);
        assert!(Graph::star(3).is_tree());
        assert!(!Graph::cycle(4).is_forest());
    }
}
