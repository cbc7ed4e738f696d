use std::collections::VecDeque;
use std::fmt::Write as _;

use graph_core::Graph;
use serde::Serialize;

use crate::ComparabilityError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NodeKind {
    Prime,
    Complete,
    Independent,
}

/// A prime or degenerate graph of the decomposition. Leaves hold original
/// vertices; inner nodes hold one quotient marker per child module.
#[derive(Debug, Clone)]
pub struct ModularNode {
    pub kind: NodeKind,
    pub vertices: Vec<usize>,
    /// The node graph, on the positions of `vertices`.
    pub graph: Graph,
    /// Quotient marker in the parent node pointing here.
    pub parent: Option<usize>,
}

/// Rooted modular tree. Vertex ids: originals `0..n`; node `c > 0` owns the
/// quotient marker `n + 2(c - 1)` in its parent and the attachment marker
/// `n + 2(c - 1) + 1` above its own vertices. Node 0 is the root, and every
/// child has a larger index than its parent.
#[derive(Debug, Clone)]
pub struct ModularTree {
    n: usize,
    nodes: Vec<ModularNode>,
    owner: Vec<usize>,
    position: Vec<usize>,
}

enum Step {
    Terminal(NodeKind),
    Quotient(NodeKind, Vec<Vec<usize>>),
}

/// Smallest module of `h` containing `seeds`, as a membership mask.
fn module_closure(h: &Graph, seeds: &[usize]) -> Vec<bool> {
    let k = h.n();
    let mut inside = vec![false; k];
    for &s in seeds {
        inside[s] = true;
    }
    let mut size = inside.iter().filter(|&&b| b).count();
    // A splitter sees some but not all of the current set.
    while let Some(w) = (0..k).find(|&w| {
        !inside[w] && {
            let c = h.neighbors(w).iter().filter(|&&u| inside[u]).count();
            c > 0 && c < size
        }
    }) {
        inside[w] = true;
        size += 1;
    }
    inside
}

/// Maximal proper modules of a connected, co-connected graph, ordered by
/// least member.
fn maximal_modules(h: &Graph) -> Vec<Vec<usize>> {
    let k = h.n();
    let mut assigned = vec![false; k];
    let mut out = Vec::new();
    for v in 0..k {
        if assigned[v] {
            continue;
        }
        let mut module = vec![false; k];
        module[v] = true;
        for u in 0..k {
            if module[u] {
                continue;
            }
            let c = module_closure(h, &[v, u]);
            if c.iter().any(|&b| !b) {
                for (x, &b) in c.iter().enumerate() {
                    module[x] |= b;
                }
            }
        }
        let members: Vec<usize> = (0..k).filter(|&x| module[x]).collect();
        debug_assert!(members.len() < k, "maximal modules of a connected co-connected graph are proper");
        for &x in &members {
            assigned[x] = true;
        }
        out.push(members);
    }
    out
}

fn step(h: &Graph) -> Step {
    if h.n() == 1 || h.is_complete() {
        return Step::Terminal(NodeKind::Complete);
    }
    if h.is_edgeless() {
        return Step::Terminal(NodeKind::Independent);
    }
    if !h.is_connected() {
        return Step::Quotient(NodeKind::Independent, h.connected_components());
    }
    let co = h.complement();
    if !co.is_connected() {
        return Step::Quotient(NodeKind::Complete, co.connected_components());
    }
    let modules = maximal_modules(h);
    if modules.len() == h.n() {
        Step::Terminal(NodeKind::Prime)
    } else {
        Step::Quotient(NodeKind::Prime, modules)
    }
}

impl ModularTree {
    pub fn build(g: &Graph) -> Result<Self, ComparabilityError> {
        if g.n() == 0 {
            return Err(ComparabilityError::Empty);
        }
        let g = g.uncolored();
        let mut tree = ModularTree { n: g.n(), nodes: Vec::new(), owner: Vec::new(), position: Vec::new() };
        tree.decompose(&g, (0..g.n()).collect(), None);
        let total = tree.total_vertices();
        tree.owner = vec![usize::MAX; total];
        tree.position = vec![usize::MAX; total];
        for (c, node) in tree.nodes.iter().enumerate() {
            for (i, &v) in node.vertices.iter().enumerate() {
                tree.owner[v] = c;
                tree.position[v] = i;
            }
        }
        Ok(tree)
    }

    fn decompose(&mut self, g: &Graph, set: Vec<usize>, parent: Option<usize>) -> usize {
        let id = self.nodes.len();
        let h = g.induced(&set);
        self.nodes.push(ModularNode { kind: NodeKind::Complete, vertices: Vec::new(), graph: Graph::new(0), parent });
        match step(&h) {
            Step::Terminal(kind) => {
                self.nodes[id] = ModularNode { kind, vertices: set, graph: h, parent };
            }
            Step::Quotient(kind, modules) => {
                let mut markers = Vec::with_capacity(modules.len());
                let mut reps = Vec::with_capacity(modules.len());
                for m in &modules {
                    let child_id = self.nodes.len();
                    let marker = self.n + 2 * (child_id - 1);
                    markers.push(marker);
                    reps.push(m[0]);
                    let child_set = m.iter().map(|&i| set[i]).collect();
                    self.decompose(g, child_set, Some(marker));
                }
                let quotient = h.induced(&reps);
                self.nodes[id] = ModularNode { kind, vertices: markers, graph: quotient, parent };
            }
        }
        id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[ModularNode] {
        &self.nodes
    }

    /// Originals plus two markers per non-root node.
    pub fn total_vertices(&self) -> usize {
        self.n + 2 * (self.nodes.len().saturating_sub(1))
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        self.nodes[node].vertices.iter().all(|&v| v < self.n)
    }

    /// Node containing an original vertex or quotient marker.
    pub fn node_of(&self, v: usize) -> Option<usize> {
        self.owner.get(v).copied().filter(|&c| c != usize::MAX)
    }

    /// Index of `v` within its node.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.position.get(v).copied().filter(|&i| i != usize::MAX)
    }

    /// The node a quotient marker stands for.
    pub fn child_of_marker(&self, m: usize) -> Option<usize> {
        (m >= self.n && m < self.total_vertices() && (m - self.n).is_multiple_of(2)).then(|| (m - self.n) / 2 + 1)
    }

    pub fn attachment_of(&self, node: usize) -> Option<usize> {
        (node > 0).then(|| self.n + 2 * (node - 1) + 1)
    }

    pub fn is_marker(&self, v: usize) -> bool {
        v >= self.n
    }

    /// Directed tree edges `m -> m'`.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        (1..self.nodes.len()).map(|c| (self.n + 2 * (c - 1), self.n + 2 * (c - 1) + 1)).collect()
    }

    /// Original vertices below `node`: the module it represents.
    pub fn expansion(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(c) = stack.pop() {
            for &v in &self.nodes[c].vertices {
                match self.child_of_marker(v) {
                    Some(ch) => stack.push(ch),
                    None => out.push(v),
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// For an original vertex, its `(node, position)` at every level from
    /// its leaf up to the root.
    pub fn ancestry(&self, x: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut v = x;
        loop {
            let c = self.owner[v];
            out.push((c, self.position[v]));
            match self.nodes[c].parent {
                Some(m) => v = m,
                None => return out,
            }
        }
    }

    /// Normal edges of the tree graph: node edges plus each attachment
    /// marker joined to the vertices of its node.
    fn normal_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.total_vertices()];
        for (c, node) in self.nodes.iter().enumerate() {
            for (a, b) in node.graph.edges() {
                let (u, v) = (node.vertices[a], node.vertices[b]);
                adj[u].push(v);
                adj[v].push(u);
            }
            if let Some(att) = self.attachment_of(c) {
                for &v in &node.vertices {
                    adj[att].push(v);
                    adj[v].push(att);
                }
            }
        }
        adj
    }

    /// The graph recovered from alternating paths: normal and tree edges
    /// alternate, starting and ending with normal edges.
    pub fn reconstruct(&self) -> Graph {
        let normal = self.normal_adjacency();
        let total = self.total_vertices();
        let mut tree_mate = vec![usize::MAX; total];
        for (m, m2) in self.tree_edges() {
            tree_mate[m] = m2;
            tree_mate[m2] = m;
        }
        let mut g = Graph::new(self.n);
        for x in 0..self.n {
            // State: (vertex, next edge is normal).
            let mut seen = vec![[false; 2]; total];
            let mut queue = VecDeque::from([(x, true)]);
            seen[x][1] = true;
            while let Some((u, normal_next)) = queue.pop_front() {
                if normal_next {
                    for &w in &normal[u] {
                        if w < self.n {
                            if w != x {
                                g.add_edge(x, w);
                            }
                        } else if !seen[w][0] {
                            seen[w][0] = true;
                            queue.push_back((w, false));
                        }
                    }
                } else if tree_mate[u] != usize::MAX && !seen[tree_mate[u]][1] {
                    seen[tree_mate[u]][1] = true;
                    queue.push_back((tree_mate[u], true));
                }
            }
        }
        g
    }

    /// The tree as a colored graph whose automorphisms are those of the
    /// tree: originals 0, quotient markers 1, attachment markers 2, and each
    /// tree edge subdivided by a vertex of color 3.
    pub fn tagged_graph(&self) -> Graph {
        let total = self.total_vertices();
        let edges = self.tree_edges();
        let mut g = Graph::new(total + edges.len());
        for (u, adj) in self.normal_adjacency().iter().enumerate() {
            for &v in adj {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        for (i, &(m, m2)) in edges.iter().enumerate() {
            g.add_edge(m, total + i);
            g.add_edge(total + i, m2);
        }
        let colors = (0..g.n())
            .map(|v| match v {
                v if v < self.n => 0,
                v if v >= total => 3,
                v if (v - self.n).is_multiple_of(2) => 1,
                _ => 2,
            })
            .collect();
        g.with_colors(colors)
    }

    /// Every child's expansion is a module of its parent's expansion.
    pub fn modules_are_valid(&self, g: &Graph) -> bool {
        (1..self.nodes.len()).all(|c| {
            let parent = self.owner[self.nodes[c].parent.expect("non-root")];
            let outer = self.expansion(parent);
            let inner = self.expansion(c);
            let h = g.induced(&outer);
            let local: Vec<usize> = inner.iter().map(|v| outer.binary_search(v).expect("nested")).collect();
            h.is_module(&local).unwrap_or(false)
        })
    }

    /// Graphviz rendering: one cluster per node, markers white, tree edges
    /// dashed and directed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph modular {\n  node [shape=circle, style=filled, fillcolor=gray80];\n");
        for (c, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  subgraph cluster_{c} {{\n    label=\"{:?}\";", node.kind);
            for &v in &node.vertices {
                let _ = writeln!(s, "    v{v}{};", if self.is_marker(v) { " [fillcolor=white]" } else { "" });
            }
            for (a, b) in node.graph.edges() {
                let _ = writeln!(s, "    v{} -> v{} [dir=none];", node.vertices[a], node.vertices[b]);
            }
            if let Some(att) = self.attachment_of(c) {
                let _ = writeln!(s, "    v{att} [fillcolor=white];");
                for &v in &node.vertices {
                    let _ = writeln!(s, "    v{att} -> v{v} [dir=none];");
                }
            }
            s.push_str("  }\n");
        }
        for (m, m2) in self.tree_edges() {
            let _ = writeln!(s, "  v{m} -> v{m2} [style=dashed];");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_is_a_single_prime_leaf() {
        let t = ModularTree::build(&Graph::path(4)).unwrap();
        assert_eq!(t.nodes().len(), 1);
        assert_eq!(t.nodes()[0].kind, NodeKind::Prime);
        assert!(t.is_leaf(0));
    }

    #[test]
    fn complete_bipartite_splits_into_its_sides() {
        let t = ModularTree::build(&Graph::complete_bipartite(2, 3)).unwrap();
        assert_eq!(t.nodes()[0].kind, NodeKind::Complete);
        assert_eq!(t.nodes()[0].vertices.len(), 2);
        let sizes: Vec<(NodeKind, usize)> = t.nodes()[1..].iter().map(|c| (c.kind, c.vertices.len())).collect();
        assert_eq!(sizes, vec![(NodeKind::Independent, 2), (NodeKind::Independent, 3)]);
    }

    #[test]
    fn two_edges_hang_below_an_independent_root() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let t = ModularTree::build(&g).unwrap();
        assert_eq!(t.nodes()[0].kind, NodeKind::Independent);
        assert!(t.nodes()[1..].iter().all(|c| c.kind == NodeKind::Complete && c.vertices.len() == 2));
        assert_eq!(t.reconstruct(), g);
    }

    #[test]
    fn singleton_modules_become_one_vertex_leaves() {
        // A P4 with vertex 1 blown up into twins 1 and 4.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 2)]);
        let t = ModularTree::build(&g).unwrap();
        assert_eq!(t.nodes()[0].kind, NodeKind::Prime);
        assert_eq!(t.nodes().len(), 5);
        assert_eq!(t.expansion(2), vec![1, 4]);
        assert_eq!(t.reconstruct(), g);
        assert!(t.modules_are_valid(&g));
        assert_eq!(t.ancestry(4), vec![(2, 1), (0, 1)]);
    }

    #[test]
    fn closure_of_a_pair() {
        let g = Graph::path(4);
        assert!(module_closure(&g, &[0, 3]).iter().all(|&b| b));
        assert_eq!(module_closure(&Graph::complete_bipartite(2, 2), &[0, 1]), vec![true, true, false, false]);
    }
}
