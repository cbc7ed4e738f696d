use std::collections::BTreeSet;
use std::fmt::Write as _;

use graph_core::Graph;

use crate::split::find_split;
use crate::CircleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Prime,
    Clique,
    /// Carries the star's center vertex.
    Star(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitNode {
    pub vertices: Vec<usize>,
    pub kind: NodeKind,
}

/// Where the split tree is centered. An edge center stands for a virtual
/// node of two adjacent markers inserted in the middle of that tree edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Center {
    Node(usize),
    Edge(usize, usize),
}

/// Vertices `0..n` are the original ones; higher ids are markers. Each
/// marker has exactly one tree edge, to a marker of another node.
#[derive(Debug, Clone)]
pub struct SplitTree {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    mate: Vec<Option<usize>>,
    nodes: Vec<SplitNode>,
    node_of: Vec<usize>,
}

fn kind_of(adj: &[BTreeSet<usize>], vs: &[usize]) -> Option<NodeKind> {
    let k = vs.len();
    let deg = |v: usize| adj[v].len();
    if vs.iter().all(|&v| deg(v) == k - 1) {
        return Some(NodeKind::Clique);
    }
    let centers: Vec<usize> = vs.iter().copied().filter(|&v| deg(v) == k - 1).collect();
    if centers.len() == 1 && vs.iter().all(|&v| v == centers[0] || deg(v) == 1) {
        return Some(NodeKind::Star(centers[0]));
    }
    None
}

impl SplitTree {
    /// The reduced split tree of a connected graph: every node prime, a
    /// clique or a star, with no two cliques adjacent and no star center
    /// attached to a leaf of another star.
    pub fn build(g: &Graph) -> Result<SplitTree, CircleError> {
        if g.n() == 0 {
            return Err(CircleError::Empty);
        }
        if !g.is_connected() {
            return Err(CircleError::Disconnected);
        }
        let n = g.n();
        let mut t = SplitTree {
            n,
            adj: (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            mate: vec![None; n],
            nodes: Vec::new(),
            node_of: vec![0; n],
        };
        let mut work = vec![(0..n).collect::<Vec<usize>>()];
        let mut done: Vec<SplitNode> = Vec::new();
        while let Some(vs) = work.pop() {
            if let Some(kind) = kind_of(&t.adj, &vs) {
                done.push(SplitNode { vertices: vs, kind });
                continue;
            }
            let local = t.local_graph(&vs);
            match find_split(&local)? {
                None => done.push(SplitNode { vertices: vs, kind: NodeKind::Prime }),
                Some(s) => {
                    let map = |xs: &[usize]| -> Vec<usize> { xs.iter().map(|&i| vs[i]).collect() };
                    let (a, b) = (map(&s.a), map(&s.b));
                    let (one, two) = (map(&s.side_one()), map(&s.side_two()));
                    for &u in &a {
                        for &v in &b {
                            t.adj[u].remove(&v);
                            t.adj[v].remove(&u);
                        }
                    }
                    let (ma, mb) = (t.new_marker(), t.new_marker());
                    for &u in &a {
                        t.connect(ma, u);
                    }
                    for &v in &b {
                        t.connect(mb, v);
                    }
                    t.mate[ma] = Some(mb);
                    t.mate[mb] = Some(ma);
                    work.push(one.into_iter().chain([ma]).collect());
                    work.push(two.into_iter().chain([mb]).collect());
                }
            }
        }
        t.set_nodes(done);
        t.reduce();
        t.compact();
        Ok(t)
    }

    /// Renumbers markers so that the ones dropped by merges leave no gaps.
    fn compact(&mut self) {
        let live: Vec<usize> = (0..self.adj.len()).filter(|&v| v < self.n || self.mate[v].is_some()).collect();
        let mut new_id = vec![usize::MAX; self.adj.len()];
        for (i, &v) in live.iter().enumerate() {
            new_id[v] = i;
        }
        self.adj = live.iter().map(|&v| self.adj[v].iter().map(|&u| new_id[u]).collect()).collect();
        self.mate = live.iter().map(|&v| self.mate[v].map(|u| new_id[u])).collect();
        self.node_of = vec![0; live.len()];
        let nodes = std::mem::take(&mut self.nodes)
            .into_iter()
            .map(|node| SplitNode {
                vertices: node.vertices.iter().map(|&v| new_id[v]).collect(),
                kind: match node.kind {
                    NodeKind::Star(c) => NodeKind::Star(new_id[c]),
                    k => k,
                },
            })
            .collect();
        self.set_nodes(nodes);
    }

    fn new_marker(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.mate.push(None);
        self.node_of.push(0);
        self.adj.len() - 1
    }

    fn connect(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    fn set_nodes(&mut self, mut nodes: Vec<SplitNode>) {
        for node in &mut nodes {
            node.vertices.sort_unstable();
        }
        nodes.sort_by(|x, y| x.vertices.cmp(&y.vertices));
        for (i, node) in nodes.iter().enumerate() {
            for &v in &node.vertices {
                self.node_of[v] = i;
            }
        }
        self.nodes = nodes;
    }

    /// Merges adjacent cliques and center-to-leaf star pairs until none remain.
    fn reduce(&mut self) {
        loop {
            let mut merged = false;
            for m1 in self.n..self.adj.len() {
                let Some(m2) = self.mate[m1] else { continue };
                let (n1, n2) = (self.node_of[m1], self.node_of[m2]);
                let (k1, k2) = (self.nodes[n1].kind, self.nodes[n2].kind);
                let joinable = match (k1, k2) {
                    (NodeKind::Clique, NodeKind::Clique) => true,
                    (NodeKind::Star(c1), NodeKind::Star(c2)) => c1 == m1 && c2 != m2,
                    _ => false,
                };
                if joinable {
                    self.merge(m1, m2);
                    merged = true;
                    break;
                }
            }
            if !merged {
                return;
            }
        }
    }

    /// Replaces the tree edge `m1 m2` by joining each neighbor of `m1` to each
    /// neighbor of `m2`, fusing the two nodes.
    fn merge(&mut self, m1: usize, m2: usize) {
        let (n1, n2) = (self.node_of[m1], self.node_of[m2]);
        let left: Vec<usize> = self.adj[m1].iter().copied().collect();
        let right: Vec<usize> = self.adj[m2].iter().copied().collect();
        for m in [m1, m2] {
            for u in std::mem::take(&mut self.adj[m]) {
                self.adj[u].remove(&m);
            }
            self.mate[m] = None;
        }
        for &u in &left {
            for &v in &right {
                self.connect(u, v);
            }
        }
        let vertices: Vec<usize> = self.nodes[n1]
            .vertices
            .iter()
            .chain(&self.nodes[n2].vertices)
            .copied()
            .filter(|&v| v != m1 && v != m2)
            .collect();
        // Clique with clique stays a clique; a star keeps the center of the side holding the leaf marker.
        let kind = self.nodes[n2].kind;
        let mut nodes: Vec<SplitNode> =
            self.nodes.iter().enumerate().filter(|&(i, _)| i != n1 && i != n2).map(|(_, x)| x.clone()).collect();
        nodes.push(SplitNode { vertices, kind });
        self.set_nodes(nodes);
    }

    /// Graph on the vertices of `vs` (in that order) with their normal edges.
    fn local_graph(&self, vs: &[usize]) -> Graph {
        let index = |v: usize| vs.iter().position(|&x| x == v);
        let mut g = Graph::new(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            for &u in &self.adj[v] {
                if let Some(j) = index(u) {
                    if i < j {
                        g.add_edge(i, j);
                    }
                }
            }
        }
        g
    }

    /// Number of original vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Original plus marker vertices.
    pub fn total_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn nodes(&self) -> &[SplitNode] {
        &self.nodes
    }

    pub fn node_of(&self, v: usize) -> usize {
        self.node_of[v]
    }

    pub fn is_marker(&self, v: usize) -> bool {
        v >= self.n
    }

    /// The marker at the other end of `v`'s tree edge.
    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn normal_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// Tree edges as marker pairs `(m, m')` with `m < m'`.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        (self.n..self.adj.len()).filter_map(|m| self.mate[m].filter(|&o| m < o).map(|o| (m, o))).collect()
    }

    /// The node's graph with local ids following `nodes()[i].vertices`.
    pub fn node_graph(&self, i: usize) -> Graph {
        self.local_graph(&self.nodes[i].vertices)
    }

    /// Center of the tree obtained by contracting every node.
    pub fn center(&self) -> Center {
        let k = self.nodes.len();
        let mut deg = vec![0usize; k];
        let mut nbrs = vec![Vec::new(); k];
        for (a, b) in self.tree_edges() {
            let (x, y) = (self.node_of[a], self.node_of[b]);
            deg[x] += 1;
            deg[y] += 1;
            nbrs[x].push((y, a));
            nbrs[y].push((x, b));
        }
        let mut alive = vec![true; k];
        let mut left = k;
        let mut layer: Vec<usize> = (0..k).filter(|&i| deg[i] <= 1).collect();
        while left > 2 {
            let mut next = Vec::new();
            for &i in &layer {
                alive[i] = false;
                left -= 1;
                for &(j, _) in &nbrs[i] {
                    if alive[j] {
                        deg[j] -= 1;
                        if deg[j] == 1 {
                            next.push(j);
                        }
                    }
                }
            }
            layer = next;
        }
        let rest: Vec<usize> = (0..k).filter(|&i| alive[i]).collect();
        match rest[..] {
            [c] => Center::Node(c),
            [x, y] => {
                let &(_, m) = nbrs[x].iter().find(|&&(j, _)| j == y).expect("central nodes are adjacent");
                let o = self.mate[m].unwrap();
                Center::Edge(m.min(o), m.max(o))
            }
            _ => unreachable!("a tree has one or two centers"),
        }
    }

    /// Edges of the represented graph, read off alternating paths.
    pub fn reconstruct(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for x in 0..self.n {
            let mut stack: Vec<usize> = vec![x];
            while let Some(v) = stack.pop() {
                for u in self.normal_neighbors(v) {
                    if !self.is_marker(u) {
                        if u > x {
                            g.add_edge(x, u);
                        }
                    } else {
                        // Normal edges alternate with tree edges; the node tree has no cycles.
                        stack.push(self.mate[u].expect("marker has a tree edge"));
                    }
                }
            }
        }
        g
    }

    /// True iff no tree edge joins two cliques or a star center to a star leaf.
    pub fn is_reduced(&self) -> bool {
        self.tree_edges().into_iter().all(|(a, b)| {
            let (ka, kb) = (self.nodes[self.node_of[a]].kind, self.nodes[self.node_of[b]].kind);
            match (ka, kb) {
                (NodeKind::Clique, NodeKind::Clique) => false,
                (NodeKind::Star(ca), NodeKind::Star(cb)) => (ca == a) == (cb == b),
                _ => true,
            }
        })
    }

    /// Node kinds match their graphs and prime nodes have no split.
    pub fn nodes_are_prime_or_degenerate(&self) -> bool {
        self.nodes.iter().enumerate().all(|(i, node)| match node.kind {
            NodeKind::Prime => {
                kind_of(&self.adj, &node.vertices).is_none() && find_split(&self.node_graph(i)) == Ok(None)
            }
            k => kind_of(&self.adj, &node.vertices) == Some(k),
        })
    }

    /// The split tree as a colored graph: originals color 0, markers 1, and
    /// each tree edge subdivided by a vertex of color 2.
    pub fn tagged_graph(&self) -> Graph {
        let total = self.adj.len();
        let tree = self.tree_edges();
        let mut g = Graph::new(total + tree.len());
        for v in 0..total {
            for &u in &self.adj[v] {
                if v < u {
                    g.add_edge(v, u);
                }
            }
            g.set_color(v, u32::from(self.is_marker(v)));
        }
        for (i, &(a, b)) in tree.iter().enumerate() {
            g.add_edge(a, total + i);
            g.add_edge(b, total + i);
            g.set_color(total + i, 2);
        }
        g
    }

    /// Vertices of the subtree hanging from `marker`'s node away from its tree edge.
    pub fn subtree_vertices(&self, marker: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(self.node_of[marker], marker)];
        while let Some((node, root)) = stack.pop() {
            for &v in &self.nodes[node].vertices {
                out.push(v);
                if v != root {
                    if let Some(o) = self.mate[v] {
                        stack.push((self.node_of[o], o));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// DOT rendering: one cluster per node, markers white, tree edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph split_tree {\n  node [style=filled];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let label = match node.kind {
                NodeKind::Prime => "prime".to_string(),
                NodeKind::Clique => "clique".to_string(),
                NodeKind::Star(c) => format!("star center {c}"),
            };
            let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label=\"{label}\";");
            for &v in &node.vertices {
                let fill = if self.is_marker(v) { "white" } else { "gray" };
                let _ = writeln!(out, "    v{v} [fillcolor={fill}];");
            }
            out.push_str("  }\n");
        }
        for v in 0..self.adj.len() {
            for &u in &self.adj[v] {
                if v < u {
                    let _ = writeln!(out, "  v{v} -- v{u};");
                }
            }
        }
        for (a, b) in self.tree_edges() {
            let _ = writeln!(out, "  v{a} -- v{b} [style=dashed];");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle_is_one_prime_node() {
        let t = SplitTree::build(&Graph::cycle(5)).unwrap();
        assert_eq!(t.nodes().len(), 1);
        assert_eq!(t.nodes()[0].kind, NodeKind::Prime);
        assert_eq!(t.center(), Center::Node(0));
    }

    #[test]
    fn star_is_one_star_node() {
        let t = SplitTree::build(&Graph::star(4)).unwrap();
        assert_eq!(t.nodes().len(), 1);
        assert_eq!(t.nodes()[0].kind, NodeKind::Star(0));
    }

    #[test]
    fn path_gives_two_stars() {
        let g = Graph::path(4);
        let t = SplitTree::build(&g).unwrap();
        assert_eq!(t.nodes().len(), 2);
        assert!(t.nodes().iter().all(|x| matches!(x.kind, NodeKind::Star(_))));
        assert!(t.is_reduced());
        assert_eq!(t.reconstruct().edges(), g.edges());
        assert!(matches!(t.center(), Center::Edge(_, _)));
    }

    #[test]
    fn complete_graph_stays_whole() {
        let t = SplitTree::build(&Graph::complete(5)).unwrap();
        assert_eq!(t.nodes().len(), 1);
        assert_eq!(t.nodes()[0].kind, NodeKind::Clique);
    }
}
