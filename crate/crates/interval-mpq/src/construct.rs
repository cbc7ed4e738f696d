//! Interval graph to tree and back, preserving the automorphism group.

use std::collections::VecDeque;

use graph_core::Graph;

use crate::groups::{span_classes, Canon};
use crate::mpq::{build_mpq, MpqNode};
use crate::trees::tree_centers;
use crate::IntervalError;

struct TreeBuilder {
    edges: Vec<(usize, usize)>,
    n: usize,
}

impl TreeBuilder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn child(&mut self, parent: usize) -> usize {
        let v = self.vertex();
        self.edges.push((parent, v));
        v
    }

    /// A path of `len` new vertices hanging from `from`; returns its far end.
    fn path(&mut self, from: usize, len: usize) -> usize {
        (0..len).fold(from, |at, _| self.child(at))
    }
}

struct Gadgets {
    canon: Canon,
    b: TreeBuilder,
    /// Odd base tail length, longer than any Q-node branch.
    c0: usize,
}

impl Gadgets {
    /// Hangs `node`'s gadget from `at` through a bare tail whose length encodes
    /// the node's code, so tails of different codes never match.
    fn tailed(&mut self, at: usize, node: &MpqNode) {
        let code = self.canon.analyze(node).code as usize;
        let end = self.b.path(at, self.c0 + 2 * code);
        let root = self.gadget(node);
        self.b.edges.push((end, root));
    }

    fn gadget(&mut self, node: &MpqNode) -> usize {
        match node {
            MpqNode::Leaf { section, .. } => {
                let r = self.b.vertex();
                for _ in 0..section.len() {
                    self.b.child(r);
                }
                r
            }
            MpqNode::P { section, children } => {
                let r = self.b.vertex();
                for c in children {
                    self.tailed(r, c);
                }
                if !section.is_empty() {
                    let hub = self.b.path(r, 2);
                    for _ in 0..section.len() {
                        self.b.child(hub);
                    }
                }
                r
            }
            MpqNode::Q { children, .. } => {
                let m = children.len();
                let first = self.b.vertex();
                let mut spine = vec![first];
                for _ in 1..2 * m - 1 {
                    let next = self.b.child(*spine.last().unwrap());
                    spine.push(next);
                }
                for (i, c) in children.iter().enumerate() {
                    self.tailed(spine[2 * i], c);
                }
                for (l, r, s) in span_classes(node) {
                    let end = self.b.path(spine[l + r], r - l + 1);
                    for _ in 0..s {
                        self.b.child(end);
                    }
                }
                spine[m - 1]
            }
        }
    }
}

fn max_q_children(node: &MpqNode) -> usize {
    let own = if matches!(node, MpqNode::Q { .. }) { node.children().len() } else { 0 };
    node.children().iter().map(max_q_children).fold(own, usize::max)
}

fn eccentricity(n: usize, edges: &[(usize, usize)], from: usize) -> usize {
    let g = Graph::from_edges(n, edges);
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    let mut far = 0;
    while let Some(v) = queue.pop_front() {
        far = far.max(dist[v]);
        for &u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    far
}

/// A tree whose automorphism group is isomorphic to that of the interval graph `g`.
pub fn interval_to_tree(g: &Graph) -> Result<Graph, IntervalError> {
    let tree = build_mpq(g)?;
    if g.n() == 1 {
        return Ok(Graph::new(1));
    }
    let c0 = (max_q_children(tree.root()) + 3).max(5) | 1;
    let mut gadgets = Gadgets { canon: Canon::default(), b: TreeBuilder { edges: Vec::new(), n: 0 }, c0 };
    let root = gadgets.gadget(tree.root());
    let mut b = gadgets.b;
    // Two bare paths of distinct lengths, both taller than the gadget, pin the root.
    let h = eccentricity(b.n, &b.edges, root);
    b.path(root, h + 1);
    b.path(root, h + 2);
    Ok(Graph::from_edges(b.n, &b.edges))
}

/// The spider with legs of lengths 1, 2 and 3: an asymmetric connected
/// interval graph without a universal vertex.
pub fn y_gadget() -> Graph {
    Graph::from_edges(7, &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)])
}

/// An interval graph whose automorphism group is isomorphic to that of the
/// tree `t`. Vertices nest below their ancestors from the center; every
/// vertex with a single child also gets a copy of [`y_gadget`] below it.
pub fn tree_to_interval(t: &Graph) -> Result<Graph, IntervalError> {
    if !t.is_tree() {
        return Err(IntervalError::NotATree);
    }
    let n = t.n();
    if n == 1 {
        return Ok(Graph::new(1));
    }
    let (base, root) = match tree_centers(t)[..] {
        [c] => (t.clone(), c),
        [a, b] => {
            let mut edges: Vec<(usize, usize)> =
                t.edges().into_iter().filter(|&(u, v)| (u, v) != (a.min(b), a.max(b))).collect();
            edges.extend([(a, n), (n, b)]);
            (Graph::from_edges(n + 1, &edges), n)
        }
        _ => unreachable!("a tree has one or two centers"),
    };
    let tn = base.n();
    let mut parent = vec![usize::MAX; tn];
    let mut children = vec![0usize; tn];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &u in base.neighbors(v) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                children[v] += 1;
                order.push(u);
            }
        }
    }
    let ancestors = |v: usize| {
        let mut out = Vec::new();
        let mut x = v;
        while x != root {
            x = parent[x];
            out.push(x);
        }
        out
    };
    let y = y_gadget();
    let padded: Vec<usize> = order.iter().copied().filter(|&v| children[v] == 1).collect();
    let mut edges = Vec::new();
    for &v in &order {
        edges.extend(ancestors(v).into_iter().map(|a| (a, v)));
    }
    for (k, &v) in padded.iter().enumerate() {
        let off = tn + k * y.n();
        let mut above = ancestors(v);
        above.push(v);
        for (p, q) in y.edges() {
            edges.push((off + p, off + q));
        }
        for j in 0..y.n() {
            edges.extend(above.iter().map(|&a| (a, off + j)));
        }
    }
    Ok(Graph::from_edges(tn + padded.len() * y.n(), &edges))
}
