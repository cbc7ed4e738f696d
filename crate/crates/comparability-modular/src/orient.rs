use std::collections::HashSet;

use graph_core::Graph;
use num_bigint::BigUint;
use perm_oracle::{automorphism_group_with_cap, ENUMERATION_LIMIT};

use crate::tree::{ModularTree, NodeKind};
use crate::ComparabilityError;

/// An antisymmetric relation on `0..n`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    n: usize,
    arc: Vec<bool>,
}

impl Orientation {
    pub fn new(n: usize) -> Self {
        Orientation { n, arc: vec![false; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc[u * self.n + v]
    }

    /// Panics if the reverse arc is already present.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(!self.has_arc(v, u), "orientation must stay antisymmetric");
        self.arc[u * self.n + v] = true;
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| (0..self.n).map(move |v| (u, v))).filter(|&(u, v)| self.has_arc(u, v)).collect()
    }

    pub fn reversed(&self) -> Self {
        let mut r = Orientation::new(self.n);
        for (u, v) in self.arcs() {
            r.arc[v * self.n + u] = true;
        }
        r
    }

    /// Each edge of `g` in exactly one direction, no arcs elsewhere, and
    /// `x -> y -> z` implies `x -> z`.
    pub fn is_transitive_orientation_of(&self, g: &Graph) -> bool {
        if self.n != g.n() {
            return false;
        }
        let n = self.n;
        for u in 0..n {
            for v in 0..n {
                let covered = self.has_arc(u, v) as u8 + self.has_arc(v, u) as u8;
                if covered != u8::from(g.has_edge(u, v)) {
                    return false;
                }
            }
        }
        (0..n).all(|x| {
            (0..n).filter(|&y| self.has_arc(x, y)).all(|y| (0..n).filter(|&z| self.has_arc(y, z)).all(|z| self.has_arc(x, z)))
        })
    }
}

/// Orients a prime node by implication-class forcing. `None` if forcing
/// meets itself reversed or the result is not transitive.
fn orient_by_forcing(h: &Graph) -> Option<Orientation> {
    let n = h.n();
    let mut o = Orientation::new(n);
    for (a0, b0) in h.edges() {
        if o.has_arc(a0, b0) || o.has_arc(b0, a0) {
            continue;
        }
        o.add_arc(a0, b0);
        let mut stack = vec![(a0, b0)];
        while let Some((a, b)) = stack.pop() {
            // a->b forces a->c when bc is a non-edge, and c->b when ac is one.
            let heads = h.neighbors(a).iter().filter(|&&c| c != b && !h.has_edge(b, c)).map(|&c| (a, c));
            let tails = h.neighbors(b).iter().filter(|&&c| c != a && !h.has_edge(a, c)).map(|&c| (c, b));
            let forced: Vec<(usize, usize)> = heads.chain(tails).collect();
            for (u, v) in forced {
                if o.has_arc(v, u) {
                    return None;
                }
                if !o.has_arc(u, v) {
                    o.add_arc(u, v);
                    stack.push((u, v));
                }
            }
        }
    }
    o.is_transitive_orientation_of(h).then_some(o)
}

fn orient_node(kind: NodeKind, h: &Graph) -> Option<Orientation> {
    match kind {
        NodeKind::Prime => orient_by_forcing(h),
        NodeKind::Complete => {
            let mut o = Orientation::new(h.n());
            for (u, v) in h.edges() {
                o.add_arc(u, v);
            }
            Some(o)
        }
        NodeKind::Independent => Some(Orientation::new(h.n())),
    }
}

/// A transitive orientation assembled over the modular tree, or `None` if
/// `g` is not a comparability graph.
pub fn transitive_orient(g: &Graph) -> Option<Orientation> {
    if g.n() == 0 {
        return Some(Orientation::new(0));
    }
    let tree = ModularTree::build(g).expect("non-empty graph");
    let node_orients: Vec<Orientation> =
        tree.nodes().iter().map(|node| orient_node(node.kind, &node.graph)).collect::<Option<_>>()?;
    let ancestry: Vec<Vec<(usize, usize)>> = (0..g.n()).map(|x| tree.ancestry(x)).collect();
    let mut o = Orientation::new(g.n());
    for (x, y) in g.edges() {
        let (ax, ay) = (&ancestry[x], &ancestry[y]);
        // Walk down from the root while x and y share a vertex.
        let mut i = ax.len() - 1;
        let mut j = ay.len() - 1;
        while ax[i] == ay[j] {
            i -= 1;
            j -= 1;
        }
        let (node, px) = ax[i];
        let py = ay[j].1;
        debug_assert_eq!(node, ay[j].0);
        if node_orients[node].has_arc(px, py) {
            o.add_arc(x, y);
        } else {
            o.add_arc(y, x);
        }
    }
    debug_assert!(o.is_transitive_orientation_of(g));
    Some(o)
}

pub fn is_comparability_graph(g: &Graph) -> bool {
    transitive_orient(g).is_some()
}

/// Both `g` and its complement are comparability graphs.
pub fn is_permutation_graph(g: &Graph) -> bool {
    is_comparability_graph(g) && is_comparability_graph(&g.complement())
}

fn factorial(k: usize) -> BigUint {
    (2..=k).fold(BigUint::from(1u8), |acc, i| acc * i)
}

/// Number of transitive orientations: 2 per prime node, `k!` per complete
/// node on `k` vertices, 1 per independent node.
pub fn count_transitive_orientations(g: &Graph) -> Result<BigUint, ComparabilityError> {
    let tree = ModularTree::build(g)?;
    let mut total = BigUint::from(1u8);
    for node in tree.nodes() {
        match node.kind {
            NodeKind::Prime => {
                orient_by_forcing(&node.graph).ok_or(ComparabilityError::NotComparability)?;
                total *= 2u8;
            }
            NodeKind::Complete => total *= factorial(node.vertices.len()),
            NodeKind::Independent => {}
        }
    }
    Ok(total)
}

/// Every transitive orientation of `g`, by backtracking over edges with
/// transitivity checked on each partial assignment.
pub fn all_transitive_orientations(g: &Graph) -> Vec<Orientation> {
    fn consistent(g: &Graph, o: &Orientation, a: usize, b: usize) -> bool {
        (0..g.n()).all(|c| {
            let after = !o.has_arc(b, c) || (g.has_edge(a, c) && !o.has_arc(c, a));
            let before = !o.has_arc(c, a) || (g.has_edge(c, b) && !o.has_arc(b, c));
            after && before
        })
    }
    fn rec(g: &Graph, edges: &[(usize, usize)], i: usize, o: &mut Orientation, out: &mut Vec<Orientation>) {
        let Some(&(u, v)) = edges.get(i) else {
            out.push(o.clone());
            return;
        };
        for (a, b) in [(u, v), (v, u)] {
            if consistent(g, o, a, b) {
                o.arc[a * o.n + b] = true;
                rec(g, edges, i + 1, o, out);
                o.arc[a * o.n + b] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(g, &g.edges(), 0, &mut Orientation::new(g.n()), &mut out);
    out
}

/// Orientations as bit masks over `edges`: bit `e` set iff the lower
/// endpoint points to the higher one.
fn masks(o: &[Orientation], edges: &[(usize, usize)]) -> Vec<u64> {
    o.iter()
        .map(|o| edges.iter().enumerate().filter(|(_, &(u, v))| o.has_arc(u, v)).fold(0u64, |m, (e, _)| m | 1 << e))
        .collect()
}

/// How a vertex permutation acts on edge-orientation masks.
struct EdgeAction {
    target: Vec<usize>,
    flip: Vec<bool>,
}

impl EdgeAction {
    fn new(perm: &[usize], edges: &[(usize, usize)]) -> Self {
        let (target, flip) = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                let key = (a.min(b), a.max(b));
                (edges.binary_search(&key).expect("automorphism maps edges to edges"), a > b)
            })
            .unzip();
        EdgeAction { target, flip }
    }

    fn fixes(&self, mask: u64) -> bool {
        self.target.iter().zip(&self.flip).enumerate().all(|(e, (&t, &f))| ((mask >> e & 1 == 1) ^ f) == (mask >> t & 1 == 1))
    }
}

/// Brute-force check that no non-identity automorphism fixes a pair of
/// transitive orientations of `g` and of its complement. Intended for
/// `n <= 8`; both orientation sets and the group are enumerated.
pub fn orientation_action_semiregular_check(g: &Graph) -> Result<bool, ComparabilityError> {
    let g = g.uncolored();
    let co = g.complement();
    let (edges, co_edges) = (g.edges(), co.edges());
    if edges.len() > 64 || co_edges.len() > 64 {
        return Err(ComparabilityError::TooLarge { n: g.n() });
    }
    let ours = masks(&all_transitive_orientations(&g), &edges);
    let theirs = masks(&all_transitive_orientations(&co), &co_edges);
    let aut = automorphism_group_with_cap(&g, g.n())?;
    let elements = aut.elements(ENUMERATION_LIMIT).ok_or(ComparabilityError::TooLarge { n: g.n() })?;
    let ours: HashSet<u64> = ours.into_iter().collect();
    let theirs: HashSet<u64> = theirs.into_iter().collect();
    Ok(elements.iter().filter(|p| !perm_oracle::perm::is_identity(p)).all(|p| {
        let on_g = EdgeAction::new(p, &edges);
        let on_co = EdgeAction::new(p, &co_edges);
        !(ours.iter().any(|&m| on_g.fixes(m)) && theirs.iter().any(|&m| on_co.fixes(m)))
    }))
}
