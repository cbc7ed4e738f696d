use graph_core::Graph;
use serde::Serialize;

use crate::ComparabilityError;

/// Which part of `C_X` a vertex comes from: a vertex `x_i`, the incidence
/// of `x_i` with edge `e_k`, or the edge `e_k` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexRole {
    P(usize),
    Q(usize, usize),
    R(usize),
}

/// Linear orders over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realizer {
    pub chains: Vec<Vec<usize>>,
}

impl Realizer {
    /// One chain per line, vertices separated by spaces.
    pub fn to_text(&self) -> String {
        self.chains
            .iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct DimFourGadget {
    pub source: Graph,
    /// The bipartite graph the path construction was applied to: the source
    /// itself for `encode_cx`, its incidence graph for `encode_dim4`.
    pub base: Graph,
    pub encoded: Graph,
    pub roles: Vec<VertexRole>,
    pub realizer: Option<Realizer>,
}

/// Serializable view of a gadget.
#[derive(Debug, Clone, Serialize)]
pub struct GadgetRecord {
    pub source: Vec<(usize, usize)>,
    pub encoded: Vec<(usize, usize)>,
    pub roles: Vec<VertexRole>,
    pub chains: Vec<Vec<usize>>,
}

impl DimFourGadget {
    pub fn record(&self) -> GadgetRecord {
        GadgetRecord {
            source: self.source.edges(),
            encoded: self.encoded.edges(),
            roles: self.roles.clone(),
            chains: self.realizer.as_ref().map(|r| r.chains.clone()).unwrap_or_default(),
        }
    }
}

/// Vertex ids of `C_X`: `p_i = i`, the two incidences of edge `k = (u, v)`
/// with `u < v` at `n + 2k` and `n + 2k + 1`, and `r_k = n + 2m + k`.
struct CxIndex {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl CxIndex {
    fn new(x: &Graph) -> Self {
        CxIndex { n: x.n(), edges: x.edges() }
    }

    fn len(&self) -> usize {
        self.n + 3 * self.edges.len()
    }

    fn p(&self, i: usize) -> usize {
        i
    }

    fn q(&self, i: usize, k: usize) -> usize {
        let (u, v) = self.edges[k];
        debug_assert!(i == u || i == v);
        self.n + 2 * k + usize::from(i == v)
    }

    fn r(&self, k: usize) -> usize {
        self.n + 2 * self.edges.len() + k
    }

    /// Edges incident to `i`, ascending.
    fn incident(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().enumerate().filter(move |(_, &(u, v))| u == i || v == i).map(|(k, _)| k)
    }
}

/// `C_X` with no preconditions: every edge becomes a path of length four.
fn build_cx(x: &Graph) -> (Graph, Vec<VertexRole>) {
    let ix = CxIndex::new(x);
    let mut c = Graph::new(ix.len());
    let mut roles: Vec<VertexRole> = (0..x.n()).map(VertexRole::P).collect();
    for (k, &(u, v)) in ix.edges.iter().enumerate() {
        roles.push(VertexRole::Q(u, k));
        roles.push(VertexRole::Q(v, k));
        for i in [u, v] {
            c.add_edge(ix.p(i), ix.q(i, k));
            c.add_edge(ix.q(i, k), ix.r(k));
        }
    }
    roles.extend((0..ix.edges.len()).map(VertexRole::R));
    (c, roles)
}

pub fn is_cycle(x: &Graph) -> bool {
    x.n() >= 3 && x.is_connected() && (0..x.n()).all(|v| x.degree(v) == 2)
}

fn check_source(x: &Graph) -> Result<(), ComparabilityError> {
    if x.n() < 2 {
        return Err(ComparabilityError::TooSmall { n: x.n() });
    }
    if !x.is_connected() {
        return Err(ComparabilityError::Disconnected);
    }
    if is_cycle(x) {
        return Err(ComparabilityError::CycleInput { n: x.n() });
    }
    Ok(())
}

/// `C_X` for a connected graph other than a cycle, without a realizer.
pub fn encode_cx(x: &Graph) -> Result<DimFourGadget, ComparabilityError> {
    check_source(x)?;
    let (encoded, roles) = build_cx(x);
    Ok(DimFourGadget { source: x.uncolored(), base: x.uncolored(), encoded, roles, realizer: None })
}

/// Four linear orders on `V(C_X)` whose intersection has exactly the
/// edges of `C_X` as comparable pairs. The side of vertex 0 is `A`.
pub fn four_chains(x: &Graph) -> Result<Realizer, ComparabilityError> {
    let side = x.bipartition().ok_or(ComparabilityError::NotBipartite)?;
    four_chains_with_sides(x, &side)
}

/// As [`four_chains`], with `in_b[i]` placing `x_i` on side `B`. Free
/// orders are ascending indices.
pub fn four_chains_with_sides(x: &Graph, in_b: &[bool]) -> Result<Realizer, ComparabilityError> {
    if in_b.len() != x.n() || x.edges().iter().any(|&(u, v)| in_b[u] == in_b[v]) {
        return Err(ComparabilityError::NotBipartite);
    }
    let ix = CxIndex::new(x);
    let m = ix.edges.len();
    let chain = |b_first: bool, up: bool| -> Vec<usize> {
        let first: Vec<usize> = (0..x.n()).filter(|&i| in_b[i] == b_first).collect();
        let second: Vec<usize> = (0..x.n()).filter(|&i| in_b[i] != b_first).collect();
        let mut out: Vec<usize> = first.iter().map(|&i| ix.p(i)).collect();
        let ks: Vec<usize> = if up { (0..m).collect() } else { (0..m).rev().collect() };
        for k in ks {
            let (u, v) = ix.edges[k];
            let own = if in_b[u] == b_first { u } else { v };
            out.extend([ix.r(k), ix.q(own, k)]);
        }
        let others: Vec<usize> = if up { second } else { second.into_iter().rev().collect() };
        for j in others {
            out.push(ix.p(j));
            out.extend(ix.incident(j).map(|k| ix.q(j, k)));
        }
        out
    };
    Ok(Realizer { chains: vec![chain(false, true), chain(false, false), chain(true, true), chain(true, false)] })
}

/// Whether the pairs ordered alike by every chain are exactly `E(g)`.
pub fn realizer_check(r: &Realizer, g: &Graph) -> Result<bool, ComparabilityError> {
    let n = g.n();
    if r.chains.is_empty() {
        return Err(ComparabilityError::InvalidChain("no chains".into()));
    }
    let mut positions = Vec::with_capacity(r.chains.len());
    for (i, chain) in r.chains.iter().enumerate() {
        let mut pos = vec![usize::MAX; n];
        for (at, &v) in chain.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(ComparabilityError::InvalidChain(format!("chain {i} is not a permutation of 0..{n}")));
            }
            pos[v] = at;
        }
        if chain.len() != n {
            return Err(ComparabilityError::InvalidChain(format!("chain {i} has {} of {n} vertices", chain.len())));
        }
        positions.push(pos);
    }
    Ok((0..n).all(|u| {
        (u + 1..n).all(|v| {
            let first = positions[0][u] < positions[0][v];
            let comparable = positions.iter().all(|p| (p[u] < p[v]) == first);
            comparable == g.has_edge(u, v)
        })
    }))
}

/// Bipartite incidence graph: vertices of `x` first, then one vertex per
/// edge in `x.edges()` order.
pub fn incidence_graph(x: &Graph) -> Graph {
    let edges = x.edges();
    let mut y = Graph::new(x.n() + edges.len());
    for (k, &(u, v)) in edges.iter().enumerate() {
        y.add_edge(u, x.n() + k);
        y.add_edge(v, x.n() + k);
    }
    y
}

/// `C_Y` of the incidence graph `Y` of `x`, with its four-chain realizer.
pub fn encode_dim4(x: &Graph) -> Result<DimFourGadget, ComparabilityError> {
    check_source(x)?;
    let y = incidence_graph(x);
    let (encoded, roles) = build_cx(&y);
    let in_b: Vec<bool> = (0..y.n()).map(|v| v >= x.n()).collect();
    let realizer = four_chains_with_sides(&y, &in_b)?;
    Ok(DimFourGadget { source: x.uncolored(), base: y, encoded, roles, realizer: Some(realizer) })
}
