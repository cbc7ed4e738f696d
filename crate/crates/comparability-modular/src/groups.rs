use std::collections::{BTreeMap, BTreeSet, HashMap};

use graph_core::Graph;
use group_expr::{jordan_assemble, GroupTerm};
use perm_oracle::{automorphism_group_with_cap, IsoRegistry, PermGroup, Permutation, SmallGroup, DEFAULT_CAP};
use serde::Serialize;

use crate::tree::{ModularTree, NodeKind};
use crate::ComparabilityError;

#[derive(Clone, PartialEq, Eq, Hash)]
enum ClassKey {
    Degenerate(NodeKind, Vec<u32>),
    Prime(usize),
}

/// Facts about one prime node, measured on its uncolored group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeNodeReport {
    pub node: usize,
    pub size: usize,
    pub group: SmallGroup,
    /// The group restricted to subtree-class colors, as used in assembly.
    pub color_preserving: SmallGroup,
    pub orbit_sizes: Vec<usize>,
    pub fixed_points: usize,
    pub size_two_orbits: usize,
    /// Distinct involutions fixing a point of some size-2 orbit.
    pub size_two_stabilizers: usize,
}

fn involutions(h: &PermGroup) -> Vec<Permutation> {
    let mut inv: Vec<Permutation> = h
        .elements(4)
        .expect("a group of order at most four")
        .into_iter()
        .filter(|p| !perm_oracle::perm::is_identity(p))
        .collect();
    inv.sort();
    inv
}

/// Term for a prime node whose color-preserving group is `h`, given one
/// term per node vertex.
fn prime_term(h: &PermGroup, terms: &[GroupTerm]) -> Result<GroupTerm, ComparabilityError> {
    let orbits = h.all_orbits();
    let by_size = |k: usize| -> Vec<GroupTerm> { orbits.iter().filter(|o| o.len() == k).map(|o| terms[o[0]].clone()).collect() };
    let fixed = by_size(1);
    let moving = match h.classify() {
        SmallGroup::Trivial => GroupTerm::Trivial,
        SmallGroup::Cyclic(2) => GroupTerm::wreath(GroupTerm::direct(by_size(2)), GroupTerm::cyc(2)),
        SmallGroup::Klein4 => {
            let inv = involutions(h);
            let mut size_two: BTreeMap<usize, Vec<GroupTerm>> = BTreeMap::new();
            for o in orbits.iter().filter(|o| o.len() == 2) {
                let kind = inv.iter().position(|p| p[o[0]] == o[0]).expect("an involution fixes it");
                size_two.entry(kind).or_default().push(terms[o[0]].clone());
            }
            let mut factors = vec![(GroupTerm::direct(by_size(4)), 4)];
            factors.extend(size_two.into_values().map(|ts| (GroupTerm::direct(ts), 2)));
            GroupTerm::semidirect(factors, GroupTerm::klein())
        }
        class => {
            return Err(ComparabilityError::NotPermutation { group: format!("{class:?}"), order: h.order().to_string() })
        }
    };
    let mut fs = vec![moving];
    fs.extend(fixed);
    Ok(GroupTerm::direct(fs).normalize())
}

/// Bottom-up subtree classes and terms; node vertices are colored 0 for
/// originals and `1 + class` for markers.
struct Assembly<'a> {
    tree: &'a ModularTree,
    cap: usize,
    classes: HashMap<ClassKey, u32>,
    registry: IsoRegistry,
    info: Vec<Option<(u32, GroupTerm)>>,
}

impl<'a> Assembly<'a> {
    fn new(tree: &'a ModularTree, cap: usize) -> Self {
        Assembly { tree, cap, classes: HashMap::new(), registry: IsoRegistry::new(cap), info: vec![None; tree.nodes().len()] }
    }

    fn colored(&self, node: usize) -> (Graph, Vec<GroupTerm>) {
        let nd = &self.tree.nodes()[node];
        let (colors, terms): (Vec<u32>, Vec<GroupTerm>) = nd
            .vertices
            .iter()
            .map(|&v| match self.tree.child_of_marker(v) {
                Some(c) => {
                    let (class, term) = self.info[c].clone().expect("children first");
                    (1 + class, term)
                }
                None => (0, GroupTerm::Trivial),
            })
            .unzip();
        (nd.graph.clone().with_colors(colors), terms)
    }

    fn intern(&mut self, key: ClassKey) -> u32 {
        let next = self.classes.len() as u32;
        *self.classes.entry(key).or_insert(next)
    }

    /// Assembles the root term. With `reports`, a prime node outside the
    /// permutation-graph class is recorded rather than fatal.
    fn run(mut self, mut reports: Option<&mut Vec<PrimeNodeReport>>) -> Result<GroupTerm, ComparabilityError> {
        for c in (0..self.tree.nodes().len()).rev() {
            let (g, terms) = self.colored(c);
            let kind = self.tree.nodes()[c].kind;
            let (key, term) = match kind {
                NodeKind::Prime => {
                    let h = automorphism_group_with_cap(&g, self.cap)?;
                    let term = match (prime_term(&h, &terms), reports.as_deref_mut()) {
                        (Ok(t), _) => t,
                        (Err(e), None) => return Err(e),
                        (Err(_), Some(_)) => GroupTerm::Trivial,
                    };
                    if let Some(r) = reports.as_deref_mut() {
                        r.push(self.report(c, &h)?);
                    }
                    (ClassKey::Prime(self.registry.class_of(&g)?), term)
                }
                degenerate => {
                    let mut groups: BTreeMap<u32, (GroupTerm, u64)> = BTreeMap::new();
                    for (&col, t) in g.colors().iter().zip(terms) {
                        groups.entry(col).or_insert((t, 0)).1 += 1;
                    }
                    let mut colors = g.colors().to_vec();
                    colors.sort_unstable();
                    let term = jordan_assemble(&groups.into_values().collect::<Vec<_>>());
                    (ClassKey::Degenerate(degenerate, colors), term)
                }
            };
            let class = self.intern(key);
            self.info[c] = Some((class, term));
        }
        Ok(self.info[0].take().expect("root assembled").1)
    }

    fn report(&self, c: usize, colored: &PermGroup) -> Result<PrimeNodeReport, ComparabilityError> {
        let node = &self.tree.nodes()[c];
        let h = automorphism_group_with_cap(&node.graph, self.cap)?;
        let orbits = h.all_orbits();
        let mut orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        orbit_sizes.sort_unstable();
        let size_two: Vec<&Vec<usize>> = orbits.iter().filter(|o| o.len() == 2).collect();
        let elements = if size_two.is_empty() { Vec::new() } else { h.elements(64).unwrap_or_default() };
        let stabilizers: BTreeSet<&Permutation> = size_two
            .iter()
            .filter_map(|o| elements.iter().find(|p| !perm_oracle::perm::is_identity(p) && p[o[0]] == o[0]))
            .collect();
        Ok(PrimeNodeReport {
            node: c,
            size: node.vertices.len(),
            group: h.classify(),
            color_preserving: colored.classify(),
            fixed_points: orbit_sizes.iter().filter(|&&s| s == 1).count(),
            size_two_orbits: size_two.len(),
            size_two_stabilizers: stabilizers.len(),
            orbit_sizes,
        })
    }
}

/// `Aut(g)` of a permutation graph as a term, assembled over the modular
/// tree with the default oracle cap for prime nodes.
pub fn modular_tree_group(g: &Graph) -> Result<GroupTerm, ComparabilityError> {
    modular_tree_group_with_cap(g, DEFAULT_CAP)
}

pub fn modular_tree_group_with_cap(g: &Graph, cap: usize) -> Result<GroupTerm, ComparabilityError> {
    let tree = ModularTree::build(g)?;
    Assembly::new(&tree, cap).run(None)
}

/// One report per prime node of the modular tree of `g`, in node order.
pub fn prime_node_reports(g: &Graph, cap: usize) -> Result<Vec<PrimeNodeReport>, ComparabilityError> {
    let tree = ModularTree::build(g)?;
    let mut reports = Vec::new();
    Assembly::new(&tree, cap).run(Some(&mut reports))?;
    reports.reverse();
    Ok(reports)
}

/// Whether `t` has one of the shapes possible for a connected bipartite
/// permutation graph: `G1`, `G1 ≀ Z2 × G2 × G3`, or `(G1^4 × G2^2) ⋊ Z2^2`,
/// with `G1` a product of symmetric groups and `G2`, `G3` symmetric. False
/// when `g` is not connected and bipartite.
pub fn bipperm_shape_check(g: &Graph, t: &GroupTerm) -> bool {
    if !g.is_connected() || g.bipartition().is_none() {
        return false;
    }
    let t = t.normalize();
    if t.is_sym_product() {
        return true;
    }
    let is_z2 = |top: &GroupTerm| matches!(top, GroupTerm::Cyc { k: 2 } | GroupTerm::Sym { k: 2 });
    let wreath_ok = |f: &GroupTerm| matches!(f, GroupTerm::Wreath { base, top } if base.is_sym_product() && is_z2(top));
    match &t {
        GroupTerm::Wreath { .. } => wreath_ok(&t),
        GroupTerm::Direct { fs } => {
            let wreaths = fs.iter().filter(|f| wreath_ok(f)).count();
            let syms = fs.iter().filter(|f| f.is_sym_like()).count();
            wreaths == 1 && syms == fs.len() - 1 && syms <= 2
        }
        GroupTerm::Semidirect { orbits, top } => {
            **top == GroupTerm::klein()
                && orbits.iter().filter(|o| o.m == 2).count() <= 1
                && orbits.iter().all(|o| match o.m {
                    4 => o.f.is_sym_product(),
                    2 => o.f.is_sym_like(),
                    _ => false,
                })
        }
        _ => false,
    }
}
