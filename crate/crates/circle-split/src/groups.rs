use std::collections::{BTreeMap, HashMap};

use graph_core::Graph;
use group_expr::{jordan_assemble, GroupTerm};
use perm_oracle::{automorphism_group_with_cap, IsoRegistry, PermGroup, Permutation, SmallGroup, DEFAULT_CAP};

use crate::tree::{Center, NodeKind, SplitTree};
use crate::CircleError;

#[derive(Clone, PartialEq, Eq, Hash)]
enum ClassKey {
    /// Kind tag, whether the root is the star center, and the sorted
    /// (is-center, color) pairs of the other vertices.
    Degenerate(u8, bool, Vec<(bool, u32)>),
    Prime(usize),
}

#[derive(Clone)]
struct Rooted {
    class: u32,
    term: GroupTerm,
}

/// Bottom-up stabilizer terms of rooted subtrees, with isomorphism classes
/// of rooted subtrees as colors.
pub struct StabilizerAnalysis<'a> {
    tree: &'a SplitTree,
    cap: usize,
    classes: HashMap<ClassKey, u32>,
    registry: IsoRegistry,
    memo: HashMap<usize, Rooted>,
}

/// Colors of a node's vertices: 0 for `root`, 1 for original vertices,
/// `2 + class` for markers leading to a child subtree.
struct Colored {
    colors: Vec<u32>,
    terms: Vec<GroupTerm>,
}

fn product_term(fs: Vec<GroupTerm>) -> GroupTerm {
    GroupTerm::direct(fs).normalize()
}

impl<'a> StabilizerAnalysis<'a> {
    pub fn new(tree: &'a SplitTree, cap: usize) -> Self {
        StabilizerAnalysis { tree, cap, classes: HashMap::new(), registry: IsoRegistry::new(cap), memo: HashMap::new() }
    }

    fn colored(&mut self, node: usize, root: Option<usize>) -> Result<Colored, CircleError> {
        let vs = self.tree.nodes()[node].vertices.clone();
        let mut colors = Vec::with_capacity(vs.len());
        let mut terms = Vec::with_capacity(vs.len());
        for &v in &vs {
            if Some(v) == root {
                colors.push(0);
                terms.push(GroupTerm::Trivial);
            } else if let Some(o) = self.tree.mate(v) {
                let child = self.rooted(o)?;
                colors.push(2 + child.class);
                terms.push(child.term);
            } else {
                colors.push(1);
                terms.push(GroupTerm::Trivial);
            }
        }
        Ok(Colored { colors, terms })
    }

    fn intern(&mut self, key: ClassKey) -> u32 {
        let next = self.classes.len() as u32;
        *self.classes.entry(key).or_insert(next)
    }

    /// Class and stabilizer term of the subtree hanging from `marker`'s node,
    /// rooted at `marker`.
    fn rooted(&mut self, marker: usize) -> Result<Rooted, CircleError> {
        if let Some(r) = self.memo.get(&marker) {
            return Ok(r.clone());
        }
        let node = self.tree.node_of(marker);
        let kind = self.tree.nodes()[node].kind;
        let vs = self.tree.nodes()[node].vertices.clone();
        let col = self.colored(node, Some(marker))?;
        let result = match kind {
            NodeKind::Prime => {
                let g = self.tree.node_graph(node).with_colors(col.colors.clone());
                let h = automorphism_group_with_cap(&g, self.cap)?;
                let idx = self.registry.class_of(&g)?;
                let term = small_group_term(&h, &col.terms, false)?;
                Rooted { class: self.intern(ClassKey::Prime(idx)), term }
            }
            degenerate => {
                let center = match degenerate {
                    NodeKind::Star(c) => Some(c),
                    _ => None,
                };
                let (tag, root_is_center) = (u8::from(center.is_some()), center == Some(marker));
                let mut pattern: Vec<(bool, u32)> = vs
                    .iter()
                    .zip(&col.colors)
                    .filter(|&(&v, _)| v != marker)
                    .map(|(&v, &c)| (Some(v) == center, c))
                    .collect();
                pattern.sort_unstable();
                let term = degenerate_term(&vs, &col, center, Some(marker));
                Rooted { class: self.intern(ClassKey::Degenerate(tag, root_is_center, pattern)), term }
            }
        };
        self.memo.insert(marker, result.clone());
        Ok(result)
    }

    /// Color-preserving stabilizer of `root` in its node, and the term of
    /// the stabilizer of `root` in the subtree it roots.
    pub fn node_stabilizer(&mut self, root: usize) -> Result<(PermGroup, GroupTerm), CircleError> {
        let node = self.tree.node_of(root);
        let col = self.colored(node, Some(root))?;
        let g = self.tree.node_graph(node).with_colors(col.colors);
        let h = automorphism_group_with_cap(&g, self.cap.max(g.n()))?;
        Ok((h, self.rooted(root)?.term))
    }

    /// `Aut` of the whole tree, assembled at its center.
    pub fn whole_group(&mut self) -> Result<GroupTerm, CircleError> {
        match self.tree.center() {
            Center::Edge(a, b) => {
                let (ra, rb) = (self.rooted(a)?, self.rooted(b)?);
                Ok(if ra.class == rb.class {
                    jordan_assemble(&[(ra.term, 2)])
                } else {
                    product_term(vec![ra.term, rb.term])
                })
            }
            Center::Node(c) => {
                let kind = self.tree.nodes()[c].kind;
                let vs = self.tree.nodes()[c].vertices.clone();
                let col = self.colored(c, None)?;
                match kind {
                    NodeKind::Prime => {
                        let g = self.tree.node_graph(c).with_colors(col.colors.clone());
                        let h = automorphism_group_with_cap(&g, self.cap)?;
                        small_group_term(&h, &col.terms, true)
                    }
                    NodeKind::Star(center) => Ok(degenerate_term(&vs, &col, Some(center), None)),
                    NodeKind::Clique => Ok(degenerate_term(&vs, &col, None, None)),
                }
            }
        }
    }
}

/// Cliques and stars: vertices of one color (and role) are freely permuted.
fn degenerate_term(vs: &[usize], col: &Colored, center: Option<usize>, root: Option<usize>) -> GroupTerm {
    let mut groups: BTreeMap<(bool, u32), (GroupTerm, u64)> = BTreeMap::new();
    for (i, &v) in vs.iter().enumerate() {
        if Some(v) == root {
            continue;
        }
        groups.entry((Some(v) == center, col.colors[i])).or_insert((col.terms[i].clone(), 0)).1 += 1;
    }
    jordan_assemble(&groups.into_values().collect::<Vec<_>>())
}

/// One representative term per orbit, keyed by orbit size.
fn orbit_terms(h: &PermGroup, terms: &[GroupTerm]) -> Vec<(usize, usize, GroupTerm)> {
    h.all_orbits().into_iter().map(|o| (o.len(), o[0], terms[o[0]].clone())).collect()
}

/// Assembles the term for a prime node whose color-preserving group is `h`.
/// Stabilizers in prime circle nodes lie in `Z2^2`; centers may also be
/// cyclic or dihedral, acting semiregularly on rotations.
fn small_group_term(h: &PermGroup, terms: &[GroupTerm], is_center: bool) -> Result<GroupTerm, CircleError> {
    let orbits = orbit_terms(h, terms);
    let by_size = |k: usize| -> Vec<GroupTerm> { orbits.iter().filter(|o| o.0 == k).map(|o| o.2.clone()).collect() };
    let class = h.classify();
    let outside = || CircleError::NodeGroupOutsideClass { group: format!("{class:?}"), order: h.order().to_string() };
    let only_sizes = |ok: &[usize]| orbits.iter().all(|o| ok.contains(&o.0));
    match class {
        SmallGroup::Trivial => Ok(product_term(by_size(1))),
        SmallGroup::Cyclic(2) => {
            let swapped = GroupTerm::wreath(GroupTerm::direct(by_size(2)), GroupTerm::cyc(2));
            let mut fs = vec![swapped];
            fs.extend(by_size(1));
            Ok(product_term(fs))
        }
        SmallGroup::Klein4 => {
            let elements = h.elements(4).expect("four elements");
            let mut involutions: Vec<Permutation> =
                elements.into_iter().filter(|p| p.iter().enumerate().any(|(i, &x)| i != x)).collect();
            involutions.sort();
            let mut size_two: BTreeMap<usize, Vec<GroupTerm>> = BTreeMap::new();
            for (size, rep, term) in &orbits {
                if *size == 2 {
                    let kind = involutions.iter().position(|p| p[*rep] == *rep).expect("an involution fixes it");
                    size_two.entry(kind).or_default().push(term.clone());
                }
            }
            let mut factors = vec![(GroupTerm::direct(by_size(4)), 4)];
            factors.extend(size_two.into_values().map(|ts| (GroupTerm::direct(ts), 2)));
            let mut fs = vec![GroupTerm::semidirect(factors, GroupTerm::klein())];
            fs.extend(by_size(1));
            Ok(product_term(fs))
        }
        SmallGroup::Cyclic(k) if is_center && only_sizes(&[k as usize]) => {
            Ok(GroupTerm::wreath(GroupTerm::direct(by_size(k as usize)), GroupTerm::cyc(k)).normalize())
        }
        SmallGroup::Dihedral(k) if is_center && only_sizes(&[k as usize, 2 * k as usize]) => {
            let g1 = GroupTerm::direct(by_size(k as usize));
            let g2 = GroupTerm::direct(by_size(2 * k as usize));
            Ok(GroupTerm::semidirect(vec![(g1, k), (g2, 2 * k)], GroupTerm::dih(k)).normalize())
        }
        _ => Err(outside()),
    }
}

/// `Aut(g)` of a connected circle graph as a term, using the default oracle
/// cap for prime nodes.
pub fn circle_group(g: &Graph) -> Result<GroupTerm, CircleError> {
    circle_group_with_cap(g, DEFAULT_CAP)
}

pub fn circle_group_with_cap(g: &Graph, cap: usize) -> Result<GroupTerm, CircleError> {
    let tree = SplitTree::build(g)?;
    StabilizerAnalysis::new(&tree, cap).whole_group()
}

/// Sanity gate for prime nodes: the group is trivial, cyclic, dihedral or
/// `Z2^2`, and every vertex stabilizer is an elementary abelian 2-group of
/// order at most 4.
pub fn validate_circle_prime_node(node: &Graph) -> Result<bool, CircleError> {
    let h = automorphism_group_with_cap(node, node.n().max(DEFAULT_CAP))?;
    let shape_ok = matches!(
        h.classify(),
        SmallGroup::Trivial | SmallGroup::Cyclic(_) | SmallGroup::Dihedral(_) | SmallGroup::Klein4
    );
    let stabilizers_ok = (0..node.n()).all(|v| {
        let s = h.point_stabilizer(v);
        s.order_u64().is_some_and(|o| o <= 4)
            && s.elements(4).is_some_and(|es| es.iter().all(|e| perm_oracle::perm::element_order(e) <= 2))
    });
    Ok(shape_ok && stabilizers_ok)
}
