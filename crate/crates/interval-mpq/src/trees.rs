use std::collections::{BTreeMap, HashMap};

use graph_core::Graph;
use group_expr::{jordan_assemble, GroupTerm};

use crate::IntervalError;

/// The one or two central vertices, found by peeling leaves.
pub fn tree_centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in t.neighbors(v) {
                if deg[u] > 1 {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum TreeKey {
    Rooted(Vec<u32>),
    Central(u32),
    Bicentral(u32, u32),
}

#[derive(Default)]
struct TreeCanon {
    table: HashMap<TreeKey, u32>,
}

impl TreeCanon {
    fn intern(&mut self, key: TreeKey) -> u32 {
        let next = self.table.len() as u32;
        *self.table.entry(key).or_insert(next)
    }

    /// Code and automorphism group of the subtree below `v`.
    fn rooted(&mut self, t: &Graph, v: usize, parent: Option<usize>) -> (u32, GroupTerm) {
        let mut classes: BTreeMap<u32, (GroupTerm, u64)> = BTreeMap::new();
        let mut codes = Vec::new();
        for &c in t.neighbors(v) {
            if Some(c) == parent {
                continue;
            }
            let (code, group) = self.rooted(t, c, Some(v));
            codes.push(code);
            classes.entry(code).or_insert((group, 0)).1 += 1;
        }
        codes.sort_unstable();
        let group = jordan_assemble(&classes.into_values().collect::<Vec<_>>());
        (self.intern(TreeKey::Rooted(codes)), group)
    }

    /// Unrooted code and group of a tree, rooted at its center.
    fn unrooted(&mut self, t: &Graph) -> (u32, GroupTerm) {
        match tree_centers(t)[..] {
            [c] => {
                let (code, group) = self.rooted(t, c, None);
                (self.intern(TreeKey::Central(code)), group)
            }
            [a, b] => {
                let (ca, ga) = self.rooted(t, a, Some(b));
                let (cb, gb) = self.rooted(t, b, Some(a));
                let group = if ca == cb {
                    GroupTerm::wreath(ga, GroupTerm::sym(2)).normalize()
                } else {
                    GroupTerm::direct(vec![ga, gb]).normalize()
                };
                (self.intern(TreeKey::Bicentral(ca.min(cb), ca.max(cb))), group)
            }
            _ => unreachable!("a tree has one or two centers"),
        }
    }
}

/// `Aut(t)` of a tree as a term of the form closed under `×` and `≀ S_n`.
pub fn tree_group(t: &Graph) -> Result<GroupTerm, IntervalError> {
    if !t.is_tree() {
        return Err(IntervalError::NotATree);
    }
    Ok(TreeCanon::default().unrooted(t).1)
}

/// `Aut(f)` of a forest, assembled over isomorphism classes of components.
pub fn forest_group(f: &Graph) -> Result<GroupTerm, IntervalError> {
    if !f.is_forest() {
        return Err(IntervalError::NotATree);
    }
    let mut canon = TreeCanon::default();
    let mut classes: BTreeMap<u32, (GroupTerm, u64)> = BTreeMap::new();
    for comp in f.connected_components() {
        let (code, group) = canon.unrooted(&f.induced(&comp));
        classes.entry(code).or_insert((group, 0)).1 += 1;
    }
    Ok(jordan_assemble(&classes.into_values().collect::<Vec<_>>()))
}
