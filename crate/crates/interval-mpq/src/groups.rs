use std::collections::{BTreeMap, HashMap};

use graph_core::Graph;
use group_expr::{jordan_assemble, GroupTerm};
use serde::Serialize;

use crate::mpq::{build_mpq, MpqNode, MpqTree};
use crate::IntervalError;

/// `full` is `kernel ⋊ tree_group`; the kernel permutes twins only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MpqAutGroupData {
    pub kernel: GroupTerm,
    #[serde(rename = "treeGroup")]
    pub tree_group: GroupTerm,
    pub full: GroupTerm,
}

/// Structural key of a subtree, ignoring vertex labels. Q-keys are taken in
/// the lesser of the two orientations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum CodeKey {
    Leaf(usize),
    P(usize, Vec<u32>),
    Q(Vec<u32>, Vec<(usize, usize, usize)>),
}

pub(crate) struct NodeInfo {
    pub code: u32,
    pub full: GroupTerm,
    pub tree: GroupTerm,
    pub twin_classes: Vec<usize>,
}

#[derive(Default)]
pub(crate) struct Canon {
    table: HashMap<CodeKey, u32>,
}

/// Span classes `(l, r, count)` of a Q-node, sorted.
pub(crate) fn span_classes(node: &MpqNode) -> Vec<(usize, usize, usize)> {
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (_, l, r) in node.q_spans() {
        *counts.entry((l, r)).or_default() += 1;
    }
    counts.into_iter().map(|((l, r), c)| (l, r, c)).collect()
}

fn syms(sizes: impl IntoIterator<Item = usize>) -> Vec<GroupTerm> {
    sizes.into_iter().map(|s| GroupTerm::sym(s as u64)).collect()
}

impl Canon {
    fn intern(&mut self, key: CodeKey) -> u32 {
        let next = self.table.len() as u32;
        *self.table.entry(key).or_insert(next)
    }

    pub fn analyze(&mut self, node: &MpqNode) -> NodeInfo {
        match node {
            MpqNode::Leaf { section, .. } => NodeInfo {
                code: self.intern(CodeKey::Leaf(section.len())),
                full: GroupTerm::sym(section.len() as u64).normalize(),
                tree: GroupTerm::Trivial,
                twin_classes: vec![section.len()],
            },
            MpqNode::P { section, children } => {
                let infos: Vec<NodeInfo> = children.iter().map(|c| self.analyze(c)).collect();
                let mut by_code: BTreeMap<u32, (&NodeInfo, u64)> = BTreeMap::new();
                for info in &infos {
                    by_code.entry(info.code).or_insert((info, 0)).1 += 1;
                }
                let full_classes: Vec<(GroupTerm, u64)> = by_code.values().map(|(i, c)| (i.full.clone(), *c)).collect();
                let tree_classes: Vec<(GroupTerm, u64)> = by_code.values().map(|(i, c)| (i.tree.clone(), *c)).collect();
                let mut codes: Vec<u32> = infos.iter().map(|i| i.code).collect();
                codes.sort_unstable();
                let mut twin_classes = vec![section.len()];
                twin_classes.extend(infos.iter().flat_map(|i| i.twin_classes.iter().copied()));
                NodeInfo {
                    code: self.intern(CodeKey::P(section.len(), codes)),
                    full: GroupTerm::direct(vec![jordan_assemble(&full_classes), GroupTerm::sym(section.len() as u64)])
                        .normalize(),
                    tree: jordan_assemble(&tree_classes),
                    twin_classes,
                }
            }
            MpqNode::Q { children, .. } => {
                let infos: Vec<NodeInfo> = children.iter().map(|c| self.analyze(c)).collect();
                let m = infos.len();
                let classes = span_classes(node);
                let fwd_codes: Vec<u32> = infos.iter().map(|i| i.code).collect();
                let rev_codes: Vec<u32> = fwd_codes.iter().rev().copied().collect();
                let mut rev_classes: Vec<(usize, usize, usize)> =
                    classes.iter().map(|&(l, r, c)| (m - 1 - r, m - 1 - l, c)).collect();
                rev_classes.sort_unstable();
                let fwd = (fwd_codes, classes.clone());
                let rev = (rev_codes, rev_classes);
                let symmetric = fwd == rev;
                let (codes, cls) = fwd.min(rev);
                let code = self.intern(CodeKey::Q(codes, cls));

                let (full, tree) = if symmetric {
                    let left = 0..m / 2;
                    let middle = (m % 2 == 1).then_some(m / 2);
                    let mut g1: Vec<GroupTerm> = left.clone().map(|i| infos[i].full.clone()).collect();
                    g1.extend(syms(classes.iter().filter(|&&(l, r, _)| l + r < m - 1).map(|&(_, _, c)| c)));
                    let mut g2: Vec<GroupTerm> = middle.iter().map(|&i| infos[i].full.clone()).collect();
                    g2.extend(syms(classes.iter().filter(|&&(l, r, _)| l + r == m - 1).map(|&(_, _, c)| c)));
                    let t1: Vec<GroupTerm> = left.map(|i| infos[i].tree.clone()).collect();
                    let t2: Vec<GroupTerm> = middle.iter().map(|&i| infos[i].tree.clone()).collect();
                    let assemble = |a: Vec<GroupTerm>, b: Vec<GroupTerm>| {
                        GroupTerm::direct(vec![
                            GroupTerm::wreath(GroupTerm::direct(a), GroupTerm::cyc(2)),
                            GroupTerm::direct(b),
                        ])
                        .normalize()
                    };
                    (assemble(g1, g2), assemble(t1, t2))
                } else {
                    let mut fs: Vec<GroupTerm> = infos.iter().map(|i| i.full.clone()).collect();
                    fs.extend(syms(classes.iter().map(|&(_, _, c)| c)));
                    let ts: Vec<GroupTerm> = infos.iter().map(|i| i.tree.clone()).collect();
                    (GroupTerm::direct(fs).normalize(), GroupTerm::direct(ts).normalize())
                };
                let mut twin_classes: Vec<usize> = classes.iter().map(|&(_, _, c)| c).collect();
                twin_classes.extend(infos.iter().flat_map(|i| i.twin_classes.iter().copied()));
                NodeInfo { code, full, tree, twin_classes }
            }
        }
    }
}

fn data_of(tree: &MpqTree) -> MpqAutGroupData {
    let info = Canon::default().analyze(tree.root());
    let kernel = GroupTerm::direct(syms(info.twin_classes.iter().copied())).normalize();
    MpqAutGroupData { kernel, tree_group: info.tree, full: info.full }
}

/// Kernel, tree group and full group of a connected interval graph.
pub fn mpq_automorphism_data(g: &Graph, m: &MpqTree) -> Result<MpqAutGroupData, IntervalError> {
    if !g.is_connected() {
        return Err(IntervalError::Disconnected);
    }
    Ok(data_of(m))
}

/// `Aut(g)` for any interval graph. Components are grouped by their
/// canonical MPQ codes, which identify components up to isomorphism.
pub fn interval_group(g: &Graph) -> Result<GroupTerm, IntervalError> {
    Ok(data_of(&build_mpq(g)?).full)
}
