use graph_core::Graph;
use group_expr::GroupTerm;
use num_bigint::BigUint;
use perm_oracle::automorphism_group_with_cap;
use serde::Serialize;

use crate::mpq::{build_mpq, MpqNode, MpqTree};
use crate::IntervalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitClass {
    UnitInterval,
    IntervalNotUnit,
    NotInterval,
}

fn has_claw(g: &Graph) -> bool {
    (0..g.n()).any(|c| {
        let nb = g.neighbors(c);
        nb.iter().enumerate().any(|(i, &a)| {
            nb[i + 1..].iter().enumerate().any(|(j, &b)| {
                !g.has_edge(a, b) && nb[i + 1 + j + 1..].iter().any(|&d| !g.has_edge(a, d) && !g.has_edge(b, d))
            })
        })
    })
}

/// Shape every unit interval MPQ-tree has: one leaf, one Q-node over leaves,
/// or a P-node over exactly two leaves.
pub(crate) fn has_unit_shape(t: &MpqTree) -> bool {
    match t.root() {
        MpqNode::Leaf { .. } => true,
        MpqNode::Q { children, .. } => children.iter().all(MpqNode::is_leaf),
        MpqNode::P { children, .. } => children.len() == 2 && children.iter().all(MpqNode::is_leaf),
    }
}

/// Unit interval graphs are the claw-free interval graphs. A flat MPQ-tree
/// is necessary but not sufficient, so the claw test decides.
pub fn classify_unit_interval(g: &Graph) -> UnitClass {
    match build_mpq(g) {
        Err(_) => UnitClass::NotInterval,
        Ok(_) if has_claw(g) => UnitClass::IntervalNotUnit,
        Ok(t) => {
            debug_assert!(!g.is_connected() || has_unit_shape(&t));
            UnitClass::UnitInterval
        }
    }
}

/// `G1` or `(G1 ≀ Z2) × G2` with `G1` a product of symmetric groups and
/// `G2` a symmetric group.
pub fn caterpillar_group_shape(t: &GroupTerm) -> bool {
    let factors: Vec<&GroupTerm> = match t {
        GroupTerm::Direct { fs } => fs.iter().collect(),
        other => vec![other],
    };
    let is_reflection = |top: &GroupTerm| matches!(top, GroupTerm::Cyc { k: 2 } | GroupTerm::Sym { k: 2 });
    let wreaths: Vec<&&GroupTerm> =
        factors.iter().filter(|f| matches!(f, GroupTerm::Wreath { .. })).collect();
    match wreaths[..] {
        [] => factors.iter().all(|f| f.is_sym_like()),
        [GroupTerm::Wreath { base, top }] => {
            base.is_sym_product()
                && is_reflection(top)
                && factors.len() <= 2
                && factors.iter().filter(|f| !matches!(f, GroupTerm::Wreath { .. })).all(|f| f.is_sym_like())
        }
        _ => false,
    }
}

/// Validation hook for prime interval graphs: at most two clique orderings
/// and at most two automorphisms.
pub fn is_prime_interval_check(g: &Graph) -> Result<bool, IntervalError> {
    let t = build_mpq(g)?;
    let orderings = t.count_consecutive_orderings();
    let aut = automorphism_group_with_cap(g, g.n())?.order();
    let two = BigUint::from(2u8);
    Ok(orderings <= two && aut <= two)
}
