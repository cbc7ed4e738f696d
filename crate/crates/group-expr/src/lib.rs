//! Symbolic group terms built from symmetric, cyclic and dihedral groups by
//! direct, wreath and orbit-assigned semidirect products.
//!
//! Terms carry no permutation representation; they are compared syntactically
//! after [`GroupTerm::normalize`], and [`GroupTerm::order`] is exact.

mod display;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "t", rename_all = "lowercase")]
pub enum GroupTerm {
    Trivial,
    Sym { k: u64 },
    Cyc { k: u64 },
    Dih { k: u64 },
    Direct { fs: Vec<GroupTerm> },
    Wreath { base: Box<GroupTerm>, top: Box<GroupTerm> },
    Semidirect { orbits: Vec<OrbitFactor>, top: Box<GroupTerm> },
}

/// One factor per orbit of the top group, raised to the orbit size `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitFactor {
    pub f: GroupTerm,
    pub m: u64,
}

fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::from(1u8), |acc, i| acc * i)
}

impl GroupTerm {
    pub fn sym(k: u64) -> Self {
        GroupTerm::Sym { k }
    }

    pub fn cyc(k: u64) -> Self {
        GroupTerm::Cyc { k }
    }

    pub fn dih(k: u64) -> Self {
        GroupTerm::Dih { k }
    }

    /// `Z2 × Z2`, in its stored form.
    pub fn klein() -> Self {
        GroupTerm::Direct { fs: vec![GroupTerm::cyc(2), GroupTerm::cyc(2)] }
    }

    pub fn direct(fs: Vec<GroupTerm>) -> Self {
        GroupTerm::Direct { fs }
    }

    pub fn wreath(base: GroupTerm, top: GroupTerm) -> Self {
        GroupTerm::Wreath { base: Box::new(base), top: Box::new(top) }
    }

    pub fn semidirect(orbits: Vec<(GroupTerm, u64)>, top: GroupTerm) -> Self {
        GroupTerm::Semidirect {
            orbits: orbits.into_iter().map(|(f, m)| OrbitFactor { f, m }).collect(),
            top: Box::new(top),
        }
    }

    /// Number of points the top of a wreath product permutes.
    fn wreath_degree(top: &GroupTerm) -> u64 {
        match top {
            GroupTerm::Trivial => 1,
            GroupTerm::Sym { k } | GroupTerm::Cyc { k } | GroupTerm::Dih { k } => *k,
            other => panic!("unsupported wreath top {other:?}"),
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            GroupTerm::Trivial => BigUint::from(1u8),
            GroupTerm::Sym { k } => factorial(*k),
            GroupTerm::Cyc { k } => BigUint::from(*k),
            GroupTerm::Dih { k } => BigUint::from(2 * *k),
            GroupTerm::Direct { fs } => fs.iter().map(GroupTerm::order).product(),
            GroupTerm::Wreath { base, top } => {
                base.order().pow(Self::wreath_degree(top) as u32) * top.order()
            }
            GroupTerm::Semidirect { orbits, top } => {
                orbits.iter().map(|o| o.f.order().pow(o.m as u32)).product::<BigUint>() * top.order()
            }
        }
    }

    /// Canonical form. Order-preserving and idempotent; `Sym 2` and `Cyc 2`
    /// stay distinct, and wreath tops keep their degree.
    pub fn normalize(&self) -> GroupTerm {
        match self {
            GroupTerm::Trivial => GroupTerm::Trivial,
            GroupTerm::Sym { k } | GroupTerm::Cyc { k } if *k <= 1 => GroupTerm::Trivial,
            GroupTerm::Dih { k: 0 } => GroupTerm::Trivial,
            GroupTerm::Dih { k: 1 } => GroupTerm::cyc(2),
            GroupTerm::Dih { k: 2 } => GroupTerm::klein(),
            GroupTerm::Sym { .. } | GroupTerm::Cyc { .. } | GroupTerm::Dih { .. } => self.clone(),
            GroupTerm::Direct { fs } => {
                let mut flat = Vec::new();
                for f in fs {
                    match f.normalize() {
                        GroupTerm::Trivial => {}
                        GroupTerm::Direct { fs } => flat.extend(fs),
                        t => flat.push(t),
                    }
                }
                flat.sort();
                match flat.len() {
                    0 => GroupTerm::Trivial,
                    1 => flat.pop().unwrap(),
                    _ => GroupTerm::Direct { fs: flat },
                }
            }
            GroupTerm::Wreath { base, top } => {
                let top = match top.as_ref() {
                    GroupTerm::Dih { .. } => (**top).clone(),
                    t => t.normalize(),
                };
                let base = base.normalize();
                if Self::wreath_degree(&top) <= 1 {
                    return GroupTerm::direct(vec![base, top]).normalize();
                }
                if base == GroupTerm::Trivial {
                    return top.normalize();
                }
                GroupTerm::wreath(base, top)
            }
            GroupTerm::Semidirect { orbits, top } => {
                let top = top.normalize();
                let mut kept: Vec<OrbitFactor> = orbits
                    .iter()
                    .map(|o| OrbitFactor { f: o.f.normalize(), m: o.m })
                    .filter(|o| o.f != GroupTerm::Trivial && o.m > 0)
                    .collect();
                if kept.is_empty() {
                    return top;
                }
                if top == GroupTerm::Trivial {
                    let fs = kept.into_iter().flat_map(|o| std::iter::repeat_n(o.f, o.m as usize)).collect();
                    return GroupTerm::Direct { fs }.normalize();
                }
                kept.sort_by(|a, b| b.m.cmp(&a.m).then_with(|| a.f.cmp(&b.f)));
                GroupTerm::Semidirect { orbits: kept, top: Box::new(top) }
            }
        }
    }

    /// `Sym k`, `Cyc 2` or trivial: a full symmetric group as an abstract group.
    pub fn is_sym_like(&self) -> bool {
        matches!(self, GroupTerm::Trivial | GroupTerm::Sym { .. } | GroupTerm::Cyc { k: 0..=2 })
    }

    /// A direct product of symmetric groups (possibly empty or a single one).
    pub fn is_sym_product(&self) -> bool {
        match self {
            GroupTerm::Direct { fs } => fs.iter().all(GroupTerm::is_sym_like),
            t => t.is_sym_like(),
        }
    }

    /// Membership in the closure of `{1}` under direct products and `G ≀ S_n`.
    pub fn in_tree_class(&self) -> bool {
        match self {
            GroupTerm::Direct { fs } => fs.iter().all(GroupTerm::in_tree_class),
            GroupTerm::Wreath { base, top } => {
                base.in_tree_class() && matches!(**top, GroupTerm::Sym { .. } | GroupTerm::Cyc { k: 0..=2 })
            }
            t => t.is_sym_like(),
        }
    }

    /// Every orbit size of a semidirect product divides the order of its top.
    pub fn orbit_sizes_consistent(&self) -> bool {
        match self {
            GroupTerm::Semidirect { orbits, top } => {
                let o = top.order();
                orbits.iter().all(|x| x.m >= 1 && (&o % x.m) == BigUint::from(0u8) && x.f.orbit_sizes_consistent())
                    && top.orbit_sizes_consistent()
            }
            GroupTerm::Direct { fs } => fs.iter().all(GroupTerm::orbit_sizes_consistent),
            GroupTerm::Wreath { base, top } => base.orbit_sizes_consistent() && top.orbit_sizes_consistent(),
            _ => true,
        }
    }
}

/// `Aut` of a disjoint union from its connected parts: each class of `count`
/// isomorphic components contributes `term ≀ S_count`.
pub fn jordan_assemble(classes: &[(GroupTerm, u64)]) -> GroupTerm {
    let fs = classes
        .iter()
        .map(|(t, c)| {
            assert!(*c >= 1, "copy count must be positive");
            if *c == 1 {
                t.clone()
            } else {
                GroupTerm::wreath(t.clone(), GroupTerm::sym(*c))
            }
        })
        .collect();
    GroupTerm::direct(fs).normalize()
}
