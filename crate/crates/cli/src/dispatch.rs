use std::collections::BTreeMap;

use circle_split::{circle_group_with_cap, SplitTree};
use comparability_modular::{bipperm_shape_check, is_permutation_graph, modular_tree_group_with_cap, ModularTree};
use graph_core::Graph;
use group_expr::{jordan_assemble, GroupTerm};
use interval_mpq::{build_mpq, classify_unit_interval, forest_group, interval_group, UnitClass};
use perm_oracle::IsoRegistry;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Auto,
    Interval,
    UnitInterval,
    Circle,
    Perm,
    Bipperm,
    Tree,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::Auto => "auto",
            Class::Interval => "interval",
            Class::UnitInterval => "unit-interval",
            Class::Circle => "circle",
            Class::Perm => "perm",
            Class::Bipperm => "bipperm",
            Class::Tree => "tree",
        }
    }
}

/// A class-specific result. `class` is never `Auto`.
#[derive(Debug, Clone)]
pub struct Computed {
    pub class: Class,
    pub term: GroupTerm,
    pub dot: Option<String>,
}

/// `Aut(g)` assembled from the components of `g`: isomorphic components
/// are grouped by the oracle and combined by wreath products.
pub fn assemble_components(
    g: &Graph,
    cap: usize,
    mut per_component: impl FnMut(&Graph) -> Result<GroupTerm, CliError>,
) -> Result<GroupTerm, CliError> {
    if g.is_connected() {
        return per_component(g);
    }
    let mut registry = IsoRegistry::new(cap);
    let mut classes: BTreeMap<usize, (GroupTerm, u64)> = BTreeMap::new();
    for comp in g.connected_components() {
        let h = g.induced(&comp);
        let class = registry.class_of(&h)?;
        if let Some(entry) = classes.get_mut(&class) {
            entry.1 += 1;
        } else {
            classes.insert(class, (per_component(&h)?, 1));
        }
    }
    Ok(jordan_assemble(&classes.into_values().collect::<Vec<_>>()))
}

fn require_nonempty(g: &Graph) -> Result<(), CliError> {
    if g.n() == 0 {
        return Err(CliError::Other("graph has no vertices".into()));
    }
    Ok(())
}

fn circle(g: &Graph, cap: usize, want_dot: bool) -> Result<Computed, CliError> {
    let term = assemble_components(g, cap, |h| Ok(circle_group_with_cap(h, cap)?))?;
    let dot = if want_dot {
        let mut out = String::new();
        for comp in g.connected_components() {
            out.push_str(&SplitTree::build(&g.induced(&comp))?.to_dot());
        }
        Some(out)
    } else {
        None
    };
    Ok(Computed { class: Class::Circle, term, dot })
}

fn perm(g: &Graph, cap: usize, want_dot: bool, class: Class) -> Result<Computed, CliError> {
    if !is_permutation_graph(g) {
        return Err(CliError::ClassMismatch("not a permutation graph".into()));
    }
    let term = modular_tree_group_with_cap(g, cap)?;
    let dot = if want_dot { Some(ModularTree::build(g)?.to_dot()) } else { None };
    Ok(Computed { class, term, dot })
}

fn interval(g: &Graph, want_dot: bool, class: Class) -> Result<Computed, CliError> {
    let term = interval_group(g)?;
    let dot = if want_dot { Some(build_mpq(g)?.to_dot()) } else { None };
    Ok(Computed { class, term, dot })
}

/// Runs the group computation for `class`. `Auto` tries interval, then
/// permutation; circle graphs must be declared.
pub fn compute(g: &Graph, class: Class, cap: usize, want_dot: bool) -> Result<Computed, CliError> {
    require_nonempty(g)?;
    match class {
        Class::Auto => {
            if build_mpq(g).is_ok() {
                interval(g, want_dot, Class::Interval)
            } else if is_permutation_graph(g) {
                perm(g, cap, want_dot, Class::Perm)
            } else {
                Err(CliError::ClassMismatch(
                    "neither an interval nor a permutation graph; declare --class circle for circle graphs".into(),
                ))
            }
        }
        Class::Interval => interval(g, want_dot, class),
        Class::UnitInterval => match classify_unit_interval(g) {
            UnitClass::UnitInterval => interval(g, want_dot, class),
            UnitClass::IntervalNotUnit => Err(CliError::ClassMismatch("interval graph, but not unit interval".into())),
            UnitClass::NotInterval => Err(CliError::ClassMismatch("not an interval graph".into())),
        },
        Class::Circle => circle(g, cap, want_dot),
        Class::Perm => perm(g, cap, want_dot, class),
        Class::Bipperm => {
            if g.bipartition().is_none() {
                return Err(CliError::ClassMismatch("not a bipartite graph".into()));
            }
            let c = perm(g, cap, want_dot, class)?;
            if g.is_connected() && !bipperm_shape_check(g, &c.term) {
                return Err(CliError::Other(format!("group {} has no bipartite permutation graph shape", c.term)));
            }
            Ok(c)
        }
        Class::Tree => {
            let term = forest_group(g)?;
            let dot = want_dot.then(|| graph_core::to_dot(g));
            Ok(Computed { class, term, dot })
        }
    }
}
