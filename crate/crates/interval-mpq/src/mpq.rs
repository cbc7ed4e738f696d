//! Modified PQ-trees, built top-down from the maximal cliques.
//!
//! At a node with clique set `C`, vertices in every clique of `C` form the
//! node's own section. The remaining vertices either split `C` into several
//! blocks (a P-node) or contain an overlap component covering `C`, whose atoms
//! are the ordered children of a Q-node.

use std::collections::VecDeque;
use std::fmt::Write as _;

use graph_core::Graph;
use num_bigint::BigUint;
use serde::Serialize;

use crate::cliques::{chordal_maximal_cliques, is_consecutive};
use crate::IntervalError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MpqNode {
    Leaf { clique: usize, section: Vec<usize> },
    P { section: Vec<usize>, children: Vec<MpqNode> },
    /// `sections[i]` is the section shared with `children[i]`.
    Q { sections: Vec<Vec<usize>>, children: Vec<MpqNode> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MpqTree {
    n: usize,
    cliques: Vec<Vec<usize>>,
    root: MpqNode,
}

/// Union-find over `0..n` with path halving.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

struct Builder<'a> {
    /// Sorted clique ids containing each vertex.
    cliques_of: &'a [Vec<usize>],
}

fn overlaps(a: &[usize], b: &[usize]) -> bool {
    let common = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
    common > 0 && common < a.len() && common < b.len()
}

/// Orders the atoms of an overlap component. `sets` must be listed so that
/// each set overlaps an earlier one.
fn order_atoms(sets: &[Vec<usize>], universe: usize) -> Option<Vec<Vec<usize>>> {
    let mut blocks: Vec<Vec<usize>> = vec![sets[0].clone()];
    let mut covered = vec![false; universe];
    for &x in &sets[0] {
        covered[x] = true;
    }
    for s in &sets[1..] {
        let mut in_s = vec![false; universe];
        for &x in s {
            in_s[x] = true;
        }
        let fresh: Vec<usize> = s.iter().copied().filter(|&x| !covered[x]).collect();
        let hit: Vec<usize> = (0..blocks.len()).filter(|&k| blocks[k].iter().any(|&x| in_s[x])).collect();
        let (&i, &j) = (hit.first()?, hit.last()?);
        let full = |k: usize| blocks[k].iter().all(|&x| in_s[x]);
        if (i + 1..j).any(|k| !full(k)) {
            return None;
        }
        let split = |b: &Vec<usize>, inside_first: bool| -> Vec<Vec<usize>> {
            let (a, o): (Vec<usize>, Vec<usize>) = b.iter().partition(|&&x| in_s[x]);
            let parts = if inside_first { [a, o] } else { [o, a] };
            parts.into_iter().filter(|p| !p.is_empty()).collect()
        };
        let t = blocks.len();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(t + 2);
        if fresh.is_empty() {
            if i == j {
                return None;
            }
            next.extend(blocks[..i].iter().cloned());
            next.extend(split(&blocks[i], false));
            next.extend(blocks[i + 1..j].iter().cloned());
            next.extend(split(&blocks[j], true));
            next.extend(blocks[j + 1..].iter().cloned());
        } else {
            let right_ok = j == t - 1 && (i + 1..=j).all(full);
            let left_ok = i == 0 && (0..j).all(full);
            if right_ok {
                next.extend(blocks[..i].iter().cloned());
                next.extend(split(&blocks[i], false));
                next.extend(blocks[i + 1..].iter().cloned());
                next.push(fresh.clone());
            } else if left_ok {
                next.push(fresh.clone());
                next.extend(blocks[..j].iter().cloned());
                next.extend(split(&blocks[j], true));
                next.extend(blocks[j + 1..].iter().cloned());
            } else {
                return None;
            }
        }
        for &x in &fresh {
            covered[x] = true;
        }
        blocks = next;
    }
    Some(blocks)
}

impl Builder<'_> {
    /// `cs`: sorted clique ids of this subtree; `vs`: vertices whose cliques all lie in `cs`.
    fn build(&self, cs: &[usize], vs: &[usize]) -> Result<MpqNode, IntervalError> {
        if cs.len() == 1 {
            return Ok(MpqNode::Leaf { clique: cs[0], section: vs.to_vec() });
        }
        let local = |c: usize| cs.binary_search(&c).expect("clique inside subtree");
        let (universal, rest): (Vec<usize>, Vec<usize>) =
            vs.iter().partition(|&&v| self.cliques_of[v].len() == cs.len());

        let mut dsu = Dsu::new(cs.len());
        for &v in &rest {
            let s = &self.cliques_of[v];
            for w in s.windows(2) {
                dsu.union(local(w[0]), local(w[1]));
            }
        }
        let roots: Vec<usize> = (0..cs.len()).map(|i| dsu.find(i)).collect();
        let mut blocks: Vec<usize> = roots.clone();
        blocks.sort_unstable();
        blocks.dedup();

        if blocks.len() >= 2 {
            let mut children = Vec::with_capacity(blocks.len());
            for &b in &blocks {
                let sub: Vec<usize> = (0..cs.len()).filter(|&i| roots[i] == b).map(|i| cs[i]).collect();
                let sub_vs: Vec<usize> =
                    rest.iter().copied().filter(|&v| roots[local(self.cliques_of[v][0])] == b).collect();
                children.push(self.build(&sub, &sub_vs)?);
            }
            return Ok(MpqNode::P { section: universal, children });
        }

        // One block: an overlap component must cover every clique.
        let mut sets: Vec<Vec<usize>> = rest
            .iter()
            .filter(|&&v| self.cliques_of[v].len() >= 2)
            .map(|&v| self.cliques_of[v].iter().map(|&c| local(c)).collect())
            .collect();
        sets.sort();
        sets.dedup();
        let order = covering_component(&sets, cs.len()).ok_or(IntervalError::NotInterval)?;
        let comp: Vec<Vec<usize>> = order.iter().map(|&k| sets[k].clone()).collect();
        let atoms = order_atoms(&comp, cs.len()).ok_or(IntervalError::NotInterval)?;
        let m = atoms.len();
        let mut atom_of = vec![0; cs.len()];
        for (a, atom) in atoms.iter().enumerate() {
            for &x in atom {
                atom_of[x] = a;
            }
        }

        let mut inner: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut spans: Vec<(usize, usize, usize)> = universal.iter().map(|&v| (v, 0, m - 1)).collect();
        for &v in &rest {
            let touched: Vec<usize> = self.cliques_of[v].iter().map(|&c| atom_of[local(c)]).collect();
            let (l, r) = (*touched.iter().min().unwrap(), *touched.iter().max().unwrap());
            if l == r {
                inner[l].push(v);
            } else {
                let size: usize = atoms[l..=r].iter().map(Vec::len).sum();
                if size != touched.len() {
                    return Err(IntervalError::NotInterval);
                }
                spans.push((v, l, r));
            }
        }
        let mut sections = vec![Vec::new(); m];
        for &(v, l, r) in &spans {
            for sec in &mut sections[l..=r] {
                sec.push(v);
            }
        }
        for sec in &mut sections {
            sec.sort_unstable();
        }
        let mut children = Vec::with_capacity(m);
        for (a, atom) in atoms.iter().enumerate() {
            let mut sub: Vec<usize> = atom.iter().map(|&x| cs[x]).collect();
            sub.sort_unstable();
            children.push(self.build(&sub, &inner[a])?);
        }
        Ok(MpqNode::Q { sections, children })
    }
}

/// Indices of the overlap component whose union is everything, in BFS order.
fn covering_component(sets: &[Vec<usize>], universe: usize) -> Option<Vec<usize>> {
    let k = sets.len();
    let mut seen = vec![false; k];
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for b in 0..k {
                if !seen[b] && overlaps(&sets[a], &sets[b]) {
                    seen[b] = true;
                    order.push(b);
                    queue.push_back(b);
                }
            }
        }
        let mut union = vec![false; universe];
        for &i in &order {
            for &x in &sets[i] {
                union[x] = true;
            }
        }
        if order.len() >= 2 && union.iter().all(|&b| b) {
            return Some(order);
        }
    }
    None
}

/// Builds the MPQ-tree of `g`, or reports that `g` is not an interval graph.
/// A disconnected graph gets a root P-node with an empty section.
pub fn build_mpq(g: &Graph) -> Result<MpqTree, IntervalError> {
    let n = g.n();
    if n == 0 {
        return Err(IntervalError::Empty);
    }
    let cliques = chordal_maximal_cliques(g).ok_or(IntervalError::NotInterval)?;
    let mut cliques_of = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            cliques_of[v].push(i);
        }
    }
    let b = Builder { cliques_of: &cliques_of };
    let comps = g.connected_components();
    let root = if comps.len() == 1 {
        b.build(&(0..cliques.len()).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>())?
    } else {
        let mut children = Vec::with_capacity(comps.len());
        for comp in &comps {
            let mut cs: Vec<usize> = comp.iter().flat_map(|&v| cliques_of[v].iter().copied()).collect();
            cs.sort_unstable();
            cs.dedup();
            children.push(b.build(&cs, comp)?);
        }
        MpqNode::P { section: Vec::new(), children }
    };
    let tree = MpqTree { n, cliques, root };
    if !is_consecutive(n, &tree.cliques, &tree.frontier()) {
        return Err(IntervalError::NotInterval);
    }
    Ok(tree)
}

impl MpqNode {
    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            MpqNode::Leaf { clique, .. } => out.push(*clique),
            MpqNode::P { children, .. } | MpqNode::Q { children, .. } => {
                for c in children {
                    c.leaves(out);
                }
            }
        }
    }

    pub fn children(&self) -> &[MpqNode] {
        match self {
            MpqNode::Leaf { .. } => &[],
            MpqNode::P { children, .. } | MpqNode::Q { children, .. } => children,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, MpqNode::Leaf { .. })
    }

    /// Each vertex of a Q-node section with its span `(l, r)` over the children.
    pub fn q_spans(&self) -> Vec<(usize, usize, usize)> {
        let MpqNode::Q { sections, .. } = self else { return Vec::new() };
        let mut first: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
        for (i, sec) in sections.iter().enumerate() {
            for &v in sec {
                first.entry(v).and_modify(|e| e.1 = i).or_insert((i, i));
            }
        }
        first.into_iter().map(|(v, (l, r))| (v, l, r)).collect()
    }

    fn count_orderings(&self) -> BigUint {
        let own = match self {
            MpqNode::Leaf { .. } => BigUint::from(1u8),
            MpqNode::P { children, .. } => (2..=children.len() as u64).product::<u64>().into(),
            MpqNode::Q { .. } => BigUint::from(2u8),
        };
        self.children().iter().fold(own, |acc, c| acc * c.count_orderings())
    }

    fn frontiers(&self) -> Vec<Vec<usize>> {
        match self {
            MpqNode::Leaf { clique, .. } => vec![vec![*clique]],
            MpqNode::P { children, .. } => {
                let per: Vec<Vec<Vec<usize>>> = children.iter().map(MpqNode::frontiers).collect();
                let mut out = Vec::new();
                for perm in permutations(children.len()) {
                    let ordered: Vec<&Vec<Vec<usize>>> = perm.iter().map(|&i| &per[i]).collect();
                    out.extend(concat_products(&ordered));
                }
                out
            }
            MpqNode::Q { children, .. } => {
                let per: Vec<Vec<Vec<usize>>> = children.iter().map(MpqNode::frontiers).collect();
                let fwd: Vec<&Vec<Vec<usize>>> = per.iter().collect();
                let rev: Vec<&Vec<Vec<usize>>> = per.iter().rev().collect();
                let mut out = concat_products(&fwd);
                out.extend(concat_products(&rev));
                out
            }
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn concat_products(parts: &[&Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for options in parts {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for a in &acc {
            for o in options.iter() {
                let mut x = a.clone();
                x.extend(o);
                next.push(x);
            }
        }
        acc = next;
    }
    acc
}

impl MpqTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn root(&self) -> &MpqNode {
        &self.root
    }

    /// Left-to-right leaf cliques.
    pub fn frontier(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cliques.len());
        self.root.leaves(&mut out);
        out
    }

    /// Number of equivalent trees: `k!` per P-node with `k` children, 2 per Q-node.
    pub fn count_consecutive_orderings(&self) -> BigUint {
        self.root.count_orderings()
    }

    /// Frontiers of all equivalent trees. Exponential; meant for small trees.
    pub fn all_frontiers(&self) -> Vec<Vec<usize>> {
        self.root.frontiers()
    }

    /// DOT rendering: P-nodes as circles, Q-nodes as boxes, sections as labels.
    pub fn to_dot(&self) -> String {
        fn fmt_set(s: &[usize]) -> String {
            let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", items.join(","))
        }
        fn walk(node: &MpqNode, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            match node {
                MpqNode::Leaf { clique, section } => {
                    let _ = writeln!(out, "  n{id} [shape=plaintext, label=\"C{clique} {}\"];", fmt_set(section));
                }
                MpqNode::P { section, .. } => {
                    let _ = writeln!(out, "  n{id} [shape=circle, label=\"{}\"];", fmt_set(section));
                }
                MpqNode::Q { sections, .. } => {
                    let secs: Vec<String> = sections.iter().map(|s| fmt_set(s)).collect();
                    let _ = writeln!(out, "  n{id} [shape=box, label=\"{}\"];", secs.join(" | "));
                }
            }
            for c in node.children() {
                let cid = walk(c, next, out);
                let _ = writeln!(out, "  n{id} -> n{cid};");
            }
            id
        }
        let mut out = String::from("digraph MPQ {\n");
        walk(&self.root, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }
}
