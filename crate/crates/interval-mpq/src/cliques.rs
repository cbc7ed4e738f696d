use graph_core::Graph;

use crate::IntervalError;

/// Maximal cliques with one ordering in which every vertex's cliques are consecutive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOrdering {
    pub cliques: Vec<Vec<usize>>,
    pub order: Vec<usize>,
}

/// Maximum cardinality search; the reverse of the visit order is a perfect
/// elimination ordering exactly when `g` is chordal.
fn mcs_elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !done[v]).max_by_key(|&v| (weight[v], std::cmp::Reverse(v))).unwrap();
        done[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    visit
}

/// Maximal cliques of a chordal graph, each sorted, listed in sorted order;
/// `None` if the graph has a chordless cycle.
pub fn chordal_maximal_cliques(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let peo = mcs_elimination_order(g);
    let mut rank = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        rank[v] = i;
    }
    let mut candidates = Vec::with_capacity(n);
    for &v in &peo {
        let mut later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| rank[u] > rank[v]).collect();
        if let Some(&first) = later.iter().min_by_key(|&&u| rank[u]) {
            if later.iter().any(|&u| u != first && !g.has_edge(u, first)) {
                return None;
            }
        }
        later.push(v);
        later.sort_unstable();
        candidates.push(later);
    }
    let mut cliques: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d.len() > c.len() && c.iter().all(|x| d.binary_search(x).is_ok())))
        .cloned()
        .collect();
    cliques.sort();
    cliques.dedup();
    Some(cliques)
}

/// True iff each vertex's cliques form one run in `order`.
pub fn is_consecutive(n: usize, cliques: &[Vec<usize>], order: &[usize]) -> bool {
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut count = vec![0usize; n];
    for (pos, &c) in order.iter().enumerate() {
        for &v in &cliques[c] {
            first[v] = first[v].min(pos);
            last[v] = pos;
            count[v] += 1;
        }
    }
    (0..n).all(|v| count[v] == 0 || last[v] - first[v] + 1 == count[v])
}

/// Recognizes interval graphs: maximal cliques plus a consecutive ordering.
pub fn maximal_cliques_interval(g: &Graph) -> Result<CliqueOrdering, IntervalError> {
    let tree = crate::build_mpq(g)?;
    Ok(CliqueOrdering { cliques: tree.cliques().to_vec(), order: tree.frontier() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_of_four_is_not_chordal() {
        assert!(chordal_maximal_cliques(&Graph::cycle(4)).is_none());
        assert!(chordal_maximal_cliques(&Graph::cycle(5)).is_none());
    }

    #[test]
    fn claw_and_complete() {
        let claw = chordal_maximal_cliques(&Graph::star(3)).unwrap();
        assert_eq!(claw, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        assert_eq!(chordal_maximal_cliques(&Graph::complete(4)).unwrap(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn consecutive_check() {
        let cl = vec![vec![0, 1], vec![1, 2], vec![2, 3]];
        assert!(is_consecutive(4, &cl, &[0, 1, 2]));
        assert!(!is_consecutive(4, &cl, &[1, 0, 2]));
        assert!(!is_consecutive(4, &cl, &[0, 2, 1]));
    }
}
