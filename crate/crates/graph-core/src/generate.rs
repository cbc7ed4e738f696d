//! Graph families and random generators used by tests, benches and the CLI corpus.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::Graph;

/// Intersection graph of closed intervals `[l, r]`.
pub fn interval_graph(intervals: &[(i64, i64)]) -> Graph {
    let n = intervals.len();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = intervals[u];
            let (c, d) = intervals[v];
            if a.max(c) <= b.min(d) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `n` random intervals with endpoints in `0..=2n`, lengths at most `max_len`.
pub fn random_intervals<R: Rng>(n: usize, max_len: i64, rng: &mut R) -> Vec<(i64, i64)> {
    let span = 2 * n as i64;
    (0..n)
        .map(|_| {
            let l = rng.gen_range(0..=span);
            let len = rng.gen_range(0..=max_len);
            (l, l + len)
        })
        .collect()
}

/// A connected interval graph on exactly `n` vertices, by rejection sampling.
pub fn random_connected_interval_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    loop {
        let max_len = rng.gen_range(1..=(2 * n as i64).max(1));
        let g = interval_graph(&random_intervals(n, max_len, rng));
        if g.is_connected() {
            return g;
        }
    }
}

/// Inversion graph of `perm`: `i < j` adjacent iff `perm[i] > perm[j]`.
pub fn permutation_graph(perm: &[usize]) -> Graph {
    let n = perm.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A permutation merged from two increasing runs. It has no decreasing
/// subsequence of length 3, so its inversion graph is bipartite.
pub fn random_321_avoiding<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let k = rng.gen_range(0..=n);
    let mut positions = rand::seq::index::sample(rng, n, k).into_vec();
    let mut values = rand::seq::index::sample(rng, n, k).into_vec();
    positions.sort_unstable();
    values.sort_unstable();
    let mut in_run = vec![false; n];
    let mut used = vec![false; n];
    let mut p = vec![usize::MAX; n];
    for (&i, &v) in positions.iter().zip(&values) {
        p[i] = v;
        in_run[i] = true;
        used[v] = true;
    }
    let mut rest = (0..n).filter(|&v| !used[v]);
    for i in 0..n {
        if !in_run[i] {
            p[i] = rest.next().expect("one value per free position");
        }
    }
    p
}

/// Circle graph of a double-occurrence word: chords cross iff their endpoints alternate.
pub fn circle_graph(word: &[usize]) -> Graph {
    let n = word.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut first = vec![usize::MAX; n];
    let mut second = vec![usize::MAX; n];
    for (i, &c) in word.iter().enumerate() {
        if first[c] == usize::MAX {
            first[c] = i;
        } else {
            second[c] = i;
        }
    }
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            let (a1, a2, b1, b2) = (first[a], second[a], first[b], second[b]);
            let crosses = (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2);
            if crosses {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// A uniformly shuffled word in which each of `k` chords occurs twice.
pub fn random_chord_word<R: Rng>(k: usize, rng: &mut R) -> Vec<usize> {
    let mut w: Vec<usize> = (0..k).flat_map(|c| [c, c]).collect();
    w.shuffle(rng);
    w
}

/// A random labelled tree on `n` vertices, each vertex attached to an earlier one
/// after a random relabelling.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let perm = random_permutation(n, rng);
    let mut g = Graph::new(n);
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        g.add_edge(perm[v], perm[parent]);
    }
    g
}

/// A random forest: a random tree with each edge dropped with probability `p_drop`.
pub fn random_forest<R: Rng>(n: usize, p_drop: f64, rng: &mut R) -> Graph {
    let t = random_tree(n, rng);
    let mut g = Graph::new(n);
    for (u, v) in t.edges() {
        if !rng.gen_bool(p_drop) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    loop {
        let g = random_graph(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Disjoint union of all graphs, in order.
pub fn disjoint_union_all(parts: &[Graph]) -> Graph {
    parts.iter().fold(Graph::new(0), |acc, g| acc.disjoint_union(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn permutation_graph_of_reversal_is_complete() {
        assert!(permutation_graph(&[3, 2, 1, 0]).is_complete());
        assert!(permutation_graph(&[0, 1, 2]).is_edgeless());
        assert_eq!(permutation_graph(&[1, 3, 0, 2]), Graph::from_edges(4, &[(0, 2), (1, 2), (1, 3)]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 0..12 {
            let p = random_321_avoiding(n, &mut rng);
            let mut sorted = p.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..n).collect::<Vec<_>>());
            assert!(permutation_graph(&p).bipartition().is_some());
        }
    }

    #[test]
    fn five_cycle_as_chord_diagram() {
        // Chords i and i+1 cross; others nest or sit apart.
        let w = [0, 4, 1, 0, 2, 1, 3, 2, 4, 3];
        let g = circle_graph(&w);
        assert_eq!(g.edge_count(), 5);
        assert!(g.connected_components().len() == 1 && (0..5).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn random_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..12 {
            assert!(random_tree(n, &mut rng).is_tree());
            assert!(random_forest(n, 0.3, &mut rng).is_forest());
            assert!(random_connected_interval_graph(n, &mut rng).is_connected());
        }
    }
}
