use circle_split::*;
use graph_core::generate::{circle_graph, random_chord_word, random_connected_graph};
use graph_core::Graph;
use group_expr::GroupTerm;
use num_bigint::BigUint;
use perm_oracle::{automorphism_group_with_cap, isomorphic_graphs_with_cap};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle_order(g: &Graph) -> BigUint {
    automorphism_group_with_cap(g, g.n()).unwrap().order()
}

/// A connected circle graph from a random chord word, by rejection.
fn connected_chord_graph(seed: u64, max_chords: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = rng.gen_range(1..=max_chords);
        let g = circle_graph(&random_chord_word(k, &mut rng));
        if g.is_connected() {
            return g;
        }
    }
}

fn brute_force_has_split(g: &Graph) -> bool {
    let n = g.n();
    (1u32..(1 << (n - 1))).any(|mask| {
        let one: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let two: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        if one.len() < 2 || two.len() < 2 {
            return false;
        }
        let a: Vec<usize> = one.iter().copied().filter(|&u| two.iter().any(|&v| g.has_edge(u, v))).collect();
        let b: Vec<usize> = two.iter().copied().filter(|&v| one.iter().any(|&u| g.has_edge(u, v))).collect();
        a.iter().all(|&u| b.iter().all(|&v| g.has_edge(u, v)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn chord_diagrams_match_oracle(seed in any::<u64>()) {
        let g = connected_chord_graph(seed, 8);
        let term = circle_group_with_cap(&g, 64).unwrap();
        prop_assert_eq!(term.order(), oracle_order(&g));
        prop_assert!(term.orbit_sizes_consistent());
        let t = SplitTree::build(&g).unwrap();
        prop_assert_eq!(t.reconstruct().edges(), g.edges());
        prop_assert!(t.is_reduced());
        prop_assert!(t.nodes_are_prime_or_degenerate());
        for (i, node) in t.nodes().iter().enumerate() {
            if node.kind == NodeKind::Prime {
                prop_assert!(validate_circle_prime_node(&t.node_graph(i)).unwrap());
            }
        }
    }

    #[test]
    fn split_tree_has_the_graph_automorphisms(seed in any::<u64>()) {
        let g = connected_chord_graph(seed, 9);
        let t = SplitTree::build(&g).unwrap();
        let tagged = t.tagged_graph();
        prop_assert_eq!(oracle_order(&tagged), oracle_order(&g));
    }

    #[test]
    fn stabilizer_order_identity_at_every_marker(seed in any::<u64>()) {
        let g = connected_chord_graph(seed, 8);
        let t = SplitTree::build(&g).unwrap();
        let mut analysis = StabilizerAnalysis::new(&t, 64);
        let tagged = t.tagged_graph();
        for m in t.n()..t.total_vertices() {
            let (h, term) = analysis.node_stabilizer(m).unwrap();
            // Oracle on the tagged subtree below m, with m singled out.
            let sub = t.subtree_vertices(m);
            let mut part: Vec<usize> = sub.clone();
            let edges = t.tree_edges();
            for (i, &(a, b)) in edges.iter().enumerate() {
                if sub.contains(&a) && sub.contains(&b) {
                    part.push(t.total_vertices() + i);
                }
            }
            let mut sg = tagged.induced(&part);
            let root = part.iter().position(|&v| v == m).unwrap();
            sg.set_color(root, 9);
            prop_assert_eq!(term.order(), oracle_order(&sg));
            let node = t.node_of(m);
            let children: BigUint = t.nodes()[node]
                .vertices
                .iter()
                .filter(|&&v| v != m)
                .filter_map(|&v| t.mate(v))
                .map(|o| analysis.node_stabilizer(o).unwrap().1.order())
                .product();
            prop_assert_eq!(h.order() * children, term.order());
        }
    }

    #[test]
    fn split_search_agrees_with_exhaustion(n in 4usize..9, p in 0.2f64..0.8, seed in any::<u64>()) {
        let g = random_connected_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
        let found = find_split(&g).unwrap();
        prop_assert_eq!(found.is_some(), brute_force_has_split(&g));
        if let Some(s) = found {
            prop_assert!(s.is_valid_for(&g));
        }
    }

    #[test]
    fn arbitrary_graphs_are_exact_or_rejected(n in 2usize..10, p in 0.2f64..0.9, seed in any::<u64>()) {
        let g = random_connected_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
        let t = SplitTree::build(&g).unwrap();
        prop_assert_eq!(t.reconstruct().edges(), g.edges());
        prop_assert!(t.is_reduced());
        match circle_group_with_cap(&g, 64) {
            Ok(term) => prop_assert_eq!(term.order(), oracle_order(&g)),
            Err(e) => prop_assert!(matches!(e, CircleError::NodeGroupOutsideClass { .. }), "{e}"),
        }
    }
}

#[test]
fn cycles_give_dihedral_groups() {
    for n in 5..=9usize {
        let term = circle_group(&Graph::cycle(n)).unwrap();
        assert_eq!(term, GroupTerm::dih(n as u64));
        assert_eq!(term.order(), BigUint::from(2 * n));
    }
}

/// Every circular arrangement of `k` chords, one per perfect matching of
/// `2k` points on a circle.
fn all_chord_graphs(k: usize) -> Vec<Graph> {
    fn rec(word: &mut Vec<Option<usize>>, next: usize, out: &mut Vec<Graph>) {
        let Some(first) = word.iter().position(Option::is_none) else {
            out.push(circle_graph(&word.iter().map(|c| c.unwrap()).collect::<Vec<_>>()));
            return;
        };
        word[first] = Some(next);
        for j in first + 1..word.len() {
            if word[j].is_none() {
                word[j] = Some(next);
                rec(word, next + 1, out);
                word[j] = None;
            }
        }
        word[first] = None;
    }
    let mut out = Vec::new();
    rec(&mut vec![None; 2 * k], 0, &mut out);
    out
}

#[test]
fn wheel_is_certified_non_circle_and_flagged() {
    let mut w5 = Graph::cycle(5).disjoint_union(&Graph::new(1));
    for v in 0..5 {
        w5.add_edge(v, 5);
    }
    let chord_graphs = all_chord_graphs(6);
    assert_eq!(chord_graphs.len(), 10395);
    assert!(chord_graphs.iter().all(|c| isomorphic_graphs_with_cap(c, &w5, 6).unwrap().is_none()));
    assert_eq!(find_split(&w5).unwrap(), None);
    assert!(!validate_circle_prime_node(&w5).unwrap());
    assert!(matches!(circle_group(&w5), Err(CircleError::NodeGroupOutsideClass { .. })));
}

#[test]
fn documented_examples() {
    assert_eq!(circle_group(&Graph::cycle(6)).unwrap().order(), BigUint::from(12u8));
    let t = SplitTree::build(&Graph::path(4)).unwrap();
    assert_eq!(t.nodes().len(), 2);
    assert!(t.to_dot().contains("style=dashed"));
    assert!(t.to_dot().contains("fillcolor=white"));
    assert_eq!(find_split(&Graph::path(4)).unwrap().unwrap().a, vec![1]);
}

#[test]
fn rotational_chord_words_reach_every_center_case() {
    let cases: [(&[usize], &str); 4] = [
        (&[0, 3, 6, 2, 4, 7, 9, 11, 1, 4, 7, 0, 5, 8, 10, 9, 2, 5, 8, 1, 3, 6, 11, 10], "S2 ≀ Z3"),
        (&[0, 5, 7, 2, 1, 6, 8, 3, 2, 7, 9, 4, 3, 8, 5, 0, 4, 9, 6, 1], "(S2^5 ⋊ D5)"),
        (&[0, 2, 3, 6, 9, 10, 7, 5, 1, 0, 4, 7, 10, 11, 8, 3, 2, 1, 5, 8, 11, 9, 6, 4], "((S2^2)^3 ⋊ D3)"),
        (&[7, 4, 5, 6, 0, 2, 4, 6, 0, 1, 2, 3, 7, 5, 1, 3], "(S2^2 ⋊ Z2^2)"),
    ];
    for (word, expected) in cases {
        let g = circle_graph(word);
        let term = circle_group_with_cap(&g, 64).unwrap();
        assert_eq!(term.to_string(), expected);
        assert_eq!(term.order(), oracle_order(&g));
        assert!(term.orbit_sizes_consistent());
    }
}
