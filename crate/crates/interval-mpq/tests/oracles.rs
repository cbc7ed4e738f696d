use std::collections::{BTreeSet, HashMap};

use graph_core::generate::{interval_graph, random_connected_interval_graph, random_intervals, random_tree};
use graph_core::Graph;
use interval_mpq::*;
use num_bigint::BigUint;
use perm_oracle::automorphism_group_with_cap;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle_order(g: &Graph) -> BigUint {
    automorphism_group_with_cap(g, g.n()).unwrap().order()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
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

fn factorial(k: usize) -> BigUint {
    (2..=k as u64).fold(BigUint::from(1u8), |a, b| a * b)
}

/// (node id, section index) pairs each vertex belongs to.
fn section_memberships(t: &MpqTree) -> Vec<BTreeSet<(usize, usize)>> {
    fn walk(node: &MpqNode, next: &mut usize, out: &mut [BTreeSet<(usize, usize)>]) {
        let id = *next;
        *next += 1;
        match node {
            MpqNode::Leaf { section, .. } | MpqNode::P { section, .. } => {
                for &v in section {
                    out[v].insert((id, 0));
                }
            }
            MpqNode::Q { sections, .. } => {
                for (i, sec) in sections.iter().enumerate() {
                    for &v in sec {
                        out[v].insert((id, i));
                    }
                }
            }
        }
        for c in node.children() {
            walk(c, next, out);
        }
    }
    let mut out = vec![BTreeSet::new(); t.n()];
    walk(t.root(), &mut 0, &mut out);
    out
}

fn node_ids(node: &MpqNode, next: &mut usize, out: &mut Vec<(usize, usize)>) {
    let id = *next;
    *next += 1;
    out.push((id, node.children().len()));
    for c in node.children() {
        node_ids(c, next, out);
    }
}

fn arb_interval_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_len = rng.gen_range(0..=2 * n as i64);
        interval_graph(&random_intervals(n, max_len, &mut rng))
    })
}

fn arb_connected_interval_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_connected_interval_graph(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn arb_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frontiers_are_exactly_the_consecutive_orderings(g in arb_interval_graph(9)) {
        let t = build_mpq(&g).unwrap();
        let k = t.cliques().len();
        prop_assume!(k <= 5);
        let brute: BTreeSet<Vec<usize>> =
            permutations(k).into_iter().filter(|p| is_consecutive(g.n(), t.cliques(), p)).collect();
        let from_tree: Vec<Vec<usize>> = t.all_frontiers();
        let distinct: BTreeSet<Vec<usize>> = from_tree.iter().cloned().collect();
        prop_assert_eq!(&distinct, &brute);
        prop_assert_eq!(BigUint::from(brute.len()), t.count_consecutive_orderings());
    }

    #[test]
    fn mpq_tree_invariants(g in arb_interval_graph(10)) {
        let t = build_mpq(&g).unwrap();
        let member = section_memberships(&t);
        let mut nodes = Vec::new();
        node_ids(t.root(), &mut 0, &mut nodes);
        for (v, m) in member.iter().enumerate() {
            let owners: BTreeSet<usize> = m.iter().map(|&(id, _)| id).collect();
            prop_assert_eq!(owners.len(), 1, "vertex {} in {} nodes", v, owners.len());
            let idx: Vec<usize> = m.iter().map(|&(_, i)| i).collect();
            prop_assert_eq!(idx.last().unwrap() - idx[0] + 1, idx.len());
        }
        for &(id, k) in &nodes {
            prop_assert!(k != 1, "node {} has one child", id);
        }
        prop_assert!(is_consecutive(g.n(), t.cliques(), &t.frontier()));
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let closed_twins = g.closed_neighborhood(u) == g.closed_neighborhood(v);
                prop_assert_eq!(member[u] == member[v], closed_twins);
            }
        }
    }

    #[test]
    fn clique_ordering_is_valid(g in arb_interval_graph(10)) {
        let co = maximal_cliques_interval(&g).unwrap();
        let mut sorted = co.order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..co.cliques.len()).collect::<Vec<_>>());
        prop_assert!(is_consecutive(g.n(), &co.cliques, &co.order));
    }

    #[test]
    fn group_order_matches_oracle(g in arb_interval_graph(10)) {
        let term = interval_group(&g).unwrap();
        prop_assert_eq!(term.order(), oracle_order(&g));
        prop_assert!(term.in_tree_class());
        prop_assert_eq!(term.normalize(), term);
    }

    #[test]
    fn kernel_is_product_over_twin_classes(g in arb_connected_interval_graph(10)) {
        let t = build_mpq(&g).unwrap();
        let d = mpq_automorphism_data(&g, &t).unwrap();
        let mut classes: HashMap<Vec<usize>, usize> = HashMap::new();
        for v in 0..g.n() {
            *classes.entry(g.closed_neighborhood(v)).or_default() += 1;
        }
        let expected: BigUint = classes.values().map(|&c| factorial(c)).product();
        prop_assert_eq!(d.kernel.order(), expected);
        prop_assert_eq!(d.kernel.order() * d.tree_group.order(), d.full.order());
        prop_assert_eq!(d.full.order(), oracle_order(&g));
    }

    #[test]
    fn interval_to_tree_preserves_order(g in arb_interval_graph(9)) {
        let t = interval_to_tree(&g).unwrap();
        prop_assert!(t.is_tree());
        prop_assert_eq!(oracle_order(&t), oracle_order(&g));
    }

    #[test]
    fn tree_to_interval_preserves_order(t in arb_tree(10)) {
        let x = tree_to_interval(&t).unwrap();
        prop_assert!(build_mpq(&x).is_ok());
        prop_assert_eq!(oracle_order(&x), oracle_order(&t));
    }

    #[test]
    fn tree_group_matches_oracle(t in arb_tree(14)) {
        let term = tree_group(&t).unwrap();
        prop_assert!(term.in_tree_class());
        prop_assert_eq!(term.order(), oracle_order(&t));
    }

    #[test]
    fn unit_interval_groups_have_caterpillar_shape(g in arb_connected_interval_graph(10)) {
        if classify_unit_interval(&g) == UnitClass::UnitInterval {
            prop_assert!(caterpillar_group_shape(&interval_group(&g).unwrap()));
        }
    }

    #[test]
    fn equal_length_intervals_are_unit(n in 1usize..10, len in 0i64..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let starts: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2 * n as i64)).collect();
        let g = interval_graph(&starts.iter().map(|&l| (l, l + len)).collect::<Vec<_>>());
        prop_assert_eq!(classify_unit_interval(&g), UnitClass::UnitInterval);
    }
}

fn is_prime(g: &Graph) -> bool {
    let n = g.n();
    (1u32..(1 << n) - 1).all(|mask| {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        set.len() == 1 || !g.is_module(&set).unwrap()
    })
}

#[test]
fn prime_interval_graphs_pass_the_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    for _ in 0..4000 {
        let n = rng.gen_range(4..=8);
        let g = random_connected_interval_graph(n, &mut rng);
        if is_prime(&g) {
            seen += 1;
            assert!(is_prime_interval_check(&g).unwrap());
        }
    }
    assert!(seen >= 20, "only {seen} prime samples");
}

#[test]
fn documented_examples() {
    let claw = Graph::star(3);
    let t = build_mpq(&claw).unwrap();
    assert_eq!(t.count_consecutive_orderings(), BigUint::from(6u8));
    assert_eq!(interval_group(&claw).unwrap(), group_expr::GroupTerm::sym(3));
    assert_eq!(maximal_cliques_interval(&Graph::cycle(4)), Err(IntervalError::NotInterval));
    assert_eq!(maximal_cliques_interval(&Graph::complete(4)).unwrap().cliques.len(), 1);
    assert_eq!(classify_unit_interval(&Graph::path(4)), UnitClass::UnitInterval);
    assert_eq!(oracle_order(&interval_to_tree(&Graph::complete(4)).unwrap()), BigUint::from(24u8));
    assert!(t.to_dot().contains("shape=circle"));
}

#[test]
fn larger_interval_graphs_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = rng.gen_range(15..=45);
        let max_len = rng.gen_range(0..=n as i64 / 2);
        let g = interval_graph(&random_intervals(n, max_len, &mut rng));
        assert_eq!(interval_group(&g).unwrap().order(), oracle_order(&g));
        let t = interval_to_tree(&g).unwrap();
        assert_eq!(oracle_order(&t), oracle_order(&g));
    }
}
