//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails. Counts, seeds and limits are fixed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use circle_split::{circle_group, SplitTree};
use comparability_modular::{
    bipperm_shape_check, count_transitive_orientations, encode_dim4, four_chains, is_comparability_graph,
    modular_tree_group, orientation_action_semiregular_check, prime_node_reports, realizer_check,
};
use graph_core::generate::{
    circle_graph, disjoint_union_all, interval_graph, permutation_graph, random_321_avoiding, random_chord_word,
    random_connected_graph, random_connected_interval_graph, random_forest, random_graph, random_intervals,
    random_permutation, random_tree,
};
use graph_core::Graph;
use group_expr::GroupTerm;
use interval_mpq::{
    build_mpq, caterpillar_group_shape, classify_unit_interval, forest_group, interval_group, interval_to_tree,
    tree_to_interval, UnitClass,
};
use num_bigint::BigUint;
use perm_oracle::{automorphism_group_with_cap, SmallGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_GRAPHS: usize = 300;
const C1_MAX_N: usize = 10;
const C1_LIMIT: Duration = Duration::from_secs(60);
const C2_FORESTS: usize = 100;
const C2_UNIONS: usize = 100;
const C2_MAX_N: usize = 12;
const C3_UNIT_GRAPHS: usize = 100;
const C4_GRAPHS: usize = 100;
const C4_MAX_CLIQUES: usize = 5;
const C5_DIAGRAMS: usize = 200;
const C5_MAX_CHORDS: usize = 8;
const C6_GRAPHS: usize = 300;
const C6_MAX_N: usize = 9;
/// Klein prime nodes are rare among random samples, so extra graphs
/// carrying one are searched for on top of the random corpus.
const KLEIN_EXTRAS: usize = 20;
const KLEIN_ATTEMPTS: usize = 200_000;
const C7_GRAPHS: usize = 100;
const C7_MAX_N: usize = 12;
const C8_MAX_EDGES: usize = 16;
const C8_SEMIREGULAR_MAX_N: usize = 8;
const C9_GRAPHS: usize = 50;
const C9_MAX_N: usize = 8;
const C9_ORACLE_CAP: usize = 30;
const C9_LIMIT: Duration = Duration::from_secs(120);
const C10_INSTANCES: usize = 100;

type Criterion<'a> = (&'a str, Box<dyn FnMut(&mut Corpus) -> Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn oracle(g: &Graph) -> BigUint {
    automorphism_group_with_cap(g, g.n()).expect("cap is n").order()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shared corpora: later criteria reuse the graphs of earlier ones.
#[derive(Default)]
struct Corpus {
    interval_terms: Vec<GroupTerm>,
    connected_interval: Vec<Graph>,
    permutation: Vec<Graph>,
}

fn c1(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut agree = 0;
    for i in 0..C1_GRAPHS {
        let n = 1 + i % C1_MAX_N;
        let g = random_connected_interval_graph(n, &mut r);
        let t = interval_group(&g).expect("interval input");
        agree += usize::from(t.order() == oracle(&g));
        corpus.interval_terms.push(t);
        corpus.connected_interval.push(g);
    }
    let elapsed = start.elapsed();
    outcome(
        agree == C1_GRAPHS && elapsed < C1_LIMIT,
        format!("{agree}/{C1_GRAPHS} orders equal the oracle, {:.2} s (limit {} s)", elapsed.as_secs_f64(), C1_LIMIT.as_secs()),
    )
}

fn c2(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(2);
    let mut forests_ok = 0;
    for i in 0..C2_FORESTS {
        let n = 1 + i % C2_MAX_N;
        let f = random_forest(n, r.gen_range(0.1..0.6), &mut r);
        forests_ok += usize::from(forest_group(&f).expect("forest").order() == oracle(&f));
    }
    let mut unions_ok = 0;
    let mut disconnected = 0;
    for _ in 0..C2_UNIONS {
        // Repeated parts make isomorphic components likely.
        let mut parts = Vec::new();
        while parts.iter().map(Graph::n).sum::<usize>() < C2_MAX_N - 3 {
            let n = r.gen_range(1..=4);
            let part = random_connected_interval_graph(n, &mut r);
            let copies = r.gen_range(1..=3);
            for _ in 0..copies {
                parts.push(part.clone());
            }
        }
        while parts.iter().map(Graph::n).sum::<usize>() > C2_MAX_N {
            parts.pop();
        }
        let g = disjoint_union_all(&parts);
        disconnected += usize::from(!g.is_connected());
        let assembled = cli::assemble_components(&g, C2_MAX_N, |h| Ok(interval_group(h)?)).expect("interval parts");
        let direct = interval_group(&g).expect("interval union");
        let want = oracle(&g);
        unions_ok += usize::from(assembled.order() == want && direct.order() == want);
        corpus.interval_terms.push(direct);
    }
    outcome(
        forests_ok == C2_FORESTS && unions_ok == C2_UNIONS,
        format!(
            "forests {forests_ok}/{C2_FORESTS}, unions {unions_ok}/{C2_UNIONS} ({disconnected} disconnected) match the oracle"
        ),
    )
}

fn c3(corpus: &Corpus) -> Outcome {
    let tree_violations = corpus.interval_terms.iter().filter(|t| !t.in_tree_class()).count();
    let mut r = rng(3);
    let mut unit = 0;
    let mut shape_violations = 0;
    let check = |g: &Graph, unit: &mut usize, bad: &mut usize| {
        if g.is_connected() && classify_unit_interval(g) == UnitClass::UnitInterval {
            *unit += 1;
            *bad += usize::from(!caterpillar_group_shape(&interval_group(g).expect("interval")));
        }
    };
    for g in &corpus.connected_interval {
        check(g, &mut unit, &mut shape_violations);
    }
    let mut generated = 0;
    while generated < C3_UNIT_GRAPHS {
        let n = r.gen_range(1..=C1_MAX_N);
        let len = r.gen_range(1..=4);
        let starts: Vec<i64> = (0..n).map(|_| r.gen_range(0..=n as i64)).collect();
        let g = interval_graph(&starts.iter().map(|&s| (s, s + len)).collect::<Vec<_>>());
        if g.is_connected() {
            generated += 1;
            check(&g, &mut unit, &mut shape_violations);
        }
    }
    outcome(
        tree_violations == 0 && shape_violations == 0,
        format!(
            "{tree_violations} of {} interval groups outside the tree class, {shape_violations} of {unit} connected unit interval groups without caterpillar shape",
            corpus.interval_terms.len()
        ),
    )
}

/// Maximal cliques by subset enumeration.
fn brute_maximal_cliques(g: &Graph) -> BTreeSet<Vec<usize>> {
    let n = g.n();
    let is_clique = |m: u32| (0..n).all(|u| m >> u & 1 == 0 || (u + 1..n).all(|v| m >> v & 1 == 0 || g.has_edge(u, v)));
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique(m)).collect();
    cliques
        .iter()
        .filter(|&&m| !cliques.iter().any(|&b| b != m && b & m == m))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    permutations(k - 1)
        .into_iter()
        .flat_map(|p| {
            (0..=p.len()).map(move |i| {
                let mut q = p.clone();
                q.insert(i, k - 1);
                q
            })
        })
        .collect()
}

/// Orderings of `cliques` in which each vertex lies in a contiguous run.
fn brute_consecutive(n: usize, cliques: &[Vec<usize>]) -> u64 {
    permutations(cliques.len())
        .into_iter()
        .filter(|order| {
            (0..n).all(|v| {
                let at: Vec<usize> = order.iter().enumerate().filter(|(_, &c)| cliques[c].contains(&v)).map(|(i, _)| i).collect();
                at.windows(2).all(|w| w[1] == w[0] + 1)
            })
        })
        .count() as u64
}

fn c4() -> Outcome {
    let mut r = rng(4);
    let (mut tested, mut agree, mut cliques_agree) = (0, 0, 0);
    while tested < C4_GRAPHS {
        let n = r.gen_range(1..=9);
        let g = interval_graph(&random_intervals(n, r.gen_range(0..=n as i64), &mut r));
        let brute = brute_maximal_cliques(&g);
        if brute.len() > C4_MAX_CLIQUES {
            continue;
        }
        tested += 1;
        let tree = build_mpq(&g).expect("interval input");
        let ours: BTreeSet<Vec<usize>> = tree.cliques().iter().map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        }).collect();
        cliques_agree += usize::from(ours == brute);
        let brute_list: Vec<Vec<usize>> = brute.into_iter().collect();
        agree += usize::from(tree.count_consecutive_orderings() == BigUint::from(brute_consecutive(n, &brute_list)));
    }
    outcome(
        agree == C4_GRAPHS && cliques_agree == C4_GRAPHS,
        format!("{agree}/{C4_GRAPHS} ordering counts and {cliques_agree}/{C4_GRAPHS} clique sets equal brute force"),
    )
}

fn c5() -> Outcome {
    let mut r = rng(5);
    let (mut tested, mut agree, mut rebuilt) = (0, 0, 0);
    while tested < C5_DIAGRAMS {
        let k = r.gen_range(1..=C5_MAX_CHORDS);
        let g = circle_graph(&random_chord_word(k, &mut r));
        if !g.is_connected() {
            continue;
        }
        tested += 1;
        agree += usize::from(circle_group(&g).map(|t| t.order()) == Ok(oracle(&g)));
        rebuilt += usize::from(SplitTree::build(&g).is_ok_and(|t| t.reconstruct() == g));
    }
    let mut cycles_ok = 0;
    for n in 5..=9u64 {
        let g = Graph::cycle(n as usize);
        let t = circle_group(&g).expect("cycle is a circle graph");
        let rebuilt_ok = SplitTree::build(&g).is_ok_and(|s| s.reconstruct() == g);
        let ok = t == GroupTerm::dih(n) && t.order() == BigUint::from(2 * n) && oracle(&g) == t.order() && rebuilt_ok;
        cycles_ok += usize::from(ok);
    }
    outcome(
        agree == C5_DIAGRAMS && rebuilt == C5_DIAGRAMS && cycles_ok == 5,
        format!(
            "{agree}/{C5_DIAGRAMS} connected diagrams match the oracle, {rebuilt}/{C5_DIAGRAMS} split trees rebuild the graph, C5..C9 {cycles_ok}/5 give Dn"
        ),
    )
}

fn has_klein_node(g: &Graph, cap: usize) -> bool {
    prime_node_reports(g, cap).is_ok_and(|rs| rs.iter().any(|r| r.group == SmallGroup::Klein4))
}

/// Up to `KLEIN_EXTRAS` graphs from `sample` that have a Klein prime node.
fn klein_extras(mut sample: impl FnMut() -> Graph, cap: usize) -> Vec<Graph> {
    (0..KLEIN_ATTEMPTS).map(|_| sample()).filter(|g| has_klein_node(g, cap)).take(KLEIN_EXTRAS).collect()
}

fn c6(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(6);
    let mut graphs: Vec<Graph> =
        (0..C6_GRAPHS).map(|i| permutation_graph(&random_permutation(1 + i % C6_MAX_N, &mut r))).collect();
    graphs.extend(klein_extras(|| permutation_graph(&random_permutation(r.gen_range(6..=C6_MAX_N), &mut r)), C6_MAX_N));
    let total = graphs.len();
    let (mut agree, mut prime_nodes, mut bad_groups, mut klein, mut klein_violations) = (0, 0, 0, 0, 0);
    for g in graphs {
        agree += usize::from(modular_tree_group(&g).map(|t| t.order()) == Ok(oracle(&g)));
        for rep in prime_node_reports(&g, C6_MAX_N).expect("within cap") {
            prime_nodes += 1;
            match rep.group {
                SmallGroup::Trivial | SmallGroup::Cyclic(2) => {}
                SmallGroup::Klein4 => {
                    klein += 1;
                    klein_violations += usize::from(rep.size_two_stabilizers > 2);
                }
                _ => bad_groups += 1,
            }
        }
        corpus.permutation.push(g);
    }
    outcome(
        agree == total && bad_groups == 0 && klein_violations == 0,
        format!(
            "{agree}/{total} orders equal the oracle; {bad_groups} of {prime_nodes} prime nodes outside {{1, Z2, Z2^2}}; {klein_violations} of {klein} Klein nodes with > 2 stabilizer types"
        ),
    )
}

fn c7(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(7);
    let mut sample = |lo: usize| loop {
        let g = permutation_graph(&random_321_avoiding(r.gen_range(lo..=C7_MAX_N), &mut r));
        if g.is_connected() {
            return g;
        }
    };
    let mut graphs: Vec<Graph> = (0..C7_GRAPHS).map(|_| sample(2)).collect();
    graphs.extend(klein_extras(|| sample(6), C7_MAX_N));
    let total = graphs.len();
    let (mut shapes, mut orders, mut klein, mut klein_violations) = (0, 0, 0, 0);
    for g in graphs {
        let t = modular_tree_group(&g).expect("permutation graph");
        shapes += usize::from(bipperm_shape_check(&g, &t));
        orders += usize::from(t.order() == oracle(&g));
        for rep in prime_node_reports(&g, C7_MAX_N).expect("within cap") {
            if rep.group == SmallGroup::Klein4 {
                klein += 1;
                klein_violations += usize::from(rep.fixed_points != 0 || rep.size_two_orbits > 1);
            }
        }
        corpus.permutation.push(g);
    }
    outcome(
        shapes == total && orders == total && klein_violations == 0,
        format!(
            "{shapes}/{total} shapes pass, {orders}/{total} orders equal the oracle, {klein_violations} of {klein} Klein nodes with fixed points or > 1 size-2 orbit"
        ),
    )
}

/// Transitive orientations among all `2^m` choices of edge directions.
fn brute_orientations(g: &Graph) -> u64 {
    let n = g.n();
    let edges = g.edges();
    let mut id = vec![usize::MAX; n * n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        id[u * n + v] = e;
        id[v * n + u] = e;
    }
    // Arc u -> v exists iff the edge's bit says lower-to-higher and u < v, or the reverse.
    let arc = |mask: u32, u: usize, v: usize| {
        let e = id[u * n + v];
        e != usize::MAX && ((mask >> e & 1 == 1) == (u < v))
    };
    (0u32..1 << edges.len())
        .filter(|&mask| {
            (0..n).all(|a| {
                (0..n).filter(|&b| arc(mask, a, b)).all(|b| (0..n).filter(|&c| arc(mask, b, c)).all(|c| arc(mask, a, c)))
            })
        })
        .count() as u64
}

fn c8(corpus: &Corpus) -> Outcome {
    let mut r = rng(8);
    let mut pool: Vec<Graph> = corpus.connected_interval.iter().chain(&corpus.permutation).cloned().collect();
    for i in 0..200 {
        pool.push(random_graph(2 + i % 7, r.gen_range(0.2..0.8), &mut r));
    }
    let (mut counted, mut agree, mut recognized) = (0, 0, 0);
    for g in pool.iter().filter(|g| g.edge_count() <= C8_MAX_EDGES) {
        let brute = brute_orientations(g);
        recognized += usize::from(is_comparability_graph(g) == (brute > 0));
        if brute == 0 {
            continue;
        }
        counted += 1;
        agree += usize::from(count_transitive_orientations(g).ok() == Some(BigUint::from(brute)));
    }
    let considered = pool.iter().filter(|g| g.edge_count() <= C8_MAX_EDGES).count();
    let small: Vec<&Graph> = corpus.permutation.iter().filter(|g| g.n() <= C8_SEMIREGULAR_MAX_N).collect();
    let semiregular = small.iter().filter(|g| orientation_action_semiregular_check(g) == Ok(true)).count();
    outcome(
        agree == counted && recognized == considered && semiregular == small.len(),
        format!(
            "{agree}/{counted} comparability graphs with m <= {C8_MAX_EDGES} match 2^m enumeration, {recognized}/{considered} recognized; semiregular on {semiregular}/{} permutation graphs with n <= {C8_SEMIREGULAR_MAX_N}",
            small.len()
        ),
    )
}

fn c9() -> Outcome {
    let start = Instant::now();
    let mut r = rng(9);
    let (mut tested, mut realized, mut compared, mut equal) = (0, 0, 0, 0);
    let mut inputs: Vec<Graph> = vec![Graph::path(2), Graph::path(3), Graph::star(3), Graph::path(4)];
    while inputs.len() < C9_GRAPHS + 10 {
        let n = r.gen_range(2..=C9_MAX_N);
        let g = if r.gen_bool(0.3) { random_tree(n, &mut r) } else { random_connected_graph(n, r.gen_range(0.2..0.7), &mut r) };
        if !comparability_modular::is_cycle(&g) {
            inputs.push(g);
        }
    }
    for x in &inputs {
        let gadget = encode_dim4(x).expect("connected non-cycle input");
        tested += 1;
        let y_chains = four_chains(&gadget.base).expect("incidence graphs are bipartite");
        let ok = realizer_check(&y_chains, &gadget.encoded) == Ok(true)
            && realizer_check(gadget.realizer.as_ref().expect("realizer"), &gadget.encoded) == Ok(true);
        realized += usize::from(ok);
        if gadget.encoded.n() <= C9_ORACLE_CAP {
            compared += 1;
            let enc = automorphism_group_with_cap(&gadget.encoded, C9_ORACLE_CAP).expect("within cap").order();
            equal += usize::from(enc == oracle(x));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        tested >= C9_GRAPHS && realized == tested && equal == compared && elapsed < C9_LIMIT,
        format!(
            "{realized}/{tested} realizers valid, {equal}/{compared} encodings within cap {C9_ORACLE_CAP} keep |Aut|, {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            C9_LIMIT.as_secs()
        ),
    )
}

fn c10() -> Outcome {
    let mut r = rng(10);
    let mut to_tree = 0;
    for i in 0..C10_INSTANCES {
        let n = 1 + i % 9;
        let g = interval_graph(&random_intervals(n, r.gen_range(0..=n as i64), &mut r));
        let t = interval_to_tree(&g).expect("interval input");
        to_tree += usize::from(t.is_tree() && oracle(&t) == oracle(&g));
    }
    let mut to_interval = 0;
    for i in 0..C10_INSTANCES {
        let t = random_tree(1 + i % 10, &mut r);
        let g = tree_to_interval(&t).expect("tree input");
        to_interval += usize::from(build_mpq(&g).is_ok() && oracle(&g) == oracle(&t));
    }
    outcome(
        to_tree == C10_INSTANCES && to_interval == C10_INSTANCES,
        format!("interval to tree {to_tree}/{C10_INSTANCES}, tree to interval {to_interval}/{C10_INSTANCES} keep the oracle order"),
    )
}

fn main() {
    let mut corpus = Corpus::default();
    let mut run: Vec<Criterion> = vec![
        ("interval oracle equivalence", Box::new(c1)),
        ("disconnected assembly", Box::new(c2)),
        ("tree class containment", Box::new(|c: &mut Corpus| c3(c))),
        ("consecutive-ordering census", Box::new(|_: &mut Corpus| c4())),
        ("circle oracle equivalence", Box::new(|_: &mut Corpus| c5())),
        ("permutation oracle equivalence", Box::new(c6)),
        ("bipartite permutation shapes", Box::new(c7)),
        ("orientation counting", Box::new(|c: &mut Corpus| c8(c))),
        ("dimension-four encoder", Box::new(|_: &mut Corpus| c9())),
        ("constructions", Box::new(|_: &mut Corpus| c10())),
    ];
    let mut failed = 0;
    for (i, (name, f)) in run.iter_mut().enumerate() {
        let start = Instant::now();
        let o = f(&mut corpus);
        failed += usize::from(!o.passed);
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:>2} {name}: {} [{:.2} s]", i + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
