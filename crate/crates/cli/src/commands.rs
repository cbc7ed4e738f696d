use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use comparability_modular::{count_transitive_orientations, encode_dim4, realizer_check, Orientation};
use graph_core::Graph;
use group_expr::GroupTerm;
use interval_mpq::{interval_group, interval_to_tree, tree_group, tree_to_interval};
use perm_oracle::automorphism_group_with_cap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dispatch::{compute, Class};
use crate::{read_graph, CliError, EXIT_MISMATCH};

/// `dim4` gadgets of small inputs exceed the general default, so the
/// subcommand compares orders up to this size unless told otherwise.
pub const DIM4_DEFAULT_CAP: usize = 30;

/// Edge limit for exhaustive orientation counting.
const EXHAUSTIVE_EDGES: usize = 16;

/// What a subcommand prints, and the status it exits with.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn fail(mut self, msg: String) -> Self {
        let _ = writeln!(self.stderr, "error: {msg}");
        self.code = EXIT_MISMATCH;
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunReport {
    pub input: String,
    pub vertices: usize,
    pub class: Class,
    pub group: GroupTerm,
    pub pretty: String,
    pub order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_order: Option<String>,
    /// Present exactly when the oracle ran.
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone)]
pub struct AutOptions {
    pub class: Class,
    pub cap: usize,
    pub json: bool,
    pub dot: Option<PathBuf>,
    pub verify: bool,
}

fn oracle_order(g: &Graph, cap: usize) -> Result<Option<String>, CliError> {
    if g.n() > cap {
        return Ok(None);
    }
    Ok(Some(automorphism_group_with_cap(g, cap)?.order().to_string()))
}

fn run_one(path: &Path, opts: &AutOptions) -> Result<(RunReport, Option<String>), CliError> {
    let g = read_graph(path)?;
    if opts.verify && g.n() > opts.cap {
        return Err(CliError::CapExceeded { n: g.n(), cap: opts.cap });
    }
    let start = Instant::now();
    let c = compute(&g, opts.class, opts.cap, opts.dot.is_some())?;
    let order = c.term.order().to_string();
    let oracle = oracle_order(&g, opts.cap)?;
    let report = RunReport {
        input: path.display().to_string(),
        vertices: g.n(),
        class: c.class,
        pretty: c.term.to_string(),
        group: c.term,
        matches: oracle.as_ref().map(|o| *o == order),
        oracle_order: oracle,
        order,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((report, c.dot))
}

fn report_text(r: &RunReport, cap: usize) -> String {
    let mut s = format!("{} (order {})\nclass: {}\n", r.pretty, r.order, r.class.name());
    match (&r.oracle_order, r.matches) {
        (Some(o), Some(true)) => {
            let _ = writeln!(s, "oracle: order {o}, match");
        }
        (Some(o), _) => {
            let _ = writeln!(s, "oracle: order {o}, MISMATCH");
        }
        (None, _) => {
            let _ = writeln!(s, "oracle: skipped (n = {} > cap {cap})", r.vertices);
        }
    }
    s
}

fn mismatch_message(r: &RunReport) -> Option<String> {
    (r.matches == Some(false)).then(|| {
        format!("{}: computed order {} but the oracle found {}", r.input, r.order, r.oracle_order.as_deref().unwrap_or("?"))
    })
}

pub fn cmd_aut(path: &Path, opts: &AutOptions) -> Result<Output, CliError> {
    let (report, dot) = run_one(path, opts)?;
    if let (Some(dot_path), Some(dot)) = (&opts.dot, dot) {
        std::fs::write(dot_path, dot).map_err(|source| CliError::Io { path: dot_path.clone(), source })?;
    }
    let stdout = if opts.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        report_text(&report, opts.cap)
    };
    let out = Output { stdout, ..Output::default() };
    Ok(match mismatch_message(&report) {
        Some(msg) => out.fail(msg),
        None => out,
    })
}

/// Every `*.el` file in `dir`, in name order, computed in parallel. The
/// exit code is that of the first failing file.
pub fn cmd_aut_batch(dir: &Path, opts: &AutOptions) -> Result<Output, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let mut files: Vec<PathBuf> =
        entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "el")).collect();
    files.sort();
    let opts = AutOptions { dot: None, ..opts.clone() };
    let results: Vec<Result<(RunReport, Option<String>), CliError>> = files.par_iter().map(|p| run_one(p, &opts)).collect();

    let mut out = Output::default();
    let mut json = Vec::new();
    for (path, result) in files.iter().zip(results) {
        let code = match &result {
            Ok((r, _)) if r.matches == Some(false) => EXIT_MISMATCH,
            Ok(_) => 0,
            Err(e) => e.exit_code(),
        };
        if out.code == 0 {
            out.code = code;
        }
        match result {
            Ok((r, _)) => {
                if let Some(msg) = mismatch_message(&r) {
                    let _ = writeln!(out.stderr, "error: {msg}");
                }
                if opts.json {
                    json.push(serde_json::to_value(&r).expect("report serializes"));
                } else {
                    let _ = write!(out.stdout, "== {}\n{}", path.display(), report_text(&r, opts.cap));
                }
            }
            Err(e) => {
                let _ = writeln!(out.stderr, "error: {}: {e}", path.display());
                if opts.json {
                    json.push(serde_json::json!({ "input": path.display().to_string(), "error": e.to_string(), "code": code }));
                } else {
                    let _ = writeln!(out.stdout, "== {}\nerror (exit {code})", path.display());
                }
            }
        }
    }
    if opts.json {
        out.stdout = serde_json::to_string_pretty(&json).expect("values serialize") + "\n";
    }
    Ok(out)
}

pub fn cmd_oracle(path: &Path, cap: usize) -> Result<Output, CliError> {
    let g = read_graph(path)?;
    let group = automorphism_group_with_cap(&g, cap)?;
    let stdout = serde_json::to_string(&group.record()).expect("record serializes") + "\n";
    Ok(Output { stdout, ..Output::default() })
}

fn write_file(path: PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(&path, contents).map_err(|source| CliError::Io { path, source })
}

/// Encodes the input, checks the realizer, and compares `|Aut|` of input
/// and encoding when the encoding fits under `cap`. With `out`, writes
/// `encoded.el`, `chains.txt` and `gadget.json` into that directory.
pub fn cmd_dim4(path: &Path, out_dir: Option<&Path>, cap: usize) -> Result<Output, CliError> {
    let x = read_graph(path)?.uncolored();
    let gadget = encode_dim4(&x)?;
    let realizer = gadget.realizer.as_ref().expect("encode_dim4 builds a realizer");
    let mut out = Output::default();
    let s = &mut out.stdout;
    let _ = writeln!(s, "source: {} vertices, {} edges", x.n(), x.edge_count());
    let _ = writeln!(s, "incidence graph: {} vertices, {} edges", gadget.base.n(), gadget.base.edge_count());
    let _ = writeln!(s, "encoded: {} vertices, {} edges", gadget.encoded.n(), gadget.encoded.edge_count());
    let realized = realizer_check(realizer, &gadget.encoded)?;
    let _ = writeln!(s, "realizer: {} ({} chains)", if realized { "PASS" } else { "FAIL" }, realizer.chains.len());

    let mut failure = (!realized).then(|| "the chains do not realize the encoded graph".to_string());
    match (oracle_order(&gadget.encoded, cap)?, oracle_order(&x, cap)?) {
        (Some(enc), Some(src)) => {
            let rel = if enc == src { "=" } else { "!=" };
            let _ = writeln!(s, "aut: {enc} {rel} {src}");
            if enc != src {
                failure.get_or_insert(format!("|Aut| of the encoding is {enc}, of the source {src}"));
            }
        }
        _ => {
            let _ = writeln!(s, "aut: skipped (n = {} > cap {cap})", gadget.encoded.n());
        }
    }

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        write_file(dir.join("encoded.el"), &graph_core::to_edge_list(&gadget.encoded))?;
        write_file(dir.join("chains.txt"), &realizer.to_text())?;
        let record = serde_json::to_string_pretty(&gadget.record()).expect("record serializes") + "\n";
        write_file(dir.join("gadget.json"), &record)?;
        let _ = writeln!(out.stdout, "wrote encoded.el, chains.txt, gadget.json to {}", dir.display());
    }
    Ok(match failure {
        Some(msg) => out.fail(msg),
        None => out,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConvertMode {
    IntToTree,
    TreeToInt,
}

fn describe(label: &str, g: &Graph, term: &GroupTerm, cap: usize) -> Result<(String, bool), CliError> {
    let order = term.order().to_string();
    let (oracle, ok) = match oracle_order(g, cap)? {
        Some(o) => {
            let ok = o == order;
            (format!("oracle {o}"), ok)
        }
        None => (format!("oracle skipped (n = {} > cap {cap})", g.n()), true),
    };
    Ok((format!("{label}: {} vertices, order {order}, {oracle}\n", g.n()), ok))
}

/// Converts between interval graphs and trees with isomorphic groups. The
/// graph goes to `out`, or to stdout with the summary moved to stderr.
pub fn cmd_convert(path: &Path, mode: ConvertMode, out_path: Option<&Path>, cap: usize) -> Result<Output, CliError> {
    let g = read_graph(path)?.uncolored();
    let (converted, t_in, t_out) = match mode {
        ConvertMode::IntToTree => {
            let t_in = interval_group(&g)?;
            let t = interval_to_tree(&g)?;
            let t_out = tree_group(&t)?;
            (t, t_in, t_out)
        }
        ConvertMode::TreeToInt => {
            if !g.is_tree() {
                return Err(CliError::ClassMismatch("graph is not a tree".into()));
            }
            let t_in = tree_group(&g)?;
            let h = tree_to_interval(&g)?;
            let t_out = interval_group(&h)?;
            (h, t_in, t_out)
        }
    };
    let (line_in, ok_in) = describe("input", &g, &t_in, cap)?;
    let (line_out, ok_out) = describe("output", &converted, &t_out, cap)?;
    let summary = line_in + &line_out;
    let edge_list = graph_core::to_edge_list(&converted);
    let mut out = match out_path {
        Some(p) => {
            write_file(p.to_path_buf(), &edge_list)?;
            Output { stdout: summary, ..Output::default() }
        }
        None => Output { stdout: edge_list, stderr: summary, code: 0 },
    };
    if t_in.order() != t_out.order() {
        out = out.fail(format!("orders differ: {} before, {} after", t_in.order(), t_out.order()));
    } else if !(ok_in && ok_out) {
        out = out.fail("a symbolic order disagrees with the oracle".into());
    }
    Ok(out)
}

/// Counts transitive orientations by trying all `2^m` edge directions;
/// `None` above 16 edges.
pub fn exhaustive_orientation_count(g: &Graph) -> Option<u64> {
    let edges = g.edges();
    if edges.len() > EXHAUSTIVE_EDGES {
        return None;
    }
    let count = (0u32..1 << edges.len())
        .filter(|mask| {
            let mut o = Orientation::new(g.n());
            for (e, &(u, v)) in edges.iter().enumerate() {
                if mask >> e & 1 == 1 {
                    o.add_arc(u, v);
                } else {
                    o.add_arc(v, u);
                }
            }
            o.is_transitive_orientation_of(g)
        })
        .count();
    Some(count as u64)
}

pub fn cmd_count_to(path: &Path, verify: bool) -> Result<Output, CliError> {
    let g = read_graph(path)?.uncolored();
    let count = count_transitive_orientations(&g)?;
    let mut out = Output { stdout: format!("{count}\n"), ..Output::default() };
    if verify {
        let brute = exhaustive_orientation_count(&g).ok_or_else(|| {
            CliError::ExhaustiveLimit { m: g.edge_count(), limit: EXHAUSTIVE_EDGES }
        })?;
        let agree = count == brute.into();
        let _ = writeln!(out.stdout, "exhaustive: {brute}, {}", if agree { "match" } else { "MISMATCH" });
        if !agree {
            out = out.fail(format!("modular tree count {count}, exhaustive count {brute}"));
        }
    }
    Ok(out)
}
