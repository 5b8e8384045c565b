//! Command-line surface.
//!
//! Graph arguments are graph6 strings, `@file` paths to edge lists, or
//! `@-` for an edge list on stdin. Exit status: 0 on success, 1 when a
//! verification fails (the product inequality or a certificate count), 2
//! on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use domlab_core::bitset::VertexSet;
use domlab_core::codec::to_graph6;
use domlab_core::cotree::build_cotree;
use domlab_core::domination::{
    enumerate_min_jk_sets, gamma_exact, gamma_exact_cancellable, gamma_jk,
};
use domlab_core::graph::Graph;
use domlab_core::labeling::{audit_claim_external_all, run_pipeline, LabelState, TieBreak};
use domlab_core::product::ProductGraph;

use crate::input::{parse_graph_arg, parse_product_set, parse_vertex_list, ProductSetArg};
use crate::report;
use crate::sweep::{vizing_sweep, GFamily, HFamily, Quantify, SweepConfig, TieBreakMode};

#[derive(Parser)]
#[command(
    name = "domlab",
    version,
    about = "Exact domination lab: solvers, cograph recognition, products, labeling certificates, sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide cograph membership: prints the cotree or an induced P4.
    Recognize {
        /// graph6 string, @file edge list, or @- for stdin
        graph: String,
    },
    /// Exact domination number (or [j,k]-domination with --jk).
    Gamma {
        graph: String,
        /// Solve for a [j,k]-set instead, e.g. --jk 1,2
        #[arg(long)]
        jk: Option<String>,
        /// Emit the solution as JSON
        #[arg(long)]
        json: bool,
    },
    /// Build the Cartesian product G □ H.
    Product {
        g: String,
        h: String,
        /// Also solve γ(G), γ(H), γ(G□H) and check the product inequality
        #[arg(long)]
        gamma: bool,
    },
    /// Run the full labeling pipeline on G □ H and verify the certificate.
    Certify {
        g: String,
        h: String,
        #[command(flatten)]
        sets: SetArgs,
        /// Dump per-stage label tables
        #[arg(long)]
        trace: bool,
        /// Emit the full run document as JSON
        #[arg(long)]
        json: bool,
    },
    /// Sweep (G, H) families: exact inequality checks plus pipeline audits.
    Sweep {
        #[arg(long)]
        max_ng: usize,
        #[arg(long)]
        max_nh: usize,
        /// Quantify over all minimum [1,2]-sets of G (default: first)
        #[arg(long)]
        all_gamma_sets: bool,
        /// Quantify over all minimum dominating sets of the product
        #[arg(long)]
        all_dom_sets: bool,
        /// Use a random cograph family of this size instead of exhaustive G
        #[arg(long)]
        random_g: Option<usize>,
        /// Use a random connected family of this size instead of exhaustive H
        #[arg(long)]
        random_h: Option<usize>,
        /// Seed for the random families
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resolve the pipeline's pinned choices by seeded coin flips
        #[arg(long)]
        randomize_ties: bool,
        /// Budget per exact solve, in seconds
        #[arg(long, default_value_t = 10)]
        timeout_secs: u64,
        /// Report file (line-delimited JSON)
        #[arg(long)]
        out: PathBuf,
    },
    /// Structural claim audits.
    Audit {
        #[command(subcommand)]
        claim: AuditCommand,
    },
}

#[derive(Args)]
struct SetArgs {
    /// Ordered dominating set of G, e.g. --gamma-set 0,2 (default: the
    /// solver's minimum [1,2]-set)
    #[arg(long)]
    gamma_set: Option<String>,
    /// Dominating set of the product as (g,h) pairs or raw ids (default:
    /// the solver's minimum dominating set)
    #[arg(long)]
    dom_set: Option<String>,
}

#[derive(Subcommand)]
enum AuditCommand {
    /// For each u seeing exactly two members of Γ: is some private neighbor
    /// independent from u and from everything outside the two cells?
    Claim1 {
        graph: String,
        /// Explicit Γ (default: the first minimum [1,2]-set)
        #[arg(long)]
        gamma_set: Option<String>,
        /// Audit every minimum [1,2]-set
        #[arg(long)]
        all_gamma_sets: bool,
    },
    /// Do any pair labels survive the second refinement on G □ H?
    Claim2 {
        g: String,
        h: String,
        #[command(flatten)]
        sets: SetArgs,
    },
}

pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Recognize { graph } => recognize(&graph, out),
        Command::Gamma { graph, jk, json } => gamma(&graph, jk.as_deref(), json, out),
        Command::Product { g, h, gamma } => product(&g, &h, gamma, out),
        Command::Certify {
            g,
            h,
            sets,
            trace,
            json,
        } => certify(&g, &h, &sets, trace, json, out),
        Command::Sweep {
            max_ng,
            max_nh,
            all_gamma_sets,
            all_dom_sets,
            random_g,
            random_h,
            seed,
            randomize_ties,
            timeout_secs,
            out: out_path,
        } => sweep_cmd(
            max_ng,
            max_nh,
            all_gamma_sets,
            all_dom_sets,
            random_g,
            random_h,
            seed,
            randomize_ties,
            timeout_secs,
            &out_path,
            out,
        ),
        Command::Audit { claim } => match claim {
            AuditCommand::Claim1 {
                graph,
                gamma_set,
                all_gamma_sets,
            } => audit_claim1(&graph, gamma_set.as_deref(), all_gamma_sets, out),
            AuditCommand::Claim2 { g, h, sets } => audit_claim2(&g, &h, &sets, out),
        },
    }
}

fn recognize(graph: &str, out: &mut dyn Write) -> Result<i32> {
    let g = parse_graph_arg(graph)?;
    match build_cotree(&g) {
        Ok(tree) => writeln!(out, "cograph: {}", tree.to_term())?,
        Err(witness) => writeln!(out, "not a cograph: induced P4 {witness}")?,
    }
    Ok(0)
}

fn gamma(graph: &str, jk: Option<&str>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let g = parse_graph_arg(graph)?;
    let solution = match jk {
        Some(spec) => {
            let (j, k) = spec
                .split_once(',')
                .context("--jk expects the form j,k, e.g. 1,2")?;
            let j: usize = j.trim().parse().context("--jk j value")?;
            let k: usize = k.trim().parse().context("--jk k value")?;
            anyhow::ensure!(1 <= j && j <= k, "--jk needs 1 <= j <= k");
            gamma_jk(&g, j, k)
        }
        None => gamma_exact(&g),
    };
    if json {
        writeln!(out, "{}", report::dom_solution_json(&solution))?;
    } else {
        match solution.kind {
            domlab_core::domination::DomKind::Plain => writeln!(out, "gamma = {}", solution.size)?,
            domlab_core::domination::DomKind::Range { j, k } => {
                writeln!(out, "gamma[{j},{k}] = {}", solution.size)?
            }
        }
        writeln!(out, "witness = {}", solution.witness)?;
    }
    Ok(0)
}

fn product(g_arg: &str, h_arg: &str, with_gamma: bool, out: &mut dyn Write) -> Result<i32> {
    let g = parse_graph_arg(g_arg)?;
    let h = parse_graph_arg(h_arg)?;
    let p = ProductGraph::new(&g, &h)?;
    writeln!(
        out,
        "G: n={} m={}  H: n={} m={}",
        g.vertex_count(),
        g.edge_count(),
        h.vertex_count(),
        h.edge_count()
    )?;
    writeln!(
        out,
        "G [] H: n={} m={} graph6={}",
        p.vertex_count(),
        p.graph().edge_count(),
        to_graph6(p.graph())
    )?;
    if with_gamma {
        let gg = gamma_exact(&g).size;
        let gh = gamma_exact(&h).size;
        let gp = gamma_exact(p.graph()).size;
        let ok = gp >= gg * gh;
        writeln!(
            out,
            "gamma(G)={gg} gamma(H)={gh} gamma(G [] H)={gp}: {}",
            if ok {
                "inequality holds"
            } else {
                "INEQUALITY VIOLATED"
            }
        )?;
        if !ok {
            return Ok(1);
        }
    }
    Ok(0)
}

fn resolve_sets(g: &Graph, p: &ProductGraph, sets: &SetArgs) -> Result<(Vec<usize>, VertexSet)> {
    let gamma_set = match &sets.gamma_set {
        Some(text) => parse_vertex_list(text)?,
        None => gamma_jk(g, 1, 2).witness.to_vec(),
    };
    let dom = match &sets.dom_set {
        Some(text) => {
            let n = p.vertex_count();
            match parse_product_set(text)? {
                ProductSetArg::Coordinates(pairs) => {
                    let mut s = VertexSet::new(n);
                    for (gv, hv) in pairs {
                        anyhow::ensure!(
                            gv < p.factor_g().vertex_count() && hv < p.factor_h().vertex_count(),
                            "coordinate ({gv},{hv}) outside the product"
                        );
                        s.insert(p.encode(gv, hv));
                    }
                    s
                }
                ProductSetArg::RawIds(ids) => {
                    let mut s = VertexSet::new(n);
                    for id in ids {
                        anyhow::ensure!(id < n, "product id {id} out of range");
                        s.insert(id);
                    }
                    s
                }
            }
        }
        None => gamma_exact(p.graph()).witness,
    };
    Ok((gamma_set, dom))
}

fn write_stage(
    out: &mut dyn Write,
    p: &ProductGraph,
    name: &str,
    state: &LabelState,
) -> Result<()> {
    writeln!(out, "== {name}")?;
    for (v, label) in state.iter() {
        let (gv, hv) = p.decode(v);
        writeln!(out, "  ({gv},{hv}) -> {label}")?;
    }
    Ok(())
}

fn certify(
    g_arg: &str,
    h_arg: &str,
    sets: &SetArgs,
    trace: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = parse_graph_arg(g_arg)?;
    let h = parse_graph_arg(h_arg)?;
    let p = ProductGraph::new(&g, &h)?;
    let (gamma_set, dom) = resolve_sets(&g, &p, sets)?;
    let mut tie = TieBreak::deterministic();
    let run = run_pipeline(&p, &gamma_set, &dom, &mut tie)?;

    // the independent route, when it fits the solve budget
    let gamma_product = gamma_exact_cancellable(
        p.graph(),
        &crate::sweep::Deadline::after(Duration::from_secs(10)),
    )
    .ok()
    .map(|s| s.size);

    if trace {
        write_stage(out, &p, "provisional", &run.provisional)?;
        write_stage(out, &p, "first refinement", &run.after_first)?;
        write_stage(out, &p, "second refinement", &run.after_second)?;
        write_stage(out, &p, "free-vertex relabeling", &run.final_state)?;
    }
    if json {
        let doc = report::pipeline_document_json(&p, &gamma_set, &dom, &run, gamma_product);
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        let cert = &run.certificate;
        writeln!(
            out,
            "gamma(G)={} gamma(H)={} |D|={} k={}",
            run.gamma_g,
            run.gamma_h,
            cert.d_size,
            run.cells.k()
        )?;
        if let Some(gp) = gamma_product {
            writeln!(
                out,
                "gamma(G [] H)={gp}: inequality {}",
                if gp >= run.gamma_g * run.gamma_h {
                    "holds"
                } else {
                    "VIOLATED"
                }
            )?;
        }
        writeln!(
            out,
            "all_single={} all_projections_dominate={} count_ok={}",
            cert.all_single, cert.all_projections_dominate, cert.count_ok
        )?;
        for a in cert.anomalies.iter().chain(&run.anomalies) {
            writeln!(out, "anomaly: {a}")?;
        }
    }
    Ok(if run.certificate.count_ok { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn sweep_cmd(
    max_ng: usize,
    max_nh: usize,
    all_gamma_sets: bool,
    all_dom_sets: bool,
    random_g: Option<usize>,
    random_h: Option<usize>,
    seed: u64,
    randomize_ties: bool,
    timeout_secs: u64,
    out_path: &std::path::Path,
    out: &mut dyn Write,
) -> Result<i32> {
    let cfg = SweepConfig {
        max_ng,
        max_nh,
        g_family: match random_g {
            Some(count) => GFamily::RandomConnectedCographs { count, seed },
            None => GFamily::AllConnectedCographs,
        },
        h_family: match random_h {
            Some(count) => HFamily::RandomConnected {
                count,
                seed: seed.wrapping_add(1),
            },
            None => HFamily::AllConnectedGraphs,
        },
        gamma_sets: if all_gamma_sets {
            Quantify::All
        } else {
            Quantify::First
        },
        dom_sets: if all_dom_sets {
            Quantify::All
        } else {
            Quantify::First
        },
        tie_break: if randomize_ties {
            TieBreakMode::Seeded(seed)
        } else {
            TieBreakMode::Deterministic
        },
        timeout: Duration::from_secs(timeout_secs),
    };
    let report = vizing_sweep(&cfg)?;
    let file = std::fs::File::create(out_path)
        .with_context(|| format!("creating report file {}", out_path.display()))?;
    report.write(std::io::BufWriter::new(file))?;
    writeln!(
        out,
        "swept {} instances: {} inequality violations, {} timeouts -> {}",
        report.rows.len(),
        report.inequality_violations,
        report.timeouts,
        out_path.display()
    )?;
    writeln!(out, "{}", report.aggregate)?;
    Ok(if report.inequality_violations > 0 {
        1
    } else {
        0
    })
}

fn audit_claim1(
    graph: &str,
    gamma_set: Option<&str>,
    all_gamma_sets: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = parse_graph_arg(graph)?;
    let gamma_sets: Vec<Vec<usize>> = match (gamma_set, all_gamma_sets) {
        (Some(text), _) => vec![parse_vertex_list(text)?],
        (None, true) => enumerate_min_jk_sets(&g, 1, 2)?
            .into_iter()
            .map(|s| s.to_vec())
            .collect(),
        (None, false) => vec![gamma_jk(&g, 1, 2).witness.to_vec()],
    };
    for gamma_set in &gamma_sets {
        let audits = audit_claim_external_all(&g, gamma_set).map_err(|e| anyhow::anyhow!("{e}"))?;
        let row = serde_json::json!({
            "g": to_graph6(&g),
            "gamma_set": gamma_set,
            "claim1": report::claim_one_block_json(&audits),
        });
        writeln!(out, "{row}")?;
    }
    Ok(0)
}

fn audit_claim2(g_arg: &str, h_arg: &str, sets: &SetArgs, out: &mut dyn Write) -> Result<i32> {
    let g = parse_graph_arg(g_arg)?;
    let h = parse_graph_arg(h_arg)?;
    let p = ProductGraph::new(&g, &h)?;
    let (gamma_set, dom) = resolve_sets(&g, &p, sets)?;
    let mut tie = TieBreak::deterministic();
    let run = run_pipeline(&p, &gamma_set, &dom, &mut tie)?;
    let row = serde_json::json!({
        "g": to_graph6(&g),
        "h": to_graph6(&h),
        "gamma_set": gamma_set,
        "dom_set": report::product_set_json(&p, &dom),
        "claim2": report::single_label_audit_json(&p, &run.single_label_audit),
    });
    writeln!(out, "{row}")?;
    Ok(0)
}
