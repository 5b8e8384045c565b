//! Sweep campaigns: enumerate `(G, H)` families, solve each product
//! exactly, check the product inequality, and run the labeling pipeline
//! with its audits on every selected `(Γ, D)` pair.
//!
//! Workers process instances in parallel; rows are collected and written
//! in instance order, so a report body is a pure function of the config.
//! The header line carries the timestamp and is excluded from determinism
//! comparisons.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use domlab_core::bitset::VertexSet;
use domlab_core::domination::{
    enumerate_min_dominating_sets, enumerate_min_jk_sets, gamma_exact_cancellable, gamma_jk,
    Cancel, ENUMERATION_MAX_VERTICES,
};
use domlab_core::graph::Graph;
use domlab_core::labeling::{audit_claim_external_all, run_pipeline, Anomaly, TieBreak};
use domlab_core::product::{ProductGraph, DEFAULT_PRODUCT_CAP};

use crate::enumerate::{enumerate_connected_cographs, enumerate_connected_graphs};
use crate::families::{random_connected_cographs, random_connected_graphs};
use crate::report;

/// Caps for the exhaustive families.
pub const ALL_G_MAX: usize = 7;
pub const ALL_H_MAX: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GFamily {
    AllConnectedCographs,
    RandomConnectedCographs { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HFamily {
    AllConnectedGraphs,
    RandomConnected { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantify {
    First,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreakMode {
    Deterministic,
    Seeded(u64),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_ng: usize,
    pub max_nh: usize,
    pub g_family: GFamily,
    pub h_family: HFamily,
    pub gamma_sets: Quantify,
    pub dom_sets: Quantify,
    pub tie_break: TieBreakMode,
    /// Budget per exact solve, not per instance.
    pub timeout: Duration,
}

impl SweepConfig {
    pub fn exhaustive(max_ng: usize, max_nh: usize) -> Self {
        SweepConfig {
            max_ng,
            max_nh,
            g_family: GFamily::AllConnectedCographs,
            h_family: HFamily::AllConnectedGraphs,
            gamma_sets: Quantify::First,
            dom_sets: Quantify::First,
            tie_break: TieBreakMode::Deterministic,
            timeout: Duration::from_secs(10),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepError {
    GCapExceeded {
        max_ng: usize,
    },
    HCapExceeded {
        max_nh: usize,
    },
    ProductTooLarge {
        max_ng: usize,
        max_nh: usize,
    },
    /// Listing all minimum dominating sets of the product only works up to
    /// the enumeration guard.
    AllDomSetsTooLarge {
        product: usize,
    },
}

impl std::fmt::Display for SweepError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepError::GCapExceeded { max_ng } => {
                write!(f, "the exhaustive cograph family caps at {ALL_G_MAX} vertices, got {max_ng}")
            }
            SweepError::HCapExceeded { max_nh } => {
                write!(f, "the exhaustive graph family caps at {ALL_H_MAX} vertices, got {max_nh}")
            }
            SweepError::ProductTooLarge { max_ng, max_nh } => {
                write!(f, "{max_ng} x {max_nh} products exceed the {DEFAULT_PRODUCT_CAP}-vertex cap")
            }
            SweepError::AllDomSetsTooLarge { product } => write!(
                f,
                "quantifying over all minimum dominating sets needs products of at most {ENUMERATION_MAX_VERTICES} vertices, got {product}"
            ),
        }
    }
}

impl std::error::Error for SweepError {}

/// Wall-clock budget polled by the cancellable solvers.
pub struct Deadline {
    at: Instant,
}

impl Deadline {
    pub fn after(budget: Duration) -> Self {
        Deadline {
            at: Instant::now() + budget,
        }
    }
}

impl Cancel for Deadline {
    fn is_cancelled(&self) -> bool {
        Instant::now() >= self.at
    }
}

#[derive(Default, Clone)]
struct RowStats {
    timeout: bool,
    inequality_checked: bool,
    inequality_violation: bool,
    pipeline_runs: usize,
    all_single: usize,
    projections_ok: usize,
    count_ok: usize,
    soundness_failures: usize,
    claim1_gamma_sets: usize,
    claim1_not_applicable: usize,
    claim1_audits: usize,
    claim1_holds: usize,
    claim1_fails: usize,
    claim1_preamble_failures: usize,
    claim2_holds: usize,
    claim2_fails: usize,
    anomalies_no_free_vertex: usize,
    anomalies_surviving_pair: usize,
    anomalies_projection_gap: usize,
    anomalies_counting_failure: usize,
    anomalies_foreign_label: usize,
    errors: usize,
}

impl RowStats {
    fn absorb_anomaly(&mut self, a: &Anomaly) {
        match a {
            Anomaly::NoFreeVertex { .. } => self.anomalies_no_free_vertex += 1,
            Anomaly::SurvivingPair { .. } => self.anomalies_surviving_pair += 1,
            Anomaly::ProjectionGap { .. } => self.anomalies_projection_gap += 1,
            Anomaly::CountingFailure => self.anomalies_counting_failure += 1,
            Anomaly::ForeignDominatorLabel { .. } => self.anomalies_foreign_label += 1,
        }
    }
}

pub struct SweepReport {
    pub header: Value,
    pub rows: Vec<Value>,
    pub aggregate: Value,
    pub inequality_violations: usize,
    pub timeouts: usize,
}

impl SweepReport {
    /// Everything except the timestamped header, one JSON object per line.
    pub fn body(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out.push_str(&self.aggregate.to_string());
        out.push('\n');
        out
    }

    pub fn write<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.header)?;
        w.write_all(self.body().as_bytes())
    }
}

fn config_json(cfg: &SweepConfig) -> Value {
    json!({
        "max_ng": cfg.max_ng,
        "max_nh": cfg.max_nh,
        "g_family": match &cfg.g_family {
            GFamily::AllConnectedCographs => json!("all-connected-cographs"),
            GFamily::RandomConnectedCographs { count, seed } =>
                json!({"random-cographs": {"count": count, "seed": seed}}),
        },
        "h_family": match &cfg.h_family {
            HFamily::AllConnectedGraphs => json!("all-connected-graphs"),
            HFamily::RandomConnected { count, seed } =>
                json!({"random": {"count": count, "seed": seed}}),
        },
        "gamma_sets": if cfg.gamma_sets == Quantify::All { "all" } else { "first" },
        "dom_sets": if cfg.dom_sets == Quantify::All { "all" } else { "first" },
        "tie_break": match cfg.tie_break {
            TieBreakMode::Deterministic => json!("deterministic"),
            TieBreakMode::Seeded(seed) => json!({"seeded": seed}),
        },
        "timeout_secs": cfg.timeout.as_secs_f64(),
    })
}

fn build_g_family(cfg: &SweepConfig) -> Result<Vec<Graph>, SweepError> {
    match &cfg.g_family {
        GFamily::AllConnectedCographs => {
            if cfg.max_ng > ALL_G_MAX {
                return Err(SweepError::GCapExceeded { max_ng: cfg.max_ng });
            }
            let mut out = Vec::new();
            for n in 1..=cfg.max_ng {
                out.extend(enumerate_connected_cographs(n).expect("within cap"));
            }
            Ok(out)
        }
        GFamily::RandomConnectedCographs { count, seed } => {
            Ok(random_connected_cographs(*count, cfg.max_ng, *seed))
        }
    }
}

fn build_h_family(cfg: &SweepConfig) -> Result<Vec<Graph>, SweepError> {
    match &cfg.h_family {
        HFamily::AllConnectedGraphs => {
            if cfg.max_nh > ALL_H_MAX {
                return Err(SweepError::HCapExceeded { max_nh: cfg.max_nh });
            }
            let mut out = Vec::new();
            for n in 1..=cfg.max_nh {
                out.extend(enumerate_connected_graphs(n).expect("within cap"));
            }
            Ok(out)
        }
        HFamily::RandomConnected { count, seed } => {
            Ok(random_connected_graphs(*count, cfg.max_nh, *seed))
        }
    }
}

fn mix_seed(base: u64, a: u64, b: u64, c: u64) -> u64 {
    let mut x = base
        ^ a.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ b.wrapping_mul(0xbf58_476d_1ce4_e5b9)
        ^ c.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x
}

fn timeout_row(index: usize, g: &Graph, h: &Graph, stage: &str) -> Value {
    json!({
        "type": "instance",
        "index": index,
        "g": domlab_core::codec::to_graph6(g),
        "h": domlab_core::codec::to_graph6(h),
        "n_g": g.vertex_count(),
        "n_h": h.vertex_count(),
        "status": "timeout",
        "timed_out_solving": stage,
    })
}

fn run_instance(index: usize, g: &Graph, h: &Graph, cfg: &SweepConfig) -> (Value, RowStats) {
    let mut stats = RowStats::default();

    let gamma_g = match gamma_exact_cancellable(g, &Deadline::after(cfg.timeout)) {
        Ok(sol) => sol.size,
        Err(_) => {
            stats.timeout = true;
            return (timeout_row(index, g, h, "gamma_g"), stats);
        }
    };
    let gamma_h = match gamma_exact_cancellable(h, &Deadline::after(cfg.timeout)) {
        Ok(sol) => sol.size,
        Err(_) => {
            stats.timeout = true;
            return (timeout_row(index, g, h, "gamma_h"), stats);
        }
    };
    let product = ProductGraph::new(g, h).expect("validated against the product cap");
    let (gamma_product, first_dom) =
        match gamma_exact_cancellable(product.graph(), &Deadline::after(cfg.timeout)) {
            Ok(sol) => (sol.size, sol.witness),
            Err(_) => {
                stats.timeout = true;
                return (timeout_row(index, g, h, "gamma_product"), stats);
            }
        };

    let inequality_ok = gamma_product >= gamma_g * gamma_h;
    stats.inequality_checked = true;
    stats.inequality_violation = !inequality_ok;

    let gamma_sets: Vec<Vec<usize>> = match cfg.gamma_sets {
        Quantify::First => vec![gamma_jk(g, 1, 2).witness.to_vec()],
        Quantify::All => enumerate_min_jk_sets(g, 1, 2)
            .expect("factor within enumeration guard")
            .into_iter()
            .map(|s| s.to_vec())
            .collect(),
    };
    let dom_sets: Vec<VertexSet> = match cfg.dom_sets {
        Quantify::First => vec![first_dom],
        Quantify::All => {
            enumerate_min_dominating_sets(product.graph()).expect("validated against the guard")
        }
    };

    let mut gamma_blocks = Vec::new();
    for (gi, gamma_set) in gamma_sets.iter().enumerate() {
        stats.claim1_gamma_sets += 1;
        let claim1 = match audit_claim_external_all(g, gamma_set) {
            Ok(audits) => {
                if audits.is_empty() {
                    stats.claim1_not_applicable += 1;
                }
                for a in &audits {
                    stats.claim1_audits += 1;
                    if a.holds() {
                        stats.claim1_holds += 1;
                    } else {
                        stats.claim1_fails += 1;
                    }
                    if !a.preamble_nonempty {
                        stats.claim1_preamble_failures += 1;
                    }
                }
                report::claim_one_block_json(&audits)
            }
            Err(e) => {
                stats.errors += 1;
                json!({"claim": "claim1", "error": e.to_string()})
            }
        };

        let mut pipelines = Vec::new();
        for (di, dom) in dom_sets.iter().enumerate() {
            let mut tie = match cfg.tie_break {
                TieBreakMode::Deterministic => TieBreak::deterministic(),
                TieBreakMode::Seeded(seed) => {
                    TieBreak::seeded(mix_seed(seed, index as u64, gi as u64, di as u64))
                }
            };
            match run_pipeline(&product, gamma_set, dom, &mut tie) {
                Ok(run) => {
                    stats.pipeline_runs += 1;
                    let cert = &run.certificate;
                    if cert.all_single {
                        stats.all_single += 1;
                    }
                    if cert.all_projections_dominate {
                        stats.projections_ok += 1;
                    }
                    if cert.count_ok {
                        stats.count_ok += 1;
                    }
                    if cert.all_single && cert.all_projections_dominate && !cert.count_ok {
                        stats.soundness_failures += 1;
                    }
                    if run.single_label_audit.holds() {
                        stats.claim2_holds += 1;
                    } else {
                        stats.claim2_fails += 1;
                    }
                    for a in cert.anomalies.iter().chain(&run.anomalies) {
                        stats.absorb_anomaly(a);
                    }
                    pipelines.push(json!({
                        "dom_set": report::product_set_json(&product, dom),
                        "all_single": cert.all_single,
                        "all_projections_dominate": cert.all_projections_dominate,
                        "count_ok": cert.count_ok,
                        "claim2_holds": run.single_label_audit.holds(),
                        "anomalies": cert
                            .anomalies
                            .iter()
                            .chain(&run.anomalies)
                            .map(report::anomaly_json)
                            .collect::<Vec<_>>(),
                    }));
                }
                Err(e) => {
                    stats.errors += 1;
                    pipelines.push(json!({
                        "dom_set": report::product_set_json(&product, dom),
                        "error": e.to_string(),
                    }));
                }
            }
        }

        gamma_blocks.push(json!({
            "gamma_set": gamma_set,
            "claim1": claim1,
            "pipelines": pipelines,
        }));
    }

    let row = json!({
        "type": "instance",
        "index": index,
        "g": domlab_core::codec::to_graph6(g),
        "h": domlab_core::codec::to_graph6(h),
        "n_g": g.vertex_count(),
        "n_h": h.vertex_count(),
        "status": "ok",
        "gamma_g": gamma_g,
        "gamma_h": gamma_h,
        "gamma_product": gamma_product,
        "inequality_ok": inequality_ok,
        "gamma_sets": gamma_blocks,
    });
    (row, stats)
}

pub fn vizing_sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    if cfg.max_ng.saturating_mul(cfg.max_nh) > DEFAULT_PRODUCT_CAP {
        return Err(SweepError::ProductTooLarge {
            max_ng: cfg.max_ng,
            max_nh: cfg.max_nh,
        });
    }
    if cfg.dom_sets == Quantify::All
        && cfg.max_ng.saturating_mul(cfg.max_nh) > ENUMERATION_MAX_VERTICES
    {
        return Err(SweepError::AllDomSetsTooLarge {
            product: cfg.max_ng * cfg.max_nh,
        });
    }
    let g_family = build_g_family(cfg)?;
    let h_family = build_h_family(cfg)?;

    let instances: Vec<(usize, &Graph, &Graph)> = g_family
        .iter()
        .flat_map(|g| h_family.iter().map(move |h| (g, h)))
        .enumerate()
        .map(|(i, (g, h))| (i, g, h))
        .collect();

    let results: Vec<(Value, RowStats)> = instances
        .par_iter()
        .map(|&(i, g, h)| run_instance(i, g, h, cfg))
        .collect();

    let mut total = RowStats::default();
    let mut timeouts = 0;
    let mut violations = 0;
    let mut rows = Vec::with_capacity(results.len());
    for (row, stats) in results {
        rows.push(row);
        if stats.timeout {
            timeouts += 1;
        }
        if stats.inequality_violation {
            violations += 1;
        }
        total.pipeline_runs += stats.pipeline_runs;
        total.all_single += stats.all_single;
        total.projections_ok += stats.projections_ok;
        total.count_ok += stats.count_ok;
        total.soundness_failures += stats.soundness_failures;
        total.claim1_gamma_sets += stats.claim1_gamma_sets;
        total.claim1_not_applicable += stats.claim1_not_applicable;
        total.claim1_audits += stats.claim1_audits;
        total.claim1_holds += stats.claim1_holds;
        total.claim1_fails += stats.claim1_fails;
        total.claim1_preamble_failures += stats.claim1_preamble_failures;
        total.claim2_holds += stats.claim2_holds;
        total.claim2_fails += stats.claim2_fails;
        total.anomalies_no_free_vertex += stats.anomalies_no_free_vertex;
        total.anomalies_surviving_pair += stats.anomalies_surviving_pair;
        total.anomalies_projection_gap += stats.anomalies_projection_gap;
        total.anomalies_counting_failure += stats.anomalies_counting_failure;
        total.anomalies_foreign_label += stats.anomalies_foreign_label;
        total.errors += stats.errors;
    }

    let aggregate = json!({
        "type": "aggregate",
        "instances": rows.len(),
        "timeouts": timeouts,
        "inequality_violations": violations,
        "pipeline_runs": total.pipeline_runs,
        "pipeline_all_single": total.all_single,
        "pipeline_projections_ok": total.projections_ok,
        "pipeline_count_ok": total.count_ok,
        "soundness_failures": total.soundness_failures,
        "claim1": {
            "gamma_sets_audited": total.claim1_gamma_sets,
            "not_applicable": total.claim1_not_applicable,
            "audits": total.claim1_audits,
            "holds": total.claim1_holds,
            "fails": total.claim1_fails,
            "preamble_failures": total.claim1_preamble_failures,
        },
        "claim2": {
            "holds": total.claim2_holds,
            "fails": total.claim2_fails,
        },
        "anomalies": {
            "no_free_vertex": total.anomalies_no_free_vertex,
            "surviving_pair": total.anomalies_surviving_pair,
            "projection_gap": total.anomalies_projection_gap,
            "counting_failure": total.anomalies_counting_failure,
            "foreign_dominator_label": total.anomalies_foreign_label,
        },
        "errors": total.errors,
    });

    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let header = json!({
        "type": "header",
        "tool": "domlab",
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp_unix": timestamp,
        "config": config_json(cfg),
    });

    Ok(SweepReport {
        header,
        rows,
        aggregate,
        inequality_violations: violations,
        timeouts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_exhaustive_sweep_is_clean_and_deterministic() {
        let cfg = SweepConfig::exhaustive(3, 2);
        let a = vizing_sweep(&cfg).unwrap();
        assert_eq!(a.inequality_violations, 0);
        assert_eq!(a.timeouts, 0);
        // G ∈ {K1, K2, P3, K3}, H ∈ {K1, K2}
        assert_eq!(a.rows.len(), 8);
        for row in &a.rows {
            assert_eq!(row["status"], "ok");
            assert_eq!(row["inequality_ok"], true);
        }
        let b = vizing_sweep(&cfg).unwrap();
        assert_eq!(a.body(), b.body());
    }

    #[test]
    fn k1_only_family() {
        let cfg = SweepConfig::exhaustive(1, 2);
        let report = vizing_sweep(&cfg).unwrap();
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            assert_eq!(row["gamma_g"], 1);
            assert_eq!(row["inequality_ok"], true);
            // k = 1: every pipeline labels everything with the single label
            for block in row["gamma_sets"].as_array().unwrap() {
                for p in block["pipelines"].as_array().unwrap() {
                    assert_eq!(p["all_single"], true);
                    assert_eq!(p["count_ok"], true);
                }
            }
        }
    }

    #[test]
    fn config_caps_are_enforced() {
        assert_eq!(
            vizing_sweep(&SweepConfig::exhaustive(8, 2)).err(),
            Some(SweepError::GCapExceeded { max_ng: 8 })
        );
        assert_eq!(
            vizing_sweep(&SweepConfig::exhaustive(2, 6)).err(),
            Some(SweepError::HCapExceeded { max_nh: 6 })
        );
        let mut cfg = SweepConfig::exhaustive(7, 5);
        cfg.dom_sets = Quantify::All;
        assert_eq!(
            vizing_sweep(&cfg).err(),
            Some(SweepError::AllDomSetsTooLarge { product: 35 })
        );
    }

    #[test]
    fn random_families_are_reproducible() {
        let cfg = SweepConfig {
            max_ng: 4,
            max_nh: 3,
            g_family: GFamily::RandomConnectedCographs { count: 5, seed: 9 },
            h_family: HFamily::RandomConnected { count: 3, seed: 10 },
            gamma_sets: Quantify::First,
            dom_sets: Quantify::First,
            tie_break: TieBreakMode::Seeded(42),
            timeout: Duration::from_secs(10),
        };
        let a = vizing_sweep(&cfg).unwrap();
        let b = vizing_sweep(&cfg).unwrap();
        assert_eq!(a.rows.len(), 15);
        assert_eq!(a.body(), b.body());
        assert_eq!(a.inequality_violations, 0);
    }
}
