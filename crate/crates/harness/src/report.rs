//! JSON schemas for solutions, partitions, certificates, and audits.
//!
//! Conventions, used consistently across every surface:
//!
//! - vertex ids are 0-based integers; product vertices appear as `[g, h]`
//!   coordinate arrays;
//! - cell indices and labels are 1-based and rendered as strings, `"1"`
//!   for a single label and `"1,2"` for a pair, including as map keys;
//! - maps are emitted in sorted key order, so identical inputs serialize
//!   byte-identically.

use serde_json::{json, Map, Value};

use domlab_core::bitset::VertexSet;
use domlab_core::domination::{CellPartition, DomKind, DomSolution};
use domlab_core::labeling::{
    Anomaly, Certificate, ExternalAudit, Label, LabelEvent, LabelRule, LabelState, PipelineRun,
    SingleLabelAudit,
};
use domlab_core::product::{FiberStatus, ProductGraph};

pub fn vertex_set_json(s: &VertexSet) -> Value {
    Value::Array(s.iter().map(|v| json!(v)).collect())
}

fn cell_key(i: usize) -> String {
    format!("{}", i + 1)
}

fn shared_key(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|&i| cell_key(i)).collect();
    parts.join(",")
}

fn label_string(label: Label) -> String {
    format!("{label}")
}

pub fn dom_solution_json(sol: &DomSolution) -> Value {
    match sol.kind {
        DomKind::Plain => json!({
            "gamma": sol.size,
            "witness": vertex_set_json(&sol.witness),
        }),
        DomKind::Range { j, k } => json!({
            "gamma_jk": sol.size,
            "j": j,
            "k": k,
            "witness": vertex_set_json(&sol.witness),
        }),
    }
}

pub fn cell_partition_json(cells: &CellPartition) -> Value {
    let mut private = Map::new();
    let mut cell_map = Map::new();
    for i in 0..cells.k() {
        private.insert(cell_key(i), vertex_set_json(cells.private(i)));
        cell_map.insert(cell_key(i), vertex_set_json(cells.cell(i)));
    }
    let mut shared = Map::new();
    for (key, members) in cells.shared_classes() {
        shared.insert(shared_key(key), vertex_set_json(members));
    }
    json!({
        "gamma_set": cells.gamma_set(),
        "private": private,
        "shared": shared,
        "cells": cell_map,
    })
}

pub fn coordinate(product: &ProductGraph, vertex: usize) -> Value {
    let (g, h) = product.decode(vertex);
    json!([g, h])
}

pub fn product_set_json(product: &ProductGraph, s: &VertexSet) -> Value {
    Value::Array(s.iter().map(|v| coordinate(product, v)).collect())
}

pub fn fiber_status_json(status: &FiberStatus) -> Value {
    json!({
        "h": status.h,
        "dom_slice": vertex_set_json(&status.dom_slice),
        "undominated_cells": status.undominated.iter().map(|&i| cell_key(i)).collect::<Vec<_>>(),
    })
}

fn rule_name(rule: LabelRule) -> &'static str {
    match rule {
        LabelRule::InCell => "in_cell",
        LabelRule::SharedBothUndominated => "shared_both_undominated",
        LabelRule::SharedOneUndominated => "shared_one_undominated",
        LabelRule::SharedNoneUndominated => "shared_none_undominated",
        LabelRule::FirstRefinement => "first_refinement",
        LabelRule::PairChain => "pair_chain",
        LabelRule::PairAbsorbed => "pair_absorbed",
        LabelRule::FreeVertex => "free_vertex",
    }
}

pub fn label_event_json(product: &ProductGraph, e: &LabelEvent) -> Value {
    json!({
        "vertex": coordinate(product, e.vertex),
        "fiber": e.fiber,
        "old": e.old.map(label_string),
        "new": label_string(e.new),
        "rule": rule_name(e.rule),
    })
}

pub fn label_table_json(product: &ProductGraph, state: &LabelState) -> Value {
    Value::Array(
        state
            .iter()
            .map(|(v, label)| {
                json!({
                    "vertex": coordinate(product, v),
                    "label": label_string(label),
                })
            })
            .collect(),
    )
}

pub fn anomaly_json(anomaly: &Anomaly) -> Value {
    match anomaly {
        Anomaly::NoFreeVertex { fiber, cell } => json!({
            "kind": "no_free_vertex",
            "fiber": fiber,
            "cell": cell_key(*cell),
        }),
        Anomaly::SurvivingPair {
            vertex,
            fiber,
            labels,
        } => json!({
            "kind": "surviving_pair",
            "vertex": vertex,
            "fiber": fiber,
            "labels": shared_key(&[labels.0, labels.1]),
        }),
        Anomaly::ProjectionGap { label } => json!({
            "kind": "projection_gap",
            "label": cell_key(*label),
        }),
        Anomaly::CountingFailure => json!({ "kind": "counting_failure" }),
        Anomaly::ForeignDominatorLabel { vertex, fiber } => json!({
            "kind": "foreign_dominator_label",
            "vertex": vertex,
            "fiber": fiber,
        }),
    }
}

pub fn certificate_json(cert: &Certificate) -> Value {
    let mut projections = Map::new();
    for (i, p) in cert.projections.iter().enumerate() {
        projections.insert(cell_key(i), vertex_set_json(p));
    }
    json!({
        "all_single": cert.all_single,
        "all_projections_dominate": cert.all_projections_dominate,
        "count_ok": cert.count_ok,
        "d_size": cert.d_size,
        "gamma_g": cert.gamma_g,
        "gamma_h": cert.gamma_h,
        "projections": projections,
        "anomalies": cert.anomalies.iter().map(anomaly_json).collect::<Vec<_>>(),
    })
}

pub fn external_audit_json(audit: &ExternalAudit) -> Value {
    json!({
        "claim": "claim1",
        "u": audit.u,
        "anchors": [cell_key(audit.anchors.0), cell_key(audit.anchors.1)],
        "preamble_nonempty": audit.preamble_nonempty,
        "outcome": if audit.holds() { "holds-with-witness" } else { "fails-with-counterexample" },
        "witness": audit.witness,
    })
}

/// The claim-1 block for one `(G, Γ)` pair; an empty audit list means no
/// vertex qualifies, reported as not-applicable.
pub fn claim_one_block_json(audits: &[ExternalAudit]) -> Value {
    if audits.is_empty() {
        json!({
            "claim": "claim1",
            "outcome": "not-applicable",
            "audits": [],
        })
    } else {
        json!({
            "claim": "claim1",
            "outcome": if audits.iter().all(ExternalAudit::holds) { "holds-with-witness" } else { "fails-with-counterexample" },
            "audits": audits.iter().map(external_audit_json).collect::<Vec<_>>(),
        })
    }
}

pub fn single_label_audit_json(product: &ProductGraph, audit: &SingleLabelAudit) -> Value {
    json!({
        "claim": "claim2",
        "outcome": if audit.holds() { "holds-with-witness" } else { "fails-with-counterexample" },
        "surviving": audit
            .surviving
            .iter()
            .map(|s| {
                json!({
                    "vertex": coordinate(product, s.vertex),
                    "fiber": s.fiber,
                    "labels": shared_key(&[s.labels.0, s.labels.1]),
                    "history": s.history.iter().map(|e| label_event_json(product, e)).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// The full document for one pipeline run: instance header, cell data,
/// fiber statuses, per-stage label tables, history, certificate, audit.
pub fn pipeline_document_json(
    product: &ProductGraph,
    gamma_set: &[usize],
    dom: &VertexSet,
    run: &PipelineRun,
    gamma_product: Option<usize>,
) -> Value {
    json!({
        "g": domlab_core::codec::to_graph6(product.factor_g()),
        "h": domlab_core::codec::to_graph6(product.factor_h()),
        "gamma_set": gamma_set,
        "dom_set": product_set_json(product, dom),
        "gamma_g": run.gamma_g,
        "gamma_h": run.gamma_h,
        "gamma_product": gamma_product,
        "cells": cell_partition_json(&run.cells),
        "fibers": run.fibers.iter().map(fiber_status_json).collect::<Vec<_>>(),
        "stages": {
            "provisional": label_table_json(product, &run.provisional),
            "first_refinement": label_table_json(product, &run.after_first),
            "second_refinement": label_table_json(product, &run.after_second),
            "free_vertex": label_table_json(product, &run.final_state),
        },
        "history": run
            .final_state
            .history()
            .iter()
            .map(|e| label_event_json(product, e))
            .collect::<Vec<_>>(),
        "certificate": certificate_json(&run.certificate),
        "claim2": single_label_audit_json(product, &run.single_label_audit),
        "anomalies": run.anomalies.iter().map(anomaly_json).collect::<Vec<_>>(),
    })
}
