//! Batch enumeration: every labeled graph on n vertices, classified.
//!
//! The sweep over all `2^C(n,2)` edge masks is the crate's main
//! data-parallel workload; entries come back in edge-mask order regardless
//! of the execution strategy.

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::graph::{graph_with_edge_mask, pair_count, pair_list, Graph};
use crate::space::{reisner_check, ClReport};

/// CLI-facing cap: the full sweep is exponential in `C(n,2)`.
pub const SURVEY_LIMIT: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct SurveyEntry {
    pub edge_mask: u64,
    pub edges: Vec<(usize, usize)>,
    pub passes: bool,
    /// Present only for passing graphs: whether every polynomial numerical
    /// index is one (edgeless graph, the ℓ∞ space).
    pub index_one: Option<bool>,
    #[serde(skip)]
    pub report: ClReport,
}

/// Runs `reisner_check` on every graph on `n` vertices (`n <= 5`).
pub fn enumerate_reisner(n: usize, execution: Execution) -> Result<Vec<SurveyEntry>> {
    if n == 0 || n > SURVEY_LIMIT {
        return Err(Error::InvalidInput(format!(
            "survey supports 1..={SURVEY_LIMIT} vertices, got {n}"
        )));
    }
    let pairs = pair_list(n);
    let total = 1u64 << pair_count(n);
    let entries = map_indexed(execution, total as usize, |mask| {
        let g = graph_with_edge_mask(n, mask as u64, &pairs);
        let report = reisner_check(&g).expect("survey sizes are within the perfectness limit");
        let passes = report.passes();
        SurveyEntry {
            edge_mask: mask as u64,
            edges: g.edges(),
            passes,
            index_one: passes.then(|| g.edge_count() == 0),
            report,
        }
    });
    Ok(entries)
}

/// Graphs that pass, materialized.
pub fn reisner_survivors(n: usize, execution: Execution) -> Result<Vec<Graph>> {
    let pairs = pair_list(n);
    Ok(enumerate_reisner(n, execution)?
        .into_iter()
        .filter(|e| e.passes)
        .map(|e| graph_with_edge_mask(n, e.edge_mask, &pairs))
        .collect())
}

pub fn survey_to_json(n: usize, entries: &[SurveyEntry]) -> Json {
    let passing: Vec<Json> = entries
        .iter()
        .filter(|e| e.passes)
        .map(|e| {
            json!({
                "edge_mask": e.edge_mask,
                "edges": e.edges,
                "index_one": e.index_one,
            })
        })
        .collect();
    json!({
        "n": n,
        "graph_count": entries.len(),
        "passing_count": passing.len(),
        "passing": passing,
    })
}
