//! Serialized shapes of the CLI output. The solve report follows
//! `docs/solve-report.schema.json`.

use std::io::{self, Write};
use std::time::Duration;

use apex_core::zones::ZoneReport;
use apex_core::{ApexOutcome, Justification, Status, VertexId};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveReport {
    pub status: Status,
    /// Sorted; `null` unless feasible.
    pub apex_set: Option<Vec<VertexId>>,
    pub forced_set: Vec<VertexId>,
    pub justification: Option<Justification>,
    pub stats: ReportStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportStats {
    pub iterations: usize,
    pub reductions_a: usize,
    pub reductions_b: usize,
    pub solver_nodes: u64,
    pub wall_ms: u64,
}

impl SolveReport {
    pub fn new(outcome: &ApexOutcome, elapsed: Duration) -> Self {
        SolveReport {
            status: outcome.status,
            apex_set: outcome
                .apex_set
                .as_ref()
                .map(|x| x.iter().copied().collect()),
            forced_set: outcome.forced_set.iter().copied().collect(),
            justification: outcome.justification,
            stats: ReportStats {
                iterations: outcome.stats.phase_one_iterations,
                reductions_a: outcome.stats.reductions_a,
                reductions_b: outcome.stats.reductions_b,
                solver_nodes: outcome.stats.nodes,
                wall_ms: elapsed.as_millis() as u64,
            },
        }
    }

    pub fn write_text<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let status = match self.status {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
            Status::ResourceLimit => "resource limit reached",
        };
        writeln!(out, "status: {status}")?;
        if let Some(x) = &self.apex_set {
            writeln!(out, "apex set ({}): {}", x.len(), join(x))?;
        }
        if !self.forced_set.is_empty() {
            writeln!(out, "forced: {}", join(&self.forced_set))?;
        }
        if let Some(j) = self.justification {
            let why = match j {
                Justification::EdgeBound => "too many edges for any k-apex graph",
                Justification::ForcedExceedsK => "more than k vertices are forced",
                Justification::NoFlatZoneNoWellAttached => {
                    "no flat zone and no well-attached vertex"
                }
                Justification::ExhaustedSearch => "exhaustive search found no apex set",
            };
            writeln!(out, "reason: {why}")?;
        }
        let s = &self.stats;
        writeln!(
            out,
            "iterations: {}, reductions: {} A / {} B, solver nodes: {}, time: {} ms",
            s.iterations, s.reductions_a, s.reductions_b, s.solver_nodes, s.wall_ms
        )
    }
}

fn join(ids: &[VertexId]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub planar: bool,
    pub prefilter_rejects: bool,
    pub host_radius: usize,
    pub grid_found: bool,
    pub zones: Vec<ZoneReport>,
    pub well_attached: Vec<VertexId>,
}

impl GraphStats {
    pub fn write_text<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(
            out,
            "{} vertices, {} edges, {} components, {}",
            self.vertices,
            self.edges,
            self.components,
            if self.planar { "planar" } else { "not planar" }
        )?;
        if self.prefilter_rejects {
            writeln!(out, "edge count rules out every apex set of size k")?;
        }
        if !self.grid_found {
            return writeln!(out, "no host grid of radius {} found", self.host_radius);
        }
        writeln!(out, "host grid of radius {} found", self.host_radius)?;
        for z in &self.zones {
            writeln!(
                out,
                "zone {}: {}, {} edge / {} cell / {} other components",
                z.id,
                if z.flat {
                    "flat"
                } else if z.open {
                    "open"
                } else {
                    "closed, not flat"
                },
                z.edge_components,
                z.cell_components,
                z.other_components
            )?;
        }
        writeln!(out, "well-attached: {}", join(&self.well_attached))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn report_round_trips() {
        let outcome = ApexOutcome::feasible(
            BTreeSet::from([VertexId(4), VertexId(1)]),
            apex_core::Stats::default(),
        );
        let report = SolveReport::new(&outcome, Duration::from_millis(12));
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains(r#""apex_set":[1,4]"#), "{text}");
        assert_eq!(serde_json::from_str::<SolveReport>(&text).unwrap(), report);
    }

    #[test]
    fn text_names_the_reason() {
        let outcome =
            ApexOutcome::infeasible(Justification::ExhaustedSearch, apex_core::Stats::default());
        let mut buf = Vec::new();
        SolveReport::new(&outcome, Duration::ZERO)
            .write_text(&mut buf)
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("status: infeasible\n"));
        assert!(text.contains("exhaustive search"));
    }
}
