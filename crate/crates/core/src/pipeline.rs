//! The two-phase solver: grid-driven reductions until no grid is found, then
//! the exact solver on what is left.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::graph::{edge_count_prefilter, Graph, Prefilter, VertexId};
use crate::hexgrid::{find_hex_subdivision, SearchBudget};
use crate::solver::{
    solve_exact_with, verify_solution, ApexOutcome, Justification, SolverLimits, Stats, Status,
};
use crate::treewidth::{heuristic_decompose, width_budget};
use crate::wellattached::{reduction_b, AttachmentScan};
use crate::zones::{layout_zones, reduction_a, ConstantsMode, ZoneScan, ZoneShape};

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub constants: ConstantsMode,
    pub search: SearchBudget,
    pub node_budget: u64,
    /// Wall-clock budget for the whole run.
    pub time_budget: Option<Duration>,
    /// Phase I iterations before handing the current graph to the exact solver.
    pub max_iterations: usize,
    /// Treewidth diagnostics are skipped above this many vertices.
    pub diagnose_limit: usize,
    /// Conclude infeasibility when no zone is flat and nothing is
    /// well-attached. Only honoured with paper constants; see the README.
    pub trust_no_flat_zone: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            constants: ConstantsMode::Paper,
            search: SearchBudget::default(),
            node_budget: SolverLimits::default().node_budget,
            time_budget: None,
            max_iterations: 64,
            diagnose_limit: 2_000,
            trust_no_flat_zone: false,
        }
    }
}

/// One entry of the Phase I log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum Event {
    Prefilter {
        rejected: bool,
    },
    Direct {
        k: usize,
    },
    GridFound {
        iteration: usize,
        radius: usize,
    },
    ReductionA {
        iteration: usize,
        zone: usize,
        removed: usize,
    },
    ReductionB {
        iteration: usize,
        forced: Vec<VertexId>,
    },
    NoGrid {
        iteration: usize,
    },
    Decomposition {
        width: Option<usize>,
        budget: usize,
    },
    Fallback {
        reason: String,
    },
    PhaseTwo {
        vertices: usize,
        k: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub outcome: ApexOutcome,
    pub log: Vec<Event>,
    pub elapsed_ms: u128,
}

struct Run<'a> {
    g: &'a Graph,
    k: usize,
    config: &'a PipelineConfig,
    deadline: Option<Instant>,
    log: Vec<Event>,
    stats: Stats,
}

pub fn run_pipeline(g: &Graph, k: usize, config: &PipelineConfig) -> PipelineReport {
    let start = Instant::now();
    let mut run = Run {
        g,
        k,
        config,
        deadline: config.time_budget.map(|d| start + d),
        log: Vec::new(),
        stats: Stats::default(),
    };
    let outcome = run.execute();
    PipelineReport {
        outcome,
        log: run.log,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

impl Run<'_> {
    fn limits(&self) -> SolverLimits {
        SolverLimits {
            node_budget: self.config.node_budget,
            deadline: self.deadline,
        }
    }

    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn finish(&mut self, mut out: ApexOutcome, forced: BTreeSet<VertexId>) -> ApexOutcome {
        self.stats.nodes += out.stats.nodes;
        out.stats = self.stats.clone();
        out.forced_set = forced;
        out
    }

    /// The exact solver on the original graph, used whenever a reduced-mode
    /// shortcut cannot be trusted.
    fn fallback(&mut self, reason: &str) -> ApexOutcome {
        log::debug!("fallback to the exact solver: {reason}");
        self.stats.fallbacks += 1;
        self.log.push(Event::Fallback {
            reason: reason.into(),
        });
        let out = solve_exact_with(self.g, self.k, self.limits());
        self.finish(out, BTreeSet::new())
    }

    fn execute(&mut self) -> ApexOutcome {
        let rejected = edge_count_prefilter(self.g, self.k) == Prefilter::Reject;
        self.log.push(Event::Prefilter { rejected });
        if rejected {
            return self.finish(
                ApexOutcome::infeasible(Justification::EdgeBound, Stats::default()),
                BTreeSet::new(),
            );
        }
        if self.k <= 1 {
            self.log.push(Event::Direct { k: self.k });
            let out = solve_exact_with(self.g, self.k, self.limits());
            return self.finish(out, BTreeSet::new());
        }
        let paper = self.config.constants == ConstantsMode::Paper;
        let shape = ZoneShape::for_k(self.k, self.config.constants);
        let radius = shape.host_radius();
        let mut current = self.g.clone();
        let mut forced = BTreeSet::new();
        let mut iteration = 0;
        loop {
            if self.expired() {
                return self.finish(ApexOutcome::resource_limit(Stats::default()), forced);
            }
            if iteration == self.config.max_iterations {
                self.log.push(Event::Fallback {
                    reason: format!("iteration cap {iteration} reached"),
                });
                break;
            }
            iteration += 1;
            self.stats.phase_one_iterations = iteration;
            let Some(host) = find_hex_subdivision(&current, radius, self.config.search) else {
                self.log.push(Event::NoGrid { iteration });
                if current.vertex_count() <= self.config.diagnose_limit {
                    let budget = width_budget(radius, self.k);
                    let width = heuristic_decompose(&current, budget).map(|td| td.width());
                    self.log.push(Event::Decomposition { width, budget });
                }
                break;
            };
            log::debug!("iteration {iteration}: grid of radius {radius} found");
            self.log.push(Event::GridFound { iteration, radius });
            let layout = layout_zones(&host, self.k, shape).expect("host radius matches the shape");
            let flat = ZoneScan::new(&current, &layout).first_flat().map(|z| z.id);
            if let Some(id) = flat {
                let next = reduction_a(&current, &layout, &layout.zones[id])
                    .expect("zone was checked flat");
                let removed = current.vertex_count() - next.vertex_count();
                self.log.push(Event::ReductionA {
                    iteration,
                    zone: id,
                    removed,
                });
                self.stats.reductions_a += 1;
                current = next;
                continue;
            }
            let witnesses = AttachmentScan::new(&current, &layout).all();
            if witnesses.is_empty() {
                if paper && self.config.trust_no_flat_zone {
                    let out = ApexOutcome::infeasible(
                        Justification::NoFlatZoneNoWellAttached,
                        Stats::default(),
                    );
                    return self.finish(out, forced);
                }
                self.log.push(Event::Fallback {
                    reason: "no flat zone and no well-attached vertex".into(),
                });
                break;
            }
            if forced.len() + witnesses.len() > self.k {
                if paper {
                    return self.finish(
                        ApexOutcome::infeasible(Justification::ForcedExceedsK, Stats::default()),
                        forced,
                    );
                }
                return self.fallback("forced vertices exceed k under reduced constants");
            }
            let next = reduction_b(&current, &layout, &witnesses).expect("witnesses were verified");
            let vertices: Vec<VertexId> = witnesses.iter().map(|w| w.vertex).collect();
            self.log.push(Event::ReductionB {
                iteration,
                forced: vertices.clone(),
            });
            self.stats.reductions_b += 1;
            forced.extend(vertices);
            current = next;
        }
        let rest = self.k - forced.len();
        log::debug!(
            "phase two on {} vertices with k = {rest}",
            current.vertex_count()
        );
        self.log.push(Event::PhaseTwo {
            vertices: current.vertex_count(),
            k: rest,
        });
        let out = solve_exact_with(&current, rest, self.limits());
        match out.status {
            Status::Feasible => {
                self.stats.nodes += out.stats.nodes;
                let mut x = out.apex_set.expect("feasible outcome has a set");
                x.extend(forced.iter().copied());
                if verify_solution(self.g, &x, self.k).unwrap_or(false) {
                    return self.finish(ApexOutcome::feasible(x, Stats::default()), forced);
                }
                self.fallback("combined set failed verification on the input")
            }
            Status::Infeasible if !forced.is_empty() && !paper => {
                self.stats.nodes += out.stats.nodes;
                self.fallback("reduced instance infeasible under reduced constants")
            }
            _ => self.finish(out, forced),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, disjoint_union, grid};

    #[test]
    fn planar_input_needs_no_phase_one() {
        let report = run_pipeline(&grid(5, 5), 0, &PipelineConfig::default());
        assert_eq!(report.outcome.apex_set, Some(BTreeSet::new()));
        assert_eq!(report.outcome.stats.phase_one_iterations, 0);
    }

    #[test]
    fn k5_next_to_a_grid() {
        let g = disjoint_union(&grid(10, 10), &complete(5));
        let report = run_pipeline(&g, 1, &PipelineConfig::default());
        let x = report.outcome.apex_set.unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.iter().all(|v| v.0 >= 100));
    }

    #[test]
    fn dense_input_hits_the_edge_bound() {
        let report = run_pipeline(&complete(12), 2, &PipelineConfig::default());
        assert_eq!(report.outcome.justification, Some(Justification::EdgeBound));
    }

    #[test]
    fn small_graphs_fall_through_to_the_solver() {
        let config = PipelineConfig {
            constants: ConstantsMode::Reduced,
            ..PipelineConfig::default()
        };
        let g = disjoint_union(&complete(6), &complete(5));
        let report = run_pipeline(&g, 3, &config);
        assert!(report.outcome.is_feasible());
        assert!(matches!(report.log[1], Event::NoGrid { iteration: 1 }));
        assert_eq!(
            run_pipeline(&g, 2, &config).outcome.status,
            Status::Infeasible
        );
    }

    #[test]
    fn deadline_is_a_resource_limit() {
        let config = PipelineConfig {
            time_budget: Some(Duration::ZERO),
            ..PipelineConfig::default()
        };
        let report = run_pipeline(&complete(9), 4, &config);
        assert_eq!(report.outcome.status, Status::ResourceLimit);
    }
}
