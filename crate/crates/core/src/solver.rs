//! Exact k-apex decision by branching on Kuratowski subdivisions, plus the
//! brute-force oracle and the solution checker.
//!
//! Every apex set must hit every `K5`/`K3,3` subdivision, so deleting each
//! vertex of one witness in turn and recursing with budget `k - 1` is
//! exhaustive. Connected components are solved separately (their optima add
//! up), pendant trees are peeled first, and each component is deepened from a
//! lower bound given by greedily packed vertex-disjoint witnesses.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{ApexError, Result};
use crate::graph::{Graph, VertexId};
use crate::planarity::{find_kuratowski, is_planar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Feasible,
    Infeasible,
    ResourceLimit,
}

/// Why an instance was declared infeasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    EdgeBound,
    ForcedExceedsK,
    NoFlatZoneNoWellAttached,
    ExhaustedSearch,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Branch nodes explored by the exact solver.
    pub nodes: u64,
    pub phase_one_iterations: usize,
    pub reductions_a: usize,
    pub reductions_b: usize,
    pub fallbacks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexOutcome {
    pub status: Status,
    /// Present iff feasible.
    pub apex_set: Option<BTreeSet<VertexId>>,
    /// Vertices forced by well-attachment before the final solve.
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub forced_set: BTreeSet<VertexId>,
    /// Present iff infeasible.
    pub justification: Option<Justification>,
    pub stats: Stats,
}

impl ApexOutcome {
    pub fn feasible(apex_set: BTreeSet<VertexId>, stats: Stats) -> Self {
        ApexOutcome {
            status: Status::Feasible,
            apex_set: Some(apex_set),
            forced_set: BTreeSet::new(),
            justification: None,
            stats,
        }
    }

    pub fn infeasible(why: Justification, stats: Stats) -> Self {
        ApexOutcome {
            status: Status::Infeasible,
            apex_set: None,
            forced_set: BTreeSet::new(),
            justification: Some(why),
            stats,
        }
    }

    pub fn resource_limit(stats: Stats) -> Self {
        ApexOutcome {
            status: Status::ResourceLimit,
            apex_set: None,
            forced_set: BTreeSet::new(),
            justification: None,
            stats,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }
}

/// Limits for [`solve_exact_with`]. Hitting either yields
/// [`Status::ResourceLimit`], never a verdict.
#[derive(Clone, Copy, Debug)]
pub struct SolverLimits {
    pub node_budget: u64,
    pub deadline: Option<Instant>,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            node_budget: 2_000_000,
            deadline: None,
        }
    }
}

pub fn solve_exact(g: &Graph, k: usize) -> ApexOutcome {
    solve_exact_with(g, k, SolverLimits::default())
}

pub fn solve_exact_with(g: &Graph, k: usize, limits: SolverLimits) -> ApexOutcome {
    let mut nodes = 0;
    let result = solve_components(g, k, limits, &mut nodes);
    let stats = Stats {
        nodes,
        ..Stats::default()
    };
    match result {
        Ok(Some(x)) => ApexOutcome::feasible(x, stats),
        Ok(None) => ApexOutcome::infeasible(Justification::ExhaustedSearch, stats),
        Err(OutOfBudget) => ApexOutcome::resource_limit(stats),
    }
}

struct OutOfBudget;

fn solve_components(
    g: &Graph,
    k: usize,
    limits: SolverLimits,
    nodes: &mut u64,
) -> Result<Option<BTreeSet<VertexId>>, OutOfBudget> {
    let core = peel(g);
    let mut parts = Vec::new();
    for comp in core.connected_components() {
        let sub = core.induced(&comp.into_iter().collect());
        if !is_planar(&sub) {
            let lb = disjoint_witnesses(&sub);
            parts.push((sub, lb));
        }
    }
    let mut spare = match parts.iter().map(|p| p.1).sum::<usize>() {
        s if s > k => return Ok(None),
        s => k - s,
    };
    let mut answer = BTreeSet::new();
    for (sub, lb) in parts {
        let mut found = None;
        for budget in lb..=lb + spare {
            let mut search = Search {
                g: &sub,
                limits,
                nodes,
                failed: HashSet::new(),
            };
            if let Some(x) = search.dfs(&mut Vec::new(), budget)? {
                found = Some(x);
                break;
            }
        }
        let x = match found {
            Some(x) => x,
            None => return Ok(None),
        };
        spare -= x.len() - lb.min(x.len());
        answer.extend(x);
    }
    Ok(Some(answer))
}

/// Removes vertices of degree at most one until none remain; they never
/// matter for planarity.
fn peel(g: &Graph) -> Graph {
    let mut g = g.clone();
    loop {
        let low: BTreeSet<VertexId> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        if low.is_empty() {
            return g;
        }
        g = g.without(&low);
    }
}

/// Number of greedily found vertex-disjoint Kuratowski subdivisions.
fn disjoint_witnesses(g: &Graph) -> usize {
    let mut h = g.clone();
    let mut count = 0;
    while let Some(w) = find_kuratowski(&h) {
        count += 1;
        h = h.without(&w.vertices().into_iter().collect());
    }
    count
}

struct Search<'a> {
    g: &'a Graph,
    limits: SolverLimits,
    nodes: &'a mut u64,
    /// Sorted deletion sets with no completion within the budget.
    failed: HashSet<Vec<VertexId>>,
}

impl Search<'_> {
    /// A superset of a failed set fails too: its completions would complete
    /// the subset. Subsets are enumerated only for small sets.
    fn dominated(&self, key: &[VertexId]) -> bool {
        if key.len() > 12 {
            return self.failed.contains(key);
        }
        (0u32..1 << key.len()).any(|mask| {
            let sub: Vec<VertexId> = (0..key.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| key[i])
                .collect();
            self.failed.contains(&sub)
        })
    }

    fn dfs(
        &mut self,
        deleted: &mut Vec<VertexId>,
        budget: usize,
    ) -> Result<Option<BTreeSet<VertexId>>, OutOfBudget> {
        *self.nodes += 1;
        if *self.nodes > self.limits.node_budget
            || self.limits.deadline.is_some_and(|d| Instant::now() >= d)
        {
            return Err(OutOfBudget);
        }
        let mut key = deleted.clone();
        key.sort_unstable();
        if self.dominated(&key) {
            return Ok(None);
        }
        let set: BTreeSet<VertexId> = key.iter().copied().collect();
        let current = self.g.without(&set);
        let witness = match find_kuratowski(&current) {
            None => return Ok(Some(set)),
            Some(w) => w,
        };
        debug_assert_eq!(witness.validate(&current), Ok(()));
        if budget > 0 {
            let mut order = witness.vertices();
            order.sort_by_key(|&v| (std::cmp::Reverse(current.degree(v)), v));
            for v in order {
                deleted.push(v);
                let found = self.dfs(deleted, budget - 1);
                deleted.pop();
                if let Some(x) = found? {
                    return Ok(Some(x));
                }
            }
        }
        self.failed.insert(key);
        Ok(None)
    }
}

/// Default cap on the number of subsets the oracle may test.
pub const ORACLE_LIMIT: u128 = 5_000_000;

pub fn brute_force_oracle(g: &Graph, k: usize) -> Result<ApexOutcome> {
    brute_force_oracle_with_limit(g, k, ORACLE_LIMIT)
}

/// Tries every vertex subset of size at most `k`, smallest sizes first and
/// lexicographically within a size; returns the first that leaves a planar graph.
pub fn brute_force_oracle_with_limit(g: &Graph, k: usize, limit: u128) -> Result<ApexOutcome> {
    let n = g.vertex_count();
    let k = k.min(n);
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=k {
        if i > 0 {
            binom = binom * (n - i + 1) as u128 / i as u128;
        }
        total += binom;
    }
    if total > limit {
        return Err(ApexError::ResourceLimit(format!(
            "{total} subsets exceed the oracle limit {limit}"
        )));
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut tried = 0;
    for size in 0..=k {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            let x: BTreeSet<VertexId> = idx.iter().map(|&i| ids[i]).collect();
            if is_planar(&g.without(&x)) {
                return Ok(ApexOutcome::feasible(
                    x,
                    Stats {
                        nodes: tried,
                        ..Stats::default()
                    },
                ));
            }
            // Next combination in lexicographic order.
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(ApexOutcome::infeasible(
        Justification::ExhaustedSearch,
        Stats {
            nodes: tried,
            ..Stats::default()
        },
    ))
}

/// `|x| <= k` and `g - x` is planar. Fails if `x` is not a subset of `V(g)`.
pub fn verify_solution(g: &Graph, x: &BTreeSet<VertexId>, k: usize) -> Result<bool> {
    let rest = g.delete_vertices(x)?;
    Ok(x.len() <= k && is_planar(&rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, complete_bipartite, disjoint_union, grid};

    fn check(g: &Graph, k: usize, feasible: bool) {
        let out = solve_exact(g, k);
        assert_eq!(out.is_feasible(), feasible, "k = {k}");
        if let Some(x) = &out.apex_set {
            assert!(verify_solution(g, x, k).unwrap());
        } else {
            assert_eq!(out.justification, Some(Justification::ExhaustedSearch));
        }
        assert_eq!(brute_force_oracle(g, k).unwrap().is_feasible(), feasible);
    }

    #[test]
    fn small_named_graphs() {
        check(&grid(4, 4), 0, true);
        check(&complete(5), 0, false);
        check(&complete(5), 1, true);
        check(&complete(6), 1, false);
        check(&complete(6), 2, true);
        check(&complete(7), 2, false);
        check(&complete(7), 3, true);
        check(&complete_bipartite(3, 3), 1, true);
        let two = disjoint_union(&complete(5), &complete(5));
        check(&two, 1, false);
        check(&two, 2, true);
        check(&complete_bipartite(3, 5), 1, true);
        check(&complete_bipartite(4, 4), 1, false);
        check(&complete_bipartite(4, 4), 2, true);
    }

    #[test]
    fn planar_answer_is_empty() {
        let out = solve_exact(&grid(6, 6), 2);
        assert_eq!(out.apex_set, Some(BTreeSet::new()));
    }

    #[test]
    fn budget_exhaustion_is_not_infeasible() {
        let limits = SolverLimits {
            node_budget: 3,
            deadline: None,
        };
        let out = solve_exact_with(&complete(8), 3, limits);
        assert_eq!(out.status, Status::ResourceLimit);
        assert!(out.apex_set.is_none() && out.justification.is_none());
    }

    #[test]
    fn oracle_limit_and_domain_errors() {
        assert!(matches!(
            brute_force_oracle_with_limit(&complete(20), 5, 1000),
            Err(ApexError::ResourceLimit(_))
        ));
        let x: BTreeSet<VertexId> = [VertexId(99)].into();
        assert!(matches!(
            verify_solution(&complete(5), &x, 1),
            Err(ApexError::Domain(_))
        ));
        assert!(!verify_solution(&complete(5), &BTreeSet::new(), 1).unwrap());
        assert!(verify_solution(&complete(5), &[VertexId(0)].into(), 1).unwrap());
        assert!(!verify_solution(&complete(6), &[VertexId(0), VertexId(1)].into(), 1).unwrap());
    }

    #[test]
    fn oracle_picks_lexicographically_first() {
        let out = brute_force_oracle(&complete(6), 2).unwrap();
        assert_eq!(out.apex_set, Some([VertexId(0), VertexId(1)].into()));
    }

    #[test]
    fn outcome_json_uses_kebab_case() {
        let s = serde_json::to_string(&ApexOutcome::infeasible(
            Justification::ForcedExceedsK,
            Stats::default(),
        ))
        .unwrap();
        assert!(s.contains("\"infeasible\"") && s.contains("\"forced-exceeds-k\""));
    }
}
