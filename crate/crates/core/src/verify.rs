//! Batch invariant harness run by `lexpath verify` and the acceptance suite.
//!
//! Mandatory invariants must hold on every instance. Findings are measured
//! and reported but never fail a run: they record where the published
//! claims about the region after the latest path do not hold.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::bat::{find_xfc_correct, find_xfc_paper};
use crate::fixtures;
use crate::gen::{corpus, seeded_rng};
use crate::graph::{parse_network, Network};
use crate::oracle::{
    enumerate_simple_paths, is_simple_path_indicator, last_disconnected_greedy, oracle_extreme_path,
    oracle_first_connected, oracle_last_disconnected, region_census, reliability_exact, Objective,
};
use crate::pathfind::{earliest_path, latest_path};
use crate::weight::WeightScheme;

/// Agreement tolerance between pruned and unpruned reliability.
pub const PRUNE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    EarliestCoherence,
    BeforeEarliestDisconnected,
    EarliestWeightOptimal,
    LatestWeightOptimal,
    PathValidity,
    LastDisconnectedGreedy,
    NoSimplePathAfterMaxPath,
    ReliabilityPruning,
    PaperXfcConnected,
    // findings
    ClaimConnectedAfterLatest,
    ClaimNoSimplePathAfterLatest,
    PaperXfcDiverges,
    LatestDiffersFromMaxPath,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::EarliestCoherence,
        Check::BeforeEarliestDisconnected,
        Check::EarliestWeightOptimal,
        Check::LatestWeightOptimal,
        Check::PathValidity,
        Check::LastDisconnectedGreedy,
        Check::NoSimplePathAfterMaxPath,
        Check::ReliabilityPruning,
        Check::PaperXfcConnected,
        Check::ClaimConnectedAfterLatest,
        Check::ClaimNoSimplePathAfterLatest,
        Check::PaperXfcDiverges,
        Check::LatestDiffersFromMaxPath,
    ];

    pub fn mandatory(self) -> bool {
        !matches!(
            self,
            Check::ClaimConnectedAfterLatest
                | Check::ClaimNoSimplePathAfterLatest
                | Check::PaperXfcDiverges
                | Check::LatestDiffersFromMaxPath
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::EarliestCoherence => "earliest-coherence",
            Check::BeforeEarliestDisconnected => "before-earliest-disconnected",
            Check::EarliestWeightOptimal => "earliest-weight-optimal",
            Check::LatestWeightOptimal => "latest-weight-optimal",
            Check::PathValidity => "path-validity",
            Check::LastDisconnectedGreedy => "last-disconnected-greedy",
            Check::NoSimplePathAfterMaxPath => "no-simple-path-after-max-path",
            Check::ReliabilityPruning => "reliability-pruning",
            Check::PaperXfcConnected => "paper-xfc-connected",
            Check::ClaimConnectedAfterLatest => "claim-connected-after-latest",
            Check::ClaimNoSimplePathAfterLatest => "claim-no-simple-path-after-latest",
            Check::PaperXfcDiverges => "paper-xfc-diverges",
            Check::LatestDiffersFromMaxPath => "latest-differs-from-max-path",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub mandatory: bool,
    pub checked: usize,
    /// Instances where the invariant failed, or where the finding was observed.
    pub hits: usize,
    pub first_hit: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        !self.mandatory || self.hits == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub cases: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn outcome(&self, check: Check) -> &CheckOutcome {
        self.checks.iter().find(|c| c.name == check.name()).expect("every check is reported")
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} instances", self.cases)?;
        for c in &self.checks {
            let status = match (c.mandatory, c.hits) {
                (true, 0) => "PASS",
                (true, _) => "FAIL",
                (false, 0) => "not observed",
                (false, _) => "observed",
            };
            write!(f, "{:<36} {:<12} {}/{}", c.name, status, c.hits, c.checked)?;
            if let Some(w) = &c.first_hit {
                write!(f, "  first: {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "all mandatory invariants hold" } else { "mandatory invariant FAILED" })
    }
}

struct Tally {
    outcomes: Vec<CheckOutcome>,
}

impl Tally {
    fn new() -> Self {
        let outcomes = Check::ALL
            .iter()
            .map(|&c| CheckOutcome { name: c.name(), mandatory: c.mandatory(), checked: 0, hits: 0, first_hit: None })
            .collect();
        Self { outcomes }
    }

    fn record(&mut self, check: Check, hit: Option<String>, case: usize) {
        let o = &mut self.outcomes[Check::ALL.iter().position(|&c| c == check).unwrap()];
        o.checked += 1;
        if let Some(detail) = hit {
            o.hits += 1;
            o.first_hit.get_or_insert_with(|| format!("case {case}: {detail}"));
        }
    }
}

fn fail_if(cond: bool, detail: impl FnOnce() -> String) -> Option<String> {
    cond.then(detail)
}

/// Runs every check on each network. Networks must be source-sink connected
/// with `m <= 24`. Reliability probabilities are drawn per arc from
/// `{0.5, 0.9}` with `seed`.
pub fn verify_networks(networks: &[Network], seed: u64) -> VerifyReport {
    let mut tally = Tally::new();
    let mut rng = seeded_rng(seed ^ 0x005e_ed0f_9a0b);
    for (case, net) in networks.iter().enumerate() {
        let probs: Vec<f64> = (0..net.m()).map(|_| if rng.gen_bool(0.5) { 0.5 } else { 0.9 }).collect();
        check_instance(net, &probs, case, &mut tally);
    }
    VerifyReport { cases: networks.len(), checks: tally.outcomes }
}

/// Seeded random corpus, optionally preceded by the benchmark and diamond fixtures.
pub fn verify_corpus(seed: u64, cases: usize, include_fixtures: bool) -> VerifyReport {
    let mut networks = Vec::new();
    if include_fixtures {
        networks.push(parse_network(fixtures::BENCHMARK).unwrap());
        networks.push(parse_network(fixtures::DIAMOND).unwrap());
    }
    networks.extend(corpus(seed, cases));
    verify_networks(&networks, seed)
}

fn check_instance(net: &Network, probs: &[f64], case: usize, tally: &mut Tally) {
    let edge_list = || net.to_edge_list().replace('\n', "; ");
    let (Some(earliest), Some(latest)) = (earliest_path(net), latest_path(net)) else {
        tally.record(Check::PathValidity, Some(format!("no path found in {}", edge_list())), case);
        return;
    };
    let e_mask = earliest.vector.as_mask();

    let first = oracle_first_connected(net, false).unwrap();
    let correct = find_xfc_correct(net).unwrap();
    tally.record(
        Check::EarliestCoherence,
        fail_if(first.as_ref() != Some(&earliest.vector) || correct != earliest.vector, || {
            format!("dijkstra {} oracle {:?} greedy {} in {}", earliest.vector, first, correct, edge_list())
        }),
        case,
    );

    let connected_before = (0..e_mask).find(|&x| net.connected_mask(x));
    tally.record(
        Check::BeforeEarliestDisconnected,
        connected_before.map(|x| format!("connected value {x} precedes earliest {e_mask} in {}", edge_list())),
        case,
    );

    let o_early = oracle_extreme_path(net, Objective::MinEarliestWeight, false).unwrap().unwrap();
    tally.record(
        Check::EarliestWeightOptimal,
        fail_if(o_early.weight != earliest.weight || o_early.vector != earliest.vector, || {
            format!("dijkstra {} oracle {} in {}", earliest.weight, o_early.weight, edge_list())
        }),
        case,
    );
    let o_late = oracle_extreme_path(net, Objective::MinLatestWeight, false).unwrap().unwrap();
    tally.record(
        Check::LatestWeightOptimal,
        fail_if(o_late.weight != latest.weight || o_late.vector != latest.vector, || {
            format!("dijkstra {} oracle {} in {}", latest.weight, o_late.weight, edge_list())
        }),
        case,
    );

    let e_check = earliest.check(net, &WeightScheme::earliest(net.m()).unwrap());
    let l_check = latest.check(net, &WeightScheme::latest(net.m()).unwrap());
    tally.record(
        Check::PathValidity,
        e_check.and(l_check).err().map(|e| format!("{e} in {}", edge_list())),
        case,
    );

    let greedy = last_disconnected_greedy(net);
    let scanned = oracle_last_disconnected(net, false).unwrap();
    tally.record(
        Check::LastDisconnectedGreedy,
        fail_if(scanned.as_ref() != Some(&greedy), || format!("greedy {greedy} oracle {scanned:?} in {}", edge_list())),
        case,
    );

    let report = region_census(net, false).unwrap();
    let path_count = enumerate_simple_paths(net, false).unwrap().len() as u64;
    let census_paths = report.before.simple_paths + report.between.simple_paths + report.after.simple_paths;
    tally.record(
        Check::NoSimplePathAfterMaxPath,
        fail_if(report.simple_paths_after_max_path != 0 || census_paths != path_count, || {
            format!(
                "{} simple paths after max path; census {census_paths} vs dfs {path_count} in {}",
                report.simple_paths_after_max_path,
                edge_list()
            )
        }),
        case,
    );

    let full = reliability_exact(net, probs, false, false).unwrap();
    let pruned = reliability_exact(net, probs, true, false).unwrap();
    tally.record(
        Check::ReliabilityPruning,
        fail_if(
            (full.probability - pruned.probability).abs() > PRUNE_TOLERANCE || pruned.vectors_pruned != e_mask,
            || format!("full {} pruned {} ({} skipped) in {}", full.probability, pruned.probability, pruned.vectors_pruned, edge_list()),
        ),
        case,
    );

    let paper = find_xfc_paper(net).unwrap();
    tally.record(
        Check::PaperXfcConnected,
        fail_if(!net.connected_mask(paper.as_mask()), || format!("{paper} disconnected in {}", edge_list())),
        case,
    );

    tally.record(
        Check::ClaimConnectedAfterLatest,
        fail_if(report.violations.disconnected_after_latest > 0, || {
            format!(
                "{} disconnected after latest {}, last at {}",
                report.violations.disconnected_after_latest, report.latest_value, report.last_disconnected_value
            )
        }),
        case,
    );
    tally.record(
        Check::ClaimNoSimplePathAfterLatest,
        fail_if(report.violations.simple_paths_after_latest > 0, || {
            format!(
                "{} simple paths after latest {}, max at {}",
                report.violations.simple_paths_after_latest, report.latest_value, report.max_value_path_value
            )
        }),
        case,
    );
    tally.record(
        Check::PaperXfcDiverges,
        fail_if(paper != correct, || format!("greedy {paper} vs first connected {correct}")),
        case,
    );
    tally.record(
        Check::LatestDiffersFromMaxPath,
        fail_if(report.latest_vector != report.max_value_path_vector, || {
            format!("latest {} vs max-value path {}", report.latest_vector, report.max_value_path_vector)
        }),
        case,
    );
    debug_assert!(is_simple_path_indicator(net, e_mask));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_passes() {
        let r = verify_corpus(1, 0, false);
        assert_eq!(r.cases, 0);
        assert!(r.passed());
    }

    #[test]
    fn fixtures_pass_and_expose_findings() {
        let r = verify_corpus(3, 0, true);
        assert!(r.passed(), "{r}");
        assert_eq!(r.outcome(Check::ClaimConnectedAfterLatest).hits, 2);
        assert_eq!(r.outcome(Check::PaperXfcDiverges).hits, 2);
        assert_eq!(r.outcome(Check::LatestDiffersFromMaxPath).hits, 1);
        assert!(r.to_string().contains("earliest-coherence"));
    }
}
