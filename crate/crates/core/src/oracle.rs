//! Brute-force ground truth for desk-scale networks (`m <= 24` by default).
//!
//! Everything here works on `u64` arc masks (bit `k` is arc `a_{k+1}`), whose
//! ascending numeric order is the BAT order. None of it goes through the
//! Dijkstra code it is used to check, except where a boundary vector is
//! explicitly taken from it (the census and pruned reliability).

use serde::Serialize;

use crate::bat::{bat_enumerate, check_cap};
use crate::graph::{ArcId, Network};
use crate::pathfind::{earliest_path, latest_path, PathResult, WeightJson};
use crate::state::StateVector;
use crate::weight::LexWeight;
use crate::Error;

/// One simple source-sink path found by depth-first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePath {
    pub nodes: Vec<usize>,
    /// Zero-based arc mask; equals the earliest-scheme weight.
    pub mask: u64,
    pub m: usize,
}

impl SimplePath {
    pub fn arcs(&self) -> Vec<usize> {
        (0..self.m).filter(|k| (self.mask >> k) & 1 == 1).map(|k| k + 1).collect()
    }

    pub fn earliest_weight(&self) -> u64 {
        self.mask
    }

    /// `Σ 2^(m-i)` over the path's arcs: the mask with its bit order reversed.
    pub fn latest_weight(&self) -> u64 {
        (0..self.m)
            .filter(|k| (self.mask >> k) & 1 == 1)
            .map(|k| 1u64 << (self.m - 1 - k))
            .sum()
    }

    pub fn vector(&self) -> StateVector {
        StateVector::from_mask(self.mask, self.m)
    }

    fn into_result(self, net: &Network, weight: u64) -> PathResult {
        let arc_ids = self
            .nodes
            .windows(2)
            .map(|w| {
                let (_, k) = net.neighbours(w[0]).iter().find(|(v, _)| *v == w[1]).copied().unwrap();
                ArcId::new(k + 1).unwrap()
            })
            .collect();
        PathResult { vector: self.vector(), nodes: self.nodes, arc_ids, weight: LexWeight::from(weight) }
    }
}

/// Every simple source-sink path, in depth-first discovery order.
pub fn enumerate_simple_paths(net: &Network, force: bool) -> Result<Vec<SimplePath>, Error> {
    check_cap(net.m(), force)?;
    let mut out = Vec::new();
    let mut on_path = vec![false; net.n() + 1];
    let mut nodes = vec![net.source()];
    on_path[net.source()] = true;
    dfs(net, net.source(), 0, &mut on_path, &mut nodes, &mut out);
    Ok(out)
}

fn dfs(net: &Network, u: usize, mask: u64, on_path: &mut [bool], nodes: &mut Vec<usize>, out: &mut Vec<SimplePath>) {
    if u == net.sink() {
        out.push(SimplePath { nodes: nodes.clone(), mask, m: net.m() });
        return;
    }
    for &(v, k) in net.neighbours(u) {
        if on_path[v] {
            continue;
        }
        on_path[v] = true;
        nodes.push(v);
        dfs(net, v, mask | (1 << k), on_path, nodes, out);
        nodes.pop();
        on_path[v] = false;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Minimise `Σ 2^(i-1)`.
    MinEarliestWeight,
    /// Minimise `Σ 2^(m-i)`.
    MinLatestWeight,
    /// Maximise `Σ 2^(i-1)`: the BAT-last simple-path vector.
    MaxVectorValue,
}

/// Scans all simple paths for the unique optimum of `objective`. The returned
/// weight is the latest-scheme sum for `MinLatestWeight`, otherwise the
/// vector value.
pub fn oracle_extreme_path(net: &Network, objective: Objective, force: bool) -> Result<Option<PathResult>, Error> {
    let paths = enumerate_simple_paths(net, force)?;
    let best = match objective {
        Objective::MinEarliestWeight => paths.into_iter().min_by_key(|p| p.earliest_weight()),
        Objective::MinLatestWeight => paths.into_iter().min_by_key(|p| p.latest_weight()),
        Objective::MaxVectorValue => paths.into_iter().max_by_key(|p| p.earliest_weight()),
    };
    Ok(best.map(|p| {
        let w = match objective {
            Objective::MinLatestWeight => p.latest_weight(),
            _ => p.earliest_weight(),
        };
        p.into_result(net, w)
    }))
}

/// First connected vector by exhaustive BAT scan.
pub fn oracle_first_connected(net: &Network, force: bool) -> Result<Option<StateVector>, Error> {
    Ok(bat_enumerate(net.m(), force)?.find(|x| net.reaches_sink(|k| x.get(k))))
}

/// BAT-last disconnected vector by exhaustive scan.
pub fn oracle_last_disconnected(net: &Network, force: bool) -> Result<Option<StateVector>, Error> {
    Ok(bat_enumerate(net.m(), force)?
        .filter(|x| !net.reaches_sink(|k| x.get(k)))
        .last())
}

/// BAT-last disconnected vector in `m` connectivity probes.
///
/// Disconnection is closed under removing arcs, so fixing bits from `a_m`
/// downward and keeping each arc whenever the network stays disconnected
/// (lower arcs failed) yields the maximum.
pub fn last_disconnected_greedy(net: &Network) -> StateVector {
    let mut x = StateVector::zeros(net.m());
    for j in (0..net.m()).rev() {
        x.set(j, true);
        if net.reaches_sink(|k| x.get(k)) {
            x.set(j, false);
        }
    }
    x
}

/// True iff the working arcs of `mask` form exactly one simple source-sink path.
pub fn is_simple_path_indicator(net: &Network, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let working = |k: usize| (mask >> k) & 1 == 1;
    let degree = |v: usize| net.neighbours(v).iter().filter(|(_, k)| working(*k)).count();
    if degree(net.source()) != 1 || degree(net.sink()) != 1 {
        return false;
    }
    if (1..=net.n()).any(|v| v != net.source() && v != net.sink() && !matches!(degree(v), 0 | 2)) {
        return false;
    }
    // Walk from the source; every arc must be on the walk.
    let mut used = 0u64;
    let mut u = net.source();
    while u != net.sink() {
        let Some(&(v, k)) = net.neighbours(u).iter().find(|(_, k)| working(*k) && (used >> k) & 1 == 0) else {
            return false;
        };
        used |= 1 << k;
        u = v;
    }
    used == mask
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RegionCounts {
    pub total: u64,
    pub connected: u64,
    pub disconnected: u64,
    pub simple_paths: u64,
}

impl RegionCounts {
    fn record(&mut self, connected: bool, simple_path: bool) {
        self.total += 1;
        if connected {
            self.connected += 1;
        } else {
            self.disconnected += 1;
        }
        if simple_path {
            self.simple_paths += 1;
        }
    }

    fn merge(&mut self, other: &RegionCounts) {
        self.total += other.total;
        self.connected += other.connected;
        self.disconnected += other.disconnected;
        self.simple_paths += other.simple_paths;
    }
}

/// Counts that contradict the two claims about vectors after the latest path.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Violations {
    /// Disconnected vectors after the latest-path vector ("always connected" claim).
    pub disconnected_after_latest: u64,
    /// Simple-path vectors after the latest-path vector ("no simple paths" claim).
    pub simple_paths_after_latest: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionReport {
    pub m: usize,
    pub earliest_vector: StateVector,
    pub earliest_value: LexWeight,
    pub latest_vector: StateVector,
    pub latest_value: LexWeight,
    pub last_disconnected_vector: StateVector,
    pub last_disconnected_value: LexWeight,
    pub max_value_path_vector: StateVector,
    pub max_value_path_value: LexWeight,
    pub before: RegionCounts,
    pub between: RegionCounts,
    pub after: RegionCounts,
    pub violations: Violations,
    /// Simple-path vectors strictly after the max-value path vector; always 0.
    pub simple_paths_after_max_path: u64,
}

#[derive(Serialize)]
struct VectorJson {
    vector: String,
    value: WeightJson,
}

#[derive(Serialize)]
struct RegionsJson {
    before_earliest: RegionCounts,
    between: RegionCounts,
    after_latest: RegionCounts,
}

#[derive(Serialize)]
struct RegionReportJson {
    earliest: VectorJson,
    latest: VectorJson,
    last_disconnected: VectorJson,
    max_value_path: VectorJson,
    regions: RegionsJson,
    violations: Violations,
    simple_paths_after_max_path: u64,
}

impl RegionReport {
    pub fn to_json(&self) -> serde_json::Value {
        let v = |x: &StateVector, w: &LexWeight| VectorJson { vector: x.to_string(), value: WeightJson::new(w, self.m) };
        serde_json::to_value(RegionReportJson {
            earliest: v(&self.earliest_vector, &self.earliest_value),
            latest: v(&self.latest_vector, &self.latest_value),
            last_disconnected: v(&self.last_disconnected_vector, &self.last_disconnected_value),
            max_value_path: v(&self.max_value_path_vector, &self.max_value_path_value),
            regions: RegionsJson { before_earliest: self.before, between: self.between, after_latest: self.after },
            violations: self.violations,
            simple_paths_after_max_path: self.simple_paths_after_max_path,
        })
        .expect("report serialises")
    }
}

/// Census of all `2^m` vectors split at the earliest and latest path vectors
/// (both from Dijkstra). The region between includes both boundaries.
pub fn region_census(net: &Network, force: bool) -> Result<RegionReport, Error> {
    check_cap(net.m(), force)?;
    let m = net.m();
    let earliest = earliest_path(net).ok_or(Error::NoPath)?;
    let latest = latest_path(net).ok_or(Error::NoPath)?;
    let e = earliest.vector.as_mask();
    let l = latest.vector.as_mask();
    let max_path = oracle_extreme_path(net, Objective::MaxVectorValue, force)?.ok_or(Error::NoPath)?;
    let max_mask = max_path.vector.as_mask();

    let mut before = RegionCounts::default();
    let mut between = RegionCounts::default();
    let mut after = RegionCounts::default();
    let mut last_disconnected = 0u64;
    let mut simple_paths_after_max_path = 0;
    for mask in 0..(1u64 << m) {
        let connected = net.connected_mask(mask);
        let simple = connected && is_simple_path_indicator(net, mask);
        if !connected {
            last_disconnected = mask;
        }
        if simple && mask > max_mask {
            simple_paths_after_max_path += 1;
        }
        let region = if mask < e {
            &mut before
        } else if mask <= l {
            &mut between
        } else {
            &mut after
        };
        region.record(connected, simple);
    }

    let mut check = before;
    check.merge(&between);
    check.merge(&after);
    debug_assert_eq!(check.total, 1u64 << m);

    Ok(RegionReport {
        m,
        earliest_value: LexWeight::from(e),
        earliest_vector: earliest.vector,
        latest_value: LexWeight::from(l),
        latest_vector: latest.vector,
        last_disconnected_vector: StateVector::from_mask(last_disconnected, m),
        last_disconnected_value: LexWeight::from(last_disconnected),
        max_value_path_value: LexWeight::from(max_mask),
        max_value_path_vector: max_path.vector,
        before,
        between,
        violations: Violations {
            disconnected_after_latest: after.disconnected,
            simple_paths_after_latest: after.simple_paths,
        },
        after,
        simple_paths_after_max_path,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReliabilityResult {
    pub probability: f64,
    pub vectors_evaluated: u64,
    pub vectors_pruned: u64,
}

/// Exact two-terminal reliability by summing the probability mass of every
/// connected vector in BAT order.
///
/// With `prune`, the vectors before the earliest path vector are skipped:
/// none of them is connected. When no path exists at all, every vector is
/// pruned.
pub fn reliability_exact(net: &Network, probs: &[f64], prune: bool, force: bool) -> Result<ReliabilityResult, Error> {
    check_cap(net.m(), force)?;
    let m = net.m();
    if probs.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: probs.len() });
    }
    if let Some((k, &p)) = probs.iter().enumerate().find(|(_, p)| !(0.0..=1.0).contains(*p)) {
        return Err(Error::ProbabilityOutOfRange { arc: k + 1, value: p });
    }
    let total = 1u64 << m;
    let start = if prune {
        earliest_path(net).map_or(total, |p| p.vector.as_mask())
    } else {
        0
    };

    let mut probability = 0.0;
    for mask in start..total {
        if net.connected_mask(mask) {
            probability += (0..m)
                .map(|k| if (mask >> k) & 1 == 1 { probs[k] } else { 1.0 - probs[k] })
                .product::<f64>();
        }
    }
    Ok(ReliabilityResult {
        probability: probability.clamp(0.0, 1.0),
        vectors_evaluated: total - start,
        vectors_pruned: start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::parse_network;

    fn net(text: &str) -> Network {
        parse_network(text).unwrap()
    }

    #[test]
    fn benchmark_simple_paths() {
        let paths = enumerate_simple_paths(&net(fixtures::BENCHMARK), false).unwrap();
        let mut routes: Vec<Vec<usize>> = paths.iter().map(|p| p.nodes.clone()).collect();
        routes.sort();
        assert_eq!(
            routes,
            vec![
                vec![1, 2, 4, 5, 6],
                vec![1, 2, 4, 6],
                vec![1, 2, 5, 4, 6],
                vec![1, 2, 5, 6],
                vec![1, 3, 5, 2, 4, 6],
                vec![1, 3, 5, 4, 6],
                vec![1, 3, 5, 6],
            ]
        );
        assert_eq!(enumerate_simple_paths(&net(fixtures::DIAMOND), false).unwrap().len(), 2);
        assert_eq!(enumerate_simple_paths(&net(fixtures::SINGLE_EDGE), false).unwrap().len(), 1);
        assert!(enumerate_simple_paths(&net(fixtures::DISCONNECTED), false).unwrap().is_empty());
    }

    #[test]
    fn benchmark_extremes() {
        let b = net(fixtures::BENCHMARK);
        let e = oracle_extreme_path(&b, Objective::MinEarliestWeight, false).unwrap().unwrap();
        assert_eq!((e.arc_indices(), e.weight), (vec![1, 3, 7], LexWeight::from(69)));
        let l = oracle_extreme_path(&b, Objective::MinLatestWeight, false).unwrap().unwrap();
        assert_eq!((l.arc_indices(), l.weight), (vec![2, 5, 8], LexWeight::from(73)));
        let x = oracle_extreme_path(&b, Objective::MaxVectorValue, false).unwrap().unwrap();
        assert_eq!((x.arc_indices(), x.weight), (vec![1, 3, 6, 8], LexWeight::from(165)));
        assert_eq!(x.nodes, vec![1, 2, 4, 5, 6]);
        assert!(oracle_extreme_path(&net(fixtures::DISCONNECTED), Objective::MinEarliestWeight, false)
            .unwrap()
            .is_none());
    }

    #[test]
    fn first_connected_and_last_disconnected() {
        let sv = |s: &str| Some(s.parse::<StateVector>().unwrap());
        let b = net(fixtures::BENCHMARK);
        let d = net(fixtures::DIAMOND);
        let s = net(fixtures::SINGLE_EDGE);
        assert_eq!(oracle_first_connected(&b, false).unwrap(), sv("10100010"));
        assert_eq!(oracle_first_connected(&d, false).unwrap(), sv("1010"));
        assert_eq!(oracle_first_connected(&s, false).unwrap(), sv("1"));
        assert_eq!(oracle_first_connected(&net(fixtures::DISCONNECTED), false).unwrap(), None);

        assert_eq!(oracle_last_disconnected(&d, false).unwrap(), sv("0011"));
        assert_eq!(oracle_last_disconnected(&b, false).unwrap(), sv("00111111"));
        assert_eq!(oracle_last_disconnected(&s, false).unwrap(), sv("0"));
        assert_eq!(last_disconnected_greedy(&d), "0011".parse().unwrap());
        assert_eq!(last_disconnected_greedy(&b), "00111111".parse().unwrap());
        assert_eq!(last_disconnected_greedy(&s), "0".parse().unwrap());
    }

    #[test]
    fn simple_path_indicator_matches_enumeration() {
        for text in [fixtures::BENCHMARK, fixtures::DIAMOND, fixtures::SINGLE_EDGE] {
            let g = net(text);
            let mut expected: Vec<u64> = enumerate_simple_paths(&g, false).unwrap().iter().map(|p| p.mask).collect();
            expected.sort();
            let found: Vec<u64> = (0..1u64 << g.m()).filter(|&x| is_simple_path_indicator(&g, x)).collect();
            assert_eq!(found, expected);
        }
    }

    #[test]
    fn census_diamond() {
        let r = region_census(&net(fixtures::DIAMOND), false).unwrap();
        assert_eq!(r.earliest_value, LexWeight::from(5));
        assert_eq!(r.latest_value, LexWeight::from(10));
        assert_eq!(r.before, RegionCounts { total: 5, connected: 0, disconnected: 5, simple_paths: 0 });
        assert_eq!(r.last_disconnected_value, LexWeight::from(12));
        // after value 10: only 12 = {a3, a4} is disconnected
        assert_eq!(r.after.total, 5);
        assert_eq!(r.violations.disconnected_after_latest, 1);
        assert_eq!(r.violations.simple_paths_after_latest, 0);
        assert_eq!(r.before.total + r.between.total + r.after.total, 16);
        assert_eq!(r.simple_paths_after_max_path, 0);
    }

    #[test]
    fn census_benchmark() {
        let r = region_census(&net(fixtures::BENCHMARK), false).unwrap();
        assert_eq!(r.before.connected, 0);
        assert_eq!(r.before.total, 69);
        assert_eq!(r.latest_value, LexWeight::from(146));
        assert_eq!(r.last_disconnected_value, LexWeight::from(252));
        assert!(r.violations.disconnected_after_latest >= 1);
        assert_eq!(r.max_value_path_value, LexWeight::from(165));
        // 1-2-4-5-6 (165) comes after the latest vector (146)
        assert!(r.violations.simple_paths_after_latest >= 1);
        assert_eq!(r.simple_paths_after_max_path, 0);
    }

    #[test]
    fn census_single_edge() {
        let r = region_census(&net(fixtures::SINGLE_EDGE), false).unwrap();
        assert_eq!(r.before, RegionCounts { total: 1, connected: 0, disconnected: 1, simple_paths: 0 });
        assert_eq!(r.between, RegionCounts { total: 1, connected: 1, disconnected: 0, simple_paths: 1 });
        assert_eq!(r.after.total, 0);
        assert_eq!(r.violations, Violations::default());
    }

    #[test]
    fn census_errors() {
        assert!(matches!(region_census(&net(fixtures::DISCONNECTED), false), Err(Error::NoPath)));
    }

    #[test]
    fn reliability_fixtures() {
        let d = net(fixtures::DIAMOND);
        let r = reliability_exact(&d, &[0.5; 4], false, false).unwrap();
        assert!((r.probability - 0.4375).abs() < 1e-15);
        assert_eq!((r.vectors_evaluated, r.vectors_pruned), (16, 0));
        let pruned = reliability_exact(&d, &[0.5; 4], true, false).unwrap();
        assert_eq!(pruned.probability, r.probability);
        assert_eq!((pruned.vectors_evaluated, pruned.vectors_pruned), (11, 5));

        let s = net(fixtures::SINGLE_EDGE);
        assert!((reliability_exact(&s, &[0.9], true, false).unwrap().probability - 0.9).abs() < 1e-15);

        let b = net(fixtures::BENCHMARK);
        let full = reliability_exact(&b, &[0.5; 8], false, false).unwrap();
        let fast = reliability_exact(&b, &[0.5; 8], true, false).unwrap();
        assert!((full.probability - fast.probability).abs() < 1e-12);
        assert_eq!(fast.vectors_pruned, 69);
        assert_eq!(fast.vectors_evaluated + fast.vectors_pruned, 256);
    }

    #[test]
    fn reliability_errors_and_no_path() {
        let d = net(fixtures::DIAMOND);
        assert!(matches!(reliability_exact(&d, &[0.5; 3], false, false), Err(Error::LengthMismatch { .. })));
        assert!(matches!(
            reliability_exact(&d, &[0.5, 0.5, 1.2, 0.5], false, false),
            Err(Error::ProbabilityOutOfRange { arc: 3, .. })
        ));
        let split = net(fixtures::DISCONNECTED);
        let r = reliability_exact(&split, &[0.5; 2], true, false).unwrap();
        assert_eq!((r.probability, r.vectors_pruned, r.vectors_evaluated), (0.0, 4, 0));
    }

    #[test]
    fn caps_apply() {
        let pairs: Vec<(usize, usize)> = (1..=25).map(|v| (v, v + 1)).collect();
        let long = Network::new(26, 1, 26, &pairs).unwrap();
        assert!(matches!(enumerate_simple_paths(&long, false), Err(Error::CapExceeded { .. })));
        assert!(matches!(region_census(&long, false), Err(Error::CapExceeded { .. })));
        assert_eq!(enumerate_simple_paths(&long, true).unwrap().len(), 1);
    }
}
