//! Dijkstra over exact power-of-two arc weights.
//!
//! Every arc weighs a distinct power of two, so the weight of a simple path is
//! the bitwise union of its arcs and two different arc sets can never tie.
//! Under the earliest scheme the minimum-weight path is therefore the one
//! whose indicator vector comes first in BAT order.

use std::cmp::Ordering;

use serde::Serialize;

use crate::graph::{ArcId, Network};
use crate::state::StateVector;
use crate::weight::{LexWeight, Magnitude, WeightScheme};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    pub nodes: Vec<usize>,
    pub arc_ids: Vec<ArcId>,
    pub vector: StateVector,
    pub weight: LexWeight,
}

impl PathResult {
    pub fn arc_indices(&self) -> Vec<usize> {
        self.arc_ids.iter().map(|a| a.get()).collect()
    }

    /// Checks that this is a simple source-sink path of `net` whose vector and
    /// weight agree with its arcs under `scheme`.
    pub fn check(&self, net: &Network, scheme: &WeightScheme) -> Result<(), String> {
        if self.nodes.first() != Some(&net.source()) || self.nodes.last() != Some(&net.sink()) {
            return Err(format!("path {:?} does not run from source to sink", self.nodes));
        }
        if self.arc_ids.len() + 1 != self.nodes.len() {
            return Err("node and arc counts disagree".into());
        }
        let mut seen = vec![false; net.n() + 1];
        for &v in &self.nodes {
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("node {v} repeats"));
            }
        }
        let mut expected = Magnitude::zero();
        for (step, &id) in self.nodes.windows(2).zip(&self.arc_ids) {
            let arc = net.arc(id).ok_or_else(|| format!("unknown arc {id}"))?;
            let joins = (arc.u == step[0] && arc.v == step[1]) || (arc.u == step[1] && arc.v == step[0]);
            if !joins {
                return Err(format!("arc {id} does not join {} and {}", step[0], step[1]));
            }
            let bit = scheme.bit_of_arc(id).map_err(|e| e.to_string())?;
            if expected.bit(bit) {
                return Err(format!("arc {id} repeats"));
            }
            expected.add_pow2(bit);
        }
        if self.weight != LexWeight::Finite(expected) {
            return Err(format!("weight {} is not the sum of the arc weights", self.weight));
        }
        let indicator = StateVector::from_arcs(self.arc_indices(), net.m());
        if self.vector != indicator {
            return Err(format!("vector {} is not the arc indicator {}", self.vector, indicator));
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct PathJson {
    nodes: Vec<usize>,
    arcs: Vec<usize>,
    vector: String,
    weight: WeightJson,
}

/// JSON form of a weight: decimal string plus bit string (bit 0 first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct WeightJson {
    pub decimal: String,
    pub binary: String,
}

impl WeightJson {
    pub fn new(weight: &LexWeight, width: usize) -> Self {
        Self { decimal: weight.to_decimal(), binary: weight.to_bit_string(width) }
    }
}

impl PathResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PathJson {
            nodes: self.nodes.clone(),
            arcs: self.arc_indices(),
            vector: self.vector.to_string(),
            weight: WeightJson::new(&self.weight, self.vector.len()),
        })
        .expect("path serialises")
    }
}

/// Binary heap over node indices keyed by `dist`, with decrease-key.
/// Equal keys fall back to the lower node index.
struct NodeHeap {
    heap: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl NodeHeap {
    fn new(n: usize) -> Self {
        Self { heap: Vec::new(), pos: vec![None; n + 1] }
    }

    fn less(dist: &[Option<Magnitude>], a: usize, b: usize) -> bool {
        let ka = dist[a].as_ref().expect("queued nodes have finite distance");
        let kb = dist[b].as_ref().expect("queued nodes have finite distance");
        match ka.cmp(kb) {
            Ordering::Equal => a < b,
            ord => ord == Ordering::Less,
        }
    }

    fn push_or_decrease(&mut self, node: usize, dist: &[Option<Magnitude>]) {
        let i = match self.pos[node] {
            Some(i) => i,
            None => {
                self.heap.push(node);
                self.pos[node] = Some(self.heap.len() - 1);
                self.heap.len() - 1
            }
        };
        self.sift_up(i, dist);
    }

    fn pop(&mut self, dist: &[Option<Magnitude>]) -> Option<usize> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap.swap_remove(0);
        self.pos[top] = None;
        if !self.heap.is_empty() {
            self.pos[self.heap[0]] = Some(0);
            self.sift_down(0, dist);
        }
        Some(top)
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i]] = Some(i);
        self.pos[self.heap[j]] = Some(j);
    }

    fn sift_up(&mut self, mut i: usize, dist: &[Option<Magnitude>]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::less(dist, self.heap[i], self.heap[parent]) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize, dist: &[Option<Magnitude>]) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && Self::less(dist, self.heap[l], self.heap[best]) {
                best = l;
            }
            if r < self.heap.len() && Self::less(dist, self.heap[r], self.heap[best]) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }
}

/// Minimum-weight source-sink path under `scheme`, or `None` when the sink is
/// unreachable. The main loop stops as soon as the sink is settled.
pub fn binary_dijkstra(net: &Network, scheme: &WeightScheme) -> Result<Option<PathResult>, Error> {
    if scheme.m() != net.m() {
        return Err(Error::LengthMismatch { expected: net.m(), found: scheme.m() });
    }
    let bits: Vec<usize> = net
        .arcs()
        .iter()
        .map(|a| scheme.bit_of_arc(a.id))
        .collect::<Result<_, _>>()?;

    let n = net.n();
    let mut dist: Vec<Option<Magnitude>> = vec![None; n + 1];
    // prev[v] = (predecessor node, zero-based arc index)
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    let mut heap = NodeHeap::new(n);

    dist[net.source()] = Some(Magnitude::zero());
    heap.push_or_decrease(net.source(), &dist);

    let mut reached = false;
    while let Some(u) = heap.pop(&dist) {
        if u == net.sink() {
            reached = true;
            break;
        }
        for &(v, k) in net.neighbours(u) {
            let du = dist[u].as_ref().expect("settled node has a distance");
            let improves = match &dist[v] {
                None => true,
                Some(dv) => {
                    let ord = du.cmp_plus_pow2(bits[k], dv);
                    debug_assert_ne!(ord, Ordering::Equal, "distinct arc sets tied at node {v}");
                    ord == Ordering::Less
                }
            };
            if improves {
                let mut alt = du.clone();
                alt.add_pow2(bits[k]);
                dist[v] = Some(alt);
                prev[v] = Some((u, k));
                heap.push_or_decrease(v, &dist);
            }
        }
    }
    if !reached {
        return Ok(None);
    }

    let mut nodes = vec![net.sink()];
    let mut arc_ids = Vec::new();
    let mut current = net.sink();
    while let Some((p, k)) = prev[current] {
        nodes.push(p);
        arc_ids.push(ArcId::from_zero_based(k));
        current = p;
    }
    nodes.reverse();
    arc_ids.reverse();
    let vector = StateVector::from_arcs(arc_ids.iter().map(|a| a.get()), net.m());
    let weight = LexWeight::Finite(dist[net.sink()].take().expect("sink settled"));
    Ok(Some(PathResult { nodes, arc_ids, vector, weight }))
}

/// The simple path whose indicator vector is first in BAT order.
pub fn earliest_path(net: &Network) -> Option<PathResult> {
    let scheme = WeightScheme::earliest(net.m()).ok()?;
    binary_dijkstra(net, &scheme).expect("scheme sized to network")
}

/// The simple path minimising `Σ 2^(m-i)`: Dijkstra under index-reversed weights.
pub fn latest_path(net: &Network) -> Option<PathResult> {
    let scheme = WeightScheme::latest(net.m()).ok()?;
    binary_dijkstra(net, &scheme).expect("scheme sized to network")
}
