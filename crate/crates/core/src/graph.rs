//! Undirected two-terminal networks with one-based, densely indexed arcs.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::num::NonZeroUsize;

use crate::state::StateVector;
use crate::Error;

/// One-based arc index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(NonZeroUsize);

impl ArcId {
    pub fn new(index: usize) -> Option<Self> {
        NonZeroUsize::new(index).map(ArcId)
    }

    pub fn get(self) -> usize {
        self.0.get()
    }

    pub(crate) fn from_zero_based(i: usize) -> Self {
        ArcId(NonZeroUsize::new(i + 1).unwrap())
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub u: usize,
    pub v: usize,
}

impl Arc {
    /// The endpoint opposite `node`.
    pub fn other(&self, node: usize) -> usize {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    n: usize,
    arcs: Vec<Arc>,
    probabilities: Vec<f64>,
    source: usize,
    sink: usize,
    // adjacency[v] = (neighbour, zero-based arc index); slot 0 unused
    adjacency: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// Source cannot reach sink even with every arc working.
    NotConnected { source: usize, sink: usize },
    IsolatedNode(usize),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NotConnected { source, sink } => {
                write!(f, "source {source} cannot reach sink {sink} with all arcs working")
            }
            Warning::IsolatedNode(v) => write!(f, "node {v} has no incident arcs"),
        }
    }
}

impl Network {
    /// Builds a network from endpoint pairs; pair `k` (zero-based) becomes arc `k + 1`.
    pub fn new(n: usize, source: usize, sink: usize, endpoints: &[(usize, usize)]) -> Result<Self, Error> {
        Self::build(n, source, sink, endpoints, vec![1.0; endpoints.len()], |k| k + 1)
    }

    pub fn with_probabilities(mut self, probabilities: Vec<f64>) -> Result<Self, Error> {
        if probabilities.len() != self.m() {
            return Err(Error::LengthMismatch { expected: self.m(), found: probabilities.len() });
        }
        if let Some((k, &p)) = probabilities.iter().enumerate().find(|(_, p)| !(0.0..=1.0).contains(*p)) {
            return Err(Error::ProbabilityOutOfRange { arc: k + 1, value: p });
        }
        self.probabilities = probabilities;
        Ok(self)
    }

    fn build(
        n: usize,
        source: usize,
        sink: usize,
        endpoints: &[(usize, usize)],
        probabilities: Vec<f64>,
        line_of: impl Fn(usize) -> usize,
    ) -> Result<Self, Error> {
        let in_range = |x: usize| (1..=n).contains(&x);
        if !in_range(source) || !in_range(sink) {
            return Err(Error::TerminalOutOfRange { source_node: source, sink_node: sink, n });
        }
        if source == sink {
            return Err(Error::SourceIsSink(source));
        }
        let mut seen = HashSet::new();
        let mut arcs = Vec::with_capacity(endpoints.len());
        let mut adjacency = vec![Vec::new(); n + 1];
        for (k, &(u, v)) in endpoints.iter().enumerate() {
            let line = line_of(k);
            if !in_range(u) || !in_range(v) {
                return Err(Error::EndpointOutOfRange { line, u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { line, node: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::ParallelArc { line, u, v });
            }
            arcs.push(Arc { id: ArcId::from_zero_based(k), u, v });
            adjacency[u].push((v, k));
            adjacency[v].push((u, k));
        }
        Ok(Self { n, arcs, probabilities, source, sink, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> Option<&Arc> {
        self.arcs.get(id.get() - 1)
    }

    /// Per-arc working probabilities, in arc order.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// `(neighbour, zero-based arc index)` pairs incident to `node`.
    pub fn neighbours(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    /// Breadth-first search from source over the arcs accepted by `working`
    /// (called with zero-based arc indices).
    pub fn reaches_sink(&self, working: impl Fn(usize) -> bool) -> bool {
        let mut visited = vec![false; self.n + 1];
        let mut queue = VecDeque::new();
        visited[self.source] = true;
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            for &(v, k) in &self.adjacency[u] {
                if !visited[v] && working(k) {
                    if v == self.sink {
                        return true;
                    }
                    visited[v] = true;
                    queue.push_back(v);
                }
            }
        }
        false
    }

    /// Connectivity for `m <= 64` with arc `k` working iff bit `k` of `mask` is set.
    pub fn connected_mask(&self, mask: u64) -> bool {
        self.reaches_sink(|k| (mask >> k) & 1 == 1)
    }

    /// Canonical edge-list text; probabilities are written only when some arc is not 1.0.
    pub fn to_edge_list(&self) -> String {
        let with_p = self.probabilities.iter().any(|&p| p != 1.0);
        let mut out = format!("{} {} {} {}\n", self.n, self.m(), self.source, self.sink);
        for (arc, p) in self.arcs.iter().zip(&self.probabilities) {
            if with_p {
                out.push_str(&format!("{} {} {}\n", arc.u, arc.v, p));
            } else {
                out.push_str(&format!("{} {}\n", arc.u, arc.v));
            }
        }
        out
    }
}

/// Parses the edge-list format: a header `n m s t`, then `m` lines `u v [p]`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_network(text: &str) -> Result<Network, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Syntax { line: 0, message: "empty input".into() })?;
    let fields = parse_uints(header_line, header)?;
    let [n, m, source, sink] = fields[..] else {
        return Err(Error::Syntax {
            line: header_line,
            message: format!("header needs 4 fields `n m s t`, found {}", fields.len()),
        });
    };

    let mut endpoints = Vec::with_capacity(m);
    let mut probabilities = Vec::with_capacity(m);
    let mut line_numbers = Vec::with_capacity(m);
    for (line, body) in lines {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(Error::Syntax { line, message: format!("arc line needs `u v [p]`, found `{body}`") });
        }
        let u = parse_uint(line, tokens[0])?;
        let v = parse_uint(line, tokens[1])?;
        let p = match tokens.get(2) {
            None => 1.0,
            Some(tok) => {
                let p: f64 = tok
                    .parse()
                    .map_err(|_| Error::Syntax { line, message: format!("bad probability `{tok}`") })?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::ProbabilityOutOfRange { arc: endpoints.len() + 1, value: p });
                }
                p
            }
        };
        endpoints.push((u, v));
        probabilities.push(p);
        line_numbers.push(line);
    }
    if endpoints.len() != m {
        return Err(Error::ArcCountMismatch { declared: m, found: endpoints.len() });
    }
    Network::build(n, source, sink, &endpoints, probabilities, |k| line_numbers[k])
}

fn parse_uint(line: usize, tok: &str) -> Result<usize, Error> {
    tok.parse()
        .map_err(|_| Error::Syntax { line, message: format!("expected a non-negative integer, found `{tok}`") })
}

fn parse_uints(line: usize, body: &str) -> Result<Vec<usize>, Error> {
    body.split_whitespace().map(|t| parse_uint(line, t)).collect()
}

pub fn validate_network(net: &Network) -> Vec<Warning> {
    let mut warnings = Vec::new();
    if !net.reaches_sink(|_| true) {
        warnings.push(Warning::NotConnected { source: net.source, sink: net.sink });
    }
    for v in 1..=net.n {
        if net.adjacency[v].is_empty() {
            warnings.push(Warning::IsolatedNode(v));
        }
    }
    warnings
}

pub fn is_st_connected(net: &Network, x: &StateVector) -> Result<bool, Error> {
    if x.len() != net.m() {
        return Err(Error::LengthMismatch { expected: net.m(), found: x.len() });
    }
    Ok(net.reaches_sink(|k| x.get(k)))
}
