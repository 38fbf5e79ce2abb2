//! Interaction graphs.
//!
//! Adjacency is stored in compressed rows (one offset table plus a flat
//! neighbour array), so a uniform neighbour draw is a single index into a
//! slice. Graphs are immutable once built.

use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::rng::{rng_from_seed, SimRng};

/// Pairing attempts allowed before random regular generation gives up.
pub const MAX_PAIRING_ATTEMPTS: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error("graph must have at least one node")]
    InvalidSize,
    #[error("no simple {degree}-regular graph on {n} nodes")]
    Infeasible { n: usize, degree: usize },
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("no simple {degree}-regular pairing on {n} nodes after {attempts} attempts")]
    GenerationFailed { n: usize, degree: usize, attempts: u32 },
    #[error("{0} nodes exceed the supported index range")]
    TooLarge(usize),
}

/// Family and parameters of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    Complete,
    RandomRegular { degree: usize },
    ErdosRenyi { edge_probability: f64 },
}

impl GraphKind {
    /// Short label: `complete`, `regular` or `er`.
    pub fn label(&self) -> &'static str {
        match self {
            GraphKind::Complete => "complete",
            GraphKind::RandomRegular { .. } => "regular",
            GraphKind::ErdosRenyi { .. } => "er",
        }
    }

    pub fn is_random(&self) -> bool {
        !matches!(self, GraphKind::Complete)
    }

    /// Builds an instance on `n` nodes. `seed` is ignored for complete graphs.
    pub fn build(&self, n: usize, seed: u64) -> Result<GraphTopology, TopologyError> {
        match *self {
            GraphKind::Complete => make_complete(n),
            GraphKind::RandomRegular { degree } => make_random_regular(n, degree, seed),
            GraphKind::ErdosRenyi { edge_probability } => {
                make_erdos_renyi(n, edge_probability, seed)
            }
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Complete => f.write_str("complete"),
            GraphKind::RandomRegular { degree } => write!(f, "regular(d={degree})"),
            GraphKind::ErdosRenyi { edge_probability } => write!(f, "er(p={edge_probability})"),
        }
    }
}

/// Undirected simple graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphTopology {
    kind: GraphKind,
    seed: Option<u64>,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl GraphTopology {
    fn from_lists(kind: GraphKind, seed: Option<u64>, mut lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let total: usize = lists.iter().map(Vec::len).sum();
        let mut neighbors = Vec::with_capacity(total);
        offsets.push(0);
        for list in &mut lists {
            list.sort_unstable();
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        Self { kind, seed, offsets, neighbors }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Generation seed; `None` for complete graphs.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Sorted neighbours of `u`.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }
}

fn check_size(n: usize) -> Result<(), TopologyError> {
    if n == 0 {
        return Err(TopologyError::InvalidSize);
    }
    if n > u32::MAX as usize {
        return Err(TopologyError::TooLarge(n));
    }
    Ok(())
}

/// Complete graph `K_n`.
pub fn make_complete(n: usize) -> Result<GraphTopology, TopologyError> {
    check_size(n)?;
    let lists = (0..n as u32)
        .map(|u| (0..n as u32).filter(|&v| v != u).collect())
        .collect();
    Ok(GraphTopology::from_lists(GraphKind::Complete, None, lists))
}

/// Random simple `degree`-regular graph.
///
/// Stubs are shuffled and paired. Pairs that would form a loop or a
/// repeated edge go back into the pool, and the pool is re-paired until
/// it is empty. If no admissible pair is left among the pooled stubs, the
/// attempt restarts from scratch. At most [`MAX_PAIRING_ATTEMPTS`] attempts
/// are made.
pub fn make_random_regular(
    n: usize,
    degree: usize,
    seed: u64,
) -> Result<GraphTopology, TopologyError> {
    check_size(n)?;
    if degree >= n || (n * degree) % 2 == 1 {
        return Err(TopologyError::Infeasible { n, degree });
    }
    let kind = GraphKind::RandomRegular { degree };
    let mut rng = rng_from_seed(seed);
    for _ in 0..MAX_PAIRING_ATTEMPTS {
        if let Some(lists) = try_pairing(n, degree, &mut rng) {
            return Ok(GraphTopology::from_lists(kind, Some(seed), lists));
        }
    }
    Err(TopologyError::GenerationFailed { n, degree, attempts: MAX_PAIRING_ATTEMPTS })
}

fn try_pairing(n: usize, degree: usize, rng: &mut SimRng) -> Option<Vec<Vec<u32>>> {
    let mut adj: Vec<Vec<u32>> = (0..n).map(|_| Vec::with_capacity(degree)).collect();
    let mut stubs: Vec<u32> = (0..n as u32)
        .flat_map(|u| core::iter::repeat_n(u, degree))
        .collect();
    let mut pool = Vec::new();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        pool.clear();
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a != b && !adj[a as usize].contains(&b) {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
            } else {
                pool.extend_from_slice(pair);
            }
        }
        if !pool.is_empty() && !has_admissible_pair(&adj, &mut pool) {
            return None;
        }
        core::mem::swap(&mut stubs, &mut pool);
    }
    Some(adj)
}

/// Whether two distinct, non-adjacent nodes remain among the pooled stubs.
fn has_admissible_pair(adj: &[Vec<u32>], pool: &mut [u32]) -> bool {
    let mut nodes: Vec<u32> = pool.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    nodes.iter().enumerate().any(|(i, &a)| {
        nodes[i + 1..]
            .iter()
            .any(|&b| !adj[a as usize].contains(&b))
    })
}

/// Erdős–Rényi `G(n, p)`: every pair is an edge independently with
/// probability `edge_probability`.
///
/// Non-edges are skipped with geometric jumps, so the cost is
/// `O(n + m)` rather than `O(n²)`.
pub fn make_erdos_renyi(
    n: usize,
    edge_probability: f64,
    seed: u64,
) -> Result<GraphTopology, TopologyError> {
    check_size(n)?;
    if !(0.0..=1.0).contains(&edge_probability) {
        return Err(TopologyError::InvalidProbability(edge_probability));
    }
    let kind = GraphKind::ErdosRenyi { edge_probability };
    let mut lists: Vec<Vec<u32>> = (0..n).map(|_| Vec::new()).collect();
    if edge_probability == 1.0 {
        for u in 0..n as u32 {
            for v in 0..u {
                lists[u as usize].push(v);
                lists[v as usize].push(u);
            }
        }
    } else if edge_probability > 0.0 {
        let mut rng = rng_from_seed(seed);
        let log_q = libm::log1p(-edge_probability);
        // Pairs (v, w) with w < v in lexicographic order.
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.random();
            let skip = libm::floor(libm::log1p(-r) / log_q);
            w = w.saturating_add(1).saturating_add(skip.min(i64::MAX as f64 / 4.0) as i64);
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                lists[v].push(w as u32);
                lists[w as usize].push(v as u32);
            }
        }
    }
    Ok(GraphTopology::from_lists(kind, Some(seed), lists))
}
