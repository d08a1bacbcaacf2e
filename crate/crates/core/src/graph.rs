//! Directed multigraphs with per-vertex rotor orderings.
//!
//! Vertices are numbered `1..=n`. Each vertex owns an ordered list of
//! out-edge heads; the list order is the rotor's cyclic order, a repeated
//! head is a parallel edge, and a head equal to the tail is a loop.
//! Graphs are immutable after construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Vertex label, always in `1..=n`.
pub type Vertex = usize;

/// Default cap on attempts in [`gen_random_strong_digraph`].
pub const DEFAULT_REJECTION_CAP: u64 = 10_000;

/// A finite directed multigraph with loops, parallel edges, and a fixed
/// rotor (cyclic) order on every vertex's out-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMultigraph {
    out: Vec<Vec<Vertex>>,
    in_deg: Vec<usize>,
    edge_count: usize,
}

/// An edge, identified by its tail and its position in the tail's rotor order.
///
/// Positions are stable for the lifetime of the graph, so an `EdgeRef` is a
/// persistent edge identity even between parallel edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub tail: Vertex,
    pub index: usize,
}

impl EdgeRef {
    /// The next edge of the same tail in cyclic rotor order.
    pub fn successor(self, g: &DirectedMultigraph) -> EdgeRef {
        let deg = g.out_degree(self.tail);
        EdgeRef {
            tail: self.tail,
            index: (self.index + 1) % deg,
        }
    }

    pub fn head(self, g: &DirectedMultigraph) -> Vertex {
        g.out_edges(self.tail)[self.index]
    }
}

impl DirectedMultigraph {
    /// Builds a graph from per-vertex out-edge lists (heads are 1-based,
    /// list order is the rotor order).
    pub fn from_out_lists(out: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = out.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "graph must have at least one vertex".into(),
            ));
        }
        let mut in_deg = vec![0usize; n];
        let mut edge_count = 0usize;
        for (i, heads) in out.iter().enumerate() {
            for &h in heads {
                if h < 1 || h > n {
                    return Err(Error::InvalidArgument(format!(
                        "edge {}->{} has head out of range 1..={}",
                        i + 1,
                        h,
                        n
                    )));
                }
                in_deg[h - 1] += 1;
                edge_count += 1;
            }
        }
        Ok(Self {
            out,
            in_deg,
            edge_count,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.out.len()
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v - 1].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_deg[v - 1]
    }

    /// Heads of `v`'s out-edges in rotor order.
    pub fn out_edges(&self, v: Vertex) -> &[Vertex] {
        &self.out[v - 1]
    }

    /// Multiplicity `a(v, w)`: the number of edges from `v` to `w`.
    pub fn multiplicity(&self, v: Vertex, w: Vertex) -> usize {
        self.out[v - 1].iter().filter(|&&h| h == w).count()
    }

    pub fn head(&self, e: EdgeRef) -> Vertex {
        e.head(self)
    }

    fn reverse_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut rev = vec![Vec::new(); n];
        for (i, heads) in self.out.iter().enumerate() {
            for &h in heads {
                rev[h - 1].push(i);
            }
        }
        rev
    }

    fn reachable_count(start: usize, adj: impl Fn(usize) -> Vec<usize>, n: usize) -> usize {
        let mut seen = vec![false; n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in adj(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    }

    /// True iff every vertex can reach every other vertex.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 1 {
            return true;
        }
        let fwd =
            Self::reachable_count(0, |v| self.out[v].iter().map(|&h| h - 1).collect(), n);
        if fwd < n {
            return false;
        }
        let rev = self.reverse_adjacency();
        Self::reachable_count(0, |v| rev[v].clone(), n) == n
    }

    /// True iff strongly connected with `deg⁺(v) = deg⁻(v)` everywhere.
    pub fn is_eulerian(&self) -> bool {
        self.vertices()
            .all(|v| self.out_degree(v) == self.in_degree(v))
            && self.is_strongly_connected()
    }

    /// The unique out-degree-0 vertex reachable from all vertices, if any.
    pub fn global_sink(&self) -> Option<Vertex> {
        let n = self.vertex_count();
        let rev = self.reverse_adjacency();
        self.vertices()
            .filter(|&v| self.out_degree(v) == 0)
            .find(|&s| Self::reachable_count(s - 1, |v| rev[v].clone(), n) == n)
    }

    /// A copy of the graph with all of `v`'s out-edges deleted. Rotor
    /// positions of every other vertex are unchanged, so configurations
    /// transfer between the two graphs index-for-index.
    pub fn with_out_edges_removed(&self, v: Vertex) -> Self {
        let mut out = self.out.clone();
        out[v - 1].clear();
        Self::from_out_lists(out).expect("removing edges keeps the graph valid")
    }

    /// A copy with each vertex's rotor order independently shuffled.
    /// Deterministic for a given seed.
    pub fn with_shuffled_rotor_orders(&self, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = self.out.clone();
        for heads in &mut out {
            heads.shuffle(&mut rng);
        }
        Self::from_out_lists(out).expect("shuffling keeps the graph valid")
    }
}

impl std::fmt::Display for DirectedMultigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&serialize_digraph(self))
    }
}

impl std::str::FromStr for DirectedMultigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_digraph(s)
    }
}

/// Parses the graph interchange format.
///
/// Lines starting with `#` and blank lines are skipped. The first content
/// line is `n m`; then each vertex appears exactly once as
/// `v: h1 h2 ... hk` with its heads in rotor order (`k` may be 0).
pub fn parse_digraph(text: &str) -> Result<DirectedMultigraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut rows: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut seen = 0usize;
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match header {
            None => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: format!("expected header 'n m', got {:?}", line),
                    });
                }
                let n: usize = toks[0].parse().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("invalid vertex count {:?}", toks[0]),
                })?;
                let m: usize = toks[1].parse().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("invalid edge count {:?}", toks[1]),
                })?;
                if n == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: "vertex count must be at least 1".into(),
                    });
                }
                rows = vec![None; n];
                header = Some((n, m, line_no));
            }
            Some((n, _, _)) => {
                if seen == n {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: "unexpected content after all vertices were listed".into(),
                    });
                }
                let (left, right) = line.split_once(':').ok_or_else(|| Error::Parse {
                    line: line_no,
                    reason: format!("expected 'v: h1 h2 ...', got {:?}", line),
                })?;
                let v: usize = left.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("invalid vertex label {:?}", left.trim()),
                })?;
                if v < 1 || v > n {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: format!("vertex {} out of range 1..={}", v, n),
                    });
                }
                if rows[v - 1].is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: format!("vertex {} listed twice", v),
                    });
                }
                let mut heads = Vec::new();
                for tok in right.split_whitespace() {
                    let h: usize = tok.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        reason: format!("invalid edge head {:?}", tok),
                    })?;
                    if h < 1 || h > n {
                        return Err(Error::Parse {
                            line: line_no,
                            reason: format!("edge head {} out of range 1..={}", h, n),
                        });
                    }
                    heads.push(h);
                }
                rows[v - 1] = Some(heads);
                seen += 1;
            }
        }
    }

    let (n, m, header_line) = header.ok_or(Error::Parse {
        line: last_line.max(1),
        reason: "missing 'n m' header".into(),
    })?;
    if seen < n {
        return Err(Error::Parse {
            line: last_line,
            reason: format!("expected {} vertex lines, found {}", n, seen),
        });
    }
    let out: Vec<Vec<Vertex>> = rows.into_iter().map(|r| r.unwrap()).collect();
    let total: usize = out.iter().map(|h| h.len()).sum();
    if total != m {
        return Err(Error::Parse {
            line: header_line,
            reason: format!("header declares {} edges but lists contain {}", m, total),
        });
    }
    DirectedMultigraph::from_out_lists(out)
}

/// Serializes to the interchange format; `parse_digraph` inverts this exactly.
pub fn serialize_digraph(g: &DirectedMultigraph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for v in g.vertices() {
        s.push_str(&v.to_string());
        s.push(':');
        for &h in g.out_edges(v) {
            s.push(' ');
            s.push_str(&h.to_string());
        }
        s.push('\n');
    }
    s
}

/// Directed cycle `1 → 2 → … → n → 1`; `gen_cycle(1)` is a single loop.
pub fn gen_cycle(n: usize) -> Result<DirectedMultigraph> {
    if n < 1 {
        return Err(Error::InvalidArgument("cycle needs n >= 1".into()));
    }
    DirectedMultigraph::from_out_lists((1..=n).map(|v| vec![v % n + 1]).collect())
}

/// Complete digraph: one edge in each direction between every vertex pair.
pub fn gen_bidirected_complete(n: usize) -> Result<DirectedMultigraph> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "bidirected_complete needs n >= 1".into(),
        ));
    }
    DirectedMultigraph::from_out_lists(
        (1..=n)
            .map(|v| (1..=n).filter(|&w| w != v).collect())
            .collect(),
    )
}

/// Path `1 → 2 → … → n` plus an edge from every vertex `i ≥ 2` back to `1`.
/// Strongly connected but far from Eulerian: vertex 1 has out-degree 1 and
/// in-degree `n−1`. The rotor order at interior vertices is the forward
/// edge first, then the back edge.
pub fn gen_thm2_family(n: usize) -> Result<DirectedMultigraph> {
    if n < 3 {
        return Err(Error::InvalidArgument("thm2 family needs n >= 3".into()));
    }
    let mut out = Vec::with_capacity(n);
    out.push(vec![2]);
    for v in 2..n {
        out.push(vec![v + 1, 1]);
    }
    out.push(vec![1]);
    DirectedMultigraph::from_out_lists(out)
}

/// Chain on `n+1` vertices with two edges `i → i+1` and four edges
/// `i+1 → i` for each `i`. Both the orbit count and the orbit size of the
/// rotor-router operation grow exponentially in `n` on this family.
pub fn gen_two_four_chain(n: usize) -> Result<DirectedMultigraph> {
    if n < 1 {
        return Err(Error::InvalidArgument("two_four_chain needs n >= 1".into()));
    }
    let mut out = Vec::with_capacity(n + 1);
    for v in 1..=n + 1 {
        let mut heads = Vec::new();
        if v > 1 {
            heads.extend([v - 1; 4]);
        }
        if v <= n {
            heads.extend([v + 1; 2]);
        }
        out.push(heads);
    }
    DirectedMultigraph::from_out_lists(out)
}

/// Random simple digraph: each ordered pair `(i, j)`, `i ≠ j`, is an edge
/// independently with probability `p`, resampled until the result is
/// strongly connected. Deterministic for a given seed; out-edges come out
/// sorted by head.
pub fn gen_random_strong_digraph(n: usize, p: f64, seed: u64) -> Result<DirectedMultigraph> {
    gen_random_strong_digraph_with_cap(n, p, seed, DEFAULT_REJECTION_CAP)
}

pub fn gen_random_strong_digraph_with_cap(
    n: usize,
    p: f64,
    seed: u64,
    cap: u64,
) -> Result<DirectedMultigraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "random digraph needs n >= 2".into(),
        ));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "edge probability must be in (0, 1), got {}",
            p
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cap {
        let out: Vec<Vec<Vertex>> = (1..=n)
            .map(|v| {
                (1..=n)
                    .filter(|&w| w != v && rng.gen_bool(p))
                    .collect()
            })
            .collect();
        let g = DirectedMultigraph::from_out_lists(out)?;
        if g.is_strongly_connected() {
            return Ok(g);
        }
    }
    Err(Error::RejectionBudgetExceeded { attempts: cap })
}
