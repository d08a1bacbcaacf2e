//! Rotor-router dynamics: the single-chip step, rotor walks, unicycle
//! detection, orbit enumeration, and the chip-addition operator on
//! digraphs with a global sink.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, EdgeRef, Vertex};

/// Default cap for exhaustive state enumerations and chip-routing walks.
pub const DEFAULT_STATE_BUDGET: u64 = 1_000_000;

/// One chosen out-edge per non-sink vertex, stored as the 0-based index of
/// that edge in the vertex's rotor order. Sink vertices carry no entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotorConfiguration {
    rotor: Vec<Option<usize>>,
}

impl RotorConfiguration {
    /// Every rotor at index 0 (sinks carry no rotor).
    pub fn initial(g: &DirectedMultigraph) -> Self {
        Self {
            rotor: g
                .vertices()
                .map(|v| if g.out_degree(v) > 0 { Some(0) } else { None })
                .collect(),
        }
    }

    /// Validates one index per vertex: `Some(i)` with `i < deg⁺(v)` for
    /// non-sink vertices, `None` for sinks.
    pub fn from_indices(g: &DirectedMultigraph, indices: Vec<Option<usize>>) -> Result<Self> {
        if indices.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} rotor entries for {} vertices",
                indices.len(),
                g.vertex_count()
            )));
        }
        for (i, idx) in indices.iter().enumerate() {
            let deg = g.out_degree(i + 1);
            match idx {
                None if deg == 0 => {}
                Some(k) if deg > 0 && *k < deg => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "rotor entry {:?} invalid for vertex {} of out-degree {}",
                        idx,
                        i + 1,
                        deg
                    )))
                }
            }
        }
        Ok(Self { rotor: indices })
    }

    pub fn index(&self, v: Vertex) -> Option<usize> {
        self.rotor[v - 1]
    }

    /// The edge the rotor at `v` currently points to.
    pub fn current_edge(&self, v: Vertex) -> Option<EdgeRef> {
        self.rotor[v - 1].map(|index| EdgeRef { tail: v, index })
    }

    /// Copy with the entry at `v` cleared, matching a graph whose out-edges
    /// at `v` were removed.
    pub fn without_vertex(&self, v: Vertex) -> Self {
        let mut rotor = self.rotor.clone();
        rotor[v - 1] = None;
        Self { rotor }
    }

    pub fn indices(&self) -> &[Option<usize>] {
        &self.rotor
    }

    fn set(&mut self, v: Vertex, index: usize) {
        self.rotor[v - 1] = Some(index);
    }
}

/// A chip position together with a rotor configuration; the unit the
/// rotor-router operation acts on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChipRotorState {
    pub chip: Vertex,
    pub config: RotorConfiguration,
}

impl ChipRotorState {
    pub fn new(g: &DirectedMultigraph, chip: Vertex, config: RotorConfiguration) -> Result<Self> {
        if chip < 1 || chip > g.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "chip vertex {} out of range 1..={}",
                chip,
                g.vertex_count()
            )));
        }
        Ok(Self { chip, config })
    }

    pub fn initial(g: &DirectedMultigraph, chip: Vertex) -> Result<Self> {
        Self::new(g, chip, RotorConfiguration::initial(g))
    }
}

impl fmt::Display for ChipRotorState {
    /// Stable text form: `chip=v; rotors=i1,i2,...,in` with `-` for sinks.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chip={}; rotors=", self.chip)?;
        for (i, idx) in self.config.rotor.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match idx {
                Some(k) => write!(f, "{}", k)?,
                None => f.write_str("-")?,
            }
        }
        Ok(())
    }
}

/// Parses the `chip=v; rotors=...` form into its raw components. The result
/// is structural only; validate against a graph with
/// [`RotorConfiguration::from_indices`] and [`ChipRotorState::new`].
pub fn parse_state(s: &str) -> Result<(Vertex, Vec<Option<usize>>)> {
    let bad = |reason: &str| Error::InvalidArgument(format!("bad state {:?}: {}", s, reason));
    let (chip_part, rotor_part) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
    let chip = chip_part
        .trim()
        .strip_prefix("chip=")
        .ok_or_else(|| bad("missing 'chip='"))?
        .trim()
        .parse::<usize>()
        .map_err(|_| bad("chip is not a number"))?;
    let rotors = rotor_part
        .trim()
        .strip_prefix("rotors=")
        .ok_or_else(|| bad("missing 'rotors='"))?;
    let indices = rotors
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "-" {
                Ok(None)
            } else {
                tok.parse::<usize>()
                    .map(Some)
                    .map_err(|_| bad("rotor entry is not a number or '-'"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((chip, indices))
}

/// One rotor-router operation: advance the rotor at the chip's vertex to
/// the next edge in cyclic order, then move the chip along that edge.
/// States with the chip on a sink are fixed points.
pub fn rotor_step(g: &DirectedMultigraph, state: &ChipRotorState) -> ChipRotorState {
    rotor_step_with_edge(g, state).0
}

/// Like [`rotor_step`], also reporting the traversed edge (`None` at a sink).
pub fn rotor_step_with_edge(
    g: &DirectedMultigraph,
    state: &ChipRotorState,
) -> (ChipRotorState, Option<EdgeRef>) {
    let v = state.chip;
    let deg = g.out_degree(v);
    if deg == 0 {
        return (state.clone(), None);
    }
    let idx = state.config.index(v).expect("non-sink vertex has a rotor");
    let edge = EdgeRef {
        tail: v,
        index: (idx + 1) % deg,
    };
    let mut config = state.config.clone();
    config.set(v, edge.index);
    (
        ChipRotorState {
            chip: edge.head(g),
            config,
        },
        Some(edge),
    )
}

/// The vertices visited by `t` rotor-router operations, starting vertex
/// included: a sequence of length `t + 1`.
pub fn rotor_walk(g: &DirectedMultigraph, state: &ChipRotorState, t: u64) -> Vec<Vertex> {
    let mut walk = Vec::with_capacity(t as usize + 1);
    let mut cur = state.clone();
    walk.push(cur.chip);
    for _ in 0..t {
        cur = rotor_step(g, &cur);
        walk.push(cur.chip);
    }
    walk
}

/// Cycle structure of the functional graph `v ↦ head(ρ(v))`.
struct FunctionalCycles {
    cycle_count: usize,
    on_cycle: Vec<bool>,
}

fn functional_cycles(
    g: &DirectedMultigraph,
    config: &RotorConfiguration,
) -> Result<FunctionalCycles> {
    let n = g.vertex_count();
    let mut succ = vec![0usize; n];
    for v in g.vertices() {
        let edge = config.current_edge(v).ok_or(Error::HasSink)?;
        succ[v - 1] = edge.head(g) - 1;
    }
    let mut seen_walk = vec![0usize; n];
    let mut on_cycle = vec![false; n];
    let mut cycle_count = 0usize;
    let mut path = Vec::new();
    for start in 0..n {
        if seen_walk[start] != 0 {
            continue;
        }
        let walk = start + 1;
        path.clear();
        let mut v = start;
        while seen_walk[v] == 0 {
            seen_walk[v] = walk;
            path.push(v);
            v = succ[v];
        }
        if seen_walk[v] == walk {
            cycle_count += 1;
            let pos = path.iter().rposition(|&x| x == v).expect("v on this path");
            for &u in &path[pos..] {
                on_cycle[u] = true;
            }
        }
    }
    Ok(FunctionalCycles {
        cycle_count,
        on_cycle,
    })
}

/// True iff the rotor edges form exactly one directed cycle and the chip
/// sits on it. Requires a sinkless graph. Equivalent to recurrence of the
/// state under the rotor-router operation.
pub fn is_unicycle(g: &DirectedMultigraph, state: &ChipRotorState) -> Result<bool> {
    let cycles = functional_cycles(g, &state.config)?;
    Ok(cycles.cycle_count == 1 && cycles.on_cycle[state.chip - 1])
}

/// Iterates the rotor-router operation until a unicycle is reached. Every
/// trajectory on a strongly connected sinkless graph gets there, so the
/// budget only guards against malformed inputs.
pub fn find_recurrent(
    g: &DirectedMultigraph,
    state: &ChipRotorState,
    budget: u64,
) -> Result<ChipRotorState> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let mut cur = state.clone();
    for _ in 0..=budget {
        if is_unicycle(g, &cur)? {
            return Ok(cur);
        }
        cur = rotor_step(g, &cur);
    }
    Err(Error::StepBudgetExceeded { budget })
}

/// The cyclic sequence of states from a recurrent state until first
/// return, the starting state included and the repeat excluded.
pub fn orbit_of(g: &DirectedMultigraph, state: &ChipRotorState) -> Result<Vec<ChipRotorState>> {
    if !is_unicycle(g, state)? {
        return Err(Error::NotUnicycle);
    }
    let mut orbit = vec![state.clone()];
    let mut cur = rotor_step(g, state);
    while cur != *state {
        orbit.push(cur.clone());
        cur = rotor_step(g, &cur);
    }
    Ok(orbit)
}

/// Lazy iterator over every rotor configuration of `g`, in mixed-radix
/// order with the last vertex's rotor advancing fastest.
pub struct RotorConfigurations<'a> {
    g: &'a DirectedMultigraph,
    next: Option<Vec<Option<usize>>>,
}

/// All rotor configurations of `g` (the product of the out-degrees of its
/// non-sink vertices, lazily).
pub fn rotor_configurations(g: &DirectedMultigraph) -> RotorConfigurations<'_> {
    let first = g
        .vertices()
        .map(|v| if g.out_degree(v) > 0 { Some(0) } else { None })
        .collect();
    RotorConfigurations {
        g,
        next: Some(first),
    }
}

impl Iterator for RotorConfigurations<'_> {
    type Item = RotorConfiguration;

    fn next(&mut self) -> Option<RotorConfiguration> {
        let current = self.next.clone()?;
        // Advance the odometer.
        let mut indices = current.clone();
        let mut pos = indices.len();
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            let Some(idx) = indices[pos] else { continue };
            if idx + 1 < self.g.out_degree(pos + 1) {
                indices[pos] = Some(idx + 1);
                advanced = true;
                break;
            }
            indices[pos] = Some(0);
        }
        self.next = advanced.then_some(indices);
        Some(RotorConfiguration { rotor: current })
    }
}

/// Total number of chip-and-rotor states, `n · Π deg⁺(v)`.
pub fn state_space_size(g: &DirectedMultigraph) -> BigInt {
    g.vertices()
        .map(|v| BigInt::from(g.out_degree(v).max(1)))
        .product::<BigInt>()
        * BigInt::from(g.vertex_count())
}

/// All unicycle states of a sinkless graph, in deterministic order.
/// Fails with [`Error::BudgetExceeded`] when the state space is larger
/// than `budget`.
pub fn enumerate_unicycles(
    g: &DirectedMultigraph,
    budget: u64,
) -> Result<Vec<ChipRotorState>> {
    if g.vertices().any(|v| g.out_degree(v) == 0) {
        return Err(Error::HasSink);
    }
    let needed = state_space_size(g);
    if needed > BigInt::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut unicycles = Vec::new();
    for config in rotor_configurations(g) {
        let cycles = functional_cycles(g, &config)?;
        if cycles.cycle_count != 1 {
            continue;
        }
        for v in g.vertices() {
            if cycles.on_cycle[v - 1] {
                unicycles.push(ChipRotorState {
                    chip: v,
                    config: config.clone(),
                });
            }
        }
    }
    Ok(unicycles)
}

/// Partitions all unicycles into their orbits under the rotor-router
/// operation, in deterministic order.
pub fn partition_orbits(
    g: &DirectedMultigraph,
    budget: u64,
) -> Result<Vec<Vec<ChipRotorState>>> {
    let unicycles = enumerate_unicycles(g, budget)?;
    let mut seen: HashSet<ChipRotorState> = HashSet::with_capacity(unicycles.len());
    let mut orbits = Vec::new();
    for u in &unicycles {
        if seen.contains(u) {
            continue;
        }
        let orbit = orbit_of(g, u)?;
        for s in &orbit {
            seen.insert(s.clone());
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Nonnegative chip counts on the non-sink vertices of a sink digraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChipConfiguration {
    counts: Vec<u64>,
}

impl ChipConfiguration {
    pub fn zero(g: &DirectedMultigraph) -> Self {
        Self {
            counts: vec![0; g.vertex_count()],
        }
    }

    /// A single chip at `v`.
    pub fn delta(g: &DirectedMultigraph, v: Vertex) -> Result<Self> {
        let mut c = Self::zero(g);
        if v < 1 || v > g.vertex_count() {
            return Err(Error::InvalidArgument(format!("vertex {} out of range", v)));
        }
        c.counts[v - 1] = 1;
        Ok(c)
    }

    /// Validates length and that sink vertices carry no chips.
    pub fn from_counts(g: &DirectedMultigraph, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != g.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} chip counts for {} vertices",
                counts.len(),
                g.vertex_count()
            )));
        }
        for v in g.vertices() {
            if g.out_degree(v) == 0 && counts[v - 1] != 0 {
                return Err(Error::InvalidArgument(format!(
                    "sink vertex {} cannot hold chips",
                    v
                )));
            }
        }
        Ok(Self { counts })
    }

    pub fn count(&self, v: Vertex) -> u64 {
        self.counts[v - 1]
    }

    /// Signed per-vertex difference restricted to the given vertices.
    pub fn difference_on(&self, other: &Self, vertices: &[Vertex]) -> Vec<BigInt> {
        vertices
            .iter()
            .map(|&v| BigInt::from(self.counts[v - 1]) - BigInt::from(other.counts[v - 1]))
            .collect()
    }
}

/// Chip-addition operator: drop one chip on `v` and route it with
/// rotor-router steps until it reaches the global sink; the resulting
/// rotor configuration is returned.
pub fn chip_addition(
    g: &DirectedMultigraph,
    v: Vertex,
    rho: &RotorConfiguration,
) -> Result<RotorConfiguration> {
    chip_addition_with_budget(g, v, rho, DEFAULT_STATE_BUDGET)
}

pub fn chip_addition_with_budget(
    g: &DirectedMultigraph,
    v: Vertex,
    rho: &RotorConfiguration,
    budget: u64,
) -> Result<RotorConfiguration> {
    let sink = g.global_sink().ok_or(Error::NoGlobalSink)?;
    let mut state = ChipRotorState::new(g, v, rho.clone())?;
    let mut steps = 0u64;
    while state.chip != sink {
        if steps >= budget {
            return Err(Error::StepBudgetExceeded { budget });
        }
        state = rotor_step(g, &state);
        steps += 1;
    }
    Ok(state.config)
}

/// Applies chip addition `c(v)` times at every vertex `v`, in ascending
/// vertex order. The order is immaterial: chip addition commutes.
pub fn apply_chip_config(
    g: &DirectedMultigraph,
    c: &ChipConfiguration,
    rho: &RotorConfiguration,
) -> Result<RotorConfiguration> {
    let mut current = rho.clone();
    for v in g.vertices() {
        for _ in 0..c.count(v) {
            current = chip_addition(g, v, &current)?;
        }
    }
    Ok(current)
}

/// True iff the rotor edges of the non-sink vertices form no directed
/// cycle; equivalently they are an oriented spanning tree rooted at the
/// global sink.
pub fn is_acyclic_config(g: &DirectedMultigraph, rho: &RotorConfiguration) -> Result<bool> {
    let sink = g.global_sink().ok_or(Error::NoGlobalSink)?;
    let n = g.vertex_count();
    // succ through rotor edges; the sink terminates every walk.
    let mut mark = vec![0usize; n];
    mark[sink - 1] = 1;
    for start in 0..n {
        if mark[start] != 0 {
            continue;
        }
        let walk = start + 2;
        let mut v = start;
        while mark[v] == 0 {
            mark[v] = walk;
            let edge = rho
                .current_edge(v + 1)
                .ok_or_else(|| Error::InvalidArgument(format!("vertex {} has no rotor", v + 1)))?;
            v = edge.head(g) - 1;
        }
        if mark[v] == walk {
            return Ok(false);
        }
        let mut v = start;
        while mark[v] == walk {
            mark[v] = 1;
            let edge = rho.current_edge(v + 1).expect("marked vertex has a rotor");
            v = edge.head(g) - 1;
        }
    }
    Ok(true)
}
