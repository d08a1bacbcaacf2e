//! Closed-form orbit predictions and the random-walk stationary
//! distribution, each paired with an independent brute-force or numerical
//! cross-check.
//!
//! All identities are exact, so everything except the power-iteration
//! oracle uses arbitrary-precision integers and rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, Vertex};
use crate::linalg::{laplacian, row_times_matrix, tree_counts};
use crate::rotor::{
    partition_orbits, rotor_step, state_space_size, ChipRotorState, DEFAULT_STATE_BUDGET,
};

pub const DEFAULT_POWER_ITERATIONS: u64 = 100_000;
pub const DEFAULT_POWER_TOLERANCE: f64 = 1e-10;

fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_big_map<S: Serializer>(
    m: &BTreeMap<Vertex, BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: BTreeMap<Vertex, String> =
        m.iter().map(|(k, v)| (*k, v.to_string())).collect();
    strings.serialize(s)
}

fn ser_ratios<S: Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<String> = v.iter().map(rational_string).collect();
    strings.serialize(s)
}

/// `p/q` form with the denominator always written.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Orbit structure of a strongly connected sinkless digraph: the formula
/// values, plus matching brute-force values when the state space fits the
/// budget.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    /// `(Σ_v deg⁺(v)·T(v)) / M`.
    #[serde(serialize_with = "ser_big")]
    pub orbit_size_formula: BigInt,
    /// `M`, the gcd of the arborescence counts.
    #[serde(serialize_with = "ser_big")]
    pub orbit_count_formula: BigInt,
    /// `Σ_v deg⁺(v)·T(v)`.
    #[serde(serialize_with = "ser_big")]
    pub unicycle_count: BigInt,
    /// Chip visits to each vertex within one orbit: `deg⁺(v)·T(v)/M`.
    #[serde(serialize_with = "ser_big_map")]
    pub per_vertex_visits: BTreeMap<Vertex, BigInt>,
    /// Brute-force values; `None` when the graph exceeded the state budget.
    pub simulated: Option<SimulatedOrbits>,
}

/// Orbit structure measured by exhaustive enumeration and simulation.
#[derive(Debug, Clone, Serialize)]
pub struct SimulatedOrbits {
    pub orbit_size: u64,
    pub orbit_count: u64,
    pub unicycle_count: u64,
    /// Visit counts of the first orbit found.
    pub per_vertex_visits: BTreeMap<Vertex, u64>,
    /// True iff every orbit has the same size and the same visit profile.
    pub uniform: bool,
}

impl OrbitReport {
    /// `Some(true)` iff simulation ran and reproduced every formula value.
    pub fn simulation_matches(&self) -> Option<bool> {
        let sim = self.simulated.as_ref()?;
        let visits_match = self.per_vertex_visits.len() == sim.per_vertex_visits.len()
            && self
                .per_vertex_visits
                .iter()
                .all(|(v, count)| {
                    sim.per_vertex_visits
                        .get(v)
                        .is_some_and(|c| BigInt::from(*c) == *count)
                });
        Some(
            sim.uniform
                && BigInt::from(sim.orbit_size) == self.orbit_size_formula
                && BigInt::from(sim.orbit_count) == self.orbit_count_formula
                && BigInt::from(sim.unicycle_count) == self.unicycle_count
                && visits_match,
        )
    }
}

/// Builds the orbit report. Simulation runs when both the unicycle count
/// and the full state-space size fit within [`DEFAULT_STATE_BUDGET`].
pub fn orbit_report(g: &DirectedMultigraph) -> Result<OrbitReport> {
    orbit_report_with_budget(g, DEFAULT_STATE_BUDGET)
}

pub fn orbit_report_with_budget(g: &DirectedMultigraph, budget: u64) -> Result<OrbitReport> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if g.vertices().any(|v| g.out_degree(v) == 0) {
        return Err(Error::HasSink);
    }
    let tc = tree_counts(g);
    let m = tc.m_gcd.clone();
    let weighted: Vec<BigInt> = g
        .vertices()
        .map(|v| BigInt::from(g.out_degree(v)) * tc.count_of(v))
        .collect();
    let unicycle_count: BigInt = weighted.iter().sum();
    let orbit_size_formula = &unicycle_count / &m;
    let per_vertex_visits: BTreeMap<Vertex, BigInt> = g
        .vertices()
        .map(|v| (v, &weighted[v - 1] / &m))
        .collect();
    debug_assert_eq!(&orbit_size_formula * &m, unicycle_count);

    let in_budget = unicycle_count <= BigInt::from(budget)
        && state_space_size(g) <= BigInt::from(budget);
    let simulated = if in_budget {
        Some(simulate_orbits(g, budget)?)
    } else {
        None
    };

    Ok(OrbitReport {
        orbit_size_formula,
        orbit_count_formula: m,
        unicycle_count,
        per_vertex_visits,
        simulated,
    })
}

fn simulate_orbits(g: &DirectedMultigraph, budget: u64) -> Result<SimulatedOrbits> {
    let orbits = partition_orbits(g, budget)?;
    let visit_maps: Vec<BTreeMap<Vertex, u64>> = orbits
        .iter()
        .map(|orbit| {
            let mut visits: BTreeMap<Vertex, u64> =
                g.vertices().map(|v| (v, 0)).collect();
            for state in orbit {
                *visits.get_mut(&state.chip).unwrap() += 1;
            }
            visits.retain(|_, c| *c > 0);
            visits
        })
        .collect();
    let sizes: Vec<u64> = orbits.iter().map(|o| o.len() as u64).collect();
    let uniform = sizes.iter().all(|&s| s == sizes[0])
        && visit_maps.iter().all(|m| *m == visit_maps[0]);
    Ok(SimulatedOrbits {
        orbit_size: sizes[0],
        orbit_count: sizes.len() as u64,
        unicycle_count: sizes.iter().sum(),
        per_vertex_visits: visit_maps.into_iter().next().unwrap(),
        uniform,
    })
}

/// Stationary distribution of the simple random walk, exactly:
/// `π(v) = T(v)·deg⁺(v) / Σ_w T(w)·deg⁺(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StationaryDistribution {
    #[serde(serialize_with = "ser_ratios")]
    pub probs: Vec<BigRational>,
}

impl StationaryDistribution {
    pub fn prob(&self, v: Vertex) -> &BigRational {
        &self.probs[v - 1]
    }

    pub fn probs_f64(&self) -> Vec<f64> {
        self.probs
            .iter()
            .map(|r| r.to_f64().expect("probability fits in f64"))
            .collect()
    }
}

pub fn stationary_exact(g: &DirectedMultigraph) -> Result<StationaryDistribution> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let tc = tree_counts(g);
    let weighted: Vec<BigInt> = g
        .vertices()
        .map(|v| tc.count_of(v) * BigInt::from(g.out_degree(v)))
        .collect();
    let total: BigInt = weighted.iter().sum();
    let probs: Vec<BigRational> = weighted
        .into_iter()
        .map(|w| BigRational::new(w, total.clone()))
        .collect();
    debug_assert!(probs.iter().sum::<BigRational>() == BigRational::from_integer(1.into()));
    Ok(StationaryDistribution { probs })
}

/// Numerical oracle for the stationary distribution: power iteration on
/// the lazy walk `(I + P)/2`, which has the same fixed point as `P` and
/// converges on periodic graphs too. The residual is measured against the
/// plain transition matrix `P`.
pub fn stationary_power_iteration(
    g: &DirectedMultigraph,
    iterations: u64,
    tolerance: f64,
) -> Result<Vec<f64>> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let n = g.vertex_count();
    let mut p = vec![vec![0.0f64; n]; n];
    for v in g.vertices() {
        let deg = g.out_degree(v) as f64;
        for &h in g.out_edges(v) {
            p[v - 1][h - 1] += 1.0 / deg;
        }
    }
    let mut pi = vec![1.0 / n as f64; n];
    for _ in 0..iterations {
        let mut next = vec![0.0f64; n];
        for v in 0..n {
            let weight = pi[v];
            if weight == 0.0 {
                continue;
            }
            for w in 0..n {
                next[w] += weight * p[v][w];
            }
        }
        let residual = pi
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if residual < tolerance {
            return Ok(pi);
        }
        let sum: f64 = pi.iter().zip(&next).map(|(a, b)| 0.5 * a + 0.5 * b).sum();
        for w in 0..n {
            pi[w] = (0.5 * pi[w] + 0.5 * next[w]) / sum;
        }
    }
    Err(Error::NoConvergence { iterations })
}

/// Visit frequencies of the first `t` vertices of the rotor walk from
/// `start`, as exact rationals summing to 1.
pub fn empirical_frequency(
    g: &DirectedMultigraph,
    start: &ChipRotorState,
    t: u64,
) -> Result<Vec<BigRational>> {
    if t == 0 {
        return Err(Error::InvalidArgument(
            "frequency needs at least one step".into(),
        ));
    }
    let mut counts = vec![0u64; g.vertex_count()];
    let mut cur = start.clone();
    counts[cur.chip - 1] += 1;
    for _ in 1..t {
        cur = rotor_step(g, &cur);
        counts[cur.chip - 1] += 1;
    }
    Ok(counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), BigInt::from(t)))
        .collect())
}

/// Largest per-vertex distance between two exact distributions.
pub fn max_deviation(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Exact check that the arborescence-count row vector annihilates the
/// Laplacian: `(T(v_1), …, T(v_n)) · Δ = 0`.
pub fn verify_markov_tree(g: &DirectedMultigraph) -> bool {
    let tc = tree_counts(g);
    let prod = row_times_matrix(&tc.counts, &laplacian(g)).expect("dimensions agree");
    prod.iter().all(|x| x.is_zero())
}
