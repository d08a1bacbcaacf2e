//! Exact-arithmetic toolkit for the rotor-router model on finite directed
//! multigraphs.
//!
//! The rotor-router operation deterministically routes a single chip: at
//! the chip's vertex the rotor advances to the next out-edge in cyclic
//! order and the chip moves along it. On a strongly connected digraph the
//! recurrent states (the unicycles) split into orbits whose size and
//! count are governed by the arborescence counts `T(v)` and their gcd,
//! and the walk's long-run visit frequencies coincide with the stationary
//! distribution of the simple random walk. This crate computes all of
//! those quantities exactly and cross-checks the closed forms against
//! brute-force enumeration at desk scale.
//!
//! Modules:
//!
//! - [`graph`]: directed multigraphs with rotor orderings, the text
//!   interchange format, structural predicates, and graph generators.
//! - [`linalg`]: exact integer matrices, Laplacians, determinants,
//!   arborescence counts, Hermite normal form, and row-lattice queries.
//! - [`rotor`]: the rotor-router step, walks, unicycle detection, orbit
//!   enumeration, and the chip-addition operator on sink digraphs.
//! - [`analysis`]: orbit-structure reports and stationary distributions,
//!   exact and simulated.
//! - [`experiments`]: deterministic Monte-Carlo runs and family sweeps
//!   with CSV/JSON output.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod linalg;
pub mod rotor;

pub use analysis::{
    empirical_frequency, max_deviation, orbit_report, orbit_report_with_budget,
    rational_string, stationary_exact, stationary_power_iteration, verify_markov_tree,
    OrbitReport, SimulatedOrbits, StationaryDistribution, DEFAULT_POWER_ITERATIONS,
    DEFAULT_POWER_TOLERANCE,
};
pub use error::{Error, Result};
pub use experiments::{
    experiment_csv, experiment_json, run_family_sweep, run_m1_experiment, sweep_csv,
    sweep_json, ExperimentRecord, Family, FamilySweepRow,
};
pub use graph::{
    gen_bidirected_complete, gen_cycle, gen_random_strong_digraph,
    gen_random_strong_digraph_with_cap, gen_thm2_family, gen_two_four_chain, parse_digraph,
    serialize_digraph, DirectedMultigraph, EdgeRef, Vertex, DEFAULT_REJECTION_CAP,
};
pub use linalg::{
    brute_force_tree_counts, delete_col, delete_row_col, det_exact, hermite_normal_form,
    laplacian, lattice_member, order_in_quotient, row_times_matrix, tree_counts, IntMatrix,
    RowLattice, TreeCountVector,
};
pub use rotor::{
    apply_chip_config, chip_addition, chip_addition_with_budget, enumerate_unicycles,
    find_recurrent, is_acyclic_config, is_unicycle, orbit_of, parse_state, partition_orbits,
    rotor_configurations, rotor_step, rotor_step_with_edge, rotor_walk, state_space_size,
    ChipConfiguration, ChipRotorState, RotorConfiguration, DEFAULT_STATE_BUDGET,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
