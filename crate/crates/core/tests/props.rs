//! Property tests for the serialization formats and the exact linear
//! algebra, with independent oracles where they are cheap to state.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rotor_core::*;

fn graph_strategy() -> impl Strategy<Value = DirectedMultigraph> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(1..=n, 0..=4), n)
            .prop_map(|out| DirectedMultigraph::from_out_lists(out).unwrap())
    })
}

fn graph_and_state() -> impl Strategy<Value = (DirectedMultigraph, ChipRotorState)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.vertex_count();
        let rotors: Vec<BoxedStrategy<Option<usize>>> = g
            .vertices()
            .map(|v| {
                let deg = g.out_degree(v);
                if deg > 0 {
                    (0..deg).prop_map(Some).boxed()
                } else {
                    Just(None).boxed()
                }
            })
            .collect();
        (Just(g), 1..=n, rotors).prop_map(|(g, chip, indices)| {
            let config = RotorConfiguration::from_indices(&g, indices).unwrap();
            let state = ChipRotorState::new(&g, chip, config).unwrap();
            (g, state)
        })
    })
}

fn det_cofactor(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut det = BigInt::zero();
    for c in 0..n {
        if m.get(0, c).is_zero() {
            continue;
        }
        let minor = IntMatrix::from_rows(
            (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&cc| cc != c)
                        .map(|cc| m.get(r, cc).clone())
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let term = m.get(0, c) * det_cofactor(&minor);
        if c % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

fn square_matrix(max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), n).prop_map(|rows| {
            IntMatrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph_text_round_trips(g in graph_strategy()) {
        prop_assert_eq!(parse_digraph(&serialize_digraph(&g)).unwrap(), g);
    }

    #[test]
    fn degree_sums_equal_edge_count(g in graph_strategy()) {
        let out: usize = g.vertices().map(|v| g.out_degree(v)).sum();
        let inn: usize = g.vertices().map(|v| g.in_degree(v)).sum();
        prop_assert_eq!(out, g.edge_count());
        prop_assert_eq!(inn, g.edge_count());
        let pairwise: usize = g
            .vertices()
            .map(|v| g.vertices().map(|w| g.multiplicity(v, w)).sum::<usize>())
            .sum();
        prop_assert_eq!(pairwise, g.edge_count());
    }

    #[test]
    fn laplacian_rows_vanish(g in graph_strategy()) {
        let lap = laplacian(&g);
        for r in 0..lap.rows() {
            let sum: BigInt = lap.row(r).iter().sum();
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn bareiss_matches_cofactor(m in square_matrix(4)) {
        prop_assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m));
    }

    #[test]
    fn state_text_round_trips((g, state) in graph_and_state()) {
        let text = state.to_string();
        let (chip, indices) = parse_state(&text).unwrap();
        let config = RotorConfiguration::from_indices(&g, indices).unwrap();
        prop_assert_eq!(ChipRotorState::new(&g, chip, config).unwrap(), state);
    }

    #[test]
    fn step_preserves_unicycles_on_sinkless_graphs((g, state) in graph_and_state()) {
        if g.vertices().all(|v| g.out_degree(v) > 0)
            && is_unicycle(&g, &state).unwrap()
        {
            prop_assert!(is_unicycle(&g, &rotor_step(&g, &state)).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_transform_is_unimodular_and_spans_the_same_lattice(
        rows in proptest::collection::vec(
            proptest::collection::vec(-5i64..=5, 3), 0..=4)
    ) {
        let b = IntMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
        .unwrap();
        let b = if b.rows() == 0 { IntMatrix::zeros(0, 3) } else { b };
        let (h, u) = hermite_normal_form(&b);
        prop_assert_eq!(u.matmul(&b).unwrap(), h.clone());
        prop_assert_eq!(det_exact(&u).unwrap().abs(), BigInt::one());

        let in_h = RowLattice::new(&h);
        for r in 0..b.rows() {
            prop_assert!(in_h.contains(b.row(r)).unwrap());
        }
        let in_b = RowLattice::new(&b);
        for r in 0..h.rows() {
            prop_assert!(in_b.contains(h.row(r)).unwrap());
        }
    }

    #[test]
    fn membership_agrees_with_exhaustive_search(
        r1 in proptest::collection::vec(-4i64..=4, 2),
        r2 in proptest::collection::vec(-4i64..=4, 2),
        target in proptest::collection::vec(-6i64..=6, 2),
    ) {
        let basis = IntMatrix::from_rows(vec![
            r1.iter().map(|&x| BigInt::from(x)).collect(),
            r2.iter().map(|&x| BigInt::from(x)).collect(),
        ])
        .unwrap();
        let vec: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
        let found = (-48i64..=48).any(|a| {
            (-48i64..=48).any(|b| {
                (0..2).all(|c| a * r1[c] + b * r2[c] == target[c])
            })
        });
        prop_assert_eq!(lattice_member(&vec, &basis).unwrap(), found);
    }
}
