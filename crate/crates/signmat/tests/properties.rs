//! Property tests: randomized cross-checks between the production
//! algorithms and the brute-force oracles, plus format round-trips.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use signmat::exactla::{
    det_exact, is_psd_exact, rat, ratio, schur_complement, BlockSplit, Rational, SymMatrix,
};
use signmat::gf2::{det_gf2, mul_vec, nullspace_gf2, Gf2Matrix};
use signmat::graph::{support_graph, Graph};
use signmat::io::{emit_coord_matrix, emit_edge_list, parse_coord_matrix, parse_edge_list};
use signmat::matching::{
    extract_two_matching, has_perfect_two_matching, max_matching_general, nu_f,
    witness_non_expanding_independent_set,
};
use signmat::oracle;
use signmat::signlab::{count_invertible_signings, exists_invertible_signing};

/// Random symmetric integer matrix with entries in [-3, 3].
fn sym_int_matrix(max_n: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let cells = n * (n + 1) / 2;
            proptest::collection::vec(-3i64..=3, cells).prop_map(move |vals| {
                let mut m = SymMatrix::zero(n);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        m.set(i, j, rat(vals[k]));
                        k += 1;
                    }
                }
                m
            })
        })
}

/// Random symmetric rational matrix with small numerators/denominators.
fn sym_rat_matrix(max_n: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let cells = n * (n + 1) / 2;
            proptest::collection::vec((-6i64..=6, 1i64..=4), cells).prop_map(move |vals| {
                let mut m = SymMatrix::zero(n);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        let (p, q) = vals[k];
                        m.set(i, j, ratio(p, q));
                        k += 1;
                    }
                }
                m
            })
        })
}

/// Random graph, optionally with loops, from a bit mask over vertex pairs.
fn random_graph(max_n: usize, loops: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let slots = if loops { n * (n + 1) / 2 } else { n * (n - 1) / 2 };
            proptest::collection::vec(proptest::bool::ANY, slots).prop_map(move |bits| {
                let mut g = Graph::new(n, loops);
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        if i == j && !loops {
                            continue;
                        }
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
}

fn sym_mod2(m: &SymMatrix) -> Gf2Matrix {
    Gf2Matrix::from_sym_mod2(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_matches_permutation_expansion(m in sym_int_matrix(5)) {
        prop_assert_eq!(det_exact(&m), oracle::permutation_expansion_det(&m).unwrap());
    }

    #[test]
    fn det_gf2_is_det_mod_2(m in sym_int_matrix(5)) {
        let exact = det_exact(&m);
        prop_assert!(exact.denom().is_one());
        prop_assert_eq!(det_gf2(&sym_mod2(&m)).unwrap(), exact.numer().is_odd());
    }

    #[test]
    fn nullspace_vectors_lie_in_kernel(m in sym_int_matrix(6)) {
        let a = sym_mod2(&m);
        let basis = nullspace_gf2(&a);
        prop_assert_eq!(basis.len(), a.cols() - a.rank());
        for x in &basis {
            prop_assert!(mul_vec(&a, x).iter().all(|&b| !b));
        }
    }

    #[test]
    fn schur_multiplies_determinants(d in sym_rat_matrix(6), p_pick in 1usize..6) {
        let n = d.n();
        prop_assume!(n >= 2);
        let p = 1 + p_pick % (n - 1);
        let split = BlockSplit::new(p, n).unwrap();
        // Leading block determinant.
        let mut a = SymMatrix::zero(p);
        for i in 0..p {
            for j in i..p {
                a.set(i, j, d.get(i, j));
            }
        }
        let det_a = det_exact(&a);
        prop_assume!(!det_a.is_zero());
        let dc = schur_complement(&d, split).unwrap();
        prop_assert_eq!(det_exact(&d), det_a * det_exact(&dc));
    }

    #[test]
    fn psd_test_matches_principal_minors(m in sym_int_matrix(4)) {
        prop_assert_eq!(is_psd_exact(&m), oracle::brute_is_psd(&m).unwrap());
    }

    #[test]
    fn coord_matrix_round_trip(m in sym_rat_matrix(6)) {
        prop_assert_eq!(parse_coord_matrix(&emit_coord_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn edge_list_round_trip(g in random_graph(8, true)) {
        prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn two_matching_matches_oracle(g in random_graph(6, true)) {
        let main = has_perfect_two_matching(&g);
        prop_assert_eq!(main, oracle::brute_has_perfect_two_matching(&g).unwrap());
        if main {
            let x = extract_two_matching(&g).unwrap();
            x.validate(&g).unwrap();
        } else {
            prop_assert!(extract_two_matching(&g).is_none());
        }
    }

    #[test]
    fn witness_iff_no_two_matching(g in random_graph(6, true)) {
        let w = witness_non_expanding_independent_set(&g);
        prop_assert_eq!(w.is_some(), !has_perfect_two_matching(&g));
        if let Some(s) = w {
            // Independent, loop-free, and deficient.
            for &v in &s {
                prop_assert!(!g.has_loop(v));
                prop_assert!(g.neighbors(v).iter().all(|u| !s.contains(u)));
            }
            prop_assert!(g.neighborhood(&s).len() < s.len());
        }
    }

    #[test]
    fn matching_size_matches_oracle(g in random_graph(9, false)) {
        let m = max_matching_general(&g);
        m.validate(&g).unwrap();
        prop_assert_eq!(m.size(), oracle::brute_nu(&g).unwrap());
    }

    #[test]
    fn nu_f_matches_lp_oracle(g in random_graph(8, false)) {
        let v = nu_f(&g);
        let two = oracle::brute_two_nu_f(&g).unwrap();
        prop_assert_eq!(v.clone() * rat(2), rat(i64::from(two as u32)));
        // nu <= nu_f <= n/2.
        let nu = rat(max_matching_general(&g).size() as i64);
        prop_assert!(nu <= v && v <= ratio(g.n() as i64, 2));
    }

    #[test]
    fn characterization_on_random_sign_matrices(m in sym_int_matrix(5)) {
        // Clamp entries to 0/±1 so the brute signing space stays small.
        let mut clamped = SymMatrix::zero(m.n());
        for (i, j, v) in m.iter() {
            clamped.set(i, j, rat(v.numer().sign() as i64 * i64::from(!v.is_zero())));
        }
        let (main, _) = exists_invertible_signing(&clamped);
        prop_assert_eq!(main, oracle::nonzero_permutation_exists(&clamped).unwrap());
        let brute = oracle::brute_count_invertible(&clamped, true).unwrap() > BigInt::zero();
        prop_assert_eq!(main, brute);
    }

    #[test]
    fn count_matches_oracle(g in random_graph(5, false)) {
        prop_assume!(g.m() <= 10);
        let report = count_invertible_signings(&g, None).unwrap();
        let brute = oracle::brute_count_invertible(&g.adjacency_matrix(), false).unwrap();
        prop_assert_eq!(report.invertible_count, brute);
    }

    #[test]
    fn support_graph_round_trip(g in random_graph(7, true)) {
        prop_assert_eq!(
            support_graph(&g.adjacency_matrix()).edges().collect::<Vec<_>>(),
            g.edges().collect::<Vec<_>>()
        );
    }
}

#[test]
fn count_zero_matrix_edge_cases() {
    // Graph with no edges: the empty signing leaves the zero matrix, which
    // is singular for n >= 1.
    let g = Graph::simple(2);
    let report = count_invertible_signings(&g, None).unwrap();
    assert!(report.invertible_count.is_zero());
    assert_eq!(report.total, BigInt::one());
    assert_eq!(report.bound, Rational::new(BigInt::one(), BigInt::from(8)));
}
