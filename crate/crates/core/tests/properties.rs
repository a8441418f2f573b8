//! Randomized property tests: continued-fraction round trips, duality as an
//! involution, series well-formedness, agreement of the sequential and
//! parallel jet counters, and shrinking image counts.

use num_rational::Rational64;
use proptest::prelude::*;

use torzeta::lattice::{dual_sequence, hj_expand, hj_value, resolution_fan};
use torzeta::oracle::{count_image_jets, count_jets_seq, surface_equations, JetCountTask};
use torzeta::zeta::assemble_zeta;
use torzeta::SurfaceSingularity;

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=30)
        .prop_flat_map(|q| (1i64..q, Just(q)))
        .prop_filter("coprime", |(p, q)| num_integer::gcd(*p, *q) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_evaluates_back((p, q) in coprime_pair()) {
        let seq = hj_expand(q, p).unwrap();
        prop_assert_eq!(hj_value(&seq), Rational64::new(q, p));
    }

    #[test]
    fn duality_is_an_involution((p, q) in coprime_pair()) {
        let seq = hj_expand(q, p).unwrap();
        let dual = dual_sequence(&seq).unwrap();
        prop_assert_eq!(dual_sequence(&dual).unwrap(), seq);
    }

    #[test]
    fn fan_is_unimodular_and_series_polynomial((p, q) in coprime_pair()) {
        let res = resolution_fan(SurfaceSingularity::new(p, q).unwrap()).unwrap();
        for w in res.fan_vectors.windows(2) {
            prop_assert_eq!(w[0].0 * w[1].1 - w[0].1 * w[1].0, 1);
        }
        let zf = assemble_zeta(&res);
        // Coefficients exist as honest polynomials in L (no negative powers).
        for c in zf.series_coefficients(3).unwrap() {
            prop_assert!(c.is_polynomial());
            prop_assert!(c.min_exp().map_or(true, |e| e >= 0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn jet_counts_are_partition_independent((p, q) in coprime_pair(), n in 1usize..=2) {
        let res = resolution_fan(SurfaceSingularity::new(p, q).unwrap()).unwrap();
        let (equations, num_vars) = surface_equations(&res.c_seq);
        let task = JetCountTask { equations, num_vars, order: n, field: 3, at_origin: true };
        if (3f64).powi((num_vars * n) as i32) > 1e6 {
            return Ok(());
        }
        let seq = count_jets_seq(&task).unwrap();
        #[cfg(feature = "parallel")]
        prop_assert_eq!(torzeta::oracle::count_jets_par(&task).unwrap(), seq);
        // Smooth special case: with no equations the count is exact.
        let free = JetCountTask {
            equations: vec![],
            num_vars: 2,
            order: n,
            field: 3,
            at_origin: true,
        };
        prop_assert_eq!(count_jets_seq(&free).unwrap(), 9u64.pow(n as u32));
        let _ = seq;
    }

    #[test]
    fn image_counts_shrink(m in 2usize..=4) {
        // x0 x2 = x1^2 at the double point: images can only shrink as the
        // source order grows.
        let res = resolution_fan(SurfaceSingularity::new(1, 2).unwrap()).unwrap();
        let (equations, num_vars) = surface_equations(&res.c_seq);
        let a = count_image_jets(&equations, num_vars, 2, m, 3).unwrap();
        let b = count_image_jets(&equations, num_vars, 2, m + 1, 3).unwrap();
        prop_assert!(b <= a);
    }
}
