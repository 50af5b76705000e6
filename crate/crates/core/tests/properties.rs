mod common;

use common::block_range;
use hypercross_core::analysis::atlas::{matching_regions, AtlasQuery, WidthKind};
use hypercross_core::analysis::functions::TestFunction;
use hypercross_core::analysis::norms::{discrete_norm, reference_norm, NormSpec};
use hypercross_core::analysis::quadrature::{lq_distance, lq_error, QuadratureSpec};
use hypercross_core::analysis::Space;
use hypercross_core::interpolation::{interpolant_coefficients, UnivariateSamples};
use hypercross_core::kernels::Kernel;
use hypercross_core::smolyak::{
    build_index_set, IndexSet, MultiIndex, SampleStore, Smolyak, SparseGrid,
};
use hypercross_core::{Complex64, Exponent, TrigPoly};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        4 => (0.25..12.0f64).prop_map(|v| Exponent::new(v).unwrap()),
        1 => Just(Exponent::INFINITY),
        1 => Just(Exponent::new(1.0).unwrap()),
        1 => Just(Exponent::new(2.0).unwrap()),
    ]
}

fn univariate(terms: Vec<(i64, Complex64)>) -> TrigPoly {
    TrigPoly::from_terms(1, terms.into_iter().map(|(k, c)| (vec![k], c))).unwrap()
}

fn samples(p: &TrigPoly, level: u32) -> UnivariateSamples {
    UnivariateSamples::from_fn(level, |x| p.eval(&[x])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interpolation_reproduces_blocks(
        order in 1..=4u32,
        level in 0..=8u32,
        raw in prop::collection::vec((any::<u32>(), complex()), 1..8),
    ) {
        let (lo, hi) = block_range(order, level, true);
        let width = (hi - lo + 1) as u32;
        let f = univariate(raw.into_iter().map(|(k, c)| (lo + (k % width) as i64, c)).collect());
        let c = interpolant_coefficients(&Kernel::new(order).unwrap(), &samples(&f, level));
        prop_assert!(c.l2_distance(&f) < 1e-10);
    }

    #[test]
    fn interpolation_is_linear(
        order in 1..=3u32,
        level in 0..=7u32,
        f in prop::collection::vec((-40i64..40, complex()), 1..10),
        g in prop::collection::vec((-40i64..40, complex()), 1..10),
        a in complex(),
        b in complex(),
    ) {
        let kernel = Kernel::new(order).unwrap();
        let (f, g) = (univariate(f), univariate(g));
        let mut h = f.scaled(a);
        h.add_scaled(&g, b).unwrap();
        let mut lin = interpolant_coefficients(&kernel, &samples(&f, level)).scaled(a);
        lin.add_scaled(&interpolant_coefficients(&kernel, &samples(&g, level)), b).unwrap();
        prop_assert!(interpolant_coefficients(&kernel, &samples(&h, level)).l2_distance(&lin) < 1e-10);
    }

    #[test]
    fn index_sets_are_downward_closed_and_monotone(
        rest in prop::collection::vec(0.0..2.0f64, 0..3),
        m in 0..8u32,
    ) {
        let mut eta = vec![1.0];
        eta.extend(rest.iter().map(|v| 1.0 + v));
        let small = build_index_set(&eta, m as f64).unwrap();
        let large = build_index_set(&eta, (m + 1) as f64).unwrap();
        prop_assert!(small.is_downward_closed());
        prop_assert!(small.iter().all(|j| large.contains(j)));
        let n_small = SparseGrid::new(&small).unwrap().len();
        let n_large = SparseGrid::new(&large).unwrap().len();
        prop_assert!(n_small < n_large);
        // the full grid of level (m, 0, …, 0) is always present
        let mut corner = vec![0u32; eta.len()];
        corner[0] = m;
        prop_assert!(small.contains(&MultiIndex::new(corner)));
        prop_assert!(n_small >= 1 << m);
    }

    #[test]
    fn blocks_vanish_outside_polynomial_level(
        order in 1..=3u32,
        l1 in 0..=4u32,
        l2 in 0..=4u32,
        raw in prop::collection::vec((any::<u32>(), any::<u32>(), complex()), 1..5),
    ) {
        let (a, b) = (block_range(order, l1, true), block_range(order, l2, true));
        let pick = |(lo, hi): (i64, i64), k: u32| lo + (k % (hi - lo + 1) as u32) as i64;
        let f = TrigPoly::from_terms(
            2,
            raw.into_iter().map(|(k1, k2, c)| (vec![pick(a, k1), pick(b, k2)], c)),
        ).unwrap();
        let set = IndexSet::full_box(&[6, 6]);
        let kernel = Kernel::new(order).unwrap();
        let store = SampleStore::fill(SparseGrid::new(&set).unwrap(), |x| f.eval(x));
        let op = Smolyak::new(&kernel, &set, &store).unwrap();
        for j in set.iter() {
            if j.levels()[0] > l1 || j.levels()[1] > l2 {
                prop_assert!(op.block_coefficients(j).unwrap().l2_distance(&TrigPoly::new(2)) < 1e-10);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn norms_are_homogeneous(
        alpha in 0.01..50.0f64,
        which in 0..4usize,
        space in prop_oneof![Just(Space::W), Just(Space::F), Just(Space::B)],
        p in prop_oneof![Just(1.0), Just(2.0), Just(3.0)],
        theta in prop_oneof![Just(1.0), Just(2.0), Just(f64::INFINITY)],
        r in 1.0..2.0f64,
    ) {
        let f = match which {
            0 => TestFunction::hat_tensor(2).unwrap(),
            1 => TestFunction::korobov(vec![2.5, 3.0]).unwrap(),
            2 => TestFunction::constant(2, Complex64::new(1.0, -1.0)),
            _ => TestFunction::trigpoly(TrigPoly::from_terms(2, [
                (vec![2, -1], Complex64::new(1.0, 0.0)),
                (vec![0, 3], Complex64::new(0.0, -0.5)),
            ]).unwrap()),
        };
        let theta = if theta.is_infinite() { Exponent::INFINITY } else { Exponent::new(theta).unwrap() };
        let spec = NormSpec::new(space, vec![r, r + 0.25], Exponent::new(p).unwrap(), theta).unwrap();
        let kernel = Kernel::new(2).unwrap();
        let scaled = f.scaled(alpha);
        let d1 = discrete_norm(&kernel, &f, &spec, 3).unwrap().value;
        let d2 = discrete_norm(&kernel, &scaled, &spec, 3).unwrap().value;
        prop_assert!((d2 - alpha * d1).abs() <= 1e-12 * alpha * d1.max(1e-300) * 10.0);
        let r1 = reference_norm(&f, &spec).unwrap();
        let r2 = reference_norm(&scaled, &spec).unwrap();
        if r1.is_finite() {
            prop_assert!((r2 - alpha * r1).abs() <= 1e-11 * alpha * r1);
        } else {
            // f outside the space: both norms diverge
            prop_assert!(r2.is_infinite());
        }
    }

    #[test]
    fn quadrature_error_is_parseval(
        f in prop::collection::vec(((-7i64..7, -7i64..7), complex()), 1..10),
        g in prop::collection::vec(((-7i64..7, -7i64..7), complex()), 0..10),
        q in exponent(),
    ) {
        let to_poly = |v: Vec<((i64, i64), Complex64)>| {
            TrigPoly::from_terms(2, v.into_iter().map(|((a, b), c)| (vec![a, b], c))).unwrap()
        };
        let (f, g) = (to_poly(f), to_poly(g));
        let quad = QuadratureSpec::tensor_grid(32);
        let two = Exponent::new(2.0).unwrap();
        let err = lq_error(&TestFunction::trigpoly(f.clone()), &g, two, &quad).unwrap();
        prop_assert!((err - f.l2_distance(&g)).abs() < 1e-10);
        // L_q distances are symmetric and vanish on the diagonal
        let d = lq_distance(&f, &g, q, 32).unwrap();
        let back = lq_distance(&g, &f, q, 32).unwrap();
        prop_assert!((d - back).abs() < 1e-12 * (1.0 + d));
        prop_assert!(lq_distance(&f, &f, two, 32).unwrap() == 0.0);
    }
}

fn spaces() -> [Space; 3] {
    [Space::W, Space::F, Space::B]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn atlas_regions_are_disjoint(
        p in exponent(),
        q in exponent(),
        theta in exponent(),
        r in 0.0..4.0f64,
        mu in 1..4usize,
    ) {
        for space in spaces() {
            for width in WidthKind::ALL {
                let query = AtlasQuery { space, width, p, q, theta, r, mu };
                let hits = matching_regions(&query);
                prop_assert!(hits.len() <= 1, "{query:?}: {hits:?}");
            }
        }
    }
}
