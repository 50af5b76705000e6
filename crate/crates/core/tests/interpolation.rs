mod common;

use common::{block_range, random_complex, rng, window_weight};
use hypercross_core::interpolation::{
    grid_nodes, interpolant_coefficients, interpolate_1d, DyadicBlock, UnivariateSamples,
};
use hypercross_core::kernels::Kernel;
use hypercross_core::{Complex64, TrigPoly};
use rand::Rng;

fn random_poly(r: &mut rand_chacha::ChaCha8Rng, (lo, hi): (i64, i64), terms: usize) -> TrigPoly {
    let mut p = TrigPoly::new(1);
    for _ in 0..terms {
        p.add_term(&[r.random_range(lo..=hi)], random_complex(r))
            .unwrap();
    }
    p
}

fn samples(p: &TrigPoly, level: u32) -> UnivariateSamples {
    UnivariateSamples::from_fn(level, |x| p.eval(&[x])).unwrap()
}

#[test]
fn aliasing_formula() {
    // ĉ(l) = W(l/2^j) Σ_m f̂(l + m 2^j)
    let mut r = rng(21);
    for case in 0..100 {
        let order = 1 + case % 3;
        let level = r.random_range(0..=6u32);
        let kernel = Kernel::new(order).unwrap();
        let n = 1i64 << level;
        let f = random_poly(&mut r, (-3 * n - 2, 3 * n + 2), 12);
        let c = interpolant_coefficients(&kernel, &samples(&f, level));
        for l in -2 * n..=2 * n {
            let folded: Complex64 = f
                .iter()
                .filter(|(k, _)| (k[0] - l).rem_euclid(n) == 0)
                .map(|(_, v)| v)
                .sum();
            let expected = folded * window_weight(order, level, l);
            assert!((c.get(&[l]) - expected).norm() < 1e-10, "case {case} l={l}");
        }
    }
}

#[test]
fn reproduces_dyadic_blocks() {
    let mut r = rng(22);
    for order in 1..=4u32 {
        let kernel = Kernel::new(order).unwrap();
        for level in 0..=9u32 {
            let f = random_poly(&mut r, block_range(order, level, true), 8);
            let c = interpolant_coefficients(&kernel, &samples(&f, level));
            assert!(c.l2_distance(&f) < 1e-11, "L={order} j={level}");
            for _ in 0..10 {
                let x: f64 = r.random_range(-3.2..3.2);
                assert!(
                    (interpolate_1d(&kernel, &samples(&f, level), x) - f.eval(&[x])).norm() < 1e-10
                );
            }
        }
    }
}

#[test]
fn interpolates_arbitrary_data() {
    let mut r = rng(23);
    for order in 1..=3u32 {
        let kernel = Kernel::new(order).unwrap();
        for level in 0..=8u32 {
            let values: Vec<Complex64> = (0..1usize << level)
                .map(|_| random_complex(&mut r))
                .collect();
            let s = UnivariateSamples::new(level, values.clone()).unwrap();
            let c = interpolant_coefficients(&kernel, &s);
            for (x, v) in grid_nodes(level).iter().zip(&values) {
                // coefficient path, not the node shortcut of interpolate_1d
                assert!((c.eval(&[*x]) - v).norm() < 1e-10);
                let direct: Complex64 = grid_nodes(level)
                    .iter()
                    .zip(&values)
                    .map(|(y, w)| w * kernel.eval(level, x - y))
                    .sum();
                assert!((direct - v).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn symmetric_block_is_not_reproducible_for_dirichlet() {
    // e^{±i 2^{j-1} x} coincide on the grid, so no sampling operator can
    // reproduce both ends of P^1_j
    let kernel = Kernel::new(1).unwrap();
    for level in 1..=8u32 {
        let top = 1i64 << (level - 1);
        let plus = TrigPoly::from_terms(1, [(vec![top], Complex64::new(1.0, 0.0))]).unwrap();
        let minus = TrigPoly::from_terms(1, [(vec![-top], Complex64::new(1.0, 0.0))]).unwrap();
        assert_eq!(DyadicBlock::new(1, level).radius(), top);
        for x in grid_nodes(level) {
            assert!((plus.eval(&[x]) - minus.eval(&[x])).norm() < 1e-12);
        }
        let c = interpolant_coefficients(&kernel, &samples(&plus, level));
        assert!(c.l2_distance(&minus) < 1e-12);
    }
}
