mod common;

use std::collections::HashSet;

use common::{random_cross_poly, random_point, rng};
use hypercross_core::kernels::Kernel;
use hypercross_core::smolyak::{
    build_index_set, smolyak_coefficients, smolyak_eval, IndexSet, MultiIndex, SampleStore,
    Smolyak, SparseGrid,
};
use hypercross_core::{Complex64, TrigPoly};

const FINE: u32 = 24;

/// Nodes of every full grid in `set`, keyed on the level-`FINE` lattice.
fn enumerate_nodes(set: &IndexSet) -> HashSet<Vec<i64>> {
    let mut out = HashSet::new();
    for j in set.iter() {
        let axes: Vec<Vec<i64>> = j
            .levels()
            .iter()
            .map(|&l| {
                let n = 1i64 << l;
                let lo = if l == 0 { 0 } else { -n / 2 };
                (lo..lo + n).map(|u| u << (FINE - l)).collect()
            })
            .collect();
        let mut cur = vec![Vec::new()];
        for axis in &axes {
            cur = cur
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    axis.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(*v);
                        q
                    })
                })
                .collect();
        }
        out.extend(cur);
    }
    out
}

fn grid_keys(grid: &SparseGrid) -> HashSet<Vec<i64>> {
    (0..grid.len())
        .map(|i| {
            grid.point(i)
                .iter()
                .map(|x| (x / std::f64::consts::TAU * (1u64 << FINE) as f64).round() as i64)
                .collect()
        })
        .collect()
}

#[test]
fn grid_matches_enumerate_and_dedup() {
    for eta in [
        vec![1.0],
        vec![1.0, 1.0],
        vec![1.0, 1.5],
        vec![1.0, 1.0, 2.0],
        vec![1.0, 1.3, 1.7],
    ] {
        for m in 0..=7u32 {
            let set = build_index_set(&eta, m as f64).unwrap();
            let grid = SparseGrid::new(&set).unwrap();
            let oracle = enumerate_nodes(&set);
            assert_eq!(grid.len(), oracle.len(), "eta={eta:?} m={m}");
            assert_eq!(grid_keys(&grid), oracle, "eta={eta:?} m={m}");
        }
    }
}

#[test]
fn small_grid_counts() {
    let grid = |eta: &[f64], m: f64| {
        SparseGrid::new(&build_index_set(eta, m).unwrap())
            .unwrap()
            .len()
    };
    assert_eq!(grid(&[1.0], 5.0), 32);
    assert_eq!(grid(&[1.0, 1.0], 2.0), 8);
    // isotropic d = 2: (m + 2) 2^{m-1} nodes for m ≥ 1
    for m in 1..=12u32 {
        assert_eq!(grid(&[1.0, 1.0], m as f64), (m as usize + 2) << (m - 1));
    }
}

#[test]
fn index_sets_are_downward_closed() {
    for eta in [vec![1.0, 1.0], vec![1.0, 2.5], vec![1.0, 1.1, 3.0]] {
        for m in 0..=9u32 {
            let set = build_index_set(&eta, m as f64).unwrap();
            assert!(set.is_downward_closed());
            let total: i64 = set.combination_coefficients().iter().map(|(_, c)| c).sum();
            assert_eq!(total, 1);
        }
    }
}

fn cross_case(dim: usize, m: u32, order: u32, seed: u64, reproducible: bool) -> f64 {
    let set = build_index_set(&vec![1.0; dim], m as f64).unwrap();
    let kernel = Kernel::new(order).unwrap();
    let mut r = rng(seed);
    let f = random_cross_poly(&mut r, &set, order, 10, reproducible);
    let store = SampleStore::fill(SparseGrid::new(&set).unwrap(), |x| f.eval(x));
    let op = Smolyak::new(&kernel, &set, &store).unwrap();
    (0..20)
        .map(|_| {
            let x = random_point(&mut r, dim);
            (op.eval(&x).unwrap() - f.eval(&x)).norm()
        })
        .fold(0.0, f64::max)
}

#[test]
fn hyperbolic_cross_is_reproduced() {
    for dim in [2usize, 3] {
        for m in 0..=6u32 {
            for order in 1..=3u32 {
                let worst = cross_case(dim, m, order, 100 * m as u64 + order as u64, true);
                assert!(worst < 1e-9, "d={dim} m={m} L={order}: {worst}");
            }
        }
    }
}

#[test]
fn interpolates_on_the_sparse_grid() {
    let smooth =
        |x: &[f64]| Complex64::new(x.iter().map(|t| t.cos()).sum::<f64>().exp(), x[0].sin());
    for dim in 1..=3usize {
        for m in 0..=6u32 {
            for order in 1..=3u32 {
                let set = build_index_set(&vec![1.0; dim], m as f64).unwrap();
                let kernel = Kernel::new(order).unwrap();
                let grid = SparseGrid::new(&set).unwrap();
                let points: Vec<Vec<f64>> = grid.points().collect();
                let store = SampleStore::fill(grid, smooth);
                let op = Smolyak::new(&kernel, &set, &store).unwrap();
                for x in &points {
                    assert!(
                        (op.eval(x).unwrap() - smooth(x)).norm() < 1e-9,
                        "d={dim} m={m} L={order}"
                    );
                }
            }
        }
    }
}

#[test]
fn direct_and_coefficient_paths_agree() {
    let mut r = rng(31);
    let f = |x: &[f64]| Complex64::new((x[0] + 2.0 * x[1].cos()).sin(), 0.5 * x[1]);
    for order in 1..=3u32 {
        let set = build_index_set(&[1.0, 1.0], 6.0).unwrap();
        let kernel = Kernel::new(order).unwrap();
        let store = SampleStore::fill(SparseGrid::new(&set).unwrap(), f);
        let c = smolyak_coefficients(&kernel, &set, &store).unwrap();
        for _ in 0..50 {
            let x = random_point(&mut r, 2);
            let direct = smolyak_eval(&kernel, &set, &store, &x).unwrap();
            assert!((direct - c.eval(&x)).norm() < 1e-8, "L={order}");
        }
    }
}

#[test]
fn blocks_telescope_to_the_operator() {
    let f = |x: &[f64]| Complex64::new((x[0].cos() + x[1].sin()).exp(), 0.0);
    let set = build_index_set(&[1.0, 1.5], 5.0).unwrap();
    let kernel = Kernel::new(2).unwrap();
    let store = SampleStore::fill(SparseGrid::new(&set).unwrap(), f);
    let op = Smolyak::new(&kernel, &set, &store).unwrap();
    let mut sum = TrigPoly::new(2);
    for j in set.iter() {
        sum.add_scaled(&op.block_coefficients(j).unwrap(), Complex64::new(1.0, 0.0))
            .unwrap();
    }
    assert!(sum.l2_distance(&op.coefficients().unwrap()) < 1e-12);
}

#[test]
fn blocks_vanish_above_the_polynomial_level() {
    // f ∈ T^L_ℓ ⇒ q_j f = 0 unless j ≤ ℓ componentwise
    let order = 2;
    let f = TrigPoly::from_terms(
        2,
        [
            (vec![1, -2], Complex64::new(1.0, 0.5)),
            (vec![0, 1], Complex64::new(-0.3, 0.0)),
        ],
    )
    .unwrap();
    // |k_1| ≤ 2^{3-2}, |k_2| ≤ 2^{4-2}: f ∈ T^2_{(3,4)}
    let set = IndexSet::full_box(&[6, 6]);
    let kernel = Kernel::new(order).unwrap();
    let store = SampleStore::fill(SparseGrid::new(&set).unwrap(), |x| f.eval(x));
    let op = Smolyak::new(&kernel, &set, &store).unwrap();
    for j in set.iter() {
        let norm = op
            .block_coefficients(j)
            .unwrap()
            .l2_distance(&TrigPoly::new(2));
        if j.levels()[0] > 3 || j.levels()[1] > 4 {
            assert!(norm < 1e-10, "j={j}: {norm}");
        }
    }
    assert!(!op
        .block_coefficients(&MultiIndex::new(vec![0, 0]))
        .unwrap()
        .is_empty());
}
