//! Sparse grids as unions of dyadic tensor grids, and sample storage.
//!
//! A node is identified by its integer coordinates `v_i = u_i 2^{J_i - j_i}`
//! on the finest level `J_i` reached in direction `i`, so coincident nodes of
//! different level grids share one key and no floating point comparison is
//! involved.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::index::IndexSet;
use crate::error::{Error, Result};
use crate::interpolation::{level_offset, level_size};
use crate::kernels::check_level;
use crate::TAU;

/// Integer coordinates `u` whose node first appears on level `l`.
fn hierarchical_surplus(level: u32) -> Vec<i64> {
    match level {
        0 => vec![0],
        1 => vec![-1],
        _ => {
            let half = 1i64 << (level - 1);
            (-half..half).filter(|u| u.rem_euclid(2) == 1).collect()
        }
    }
}

/// Level on which the finest-level coordinate `v` first appears.
fn first_level(v: i64, finest: u32) -> u32 {
    if v == 0 {
        0
    } else {
        finest - v.trailing_zeros().min(finest)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseGrid {
    dim: usize,
    finest: Vec<u32>,
    /// Row-major `len × dim` finest-level coordinates.
    coords: Vec<i64>,
    index: BTreeMap<u128, usize>,
}

impl SparseGrid {
    /// Deduplicated union of the full grids of every level in `set`.
    pub fn new(set: &IndexSet) -> Result<Self> {
        let finest = set.max_levels();
        for &l in &finest {
            check_level(l)?;
        }
        if finest.iter().sum::<u32>() > 127 {
            return Err(Error::InvalidParameter(
                "sparse grid too fine to key".into(),
            ));
        }
        let dim = set.dim();
        let mut grid = Self {
            dim,
            finest,
            coords: Vec::new(),
            index: BTreeMap::new(),
        };
        let mut v = vec![0i64; dim];
        for j in set.iter() {
            // only nodes new on level j; their union over a downward closed
            // set is the union of the full grids
            let axes: Vec<Vec<i64>> = j
                .levels()
                .iter()
                .map(|&l| hierarchical_surplus(l))
                .collect();
            let mut cursor = vec![0usize; dim];
            'product: loop {
                for d in 0..dim {
                    let shift = grid.finest[d] - j.levels()[d];
                    v[d] = axes[d][cursor[d]] << shift;
                }
                grid.insert(&v);
                let mut d = dim;
                loop {
                    if d == 0 {
                        break 'product;
                    }
                    d -= 1;
                    cursor[d] += 1;
                    if cursor[d] < axes[d].len() {
                        break;
                    }
                    cursor[d] = 0;
                }
            }
        }
        Ok(grid)
    }

    fn insert(&mut self, v: &[i64]) {
        let key = self.pack(v).expect("node inside the finest grid");
        let next = self.len();
        self.index.entry(key).or_insert_with(|| {
            self.coords.extend_from_slice(v);
            next
        });
    }

    fn pack(&self, v: &[i64]) -> Option<u128> {
        let mut key = 0u128;
        for (&vi, &l) in v.iter().zip(&self.finest) {
            let shifted = vi + level_offset(l);
            if shifted < 0 || shifted >= level_size(l) as i64 {
                return None;
            }
            key = (key << l) | shifted as u128;
        }
        Some(key)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Finest level per direction.
    pub fn finest_levels(&self) -> &[u32] {
        &self.finest
    }

    /// Finest-level integer coordinates of node `i`.
    pub fn coordinates(&self, i: usize) -> &[i64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Node `i` in `[-π, π)^d`.
    pub fn point(&self, i: usize) -> Vec<f64> {
        self.coordinates(i)
            .iter()
            .zip(&self.finest)
            .map(|(&v, &l)| TAU * v as f64 / level_size(l) as f64)
            .collect()
    }

    /// Per direction, the coarsest level whose grid contains node `i`.
    pub fn node_levels(&self, i: usize) -> Vec<u32> {
        self.coordinates(i)
            .iter()
            .zip(&self.finest)
            .map(|(&v, &l)| first_level(v, l))
            .collect()
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        if v.len() != self.dim {
            return None;
        }
        self.pack(v).and_then(|k| self.index.get(&k).copied())
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// Function values on a sparse grid, one per geometric node.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStore {
    grid: SparseGrid,
    values: Vec<Complex64>,
}

impl SampleStore {
    /// Evaluates `f` exactly once at every node.
    pub fn fill<F: FnMut(&[f64]) -> Complex64>(grid: SparseGrid, mut f: F) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.point(i))).collect();
        Self { grid, values }
    }

    /// Values aligned with the grid's node order.
    pub fn from_values(grid: SparseGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &SparseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, v: &[i64]) -> Option<Complex64> {
        self.grid.index_of(v).map(|i| self.values[i])
    }

    /// Row-major samples on the full grid of level vector `levels`, read by
    /// stride from the stored nodes.
    pub fn level_samples(&self, levels: &[u32]) -> Result<Vec<Complex64>> {
        let dim = self.grid.dim;
        if levels.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: levels.len(),
            });
        }
        if let Some(d) = (0..dim).find(|&d| levels[d] > self.grid.finest[d]) {
            return Err(Error::MissingSample(format!(
                "level {} exceeds finest level {} in direction {}",
                levels[d], self.grid.finest[d], d
            )));
        }
        let total: usize = levels.iter().map(|&l| level_size(l)).product();
        let mut out = Vec::with_capacity(total);
        let mut cursor = vec![0i64; dim];
        let mut v = vec![0i64; dim];
        for _ in 0..total {
            for d in 0..dim {
                let u = cursor[d] - level_offset(levels[d]);
                v[d] = u << (self.grid.finest[d] - levels[d]);
            }
            match self.get(&v) {
                Some(val) => out.push(val),
                None => return Err(Error::MissingSample(format!("{v:?}"))),
            }
            for d in (0..dim).rev() {
                cursor[d] += 1;
                if cursor[d] < level_size(levels[d]) as i64 {
                    break;
                }
                cursor[d] = 0;
            }
        }
        Ok(out)
    }
}
