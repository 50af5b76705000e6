//! Multi-indices and downward closed index sets.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Relative slack in the anisotropic threshold `η·j ≤ m η₁`.
const THRESHOLD_SLACK: f64 = 1e-12;

/// Level vector `j ∈ N_0^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(levels: Vec<u32>) -> Self {
        Self(levels)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn levels(&self) -> &[u32] {
        &self.0
    }

    /// `|j|₁`.
    pub fn norm1(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self + b` for `b ∈ {-1, 0}^d` encoded as a bit mask (bit `i` set
    /// means `b_i = -1`); `None` when a component would become negative.
    pub fn lower_neighbor(&self, mask: u32) -> Option<MultiIndex> {
        let mut out = self.0.clone();
        for (i, v) in out.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *v = v.checked_sub(1)?;
            }
        }
        Some(Self(out))
    }

    /// `self + b` for `b ∈ {0, 1}^d` encoded as a bit mask.
    pub fn upper_neighbor(&self, mask: u32) -> MultiIndex {
        Self(
            self.0
                .iter()
                .enumerate()
                .map(|(i, v)| v + (mask >> i & 1))
                .collect(),
        )
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Parameters of an anisotropic index set.
#[derive(Debug, Clone, PartialEq)]
pub struct Anisotropy {
    pub eta: Vec<f64>,
    pub m: f64,
}

/// Finite downward closed set `Δ ⊂ N_0^d`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSet {
    dim: usize,
    members: Vec<MultiIndex>,
    anisotropy: Option<Anisotropy>,
}

impl IndexSet {
    /// Validates downward closure of an arbitrary member list.
    pub fn from_members(dim: usize, mut members: Vec<MultiIndex>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|j| j.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.dim(),
            });
        }
        members.sort();
        members.dedup();
        let set = Self {
            dim,
            members,
            anisotropy: None,
        };
        if set.is_empty() || !set.is_downward_closed() {
            return Err(Error::InvalidParameter(
                "index set is not downward closed".into(),
            ));
        }
        Ok(set)
    }

    /// Full box `{j : j ≤ levels}`.
    pub fn full_box(levels: &[u32]) -> Self {
        let mut members = Vec::new();
        let mut cur = vec![0u32; levels.len()];
        loop {
            members.push(MultiIndex(cur.clone()));
            let mut d = levels.len();
            loop {
                if d == 0 {
                    return Self {
                        dim: levels.len(),
                        members,
                        anisotropy: None,
                    };
                }
                d -= 1;
                if cur[d] < levels[d] {
                    cur[d] += 1;
                    break;
                }
                cur[d] = 0;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[MultiIndex] {
        &self.members
    }

    pub fn iter(&self) -> core::slice::Iter<'_, MultiIndex> {
        self.members.iter()
    }

    pub fn anisotropy(&self) -> Option<&Anisotropy> {
        self.anisotropy.as_ref()
    }

    pub fn contains(&self, j: &MultiIndex) -> bool {
        self.members.binary_search(j).is_ok()
    }

    /// Largest level per coordinate.
    pub fn max_levels(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for j in &self.members {
            for (o, v) in out.iter_mut().zip(j.levels()) {
                *o = (*o).max(*v);
            }
        }
        out
    }

    /// Every member's immediate lower neighbours are members.
    pub fn is_downward_closed(&self) -> bool {
        self.members.iter().all(|j| {
            (0..self.dim).all(|i| match j.lower_neighbor(1 << i) {
                Some(k) => self.contains(&k),
                None => true,
            })
        })
    }

    /// Combination coefficients `c_j = Σ_{b ∈ {0,1}^d, j+b ∈ Δ} (-1)^{|b|}`,
    /// so that `Σ_{j∈Δ} q_j = Σ_j c_j I_j`. Zero coefficients are omitted.
    pub fn combination_coefficients(&self) -> Vec<(MultiIndex, i64)> {
        self.members
            .iter()
            .filter_map(|j| {
                let c: i64 = (0..1u32 << self.dim)
                    .filter(|&mask| self.contains(&j.upper_neighbor(mask)))
                    .map(|mask| if mask.count_ones() % 2 == 0 { 1 } else { -1 })
                    .sum();
                (c != 0).then(|| (j.clone(), c))
            })
            .collect()
    }
}

/// `{j ∈ N_0^d : Σ η_i j_i ≤ m η₁}` with `d = η.len()`.
pub fn build_index_set(eta: &[f64], m: f64) -> Result<IndexSet> {
    let dim = eta.len();
    if dim == 0 || dim > 16 {
        return Err(Error::InvalidParameter(alloc::format!(
            "dimension must be in 1..=16, got {dim}"
        )));
    }
    if eta.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::InvalidParameter(
            "eta must be positive and finite".into(),
        ));
    }
    if eta.iter().any(|e| *e < eta[0]) {
        return Err(Error::InvalidParameter(
            "eta_1 must be the smallest component".into(),
        ));
    }
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "m must be >= 0, got {m}"
        )));
    }
    let budget = m * eta[0];
    let slack = THRESHOLD_SLACK * budget.max(1.0);
    let mut members = Vec::new();
    let mut cur = vec![0u32; dim];
    enumerate(eta, budget + slack, 0, 0.0, &mut cur, &mut members);
    Ok(IndexSet {
        dim,
        members,
        anisotropy: Some(Anisotropy {
            eta: eta.to_vec(),
            m,
        }),
    })
}

fn enumerate(
    eta: &[f64],
    budget: f64,
    axis: usize,
    used: f64,
    cur: &mut Vec<u32>,
    out: &mut Vec<MultiIndex>,
) {
    if axis == eta.len() {
        out.push(MultiIndex(cur.clone()));
        return;
    }
    let mut level = 0u32;
    while used + eta[axis] * level as f64 <= budget {
        cur[axis] = level;
        enumerate(
            eta,
            budget,
            axis + 1,
            used + eta[axis] * level as f64,
            cur,
            out,
        );
        level += 1;
    }
    cur[axis] = 0;
}
