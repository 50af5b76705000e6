//! Anisotropic Smolyak recovery from samples on sparse grids.

mod grid;
mod index;
mod operator;
mod params;

pub use grid::{SampleStore, SparseGrid};
pub use index::{build_index_set, Anisotropy, IndexSet, MultiIndex};
pub use operator::{building_block_eval, smolyak_coefficients, smolyak_eval, Smolyak};
pub use params::{eta_for_besov, eta_for_linf, eta_for_lq, midpoint_nu, RecoveryParams};
