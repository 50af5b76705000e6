//! Error measurement, norms, test functions, rate fitting and width exponents.

pub mod atlas;
pub mod functions;
pub mod norms;
pub mod quadrature;
pub mod rate;
pub mod series;

/// Function space scale: Sobolev `W`, Triebel-Lizorkin `F`, Besov `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    W,
    F,
    B,
}
