//! Solutions of the SU(n+1) Toda system around a singular source, built from
//! holomorphic seed data.
//!
//! The crate constructs the canonical curve `z -> [z^{beta_0} g_0, ..,
//! z^{beta_n} g_n]` from `n + 1` seed series satisfying the normalized
//! condition, evaluates the associated cone metrics `e^{u_k} |dz|^2`,
//! reconstructs the underlying Fuchsian equation, and numerically verifies
//! the identities the construction rests on: the Toda PDE off the origin,
//! the infinitesimal Pluecker formulae, cone angles `2 pi (1 + gamma_k)`,
//! finite energy, and branch consistency of all norms.
//!
//! Module map:
//! - [`series`]: truncated power-series arithmetic and branched powers;
//! - [`exponents`]: Cartan-matrix algebra and the `gamma -> alpha -> beta`
//!   pipeline;
//! - [`wronskian`]: reduced Wronskians, seed normalization, wedge expansions;
//! - [`geometry`]: curve norms, metric densities, the coordinate
//!   normalization `xi(z)` and the simplified `xi`-chart metric;
//! - [`fuchsian`]: operator reconstruction, local exponents, Frobenius
//!   series;
//! - [`verify`]: the residual checks and the report types.

pub mod error;
pub mod exponents;
pub mod fuchsian;
pub mod geometry;
pub mod series;
pub mod verify;
pub mod wronskian;

pub use error::{Result, TodaError};
pub use series::{BranchedFunction, TruncatedSeries, C64};
