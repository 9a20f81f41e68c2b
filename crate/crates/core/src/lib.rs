//! Computations with (±1)-skew polynomial algebras `S_ε` and their quadric
//! hypersurfaces `A_ε = S_ε/(x₁² + ⋯ + xₙ²)`.

pub mod clifford;
pub mod coeff;
pub mod error;
pub mod linalg;
pub mod mf;
pub mod pointscheme;
pub mod quadgraph;
pub mod rank;
pub mod report;
pub mod series;
pub mod skewpoly;

pub use coeff::GaussianRational;
pub use error::{Error, Result};
pub use quadgraph::QuadGraph;
pub use skewpoly::{LinearSubstitution, Monomial, SignSystem, SkewPoly};
