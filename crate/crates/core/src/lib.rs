//! Dimensions, formal characters and highest weights of the simple
//! `Sp(2g, K)`-modules indexed by `(p, g, c, eps)` that come from small
//! admissible colorings of the lollipop tree.
//!
//! Every quantity is reachable by at least two independent routes:
//!
//! * [`lollipop`]: enumeration and transfer-matrix counting of colorings,
//! * [`verlinde`]: Verlinde-type trigonometric sums, closed-form polynomials
//!   in `p` and exact interpolation,
//! * [`weyl`]: the classical Weyl dimension formula and the rank-3 Jantzen
//!   difference,
//!
//! and [`modules`] ties them together into characters, highest weights and a
//! consistency report.

pub mod error;
pub mod lollipop;
pub mod modules;
pub mod params;
pub mod poly;
pub mod verlinde;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
pub use lollipop::LollipopColoring;
pub use modules::{CheckRecord, ConsistencyReport, DimMethod, ModuleDescriptor, WeightMultiset};
pub use params::Case;
pub use poly::RationalPolynomial;
pub use verlinde::TrigEvalConfig;
pub use weights::{DominantWeight, ReducedWeight, Weight};
