//! Fibonadic numbers and the Stern–Brocot layer geometry they induce.
//!
//! * [`fibzeck`]: Fibonacci weights, Zeckendorf codec, the shifts `π` and `j`.
//! * [`fibword`] and [`qphi`]: Fibonadic digit words, their order and
//!   ultrametric, and exact φ-values in `ℤ[φ]`.
//! * [`normalize`]: rewriting ℕ-series into admissible words.
//! * [`rig`]: addition and multiplication of words.
//! * [`farey`]: coprime lattice points, mediant genealogy, the balls
//!   `C(R)`, `C(R, n)`, boundary paths, layers and level functions.
//! * [`configtree`]: the configurations `b(n, z)`, their breakpoints and the
//!   tree they form under restriction.

pub mod configtree;
pub mod error;
pub mod farey;
pub mod fibword;
pub mod fibzeck;
pub mod normalize;
pub mod qphi;
pub mod rig;
pub mod text;

pub use configtree::{Breakpoint, Config};
pub use error::{Error, Result};
pub use farey::{BoundaryPath, DnaStep, Genealogy, LatticePoint};
pub use fibword::{Distance, ZeckWord};
pub use fibzeck::{FibTable, Natural, ZeckIndexSet};
pub use normalize::NatSeries;
pub use qphi::QPhi;
