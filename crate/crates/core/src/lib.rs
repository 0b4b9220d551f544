//! Exact computations around Deligne–Lusztig varieties.
//!
//! The crate is organised in layers:
//!
//! * [`rootcore`]: root systems, Weyl groups, reduced words and Bruhat order;
//! * [`dldatum`]: p-morphisms of root data, their validation and a catalog;
//! * [`invariants`]: canonical-divisor coefficients, point counts of
//!   zero-dimensional varieties and genera of curves;
//! * [`gf`] / [`gfpoly`]: small finite fields and polynomials over them;
//! * [`finitegeom`]: flags, relative position, strata and incidence graphs;
//! * [`sp4suzuki`]: the exceptional isogeny of `Sp4` in characteristic two;
//! * [`lattice`]: integral symmetric bilinear forms;
//! * [`quasiell`]: quasi-elliptic Weierstrass equations in characteristic two.
//!
//! Linear algebra over ordered fields is generic (see [`linalg::Scalar`]);
//! the aliases below fix the concrete instantiations used by the rest of the
//! crate. Finite-field code is not generic because its modulus is chosen at
//! run time.

pub mod dldatum;
pub mod error;
pub mod finitegeom;
pub mod gf;
pub mod gfpoly;
pub mod guard;
pub mod intmat;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod quasiell;
pub mod rootcore;
pub mod sp4suzuki;

pub use error::{Error, Result};
pub use linalg::{F64Matrix, Matrix, Q64Matrix, QMatrix, Rational, Scalar};

pub use dldatum::DLDatum;
pub use gf::Gf;
pub use lattice::IntLattice;
pub use rootcore::{CartanMatrix, RootSystem, WeylElement, WeylGroup};
