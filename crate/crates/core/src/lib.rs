//! Complex dilatation of real linear maps of the plane, computed two ways:
//! classically through Wirtinger derivatives, and geometrically as the
//! Poincaré-disc image of the conformal structure `T*[n]`.
//!
//! Modules:
//! - [`forms`]: quadratic forms on `C`, pull-backs, diagonalization and the
//!   Klein point of a definite form;
//! - [`models`]: the Klein and Poincaré discs and the isomorphism `Ω`;
//! - [`dilatation`]: `μ_T`, `π_T`, axis ratio and direction;
//! - [`action`]: the disc automorphism `u*` induced by a linear map;
//! - [`framed`]: dilatation between one-dimensional complex spaces and the
//!   basis-free dilatation tensor;
//! - [`verify`]: the seeded property harness behind `dilatation-kit verify`.

pub mod action;
pub mod cli;
pub mod dilatation;
pub mod error;
pub mod forms;
pub mod framed;
pub mod json;
pub mod models;
pub mod oracle;
pub mod tolerance;
pub mod verify;

pub use action::{induced_automorphism, DiscAutomorphism};
pub use dilatation::{
    classical_mu, poincare_dilatation, poincare_invariant, wirtinger, WirtingerPair,
};
pub use error::{Error, Result};
pub use forms::{
    DefiniteForm, Definiteness, Diagonalization, QuadraticForm, RealLinearMap, TrsCoordinates,
};
pub use framed::{DilatationTensor, FramedLine};
pub use models::{DiskPoint, HemispherePoint, KleinPoint, Model, PoincarePoint};
pub use tolerance::Tolerances;
