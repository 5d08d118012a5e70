//! Explicit families of homogeneous forms of odd degree that have points
//! over every completion of Q but none over Q, together with machinery that
//! certifies both halves of that claim.
//!
//! * [`exactmath`]: integers, residues and sparse polynomials.
//! * [`cyclotomic`]: minimal polynomials of the cyclotomic units and norm forms.
//! * [`forms`]: parameter families, hypothesis checks, parameter search, builders.
//! * [`localsolve`]: point counts over F_p, Hensel certificates, real points.
//! * [`globalcheck`]: bounded-height search and the mod-N obstruction transcript.
//! * [`bundle`]: end-to-end certificate bundles and their offline replay.

pub mod bundle;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod exactmath;
pub mod forms;
pub mod globalcheck;
pub mod localsolve;
pub mod serde_big;

pub use error::{Error, Result};
