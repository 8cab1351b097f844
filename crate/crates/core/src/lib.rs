//! Exact generalised polynomial maps on number fields.

pub mod algebraic;
pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod genpoly;
pub mod interval;
pub mod linalg;
pub mod linrec;
pub mod numberfield;
pub mod poly;
pub mod rat;

pub use error::{Error, Result};
pub use numberfield::{FieldElement, NumberField, RootSelector};
