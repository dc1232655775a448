//! Fermionic formulas through Kleber trees and their virtual variant,
//! Kirillov-Reshetikhin crystals `B^{1,s}` with their virtual realizations,
//! energy functions and one-dimensional sums.

pub mod config;
pub mod crystals;
pub mod energy;
pub mod error;
pub mod exec;
pub mod fermionic;
pub mod kleber;
pub mod qpoly;
pub mod root_data;
pub mod virtual_crystals;
pub mod verify;
pub mod virtual_kleber;

pub use config::{Configuration, RiggedConfiguration, TensorSpec};
pub use error::{Error, Result};
pub use exec::Exec;
pub use qpoly::QPolynomial;
pub use root_data::{dynkin_data, AffineType, DynkinData, Family, Rational, RootVector, Weight};
