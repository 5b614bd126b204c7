#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod config;
pub mod engines;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod random;
pub mod roots;
pub mod squarefree;

pub use config::{SubsetMask, VectorConfiguration};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational};
pub use matroid::{Circuit, GradedCount};
pub use poly::Polynomial;
