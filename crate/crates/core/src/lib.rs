pub mod catalog;
pub mod classify;
pub mod decompose;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod form;
pub mod graph;
pub mod iso;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod report;
pub mod roots;
pub mod scalar;

pub use catalog::{identify, CatalogName, Family};
pub use error::{CoxeterError, Result};
pub use graph::{CoxeterGraph, Label, OddPartition};
pub use matrix::Matrix;
pub use parse::parse_spec;
pub use scalar::Scalar;
