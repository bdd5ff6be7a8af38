pub mod certificate;
pub mod cli;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod gf;
pub mod main_step;
pub mod matrix;
pub mod poly;
pub mod selftest;
pub mod stable_range;
pub mod text;
pub mod word;

pub use certificate::{nu, stable_range_bound, Breakdown, Certificate};
pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
pub use matrix::{Side, SqMatrix};
pub use poly::{BigNat, Poly};
pub use word::{unit_diag_word, ElemMat, ElemWord};
pub use decompose::{decompose, decompose_with, DecomposeOptions, Decomposition};
pub use text::{format_matrix, parse_matrix};
