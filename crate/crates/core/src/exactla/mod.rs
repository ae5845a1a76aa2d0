//! Exact rational dense linear algebra over ℤ₂-graded vector spaces.

mod graded;
mod matrix;
pub mod poly;
mod rational;
mod subspace;

pub use graded::{graded_compose, is_block_pure, koszul_sign, GradedError, GradedMap, GradedSpace, Parity};
pub use matrix::{Matrix, MatrixError, Rref};
pub use rational::{ParseRationalError, Rational};
pub use subspace::Subspace;

/// Free-function form of [`Matrix::rref`].
pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

/// Free-function form of [`Matrix::solve`].
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix, MatrixError> {
    a.solve(b)
}
