//! Exact scalars and matrices over the supported base rings.

mod elim;
mod matrix;
mod poly;
mod ring;
pub(crate) mod sample;
mod scalar;
pub mod text;

pub use elim::{inverse, kernel_basis, kernel_matrix, rank, rref, solve, solve_columns, solve_matrix};
pub use matrix::Matrix;
pub use poly::{Monomial, Poly};
pub use ring::{is_prime, RingKind, RingSpec};
pub use sample::{designated_element, random_scalar, sample_set_size};
pub use scalar::{Frac, Scalar};

/// Substitutes `point` into every entry of a polynomial matrix.
pub fn evaluate(m: &Matrix, point: &[(String, Scalar)]) -> crate::Result<Matrix> {
    m.evaluate(point)
}
