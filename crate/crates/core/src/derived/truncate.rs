use crate::complex::{cohomology_dims, Complex, TensorModule};
use crate::error::{Error, Result};
use crate::linalg::{inverse, kernel_matrix, rref, solve_matrix, Matrix, RingKind};

/// Smart truncation `τ≤n`: degree `n` becomes `ker d^n`, higher degrees vanish.
pub fn truncate_le(c: &Complex, n: i64) -> Result<Complex> {
    c.ring().require_field()?;
    let ring = c.ring();
    if n >= c.hi() {
        return Ok(c.clone());
    }
    if n < c.lo() {
        return Ok(Complex::single(ring, c.lo(), 0));
    }
    let k = kernel_matrix(&c.d(n))?;
    let mut ranks: Vec<usize> = (c.lo()..n).map(|i| c.rank(i)).collect();
    ranks.push(k.cols());
    let mut diffs: Vec<Matrix> = (c.lo()..n - 1).map(|i| c.d(i)).collect();
    if n > c.lo() {
        let into_kernel = solve_matrix(&k, &c.d(n - 1))?
            .ok_or_else(|| Error::Internal("image of d is not inside the next kernel".into()))?;
        diffs.push(into_kernel);
    }
    Complex::new(ring, c.lo(), ranks, diffs)
}

/// Smart truncation `τ≥n`: degree `n` becomes `coker d^{n-1}`, lower degrees vanish.
pub fn truncate_ge(c: &Complex, n: i64) -> Result<Complex> {
    c.ring().require_field()?;
    let ring = c.ring();
    if n <= c.lo() {
        return Ok(c.clone());
    }
    if n > c.hi() {
        return Ok(Complex::single(ring, c.hi(), 0));
    }
    // Complement of the image: the standard basis vectors not hit by the
    // pivots of the row space of (d^{n-1})^T.
    let d_in = c.d(n - 1);
    let (image_rows, pivots) = rref(&d_in.transpose())?;
    let dim = c.rank(n);
    let complement: Vec<usize> = (0..dim).filter(|j| !pivots.contains(j)).collect();
    let e = Matrix::identity(ring, dim).select_columns(&complement);
    let mut ranks = vec![complement.len()];
    ranks.extend((n + 1..=c.hi()).map(|i| c.rank(i)));
    let mut diffs = Vec::new();
    if n < c.hi() {
        diffs.push(c.d(n).mul(&e)?);
    }
    diffs.extend((n + 1..c.hi()).map(|i| c.d(i)));
    // Sanity: [image | complement] is a basis.
    debug_assert!(inverse(&image_rows.transpose().hstack(&e)?)?.is_some());
    Complex::new(ring, n, ranks, diffs)
}

/// Minimal window `[a, b]` of nonzero cohomology of `c ⊗ k`, `None` if it is empty.
pub fn tor_amplitude(c: &Complex) -> Result<Option<(i64, i64)>> {
    let reduced = match c.ring().kind() {
        RingKind::DualNumbers { .. } => c.tensor(TensorModule::ResidueField)?,
        _ if c.ring().is_field() => c.clone(),
        _ => return Err(Error::UnsupportedRing(format!("Tor amplitude over {}", c.ring()))),
    };
    let h = cohomology_dims(&reduced)?;
    let nonzero: Vec<i64> = h.iter().filter(|(_, &d)| d > 0).map(|(&n, _)| n).collect();
    Ok(nonzero.first().map(|&a| (a, *nonzero.last().unwrap())))
}
