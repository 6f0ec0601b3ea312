//! Rank, reduced echelon form, kernels and linear solves over the field kinds.
//!
//! Over `Q` and rational function fields the forward phase is fraction-free
//! (Bareiss) on an integral-domain image of the matrix: rows are cleared of
//! denominators and eliminated with exact divisions by the previous pivot.
//! `GF(p)` uses plain elimination. Reduced echelon form, kernels and solves
//! then finish with a back-substitution phase in the field itself.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::poly::Poly;
use super::ring::{RingKind, RingSpec};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Exact-division domain used by the fraction-free forward phase.
trait Domain {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn one(&self) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn div_exact(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct Integers;

impl Domain for Integers {
    type E = BigInt;
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> BigInt {
        debug_assert!((a % b).is_zero());
        a / b
    }
}

struct Polys<'a> {
    base: &'a RingSpec,
    nvars: usize,
}

impl Domain for Polys<'_> {
    type E = Poly;
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(self.base, self.nvars, self.base.one())
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(self.base, b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(self.base, b)
    }
    fn div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        a.div_exact(self.base, b).expect("Bareiss division is exact")
    }
}

/// Fraction-free forward elimination in place. Returns pivot columns; row
/// `i < pivots.len()` holds pivot `pivots[i]`, later rows are zero.
fn bareiss<D: Domain>(dom: &D, m: &mut [Vec<D::E>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut prev = dom.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !dom.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let a = row[c].clone();
            for j in c + 1..cols {
                let t = dom.sub(&dom.mul(&pv, &row[j]), &dom.mul(&a, &pivot_row[j]));
                row[j] = dom.div_exact(&t, &prev);
            }
            row[c] = dom.sub(&a, &a);
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rational_rows_to_integers(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row: Vec<&BigRational> = m
                .row(i)
                .iter()
                .map(|x| x.as_rational().expect("rational entry"))
                .collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect()
}

fn frac_rows_to_polys(ring: &RingSpec, base: &RingSpec, m: &Matrix) -> Vec<Vec<Poly>> {
    let one = Poly::constant(base, ring.nvars(), base.one());
    (0..m.rows())
        .map(|i| {
            let row: Vec<_> = m
                .row(i)
                .iter()
                .map(|x| x.as_frac().expect("rational function entry"))
                .collect();
            let lcm = row.iter().fold(one.clone(), |acc, f| {
                if f.den.is_constant() {
                    return acc;
                }
                let g = Poly::gcd(base, &acc, &f.den);
                acc.mul(base, &f.den.div_exact(base, &g).expect("gcd divides"))
            });
            row.iter()
                .map(|f| {
                    f.num
                        .mul(base, &lcm.div_exact(base, &f.den).expect("lcm is a multiple"))
                })
                .collect()
        })
        .collect()
}

/// Forward phase: an echelon form (as field elements) with the same row space,
/// plus its pivot columns.
fn echelon(m: &Matrix) -> Result<(Vec<Vec<Scalar>>, Vec<usize>)> {
    let ring = m.ring();
    match ring.kind() {
        RingKind::Rationals => {
            let mut rows = rational_rows_to_integers(m);
            let pivots = bareiss(&Integers, &mut rows, m.cols());
            let rows = rows
                .into_iter()
                .take(pivots.len())
                .map(|r| {
                    r.into_iter()
                        .map(|x| Scalar::Rational(BigRational::from_integer(x)))
                        .collect()
                })
                .collect();
            Ok((rows, pivots))
        }
        RingKind::RationalFunctions { base, vars } => {
            let dom = Polys {
                base,
                nvars: vars.len(),
            };
            let mut rows = frac_rows_to_polys(ring, base, m);
            let pivots = bareiss(&dom, &mut rows, m.cols());
            let one = dom.one();
            let rows = rows
                .into_iter()
                .take(pivots.len())
                .map(|r| {
                    r.into_iter()
                        .map(|x| ring.frac(x, one.clone()).expect("unit denominator"))
                        .collect()
                })
                .collect();
            Ok((rows, pivots))
        }
        RingKind::PrimeField(_) => {
            let mut rows = m.row_vecs();
            let cols = m.cols();
            let mut pivots = Vec::new();
            let mut r = 0;
            for c in 0..cols {
                if r == rows.len() {
                    break;
                }
                let Some(p) = (r..rows.len()).find(|&i| !ring.is_zero(&rows[i][c])) else {
                    continue;
                };
                rows.swap(r, p);
                let inv = ring.inv(&rows[r][c])?;
                for x in rows[r].iter_mut() {
                    *x = ring.mul(x, &inv);
                }
                let (top, rest) = rows.split_at_mut(r + 1);
                for row in rest.iter_mut() {
                    let a = row[c].clone();
                    if ring.is_zero(&a) {
                        continue;
                    }
                    for j in c..cols {
                        row[j] = ring.sub(&row[j], &ring.mul(&a, &top[r][j]));
                    }
                }
                pivots.push(c);
                r += 1;
            }
            rows.truncate(pivots.len());
            Ok((rows, pivots))
        }
        _ => Err(Error::NonFieldRing(ring.to_string())),
    }
}

/// Exact rank over a field kind.
pub fn rank(m: &Matrix) -> Result<usize> {
    m.ring().require_field()?;
    Ok(echelon(m)?.1.len())
}

/// Reduced row echelon form restricted to its nonzero rows, and pivot columns.
pub fn rref(m: &Matrix) -> Result<(Matrix, Vec<usize>)> {
    m.ring().require_field()?;
    let ring = m.ring();
    let (mut rows, pivots) = echelon(m)?;
    for i in (0..pivots.len()).rev() {
        let pc = pivots[i];
        let inv = ring.inv(&rows[i][pc])?;
        if !ring.is_one(&inv) {
            for x in rows[i][pc..].iter_mut() {
                *x = ring.mul(x, &inv);
            }
        }
        let (above, below) = rows.split_at_mut(i);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            let a = row[pc].clone();
            if ring.is_zero(&a) {
                continue;
            }
            for j in pc..m.cols() {
                if !ring.is_zero(&pivot_row[j]) {
                    row[j] = ring.sub(&row[j], &ring.mul(&a, &pivot_row[j]));
                }
            }
        }
    }
    let r = rows.len();
    let out = Matrix::from_rows(ring, r, m.cols(), rows)?;
    Ok((out, pivots))
}

/// Basis of the right kernel: one vector per non-pivot column `f` of the
/// reduced echelon form, with a 1 in position `f`.
pub fn kernel_basis(m: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let ring = m.ring();
    let (r, pivots) = rref(m)?;
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .into_iter()
        .map(|f| {
            let mut v = vec![ring.zero(); m.cols()];
            v[f] = ring.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = ring.neg(r.get(i, f));
            }
            v
        })
        .collect())
}

/// Kernel basis as the columns of a matrix.
pub fn kernel_matrix(m: &Matrix) -> Result<Matrix> {
    let basis = kernel_basis(m)?;
    Ok(Matrix::from_columns(m.ring(), m.cols(), &basis))
}

/// Solves `a x = b` column by column. Entry `j` is `None` when column `j` of
/// `b` is outside the column space of `a`; free variables are set to zero.
pub fn solve_columns(a: &Matrix, b: &Matrix) -> Result<Vec<Option<Vec<Scalar>>>> {
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "solve: {}x{} system with {} right-hand rows",
            a.rows(),
            a.cols(),
            b.rows()
        )));
    }
    let ring = a.ring();
    let n = a.cols();
    let (r, pivots) = rref(&a.hstack(b)?)?;
    let split = pivots.iter().position(|&p| p >= n).unwrap_or(pivots.len());
    Ok((0..b.cols())
        .map(|j| {
            if (split..pivots.len()).any(|i| !ring.is_zero(r.get(i, n + j))) {
                return None;
            }
            let mut x = vec![ring.zero(); n];
            for (i, &p) in pivots[..split].iter().enumerate() {
                x[p] = r.get(i, n + j).clone();
            }
            Some(x)
        })
        .collect())
}

/// Some `x` with `a x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let rhs = Matrix::column_vector(a.ring(), b.to_vec());
    Ok(solve_columns(a, &rhs)?.pop().flatten())
}

/// All columns solved at once; `None` if any column is inconsistent.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let cols = solve_columns(a, b)?;
    let cols: Option<Vec<Vec<Scalar>>> = cols.into_iter().collect();
    Ok(cols.map(|c| Matrix::from_columns(a.ring(), a.cols(), &c)))
}

/// Inverse of a square matrix over a field, `None` if singular.
pub fn inverse(m: &Matrix) -> Result<Option<Matrix>> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
    }
    if rank(m)? < m.rows() {
        return Ok(None);
    }
    solve_matrix(m, &Matrix::identity(m.ring(), m.rows()))
}
