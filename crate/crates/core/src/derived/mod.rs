//! Hom complexes, Ext, extension classes, truncations and Tor amplitude.

mod extension;
mod truncate;

pub use extension::{classify_extension, pullback_extension, pushforward_extension, Extension};
pub use truncate::{tor_amplitude, truncate_ge, truncate_le};

use std::collections::BTreeMap;

use crate::complex::{cohomology_dims, Complex, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, Scalar};

/// Block layout of `Hom^n(P, Q) = ⊕_i Hom(P^i, Q^{i+n})`.
///
/// Basis: matrix units ordered by source degree, then source index, then
/// target index. Within a block the unit `E_{r,c}` has index `c * rows + r`.
fn hom_offsets(p: &Complex, q: &Complex, n: i64) -> (BTreeMap<i64, usize>, usize) {
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for i in p.degrees() {
        offsets.insert(i, total);
        total += p.rank(i) * q.rank(i + n);
    }
    (offsets, total)
}

fn hom_window(p: &Complex, q: &Complex) -> (i64, i64) {
    (q.lo() - p.hi(), q.hi() - p.lo())
}

/// Coordinates of a degree-`n` map in the matrix-unit basis of `Hom^n(P, Q)`.
pub fn map_to_vector(f: &GradedMap) -> Vec<Scalar> {
    let (p, q, n) = (f.source(), f.target(), f.degree());
    let (_, total) = hom_offsets(p, q, n);
    let mut v = Vec::with_capacity(total);
    for i in p.degrees() {
        let m = f.component(i);
        for c in 0..m.cols() {
            for r in 0..m.rows() {
                v.push(m.get(r, c).clone());
            }
        }
    }
    v
}

/// Inverse of [`map_to_vector`].
pub fn vector_to_map(p: &Complex, q: &Complex, n: i64, v: &[Scalar]) -> Result<GradedMap> {
    let (offsets, total) = hom_offsets(p, q, n);
    if v.len() != total {
        return Err(Error::ShapeMismatch(format!(
            "Hom^{n} has rank {total}, vector has length {}",
            v.len()
        )));
    }
    let ring = p.ring();
    let comps = p
        .degrees()
        .map(|i| {
            let (rows, off) = (q.rank(i + n), offsets[&i]);
            (
                i,
                Matrix::from_fn(ring, rows, p.rank(i), |r, c| v[off + c * rows + r].clone()),
            )
        })
        .collect();
    GradedMap::new(p, q, n, comps)
}

/// Matrix of the Hom differential `Hom^n -> Hom^{n+1}`.
fn hom_differential(p: &Complex, q: &Complex, n: i64) -> Matrix {
    let ring = p.ring();
    let (src_off, src_len) = hom_offsets(p, q, n);
    let (dst_off, dst_len) = hom_offsets(p, q, n + 1);
    let mut m = Matrix::zeros(ring, dst_len, src_len);
    let sign = ring.sign(n);
    for i in p.degrees() {
        let cols_p = p.rank(i);
        // d_Q ∘ F^i lands in block i of Hom^{n+1}.
        let dq = q.d(i + n);
        let (r_in, r_out) = (dq.cols(), dq.rows());
        for c in 0..cols_p {
            for ro in 0..r_out {
                for ri in 0..r_in {
                    let a = dq.get(ro, ri);
                    if !ring.is_zero(a) {
                        m.set(dst_off[&i] + c * r_out + ro, src_off[&i] + c * r_in + ri, a.clone());
                    }
                }
            }
        }
        // -(-1)^n F^{i+1} ∘ d_P^i also lands in block i.
        if i < p.hi() {
            let dp = p.d(i);
            let rows = q.rank(i + 1 + n);
            for c1 in 0..dp.cols() {
                for c2 in 0..dp.rows() {
                    let b = dp.get(c2, c1);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let coef = ring.neg(&ring.mul(&sign, b));
                    for r in 0..rows {
                        let (row, col) = (dst_off[&i] + c1 * rows + r, src_off[&(i + 1)] + c2 * rows + r);
                        let cur = m.get(row, col).clone();
                        m.set(row, col, ring.add(&cur, &coef));
                    }
                }
            }
        }
    }
    m
}

/// The Hom complex `Hom•(P, Q)` in the matrix-unit basis.
pub fn hom_complex(p: &Complex, q: &Complex) -> Result<Complex> {
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", p.ring(), q.ring())));
    }
    let (lo, hi) = hom_window(p, q);
    let ranks = (lo..=hi).map(|n| hom_offsets(p, q, n).1).collect();
    let diffs = (lo..hi).map(|n| hom_differential(p, q, n)).collect();
    Complex::new(p.ring(), lo, ranks, diffs)
}

/// `dim Ext^n(P, Q) = dim H^n Hom•(P, Q)` for every degree of the Hom window.
pub fn ext_dims(p: &Complex, q: &Complex) -> Result<BTreeMap<i64, usize>> {
    cohomology_dims(&hom_complex(p, q)?)
}

/// A class in `Ext^n(P, Q)` represented by a degree-`n` cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    cocycle: GradedMap,
}

impl ExtClass {
    pub fn new(cocycle: GradedMap) -> Result<Self> {
        let d = cocycle.differential();
        if let Some(n) = cocycle.source().degrees().find(|&n| !d.component(n).is_zero()) {
            return Err(Error::NotACocycle { degree: n });
        }
        Ok(ExtClass { cocycle })
    }

    pub fn zero(p: &Complex, q: &Complex, degree: i64) -> Self {
        ExtClass {
            cocycle: GradedMap::zero(p, q, degree),
        }
    }

    pub fn source(&self) -> &Complex {
        self.cocycle.source()
    }

    pub fn target(&self) -> &Complex {
        self.cocycle.target()
    }

    pub fn degree(&self) -> i64 {
        self.cocycle.degree()
    }

    pub fn cocycle(&self) -> &GradedMap {
        &self.cocycle
    }

    /// Some `G` with `d(G)` equal to the cocycle, if the class is zero.
    pub fn primitive(&self) -> Result<Option<GradedMap>> {
        let (p, q, n) = (self.source(), self.target(), self.degree());
        p.ring().require_field()?;
        if self.cocycle.is_zero() {
            return Ok(Some(GradedMap::zero(p, q, n - 1)));
        }
        let d = hom_differential(p, q, n - 1);
        match solve(&d, &map_to_vector(&self.cocycle))? {
            Some(x) => Ok(Some(vector_to_map(p, q, n - 1, &x)?)),
            None => Ok(None),
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.primitive()?.is_some())
    }

    /// Equality in cohomology: the difference is a coboundary.
    pub fn equals(&self, other: &ExtClass) -> Result<bool> {
        self.sub(other)?.is_zero()
    }

    pub fn add(&self, other: &ExtClass) -> Result<ExtClass> {
        Ok(ExtClass {
            cocycle: self.cocycle.add(&other.cocycle)?,
        })
    }

    pub fn sub(&self, other: &ExtClass) -> Result<ExtClass> {
        Ok(ExtClass {
            cocycle: self.cocycle.sub(&other.cocycle)?,
        })
    }

    pub fn scale(&self, c: &Scalar) -> ExtClass {
        ExtClass {
            cocycle: self.cocycle.scale(c),
        }
    }

    /// `f ∘ class` for a chain map `f` out of the target.
    pub fn pushforward(&self, f: &GradedMap) -> Result<ExtClass> {
        f.check_chain_map()?;
        Ok(ExtClass {
            cocycle: f.compose(&self.cocycle)?,
        })
    }

    /// `class ∘ g` for a chain map `g` into the source.
    pub fn pullback(&self, g: &GradedMap) -> Result<ExtClass> {
        g.check_chain_map()?;
        Ok(ExtClass {
            cocycle: self.cocycle.compose(g)?,
        })
    }
}
