use std::collections::BTreeMap;

use super::{Complex, GradedMap, TensorModule};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix, RingKind};

/// The mapping cone of `f : P -> Q` with its two canonical maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub complex: Complex,
    /// `Q -> Cone`, `q ↦ (0, q)`.
    pub inclusion: GradedMap,
    /// `Cone -> P[1]`, `(p, q) ↦ p`.
    pub projection: GradedMap,
}

/// `Cone^n = P^{n+1} ⊕ Q^n` with differential `[[-d_P, 0], [f, d_Q]]`.
pub fn cone(f: &GradedMap) -> Result<Cone> {
    f.check_chain_map()?;
    let (p, q) = (f.source(), f.target());
    let ring = f.ring();
    let lo = (p.lo() - 1).min(q.lo());
    let hi = (p.hi() - 1).max(q.hi());
    let ranks: Vec<usize> = (lo..=hi).map(|n| p.rank(n + 1) + q.rank(n)).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let dp = p.d(n + 1);
            let dq = q.d(n);
            let zero = Matrix::zeros(ring, dp.rows(), dq.cols());
            Matrix::block(&dp.neg(), &zero, &f.component(n + 1), &dq)
        })
        .collect::<Result<Vec<_>>>()?;
    let complex = Complex::new(ring, lo, ranks, diffs)?;
    let p1 = p.shift(1);

    let mut inc = BTreeMap::new();
    for n in q.degrees() {
        let top = Matrix::zeros(ring, p.rank(n + 1), q.rank(n));
        inc.insert(n, top.vstack(&Matrix::identity(ring, q.rank(n)))?);
    }
    let mut proj = BTreeMap::new();
    for n in complex.degrees() {
        let left = Matrix::identity(ring, p.rank(n + 1));
        proj.insert(n, left.hstack(&Matrix::zeros(ring, p.rank(n + 1), q.rank(n)))?);
    }
    Ok(Cone {
        inclusion: GradedMap::new(q, &complex, 0, inc)?,
        projection: GradedMap::new(&complex, &p1, 0, proj)?,
        complex,
    })
}

/// `dim H^n` for every degree in the window.
pub fn cohomology_dims(c: &Complex) -> Result<BTreeMap<i64, usize>> {
    c.ring().require_field()?;
    let mut ranks = BTreeMap::new();
    for n in c.lo() - 1..=c.hi() {
        ranks.insert(n, rank(&c.d(n))?);
    }
    Ok(c.degrees()
        .map(|n| (n, c.rank(n) - ranks[&n] - ranks[&(n - 1)]))
        .collect())
}

pub fn is_exact(c: &Complex) -> Result<bool> {
    Ok(cohomology_dims(c)?.values().all(|&h| h == 0))
}

/// Quasi-isomorphism test via exactness of the cone.
///
/// Over `k[eps]/(eps^2)` the cone is a bounded complex of free modules over a
/// local ring, so it is exact iff its reduction to `k` is.
pub fn is_qiso(f: &GradedMap) -> Result<bool> {
    let c = cone(f)?.complex;
    match f.ring().kind() {
        RingKind::DualNumbers { .. } => is_exact(&c.tensor(TensorModule::ResidueField)?),
        _ => is_exact(&c),
    }
}

/// True iff `d(H) = ψ - φ`, i.e. `d∘H + H∘d = ψ - φ` componentwise.
pub fn homotopy_check(h: &GradedMap, phi: &GradedMap, psi: &GradedMap) -> Result<bool> {
    if h.degree() != -1 {
        return Err(Error::ShapeMismatch(format!(
            "a homotopy has degree -1, not {}",
            h.degree()
        )));
    }
    let diff = psi.sub(phi)?;
    if h.source() != diff.source() || h.target() != diff.target() {
        return Err(Error::ShapeMismatch(
            "homotopy and maps have different endpoints".into(),
        ));
    }
    Ok(h.differential() == diff)
}
