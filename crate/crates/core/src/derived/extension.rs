use std::collections::BTreeMap;

use super::ExtClass;
use crate::complex::{Complex, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::{rank, solve_matrix, Matrix};

/// A degreewise split short exact sequence `0 -> N -> T -> E0 -> 0` of complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    inclusion: GradedMap,
    projection: GradedMap,
}

impl Extension {
    pub fn new(inclusion: GradedMap, projection: GradedMap) -> Result<Self> {
        let bad = |s: String| Err(Error::NotExtension(s));
        inclusion.check_chain_map()?;
        projection.check_chain_map()?;
        if inclusion.target() != projection.source() {
            return bad("inclusion target differs from projection source".into());
        }
        inclusion.ring().require_field()?;
        if !projection.compose(&inclusion)?.is_zero() {
            return bad("projection ∘ inclusion is not zero".into());
        }
        let (n, t, e) = (inclusion.source(), inclusion.target(), projection.target());
        let lo = n.lo().min(t.lo()).min(e.lo());
        let hi = n.hi().max(t.hi()).max(e.hi());
        for k in lo..=hi {
            if t.rank(k) != n.rank(k) + e.rank(k) {
                return bad(format!("ranks do not add up in degree {k}"));
            }
            if rank(&inclusion.component(k))? != n.rank(k) {
                return bad(format!("inclusion is not injective in degree {k}"));
            }
            if rank(&projection.component(k))? != e.rank(k) {
                return bad(format!("projection is not surjective in degree {k}"));
            }
        }
        Ok(Extension { inclusion, projection })
    }

    /// `N ⊕ E0` with differential `[[d_N, δ], [0, d_E0]]` for a degree-1
    /// cocycle `δ : E0 -> N`. Its class is the class of `δ`.
    pub fn twisted(delta: &GradedMap) -> Result<Self> {
        if delta.degree() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "twisting cocycle must have degree 1, not {}",
                delta.degree()
            )));
        }
        let (e, n) = (delta.source(), delta.target());
        let ring = delta.ring();
        let lo = n.lo().min(e.lo());
        let hi = n.hi().max(e.hi());
        let ranks = (lo..=hi).map(|k| n.rank(k) + e.rank(k)).collect();
        let diffs = (lo..hi)
            .map(|k| {
                let zero = Matrix::zeros(ring, e.rank(k + 1), n.rank(k));
                Matrix::block(&n.d(k), &delta.component(k), &zero, &e.d(k))
            })
            .collect::<Result<Vec<_>>>()?;
        let total = Complex::new(ring, lo, ranks, diffs).map_err(|_| Error::NotACocycle { degree: lo })?;
        let mut inc = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for k in lo..=hi {
            let (a, b) = (n.rank(k), e.rank(k));
            inc.insert(k, Matrix::identity(ring, a).vstack(&Matrix::zeros(ring, b, a))?);
            proj.insert(k, Matrix::zeros(ring, b, a).hstack(&Matrix::identity(ring, b))?);
        }
        Self::new(GradedMap::new(n, &total, 0, inc)?, GradedMap::new(&total, e, 0, proj)?)
    }

    /// The trivial extension `N ⊕ E0`.
    pub fn split(n: &Complex, e0: &Complex) -> Result<Self> {
        Self::twisted(&GradedMap::zero(e0, n, 1))
    }

    pub fn sub(&self) -> &Complex {
        self.inclusion.source()
    }

    pub fn total(&self) -> &Complex {
        self.inclusion.target()
    }

    pub fn quotient(&self) -> &Complex {
        self.projection.target()
    }

    pub fn inclusion(&self) -> &GradedMap {
        &self.inclusion
    }

    pub fn projection(&self) -> &GradedMap {
        &self.projection
    }

    /// A degreewise section `s` of the projection (not a chain map in general).
    pub fn splitting(&self) -> Result<GradedMap> {
        let (t, e) = (self.total(), self.quotient());
        let mut comps = BTreeMap::new();
        for k in e.degrees() {
            let id = Matrix::identity(e.ring(), e.rank(k));
            let s = solve_matrix(&self.projection.component(k), &id)?
                .ok_or_else(|| Error::NotExtension(format!("projection has no section in degree {k}")))?;
            comps.insert(k, s);
        }
        GradedMap::new(e, t, 0, comps)
    }

    /// The cocycle `d_T s - s d_E0`, read in `N`, for a section `s`.
    pub fn defect(&self, splitting: &GradedMap) -> Result<GradedMap> {
        let (n, e) = (self.sub(), self.quotient());
        if splitting.source() != e || splitting.target() != self.total() || splitting.degree() != 0 {
            return Err(Error::ShapeMismatch("splitting must be a degree-0 map E0 -> T".into()));
        }
        if !self
            .projection
            .compose(splitting)?
            .sub(&GradedMap::identity(e))?
            .is_zero()
        {
            return Err(Error::NotExtension(
                "splitting is not a section of the projection".into(),
            ));
        }
        // For degree 0, d(s) = d_T s - s d_E0.
        let ds = splitting.differential();
        let mut comps = BTreeMap::new();
        for k in e.degrees() {
            let c = solve_matrix(&self.inclusion.component(k + 1), &ds.component(k))?
                .ok_or_else(|| Error::Internal(format!("defect does not land in the kernel in degree {k}")))?;
            comps.insert(k, c);
        }
        GradedMap::new(e, n, 1, comps)
    }
}

/// The class in `Ext^1(E0, N)` of an extension.
pub fn classify_extension(t: &Extension) -> Result<ExtClass> {
    ExtClass::new(t.defect(&t.splitting()?)?)
}

/// `N -> f_*T -> E0` for a chain map `f : N' -> N` out of the sub.
pub fn pushforward_extension(t: &Extension, f: &GradedMap) -> Result<Extension> {
    if f.source() != t.sub() {
        return Err(Error::ShapeMismatch(
            "pushforward map must start at the sub of the extension".into(),
        ));
    }
    f.check_chain_map()?;
    let delta = t.defect(&t.splitting()?)?;
    Extension::twisted(&f.compose(&delta)?)
}

/// `N -> λ^*T -> E0` for a chain map `λ : E0 -> F0` into the quotient.
pub fn pullback_extension(t: &Extension, lambda: &GradedMap) -> Result<Extension> {
    if lambda.target() != t.quotient() {
        return Err(Error::ShapeMismatch(
            "pullback map must end at the quotient of the extension".into(),
        ));
    }
    lambda.check_chain_map()?;
    let delta = t.defect(&t.splitting()?)?;
    Extension::twisted(&delta.compose(lambda)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RingSpec;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    /// `k -> [k --1--> k] -> k` with the sub in degree 1 and quotient in degree 0.
    fn nonsplit() -> Extension {
        let t = Complex::two_term(0, Matrix::from_i64(&q(), &[&[1]]));
        let n = Complex::single(&q(), 1, 1);
        let e = Complex::single(&q(), 0, 1);
        let inc = GradedMap::single(&n, &t, 0, 1, Matrix::identity(&q(), 1)).unwrap();
        let proj = GradedMap::single(&t, &e, 0, 0, Matrix::identity(&q(), 1)).unwrap();
        Extension::new(inc, proj).unwrap()
    }

    #[test]
    fn split_extension_has_zero_class() {
        let n = Complex::two_term(0, Matrix::from_i64(&q(), &[&[0]]));
        let e = Complex::single(&q(), 0, 2);
        assert!(classify_extension(&Extension::split(&n, &e).unwrap())
            .unwrap()
            .is_zero()
            .unwrap());
    }

    #[test]
    fn unit_differential_gives_generator() {
        let t = nonsplit();
        let c = classify_extension(&t).unwrap();
        assert_eq!(c.cocycle().component(0), Matrix::identity(&q(), 1));
        assert!(!c.is_zero().unwrap());
    }

    #[test]
    fn pushforward_scales_class() {
        let t = nonsplit();
        let c = classify_extension(&t).unwrap();
        let two = GradedMap::identity(t.sub()).scale(&q().from_i64(2));
        let pushed = classify_extension(&pushforward_extension(&t, &two).unwrap()).unwrap();
        assert!(pushed.equals(&c.scale(&q().from_i64(2))).unwrap());
        assert!(!pushed.equals(&c).unwrap());
        let zero = GradedMap::zero(t.sub(), t.sub(), 0);
        assert!(classify_extension(&pushforward_extension(&t, &zero).unwrap())
            .unwrap()
            .is_zero()
            .unwrap());
        let id = GradedMap::identity(t.sub());
        assert!(classify_extension(&pushforward_extension(&t, &id).unwrap())
            .unwrap()
            .equals(&c)
            .unwrap());
    }

    #[test]
    fn pullback_scales_class() {
        let t = nonsplit();
        let c = classify_extension(&t).unwrap();
        let three = GradedMap::identity(t.quotient()).scale(&q().from_i64(3));
        let pulled = classify_extension(&pullback_extension(&t, &three).unwrap()).unwrap();
        assert!(pulled.equals(&c.scale(&q().from_i64(3))).unwrap());
        let zero = GradedMap::zero(t.quotient(), t.quotient(), 0);
        assert!(classify_extension(&pullback_extension(&t, &zero).unwrap())
            .unwrap()
            .is_zero()
            .unwrap());
    }

    #[test]
    fn rejects_non_extensions() {
        let c = Complex::single(&q(), 0, 1);
        let z = GradedMap::zero(&c, &c, 0);
        assert!(matches!(Extension::new(z.clone(), z), Err(Error::NotExtension(_))));
    }
}
