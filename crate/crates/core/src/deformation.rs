//! First-order deformations over `k[eps]/(eps^2)` and the obstruction to
//! lifting chain maps between them.
//!
//! A deformation of a complex `E0` over `k` is a complex `E` over `A = k[eps]`
//! whose differential is `d0 + eps d1`; as a `k`-complex it sits in the exact
//! sequence `0 -> eps E -> E -> E0 -> 0` with `eps E ≅ E0`.

use std::collections::BTreeMap;

use crate::complex::{Complex, GradedMap};
use crate::derived::{classify_extension, pullback_extension, pushforward_extension, ExtClass, Extension};
use crate::error::{Error, Result};
use crate::linalg::{solve_matrix, Matrix, RingKind, RingSpec, Scalar};

/// The square-zero extension `k[eps]/(eps^2) -> k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareZeroContext {
    total: RingSpec,
    base: RingSpec,
}

impl SquareZeroContext {
    pub fn new(base: &RingSpec) -> Result<Self> {
        Ok(SquareZeroContext {
            total: RingSpec::dual_numbers(base.clone())?,
            base: base.clone(),
        })
    }

    /// Context of a ring that must be `k[eps]/(eps^2)`.
    pub fn of(total: &RingSpec) -> Result<Self> {
        match total.kind() {
            RingKind::DualNumbers { base } => Ok(SquareZeroContext {
                total: total.clone(),
                base: base.clone(),
            }),
            _ => Err(Error::UnsupportedRing(format!("expected dual numbers, got {total}"))),
        }
    }

    pub fn total(&self) -> &RingSpec {
        &self.total
    }

    pub fn base(&self) -> &RingSpec {
        &self.base
    }

    pub fn eps(&self) -> Scalar {
        self.total.eps().expect("dual numbers have eps")
    }

    /// `a + eps b` for matrices over the base field.
    pub fn join(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        if a.shape() != b.shape() {
            return Err(Error::ShapeMismatch("constant and eps parts differ in shape".into()));
        }
        Ok(Matrix::from_fn(&self.total, a.rows(), a.cols(), |i, j| {
            Scalar::dual(a.get(i, j).clone(), b.get(i, j).clone())
        }))
    }

    /// The constant and `eps` parts of a matrix over the dual numbers.
    pub fn split(&self, m: &Matrix) -> (Matrix, Matrix) {
        let part = |k: usize| {
            Matrix::from_fn(&self.base, m.rows(), m.cols(), |i, j| match m.get(i, j).as_dual() {
                Some((a, b)) => if k == 0 { a } else { b }.clone(),
                None => unreachable!("entries of a dual number matrix"),
            })
        };
        (part(0), part(1))
    }

    /// A map between deformations given by its constant and `eps` parts.
    pub fn join_map(
        &self,
        e: &DeformedComplex,
        f: &DeformedComplex,
        phi0: &GradedMap,
        phi1: &GradedMap,
    ) -> Result<GradedMap> {
        let comps = e
            .reduction()
            .degrees()
            .map(|n| Ok((n, self.join(&phi0.component(n), &phi1.component(n))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        GradedMap::new(e.total(), f.total(), phi0.degree(), comps)
    }
}

/// A complex over `k[eps]/(eps^2)` together with its reduction to `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedComplex {
    ctx: SquareZeroContext,
    total: Complex,
    reduction: Complex,
}

impl DeformedComplex {
    pub fn new(total: Complex) -> Result<Self> {
        let ctx = SquareZeroContext::of(total.ring())?;
        total.validate()?;
        let reduction = total.reduce();
        Ok(DeformedComplex { ctx, total, reduction })
    }

    /// `E0` with differential `d0 + eps d1` for a degree-1 map `d1 : E0 -> E0`.
    pub fn from_first_order(e0: &Complex, d1: &GradedMap) -> Result<Self> {
        if d1.source() != e0 || d1.target() != e0 || d1.degree() != 1 {
            return Err(Error::ShapeMismatch(
                "first-order term must be a degree-1 map E0 -> E0".into(),
            ));
        }
        let ctx = SquareZeroContext::new(e0.ring())?;
        let diffs = (e0.lo()..e0.hi())
            .map(|n| ctx.join(&e0.d(n), &d1.component(n)))
            .collect::<Result<Vec<_>>>()?;
        let ranks = e0.degrees().map(|n| e0.rank(n)).collect();
        Self::new(Complex::new(ctx.total(), e0.lo(), ranks, diffs)?)
    }

    /// The trivial deformation `E0 ⊗ A`.
    pub fn constant(e0: &Complex) -> Result<Self> {
        Self::from_first_order(e0, &GradedMap::zero(e0, e0, 1))
    }

    pub fn context(&self) -> &SquareZeroContext {
        &self.ctx
    }

    pub fn total(&self) -> &Complex {
        &self.total
    }

    pub fn reduction(&self) -> &Complex {
        &self.reduction
    }

    /// The `eps` part `d1` of the differential, a degree-1 map `E0 -> E0`.
    pub fn first_order(&self) -> GradedMap {
        let comps = self
            .reduction
            .degrees()
            .map(|n| (n, self.ctx.split(&self.total.d(n)).1))
            .collect();
        GradedMap::new(&self.reduction, &self.reduction, 1, comps).expect("shapes of d")
    }

    /// `0 -> eps E -> E -> E0 -> 0` as complexes over `k`.
    ///
    /// In degree `n` the middle term has coordinates `(eps part, constant part)`
    /// and a matrix `a + eps b` acts as `[[a, b], [0, a]]`.
    pub fn restriction_triangle(&self) -> Result<Extension> {
        let e0 = &self.reduction;
        let ring = e0.ring();
        let mid = self.restrict_complex()?;
        let mut inc = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for n in e0.degrees() {
            let r = e0.rank(n);
            inc.insert(n, Matrix::identity(ring, r).vstack(&Matrix::zeros(ring, r, r))?);
            proj.insert(n, Matrix::zeros(ring, r, r).hstack(&Matrix::identity(ring, r))?);
        }
        Extension::new(GradedMap::new(e0, &mid, 0, inc)?, GradedMap::new(&mid, e0, 0, proj)?)
    }

    fn restrict_complex(&self) -> Result<Complex> {
        let e0 = &self.reduction;
        let ranks = e0.degrees().map(|n| 2 * e0.rank(n)).collect();
        let diffs = (e0.lo()..e0.hi())
            .map(|n| restrict_matrix(&self.ctx, &self.total.d(n)))
            .collect::<Result<Vec<_>>>()?;
        Complex::new(e0.ring(), e0.lo(), ranks, diffs)
    }
}

fn restrict_matrix(ctx: &SquareZeroContext, m: &Matrix) -> Result<Matrix> {
    let (a, b) = ctx.split(m);
    let zero = Matrix::zeros(ctx.base(), a.rows(), a.cols());
    Matrix::block(&a, &b, &zero, &a)
}

/// Entrywise `eps -> 0`.
pub fn reduce(e: &Complex) -> Result<Complex> {
    SquareZeroContext::of(e.ring())?;
    Ok(e.reduce())
}

fn check_base_map(e: &DeformedComplex, f: &DeformedComplex, phi0: &GradedMap) -> Result<()> {
    if e.ctx != f.ctx {
        return Err(Error::RingMismatch("deformations over different rings".into()));
    }
    if phi0.source() != e.reduction() || phi0.target() != f.reduction() {
        return Err(Error::ShapeMismatch("φ0 must map E0 to F0".into()));
    }
    phi0.check_chain_map()
}

/// `Φ = φ0` with zero `eps` part.
pub fn constant_lift(e: &DeformedComplex, f: &DeformedComplex, phi0: &GradedMap) -> Result<GradedMap> {
    let zero = GradedMap::zero(e.reduction(), f.reduction(), 0);
    e.ctx.join_map(e, f, phi0, &zero)
}

/// Class of the `eps` coefficient of `d_F Φ - Φ d_E` for a lift `Φ` of `φ0`.
pub fn obstruction_of_lift(e: &DeformedComplex, f: &DeformedComplex, lift: &GradedMap) -> Result<ExtClass> {
    let phi0 = lift.reduce();
    check_base_map(e, f, &phi0)?;
    let defect = lift.differential();
    let mut comps = BTreeMap::new();
    for n in e.reduction().degrees() {
        let (constant, eps) = e.ctx.split(&defect.component(n));
        if !constant.is_zero() {
            return Err(Error::NotChainMap { degree: n });
        }
        comps.insert(n, eps);
    }
    ExtClass::new(GradedMap::new(e.reduction(), f.reduction(), 1, comps)?)
}

/// The obstruction in `Ext^1(E0, F0)` to lifting `φ0 : E0 -> F0` to `E -> F`.
pub fn obstruction(e: &DeformedComplex, f: &DeformedComplex, phi0: &GradedMap) -> Result<ExtClass> {
    check_base_map(e, f, phi0)?;
    obstruction_of_lift(e, f, &constant_lift(e, f, phi0)?)
}

/// A chain map `E -> F` reducing to `φ0`, or `None` when the obstruction is nonzero.
///
/// The correction `h` solves `d(h) = -o` with free variables set to zero.
pub fn lift(e: &DeformedComplex, f: &DeformedComplex, phi0: &GradedMap) -> Result<Option<GradedMap>> {
    let o = obstruction(e, f, phi0)?;
    let Some(h) = o.scale(&e.ctx.base().from_i64(-1)).primitive()? else {
        return Ok(None);
    };
    let phi = e.ctx.join_map(e, f, phi0, &h)?;
    phi.check_chain_map()
        .map_err(|_| Error::Internal("corrected lift is not a chain map".into()))?;
    Ok(Some(phi))
}

/// `[λ^*F] - [f_*E]` with `λ = φ0` and `f : eps E -> eps F` induced by the
/// constant lift, computed from the two restriction triangles.
pub fn obstruction_via_triangles(e: &DeformedComplex, f: &DeformedComplex, phi0: &GradedMap) -> Result<ExtClass> {
    check_base_map(e, f, phi0)?;
    let te = e.restriction_triangle()?;
    let tf = f.restriction_triangle()?;
    let lift_k = {
        let phi = constant_lift(e, f, phi0)?;
        let comps = e
            .reduction()
            .degrees()
            .map(|n| Ok((n, restrict_matrix(&e.ctx, &phi.component(n))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        GradedMap::new(te.total(), tf.total(), 0, comps)?
    };
    // f is the restriction of the lift to the kernels: incl_F ∘ f = Φ ∘ incl_E.
    let mut induced = BTreeMap::new();
    let through = lift_k.compose(te.inclusion())?;
    for n in e.reduction().degrees() {
        let m = solve_matrix(&tf.inclusion().component(n), &through.component(n))?
            .ok_or_else(|| Error::Internal(format!("lift does not preserve the eps part in degree {n}")))?;
        induced.insert(n, m);
    }
    let induced = GradedMap::new(te.sub(), tf.sub(), 0, induced)?;
    let pulled = classify_extension(&pullback_extension(&tf, phi0)?)?;
    let pushed = classify_extension(&pushforward_extension(&te, &induced)?)?;
    pulled.sub(&pushed)
}
