//! Descent of quasi-isomorphisms along `k -> k[u_1, ..., u_m]`.
//!
//! A chain map `f` over the polynomial ring between base-changed complexes is
//! split by monomials into chain maps `f_i` over `k`. The generic morphism
//! `Σ t_i f_i` over `k[t_1, ..., t_n]` specializes to every `k`-linear
//! combination of the `f_i`; a random point where the specialization has an
//! exact cone gives a quasi-isomorphism over `k`.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{cohomology_dims, cone, is_qiso, Complex, GradedMap};
use crate::error::{Error, Result};
use crate::linalg::{sample, Matrix, Monomial, RingKind, RingSpec, Scalar};

/// The family `f_1, ..., f_n` and the map `Σ t_i f_i` over `k[t_*]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericMorphism {
    p: Complex,
    q: Complex,
    coefficient_maps: Vec<GradedMap>,
    generic: GradedMap,
}

impl GenericMorphism {
    pub fn source(&self) -> &Complex {
        &self.p
    }

    pub fn target(&self) -> &Complex {
        &self.q
    }

    pub fn coefficient_maps(&self) -> &[GradedMap] {
        &self.coefficient_maps
    }

    pub fn generic(&self) -> &GradedMap {
        &self.generic
    }

    /// The parameter ring `k[t_1, ..., t_n]`.
    pub fn ring(&self) -> &RingSpec {
        self.generic.ring()
    }

    pub fn vars(&self) -> &[String] {
        self.ring().vars()
    }
}

/// Splits `f` over `k[vars]` into `(monomial, f_m)` with `f = Σ m f_m`,
/// monomials in increasing graded-lex order.
pub fn coefficient_decomposition(f: &GradedMap) -> Result<Vec<(Monomial, GradedMap)>> {
    let ring = f.ring();
    let base = match ring.kind() {
        RingKind::Polynomial { base, .. } => base.clone(),
        _ => {
            return Err(Error::UnsupportedRing(format!(
                "expected a polynomial ring, got {ring}"
            )))
        }
    };
    if !f.source().has_constant_differentials() || !f.target().has_constant_differentials() {
        return Err(Error::NotBaseChanged);
    }
    f.check_chain_map()?;
    let (p, q) = (f.source().reduce(), f.target().reduce());
    let comps = f.components();
    let mut monomials = BTreeSet::new();
    for m in comps.values() {
        for x in m.entries() {
            monomials.extend(x.as_poly().expect("polynomial entry").terms().keys().cloned());
        }
    }
    let mut out = Vec::new();
    for mono in monomials {
        let coeff = |x: &Scalar| {
            x.as_poly()
                .unwrap()
                .terms()
                .get(&mono)
                .cloned()
                .unwrap_or_else(|| base.zero())
        };
        let parts = comps
            .iter()
            .map(|(&n, m)| (n, Matrix::from_fn(&base, m.rows(), m.cols(), |i, j| coeff(m.get(i, j)))))
            .collect();
        let g = GradedMap::new(&p, &q, f.degree(), parts)?;
        g.check_chain_map()?;
        out.push((mono, g));
    }
    Ok(out)
}

/// `Σ m f_m : P -> Q` for complexes `P`, `Q` over the polynomial ring.
pub fn reassemble(p: &Complex, q: &Complex, degree: i64, parts: &[(Monomial, GradedMap)]) -> Result<GradedMap> {
    let ring = p.ring();
    let one = ring
        .base()
        .ok_or_else(|| Error::UnsupportedRing(ring.to_string()))?
        .one();
    let mut acc = GradedMap::zero(p, q, degree);
    for (mono, g) in parts {
        let c = ring.poly_from_terms([(mono.clone(), one.clone())]);
        acc = acc.add(&g.base_change(ring)?.with_endpoints(p, q)?.scale(&c))?;
    }
    Ok(acc)
}

fn parameter_names(base: &RingSpec, n: usize) -> Vec<String> {
    let taken: BTreeSet<&str> = base.vars().iter().map(String::as_str).collect();
    let mut prefix = "t".to_string();
    while (1..=n).any(|i| taken.contains(format!("{prefix}{i}").as_str())) {
        prefix.push('t');
    }
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Builds `Σ t_i f_i : P ⊗ k[t_*] -> Q ⊗ k[t_*]`.
pub fn generic_morphism(p: &Complex, q: &Complex, maps: &[GradedMap]) -> Result<GenericMorphism> {
    if maps.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for f in maps {
        if f.source() != p || f.target() != q || f.degree() != 0 {
            return Err(Error::ShapeMismatch(
                "every coefficient map must be a chain map P -> Q".into(),
            ));
        }
        f.check_chain_map()?;
    }
    let ring = RingSpec::polynomial(p.ring().clone(), parameter_names(p.ring(), maps.len()))?;
    let (pt, qt) = (p.base_change(&ring)?, q.base_change(&ring)?);
    let mut generic = GradedMap::zero(&pt, &qt, 0);
    for (i, f) in maps.iter().enumerate() {
        let t = ring.var(&ring.vars()[i]).expect("parameter variable");
        generic = generic.add(&f.base_change(&ring)?.scale(&t))?;
    }
    generic.check_chain_map()?;
    Ok(GenericMorphism {
        p: p.clone(),
        q: q.clone(),
        coefficient_maps: maps.to_vec(),
        generic,
    })
}

/// The specialization of the generic morphism at `point`.
pub fn specialize(g: &GenericMorphism, point: &[(String, Scalar)]) -> Result<GradedMap> {
    g.generic.evaluate(point)?.with_endpoints(&g.p, &g.q)
}

/// Search parameters for [`find_trivializing_point`] and [`descend`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub seed: u64,
    pub sample_bound: u64,
    pub max_trials: usize,
    /// Also decide exactness of the generic cone over `k(t_*)`.
    pub certify_generic: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            sample_bound: 100,
            max_trials: 20,
            certify_generic: false,
        }
    }
}

/// A point of `U_f` and the quasi-isomorphism over `k` it gives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivializationReport {
    pub point: Vec<(String, Scalar)>,
    /// The coefficient maps the point is applied to.
    pub family: Vec<GradedMap>,
    pub specialized_map: GradedMap,
    /// Cohomology dimensions of the cone of the specialized map (all zero).
    pub certificate: BTreeMap<i64, usize>,
    pub trials: usize,
    pub seed: u64,
    pub sample_bound: u64,
    /// Outcome of the generic-point check, when requested.
    pub generic_certified: Option<bool>,
}

/// True iff the cone of the generic morphism is exact over `k(t_*)`, which
/// holds exactly when `U_f` is nonempty.
pub fn certify_generic(g: &GenericMorphism) -> Result<bool> {
    let k = g.p.ring();
    let field = match k.kind() {
        RingKind::Rationals | RingKind::PrimeField(_) => RingSpec::rational_functions(k.clone(), g.vars().to_vec())?,
        RingKind::RationalFunctions { base, vars } => {
            RingSpec::rational_functions(base.clone(), vars.iter().chain(g.vars()).cloned())?
        }
        _ => return Err(Error::NonFieldRing(k.to_string())),
    };
    is_qiso(&g.generic.base_change(&field)?)
}

/// Draws points until the specialized cone is exact.
pub fn find_trivializing_point(g: &GenericMorphism, opts: &SearchOptions) -> Result<TrivializationReport> {
    let k = g.p.ring();
    k.require_field()?;
    if opts.sample_bound == 0 || opts.max_trials == 0 {
        return Err(Error::ShapeMismatch(
            "sample bound and trial count must be positive".into(),
        ));
    }
    if let Some(size) = k.field_size() {
        if opts.sample_bound > size {
            return Err(Error::FieldTooSmall {
                bound: opts.sample_bound,
                size,
            });
        }
    }
    let generic_certified = if opts.certify_generic {
        Some(certify_generic(g)?)
    } else {
        None
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for trial in 1..=opts.max_trials {
        let point: Vec<(String, Scalar)> = g
            .vars()
            .iter()
            .map(|v| (v.clone(), sample::sample_with(k, opts.sample_bound, &mut rng)))
            .collect();
        let f = specialize(g, &point)?;
        let dims = cohomology_dims(&cone(&f)?.complex)?;
        if dims.values().all(|&d| d == 0) {
            return Ok(TrivializationReport {
                point,
                family: g.coefficient_maps.clone(),
                specialized_map: f,
                certificate: dims,
                trials: trial,
                seed: opts.seed,
                sample_bound: opts.sample_bound,
                generic_certified,
            });
        }
    }
    Err(Error::NoPointFound {
        trials: opts.max_trials,
    })
}

/// From a quasi-isomorphism `P ⊗ k[u_*] -> Q ⊗ k[u_*]` to one `P -> Q` over `k`.
pub fn descend(p: &Complex, q: &Complex, f: &GradedMap, opts: &SearchOptions) -> Result<TrivializationReport> {
    let ring = f.ring();
    match ring.kind() {
        RingKind::Polynomial { base, .. } if base == p.ring() && base == q.ring() => {}
        _ => {
            return Err(Error::RingMismatch(format!(
                "{ring} is not a polynomial ring over {}",
                p.ring()
            )))
        }
    }
    if f.source() != &p.base_change(ring)? || f.target() != &q.base_change(ring)? {
        return Err(Error::NotBaseChanged);
    }
    let parts = coefficient_decomposition(f)?;
    let mut family: Vec<GradedMap> = parts.into_iter().map(|(_, g)| g).collect();
    if family.is_empty() {
        family.push(GradedMap::zero(p, q, 0));
    }
    let g = generic_morphism(p, q, &family)?;
    if opts.certify_generic && !certify_generic(&g)? {
        return Err(Error::NotQisoInput);
    }
    find_trivializing_point(&g, opts)
}

/// Recomputes the specialized map from the family and the point, and checks
/// it is a quasi-isomorphism `P -> Q` agreeing with the stored one.
pub fn verify_form_triviality(p: &Complex, q: &Complex, report: &TrivializationReport) -> bool {
    let check = || -> Result<bool> {
        if report.family.is_empty() || report.family.len() != report.point.len() {
            return Ok(false);
        }
        let mut acc = GradedMap::zero(p, q, 0);
        for ((_, c), f) in report.point.iter().zip(&report.family) {
            if f.source() != p || f.target() != q || !f.is_chain_map() {
                return Ok(false);
            }
            acc = acc.add(&f.scale(c))?;
        }
        Ok(acc == report.specialized_map && is_qiso(&acc)?)
    };
    check().unwrap_or(false)
}
