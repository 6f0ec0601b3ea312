//! Seeded generators of complexes, maps and problem instances.
//!
//! Everything takes an explicit `Rng`, so a fixed seed reproduces the same
//! instance. Entries are small so that exact arithmetic stays cheap.

use std::collections::BTreeMap;

use rand::Rng;

use crate::complex::{cohomology_dims, Complex, GradedMap};
use crate::deformation::DeformedComplex;
use crate::derived::{hom_complex, vector_to_map};
use crate::error::Result;
use crate::linalg::{inverse, kernel_matrix, Matrix, RingKind, RingSpec, Scalar};
use crate::simplicial::{AutWitness, G2Triangle};

/// Size limits for [`complex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
    /// Number of degrees of the window.
    pub max_window: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 4,
            max_window: 4,
        }
    }
}

/// A small random scalar; about a third of the draws are zero.
pub fn scalar<R: Rng>(ring: &RingSpec, rng: &mut R) -> Scalar {
    if rng.gen_ratio(1, 3) {
        return ring.zero();
    }
    match ring.kind() {
        RingKind::PrimeField(p) => ring.from_i64(rng.gen_range(1..*p) as i64),
        RingKind::Rationals => ring.from_i64(nonzero_small(rng)),
        RingKind::RationalFunctions { .. } | RingKind::Polynomial { .. } => {
            let a = ring.from_i64(rng.gen_range(-3..=3));
            if rng.gen_bool(0.5) {
                let v = ring.var(&ring.vars()[0]).expect("first variable");
                ring.add(&a, &ring.mul(&ring.from_i64(nonzero_small(rng)), &v))
            } else {
                a
            }
        }
        RingKind::DualNumbers { base } => {
            let a = ring.constant(scalar(base, rng));
            let b = ring.constant(scalar(base, rng));
            ring.add(&a, &ring.mul(&b, &ring.eps().expect("dual numbers")))
        }
    }
}

fn nonzero_small<R: Rng>(rng: &mut R) -> i64 {
    let n = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        n
    } else {
        -n
    }
}

pub fn matrix<R: Rng>(ring: &RingSpec, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| scalar(ring, rng))
}

/// An invertible matrix, found by rejection.
pub fn invertible<R: Rng>(ring: &RingSpec, n: usize, rng: &mut R) -> Result<Matrix> {
    loop {
        let m = matrix(ring, n, n, rng);
        if inverse(&m)?.is_some() {
            return Ok(m);
        }
    }
}

/// A random complex over a field. Each differential has its rows drawn from
/// the left kernel of the previous one, so `d∘d = 0` holds by construction.
pub fn complex<R: Rng>(ring: &RingSpec, limits: Limits, rng: &mut R) -> Result<Complex> {
    let len = rng.gen_range(1..=limits.max_window.max(1));
    let lo = rng.gen_range(-2..=1);
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=limits.max_rank)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let d = match diffs.last() {
            None => matrix(ring, ranks[i + 1], ranks[i], rng),
            Some(prev) => {
                let k = kernel_matrix(&prev.transpose())?;
                matrix(ring, ranks[i + 1], k.cols(), rng).mul(&k.transpose())?
            }
        };
        diffs.push(d);
    }
    Complex::new(ring, lo, ranks, diffs)
}

/// `[R --1--> R]` in degrees `n, n + 1`.
pub fn contractible(ring: &RingSpec, n: i64) -> Complex {
    Complex::two_term(n, Matrix::identity(ring, 1))
}

/// A complex with at least one nonzero differential in each of the window's
/// three consecutive degrees `lo, lo + 1, lo + 2`.
pub fn busy_complex<R: Rng>(ring: &RingSpec, rng: &mut R) -> Result<Complex> {
    let base = complex(
        ring,
        Limits {
            max_rank: 2,
            max_window: 3,
        },
        rng,
    )?;
    let lo = base.lo();
    base.direct_sum(&contractible(ring, lo))?
        .direct_sum(&contractible(ring, lo + 1))
}

/// A homogeneous map of the given degree with random entries.
pub fn graded_map<R: Rng>(p: &Complex, q: &Complex, degree: i64, rng: &mut R) -> Result<GradedMap> {
    let comps = p
        .degrees()
        .map(|n| (n, matrix(p.ring(), q.rank(n + degree), p.rank(n), rng)))
        .collect();
    GradedMap::new(p, q, degree, comps)
}

/// A random cocycle of the Hom complex in the given degree; degree 0 gives a
/// chain map.
pub fn cocycle<R: Rng>(p: &Complex, q: &Complex, degree: i64, rng: &mut R) -> Result<GradedMap> {
    let h = hom_complex(p, q)?;
    if h.rank(degree) == 0 {
        return Ok(GradedMap::zero(p, q, degree));
    }
    let k = kernel_matrix(&h.d(degree))?;
    let coeffs = matrix(p.ring(), k.cols(), 1, rng);
    let v = k.mul(&coeffs)?;
    vector_to_map(p, q, degree, &v.column(0))
}

pub fn chain_map<R: Rng>(p: &Complex, q: &Complex, rng: &mut R) -> Result<GradedMap> {
    cocycle(p, q, 0, rng)
}

/// A homotopy-trivial chain map `d(h)` for a random degree −1 map `h`.
pub fn null_homotopic<R: Rng>(p: &Complex, q: &Complex, rng: &mut R) -> Result<GradedMap> {
    Ok(graded_map(p, q, -1, rng)?.differential())
}

/// A quasi-isomorphism out of `m`: a degreewise change of basis, followed by
/// the inclusion into a sum with a contractible piece, perturbed by a
/// null-homotopic map.
pub fn qiso<R: Rng>(m: &Complex, rng: &mut R) -> Result<GradedMap> {
    let ring = m.ring();
    let g: BTreeMap<i64, Matrix> = m
        .degrees()
        .map(|n| Ok((n, invertible(ring, m.rank(n), rng)?)))
        .collect::<Result<_>>()?;
    let ginv = |n: i64| inverse(&g[&n]).map(|x| x.expect("invertible"));
    let diffs = (m.lo()..m.hi())
        .map(|n| g[&(n + 1)].mul(&m.d(n))?.mul(&ginv(n)?))
        .collect::<Result<Vec<_>>>()?;
    let conj = Complex::new(ring, m.lo(), m.degrees().map(|n| m.rank(n)).collect(), diffs)?;
    let extra = contractible(ring, rng.gen_range(m.lo() - 1..=m.hi()));
    let target = conj.direct_sum(&extra)?;
    let comps = m
        .degrees()
        .map(|n| {
            // The sum lists `conj` first, then `extra`, in every degree.
            let padding = Matrix::zeros(ring, extra.rank(n), m.rank(n));
            Ok((n, g[&n].vstack(&padding)?))
        })
        .collect::<Result<_>>()?;
    let f = GradedMap::new(m, &target, 0, comps)?;
    f.add(&null_homotopic(m, &target, rng)?)
}

/// A self-map homotopic to a nonzero multiple of the identity.
pub fn quasi_automorphism<R: Rng>(e: &Complex, rng: &mut R) -> Result<GradedMap> {
    let c = loop {
        let c = scalar(e.ring(), rng);
        if !e.ring().is_zero(&c) {
            break c;
        }
    };
    GradedMap::identity(e).scale(&c).add(&null_homotopic(e, e, rng)?)
}

/// The four shapes of [`AutWitness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    G1Vertex,
    G1Edge,
    G2Vertex,
    G2Edge,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 4] = [
        WitnessKind::G1Vertex,
        WitnessKind::G1Edge,
        WitnessKind::G2Vertex,
        WitnessKind::G2Edge,
    ];
}

fn triangle<R: Rng>(e: &Complex, rng: &mut R) -> Result<G2Triangle> {
    let phi01 = quasi_automorphism(e, rng)?;
    let phi12 = quasi_automorphism(e, rng)?;
    let alpha = graded_map(e, e, -1, rng)?;
    let phi02 = phi12.compose(&phi01)?.add(&alpha.differential())?;
    Ok(G2Triangle {
        phi01,
        phi12,
        phi02,
        alpha,
    })
}

/// A valid witness of the requested kind on `e`.
pub fn witness<R: Rng>(e: &Complex, kind: WitnessKind, rng: &mut R) -> Result<AutWitness> {
    Ok(match kind {
        WitnessKind::G1Vertex => AutWitness::G1Vertex {
            phi: quasi_automorphism(e, rng)?,
        },
        WitnessKind::G1Edge => {
            let phi = quasi_automorphism(e, rng)?;
            let h = graded_map(e, e, -1, rng)?;
            let psi = phi.add(&h.differential())?;
            AutWitness::G1Edge { phi, psi, h }
        }
        WitnessKind::G2Vertex => AutWitness::G2Vertex(triangle(e, rng)?),
        WitnessKind::G2Edge => {
            let phi = triangle(e, rng)?;
            let [h01, h12, h02] = [(); 3].map(|_| graded_map(e, e, -1, rng));
            let (h01, h12, h02) = (h01?, h12?, h02?);
            let theta = graded_map(e, e, -2, rng)?;
            let psi01 = phi.phi01.add(&h01.differential())?;
            let psi12 = phi.phi12.add(&h12.differential())?;
            let psi02 = phi.phi02.add(&h02.differential())?;
            // Solve the edge equation for beta; d(beta) = psi02 - psi12∘psi01 follows.
            let beta = phi
                .alpha
                .add(&h02)?
                .sub(&h12.compose(&phi.phi01)?)?
                .sub(&psi12.compose(&h01)?)?
                .add(&theta.differential())?;
            let psi = G2Triangle {
                phi01: psi01,
                phi12: psi12,
                phi02: psi02,
                alpha: beta,
            };
            AutWitness::G2Edge {
                phi,
                psi,
                h01,
                h02,
                h12,
                theta,
            }
        }
    })
}

/// A map of the given degree that is not a cocycle, if one turns up.
pub fn non_cocycle<R: Rng>(e: &Complex, degree: i64, rng: &mut R) -> Result<Option<GradedMap>> {
    for _ in 0..32 {
        let f = graded_map(e, e, degree, rng)?;
        if !f.differential().is_zero() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// The witness with component `index` perturbed by a non-cocycle of the
/// same degree. `None` if the index is out of range or no non-cocycle of
/// that degree was found.
pub fn mutate<R: Rng>(w: &AutWitness, index: usize, rng: &mut R) -> Result<Option<AutWitness>> {
    let Some(target) = w.components().get(index).map(|f| (*f).clone()) else {
        return Ok(None);
    };
    let Some(delta) = non_cocycle(target.source(), target.degree(), rng)? else {
        return Ok(None);
    };
    let bumped = target.add(&delta)?;
    let mut out = w.clone();
    let slot: &mut GradedMap = match &mut out {
        AutWitness::G1Vertex { phi } => phi,
        AutWitness::G1Edge { phi, psi, h } => [phi, psi, h].into_iter().nth(index).unwrap(),
        AutWitness::G2Vertex(t) => [&mut t.phi01, &mut t.phi12, &mut t.phi02, &mut t.alpha]
            .into_iter()
            .nth(index)
            .unwrap(),
        AutWitness::G2Edge {
            phi,
            psi,
            h01,
            h02,
            h12,
            theta,
        } => [
            &mut phi.phi01,
            &mut phi.phi12,
            &mut phi.phi02,
            &mut phi.alpha,
            &mut psi.phi01,
            &mut psi.phi12,
            &mut psi.phi02,
            &mut psi.alpha,
            h01,
            h02,
            h12,
            theta,
        ]
        .into_iter()
        .nth(index)
        .unwrap(),
    };
    *slot = bumped;
    Ok(Some(out))
}

/// A square-zero lifting problem `(E, F, φ0)` over `k[ε]/ε²`. About a third
/// of the instances have undeformed `E` and `F`, where `φ0` always lifts.
/// Another third deform a complex with cohomology in two adjacent degrees
/// in two independent ways and take `φ0 = c·id`, so most of those are
/// obstructed.
pub fn lifting_problem<R: Rng>(k: &RingSpec, rng: &mut R) -> Result<(DeformedComplex, DeformedComplex, GradedMap)> {
    let limits = Limits {
        max_rank: 3,
        max_window: 3,
    };
    let e0 = complex(k, limits, rng)?;
    match rng.gen_range(0..3) {
        0 => {
            let f0 = complex(k, limits, rng)?;
            let phi0 = chain_map(&e0, &f0, rng)?;
            Ok((DeformedComplex::constant(&e0)?, DeformedComplex::constant(&f0)?, phi0))
        }
        1 => {
            let f0 = complex(k, limits, rng)?;
            let phi0 = chain_map(&e0, &f0, rng)?;
            Ok((
                DeformedComplex::from_first_order(&e0, &cocycle(&e0, &e0, 1, rng)?)?,
                DeformedComplex::from_first_order(&f0, &cocycle(&f0, &f0, 1, rng)?)?,
                phi0,
            ))
        }
        _ => {
            let lo = e0.lo();
            let e0 = e0
                .direct_sum(&Complex::single(k, lo, 1))?
                .direct_sum(&Complex::single(k, lo + 1, 1))?;
            let c = loop {
                let c = scalar(k, rng);
                if !k.is_zero(&c) {
                    break c;
                }
            };
            Ok((
                DeformedComplex::from_first_order(&e0, &cocycle(&e0, &e0, 1, rng)?)?,
                DeformedComplex::from_first_order(&e0, &cocycle(&e0, &e0, 1, rng)?)?,
                GradedMap::identity(&e0).scale(&c),
            ))
        }
    }
}

/// `id + u·d(h)` on `P ⊗ k[u]`: a homotopy equivalence with polynomial entries.
fn elementary<R: Rng>(p: &Complex, ring: &RingSpec, rng: &mut R) -> Result<GradedMap> {
    let pr = p.base_change(ring)?;
    let u = ring.var(&ring.vars()[0]).expect("polynomial variable");
    let bump = null_homotopic(p, p, rng)?.base_change(ring)?.scale(&u);
    GradedMap::identity(&pr).add(&bump)
}

/// A quasi-isomorphism `φ : P -> Q` over `k` disguised over `k[u]` as
/// `e_Q ∘ φ ∘ e_P` with elementary factors. Returns `(P, Q, f)`.
pub fn disguised_qiso<R: Rng>(k: &RingSpec, rng: &mut R) -> Result<(Complex, Complex, GradedMap)> {
    let ring = RingSpec::polynomial(k.clone(), ["u"])?;
    let p = complex(
        k,
        Limits {
            max_rank: 4,
            max_window: 3,
        },
        rng,
    )?;
    let phi = qiso(&p, rng)?;
    let q = phi.target().clone();
    let f = elementary(&q, &ring, rng)?
        .compose(&phi.base_change(&ring)?)?
        .compose(&elementary(&p, &ring, rng)?)?;
    Ok((p, q, f))
}

/// A chain map `P ⊗ k[u] -> P ⊗ k[u]` whose coefficient maps are all
/// null-homotopic on a complex with nonzero cohomology, so no `k`-linear
/// combination of them is a quasi-isomorphism.
pub fn hopeless_family<R: Rng>(k: &RingSpec, rng: &mut R) -> Result<(Complex, GradedMap)> {
    let ring = RingSpec::polynomial(k.clone(), ["u"])?;
    let p = loop {
        let p = complex(
            k,
            Limits {
                max_rank: 3,
                max_window: 3,
            },
            rng,
        )?;
        if cohomology_dims(&p)?.values().any(|&h| h > 0) {
            break p;
        }
    };
    let pr = p.base_change(&ring)?;
    let u = ring.var("u").expect("polynomial variable");
    let mut f = GradedMap::zero(&pr, &pr, 0);
    let mut power = ring.one();
    for _ in 0..3 {
        f = f.add(&null_homotopic(&p, &p, rng)?.base_change(&ring)?.scale(&power))?;
        power = ring.mul(&power, &u);
    }
    Ok((p, f))
}
