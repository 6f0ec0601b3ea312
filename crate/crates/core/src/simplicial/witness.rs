use std::fmt;

use crate::complex::{cone, homotopy_check, is_qiso, Complex, GradedMap};
use crate::derived::{hom_complex, map_to_vector, vector_to_map};
use crate::error::{Error, Result};
use crate::linalg::{inverse, solve, Matrix};

/// A composition-up-to-homotopy triangle `(φ01, φ12, φ02, α)` with
/// `d(α) = φ02 - φ12∘φ01`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Triangle {
    pub phi01: GradedMap,
    pub phi12: GradedMap,
    pub phi02: GradedMap,
    pub alpha: GradedMap,
}

/// Low-dimensional simplices of the automorphism group of a complex `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum AutWitness {
    G1Vertex {
        phi: GradedMap,
    },
    /// `d(H) = ψ - φ`.
    G1Edge {
        phi: GradedMap,
        psi: GradedMap,
        h: GradedMap,
    },
    G2Vertex(G2Triangle),
    /// `d(Θ) = -H02 + H12∘φ01 + ψ12∘H01 + β - α`.
    G2Edge {
        phi: G2Triangle,
        psi: G2Triangle,
        h01: GradedMap,
        h02: GradedMap,
        h12: GradedMap,
        theta: GradedMap,
    },
}

/// The first equation a witness violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFailure {
    pub equation: String,
    /// Source degree where the two sides first differ, when meaningful.
    pub degree: Option<i64>,
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            Some(n) => write!(f, "{} fails at degree {n}", self.equation),
            None => write!(f, "{} fails", self.equation),
        }
    }
}

type Verdict = std::result::Result<(), WitnessFailure>;

fn fail(equation: impl Into<String>, degree: Option<i64>) -> Verdict {
    Err(WitnessFailure {
        equation: equation.into(),
        degree,
    })
}

fn first_difference(a: &GradedMap, b: &GradedMap) -> Option<i64> {
    a.source().degrees().find(|&n| a.component(n) != b.component(n))
}

fn expect_shape(e: &Complex, f: &GradedMap, degree: i64, name: &str) -> Result<()> {
    if f.source() != e || f.target() != e || f.degree() != degree {
        return Err(Error::ShapeMismatch(format!(
            "{name} must be a degree-{degree} map E -> E"
        )));
    }
    Ok(())
}

fn check_quasi_automorphism(f: &GradedMap, name: &str) -> Result<Verdict> {
    if let Err(Error::NotChainMap { degree }) = f.check_chain_map() {
        return Ok(fail(format!("{name} is a chain map"), Some(degree)));
    }
    if !is_qiso(f)? {
        let c = cone(f)?.complex;
        let h = crate::complex::cohomology_dims(&c.tensor(crate::complex::TensorModule::ResidueField)?)?;
        let n = h.iter().find(|(_, &d)| d > 0).map(|(&n, _)| n);
        return Ok(fail(format!("{name} is a quasi-isomorphism"), n));
    }
    Ok(Ok(()))
}

fn check_equation(lhs: &GradedMap, rhs: &GradedMap, equation: &str) -> Verdict {
    match first_difference(lhs, rhs) {
        None => Ok(()),
        Some(n) => fail(equation, Some(n)),
    }
}

impl G2Triangle {
    fn complex(&self) -> &Complex {
        self.phi01.source()
    }

    fn check_shapes(&self, e: &Complex) -> Result<()> {
        expect_shape(e, &self.phi01, 0, "phi01")?;
        expect_shape(e, &self.phi12, 0, "phi12")?;
        expect_shape(e, &self.phi02, 0, "phi02")?;
        expect_shape(e, &self.alpha, -1, "alpha")
    }

    fn check(&self, prefix: &str) -> Result<Verdict> {
        for (f, name) in [(&self.phi01, "01"), (&self.phi12, "12"), (&self.phi02, "02")] {
            let v = check_quasi_automorphism(f, &format!("{prefix}{name}"))?;
            if v.is_err() {
                return Ok(v);
            }
        }
        let rhs = self.phi02.sub(&self.phi12.compose(&self.phi01)?)?;
        let name = if prefix == "phi" { "alpha" } else { "beta" };
        Ok(check_equation(
            &self.alpha.differential(),
            &rhs,
            &format!("d({name}) = {prefix}02 - {prefix}12 ∘ {prefix}01"),
        ))
    }
}

impl AutWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            AutWitness::G1Vertex { .. } => "G1_VERTEX",
            AutWitness::G1Edge { .. } => "G1_EDGE",
            AutWitness::G2Vertex(_) => "G2_VERTEX",
            AutWitness::G2Edge { .. } => "G2_EDGE",
        }
    }

    /// The complex `E` all components act on.
    pub fn complex(&self) -> &Complex {
        match self {
            AutWitness::G1Vertex { phi } | AutWitness::G1Edge { phi, .. } => phi.source(),
            AutWitness::G2Vertex(t) => t.complex(),
            AutWitness::G2Edge { phi, .. } => phi.complex(),
        }
    }

    fn check_shapes(&self) -> Result<()> {
        let e = self.complex();
        match self {
            AutWitness::G1Vertex { phi } => expect_shape(e, phi, 0, "phi"),
            AutWitness::G1Edge { phi, psi, h } => {
                expect_shape(e, phi, 0, "phi")?;
                expect_shape(e, psi, 0, "psi")?;
                expect_shape(e, h, -1, "H")
            }
            AutWitness::G2Vertex(t) => t.check_shapes(e),
            AutWitness::G2Edge {
                phi,
                psi,
                h01,
                h02,
                h12,
                theta,
            } => {
                phi.check_shapes(e)?;
                psi.check_shapes(e)?;
                expect_shape(e, h01, -1, "H01")?;
                expect_shape(e, h02, -1, "H02")?;
                expect_shape(e, h12, -1, "H12")?;
                expect_shape(e, theta, -2, "Theta")
            }
        }
    }

    /// Decides every defining equation, reporting the first that fails.
    pub fn check(&self) -> Result<Verdict> {
        self.check_shapes()?;
        match self {
            AutWitness::G1Vertex { phi } => check_quasi_automorphism(phi, "phi"),
            AutWitness::G1Edge { phi, psi, h } => {
                for (f, name) in [(phi, "phi"), (psi, "psi")] {
                    let v = check_quasi_automorphism(f, name)?;
                    if v.is_err() {
                        return Ok(v);
                    }
                }
                Ok(check_equation(&h.differential(), &psi.sub(phi)?, "d(H) = psi - phi"))
            }
            AutWitness::G2Vertex(t) => t.check("phi"),
            AutWitness::G2Edge {
                phi,
                psi,
                h01,
                h02,
                h12,
                theta,
            } => {
                for (t, prefix) in [(phi, "phi"), (psi, "psi")] {
                    let v = t.check(prefix)?;
                    if v.is_err() {
                        return Ok(v);
                    }
                }
                for (h, a, b, name) in [
                    (h01, &phi.phi01, &psi.phi01, "01"),
                    (h02, &phi.phi02, &psi.phi02, "02"),
                    (h12, &phi.phi12, &psi.phi12, "12"),
                ] {
                    let v = check_equation(
                        &h.differential(),
                        &b.sub(a)?,
                        &format!("d(H{name}) = psi{name} - phi{name}"),
                    );
                    if v.is_err() {
                        return Ok(v);
                    }
                }
                let rhs = h02
                    .neg()
                    .add(&h12.compose(&phi.phi01)?)?
                    .add(&psi.phi12.compose(h01)?)?
                    .add(&psi.alpha)?
                    .sub(&phi.alpha)?;
                Ok(check_equation(
                    &theta.differential(),
                    &rhs,
                    "d(Theta) = -H02 + H12 ∘ phi01 + psi12 ∘ H01 + beta - alpha",
                ))
            }
        }
    }

    /// Every component in a fixed order: triangles as `(φ01, φ12, φ02, α)`,
    /// then `H01, H02, H12, Θ` for edges of `G2`.
    pub fn components(&self) -> Vec<&GradedMap> {
        fn tri(t: &G2Triangle) -> [&GradedMap; 4] {
            [&t.phi01, &t.phi12, &t.phi02, &t.alpha]
        }
        match self {
            AutWitness::G1Vertex { phi } => vec![phi],
            AutWitness::G1Edge { phi, psi, h } => vec![phi, psi, h],
            AutWitness::G2Vertex(t) => tri(t).to_vec(),
            AutWitness::G2Edge {
                phi,
                psi,
                h01,
                h02,
                h12,
                theta,
            } => {
                let mut v = tri(phi).to_vec();
                v.extend(tri(psi));
                v.extend([h01, h02, h12, theta]);
                v
            }
        }
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(self.check()?.is_ok())
    }
}

/// True iff `φ` is a quasi-automorphism.
pub fn verify_g1_vertex(phi: &GradedMap) -> Result<bool> {
    AutWitness::G1Vertex { phi: phi.clone() }.verify()
}

/// `is_qiso(φ) ∧ is_qiso(ψ) ∧ d(H) = ψ - φ`.
pub fn verify_g1_edge(phi: &GradedMap, psi: &GradedMap, h: &GradedMap) -> Result<bool> {
    AutWitness::G1Edge {
        phi: phi.clone(),
        psi: psi.clone(),
        h: h.clone(),
    }
    .verify()
}

pub fn verify_g2_vertex(t: &G2Triangle) -> Result<bool> {
    AutWitness::G2Vertex(t.clone()).verify()
}

/// The strict filler `(φ01, φ12, φ12∘φ01, 0)` of the inner horn.
pub fn fill_inner_horn(phi01: &GradedMap, phi12: &GradedMap) -> Result<G2Triangle> {
    for f in [phi01, phi12] {
        if f.source() != f.target() {
            return Err(Error::ShapeMismatch("horn edges must be endomorphisms".into()));
        }
        if !is_qiso(f)? {
            return Err(Error::NotQiso);
        }
    }
    let phi02 = phi12.compose(phi01)?;
    let e = phi01.source();
    Ok(G2Triangle {
        phi01: phi01.clone(),
        phi12: phi12.clone(),
        phi02,
        alpha: GradedMap::zero(e, e, -1),
    })
}

/// A homotopy inverse `ψ` of `φ` with `d(H) = id - φψ` and `d(H') = id - ψφ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiInverse {
    pub psi: GradedMap,
    pub h: GradedMap,
    pub h_prime: GradedMap,
}

/// Matrix of a linear operator between Hom spaces, built column by column.
fn operator_matrix(e: &Complex, from: i64, to: i64, op: impl Fn(&GradedMap) -> Result<GradedMap>) -> Result<Matrix> {
    let h = hom_complex(e, e)?;
    let ring = e.ring();
    let (n_from, n_to) = (h.rank(from), h.rank(to));
    let mut cols = Vec::with_capacity(n_from);
    for j in 0..n_from {
        let mut v = vec![ring.zero(); n_from];
        v[j] = ring.one();
        let image = op(&vector_to_map(e, e, from, &v)?)?;
        cols.push(map_to_vector(&image));
    }
    Ok(Matrix::from_columns(ring, n_to, &cols))
}

pub fn quasi_automorphism_inverse(phi: &GradedMap) -> Result<QuasiInverse> {
    let e = phi.source();
    if phi.target() != e || phi.degree() != 0 {
        return Err(Error::ShapeMismatch("expected a chain map E -> E".into()));
    }
    e.ring().require_field()?;
    if !is_qiso(phi)? {
        return Err(Error::NotQiso);
    }
    let id = GradedMap::identity(e);
    let zero_h = GradedMap::zero(e, e, -1);

    // Degreewise invertible: the strict inverse is a chain map.
    let mut strict = std::collections::BTreeMap::new();
    for n in e.degrees() {
        match inverse(&phi.component(n))? {
            Some(inv) => {
                strict.insert(n, inv);
            }
            None => break,
        }
    }
    if strict.len() == e.degrees().count() {
        let psi = GradedMap::new(e, e, 0, strict)?;
        return Ok(QuasiInverse {
            psi,
            h: zero_h.clone(),
            h_prime: zero_h,
        });
    }

    // Unknowns (ψ ∈ Hom^0, H ∈ Hom^{-1}); equations d(ψ) = 0 and φψ + d(H) = id.
    let hom = hom_complex(e, e)?;
    let ring = e.ring();
    let (n0, n1, n_up) = (hom.rank(0), hom.rank(-1), hom.rank(1));
    let post = operator_matrix(e, 0, 0, |f| phi.compose(f))?;
    let top = hom.d(0).hstack(&Matrix::zeros(ring, n_up, n1))?;
    let bottom = post.hstack(&hom.d(-1))?;
    let system = top.vstack(&bottom)?;
    let mut rhs = vec![ring.zero(); n_up];
    rhs.extend(map_to_vector(&id));
    let x = solve(&system, &rhs)?.ok_or_else(|| Error::Internal("homotopy inverse system is inconsistent".into()))?;
    let psi = vector_to_map(e, e, 0, &x[..n0])?;
    let h = vector_to_map(e, e, -1, &x[n0..])?;

    let target = id.sub(&psi.compose(phi)?)?;
    let y = solve(&hom.d(-1), &map_to_vector(&target))?
        .ok_or_else(|| Error::Internal("ψφ is not homotopic to the identity".into()))?;
    let h_prime = vector_to_map(e, e, -1, &y)?;
    debug_assert!(homotopy_check(&h, &phi.compose(&psi)?, &id)?);
    Ok(QuasiInverse { psi, h, h_prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RingSpec;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    fn zero_diff() -> Complex {
        Complex::two_term(0, Matrix::zeros(&q(), 1, 1))
    }

    #[test]
    fn g1_edges() {
        let e = Complex::two_term(0, Matrix::from_i64(&q(), &[&[1, 1]]));
        let id = GradedMap::identity(&e);
        assert!(verify_g1_edge(&id, &id, &GradedMap::zero(&e, &e, -1)).unwrap());
        let h = GradedMap::single(&e, &e, -1, 1, Matrix::from_i64(&q(), &[&[1], &[0]])).unwrap();
        assert!(!h.differential().is_zero());
        let w = AutWitness::G1Edge {
            phi: id.clone(),
            psi: id.clone(),
            h,
        };
        let failure = w.check().unwrap().unwrap_err();
        assert_eq!(failure.equation, "d(H) = psi - phi");
        let z = zero_diff();
        let zid = GradedMap::identity(&z);
        let any = GradedMap::single(&z, &z, -1, 1, Matrix::from_i64(&q(), &[&[5]])).unwrap();
        assert!(verify_g1_edge(&zid, &zid, &any).unwrap());
    }

    #[test]
    fn g2_vertices() {
        let e = Complex::single(&q(), 0, 2);
        let a = GradedMap::single(&e, &e, 0, 0, Matrix::from_i64(&q(), &[&[1, 1], &[0, 1]])).unwrap();
        let b = GradedMap::single(&e, &e, 0, 0, Matrix::from_i64(&q(), &[&[2, 0], &[1, 1]])).unwrap();
        let t = fill_inner_horn(&a, &b).unwrap();
        assert!(verify_g2_vertex(&t).unwrap());
        assert_eq!(t.phi02.component(0), Matrix::from_i64(&q(), &[&[2, 2], &[1, 2]]));
        let mut bad = t.clone();
        bad.phi02 = bad.phi02.add(&GradedMap::identity(&e)).unwrap();
        assert!(!verify_g2_vertex(&bad).unwrap());
        let z = GradedMap::zero(&e, &e, 0);
        assert_eq!(fill_inner_horn(&z, &a), Err(Error::NotQiso));
    }

    #[test]
    fn g2_edges() {
        let e = zero_diff();
        let id = GradedMap::identity(&e);
        let t = fill_inner_horn(&id, &id).unwrap();
        let zh = GradedMap::zero(&e, &e, -1);
        let w = AutWitness::G2Edge {
            phi: t.clone(),
            psi: t.clone(),
            h01: zh.clone(),
            h02: zh.clone(),
            h12: zh.clone(),
            theta: GradedMap::zero(&e, &e, -2),
        };
        assert!(w.verify().unwrap());
        let c = Complex::new(
            &q(),
            -1,
            vec![1, 1, 1],
            vec![Matrix::from_i64(&q(), &[&[1]]), Matrix::zeros(&q(), 1, 1)],
        )
        .unwrap();
        let cid = GradedMap::identity(&c);
        let ct = fill_inner_horn(&cid, &cid).unwrap();
        let czh = GradedMap::zero(&c, &c, -1);
        let theta = GradedMap::single(&c, &c, -2, 1, Matrix::from_i64(&q(), &[&[1]])).unwrap();
        assert!(!theta.differential().is_zero());
        let bad = AutWitness::G2Edge {
            phi: ct.clone(),
            psi: ct,
            h01: czh.clone(),
            h02: czh.clone(),
            h12: czh,
            theta,
        };
        let failure = bad.check().unwrap().unwrap_err();
        assert!(failure.equation.starts_with("d(Theta)"), "{failure}");
    }

    #[test]
    fn inverses() {
        let e = Complex::single(&q(), 0, 2);
        let phi = GradedMap::single(&e, &e, 0, 0, Matrix::from_i64(&q(), &[&[1, 1], &[0, 1]])).unwrap();
        let inv = quasi_automorphism_inverse(&phi).unwrap();
        assert_eq!(inv.psi.component(0), Matrix::from_i64(&q(), &[&[1, -1], &[0, 1]]));
        let two = GradedMap::identity(&e).scale(&q().from_i64(2));
        let half = quasi_automorphism_inverse(&two).unwrap().psi;
        assert_eq!(
            half,
            GradedMap::identity(&e).scale(
                &q().from_rational(&num_rational::BigRational::new(1.into(), 2.into()))
                    .unwrap()
            )
        );
        // φ kills a contractible summand, so no strict inverse exists.
        let c = Complex::new(
            &q(),
            -1,
            vec![1, 2, 1],
            vec![
                Matrix::from_i64(&q(), &[&[1], &[0]]),
                Matrix::from_i64(&q(), &[&[0, 0]]),
            ],
        )
        .unwrap();
        let phi = GradedMap::new(
            &c,
            &c,
            0,
            std::collections::BTreeMap::from([
                (-1, Matrix::from_i64(&q(), &[&[0]])),
                (0, Matrix::from_i64(&q(), &[&[0, 0], &[0, 1]])),
                (1, Matrix::from_i64(&q(), &[&[1]])),
            ]),
        )
        .unwrap();
        assert!(phi.is_chain_map());
        let inv = quasi_automorphism_inverse(&phi).unwrap();
        let id = GradedMap::identity(&c);
        assert!(homotopy_check(&inv.h, &phi.compose(&inv.psi).unwrap(), &id).unwrap());
        assert!(homotopy_check(&inv.h_prime, &inv.psi.compose(&phi).unwrap(), &id).unwrap());
    }
}
