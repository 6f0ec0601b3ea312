use std::collections::BTreeMap;

use super::Complex;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RingSpec, Scalar};

/// A degree-`s` map `F : P -> Q`, components `F^n : P^n -> Q^{n+s}`.
///
/// Chain maps have degree 0, homotopies degree -1, 2-homotopies degree -2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: Complex,
    target: Complex,
    degree: i64,
    /// One component per source degree in `source.lo()..=source.hi()`.
    comps: Vec<Matrix>,
}

impl GradedMap {
    pub fn zero(source: &Complex, target: &Complex, degree: i64) -> Self {
        let ring = source.ring();
        let comps = source
            .degrees()
            .map(|n| Matrix::zeros(ring, target.rank(n + degree), source.rank(n)))
            .collect();
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            comps,
        }
    }

    pub fn identity(c: &Complex) -> Self {
        let comps = c.degrees().map(|n| Matrix::identity(c.ring(), c.rank(n))).collect();
        GradedMap {
            source: c.clone(),
            target: c.clone(),
            degree: 0,
            comps,
        }
    }

    /// Components keyed by source degree; missing ones are zero.
    pub fn new(source: &Complex, target: &Complex, degree: i64, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", source.ring(), target.ring())));
        }
        let mut f = Self::zero(source, target, degree);
        for (n, m) in components {
            let expect = (target.rank(n + degree), source.rank(n));
            if m.ring() != source.ring() {
                return Err(Error::RingMismatch(format!("component {n} is over {}", m.ring())));
            }
            if m.shape() != expect {
                return Err(Error::ShapeMismatch(format!(
                    "component at degree {n} should be {}x{}, is {}x{}",
                    expect.0,
                    expect.1,
                    m.rows(),
                    m.cols()
                )));
            }
            if n < source.lo() || n > source.hi() {
                if m.entries().is_empty() {
                    continue;
                }
                return Err(Error::ShapeMismatch(format!(
                    "component at degree {n} is outside the source"
                )));
            }
            f.comps[(n - source.lo()) as usize] = m;
        }
        Ok(f)
    }

    /// Chain map concentrated in a single degree with the given matrix.
    pub fn single(source: &Complex, target: &Complex, degree: i64, n: i64, m: Matrix) -> Result<Self> {
        Self::new(source, target, degree, BTreeMap::from([(n, m)]))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ring(&self) -> &RingSpec {
        self.source.ring()
    }

    /// `F^n`, zero outside the source window.
    pub fn component(&self, n: i64) -> Matrix {
        if n >= self.source.lo() && n <= self.source.hi() {
            self.comps[(n - self.source.lo()) as usize].clone()
        } else {
            Matrix::zeros(self.ring(), self.target.rank(n + self.degree), self.source.rank(n))
        }
    }

    pub fn components(&self) -> BTreeMap<i64, Matrix> {
        self.source.degrees().map(|n| (n, self.component(n))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    fn same_shape(&self, other: &GradedMap) -> Result<()> {
        if self.degree != other.degree || self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch(
                "maps have different source, target or degree".into(),
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &GradedMap, f: impl Fn(&Matrix, &Matrix) -> Result<Matrix>) -> Result<GradedMap> {
        self.same_shape(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedMap { comps, ..self.clone() })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip_with(other, Matrix::add)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.zip_with(other, Matrix::sub)
    }

    pub fn neg(&self) -> GradedMap {
        GradedMap {
            comps: self.comps.iter().map(Matrix::neg).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> GradedMap {
        GradedMap {
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
            ..self.clone()
        }
    }

    /// `self ∘ f`, of degree `self.degree + f.degree`.
    pub fn compose(&self, f: &GradedMap) -> Result<GradedMap> {
        if f.target != self.source {
            return Err(Error::ShapeMismatch(
                "compose: target of the first map is not the source of the second".into(),
            ));
        }
        let comps = f
            .source
            .degrees()
            .map(|n| self.component(n + f.degree).mul(&f.component(n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedMap {
            source: f.source.clone(),
            target: self.target.clone(),
            degree: self.degree + f.degree,
            comps,
        })
    }

    /// Hom-complex differential `d(F) = d_Q∘F - (-1)^s F∘d_P`.
    pub fn differential(&self) -> GradedMap {
        let s = self.degree;
        let sign = self.ring().sign(s);
        let comps = self
            .source
            .degrees()
            .map(|n| {
                let left = self.target.d(n + s).mul(&self.component(n)).expect("shapes agree");
                let right = self.component(n + 1).mul(&self.source.d(n)).expect("shapes agree");
                left.sub(&right.scale(&sign)).expect("shapes agree")
            })
            .collect();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: s + 1,
            comps,
        }
    }

    /// Ok iff this is a degree-0 map commuting with the differentials.
    pub fn check_chain_map(&self) -> Result<()> {
        if self.degree != 0 {
            return Err(Error::ShapeMismatch(format!(
                "a chain map has degree 0, not {}",
                self.degree
            )));
        }
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi {
            let left = self.target.d(n).mul(&self.component(n))?;
            let right = self.component(n + 1).mul(&self.source.d(n))?;
            if left != right {
                return Err(Error::NotChainMap { degree: n });
            }
        }
        Ok(())
    }

    pub fn is_chain_map(&self) -> bool {
        self.check_chain_map().is_ok()
    }

    /// `F[k]` between `P[k]` and `Q[k]`: components `(-1)^{ks} F^{n+k}`,
    /// so that `d(F[k]) = (-1)^k d(F)[k]`.
    pub fn shift(&self, k: i64) -> GradedMap {
        let sign = self.ring().sign(k * self.degree);
        GradedMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            degree: self.degree,
            comps: self.comps.iter().map(|m| m.scale(&sign)).collect(),
        }
    }

    /// Applies a matrix transformation to every component, with new endpoints.
    pub(crate) fn map_components(
        &self,
        source: &Complex,
        target: &Complex,
        f: impl Fn(&Matrix) -> Result<Matrix>,
    ) -> Result<GradedMap> {
        let comps = self.comps.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            degree: self.degree,
            comps,
        })
    }

    pub fn base_change(&self, target_ring: &RingSpec) -> Result<GradedMap> {
        let s = self.source.base_change(target_ring)?;
        let t = self.target.base_change(target_ring)?;
        self.map_components(&s, &t, |m| m.base_change(target_ring))
    }

    pub fn evaluate(&self, point: &[(String, Scalar)]) -> Result<GradedMap> {
        let s = self.source.evaluate(point)?;
        let t = self.target.evaluate(point)?;
        self.map_components(&s, &t, |m| m.evaluate(point))
    }

    /// Entrywise constant term, between the reduced complexes.
    pub fn reduce(&self) -> GradedMap {
        let s = self.source.reduce();
        let t = self.target.reduce();
        self.map_components(&s, &t, |m| Ok(m.reduce()))
            .expect("reduction preserves shapes")
    }

    /// Same components, reinterpreted between complexes with identical shapes.
    pub fn with_endpoints(&self, source: &Complex, target: &Complex) -> Result<GradedMap> {
        Self::new(source, target, self.degree, self.components())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    #[test]
    fn compose_identity_and_add_negation() {
        let c = Complex::two_term(0, Matrix::from_i64(&q(), &[&[1, 1]]));
        let f = GradedMap::new(
            &c,
            &c,
            0,
            BTreeMap::from([
                (0, Matrix::from_i64(&q(), &[&[2, 1], &[0, 1]])),
                (1, Matrix::from_i64(&q(), &[&[2]])),
            ]),
        )
        .unwrap();
        assert!(f.is_chain_map());
        assert_eq!(GradedMap::identity(&c).compose(&f).unwrap(), f);
        assert!(f.add(&f.neg()).unwrap().is_zero());
    }

    #[test]
    fn compose_matches_hand_product() {
        let c = Complex::two_term(0, Matrix::zeros(&q(), 2, 2));
        let f = GradedMap::new(
            &c,
            &c,
            0,
            BTreeMap::from([
                (0, Matrix::from_i64(&q(), &[&[1, 2], &[3, 4]])),
                (1, Matrix::from_i64(&q(), &[&[0, 1], &[1, 0]])),
            ]),
        )
        .unwrap();
        let g = GradedMap::new(
            &c,
            &c,
            0,
            BTreeMap::from([
                (0, Matrix::from_i64(&q(), &[&[2, 0], &[1, 1]])),
                (1, Matrix::from_i64(&q(), &[&[1, 1], &[0, 1]])),
            ]),
        )
        .unwrap();
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.component(0), Matrix::from_i64(&q(), &[&[2, 4], &[4, 6]]));
        assert_eq!(gf.component(1), Matrix::from_i64(&q(), &[&[1, 1], &[1, 0]]));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = Complex::single(&q(), 0, 1);
        let b = Complex::single(&q(), 0, 2);
        assert!(matches!(
            GradedMap::single(&a, &b, 0, 0, Matrix::identity(&q(), 1)),
            Err(Error::ShapeMismatch(_))
        ));
        let f = GradedMap::identity(&a);
        let g = GradedMap::identity(&b);
        assert!(matches!(f.add(&g), Err(Error::ShapeMismatch(_))));
        assert!(matches!(f.compose(&g), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn differential_squares_to_zero() {
        let c = Complex::new(
            &q(),
            -1,
            vec![1, 2, 1],
            vec![
                Matrix::from_i64(&q(), &[&[1], &[1]]),
                Matrix::from_i64(&q(), &[&[1, -1]]),
            ],
        )
        .unwrap();
        for s in -2..=1 {
            let mut f = GradedMap::zero(&c, &c, s);
            for n in c.degrees() {
                let m = f.component(n);
                let filled = Matrix::from_fn(&q(), m.rows(), m.cols(), |i, j| q().from_i64((i + 2 * j) as i64 + n));
                f = GradedMap::single(&c, &c, s, n, filled).unwrap().add(&f).unwrap();
            }
            assert!(f.differential().differential().is_zero(), "degree {s}");
        }
    }
}
