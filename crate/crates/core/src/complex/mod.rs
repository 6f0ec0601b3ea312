//! Bounded cochain complexes of finite free modules and maps between them.
//!
//! Conventions used throughout the crate:
//!
//! * differentials raise degree, `d^n : C^n -> C^{n+1}`;
//! * `(C[k])^n = C^{n+k}` with differential `(-1)^k d`;
//! * the cone of `f : P -> Q` has `Cone^n = P^{n+1} ⊕ Q^n` and differential
//!   `[[-d_P, 0], [f, d_Q]]`;
//! * a degree-`s` map `F` has Hom-differential `d(F) = d∘F - (-1)^s F∘d`, so
//!   for a homotopy `H` (`s = -1`) this reads `d(H) = dH + Hd`.

mod cone;
mod map;

pub use cone::{cohomology_dims, cone, homotopy_check, is_exact, is_qiso, Cone};
pub use map::GradedMap;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, RingSpec};

/// A bounded complex `C^lo -> ... -> C^hi` of free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    ring: RingSpec,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d^{lo+i}`, of shape `rank(lo+i+1) x rank(lo+i)`.
    diffs: Vec<Matrix>,
}

/// The module a complex is tensored with in [`Complex::tensor`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorModule {
    /// The ring itself; tensoring is the identity.
    Ring,
    /// The residue field of a local ring (a field, or `k` for `k[eps]/(eps^2)`).
    ResidueField,
}

impl Complex {
    /// Builds and validates a complex living in degrees `lo ..= lo + ranks.len() - 1`.
    pub fn new(ring: &RingSpec, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let c = Self::unchecked(ring, lo, ranks, diffs)?;
        c.validate()?;
        Ok(c)
    }

    /// Checks shapes but not `d∘d = 0`.
    fn unchecked(ring: &RingSpec, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::ShapeMismatch("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch(format!(
                    "differential in degree {} is over {}",
                    lo + i as i64,
                    d.ring()
                )));
            }
            if d.shape() != (ranks[i + 1], ranks[i]) {
                return Err(Error::ShapeMismatch(format!(
                    "differential in degree {} should be {}x{}, is {}x{}",
                    lo + i as i64,
                    ranks[i + 1],
                    ranks[i],
                    d.rows(),
                    d.cols()
                )));
            }
        }
        Ok(Complex {
            ring: ring.clone(),
            lo,
            ranks,
            diffs,
        })
    }

    /// Builds from a degree map; degrees in `lo..=hi` without an entry are 0.
    pub fn from_maps(
        ring: &RingSpec,
        lo: i64,
        hi: i64,
        ranks: &BTreeMap<i64, usize>,
        diffs: &BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        if lo > hi {
            return Err(Error::ShapeMismatch(format!("empty window [{lo}, {hi}]")));
        }
        if let Some(n) = ranks.keys().chain(diffs.keys()).find(|&&n| n < lo || n > hi) {
            return Err(Error::ShapeMismatch(format!(
                "degree {n} outside the window [{lo}, {hi}]"
            )));
        }
        let r: Vec<usize> = (lo..=hi).map(|n| ranks.get(&n).copied().unwrap_or(0)).collect();
        let d = (lo..hi)
            .map(|n| {
                let i = (n - lo) as usize;
                diffs
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zeros(ring, r[i + 1], r[i]))
            })
            .collect();
        if diffs.contains_key(&hi) && !diffs[&hi].entries().is_empty() {
            return Err(Error::ShapeMismatch(format!("differential out of the top degree {hi}")));
        }
        Self::new(ring, lo, r, d)
    }

    /// The zero complex (a single degree 0 of rank 0).
    pub fn zero(ring: &RingSpec) -> Self {
        Complex {
            ring: ring.clone(),
            lo: 0,
            ranks: vec![0],
            diffs: Vec::new(),
        }
    }

    /// `R^rank` concentrated in one degree.
    pub fn single(ring: &RingSpec, degree: i64, rank: usize) -> Self {
        Complex {
            ring: ring.clone(),
            lo: degree,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    /// `R^cols --d--> R^rows` in degrees `lo`, `lo + 1`.
    pub fn two_term(lo: i64, d: Matrix) -> Self {
        Complex {
            ring: d.ring().clone(),
            lo,
            ranks: vec![d.cols(), d.rows()],
            diffs: vec![d],
        }
    }

    /// Checks shapes and `d^{n+1} d^n = 0`, reporting the first failing `n`.
    pub fn validate(&self) -> Result<()> {
        for w in self.diffs.windows(2).enumerate() {
            let (i, pair) = w;
            let dd = pair[1].mul(&pair[0])?;
            if !dd.is_zero() {
                return Err(Error::NotAComplex {
                    degree: self.lo + i as i64,
                });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|n| (n, self.rank(n))).collect()
    }

    /// `d^n`, zero (of the right shape) outside the window.
    pub fn d(&self, n: i64) -> Matrix {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(&self.ring, self.rank(n + 1), self.rank(n))
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `Σ (-1)^n rank(C^n)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }

    /// Same complex on the window `[lo, hi]` (which must contain every nonzero term).
    pub fn with_window(&self, lo: i64, hi: i64) -> Result<Complex> {
        if self.degrees().any(|n| self.rank(n) > 0 && (n < lo || n > hi)) || lo > hi {
            return Err(Error::ShapeMismatch(format!("window [{lo}, {hi}] drops nonzero terms")));
        }
        let ranks = (lo..=hi).map(|n| self.rank(n)).collect();
        let diffs = (lo..hi).map(|n| self.d(n)).collect();
        Self::unchecked(&self.ring, lo, ranks, diffs)
    }

    /// `C[k]`: `(C[k])^n = C^{n+k}`, differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Complex {
        let sign = self.ring.sign(k);
        Complex {
            ring: self.ring.clone(),
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Degreewise direct sum, on the union of the two windows.
    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ring = &self.ring;
        let ranks = (lo..=hi).map(|n| self.rank(n) + other.rank(n)).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let a = self.d(n);
                let b = other.d(n);
                Matrix::block(
                    &a,
                    &Matrix::zeros(ring, a.rows(), b.cols()),
                    &Matrix::zeros(ring, b.rows(), a.cols()),
                    &b,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::unchecked(ring, lo, ranks, diffs)
    }

    /// Applies `f` to every differential, keeping ranks and window.
    pub(crate) fn map_diffs(&self, ring: &RingSpec, f: impl Fn(&Matrix) -> Result<Matrix>) -> Result<Complex> {
        let diffs = self.diffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::unchecked(ring, self.lo, self.ranks.clone(), diffs)
    }

    /// `C ⊗ M` for `M` the ring itself or its residue field. Since every term
    /// is free this is also the derived tensor product.
    pub fn tensor(&self, module: TensorModule) -> Result<Complex> {
        match module {
            TensorModule::Ring => Ok(self.clone()),
            TensorModule::ResidueField => {
                if self.ring.is_field() {
                    return Ok(self.clone());
                }
                match self.ring.kind() {
                    crate::linalg::RingKind::DualNumbers { base } => self.map_diffs(base, |d| Ok(d.reduce())),
                    _ => Err(Error::UnsupportedModule(format!("residue field of {}", self.ring))),
                }
            }
        }
    }

    /// Entrywise coefficient embedding into `target`.
    pub fn base_change(&self, target: &RingSpec) -> Result<Complex> {
        let c = self.map_diffs(target, |d| d.base_change(target))?;
        let c = Complex {
            ring: target.clone(),
            ..c
        };
        c.validate()?;
        Ok(c)
    }

    /// Entrywise constant term (`eps -> 0`, or all polynomial variables -> 0).
    pub fn reduce(&self) -> Complex {
        let target = self
            .ring
            .base()
            .filter(|_| !self.ring.is_field())
            .unwrap_or(&self.ring)
            .clone();
        Complex {
            ring: target,
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(Matrix::reduce).collect(),
        }
    }

    /// Substitutes a point into a complex over a polynomial ring.
    pub fn evaluate(&self, point: &[(String, crate::linalg::Scalar)]) -> Result<Complex> {
        let base = match self.ring.base() {
            Some(b) if !self.ring.is_field() => b.clone(),
            _ => {
                return Err(Error::UnsupportedRing(format!(
                    "evaluate needs a polynomial ring, got {}",
                    self.ring
                )))
            }
        };
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.evaluate(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(Complex {
            ring: base,
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs,
        })
    }

    /// True when every differential entry is a constant of the base ring.
    pub fn has_constant_differentials(&self) -> bool {
        self.diffs.iter().all(|d| {
            d.entries().iter().all(|x| match x {
                crate::linalg::Scalar::Poly(p) => p.is_constant(),
                crate::linalg::Scalar::Dual(d) => self.ring.base().is_some_and(|b| b.is_zero(&d.1)),
                _ => true,
            })
        })
    }
}
