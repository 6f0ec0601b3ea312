use num_rational::BigRational;

use super::poly::Poly;

/// A ring element in canonical form. The ring it belongs to is carried
/// separately (by the enclosing [`Matrix`](super::Matrix) or passed to
/// [`RingSpec`](super::RingSpec) arithmetic), so equal values always have
/// equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Reduced fraction.
    Rational(BigRational),
    /// Residue in `[0, p)`.
    Residue(u64),
    /// Polynomial over the base field.
    Poly(Poly),
    /// Rational function over `Q` or `GF(p)`.
    Frac(Box<Frac>),
    /// `a + b*eps` with `a`, `b` in the base field.
    Dual(Box<(Scalar, Scalar)>),
}

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    pub num: Poly,
    pub den: Poly,
}

impl Scalar {
    pub fn dual(a: Scalar, b: Scalar) -> Scalar {
        Scalar::Dual(Box::new((a, b)))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Scalar::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_frac(&self) -> Option<&Frac> {
        match self {
            Scalar::Frac(f) => Some(f),
            _ => None,
        }
    }

    /// `(a, b)` for `a + b*eps`.
    pub fn as_dual(&self) -> Option<(&Scalar, &Scalar)> {
        match self {
            Scalar::Dual(d) => Some((&d.0, &d.1)),
            _ => None,
        }
    }
}
