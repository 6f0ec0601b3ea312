//! Base rings and the arithmetic on their [`Scalar`] values.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly::{Monomial, Poly};
use super::scalar::{Frac, Scalar};
use crate::error::{Error, Result};

/// Which base ring matrix entries live in. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingSpec(Arc<RingKind>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rationals,
    PrimeField(u64),
    /// Fraction field of `base[vars]`; `base` is `Q` or `GF(p)`.
    RationalFunctions {
        base: RingSpec,
        vars: Vec<String>,
    },
    /// `base[vars]` over a field.
    Polynomial {
        base: RingSpec,
        vars: Vec<String>,
    },
    /// `base[eps]/(eps^2)` over a field.
    DualNumbers {
        base: RingSpec,
    },
}

pub(crate) const RESERVED: [&str; 2] = ["eps", "mod"];

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl RingSpec {
    pub fn rationals() -> Self {
        RingSpec(Arc::new(RingKind::Rationals))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(RingSpec(Arc::new(RingKind::PrimeField(p))))
    }

    fn check_vars(vars: &[String], taken: &[String]) -> Result<()> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("variable list is empty".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) || taken.contains(v) {
                return Err(Error::InvalidRing(format!("variable `{v}` is repeated")));
            }
        }
        Ok(())
    }

    pub fn rational_functions<S: Into<String>>(base: RingSpec, vars: impl IntoIterator<Item = S>) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if !matches!(base.kind(), RingKind::Rationals | RingKind::PrimeField(_)) {
            return Err(Error::InvalidRing(format!(
                "rational functions are supported over Q or GF(p), not {base}"
            )));
        }
        Self::check_vars(&vars, &[])?;
        Ok(RingSpec(Arc::new(RingKind::RationalFunctions { base, vars })))
    }

    pub fn polynomial<S: Into<String>>(base: RingSpec, vars: impl IntoIterator<Item = S>) -> Result<Self> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if !base.is_field() {
            return Err(Error::InvalidRing(format!(
                "polynomial base must be a field, got {base}"
            )));
        }
        Self::check_vars(&vars, base.vars())?;
        Ok(RingSpec(Arc::new(RingKind::Polynomial { base, vars })))
    }

    pub fn dual_numbers(base: RingSpec) -> Result<Self> {
        if !base.is_field() {
            return Err(Error::InvalidRing(format!(
                "dual numbers need a field base, got {base}"
            )));
        }
        Ok(RingSpec(Arc::new(RingKind::DualNumbers { base })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// `Q`, `GF(p)` and rational function fields.
    pub fn is_field(&self) -> bool {
        matches!(
            self.kind(),
            RingKind::Rationals | RingKind::PrimeField(_) | RingKind::RationalFunctions { .. }
        )
    }

    /// Coefficient ring of polynomial, rational function and dual number rings.
    pub fn base(&self) -> Option<&RingSpec> {
        match self.kind() {
            RingKind::Rationals | RingKind::PrimeField(_) => None,
            RingKind::RationalFunctions { base, .. }
            | RingKind::Polynomial { base, .. }
            | RingKind::DualNumbers { base } => Some(base),
        }
    }

    pub fn vars(&self) -> &[String] {
        match self.kind() {
            RingKind::RationalFunctions { vars, .. } | RingKind::Polynomial { vars, .. } => vars,
            _ => &[],
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars().len()
    }

    /// Number of elements for finite fields.
    pub fn field_size(&self) -> Option<u64> {
        match self.kind() {
            RingKind::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            RingKind::Rationals => 0,
            RingKind::PrimeField(p) => *p,
            _ => self.base().expect("composite ring").characteristic(),
        }
    }

    pub(crate) fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NonFieldRing(self.to_string()))
        }
    }

    fn base_ref(&self) -> &RingSpec {
        self.base().expect("composite ring")
    }

    // ----- constructors -----

    pub fn zero(&self) -> Scalar {
        match self.kind() {
            RingKind::Rationals => Scalar::Rational(BigRational::zero()),
            RingKind::PrimeField(_) => Scalar::Residue(0),
            RingKind::RationalFunctions { base, vars } => Scalar::Frac(Box::new(Frac {
                num: Poly::zero(),
                den: Poly::constant(base, vars.len(), base.one()),
            })),
            RingKind::Polynomial { .. } => Scalar::Poly(Poly::zero()),
            RingKind::DualNumbers { base } => Scalar::dual(base.zero(), base.zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.kind() {
            RingKind::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            RingKind::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue(r.to_u64().expect("residue fits"))
            }
            _ => self.constant(self.base_ref().from_bigint(n)),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self.kind() {
            RingKind::Rationals => Ok(Scalar::Rational(q.clone())),
            RingKind::PrimeField(_) => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                self.div(&n, &d)
            }
            _ => Ok(self.constant(self.base_ref().from_rational(q)?)),
        }
    }

    /// Embeds an element of the base ring as a constant.
    pub fn constant(&self, c: Scalar) -> Scalar {
        match self.kind() {
            RingKind::Rationals | RingKind::PrimeField(_) => c,
            RingKind::RationalFunctions { base, vars } => Scalar::Frac(Box::new(Frac {
                num: Poly::constant(base, vars.len(), c),
                den: Poly::constant(base, vars.len(), base.one()),
            })),
            RingKind::Polynomial { base, vars } => Scalar::Poly(Poly::constant(base, vars.len(), c)),
            RingKind::DualNumbers { base } => Scalar::dual(c, base.zero()),
        }
    }

    /// The generator named `name`, if this ring (or its base) has one.
    pub fn var(&self, name: &str) -> Option<Scalar> {
        match self.kind() {
            RingKind::RationalFunctions { base, vars } => {
                let i = vars.iter().position(|v| v == name)?;
                Some(Scalar::Frac(Box::new(Frac {
                    num: Poly::var(base, vars.len(), i),
                    den: Poly::constant(base, vars.len(), base.one()),
                })))
            }
            RingKind::Polynomial { base, vars } => match vars.iter().position(|v| v == name) {
                Some(i) => Some(Scalar::Poly(Poly::var(base, vars.len(), i))),
                None => base.var(name).map(|c| self.constant(c)),
            },
            RingKind::DualNumbers { base } => base.var(name).map(|c| self.constant(c)),
            _ => None,
        }
    }

    /// The nilpotent `eps` of a dual number ring.
    pub fn eps(&self) -> Option<Scalar> {
        match self.kind() {
            RingKind::DualNumbers { base } => Some(Scalar::dual(base.zero(), base.one())),
            _ => None,
        }
    }

    /// Polynomial with the given base-field coefficients.
    pub fn poly_from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Scalar {
        Scalar::Poly(Poly::from_terms(self.base_ref(), terms))
    }

    // ----- rational function normalization -----

    fn frac_normalize(&self, num: Poly, den: Poly) -> Result<Scalar> {
        let (base, nvars) = match self.kind() {
            RingKind::RationalFunctions { base, vars } => (base, vars.len()),
            _ => unreachable!("frac_normalize on {self}"),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(self.zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(base, &num, &den);
            (
                num.div_exact(base, &g).expect("gcd divides numerator"),
                den.div_exact(base, &g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        let inv = base.inv(&lc)?;
        let num = num.scale(base, &inv);
        let den = den.scale(base, &inv);
        debug_assert!(den.terms().keys().all(|m| m.nvars() == nvars));
        Ok(Scalar::Frac(Box::new(Frac { num, den })))
    }

    /// `num / den` as an element of this rational function field.
    pub fn frac(&self, num: Poly, den: Poly) -> Result<Scalar> {
        self.frac_normalize(num, den)
    }

    // ----- arithmetic -----

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(r) => *r == 0,
            Scalar::Poly(p) => p.is_zero(),
            Scalar::Frac(f) => f.num.is_zero(),
            Scalar::Dual(d) => {
                let base = self.base_ref();
                base.is_zero(&d.0) && base.is_zero(&d.1)
            }
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind(), a, b) {
            (RingKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (RingKind::PrimeField(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (RingKind::Polynomial { base, .. }, Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.add(base, y)),
            (RingKind::RationalFunctions { base, .. }, Scalar::Frac(x), Scalar::Frac(y)) => {
                if x.den == y.den {
                    let num = x.num.add(base, &y.num);
                    if x.den.is_constant() {
                        return Scalar::Frac(Box::new(Frac {
                            num,
                            den: x.den.clone(),
                        }));
                    }
                    return self.frac_normalize(num, x.den.clone()).expect("nonzero denominator");
                }
                let num = x.num.mul(base, &y.den).add(base, &y.num.mul(base, &x.den));
                self.frac_normalize(num, x.den.mul(base, &y.den))
                    .expect("nonzero denominator")
            }
            (RingKind::DualNumbers { base }, Scalar::Dual(x), Scalar::Dual(y)) => {
                Scalar::dual(base.add(&x.0, &y.0), base.add(&x.1, &y.1))
            }
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.kind(), a) {
            (RingKind::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (RingKind::PrimeField(p), Scalar::Residue(x)) => Scalar::Residue(if *x == 0 { 0 } else { p - x }),
            (RingKind::Polynomial { base, .. }, Scalar::Poly(x)) => Scalar::Poly(x.neg(base)),
            (RingKind::RationalFunctions { base, .. }, Scalar::Frac(x)) => Scalar::Frac(Box::new(Frac {
                num: x.num.neg(base),
                den: x.den.clone(),
            })),
            (RingKind::DualNumbers { base }, Scalar::Dual(x)) => Scalar::dual(base.neg(&x.0), base.neg(&x.1)),
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.kind(), a, b) {
            (RingKind::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (RingKind::PrimeField(p), Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue(mul_mod(*x, *y, *p)),
            (RingKind::Polynomial { base, .. }, Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.mul(base, y)),
            (RingKind::RationalFunctions { base, .. }, Scalar::Frac(x), Scalar::Frac(y)) => {
                if x.num.is_zero() || y.num.is_zero() {
                    return self.zero();
                }
                let num = x.num.mul(base, &y.num);
                let den = x.den.mul(base, &y.den);
                if den.is_constant() {
                    return Scalar::Frac(Box::new(Frac { num, den }));
                }
                self.frac_normalize(num, den).expect("nonzero denominator")
            }
            (RingKind::DualNumbers { base }, Scalar::Dual(x), Scalar::Dual(y)) => Scalar::dual(
                base.mul(&x.0, &y.0),
                base.add(&base.mul(&x.0, &y.1), &base.mul(&x.1, &y.0)),
            ),
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u32) -> Scalar {
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Multiplicative inverse. Units of polynomial rings are the nonzero
    /// constants; units of dual numbers are `a + b*eps` with `a != 0`.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self.kind(), a) {
            (RingKind::Rationals, Scalar::Rational(x)) => Ok(Scalar::Rational(x.recip())),
            (RingKind::PrimeField(p), Scalar::Residue(x)) => Ok(Scalar::Residue(pow_mod(*x, p - 2, *p))),
            (RingKind::RationalFunctions { .. }, Scalar::Frac(x)) => self.frac_normalize(x.den.clone(), x.num.clone()),
            (RingKind::Polynomial { base, .. }, Scalar::Poly(x)) => {
                if !x.is_constant() {
                    return Err(Error::DivisionByZero);
                }
                let c = base.inv(&x.constant_term(base))?;
                Ok(self.constant(c))
            }
            (RingKind::DualNumbers { base }, Scalar::Dual(x)) => {
                // (a + b eps)^-1 = a^-1 - b a^-2 eps
                let ai = base.inv(&x.0)?;
                let b = base.neg(&base.mul(&x.1, &base.mul(&ai, &ai)));
                Ok(Scalar::dual(ai, b))
            }
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Maps `a` from this ring into `target` along the supported coefficient
    /// embeddings (identity, field into polynomials, rational functions or
    /// dual numbers over it, polynomials into their fraction field).
    pub fn embed(&self, a: &Scalar, target: &RingSpec) -> Result<Scalar> {
        if self == target {
            return Ok(a.clone());
        }
        match target.kind() {
            RingKind::Polynomial { base, .. } | RingKind::DualNumbers { base } if base == self => {
                Ok(target.constant(a.clone()))
            }
            RingKind::RationalFunctions { base, vars } => {
                if base == self {
                    return Ok(target.constant(a.clone()));
                }
                match self.kind() {
                    // k(u)[t] and k[t] sit inside k(u, t) / k(t) when the variables line up
                    RingKind::Polynomial {
                        base: pbase,
                        vars: pvars,
                    } => {
                        let offset = pbase.nvars();
                        if !(pbase == base || pbase.base() == Some(base) && pbase.vars() == &vars[..offset])
                            || vars[offset..] != pvars[..]
                        {
                            return Err(Error::UnsupportedEmbedding(format!("{self} -> {target}")));
                        }
                        let p = a.as_poly().expect("polynomial scalar");
                        let mut acc = target.zero();
                        for (m, c) in p.terms() {
                            let mut e = vec![0; vars.len()];
                            e[offset..].copy_from_slice(&m.0);
                            let mono = target.frac(
                                Poly::monomial(base, Monomial(e), base.one()),
                                Poly::constant(base, vars.len(), base.one()),
                            )?;
                            let coeff = match pbase.kind() {
                                RingKind::RationalFunctions { .. } => {
                                    let f = c.as_frac().expect("rational function");
                                    let lift = |q: &Poly| {
                                        Poly::from_terms(
                                            base,
                                            q.terms().iter().map(|(m, c)| {
                                                let mut e = m.0.clone();
                                                e.resize(vars.len(), 0);
                                                (Monomial(e), c.clone())
                                            }),
                                        )
                                    };
                                    target.frac(lift(&f.num), lift(&f.den))?
                                }
                                _ => target.constant(c.clone()),
                            };
                            acc = target.add(&acc, &target.mul(&coeff, &mono));
                        }
                        Ok(acc)
                    }
                    _ => Err(Error::UnsupportedEmbedding(format!("{self} -> {target}"))),
                }
            }
            _ => Err(Error::UnsupportedEmbedding(format!("{self} -> {target}"))),
        }
    }

    /// Substitutes base-field values for the variables of a polynomial ring.
    pub fn evaluate(&self, a: &Scalar, point: &[Scalar]) -> Scalar {
        match (self.kind(), a) {
            (RingKind::Polynomial { base, .. }, Scalar::Poly(p)) => p.eval(base, point),
            _ => panic!("evaluate needs a polynomial scalar of {self}"),
        }
    }

    /// Constant term / reduction modulo the variables or `eps`.
    pub fn reduce(&self, a: &Scalar) -> Scalar {
        match (self.kind(), a) {
            (RingKind::DualNumbers { .. }, Scalar::Dual(d)) => d.0.clone(),
            (RingKind::Polynomial { base, .. }, Scalar::Poly(p)) => p.constant_term(base),
            _ => a.clone(),
        }
    }

    /// Sign helper: `(-1)^k`.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    /// Integer value of a rational scalar if it is one.
    pub fn as_integer(&self, a: &Scalar) -> Option<BigInt> {
        match a {
            Scalar::Rational(r) if r.is_integer() => Some(r.to_integer()),
            Scalar::Residue(r) => Some(BigInt::from(*r)),
            _ => None,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "GF({p})"),
            RingKind::RationalFunctions { base, vars } => write!(f, "{base}({})", vars.join(",")),
            RingKind::Polynomial { base, vars } => write!(f, "{base}[{}]", vars.join(",")),
            RingKind::DualNumbers { base } => write!(f, "{base}[eps]/(eps^2)"),
        }
    }
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec({self})")
    }
}
