//! Sparse multivariate polynomials with coefficients in a field.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under graded-lex
//! order, so the leading term is always the last entry and two equal
//! polynomials have identical maps. Zero coefficients are never stored.
//!
//! Every operation takes the coefficient ring explicitly; the polynomial
//! itself does not know which field its coefficients live in.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::ring::RingSpec;
use super::scalar::Scalar;

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(base: &RingSpec, nvars: usize, c: Scalar) -> Self {
        Self::monomial(base, Monomial::one(nvars), c)
    }

    pub fn monomial(base: &RingSpec, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !base.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(base: &RingSpec, nvars: usize, i: usize) -> Self {
        Self::monomial(base, Monomial::var(nvars, i), base.one())
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(base: &RingSpec, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(base, m, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_term(&self, base: &RingSpec) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| base.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    fn add_term(&mut self, base: &RingSpec, m: Monomial, c: Scalar) {
        if base.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = base.add(existing, &c);
                if base.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, base: &RingSpec, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(base, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, base: &RingSpec) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), base.neg(c))).collect(),
        }
    }

    pub fn sub(&self, base: &RingSpec, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(base, m.clone(), base.neg(c));
        }
        out
    }

    pub fn mul(&self, base: &RingSpec, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(base, ma.mul(mb), base.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, base: &RingSpec, c: &Scalar) -> Poly {
        if base.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), base.mul(a, c)))
                .filter(|(_, a)| !base.is_zero(a))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, base: &RingSpec, nvars: usize, mut e: u32) -> Poly {
        let mut acc = Poly::constant(base, nvars, base.one());
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(base, &sq);
            }
        }
        acc
    }

    /// Substitutes `point[i]` for variable `i`; `point` lives in `base`.
    pub fn eval(&self, base: &RingSpec, point: &[Scalar]) -> Scalar {
        let mut acc = base.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = base.mul(&t, &base.pow(x, e));
                }
            }
            acc = base.add(&acc, &t);
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self, base: &RingSpec) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) => {
                if *lc == base.one() {
                    return self.clone();
                }
                let inv = base.inv(lc).expect("nonzero coefficient in a field");
                self.scale(base, &inv)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, base: &RingSpec, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dc_inv = base.inv(dc).ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(dm)?;
            let c = base.mul(rc, &dc_inv);
            let t = Poly::monomial(base, m, c);
            rem = rem.sub(base, &t.mul(base, d));
            quot = quot.add(base, &t);
        }
        Some(quot)
    }

    /// Splits by powers of variable `v`; each coefficient has exponent 0 in `v`.
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut stripped = m.clone();
            stripped.0[v] = 0;
            out.entry(e).or_default().terms.insert(stripped, c.clone());
        }
        out
    }

    fn leading_coeff_in(&self, v: usize) -> Poly {
        self.coeffs_in(v)
            .into_iter()
            .next_back()
            .map(|(_, c)| c)
            .unwrap_or_default()
    }

    /// Greatest common divisor, normalized monic (zero iff both inputs are zero).
    ///
    /// Recursive primitive-PRS: pick a variable occurring in either input,
    /// split off the content (a gcd of polynomials in fewer variables) and run
    /// pseudo-remainder sequences on the primitive parts.
    pub fn gcd(base: &RingSpec, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic(base);
        }
        if b.is_zero() {
            return a.monic(base);
        }
        let nvars = a.terms.keys().next().map(Monomial::nvars).unwrap_or(0);
        if a.is_constant() || b.is_constant() {
            return Poly::constant(base, nvars, base.one());
        }
        let v = (0..nvars)
            .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
            .expect("non-constant polynomial has a variable");
        if a.degree_in(v) == 0 {
            return Poly::gcd(base, a, &b.content_in(base, v));
        }
        if b.degree_in(v) == 0 {
            return Poly::gcd(base, &a.content_in(base, v), b);
        }
        let ca = a.content_in(base, v);
        let cb = b.content_in(base, v);
        let mut p = a.div_exact(base, &ca).expect("content divides").monic(base);
        let mut q = b.div_exact(base, &cb).expect("content divides").monic(base);
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            let r = p.prem_in(base, &q, v);
            p = q;
            q = if r.is_zero() { r } else { r.primitive_in(base, v) };
        }
        Poly::gcd(base, &ca, &cb).mul(base, &p).monic(base)
    }

    fn content_in(&self, base: &RingSpec, v: usize) -> Poly {
        self.coeffs_in(v)
            .values()
            .fold(Poly::zero(), |g, c| Poly::gcd(base, &g, c))
    }

    fn primitive_in(&self, base: &RingSpec, v: usize) -> Poly {
        let c = self.content_in(base, v);
        self.div_exact(base, &c).expect("content divides").monic(base)
    }

    /// Pseudo-remainder of `self` by `d` as polynomials in `v`.
    fn prem_in(&self, base: &RingSpec, d: &Poly, v: usize) -> Poly {
        let dd = d.degree_in(v);
        let ld = d.leading_coeff_in(v);
        let nvars = Monomial::nvars(d.terms.keys().next().expect("nonzero divisor"));
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dd {
            let dr = r.degree_in(v);
            let lr = r.leading_coeff_in(v);
            let mut shift = Monomial::one(nvars);
            shift.0[v] = dr - dd;
            r = ld.mul(base, &r).sub(base, &lr.mul_monomial(&shift).mul(base, d));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    fn p2(terms: &[(i64, [u32; 2])]) -> Poly {
        let base = q();
        Poly::from_terms(
            &base,
            terms.iter().map(|(c, e)| (Monomial(e.to_vec()), base.from_i64(*c))),
        )
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial(vec![1, 0]);
        let y = Monomial(vec![0, 1]);
        let x2 = Monomial(vec![2, 0]);
        let xy = Monomial(vec![1, 1]);
        assert!(y < x);
        assert!(x < xy);
        assert!(xy < x2);
        assert!(Monomial::one(2) < y);
    }

    #[test]
    fn gcd_of_products() {
        let base = q();
        // (x + y)(x - 1) and (x + y)(y + 2)
        let common = p2(&[(1, [1, 0]), (1, [0, 1])]);
        let a = common.mul(&base, &p2(&[(1, [1, 0]), (-1, [0, 0])]));
        let b = common.mul(&base, &p2(&[(1, [0, 1]), (2, [0, 0])]));
        assert_eq!(Poly::gcd(&base, &a, &b), common);
    }

    #[test]
    fn gcd_coprime_is_one() {
        let base = q();
        let a = p2(&[(1, [2, 0]), (1, [0, 1])]);
        let b = p2(&[(1, [1, 0]), (3, [0, 0])]);
        assert_eq!(Poly::gcd(&base, &a, &b), p2(&[(1, [0, 0])]));
    }

    #[test]
    fn gcd_with_content() {
        let base = q();
        // y*x^2 - y  and  y^2*x + y^2 share y*(x + 1)
        let a = p2(&[(1, [2, 1]), (-1, [0, 1])]);
        let b = p2(&[(1, [1, 2]), (1, [0, 2])]);
        assert_eq!(Poly::gcd(&base, &a, &b), p2(&[(1, [1, 1]), (1, [0, 1])]));
    }

    #[test]
    fn exact_division() {
        let base = q();
        let a = p2(&[(1, [2, 0]), (-1, [0, 2])]);
        let d = p2(&[(1, [1, 0]), (1, [0, 1])]);
        assert_eq!(a.div_exact(&base, &d), Some(p2(&[(1, [1, 0]), (-1, [0, 1])])));
        assert_eq!(d.div_exact(&base, &p2(&[(1, [1, 0])])), None);
    }

    #[test]
    fn eval_point() {
        let base = q();
        let a = p2(&[(1, [2, 0]), (1, [1, 1])]);
        let v = a.eval(&base, &[base.from_i64(2), base.from_i64(3)]);
        assert_eq!(v, base.from_i64(10));
    }
}
