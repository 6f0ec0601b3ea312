//! Text form of scalars.
//!
//! Rationals render as `a` or `a/b`, prime-field residues as the integer in
//! `[0, p)`, polynomials as `c*v1^e1*...*vk^ek` terms joined by ` + ` / ` - `
//! in decreasing graded-lex order, rational functions as `(num)/(den)` when the
//! denominator is not 1, and dual numbers as `a + b*eps`.
//!
//! Parsing accepts any arithmetic expression over the ring's generators
//! (`+ - * / ^`, parentheses, integer literals, variable names, `eps`), plus an
//! optional `mod p` suffix for prime fields, and evaluates it exactly.

use num_bigint::BigInt;
use num_traits::Signed;

use super::poly::{Monomial, Poly};
use super::ring::{RingKind, RingSpec};
use super::scalar::Scalar;
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 64;
const MAX_LEN: usize = 4096;

pub fn render(ring: &RingSpec, x: &Scalar) -> String {
    match (ring.kind(), x) {
        (RingKind::Rationals, Scalar::Rational(r)) => r.to_string(),
        (RingKind::PrimeField(_), Scalar::Residue(r)) => r.to_string(),
        (RingKind::Polynomial { base, vars }, Scalar::Poly(p)) => render_poly(base, vars, p),
        (RingKind::RationalFunctions { base, vars }, Scalar::Frac(f)) => {
            let num = render_poly(base, vars, &f.num);
            if f.den.is_constant() {
                num
            } else {
                format!("({num})/({})", render_poly(base, vars, &f.den))
            }
        }
        (RingKind::DualNumbers { base }, Scalar::Dual(d)) => {
            let (a, b) = (&d.0, &d.1);
            if base.is_zero(b) {
                return render(base, a);
            }
            let (neg, coeff) = split_sign(base, b);
            let coeff = if base.is_one(&coeff) {
                "eps".to_string()
            } else {
                format!("{}*eps", wrap(base, render(base, &coeff)))
            };
            if base.is_zero(a) {
                return if neg { format!("-{coeff}") } else { coeff };
            }
            format!("{} {} {coeff}", render(base, a), if neg { "-" } else { "+" })
        }
        _ => panic!("scalar {x:?} does not belong to {ring}"),
    }
}

/// Parenthesizes composite coefficients (rational literals like `3/2` stay bare).
fn wrap(base: &RingSpec, s: String) -> String {
    let simple = matches!(base.kind(), RingKind::Rationals | RingKind::PrimeField(_));
    if !simple && (s.contains(' ') || s.contains('/') || s.starts_with('-')) {
        format!("({s})")
    } else {
        s
    }
}

/// For rational coefficients, pulls the sign out so sums read `a - b`.
fn split_sign(base: &RingSpec, c: &Scalar) -> (bool, Scalar) {
    match c {
        Scalar::Rational(r) if r.is_negative() => (true, base.neg(c)),
        _ => (false, c.clone()),
    }
}

fn render_monomial(vars: &[String], m: &Monomial) -> String {
    m.0.iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn render_poly(base: &RingSpec, vars: &[String], p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().rev().enumerate() {
        let (neg, c) = split_sign(base, c);
        let body = if m.is_one() {
            render(base, &c)
        } else if base.is_one(&c) {
            render_monomial(vars, m)
        } else {
            format!("{}*{}", wrap(base, render(base, &c)), render_monomial(vars, m))
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Int(lit.parse().map_err(|_| "bad integer".to_string())?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a RingSpec,
    toks: Vec<Tok>,
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Scalar, String> {
        self.depth += 1;
        if self.depth > 64 {
            return Err("expression nested too deeply".into());
        }
        let ring = self.ring;
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = ring.neg(&acc);
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = ring.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = ring.sub(&acc, &t);
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> std::result::Result<Scalar, String> {
        let ring = self.ring;
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = ring.mul(&acc, &f);
            } else if self.eat('/') {
                let f = self.factor()?;
                acc = ring
                    .div(&acc, &f)
                    .map_err(|_| "division by a zero or non-invertible element".to_string())?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> std::result::Result<Scalar, String> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = u32::try_from(&e)
                        .ok()
                        .filter(|&e| e <= MAX_EXPONENT)
                        .ok_or_else(|| format!("exponent larger than {MAX_EXPONENT}"))?;
                    Ok(self.ring.pow(&base, e))
                }
                _ => Err("exponent must be a nonnegative integer".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> std::result::Result<Scalar, String> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.ring.from_bigint(&n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "eps" {
                    return self
                        .ring
                        .eps()
                        .ok_or_else(|| format!("`eps` is not an element of {}", self.ring));
                }
                self.ring
                    .var(&name)
                    .ok_or_else(|| format!("unknown variable `{name}` for {}", self.ring))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err("missing `)`".into());
                }
                Ok(v)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

/// Parses a scalar of `ring` from text.
pub fn parse(ring: &RingSpec, text: &str) -> Result<Scalar> {
    let err = |reason: String| Error::ScalarSyntax {
        text: text.chars().take(80).collect(),
        reason,
    };
    if text.len() > MAX_LEN {
        return Err(err("scalar text too long".into()));
    }
    let mut toks = tokenize(text).map_err(err)?;
    // "a mod p"
    if let [.., Tok::Ident(m), Tok::Int(p)] = toks.as_slice() {
        if m == "mod" {
            match ring.kind() {
                RingKind::PrimeField(q) if BigInt::from(*q) == *p => {
                    toks.truncate(toks.len() - 2);
                }
                _ => return Err(err(format!("`mod {p}` does not match {ring}"))),
            }
        }
    }
    if toks.is_empty() {
        return Err(err("empty scalar".into()));
    }
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        depth: 0,
    };
    let v = parser.expr().map_err(err)?;
    if parser.pos != parser.toks.len() {
        return Err(err("trailing input".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_examples() {
        let q = RingSpec::rationals();
        assert_eq!(render(&q, &parse(&q, "6/4").unwrap()), "3/2");
        let f7 = RingSpec::prime_field(7).unwrap();
        assert_eq!(render(&f7, &parse(&f7, "-1").unwrap()), "6");
        assert_eq!(parse(&f7, "10 mod 7").unwrap(), f7.from_i64(3));
        assert!(parse(&f7, "10 mod 5").is_err());
        let r = RingSpec::polynomial(q.clone(), ["x", "y"]).unwrap();
        let p = parse(&r, "y - 3*x^2*y + 1/2 + x").unwrap();
        assert_eq!(render(&r, &p), "-3*x^2*y + x + y + 1/2");
        let d = RingSpec::dual_numbers(q.clone()).unwrap();
        assert_eq!(render(&d, &parse(&d, "2 - 3*eps").unwrap()), "2 - 3*eps");
        assert_eq!(render(&d, &parse(&d, "eps").unwrap()), "eps");
        let u = RingSpec::rational_functions(q, ["u"]).unwrap();
        assert_eq!(render(&u, &parse(&u, "(u^2-1)/(2*u-2)").unwrap()), "1/2*u + 1/2");
        assert_eq!(render(&u, &parse(&u, "1/(2*u)").unwrap()), "(1/2)/(u)");
    }

    #[test]
    fn rejects_garbage() {
        let q = RingSpec::rationals();
        for bad in ["", "1/0", "x", "1 +", "(1", "2^-1", "2^65", "1 2", "eps", "#"] {
            assert!(parse(&q, bad).is_err(), "{bad}");
        }
        let r = RingSpec::polynomial(q, ["t"]).unwrap();
        assert!(parse(&r, "1/t").is_err());
        assert!(parse(&r, "1/2*t").is_ok());
    }

    #[test]
    fn polynomial_over_rational_functions() {
        let q = RingSpec::rationals();
        let ku = RingSpec::rational_functions(q, ["u"]).unwrap();
        let r = RingSpec::polynomial(ku, ["t"]).unwrap();
        let x = parse(&r, "t^2/(u+1) - u*t + 1/u").unwrap();
        let s = render(&r, &x);
        assert_eq!(parse(&r, &s).unwrap(), x);
    }
}
