//! Seeded sampling from a designated finite subset of a field.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Monomial, Poly};
use super::ring::{RingKind, RingSpec};
use super::scalar::Scalar;

/// Size of the subset [`random_scalar`] draws from for the given bound.
pub fn sample_set_size(ring: &RingSpec, bound: u64) -> u64 {
    match ring.kind() {
        RingKind::PrimeField(p) => bound.min(*p),
        _ => bound,
    }
}

/// The `i`-th element of the designated subset.
///
/// Integers `0..bound` for `Q` and `GF(p)`. Over `GF(p)(u, ...)` index `i`
/// becomes the polynomial in the first variable whose coefficients are the
/// base-`p` digits of `i`, so the subset has `bound` distinct elements even
/// when `bound > p`. Polynomial and dual number rings draw constants.
pub fn designated_element(ring: &RingSpec, i: u64) -> Scalar {
    match ring.kind() {
        RingKind::Rationals | RingKind::PrimeField(_) => ring.from_bigint(&BigInt::from(i)),
        RingKind::RationalFunctions { base, vars } => match base.kind() {
            RingKind::PrimeField(p) => {
                let mut terms = Vec::new();
                let (mut rest, mut e) = (i, 0u32);
                while rest > 0 {
                    let mut m = Monomial::one(vars.len());
                    m.0[0] = e;
                    terms.push((m, base.from_bigint(&BigInt::from(rest % p))));
                    rest /= p;
                    e += 1;
                }
                let num = Poly::from_terms(base, terms);
                ring.frac(num, Poly::constant(base, vars.len(), base.one()))
                    .expect("unit denominator")
            }
            _ => ring.from_bigint(&BigInt::from(i)),
        },
        RingKind::Polynomial { base, .. } | RingKind::DualNumbers { base } => {
            ring.constant(designated_element(base, i))
        }
    }
}

/// Uniform draw from the designated subset of size `sample_bound`,
/// reproducible for a fixed `seed`.
pub fn random_scalar(ring: &RingSpec, sample_bound: u64, seed: u64) -> Scalar {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(ring, sample_bound, &mut rng)
}

pub(crate) fn sample_with<R: Rng>(ring: &RingSpec, sample_bound: u64, rng: &mut R) -> Scalar {
    let n = sample_set_size(ring, sample_bound.max(1));
    designated_element(ring, rng.gen_range(0..n))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn singleton_subset() {
        let q = RingSpec::rationals();
        for seed in 0..20 {
            assert_eq!(random_scalar(&q, 1, seed), q.zero());
        }
    }

    #[test]
    fn prime_field_membership_and_reproducibility() {
        let f5 = RingSpec::prime_field(5).unwrap();
        for seed in 0..50 {
            let x = random_scalar(&f5, 5, seed);
            assert!(matches!(x, Scalar::Residue(r) if r < 5));
            assert_eq!(x, random_scalar(&f5, 5, seed));
        }
        assert_eq!(sample_set_size(&f5, 100), 5);
    }

    #[test]
    fn rational_draws_spread_out() {
        let q = RingSpec::rationals();
        let distinct: HashSet<_> = (0..1000u64).map(|s| random_scalar(&q, 100, s)).collect();
        assert!(distinct.len() >= 90, "{}", distinct.len());
    }

    #[test]
    fn function_field_subset_is_large() {
        let f2 = RingSpec::prime_field(2).unwrap();
        let r = RingSpec::rational_functions(f2, ["u"]).unwrap();
        let all: HashSet<_> = (0..16).map(|i| designated_element(&r, i)).collect();
        assert_eq!(all.len(), 16);
    }
}
