mod common;

use common::{fields, oracle_cohomology, rng};
use perfcx::complex::{homotopy_check, GradedMap};
use perfcx::linalg::RingSpec;
use perfcx::random::{self, Limits, WitnessKind};
use perfcx::simplicial::{dk_build, fill_inner_horn, quasi_automorphism_inverse, verify_g2_vertex, AutWitness};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dold_kan_homotopy_is_cohomology(seed: u64) {
        let mut r = rng(seed);
        for k in fields() {
            let c = random::complex(&k, Limits::default(), &mut r).unwrap();
            let dk = dk_build(&c).unwrap();
            prop_assert!(dk.check_identities().is_ok());
            let h = oracle_cohomology(&c);
            for n in 0..3 {
                prop_assert_eq!(dk.pi(n).unwrap(), h.get(&-(n as i64)).copied().unwrap_or(0));
            }
        }
    }

    #[test]
    fn witnesses_pass_and_every_mutation_fails(seed: u64) {
        let mut r = rng(seed);
        let e = random::busy_complex(&RingSpec::rationals(), &mut r).unwrap();
        for kind in WitnessKind::ALL {
            let w = random::witness(&e, kind, &mut r).unwrap();
            prop_assert_eq!(w.check().unwrap(), Ok(()));
            for i in 0..w.components().len() {
                let m = random::mutate(&w, i, &mut r).unwrap().expect("busy complexes have non-cocycles");
                prop_assert!(!m.verify().unwrap(), "{:?} component {}", kind, i);
            }
        }
    }

    #[test]
    fn horn_filler_and_quasi_inverse(seed: u64) {
        let mut r = rng(seed);
        let k = RingSpec::prime_field(11).unwrap();
        let e = random::complex(&k, Limits::default(), &mut r).unwrap();
        let a = random::quasi_automorphism(&e, &mut r).unwrap();
        let b = random::quasi_automorphism(&e, &mut r).unwrap();
        prop_assert!(verify_g2_vertex(&fill_inner_horn(&a, &b).unwrap()).unwrap());
        let inv = quasi_automorphism_inverse(&a).unwrap();
        let id = GradedMap::identity(&e);
        prop_assert!(homotopy_check(&inv.h, &a.compose(&inv.psi).unwrap(), &id).unwrap());
        prop_assert!(homotopy_check(&inv.h_prime, &inv.psi.compose(&a).unwrap(), &id).unwrap());
        let edge = AutWitness::G1Edge { phi: a.compose(&inv.psi).unwrap(), psi: id, h: inv.h.clone() };
        prop_assert!(edge.verify().unwrap());
    }
}
