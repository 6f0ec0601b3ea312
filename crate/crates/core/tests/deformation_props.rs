mod common;

use common::rng;
use perfcx::complex::GradedMap;
use perfcx::deformation::{lift, obstruction, obstruction_via_triangles};
use perfcx::linalg::RingSpec;
use perfcx::random;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn obstruction_paths_agree_and_decide_lifting(seed: u64) {
        let mut r = rng(seed);
        for k in [RingSpec::rationals(), RingSpec::prime_field(3).unwrap()] {
            let (e, f, phi0) = random::lifting_problem(&k, &mut r).unwrap();
            let o = obstruction(&e, &f, &phi0).unwrap();
            prop_assert!(o.equals(&obstruction_via_triangles(&e, &f, &phi0).unwrap()).unwrap());
            match lift(&e, &f, &phi0).unwrap() {
                Some(phi) => {
                    prop_assert!(o.is_zero().unwrap());
                    prop_assert!(phi.is_chain_map());
                    prop_assert_eq!(phi.source(), e.total());
                    prop_assert_eq!(phi.target(), f.total());
                    prop_assert_eq!(phi.reduce(), phi0.clone());
                }
                None => prop_assert!(!o.is_zero().unwrap()),
            }
        }
    }

    #[test]
    fn obstruction_is_linear_in_the_base_map(seed: u64) {
        let mut r = rng(seed);
        let k = RingSpec::rationals();
        let (e, f, phi0) = random::lifting_problem(&k, &mut r).unwrap();
        let psi0 = random::chain_map(e.reduction(), f.reduction(), &mut r).unwrap();
        let sum = obstruction(&e, &f, &phi0.add(&psi0).unwrap()).unwrap();
        let parts = obstruction(&e, &f, &phi0).unwrap().add(&obstruction(&e, &f, &psi0).unwrap()).unwrap();
        prop_assert!(sum.equals(&parts).unwrap());
        let zero = GradedMap::zero(e.reduction(), f.reduction(), 0);
        prop_assert!(obstruction(&e, &f, &zero).unwrap().is_zero().unwrap());
    }
}
