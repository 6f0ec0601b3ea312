//! Cohomology, mapping cones and the quasi-isomorphism test.

use perfcx::complex::{cohomology_dims, cone, is_qiso, Complex, GradedMap};
use perfcx::linalg::{Matrix, RingSpec};

fn main() -> perfcx::Result<()> {
    let k = RingSpec::rationals();

    // P = k --1--> k in degrees -1, 0 is exact; Q = k in degree 0 is not.
    let p = Complex::two_term(-1, Matrix::from_i64(&k, &[&[1]]));
    let q = Complex::single(&k, 0, 1);
    println!("H(P) = {:?}", cohomology_dims(&p)?);
    println!("H(Q) = {:?}", cohomology_dims(&q)?);

    // Q' = k^2 --[1 0]--> k in degrees -1, 0 computes the same cohomology as k in degree -1.
    let q2 = Complex::two_term(-1, Matrix::from_i64(&k, &[&[1, 0]]));
    let shifted = Complex::single(&k, -1, 1);
    println!("H(Q') = {:?}", cohomology_dims(&q2)?);

    // The inclusion k -> k^2 onto the second coordinate is a quasi-isomorphism.
    let incl = GradedMap::single(&shifted, &q2, 0, -1, Matrix::from_i64(&k, &[&[0], &[1]]))?;
    let c = cone(&incl)?;
    println!(
        "cone ranks {:?}, cohomology {:?}",
        c.complex.ranks(),
        cohomology_dims(&c.complex)?
    );
    println!("inclusion onto the kernel is a qiso: {}", is_qiso(&incl)?);

    // Onto the first coordinate it does not commute with the differential.
    let wrong = GradedMap::single(&shifted, &q2, 0, -1, Matrix::from_i64(&k, &[&[1], &[0]]))?;
    println!(
        "inclusion onto the first coordinate is a chain map: {}",
        wrong.is_chain_map()
    );

    // The zero map Q -> Q is a chain map but not a qiso.
    let zero = GradedMap::zero(&q, &q, 0);
    println!("zero map on k[0] is a qiso: {}", is_qiso(&zero)?);
    Ok(())
}
