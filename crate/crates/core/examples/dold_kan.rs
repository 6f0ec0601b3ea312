//! The simplicial object attached to a connective truncation, up to level 3.

use perfcx::complex::{cohomology_dims, Complex};
use perfcx::linalg::{Matrix, RingSpec};
use perfcx::simplicial::dk_build;

fn main() -> perfcx::Result<()> {
    let k = RingSpec::prime_field(3)?;
    // k^2 --[1 0]--> k in degrees -2, -1 plus k in degree 0.
    let c = Complex::two_term(-2, Matrix::from_i64(&k, &[&[1, 0]])).direct_sum(&Complex::single(&k, 0, 1))?;
    println!("H(C) = {:?}", cohomology_dims(&c)?);
    let dk = dk_build(&c)?;
    for n in 0..=3 {
        println!(
            "level {n}: rank {} from {} summands",
            dk.level_rank(n),
            dk.summands(n).len()
        );
    }
    match dk.check_identities() {
        Ok(()) => println!("simplicial identities hold"),
        Err(e) => println!("simplicial identity fails: {e}"),
    }
    for n in 0..3 {
        println!("pi_{n} = {}", dk.pi(n)?);
    }
    Ok(())
}
