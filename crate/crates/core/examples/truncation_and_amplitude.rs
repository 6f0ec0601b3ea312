//! Canonical truncations and Tor amplitude over a field and over dual numbers.

use perfcx::complex::{cohomology_dims, Complex};
use perfcx::derived::{tor_amplitude, truncate_ge, truncate_le};
use perfcx::linalg::{Matrix, RingSpec};

fn main() -> perfcx::Result<()> {
    let k = RingSpec::rationals();
    // k --0--> k^2 --[1 1]--> k in degrees -1, 0, 1: cohomology in -1 and 0.
    let c = Complex::new(
        &k,
        -1,
        vec![1, 2, 1],
        vec![Matrix::from_i64(&k, &[&[0], &[0]]), Matrix::from_i64(&k, &[&[1, 1]])],
    )?;
    println!("H(C) = {:?}", cohomology_dims(&c)?);
    let le = truncate_le(&c, -1)?;
    let ge = truncate_ge(&c, 0)?;
    println!("tau<=-1 C: ranks {:?}, H {:?}", le.ranks(), cohomology_dims(&le)?);
    println!("tau>=0 C: ranks {:?}, H {:?}", ge.ranks(), cohomology_dims(&ge)?);
    println!("Tor amplitude of C: {:?}", tor_amplitude(&c)?);

    // Over k[eps]/(eps^2), multiplication by eps has Tor amplitude [-1, 0]:
    // after tensoring with k both terms survive.
    let dual = RingSpec::dual_numbers(k.clone())?;
    let eps = dual.eps().unwrap();
    let m = Complex::two_term(-1, Matrix::from_rows(&dual, 1, 1, vec![vec![eps]])?);
    println!("k[eps] --eps--> k[eps]: Tor amplitude {:?}", tor_amplitude(&m)?);
    let unit = Complex::two_term(-1, Matrix::from_rows(&dual, 1, 1, vec![vec![dual.one()]])?);
    println!("k[eps] --1--> k[eps]: Tor amplitude {:?}", tor_amplitude(&unit)?);
    Ok(())
}
