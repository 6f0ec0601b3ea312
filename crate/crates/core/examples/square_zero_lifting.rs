//! Lifting a chain map along k[eps]/(eps^2) -> k, and its obstruction.

use perfcx::complex::{Complex, GradedMap};
use perfcx::deformation::{lift, obstruction, obstruction_via_triangles, DeformedComplex};
use perfcx::linalg::{Matrix, RingSpec};

fn main() -> perfcx::Result<()> {
    let k = RingSpec::rationals();
    // E0 = k in degree 0 and degree 1 with zero differential, so Ext^1(E0, E0) = k.
    let e0 = Complex::two_term(0, Matrix::from_i64(&k, &[&[0]]));
    let id = GradedMap::identity(&e0);

    // F deforms the differential to eps; E stays undeformed.
    let d1 = GradedMap::single(&e0, &e0, 1, 0, Matrix::from_i64(&k, &[&[1]]))?;
    let e = DeformedComplex::constant(&e0)?;
    let f = DeformedComplex::from_first_order(&e0, &d1)?;

    let o = obstruction(&e, &f, &id)?;
    let via = obstruction_via_triangles(&e, &f, &id)?;
    println!("obstruction to lifting id: zero = {}", o.is_zero()?);
    println!("triangle computation agrees: {}", o.equals(&via)?);
    println!("lift exists: {}", lift(&e, &f, &id)?.is_some());

    // The zero map always lifts, and so does id between equal deformations.
    let zero = GradedMap::zero(&e0, &e0, 0);
    println!("zero map lifts: {}", lift(&e, &f, &zero)?.is_some());
    let phi = lift(&f, &f, &id)?.expect("identity of a deformation lifts");
    println!(
        "id: F -> F lifts to a chain map over {}: {}",
        phi.ring(),
        phi.is_chain_map()
    );
    Ok(())
}
