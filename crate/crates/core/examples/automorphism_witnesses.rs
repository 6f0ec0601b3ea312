//! Vertices, edges and 2-simplices of the automorphism group of a complex.

use perfcx::complex::{Complex, GradedMap};
use perfcx::linalg::{Matrix, RingSpec};
use perfcx::simplicial::{fill_inner_horn, quasi_automorphism_inverse, AutWitness};

fn main() -> perfcx::Result<()> {
    let k = RingSpec::rationals();
    // k --1--> k in degrees -1, 0 plus k in degree 0.
    let e = Complex::two_term(-1, Matrix::from_i64(&k, &[&[1]])).direct_sum(&Complex::single(&k, 0, 1))?;
    let id = GradedMap::identity(&e);

    // A homotopy h of degree -1 and the edge from 2·id to 2·id + d(h).
    let h = GradedMap::single(&e, &e, -1, 0, Matrix::from_i64(&k, &[&[1, 1]]))?;
    let phi = id.scale(&k.from_i64(2));
    let psi = phi.add(&h.differential())?;
    let edge = AutWitness::G1Edge {
        phi: phi.clone(),
        psi: psi.clone(),
        h: h.clone(),
    };
    println!("edge {}: {:?}", edge.kind(), edge.check()?);

    // Swapping the endpoints without negating h breaks d(H) = psi - phi.
    let bad = AutWitness::G1Edge {
        phi: psi.clone(),
        psi: phi.clone(),
        h,
    };
    match bad.check()? {
        Ok(()) => println!("reversed edge passes"),
        Err(f) => println!("reversed edge rejected: {f}"),
    }

    // Composition fills the inner horn with a 2-simplex.
    let triangle = fill_inner_horn(&phi, &psi)?;
    let filled = AutWitness::G2Vertex(triangle);
    println!("filled 2-simplex passes: {}", filled.verify()?);

    // A homotopy inverse of psi with both homotopies.
    let inv = quasi_automorphism_inverse(&psi)?;
    let back = AutWitness::G1Edge {
        phi: psi.compose(&inv.psi)?,
        psi: id,
        h: inv.h,
    };
    println!("psi ∘ psi^-1 is connected to id: {}", back.verify()?);
    Ok(())
}
