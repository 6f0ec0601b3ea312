//! A quasi-isomorphism over k[u] specialized to one over k.

use perfcx::complex::{Complex, GradedMap};
use perfcx::hilbert90::{descend, verify_form_triviality, SearchOptions};
use perfcx::linalg::{text, Matrix, RingSpec};

fn main() -> perfcx::Result<()> {
    let k = RingSpec::rationals();
    let r = RingSpec::polynomial(k.clone(), ["u"])?;
    let p = Complex::single(&k, 0, 2);
    let pr = p.base_change(&r)?;
    let u = r.var("u").unwrap();
    // [[1, u], [0, 1]] is invertible over k[u]; its coefficients are id and a nilpotent.
    let m = Matrix::from_rows(&r, 2, 2, vec![vec![r.one(), u], vec![r.zero(), r.one()]])?;
    let f = GradedMap::single(&pr, &pr, 0, 0, m)?;

    let opts = SearchOptions {
        seed: 42,
        certify_generic: true,
        ..SearchOptions::default()
    };
    let report = descend(&p, &p, &f, &opts)?;
    println!(
        "{} coefficient maps, generic point certified: {:?}",
        report.family.len(),
        report.generic_certified
    );
    for (name, value) in &report.point {
        println!("  {name} = {}", text::render(&k, value));
    }
    println!("found after {} trial(s), ranks {:?}", report.trials, report.certificate);
    println!(
        "specialization is a qiso over {}: {}",
        k,
        verify_form_triviality(&p, &p, &report)
    );

    // A family of nilpotent maps never specializes to a qiso.
    let n = Matrix::from_rows(
        &r,
        2,
        2,
        vec![vec![r.zero(), r.var("u").unwrap()], vec![r.zero(), r.zero()]],
    )?;
    let g = GradedMap::single(&pr, &pr, 0, 0, n)?;
    match descend(&p, &p, &g, &SearchOptions::default()) {
        Ok(_) => println!("nilpotent family descended"),
        Err(e) => println!("nilpotent family: {e}"),
    }
    Ok(())
}
