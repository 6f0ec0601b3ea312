//! Ext groups through the Hom complex and the class of an extension.

use perfcx::complex::{Complex, GradedMap};
use perfcx::derived::{classify_extension, ext_dims, ExtClass, Extension};
use perfcx::linalg::{Matrix, RingSpec};

fn main() -> perfcx::Result<()> {
    let k = RingSpec::prime_field(5)?;

    // P has cohomology k in degrees 0 and 1.
    let p = Complex::single(&k, 0, 1).direct_sum(&Complex::single(&k, 1, 1))?;
    println!("Ext(P, P) = {:?}", ext_dims(&p, &p)?);
    println!("Ext(P, P[1]) = {:?}", ext_dims(&p, &p.shift(1))?);

    // A degree-1 map E0 = k[0] -> N = k[-1] is a cocycle; it twists N ⊕ E0
    // into k --1--> k, which does not split.
    let e0 = Complex::single(&k, 0, 1);
    let n = Complex::single(&k, 1, 1);
    let delta = GradedMap::single(&e0, &n, 1, 0, Matrix::from_i64(&k, &[&[1]]))?;
    let t = Extension::twisted(&delta)?;
    println!("total complex ranks {:?}", t.total().ranks());
    let class = classify_extension(&t)?;
    println!("extension class is zero: {}", class.is_zero()?);
    println!(
        "class equals [delta]: {}",
        class.equals(&ExtClass::new(delta.clone())?)?
    );

    let split = classify_extension(&Extension::split(&n, &e0)?)?;
    println!("split extension class is zero: {}", split.is_zero()?);

    // Scaling the cocycle by 2 changes the class but not whether it vanishes.
    let doubled = class.scale(&k.from_i64(2));
    println!("2·class equals class: {}", doubled.equals(&class)?);
    println!("5·class is zero over GF(5): {}", class.scale(&k.from_i64(5)).is_zero()?);
    Ok(())
}
