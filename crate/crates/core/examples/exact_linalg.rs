//! Rank, kernel and linear solves over Q, a prime field and Q(u).

use perfcx::linalg::{kernel_basis, rank, solve, text, Matrix, RingSpec};

fn show(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| text::render(m.ring(), x))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn main() -> perfcx::Result<()> {
    let q = RingSpec::rationals();
    let m = Matrix::from_i64(&q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    println!("over {q}: M = {}", show(&m));
    println!("  rank {}", rank(&m)?);
    for v in kernel_basis(&m)? {
        let v: Vec<String> = v.iter().map(|x| text::render(&q, x)).collect();
        println!("  kernel vector ({})", v.join(", "));
    }

    // The same integer matrix loses rank modulo 2.
    let f2 = RingSpec::prime_field(2)?;
    let m2 = Matrix::from_i64(&f2, &[&[1, 1], &[1, 3]]);
    println!("over {f2}: {} has rank {}", show(&m2), rank(&m2)?);

    // Exact solve over rational functions.
    let ku = RingSpec::rational_functions(q.clone(), ["u"])?;
    let u = ku.var("u").unwrap();
    let a = Matrix::from_rows(&ku, 2, 2, vec![vec![u.clone(), ku.one()], vec![ku.one(), u.clone()]])?;
    let b = [ku.one(), ku.zero()];
    let x = solve(&a, &b)?.expect("det is u^2 - 1, nonzero in Q(u)");
    println!("over {ku}: A = {}", show(&a));
    println!(
        "  A x = (1, 0) gives x = ({}, {})",
        text::render(&ku, &x[0]),
        text::render(&ku, &x[1])
    );
    let parsed = text::parse(&ku, "(u^2 - 1)/(u + 1)")?;
    println!("  parsing (u^2 - 1)/(u + 1) gives {}", text::render(&ku, &parsed));
    Ok(())
}
