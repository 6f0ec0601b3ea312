#![allow(dead_code)]

use std::path::{Path, PathBuf};

use perfcx::io::{Command, Flags};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// A documented CLI invocation and the file holding its expected output.
pub struct GoldenCase {
    pub name: &'static str,
    pub command: Command,
    pub bundle: &'static str,
    pub flags: Flags,
    pub exit_code: i32,
    /// The same invocation as command-line arguments after the bundle path.
    pub extra_args: &'static [&'static str],
}

impl GoldenCase {
    pub fn bundle_text(&self) -> String {
        std::fs::read_to_string(golden_dir().join(self.bundle)).expect("golden bundle")
    }

    pub fn expected_path(&self) -> PathBuf {
        golden_dir().join(format!("{}.out.json", self.name))
    }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let d = Flags::default();
    let case = |name, command, bundle, flags, exit_code, extra_args| GoldenCase {
        name,
        command,
        bundle,
        flags,
        exit_code,
        extra_args,
    };
    vec![
        case("ext_two_term", Command::Ext, "ext_two_term.json", d, 0, &[]),
        case(
            "ext_compare",
            Command::Ext,
            "ext_compare.json",
            Flags { compare: true, ..d },
            0,
            &["--compare"],
        ),
        case("is_qiso_identity", Command::IsQiso, "is_qiso_identity.json", d, 0, &[]),
        case("cohomology", Command::Cohomology, "cohomology.json", d, 0, &[]),
        case("tor_amplitude", Command::TorAmplitude, "tor_amplitude.json", d, 0, &[]),
        case("cone", Command::Cone, "cone.json", d, 0, &[]),
        case(
            "truncate_ge",
            Command::Truncate,
            "truncate.json",
            Flags { ge: Some(0), ..d },
            0,
            &["--ge", "0"],
        ),
        case(
            "truncate_le",
            Command::Truncate,
            "truncate.json",
            Flags { le: Some(-1), ..d },
            0,
            &["--le", "-1"],
        ),
        case("dk_complex", Command::DkVerify, "dk_complex.json", d, 0, &[]),
        case("dk_witness", Command::DkVerify, "dk_witness.json", d, 0, &[]),
        case("dk_witness_bad", Command::DkVerify, "dk_witness_bad.json", d, 1, &[]),
        case("obstruct", Command::Obstruct, "obstruct.json", d, 0, &[]),
        case("lift_none", Command::Lift, "obstruct.json", d, 2, &[]),
        case("lift", Command::Lift, "lift.json", d, 0, &[]),
        case(
            "descend_gl2_seed42",
            Command::Descend,
            "descend_gl2.json",
            Flags { seed: 42, ..d },
            0,
            &["--seed", "42"],
        ),
        case(
            "descend_gl2_certified",
            Command::Descend,
            "descend_gl2.json",
            Flags {
                seed: 42,
                certify_generic: true,
                ..d
            },
            0,
            &["--seed", "42", "--certify-generic"],
        ),
        case("descend_hopeless", Command::Descend, "descend_hopeless.json", d, 2, &[]),
        case(
            "descend_hopeless_certified",
            Command::Descend,
            "descend_hopeless.json",
            Flags {
                certify_generic: true,
                ..d
            },
            3,
            &["--certify-generic"],
        ),
    ]
}

// Oracles written with plain Gauss-Jordan elimination, independent of the
// fraction-free elimination the library uses.

use std::collections::BTreeMap;

use perfcx::complex::{Complex, GradedMap};
use perfcx::linalg::{Matrix, RingSpec, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fields() -> Vec<RingSpec> {
    vec![
        RingSpec::rationals(),
        RingSpec::prime_field(7).unwrap(),
        RingSpec::rational_functions(RingSpec::rationals(), ["u"]).unwrap(),
    ]
}

/// Reduced row echelon form as rows, with pivot columns.
pub fn gauss_jordan(m: &Matrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let ring = m.ring();
    let mut rows = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..rows.len()).find(|&i| !ring.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ring.inv(&rows[r][c]).unwrap();
        rows[r] = rows[r].iter().map(|x| ring.mul(x, &inv)).collect();
        for i in 0..rows.len() {
            if i != r && !ring.is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                rows[i] = rows[i]
                    .iter()
                    .zip(&rows[r])
                    .map(|(a, b)| ring.sub(a, &ring.mul(&f, b)))
                    .collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn oracle_rank(m: &Matrix) -> usize {
    gauss_jordan(m).1.len()
}

/// Kernel basis as columns of a matrix.
pub fn oracle_kernel(m: &Matrix) -> Matrix {
    let ring = m.ring();
    let (rows, pivots) = gauss_jordan(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let cols: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); m.cols()];
            v[f] = ring.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = ring.neg(&rows[i][f]);
            }
            v
        })
        .collect();
    Matrix::from_columns(ring, m.cols(), &cols)
}

pub fn oracle_cohomology(c: &Complex) -> BTreeMap<i64, usize> {
    c.degrees()
        .map(|n| (n, c.rank(n) - oracle_rank(&c.d(n)) - oracle_rank(&c.d(n - 1))))
        .collect()
}

/// Rank of the map induced by `f` on `H^n`.
pub fn induced_rank(f: &GradedMap, n: i64) -> usize {
    let (p, q) = (f.source(), f.target());
    let z = oracle_kernel(&p.d(n));
    let image = f.component(n).mul(&z).unwrap();
    let b = q.d(n - 1);
    oracle_rank(&b.hstack(&image).unwrap()) - oracle_rank(&b)
}

/// Quasi-isomorphism decided degree by degree on cohomology.
pub fn oracle_is_qiso(f: &GradedMap) -> bool {
    let hp = oracle_cohomology(f.source());
    let hq = oracle_cohomology(f.target());
    let lo = f.source().lo().min(f.target().lo());
    let hi = f.source().hi().max(f.target().hi());
    (lo..=hi).all(|n| {
        let a = hp.get(&n).copied().unwrap_or(0);
        let b = hq.get(&n).copied().unwrap_or(0);
        a == b && (a == 0 || induced_rank(f, n) == a)
    })
}

/// Drops zero entries so dimension maps compare by content.
pub fn support(d: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    d.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
}
