//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Counts, seeds and field choices are pinned below.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Process;
use std::time::Instant;

use common::{fields, gauss_jordan, golden_cases, golden_dir, oracle_cohomology, oracle_is_qiso, rng, support};
use perfcx::complex::{cone, is_qiso, Complex, GradedMap};
use perfcx::deformation::{lift, obstruction, obstruction_via_triangles};
use perfcx::derived::ext_dims;
use perfcx::error::Error;
use perfcx::hilbert90::{descend, verify_form_triviality, SearchOptions};
use perfcx::io::run;
use perfcx::linalg::{Matrix, RingSpec, Scalar};
use perfcx::random::{self, Limits, WitnessKind};
use perfcx::simplicial::{dk_pi, AutWitness, G2Triangle};
use rand::seq::SliceRandom;

const CONE_MAPS_PER_FIELD: usize = 200;
const DK_COMPLEXES: usize = 100;
const EXT_PAIRS: usize = 100;
const SQUARE_ZERO_INSTANCES: usize = 200;
const DESCENT_INSTANCES: u64 = 100;
const DESCENT_SAMPLE_BOUND: u64 = 100;
const DESCENT_MAX_TRIALS: usize = 5;
const HOPELESS_INSTANCES: u64 = 20;
const HAND_WITNESSES: usize = 50;
const FUZZED_WITNESSES: usize = 200;
const GOLDEN_SHUFFLES: u64 = 3;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small() -> Limits {
    Limits {
        max_rank: 3,
        max_window: 3,
    }
}

fn cone_matches_oracle() -> Check {
    let mut r = rng(1);
    let mut qisos = 0;
    for k in fields() {
        for i in 0..CONE_MAPS_PER_FIELD {
            let p = random::complex(&k, Limits::default(), &mut r).unwrap();
            let f = if i % 2 == 0 {
                random::qiso(&p, &mut r).unwrap()
            } else {
                let q = random::complex(&k, Limits::default(), &mut r).unwrap();
                random::chain_map(&p, &q, &mut r).unwrap()
            };
            let via_cone = is_qiso(&f).unwrap();
            let exact = cone(&f).unwrap().complex;
            let cone_exact = oracle_cohomology(&exact).values().all(|&h| h == 0);
            ensure(via_cone == oracle_is_qiso(&f) && via_cone == cone_exact, || {
                format!("{k}, map {i}: cone says {via_cone}")
            })?;
            qisos += via_cone as usize;
        }
    }
    let total = 3 * CONE_MAPS_PER_FIELD;
    Ok(format!("{total}/{total} agree ({qisos} quasi-isomorphisms)"))
}

fn dold_kan() -> Check {
    let mut r = rng(2);
    let ks = fields();
    for i in 0..DK_COMPLEXES {
        let c = random::complex(&ks[i % ks.len()], Limits::default(), &mut r).unwrap();
        let h = oracle_cohomology(&c);
        for n in 0..3 {
            let expect = h.get(&-(n as i64)).copied().unwrap_or(0);
            let got = dk_pi(&c, n).unwrap();
            ensure(got == expect, || {
                format!("complex {i}: pi_{n} = {got}, H^-{n} = {expect}")
            })?;
        }
    }
    Ok(format!("{DK_COMPLEXES} complexes, pi_0..pi_2 exact"))
}

fn ext_pairs(
    seed: u64,
    mut each: impl FnMut(&Complex, &Complex, &mut rand_chacha::ChaCha8Rng) -> Result<(), String>,
) -> Check {
    let mut r = rng(seed);
    let k = RingSpec::rationals();
    for i in 0..EXT_PAIRS {
        let p = random::complex(&k, small(), &mut r).unwrap();
        let q = random::complex(&k, small(), &mut r).unwrap();
        each(&p, &q, &mut r).map_err(|e| format!("pair {i}: {e}"))?;
    }
    Ok(format!("{EXT_PAIRS} pairs, every degree exact"))
}

fn ext_shift() -> Check {
    ext_pairs(3, |p, q, _| {
        let e = ext_dims(p, q).unwrap();
        let shifted = ext_dims(p, &q.shift(1)).unwrap();
        let lo = e.keys().chain(shifted.keys()).min().copied().unwrap_or(0) - 1;
        let hi = e.keys().chain(shifted.keys()).max().copied().unwrap_or(0) + 1;
        for n in lo..=hi {
            let (a, b) = (
                shifted.get(&n).copied().unwrap_or(0),
                e.get(&(n + 1)).copied().unwrap_or(0),
            );
            ensure(a == b, || format!("Ext^{n}(P, Q[1]) = {a}, Ext^{}(P, Q) = {b}", n + 1))?;
        }
        Ok(())
    })
}

fn ext_postcomposition() -> Check {
    ext_pairs(4, |p, m, r| {
        let f = random::qiso(m, r).unwrap();
        ensure(oracle_is_qiso(&f), || "generator produced a non-qiso".into())?;
        let (a, b) = (
            support(&ext_dims(p, m).unwrap()),
            support(&ext_dims(p, f.target()).unwrap()),
        );
        ensure(a == b, || format!("{a:?} vs {b:?}"))
    })
}

fn ext_base_change() -> Check {
    let ku = RingSpec::rational_functions(RingSpec::rationals(), ["u"]).unwrap();
    ext_pairs(5, |p, q, _| {
        let a = support(&ext_dims(p, q).unwrap());
        let b = support(&ext_dims(&p.base_change(&ku).unwrap(), &q.base_change(&ku).unwrap()).unwrap());
        ensure(a == b, || format!("{a:?} vs {b:?}"))
    })
}

/// Entries of every component, concatenated in degree order.
fn flatten(f: &GradedMap) -> Vec<Scalar> {
    f.components().values().flat_map(|m| m.entries().to_vec()).collect()
}

/// Test-side check that `d(h) = target` has no degree-0 solution `h`.
fn unsolvable(target: &GradedMap) -> bool {
    let (p, q) = (target.source(), target.target());
    let k = p.ring();
    let mut columns = Vec::new();
    for n in p.degrees() {
        for i in 0..q.rank(n) {
            for j in 0..p.rank(n) {
                let mut unit = Matrix::zeros(k, q.rank(n), p.rank(n));
                unit.set(i, j, k.one());
                let h = GradedMap::single(p, q, 0, n, unit).unwrap();
                columns.push(flatten(&h.differential()));
            }
        }
    }
    let b = flatten(target);
    let a = Matrix::from_columns(k, b.len(), &columns);
    let augmented = a.hstack(&Matrix::column_vector(k, b)).unwrap();
    let (_, pivots) = gauss_jordan(&augmented);
    pivots.last() == Some(&columns.len())
}

fn square_zero() -> Check {
    let mut r = rng(6);
    let (mut liftable, mut obstructed) = (0, 0);
    for i in 0..SQUARE_ZERO_INSTANCES {
        let k = if i % 2 == 0 {
            RingSpec::rationals()
        } else {
            RingSpec::prime_field(3).unwrap()
        };
        let (e, f, phi0) = random::lifting_problem(&k, &mut r).unwrap();
        let o = obstruction(&e, &f, &phi0).unwrap();
        ensure(
            o.equals(&obstruction_via_triangles(&e, &f, &phi0).unwrap()).unwrap(),
            || format!("instance {i}: the two obstructions differ"),
        )?;
        match lift(&e, &f, &phi0).unwrap() {
            Some(phi) => {
                ensure(o.is_zero().unwrap(), || {
                    format!("instance {i}: lifted past a nonzero class")
                })?;
                ensure(!unsolvable(o.cocycle()), || {
                    format!("instance {i}: oracle finds no correction")
                })?;
                ensure(phi.is_chain_map() && phi.reduce() == phi0, || {
                    format!("instance {i}: bad lift")
                })?;
                liftable += 1;
            }
            None => {
                ensure(!o.is_zero().unwrap(), || {
                    format!("instance {i}: zero class but no lift")
                })?;
                ensure(unsolvable(o.cocycle()), || {
                    format!("instance {i}: oracle finds a correction")
                })?;
                obstructed += 1;
            }
        }
    }
    ensure(liftable > 0 && obstructed > 0, || {
        format!("one-sided sample: {liftable} liftable, {obstructed} obstructed")
    })?;
    Ok(format!(
        "{SQUARE_ZERO_INSTANCES} instances, {liftable} lifted, {obstructed} certified unliftable"
    ))
}

fn descent_options(seed: u64, certify_generic: bool) -> SearchOptions {
    SearchOptions {
        seed,
        sample_bound: DESCENT_SAMPLE_BOUND,
        max_trials: DESCENT_MAX_TRIALS,
        certify_generic,
    }
}

fn descent_instance(seed: u64) -> (Complex, Complex, GradedMap) {
    random::disguised_qiso(&RingSpec::rationals(), &mut rng(1000 + seed)).unwrap()
}

fn hilbert90_round_trip() -> Check {
    let mut worst = 0;
    for seed in 0..DESCENT_INSTANCES {
        let (p, q, f) = descent_instance(seed);
        let report = descend(&p, &q, &f, &descent_options(seed, false)).map_err(|e| format!("instance {seed}: {e}"))?;
        ensure(oracle_is_qiso(&report.specialized_map), || {
            format!("instance {seed}: not a qiso")
        })?;
        ensure(verify_form_triviality(&p, &q, &report), || {
            format!("instance {seed}: unverified")
        })?;
        worst = worst.max(report.trials);
    }
    let k = RingSpec::rationals();
    for seed in 0..HOPELESS_INSTANCES {
        let (p, f) = random::hopeless_family(&k, &mut rng(2000 + seed)).unwrap();
        let got = descend(&p, &p, &f, &descent_options(seed, false));
        ensure(matches!(got, Err(Error::NoPointFound { .. })), || {
            format!("hopeless {seed}: {got:?}")
        })?;
    }
    Ok(format!(
        "{DESCENT_INSTANCES} descended (worst {worst} trials), {HOPELESS_INSTANCES} hopeless give NO_POINT_FOUND"
    ))
}

fn generic_certification() -> Check {
    for seed in 0..DESCENT_INSTANCES {
        let (p, q, f) = descent_instance(seed);
        let opts = descent_options(seed, true);
        let first = descend(&p, &q, &f, &opts).map_err(|e| format!("instance {seed}: {e}"))?;
        ensure(first.generic_certified == Some(true), || {
            format!("instance {seed}: not certified")
        })?;
        ensure(descend(&p, &q, &f, &opts).unwrap() == first, || {
            format!("instance {seed}: not deterministic")
        })?;
    }
    Ok(format!(
        "{DESCENT_INSTANCES}/{DESCENT_INSTANCES} certified, repeat runs identical"
    ))
}

/// A degree-`s` map with every entry equal to `c`.
fn constant_map(e: &Complex, s: i64, c: i64) -> GradedMap {
    let k = e.ring();
    let comps = e
        .degrees()
        .map(|n| (n, Matrix::from_fn(k, e.rank(n + s), e.rank(n), |_, _| k.from_i64(c))))
        .collect();
    GradedMap::new(e, e, s, comps).unwrap()
}

/// Small complexes assembled by hand, each padded with contractible pieces
/// so that non-cocycles exist in degrees 0, -1 and -2.
fn hand_complexes() -> Vec<Complex> {
    let mut out = Vec::new();
    for k in [RingSpec::rationals(), RingSpec::prime_field(5).unwrap()] {
        let pad = random::contractible(&k, -2)
            .direct_sum(&random::contractible(&k, -1))
            .unwrap();
        let bases = [
            Complex::zero(&k),
            Complex::single(&k, 0, 1),
            Complex::single(&k, -1, 2),
            Complex::two_term(-1, Matrix::from_i64(&k, &[&[1, 0]])),
            Complex::two_term(-2, Matrix::from_i64(&k, &[&[1, 1], &[0, 0]])),
        ];
        for b in bases {
            out.push(pad.direct_sum(&b).unwrap());
        }
    }
    out
}

fn triangle(e: &Complex, a: i64, b: i64) -> G2Triangle {
    let k = e.ring();
    let id = GradedMap::identity(e);
    let phi01 = id.scale(&k.from_i64(a));
    let phi12 = id
        .scale(&k.from_i64(b))
        .add(&constant_map(e, -1, 1).differential())
        .unwrap();
    let alpha = constant_map(e, -1, 2);
    let phi02 = phi12.compose(&phi01).unwrap().add(&alpha.differential()).unwrap();
    G2Triangle {
        phi01,
        phi12,
        phi02,
        alpha,
    }
}

fn hand_witnesses(e: &Complex) -> Vec<AutWitness> {
    let k = e.ring();
    let id = GradedMap::identity(e);
    let h = constant_map(e, -1, 1);
    let phi = triangle(e, 2, 3);
    let zero = GradedMap::zero(e, e, -1);
    let trivial_edge = AutWitness::G2Edge {
        phi: phi.clone(),
        psi: phi.clone(),
        h01: zero.clone(),
        h02: zero.clone(),
        h12: zero,
        theta: GradedMap::zero(e, e, -2),
    };
    let (h01, h02, h12) = (constant_map(e, -1, 1), constant_map(e, -1, -1), constant_map(e, -1, 2));
    let theta = constant_map(e, -2, 1);
    let psi01 = phi.phi01.add(&h01.differential()).unwrap();
    let psi12 = phi.phi12.add(&h12.differential()).unwrap();
    let psi02 = phi.phi02.add(&h02.differential()).unwrap();
    let beta = phi
        .alpha
        .add(&theta.differential())
        .unwrap()
        .add(&h02)
        .unwrap()
        .sub(&h12.compose(&phi.phi01).unwrap())
        .unwrap()
        .sub(&psi12.compose(&h01).unwrap())
        .unwrap();
    let edge = AutWitness::G2Edge {
        psi: G2Triangle {
            phi01: psi01,
            phi12: psi12,
            phi02: psi02,
            alpha: beta,
        },
        phi: phi.clone(),
        h01,
        h02,
        h12,
        theta,
    };
    vec![
        AutWitness::G1Vertex {
            phi: id.scale(&k.from_i64(2)).add(&h.differential()).unwrap(),
        },
        AutWitness::G1Edge {
            phi: id.scale(&k.from_i64(2)),
            psi: id.scale(&k.from_i64(2)).add(&h.differential()).unwrap(),
            h,
        },
        AutWitness::G2Vertex(phi),
        trivial_edge,
        edge,
    ]
}

/// Valid, and every single-component mutation is rejected.
fn discriminates(w: &AutWitness, r: &mut rand_chacha::ChaCha8Rng) -> Result<usize, String> {
    w.check()
        .unwrap()
        .map_err(|f| format!("valid {} witness rejected: {f}", w.kind()))?;
    let n = w.components().len();
    for i in 0..n {
        let m = random::mutate(w, i, r)
            .unwrap()
            .ok_or_else(|| format!("{} component {i}: no non-cocycle", w.kind()))?;
        ensure(!m.verify().unwrap(), || {
            format!("{} mutation of component {i} accepted", w.kind())
        })?;
    }
    Ok(n)
}

fn witness_suite() -> Check {
    let mut r = rng(9);
    let hand: Vec<AutWitness> = hand_complexes().iter().flat_map(hand_witnesses).collect();
    ensure(hand.len() == HAND_WITNESSES, || {
        format!("{} hand witnesses", hand.len())
    })?;
    let mut mutations = 0;
    for (i, w) in hand.iter().enumerate() {
        mutations += discriminates(w, &mut r).map_err(|e| format!("hand {i}: {e}"))?;
    }
    let ks = fields();
    for i in 0..FUZZED_WITNESSES {
        let e = random::busy_complex(&ks[i % ks.len()], &mut r).unwrap();
        let kind = WitnessKind::ALL[i % WitnessKind::ALL.len()];
        let w = random::witness(&e, kind, &mut r).unwrap();
        mutations += discriminates(&w, &mut r).map_err(|e| format!("fuzzed {i}: {e}"))?;
    }
    Ok(format!(
        "{HAND_WITNESSES} hand + {FUZZED_WITNESSES} fuzzed valid, {mutations}/{mutations} mutations rejected"
    ))
}

fn golden_stability() -> Check {
    let cases = golden_cases();
    let mut first = BTreeMap::new();
    for case in &cases {
        let expected = std::fs::read_to_string(case.expected_path()).map_err(|e| format!("{}: {e}", case.name))?;
        for _ in 0..2 {
            let got = run(case.command, &case.bundle_text(), &case.flags).render();
            ensure(got == expected, || {
                format!("{}: output differs from stored file", case.name)
            })?;
        }
        first.insert(case.name, expected);
    }
    for shuffle in 0..GOLDEN_SHUFFLES {
        let mut order: Vec<_> = cases.iter().collect();
        order.shuffle(&mut rng(100 + shuffle));
        for case in order {
            let got = run(case.command, &case.bundle_text(), &case.flags).render();
            ensure(got == first[case.name], || {
                format!("{}: unstable under shuffle {shuffle}", case.name)
            })?;
        }
    }
    let bin = env!("CARGO_BIN_EXE_perfcx");
    let mut order: Vec<_> = cases.iter().collect();
    order.shuffle(&mut rng(200));
    for case in order {
        let out = Process::new(bin)
            .arg(case.command.name())
            .arg("--input")
            .arg(golden_dir().join(case.bundle))
            .args(case.extra_args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(case.exit_code), || {
            format!("{}: exit {:?}", case.name, out.status)
        })?;
        ensure(out.stdout == first[case.name].as_bytes(), || {
            format!("{}: binary output differs", case.name)
        })?;
    }
    Ok(format!(
        "{} examples, 2 runs + {GOLDEN_SHUFFLES} shuffled orders + binary, byte-identical",
        cases.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cone/qiso oracle equivalence", cone_matches_oracle),
        ("Dold-Kan homotopy vs cohomology", dold_kan),
        ("Ext shift identity", ext_shift),
        ("Ext invariant under postcomposition", ext_postcomposition),
        ("Ext invariant under flat base change", ext_base_change),
        ("square-zero obstruction coherence", square_zero),
        ("descent round trip", hilbert90_round_trip),
        ("generic-point certification", generic_certification),
        ("automorphism witness discrimination", witness_suite),
        ("golden output stability", golden_stability),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of 10 passed in {:.1}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
