//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; every tolerance here is exact equality.

use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use constrank::bounds::{self, Status};
use constrank::chern::{self, ChernPoly, Rank2Solutions};
use constrank::constructions::{banded, embedded, skew3, westwick5};
use constrank::pencil::{
    line_splitting_type, rational_point, verify_constant_rank, verify_rank_upper, MatrixSpace,
    Soundness, Strategy,
};
use constrank::rng::SplitMix64;
use constrank::search;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_constrank"))
}

fn pass(criterion: &str, detail: String) {
    println!("criterion {criterion}: PASS - {detail}");
}

/// Golden values of l(r;a) for a <= 10, one row per a.
const GOLDEN: [&[u32]; 10] = [
    &[1],
    &[2, 1],
    &[3, 3, 1],
    &[4, 3, 2, 1],
    &[5, 4, 4, 3, 1],
    &[6, 5, 4, 3, 2, 1],
    &[7, 6, 5, 5, 3, 3, 1],
    &[8, 7, 6, 5, 4, 4, 2, 1],
    &[9, 8, 7, 6, 6, 4, 3, 3, 1],
    &[10, 9, 8, 7, 6, 5, 4, 4, 2, 1],
];

#[test]
fn criterion_1_golden_table() {
    let start = Instant::now();
    let output = binary()
        .args(["table", "--max-a", "10", "--format", "csv"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let mut cells = std::collections::BTreeMap::new();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let a: u32 = fields[0].parse().unwrap();
        let r: u32 = fields[1].parse().unwrap();
        let lower: u32 = fields[2].parse().unwrap();
        let upper: u32 = fields[3].parse().unwrap();
        assert_eq!(fields[4], "exact", "cell ({r},{a}) must be exact");
        assert_eq!(lower, upper);
        cells.insert((a, r), lower);
    }
    assert_eq!(cells.len(), 55);
    for (a, row) in GOLDEN.iter().enumerate() {
        let a = a as u32 + 1;
        for (r, &expected) in row.iter().enumerate() {
            let r = r as u32 + 1;
            assert_eq!(cells[&(a, r)], expected, "l({r};{a})");
        }
    }
    // library path agrees with the binary
    for rec in bounds::table(10).unwrap() {
        assert_eq!(rec.status, Status::Exact);
        assert_eq!(rec.lower, GOLDEN[rec.a as usize - 1][rec.r as usize - 1]);
    }
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "table took {elapsed:?}, limit 1s"
    );
    pass("1", format!("55 exact cells match the golden table in {elapsed:?}"));
}

#[test]
fn criterion_2_westwick_pencil() {
    let start = Instant::now();
    let space = westwick5();
    // the 5x5 determinant vanishes identically
    assert!(verify_rank_upper(&space, 4));
    // exhaustive rank-4 certificate over F_5, F_7, F_11, F_13
    let cert = verify_constant_rank(
        &space,
        4,
        &Strategy::ExhaustivePrimes {
            primes: vec![5, 7, 11, 13],
        },
    )
    .unwrap();
    assert!(cert.verified());
    assert_eq!(cert.soundness, Soundness::ProvedOverListedPrimeFields);
    // splitting type (-1^2, 0^2) on the line x2 = 0
    let standard = line_splitting_type(
        &space,
        4,
        &rational_point(&[1, 0, 0]),
        &rational_point(&[0, 1, 0]),
    )
    .unwrap();
    assert_eq!(standard.entries(), &[0, 0, -1, -1]);
    // and on 200 seeded random lines
    let mut rng = SplitMix64::new(2024);
    let mut checked = 0;
    while checked < 200 {
        let p = rng.nonzero_vector(3, 9);
        let q = rng.nonzero_vector(3, 9);
        if (0..2).all(|i| ((i + 1)..=2).all(|j| p[i] * q[j] == p[j] * q[i])) {
            continue;
        }
        let st =
            line_splitting_type(&space, 4, &rational_point(&p), &rational_point(&q)).unwrap();
        assert_eq!(st, standard, "line {p:?};{q:?}");
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "westwick checks took {elapsed:?}, limit 5s"
    );
    pass(
        "2",
        format!("rank 4 certified, splitting (-1^2,0^2) on 201 lines in {elapsed:?}"),
    );
}

#[test]
fn criterion_3_psi_enumeration() {
    for a in [9i64, 10] {
        let output = binary()
            .args(["obstruct", "psi", "--a", &a.to_string()])
            .output()
            .expect("binary runs");
        assert!(output.status.success());
        let report: serde_json::Value =
            serde_json::from_slice(&output.stdout).expect("valid JSON");
        assert_eq!(report["count"], 0, "a = {a}");
        assert_eq!(report["s_min"], 3);
        assert_eq!(report["s_max"], 5);
        assert!(chern::psi_feasible_triples(a, 3, 5).is_empty());
    }
    pass("3", "no feasible kernel-twist triples at a = 9 or a = 10".to_string());
}

#[test]
fn criterion_4_dim5_sieve() {
    let output = binary()
        .args(["obstruct", "dim5", "--max-a", "200"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let candidates: Vec<i64> = report["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    assert_eq!(candidates.first(), Some(&34));
    let profile34 = report["profiles"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["a"] == 34)
        .expect("profile for 34");
    assert_eq!(profile34["c2_normalized"], "24");
    assert_eq!(profile34["passes"], true);
    // congruence characterization on the a = 12m + 2 branch
    let all = chern::dim5_candidates(500);
    for m in 1..=41i64 {
        let a = 12 * m + 2;
        if a > 500 {
            break;
        }
        assert_eq!(
            all.contains(&a),
            matches!(m % 12, 0 | 5 | 8 | 9),
            "m = {m}"
        );
    }
    pass(
        "4",
        format!("first candidate 34 with normalized c2 = 24; residues match ({candidates:?} up to 200)"),
    );
}

#[test]
fn criterion_5_rank2_cokernel_constraints() {
    // (a) unique solution at a = 34 on P^4
    let sol = chern::rank2_cokernel_constraints(34, 4);
    assert_eq!(
        sol,
        Rank2Solutions::Points(vec![(BigInt::from(16), BigInt::from(88))])
    );
    // (b) empty on P^5 for all 3 <= a <= 100
    for a in 3..=100 {
        assert_eq!(
            chern::rank2_cokernel_constraints(a, 5),
            Rank2Solutions::Empty,
            "n = 5, a = {a}"
        );
    }
    // (c) empty on P^3 whenever 3 | a, up to 99
    for a in (3..=99).step_by(3) {
        assert_eq!(
            chern::rank2_cokernel_constraints(a, 3),
            Rank2Solutions::Empty,
            "n = 3, a = {a}"
        );
    }
    pass(
        "5",
        "unique (16, 88) at a = 34 on P^4; empty on P^5 and on P^3 for 3 | a".to_string(),
    );
}

#[test]
fn criterion_6_chern_fixtures() {
    let omega2 = chern::twisted_cotangent(4, 2);
    assert_eq!(omega2, ChernPoly::from_ints(4, &[1, 3, 4, 2, 1]));
    assert_eq!(omega2.inverse(), ChernPoly::from_ints(4, &[1, -3, 5, -5, 0]));
    assert_eq!(
        chern::twisted_tangent(4, -2),
        ChernPoly::from_ints(4, &[1, -3, 4, -2, 1])
    );
    let inv = omega2.inverse();
    for a in 0..=100i64 {
        let c4 = chern::line_power(1, a, 4).mul(&inv).coeff(4).clone();
        let expected = BigInt::from(a)
            * BigInt::from(a - 5)
            * BigInt::from(a - 6)
            * BigInt::from(a - 7)
            / BigInt::from(24);
        assert_eq!(c4, expected, "a = {a}");
        assert_eq!(c4.is_zero(), matches!(a, 0 | 5 | 6 | 7), "a = {a}");
    }
    pass(
        "6",
        "twisted classes and the quartic a(a-5)(a-6)(a-7)/24 reproduced for a <= 100".to_string(),
    );
}

#[test]
fn criterion_7_binomial_obstruction() {
    for n in 2..=8usize {
        for a in (n as i64)..=40 {
            let (next_to_top, top) = chern::omega_kernel_obstruction(n, a);
            assert_eq!(
                top.is_zero(),
                a == 2 * n as i64 - 1,
                "top coefficient, n = {n}, a = {a}"
            );
            if a == 2 * n as i64 - 1 {
                assert!(
                    !next_to_top.is_zero(),
                    "next coefficient must survive at n = {n}"
                );
            }
        }
    }
    // the magnitudes behind the n = 4 case
    let (c3, c4) = chern::omega_kernel_obstruction(4, 7);
    assert_eq!(c3.abs(), BigInt::from(14));
    assert!(c4.is_zero());
    pass(
        "7",
        "top coefficient vanishes exactly at a = 2n-1 for 2 <= n <= 8, a <= 40".to_string(),
    );
}

#[test]
fn criterion_8_embedded_witnesses() {
    let start = Instant::now();
    for a in 1..=10usize {
        for r in 1..=a {
            let space = embedded(r, a).unwrap();
            assert_eq!(space.ambient_dim() + 1, a - r + 1, "dim M for ({r},{a})");
            let cert = verify_constant_rank(&space, r, &Strategy::SymbolicCharts)
                .unwrap_or_else(|e| panic!("embedded({r},{a}): {e}"));
            assert!(cert.verified(), "embedded({r},{a}) not verified");
            assert_eq!(
                cert.soundness,
                Soundness::ProvedOverQ,
                "embedded({r},{a}) soundness"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "embedded sweep took {elapsed:?}, limit 30s"
    );
    pass(
        "8",
        format!("all 55 embedded spaces certified over Q in {elapsed:?}"),
    );
}

#[test]
fn criterion_9_property_suites() {
    // ring axioms and inverses in the truncated ring: 500 seeded cases
    let mut rng = SplitMix64::new(0xC0FFEE);
    for case in 0..500 {
        let n = 1 + (rng.next_u64() % 8) as usize;
        let draw = |rng: &mut SplitMix64| {
            let mut coeffs = vec![1i64];
            for _ in 0..n {
                coeffs.push(rng.next_in_range(-50, 50));
            }
            ChernPoly::from_ints(n, &coeffs)
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let z = draw(&mut rng);
        assert_eq!(x.mul(&y), y.mul(&x), "case {case}");
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)), "case {case}");
        assert_eq!(x.mul(&x.inverse()), ChernPoly::one(n), "case {case}");
    }
    // splitting-type line invariance on all shipped fixtures, 200 lines each
    let fixtures: Vec<(MatrixSpace, usize)> = vec![
        (banded(3, 2, 1).unwrap(), 2),
        (banded(7, 3, 4).unwrap(), 3),
        (skew3(), 2),
        (westwick5(), 4),
    ];
    for (space, rank) in &fixtures {
        let n = space.ambient_dim();
        let mut rng = SplitMix64::new(808);
        let mut reference = None;
        let mut checked = 0;
        while checked < 200 {
            let p = rng.nonzero_vector(n + 1, 9);
            let q = rng.nonzero_vector(n + 1, 9);
            if (0..n).all(|i| ((i + 1)..=n).all(|j| p[i] * q[j] == p[j] * q[i])) {
                continue;
            }
            let st = line_splitting_type(space, *rank, &rational_point(&p), &rational_point(&q))
                .unwrap();
            match &reference {
                None => reference = Some(st),
                Some(r) => assert_eq!(&st, r, "{:?}", space.name()),
            }
            checked += 1;
        }
        // transpose duality swaps the counts
        let dual = space.transpose_dual();
        let st = reference.unwrap();
        let dual_st = line_splitting_type(
            &dual,
            *rank,
            &rational_point(&{
                let mut v = vec![0i64; n + 1];
                v[0] = 1;
                v
            }),
            &rational_point(&{
                let mut v = vec![0i64; n + 1];
                v[1] = 1;
                v
            }),
        )
        .unwrap();
        assert_eq!(st.minus_one_count(), dual_st.zero_count(), "{:?}", space.name());
        assert_eq!(st.zero_count(), dual_st.minus_one_count(), "{:?}", space.name());
    }
    // search determinism under varying worker counts
    let spec = search::SearchSpec {
        a: 2,
        b: 2,
        r: 1,
        dim: 2,
        p: 3,
        mode: search::Mode::Exhaustive,
        ansatz: search::Ansatz::General,
        ceiling: search::DEFAULT_CEILING,
    };
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| search::search(&spec).unwrap())
    };
    let single = run(1);
    for threads in [2usize, 4, 8] {
        let multi = run(threads);
        assert_eq!(single.witnesses, multi.witnesses, "{threads} workers");
    }
    pass(
        "9",
        "500 ring/inverse cases, 200-line invariance and duality on all fixtures, worker-count determinism".to_string(),
    );
}
