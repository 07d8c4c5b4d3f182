//! Exhaustive search for constant-rank subspaces over a small prime field:
//! the low-scale oracle. Results are statements about F_p and are never
//! promoted to characteristic zero — over F_2 the answer can exceed the
//! characteristic-zero value.

use constrank::search::{max_dim_over_fp, search, Ansatz, Mode, SearchSpec, DEFAULT_CEILING};

fn main() {
    // all 2-dimensional constant-rank-1 spaces of 2x2 matrices over F_2
    let spec = SearchSpec {
        a: 2,
        b: 2,
        r: 1,
        dim: 2,
        p: 2,
        mode: Mode::Exhaustive,
        ansatz: Ansatz::General,
        ceiling: DEFAULT_CEILING,
    };
    let report = search(&spec).unwrap();
    println!(
        "rank-1 planes of 2x2 over F_2: {} witnesses out of {} canonical candidates (complete: {})",
        report.witnesses.len(),
        report.candidates_considered,
        report.complete
    );

    // the full 3x3 skew space mod 3 has constant rank 2
    let spec = SearchSpec {
        a: 3,
        b: 3,
        r: 2,
        dim: 3,
        p: 3,
        mode: Mode::Exhaustive,
        ansatz: Ansatz::SkewSymmetric,
        ceiling: DEFAULT_CEILING,
    };
    let report = search(&spec).unwrap();
    println!(
        "3-dim skew spaces of rank 2 over F_3: {} witness(es); {}",
        report.witnesses.len(),
        report.field_note
    );

    // invertible spaces of 3x3 matrices over F_2: the field acting on
    // itself gives dimension 3, more than l(3;3) = 1 in characteristic zero
    let report = max_dim_over_fp(3, 3, 2, DEFAULT_CEILING).unwrap();
    println!(
        "largest invertible space of 3x3 over F_2 found: dim {} (complete: {}; the dim-4 level exceeds the ceiling)",
        report.max_dim, report.complete
    );
    println!("over an algebraically closed field of characteristic zero the value is 1");
}
