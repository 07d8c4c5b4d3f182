//! Skew-symmetric spaces of corank one: the 3x3 pencil and its certified
//! relatives for a = 5, 7, 9, plus the transpose-duality swap of splitting
//! types.

use constrank::constructions::{skew3, skew_search_candidate, SkewSearchOutcome};
use constrank::pencil::{line_splitting_type, rational_point};

fn main() {
    let s = skew3();
    let st = line_splitting_type(
        &s,
        2,
        &rational_point(&[1, 0, 0]),
        &rational_point(&[0, 1, 0]),
    )
    .unwrap();
    println!("skew3: constant rank 2, splitting type {st}");

    let dual = s.transpose_dual();
    let st_dual = line_splitting_type(
        &dual,
        2,
        &rational_point(&[1, 0, 0]),
        &rational_point(&[0, 1, 0]),
    )
    .unwrap();
    println!("transpose dual:         splitting type {st_dual} (counts swapped)");

    for a in [5usize, 7, 9] {
        match skew_search_candidate(a).unwrap() {
            SkewSearchOutcome::Found {
                space,
                certificate,
                primes,
            } => {
                println!(
                    "a = {a}: 3-dimensional skew space of constant rank {} certified over F_p for p in {:?}",
                    certificate.rank, primes
                );
                // show one basis matrix
                if a == 5 {
                    println!("  one of its basis matrices:");
                    for i in 0..5 {
                        let row: Vec<i64> = (0..5).map(|j| space.basis_entry(0, i, j)).collect();
                        println!("    {row:?}");
                    }
                }
            }
            SkewSearchOutcome::Exhausted { detail, .. } => {
                println!("a = {a}: search exhausted ({detail})")
            }
        }
    }
}
