//! The obstruction computations that pin down the hard table cells: the
//! cubic in a over kernel-twist triples, the corank-two constraint chain,
//! the dimension-five candidate sieve, and the binomial kernel obstruction.

use constrank::chern::{
    dim5_candidates, dim5_profile, omega_kernel_obstruction, psi, psi_feasible_triples,
    rank2_cokernel_constraints, PsiParams, Rank2Solutions,
};

fn main() {
    // the cubic obstruction has no feasible kernel triples at a = 9, 10,
    // which settles l(6;9) = l(7;10) = 4
    for a in [9, 10] {
        let triples = psi_feasible_triples(a, 3, 5);
        println!("a = {a}: feasible triples in 3 <= s <= 5: {triples:?}");
    }
    let sample = PsiParams::from_triple(9, [1, 1, 1]);
    println!(
        "the single surviving candidate (1,1,1) at a = 9 gives psi = {} (needs 0)",
        psi(&sample)
    );

    // corank-two constraint chain
    println!();
    match rank2_cokernel_constraints(34, 4) {
        Rank2Solutions::Points(points) => {
            println!("corank-two constraints on P^4 at a = 34: unique {points:?}")
        }
        other => println!("unexpected: {other:?}"),
    }
    println!(
        "on P^5 the h^5 coefficient kills everything: a = 40 gives {:?}",
        rank2_cokernel_constraints(40, 5)
    );
    println!(
        "on P^3 with 3 | a there is no integral t2: a = 6 gives {:?}",
        rank2_cokernel_constraints(6, 3)
    );

    // the dimension-five sieve
    println!();
    let candidates = dim5_candidates(200);
    println!("sizes a <= 200 where a five-dimensional corank-two space survives the sieve:");
    println!("  {candidates:?}");
    let p = dim5_profile(34).unwrap();
    println!(
        "the first, a = 34, would carry a rank-two bundle with c1 = 0, c2 = {}",
        p.c2_normalized
    );

    // binomial kernel obstruction: the top coefficient of (1+h)(1-h)^a on
    // P^n vanishes exactly at a = 2n - 1
    println!();
    for a in 6..=9 {
        let (_, top) = omega_kernel_obstruction(4, a);
        println!("n = 4, a = {a}: top coefficient = {top}");
    }
}
