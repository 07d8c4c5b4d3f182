//! The classical 5x5 pencil of constant rank 4 on the projective plane:
//! certify the rank, then compute the splitting type of its image along
//! lines and watch it stay (-1, -1, 0, 0) everywhere.

use constrank::pencil::{
    line_splitting_type, rational_point, verify_constant_rank, verify_rank_upper, Strategy,
};
use constrank::rng::SplitMix64;
use constrank::westwick5;

fn main() {
    let space = westwick5();
    println!("pencil: {}", space.name().unwrap());
    println!("5x5 determinant vanishes identically: {}", verify_rank_upper(&space, 4));

    let cert = verify_constant_rank(&space, 4, &Strategy::exhaustive_default()).unwrap();
    println!(
        "constant rank 4 verified: {} (soundness: {:?})",
        cert.verified(),
        cert.soundness
    );

    let st = line_splitting_type(
        &space,
        4,
        &rational_point(&[1, 0, 0]),
        &rational_point(&[0, 1, 0]),
    )
    .unwrap();
    println!("splitting type on the line x2 = 0: {st}");

    let mut rng = SplitMix64::new(12);
    let mut agreeing = 0;
    while agreeing < 50 {
        let p = rng.nonzero_vector(3, 9);
        let q = rng.nonzero_vector(3, 9);
        if (0..2).all(|i| ((i + 1)..=2).all(|j| p[i] * q[j] == p[j] * q[i])) {
            continue;
        }
        let here =
            line_splitting_type(&space, 4, &rational_point(&p), &rational_point(&q)).unwrap();
        assert_eq!(here, st);
        agreeing += 1;
    }
    println!("same splitting type on {agreeing} random lines: the image is uniform");

    println!(
        "half the summands are twists by -1, matching c1 of the cokernel = {}",
        st.minus_one_count()
    );
}
