//! Build the band and embedded constructions, certify them, and show the
//! pencil JSON interchange format.

use constrank::pencil::{verify_constant_rank, MatrixSpace, Strategy};
use constrank::{banded, embedded};

fn main() {
    // the surjective band needs a = b + n (here 7 = 3 + 4) and has rank 3
    // at every point of P^4
    let band = banded(7, 3, 4).unwrap();
    let cert = verify_constant_rank(&band, 3, &Strategy::SymbolicCharts).unwrap();
    println!(
        "banded(7,3,4): verified = {}, soundness = {:?}",
        cert.verified(),
        cert.soundness
    );

    // padding the band with zero columns embeds it as a square space of
    // the same rank; dimension is a - r + 1
    let space = embedded(3, 7).unwrap();
    println!(
        "embedded(3,7): {} x {} pencil on P^{}, dim M = {}",
        space.rows(),
        space.cols(),
        space.ambient_dim(),
        space.ambient_dim() + 1
    );
    let cert = verify_constant_rank(&space, 3, &Strategy::SymbolicCharts).unwrap();
    println!(
        "embedded(3,7): verified = {}, soundness = {:?}",
        cert.verified(),
        cert.soundness
    );

    // random rational sampling gives a weaker, probabilistic certificate
    let cert = verify_constant_rank(
        &space,
        3,
        &Strategy::RandomRational {
            trials: 200,
            seed: 1,
        },
    )
    .unwrap();
    println!(
        "same space with random sampling: verified = {}, soundness = {:?}",
        cert.verified(),
        cert.soundness
    );

    // the JSON interchange format round-trips exactly
    let text = space.to_json();
    let back = MatrixSpace::from_json(&text).unwrap();
    assert_eq!(back, space);
    println!("\npencil JSON for a small example:\n{}", banded(3, 2, 1).unwrap().to_json());
}
