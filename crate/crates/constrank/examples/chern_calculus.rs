//! Arithmetic in the truncated ring Z[h]/(h^{n+1}): line-bundle powers,
//! twisted tangent and cotangent classes, inverses, and the kernel class of
//! a pencil.

use constrank::chern::{kernel_chern, line_power, pretty, twisted_cotangent, twisted_tangent};
use constrank::ChernPoly;

fn main() {
    let n = 4;

    let t = twisted_tangent(n, -2);
    println!("C(T(-2)) on P^4      = {}", pretty(&t));

    let omega = twisted_cotangent(n, 2);
    println!("C(Omega(2)) on P^4   = {}", pretty(&omega));
    println!("its inverse          = {}", pretty(&omega.inverse()));
    println!(
        "product check        = {}",
        pretty(&omega.mul(&omega.inverse()))
    );

    // C(Omega(1))^{-1} = 1 + h on every P^n
    for n in 2..=5 {
        assert_eq!(
            twisted_cotangent(n, 1).inverse(),
            ChernPoly::from_ints(n, &[1, 1])
        );
    }
    println!("C(Omega(1))^-1 = 1 + h on P^2 ... P^5");

    // the kernel of a surjection a.O(-1) -> b.O with cokernel class c_E
    // has class c_E * (1-h)^a
    let c_e = ChernPoly::from_ints(n, &[1, 16, 88]);
    let f = kernel_chern(&c_e, 34);
    println!("kernel class for a = 34, C(E) = 1 + 16h + 88h^2:");
    println!("                     = {}", pretty(&f));

    println!("(1-h)^34 truncated   = {}", pretty(&line_power(-1, 34, n)));
}
