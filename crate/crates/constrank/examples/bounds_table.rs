//! The l(r;a) table: exact for a <= 10, with provenance for every cell, and
//! the first open cells beyond.

use constrank::bounds::{explain, table, table_markdown};

fn main() {
    let records = table(10).unwrap();
    println!("{}", table_markdown(&records));

    println!("{}", explain(6, 9).unwrap());
    println!("{}", explain(4, 8).unwrap());
    println!("{}", explain(8, 10).unwrap());

    // beyond a = 10 the middle range opens up
    println!("{}", explain(7, 11).unwrap());
    println!("{}", explain(32, 34).unwrap());
}
