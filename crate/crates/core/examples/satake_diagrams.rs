//! Satake diagrams of su(k+1, n-k+1) with the contact parabolic crossed.
//!
//! cargo run --example satake_diagrams

use cr_symmetry::kostant::{satake, Diagram};

fn main() {
    for n in [3, 4] {
        for k in 0..=n / 2 {
            let s = satake(k, n).expect("satake");
            println!("su({}, {})", k + 1, n - k + 1);
            print!("{}", Diagram { satake: s, marks: None });
        }
    }
}
