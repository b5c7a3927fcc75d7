//! Maximal and submaximal symmetry dimensions by CR dimension and signature.
//!
//! cargo run --example bounds_table

use cr_symmetry::kostant::bounds;

fn main() {
    println!("{:>2} {:>2} {:>5} {:>7} {:>9} {:>12}", "n", "k", "max", "submax", "universal", "stabilizer");
    for n in 1..=8 {
        for k in 0..=n / 2 {
            let b = bounds(n, k).expect("bounds");
            let u = b.universal_bound.map_or("-".to_string(), |x| x.to_string());
            println!("{n:>2} {k:>2} {:>5} {:>7} {u:>9} {:>12}", b.max_dim, b.submax_dim, b.stability_group_note);
        }
    }
}
