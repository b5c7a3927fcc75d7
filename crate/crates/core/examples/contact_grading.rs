//! The contact grading of su(p, q) as exact matrices.
//!
//! cargo run --example contact_grading

use cr_symmetry::parabolic::{contact_grading_dims, graded_su};
use cr_symmetry::scalar::{fmt_rat, rat};

fn main() {
    let g = graded_su(2, 3).expect("su(2,3)");
    println!("su({}, {}), n = {}, dim {}", g.p(), g.q(), g.n(), g.dim());
    for d in -2..=2 {
        let labels: Vec<&str> = g.range(d).map(|i| g.labels()[i].as_str()).collect();
        println!("  g{d:<2} ({:>2}): {}", labels.len(), labels.join(" "));
    }
    let s = g.grading_element();
    println!("grading element {} acts on g-1 by", g.labels()[s]);
    for x in g.range(-1).take(2) {
        let e = g.bracket(&vec![(s, rat(1))], &vec![(x, rat(1))]);
        let terms: Vec<String> = e.iter().map(|(i, c)| format!("{} {}", fmt_rat(c), g.labels()[*i])).collect();
        println!("  [{}, {}] = {}", g.labels()[s], g.labels()[x], terms.join(" + "));
    }
    println!("grading consistent: {}", g.grading_violation().is_none());

    for n in 2..=6 {
        let d = contact_grading_dims(n);
        println!("n = {n}: {d:?}  total {}", d.iter().sum::<usize>());
    }
}
