//! Tanaka prolongation for a few choices of a0 inside g0.
//!
//! cargo run --release --example prolongation

use cr_symmetry::kostant::{hasse_weight2, lowest_weight_vectors};
use cr_symmetry::linalg::Subspace;
use cr_symmetry::parabolic::{annihilator, curvature_module, graded_sl, graded_su, tanaka_prolongation};

fn main() {
    for n in 2..=4 {
        let g = graded_su(1, n + 1).expect("grading");
        let z = g.range(0).len();
        let full = tanaka_prolongation(&g, &Subspace::whole(z), 3).expect("full");
        let zero = tanaka_prolongation(&g, &Subspace::zero(z), 3).expect("zero");
        println!("n = {n}: a0 = g0 -> {:?}, a0 = 0 -> {:?}", full.dims, zero.dims);

        // annihilator of the lowest weight vector of the self-conjugate component
        let c = graded_sl(1, n + 1).expect("complex grading");
        let m = curvature_module(&c);
        let l = n + 1;
        let comp = hasse_weight2(l).expect("words").into_iter().find(|x| x.word == (1, l)).expect("(1,l)");
        let lw = lowest_weight_vectors(&c, &m, &comp).expect("lowest weight");
        let ann = annihilator(&m, &lw.vectors[0]);
        let p = tanaka_prolongation(&c, &ann, 3).expect("prolong");
        println!("        complex annihilator dim {} -> {:?} over {}", ann.dim(), p.dims, p.field);
    }
}
