//! Weight-2 Hasse words, their marks and lowest weight vectors.
//!
//! cargo run --release --example kostant_weights

use cr_symmetry::kostant::{annihilator_dim, hasse_weight2, lowest_weight_vectors, real_components, satake, Diagram};
use cr_symmetry::parabolic::{curvature_module, graded_sl};

fn main() {
    for n in 3..=5 {
        let l = n + 1;
        let comps = hasse_weight2(l).expect("words");
        println!("n = {n}, A{l}: real components {:?}", real_components(&comps));
        for c in &comps {
            println!("  {:?}  marks {:?}  homogeneity {}  partner {:?}", c.word, c.weight, c.homogeneity, c.conjugate_partner);
        }
        let mid = comps.iter().find(|c| c.conjugate_partner.is_none()).expect("self-conjugate");
        let d = Diagram { satake: satake(0, n).expect("satake"), marks: Some(mid.weight.clone()) };
        print!("{d}");
    }

    let n = 3;
    let c = graded_sl(1, n + 1).expect("grading");
    let m = curvature_module(&c);
    for comp in hasse_weight2(n + 1).expect("words").into_iter().filter(|c| c.homogeneity == 2) {
        let lw = lowest_weight_vectors(&c, &m, &comp).expect("lowest weight");
        println!(
            "{:?}: {} line(s), weight {:?}, real {}, annihilator dim {}",
            comp.word,
            lw.vectors.len(),
            lw.weight,
            lw.real,
            annihilator_dim(&m, &lw.vectors[0])
        );
    }
}
