//! The built-in hypersurface models and their Levi forms.
//!
//! cargo run --example models

use cr_symmetry::hypersurface::{parse_signs, Family, HypersurfaceModel};

fn main() {
    let cases = [
        (Family::IndefiniteSubmax, 3, "+"),
        (Family::IndefiniteSubmax, 4, "+-"),
        (Family::DefiniteSubmax, 3, ""),
        (Family::FlatQuadric, 2, "+-"),
    ];
    for (family, n, eps) in cases {
        let eps = parse_signs(eps).expect("signs");
        let m = HypersurfaceModel::builtin(family, n, &eps).expect("model");
        let s = m.levi_signature();
        println!("{family:<10} n={n}  Im w = {}", m.potential_text());
        println!("           levi signature ({}, {}), definite: {}", s.pos, s.neg, s.is_definite());
    }

    let custom = HypersurfaceModel::custom(2, "abs2(z1) + abs2(z1)^2 - abs2(z2)").expect("custom");
    println!("custom     n=2  Im w = {}", custom.potential_text());
    println!("           levi signature at 0: {:?}", custom.levi_signature());
}
