//! Checks that every catalog field is tangent to its model.
//!
//! cargo run --example tangency

use cr_symmetry::fields::{builtin_symmetries, verify_tangency};
use cr_symmetry::hypersurface::{parse_signs, Family, HypersurfaceModel};

fn main() {
    for (family, n, eps) in [(Family::IndefiniteSubmax, 3, "-"), (Family::DefiniteSubmax, 2, "")] {
        let eps = parse_signs(eps).expect("signs");
        let model = HypersurfaceModel::builtin(family, n, &eps).expect("model");
        let basis = builtin_symmetries(family, n, &eps).expect("catalog");
        println!("{family} n={n}: Im w = {}", model.potential_text());
        for r in verify_tangency(&model, &basis).expect("tangency") {
            let v = basis.get(&r.label).expect("label");
            println!("  {:<6} {:<5} {}", r.label, r.tangent, v.to_text());
        }
    }

    // a field that is not a symmetry leaves a residual
    let model = HypersurfaceModel::builtin(Family::DefiniteSubmax, 2, &[]).expect("model");
    let v = cr_symmetry::fields::HoloVectorField::parse(2, "z1^2 ; 0 ; 0").expect("field");
    let r = model.tangency_residual(&v).expect("residual");
    println!("residual of z1^2 d/dz1: {}", r.display(model.vars()));
}
