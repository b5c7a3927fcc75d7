//! Solves the symmetry equations from scratch and compares with the catalogs.
//!
//! cargo run --release --example rediscover

use cr_symmetry::fields::{builtin_symmetries, solve_symmetries};
use cr_symmetry::hypersurface::{Family, HypersurfaceModel, Sign};

fn main() {
    let cases = [
        (Family::IndefiniteSubmax, 2, vec![]),
        (Family::IndefiniteSubmax, 3, vec![Sign::Plus]),
        (Family::DefiniteSubmax, 2, vec![]),
        (Family::DefiniteSubmax, 3, vec![]),
        (Family::FlatQuadric, 2, vec![Sign::Plus, Sign::Plus]),
    ];
    for (family, n, eps) in cases {
        let model = HypersurfaceModel::builtin(family, n, &eps).expect("model");
        let dims: Vec<usize> = (2..=3)
            .map(|d| solve_symmetries(&model, d).expect("solve").dimension)
            .collect();
        let sol = solve_symmetries(&model, 3).expect("solve");
        let catalog = builtin_symmetries(family, n, &eps).ok();
        let inside = catalog.as_ref().map(|b| b.fields().iter().all(|v| sol.contains(v)));
        println!(
            "{family:<10} n={n}  dims by degree {dims:?}  ({} unknowns, {} equations)  catalog inside: {inside:?}",
            sol.unknowns, sol.equations
        );
    }
}
