//! Structure of the catalog algebras: radical, series, Levi factor.
//!
//! cargo run --release --example structure

use cr_symmetry::fields::{builtin_symmetries, close_and_structure, levi_candidate};
use cr_symmetry::hypersurface::{Family, Sign};
use cr_symmetry::liestruct::{fingerprint_match, killing_form, levi_check, radical_and_series, reference_algebra};

fn main() {
    for (family, n) in [(Family::IndefiniteSubmax, 3), (Family::DefiniteSubmax, 3), (Family::DefiniteSubmax, 2)] {
        let eps = match family {
            Family::IndefiniteSubmax => vec![Sign::Plus; n - 2],
            _ => vec![],
        };
        let basis = builtin_symmetries(family, n, &eps).expect("catalog");
        let l = close_and_structure(&basis).expect("closed");
        let s = radical_and_series(&l);
        let (_, sig) = killing_form(&l);
        println!("{family} n={n}: dim {}", l.dim());
        println!("  killing signature  {sig}");
        println!("  derived series     {:?}", s.derived_dims);
        println!("  radical            {} (derived {:?})", s.radical.dim(), s.radical_derived_dims);
        let (cand, reference) = levi_candidate(family, &basis, &eps).expect("candidate");
        let verdict = levi_check(&l, &cand).expect("check");
        let sub = l.restrict(&cand).expect("subalgebra");
        println!(
            "  levi factor {reference}: passed {}  fingerprint match {}",
            verdict.passed,
            fingerprint_match(&sub, &reference_algebra(reference))
        );
    }
}
