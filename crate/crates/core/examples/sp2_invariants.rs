//! Invariants of sp(2) inside u(4) acting on the curvature module of su(1,5).
//!
//! cargo run --release --example sp2_invariants

use cr_symmetry::kostant::symplectic_check;

fn main() {
    for m in 1..=2 {
        let r = symplectic_check(m).expect("check");
        println!("sp({m}) in u({}): dim {}", r.n, r.subalgebra_dim);
        println!("  whole module (real dim {}): invariants {:?}", r.module_dim, r.module_invariants);
        println!(
            "  (1,l) component and its conjugate (complex dim {}): invariants {:?}",
            r.component_dim, r.component_invariants
        );
    }
}
