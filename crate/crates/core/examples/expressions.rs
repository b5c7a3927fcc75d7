//! Parse, conjugate and differentiate expressions in z1.., conj(z1)...
//!
//! cargo run --example expressions

use cr_symmetry::symcore::{parse_expr, Var, VarTable};

fn main() {
    let mut vars = VarTable::new(2);
    let phi = parse_expr("log(1 + abs2(z1)) + abs2(z2)", &mut vars).expect("parse");
    println!("phi          = {}", phi.display(&vars));
    println!("conj(phi)    = {}", phi.bar(&vars).display(&vars));

    let d1 = phi.diff(Var::Z(1), &vars);
    println!("d phi / dz1  = {}", d1.display(&vars));
    let d11 = d1.diff(Var::W(1), &vars);
    println!("d2 phi / dz1 dconj(z1) = {}", d11.display(&vars));

    let poly = parse_expr("(z1 + conj(z2))^3 - 3*z1*conj(z2)^2", &mut vars).expect("parse");
    println!("expanded     = {}", poly.display(&vars));
    println!("at origin    = {}", poly.eval_at_origin(&vars).expect("finite"));
}
