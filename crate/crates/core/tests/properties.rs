//! Randomized algebraic laws.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::select;

use cr_symmetry::cli::run;
use cr_symmetry::fields::{builtin_symmetries, close_and_structure, FieldBasis, HoloVectorField};
use cr_symmetry::hypersurface::{Family, HypersurfaceModel, Sign};
use cr_symmetry::kostant::{bounds, hasse_weight2, real_components};
use cr_symmetry::liestruct::{killing_matrix, radical_and_series, RealLieAlgebra};
use cr_symmetry::linalg::{sparse_from_dense, SparseVec, Subspace};
use cr_symmetry::parabolic::{annihilator, contact_grading_dims, curvature_module, graded_su, CurvatureModule, GradedSU};
use cr_symmetry::scalar::{rat, Gauss, Rat};
use cr_symmetry::symcore::{parse_expr, Expr, Var, VarTable};

const CASES: u32 = 1000;

fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() }
}

// ---------- expressions ----------

fn leaf(logs: bool) -> BoxedStrategy<String> {
    let mut atoms = vec!["z1", "z2", "z3", "conj(z1)", "conj(z2)", "conj(z3)", "i", "2", "1/3", "u"];
    if logs {
        atoms.push("log(1 + abs2(z1))");
        atoms.push("log(1 + abs2(z2))");
    }
    select(atoms).prop_map(str::to_string).boxed()
}

fn expr_text(logs: bool) -> impl Strategy<Value = String> {
    leaf(logs).prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            inner.clone().prop_map(|a| format!("({a})^2")),
            inner.clone().prop_map(|a| format!("conj({a})")),
            inner.clone().prop_map(|a| format!("abs2({a})")),
            inner.prop_map(|a| format!("Re({a})")),
        ]
    })
}

fn parse(text: &str, vt: &mut VarTable) -> Expr {
    parse_expr(text, vt).unwrap_or_else(|e| panic!("{text}: {e}"))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn print_parse_round_trip(t in expr_text(false)) {
        let mut vt = VarTable::new(2);
        let e = parse(&t, &mut vt);
        let printed = e.to_text(&vt).unwrap();
        let again = parse(&printed, &mut vt);
        prop_assert_eq!(again, e);
    }

    #[test]
    fn bar_is_an_involution(t in expr_text(true)) {
        let mut vt = VarTable::new(2);
        let e = parse(&t, &mut vt);
        prop_assert_eq!(e.bar(&vt).bar(&vt), e);
    }

    #[test]
    fn bar_commutes_with_diff(t in expr_text(true), j in 1usize..=3) {
        let mut vt = VarTable::new(2);
        let e = parse(&t, &mut vt);
        let lhs = e.diff(Var::Z(j), &vt).bar(&vt);
        let rhs = e.bar(&vt).diff(Var::W(j), &vt);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz(a in expr_text(true), b in expr_text(true), v in select(vec![Var::Z(1), Var::W(1), Var::Z(2), Var::U])) {
        let mut vt = VarTable::new(2);
        let a = parse(&a, &mut vt);
        let b = parse(&b, &mut vt);
        let lhs = a.mul(&b, &vt).diff(v, &vt);
        let rhs = a.diff(v, &vt).mul(&b, &vt).add(&a.mul(&b.diff(v, &vt), &vt), &vt);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn real_imaginary_rewriting(t in expr_text(true)) {
        let mut vt = VarTable::new(2);
        let e = parse(&t, &mut vt);
        let split = parse(&format!("Re({t}) + i*Im({t})"), &mut vt);
        prop_assert_eq!(&split, &e);
        let a2 = parse(&format!("abs2({t})"), &mut vt);
        prop_assert_eq!(a2, e.mul(&e.bar(&vt), &vt));
        prop_assert_eq!(parse(&format!("Re({t})"), &mut vt).bar(&vt), parse(&format!("Re({t})"), &mut vt));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in expr_text(false), b in expr_text(false), s in expr_text(false)) {
        let mut vt = VarTable::new(2);
        let a = parse(&a, &mut vt);
        let b = parse(&b, &mut vt);
        let s = parse(&s, &mut vt);
        let mut map = BTreeMap::new();
        map.insert(Var::Z(1), s.clone());
        map.insert(Var::W(1), s.bar(&vt));
        let sub = |e: &Expr| e.substitute(&map, &vt).unwrap();
        prop_assert_eq!(sub(&a.mul(&b, &vt)), sub(&a).mul(&sub(&b), &vt));
        prop_assert_eq!(sub(&a.add(&b, &vt)), sub(&a).add(&sub(&b), &vt));
        // substitution respecting conjugation commutes with bar
        prop_assert_eq!(sub(&a.bar(&vt)), sub(&a).bar(&vt));
    }
}

// ---------- tangency residuals ----------

fn models() -> &'static [HypersurfaceModel] {
    static M: OnceLock<Vec<HypersurfaceModel>> = OnceLock::new();
    M.get_or_init(|| {
        vec![
            HypersurfaceModel::builtin(Family::IndefiniteSubmax, 2, &[]).unwrap(),
            HypersurfaceModel::builtin(Family::DefiniteSubmax, 2, &[]).unwrap(),
            HypersurfaceModel::builtin(Family::FlatQuadric, 2, &[Sign::Plus, Sign::Minus]).unwrap(),
        ]
    })
}

fn coeff_text() -> impl Strategy<Value = String> {
    let mono = select(vec!["1", "z1", "z2", "z3", "z1^2", "z1*z2", "z1*z3", "z2^2"]);
    prop::collection::vec((-2i64..=2, -2i64..=2, mono), 0..3).prop_map(|terms| {
        let parts: Vec<String> = terms.iter().map(|(a, b, m)| format!("({a} + {b}*i)*{m}")).collect();
        if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
    })
}

fn field() -> impl Strategy<Value = HoloVectorField> {
    prop::collection::vec(coeff_text(), 3).prop_map(|c| HoloVectorField::parse(2, &c.join(" ; ")).unwrap())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn residuals_are_real_and_linear(m in 0usize..3, v in field(), w in field(), a in -3i64..=3, b in -3i64..=3) {
        let model = &models()[m];
        let vt = model.vars();
        let rv = model.tangency_residual(&v).unwrap();
        let rw = model.tangency_residual(&w).unwrap();
        prop_assert_eq!(rv.bar(vt), rv.clone());
        let combo = v.scale(&Gauss::int(a)).add(&w.scale(&Gauss::int(b)));
        let lhs = model.tangency_residual(&combo).unwrap();
        let rhs = rv.scale(&Gauss::int(a)).add(&rw.scale(&Gauss::int(b)), vt);
        prop_assert_eq!(lhs, rhs);
    }
}

// ---------- catalog algebras ----------

struct Catalog {
    basis: FieldBasis,
    algebra: RealLieAlgebra,
    killing: Vec<Vec<Rat>>,
    radical: Subspace,
}

fn catalogs() -> &'static [Catalog] {
    static C: OnceLock<Vec<Catalog>> = OnceLock::new();
    C.get_or_init(|| {
        let cases = [
            (Family::IndefiniteSubmax, 2, vec![]),
            (Family::IndefiniteSubmax, 3, vec![Sign::Minus]),
            (Family::IndefiniteSubmax, 4, vec![Sign::Plus, Sign::Minus]),
            (Family::DefiniteSubmax, 2, vec![]),
            (Family::DefiniteSubmax, 3, vec![]),
            (Family::DefiniteSubmax, 4, vec![]),
            (Family::FlatQuadric, 2, vec![Sign::Plus, Sign::Plus]),
        ];
        cases
            .into_iter()
            .map(|(f, n, eps)| {
                let basis = builtin_symmetries(f, n, &eps).unwrap();
                let algebra = close_and_structure(&basis).unwrap();
                let killing = killing_matrix(&algebra);
                let radical = radical_and_series(&algebra).radical;
                Catalog { basis, algebra, killing, radical }
            })
            .collect()
    })
}

fn small_vector(len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(-3i64..=3, len).prop_map(|v| v.into_iter().map(rat).collect())
}

fn killing(k: &[Vec<Rat>], x: &[Rat], y: &[Rat]) -> Rat {
    let mut t = rat(0);
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            t += xi * &k[i][j] * yj;
        }
    }
    t
}

fn catalog_and_vectors(count: usize) -> impl Strategy<Value = (usize, Vec<Vec<Rat>>)> {
    (0..7usize).prop_flat_map(move |c| {
        let d = catalogs()[c].algebra.dim();
        (Just(c), prop::collection::vec(small_vector(d), count))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn jacobi_on_catalog_triples(c in 0..7usize, seed in any::<[u16; 3]>()) {
        let cat = &catalogs()[c];
        let d = cat.basis.len();
        let [a, b, e] = seed.map(|s| s as usize % d);
        let f = cat.basis.fields();
        let br = |x: &HoloVectorField, y: &HoloVectorField| x.bracket(y).unwrap();
        let sum = br(&f[a], &br(&f[b], &f[e])).add(&br(&f[b], &br(&f[e], &f[a]))).add(&br(&f[e], &br(&f[a], &f[b])));
        prop_assert!(sum.is_zero());
        prop_assert!(cat.algebra.jacobi_holds(a, b, e));
    }

    #[test]
    fn killing_form_is_ad_invariant((c, v) in catalog_and_vectors(3)) {
        let cat = &catalogs()[c];
        let l = &cat.algebra;
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let lhs = killing(&cat.killing, &l.bracket(x, y), z);
        let rhs = killing(&cat.killing, y, &l.bracket(x, z));
        prop_assert_eq!(lhs + rhs, rat(0));
    }

    #[test]
    fn radical_is_an_ideal((c, v) in catalog_and_vectors(2)) {
        let cat = &catalogs()[c];
        let l = &cat.algebra;
        let r = &cat.radical;
        // a radical element from the second vector's coordinates
        let mut rv = vec![rat(0); l.dim()];
        for (b, coef) in r.basis().iter().zip(&v[1]) {
            for (i, x) in b {
                rv[*i] += coef * x;
            }
        }
        let br = l.bracket(&v[0], &rv);
        prop_assert!(r.contains(&sparse_from_dense(&br)));
    }
}

// ---------- graded algebras and the curvature module ----------

fn graded() -> &'static [(GradedSU, CurvatureModule<Rat>)] {
    static G: OnceLock<Vec<(GradedSU, CurvatureModule<Rat>)>> = OnceLock::new();
    G.get_or_init(|| {
        [(1, 3), (2, 2), (1, 4), (2, 3), (1, 5), (3, 3)]
            .into_iter()
            .map(|(p, q)| {
                let g = graded_su(p, q).unwrap();
                let m = curvature_module(&g);
                (g, m)
            })
            .collect()
    })
}

fn sparse_random(len: usize, max_terms: usize) -> impl Strategy<Value = SparseVec<Rat>> {
    prop::collection::btree_map(0..len, -3i64..=3, 1..=max_terms)
        .prop_map(|m| m.into_iter().filter(|(_, c)| *c != 0).map(|(i, c)| (i, rat(c))).collect())
}

fn graded_case() -> impl Strategy<Value = (usize, SparseVec<Rat>, SparseVec<Rat>, SparseVec<Rat>)> {
    (0..6usize).prop_flat_map(|k| {
        let (g, m) = &graded()[k];
        let z = g.range(0).len();
        (Just(k), sparse_random(z, 4), sparse_random(z, 4), sparse_random(m.dim(), 5))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn brackets_respect_the_grading(k in 0..6usize, a in any::<u16>(), b in any::<u16>()) {
        let (g, _) = &graded()[k];
        let (a, b) = (a as usize % g.dim(), b as usize % g.dim());
        let d = g.degree(a) + g.degree(b);
        for (i, _) in g.structure(a, b) {
            prop_assert_eq!(g.degree(*i), d);
        }
        if d.abs() > 2 {
            prop_assert!(g.structure(a, b).is_empty());
        }
    }

    #[test]
    fn curvature_module_is_a_representation((k, x, y, w) in graded_case()) {
        let (g, m) = &graded()[k];
        let xy = g.to_g0(&g.bracket(&g.from_g0(&x), &g.from_g0(&y)));
        let lhs = m.act(&xy, &w);
        let a = m.act(&x, &m.act(&y, &w));
        let b = m.act(&y, &m.act(&x, &w));
        let rhs = cr_symmetry::linalg::axpy(&a, &rat(-1), &b);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn annihilators_are_subalgebras((k, _x, _y, w) in graded_case()) {
        let (g, m) = &graded()[k];
        let ann = annihilator(m, &w);
        prop_assert!(g.is_g0_subalgebra(&ann));
        for x in ann.basis() {
            prop_assert!(m.act(x, &w).is_empty());
        }
    }
}

// ---------- bounds, words, command line ----------

proptest! {
    #![proptest_config(config())]

    #[test]
    fn bound_arithmetic(n in 2usize..=8, k_seed in any::<u8>()) {
        let k = k_seed as usize % (n / 2 + 1);
        let b = bounds(n, k).unwrap();
        let d = contact_grading_dims(n);
        prop_assert_eq!(d.iter().sum::<usize>(), b.max_dim);
        prop_assert_eq!(b.max_dim, (n + 2) * (n + 2) - 1);
        prop_assert_eq!(b.submax_dim, if k == 0 { n * n + 3 } else { n * n + 4 });
        prop_assert_eq!(b.universal_bound, Some(n * n + 4));
        prop_assert!(b.submax_dim <= n * n + 4);
        prop_assert_eq!(b.bound_from_grading, b.annihilator_bound.map(|a| 1 + 2 * n + a));
        prop_assert_eq!(b.bound_from_grading, Some(b.submax_dim));
        prop_assert_eq!(b.stability_group_note, d[2] + d[3] + d[4]);
    }

    #[test]
    fn diagram_involution_pairs_words(l in 3usize..=8) {
        let comps = hasse_weight2(l).unwrap();
        prop_assert_eq!(comps.len(), 3);
        for c in &comps {
            match c.conjugate_partner {
                Some(p) => {
                    let partner = comps.iter().find(|x| x.word == p).unwrap();
                    prop_assert_eq!(partner.conjugate_partner, Some(c.word));
                    let mut rev = c.weight.clone();
                    rev.reverse();
                    prop_assert_eq!(&partner.weight, &rev);
                }
                None => {
                    let mut rev = c.weight.clone();
                    rev.reverse();
                    prop_assert_eq!(&c.weight, &rev);
                }
            }
        }
        let real = real_components(&comps);
        prop_assert_eq!(real.len(), 2);
        prop_assert_eq!(real.iter().map(Vec::len).sum::<usize>(), 3);
    }

    #[test]
    fn malformed_integers_are_usage_errors(junk in "[a-z!@#]{1,6}|-[0-9]{1,3}|[0-9]{1,3}\\.[0-9]") {
        for cmd in ["bounds", "satake"] {
            let (code, r) = run(&[cmd, "--n", junk.as_str(), "--k", "0"]);
            prop_assert_eq!(code, 2);
            prop_assert_eq!(r.result["kind"].as_str(), Some("usage"));
        }
    }

    #[test]
    fn malformed_signs_are_usage_errors(eps in "[+-]{0,2}[a-z*/0-9][+-]{0,2}") {
        let (code, _) = run(&["verify", "--family", "indefinite", "--n", "4", "--eps", eps.as_str()]);
        prop_assert_eq!(code, 2);
    }

    #[test]
    fn out_of_range_is_a_domain_error(n in 9usize..10_000, k in 0usize..10_000) {
        let (code, r) = run(&["satake", "--n", "2", "--k", &(n + k).to_string()]);
        prop_assert_eq!(code, 1);
        prop_assert_eq!(r.result["kind"].as_str(), Some("domain"));
        let (code, _) = run(&["bounds", "--n", "0", "--k", "0"]);
        prop_assert_eq!(code, 1);
    }

    #[test]
    fn unknown_commands_are_usage_errors(cmd in "[a-z]{3,10}") {
        prop_assume!(!["verify", "solve", "structure", "parabolic", "prolong", "invariants", "kostant", "satake", "bounds", "help"].contains(&cmd.as_str()));
        prop_assert_eq!(run(&[cmd.as_str()]).0, 2);
    }
}
