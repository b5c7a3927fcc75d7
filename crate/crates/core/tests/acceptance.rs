//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria whose expected value is not what the mathematics gives print
//! FAIL; the process still succeeds as long as every measured value equals
//! the value recorded below, so a regression in either direction is caught.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use cr_symmetry::cli::run;
use cr_symmetry::fields::{builtin_symmetries, close_and_structure, levi_candidate, solve_symmetries, verify_tangency};
use cr_symmetry::hypersurface::{Family, HypersurfaceModel, Sign};
use cr_symmetry::kostant::{annihilator_dim, bounds, hasse_weight2, lowest_weight_vectors, real_components, symplectic_check};
use cr_symmetry::liestruct::{fingerprint_match, killing_matrix, levi_check, radical_and_series, reference_algebra};
use cr_symmetry::linalg::{sparse_from_dense, Subspace};
use cr_symmetry::parabolic::{annihilator, contact_grading_dims, curvature_module, graded_sl, graded_su, tanaka_prolongation};
use cr_symmetry::scalar::{rat, Rat};
use cr_symmetry::symcore::{parse_expr, Var, VarTable};

// exact arithmetic: every comparison is integer or rational equality
const TOLERANCE: i64 = 0;
const BUDGET_TANGENCY: Duration = Duration::from_secs(30);
const BUDGET_SOLVE_INSTANCE: Duration = Duration::from_secs(120);
const BUDGET_STRUCTURE: Duration = Duration::from_secs(60);
const BUDGET_PROLONG_EACH: Duration = Duration::from_secs(60);
const BUDGET_SP2: Duration = Duration::from_secs(120);
const BUDGET_KOSTANT: Duration = Duration::from_secs(60);
const BUDGET_BOUNDS: Duration = Duration::from_secs(1);
const BUDGET_PROPERTIES: Duration = Duration::from_secs(60);
const RANDOM_CASES: u32 = 1000;

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
    /// Whether the measured values are the ones this crate stands behind.
    as_recorded: bool,
}

fn eps_patterns(len: usize) -> Vec<Vec<Sign>> {
    (0..1usize << len)
        .map(|m| (0..len).map(|k| if m >> k & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect())
        .collect()
}

fn indefinite_eps(n: usize) -> Vec<Sign> {
    vec![Sign::Plus; n - 2]
}

fn tangency() -> Line {
    let t = Instant::now();
    let mut cases: Vec<(Family, usize, Vec<Sign>)> = Vec::new();
    for n in 2..=5 {
        if n == 4 {
            cases.extend(eps_patterns(2).into_iter().map(|e| (Family::IndefiniteSubmax, 4, e)));
        } else {
            cases.push((Family::IndefiniteSubmax, n, indefinite_eps(n)));
        }
        cases.push((Family::DefiniteSubmax, n, vec![]));
    }
    let mut fields = 0;
    let mut bad = Vec::new();
    for (f, n, eps) in &cases {
        let model = HypersurfaceModel::builtin(*f, *n, eps).unwrap();
        let basis = builtin_symmetries(*f, *n, eps).unwrap();
        for r in verify_tangency(&model, &basis).unwrap() {
            fields += 1;
            if !r.tangent {
                bad.push(format!("{f} n={n} {}", r.label));
            }
        }
    }
    let el = t.elapsed();
    let pass = bad.is_empty() && el < BUDGET_TANGENCY;
    Line {
        id: 1,
        name: "tangency suite",
        pass,
        detail: format!("{} models, {fields} fields, nonzero residuals {bad:?}, {el:.1?}", cases.len()),
        as_recorded: pass,
    }
}

fn rediscovery() -> Line {
    let cases: [(Family, usize, Vec<Sign>, usize, std::ops::RangeInclusive<u32>); 6] = [
        (Family::IndefiniteSubmax, 2, vec![], 8, 2..=4),
        (Family::IndefiniteSubmax, 3, vec![Sign::Plus], 13, 2..=4),
        (Family::DefiniteSubmax, 2, vec![], 7, 2..=4),
        (Family::DefiniteSubmax, 3, vec![], 12, 2..=4),
        (Family::FlatQuadric, 2, vec![Sign::Plus; 2], 15, 2..=3),
        (Family::FlatQuadric, 3, vec![Sign::Plus; 3], 24, 2..=3),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    let mut slowest = Duration::ZERO;
    for (f, n, eps, want, degrees) in cases {
        let model = HypersurfaceModel::builtin(f, n, &eps).unwrap();
        let mut dims = Vec::new();
        for d in degrees {
            let t = Instant::now();
            dims.push(solve_symmetries(&model, d).unwrap().dimension);
            if d == 3 {
                slowest = slowest.max(t.elapsed());
            }
        }
        ok &= dims.iter().all(|x| x.abs_diff(want) as i64 <= TOLERANCE);
        parts.push(format!("{f} n={n} {dims:?}"));
    }
    let pass = ok && slowest < BUDGET_SOLVE_INSTANCE;
    Line {
        id: 2,
        name: "dimension rediscovery",
        pass,
        detail: format!("{}; slowest degree-3 solve {slowest:.1?}", parts.join(", ")),
        as_recorded: pass,
    }
}

fn structure() -> Line {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut all_levi = true;
    let mut radicals_ok = true;
    let mut measured = Vec::new();
    let mut definite2_length = None;
    for (f, want) in [(Family::IndefiniteSubmax, 4usize), (Family::DefiniteSubmax, 2)] {
        for n in 2..=4 {
            let eps = if f == Family::IndefiniteSubmax { indefinite_eps(n) } else { vec![] };
            let basis = builtin_symmetries(f, n, &eps).unwrap();
            let l = close_and_structure(&basis).unwrap();
            let s = radical_and_series(&l);
            let expected = if want == 4 { 4 * n + 1 } else { 2 * n };
            radicals_ok &= s.radical.dim() == expected;
            measured.push(s.radical.dim());
            if f == Family::DefiniteSubmax && n == 2 {
                definite2_length = s.radical_derived_length();
            }
            let (cand, reference) = levi_candidate(f, &basis, &eps).unwrap();
            let v = levi_check(&l, &cand).unwrap();
            let fp = fingerprint_match(&l.restrict(&cand).unwrap(), &reference_algebra(reference));
            all_levi &= v.passed && fp;
            parts.push(format!("{f} n={n}: dim {} radical {} (want {expected}) levi {reference} {}", l.dim(), s.radical.dim(), v.passed && fp));
        }
    }
    let el = t.elapsed();
    let pass = radicals_ok && all_levi && definite2_length == Some(3) && el < BUDGET_STRUCTURE;
    // the indefinite n=2 algebra has dimension 8, so a radical of 4n+1 = 9 cannot exist
    let recorded = measured == [8, 13, 17, 4, 6, 8] && all_levi && definite2_length == Some(3) && el < BUDGET_STRUCTURE;
    Line {
        id: 3,
        name: "structure suite",
        pass,
        detail: format!(
            "{}; definite n=2 radical derived length {definite2_length:?}; {el:.1?}{}",
            parts.join("; "),
            if pass { "" } else { "; indefinite n=2 algebra is 8-dimensional, radical 4n+1 = 9 is impossible" }
        ),
        as_recorded: recorded,
    }
}

fn parabolic() -> Line {
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut parts = Vec::new();
    for n in 2..=6 {
        let g = graded_su(1, n + 1).unwrap();
        let d = g.dims();
        ok &= d == [1, 2 * n, n * n + 1, 2 * n, 1] && d.iter().sum::<usize>() == n * n + 4 * n + 3;
        ok &= d == contact_grading_dims(n);
        let z = d[2];
        let t = Instant::now();
        let full = tanaka_prolongation(&g, &Subspace::whole(z), 3).unwrap();
        slowest = slowest.max(t.elapsed());
        let t = Instant::now();
        let zero = tanaka_prolongation(&g, &Subspace::zero(z), 3).unwrap();
        slowest = slowest.max(t.elapsed());
        ok &= full.dims == [2 * n, 1, 0] && full.complete() && zero.total() == 0;
        parts.push(format!("n={n} {d:?} full {:?}", full.dims));
    }
    for n in 2..=3 {
        let t = Instant::now();
        let c = graded_sl(1, n + 1).unwrap();
        let m = curvature_module(&c);
        let comp = hasse_weight2(n + 1).unwrap().into_iter().find(|x| x.word == (1, n + 1)).unwrap();
        let lw = lowest_weight_vectors(&c, &m, &comp).unwrap();
        let ann = annihilator(&m, &lw.vectors[0]);
        let p = tanaka_prolongation(&c, &ann, 3).unwrap();
        slowest = slowest.max(t.elapsed());
        ok &= p.total() == 0;
        parts.push(format!("n={n} lowest-weight annihilator {} -> {:?}", ann.dim(), p.dims));
    }
    let pass = ok && slowest < BUDGET_PROLONG_EACH;
    Line { id: 4, name: "parabolic suite", pass, detail: format!("{}; slowest {slowest:.1?}", parts.join(", ")), as_recorded: pass }
}

fn sp2() -> Line {
    let t = Instant::now();
    let r = symplectic_check(2).unwrap();
    let el = t.elapsed();
    let pass = r.module_invariants == [0, 0] && el < BUDGET_SP2;
    // Lambda^2 R^8 = 10 + 3*1 + 3*5 and g0 = 10 + 5 + 1 + 1 under sp(2), so
    // the whole module carries 6 + 1 + 3 = 10 invariants; the curvature
    // component itself carries none
    let recorded = r.module_invariants == [10, 10] && r.component_dim == 84 && r.component_invariants == [0, 0] && el < BUDGET_SP2;
    Line {
        id: 5,
        name: "sp(2) invariants",
        pass,
        detail: format!(
            "module dim {}, invariants {:?} (two embeddings); (1,l) component dim {} (complex), invariants {:?}; {el:.1?}",
            r.module_dim, r.module_invariants, r.component_dim, r.component_invariants
        ),
        as_recorded: recorded,
    }
}

fn kostant() -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 3..=5 {
        let l = n + 1;
        let comps = hasse_weight2(l).unwrap();
        let real = real_components(&comps);
        ok &= comps.len() == 3 && real.len() == 2;
        ok &= real.contains(&vec![(1, 2), (l, l - 1)]) && real.contains(&vec![(1, l)]);
        let mid = comps.iter().find(|c| c.word == (1, l)).unwrap();
        let mut want = vec![0; l];
        want[0] = -3;
        want[1] = 2;
        want[l - 2] = 2;
        want[l - 1] = -3;
        ok &= mid.weight == want;
        parts.push(format!("n={n} marks {:?}", mid.weight));
    }
    for n in 3..=4 {
        let c = graded_sl(1, n + 1).unwrap();
        let m = curvature_module(&c);
        let comp = hasse_weight2(n + 1).unwrap().into_iter().find(|x| x.word == (1, n + 1)).unwrap();
        let lw = lowest_weight_vectors(&c, &m, &comp).unwrap();
        let ann = annihilator_dim(&m, &lw.vectors[0]);
        ok &= lw.vectors.len() == 1 && !lw.real && ann == n * n - 2 * n + 3;
        parts.push(format!("n={n} lines {} real {} annihilator {ann}", lw.vectors.len(), lw.real));
    }
    let el = t.elapsed();
    let pass = ok && el < BUDGET_KOSTANT;
    Line { id: 6, name: "kostant suite", pass, detail: format!("{}; {el:.1?}", parts.join(", ")), as_recorded: pass }
}

fn bounds_table() -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut rows = 0;
    for n in 1..=8 {
        for k in 0..=n / 2 {
            let b = bounds(n, k).unwrap();
            rows += 1;
            ok &= b.max_dim == (n + 2) * (n + 2) - 1 && b.stability_group_note == n * n + 2 * n + 2;
            let want = match n {
                1 => 3,
                2 => [7, 8][k],
                _ => n * n + if k == 0 { 3 } else { 4 },
            };
            ok &= b.submax_dim == want;
        }
    }
    let el = t.elapsed();
    let pass = ok && el < BUDGET_BOUNDS;
    Line { id: 7, name: "bounds table", pass, detail: format!("{rows} (n,k) rows for n=1..8; {el:.1?}"), as_recorded: pass }
}

fn properties() -> Line {
    let t = Instant::now();
    let config = Config { cases: RANDOM_CASES, failure_persistence: None, ..Config::default() };
    let mut failures = Vec::new();

    let basis = builtin_symmetries(Family::IndefiniteSubmax, 3, &[Sign::Minus]).unwrap();
    let l = close_and_structure(&basis).unwrap();
    let d = l.dim();
    let f = basis.fields().to_vec();
    let r = TestRunner::new(config.clone()).run(&(0..d, 0..d, 0..d), |(a, b, c)| {
        let br = |x: &cr_symmetry::fields::HoloVectorField, y: &cr_symmetry::fields::HoloVectorField| x.bracket(y).unwrap();
        let s = br(&f[a], &br(&f[b], &f[c])).add(&br(&f[b], &br(&f[c], &f[a]))).add(&br(&f[c], &br(&f[a], &f[b])));
        prop_assert!(s.is_zero());
        Ok(())
    });
    if r.is_err() {
        failures.push("jacobi");
    }

    let atoms = vec!["z1", "conj(z1)", "z2", "conj(z2)", "i", "1/2", "log(1 + abs2(z1))"];
    let text = prop::collection::vec(prop::sample::select(atoms), 1..5).prop_map(|v| v.join("*"));
    let r = TestRunner::new(config.clone()).run(&(text.clone(), text), |(a, b)| {
        let mut vt = VarTable::new(2);
        let e = parse_expr(&format!("{a} + {b}"), &mut vt).unwrap();
        let g = parse_expr(&b, &mut vt).unwrap();
        prop_assert_eq!(e.bar(&vt).bar(&vt), e.clone());
        prop_assert_eq!(e.diff(Var::Z(1), &vt).bar(&vt), e.bar(&vt).diff(Var::W(1), &vt));
        let lhs = e.mul(&g, &vt).diff(Var::Z(1), &vt);
        let rhs = e.diff(Var::Z(1), &vt).mul(&g, &vt).add(&e.mul(&g.diff(Var::Z(1), &vt), &vt), &vt);
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
    if r.is_err() {
        failures.push("bar/diff");
    }

    let k = killing_matrix(&l);
    let radical = radical_and_series(&l).radical;
    let vecs = prop::collection::vec(prop::collection::vec(-3i64..=3, d), 3);
    let r = TestRunner::new(config).run(&vecs, |v| {
        let v: Vec<Vec<Rat>> = v.into_iter().map(|x| x.into_iter().map(rat).collect()).collect();
        let b = |x: &[Rat], y: &[Rat]| -> Rat {
            let mut t = rat(0);
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    t += xi * &k[i][j] * yj;
                }
            }
            t
        };
        prop_assert_eq!(b(&l.bracket(&v[0], &v[1]), &v[2]) + b(&v[1], &l.bracket(&v[0], &v[2])), rat(0));
        let mut rv = vec![rat(0); d];
        for (basis, c) in radical.basis().iter().zip(&v[1]) {
            for (i, x) in basis {
                rv[*i] += c * x;
            }
        }
        prop_assert!(radical.contains(&sparse_from_dense(&l.bracket(&v[0], &rv))));
        Ok(())
    });
    if r.is_err() {
        failures.push("killing/radical");
    }

    // golden report files: every snapshot still matches, timing excluded
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut golden = 0;
    for (file, args) in [
        ("bounds_2_0", vec!["bounds", "--n", "2", "--k", "0"]),
        ("solve_definite_2", vec!["solve", "--family", "definite", "--n", "2", "--degree", "3"]),
        ("verify_indefinite_3", vec!["verify", "--family", "indefinite", "--n", "3", "--eps", "+"]),
    ] {
        let want: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{file}.json"))).unwrap()).unwrap();
        let mut got = serde_json::to_value(run(&args).1).unwrap();
        got.as_object_mut().unwrap().remove("timingMs");
        if got == want {
            golden += 1;
        } else {
            failures.push("golden");
        }
    }
    let el = t.elapsed();
    let pass = failures.is_empty() && el < BUDGET_PROPERTIES;
    Line {
        id: 8,
        name: "property suites",
        pass,
        detail: format!("{RANDOM_CASES} cases per law, {golden} golden reports, failures {failures:?}; {el:.1?}"),
        as_recorded: pass,
    }
}

fn main() {
    let lines = [tangency(), rediscovery(), structure(), parabolic(), sp2(), kostant(), bounds_table(), properties()];
    let mut unexpected = Vec::new();
    for l in &lines {
        println!("criterion {} {:<22} {}  {}", l.id, l.name, if l.pass { "PASS" } else { "FAIL" }, l.detail);
        if !l.as_recorded {
            unexpected.push(l.id);
        }
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("acceptance: {passed}/{} pass", lines.len());
    if !unexpected.is_empty() {
        println!("measured values changed for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
