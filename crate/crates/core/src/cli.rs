//! The `crsym` command line: argument parsing and JSON reports.
//!
//! Every invocation produces one [`Report`]. Exit codes: 0 on success, 1 when
//! a computation rejects its input, 2 on a malformed command line.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::fields::{
    builtin_symmetries, close_and_structure, levi_candidate, solve_symmetries, verify_tangency, FieldBasis,
};
use crate::hypersurface::{parse_signs, signs_text, Family, HypersurfaceModel, Sign};
use crate::kostant::{
    bounds, hasse_weight2, lowest_weight_vectors, real_components, satake, symplectic_check, Diagram,
};
use crate::liestruct::{fingerprint, fingerprint_match, killing_form, levi_check, radical_and_series, reference_algebra};
use crate::linalg::{SparseVec, Subspace};
use crate::matrix::Mat;
use crate::parabolic::{
    annihilator, curvature_module, graded_sl, graded_su, sp_embedding, sparse_to_json, subspace_from_json,
    subspace_to_json, tanaka_prolongation,
};
use crate::scalar::{Field, Gauss, Rat};

pub const TOOL: &str = "crsym";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub params: Value,
    pub status: Status,
    pub result: Value,
    pub certificate: Value,
    pub timing_ms: u64,
}

#[derive(Debug, Parser)]
#[command(name = "crsym", version, about = "Exact symmetry computations for CR hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check that catalog fields are tangent to a model.
    Verify(VerifyArgs),
    /// Solve for all polynomial symmetries up to a degree.
    Solve(SolveArgs),
    /// Closure, radical, series and Levi check of a catalog.
    Structure(ModelArgs),
    /// Signature of the Levi form at the origin.
    LeviForm(SolveModelArgs),
    /// Contact grading of su(p, q).
    Parabolic(PqArgs),
    /// Tanaka prolongation of (g-, a0).
    Prolong(ProlongArgs),
    /// Invariant vectors of a subalgebra of g0 in the curvature module.
    Invariants(InvariantArgs),
    /// Weight-2 Hasse words, marks and components.
    Kostant(KostantArgs),
    /// Satake diagram of su(k + 1, n - k + 1).
    Satake(NkArgs),
    /// Dimension bounds for CR dimension n and signature index k.
    Bounds(NkArgs),
}

#[derive(Debug, Args, Serialize)]
struct ModelArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "model")]
    family: Option<String>,
    #[arg(long, required_unless_present = "model")]
    n: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long, requires = "fields", conflicts_with = "family")]
    model: Option<PathBuf>,
    #[arg(long, requires = "model")]
    fields: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct SolveModelArgs {
    #[arg(long, required_unless_present = "model", conflicts_with = "model")]
    family: Option<String>,
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, required_unless_present = "model")]
    n: Option<usize>,
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Debug, Args, Serialize)]
struct SolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    model: SolveModelArgs,
    #[arg(long)]
    degree: u32,
}

#[derive(Debug, Args, Serialize)]
struct PqArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
}

#[derive(Debug, Args, Serialize)]
struct ProlongArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    /// `full`, `zero`, `lowest`, or a JSON file with a subspace of g0.
    #[arg(long)]
    a0: String,
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
}

#[derive(Debug, Args, Serialize)]
struct InvariantArgs {
    /// `sp2` (needs n = 4) or `sp` (any even n).
    #[arg(long)]
    check: String,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args, Serialize)]
struct KostantArgs {
    #[arg(long)]
    n: usize,
    /// Also compute lowest weight vectors in the complexified module.
    #[arg(long)]
    vectors: bool,
}

#[derive(Debug, Args, Serialize)]
struct NkArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

enum Failure {
    Usage(String),
    Domain(String),
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

struct Outcome {
    result: Value,
    certificate: Value,
}

type Run = Result<Outcome, Failure>;

/// Runs one command; `args` excludes the program name.
pub fn run<S: AsRef<str>>(args: &[S]) -> (i32, Report) {
    let start = Instant::now();
    let argv = std::iter::once(TOOL.to_string()).chain(args.iter().map(|a| a.as_ref().to_string()));
    let command = args.first().map(|a| a.as_ref().to_string()).unwrap_or_default();
    let (params, outcome) = match Cli::try_parse_from(argv) {
        Ok(cli) => dispatch(cli.cmd),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (Value::Null, Ok(Outcome { result: json!({ "help": text }), certificate: Value::Null }))
                }
                _ => (Value::Null, Err(Failure::Usage(text))),
            }
        }
    };
    let (code, status, result, certificate) = match outcome {
        Ok(o) => (0, Status::Ok, o.result, o.certificate),
        Err(Failure::Domain(m)) => (1, Status::Error, json!({ "kind": "domain", "message": m }), Value::Null),
        Err(Failure::Usage(m)) => (2, Status::Error, json!({ "kind": "usage", "message": m }), Value::Null),
    };
    let report = Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command,
        params,
        status,
        result,
        certificate,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    (code, report)
}

fn dispatch(cmd: Cmd) -> (Value, Run) {
    fn go<A: Serialize>(a: &A, f: impl FnOnce(&A) -> Run) -> (Value, Run) {
        (serde_json::to_value(a).unwrap_or(Value::Null), f(a))
    }
    match cmd {
        Cmd::Verify(a) => go(&a, verify),
        Cmd::Solve(a) => go(&a, solve),
        Cmd::Structure(a) => go(&a, structure),
        Cmd::LeviForm(a) => go(&a, levi_form),
        Cmd::Parabolic(a) => go(&a, parabolic),
        Cmd::Prolong(a) => go(&a, prolong),
        Cmd::Invariants(a) => go(&a, invariants),
        Cmd::Kostant(a) => go(&a, kostant),
        Cmd::Satake(a) => go(&a, satake_cmd),
        Cmd::Bounds(a) => go(&a, bounds_cmd),
    }
}

fn parse_family(s: &str) -> Result<Family, Failure> {
    s.parse().map_err(|e: String| Failure::Usage(format!("--family: {e}")))
}

/// Default sign lists: all `+`.
fn signs_for(family: Family, n: usize, eps: Option<&str>) -> Result<Vec<Sign>, Failure> {
    match eps {
        Some(s) => parse_signs(s).map_err(|e| Failure::Usage(format!("--eps: {e}"))),
        None => Ok(match family {
            Family::IndefiniteSubmax => vec![Sign::Plus; n.saturating_sub(2)],
            Family::FlatQuadric => vec![Sign::Plus; n],
            _ => Vec::new(),
        }),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn builtin(family: &str, n: usize, eps: Option<&str>) -> Result<(HypersurfaceModel, Vec<Sign>), Failure> {
    let family = parse_family(family)?;
    let eps = signs_for(family, n, eps)?;
    let model = HypersurfaceModel::builtin(family, n, &eps).map_err(domain)?;
    Ok((model, eps))
}

fn load_model(a: &SolveModelArgs) -> Result<HypersurfaceModel, Failure> {
    match (&a.model, &a.family) {
        (Some(path), _) => {
            let model = HypersurfaceModel::from_model_file(&read(path)?).map_err(domain)?;
            if let Some(n) = a.n {
                if n != model.n() {
                    return Err(Failure::Usage(format!("--n {n} disagrees with the model file (n = {})", model.n())));
                }
            }
            Ok(model)
        }
        (None, Some(f)) => Ok(builtin(f, a.n.unwrap_or(0), a.eps.as_deref())?.0),
        (None, None) => Err(Failure::Usage("one of --family or --model is required".into())),
    }
}

fn model_json(m: &HypersurfaceModel) -> Value {
    json!({
        "family": m.family().to_string(),
        "n": m.n(),
        "eps": signs_text(m.eps()),
        "potential": m.potential_text(),
    })
}

fn basis_json(b: &FieldBasis) -> Value {
    Value::Array(b.iter().map(|(l, v)| json!({ "label": l, "field": v.to_text() })).collect())
}

fn verify(a: &VerifyArgs) -> Run {
    let (model, basis) = match (&a.model, &a.fields) {
        (Some(m), Some(f)) => {
            let model = HypersurfaceModel::from_model_file(&read(m)?).map_err(domain)?;
            let basis = FieldBasis::from_file(&read(f)?).map_err(domain)?;
            (model, basis)
        }
        _ => {
            let fam = a.family.as_deref().ok_or_else(|| Failure::Usage("--family is required".into()))?;
            let n = a.n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
            let (model, eps) = builtin(fam, n, a.eps.as_deref())?;
            let basis = builtin_symmetries(model.family(), n, &eps).map_err(domain)?;
            (model, basis)
        }
    };
    let reports = verify_tangency(&model, &basis).map_err(domain)?;
    let all = reports.iter().all(|r| r.tangent);
    Ok(Outcome {
        result: json!({
            "model": model_json(&model),
            "count": reports.len(),
            "allTangent": all,
            "fields": reports.iter().map(|r| json!({ "label": r.label, "tangent": r.tangent, "residual": r.residual })).collect::<Vec<_>>(),
        }),
        certificate: json!({ "potential": model.potential_text(), "fields": basis_json(&basis) }),
    })
}

fn solve(a: &SolveArgs) -> Run {
    let model = load_model(&a.model)?;
    let sol = solve_symmetries(&model, a.degree).map_err(domain)?;
    Ok(Outcome {
        result: json!({
            "model": model_json(&model),
            "degree": sol.degree,
            "dimension": sol.dimension,
            "unknowns": sol.unknowns,
            "equations": sol.equations,
        }),
        certificate: json!({
            "potential": model.potential_text(),
            "basis": sol.basis.iter().map(|v| v.to_text()).collect::<Vec<_>>(),
        }),
    })
}

fn structure_constants(l: &crate::liestruct::RealLieAlgebra) -> Value {
    let mut out = Vec::new();
    for x in 0..l.dim() {
        for y in (x + 1)..l.dim() {
            for (z, c) in l.structure(x, y) {
                out.push(json!([x, y, z, c.to_string()]));
            }
        }
    }
    Value::Array(out)
}

fn structure(a: &ModelArgs) -> Run {
    let (model, eps) = builtin(&a.family, a.n, a.eps.as_deref())?;
    let family = model.family();
    let basis = builtin_symmetries(family, a.n, &eps).map_err(domain)?;
    let l = close_and_structure(&basis).map_err(domain)?;
    let summary = radical_and_series(&l);
    let (_, killing) = killing_form(&l);
    let levi = match levi_candidate(family, &basis, &eps) {
        Ok((cand, reference)) => {
            let verdict = levi_check(&l, &cand).map_err(domain)?;
            let sub = l.restrict(&cand).map_err(domain)?;
            let refalg = reference_algebra(reference);
            Some((
                json!({
                    "reference": reference.to_string(),
                    "candidateDim": cand.dim(),
                    "passed": verdict.passed,
                    "subalgebra": verdict.subalgebra,
                    "semisimple": verdict.semisimple,
                    "complement": verdict.complement,
                    "failure": verdict.failure,
                    "fingerprintMatch": fingerprint_match(&sub, &refalg),
                    "candidateFingerprint": fingerprint(&sub),
                    "referenceFingerprint": fingerprint(&refalg),
                }),
                subspace_to_json(&cand),
            ))
        }
        Err(_) => None,
    };
    let (levi_result, levi_cert) = match levi {
        Some((r, c)) => (r, c),
        None => (Value::Null, Value::Null),
    };
    Ok(Outcome {
        result: json!({
            "model": model_json(&model),
            "dim": l.dim(),
            "jacobi": l.jacobi_violation().is_none(),
            "killingSignature": killing,
            "radicalDim": summary.radical.dim(),
            "derivedDims": summary.derived_dims,
            "lowerCentralDims": summary.lower_central_dims,
            "centerDim": summary.center_dim,
            "radicalDerivedDims": summary.radical_derived_dims,
            "radicalDerivedLength": summary.radical_derived_length(),
            "fingerprint": fingerprint(&l),
            "levi": levi_result,
        }),
        certificate: json!({
            "labels": l.labels(),
            "fields": basis_json(&basis),
            "structureConstants": structure_constants(&l),
            "radical": subspace_to_json(&summary.radical),
            "leviCandidate": levi_cert,
        }),
    })
}

fn levi_form(a: &SolveModelArgs) -> Run {
    let model = load_model(a)?;
    let s = model.levi_signature();
    Ok(Outcome {
        result: json!({
            "model": model_json(&model),
            "pos": s.pos,
            "neg": s.neg,
            "null": s.null,
            "definite": s.is_definite(),
            "normalizedIndex": s.index(),
        }),
        certificate: json!({ "potential": model.potential_text() }),
    })
}

fn matrix_json(m: &Mat<Gauss>) -> Value {
    Value::Array(m.entries().map(|(i, j, x)| json!([i, j, x.to_string()])).collect())
}

fn parabolic(a: &PqArgs) -> Run {
    let g = graded_su(a.p, a.q).map_err(domain)?;
    let d = g.dims();
    let by_degree: Vec<Value> = (-2..=2)
        .map(|k| json!({ "degree": k, "labels": g.range(k).map(|i| g.labels()[i].clone()).collect::<Vec<_>>() }))
        .collect();
    let diag: Vec<String> = (0..g.n() + 2).map(|i| g.matrices()[g.grading_element()].get(i, i).to_string()).collect();
    Ok(Outcome {
        result: json!({
            "p": a.p,
            "q": a.q,
            "n": g.n(),
            "dims": d,
            "total": g.dim(),
            "gradingElement": { "label": g.labels()[g.grading_element()], "diagonal": diag },
            "contactNondegenerate": contact_nondegenerate(&g),
            "gradingConsistent": g.grading_violation().is_none(),
            "basis": by_degree,
        }),
        certificate: json!({
            "form": matrix_json(&g.form()),
            "basis": g.labels().iter().zip(g.matrices()).map(|(l, m)| json!({ "label": l, "entries": matrix_json(m) })).collect::<Vec<_>>(),
        }),
    })
}

/// `[g-1, g-1] = g-2`.
fn contact_nondegenerate<F: Field>(g: &crate::parabolic::GradedAlgebra<F>) -> bool {
    let r = g.range(-1);
    r.clone().any(|x| r.clone().any(|y| !g.structure(x, y).is_empty()))
}

fn lowest_annihilator(p: usize, q: usize) -> Result<(Subspace<Gauss>, SparseVec<Gauss>, crate::parabolic::ComplexGraded), Failure> {
    let c = graded_sl(p, q).map_err(domain)?;
    let l = c.n() + 1;
    let comp = hasse_weight2(l)
        .map_err(domain)?
        .into_iter()
        .find(|x| x.word == (1, l))
        .ok_or_else(|| Failure::Domain("no (1, l) component".into()))?;
    let m = curvature_module(&c);
    let lw = lowest_weight_vectors(&c, &m, &comp).map_err(domain)?;
    let v = lw.vectors[0].clone();
    Ok((annihilator(&m, &v), v, c))
}

fn prolong(a: &ProlongArgs) -> Run {
    let g = graded_su(a.p, a.q).map_err(domain)?;
    let z = g.range(0).len();
    let (res, a0_dim, a0_json, vector) = match a.a0.as_str() {
        "full" => (tanaka_prolongation(&g, &Subspace::whole(z), a.max_degree), z, subspace_to_json(&Subspace::<Rat>::whole(z)), Value::Null),
        "zero" => (tanaka_prolongation(&g, &Subspace::zero(z), a.max_degree), 0, subspace_to_json(&Subspace::<Rat>::zero(z)), Value::Null),
        "lowest" => {
            let (ann, v, c) = lowest_annihilator(a.p, a.q)?;
            (tanaka_prolongation(&c, &ann, a.max_degree), ann.dim(), subspace_to_json(&ann), sparse_to_json(&v))
        }
        path => {
            let text = read(&PathBuf::from(path))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{path}: {e}")))?;
            let sub = subspace_from_json(&v).map_err(domain)?;
            if sub.ambient() != z {
                return Err(Failure::Domain(format!("{path}: ambient dimension {} is not dim g0 = {z}", sub.ambient())));
            }
            let js = subspace_to_json(&sub);
            (tanaka_prolongation(&g, &sub, a.max_degree), sub.dim(), js, Value::Null)
        }
    };
    let res = res.map_err(domain)?;
    Ok(Outcome {
        result: json!({
            "p": a.p,
            "q": a.q,
            "a0": a.a0,
            "field": res.field,
            "a0Dim": a0_dim,
            "dims": res.dims,
            "realized": res.realized,
            "complete": res.complete(),
        }),
        certificate: json!({ "a0": a0_json, "curvatureVector": vector }),
    })
}

fn invariants(a: &InvariantArgs) -> Run {
    let m = match a.check.as_str() {
        "sp2" if a.n == 4 => 2,
        "sp2" => return Err(Failure::Domain(format!("sp2 lives in u(4); got n = {}", a.n))),
        "sp" if a.n.is_multiple_of(2) && a.n > 0 => a.n / 2,
        "sp" => return Err(Failure::Domain(format!("sp(m) needs n = 2m; got n = {}", a.n))),
        other => return Err(Failure::Usage(format!("--check: unknown check `{other}` (expected sp2 or sp)"))),
    };
    let r = symplectic_check(m).map_err(domain)?;
    let g = graded_su(1, a.n + 1).map_err(domain)?;
    let embeddings: Vec<Value> = [false, true]
        .into_iter()
        .map(|tw| sp_embedding(m, &g, tw).map(|s| subspace_to_json(&s)).map_err(domain))
        .collect::<Result<_, _>>()?;
    Ok(Outcome {
        result: json!({
            "n": r.n,
            "subalgebra": format!("sp({m})"),
            "subalgebraDim": r.subalgebra_dim,
            "moduleDim": r.module_dim,
            "moduleField": "real",
            "moduleInvariants": r.module_invariants,
            "componentDim": r.component_dim,
            "componentField": "complex",
            "componentInvariants": r.component_invariants,
        }),
        certificate: json!({ "embeddings": embeddings }),
    })
}

fn kostant(a: &KostantArgs) -> Run {
    let l = a.n + 1;
    let comps = hasse_weight2(l).map_err(domain)?;
    let self_paired = comps.iter().find(|c| c.conjugate_partner.is_none()).cloned();
    let diagram = match (&self_paired, satake(0, a.n)) {
        (Some(c), Ok(s)) => Value::String(Diagram { satake: s, marks: Some(c.weight.clone()) }.to_string()),
        _ => Value::Null,
    };
    let mut vectors = Value::Null;
    if a.vectors {
        let c = graded_sl(1, a.n + 1).map_err(domain)?;
        let m = curvature_module(&c);
        let mut out = Vec::new();
        for comp in &comps {
            // only the homogeneity 2 components sit inside the curvature module
            if comp.homogeneity != 2 {
                out.push(json!({ "word": comp.word, "inModule": false }));
                continue;
            }
            let lw = lowest_weight_vectors(&c, &m, comp).map_err(domain)?;
            out.push(json!({
                "word": comp.word,
                "inModule": true,
                "lines": lw.vectors.len(),
                "weight": lw.weight,
                "real": lw.real,
                "annihilatorDim": annihilator(&m, &lw.vectors[0]).dim(),
                "field": "complex",
                "vectors": lw.vectors.iter().map(sparse_to_json).collect::<Vec<_>>(),
            }));
        }
        vectors = Value::Array(out);
    }
    Ok(Outcome {
        result: json!({
            "n": a.n,
            "rank": l,
            "components": comps,
            "realComponents": real_components(&comps),
            "diagram": diagram,
            "lowestWeightVectors": vectors,
        }),
        certificate: Value::Null,
    })
}

fn satake_cmd(a: &NkArgs) -> Run {
    let s = satake(a.k, a.n).map_err(domain)?;
    let text = Diagram { satake: s.clone(), marks: None }.to_string();
    Ok(Outcome {
        result: json!({ "n": a.n, "k": a.k, "realForm": format!("su({},{})", a.k + 1, a.n - a.k + 1), "satake": s, "diagram": text }),
        certificate: Value::Null,
    })
}

fn bounds_cmd(a: &NkArgs) -> Run {
    let b = bounds(a.n, a.k).map_err(domain)?;
    let mut v = serde_json::to_value(&b).unwrap_or(Value::Null);
    v["max"] = json!(b.max_dim);
    v["submax"] = json!(b.submax_dim);
    Ok(Outcome { result: v, certificate: Value::Null })
}
