//! Holomorphic vector fields with polynomial coefficients, the built-in
//! symmetry catalogs and the degree-bounded symmetry solver.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::hypersurface::{Family, HypersurfaceModel, ModelError, Sign};
use crate::liestruct::{RealLieAlgebra, Reference, Subspace};
use crate::linalg::{par_map, Echelon, Insertion, SparseVec, SpanSolver};
use crate::scalar::{Gauss, Rat};
use crate::symcore::{parse_expr, Expr, Monomial, Poly, SymError, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("CR dimension n = {n} is out of range (need n >= {min})")]
    NOutOfRange { n: usize, min: usize },
    #[error("sign list has length {got}, expected {expected}")]
    EpsLength { expected: usize, got: usize },
    #[error("fields live in different dimensions ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("coefficient {index} is not a polynomial in z1..z{bound}")]
    NotHolomorphic { index: usize, bound: usize },
    #[error("field {index} ({label}) is a real combination of the previous ones")]
    NotIndependent { index: usize, label: String },
    #[error("[{a}, {b}] is not in the real span of the basis")]
    NotClosed { a: String, b: String, bracket: String },
    #[error("no built-in catalog for the {0} family")]
    NoCatalog(Family),
    #[error("field file line {line}: {msg}")]
    File { line: usize, msg: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `sum_j a_j d/dz_j` with `a_j` polynomial in `z_1..z_{n+1}`.
///
/// Coefficients are stored as [`Poly`] in roster indices, so `z_j` is
/// variable `j - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HoloVectorField {
    n: usize,
    coeffs: Vec<Poly>,
}

fn z(j: usize) -> Poly {
    Poly::var(j - 1)
}

impl HoloVectorField {
    pub fn new(n: usize, coeffs: Vec<Poly>) -> Result<Self, FieldError> {
        if coeffs.len() != n + 1 {
            return Err(FieldError::DimensionMismatch(n + 1, coeffs.len()));
        }
        for (k, a) in coeffs.iter().enumerate() {
            if a.var_span() > n + 1 {
                return Err(FieldError::NotHolomorphic { index: k + 1, bound: n + 1 });
            }
        }
        Ok(HoloVectorField { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        HoloVectorField { n, coeffs: vec![Poly::zero(); n + 1] }
    }

    /// `c * m * d/dz_{j+1}`.
    pub fn monomial(n: usize, j: usize, m: Monomial, c: Gauss) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[j] = Poly::term(c, m);
        v
    }

    fn from_parts(n: usize, parts: &[(usize, Poly)]) -> Self {
        let mut v = Self::zero(n);
        for (j, p) in parts {
            v.coeffs[j - 1] = v.coeffs[j - 1].add(p);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        HoloVectorField { n: self.n, coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect();
        HoloVectorField { n: self.n, coeffs }
    }

    pub fn scale(&self, c: &Gauss) -> Self {
        HoloVectorField { n: self.n, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Real combination `sum_k x_k V_k`.
    pub fn combination(n: usize, terms: &[(Rat, &HoloVectorField)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(n), |acc, (x, v)| acc.add(&v.scale(&Gauss::real(x.clone()))))
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.iter().map(Poly::degree).max().unwrap_or(0)
    }

    /// `[V, W]^k = sum_j V^j d_j W^k - W^j d_j V^k`.
    pub fn bracket(&self, o: &Self) -> Result<Self, FieldError> {
        if self.n != o.n {
            return Err(FieldError::DimensionMismatch(self.n, o.n));
        }
        let mut coeffs = vec![Poly::zero(); self.n + 1];
        for (k, out) in coeffs.iter_mut().enumerate() {
            for j in 0..=self.n {
                if !self.coeffs[j].is_zero() && o.coeffs[k].involves(j) {
                    *out = out.add(&self.coeffs[j].mul(&o.coeffs[k].diff(j)));
                }
                if !o.coeffs[j].is_zero() && self.coeffs[k].involves(j) {
                    *out = out.sub(&o.coeffs[j].mul(&self.coeffs[k].diff(j)));
                }
            }
        }
        Ok(HoloVectorField { n: self.n, coeffs })
    }

    /// Coefficients in the input grammar, separated by `" ; "`.
    pub fn to_text(&self) -> String {
        let vt = VarTable::new(self.n);
        self.coeffs
            .iter()
            .map(|a| Expr::from_poly(a.clone()).to_text(&vt).expect("polynomial"))
            .collect::<Vec<_>>()
            .join(" ; ")
    }

    /// Parses `a1 ; ... ; a(n+1)`.
    pub fn parse(n: usize, text: &str) -> Result<Self, FieldError> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != n + 1 {
            return Err(FieldError::DimensionMismatch(n + 1, parts.len()));
        }
        let mut vt = VarTable::new(n);
        let mut coeffs = Vec::with_capacity(n + 1);
        for (k, part) in parts.iter().enumerate() {
            let e = parse_expr(part, &mut vt)?;
            if !e.is_polynomial() || !vt.logs().is_empty() || e.numerator().var_span() > n + 1 {
                return Err(FieldError::NotHolomorphic { index: k + 1, bound: n + 1 });
            }
            coeffs.push(e.numerator().clone());
        }
        HoloVectorField::new(n, coeffs)
    }
}

impl fmt::Display for HoloVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Assigns real coordinates to `(coefficient index, monomial)` pairs: the
/// real part goes to column `2c`, the imaginary part to `2c + 1`.
#[derive(Debug, Default)]
struct RealFrame {
    columns: HashMap<(usize, Monomial), usize>,
}

impl RealFrame {
    fn register(&mut self, v: &HoloVectorField) {
        for (j, a) in v.coeffs.iter().enumerate() {
            for (m, _) in a.terms() {
                let next = self.columns.len();
                self.columns.entry((j, m.clone())).or_insert(next);
            }
        }
    }

    fn ncols(&self) -> usize {
        2 * self.columns.len()
    }

    fn coords(&self, v: &HoloVectorField) -> SparseVec<Rat> {
        let mut out = Vec::new();
        for (j, a) in v.coeffs.iter().enumerate() {
            for (m, c) in a.terms() {
                let col = self.columns[&(j, m.clone())];
                if !c.re.is_zero() {
                    out.push((2 * col, c.re.clone()));
                }
                if !c.im.is_zero() {
                    out.push((2 * col + 1, c.im.clone()));
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

/// A labelled list of fields, independent over the reals.
#[derive(Debug, Clone)]
pub struct FieldBasis {
    n: usize,
    labels: Vec<String>,
    fields: Vec<HoloVectorField>,
}

impl FieldBasis {
    pub fn new(n: usize, entries: Vec<(String, HoloVectorField)>) -> Result<Self, FieldError> {
        let mut frame = RealFrame::default();
        for (_, v) in &entries {
            if v.n() != n {
                return Err(FieldError::DimensionMismatch(n, v.n()));
            }
            frame.register(v);
        }
        let mut ech = Echelon::<Rat>::new(frame.ncols());
        for (index, (label, v)) in entries.iter().enumerate() {
            if let Insertion::Dependent(_) = ech.insert(frame.coords(v)) {
                return Err(FieldError::NotIndependent { index, label: label.clone() });
            }
        }
        let (labels, fields) = entries.into_iter().unzip();
        Ok(FieldBasis { n, labels, fields })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn fields(&self) -> &[HoloVectorField] {
        &self.fields
    }

    pub fn get(&self, label: &str) -> Option<&HoloVectorField> {
        self.labels.iter().position(|l| l == label).map(|k| &self.fields[k])
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &HoloVectorField)> {
        self.labels.iter().map(String::as_str).zip(&self.fields)
    }

    /// One line per field: `label : a1 ; ... ; a(n+1)`.
    pub fn to_file(&self) -> String {
        self.iter().map(|(l, v)| format!("{l} : {v}\n")).collect()
    }

    /// Reads the field file format; `n` comes from the first line.
    pub fn from_file(text: &str) -> Result<Self, FieldError> {
        let mut entries = Vec::new();
        let mut n = None;
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| FieldError::File { line: k + 1, msg };
            let (label, body) = line.split_once(':').ok_or_else(|| err("expected `label : a1 ; ... ; a(n+1)`".into()))?;
            let parts = body.split(';').count();
            if parts < 2 {
                return Err(err("a field needs at least two coefficients".into()));
            }
            let this_n = *n.get_or_insert(parts - 1);
            let v = HoloVectorField::parse(this_n, body).map_err(|e| err(e.to_string()))?;
            entries.push((label.trim().to_string(), v));
        }
        let n = n.ok_or(FieldError::File { line: 0, msg: "no fields".into() })?;
        FieldBasis::new(n, entries)
    }
}

fn digits(s: usize, t: usize) -> String {
    if s < 10 && t < 10 {
        format!("{s}{t}")
    } else {
        format!("{s},{t}")
    }
}

fn g(re: i64, im: i64) -> Gauss {
    Gauss::from_ints(re, im)
}

fn sign_gauss(s: Sign) -> Gauss {
    Gauss::int(s.value())
}

/// The catalog of symmetries of a built-in model.
pub fn builtin_symmetries(family: Family, n: usize, eps: &[Sign]) -> Result<FieldBasis, FieldError> {
    let entries = match family {
        Family::IndefiniteSubmax => indefinite_catalog(n, eps)?,
        Family::DefiniteSubmax => definite_catalog(n, eps)?,
        Family::FlatQuadric => flat_catalog(n, eps)?,
        Family::Custom => return Err(FieldError::NoCatalog(family)),
    };
    FieldBasis::new(n, entries)
}

/// Catalog for the model file of a model, when it has one.
pub fn catalog_for(model: &HypersurfaceModel) -> Result<FieldBasis, FieldError> {
    builtin_symmetries(model.family(), model.n(), model.eps())
}

fn check(n: usize, min: usize, eps: &[Sign], expected: usize) -> Result<(), FieldError> {
    if n < min {
        return Err(FieldError::NOutOfRange { n, min });
    }
    if eps.len() != expected {
        return Err(FieldError::EpsLength { expected, got: eps.len() });
    }
    Ok(())
}

fn indefinite_catalog(n: usize, eps: &[Sign]) -> Result<Vec<(String, HoloVectorField)>, FieldError> {
    check(n, 2, eps, n.saturating_sub(2))?;
    let w = n + 1;
    let e = |k: usize| sign_gauss(eps[k - 3]);
    let f = |parts: &[(usize, Poly)]| HoloVectorField::from_parts(n, parts);
    let mut out: Vec<(String, HoloVectorField)> = Vec::new();

    let mut h1 = vec![(1, z(1)), (2, z(2).scale(&g(3, 0))), (w, z(w).scale(&g(4, 0)))];
    for k in 3..=n {
        h1.push((k, z(k).scale(&g(2, 0))));
    }
    out.push(("H1".into(), f(&h1)));
    out.push(("H2".into(), f(&[(1, z(1).scale(&g(0, 1))), (2, z(2).scale(&g(0, 1)))])));
    for k in 3..=n {
        out.push((format!("H{k}"), f(&[(k, z(k).scale(&g(0, 1)))])));
    }
    let z1sq = z(1).mul(&z(1));
    out.push(("T1".into(), f(&[(1, Poly::one()), (w, z(2).neg()), (2, z1sq.scale(&g(0, 4)))])));
    out.push((
        "T1'".into(),
        f(&[(1, Poly::constant(g(0, 1))), (w, z(2).scale(&g(0, 1))), (2, z1sq.scale(&g(4, 0)))]),
    ));
    out.push(("T2".into(), f(&[(2, Poly::one()), (w, z(1))])));
    out.push(("T2'".into(), f(&[(2, Poly::constant(g(0, 1))), (w, z(1).scale(&g(0, -1)))])));
    for k in 3..=n {
        let two_eps = e(k).scale(&crate::scalar::rat(2));
        out.push((format!("T{k}"), f(&[(k, Poly::one()), (w, z(k).scale(&two_eps.mul_i()))])));
        out.push((format!("T{k}'"), f(&[(k, Poly::constant(g(0, 1))), (w, z(k).scale(&two_eps))])));
    }
    out.push((format!("T{w}"), f(&[(w, Poly::one())])));
    out.push(("S1".into(), f(&[(2, z(1))])));
    for k in 3..=n {
        out.push((format!("S{k}"), f(&[(2, z(k).scale(&g(2, 0))), (k, z(1).scale(&e(k).mul_i()))])));
        out.push((format!("S{k}'"), f(&[(2, z(k).scale(&g(0, 2))), (k, z(1).scale(&e(k)))])));
    }
    for s in 3..=n {
        for t in (s + 1)..=n {
            out.push((format!("R{}", digits(s, t)), f(&[(t, z(s).scale(&e(s))), (s, z(t).scale(&-e(t)))])));
            out.push((
                format!("R{}'", digits(s, t)),
                f(&[(t, z(s).scale(&e(s).mul_i())), (s, z(t).scale(&e(t).mul_i()))]),
            ));
        }
    }
    Ok(out)
}

fn definite_catalog(n: usize, eps: &[Sign]) -> Result<Vec<(String, HoloVectorField)>, FieldError> {
    check(n, 2, eps, 0)?;
    let w = n + 1;
    let f = |parts: &[(usize, Poly)]| HoloVectorField::from_parts(n, parts);
    let mut out: Vec<(String, HoloVectorField)> = Vec::new();
    let z1sq = z(1).mul(&z(1));
    out.push(("T1".into(), f(&[(1, Poly::one().add(&z1sq)), (w, z(1).scale(&g(0, 2)))])));
    out.push((
        "T1'".into(),
        f(&[(1, Poly::one().sub(&z1sq).scale(&g(0, 1))), (w, z(1).scale(&g(2, 0)))]),
    ));
    for j in 2..=n {
        out.push((format!("T{j}"), f(&[(j, Poly::one()), (w, z(j).scale(&g(0, 2)))])));
        out.push((format!("T{j}'"), f(&[(j, Poly::constant(g(0, 1))), (w, z(j).scale(&g(2, 0)))])));
    }
    out.push((format!("T{w}"), f(&[(w, Poly::one())])));
    for k in 1..=n {
        out.push((format!("H{k}"), f(&[(k, z(k).scale(&g(0, 1)))])));
    }
    for s in 2..=n {
        for t in (s + 1)..=n {
            out.push((format!("R{}", digits(s, t)), f(&[(t, z(s)), (s, z(t).neg())])));
            out.push((format!("R{}'", digits(s, t)), f(&[(t, z(s).scale(&g(0, 1))), (s, z(t).scale(&g(0, 1)))])));
        }
    }
    Ok(out)
}

/// Symmetries of `Im w = sum eps_k |z_k|^2`: translations, `u(p,q)`,
/// dilation, and the `2n + 1` quadratic fields.
fn flat_catalog(n: usize, eps: &[Sign]) -> Result<Vec<(String, HoloVectorField)>, FieldError> {
    check(n, 1, eps, n)?;
    let w = n + 1;
    let e = |k: usize| sign_gauss(eps[k - 1]);
    let f = |parts: &[(usize, Poly)]| HoloVectorField::from_parts(n, parts);
    let mut out: Vec<(String, HoloVectorField)> = Vec::new();
    out.push((format!("T{w}"), f(&[(w, Poly::one())])));
    for k in 1..=n {
        let two_eps = e(k).scale(&crate::scalar::rat(2));
        out.push((format!("T{k}"), f(&[(k, Poly::one()), (w, z(k).scale(&two_eps.mul_i()))])));
        out.push((format!("T{k}'"), f(&[(k, Poly::constant(g(0, 1))), (w, z(k).scale(&two_eps))])));
    }
    for k in 1..=n {
        out.push((format!("H{k}"), f(&[(k, z(k).scale(&g(0, 1)))])));
    }
    for s in 1..=n {
        for t in (s + 1)..=n {
            out.push((format!("R{}", digits(s, t)), f(&[(t, z(s).scale(&e(s))), (s, z(t).scale(&-e(t)))])));
            out.push((
                format!("R{}'", digits(s, t)),
                f(&[(t, z(s).scale(&e(s).mul_i())), (s, z(t).scale(&e(t).mul_i()))]),
            ));
        }
    }
    let mut dil: Vec<(usize, Poly)> = (1..=n).map(|k| (k, z(k))).collect();
    dil.push((w, z(w).scale(&g(2, 0))));
    out.push(("D".into(), f(&dil)));
    for j in 1..=n {
        // P_j = c z_j E + w d_j + c z_j w d_w with E the Euler field in z'
        for (label, c, lin) in [(format!("P{j}"), e(j).scale(&crate::scalar::rat(2)).mul_i(), Gauss::one()), (format!("P{j}'"), e(j).scale(&crate::scalar::rat(2)), g(0, 1))] {
            let mut parts: Vec<(usize, Poly)> = (1..=n).map(|k| (k, z(j).mul(&z(k)).scale(&c))).collect();
            parts.push((j, z(w).scale(&lin)));
            parts.push((w, z(j).mul(&z(w)).scale(&c)));
            out.push((label, f(&parts)));
        }
    }
    let mut k: Vec<(usize, Poly)> = (1..=n).map(|k| (k, z(w).mul(&z(k)))).collect();
    k.push((w, z(w).mul(&z(w))));
    out.push(("K".into(), f(&k)));
    Ok(out)
}

/// Brackets every pair of basis fields and expresses the result in the
/// basis over the reals.
pub fn close_and_structure(basis: &FieldBasis) -> Result<RealLieAlgebra, FieldError> {
    let fields = basis.fields();
    let dim = fields.len();
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|a| ((a + 1)..dim).map(move |b| (a, b))).collect();
    let brackets = par_map(&pairs, |(a, b)| fields[*a].bracket(&fields[*b]));
    let brackets: Vec<HoloVectorField> = brackets.into_iter().collect::<Result<_, _>>()?;

    let mut frame = RealFrame::default();
    for v in fields.iter().chain(&brackets) {
        frame.register(v);
    }
    let basis_coords: Vec<SparseVec<Rat>> = fields.iter().map(|v| frame.coords(v)).collect();
    let solver = SpanSolver::new(&basis_coords, frame.ncols()).map_err(|index| FieldError::NotIndependent {
        index,
        label: basis.labels()[index].clone(),
    })?;

    let mut table = vec![vec![SparseVec::<Rat>::new(); dim]; dim];
    for ((a, b), br) in pairs.iter().zip(&brackets) {
        let coords = solver.coords(&frame.coords(br)).ok_or_else(|| FieldError::NotClosed {
            a: basis.labels()[*a].clone(),
            b: basis.labels()[*b].clone(),
            bracket: br.to_text(),
        })?;
        table[*b][*a] = coords.iter().map(|(i, x)| (*i, -x)).collect();
        table[*a][*b] = coords;
    }
    Ok(RealLieAlgebra::from_table(basis.labels().to_vec(), table).expect("antisymmetric by construction"))
}

/// The semisimple subalgebra of a built-in catalog that should be a Levi
/// factor, with the reference algebra it should be isomorphic to.
///
/// Indefinite family: `su(p, q)` acting on `z3..zn`. Definite family:
/// `su(2)` spanned by `T1, T1', H1 - T{n+1}` plus `su(n - 1)` acting on `z2..zn`.
pub fn levi_candidate(family: Family, basis: &FieldBasis, eps: &[Sign]) -> Result<(Subspace, Reference), FieldError> {
    let n = basis.n();
    let dim = basis.len();
    let at = |label: &str| basis.index_of(label).ok_or(FieldError::NoCatalog(family));
    let one = || crate::scalar::rat(1);
    let mut vecs: Vec<SparseVec<Rat>> = Vec::new();
    let unitary = |lo: usize, vecs: &mut Vec<SparseVec<Rat>>| -> Result<(), FieldError> {
        for k in lo..n {
            vecs.push(crate::linalg::sparse_from_dense(&{
                let mut d = vec![Rat::zero(); dim];
                d[at(&format!("H{k}"))?] = one();
                d[at(&format!("H{}", k + 1))?] = -one();
                d
            }));
        }
        for s in lo..=n {
            for t in (s + 1)..=n {
                vecs.push(vec![(at(&format!("R{}", digits(s, t)))?, one())]);
                vecs.push(vec![(at(&format!("R{}'", digits(s, t)))?, one())]);
            }
        }
        Ok(())
    };
    let reference = match family {
        Family::IndefiniteSubmax => {
            unitary(3, &mut vecs)?;
            let p = eps.iter().filter(|e| **e == Sign::Plus).count();
            Reference::SU(p, eps.len() - p)
        }
        Family::DefiniteSubmax => {
            vecs.push(vec![(at("T1")?, one())]);
            vecs.push(vec![(at("T1'")?, one())]);
            let mut h = vec![(at("H1")?, one()), (at(&format!("T{}", n + 1))?, -one())];
            h.sort_by_key(|(k, _)| *k);
            vecs.push(h);
            unitary(2, &mut vecs)?;
            Reference::SU2PlusSU(n - 1)
        }
        _ => return Err(FieldError::NoCatalog(family)),
    };
    let sub = Subspace::new(dim, vecs).map_err(|index| FieldError::NotIndependent { index, label: "levi".into() })?;
    Ok((sub, reference))
}

/// All monomials in `vars` variables of total degree at most `degree`, in
/// graded order.
pub fn monomials_up_to(vars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; vars];
    fn rec(k: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if k == exps.len() {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[k] = e as u16;
            rec(k + 1, left - e, exps, out);
        }
        exps[k] = 0;
    }
    rec(0, degree, &mut exps, &mut out);
    out.sort();
    out
}

/// Result of the degree-bounded symmetry solve.
#[derive(Debug, Clone)]
pub struct SymmetrySolution {
    pub degree: u32,
    /// Real dimension of the solution space.
    pub dimension: usize,
    pub basis: Vec<HoloVectorField>,
    /// Number of real linear equations assembled.
    pub equations: usize,
    /// Number of real unknowns.
    pub unknowns: usize,
    n: usize,
    index: HashMap<(usize, Monomial), usize>,
    kernel: Echelon<Rat>,
}

impl SymmetrySolution {
    fn real_coords(&self, v: &HoloVectorField) -> Option<SparseVec<Rat>> {
        let mut out = Vec::new();
        for (j, a) in v.coeffs().iter().enumerate() {
            for (m, c) in a.terms() {
                let col = *self.index.get(&(j, m.clone()))?;
                if !c.re.is_zero() {
                    out.push((2 * col, c.re.clone()));
                }
                if !c.im.is_zero() {
                    out.push((2 * col + 1, c.im.clone()));
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }

    /// Whether `v` lies in the real solution space.
    pub fn contains(&self, v: &HoloVectorField) -> bool {
        v.n() == self.n && self.real_coords(v).is_some_and(|c| self.kernel.contains(&c))
    }
}

/// Finds every holomorphic symmetry with polynomial coefficients of degree
/// at most `degree`, as an exact real linear system.
pub fn solve_symmetries(model: &HypersurfaceModel, degree: u32) -> Result<SymmetrySolution, FieldError> {
    let n = model.n();
    let vt = model.vars();
    let monos = monomials_up_to(n + 1, degree);
    let unknowns: Vec<(usize, Monomial)> =
        (0..=n).flat_map(|j| monos.iter().map(move |m| (j, m.clone()))).collect();
    let halves = par_map(&unknowns, |(j, m)| {
        model.holomorphic_action(&HoloVectorField::monomial(n, *j, m.clone(), Gauss::one()))
    });
    let halves: Vec<Expr> = halves.into_iter().collect::<Result<_, _>>()?;

    let mut den: Vec<u32> = Vec::new();
    for h in &halves {
        for (m, e) in h.denominator().iter().enumerate() {
            if den.len() <= m {
                den.resize(m + 1, 0);
            }
            den[m] = den[m].max(*e);
        }
    }
    // real unknown x (resp. y) contributes A + bar A (resp. i(A - bar A))
    let columns: Vec<[Poly; 2]> = par_map(&halves, |a| {
        let b = a.bar(vt);
        let x = a.add(&b, vt).numerator_over(&den, vt).expect("common denominator");
        let y = a.sub(&b, vt).scale(&Gauss::i()).numerator_over(&den, vt).expect("common denominator");
        [x, y]
    });

    let mut rows_index: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<SparseVec<Rat>> = Vec::new();
    for (k, pair) in columns.iter().enumerate() {
        for (part, p) in pair.iter().enumerate() {
            let col = 2 * k + part;
            for (m, c) in p.terms() {
                let next = rows_index.len();
                let r = *rows_index.entry(m.clone()).or_insert(next);
                if 2 * r + 1 >= rows.len() {
                    rows.resize(2 * r + 2, Vec::new());
                }
                if !c.re.is_zero() {
                    rows[2 * r].push((col, c.re.clone()));
                }
                if !c.im.is_zero() {
                    rows[2 * r + 1].push((col, c.im.clone()));
                }
            }
        }
    }
    rows.retain(|r| !r.is_empty());
    let ncols = 2 * unknowns.len();
    let mut ech = Echelon::<Rat>::new(ncols);
    for r in &rows {
        if ech.rank() == ncols {
            break;
        }
        ech.insert(r.clone());
    }
    let kernel_vectors = ech.kernel();

    let basis: Vec<HoloVectorField> = kernel_vectors
        .iter()
        .map(|v| {
            let mut field = HoloVectorField::zero(n);
            for (col, x) in v {
                let (j, m) = &unknowns[col / 2];
                let c = if col % 2 == 0 { Gauss::real(x.clone()) } else { Gauss::new(Rat::zero(), x.clone()) };
                field.coeffs[*j].add_term(m.clone(), &c);
            }
            field
        })
        .collect();
    let mut kernel = Echelon::new(ncols);
    for v in kernel_vectors {
        kernel.insert(v);
    }
    let index = unknowns.iter().enumerate().map(|(k, u)| (u.clone(), k)).collect();
    Ok(SymmetrySolution {
        degree,
        dimension: basis.len(),
        basis,
        equations: rows.len(),
        unknowns: ncols,
        n,
        index,
        kernel,
    })
}

/// Tangency verdict for each field of a basis.
#[derive(Debug, Clone, Serialize)]
pub struct TangencyReport {
    pub label: String,
    pub tangent: bool,
    pub residual: String,
}

pub fn verify_tangency(model: &HypersurfaceModel, basis: &FieldBasis) -> Result<Vec<TangencyReport>, FieldError> {
    let items: Vec<(&str, &HoloVectorField)> = basis.iter().collect();
    let results = par_map(&items, |(label, v)| {
        model.tangency_residual(v).map(|r| TangencyReport {
            label: label.to_string(),
            tangent: r.is_zero(),
            residual: r.display(model.vars()),
        })
    });
    Ok(results.into_iter().collect::<Result<_, _>>()?)
}
