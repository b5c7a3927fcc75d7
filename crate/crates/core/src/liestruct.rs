//! Real Lie algebras given by rational structure constants: Killing form,
//! radical, derived and lower central series, Levi factor checks and
//! fingerprints against reference matrix algebras.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use crate::linalg::Subspace;
use crate::linalg::{axpy, hermitian_signature, nullspace, par_map, scale_sparse, SparseVec, SpanSolver};
use crate::matrix::Mat;
use crate::scalar::{fmt_rat, Gauss, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("structure constants are not antisymmetric at ({a}, {b})")]
    NotAntisymmetric { a: usize, b: usize },
    #[error("Jacobi identity fails on ({a}, {b}, {c})")]
    Jacobi { a: usize, b: usize, c: usize },
    #[error("vector {0} is not in the algebra")]
    NotInAlgebra(usize),
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("subspace basis is linearly dependent at vector {0}")]
    Dependent(usize),
    #[error("unknown reference algebra `{0}`")]
    UnknownReference(String),
    #[error("structure table line {line}: {msg}")]
    Table { line: usize, msg: String },
}

/// A finite-dimensional real Lie algebra `[e_a, e_b] = sum_c c_ab^c e_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLieAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<SparseVec<Rat>>>,
}

/// Dense coordinate vector of an algebra element.
pub type Element = Vec<Rat>;

impl RealLieAlgebra {
    /// Checks antisymmetry; Jacobi is checked separately by
    /// [`RealLieAlgebra::jacobi_violation`].
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<SparseVec<Rat>>>) -> Result<Self, LieError> {
        let n = labels.len();
        assert!(table.len() == n && table.iter().all(|r| r.len() == n), "table shape");
        for a in 0..n {
            if !table[a][a].is_empty() {
                return Err(LieError::NotAntisymmetric { a, b: a });
            }
            for b in (a + 1)..n {
                if !axpy(&table[a][b], &Rat::one(), &table[b][a]).is_empty() {
                    return Err(LieError::NotAntisymmetric { a, b });
                }
            }
        }
        Ok(RealLieAlgebra { labels, table })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_a, e_b]` as a sparse vector.
    pub fn structure(&self, a: usize, b: usize) -> &SparseVec<Rat> {
        &self.table[a][b]
    }

    pub fn basis_vector(&self, a: usize) -> Element {
        let mut v = vec![Rat::zero(); self.dim()];
        v[a] = Rat::one();
        v
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Element {
        let mut out = vec![Rat::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (c, v) in &self.table[a][b] {
                    out[*c] += &s * v;
                }
            }
        }
        out
    }

    /// Matrix of `ad x` (column `b` is `[x, e_b]`).
    pub fn ad(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        let n = self.dim();
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..n {
                for (c, v) in &self.table[a][b] {
                    m[*c][b] += xa * v;
                }
            }
        }
        m
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|a| ((a + 1)..n).flat_map(move |b| ((b + 1)..n).map(move |c| (a, b, c)))).collect();
        let bad = par_map(&triples, |(a, b, c)| !self.jacobi_holds(*a, *b, *c));
        triples.into_iter().zip(bad).find(|(_, bad)| *bad).map(|(t, _)| t)
    }

    pub fn jacobi_holds(&self, a: usize, b: usize, c: usize) -> bool {
        let (ea, eb, ec) = (self.basis_vector(a), self.basis_vector(b), self.basis_vector(c));
        self.jacobi_sum(&ea, &eb, &ec).iter().all(Zero::is_zero)
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobi_sum(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Element {
        let t1 = self.bracket(x, &self.bracket(y, z));
        let t2 = self.bracket(y, &self.bracket(z, x));
        let t3 = self.bracket(z, &self.bracket(x, y));
        t1.iter().zip(&t2).zip(&t3).map(|((a, b), c)| a + b + c).collect()
    }

    /// Structure constants restricted to a subalgebra, in the subspace basis.
    pub fn restrict(&self, sub: &Subspace) -> Result<RealLieAlgebra, LieError> {
        let k = sub.dim();
        let solver = SpanSolver::new(sub.basis(), self.dim()).map_err(LieError::Dependent)?;
        let dense: Vec<Element> = sub.basis().iter().map(|v| dense(v, self.dim())).collect();
        let mut table = vec![vec![SparseVec::new(); k]; k];
        for a in 0..k {
            for b in (a + 1)..k {
                let br = sparse(&self.bracket(&dense[a], &dense[b]));
                let c = solver.coords(&br).ok_or(LieError::NotSubalgebra)?;
                table[b][a] = scale_sparse(&c, &-Rat::one());
                table[a][b] = c;
            }
        }
        let labels = (0..k).map(|i| format!("x{}", i + 1)).collect();
        RealLieAlgebra::from_table(labels, table)
    }

    /// Sparse triples `a b c value`, 1-based, one per line.
    pub fn to_table_text(&self) -> String {
        let mut out = String::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for (c, v) in &self.table[a][b] {
                    out.push_str(&format!("{} {} {} {}\n", a + 1, b + 1, c + 1, fmt_rat(v)));
                }
            }
        }
        out
    }

    /// Reads the triple format; entries not listed are zero.
    pub fn from_table_text(dim: usize, text: &str) -> Result<RealLieAlgebra, LieError> {
        let mut table = vec![vec![SparseVec::<Rat>::new(); dim]; dim];
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| LieError::Table { line: k + 1, msg: msg.into() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(err("expected `a b c value`"));
            }
            let idx = |s: &str| -> Result<usize, LieError> {
                let i: usize = s.parse().map_err(|_| err("bad index"))?;
                if i == 0 || i > dim {
                    return Err(err("index out of range"));
                }
                Ok(i - 1)
            };
            let (a, b, c) = (idx(parts[0])?, idx(parts[1])?, idx(parts[2])?);
            let v: Rat = parts[3].parse().map_err(|_| err("bad rational"))?;
            table[a][b] = axpy(&table[a][b], &Rat::one(), &vec![(c, v)]);
        }
        let labels = (0..dim).map(|i| format!("e{}", i + 1)).collect();
        RealLieAlgebra::from_table(labels, table)
    }
}

pub fn dense(v: &SparseVec<Rat>, len: usize) -> Element {
    crate::linalg::dense_from_sparse(v, len)
}

pub fn sparse(v: &[Rat]) -> SparseVec<Rat> {
    crate::linalg::sparse_from_dense(v)
}

/// `[A, B]` inside `L`.
pub fn bracket_span(l: &RealLieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let da: Vec<Element> = a.basis().iter().map(|v| dense(v, l.dim())).collect();
    let db: Vec<Element> = b.basis().iter().map(|v| dense(v, l.dim())).collect();
    let pairs: Vec<(usize, usize)> = (0..da.len()).flat_map(|i| (0..db.len()).map(move |j| (i, j))).collect();
    let brs = par_map(&pairs, |(i, j)| sparse(&l.bracket(&da[*i], &db[*j])));
    Subspace::span(l.dim(), brs)
}

pub fn is_subalgebra(l: &RealLieAlgebra, s: &Subspace) -> bool {
    s.contains_subspace(&bracket_span(l, s, s))
}

/// Killing matrix `K_ab = tr(ad e_a ad e_b)`.
pub fn killing_matrix(l: &RealLieAlgebra) -> Vec<Vec<Rat>> {
    let n = l.dim();
    let ads: Vec<Vec<Vec<Rat>>> = par_map(&(0..n).collect::<Vec<_>>(), |a| l.ad(&l.basis_vector(*a)));
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let vals = par_map(&pairs, |(a, b)| {
        let mut t = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                let x = &ads[*a][i][j];
                if !x.is_zero() {
                    let y = &ads[*b][j][i];
                    if !y.is_zero() {
                        t += x * y;
                    }
                }
            }
        }
        t
    });
    let mut k = vec![vec![Rat::zero(); n]; n];
    for ((a, b), v) in pairs.into_iter().zip(vals) {
        k[b][a] = v.clone();
        k[a][b] = v;
    }
    k
}

/// Signature `(pos, neg, zero)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.zero)
    }
}

pub fn killing_form(l: &RealLieAlgebra) -> (Vec<Vec<Rat>>, Signature) {
    let k = killing_matrix(l);
    let (pos, neg, zero) = hermitian_signature(&k);
    (k, Signature { pos, neg, zero })
}

/// Output of [`radical_and_series`].
#[derive(Debug, Clone)]
pub struct StructureSummary {
    pub radical: Subspace,
    pub derived: Subspace,
    /// `dim L, dim [L,L], ...` until the sequence stabilizes.
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
    /// Derived series dims of the radical.
    pub radical_derived_dims: Vec<usize>,
}

impl StructureSummary {
    /// Smallest `k` with `D^k r = 0`, counting `D^1 r = [r, r]`.
    pub fn radical_derived_length(&self) -> Option<usize> {
        derived_length(&self.radical_derived_dims)
    }
}

/// Smallest `k` with `dims[k] = 0`, if the series reaches zero.
pub fn derived_length(dims: &[usize]) -> Option<usize> {
    dims.iter().position(|d| *d == 0)
}

fn series(l: &RealLieAlgebra, start: &Subspace, lower_central: bool) -> Vec<usize> {
    let mut dims = vec![start.dim()];
    let mut cur = start.clone();
    loop {
        let next = if lower_central { bracket_span(l, start, &cur) } else { bracket_span(l, &cur, &cur) };
        if next.dim() == cur.dim() {
            return dims;
        }
        dims.push(next.dim());
        if next.dim() == 0 {
            return dims;
        }
        cur = next;
    }
}

pub fn derived_series(l: &RealLieAlgebra, s: &Subspace) -> Vec<usize> {
    series(l, s, false)
}

/// Kernel of `x -> [x, e_b]` for all `b`.
pub fn center(l: &RealLieAlgebra) -> Subspace {
    let n = l.dim();
    // [x, e_b]_c = sum_a x_a c_ab^c
    let mut rows = Vec::new();
    for b in 0..n {
        let mut per_c: Vec<SparseVec<Rat>> = vec![Vec::new(); n];
        for a in 0..n {
            for (c, v) in l.structure(a, b) {
                per_c[*c].push((a, v.clone()));
            }
        }
        rows.extend(per_c.into_iter().filter(|r| !r.is_empty()));
    }
    Subspace::new(n, nullspace(rows, n)).expect("kernel basis is independent")
}

/// Radical as the Killing-orthogonal complement of `[L, L]`, plus series data.
pub fn radical_and_series(l: &RealLieAlgebra) -> StructureSummary {
    let n = l.dim();
    let whole = Subspace::whole(n);
    let derived = bracket_span(l, &whole, &whole);
    let k = killing_matrix(l);
    let rows: Vec<SparseVec<Rat>> = derived
        .basis()
        .iter()
        .map(|d| {
            let mut row = vec![Rat::zero(); n];
            for (i, di) in d {
                for (j, kij) in k[*i].iter().enumerate() {
                    if !kij.is_zero() {
                        row[j] += di * kij;
                    }
                }
            }
            sparse(&row)
        })
        .collect();
    let radical = Subspace::new(n, nullspace(rows, n)).expect("kernel basis is independent");
    StructureSummary {
        derived_dims: series(l, &whole, false),
        lower_central_dims: series(l, &whole, true),
        center_dim: center(l).dim(),
        radical_derived_dims: series(l, &radical, false),
        radical,
        derived,
    }
}

/// Outcome of [`levi_check`].
#[derive(Debug, Clone, Serialize)]
pub struct LeviVerdict {
    pub passed: bool,
    pub dim: usize,
    pub subalgebra: bool,
    pub semisimple: bool,
    pub complement: bool,
    pub failure: Option<String>,
}

/// Checks that `candidate` is a semisimple subalgebra complementary to the
/// radical.
pub fn levi_check(l: &RealLieAlgebra, candidate: &Subspace) -> Result<LeviVerdict, LieError> {
    if candidate.ambient() != l.dim() {
        return Err(LieError::NotInAlgebra(0));
    }
    let mut v = LeviVerdict {
        passed: false,
        dim: candidate.dim(),
        subalgebra: false,
        semisimple: false,
        complement: false,
        failure: None,
    };
    v.subalgebra = is_subalgebra(l, candidate);
    if !v.subalgebra {
        v.failure = Some("not a subalgebra".into());
        return Ok(v);
    }
    let s = l.restrict(candidate)?;
    v.semisimple = killing_form(&s).1.zero == 0;
    if !v.semisimple {
        v.failure = Some("Killing form of the candidate is degenerate".into());
        return Ok(v);
    }
    let r = radical_and_series(l).radical;
    v.complement = candidate.intersection_dim(&r) == 0 && candidate.dim() + r.dim() == l.dim();
    if !v.complement {
        v.failure = Some("candidate is not complementary to the radical".into());
        return Ok(v);
    }
    v.passed = true;
    Ok(v)
}

/// Isomorphism invariants used to compare algebras.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Fingerprint {
    pub dim: usize,
    pub killing_signature: Signature,
    pub center_dim: usize,
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
}

pub fn fingerprint(l: &RealLieAlgebra) -> Fingerprint {
    let s = radical_and_series(l);
    Fingerprint {
        dim: l.dim(),
        killing_signature: killing_form(l).1,
        center_dim: s.center_dim,
        derived_dims: s.derived_dims,
        lower_central_dims: s.lower_central_dims,
    }
}

/// Names of the fields on which two fingerprints differ.
pub fn fingerprint_mismatches(a: &Fingerprint, b: &Fingerprint) -> Vec<&'static str> {
    let mut out = Vec::new();
    if a.dim != b.dim {
        out.push("dim");
    }
    if a.killing_signature != b.killing_signature {
        out.push("killingSignature");
    }
    if a.center_dim != b.center_dim {
        out.push("centerDim");
    }
    if a.derived_dims != b.derived_dims {
        out.push("derivedDims");
    }
    if a.lower_central_dims != b.lower_central_dims {
        out.push("lowerCentralDims");
    }
    out
}

pub fn fingerprint_match(a: &RealLieAlgebra, b: &RealLieAlgebra) -> bool {
    fingerprint_mismatches(&fingerprint(a), &fingerprint(b)).is_empty()
}

/// Reference algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// `su(p, q)`; `q = 0` gives the compact `su(p)`.
    SU(usize, usize),
    U(usize),
    /// `su(2) + su(m)`.
    SU2PlusSU(usize),
    /// Compact symplectic `sp(m)` inside `u(2m)`.
    Sp(usize),
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reference::SU(p, q) if p + q <= 1 => f.write_str("0"),
            Reference::SU(p, 0) => write!(f, "su({p})"),
            Reference::SU(p, q) => write!(f, "su({p},{q})"),
            Reference::U(m) => write!(f, "u({m})"),
            Reference::SU2PlusSU(m) if *m <= 1 => f.write_str("su(2)"),
            Reference::SU2PlusSU(m) => write!(f, "su(2)+su({m})"),
            Reference::Sp(m) => write!(f, "sp({m})"),
        }
    }
}

impl std::str::FromStr for Reference {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::UnknownReference(s.to_string());
        let args = |body: &str| -> Result<Vec<usize>, LieError> {
            body.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
        if let Some(m) = s.strip_prefix("su(2)+su(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Reference::SU2PlusSU(args(m)?[0]));
        }
        if let Some(body) = inner("su(") {
            let a = args(body)?;
            return match a.as_slice() {
                [p] => Ok(Reference::SU(*p, 0)),
                [p, q] => Ok(Reference::SU(*p, *q)),
                _ => Err(bad()),
            };
        }
        if let Some(body) = inner("u(") {
            return Ok(Reference::U(args(body)?[0]));
        }
        if let Some(body) = inner("sp(") {
            return Ok(Reference::Sp(args(body)?[0]));
        }
        Err(bad())
    }
}

/// Anti-Hermitian matrices for the diagonal form `h` (entries `+-1`).
fn unitary_basis(h: &[i64], traceless: bool) -> Vec<(String, Mat<Gauss>)> {
    let n = h.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let s = -h[a] * h[b];
            let x = Mat::unit(n, a, b, Gauss::one()).add(&Mat::unit(n, b, a, Gauss::int(s)));
            let y = Mat::unit(n, a, b, Gauss::i()).add(&Mat::unit(n, b, a, Gauss::from_ints(0, -s)));
            out.push((format!("X{}{}", a + 1, b + 1), x));
            out.push((format!("Y{}{}", a + 1, b + 1), y));
        }
    }
    if traceless {
        for a in 0..n.saturating_sub(1) {
            let d = Mat::unit(n, a, a, Gauss::i()).add(&Mat::unit(n, a + 1, a + 1, Gauss::from_ints(0, -1)));
            out.push((format!("D{}", a + 1), d));
        }
    } else {
        for a in 0..n {
            out.push((format!("D{}", a + 1), Mat::unit(n, a, a, Gauss::i())));
        }
    }
    out
}

/// Structure constants of a real span of matrices closed under commutators.
pub fn matrix_algebra(labels: Vec<String>, mats: &[Mat<Gauss>]) -> Result<RealLieAlgebra, LieError> {
    let ncols = mats.first().map_or(0, |m| 2 * m.size() * m.size());
    let coords: Vec<SparseVec<Rat>> = mats.iter().map(|m| m.coords()).collect();
    let solver = SpanSolver::new(&coords, ncols).map_err(LieError::Dependent)?;
    let k = mats.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| ((a + 1)..k).map(move |b| (a, b))).collect();
    let cs = par_map(&pairs, |(a, b)| solver.coords(&mats[*a].commutator(&mats[*b]).coords()));
    let mut table = vec![vec![SparseVec::new(); k]; k];
    for ((a, b), c) in pairs.into_iter().zip(cs) {
        let c = c.ok_or(LieError::NotSubalgebra)?;
        table[b][a] = scale_sparse(&c, &-Rat::one());
        table[a][b] = c;
    }
    RealLieAlgebra::from_table(labels, table)
}

/// Real solutions `sum x_k B_k` of a real-linear matrix condition.
pub fn real_kernel(basis: &[Mat<Gauss>], condition: impl Fn(&Mat<Gauss>) -> Mat<Gauss> + Sync) -> Vec<Mat<Gauss>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let n = basis[0].size();
    let cols: Vec<SparseVec<Rat>> = par_map(basis, |b| condition(b).coords());
    let rels = crate::linalg::column_kernel(&cols, 2 * n * n);
    rels.iter()
        .map(|r| {
            r.iter()
                .fold(Mat::zeros(n), |acc, (k, x)| acc.add(&basis[*k].scale(&Gauss::real(x.clone()))))
        })
        .collect()
}

/// The compact symplectic form `Omega = [[0, -I], [I, 0]]` of size `2m`.
pub fn omega(m: usize) -> Mat<Gauss> {
    let mut o = Mat::zeros(2 * m);
    for i in 0..m {
        o.set(i, m + i, Gauss::int(-1));
        o.set(m + i, i, Gauss::int(1));
    }
    o
}

pub fn reference_matrices(r: Reference) -> Vec<(String, Mat<Gauss>)> {
    match r {
        Reference::SU(p, q) => {
            let h: Vec<i64> = std::iter::repeat_n(1, p).chain(std::iter::repeat_n(-1, q)).collect();
            unitary_basis(&h, true)
        }
        Reference::U(m) => unitary_basis(&vec![1; m], false),
        Reference::SU2PlusSU(m) => {
            let n = 2 + m;
            let embed = |x: &Mat<Gauss>, off: usize| {
                let mut out = Mat::zeros(n);
                for (i, j, v) in x.entries() {
                    out.set(i + off, j + off, v.clone());
                }
                out
            };
            let mut out: Vec<(String, Mat<Gauss>)> =
                unitary_basis(&[1, 1], true).into_iter().map(|(l, x)| (format!("A.{l}"), embed(&x, 0))).collect();
            out.extend(unitary_basis(&vec![1; m], true).into_iter().map(|(l, x)| (format!("B.{l}"), embed(&x, 2))));
            out
        }
        Reference::Sp(m) => {
            let base: Vec<Mat<Gauss>> = unitary_basis(&vec![1; 2 * m], false).into_iter().map(|(_, x)| x).collect();
            let o = omega(m);
            // X^T Omega + Omega X = 0
            let sols = real_kernel(&base, |x| x.transpose().mul(&o).add(&o.mul(x)));
            sols.into_iter().enumerate().map(|(k, x)| (format!("J{}", k + 1), x)).collect()
        }
    }
}

pub fn reference_algebra(r: Reference) -> RealLieAlgebra {
    let (labels, mats): (Vec<String>, Vec<Mat<Gauss>>) = reference_matrices(r).into_iter().unzip();
    matrix_algebra(labels, &mats).expect("reference bases are closed and independent")
}
