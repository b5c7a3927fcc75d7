//! The contact grading of `su(p, q)`, its curvature module and Tanaka
//! prolongation.
//!
//! Matrices have size `N = n + 2` and preserve the Hermitian form `H` with
//! ones in the two anti-diagonal corners and `diag(eps)` in the middle
//! block. The grading element is `s = diag(1, 0, ..., 0, -1)`, so the degree
//! of a matrix unit `E_ij` is `s_i - s_j`.
//!
//! The same construction is available over two fields. Over `Rat` the basis
//! is a real basis of `su(p, q)`; over `Gauss` it is the basis of matrix units
//! (plus diagonal elements) of the complexification `sl(N, C)`.
//!
//! Basis order, real model (indices `a < b` run over `1..=n`):
//!
//! | degree | elements |
//! |---|---|
//! | -2 | `Z = i E_{N-1,0}` |
//! | -1 | `Xa = E_{a0} - eps_a E_{N-1,a}`, `Ya = i E_{a0} + i eps_a E_{N-1,a}` (interleaved) |
//! |  0 | `S = s`, `Da = i E_aa - (i/2)(E_00 + E_{N-1,N-1})`, then `Aab = E_ab - eps_a eps_b E_ba`, `Bab = i E_ab + i eps_a eps_b E_ba` (interleaved) |
//! |  1 | `Ua = E_{0a} - eps_a E_{a,N-1}`, `Va = i E_{0a} + i eps_a E_{a,N-1}` (interleaved) |
//! |  2 | `W = i E_{0,N-1}` |
//!
//! Complex model: `E_{N-1,0}`; `E_a0` for all `a` then `E_{N-1,a}`; `S`,
//! `H_a = E_aa - E_{a+1,a+1}` for `a = 1..=n`, then `E_ab` for `a != b` in
//! row-major order; `E_0a` then `E_{a,N-1}`; `E_{0,N-1}`. Labels use 0-based
//! matrix indices, e.g. `E10`.

use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{axpy, column_kernel, nullspace, par_map, transpose, Echelon, SparseVec, SpanSolver, Subspace};
use crate::matrix::Mat;
use crate::scalar::{fmt_rat, ratio, Field, Gauss, Rat};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParabolicError {
    #[error("signature ({p}, {q}) needs p >= 1 and q >= 1")]
    BadSignature { p: usize, q: usize },
    #[error("subspace is not a subalgebra of g0")]
    NotSubalgebra,
    #[error("sp(m) needs n = 2m, got n = {0}")]
    OddDimension(usize),
    #[error("expected a vector of length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("bad coordinate data: {0}")]
    Parse(String),
}

/// Graded matrix model of `su(p, q)` (over `Rat`) or its complexification
/// (over `Gauss`).
#[derive(Debug, Clone)]
pub struct GradedAlgebra<F: Field> {
    p: usize,
    q: usize,
    eps: Vec<i64>,
    labels: Vec<String>,
    mats: Vec<Mat<Gauss>>,
    degrees: Vec<i32>,
    starts: [usize; 6],
    table: Vec<Vec<SparseVec<F>>>,
    solver: SpanSolver<F>,
}

pub type GradedSU = GradedAlgebra<Rat>;
pub type ComplexGraded = GradedAlgebra<Gauss>;

/// Dimensions `(g-2, g-1, g0, g1, g2)` of the contact grading for CR dimension `n`.
pub fn contact_grading_dims(n: usize) -> [usize; 5] {
    [1, 2 * n, n * n + 1, 2 * n, 1]
}

fn idx(i: usize, j: usize) -> String {
    if i >= 10 || j >= 10 {
        format!("{i},{j}")
    } else {
        format!("{i}{j}")
    }
}

fn form_signs(p: usize, q: usize) -> Result<Vec<i64>, ParabolicError> {
    if p < 1 || q < 1 {
        return Err(ParabolicError::BadSignature { p, q });
    }
    Ok(std::iter::repeat_n(1, p - 1).chain(std::iter::repeat_n(-1, q - 1)).collect())
}

/// The Hermitian form with corner anti-diagonal ones and `diag(eps)` inside.
pub fn hermitian_form(eps: &[i64]) -> Mat<Gauss> {
    let big = eps.len() + 2;
    let mut h = Mat::zeros(big);
    h.set(0, big - 1, Gauss::one());
    h.set(big - 1, 0, Gauss::one());
    for (a, e) in eps.iter().enumerate() {
        h.set(a + 1, a + 1, Gauss::int(*e));
    }
    h
}

fn real_basis(eps: &[i64]) -> Vec<(String, i32, Mat<Gauss>)> {
    let n = eps.len();
    let big = n + 2;
    let l = big - 1;
    let i = Gauss::i;
    let unit = |a: usize, b: usize, c: Gauss| Mat::unit(big, a, b, c);
    let e = |a: usize| Gauss::int(eps[a - 1]);
    let mut out = vec![("Z".to_string(), -2, unit(l, 0, i()))];
    for a in 1..=n {
        out.push((format!("X{a}"), -1, unit(a, 0, Gauss::one()).sub(&unit(l, a, e(a)))));
        out.push((format!("Y{a}"), -1, unit(a, 0, i()).add(&unit(l, a, i() * e(a)))));
    }
    out.push(("S".into(), 0, unit(0, 0, Gauss::one()).sub(&unit(l, l, Gauss::one()))));
    let half_i = Gauss::new(Rat::zero(), ratio(-1, 2));
    for a in 1..=n {
        let d = unit(a, a, i()).add(&unit(0, 0, half_i.clone())).add(&unit(l, l, half_i.clone()));
        out.push((format!("D{a}"), 0, d));
    }
    for a in 1..=n {
        for b in (a + 1)..=n {
            let sg = e(a) * e(b);
            out.push((format!("A{}", idx(a, b)), 0, unit(a, b, Gauss::one()).sub(&unit(b, a, sg.clone()))));
            out.push((format!("B{}", idx(a, b)), 0, unit(a, b, i()).add(&unit(b, a, i() * sg))));
        }
    }
    for a in 1..=n {
        out.push((format!("U{a}"), 1, unit(0, a, Gauss::one()).sub(&unit(a, l, e(a)))));
        out.push((format!("V{a}"), 1, unit(0, a, i()).add(&unit(a, l, i() * e(a)))));
    }
    out.push(("W".into(), 2, unit(0, l, i())));
    out
}

fn complex_basis(n: usize) -> Vec<(String, i32, Mat<Gauss>)> {
    let big = n + 2;
    let l = big - 1;
    let e = |a: usize, b: usize| (format!("E{}", idx(a, b)), Mat::unit(big, a, b, Gauss::one()));
    let push = |out: &mut Vec<(String, i32, Mat<Gauss>)>, d: i32, (lab, m): (String, Mat<Gauss>)| out.push((lab, d, m));
    let mut out = Vec::new();
    push(&mut out, -2, e(l, 0));
    for a in 1..=n {
        push(&mut out, -1, e(a, 0));
    }
    for a in 1..=n {
        push(&mut out, -1, e(l, a));
    }
    out.push(("S".into(), 0, Mat::unit(big, 0, 0, Gauss::one()).sub(&Mat::unit(big, l, l, Gauss::one()))));
    for a in 1..=n {
        let h = Mat::unit(big, a, a, Gauss::one()).sub(&Mat::unit(big, a + 1, a + 1, Gauss::one()));
        out.push((format!("H{a}"), 0, h));
    }
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                push(&mut out, 0, e(a, b));
            }
        }
    }
    for a in 1..=n {
        push(&mut out, 1, e(0, a));
    }
    for a in 1..=n {
        push(&mut out, 1, e(a, l));
    }
    push(&mut out, 2, e(0, l));
    out
}

/// The real graded model of `su(p, q)` with `p + q = n + 2`.
pub fn graded_su(p: usize, q: usize) -> Result<GradedSU, ParabolicError> {
    let eps = form_signs(p, q)?;
    Ok(GradedAlgebra::build(p, q, eps.clone(), real_basis(&eps)))
}

/// The complexification `sl(p + q, C)` with the same grading, keeping the
/// real structure of `su(p, q)` for [`GradedAlgebra::sigma`].
pub fn graded_sl(p: usize, q: usize) -> Result<ComplexGraded, ParabolicError> {
    let eps = form_signs(p, q)?;
    let n = eps.len();
    Ok(GradedAlgebra::build(p, q, eps, complex_basis(n)))
}

impl<F: Field> GradedAlgebra<F> {
    fn build(p: usize, q: usize, eps: Vec<i64>, basis: Vec<(String, i32, Mat<Gauss>)>) -> Self {
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        let mut degrees = Vec::new();
        for (l, d, m) in basis {
            labels.push(l);
            degrees.push(d);
            mats.push(m);
        }
        let mut starts = [0; 6];
        for (k, d) in (-2..=2).enumerate() {
            starts[k + 1] = starts[k] + degrees.iter().filter(|x| **x == d).count();
        }
        let big = eps.len() + 2;
        let coords: Vec<SparseVec<F>> = mats.iter().map(|m| m.coords()).collect();
        let solver = SpanSolver::new(&coords, big * big * F::GAUSS_WIDTH).expect("graded basis is independent");
        let dim = mats.len();
        let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|a| ((a + 1)..dim).map(move |b| (a, b))).collect();
        let cs = par_map(&pairs, |(a, b)| {
            solver.coords(&mats[*a].commutator(&mats[*b]).coords()).expect("basis spans a Lie algebra")
        });
        let mut table = vec![vec![SparseVec::new(); dim]; dim];
        for ((a, b), c) in pairs.into_iter().zip(cs) {
            table[b][a] = c.iter().map(|(k, x)| (*k, x.negated())).collect();
            table[a][b] = c;
        }
        GradedAlgebra { p, q, eps, labels, mats, degrees, starts, table, solver }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// CR dimension `n = p + q - 2`.
    pub fn n(&self) -> usize {
        self.eps.len()
    }

    pub fn eps(&self) -> &[i64] {
        &self.eps
    }

    pub fn form(&self) -> Mat<Gauss> {
        hermitian_form(&self.eps)
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrices(&self) -> &[Mat<Gauss>] {
        &self.mats
    }

    pub fn degree(&self, a: usize) -> i32 {
        self.degrees[a]
    }

    /// Global indices of the degree `d` part; empty outside `-2..=2`.
    pub fn range(&self, d: i32) -> Range<usize> {
        if !(-2..=2).contains(&d) {
            return 0..0;
        }
        let k = (d + 2) as usize;
        self.starts[k]..self.starts[k + 1]
    }

    pub fn dims(&self) -> [usize; 5] {
        let mut out = [0; 5];
        for (k, d) in (-2..=2).enumerate() {
            out[k] = self.range(d).len();
        }
        out
    }

    /// Global index of the grading element `s`.
    pub fn grading_element(&self) -> usize {
        self.range(0).start
    }

    pub fn structure(&self, a: usize, b: usize) -> &SparseVec<F> {
        &self.table[a][b]
    }

    /// Bracket of two elements given in global coordinates.
    pub fn bracket(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::new();
        for (a, xa) in x {
            for (b, yb) in y {
                let c = &self.table[*a][*b];
                if !c.is_empty() {
                    acc = axpy(&acc, &xa.times(yb), c);
                }
            }
        }
        acc
    }

    /// Coordinates of a matrix in the graded basis, if it lies in the span.
    pub fn coords(&self, m: &Mat<Gauss>) -> Option<SparseVec<F>> {
        self.solver.coords(&m.coords())
    }

    pub fn matrix(&self, x: &SparseVec<F>) -> Mat<Gauss> {
        let big = self.n() + 2;
        x.iter().fold(Mat::zeros(big), |acc, (k, c)| acc.add(&self.mats[*k].scale(&c.to_gauss())))
    }

    /// `g0`-local coordinates to global ones.
    pub fn from_g0(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let off = self.range(0).start;
        x.iter().map(|(k, c)| (k + off, c.clone())).collect()
    }

    /// The `g0` component of a global vector, in local coordinates.
    pub fn to_g0(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let r = self.range(0);
        x.iter().filter(|(k, _)| r.contains(k)).map(|(k, c)| (k - r.start, c.clone())).collect()
    }

    /// Whether a subspace of `g0` (local coordinates) is closed under brackets.
    pub fn is_g0_subalgebra(&self, h: &Subspace<F>) -> bool {
        if h.ambient() != self.range(0).len() {
            return false;
        }
        let ech = h.echelon();
        let b = h.basis();
        let pairs: Vec<(usize, usize)> = (0..b.len()).flat_map(|i| ((i + 1)..b.len()).map(move |j| (i, j))).collect();
        par_map(&pairs, |(i, j)| {
            let c = self.bracket(&self.from_g0(&b[*i]), &self.from_g0(&b[*j]));
            ech.contains(&self.to_g0(&c))
        })
        .into_iter()
        .all(|ok| ok)
    }

    /// `[g_a, g_b]` lies in `g_{a+b}` for every pair of basis elements.
    pub fn grading_violation(&self) -> Option<(usize, usize)> {
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let r = self.range(self.degrees[a] + self.degrees[b]);
                if self.table[a][b].iter().any(|(k, _)| !r.contains(k)) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

impl ComplexGraded {
    /// Index of the matrix unit `E_ij` in the complex basis, if present.
    pub fn unit_index(&self, i: usize, j: usize) -> Option<usize> {
        let big = self.n() + 2;
        let u = Mat::unit(big, i, j, Gauss::one());
        self.mats.iter().position(|m| *m == u)
    }

    /// The real structure `X -> -H X* H` whose fixed points are `su(p, q)`,
    /// applied to a vector in global coordinates.
    pub fn sigma(&self, x: &SparseVec<Gauss>) -> SparseVec<Gauss> {
        let h = self.form();
        let m = self.matrix(x);
        let s = h.mul(&m.adjoint()).mul(&h).scale(&Gauss::int(-1));
        self.coords(&s).expect("sl(N) is closed under the real structure")
    }
}

impl<F: Field> fmt::Display for GradedAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if F::GAUSS_WIDTH == 1 { "sl" } else { "su" };
        let d = self.dims();
        if kind == "sl" {
            write!(f, "sl({}, C) graded as {:?}", self.p + self.q, d)
        } else {
            write!(f, "su({}, {}) graded as {:?}", self.p, self.q, d)
        }
    }
}

/// `W = Λ²g₋₁* ⊗ g₀` with the action of every `g0` basis element.
///
/// The basis vector with index `pair * dim g0 + k` is `e^u ∧ e^v ⊗ Y_k`,
/// where `pair` enumerates `u < v` lexicographically over the `g-1` basis and
/// `Y_k` is the `k`-th `g0` basis element.
#[derive(Debug, Clone)]
pub struct CurvatureModule<F: Field> {
    minus: usize,
    zero: usize,
    pairs: Vec<(usize, usize)>,
    actions: Vec<Vec<SparseVec<F>>>,
}

fn pair_index(m: usize, u: usize, v: usize) -> usize {
    // position of (u, v), u < v, in the lexicographic list of pairs
    u * (2 * m - u - 1) / 2 + (v - u - 1)
}

pub fn curvature_module<F: Field>(g: &GradedAlgebra<F>) -> CurvatureModule<F> {
    let rm = g.range(-1);
    let r0 = g.range(0);
    let (m, z) = (rm.len(), r0.len());
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| ((u + 1)..m).map(move |v| (u, v))).collect();
    let gens: Vec<usize> = r0.clone().collect();
    let actions = par_map(&gens, |x| {
        // ad_X on g-1: mm[a] = [X, e_a] in g-1 coordinates
        let mm: Vec<SparseVec<F>> = rm
            .clone()
            .map(|a| g.structure(*x, a).iter().map(|(c, v)| (c - rm.start, v.clone())).collect())
            .collect();
        let ad0: Vec<SparseVec<F>> = r0
            .clone()
            .map(|y| g.structure(*x, y).iter().map(|(c, v)| (c - r0.start, v.clone())).collect())
            .collect();
        // transpose of mm: for each u, the pairs (a, M_ua)
        let mut dual: Vec<SparseVec<F>> = vec![Vec::new(); m];
        for (a, col) in mm.iter().enumerate() {
            for (u, val) in col {
                dual[*u].push((a, val.clone()));
            }
        }
        let mut cols = Vec::with_capacity(pairs.len() * z);
        for (u, v) in &pairs {
            for l in 0..z {
                let mut img: Vec<(usize, F)> = Vec::new();
                let wedge = |a: usize, b: usize, c: F, img: &mut Vec<(usize, F)>| {
                    if a == b {
                        return;
                    }
                    let (lo, hi, c) = if a < b { (a, b, c) } else { (b, a, c.negated()) };
                    img.push((pair_index(m, lo, hi) * z + l, c));
                };
                for (a, val) in &dual[*u] {
                    wedge(*a, *v, val.negated(), &mut img);
                }
                for (b, val) in &dual[*v] {
                    wedge(*u, *b, val.negated(), &mut img);
                }
                let base = pair_index(m, *u, *v) * z;
                for (k, val) in &ad0[l] {
                    img.push((base + k, val.clone()));
                }
                cols.push(normalize(img));
            }
        }
        cols
    });
    CurvatureModule { minus: m, zero: z, pairs, actions }
}

fn normalize<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|(k, _)| *k);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (k, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == k => *y = y.plus(&x),
            _ => out.push((k, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

impl<F: Field> CurvatureModule<F> {
    pub fn dim(&self) -> usize {
        self.pairs.len() * self.zero
    }

    pub fn g0_dim(&self) -> usize {
        self.zero
    }

    /// Index of `e^u ∧ e^v ⊗ Y_k` for `u < v`.
    pub fn index(&self, u: usize, v: usize, k: usize) -> usize {
        pair_index(self.minus, u, v) * self.zero + k
    }

    /// Inverse of [`CurvatureModule::index`].
    pub fn component(&self, i: usize) -> (usize, usize, usize) {
        let (u, v) = self.pairs[i / self.zero];
        (u, v, i % self.zero)
    }

    /// Action matrix of the `k`-th `g0` basis element, as columns.
    pub fn action(&self, k: usize) -> &[SparseVec<F>] {
        &self.actions[k]
    }

    /// `X · w` for `X` in `g0` local coordinates.
    pub fn act(&self, x: &SparseVec<F>, w: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::new();
        for (k, xk) in x {
            for (j, wj) in w {
                acc = axpy(&acc, &xk.times(wj), &self.actions[*k][*j]);
            }
        }
        acc
    }

    /// Checks `action([X, Y]) = [action(X), action(Y)]` on all pairs of
    /// generators; returns the first failing pair.
    pub fn representation_violation(&self, g: &GradedAlgebra<F>) -> Option<(usize, usize)> {
        let z = self.zero;
        let pairs: Vec<(usize, usize)> = (0..z).flat_map(|a| ((a + 1)..z).map(move |b| (a, b))).collect();
        let bad = par_map(&pairs, |(a, b)| {
            let xa = vec![(*a, F::one())];
            let xb = vec![(*b, F::one())];
            let c = g.to_g0(&g.bracket(&g.from_g0(&xa), &g.from_g0(&xb)));
            (0..self.dim()).any(|j| {
                let e = vec![(j, F::one())];
                let lhs = self.act(&c, &e);
                let ab = self.act(&xa, &self.act(&xb, &e));
                let ba = self.act(&xb, &self.act(&xa, &e));
                !axpy(&axpy(&ab, &F::one().negated(), &ba), &F::one().negated(), &lhs).is_empty()
            })
        });
        pairs.into_iter().zip(bad).find(|(_, b)| *b).map(|(p, _)| p)
    }
}

/// `{ X in g0 : X · w = 0 }` in `g0` local coordinates.
pub fn annihilator<F: Field>(module: &CurvatureModule<F>, w: &SparseVec<F>) -> Subspace<F> {
    let cols: Vec<SparseVec<F>> = (0..module.zero).map(|k| module.act(&vec![(k, F::one())], w)).collect();
    let ker = column_kernel(&cols, module.dim());
    Subspace::new(module.zero, ker).expect("kernel basis is independent")
}

/// Vectors of `W` fixed by every element of the subalgebra `h` of `g0`.
pub fn invariant_subspace<F: Field>(
    g: &GradedAlgebra<F>,
    h: &Subspace<F>,
    module: &CurvatureModule<F>,
) -> Result<Subspace<F>, ParabolicError> {
    if !g.is_g0_subalgebra(h) {
        return Err(ParabolicError::NotSubalgebra);
    }
    let dim = module.dim();
    let blocks = par_map(h.basis(), |x| {
        let cols: Vec<SparseVec<F>> = (0..dim).map(|j| module.act(x, &vec![(j, F::one())])).collect();
        transpose(&cols, dim)
    });
    let ker = nullspace(blocks.into_iter().flatten(), dim);
    Ok(Subspace::new(dim, ker).expect("kernel basis is independent"))
}

/// Smallest `g0`-submodule of `W` containing the seed vectors.
pub fn generated_submodule<F: Field>(module: &CurvatureModule<F>, seeds: &[SparseVec<F>]) -> Subspace<F> {
    let dim = module.dim();
    let mut ech = Echelon::new(dim);
    let mut basis = Vec::new();
    let mut queue: Vec<SparseVec<F>> = seeds.to_vec();
    while let Some(v) = queue.pop() {
        let r = ech.reduce(&v);
        if r.is_empty() {
            continue;
        }
        ech.insert(r.clone());
        for k in 0..module.zero {
            queue.push(module.act(&vec![(k, F::one())], &r));
        }
        basis.push(r);
    }
    Subspace::new(dim, basis).expect("reduced vectors are independent")
}

/// A real subspace of `g0` carried into the complexified `g0`.
pub fn complexify_g0(real: &GradedSU, complex: &ComplexGraded, h: &Subspace<Rat>) -> Subspace<Gauss> {
    let vecs = h.basis().iter().map(|v| {
        let m = real.matrix(&real.from_g0(v));
        complex.to_g0(&complex.coords(&m).expect("su(p, q) sits inside sl(p + q)"))
    });
    Subspace::span(complex.range(0).len(), vecs)
}

/// The standard quaternionic structure matrix `Omega` on `C^{2m}`.
fn omega(m: usize) -> Mat<Gauss> {
    crate::liestruct::omega(m)
}

/// A rational unitary `U` used to conjugate the standard embedding.
pub fn twist_unitary(n: usize) -> Mat<Gauss> {
    let mut r = Mat::identity(n);
    if n >= 2 {
        r.set(0, 0, Gauss::real(ratio(3, 5)));
        r.set(0, 1, Gauss::real(ratio(-4, 5)));
        r.set(1, 0, Gauss::real(ratio(4, 5)));
        r.set(1, 1, Gauss::real(ratio(3, 5)));
    }
    let mut c = Mat::identity(n);
    if n >= 3 {
        let a = Gauss::real(ratio(3, 5));
        let b = Gauss::new(Rat::zero(), ratio(4, 5));
        c.set(1, 1, a.clone());
        c.set(1, 2, b.clone());
        c.set(2, 1, b);
        c.set(2, 2, a);
    }
    r.mul(&c)
}

/// The quaternionic structure `J v = J0 conj(v)` on `g-1 ≅ C^n` used by
/// [`sp_embedding`]: `J0 = Omega`, or `U Omega U^T` when `twisted`.
pub fn quaternionic_structure(n: usize, twisted: bool) -> Result<Mat<Gauss>, ParabolicError> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(ParabolicError::OddDimension(n));
    }
    let o = omega(n / 2);
    if !twisted {
        return Ok(o);
    }
    let u = twist_unitary(n);
    Ok(u.mul(&o).mul(&u.transpose()))
}

/// `sp(m)` inside the `u(n)`-part of `g0`, as the elements whose action on
/// `g-1 ≅ C^n` commutes with a quaternionic structure. Local `g0` coordinates.
pub fn sp_embedding(m: usize, g: &GradedSU, twisted: bool) -> Result<Subspace<Rat>, ParabolicError> {
    let n = g.n();
    if n != 2 * m {
        return Err(ParabolicError::OddDimension(n));
    }
    let j0 = quaternionic_structure(n, twisted)?;
    let r0 = g.range(0);
    // g0 element X acts on v = (X_a0) by v -> (A - X_00) v, A the middle block
    let block = |x: &Mat<Gauss>| {
        let mut b = Mat::zeros(n);
        for a in 0..n {
            for c in 0..n {
                let mut v = x.get(a + 1, c + 1).clone();
                if a == c {
                    v = v - x.get(0, 0).clone();
                }
                b.set(a, c, v);
            }
        }
        b
    };
    // the u(n)-part is everything after s
    let unitary: Vec<usize> = ((r0.start + 1)..r0.end).collect();
    let cols: Vec<SparseVec<Rat>> = par_map(&unitary, |k| {
        let b = block(&g.matrices()[*k]);
        b.mul(&j0).sub(&j0.mul(&b.conj())).coords()
    });
    let ker = column_kernel(&cols, 2 * n * n);
    let basis = ker.into_iter().map(|v| v.into_iter().map(|(k, c)| (k + 1, c)).collect()).collect();
    Ok(Subspace::new(r0.len(), basis).expect("kernel basis is independent"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProlongationResult {
    /// `real` or `complex`: the field the dimensions are counted over.
    pub field: &'static str,
    /// `dims[k - 1] = dim a_k`.
    pub dims: Vec<usize>,
    /// Whether `a_k` was realized inside `g_k` by inner derivations.
    pub realized: Vec<bool>,
}

impl ProlongationResult {
    /// True when every computed degree was realized, so `dims` is complete.
    pub fn complete(&self) -> bool {
        self.realized.iter().all(|r| *r)
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Tanaka prolongation of `(g-, a0)` up to `max_degree`.
///
/// Degree `k` is computed from the realized degrees `k - 1` and `k - 2`.
/// When some derivation of degree `k` is not `ad x` for an `x` in `g_k`, the
/// computation stops there with `realized[k - 1] = false`.
pub fn tanaka_prolongation<F: Field>(
    g: &GradedAlgebra<F>,
    a0: &Subspace<F>,
    max_degree: usize,
) -> Result<ProlongationResult, ParabolicError> {
    if !g.is_g0_subalgebra(a0) {
        return Err(ParabolicError::NotSubalgebra);
    }
    let dim = g.dim();
    let unit = |k: usize| vec![(k, F::one())];
    let xs: Vec<SparseVec<F>> = g.range(-1).map(unit).collect();
    let zs: Vec<SparseVec<F>> = g.range(-2).map(unit).collect();
    // levels[j] = basis of a_{j-2}, in global coordinates
    let mut levels: Vec<Vec<SparseVec<F>>> =
        vec![zs.clone(), xs.clone(), a0.basis().iter().map(|v| g.from_g0(v)).collect()];
    let mut dims = Vec::new();
    let mut realized = Vec::new();
    let mx = xs.len();
    let xpairs: Vec<(usize, usize)> = (0..mx).flat_map(|i| ((i + 1)..mx).map(move |j| (i, j))).collect();
    let nblocks = xpairs.len() + mx * zs.len();
    let xz_block = |i: usize, z: usize| xpairs.len() + i * zs.len() + z;
    for k in 1..=max_degree {
        let a = &levels[k + 1];
        let b = &levels[k];
        if a.is_empty() && b.is_empty() {
            dims.push(0);
            realized.push(true);
            levels.push(Vec::new());
            continue;
        }
        let place = |blk: usize, v: &SparseVec<F>| -> SparseVec<F> { v.iter().map(|(r, c)| (blk * dim + r, c.clone())).collect() };
        let mut cols = Vec::new();
        for i in 0..mx {
            for ab in a {
                let mut col = Vec::new();
                for (pi, (p, q)) in xpairs.iter().enumerate() {
                    if *p == i {
                        col.extend(place(pi, &neg(&g.bracket(ab, &xs[*q]))));
                    } else if *q == i {
                        col.extend(place(pi, &neg(&g.bracket(&xs[*p], ab))));
                    }
                }
                for (z, zv) in zs.iter().enumerate() {
                    col.extend(place(xz_block(i, z), &neg(&g.bracket(ab, zv))));
                }
                cols.push(normalize(col));
            }
        }
        for z in 0..zs.len() {
            for bb in b {
                let mut col = Vec::new();
                for (pi, (p, q)) in xpairs.iter().enumerate() {
                    let xy = g.bracket(&xs[*p], &xs[*q]);
                    if let Some((_, c)) = xy.iter().find(|(r, _)| *r == zs[z][0].0) {
                        col.extend(place(pi, &bb.iter().map(|(r, v)| (*r, v.times(c))).collect()));
                    }
                }
                for i in 0..mx {
                    col.extend(place(xz_block(i, z), &neg(&g.bracket(&xs[i], bb))));
                }
                cols.push(normalize(col));
            }
        }
        let ker = column_kernel(&cols, nblocks * dim);
        dims.push(ker.len());
        if ker.is_empty() {
            realized.push(true);
            levels.push(Vec::new());
            continue;
        }
        // realize each derivation as ad x, x in g_k
        let gk: Vec<usize> = g.range(k as i32).collect();
        let probes: Vec<SparseVec<F>> = xs.iter().chain(zs.iter()).cloned().collect();
        let stack = |x: &SparseVec<F>| -> SparseVec<F> {
            let mut out = Vec::new();
            for (t, pv) in probes.iter().enumerate() {
                out.extend(g.bracket(x, pv).into_iter().map(|(r, c)| (t * dim + r, c)));
            }
            out
        };
        let mut ech = Echelon::new(probes.len() * dim);
        let mut chosen = Vec::new();
        for y in &gk {
            let col = stack(&unit(*y));
            if matches!(ech.insert(col.clone()), crate::linalg::Insertion::Independent) {
                chosen.push((*y, col));
            }
        }
        let solver = SpanSolver::new(&chosen.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>(), probes.len() * dim)
            .expect("chosen columns are independent");
        let mut next = Vec::new();
        let mut ok = true;
        for f in &ker {
            // images f(X_i) and f(Z) assembled from the kernel coordinates
            let mut images = vec![SparseVec::new(); probes.len()];
            for (col, c) in f {
                let (t, v) = if *col < mx * a.len() {
                    (col / a.len(), &a[col % a.len()])
                } else {
                    let r = col - mx * a.len();
                    (mx + r / b.len(), &b[r % b.len()])
                };
                images[t] = axpy(&images[t], c, v);
            }
            let target: SparseVec<F> = images
                .iter()
                .enumerate()
                .flat_map(|(t, v)| v.iter().map(move |(r, c)| (t * dim + r, c.clone())))
                .collect();
            match solver.coords(&target) {
                Some(xc) => next.push(xc.iter().map(|(j, c)| (chosen[*j].0, c.clone())).collect()),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        realized.push(ok);
        if !ok {
            break;
        }
        levels.push(next);
    }
    Ok(ProlongationResult { field: F::NAME, dims, realized })
}

fn neg<F: Field>(v: &SparseVec<F>) -> SparseVec<F> {
    v.iter().map(|(k, c)| (*k, c.negated())).collect()
}

/// Sparse vector as JSON `[[index, "p/q"], ...]`.
pub fn sparse_to_json<F: Field>(v: &SparseVec<F>) -> Value {
    Value::Array(v.iter().map(|(k, c)| json!([k, c.to_string()])).collect())
}

/// Subspace as JSON `{"ambient": n, "basis": [[[index, "p/q"], ...], ...]}`.
pub fn subspace_to_json<F: Field>(s: &Subspace<F>) -> Value {
    json!({
        "ambient": s.ambient(),
        "basis": s.basis().iter().map(sparse_to_json).collect::<Vec<_>>(),
    })
}

fn parse_rat(s: &str) -> Result<Rat, ParabolicError> {
    let bad = || ParabolicError::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: num_bigint::BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: num_bigint::BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn sparse_from_json(v: &Value) -> Result<SparseVec<Rat>, ParabolicError> {
    let arr = v.as_array().ok_or_else(|| ParabolicError::Parse("expected an array".into()))?;
    let mut out = Vec::new();
    for e in arr {
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| ParabolicError::Parse(format!("bad entry {e}")))?;
        let k = pair[0].as_u64().ok_or_else(|| ParabolicError::Parse(format!("bad index {}", pair[0])))? as usize;
        let c = match &pair[1] {
            Value::String(s) => parse_rat(s)?,
            Value::Number(x) => parse_rat(&x.to_string())?,
            other => return Err(ParabolicError::Parse(format!("bad coefficient {other}"))),
        };
        out.push((k, c));
    }
    Ok(normalize(out))
}

/// Reads the format written by [`subspace_to_json`]; real coefficients only.
pub fn subspace_from_json(v: &Value) -> Result<Subspace<Rat>, ParabolicError> {
    let ambient = v["ambient"].as_u64().ok_or_else(|| ParabolicError::Parse("missing ambient".into()))? as usize;
    let basis = v["basis"]
        .as_array()
        .ok_or_else(|| ParabolicError::Parse("missing basis".into()))?
        .iter()
        .map(sparse_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    Subspace::new(ambient, basis).map_err(|k| ParabolicError::Parse(format!("basis vector {k} is out of range or dependent")))
}

/// Exact rational as text, `p/q` or `p`.
pub fn rat_text(r: &Rat) -> String {
    fmt_rat(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liestruct::{fingerprint_match, reference_algebra, Reference, RealLieAlgebra};
    use crate::scalar::rat;

    fn check_basis<F: Field>(g: &GradedAlgebra<F>, real: bool) {
        let h = g.form();
        for m in g.matrices() {
            assert!(m.trace().is_zero());
            if real {
                assert!(m.adjoint().mul(&h).add(&h.mul(m)).is_zero());
            }
        }
        assert!(g.grading_violation().is_none());
        let s = g.matrices()[g.grading_element()].clone();
        for (a, m) in g.matrices().iter().enumerate() {
            assert_eq!(s.commutator(m), m.scale(&Gauss::int(g.degree(a) as i64)));
        }
    }

    #[test]
    fn graded_dims() {
        for n in 2..=4 {
            let g = graded_su(1, n + 1).unwrap();
            assert_eq!(g.dims(), contact_grading_dims(n));
            check_basis(&g, true);
            let c = graded_sl(1, n + 1).unwrap();
            assert_eq!(c.dims(), contact_grading_dims(n));
            check_basis(&c, false);
        }
        let g = graded_su(2, 3).unwrap();
        check_basis(&g, true);
        assert_eq!(g.dim(), 24);
        assert!(graded_su(0, 3).is_err());
    }

    #[test]
    fn contact_nondegenerate() {
        let g = graded_su(2, 2).unwrap();
        let z = g.range(-2).start;
        let x1 = g.range(-1).start;
        assert_eq!(g.structure(x1, x1 + 1).iter().map(|(k, _)| *k).collect::<Vec<_>>(), vec![z]);
    }

    #[test]
    fn module_dims_and_scalar_action() {
        let g = graded_su(1, 3).unwrap();
        let w = curvature_module(&g);
        assert_eq!(w.dim(), 30);
        let s = vec![(0, rat(1))];
        for j in 0..w.dim() {
            assert_eq!(w.act(&s, &vec![(j, rat(1))]), vec![(j, rat(2))]);
        }
        assert!(w.representation_violation(&g).is_none());
        let c = graded_sl(1, 4).unwrap();
        let wc = curvature_module(&c);
        assert_eq!(wc.dim(), 15 * 10);
        assert!(wc.representation_violation(&c).is_none());
    }

    #[test]
    fn module_index_round_trip() {
        let g = graded_su(1, 4).unwrap();
        let w = curvature_module(&g);
        for i in 0..w.dim() {
            let (u, v, k) = w.component(i);
            assert_eq!(w.index(u, v, k), i);
        }
    }

    #[test]
    fn annihilator_of_zero_and_generic() {
        let g = graded_su(1, 3).unwrap();
        let w = curvature_module(&g);
        assert_eq!(annihilator(&w, &vec![]).dim(), 5);
        let a = annihilator(&w, &vec![(3, rat(1))]);
        assert!(!a.contains(&vec![(0, rat(1))]));
        assert!(g.is_g0_subalgebra(&a));
    }

    #[test]
    fn invariants_of_small_subalgebras() {
        let g = graded_su(1, 3).unwrap();
        let w = curvature_module(&g);
        assert_eq!(invariant_subspace(&g, &Subspace::zero(5), &w).unwrap().dim(), 30);
        assert_eq!(invariant_subspace(&g, &Subspace::span(5, [vec![(0, rat(1))]]), &w).unwrap().dim(), 0);
        let not_closed = Subspace::span(5, [vec![(3, rat(1))], vec![(4, rat(1))]]);
        assert_eq!(invariant_subspace(&g, &not_closed, &w), Err(ParabolicError::NotSubalgebra));
    }

    fn g0_algebra(g: &GradedSU, h: &Subspace<Rat>) -> RealLieAlgebra {
        let mats: Vec<Mat<Gauss>> = h.basis().iter().map(|v| g.matrix(&g.from_g0(v))).collect();
        let labels = (0..mats.len()).map(|k| format!("h{k}")).collect();
        crate::liestruct::matrix_algebra(labels, &mats).unwrap()
    }

    #[test]
    fn symplectic_embeddings() {
        let g = graded_su(1, 3).unwrap();
        let sp1 = sp_embedding(1, &g, false).unwrap();
        assert_eq!(sp1.dim(), 3);
        assert!(fingerprint_match(&g0_algebra(&g, &sp1), &reference_algebra(Reference::SU(2, 0))));
        let g4 = graded_su(1, 5).unwrap();
        let a = sp_embedding(2, &g4, false).unwrap();
        let b = sp_embedding(2, &g4, true).unwrap();
        assert_eq!((a.dim(), b.dim()), (10, 10));
        assert!(g4.is_g0_subalgebra(&a) && g4.is_g0_subalgebra(&b));
        assert!(a.intersection_dim(&b) < 10);
        assert!(fingerprint_match(&g0_algebra(&g4, &b), &reference_algebra(Reference::Sp(2))));
        assert!(sp_embedding(1, &g4, false).is_err());
        let j = quaternionic_structure(4, true).unwrap();
        assert_eq!(j.mul(&j.conj()), Mat::identity(4).scale(&Gauss::int(-1)));
    }

    #[test]
    fn prolongation_of_full_and_zero() {
        for n in 2..=3 {
            let g = graded_su(1, n + 1).unwrap();
            let z = g.range(0).len();
            let full = tanaka_prolongation(&g, &Subspace::whole(z), 3).unwrap();
            assert_eq!(full.dims, vec![2 * n, 1, 0]);
            assert!(full.complete());
            let zero = tanaka_prolongation(&g, &Subspace::zero(z), 3).unwrap();
            assert_eq!(zero.dims, vec![0, 0, 0]);
        }
        let c = graded_sl(2, 2).unwrap();
        let full = tanaka_prolongation(&c, &Subspace::whole(5), 3).unwrap();
        assert_eq!((full.field, full.dims), ("complex", vec![4, 1, 0]));
    }

    #[test]
    fn json_round_trip() {
        let g = graded_su(1, 3).unwrap();
        let s = sp_embedding(1, &g, false).unwrap();
        let back = subspace_from_json(&subspace_to_json(&s)).unwrap();
        assert_eq!(back, s);
        assert!(subspace_from_json(&json!({"ambient": 2, "basis": [[[0, "1/0"]]]})).is_err());
    }
}
