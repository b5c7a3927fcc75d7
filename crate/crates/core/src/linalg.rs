//! Exact sparse linear algebra over [`Field`]s.
//!
//! Everything here is row reduction: an incrementally maintained reduced row
//! echelon form ([`Echelon`]) backs kernels, span membership, coordinate
//! solves and linear relations. Results are deterministic: they depend only
//! on the order in which rows are supplied.

use rayon::prelude::*;

use crate::scalar::{Field, Rat};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<F: Field>(v: &SparseVec<F>, len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a + s*b` for sparse vectors.
pub fn axpy<F: Field>(a: &SparseVec<F>, s: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s.times(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.plus(&s.times(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_sparse<F: Field>(v: &SparseVec<F>, s: &F) -> SparseVec<F> {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.times(s))).collect()
}

fn get<F: Field>(v: &SparseVec<F>, idx: usize) -> Option<&F> {
    v.binary_search_by_key(&idx, |(i, _)| *i).ok().map(|p| &v[p].1)
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Debug, Clone)]
pub enum Insertion<F> {
    Independent,
    /// The vector was dependent. With tracking enabled, the relation lists
    /// coefficients over insertion indices (the new vector has coefficient 1).
    Dependent(Option<SparseVec<F>>),
}

/// Incrementally maintained reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    track: Option<Vec<SparseVec<F>>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
            track: None,
            inserted: 0,
        }
    }

    /// Like [`Echelon::new`] but remembers how each row combines the inserted
    /// vectors, which enables coordinate solves and relation extraction.
    pub fn tracked(ncols: usize) -> Self {
        let mut e = Self::new(ncols);
        e.track = Some(Vec::new());
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current rows. Returns the residual and, when
    /// tracking, the combination of inserted vectors that was subtracted.
    fn reduce_with(&self, v: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let hits: Vec<(usize, &F)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c].map(|r| (r, x)))
            .collect();
        if hits.is_empty() {
            return (v.clone(), Vec::new());
        }
        let mut acc: Vec<F> = dense_from_sparse(v, self.ncols);
        for (r, x) in &hits {
            for (c, y) in &self.rows[*r] {
                acc[*c] = acc[*c].minus(&x.times(y));
            }
        }
        let residual = sparse_from_dense(&acc);
        let mut comb = Vec::new();
        if let Some(track) = &self.track {
            let mut dense = vec![F::zero(); self.inserted + 1];
            for (r, x) in &hits {
                for (k, y) in &track[*r] {
                    dense[*k] = dense[*k].plus(&x.times(y));
                }
            }
            comb = sparse_from_dense(&dense);
        }
        (residual, comb)
    }

    /// Residual of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: SparseVec<F>) -> Insertion<F> {
        debug_assert!(v.iter().all(|(c, _)| *c < self.ncols));
        let index = self.inserted;
        self.inserted += 1;
        let (residual, subtracted) = self.reduce_with(&v);
        // combination expressing the residual: e_index - subtracted
        let comb = if self.track.is_some() {
            let neg: SparseVec<F> = subtracted.iter().map(|(k, x)| (*k, x.negated())).collect();
            axpy(&neg, &F::one(), &vec![(index, F::one())])
        } else {
            Vec::new()
        };
        if residual.is_empty() {
            return Insertion::Dependent(self.track.as_ref().map(|_| comb));
        }
        let (pivot, lead) = residual[0].clone();
        let inv = lead.recip();
        let row = scale_sparse(&residual, &inv);
        let comb = scale_sparse(&comb, &inv);
        for r in 0..self.rows.len() {
            if let Some(a) = get(&self.rows[r], pivot).cloned() {
                let na = a.negated();
                self.rows[r] = axpy(&self.rows[r], &na, &row);
                if let Some(track) = &mut self.track {
                    track[r] = axpy(&track[r], &na, &comb);
                }
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(row);
        self.pivots.push(pivot);
        if let Some(track) = &mut self.track {
            track.push(comb);
        }
        Insertion::Independent
    }

    /// Basis of `{x : row . x = 0 for every row}`, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_row[f].is_some() {
                continue;
            }
            let mut v: SparseVec<F> = Vec::new();
            for (r, p) in self.pivots.iter().enumerate() {
                if let Some(x) = get(&self.rows[r], f) {
                    v.push((*p, x.negated()));
                }
            }
            v.push((f, F::one()));
            v.sort_by_key(|(i, _)| *i);
            out.push(v);
        }
        out
    }
}

/// Kernel of the matrix with the given sparse rows.
pub fn nullspace<F: Field>(rows: impl IntoIterator<Item = SparseVec<F>>, ncols: usize) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        if e.rank() == ncols {
            break;
        }
        e.insert(r);
    }
    e.kernel()
}

/// Rank of a set of vectors of length `ncols`.
pub fn rank<F: Field>(vectors: impl IntoIterator<Item = SparseVec<F>>, ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of all linear relations `sum c_k v_k = 0` among the given vectors.
pub fn linear_relations<F: Field>(vectors: &[SparseVec<F>], ncols: usize) -> Vec<SparseVec<F>> {
    let mut e = Echelon::tracked(ncols);
    let mut out = Vec::new();
    for v in vectors {
        if let Insertion::Dependent(Some(rel)) = e.insert(v.clone()) {
            out.push(rel);
        }
    }
    out
}

/// Kernel of the map sending coordinate `k` to `columns[k]`.
pub fn column_kernel<F: Field>(columns: &[SparseVec<F>], nrows: usize) -> Vec<SparseVec<F>> {
    linear_relations(columns, nrows)
}

/// Expresses vectors in terms of a fixed independent family.
#[derive(Debug, Clone)]
pub struct SpanSolver<F: Field> {
    ech: Echelon<F>,
    len: usize,
}

impl<F: Field> SpanSolver<F> {
    /// Returns `Err(k)` if vector `k` depends on the earlier ones.
    pub fn new(basis: &[SparseVec<F>], ncols: usize) -> Result<Self, usize> {
        let mut ech = Echelon::tracked(ncols);
        for (k, v) in basis.iter().enumerate() {
            if let Insertion::Dependent(_) = ech.insert(v.clone()) {
                return Err(k);
            }
        }
        Ok(SpanSolver { ech, len: basis.len() })
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let (residual, comb) = self.ech.reduce_with(v);
        if residual.is_empty() {
            Some(comb)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.ech.contains(v)
    }
}

/// A linear subspace of `F^ambient` with an independent basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field = Rat> {
    ambient: usize,
    basis: Vec<SparseVec<F>>,
}

impl<F: Field> Subspace<F> {
    /// Fails with the index of the first vector that is out of range or
    /// dependent on the earlier ones.
    pub fn new(ambient: usize, basis: Vec<SparseVec<F>>) -> Result<Self, usize> {
        let mut ech = Echelon::new(ambient);
        for (k, v) in basis.iter().enumerate() {
            if v.iter().any(|(i, _)| *i >= ambient) {
                return Err(k);
            }
            if let Insertion::Dependent(_) = ech.insert(v.clone()) {
                return Err(k);
            }
        }
        Ok(Subspace { ambient, basis })
    }

    /// Span of arbitrary vectors, keeping the independent ones in order.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let mut ech = Echelon::new(ambient);
        let mut basis = Vec::new();
        for v in vectors {
            if let Insertion::Independent = ech.insert(v.clone()) {
                basis.push(v);
            }
        }
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|i| vec![(i, F::one())]).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut ech = Echelon::new(self.ambient);
        for b in &self.basis {
            ech.insert(b.clone());
        }
        ech
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, o: &Subspace<F>) -> bool {
        let ech = self.echelon();
        o.basis.iter().all(|v| ech.contains(v))
    }

    pub fn sum_dim(&self, o: &Subspace<F>) -> usize {
        Subspace::span(self.ambient, self.basis.iter().chain(&o.basis).cloned()).dim()
    }

    pub fn intersection_dim(&self, o: &Subspace<F>) -> usize {
        self.dim() + o.dim() - self.sum_dim(o)
    }
}

/// Signature `(pos, neg, zero)` of a Hermitian (for `Rat`: symmetric) matrix,
/// by congruence diagonalization.
pub fn hermitian_signature<F: Field>(m: &[Vec<F>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let diag = (k..n).find(|&j| !a[j][j].is_zero());
        let j = match diag {
            Some(j) => j,
            None => {
                let off = (k..n).flat_map(|j| (k..n).map(move |l| (j, l))).find(|&(j, l)| j != l && !a[j][l].is_zero());
                let Some((j, l)) = off else { break };
                // e_j <- e_j + c e_l with c = conj(a_jl) makes the diagonal 2|a_jl|^2
                let c = a[j][l].conj();
                let cc = c.conj();
                for r in 0..n {
                    let v = a[r][j].plus(&c.times(&a[r][l]));
                    a[r][j] = v;
                }
                for col in 0..n {
                    let v = a[j][col].plus(&cc.times(&a[l][col]));
                    a[j][col] = v;
                }
                j
            }
        };
        a.swap(j, k);
        for row in a.iter_mut() {
            row.swap(j, k);
        }
        let d = a[k][k].clone();
        for r in (k + 1)..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].over(&d);
            let fc = f.conj();
            for col in 0..n {
                let v = a[r][col].minus(&f.times(&a[k][col]));
                a[r][col] = v;
            }
            for row in a.iter_mut() {
                let v = row[r].minus(&fc.times(&row[k]));
                row[r] = v;
            }
        }
        let re: Rat = d.real_part();
        if re > Rat::from_integer(0.into()) {
            pos += 1;
        } else {
            neg += 1;
        }
        k += 1;
    }
    (pos, neg, n - pos - neg)
}

/// Transposes sparse columns into sparse rows.
pub fn transpose<F: Field>(columns: &[SparseVec<F>], nrows: usize) -> Vec<SparseVec<F>> {
    let mut rows: Vec<SparseVec<F>> = vec![Vec::new(); nrows];
    for (c, col) in columns.iter().enumerate() {
        for (r, x) in col {
            rows[*r].push((c, x.clone()));
        }
    }
    rows
}

/// Applies `f` to every item in parallel, keeping input order.
pub fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}
