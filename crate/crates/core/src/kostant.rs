//! Root data of type `A_l`, the weight-2 part of the Hasse diagram for the
//! parabolic with crossed nodes `{1, l}`, Satake diagrams of `su(p, q)`, and
//! the lowest weight vectors of the curvature module.
//!
//! Weights are written in fundamental-weight coordinates ("marks"). Nodes are
//! numbered from 1.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{column_kernel, rank, SparseVec};
use crate::parabolic::{annihilator, contact_grading_dims, ComplexGraded, CurvatureModule};
use crate::scalar::{Field, Gauss};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KostantError {
    #[error("rank {0} is too small, need l >= 3")]
    RankTooSmall(usize),
    #[error("n must be at least 1")]
    BadN,
    #[error("signature index k = {k} is outside 0..={max} for n = {n}")]
    BadIndex { n: usize, k: usize, max: usize },
    #[error("component has rank {component} but the algebra has rank {algebra}")]
    RankMismatch { component: usize, algebra: usize },
    #[error("no lowest weight vector of weight {0:?}")]
    EmptyWeightSpace(Vec<i64>),
}

/// Root system of type `A_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemA {
    rank: usize,
}

impl RootSystemA {
    pub fn new(rank: usize) -> Self {
        RootSystemA { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        }
    }

    /// Simple root `alpha_i` in marks (row `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        (1..=self.rank).map(|j| self.cartan(i, j)).collect()
    }

    /// Positive roots `alpha_i + ... + alpha_j` as coefficient vectors over the simple roots.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut out = Vec::new();
        for i in 1..=l {
            for j in i..=l {
                out.push((1..=l).map(|k| i64::from(k >= i && k <= j)).collect());
            }
        }
        out
    }

    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    /// Highest root, the highest weight of the adjoint representation.
    pub fn highest_root(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        out[0] += 1;
        out[self.rank - 1] += 1;
        out
    }

    /// Simple reflection `s_i` acting on a weight in marks.
    pub fn reflect_weight(&self, i: usize, w: &[i64]) -> Vec<i64> {
        let c = w[i - 1];
        w.iter().zip(self.simple_root(i)).map(|(x, a)| x - c * a).collect()
    }

    /// Simple reflection `s_i` acting on a root given over the simple roots.
    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Vec<i64> {
        let pairing: i64 = beta.iter().enumerate().map(|(j, b)| b * self.cartan(j + 1, i)).sum();
        let mut out = beta.to_vec();
        out[i - 1] -= pairing;
        out
    }

    /// `s_a s_b` applied to a weight.
    pub fn apply_word(&self, word: (usize, usize), w: &[i64]) -> Vec<i64> {
        self.reflect_weight(word.0, &self.reflect_weight(word.1, w))
    }

    /// Affine action `w(mu + rho) - rho`.
    pub fn affine(&self, word: (usize, usize), mu: &[i64]) -> Vec<i64> {
        let shifted: Vec<i64> = mu.iter().map(|x| x + 1).collect();
        self.apply_word(word, &shifted).into_iter().map(|x| x - 1).collect()
    }

    /// Inversion set `{alpha_a, s_a(alpha_b)}` of `s_a s_b`.
    pub fn inversions(&self, word: (usize, usize)) -> Vec<Vec<i64>> {
        let unit = |i: usize| (1..=self.rank).map(|k| i64::from(k == i)).collect::<Vec<_>>();
        vec![unit(word.0), self.reflect_root(word.0, &unit(word.1))]
    }
}

/// A weight-2 component: a length-2 word `s_a s_b` in `W^p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HasseComponent {
    pub word: (usize, usize),
    /// Marks of minus the lowest weight, i.e. of `w(lambda + rho) - rho`.
    pub weight: Vec<i64>,
    /// The word paired with this one under the diagram involution; `None`
    /// when the component is self-conjugate.
    pub conjugate_partner: Option<(usize, usize)>,
    /// Eigenvalue of the grading element on the component.
    pub homogeneity: i64,
}

impl HasseComponent {
    pub fn rank(&self) -> usize {
        self.weight.len()
    }

    /// Marks of the lowest weight.
    pub fn lowest_weight(&self) -> Vec<i64> {
        self.weight.iter().map(|x| -x).collect()
    }
}

fn crossed(l: usize, beta: &[i64]) -> bool {
    beta[0] > 0 || beta[l - 1] > 0
}

/// Length-2 elements of `W^p` for crossed nodes `{1, l}`, in lexicographic order
/// of their words (commuting words are listed once, smaller word first).
pub fn hasse_weight2(l: usize) -> Result<Vec<HasseComponent>, KostantError> {
    if l < 3 {
        return Err(KostantError::RankTooSmall(l));
    }
    let rs = RootSystemA::new(l);
    let lambda = rs.highest_root();
    let regular: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let mut words: Vec<((usize, usize), Vec<i64>)> = Vec::new();
    for a in 1..=l {
        for b in 1..=l {
            if a == b || !rs.inversions((a, b)).iter().all(|r| crossed(l, r)) {
                continue;
            }
            let image = rs.apply_word((a, b), &regular);
            if words.iter().all(|(_, im)| *im != image) {
                words.push(((a, b), image));
            }
        }
    }
    let flip = |w: &[i64]| w.iter().rev().copied().collect::<Vec<_>>();
    let out = words
        .iter()
        .map(|(word, image)| {
            // theta w theta sends the (symmetric) regular weight to the flipped image
            let mirrored = flip(image);
            let partner = words.iter().find(|(_, im)| *im == mirrored).map(|(w, _)| *w);
            let weight = rs.affine(*word, &lambda);
            let homogeneity = -weight.iter().sum::<i64>();
            HasseComponent {
                word: *word,
                weight,
                conjugate_partner: partner.filter(|p| p != word),
                homogeneity,
            }
        })
        .collect();
    Ok(out)
}

/// Groups components into real ones: conjugate pairs and self-conjugate singletons.
pub fn real_components(comps: &[HasseComponent]) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
    for c in comps {
        if out.iter().any(|g| g.contains(&c.word)) {
            continue;
        }
        let mut group = vec![c.word];
        if let Some(p) = c.conjugate_partner {
            group.push(p);
        }
        out.push(group);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    White,
    Black,
}

/// Satake diagram of `su(k + 1, n - k + 1)` with crossed nodes `{1, n + 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SatakeData {
    pub arrows: usize,
    pub black_nodes: usize,
    pub white_nodes: usize,
    pub crossed_nodes: Vec<usize>,
    pub nodes: Vec<NodeKind>,
    pub arrow_pairs: Vec<(usize, usize)>,
}

fn check_index(n: usize, k: usize) -> Result<(), KostantError> {
    if n == 0 {
        return Err(KostantError::BadN);
    }
    if 2 * k > n {
        return Err(KostantError::BadIndex { n, k, max: n / 2 });
    }
    Ok(())
}

pub fn satake(k: usize, n: usize) -> Result<SatakeData, KostantError> {
    check_index(n, k)?;
    let l = n + 1;
    let p = k + 1;
    let nodes: Vec<NodeKind> =
        (1..=l).map(|i| if i > p && i <= l - p { NodeKind::Black } else { NodeKind::White }).collect();
    let arrow_pairs: Vec<(usize, usize)> = (1..=p).map(|i| (i, l + 1 - i)).filter(|(a, b)| a < b).collect();
    let black = nodes.iter().filter(|x| **x == NodeKind::Black).count();
    Ok(SatakeData {
        arrows: arrow_pairs.len(),
        black_nodes: black,
        white_nodes: l - black,
        crossed_nodes: vec![1, l],
        nodes,
        arrow_pairs,
    })
}

/// Text rendering of a decorated diagram: a node line (`x` crossed, `*`
/// black, `o` white), an optional line of marks, and the arrow pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub satake: SatakeData,
    pub marks: Option<Vec<i64>>,
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.satake;
        let widest = self.marks.iter().flatten().map(|m| m.to_string().len()).max().unwrap_or(1);
        let w = (widest + 2).max(4);
        let mut line = String::new();
        for (i, kind) in s.nodes.iter().enumerate() {
            let glyph = if s.crossed_nodes.contains(&(i + 1)) {
                'x'
            } else if *kind == NodeKind::Black {
                '*'
            } else {
                'o'
            };
            let fill = if i == 0 { ' ' } else { '-' };
            line.extend(std::iter::repeat_n(fill, w - 1));
            line.push(glyph);
        }
        writeln!(f, "{line}")?;
        if let Some(marks) = &self.marks {
            let row: String = marks.iter().map(|m| format!("{m:>w$}")).collect();
            writeln!(f, "{row}")?;
        }
        if s.arrow_pairs.is_empty() {
            writeln!(f, "arrows: none")
        } else {
            let a: Vec<String> = s.arrow_pairs.iter().map(|(x, y)| format!("{x}<->{y}")).collect();
            writeln!(f, "arrows: {}", a.join(" "))
        }
    }
}

/// Lowest weight vectors of one component inside the complexified module.
#[derive(Debug, Clone)]
pub struct LowestWeight {
    pub vectors: Vec<SparseVec<Gauss>>,
    /// Marks of the weight of the vectors.
    pub weight: Vec<i64>,
    /// Whether the span is preserved by the real structure.
    pub real: bool,
}

/// Weight of a basis matrix in `epsilon` coordinates; zero for diagonal ones.
fn matrix_weight(g: &ComplexGraded, k: usize) -> Vec<i64> {
    let big = g.n() + 2;
    let mut w = vec![0; big];
    let m = &g.matrices()[k];
    let entries: Vec<(usize, usize)> = m.entries().map(|(i, j, _)| (i, j)).collect();
    if let [(i, j)] = entries[..] {
        w[i] += 1;
        w[j] -= 1;
    }
    w
}

fn marks_of(eps: &[i64]) -> Vec<i64> {
    eps.windows(2).map(|p| p[0] - p[1]).collect()
}

/// Marks of the weight of the module basis vector `i`.
pub fn module_weight(g: &ComplexGraded, module: &CurvatureModule<Gauss>, i: usize) -> Vec<i64> {
    let (u, v, k) = module.component(i);
    let m0 = g.range(-1).start;
    let z0 = g.range(0).start;
    let (wu, wv, wy) = (matrix_weight(g, m0 + u), matrix_weight(g, m0 + v), matrix_weight(g, z0 + k));
    let eps: Vec<i64> = (0..wu.len()).map(|t| wy[t] - wu[t] - wv[t]).collect();
    marks_of(&eps)
}

/// The real structure of `su(p, q)` extended to the complexified module.
pub fn module_sigma(g: &ComplexGraded, module: &CurvatureModule<Gauss>, w: &SparseVec<Gauss>) -> SparseVec<Gauss> {
    let rm = g.range(-1);
    let r0 = g.range(0);
    // sigma(e_x) = kappa_x e_{tau x} on g-1
    let tau: Vec<(usize, Gauss)> = rm
        .clone()
        .map(|x| {
            let img = g.sigma(&vec![(x, Gauss::from_int(1))]);
            assert_eq!(img.len(), 1, "sigma permutes the g-1 basis up to scalars");
            (img[0].0 - rm.start, img[0].1.clone())
        })
        .collect();
    // sigma on the dual basis: e^u -> conj(kappa_x) e^x with tau x = u
    let dual: Vec<(usize, Gauss)> = (0..tau.len())
        .map(|u| {
            let x = tau.iter().position(|(t, _)| *t == u).expect("tau is a permutation");
            (x, tau[x].1.conj())
        })
        .collect();
    let mut out: Vec<(usize, Gauss)> = Vec::new();
    for (i, c) in w {
        let (u, v, k) = module.component(*i);
        let (x, cu) = &dual[u];
        let (y, cv) = &dual[v];
        if x == y {
            continue;
        }
        let (lo, hi, sign) = if x < y { (*x, *y, 1) } else { (*y, *x, -1) };
        let coeff = c.conj().times(cu).times(cv).times(&Gauss::from_int(sign));
        let sy = g.to_g0(&g.sigma(&vec![(r0.start + k, Gauss::from_int(1))]));
        for (kk, val) in sy {
            out.push((module.index(lo, hi, kk), coeff.times(&val)));
        }
    }
    out.sort_by_key(|(k, _)| *k);
    let mut merged: SparseVec<Gauss> = Vec::new();
    for (k, x) in out {
        match merged.last_mut() {
            Some((j, y)) if *j == k => *y = y.plus(&x),
            _ => merged.push((k, x)),
        }
    }
    merged.retain(|(_, x)| !x.is_zero());
    merged
}

/// Weight space of the component's lowest weight, cut down to the vectors
/// killed by the lowering operators `E_{a+1,a}` of the semisimple part of `g0`.
pub fn lowest_weight_vectors(
    g: &ComplexGraded,
    module: &CurvatureModule<Gauss>,
    comp: &HasseComponent,
) -> Result<LowestWeight, KostantError> {
    let l = g.n() + 1;
    if comp.rank() != l {
        return Err(KostantError::RankMismatch { component: comp.rank(), algebra: l });
    }
    let mu = comp.lowest_weight();
    let space: Vec<usize> = (0..module.dim()).filter(|i| module_weight(g, module, *i) == mu).collect();
    let z0 = g.range(0).start;
    let lowering: Vec<usize> = (1..g.n())
        .map(|a| g.unit_index(a + 1, a).expect("lowering operator is a basis element") - z0)
        .collect();
    let one = Gauss::from_int(1);
    let dim = module.dim();
    let cols: Vec<SparseVec<Gauss>> = space
        .iter()
        .map(|i| {
            let e = vec![(*i, one.clone())];
            let mut col = Vec::new();
            for (t, lo) in lowering.iter().enumerate() {
                let img = module.act(&vec![(*lo, one.clone())], &e);
                col.extend(img.into_iter().map(|(r, c)| (t * dim + r, c)));
            }
            col
        })
        .collect();
    let ker = column_kernel(&cols, lowering.len().max(1) * dim);
    if ker.is_empty() {
        return Err(KostantError::EmptyWeightSpace(mu));
    }
    let vectors: Vec<SparseVec<Gauss>> =
        ker.into_iter().map(|r| r.into_iter().map(|(j, c)| (space[j], c)).collect()).collect();
    let sig: Vec<SparseVec<Gauss>> = vectors.iter().map(|v| module_sigma(g, module, v)).collect();
    let real = rank(vectors.iter().cloned().chain(sig), dim) == vectors.len();
    Ok(LowestWeight { vectors, weight: mu, real })
}

/// Complex dimension of the annihilator in `g0` of a module vector.
pub fn annihilator_dim(module: &CurvatureModule<Gauss>, w: &SparseVec<Gauss>) -> usize {
    annihilator(module, w).dim()
}

/// Invariants of `sp(m)` (with `n = 2m`) in the curvature module of
/// `su(1, n + 1)`, for the standard and the twisted embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymplecticCheck {
    pub n: usize,
    pub subalgebra_dim: usize,
    /// Real dimension of `W`.
    pub module_dim: usize,
    /// Real dimension of the invariants in all of `W`, per embedding.
    pub module_invariants: [usize; 2],
    /// Complex dimension of the submodule generated by the lowest weight
    /// vector of the `(1, l)` component and its conjugate.
    pub component_dim: usize,
    /// Complex dimension of the invariants inside that submodule, per embedding.
    pub component_invariants: [usize; 2],
}

pub fn symplectic_check(m: usize) -> Result<SymplecticCheck, crate::parabolic::ParabolicError> {
    use crate::parabolic::{complexify_g0, curvature_module, generated_submodule, graded_sl, graded_su, invariant_subspace, sp_embedding};
    let n = 2 * m;
    let g = graded_su(1, n + 1)?;
    let c = graded_sl(1, n + 1)?;
    let w = curvature_module(&g);
    let wc = curvature_module(&c);
    let l = n + 1;
    let comp = hasse_weight2(l)
        .ok()
        .and_then(|cs| cs.into_iter().find(|x| x.word == (1, l)))
        .ok_or(crate::parabolic::ParabolicError::OddDimension(n))?;
    let lw = lowest_weight_vectors(&c, &wc, &comp).map_err(|e| crate::parabolic::ParabolicError::Parse(e.to_string()))?;
    let mut seeds = lw.vectors.clone();
    seeds.extend(lw.vectors.iter().map(|v| module_sigma(&c, &wc, v)));
    let component = generated_submodule(&wc, &seeds);
    let mut module_invariants = [0; 2];
    let mut component_invariants = [0; 2];
    let mut subalgebra_dim = 0;
    for (t, twisted) in [false, true].into_iter().enumerate() {
        let h = sp_embedding(m, &g, twisted)?;
        subalgebra_dim = h.dim();
        module_invariants[t] = invariant_subspace(&g, &h, &w)?.dim();
        let hc = complexify_g0(&g, &c, &h);
        component_invariants[t] = invariant_subspace(&c, &hc, &wc)?.intersection_dim(&component);
    }
    Ok(SymplecticCheck {
        n,
        subalgebra_dim,
        module_dim: w.dim(),
        module_invariants,
        component_dim: component.dim(),
        component_invariants,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundsTable {
    pub n: usize,
    pub k: usize,
    pub max_dim: usize,
    pub submax_dim: usize,
    pub universal_bound: Option<usize>,
    pub stability_group_note: usize,
    /// Bound on the annihilator of a curvature value in `g0`.
    pub annihilator_bound: Option<usize>,
    /// `dim g-2 + dim g-1 + annihilator_bound`.
    pub bound_from_grading: Option<usize>,
}

pub fn bounds(n: usize, k: usize) -> Result<BoundsTable, KostantError> {
    check_index(n, k)?;
    let max_dim = (n + 2) * (n + 2) - 1;
    let submax_dim = match (n, k) {
        (1, _) => 3,
        (_, 0) => n * n + 3,
        _ => n * n + 4,
    };
    let annihilator_bound = (n >= 2).then(|| if k == 0 { n * n - 2 * n + 2 } else { n * n - 2 * n + 3 });
    let d = contact_grading_dims(n);
    Ok(BoundsTable {
        n,
        k,
        max_dim,
        submax_dim,
        universal_bound: (n >= 2).then_some(n * n + 4),
        stability_group_note: n * n + 2 * n + 2,
        annihilator_bound,
        bound_from_grading: annihilator_bound.map(|a| d[0] + d[1] + a),
    })
}
