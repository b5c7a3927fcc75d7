//! Independent floating point and integer oracles shared by the test targets.
#![allow(dead_code)]

use cr_symmetry::linalg::Subspace;
use cr_symmetry::matrix::Mat;
use cr_symmetry::parabolic::GradedSU;
use cr_symmetry::scalar::{Gauss, Rat};
use num_traits::ToPrimitive;

pub const F64_RANK_TOL: f64 = 1e-9;

pub fn f(r: &Rat) -> f64 {
    r.to_f64().expect("finite rational")
}

/// (pos, neg, zero) of a real symmetric matrix by symmetric elimination.
pub fn inertia(m: &[Vec<f64>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut out = (0, 0, 0);
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        // largest diagonal pivot, else mix two rows to create one
        let (pi, pv) = alive.iter().map(|&i| (i, a[i][i])).fold((usize::MAX, 0.0_f64), |b, x| if x.1.abs() > b.1.abs() { x } else { b });
        if pv.abs() <= F64_RANK_TOL {
            let pair = alive
                .iter()
                .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                .find(|&(i, j)| i != j && a[i][j].abs() > F64_RANK_TOL);
            let Some((i, j)) = pair else {
                out.2 += alive.len();
                break;
            };
            // e_i <- e_i + e_j
            for k in 0..n {
                a[i][k] += a[j][k];
            }
            for k in 0..n {
                a[k][i] += a[k][j];
            }
            continue;
        }
        if pv > 0.0 {
            out.0 += 1;
        } else {
            out.1 += 1;
        }
        alive.retain(|&i| i != pi);
        for &i in &alive {
            let c = a[i][pi] / pv;
            for &j in &alive {
                a[i][j] -= c * a[pi][j];
            }
        }
    }
    out
}

/// Rank by Gaussian elimination with partial pivoting.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())) else { break };
        if a[p][c].abs() <= tol {
            continue;
        }
        a.swap(r, p);
        let pivot = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            let x = row[c] / pivot[c];
            if x != 0.0 {
                for k in c..ncols {
                    row[k] -= x * pivot[k];
                }
            }
        }
        r += 1;
    }
    r
}

/// Solves a square system, panicking when singular.
pub fn solve(m: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.iter().zip(b).map(|(r, x)| r.iter().copied().chain([*x]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        assert!(a[p][c].abs() > F64_RANK_TOL, "singular system");
        a.swap(c, p);
        for i in 0..n {
            if i != c {
                let x = a[i][c] / a[c][c];
                for k in c..=n {
                    a[i][k] -= x * a[c][k];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

pub type CMat = Vec<Vec<(f64, f64)>>;

pub fn cmat(m: &Mat<Gauss>) -> CMat {
    let n = m.size();
    (0..n).map(|i| (0..n).map(|j| (f(&m.get(i, j).re), f(&m.get(i, j).im))).collect()).collect()
}

pub fn cmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let mut out = vec![vec![(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let (x, y) = a[i][k];
            if x == 0.0 && y == 0.0 {
                continue;
            }
            for j in 0..n {
                let (u, v) = b[k][j];
                out[i][j].0 += x * u - y * v;
                out[i][j].1 += x * v + y * u;
            }
        }
    }
    out
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    let p = cmul(a, b);
    let q = cmul(b, a);
    p.iter().zip(&q).map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x.0 - y.0, x.1 - y.1)).collect()).collect()
}

fn flatten(m: &CMat) -> Vec<f64> {
    m.iter().flat_map(|r| r.iter().flat_map(|(x, y)| [*x, *y])).collect()
}

/// Real coordinates of matrices in the real span of `basis`, by normal equations.
pub struct Coordinates {
    basis: Vec<Vec<f64>>,
    gram: Vec<Vec<f64>>,
}

impl Coordinates {
    pub fn new(basis: &[CMat]) -> Self {
        let basis: Vec<Vec<f64>> = basis.iter().map(flatten).collect();
        let gram = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
        Coordinates { basis, gram }
    }

    pub fn of(&self, m: &CMat) -> Vec<f64> {
        let v = flatten(m);
        let rhs: Vec<f64> = self.basis.iter().map(|b| dot(b, &v)).collect();
        let x = solve(&self.gram, &rhs);
        let back: Vec<f64> = (0..v.len()).map(|k| self.basis.iter().zip(&x).map(|(b, c)| b[k] * c).sum()).collect();
        assert!(v.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-8), "matrix outside the span");
        x
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Real dimension of the `h`-invariants in `Hom(Lambda^2 g-1, g0)`, built
/// from matrix commutators alone.
pub fn invariants_oracle(g: &GradedSU, h: &Subspace<Rat>) -> usize {
    let mats: Vec<CMat> = g.matrices().iter().map(cmat).collect();
    let v: Vec<CMat> = g.range(-1).map(|i| mats[i].clone()).collect();
    let z: Vec<CMat> = g.range(0).map(|i| mats[i].clone()).collect();
    let cv = Coordinates::new(&v);
    let cz = Coordinates::new(&z);
    let (dv, dz) = (v.len(), z.len());
    let pairs: Vec<(usize, usize)> = (0..dv).flat_map(|a| ((a + 1)..dv).map(move |b| (a, b))).collect();
    let pidx = |a: usize, b: usize| -> (usize, f64) {
        if a < b {
            (pairs.iter().position(|p| *p == (a, b)).unwrap(), 1.0)
        } else {
            (pairs.iter().position(|p| *p == (b, a)).unwrap(), -1.0)
        }
    };
    let dim = pairs.len() * dz;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for x in h.basis() {
        let mut hm: CMat = vec![vec![(0.0, 0.0); z[0].len()]; z[0].len()];
        for (k, c) in x {
            let c = f(c);
            for (i, row) in z[*k].iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    hm[i][j].0 += c * e.0;
                    hm[i][j].1 += c * e.1;
                }
            }
        }
        // av[u][a] = coordinate a of [h, e_u]
        let av: Vec<Vec<f64>> = v.iter().map(|e| cv.of(&commutator(&hm, e))).collect();
        let az: Vec<Vec<f64>> = z.iter().map(|e| cz.of(&commutator(&hm, e))).collect();
        // (h phi)(e_u, e_w) = h.phi(e_u, e_w) - phi([h,e_u], e_w) - phi(e_u, [h,e_w])
        let mut op = vec![vec![0.0; dim]; dim];
        for p in 0..pairs.len() {
            for k in 0..dz {
                let col = p * dz + k;
                // phi = e^{uw} (x) e_k; image evaluated on all pairs
                for (j, c) in az[k].iter().enumerate() {
                    op[p * dz + j][col] += c;
                }
                for (q, &(s, t)) in pairs.iter().enumerate() {
                    let mut coeff = 0.0;
                    for a in 0..dv {
                        // phi(h e_s, e_t) with h e_s = sum_a av[s][a] e_a
                        if av[s][a] != 0.0 && a != t {
                            let (pi, sg) = pidx(a, t);
                            if pi == p {
                                coeff += av[s][a] * sg;
                            }
                        }
                        if av[t][a] != 0.0 && s != a {
                            let (pi, sg) = pidx(s, a);
                            if pi == p {
                                coeff += av[t][a] * sg;
                            }
                        }
                    }
                    op[q * dz + k][col] -= coeff;
                }
            }
        }
        rows.extend(op);
    }
    dim - rank(&rows, F64_RANK_TOL)
}

/// Cartan matrix of `A_l`, written out directly.
pub fn cartan_a(l: usize) -> Vec<Vec<i64>> {
    (0..l)
        .map(|i| (0..l).map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 }).collect())
        .collect()
}

/// `w . mu = w(mu + rho) - rho` for `w = s_a s_b`, fundamental weight coordinates.
pub fn affine_by_hand(l: usize, word: (usize, usize), mu: &[i64]) -> Vec<i64> {
    let c = cartan_a(l);
    let mut x: Vec<i64> = mu.iter().map(|m| m + 1).collect();
    for i in [word.1 - 1, word.0 - 1] {
        let k = x[i];
        for j in 0..l {
            x[j] -= k * c[i][j];
        }
    }
    x.iter().map(|m| m - 1).collect()
}

/// Weyl dimension formula for `sl(r + 1)` with highest weight marks `m`.
pub fn weyl_dim_a(m: &[i64]) -> u128 {
    let r = m.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        for j in i..r {
            let s: i64 = m[i..=j].iter().sum::<i64>() + (j - i + 1) as i64;
            num *= s as u128;
            den *= (j - i + 1) as u128;
        }
    }
    num / den
}

pub fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
