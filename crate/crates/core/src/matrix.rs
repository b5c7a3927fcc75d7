//! Dense square matrices over a [`Field`].

use std::fmt;

use crate::linalg::SparseVec;
use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(n: usize) -> Self {
        Mat { n, data: vec![F::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Matrix unit `E_ij` scaled by `c`.
    pub fn unit(n: usize, i: usize, j: usize, c: F) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, c);
        m
    }

    pub fn diagonal(d: &[F]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.n + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        let n = self.n;
        self.data.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(k, x)| (k / n, k % n, x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat { n: self.n, data: self.data.iter().map(|a| a.times(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(F::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for (i, j, x) in self.entries() {
            out.set(j, i, x.clone());
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for (i, j, x) in self.entries() {
            out.set(j, i, x.conj());
        }
        out
    }

    pub fn conj(&self) -> Self {
        Mat { n: self.n, data: self.data.iter().map(|x| x.conj()).collect() }
    }

    /// Entries in row-major order, each split into field coordinates.
    pub fn coords<G: Field>(&self) -> SparseVec<G> {
        let mut out = Vec::new();
        let w = G::GAUSS_WIDTH;
        let mut buf = Vec::with_capacity(w);
        for (k, x) in self.data.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            buf.clear();
            G::push_gauss(&x.to_gauss(), &mut buf);
            for (o, y) in buf.drain(..).enumerate() {
                if !y.is_zero() {
                    out.push((k * w + o, y));
                }
            }
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { n: self.n, data: self.data.iter().map(f).collect() }
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gauss;
    use num_traits::One;

    #[test]
    fn commutator_of_units() {
        let e12 = Mat::unit(2, 0, 1, Gauss::one());
        let e21 = Mat::unit(2, 1, 0, Gauss::one());
        let h = Mat::diagonal(&[Gauss::int(1), Gauss::int(-1)]);
        assert_eq!(e12.commutator(&e21), h);
        assert_eq!(h.trace(), Gauss::int(0));
    }

    #[test]
    fn real_coordinates_split_entries() {
        let m = Mat::unit(2, 1, 0, Gauss::from_ints(3, -1));
        let c: SparseVec<crate::scalar::Rat> = m.coords();
        assert_eq!(c, vec![(4, crate::scalar::rat(3)), (5, crate::scalar::rat(-1))]);
    }
}
