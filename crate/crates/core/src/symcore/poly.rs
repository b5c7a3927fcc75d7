use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::scalar::{rat, Gauss, Rat};

/// Exponent vector with trailing zeros trimmed, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[u16; 12]>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, e: u16) -> Self {
        let mut m = Monomial::default();
        if e > 0 {
            m.exps.resize(index + 1, 0);
            m.exps[index] = e;
            m.degree = e as u32;
        }
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut m = Monomial { exps: exps.iter().copied().collect(), degree: 0 };
        m.trim();
        m.degree = m.exps.iter().map(|e| *e as u32).sum();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, index: usize) -> u16 {
        self.exps.get(index).copied().unwrap_or(0)
    }

    /// Nonzero `(variable, exponent)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (i, *e))
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= o.exps.len() { (self, o) } else { (o, self) };
        let mut exps = long.exps.clone();
        for (i, e) in short.exps.iter().enumerate() {
            exps[i] += e;
        }
        Monomial { exps, degree: self.degree + o.degree }
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if o.exps.len() > self.exps.len() {
            return None;
        }
        let mut exps = self.exps.clone();
        for (i, e) in o.exps.iter().enumerate() {
            if exps[i] < *e {
                return None;
            }
            exps[i] -= e;
        }
        let mut m = Monomial { exps, degree: self.degree - o.degree };
        m.trim();
        Some(m)
    }

    /// Drops variable `index`, returning its exponent.
    pub fn without(&self, index: usize) -> (Monomial, u16) {
        let e = self.exp(index);
        if e == 0 {
            return (self.clone(), 0);
        }
        let mut m = self.clone();
        m.exps[index] = 0;
        m.degree -= e as u32;
        m.trim();
        (m, e)
    }

    /// Renames variables through `map`.
    pub fn permuted(&self, map: impl Fn(usize) -> usize) -> Monomial {
        let mut exps: SmallVec<[u16; 12]> = SmallVec::new();
        for (i, e) in self.support() {
            let j = map(i);
            if exps.len() <= j {
                exps.resize(j + 1, 0);
            }
            exps[j] += e;
        }
        let mut m = Monomial { exps, degree: self.degree };
        m.trim();
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree.cmp(&o.degree).then_with(|| {
            let n = self.exps.len().max(o.exps.len());
            for i in 0..n {
                match self.exp(i).cmp(&o.exp(i)) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Sparse polynomial with Gaussian-rational coefficients over indexed
/// variables. Terms are kept in graded-lex order with no zero coefficients,
/// so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, Gauss>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Gauss) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(Gauss::one())
    }

    pub fn var(index: usize) -> Self {
        Self::term(Gauss::one(), Monomial::var(index))
    }

    pub fn term(c: Gauss, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Gauss)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Gauss)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Gauss {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Gauss {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Gauss)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Gauss) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (mut acc, other) = if self.len() >= o.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c);
        }
        acc
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut acc = self.clone();
        for (m, c) in &o.terms {
            acc.add_term(m.clone(), &-c);
        }
        acc
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Gauss) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn scale_rat(&self, s: &Rat) -> Poly {
        self.scale(&Gauss::real(s.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Gauss) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let (a, b) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut acc: std::collections::HashMap<Monomial, Gauss> = std::collections::HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                acc.entry(m).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn diff(&self, index: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e == 0 {
                continue;
            }
            let lowered = m.div(&Monomial::var(index)).expect("exponent checked");
            out.add_term(lowered, &c.scale(&rat(e as i64)));
        }
        out
    }

    /// True when variable `index` occurs.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exp(index) > 0)
    }

    /// Highest variable index that occurs, plus one.
    pub fn var_span(&self) -> usize {
        self.terms.keys().map(|m| m.support().map(|(i, _)| i + 1).max().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Applies a variable renaming and conjugates every coefficient.
    pub fn permute_conj(&self, map: impl Fn(usize) -> usize + Copy) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.permuted(map), c.conj())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Gauss) -> Gauss) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            // the leading term of any multiple of d is divisible by lm(d)
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }

    /// Evaluates at the origin.
    pub fn at_origin(&self) -> Gauss {
        self.constant_term()
    }

    /// Splits into rational polynomials `(re, im)` with `self = re + i*im`.
    pub fn split_re_im(&self) -> (BTreeMap<Monomial, Rat>, BTreeMap<Monomial, Rat>) {
        let mut re = BTreeMap::new();
        let mut im = BTreeMap::new();
        for (m, c) in &self.terms {
            if !c.re.is_zero() {
                re.insert(m.clone(), c.re.clone());
            }
            if !c.im.is_zero() {
                im.insert(m.clone(), c.im.clone());
            }
        }
        (re, im)
    }
}
