//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gauss {
    pub re: Rat,
    pub im: Rat,
}

impl Gauss {
    pub fn new(re: Rat, im: Rat) -> Self {
        Gauss { re, im }
    }

    pub fn real(re: Rat) -> Self {
        Gauss { re, im: Rat::zero() }
    }

    pub fn int(n: i64) -> Self {
        Gauss::real(rat(n))
    }

    pub fn i() -> Self {
        Gauss { re: Rat::zero(), im: Rat::one() }
    }

    /// `a + b i` from small integers.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Gauss { re: rat(a), im: rat(b) }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let d = self.norm_sqr();
        assert!(!d.is_zero(), "division by zero");
        Gauss { re: &self.re / &d, im: -(&self.im / &d) }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Gauss { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Gauss { re: -&self.im, im: self.re.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Gauss::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Zero for Gauss {
    fn zero() -> Self {
        Gauss::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gauss {
    fn one() -> Self {
        Gauss::int(1)
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", fmt_rat(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let abs_im = self.im.abs();
                if abs_im.is_one() {
                    write!(f, "({} {} i)", fmt_rat(&self.re), sign)
                } else {
                    write!(f, "({} {} {}*i)", fmt_rat(&self.re), sign, fmt_rat(&abs_im))
                }
            }
        }
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss { re: -self.re, im: -self.im }
    }
}

impl Add<&Gauss> for &Gauss {
    type Output = Gauss;
    fn add(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&Gauss> for &Gauss {
    type Output = Gauss;
    fn sub(self, o: &Gauss) -> Gauss {
        Gauss { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&Gauss> for &Gauss {
    type Output = Gauss;
    fn mul(self, o: &Gauss) -> Gauss {
        if self.im.is_zero() && o.im.is_zero() {
            return Gauss::real(&self.re * &o.re);
        }
        Gauss {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div<&Gauss> for &Gauss {
    type Output = Gauss;
    fn div(self, o: &Gauss) -> Gauss {
        if o.im.is_zero() {
            return Gauss { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv()
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Gauss> for Gauss {
            type Output = Gauss;
            fn $m(self, o: Gauss) -> Gauss {
                (&self).$m(&o)
            }
        }
        impl $tr<&Gauss> for Gauss {
            type Output = Gauss;
            fn $m(self, o: &Gauss) -> Gauss {
                (&self).$m(o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Gauss> for Gauss {
    fn add_assign(&mut self, o: &Gauss) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Gauss> for Gauss {
    fn sub_assign(&mut self, o: &Gauss) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Gauss> for Gauss {
    fn mul_assign(&mut self, o: &Gauss) {
        *self = &*self * o;
    }
}

/// The exact fields used by the linear-algebra kernels.
///
/// `Rat` is the real field, `Gauss` its complexification. Matrices with
/// Gaussian entries are read into a field by [`Field::push_gauss`]: the real
/// field sees the real and imaginary parts as two coordinates.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Send + Sync + 'static {
    /// Number of field coordinates one Gaussian rational occupies.
    const GAUSS_WIDTH: usize;
    const NAME: &'static str;

    fn from_int(n: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn conj(&self) -> Self;
    fn to_gauss(&self) -> Gauss;
    fn push_gauss(g: &Gauss, out: &mut Vec<Self>);
    /// Real part, used by signature computations on Hermitian forms.
    fn real_part(&self) -> Rat;

    fn recip(&self) -> Self {
        <Self as One>::one().over(self)
    }
}

impl Field for Rat {
    const GAUSS_WIDTH: usize = 2;
    const NAME: &'static str = "real";

    fn from_int(n: i64) -> Self {
        rat(n)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_gauss(&self) -> Gauss {
        Gauss::real(self.clone())
    }
    fn push_gauss(g: &Gauss, out: &mut Vec<Self>) {
        out.push(g.re.clone());
        out.push(g.im.clone());
    }
    fn real_part(&self) -> Rat {
        self.clone()
    }
}

impl Field for Gauss {
    const GAUSS_WIDTH: usize = 1;
    const NAME: &'static str = "complex";

    fn from_int(n: i64) -> Self {
        Gauss::int(n)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Self {
        self / o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Gauss::conj(self)
    }
    fn to_gauss(&self) -> Gauss {
        self.clone()
    }
    fn push_gauss(g: &Gauss, out: &mut Vec<Self>) {
        out.push(g.clone());
    }
    fn real_part(&self) -> Rat {
        self.re.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Gauss::i();
        assert_eq!(&i * &i, Gauss::int(-1));
    }

    #[test]
    fn fractions_are_reduced() {
        let a = Gauss::new(ratio(2, 4), ratio(-3, 6));
        assert_eq!(a.re.numer(), &BigInt::from(1));
        assert_eq!(a.re.denom(), &BigInt::from(2));
        assert_eq!(a.im.denom(), &BigInt::from(2));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Gauss::new(ratio(3, 7), ratio(-2, 5));
        let b = Gauss::from_ints(1, 4);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&b * &b.inv(), Gauss::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gauss::from_ints(0, -1).to_string(), "-i");
        assert_eq!(Gauss::new(ratio(1, 2), rat(-3)).to_string(), "(1/2 - 3*i)");
        assert_eq!(Gauss::real(ratio(-5, 3)).to_string(), "-5/3");
    }
}
