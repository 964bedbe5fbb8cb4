//! Exact coefficients: rationals and polynomials in μ over ℚ.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Builds `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back on a scaled quotient when numerator or denominator overflow f64
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Polynomial in μ; `coeffs[i]` multiplies μ^i. No trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MuPoly {
    coeffs: Vec<Rational>,
}

impl MuPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        MuPoly { coeffs }
    }

    pub fn zero() -> Self {
        MuPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The indeterminate μ.
    pub fn mu() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of the highest power of μ (zero for the zero polynomial).
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MuPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn eval(&self, mu: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * mu + c;
        }
        acc
    }

    pub fn eval_f64(&self, mu: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * mu + to_f64(c))
    }
}

impl fmt::Display for MuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "μ")?,
                (1, false) => write!(f, "{a}μ")?,
                (_, true) => write!(f, "μ^{i}")?,
                (_, false) => write!(f, "{a}μ^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &MuPoly {
    type Output = MuPoly;
    fn add(self, rhs: &MuPoly) -> MuPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        let v = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)).collect();
        MuPoly::new(v)
    }
}

impl Sub for &MuPoly {
    type Output = MuPoly;
    fn sub(self, rhs: &MuPoly) -> MuPoly {
        self + &(-rhs)
    }
}

impl Neg for &MuPoly {
    type Output = MuPoly;
    fn neg(self) -> MuPoly {
        MuPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &MuPoly {
    type Output = MuPoly;
    fn mul(self, rhs: &MuPoly) -> MuPoly {
        if self.is_zero() || rhs.is_zero() {
            return MuPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        MuPoly::new(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MuPoly {
            type Output = MuPoly;
            fn $f(self, rhs: MuPoly) -> MuPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MuPoly> for MuPoly {
            type Output = MuPoly;
            fn $f(self, rhs: &MuPoly) -> MuPoly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MuPoly {
    type Output = MuPoly;
    fn neg(self) -> MuPoly {
        -&self
    }
}

impl AddAssign<&MuPoly> for MuPoly {
    fn add_assign(&mut self, rhs: &MuPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&MuPoly> for MuPoly {
    fn sub_assign(&mut self, rhs: &MuPoly) {
        *self = &*self - rhs;
    }
}

pub fn poly_add(a: &MuPoly, b: &MuPoly) -> MuPoly {
    a + b
}

pub fn poly_mul(a: &MuPoly, b: &MuPoly) -> MuPoly {
    a * b
}

pub fn poly_eval(p: &MuPoly, mu: &Rational) -> Rational {
    p.eval(mu)
}

/// Polynomial in the regularization variable T with coefficients in `C`.
/// `coeffs[i]` multiplies T^i; trailing zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly<C> {
    pub coeffs: Vec<C>,
}

/// Zero test for coefficient types stored in [`TPoly`].
pub trait IsZero {
    fn is_zero_elem(&self) -> bool;
}

impl IsZero for MuPoly {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl<C: IsZero> TPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, i64)]) -> MuPoly {
        MuPoly::new(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[(1, 1), (1, 1)]) + p(&[(2, 1), (-1, 1)]), MuPoly::from_int(3));
        let q = p(&[(1, 2), (0, 1), (3, 1)]);
        assert_eq!(MuPoly::zero() + q.clone(), q);
        assert_eq!(p(&[(0, 1), (0, 1), (1, 1)]) + MuPoly::mu(), p(&[(0, 1), (1, 1), (1, 1)]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(MuPoly::mu() * MuPoly::mu(), p(&[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(p(&[(1, 1), (1, 1)]) * p(&[(1, 1), (-1, 1)]), p(&[(1, 1), (0, 1), (-1, 1)]));
        assert!((MuPoly::zero() * p(&[(5, 1), (2, 1)])).is_zero());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[(0, 1), (0, 1), (1, 1)]).eval(&int(2)), int(4));
        assert_eq!(MuPoly::from_int(3).eval(&rat(7, 2)), int(3));
        assert_eq!(p(&[(1, 1), (0, 1), (-1, 1)]).eval(&rat(1, 3)), rat(8, 9));
    }

    #[test]
    fn canonical_zero() {
        assert_eq!(p(&[(0, 1), (0, 3)]), MuPoly::zero());
        assert_eq!(parse_rational("0/5").unwrap(), rat(0, 1));
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
        assert_eq!(fmt_rational(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(1, 2), (-1, 1), (3, 1)]).to_string(), "1/2 - μ + 3μ^2");
    }
}
