//! Exact Gaussian-rational scalars `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact complex number with rational real and imaginary parts.
///
/// `BigRational` keeps both parts in lowest terms with a positive
/// denominator, so derived equality and hashing are mathematical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_real(BigRational::from_integer(BigInt::from(value)))
    }

    /// `num / den` as a real scalar. Panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `|a|² = re² + im²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total bit length of the four integers in the representation.
    pub fn bits(&self) -> u64 {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()].iter().map(|v| v.bits()).sum()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_real(BigRational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::from_real(v)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Imaginary part rendered as `i`, `-i`, `3*i`, `-1/2*i`.
fn fmt_imag(q: &BigRational) -> String {
    if q.is_one() {
        "i".to_string()
    } else if (-q).is_one() {
        "-i".to_string()
    } else {
        format!("{}*i", fmt_rational(q))
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text: `a/b`, `c/d*i`, or `a/b+c/d*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", fmt_imag(&self.im)),
            (false, false) => {
                let im = fmt_imag(&self.im);
                if self.im.is_negative() {
                    write!(f, "{}{}", fmt_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.re), im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed complex literal `{0}`")]
pub struct ScalarParseError(pub String);

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_imag(s: &str) -> Option<BigRational> {
    let body = s.trim().strip_suffix('i')?.trim_end();
    let body = body.strip_suffix('*').unwrap_or(body).trim_end();
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        b => parse_rational(b),
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarParseError;

    /// Accepts the canonical rendering plus whitespace and `2i` shorthand.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let err = || ScalarParseError(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        if !s.ends_with('i') {
            return parse_rational(&s).map(Self::from_real).ok_or_else(err);
        }
        // split at the last sign that is not the leading character
        let split = s.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(k, _)| k).last();
        match split {
            Some(k) => {
                let re = parse_rational(&s[..k]).ok_or_else(err)?;
                let im = parse_imag(&s[k..]).ok_or_else(err)?;
                Ok(Self::new(re, im))
            }
            None => parse_imag(&s).map(|im| Self::new(BigRational::zero(), im)).ok_or_else(err),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn field_ops() {
        let a = g("1+i");
        let b = g("2-3*i");
        assert_eq!(&a * &b, g("5-i"));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.inv().unwrap(), g("1/2-1/2*i"));
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(g("i").pow(2), g("-1"));
        assert_eq!(a.norm_sqr(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(g("2/4"), g("1/2"));
        assert_eq!(g("3/-6"), g("-1/2"));
        assert_eq!(g("2/4").to_string(), "1/2");
    }

    #[test]
    fn render_and_parse() {
        for s in ["0", "3/2", "-7", "i", "-i", "3*i", "-1/2*i", "1/2+3/2*i", "1-i", "-2/3-5/7*i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("2i"), g("2*i"));
        assert_eq!(g(" 1 + i "), g("1+i"));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
    }
}
