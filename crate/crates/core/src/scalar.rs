//! Exact ordered-field scalars.
//!
//! Every decision this crate makes (feasibility, equivalence, balance) is a
//! sign or equality test, so the arithmetic must be exact. [`Scalar`] captures
//! the handful of operations the algorithms need beyond `num_traits` and is
//! implemented for arbitrary-precision rationals and for `Ratio<i64>`.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact, totally ordered field element.
pub trait Scalar: Clone + Debug + Display + Ord + Hash + Signed + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    /// `num / den`; panics on a zero denominator.
    fn from_frac(num: i64, den: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// The value as an `i64`, when it is an integer that fits.
    fn to_int(&self) -> Option<i64>;

    /// Numerator and denominator as `i64`, when both fit.
    fn to_frac(&self) -> Option<(i64, i64)>;

    fn to_f64(&self) -> f64;

    /// The exact `n`-th root, if it is again a scalar.
    fn exact_root(&self, n: u32) -> Option<Self>;

    /// Parses `p`, `p/q` or a finite decimal `a.b`. Exponent notation is not
    /// accepted.
    fn parse_exact(text: &str) -> Option<Self>;

    /// Best rational approximation with denominator at most `max_den`.
    fn approximate(value: f64, max_den: u64) -> Option<Self> {
        let (p, q) = best_approximation(value, max_den)?;
        Some(Self::from_frac(p, q))
    }

    /// Integer power, negative exponents allowed for nonzero values.
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_frac(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn to_frac(&self) -> Option<(i64, i64)> {
        Some((self.numer().to_i64()?, self.denom().to_i64()?))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn exact_root(&self, n: u32) -> Option<Self> {
        ratio_root(self.numer(), self.denom(), n).map(|(p, q)| BigRational::new(p, q))
    }

    fn parse_exact(text: &str) -> Option<Self> {
        let (num, den) = parse_parts(text)?;
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_int(&self) -> Option<i64> {
        self.is_integer().then(|| *self.numer())
    }

    fn to_frac(&self) -> Option<(i64, i64)> {
        Some((*self.numer(), *self.denom()))
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn exact_root(&self, n: u32) -> Option<Self> {
        ratio_root(self.numer(), self.denom(), n).map(|(p, q)| Ratio::new(p, q))
    }

    fn parse_exact(text: &str) -> Option<Self> {
        let (num, den) = parse_parts(text)?;
        let num: i64 = num.parse().ok()?;
        let den: i64 = den.parse().ok()?;
        if den == 0 {
            return None;
        }
        Some(Ratio::new(num, den))
    }
}

fn ratio_root<I>(num: &I, den: &I, n: u32) -> Option<(I, I)>
where
    I: Integer + Roots + Clone + Signed,
{
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some((num.clone(), den.clone()));
    }
    let negative = num.is_negative();
    if negative && n.is_multiple_of(2) {
        return None;
    }
    let p = num.abs().nth_root(n);
    let q = den.abs().nth_root(n);
    if num_traits::pow(p.clone(), n as usize) != num.abs()
        || num_traits::pow(q.clone(), n as usize) != den.abs()
    {
        return None;
    }
    Some((if negative { -p } else { p }, q))
}

/// Splits an exact literal into decimal-string numerator and denominator.
fn parse_parts(text: &str) -> Option<(String, String)> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        if !is_signed_digits(n) || !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
            return None;
        }
        return Some((n.to_string(), d.to_string()));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if !frac.bytes().all(|b| b.is_ascii_digit()) || frac.is_empty() {
            return None;
        }
        let (sign, int) = match int.strip_prefix('-') {
            Some(rest) => ("-", rest),
            None => ("", int.strip_prefix('+').unwrap_or(int)),
        };
        if !int.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int = if int.is_empty() { "0" } else { int };
        let num = format!("{sign}{int}{frac}");
        let den = format!("1{}", "0".repeat(frac.len()));
        return Some((num, den));
    }
    if !is_signed_digits(text) {
        return None;
    }
    Some((text.to_string(), "1".to_string()))
}

fn is_signed_digits(s: &str) -> bool {
    let s = s.strip_prefix(['-', '+']).unwrap_or(s);
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Continued-fraction convergent of `value` with the largest denominator not
/// exceeding `max_den`.
pub fn best_approximation(value: f64, max_den: u64) -> Option<(i64, i64)> {
    if !value.is_finite() || value.abs() > 1e15 || max_den == 0 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut x = value;
    for _ in 0..64 {
        let a = x.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let rem = x - a;
        if rem.abs() < 1e-12 {
            break;
        }
        x = 1.0 / rem;
    }
    if k1 == 0 {
        return None;
    }
    Some((i64::try_from(h1).ok()?, i64::try_from(k1).ok()?))
}

/// Continued-fraction convergents of `value`, smallest denominator first.
pub fn convergents(value: f64, max_den: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if !value.is_finite() || value.abs() > 1e15 {
        return out;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut x = value;
    for _ in 0..64 {
        let a = x.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        if let (Ok(p), Ok(q)) = (i64::try_from(h1), i64::try_from(k1)) {
            out.push((p, q));
        }
        let rem = x - a;
        if rem.abs() < 1e-12 {
            break;
        }
        x = 1.0 / rem;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    #[test]
    fn parses_exact_literals() {
        assert_eq!(Q::parse_exact("3"), Some(Q::from_int(3)));
        assert_eq!(Q::parse_exact("-1/2"), Some(Q::from_frac(-1, 2)));
        assert_eq!(Q::parse_exact("0.25"), Some(Q::from_frac(1, 4)));
        assert_eq!(Q::parse_exact("-.5"), Some(Q::from_frac(-1, 2)));
        assert_eq!(Q::parse_exact("1e3"), None);
        assert_eq!(Q::parse_exact("1/0"), None);
        assert_eq!(Q::parse_exact("x"), None);
        assert_eq!(Q::parse_exact(""), None);
    }

    #[test]
    fn exact_roots() {
        assert_eq!(Q::from_frac(4, 9).exact_root(2), Some(Q::from_frac(2, 3)));
        assert_eq!(Q::from_int(5).exact_root(2), None);
        assert_eq!(Q::from_int(-8).exact_root(3), Some(Q::from_int(-2)));
        assert_eq!(Q::from_int(-4).exact_root(2), None);
        assert_eq!(
            Ratio::<i64>::from_frac(27, 8).exact_root(3),
            Some(Ratio::new(3, 2))
        );
    }

    #[test]
    fn integer_powers() {
        let h = Q::from_frac(1, 2);
        assert_eq!(h.powi(3), Q::from_frac(1, 8));
        assert_eq!(h.powi(-2), Q::from_int(4));
        assert_eq!(h.powi(0), Q::from_int(1));
    }

    #[test]
    fn approximations() {
        assert_eq!(best_approximation(0.3333333333, 100), Some((1, 3)));
        assert_eq!(best_approximation(5.0000000001, 1000), Some((5, 1)));
        let c = convergents(std::f64::consts::PI, 1000);
        assert_eq!(c.first(), Some(&(3, 1)));
        assert!(c.contains(&(355, 113)));
    }
}
