//! Truncated power series with exact rational coefficients (characteristic 0).
//!
//! Floating point is not an option here: the zero-run checks ask whether a
//! coefficient is exactly zero, and denominators grow factorially.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Degree;

/// Polynomial over Q, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Parses comma-separated rationals such as `1,-1/2,0,3`.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.trim();
        if body.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        body.split(',')
            .map(|tok| parse_rational(tok.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn neg(&self) -> Self {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

pub fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {tok:?}"));
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `num/den`, always with an explicit denominator.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Power series known exactly modulo `X^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order, BigRational::zero());
        RationalSeries { coeffs }
    }

    pub fn from_poly(f: &RationalPoly, order: usize) -> Self {
        Self::from_coeffs(f.coeffs.iter().take(order).cloned().collect(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_coeffs(vec![BigRational::one()], order)
    }

    /// Number of known coefficients (`X^0 .. X^(order-1)`).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(
            self.coeffs[..order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn neg(&self) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Product to the smaller of the two orders.
    ///
    /// Both operands are rescaled to integer vectors over a common
    /// denominator so the inner convolution runs on `BigInt` without
    /// per-term gcd normalisation.
    pub fn mul(&self, other: &RationalSeries) -> RationalSeries {
        let order = self.order().min(other.order());
        let (a, da) = integer_form(&self.coeffs[..order]);
        let (b, db) = integer_form(&other.coeffs[..order]);
        let denom = da * db;
        let coeffs = (0..order)
            .map(|n| {
                let mut acc = BigInt::zero();
                for k in 0..=n {
                    if a[k].is_zero() || b[n - k].is_zero() {
                        continue;
                    }
                    acc += &a[k] * &b[n - k];
                }
                BigRational::new(acc, denom.clone())
            })
            .collect();
        RationalSeries { coeffs }
    }

    pub fn pow(&self, exp: u32) -> RationalSeries {
        let mut acc = RationalSeries::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<RationalSeries> {
        let order = self.order();
        let Some(c0) = self.coeffs.first().filter(|c| !c.is_zero()) else {
            return Err(Error::ZeroInput(
                "series inverse needs a nonzero constant term",
            ));
        };
        let c0_inv = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(order);
        out.push(c0_inv.clone());
        for n in 1..order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &out[n - k];
                }
            }
            out.push(-acc * &c0_inv);
        }
        Ok(RationalSeries { coeffs: out })
    }

    /// Integer power, negative exponents through [`RationalSeries::inverse`].
    pub fn pow_signed(&self, exp: i64) -> Result<RationalSeries> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        Ok(base.pow(exp.unsigned_abs() as u32))
    }

    /// Formal derivative; the result is known to one fewer coefficient.
    pub fn derivative(&self) -> RationalSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect();
        RationalSeries { coeffs }
    }

    /// `num/den` comma list.
    pub fn to_num_den_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        parts.join(",")
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_num_den_string())
    }
}

fn integer_form(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    (ints, denom)
}

/// Default truncation `s*d*8 + 16`.
pub fn default_order(s: u64, d: usize) -> usize {
    (s as usize) * d * 8 + 16
}

/// The branch of `f^(r/s)` with constant term 1, for `f(0) = 1`.
///
/// Uses the recurrence from `f h' = (r/s) f' h`:
/// `n h_n = sum_{k=1..d} ((r/s) k - (n - k)) f_k h_{n-k}`.
pub fn binomial_series(f: &RationalPoly, r: i64, s: u64, order: usize) -> Result<RationalSeries> {
    if s == 0 {
        return Err(Error::InvalidArgument(
            "root index s must be positive".into(),
        ));
    }
    if !f.coeff(0).is_one() {
        return Err(Error::InvalidArgument(
            "binomial series requires constant term f(0) = 1".into(),
        ));
    }
    let alpha = BigRational::new(r.into(), s.into());
    let d = f.coeffs.len().saturating_sub(1);
    let mut h: Vec<BigRational> = Vec::with_capacity(order);
    if order > 0 {
        h.push(BigRational::one());
    }
    for n in 1..order {
        let mut acc = BigRational::zero();
        for k in 1..=n.min(d) {
            let fk = &f.coeffs[k];
            if fk.is_zero() || h[n - k].is_zero() {
                continue;
            }
            let weight = &alpha * BigRational::from_integer(k.into())
                - BigRational::from_integer((n - k).into());
            acc += weight * fk * &h[n - k];
        }
        h.push(acc / BigRational::from_integer(n.into()));
    }
    Ok(RationalSeries { coeffs: h })
}

/// `exp(f)` for `f(0) = 0`, from `h' = f' h`: `n h_n = sum_{k=1..d} k f_k h_{n-k}`.
pub fn exp_series(f: &RationalPoly, order: usize) -> Result<RationalSeries> {
    if !f.coeff(0).is_zero() {
        return Err(Error::InvalidArgument(
            "exponential series requires constant term f(0) = 0".into(),
        ));
    }
    let d = f.coeffs.len().saturating_sub(1);
    let mut h: Vec<BigRational> = Vec::with_capacity(order);
    if order > 0 {
        h.push(BigRational::one());
    }
    for n in 1..order {
        let mut acc = BigRational::zero();
        for k in 1..=n.min(d) {
            let fk = &f.coeffs[k];
            if fk.is_zero() || h[n - k].is_zero() {
                continue;
            }
            acc += fk * BigRational::from_integer(k.into()) * &h[n - k];
        }
        h.push(acc / BigRational::from_integer(n.into()));
    }
    Ok(RationalSeries { coeffs: h })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Generalised binomial coefficient C(alpha, n), computed directly.
    fn gen_binomial(alpha: &BigRational, n: usize) -> BigRational {
        let mut acc = BigRational::one();
        for k in 0..n {
            acc = acc * (alpha - BigRational::from_integer(k.into()))
                / BigRational::from_integer((k + 1).into());
        }
        acc
    }

    #[test]
    fn sqrt_of_one_plus_x() {
        let f = RationalPoly::from_i64s(&[1, 1]);
        let h = binomial_series(&f, 1, 2, 4).unwrap();
        assert_eq!(h.coeffs(), &[q(1, 1), q(1, 2), q(-1, 8), q(1, 16)]);
        let alpha = q(1, 2);
        let long = binomial_series(&f, 1, 2, 40).unwrap();
        for n in 0..40 {
            assert_eq!(long.coeff(n), &gen_binomial(&alpha, n));
        }
        assert_eq!(h.to_num_den_string(), "1/1,1/2,-1/8,1/16");
    }

    #[test]
    fn other_binomial_exponents_match_closed_form() {
        let f = RationalPoly::from_i64s(&[1, 1]);
        for (r, s) in [(1i64, 3u64), (2, 3), (-1, 2), (-3, 4)] {
            let alpha = q(r, s as i64);
            let h = binomial_series(&f, r, s, 25).unwrap();
            for n in 0..25 {
                assert_eq!(
                    h.coeff(n),
                    &gen_binomial(&alpha, n),
                    "r/s = {r}/{s}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn integer_power_is_a_polynomial() {
        let f = RationalPoly::from_i64s(&[1, 1]);
        let h = binomial_series(&f, 2, 1, 8).unwrap();
        assert_eq!(&h.coeffs()[..3], &[q(1, 1), q(2, 1), q(1, 1)]);
        assert!(h.coeffs()[3..].iter().all(Zero::is_zero));
    }

    #[test]
    fn even_support_after_substitution() {
        let f = RationalPoly::from_i64s(&[1, 0, 1]);
        let h = binomial_series(&f, 1, 2, 12).unwrap();
        let base = binomial_series(&RationalPoly::from_i64s(&[1, 1]), 1, 2, 6).unwrap();
        for n in 0..12 {
            if n % 2 == 1 {
                assert!(h.coeff(n).is_zero());
            } else {
                assert_eq!(h.coeff(n), base.coeff(n / 2));
            }
        }
    }

    #[test]
    fn binomial_preconditions() {
        let f = RationalPoly::from_i64s(&[2, 1]);
        assert!(binomial_series(&f, 1, 2, 5).is_err());
        let g = RationalPoly::from_i64s(&[1, 1]);
        assert!(binomial_series(&g, 1, 0, 5).is_err());
    }

    #[test]
    fn exp_examples() {
        let h = exp_series(&RationalPoly::from_i64s(&[0, 1]), 10).unwrap();
        let mut fact = BigRational::one();
        for n in 0..10 {
            assert_eq!(h.coeff(n), &fact.recip());
            fact *= BigRational::from_integer((n + 1).into());
        }
        let h2 = exp_series(&RationalPoly::from_i64s(&[0, 0, 1]), 12).unwrap();
        for n in 0..12 {
            if n % 2 == 1 {
                assert!(h2.coeff(n).is_zero());
            } else {
                assert_eq!(h2.coeff(n), h.coeff(n / 2));
            }
        }
        assert!(exp_series(&RationalPoly::from_i64s(&[1, 1]), 5).is_err());
    }

    #[test]
    fn exp_matches_power_sum_oracle() {
        // exp(f) = sum f^k / k!, truncated; f has zero constant term so k < order suffices
        let f = RationalPoly::new(vec![q(0, 1), q(3, 2), q(-1, 3), q(2, 5)]);
        let order = 14;
        let fs = RationalSeries::from_poly(&f, order);
        let mut oracle = RationalSeries::from_coeffs(vec![], order);
        let mut term = RationalSeries::one(order);
        for k in 0..order {
            let scaled: Vec<BigRational> = term
                .coeffs()
                .iter()
                .zip(oracle.coeffs())
                .map(|(t, o)| o + t)
                .collect();
            oracle = RationalSeries::from_coeffs(scaled, order);
            let next = term.mul(&fs);
            let div = BigRational::from_integer((k + 1).into());
            term = RationalSeries::from_coeffs(
                next.coeffs().iter().map(|c| c / &div).collect(),
                order,
            );
        }
        assert_eq!(exp_series(&f, order).unwrap(), oracle);
    }

    #[test]
    fn inverse_and_signed_power() {
        let f = RationalSeries::from_poly(&RationalPoly::from_i64s(&[1, 1]), 8);
        let inv = f.inverse().unwrap();
        assert_eq!(f.mul(&inv), RationalSeries::one(8));
        for n in 0..8 {
            assert_eq!(inv.coeff(n), &q(if n % 2 == 0 { 1 } else { -1 }, 1));
        }
        assert_eq!(
            f.pow_signed(-2).unwrap().mul(&f.pow(2)),
            RationalSeries::one(8)
        );
        let zero_const = RationalSeries::from_poly(&RationalPoly::from_i64s(&[0, 1]), 4);
        assert!(zero_const.inverse().is_err());
    }

    #[test]
    fn parsing() {
        let f = RationalPoly::parse("1, -1/2, 0, 6/4").unwrap();
        assert_eq!(f.coeffs(), &[q(1, 1), q(-1, 2), q(0, 1), q(3, 2)]);
        assert!(RationalPoly::parse("").is_err());
        assert!(RationalPoly::parse("1/0").is_err());
        assert!(RationalPoly::parse("a").is_err());
        assert_eq!(format_rational(&q(4, 2)), "2/1");
    }
}
