//! Dense univariate polynomials over F_p.

mod interp;
mod mul;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, reduce_i64, sub_mod, FieldElement};

pub use interp::{delta_alpha, interpolate, interpolate_raw, lagrange_basis};
pub use mul::KARATSUBA_THRESHOLD;

/// Degree of a polynomial. The zero polynomial has degree `MinusInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(d) => s.serialize_u64(*d as u64),
            Degree::MinusInfinity => s.serialize_none(),
        }
    }
}

/// Polynomial over F_p with ascending coefficients (`coeffs[k]` multiplies `X^k`).
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl DensePoly {
    /// Builds a polynomial from residues, reducing each modulo `p`.
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        Self::from_reduced(coeffs, p)
    }

    pub(crate) fn from_reduced(coeffs: Vec<u64>, p: u64) -> Self {
        let mut poly = DensePoly { coeffs, p };
        poly.trim();
        poly
    }

    pub fn from_i64s(coeffs: &[i64], p: u64) -> Self {
        Self::from_reduced(coeffs.iter().map(|&c| reduce_i64(c, p)).collect(), p)
    }

    pub fn from_elements(coeffs: &[FieldElement]) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidArgument(
                "modulus of an empty coefficient list is unknown".into(),
            ));
        };
        let p = first.modulus();
        if let Some(bad) = coeffs.iter().find(|c| c.modulus() != p) {
            return Err(Error::ModulusMismatch(p, bad.modulus()));
        }
        Ok(Self::from_reduced(
            coeffs.iter().map(|c| c.value()).collect(),
            p,
        ))
    }

    pub fn zero(p: u64) -> Self {
        DensePoly {
            coeffs: Vec::new(),
            p,
        }
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::new(vec![c], p)
    }

    /// `c * X^k`
    pub fn monomial(c: u64, k: usize, p: u64) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs, p)
    }

    pub fn x(p: u64) -> Self {
        Self::monomial(1, 1, p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeff_elem(&self, k: usize) -> FieldElement {
        FieldElement::new(self.coeff(k), self.p)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Exponent of the lowest nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    fn check_same_field(&self, other: &DensePoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DensePoly) -> Result<DensePoly> {
        self.check_same_field(other)?;
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| add_mod(self.coeff(k), other.coeff(k), p))
            .collect();
        Ok(Self::from_reduced(coeffs, p))
    }

    pub fn checked_sub(&self, other: &DensePoly) -> Result<DensePoly> {
        self.check_same_field(other)?;
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| sub_mod(self.coeff(k), other.coeff(k), p))
            .collect();
        Ok(Self::from_reduced(coeffs, p))
    }

    pub fn checked_mul(&self, other: &DensePoly) -> Result<DensePoly> {
        self.check_same_field(other)?;
        Ok(Self::from_reduced(
            mul::multiply(&self.coeffs, &other.coeffs, self.p),
            self.p,
        ))
    }

    pub fn neg(&self) -> DensePoly {
        let p = self.p;
        Self::from_reduced(self.coeffs.iter().map(|&c| neg_mod(c, p)).collect(), p)
    }

    pub fn scale(&self, c: u64) -> DensePoly {
        let p = self.p;
        let c = c % p;
        Self::from_reduced(self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect(), p)
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> DensePoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        DensePoly { coeffs, p: self.p }
    }

    /// Remainder modulo `X^n`.
    pub fn truncate(&self, n: usize) -> DensePoly {
        Self::from_reduced(self.coeffs[..n.min(self.coeffs.len())].to_vec(), self.p)
    }

    pub fn pow(&self, mut exp: u64) -> DensePoly {
        let mut acc = Self::constant(1, self.p);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Representative of `self` modulo `X^m - 1`: coefficient `k` folds onto `k mod m`.
    pub fn mod_cyclic(&self, m: usize) -> Result<DensePoly> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "cyclic modulus X^0 - 1 is zero".into(),
            ));
        }
        let p = self.p;
        let mut coeffs = vec![0u64; m.min(self.coeffs.len())];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let slot = &mut coeffs[k % m];
            *slot = add_mod(*slot, c, p);
        }
        Ok(Self::from_reduced(coeffs, p))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> DensePoly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul_mod(c, k as u64 % p, p))
            .collect();
        Self::from_reduced(coeffs, p)
    }

    /// Horner evaluation at a residue.
    pub fn eval(&self, a: u64) -> u64 {
        let p = self.p;
        let a = a % p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, a, p), c, p))
    }

    pub fn evaluate(&self, a: FieldElement) -> Result<FieldElement> {
        if a.modulus() != self.p {
            return Err(Error::ModulusMismatch(self.p, a.modulus()));
        }
        Ok(FieldElement::new(self.eval(a.value()), self.p))
    }

    /// Scales to leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> DensePoly {
        match self.leading_coeff() {
            0 | 1 => self.clone(),
            lc => self.scale(inv_mod(lc, self.p).expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &DensePoly) -> Result<(DensePoly, DensePoly)> {
        self.check_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Self::zero(p), self.clone()));
        }
        let lc_inv = inv_mod(divisor.leading_coeff(), p)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dlen - 1], lc_inv, p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(c, d, p), p);
            }
        }
        rem.truncate(dlen - 1);
        Ok((Self::from_reduced(quot, p), Self::from_reduced(rem, p)))
    }

    /// Monic greatest common divisor. `gcd(0, 0)` is rejected.
    pub fn gcd(&self, other: &DensePoly) -> Result<DensePoly> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroInput("gcd of two zero polynomials"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic squarefree part `f / gcd(f, f')`. Exact when `deg f < p`.
    pub fn radical(&self) -> Result<DensePoly> {
        if self.is_zero() {
            return Err(Error::ZeroInput("radical of the zero polynomial"));
        }
        let g = self.gcd(&self.derivative())?;
        let (q, _) = self.div_rem(&g)?;
        Ok(q.monic())
    }

    /// Comma-separated ascending coefficients; the zero polynomial prints as `0`.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    /// Parses the comma-separated coefficient format. Entries may be negative
    /// and are reduced modulo `p`; a JSON-style `[...]` wrapper is accepted.
    pub fn parse(text: &str, p: u64) -> Result<DensePoly> {
        let body = text.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let coeffs = body
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i128>()
                    .map(|v| v.rem_euclid(p as i128) as u64)
                    .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(Self::from_reduced(coeffs, p))
    }
}

impl Serialize for DensePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod {}", self.to_coeff_string(), self.p)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("X")?,
                (1, _) => write!(f, "{c}X")?,
                (_, 1) => write!(f, "X^{k}")?,
                _ => write!(f, "{c}X^{k}")?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&DensePoly> for &DensePoly {
            type Output = DensePoly;
            fn $method(self, rhs: &DensePoly) -> DensePoly {
                self.$checked(rhs)
                    .expect("polynomials over different fields")
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);
