//! Arithmetic in the prime field F_p for odd primes p < 2^62.
//!
//! Hot loops work on raw `u64` residues through the free functions
//! ([`add_mod`], [`mul_mod`], ...). [`FieldElement`] carries its modulus and
//! is the checked, user-facing value type. [`FieldContext`] caches the data
//! that depends only on `p`: a primitive root, the 2-adic split of `p - 1`
//! and, when it exists, the canonical square root of -1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MAX_MODULUS: u64 = 1 << 62;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p` via the extended Euclidean algorithm.
pub fn inv_mod(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::DivisionByZero);
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus is not prime");
    Ok(t0.rem_euclid(p as i128) as u64)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = num_integer::gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let d = pollard_brent(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn check_modulus(p: u64) -> Result<()> {
    if p >= MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p));
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Smallest positive primitive root modulo the odd prime `p`.
pub fn find_generator(p: u64) -> Result<u64> {
    check_modulus(p)?;
    let divisors = prime_divisors(p - 1);
    let g = (2..p)
        .find(|&g| divisors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("a primitive root always exists");
    Ok(g)
}

/// The smaller of the two square roots of -1, for `p ≡ 1 (mod 4)`.
pub fn sqrt_of_minus_one(p: u64) -> Result<u64> {
    check_modulus(p)?;
    if p % 4 != 1 {
        return Err(Error::WrongResidueClass {
            p,
            required: "p ≡ 1 mod 4",
        });
    }
    let g = find_generator(p)?;
    let i = pow_mod(g, (p - 1) / 4, p);
    Ok(i.min(p - i))
}

/// An element of F_p. The value is always the canonical residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    /// Builds an element, reducing `value` modulo `modulus`. The modulus is
    /// trusted to be prime; use [`FieldContext::elem`] for a checked path.
    pub fn new(value: u64, modulus: u64) -> Self {
        FieldElement {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        FieldElement {
            value: reduce_i64(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, rhs: Self) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch(self.modulus, rhs.modulus));
        }
        Ok(())
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(add_mod(self.value, rhs.value, self.modulus)))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(sub_mod(self.value, rhs.value, self.modulus)))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(self.with(mul_mod(self.value, rhs.value, self.modulus)))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        self.same_field(rhs)?;
        self.checked_mul(rhs.inv()?)
    }

    pub fn inv(self) -> Result<Self> {
        Ok(self.with(inv_mod(self.value, self.modulus)?))
    }

    pub fn pow(self, exp: u64) -> Self {
        self.with(pow_mod(self.value, exp, self.modulus))
    }

    /// Legendre symbol via Euler's criterion: 0, 1 or -1.
    pub fn legendre(self) -> i8 {
        if self.value == 0 {
            return 0;
        }
        match pow_mod(self.value, (self.modulus - 1) / 2, self.modulus) {
            1 => 1,
            _ => -1,
        }
    }

    fn with(self, value: u64) -> Self {
        FieldElement {
            value,
            modulus: self.modulus,
        }
    }
}

// Operator forms panic on a modulus mismatch; the `checked_*` methods report it.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$checked(rhs)
                    .expect("field elements from different fields")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(neg_mod(self.value, self.modulus))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Per-prime data shared by every computation in F_p. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldContext {
    p: u64,
    generator: u64,
    odd_part: u64,
    two_adicity: u32,
    sqrt_minus_one: Option<u64>,
}

impl FieldContext {
    pub fn new(p: u64) -> Result<Self> {
        check_modulus(p)?;
        let generator = find_generator(p)?;
        let two_adicity = (p - 1).trailing_zeros();
        let odd_part = (p - 1) >> two_adicity;
        let sqrt_minus_one = (p % 4 == 1).then(|| {
            let i = pow_mod(generator, (p - 1) / 4, p);
            i.min(p - i)
        });
        Ok(FieldContext {
            p,
            generator,
            odd_part,
            two_adicity,
            sqrt_minus_one,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Smallest primitive root g.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `(q, s)` with `p - 1 = q * 2^s` and `q` odd.
    pub fn two_adic_split(&self) -> (u64, u32) {
        (self.odd_part, self.two_adicity)
    }

    /// Canonical square root of -1, or `WrongResidueClass` when `p ≡ 3 mod 4`.
    pub fn sqrt_minus_one(&self) -> Result<u64> {
        self.sqrt_minus_one.ok_or(Error::WrongResidueClass {
            p: self.p,
            required: "p ≡ 1 mod 4",
        })
    }

    pub fn elem(&self, value: u64) -> FieldElement {
        FieldElement::new(value, self.p)
    }

    pub fn legendre(&self, a: u64) -> i8 {
        self.elem(a).legendre()
    }

    /// Tonelli–Shanks square root, normalized to the smaller of the two roots.
    pub fn sqrt(&self, a: u64) -> Result<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Ok(0);
        }
        if self.legendre(a) != 1 {
            return Err(Error::NonResidue { value: a, p });
        }
        let (q, s) = self.two_adic_split();
        // Any generator is a non-residue.
        let mut c = pow_mod(self.generator, q, p);
        let mut x = pow_mod(a, q.div_ceil(2), p);
        let mut t = pow_mod(a, q, p);
        let mut m = s;
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            x = mul_mod(x, b, p);
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            m = i;
        }
        Ok(x.min(p - x))
    }

    /// Field-element form of [`FieldContext::sqrt`]; zero has no nonzero root
    /// and is rejected along with non-residues.
    pub fn sqrt_elem(&self, a: FieldElement) -> Result<FieldElement> {
        if a.modulus() != self.p {
            return Err(Error::ModulusMismatch(a.modulus(), self.p));
        }
        if a.is_zero() {
            return Err(Error::NonResidue {
                value: 0,
                p: self.p,
            });
        }
        Ok(self.elem(self.sqrt(a.value())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares(p: u64) -> Vec<u64> {
        let mut v: Vec<u64> = (1..p).map(|x| x * x % p).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn small_arithmetic() {
        let f = |v| FieldElement::new(v, 13);
        assert_eq!((f(3) + f(11)).value(), 1);
        assert_eq!(f(2).inv().unwrap().value(), 7);
        assert_eq!(FieldElement::new(3, 17).pow(16).value(), 1);
        assert_eq!((f(3) - f(5)).value(), 11);
        assert_eq!((-f(0)).value(), 0);
        assert_eq!(f(6).checked_div(f(3)).unwrap().value(), 2);
    }

    #[test]
    fn arithmetic_errors() {
        let a = FieldElement::new(3, 13);
        let b = FieldElement::new(3, 17);
        assert_eq!(a.checked_add(b), Err(Error::ModulusMismatch(13, 17)));
        assert_eq!(FieldElement::new(0, 13).inv(), Err(Error::DivisionByZero));
        assert_eq!(
            a.checked_div(FieldElement::new(13, 13)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn legendre_matches_enumeration() {
        assert_eq!(squares(13), vec![1, 3, 4, 9, 10, 12]);
        let ctx = FieldContext::new(13).unwrap();
        assert_eq!(ctx.legendre(0), 0);
        assert_eq!(ctx.legendre(1), 1);
        assert_eq!(ctx.legendre(2), -1);
        for p in [
            3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
            89, 97,
        ] {
            let sq = squares(p);
            let ctx = FieldContext::new(p).unwrap();
            for a in 1..p {
                let expected = if sq.binary_search(&a).is_ok() { 1 } else { -1 };
                assert_eq!(ctx.legendre(a), expected);
                for b in 1..p {
                    assert_eq!(ctx.legendre(a * b % p), ctx.legendre(a) * ctx.legendre(b));
                }
            }
        }
    }

    #[test]
    fn tonelli_shanks_examples() {
        let ctx = FieldContext::new(13).unwrap();
        assert_eq!(ctx.sqrt(12).unwrap(), 5);
        assert_eq!(ctx.sqrt(2), Err(Error::NonResidue { value: 2, p: 13 }));
        for p in [7u64, 11, 13, 17, 41, 97, 257, 65537, 1_000_000_007] {
            assert_eq!(FieldContext::new(p).unwrap().sqrt(4).unwrap(), 2);
        }
    }

    #[test]
    fn sqrt_roundtrip_exhaustive() {
        for p in (3u64..400).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            for a in 1..p {
                match ctx.sqrt(a) {
                    Ok(r) => {
                        assert_eq!(mul_mod(r, r, p), a);
                        assert!(r <= p - r);
                    }
                    Err(_) => assert_eq!(ctx.legendre(a), -1),
                }
            }
        }
    }

    #[test]
    fn sqrt_large_prime() {
        // 2^16 + 1 has 2-adicity 16, the deep end of the Tonelli–Shanks loop
        let ctx = FieldContext::new(65537).unwrap();
        for a in [2u64, 3, 5, 65535] {
            let r = ctx.sqrt(mul_mod(a, a, 65537)).unwrap();
            assert_eq!(mul_mod(r, r, 65537), mul_mod(a, a, 65537));
        }
        let p = 4_611_686_018_427_387_847; // largest prime below 2^62
        assert!(is_prime(p));
        let ctx = FieldContext::new(p).unwrap();
        let a = mul_mod(987654321987, 987654321987, p);
        let r = ctx.sqrt(a).unwrap();
        assert_eq!(mul_mod(r, r, p), a);
    }

    #[test]
    fn generator_examples() {
        assert_eq!(find_generator(13).unwrap(), 2);
        assert_eq!(find_generator(17).unwrap(), 3);
        assert_eq!(find_generator(7).unwrap(), 3);
    }

    #[test]
    fn generator_order_is_exact() {
        for p in (3u64..1000).filter(|&p| is_prime(p)) {
            let g = find_generator(p).unwrap();
            let mut x = 1u64;
            let mut order = 0u64;
            loop {
                x = mul_mod(x, g, p);
                order += 1;
                if x == 1 {
                    break;
                }
            }
            assert_eq!(order, p - 1, "p = {p}");
            // and it is the smallest one
            for h in 2..g {
                assert!(prime_divisors(p - 1)
                    .iter()
                    .any(|&q| pow_mod(h, (p - 1) / q, p) == 1));
            }
        }
    }

    #[test]
    fn sqrt_minus_one_examples() {
        assert_eq!(sqrt_of_minus_one(13).unwrap(), 5);
        assert_eq!(sqrt_of_minus_one(5).unwrap(), 2);
        assert!(matches!(
            sqrt_of_minus_one(7),
            Err(Error::WrongResidueClass { p: 7, .. })
        ));
        let ctx = FieldContext::new(29).unwrap();
        let i = ctx.sqrt_minus_one().unwrap();
        assert_eq!(mul_mod(i, i, 29), 28);
        assert!(i < 29 - i);
    }

    #[test]
    fn context_rejects_bad_moduli() {
        assert_eq!(FieldContext::new(2), Err(Error::NotPrime(2)));
        assert_eq!(FieldContext::new(15), Err(Error::NotPrime(15)));
        assert_eq!(FieldContext::new(1), Err(Error::NotPrime(1)));
        assert_eq!(
            FieldContext::new(MAX_MODULUS + 1),
            Err(Error::ModulusTooLarge(MAX_MODULUS + 1))
        );
        let ctx = FieldContext::new(97).unwrap();
        assert_eq!(ctx.two_adic_split(), (3, 5));
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0u64..5000 {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), naive, "n = {n}");
        }
        // strong pseudoprimes to several bases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn prime_divisor_factoring() {
        assert_eq!(prime_divisors(12), vec![2, 3]);
        assert_eq!(prime_divisors(1_000_000_006), vec![2, 500_000_003]);
        let n = 1_000_003u64 * 999_983;
        assert_eq!(prime_divisors(n), vec![999_983, 1_000_003]);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn inverse_and_fermat(a in 1u64..1_000_000_007) {
            let p = 1_000_000_007;
            prop_assert_eq!(mul_mod(a, inv_mod(a, p).unwrap(), p), 1);
            prop_assert_eq!(pow_mod(a, p - 1, p), 1);
        }
    }
}
