use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, pow_mod, FieldContext, FieldElement};
use crate::poly::{interpolate_raw, Degree, DensePoly};

/// One sign per nonzero square: entry `j` selects `+g^j` or `-g^j` as the
/// root of `g^(2j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    /// `true` selects the negative root.
    minus: Vec<bool>,
}

impl SignVector {
    pub fn new(minus: Vec<bool>) -> Self {
        SignVector { minus }
    }

    pub fn all_plus(m: usize) -> Self {
        SignVector {
            minus: vec![false; m],
        }
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        signs
            .iter()
            .map(|&s| match s {
                1 => Ok(false),
                -1 => Ok(true),
                _ => Err(Error::InvalidArgument(format!(
                    "sign must be +1 or -1, got {s}"
                ))),
            })
            .collect::<Result<_>>()
            .map(SignVector::new)
    }

    pub fn len(&self) -> usize {
        self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minus.is_empty()
    }

    pub fn is_minus(&self, j: usize) -> bool {
        self.minus[j]
    }

    pub fn sign(&self, j: usize) -> i8 {
        if self.minus[j] {
            -1
        } else {
            1
        }
    }

    pub fn negate(&self) -> SignVector {
        SignVector::new(self.minus.iter().map(|b| !b).collect())
    }

    pub(crate) fn from_digits(digits: &[u8]) -> Self {
        SignVector::new(digits.iter().map(|&d| d != 0).collect())
    }

    fn check_len(&self, ctx: &FieldContext) -> Result<usize> {
        let m = ((ctx.p() - 1) / 2) as usize;
        if self.len() != m {
            return Err(Error::InvalidArgument(format!(
                "sign vector has length {} but p = {} needs {m}",
                self.len(),
                ctx.p()
            )));
        }
        Ok(m)
    }

    /// `(g^(2j), ±g^j)` for every `j`.
    pub fn value_table(&self, ctx: &FieldContext) -> Result<(Vec<u64>, Vec<u64>)> {
        let m = self.check_len(ctx)?;
        let p = ctx.p();
        let g = ctx.generator();
        let mut xs = Vec::with_capacity(m);
        let mut ys = Vec::with_capacity(m);
        let mut root = 1u64;
        for &neg in &self.minus {
            xs.push(mul_mod(root, root, p));
            ys.push(if neg { neg_mod(root, p) } else { root });
            root = mul_mod(root, g, p);
        }
        Ok((xs, ys))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &neg in &self.minus {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty sign vector".into()));
        }
        s.chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                '+' => Ok(false),
                '-' => Ok(true),
                other => Err(Error::Parse(format!(
                    "unexpected character {other:?} in sign vector"
                ))),
            })
            .collect::<Result<_>>()
            .map(SignVector::new)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The polynomial of degree `< m` taking the value `±g^j` at `g^(2j)`.
pub fn interpolant(v: &SignVector, ctx: &FieldContext) -> Result<DensePoly> {
    let (xs, ys) = v.value_table(ctx)?;
    interpolate_raw(&xs, &ys, ctx.p())
}

/// Degree of [`interpolant`], read off the closed-form leading coefficients.
pub fn interpolant_degree(v: &SignVector, ctx: &FieldContext) -> Result<Degree> {
    let m = v.check_len(ctx)?;
    for i in 1..=m {
        if !leading_coefficient(v, i, ctx)?.is_zero() {
            return Ok(Degree::Finite(m - i));
        }
    }
    Ok(Degree::MinusInfinity)
}

/// Coefficient of `X^(m-i)` in the interpolant:
/// `(1/m) * sum_j v_j g^((2i+1)j)`.
pub fn leading_coefficient(v: &SignVector, i: usize, ctx: &FieldContext) -> Result<FieldElement> {
    let m = v.check_len(ctx)?;
    if i == 0 || i > m {
        return Err(Error::InvalidArgument(format!(
            "coefficient index {i} outside 1..={m}"
        )));
    }
    let p = ctx.p();
    let step = pow_mod(ctx.generator(), 2 * i as u64 + 1, p);
    let mut term = 1u64;
    let mut sum = 0u64;
    for j in 0..m {
        let signed = if v.is_minus(j) {
            neg_mod(term, p)
        } else {
            term
        };
        sum = add_mod(sum, signed, p);
        term = mul_mod(term, step, p);
    }
    Ok(ctx.elem(mul_mod(sum, inv_mod(m as u64, p)?, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{verify_root_poly, RootTask};

    fn all_vectors(m: usize) -> impl Iterator<Item = SignVector> {
        (0u32..1 << m)
            .map(move |mask| SignVector::new((0..m).map(|j| mask >> j & 1 == 1).collect()))
    }

    #[test]
    fn parse_display_negate() {
        let v: SignVector = "+-++-+".parse().unwrap();
        assert_eq!(v.to_string(), "+-++-+");
        assert_eq!(v.negate().to_string(), "-+--+-");
        assert_eq!(SignVector::from_signs(&[1, -1]).unwrap().to_string(), "+-");
        assert!("".parse::<SignVector>().is_err());
        assert!("+x".parse::<SignVector>().is_err());
    }

    #[test]
    fn squaring_map_at_seven() {
        // X^2 takes a to a^2, which is a root of a for a in {1, 2, 4}
        let ctx = FieldContext::new(7).unwrap();
        let square = DensePoly::monomial(1, 2, 7);
        let v = all_vectors(3)
            .find(|v| interpolant(v, &ctx).unwrap() == square)
            .expect("X^2 is an interpolant");
        assert_eq!(interpolant_degree(&v, &ctx).unwrap(), Degree::Finite(2));
    }

    #[test]
    fn closed_form_matches_interpolation_exhaustively() {
        for p in [5u64, 7, 11, 13, 17] {
            let ctx = FieldContext::new(p).unwrap();
            let m = ((p - 1) / 2) as usize;
            let task = RootTask::square_roots(&ctx);
            for v in all_vectors(m) {
                let f = interpolant(&v, &ctx).unwrap();
                assert_eq!(verify_root_poly(&f, &task).unwrap(), 0);
                for i in 1..=m {
                    assert_eq!(
                        leading_coefficient(&v, i, &ctx).unwrap().value(),
                        f.coeff(m - i)
                    );
                }
                let d = interpolant_degree(&v, &ctx).unwrap();
                assert_eq!(d, f.degree());
                assert_eq!(d, interpolant_degree(&v.negate(), &ctx).unwrap());
            }
        }
    }

    #[test]
    fn closed_form_matches_interpolation_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [101u64, 997, 10007] {
            let ctx = FieldContext::new(p).unwrap();
            let m = ((p - 1) / 2) as usize;
            for _ in 0..3 {
                let v = SignVector::new((0..m).map(|_| rng.gen()).collect());
                let f = interpolant(&v, &ctx).unwrap();
                for i in [1, 2, 3, m / 2, m] {
                    assert_eq!(
                        leading_coefficient(&v, i, &ctx).unwrap().value(),
                        f.coeff(m - i)
                    );
                }
            }
        }
    }

    #[test]
    fn known_kernel_vector_at_seventeen() {
        let ctx = FieldContext::new(17).unwrap();
        assert_eq!(ctx.generator(), 3);
        let v: SignVector = "+-+++++-".parse().unwrap();
        assert!(leading_coefficient(&v, 1, &ctx).unwrap().is_zero());
        let d = interpolant_degree(&v, &ctx).unwrap();
        assert!(d <= Degree::Finite(6));
    }

    #[test]
    fn index_and_length_errors() {
        let ctx = FieldContext::new(13).unwrap();
        let v = SignVector::all_plus(6);
        assert!(leading_coefficient(&v, 0, &ctx).is_err());
        assert!(leading_coefficient(&v, 7, &ctx).is_err());
        assert!(interpolant(&SignVector::all_plus(5), &ctx).is_err());
    }
}
