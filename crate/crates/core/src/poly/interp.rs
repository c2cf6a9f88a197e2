//! Interpolation through prescribed values: barycentric Lagrange in O(n²),
//! and the closed-form indicator polynomials of a multiplicative coset.

use std::collections::HashSet;

use super::DensePoly;
use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod, FieldElement};

/// Coefficients of `prod (X - x_i)`.
fn node_polynomial(xs: &[u64], p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(xs.len() + 1);
    out.push(1u64);
    for &x in xs {
        out.push(0);
        for k in (1..out.len()).rev() {
            out[k] = sub_mod(out[k - 1], mul_mod(out[k], x, p), p);
        }
        out[0] = mul_mod(out[0], neg_mod(x, p), p);
    }
    out
}

/// `node / (X - x)` by synthetic division; `x` must be a root of `node`.
fn deflate(node: &[u64], x: u64, p: u64) -> Vec<u64> {
    let n = node.len() - 1;
    let mut q = vec![0u64; n];
    let mut carry = 0u64;
    for k in (0..n).rev() {
        carry = add_mod(node[k + 1], mul_mod(carry, x, p), p);
        q[k] = carry;
    }
    q
}

fn check_distinct(xs: &[u64]) -> Result<()> {
    let mut seen = HashSet::with_capacity(xs.len());
    for &x in xs {
        if !seen.insert(x) {
            return Err(Error::DuplicateNode(x));
        }
    }
    Ok(())
}

/// Coefficient vectors of the Lagrange basis `L_j` for distinct nodes, each
/// padded to length `xs.len()`.
pub fn lagrange_basis(xs: &[u64], p: u64) -> Result<Vec<Vec<u64>>> {
    check_distinct(xs)?;
    let node = node_polynomial(xs, p);
    xs.iter()
        .map(|&x| {
            let q = deflate(&node, x, p);
            // q(x) = prod_{j != i} (x - x_j), the barycentric denominator
            let denom = q
                .iter()
                .rev()
                .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p));
            let w = inv_mod(denom, p)?;
            Ok(q.into_iter().map(|c| mul_mod(c, w, p)).collect())
        })
        .collect()
}

/// Unique polynomial of degree `< xs.len()` with `f(xs[i]) = ys[i]`.
pub fn interpolate_raw(xs: &[u64], ys: &[u64], p: u64) -> Result<DensePoly> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument(format!(
            "{} nodes but {} values",
            xs.len(),
            ys.len()
        )));
    }
    let xs: Vec<u64> = xs.iter().map(|x| x % p).collect();
    check_distinct(&xs)?;
    let node = node_polynomial(&xs, p);
    let mut acc = vec![0u64; xs.len()];
    for (&x, &y) in xs.iter().zip(ys) {
        let y = y % p;
        if y == 0 {
            continue;
        }
        let q = deflate(&node, x, p);
        let denom = q
            .iter()
            .rev()
            .fold(0, |a, &c| add_mod(mul_mod(a, x, p), c, p));
        let w = mul_mod(y, inv_mod(denom, p)?, p);
        for (a, c) in acc.iter_mut().zip(q) {
            *a = add_mod(*a, mul_mod(c, w, p), p);
        }
    }
    Ok(DensePoly::from_reduced(acc, p))
}

/// [`interpolate_raw`] over field elements that must share one modulus.
pub fn interpolate(points: &[(FieldElement, FieldElement)]) -> Result<DensePoly> {
    let Some(&(first, _)) = points.first() else {
        return Err(Error::InvalidArgument("no interpolation points".into()));
    };
    let p = first.modulus();
    for (x, y) in points {
        for m in [x.modulus(), y.modulus()] {
            if m != p {
                return Err(Error::ModulusMismatch(p, m));
            }
        }
    }
    let xs: Vec<u64> = points.iter().map(|(x, _)| x.value()).collect();
    let ys: Vec<u64> = points.iter().map(|(_, y)| y.value()).collect();
    interpolate_raw(&xs, &ys, p)
}

/// `(1/m) * sum_{k<m} (X/alpha)^k`: equal to 1 at `alpha` and 0 on the rest of
/// the coset `alpha * H`, where `H` is the order-`m` subgroup of F_p^*.
pub fn delta_alpha(alpha: u64, m: usize, p: u64) -> Result<DensePoly> {
    let alpha = alpha % p;
    if alpha == 0 {
        return Err(Error::ZeroInput("delta_alpha node must be nonzero"));
    }
    if m == 0 || !(p - 1).is_multiple_of(m as u64) {
        return Err(Error::InvalidArgument(format!(
            "subgroup order {m} does not divide p - 1 = {}",
            p - 1
        )));
    }
    let inv_m = inv_mod(m as u64, p)?;
    let inv_alpha = inv_mod(alpha, p)?;
    let mut coeffs = Vec::with_capacity(m);
    let mut c = inv_m;
    for _ in 0..m {
        coeffs.push(c);
        c = mul_mod(c, inv_alpha, p);
    }
    Ok(DensePoly::from_reduced(coeffs, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{find_generator, pow_mod};
    use proptest::prelude::*;

    fn squares(p: u64) -> Vec<u64> {
        let g = find_generator(p).unwrap();
        (0..(p - 1) / 2).map(|j| pow_mod(g, 2 * j, p)).collect()
    }

    #[test]
    fn line_and_constant() {
        let f = interpolate_raw(&[1, 2], &[2, 3], 5).unwrap();
        assert_eq!(f.coeffs(), &[1, 1]);
        let c = interpolate(&[(FieldElement::new(4, 5), FieldElement::new(3, 5))]).unwrap();
        assert_eq!(c, DensePoly::constant(3, 5));
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert_eq!(
            interpolate_raw(&[1, 6], &[0, 0], 5),
            Err(Error::DuplicateNode(1))
        );
        assert_eq!(lagrange_basis(&[2, 2], 5), Err(Error::DuplicateNode(2)));
    }

    #[test]
    fn sign_assignment_roundtrip_mod_13() {
        let p = 13;
        let s = squares(p);
        for mask in 0u32..64 {
            let ys: Vec<u64> = s
                .iter()
                .enumerate()
                .map(|(j, &a)| {
                    let r = crate::field::FieldContext::new(p).unwrap().sqrt(a).unwrap();
                    if mask >> j & 1 == 1 {
                        p - r
                    } else {
                        r
                    }
                })
                .collect();
            let f = interpolate_raw(&s, &ys, p).unwrap();
            for (&x, &y) in s.iter().zip(&ys) {
                assert_eq!(f.eval(x), y);
            }
        }
    }

    #[test]
    fn delta_alpha_is_indicator() {
        let p = 13;
        let s = squares(p);
        let m = s.len();
        for &alpha in &s {
            let d = delta_alpha(alpha, m, p).unwrap();
            assert_eq!(d.degree().finite(), Some(m - 1));
            for &beta in &s {
                assert_eq!(d.eval(beta), u64::from(beta == alpha));
            }
            let ys: Vec<u64> = s.iter().map(|&b| u64::from(b == alpha)).collect();
            assert_eq!(interpolate_raw(&s, &ys, p).unwrap(), d);
        }
        assert!(delta_alpha(0, m, p).is_err());
        assert!(delta_alpha(1, 5, p).is_err());
    }

    #[test]
    fn delta_alpha_matches_lagrange_on_larger_primes() {
        for p in [29u64, 101, 257] {
            let s = squares(p);
            let basis = lagrange_basis(&s, p).unwrap();
            for (j, &alpha) in s.iter().enumerate().step_by(7) {
                let d = delta_alpha(alpha, s.len(), p).unwrap();
                assert_eq!(d, DensePoly::new(basis[j].clone(), p));
            }
        }
    }

    proptest! {
        #[test]
        fn interpolation_roundtrip(coeffs in proptest::collection::vec(0u64..10007, 1..32), seed in 0u64..1000) {
            let p = 10007;
            let f = DensePoly::new(coeffs.clone(), p);
            let n = coeffs.len();
            // distinct nodes from an affine progression
            let xs: Vec<u64> = (0..n as u64).map(|k| (seed + 37 * k) % p).collect();
            let ys: Vec<u64> = xs.iter().map(|&x| f.eval(x)).collect();
            prop_assert_eq!(interpolate_raw(&xs, &ys, p).unwrap(), f);
        }
    }
}
