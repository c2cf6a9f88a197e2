//! Explicit polynomials computing square roots and t-th roots, the
//! Tonelli–Shanks branch map, and the verifier that counts failures.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, pow_mod, sub_mod, FieldContext};
use crate::poly::DensePoly;

/// Residue sets above this size are verified in parallel.
const PARALLEL_VERIFY_THRESHOLD: usize = 1 << 14;

/// The set `S_t` of nonzero t-th powers in F_p, together with the root order.
#[derive(Debug, Clone)]
pub struct RootTask {
    ctx: FieldContext,
    t: u64,
}

impl RootTask {
    pub fn new(ctx: &FieldContext, t: u64) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidArgument(format!(
                "root order must be at least 2, got {t}"
            )));
        }
        Ok(RootTask {
            ctx: ctx.clone(),
            t,
        })
    }

    pub fn square_roots(ctx: &FieldContext) -> Self {
        RootTask {
            ctx: ctx.clone(),
            t: 2,
        }
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Number of t-th roots of each element of `S_t`: `gcd(t, p - 1)`.
    pub fn roots_per_residue(&self) -> u64 {
        num_integer::gcd(self.t, self.p() - 1)
    }

    /// `|S_t| = (p - 1) / gcd(t, p - 1)`.
    pub fn residue_count(&self) -> usize {
        ((self.p() - 1) / self.roots_per_residue()) as usize
    }

    /// `S_t` in generator order: `g^(t*j)` for `j = 0, 1, ...`.
    pub fn residues(&self) -> impl Iterator<Item = u64> {
        let p = self.p();
        let step = pow_mod(self.ctx.generator(), self.t, p);
        std::iter::successors(Some(1u64), move |&a| Some(mul_mod(a, step, p)))
            .take(self.residue_count())
    }

    pub fn is_residue(&self, a: u64) -> bool {
        let p = self.p();
        !a.is_multiple_of(p) && pow_mod(a, self.residue_count() as u64, p) == 1
    }
}

/// The elements of `S_t` on which `f(a)^t != a`.
pub fn failing_residues(f: &DensePoly, task: &RootTask) -> Result<Vec<u64>> {
    if f.modulus() != task.p() {
        return Err(Error::ModulusMismatch(f.modulus(), task.p()));
    }
    let (p, t) = (task.p(), task.t());
    let fails = |&a: &u64| pow_mod(f.eval(a), t, p) != a;
    let residues: Vec<u64> = task.residues().collect();
    let mut out: Vec<u64> = if residues.len() >= PARALLEL_VERIFY_THRESHOLD {
        residues.into_par_iter().filter(fails).collect()
    } else {
        residues.into_iter().filter(fails).collect()
    };
    out.sort_unstable();
    Ok(out)
}

/// Error count `e = |{a in S_t : f(a)^t != a}|`. The value at 0 is not checked.
pub fn verify_root_poly(f: &DensePoly, task: &RootTask) -> Result<usize> {
    failing_residues(f, task).map(|v| v.len())
}

/// `X^((p+1)/4)` for `p ≡ 3 (mod 4)`.
pub fn construct_3mod4(ctx: &FieldContext) -> Result<DensePoly> {
    let p = ctx.p();
    if p % 4 != 3 {
        return Err(Error::WrongResidueClass {
            p,
            required: "p ≡ 3 mod 4",
        });
    }
    Ok(DensePoly::monomial(1, ((p + 1) / 4) as usize, p))
}

fn require_5mod8(p: u64) -> Result<()> {
    if p % 8 != 5 {
        return Err(Error::WrongResidueClass {
            p,
            required: "p ≡ 5 mod 8",
        });
    }
    Ok(())
}

/// Tonelli–Shanks branch map for `p ≡ 5 (mod 8)`: `a^((p+3)/8)` when `a` is a
/// quartic residue, `i * a^((p+3)/8)` otherwise. Defined only on nonzero squares.
pub fn tonelli_branch(ctx: &FieldContext, a: u64) -> Result<u64> {
    let p = ctx.p();
    require_5mod8(p)?;
    let a = a % p;
    if a == 0 {
        return Err(Error::ZeroInput(
            "branch map is defined on nonzero squares only",
        ));
    }
    if ctx.legendre(a) != 1 {
        return Err(Error::NonResidue { value: a, p });
    }
    let base = pow_mod(a, (p + 3) / 8, p);
    if pow_mod(a, (p - 1) / 4, p) == 1 {
        Ok(base)
    } else {
        Ok(mul_mod(ctx.sqrt_minus_one()?, base, p))
    }
}

/// `(1-i)/2 X^((3p+1)/8) + (1+i)/2 X^((p+3)/8)` for `p ≡ 5 (mod 8)`, with the
/// canonical (smaller) square root `i` of -1.
pub fn construct_5mod8(ctx: &FieldContext) -> Result<DensePoly> {
    let p = ctx.p();
    require_5mod8(p)?;
    let i = ctx.sqrt_minus_one()?;
    let half = inv_mod(2, p)?;
    let high = mul_mod(sub_mod(1, i, p), half, p);
    let low = mul_mod((1 + i) % p, half, p);
    let hi_exp = ((3 * p + 1) / 8) as usize;
    let lo_exp = ((p + 3) / 8) as usize;
    Ok(&DensePoly::monomial(high, hi_exp, p) + &DensePoly::monomial(low, lo_exp, p))
}

/// Glues two branch polynomials along the quartic character:
/// `(f0 (X^q + 1) - f1 (X^q - 1)) / 2` with `q = (p-1)/4`. The result agrees
/// with `f0` where `a^q = 1` and with `f1` where `a^q = -1`.
pub fn crt_combine(f0: &DensePoly, f1: &DensePoly, ctx: &FieldContext) -> Result<DensePoly> {
    let p = ctx.p();
    if p % 4 != 1 {
        return Err(Error::WrongResidueClass {
            p,
            required: "p ≡ 1 mod 4",
        });
    }
    for f in [f0, f1] {
        if f.modulus() != p {
            return Err(Error::ModulusMismatch(f.modulus(), p));
        }
    }
    let q = ((p - 1) / 4) as usize;
    let one = DensePoly::constant(1, p);
    let xq = DensePoly::monomial(1, q, p);
    let plus = f0.checked_mul(&(&xq + &one))?;
    let minus = f1.checked_mul(&(&xq - &one))?;
    Ok((&plus - &minus).scale(inv_mod(2, p)?))
}

/// Whether `f(X)^2 ≡ X (mod X^((p-1)/2) - 1)` holds coefficientwise.
pub fn squares_to_x_cyclically(f: &DensePoly) -> bool {
    let p = f.modulus();
    let m = ((p - 1) / 2) as usize;
    match (f * f).mod_cyclic(m) {
        Ok(r) => r == DensePoly::x(p).mod_cyclic(m).expect("m >= 1"),
        Err(_) => false,
    }
}

/// Monomial t-th root maps for the two special classes of `p ≡ 1 (mod t)`:
/// `X^((p+t-1)/t^2)` when `p ≡ 1 - t (mod t^2)`, and `X^((2p+t-2)/t^2)` when
/// `2p ≡ 2 - t (mod t^2)`.
pub fn construct_tth_special(ctx: &FieldContext, t: u64) -> Result<DensePoly> {
    let p = ctx.p();
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "root order must be at least 2, got {t}"
        )));
    }
    if !(p - 1).is_multiple_of(t) {
        return Err(Error::InvalidOrder { p, t });
    }
    let t2 = t as u128 * t as u128;
    let (p128, t128) = (p as u128, t as u128);
    let exponent = if (p128 + t128 - 1) % t2 == 0 {
        (p128 + t128 - 1) / t2
    } else if (2 * p128 + t128 - 2) % t2 == 0 {
        (2 * p128 + t128 - 2) / t2
    } else {
        return Err(Error::WrongResidueClass {
            p,
            required: "p ≡ 1 - t or 2p ≡ 2 - t mod t^2",
        });
    };
    Ok(DensePoly::monomial(1, exponent as usize, p))
}
