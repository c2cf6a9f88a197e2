use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{add_mod, mul_mod, FieldContext};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquidistReport {
    pub p: u64,
    pub t: usize,
    pub y: Vec<u64>,
    pub buckets: Vec<u64>,
    /// `max_b |count_b / m - 1/k|`
    pub max_deviation: f64,
    /// `4 t ln(p)^2 / sqrt(p)`
    pub bound: f64,
    pub within_bound: bool,
}

/// Histogram of `P_y(g^j) = sum_i y_i g^((2i+1)j)` over `j < (p-1)/2`, in
/// `k` equal slices of `[0, p)`.
pub fn equidist_stats(p: u64, y: &[u64], k: usize) -> Result<EquidistReport> {
    let ctx = FieldContext::new(p)?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 buckets, got {k}"
        )));
    }
    let y: Vec<u64> = y.iter().map(|c| c % p).collect();
    if y.iter().all(|&c| c == 0) {
        return Err(Error::ZeroInput("coefficient vector y must be nonzero"));
    }
    let t = y.len();
    let m = (p - 1) / 2;
    let g = ctx.generator();
    // z = g^j; powers z^(2i+1) by repeated multiplication with z^2
    let mut buckets = vec![0u64; k];
    let mut z = 1u64;
    for _ in 0..m {
        let z2 = mul_mod(z, z, p);
        let mut pw = z;
        let mut val = 0u64;
        for &c in &y {
            pw = mul_mod(pw, z2, p);
            val = add_mod(val, mul_mod(c, pw, p), p);
        }
        buckets[(val as u128 * k as u128 / p as u128) as usize] += 1;
        z = mul_mod(z, g, p);
    }
    let max_deviation = buckets
        .iter()
        .map(|&c| (c as f64 / m as f64 - 1.0 / k as f64).abs())
        .fold(0.0, f64::max);
    let ln = (p as f64).ln();
    let bound = 4.0 * t as f64 * ln * ln / (p as f64).sqrt();
    Ok(EquidistReport {
        p,
        t,
        y,
        buckets,
        max_deviation,
        bound,
        within_bound: max_deviation <= bound,
    })
}

/// A nonzero coefficient vector of length `t`, reproducible from `seed`.
pub fn random_y(p: u64, t: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let y: Vec<u64> = (0..t).map(|_| rng.gen_range(0..p)).collect();
        if y.iter().any(|&c| c != 0) {
            return y;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::pow_mod;

    #[test]
    fn counts_cover_all_points() {
        let r = equidist_stats(10007, &random_y(10007, 2, 1), 10).unwrap();
        assert_eq!(r.buckets.iter().sum::<u64>(), 5003);
        assert!(r.max_deviation < 0.1);
    }

    #[test]
    fn values_match_direct_evaluation() {
        let p = 101;
        let y = vec![3, 0, 7];
        let g = FieldContext::new(p).unwrap().generator();
        let mut direct = vec![0u64; 5];
        for j in 0..50u64 {
            let z = pow_mod(g, j, p);
            let v = (1..=3u64).fold(0, |acc, i| {
                add_mod(
                    acc,
                    mul_mod(y[i as usize - 1], pow_mod(z, 2 * i + 1, p), p),
                    p,
                )
            });
            direct[(v * 5 / p) as usize] += 1;
        }
        assert_eq!(equidist_stats(p, &y, 5).unwrap().buckets, direct);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(equidist_stats(101, &[0, 0], 10).is_err());
        assert!(equidist_stats(101, &[1], 1).is_err());
        assert_eq!(random_y(101, 3, 5), random_y(101, 3, 5));
    }
}
