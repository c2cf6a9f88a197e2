//! Dense product kernels. Schoolbook below [`KARATSUBA_THRESHOLD`], Karatsuba above.

use crate::field::{add_mod, sub_mod};

/// Operand length at which multiplication switches to Karatsuba.
pub const KARATSUBA_THRESHOLD: usize = 32;

pub(crate) fn schoolbook(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p128 = p as u128;
    // Accumulate in u128 and fold back whenever the next product could overflow.
    let headroom = u128::MAX - (p128 - 1) * (p128 - 1);
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let slot = &mut out[i + j];
            if *slot > headroom {
                *slot %= p128;
            }
            *slot += x as u128 * y as u128;
        }
    }
    out.into_iter().map(|v| (v % p128) as u64).collect()
}

fn add_into(acc: &mut [u64], src: &[u64], p: u64) {
    for (a, &s) in acc.iter_mut().zip(src) {
        *a = add_mod(*a, s, p);
    }
}

fn sub_into(acc: &mut [u64], src: &[u64], p: u64) {
    for (a, &s) in acc.iter_mut().zip(src) {
        *a = sub_mod(*a, s, p);
    }
}

fn karatsuba(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return schoolbook(a, b, p);
    }
    let half = n / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));

    let z0 = karatsuba(a0, b0, p);
    let z2 = karatsuba(a1, b1, p);

    let mut sa = a0.to_vec();
    sa.resize(half.max(a1.len()), 0);
    add_into(&mut sa, a1, p);
    let mut sb = b0.to_vec();
    sb.resize(half.max(b1.len()), 0);
    add_into(&mut sb, b1, p);
    let mut z1 = karatsuba(&sa, &sb, p);
    sub_into(&mut z1, &z0, p);
    sub_into(&mut z1, &z2, p);

    let mut out = vec![0u64; a.len() + b.len() - 1];
    add_into(&mut out, &z0, p);
    add_into(&mut out[half..], &z1, p);
    add_into(&mut out[2 * half..], &z2, p);
    out
}

pub(crate) fn multiply(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    karatsuba(a, b, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn karatsuba_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[13u64, 10007, (1 << 61) - 1] {
            for _ in 0..20 {
                let la = rng.gen_range(1..200);
                let lb = rng.gen_range(1..200);
                let a: Vec<u64> = (0..la).map(|_| rng.gen_range(0..p)).collect();
                let b: Vec<u64> = (0..lb).map(|_| rng.gen_range(0..p)).collect();
                assert_eq!(multiply(&a, &b, p), schoolbook(&a, &b, p));
            }
        }
    }
}
