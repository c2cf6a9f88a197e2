//! Sign vectors in the kernel of `M[i][j] = g^((2i+1)j)`, `i = 1..=rows`.
//!
//! Such a vector zeroes the top `rows` coefficients of the interpolant, so
//! its polynomial computes square roots with degree at most `m - 1 - rows`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::engine::{gray_scan, plan, run_partitions, ContributionTable, SearchOptions};
use super::sign::{interpolant, leading_coefficient, SignVector};
use crate::error::{Error, Result};
use crate::field::{add_mod, mul_mod, neg_mod, pow_mod, sub_mod, FieldContext};
use crate::roots::{verify_root_poly, RootTask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelStrategy {
    Exhaustive,
    MeetInMiddle,
    Random,
}

impl fmt::Display for KernelStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelStrategy::Exhaustive => "exhaustive",
            KernelStrategy::MeetInMiddle => "meet-in-middle",
            KernelStrategy::Random => "random",
        })
    }
}

impl FromStr for KernelStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(KernelStrategy::Exhaustive),
            "meet-in-middle" | "mitm" => Ok(KernelStrategy::MeetInMiddle),
            "random" => Ok(KernelStrategy::Random),
            other => Err(Error::Parse(format!("unknown kernel strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub p: u64,
    pub rows: usize,
    pub strategy: KernelStrategy,
    pub seed: u64,
    pub budget: u64,
    pub found: bool,
    pub witness: Option<SignVector>,
    pub degree: Option<usize>,
    pub errors: Option<usize>,
    /// Sign vectors evaluated.
    pub candidates: u64,
}

/// Row `i` (1-based) of the matrix: `g^((2i+1)j)` for `j < m`.
fn matrix(ctx: &FieldContext, rows: usize, m: usize) -> Vec<Vec<u64>> {
    let p = ctx.p();
    (1..=rows)
        .map(|i| {
            let step = pow_mod(ctx.generator(), 2 * i as u64 + 1, p);
            std::iter::successors(Some(1u64), |&x| Some(mul_mod(x, step, p)))
                .take(m)
                .collect()
        })
        .collect()
}

fn exhaustive(
    ctx: &FieldContext,
    mat: &[Vec<u64>],
    m: usize,
    budget: u64,
) -> (Option<Vec<u8>>, u64) {
    let p = ctx.p();
    let table = ContributionTable::build(p, m, 2, mat.len(), |j, r, out| {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = if r == 0 {
                mat[i][j]
            } else {
                neg_mod(mat[i][j], p)
            };
        }
    });
    // v and -v are both kernel vectors; pin v_0 = +1.
    let plan = plan(&table, true);
    let parts = run_partitions(&plan, Some(budget), |prefix, limit| {
        let mut best: Option<Vec<u8>> = None;
        let visited = gray_scan(&table, prefix, limit, |sums, digits| {
            if sums.iter().all(|&s| s == 0) && best.as_deref().is_none_or(|b| digits < b) {
                best = Some(digits.to_vec());
            }
        });
        (best, visited)
    });
    let candidates = parts.iter().map(|(_, v)| v).sum();
    (parts.into_iter().filter_map(|(b, _)| b).min(), candidates)
}

/// Subset-sum split for a single row: `sum_j v_j c_j = 0`.
fn meet_in_middle(row: &[u64], p: u64, budget: u64) -> (Option<Vec<u8>>, u64) {
    let m = row.len();
    let h = m / 2;
    let mut candidates = 0u64;
    let signed_sum = |bits: u64, range: std::ops::Range<usize>| {
        range.enumerate().fold(0u64, |acc, (b, j)| {
            if bits >> b & 1 == 1 {
                sub_mod(acc, row[j], p)
            } else {
                add_mod(acc, row[j], p)
            }
        })
    };
    // lexicographic order on digits equals numeric order on bit-reversed masks,
    // so keep, per sum, the smallest left half under that order
    let lex_key = |bits: u64, len: usize| (0..len).fold(0u64, |k, b| k << 1 | (bits >> b & 1));
    let mut left: HashMap<u64, u64> = HashMap::new();
    // left half with v_0 = +1
    for bits in (0u64..1 << h).filter(|b| b & 1 == 0) {
        if candidates >= budget {
            return (None, candidates);
        }
        candidates += 1;
        let s = signed_sum(bits, 0..h);
        left.entry(s)
            .and_modify(|cur| {
                if lex_key(bits, h) < lex_key(*cur, h) {
                    *cur = bits;
                }
            })
            .or_insert(bits);
    }
    let mut best: Option<(u64, u64)> = None;
    for bits in 0u64..1 << (m - h) {
        if candidates >= budget {
            break;
        }
        candidates += 1;
        let need = neg_mod(signed_sum(bits, h..m), p);
        if let Some(&l) = left.get(&need) {
            let key = (lex_key(l, h), lex_key(bits, m - h));
            if best.is_none_or(|b| key < (lex_key(b.0, h), lex_key(b.1, m - h))) {
                best = Some((l, bits));
            }
        }
    }
    let digits = best.map(|(l, r)| {
        (0..h)
            .map(|b| (l >> b & 1) as u8)
            .chain((0..m - h).map(|b| (r >> b & 1) as u8))
            .collect()
    });
    (digits, candidates)
}

/// Seeded local search: flip the sign that leaves the fewest nonzero
/// residual rows, random restarts when stuck.
fn random_flips(
    mat: &[Vec<u64>],
    p: u64,
    m: usize,
    budget: u64,
    seed: u64,
) -> (Option<Vec<u8>>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = 0u64;
    let residual = |digits: &[u8]| -> Vec<u64> {
        mat.iter()
            .map(|row| {
                row.iter().zip(digits).fold(0, |acc, (&c, &d)| {
                    if d == 0 {
                        add_mod(acc, c, p)
                    } else {
                        sub_mod(acc, c, p)
                    }
                })
            })
            .collect()
    };
    let nonzero = |r: &[u64]| r.iter().filter(|&&s| s != 0).count();
    let restart = |rng: &mut ChaCha8Rng| -> Vec<u8> {
        let mut d: Vec<u8> = (0..m).map(|_| rng.gen_range(0..2)).collect();
        d[0] = 0;
        d
    };
    let mut digits = restart(&mut rng);
    let mut res = residual(&digits);
    candidates += 1;
    let mut stall = 0usize;
    while candidates < budget {
        if nonzero(&res) == 0 {
            return (Some(digits), candidates);
        }
        let current = nonzero(&res);
        let mut best_score = usize::MAX;
        let mut best_moves = Vec::new();
        for j in 1..m {
            if candidates >= budget {
                break;
            }
            candidates += 1;
            // flipping v_j changes each row by -2 v_j c_ij
            let trial: Vec<u64> = mat
                .iter()
                .zip(&res)
                .map(|(row, &s)| {
                    let twice = add_mod(row[j], row[j], p);
                    if digits[j] == 0 {
                        sub_mod(s, twice, p)
                    } else {
                        add_mod(s, twice, p)
                    }
                })
                .collect();
            let score = nonzero(&trial);
            if score < best_score {
                best_score = score;
                best_moves.clear();
            }
            if score == best_score {
                best_moves.push((j, trial));
            }
        }
        if best_moves.is_empty() {
            break;
        }
        if best_score < current {
            stall = 0;
        } else {
            stall += 1;
        }
        if stall > 4 * m {
            digits = restart(&mut rng);
            res = residual(&digits);
            stall = 0;
            continue;
        }
        let pick = rng.gen_range(0..best_moves.len());
        let (j, trial) = best_moves.swap_remove(pick);
        digits[j] ^= 1;
        res = trial;
    }
    ((nonzero(&res) == 0).then_some(digits), candidates)
}

/// Searches for `v` with `leading_coefficient(v, i) = 0` for `i = 1..=rows`.
/// Returns `None` within the report when nothing is found inside `budget`
/// candidates, or at once when `rows >= m` (the interpolant cannot vanish).
pub fn kernel_sign_search(
    p: u64,
    rows: usize,
    strategy: KernelStrategy,
    budget: u64,
    seed: u64,
) -> Result<KernelReport> {
    kernel_sign_search_with(p, rows, strategy, budget, seed, &SearchOptions::default())
}

pub fn kernel_sign_search_with(
    p: u64,
    rows: usize,
    strategy: KernelStrategy,
    budget: u64,
    seed: u64,
    opts: &SearchOptions,
) -> Result<KernelReport> {
    if rows == 0 || budget == 0 {
        return Err(Error::InvalidArgument(
            "rows and budget must be at least 1".into(),
        ));
    }
    let ctx = FieldContext::new(p)?;
    let m = ((p - 1) / 2) as usize;
    let mut report = KernelReport {
        p,
        rows,
        strategy,
        seed,
        budget,
        found: false,
        witness: None,
        degree: None,
        errors: None,
        candidates: 0,
    };
    if rows >= m {
        return Ok(report);
    }
    let mat = matrix(&ctx, rows, m);
    let (digits, candidates) = match strategy {
        KernelStrategy::Exhaustive => opts.install(|| exhaustive(&ctx, &mat, m, budget))?,
        KernelStrategy::MeetInMiddle => {
            if rows != 1 {
                return Err(Error::InvalidArgument(
                    "meet-in-middle handles a single row only".into(),
                ));
            }
            if m >= 2 * 40 {
                return Err(Error::InvalidArgument(format!(
                    "meet-in-middle is limited to m < 80, got {m}"
                )));
            }
            meet_in_middle(&mat[0], p, budget)
        }
        KernelStrategy::Random => random_flips(&mat, p, m, budget, seed),
    };
    report.candidates = candidates;
    if let Some(digits) = digits {
        let v = SignVector::from_digits(&digits);
        // independent check through the closed-form coefficients
        for i in 1..=rows {
            if !leading_coefficient(&v, i, &ctx)?.is_zero() {
                return Err(Error::TheoremViolated(format!(
                    "kernel vector {v} misses row {i}"
                )));
            }
        }
        let f = interpolant(&v, &ctx)?;
        let errors = verify_root_poly(&f, &RootTask::square_roots(&ctx))?;
        report.found = true;
        report.degree = f.degree().finite();
        report.errors = Some(errors);
        report.witness = Some(v);
    }
    Ok(report)
}
