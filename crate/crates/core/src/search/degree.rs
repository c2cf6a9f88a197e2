//! Minimum interpolant degree over all root assignments, with and without
//! dropped nodes.
//!
//! For the residues `a_j = g^(t*j)` the roots are `zeta^r * g^j`, where `zeta`
//! generates the k-th roots of unity and `k = gcd(t, p - 1)`. An assignment is
//! a digit `r` per node. The coefficient of `X^(n-i)` is linear in the chosen
//! values, so the engine tracks the top few coefficients as running sums and
//! only falls back to the remaining ones when all tracked sums vanish.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::engine::{gray_scan, plan, run_partitions, ContributionTable, SearchOptions};
use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, pow_mod, FieldContext};
use crate::poly::{interpolate_raw, lagrange_basis, Degree, DensePoly};
use crate::roots::{failing_residues, RootTask};

/// Leading coefficients maintained incrementally per assignment.
const TRACKED_ROWS: usize = 6;

/// Digit marking a dropped node in a full assignment; sorts after every root.
const DROPPED: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub holds: bool,
}

/// Outcome of a minimum-degree search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub p: u64,
    pub t: u64,
    pub e: usize,
    pub min_degree: usize,
    /// One character per residue `g^(t*j)`: `+`/`-` for square roots, the
    /// root-of-unity exponent for higher orders, `*` for a dropped node.
    pub witness: String,
    /// Residues whose nodes were dropped.
    pub errors: Vec<u64>,
    /// The headline inequality checked for this instance.
    pub bound: String,
    /// Whether every entry of `checks` holds.
    pub bound_ok: bool,
    pub checks: Vec<BoundCheck>,
    /// `exact` for full assignments, `drop-nodes` when `e > 0`: the latter
    /// is a lower bound on the degree of any polynomial erring on `e` residues.
    pub oracle: &'static str,
    /// Size of the assignment space covered.
    pub vectors: u64,
    #[serde(skip)]
    pub polynomial: DensePoly,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Node layout for t-th roots.
struct RootLayout {
    p: u64,
    k: usize,
    residues: Vec<u64>,
    /// `roots[j][r] = zeta^r * g^j`
    roots: Vec<Vec<u64>>,
}

impl RootLayout {
    fn new(task: &RootTask) -> Result<Self> {
        let p = task.p();
        let k = task.roots_per_residue();
        if k > 255 {
            return Err(Error::InvalidArgument(format!(
                "{k} roots per residue is too many to enumerate"
            )));
        }
        let g = task.ctx().generator();
        let zeta = pow_mod(g, (p - 1) / k, p);
        let residues: Vec<u64> = task.residues().collect();
        let roots = (0..residues.len())
            .map(|j| {
                let base = pow_mod(g, j as u64, p);
                std::iter::successors(Some(base), |&x| Some(mul_mod(x, zeta, p)))
                    .take(k as usize)
                    .collect()
            })
            .collect();
        Ok(RootLayout {
            p,
            k: k as usize,
            residues,
            roots,
        })
    }

    fn n(&self) -> usize {
        self.residues.len()
    }
}

/// Kept nodes and, for each coefficient row `i`, the weight of each node's
/// value in the coefficient of `X^(n'-1-i)`.
struct NodeSystem<'a> {
    layout: &'a RootLayout,
    kept: Vec<usize>,
    weights: Vec<Vec<u64>>,
}

impl<'a> NodeSystem<'a> {
    /// All nodes: the weights are `a_j^(i+1) / n`.
    fn full(layout: &'a RootLayout) -> Result<Self> {
        let p = layout.p;
        let n = layout.n();
        let inv_n = inv_mod(n as u64, p)?;
        let weights = (0..n)
            .map(|i| {
                layout
                    .residues
                    .iter()
                    .map(|&a| mul_mod(pow_mod(a, i as u64 + 1, p), inv_n, p))
                    .collect()
            })
            .collect();
        Ok(NodeSystem {
            layout,
            kept: (0..n).collect(),
            weights,
        })
    }

    /// A subset of nodes: weights come from the Lagrange basis.
    fn subset(layout: &'a RootLayout, kept: Vec<usize>) -> Result<Self> {
        let xs: Vec<u64> = kept.iter().map(|&j| layout.residues[j]).collect();
        let basis = lagrange_basis(&xs, layout.p)?;
        let n = kept.len();
        let weights = (0..n)
            .map(|i| basis.iter().map(|b| b[n - 1 - i]).collect())
            .collect();
        Ok(NodeSystem {
            layout,
            kept,
            weights,
        })
    }

    fn len(&self) -> usize {
        self.kept.len()
    }

    fn value(&self, q: usize, r: u8) -> u64 {
        self.layout.roots[self.kept[q]][r as usize]
    }

    fn table(&self) -> ContributionTable {
        let p = self.layout.p;
        let rows = self.len().min(TRACKED_ROWS);
        ContributionTable::build(p, self.len(), self.layout.k, rows, |q, r, out| {
            let v = self.value(q, r as u8);
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = mul_mod(v, self.weights[i][q], p);
            }
        })
    }

    /// Degree given tracked sums; `None` for the zero polynomial.
    fn degree(&self, sums: &[u64], digits: &[u8]) -> Option<usize> {
        let n = self.len();
        if let Some(i) = sums.iter().position(|&s| s != 0) {
            return Some(n - 1 - i);
        }
        let p = self.layout.p;
        (sums.len()..n)
            .find(|&i| {
                digits.iter().enumerate().fold(0, |acc, (q, &r)| {
                    add_mod(acc, mul_mod(self.value(q, r), self.weights[i][q], p), p)
                }) != 0
            })
            .map(|i| n - 1 - i)
    }

    /// Smallest `(degree, digits)` over all assignments, lexicographic tie-break.
    fn minimise(&self) -> Option<(usize, Vec<u8>)> {
        let table = self.table();
        let plan = plan(&table, true);
        let parts = run_partitions(&plan, None, |prefix, limit| {
            let mut best: Option<(usize, Vec<u8>)> = None;
            gray_scan(&table, prefix, limit, |sums, digits| {
                let Some(d) = self.degree(sums, digits) else {
                    return;
                };
                let better = match &best {
                    None => true,
                    Some((bd, bw)) => d < *bd || (d == *bd && digits < bw.as_slice()),
                };
                if better {
                    best = Some((d, digits.to_vec()));
                }
            });
            best
        });
        parts.into_iter().flatten().min()
    }
}

/// Degree bounds that apply to a polynomial of degree `d` computing t-th
/// roots on all but `e` residues mod `p`, each with whether `(d, e)` meets it.
pub fn degree_bounds(p: u64, t: u64, d: usize, e: usize) -> Vec<BoundCheck> {
    let n = ((p - 1) / num_integer::gcd(t, p - 1)) as usize;
    checks_for(p, t, e, d, n, false).1
}

/// With `exact` set (a true minimum), the `p ≡ 3 mod 4` case is checked as
/// an equality rather than a lower bound.
fn checks_for(
    p: u64,
    t: u64,
    e: usize,
    d: usize,
    n: usize,
    exact: bool,
) -> (String, Vec<BoundCheck>) {
    let (d64, e64) = (d as u64, e as u64);
    let mut checks = Vec::new();
    let mut headline = None;
    if t == 2 && p % 4 == 1 {
        let name = "d+e>=(p-1)/3".to_string();
        checks.push(BoundCheck {
            name: name.clone(),
            holds: 3 * (d64 + e64) >= p - 1,
        });
        headline = Some(name);
    }
    if t == 2 && p % 4 == 3 && e == 0 {
        let (name, holds) = if exact {
            ("d=(p+1)/4", d64 == (p + 1) / 4)
        } else {
            ("d>=(p+1)/4", d64 >= (p + 1) / 4)
        };
        let name = name.to_string();
        checks.push(BoundCheck {
            name: name.clone(),
            holds,
        });
        headline = Some(name);
    }
    let t2 = t * t;
    if t >= 3 && p % t == 1 && p % t2 != (1 + t2 - t % t2) % t2 {
        let name = "d+e>=2p/(t(t+1))".to_string();
        checks.push(BoundCheck {
            name: name.clone(),
            holds: t * (t + 1) * (d64 + e64) >= 2 * p,
        });
        headline = Some(name);
    }
    let trivial = if t == 2 {
        "d+e/2>=(p-1)/4"
    } else {
        "t*d+e>=|S_t|"
    }
    .to_string();
    checks.push(BoundCheck {
        name: trivial.clone(),
        holds: (t * d64).max(1) + e64 >= n as u64,
    });
    (headline.unwrap_or(trivial), checks)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `e`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, e: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..e).collect();
    if e > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..e).rev().find(|&i| cur[i] != i + n - e) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..e {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn witness_string(full: &[u8], k: usize) -> String {
    full.iter()
        .map(|&r| match (r, k) {
            (DROPPED, _) => '*',
            (0, 2) => '+',
            (1, 2) => '-',
            (r, _) => char::from_digit(r as u32, 36).unwrap_or('?'),
        })
        .collect()
}

fn search(p: u64, t: u64, e: usize, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let ctx = FieldContext::new(p)?;
    let task = RootTask::new(&ctx, t)?;
    let layout = RootLayout::new(&task)?;
    let n = layout.n();
    if e >= n {
        return Err(Error::InvalidArgument(format!(
            "{e} errors leave no residues among {n}"
        )));
    }
    let size = binomial(n, e).saturating_mul((layout.k as u128).saturating_pow((n - e) as u32));
    opts.check_cap(size)?;

    let (min_degree, full) = opts.install(|| -> Result<(usize, Vec<u8>)> {
        if e == 0 {
            let sys = NodeSystem::full(&layout)?;
            let (d, digits) = sys
                .minimise()
                .ok_or_else(|| Error::TheoremViolated("zero interpolant".into()))?;
            return Ok((d, digits));
        }
        use rayon::prelude::*;
        let per_subset: Vec<Result<(usize, Vec<u8>)>> = combinations(n, e)
            .into_par_iter()
            .map(|dropped| {
                let kept: Vec<usize> = (0..n).filter(|j| !dropped.contains(j)).collect();
                let sys = NodeSystem::subset(&layout, kept.clone())?;
                let (d, digits) = sys
                    .minimise()
                    .ok_or_else(|| Error::TheoremViolated("zero interpolant".into()))?;
                let mut full = vec![DROPPED; n];
                for (&j, &r) in kept.iter().zip(&digits) {
                    full[j] = r;
                }
                Ok((d, full))
            })
            .collect();
        let mut best: Option<(usize, Vec<u8>)> = None;
        for candidate in per_subset {
            let candidate = candidate?;
            if best
                .as_ref()
                .is_none_or(|b| candidate.cmp(b) == Ordering::Less)
            {
                best = Some(candidate);
            }
        }
        best.ok_or_else(|| Error::TheoremViolated("empty search".into()))
    })??;

    // independent re-interpolation of the witness
    let (xs, ys): (Vec<u64>, Vec<u64>) = full
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != DROPPED)
        .map(|(j, &r)| (layout.residues[j], layout.roots[j][r as usize]))
        .unzip();
    let polynomial = interpolate_raw(&xs, &ys, p)?;
    if polynomial.degree() != Degree::Finite(min_degree) {
        return Err(Error::TheoremViolated(format!(
            "witness re-interpolates to degree {:?}, search reported {min_degree}",
            polynomial.degree()
        )));
    }
    let errors: Vec<u64> = full
        .iter()
        .enumerate()
        .filter(|(_, &r)| r == DROPPED)
        .map(|(j, _)| layout.residues[j])
        .collect();
    let stray = failing_residues(&polynomial, &task)?
        .into_iter()
        .filter(|a| !errors.contains(a))
        .count();
    if stray > 0 {
        return Err(Error::TheoremViolated(format!(
            "witness fails on {stray} kept residues"
        )));
    }

    let (bound, checks) = checks_for(p, t, e, min_degree, n, e == 0);
    Ok(SearchReport {
        p,
        t,
        e,
        min_degree,
        witness: witness_string(&full, layout.k),
        errors,
        bound,
        bound_ok: checks.iter().all(|c| c.holds),
        checks,
        oracle: if e == 0 { "exact" } else { "drop-nodes" },
        vectors: size.min(u64::MAX as u128) as u64,
        polynomial,
        elapsed: start.elapsed(),
    })
}

/// Minimum degree of a polynomial computing t-th roots on every nonzero t-th
/// power, by enumerating all root assignments.
pub fn min_degree_exhaustive(p: u64, t: u64) -> Result<SearchReport> {
    min_degree_with(p, t, &SearchOptions::default())
}

pub fn min_degree_with(p: u64, t: u64, opts: &SearchOptions) -> Result<SearchReport> {
    search(p, t, 0, opts)
}

/// Lower bound on the degree of a square-root polynomial that may err on `e`
/// squares: the minimum over all `e`-subsets of dropped nodes.
pub fn min_degree_robust(p: u64, e: usize) -> Result<SearchReport> {
    min_degree_robust_with(p, 2, e, &SearchOptions::default())
}

pub fn min_degree_robust_with(
    p: u64,
    t: u64,
    e: usize,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    search(p, t, e, opts)
}
