//! Consecutive zero coefficients in powers of polynomials.
//!
//! A run of zeros strictly between two nonzero coefficients at exponents
//! `b < l` has length `l - b - 1`. For `deg f <= d` with `d t < p` the power
//! `f^t` never has such a run of length `d` or more, and the same holds in
//! characteristic 0 for the series of `f^(r/s)` and `exp(f)`. The checks here
//! measure the runs, assert the bound, and cross-check it against the
//! polynomial abc inequality.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{pow_mod, FieldContext};
use crate::poly::{Degree, DensePoly};
use crate::series::{binomial_series, exp_series, RationalPoly, RationalSeries};

/// Longest interior zero run of a coefficient sequence.
///
/// `b` is the last nonzero exponent below the widest gap and `l` the first
/// above it (the lowest such gap on ties). Both are `None` when fewer than two
/// coefficients are nonzero. `d` and `bound_ok` are filled in by
/// [`ZeroRunReport::with_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroRunReport {
    pub max_run: usize,
    pub b: Option<usize>,
    pub l: Option<usize>,
    pub d: Option<usize>,
    pub bound_ok: Option<bool>,
}

impl ZeroRunReport {
    /// Records the cap `d` (runs must be shorter than `d`).
    pub fn with_bound(mut self, d: usize) -> Self {
        self.d = Some(d);
        self.bound_ok = Some(self.b.is_none() || self.max_run < d);
        self
    }

    pub fn holds(&self) -> bool {
        self.bound_ok != Some(false)
    }
}

/// Pairs `(b, l)` of consecutive nonzero exponents with at least one zero between them.
pub fn interior_gaps<T: Zero>(coeffs: &[T]) -> Vec<(usize, usize)> {
    let support: Vec<usize> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, _)| k)
        .collect();
    support
        .windows(2)
        .filter(|w| w[1] - w[0] >= 2)
        .map(|w| (w[0], w[1]))
        .collect()
}

pub fn zero_runs<T: Zero>(coeffs: &[T]) -> Result<ZeroRunReport> {
    let mut last: Option<usize> = None;
    let mut best: Option<(usize, usize)> = None;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if let Some(b) = last {
            let wider = best.is_none_or(|(bb, ll)| k - b > ll - bb);
            if wider {
                best = Some((b, k));
            }
        }
        last = Some(k);
    }
    if last.is_none() {
        return Err(Error::ZeroInput("zero-run scan of an all-zero sequence"));
    }
    Ok(ZeroRunReport {
        max_run: best.map_or(0, |(b, l)| l - b - 1),
        b: best.map(|(b, _)| b),
        l: best.map(|(_, l)| l),
        d: None,
        bound_ok: None,
    })
}

/// Split `f^t = A X^l + B` at a gap `(b, l)`: `B` holds exponents `<= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapDecomposition {
    pub b: usize,
    pub l: usize,
    pub a: DensePoly,
    pub b_poly: DensePoly,
}

impl GapDecomposition {
    pub fn at(power: &DensePoly, b: usize, l: usize) -> Self {
        let p = power.modulus();
        let low = power.truncate(b + 1);
        let high = DensePoly::new(power.coeffs().get(l..).unwrap_or(&[]).to_vec(), p);
        GapDecomposition {
            b,
            l,
            a: high,
            b_poly: low,
        }
    }

    /// `(A X^l, B, f^t)`, an `a + b = c` triple.
    pub fn triple(&self, power: &DensePoly) -> (DensePoly, DensePoly, DensePoly) {
        (self.a.shift(self.l), self.b_poly.clone(), power.clone())
    }
}

#[derive(Debug, Clone)]
pub struct PowerRun {
    pub d: usize,
    pub t: u64,
    pub power: DensePoly,
    pub report: ZeroRunReport,
    pub witness: Option<GapDecomposition>,
}

impl PowerRun {
    /// Whether the hypothesis `d t < p` holds.
    pub fn hypothesis_holds(&self) -> bool {
        (self.d as u128) * (self.t as u128) < self.power.modulus() as u128
    }
}

/// Measures the zero runs of `f^t` without asserting anything.
pub fn power_zero_runs(f: &DensePoly, t: u64) -> Result<PowerRun> {
    let Degree::Finite(d) = f.degree() else {
        return Err(Error::ZeroInput("power of the zero polynomial"));
    };
    let power = f.pow(t);
    let report = zero_runs(power.coeffs())?.with_bound(d);
    let witness = match (report.b, report.l) {
        (Some(b), Some(l)) => Some(GapDecomposition::at(&power, b, l)),
        _ => None,
    };
    Ok(PowerRun {
        d,
        t,
        power,
        report,
        witness,
    })
}

/// Computes `f^t` over F_p and checks every interior zero run is shorter than
/// `d = deg f`. Requires `d t < p`.
pub fn check_power_run(f: &DensePoly, t: u64) -> Result<PowerRun> {
    let run = power_zero_runs(f, t)?;
    if !run.hypothesis_holds() {
        return Err(Error::HypothesisViolated(format!(
            "d * t = {} * {} is not below p = {}",
            run.d,
            t,
            f.modulus()
        )));
    }
    for (b, l) in interior_gaps(run.power.coeffs()) {
        if run.d + b < l {
            return Err(Error::TheoremViolated(format!(
                "f^{t} has zeros strictly between exponents {b} and {l} with deg f = {}",
                run.d
            )));
        }
    }
    Ok(run)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbcReport {
    pub max_degree: usize,
    pub radical_degree: usize,
    /// `max_degree <= radical_degree - 1`
    pub holds: bool,
}

fn finite_degree(f: &DensePoly) -> usize {
    f.degree().finite().unwrap_or(0)
}

/// Mason–Stothers check for coprime `a + b = c`:
/// `max(deg a, deg b, deg c) <= deg rad(abc) - 1`.
///
/// For pairwise coprime inputs `rad(abc) = rad(a) rad(b) rad(c)`, so each
/// radical is taken separately; each input must have degree below `p`.
pub fn abc_check(a: &DensePoly, b: &DensePoly, c: &DensePoly) -> Result<AbcReport> {
    let p = a.modulus();
    if &a.checked_add(b)? != c {
        return Err(Error::InvalidArgument(
            "abc inputs do not satisfy a + b = c".into(),
        ));
    }
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if x.is_zero() && y.is_zero() || !x.gcd(y)?.is_constant() {
            return Err(Error::NotCoprime);
        }
    }
    if [a, b, c].iter().all(|f| f.derivative().is_zero()) {
        return Err(Error::InvalidArgument(
            "all three derivatives vanish".into(),
        ));
    }
    let mut radical_degree = 0;
    for f in [a, b, c] {
        if f.is_zero() {
            continue;
        }
        if finite_degree(f) as u64 >= p {
            return Err(Error::HypothesisViolated(format!(
                "degree {} is not below p = {p}",
                f.degree()
            )));
        }
        radical_degree += finite_degree(&f.radical()?);
    }
    let max_degree = [a, b, c]
        .iter()
        .map(|f| finite_degree(f))
        .max()
        .unwrap_or(0);
    Ok(AbcReport {
        max_degree,
        radical_degree,
        holds: max_degree < radical_degree,
    })
}

/// The abc route to `d + b >= l` for one gap of `f^t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapAbcReport {
    pub d: usize,
    pub t: u64,
    pub b: usize,
    pub l: usize,
    /// degree of `gcd(A X^l, B)`, divided out before the abc check
    pub common_degree: usize,
    pub abc: AbcReport,
    /// `deg rad <= d + (d t - l) + 1 + b`
    pub radical_within_chain: bool,
    /// `d + b >= l`
    pub gap_bound_holds: bool,
}

/// Runs [`abc_check`] on `(A X^l, B, f^t)` after removing their common factor.
pub fn gap_abc(f: &DensePoly, t: u64, gap: &GapDecomposition) -> Result<GapAbcReport> {
    let d = finite_degree(f);
    let power = f.pow(t);
    let (a, b, c) = gap.triple(&power);
    let g = a.gcd(&b)?;
    let reduce = |x: &DensePoly| x.div_rem(&g).map(|(q, _)| q);
    let abc = abc_check(&reduce(&a)?, &reduce(&b)?, &reduce(&c)?)?;
    let chain = d + (d * t as usize).saturating_sub(gap.l) + 1 + gap.b;
    Ok(GapAbcReport {
        d,
        t,
        b: gap.b,
        l: gap.l,
        common_degree: finite_degree(&g),
        radical_within_chain: abc.radical_degree <= chain,
        gap_bound_holds: d + gap.b >= gap.l,
        abc,
    })
}

/// Series expansion plus its zero-run report against `d = deg f`.
#[derive(Debug, Clone)]
pub struct SeriesRun {
    pub series: RationalSeries,
    pub report: ZeroRunReport,
}

fn poly_degree(f: &RationalPoly) -> Result<usize> {
    f.degree()
        .finite()
        .ok_or(Error::ZeroInput("series of the zero polynomial"))
}

fn series_run(series: RationalSeries, d: usize) -> Result<SeriesRun> {
    let report = zero_runs::<BigRational>(series.coeffs())?.with_bound(d);
    if !report.holds() {
        return Err(Error::TheoremViolated(format!(
            "series has {} consecutive zero coefficients with deg f = {d}",
            report.max_run
        )));
    }
    Ok(SeriesRun { series, report })
}

/// Expands `f^(r/s)` to `order` terms and checks its interior zero runs.
pub fn check_binomial_run(f: &RationalPoly, r: i64, s: u64, order: usize) -> Result<SeriesRun> {
    let d = poly_degree(f)?;
    series_run(binomial_series(f, r, s, order)?, d)
}

/// Expands `exp(f)` to `order` terms and checks its interior zero runs.
pub fn check_exp_run(f: &RationalPoly, order: usize) -> Result<SeriesRun> {
    let d = poly_degree(f)?;
    series_run(exp_series(f, order)?, d)
}

/// Which alternative holds for `f` with `f(a)^2 = C(a)` on the order-`m`
/// subgroup `G` of F_p^*, given `deg C <= m/3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoValueAlternative {
    /// `f^2 = C`
    Identity,
    /// `f^2 = C X^m`
    Twisted,
    /// `deg f >= 2m/3`
    HighDegree,
}

pub fn two_value_classify(
    f: &DensePoly,
    c: &DensePoly,
    m: usize,
    ctx: &FieldContext,
) -> Result<TwoValueAlternative> {
    let p = ctx.p();
    for poly in [f, c] {
        if poly.modulus() != p {
            return Err(Error::ModulusMismatch(poly.modulus(), p));
        }
    }
    if m == 0 || !(p - 1).is_multiple_of(m as u64) {
        return Err(Error::InvalidArgument(format!(
            "subgroup order {m} does not divide p - 1 = {}",
            p - 1
        )));
    }
    if let Degree::Finite(dc) = c.degree() {
        if 3 * dc > m {
            return Err(Error::InvalidArgument(format!(
                "deg C = {dc} exceeds m/3 for m = {m}"
            )));
        }
    }
    let h = pow_mod(ctx.generator(), (p - 1) / m as u64, p);
    let mut a = 1u64;
    for _ in 0..m {
        let fa = f.eval(a);
        if crate::field::mul_mod(fa, fa, p) != c.eval(a) {
            return Err(Error::HypothesisViolated(format!("f({a})^2 != C({a})")));
        }
        a = crate::field::mul_mod(a, h, p);
    }
    let square = f * f;
    if &square == c {
        return Ok(TwoValueAlternative::Identity);
    }
    if square == c.shift(m) {
        return Ok(TwoValueAlternative::Twisted);
    }
    if 3 * finite_degree(f) >= 2 * m {
        return Ok(TwoValueAlternative::HighDegree);
    }
    Err(Error::TheoremViolated(format!(
        "deg f = {} < 2m/3 yet f^2 is neither C nor C X^m",
        f.degree()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{find_generator, is_prime, mul_mod, FieldContext};
    use crate::poly::interpolate_raw;
    use crate::roots::construct_3mod4;

    fn poly(c: &[i64], p: u64) -> DensePoly {
        DensePoly::from_i64s(c, p)
    }

    #[test]
    fn run_examples() {
        let r = zero_runs(&[1u64, 0, 2, 0, 1]).unwrap();
        assert_eq!((r.max_run, r.b, r.l), (1, Some(0), Some(2)));
        let d = 5;
        let mut tight = vec![0u64; 2 * d + 1];
        tight[0] = 1;
        tight[d] = 2;
        tight[2 * d] = 1;
        assert_eq!(zero_runs(&tight).unwrap().max_run, d - 1);
        let cube = zero_runs(&[0u64, 0, 0, 1]).unwrap();
        assert_eq!((cube.max_run, cube.b, cube.l), (0, None, None));
        assert_eq!(cube.with_bound(3).bound_ok, Some(true));
        assert!(zero_runs(&[0u64, 0]).is_err());
        assert!(zero_runs::<u64>(&[]).is_err());
        // leading and trailing zeros do not count
        let edge = zero_runs(&[0u64, 0, 0, 4, 5, 0, 0, 0]).unwrap();
        assert_eq!((edge.max_run, edge.b, edge.l), (0, Some(3), Some(4)));
    }

    #[test]
    fn power_run_examples() {
        let run = check_power_run(&poly(&[1, 0, 1], 13), 2).unwrap();
        assert_eq!(run.power.coeffs(), &[1, 0, 2, 0, 1]);
        assert_eq!(run.report.max_run, 1);
        assert_eq!(run.report.bound_ok, Some(true));

        let run = check_power_run(&poly(&[1, 0, 0, 1], 31), 3).unwrap();
        assert_eq!(run.report.max_run, 2);
        assert_eq!(run.report.d, Some(3));

        let run = check_power_run(&poly(&[1, 1], 13), 5).unwrap();
        assert_eq!(run.power.coeffs(), &[1, 5, 10, 10, 5, 1]);
        assert_eq!(run.report.max_run, 0);
    }

    #[test]
    fn power_run_hypothesis() {
        let f = poly(&[1, 0, 0, 1], 13);
        assert!(matches!(
            check_power_run(&f, 5),
            Err(Error::HypothesisViolated(_))
        ));
        // the report-only path still answers
        let run = power_zero_runs(&f, 5).unwrap();
        assert!(!run.hypothesis_holds());
        assert!(check_power_run(&DensePoly::zero(13), 2).is_err());
        // constant f has no interior gaps
        let run = check_power_run(&DensePoly::constant(3, 13), 4).unwrap();
        assert_eq!(run.report.bound_ok, Some(true));
    }

    #[test]
    fn decomposition_witness() {
        let f = poly(&[1, 0, 1], 13);
        let run = check_power_run(&f, 2).unwrap();
        let w = run.witness.unwrap();
        assert_eq!((w.b, w.l), (0, 2));
        assert_eq!(w.b_poly, DensePoly::constant(1, 13));
        assert_eq!(w.a, poly(&[2, 0, 1], 13));
        let (a, b, c) = w.triple(&run.power);
        assert_eq!(&a + &b, c);
    }

    #[test]
    fn abc_examples() {
        let p = 13;
        let r = abc_check(
            &poly(&[1, 0, 2], p),
            &poly(&[0, 0, 0, 0, 1], p),
            &poly(&[1, 0, 2, 0, 1], p),
        )
        .unwrap();
        // rad: (2X^2+1) -> 2, X^4 -> 1, (X^2+1)^2 -> 2
        assert_eq!((r.max_degree, r.radical_degree, r.holds), (4, 5, true));
        let r = abc_check(
            &DensePoly::constant(1, p),
            &DensePoly::x(p),
            &poly(&[1, 1], p),
        )
        .unwrap();
        assert_eq!((r.max_degree, r.radical_degree, r.holds), (1, 2, true));
        assert_eq!(
            abc_check(&DensePoly::x(p), &DensePoly::x(p), &poly(&[0, 2], p)),
            Err(Error::NotCoprime)
        );
        assert!(abc_check(&DensePoly::x(p), &DensePoly::x(p), &DensePoly::x(p)).is_err());
        assert!(abc_check(
            &DensePoly::constant(1, p),
            &DensePoly::constant(2, p),
            &DensePoly::constant(3, p)
        )
        .is_err());
    }

    #[test]
    fn gap_abc_on_examples() {
        let p = 13;
        let f = poly(&[1, 0, 1], p);
        let run = check_power_run(&f, 2).unwrap();
        let rep = gap_abc(&f, 2, run.witness.as_ref().unwrap()).unwrap();
        assert!(rep.abc.holds && rep.gap_bound_holds && rep.radical_within_chain);
        // shared factor X: f = X (X + 1), f^3 = X^3 (X+1)^3
        let g = poly(&[0, 1, 1], 101);
        let run = check_power_run(&g, 3).unwrap();
        for (b, l) in interior_gaps(run.power.coeffs()) {
            let rep = gap_abc(&g, 3, &GapDecomposition::at(&run.power, b, l)).unwrap();
            assert!(rep.abc.holds);
        }
        let h = poly(&[0, 0, 1, 0, 0, 1], 101);
        let run = check_power_run(&h, 4).unwrap();
        let gap = run.witness.unwrap();
        let rep = gap_abc(&h, 4, &gap).unwrap();
        assert!(rep.common_degree >= 8);
        assert!(rep.abc.holds && rep.gap_bound_holds);
    }

    #[test]
    fn series_run_examples() {
        let run = check_binomial_run(&RationalPoly::from_i64s(&[1, 0, 1]), 1, 2, 12).unwrap();
        assert_eq!(run.report.max_run, 1);
        assert_eq!(run.report.bound_ok, Some(true));
        let run = check_exp_run(&RationalPoly::from_i64s(&[0, 1]), 20).unwrap();
        assert_eq!(run.report.max_run, 0);
        let run = check_exp_run(&RationalPoly::from_i64s(&[0, 0, 1]), 20).unwrap();
        assert_eq!(run.report.max_run, 1);
        assert!(check_exp_run(&RationalPoly::from_i64s(&[1, 1]), 5).is_err());
    }

    #[test]
    fn tightness_family_in_characteristic_zero() {
        for d in 1..=5usize {
            let mut c = vec![0i64; d + 1];
            c[0] = 1;
            c[d] = -3;
            let f = RationalPoly::from_i64s(&c);
            for (r, s) in [(1i64, 2u64), (1, 3), (2, 3), (-1, 2)] {
                let run = check_binomial_run(&f, r, s, 6 * d + 10).unwrap();
                assert_eq!(run.report.max_run, d - 1);
            }
            c[0] = 0;
            let run = check_exp_run(&RationalPoly::from_i64s(&c), 6 * d + 10).unwrap();
            assert_eq!(run.report.max_run, d - 1);
        }
    }

    #[test]
    fn two_value_examples() {
        let ctx = FieldContext::new(13).unwrap();
        let f = poly(&[6, 0, 0, 0, 1, 0, 0, 0, 1], 13);
        assert_eq!(f.eval(1), 8);
        let c = DensePoly::constant(12, 13);
        assert_eq!(
            two_value_classify(&f, &c, 12, &ctx).unwrap(),
            TwoValueAlternative::HighDegree
        );
        let k = DensePoly::constant(5, 13);
        assert_eq!(
            two_value_classify(&k, &DensePoly::constant(12, 13), 12, &ctx).unwrap(),
            TwoValueAlternative::Identity
        );
        for p in [7u64, 11, 19, 23, 31] {
            let ctx = FieldContext::new(p).unwrap();
            let f = construct_3mod4(&ctx).unwrap();
            let m = ((p - 1) / 2) as usize;
            assert_eq!(
                two_value_classify(&f, &DensePoly::x(p), m, &ctx).unwrap(),
                TwoValueAlternative::Twisted
            );
        }
        assert!(matches!(
            two_value_classify(&DensePoly::x(13), &c, 12, &ctx),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(two_value_classify(&f, &c, 5, &ctx).is_err());
        assert!(two_value_classify(&f, &poly(&[0, 0, 0, 0, 0, 1], 13), 12, &ctx).is_err());
    }

    #[test]
    fn two_value_never_falls_through() {
        // every interpolant of a sign pattern of +-sqrt(C) on G, for small m
        for p in (3u64..=61).filter(|&p| is_prime(p)) {
            let ctx = FieldContext::new(p).unwrap();
            let g = find_generator(p).unwrap();
            for m in (1..=12usize).filter(|m| (p - 1) % *m as u64 == 0) {
                let h = pow_mod(g, (p - 1) / m as u64, p);
                let nodes: Vec<u64> = (0..m as u64).map(|j| pow_mod(h, j, p)).collect();
                for root in [1u64, 2, 3] {
                    let cval = mul_mod(root, root, p);
                    let c = DensePoly::constant(cval, p);
                    for mask in 0u32..(1 << m) {
                        let ys: Vec<u64> = (0..m)
                            .map(|j| {
                                if mask >> j & 1 == 1 {
                                    (p - root) % p
                                } else {
                                    root
                                }
                            })
                            .collect();
                        let f = interpolate_raw(&nodes, &ys, p).unwrap();
                        two_value_classify(&f, &c, m, &ctx).unwrap();
                    }
                }
            }
        }
    }
}
