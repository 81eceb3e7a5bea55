//! Census of monogenic pure cubic function fields over a fixed g: the set
//! U_g of square-free h coprime to g for which F_q(t, cbrt(g^2 h)) is
//! monogenic, counted degree by degree, together with the explicit lower
//! bound family h = g X^3 - 1 and the exact omega machinery (3^omega sums
//! against the zeta-coefficient bound, and the greedy exact maximum of
//! omega over bounded degree).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubic_ff::{decide_monogenic_ff, CubicFfError, FFVerdict, PureCubicFF};
use crate::ff_arith::{
    self, format_poly, is_square_free_poly, omega_poly, FfError, FqConfig, FqPoly,
};
use crate::int_arith;

/// Default cap on the number of polynomials a census call may scan.
pub const DEFAULT_FF_BUDGET: u64 = 100_000_000;

/// Work chunk for parallel dispatch, in polynomials per task.
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusFfError {
    #[error(transparent)]
    Ff(#[from] FfError),
    #[error(transparent)]
    CubicFf(#[from] CubicFfError),
    #[error("census needs {needed} scans but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("square-free tally self-check failed at degree {degree}: expected {expected}, got {got}")]
    SelfCheckFailed {
        degree: usize,
        expected: u128,
        got: u64,
    },
    #[error("invalid census input: {0}")]
    BadInput(String),
}

/// A witness (X, Y, alpha) with g X^3 - h Y^3 = alpha.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FFWitness {
    pub x: FqPoly,
    pub y: FqPoly,
    pub alpha: u64,
}

/// Per-degree tallies plus cumulative columns. Ratios compare the
/// cumulative monogenic count (constants included) with q^{d/3} and with
/// d^2 q^{d/3}; the second is undefined at degree zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FFCensusRow {
    pub degree: usize,
    pub scanned: u64,
    pub square_free: u64,
    pub eligible: u64,
    pub monogenic: u64,
    pub cumulative: u64,
    pub cumulative_nonconstant: u64,
    pub ratio_lower: f64,
    pub ratio_upper: Option<f64>,
}

impl FFCensusRow {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        q: u64,
        degree: usize,
        scanned: u64,
        square_free: u64,
        eligible: u64,
        monogenic: u64,
        cumulative: u64,
        cumulative_nonconstant: u64,
    ) -> FFCensusRow {
        let scale = (q as f64).powf(degree as f64 / 3.0);
        FFCensusRow {
            degree,
            scanned,
            square_free,
            eligible,
            monogenic,
            cumulative,
            cumulative_nonconstant,
            ratio_lower: cumulative as f64 / scale,
            ratio_upper: if degree == 0 {
                None
            } else {
                Some(cumulative as f64 / ((degree * degree) as f64 * scale))
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FFCensusReport {
    pub q: u64,
    pub g: FqPoly,
    pub n: usize,
    pub monic_only: bool,
    pub rows: Vec<FFCensusRow>,
    /// Monogenic h in ascending order, each with the witness found.
    pub members: Vec<(FqPoly, FFWitness)>,
    /// |U_g| over deg h <= n, constants included.
    pub count: u64,
    pub count_nonconstant: u64,
}

fn validate_g(g: &FqPoly, cfg: &FqConfig) -> Result<(), CensusFfError> {
    if g.is_zero() || !g.is_monic() || g.is_constant() {
        return Err(CensusFfError::BadInput(
            "g must be monic and nonconstant".into(),
        ));
    }
    if !is_square_free_poly(g, cfg)? {
        return Err(CensusFfError::BadInput("g must be square-free".into()));
    }
    Ok(())
}

/// Number of polynomials of degree exactly `d` under the census mode.
fn degree_count(q: u64, d: usize, monic_only: bool) -> u128 {
    if monic_only {
        ff_arith::monic_count(q, d)
    } else {
        ff_arith::all_count(q, d)
    }
}

fn poly_at(q: u64, d: usize, idx: u128, monic_only: bool) -> FqPoly {
    if monic_only {
        ff_arith::monic_by_index(q, d, idx)
    } else {
        ff_arith::poly_by_index(q, d, idx)
    }
}

/// Closed-form count of square-free polynomials of degree exactly `d`
/// (zeta-function identity), refined per degree: every polynomial of
/// degree < 2 is square-free, and for d >= 2 the monic count is
/// q^d - q^{d-1}.
fn square_free_closed_count(q: u64, d: usize, monic_only: bool) -> u128 {
    let monic: u128 = match d {
        0 => 1,
        1 => q as u128,
        _ => ff_arith::monic_count(q, d) - ff_arith::monic_count(q, d - 1),
    };
    if monic_only {
        monic
    } else {
        monic * (q as u128 - 1)
    }
}

/// Enumerates U_g degree by degree up to deg h = n.
///
/// Scans every nonzero h with deg <= n (all leading coefficients, or only
/// monic h when `monic_only` is set), keeps the square-free ones coprime
/// to g, and runs the complete decision procedure on each. The square-free
/// tally of every degree is cross-checked against the closed-form count.
/// The scan is parallelized in fixed chunks whose results are merged in
/// index order, so the report is deterministic.
pub fn enumerate_ug(
    cfg: &FqConfig,
    g: &FqPoly,
    n: usize,
    budget: u64,
    monic_only: bool,
) -> Result<FFCensusReport, CensusFfError> {
    validate_g(g, cfg)?;
    if cfg.p() == 3 {
        return Err(CensusFfError::CubicFf(CubicFfError::BadCharacteristic {
            p: 3,
        }));
    }
    let q = cfg.q();
    let needed: u128 = (0..=n).map(|d| degree_count(q, d, monic_only)).sum();
    if needed > budget as u128 {
        return Err(CensusFfError::BudgetExceeded { needed, budget });
    }

    let mut rows = Vec::with_capacity(n + 1);
    let mut members: Vec<(FqPoly, FFWitness)> = Vec::new();
    let mut cumulative = 0u64;
    let mut cumulative_nonconstant = 0u64;
    for d in 0..=n {
        let total = degree_count(q, d, monic_only) as u64;
        let chunks: Vec<(u64, u64)> = (0..total)
            .step_by(CHUNK as usize)
            .map(|lo| (lo, (lo + CHUNK).min(total)))
            .collect();
        let partials: Result<Vec<_>, CensusFfError> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut square_free = 0u64;
                let mut eligible = 0u64;
                let mut found: Vec<(FqPoly, FFWitness)> = Vec::new();
                for idx in lo..hi {
                    let h = poly_at(q, d, idx as u128, monic_only);
                    if !is_square_free_poly(&h, cfg)? {
                        continue;
                    }
                    square_free += 1;
                    if !g.gcd_monic(&h, cfg).is_one() {
                        continue;
                    }
                    eligible += 1;
                    let field = PureCubicFF::new(cfg.clone(), g.clone(), h.clone())?;
                    if let FFVerdict::Monogenic { x, y, alpha } = decide_monogenic_ff(&field)? {
                        found.push((h, FFWitness { x, y, alpha }));
                    }
                }
                Ok((square_free, eligible, found))
            })
            .collect();
        let partials = partials?;
        let mut square_free = 0u64;
        let mut eligible = 0u64;
        let mut monogenic = 0u64;
        for (sf, el, found) in partials {
            square_free += sf;
            eligible += el;
            monogenic += found.len() as u64;
            members.extend(found);
        }
        let expected = square_free_closed_count(q, d, monic_only);
        if expected != square_free as u128 {
            return Err(CensusFfError::SelfCheckFailed {
                degree: d,
                expected,
                got: square_free,
            });
        }
        cumulative += monogenic;
        if d > 0 {
            cumulative_nonconstant += monogenic;
        }
        rows.push(FFCensusRow::new(
            q,
            d,
            total,
            square_free,
            eligible,
            monogenic,
            cumulative,
            cumulative_nonconstant,
        ));
    }
    members.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FFCensusReport {
        q,
        g: g.clone(),
        n,
        monic_only,
        rows,
        members,
        count: cumulative,
        count_nonconstant: cumulative_nonconstant,
    })
}

/// Rebuilds a census report from externally supplied verdicts (e.g. a
/// verdict cache), scanning the same h population as `enumerate_ug` but
/// asking `lookup` instead of running the decision procedure. Returns
/// Ok(None) as soon as any eligible h has no cached verdict.
///
/// `lookup` answers with Some(Some(witness)) for a monogenic h,
/// Some(None) for a non-monogenic one, and None on a miss.
pub fn assemble_ug_report(
    cfg: &FqConfig,
    g: &FqPoly,
    n: usize,
    monic_only: bool,
    lookup: &mut dyn FnMut(&FqPoly) -> Option<Option<FFWitness>>,
) -> Result<Option<FFCensusReport>, CensusFfError> {
    validate_g(g, cfg)?;
    let q = cfg.q();
    let mut rows = Vec::with_capacity(n + 1);
    let mut members: Vec<(FqPoly, FFWitness)> = Vec::new();
    let mut cumulative = 0u64;
    let mut cumulative_nonconstant = 0u64;
    for d in 0..=n {
        let total = degree_count(q, d, monic_only) as u64;
        let mut square_free = 0u64;
        let mut eligible = 0u64;
        let mut monogenic = 0u64;
        for idx in 0..total {
            let h = poly_at(q, d, idx as u128, monic_only);
            if !is_square_free_poly(&h, cfg)? {
                continue;
            }
            square_free += 1;
            if !g.gcd_monic(&h, cfg).is_one() {
                continue;
            }
            eligible += 1;
            match lookup(&h) {
                None => return Ok(None),
                Some(Some(w)) => {
                    monogenic += 1;
                    members.push((h, w));
                }
                Some(None) => {}
            }
        }
        cumulative += monogenic;
        if d > 0 {
            cumulative_nonconstant += monogenic;
        }
        rows.push(FFCensusRow::new(
            q,
            d,
            total,
            square_free,
            eligible,
            monogenic,
            cumulative,
            cumulative_nonconstant,
        ));
    }
    members.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Some(FFCensusReport {
        q,
        g: g.clone(),
        n,
        monic_only,
        rows,
        members,
        count: cumulative,
        count_nonconstant: cumulative_nonconstant,
    }))
}

/// The explicit monogenic family h = g X^3 - 1 with witness (X, 1, 1),
/// over all X (any leading coefficient, zero included) with
/// deg h = deg g + 3 deg X <= n; members are kept only when h is
/// square-free, checked directly. Sorted by h.
pub fn lower_bound_family_ff(
    cfg: &FqConfig,
    g: &FqPoly,
    n: usize,
) -> Result<Vec<(FqPoly, FFWitness)>, CensusFfError> {
    validate_g(g, cfg)?;
    let dg = g.degree().unwrap();
    let one = FqPoly::one();
    let mut xs: Vec<FqPoly> = vec![FqPoly::zero()];
    if n >= dg {
        let dx_max = (n - dg) / 3;
        for d in 0..=dx_max {
            xs.extend(ff_arith::polys_of_degree(cfg, d));
        }
    }
    let mut out = Vec::new();
    for x in xs {
        let h = g.mul(&x.cube(cfg), cfg).sub(&one, cfg);
        if h.is_zero() || !is_square_free_poly(&h, cfg)? {
            continue;
        }
        debug_assert!(g.gcd_monic(&h, cfg).is_one());
        out.push((
            h,
            FFWitness {
                x,
                y: FqPoly::one(),
                alpha: 1,
            },
        ));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Exact s_n: the sum of 3^omega(P) over all monic P of degree n.
pub fn omega_sum(cfg: &FqConfig, n: usize, budget: u64) -> Result<u128, CensusFfError> {
    let q = cfg.q();
    let total = ff_arith::monic_count(q, n);
    if total > budget as u128 {
        return Err(CensusFfError::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let total = total as u64;
    let chunks: Vec<(u64, u64)> = (0..total)
        .step_by(CHUNK as usize)
        .map(|lo| (lo, (lo + CHUNK).min(total)))
        .collect();
    let partials: Result<Vec<u128>, CensusFfError> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = 0u128;
            for idx in lo..hi {
                let p = ff_arith::monic_by_index(cfg.q(), n, idx as u128);
                let w = omega_poly(&p, cfg)?;
                acc += 3u128.pow(w as u32);
            }
            Ok(acc)
        })
        .collect();
    Ok(partials?.into_iter().sum())
}

/// The n-th coefficient of 1/(1 - qT)^3: binomial(n+2, 2) * q^n, the exact
/// upper bound dominating s_n. None if it overflows 128 bits.
pub fn omega_sum_bound(q: u64, n: usize) -> Option<u128> {
    let binom = ((n as u128) + 1)
        .checked_mul(n as u128 + 2)?
        .checked_div(2)?;
    let power = (q as u128).checked_pow(n as u32)?;
    binom.checked_mul(power)
}

/// Exact number of monic irreducible polynomials of degree d over F_q, by
/// Mobius inversion of q^d = sum_{e | d} e * I(q, e). None if the
/// intermediate powers overflow.
pub fn irreducible_count(q: u64, d: u64) -> Option<u128> {
    assert!(d >= 1);
    let mut sum: i128 = 0;
    for e in 1..=d {
        if d % e != 0 {
            continue;
        }
        let mu = int_arith::factor(e).ok()?.mobius();
        if mu == 0 {
            continue;
        }
        let term = (q as u128).checked_pow((d / e) as u32)?;
        let term = i128::try_from(term).ok()?;
        sum += mu as i128 * term;
    }
    debug_assert!(sum > 0 && sum % d as i128 == 0);
    Some((sum / d as i128) as u128)
}

/// Exact maximum of omega(P) over all nonzero P with deg P <= n, computed
/// greedily: distinct irreducible factors are cheapest degree-first, so
/// take every irreducible of degree 1, then 2, ... while the degree budget
/// lasts. When the irreducible count for some degree overflows, the supply
/// is effectively unlimited at that degree and the remaining budget is
/// spent there.
pub fn omega_max(cfg: &FqConfig, n: usize) -> u64 {
    assert!(n >= 1);
    let q = cfg.q();
    let mut remaining = n as u128;
    let mut count = 0u64;
    let mut d = 1u64;
    while remaining >= d as u128 {
        let take_cap = remaining / d as u128;
        let take = match irreducible_count(q, d) {
            Some(supply) => supply.min(take_cap),
            None => take_cap,
        };
        count += take as u64;
        remaining -= take * d as u128;
        d += 1;
    }
    count
}

/// CSV rendering of a census report: one row per degree.
pub fn census_ff_csv(report: &FFCensusReport) -> String {
    let mut out = String::from(
        "degree,scanned,square_free,eligible,monogenic,cumulative,cumulative_nonconstant,ratio_lower,ratio_upper\n",
    );
    for row in &report.rows {
        let upper = row
            .ratio_upper
            .map(|v| format!("{v}"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            row.degree,
            row.scanned,
            row.square_free,
            row.eligible,
            row.monogenic,
            row.cumulative,
            row.cumulative_nonconstant,
            row.ratio_lower,
            upper
        ));
    }
    out
}

/// File stem for census artifacts: `census_ff_q{q}_g{g}_N{n}`.
pub fn census_ff_file_stem(report: &FFCensusReport, cfg: &FqConfig) -> String {
    format!(
        "census_ff_q{}_g{}_N{}",
        report.q,
        format_poly(&report.g, cfg),
        report.n
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_arith::parse_poly;

    fn f2() -> FqConfig {
        FqConfig::new(2, 1).unwrap()
    }

    #[test]
    fn smallest_census() {
        let cfg = f2();
        let report = enumerate_ug(&cfg, &FqPoly::t(), 1, DEFAULT_FF_BUDGET, false).unwrap();
        // degree 0: h = 1; degree 1: h = t+1 (t is excluded by coprimality)
        assert_eq!(report.rows[0].eligible, 1);
        assert_eq!(report.rows[0].monogenic, 1);
        assert_eq!(report.rows[1].eligible, 1);
        assert_eq!(report.rows[1].monogenic, 1);
        assert_eq!(report.count, 2);
        assert_eq!(report.count_nonconstant, 1);
        let hs: Vec<&FqPoly> = report.members.iter().map(|(h, _)| h).collect();
        assert_eq!(hs, vec![&FqPoly::one(), &parse_poly("t+1", &cfg).unwrap()]);
    }

    #[test]
    fn degree_two_non_member() {
        let cfg = f2();
        let report = enumerate_ug(&cfg, &FqPoly::t(), 2, DEFAULT_FF_BUDGET, false).unwrap();
        // t^2+t+1 is eligible but not monogenic; t^2+1 = (t+1)^2 is not
        // square-free; t^2+t is square-free but shares a factor with g
        assert_eq!(report.rows[2].scanned, 4);
        assert_eq!(report.rows[2].square_free, 2);
        assert_eq!(report.rows[2].eligible, 1);
        assert_eq!(report.rows[2].monogenic, 0);
        assert_eq!(report.count, 2);
    }

    #[test]
    fn witnesses_check_out() {
        let cfg = f2();
        let g = FqPoly::t();
        let report = enumerate_ug(&cfg, &g, 5, DEFAULT_FF_BUDGET, false).unwrap();
        for (h, w) in &report.members {
            let field = PureCubicFF::new(cfg.clone(), g.clone(), h.clone()).unwrap();
            assert_eq!(field.solution_value(&w.x, &w.y), Some(w.alpha));
        }
    }

    #[test]
    fn budget_guard_trips() {
        let cfg = f2();
        let err = enumerate_ug(&cfg, &FqPoly::t(), 10, 100, false).unwrap_err();
        assert!(matches!(err, CensusFfError::BudgetExceeded { .. }));
    }

    #[test]
    fn rejects_bad_g() {
        let cfg = f2();
        assert!(enumerate_ug(&cfg, &FqPoly::one(), 2, 1000, false).is_err());
        let not_sf = parse_poly("t^2", &cfg).unwrap();
        assert!(enumerate_ug(&cfg, &not_sf, 2, 1000, false).is_err());
    }

    #[test]
    fn monic_only_mode_counts_monic_h() {
        let cfg = FqConfig::new(5, 1).unwrap();
        let g = FqPoly::t();
        let full = enumerate_ug(&cfg, &g, 2, DEFAULT_FF_BUDGET, false).unwrap();
        let monic = enumerate_ug(&cfg, &g, 2, DEFAULT_FF_BUDGET, true).unwrap();
        // over F5 scaling h by a unit preserves membership in U_g only up
        // to cube classes, so the full count is not just 4x the monic
        // count; but scanned totals are
        assert_eq!(full.rows[2].scanned, 4 * monic.rows[2].scanned);
        assert!(monic.count <= full.count);
    }

    #[test]
    fn family_members_are_monogenic_census_members() {
        let cfg = f2();
        let g = FqPoly::t();
        let n = 7;
        let family = lower_bound_family_ff(&cfg, &g, n).unwrap();
        let report = enumerate_ug(&cfg, &g, n, DEFAULT_FF_BUDGET, false).unwrap();
        assert!(!family.is_empty());
        assert!(report.count >= family.len() as u64);
        for (h, w) in &family {
            assert!(
                report.members.iter().any(|(hh, _)| hh == h),
                "family member {h:?} missing from census"
            );
            let field = PureCubicFF::new(cfg.clone(), g.clone(), h.clone()).unwrap();
            assert_eq!(field.solution_value(&w.x, &w.y), Some(w.alpha));
        }
    }

    #[test]
    fn family_excludes_non_square_free() {
        // over F2 with g = t: X = t gives h = t^4 - 1 = (t+1)^4, excluded
        let cfg = f2();
        let family = lower_bound_family_ff(&cfg, &FqPoly::t(), 13).unwrap();
        let t4_plus_1 = parse_poly("t^4+1", &cfg).unwrap();
        assert!(family.iter().all(|(h, _)| *h != t4_plus_1));
        // X = 1 gives h = t + 1, always present
        assert!(family
            .iter()
            .any(|(h, _)| *h == parse_poly("t+1", &cfg).unwrap()));
    }

    #[test]
    fn omega_sum_small_values() {
        let cfg = f2();
        assert_eq!(omega_sum(&cfg, 0, 1000).unwrap(), 1);
        assert_eq!(omega_sum(&cfg, 1, 1000).unwrap(), 6);
        let f3 = FqConfig::new(3, 1).unwrap();
        assert_eq!(omega_sum(&f3, 1, 1000).unwrap(), 9);
    }

    #[test]
    fn omega_sum_bound_values() {
        assert_eq!(omega_sum_bound(2, 0), Some(1));
        assert_eq!(omega_sum_bound(2, 1), Some(6));
        assert_eq!(omega_sum_bound(3, 2), Some(54));
    }

    #[test]
    fn irreducible_counts_f2() {
        // 2, 1, 2, 3, 6, 9, 18 for degrees 1..7 over F2
        let want = [2u128, 1, 2, 3, 6, 9, 18];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(irreducible_count(2, i as u64 + 1), Some(*w));
        }
        assert_eq!(irreducible_count(3, 2), Some(3));
    }

    #[test]
    fn omega_max_small() {
        let cfg = f2();
        assert_eq!(omega_max(&cfg, 1), 1);
        assert_eq!(omega_max(&cfg, 2), 2);
        // degree 3: t and t+1 fit (degree 2), one unit left over: still 2
        assert_eq!(omega_max(&cfg, 3), 2);
        // t(t+1)(t^2+t+1) has degree 4 and three factors
        assert_eq!(omega_max(&cfg, 4), 3);
    }

    #[test]
    fn omega_max_matches_brute_force() {
        let cfg = f2();
        for n in 1..=8usize {
            let mut best = 0u64;
            for d in 0..=n {
                for p in ff_arith::polys_of_degree(&cfg, d) {
                    best = best.max(omega_poly(&p, &cfg).unwrap() as u64);
                }
            }
            assert_eq!(omega_max(&cfg, n), best, "n = {n}");
        }
    }

    #[test]
    fn csv_shape() {
        let cfg = f2();
        let report = enumerate_ug(&cfg, &FqPoly::t(), 2, DEFAULT_FF_BUDGET, false).unwrap();
        let csv = census_ff_csv(&report);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("degree,scanned,"));
        // degree-0 row has an empty upper-ratio column
        assert!(lines[1].ends_with(","));
        assert_eq!(census_ff_file_stem(&report, &cfg), "census_ff_q2_gt_N2");
    }
}
