//! The expected-radius functional on the probability simplex, zero-rate
//! thresholds, and executable checks of its extremal structure.
//!
//! For a symbol distribution `P` on `[q]` and a weighting `omega` on the
//! list positions `[L]`, define
//!
//! ```text
//!   f(P, omega) = 1 - E[ max_{A} sum_{i: X_i in A} omega(i) ]
//! ```
//!
//! with `X_1, ..., X_L` i.i.d. from `P` and the max over `ell`-subsets
//! `A` of `[q]`. This is the expected weighted average radius of a random
//! list. Its value at `(U_q, U_L)` is the zero-rate threshold: above that
//! noise level no positive-rate code exists. The checks in this module
//! turn the structural facts carrying that argument — averaging two
//! weighting coordinates never decreases `f`, the uniform weighting is
//! the unique maximizer, concentration is monotone and concave — into
//! exact, loud assertions over sampled rationals.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::budget::Budget;
use crate::code::{Codebook, Symbol};
use crate::combinatorics::{compositions, largest_parts_sum, multinomial};
use crate::distributions::SimplexPoint;
use crate::error::{Error, Result};
use crate::rational::{rat_int, ratio, Rational};

/// Common-denominator integer view of an exact simplex point.
struct Scaled {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

fn scale(point: &SimplexPoint) -> Result<Scaled> {
    let entries = point.exact_entries()?;
    let mut denominator = BigInt::from(1);
    for e in entries {
        let d = e.denom();
        let g = num_integer::Integer::gcd(&denominator, d);
        denominator = &denominator / g * d;
    }
    let numerators = entries
        .iter()
        .map(|e| e.numer() * (&denominator / e.denom()))
        .collect();
    Ok(Scaled { numerators, denominator })
}

fn check_terms_budget(q: u8, list_len: usize, budget: &Budget) -> Result<()> {
    let mut total: u64 = 1;
    for _ in 0..list_len {
        total = match total.checked_mul(q as u64) {
            Some(t) if t <= budget.terms => t,
            _ => {
                return Err(Error::BudgetExceeded(format!(
                    "instance too large: {q}^{list_len} patterns exceed budget {}",
                    budget.terms
                )))
            }
        };
    }
    Ok(())
}

/// Captured weight of a pattern under integer-scaled weights: the sum of
/// the `ell` largest per-symbol weight tallies.
fn captured(pattern: &[Symbol], weights: &[BigInt], q: u8, ell: usize) -> BigInt {
    let mut tally = vec![BigInt::zero(); q as usize];
    for (i, &x) in pattern.iter().enumerate() {
        tally[(x - 1) as usize] += &weights[i];
    }
    tally.sort_unstable_by(|a, b| b.cmp(a));
    tally[..ell].iter().sum()
}

fn f_impl(
    p: &SimplexPoint,
    omega: &SimplexPoint,
    ell: usize,
    budget: &Budget,
    parallel: bool,
) -> Result<Rational> {
    let q = p.len() as u8;
    let list_len = omega.len();
    if ell == 0 || ell >= q as usize {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= q - 1 = {}, got {ell}",
            q - 1
        )));
    }
    check_terms_budget(q, list_len, budget)?;
    let sp = scale(p)?;
    let sw = scale(omega)?;

    // sum over [q]^L of (prod_i P_num(x_i)) * captured(x, omega_num),
    // accumulated as one big integer; the division happens once.
    let total = sum_over_patterns(q, list_len, ell, &sp.numerators, &sw.numerators, parallel);

    let p_den = sp.denominator.pow(list_len as u32);
    let scale_den = p_den * &sw.denominator;
    Ok(rat_int(1) - Rational::new(total, scale_den))
}

fn sum_subtree(
    q: u8,
    list_len: usize,
    ell: usize,
    p_num: &[BigInt],
    w_num: &[BigInt],
    pattern: &mut Vec<Symbol>,
    weight_so_far: &BigInt,
) -> BigInt {
    if pattern.len() == list_len {
        return weight_so_far * captured(pattern, w_num, q, ell);
    }
    let mut acc = BigInt::zero();
    for x in 1..=q {
        let w = weight_so_far * &p_num[(x - 1) as usize];
        if w.is_zero() {
            continue;
        }
        pattern.push(x);
        acc += sum_subtree(q, list_len, ell, p_num, w_num, pattern, &w);
        pattern.pop();
    }
    acc
}

fn sum_over_patterns(
    q: u8,
    list_len: usize,
    ell: usize,
    p_num: &[BigInt],
    w_num: &[BigInt],
    parallel: bool,
) -> BigInt {
    #[cfg(feature = "parallel")]
    if parallel && list_len >= 2 {
        // fan out over the first symbol; integer addition commutes exactly
        return crate::par::map_reduce(
            q as usize,
            |x0| {
                let mut pattern = vec![(x0 + 1) as Symbol];
                let w = p_num[x0].clone();
                if w.is_zero() {
                    return BigInt::zero();
                }
                sum_subtree(q, list_len, ell, p_num, w_num, &mut pattern, &w)
            },
            |a, b| a + b,
        )
        .unwrap_or_else(BigInt::zero);
    }
    let _ = parallel;
    let mut pattern = Vec::with_capacity(list_len);
    sum_subtree(q, list_len, ell, p_num, w_num, &mut pattern, &BigInt::from(1))
}

/// The expected weighted average radius `f(P, omega)` for lists of
/// `omega.len()` i.i.d. `P`-distributed symbols, by exact enumeration of
/// the pattern space `[q]^L`.
pub fn expected_weighted_radius(
    p: &SimplexPoint,
    omega: &SimplexPoint,
    ell: usize,
    budget: &Budget,
) -> Result<Rational> {
    f_impl(p, omega, ell, budget, true)
}

/// Sequential variant of [`expected_weighted_radius`]; same result.
pub fn expected_weighted_radius_seq(
    p: &SimplexPoint,
    omega: &SimplexPoint,
    ell: usize,
    budget: &Budget,
) -> Result<Rational> {
    f_impl(p, omega, ell, budget, false)
}

/// `f(P, U_L)` by the collapsed route: group patterns by their symbol
/// composition, so the sum runs over `C(L+q-1, q-1)` compositions instead
/// of `q^L` patterns. Cross-asserted against the enumeration route in the
/// test suites.
pub fn expected_uniform_radius_by_composition(
    p: &SimplexPoint,
    ell: usize,
    list_len: usize,
) -> Result<Rational> {
    let q = p.len();
    if ell == 0 || ell >= q {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= q - 1 = {}, got {ell}",
            q - 1
        )));
    }
    let entries = p.exact_entries()?;
    let mut plur_expect = rat_int(0);
    for a in compositions(q, list_len) {
        let mut prob = Rational::from_integer(multinomial(&a));
        for (i, &count) in a.parts().iter().enumerate() {
            prob *= entries[i].pow(count as i32);
        }
        if prob.is_zero() {
            continue;
        }
        let top = largest_parts_sum(&a, ell)?;
        plur_expect += prob * rat_int(top as i64);
    }
    Ok(rat_int(1) - plur_expect / rat_int(list_len as i64))
}

/// The zero-rate threshold `p*(q, ell, L) = 1 - E[plurality_ell] / L`
/// under uniform symbols, computed exactly by composition-weighted
/// enumeration.
pub fn zero_rate_threshold(q: u8, ell: usize, list_len: usize) -> Result<Rational> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size q = {q} < 2")));
    }
    if ell == 0 || ell >= q as usize {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= q - 1 = {}, got {ell}",
            q - 1
        )));
    }
    if list_len < 2 {
        return Err(Error::InvalidParameter(format!(
            "need list size L >= 2, got {list_len}"
        )));
    }
    let mut weighted: BigInt = BigInt::zero();
    for a in compositions(q as usize, list_len) {
        let top = largest_parts_sum(&a, ell)?;
        weighted += multinomial(&a) * BigInt::from(top);
    }
    let den = BigInt::from(q).pow(list_len as u32) * BigInt::from(list_len as u64);
    Ok(rat_int(1) - Rational::new(weighted, den))
}

/// Result of checking the averaging criterion for one `(P, omega)` pair:
/// over every pattern, the average of the captured weight under `omega`
/// and under `omega` with its last two coordinates swapped is at least
/// the captured weight under the averaged-out weighting.
#[derive(Debug, Clone)]
pub struct AveragingReport {
    /// The pointwise inequality held for every pattern.
    pub holds_everywhere: bool,
    /// Some pattern with positive `P`-probability is strict.
    pub strict_on_support: bool,
    pub f_original: Rational,
    pub f_averaged: Rational,
    /// Patterns violating the pointwise inequality (empty when sound).
    pub violations: Vec<Vec<Symbol>>,
}

impl AveragingReport {
    pub fn ok(&self) -> bool {
        self.holds_everywhere && self.f_averaged >= self.f_original
    }
}

/// Exhaustively verify the averaging criterion for `omega` (whose last
/// two coordinates must differ) and cross-check the implied inequality
/// `f(P, averaged) >= f(P, omega)`.
pub fn averaging_criterion(
    p: &SimplexPoint,
    omega: &SimplexPoint,
    ell: usize,
    budget: &Budget,
) -> Result<AveragingReport> {
    let q = p.len() as u8;
    let list_len = omega.len();
    if list_len < 2 {
        return Err(Error::InvalidParameter("need at least two coordinates".into()));
    }
    let w = omega.exact_entries()?;
    if w[list_len - 2] == w[list_len - 1] {
        return Err(Error::InvalidParameter(
            "last two weighting coordinates are equal; averaging them is vacuous".into(),
        ));
    }
    check_terms_budget(q, list_len, budget)?;
    let averaged = omega.average_out(&[list_len - 2, list_len - 1])?;

    let sw = scale(omega)?;
    // Averaged weighting over denominator 2 * den(omega): integer halves.
    let two_den: Vec<BigInt> = {
        let mut v: Vec<BigInt> = sw.numerators.iter().map(|x| x * 2).collect();
        let sum_last = &sw.numerators[list_len - 2] + &sw.numerators[list_len - 1];
        v[list_len - 2] = sum_last.clone();
        v[list_len - 1] = sum_last;
        v
    };
    let p_entries = p.exact_entries()?;

    let mut pattern = vec![1u8; list_len];
    let mut holds = true;
    let mut strict_on_support = false;
    let mut violations = Vec::new();
    loop {
        let m_orig = captured(&pattern, &sw.numerators, q, ell);
        let mut swapped = pattern.clone();
        swapped.swap(list_len - 2, list_len - 1);
        let m_swap = captured(&swapped, &sw.numerators, q, ell);
        let m_avg = captured(&pattern, &two_den, q, ell);
        // (m_orig + m_swap)/den vs 2*m_avg/(2 den): compare numerators
        let lhs = &m_orig + &m_swap;
        if lhs < m_avg {
            holds = false;
            violations.push(pattern.clone());
        } else if lhs > m_avg {
            let support = pattern
                .iter()
                .all(|&x| !p_entries[(x - 1) as usize].is_zero());
            if support {
                strict_on_support = true;
            }
        }
        // advance odometer
        let mut pos = list_len;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if pattern[pos] < q {
                pattern[pos] += 1;
                for entry in pattern.iter_mut().skip(pos + 1) {
                    *entry = 1;
                }
                break;
            }
            if pos == 0 {
                pattern.clear();
                break;
            }
        }
        if pattern.is_empty() {
            break;
        }
    }

    let f_original = expected_weighted_radius(p, omega, ell, budget)?;
    let f_averaged = expected_weighted_radius(p, &averaged, ell, budget)?;
    Ok(AveragingReport {
        holds_everywhere: holds,
        strict_on_support,
        f_original,
        f_averaged,
        violations,
    })
}

/// Result of sampling weightings against the uniform one.
#[derive(Debug, Clone)]
pub struct MaximalityReport {
    pub trials: usize,
    pub f_uniform: Rational,
    /// Every sampled weighting satisfied `f(P, omega) <= f(P, U_L)`.
    pub all_bounded: bool,
    /// Every sampled non-uniform weighting was strictly below; `None`
    /// when `P` lacks full support and only the non-strict bound applies.
    pub all_strict: Option<bool>,
    /// Sampled weightings violating the applicable bound.
    pub violations: Vec<Vec<Rational>>,
}

impl MaximalityReport {
    pub fn ok(&self) -> bool {
        self.all_bounded && self.all_strict.unwrap_or(true)
    }
}

/// Sample `trials` random rational weightings `omega != U_L` (bounded
/// denominator) and compare `f(P, omega)` against `f(P, U_L)` exactly.
/// With full-support `P` the comparison must be strict.
pub fn uniform_weight_maximality(
    p: &SimplexPoint,
    ell: usize,
    list_len: usize,
    trials: usize,
    seed: u64,
    budget: &Budget,
) -> Result<MaximalityReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let uniform = SimplexPoint::uniform(list_len)?;
    let f_uniform = expected_weighted_radius(p, &uniform, ell, budget)?;
    let full_support = p.exact_entries()?.iter().all(|e| !e.is_zero());

    let mut all_bounded = true;
    let mut all_strict = true;
    let mut violations = Vec::new();
    for _ in 0..trials {
        let omega = crate::sampling::simplex_rational(&mut rng, list_len, 64, false);
        if omega.is_uniform()? {
            continue;
        }
        let f = expected_weighted_radius(p, &omega, ell, budget)?;
        if f > f_uniform {
            all_bounded = false;
            violations.push(omega.exact_entries()?.to_vec());
        } else if f == f_uniform && full_support {
            all_strict = false;
            violations.push(omega.exact_entries()?.to_vec());
        }
    }
    Ok(MaximalityReport {
        trials,
        f_uniform,
        all_bounded,
        all_strict: if full_support { Some(all_strict) } else { None },
        violations,
    })
}

/// Results of the concentration checks along the extremal family.
#[derive(Debug, Clone)]
pub struct SchurReport {
    /// `f(P, U_L) <= f(concentrated(q, ell, top_mass(P)), U_L)` held for
    /// every sampled `P`.
    pub domination_ok: bool,
    /// `p -> f(concentrated(p), U_L)` was nonincreasing along the grid.
    pub monotone_ok: bool,
    /// Midpoint concavity held for every grid pair.
    pub concave_ok: bool,
    pub grid_values: Vec<(Rational, Rational)>,
}

impl SchurReport {
    pub fn ok(&self) -> bool {
        self.domination_ok && self.monotone_ok && self.concave_ok
    }
}

/// Check, with exact comparisons: (a) every distribution is dominated by
/// the concentrated distribution with the same top-`ell` mass; (b)
/// monotonicity of `f(concentrated(p), U_L)` along a grid of `p` values in
/// `[ell/q, 1]`; (c) midpoint concavity over all grid pairs.
pub fn schur_concavity_report(
    q: u8,
    ell: usize,
    list_len: usize,
    grid: &[Rational],
    p_trials: usize,
    seed: u64,
    budget: &Budget,
) -> Result<SchurReport> {
    use rand::SeedableRng;
    let lo = ratio(ell as i64, q as i64);
    for p in grid {
        if p < &lo || p > &rat_int(1) {
            return Err(Error::InvalidParameter(format!(
                "grid value {p} outside [{ell}/{q}, 1]"
            )));
        }
    }
    let f_at = |p: &Rational| -> Result<Rational> {
        let dist = SimplexPoint::concentrated(q, ell, p)?;
        expected_uniform_radius_by_composition(&dist, ell, list_len)
    };
    let mut grid_values = Vec::with_capacity(grid.len());
    for p in grid {
        grid_values.push((p.clone(), f_at(p)?));
    }
    let mut sorted = grid_values.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let monotone_ok = sorted.windows(2).all(|w| w[0].1 >= w[1].1);
    let mut concave_ok = true;
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let mid = (&sorted[i].0 + &sorted[j].0) / rat_int(2);
            let f_mid = f_at(&mid)?;
            let avg = (&sorted[i].1 + &sorted[j].1) / rat_int(2);
            if f_mid < avg {
                concave_ok = false;
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let uniform = SimplexPoint::uniform(list_len)?;
    let mut domination_ok = true;
    for _ in 0..p_trials {
        let p = crate::sampling::simplex_rational(&mut rng, q as usize, 64, false);
        let top = p.top_mass(ell)?;
        let f_p = expected_weighted_radius(&p, &uniform, ell, budget)?;
        let f_conc = f_at(&top)?;
        if f_p > f_conc {
            domination_ok = false;
        }
    }
    Ok(SchurReport { domination_ok, monotone_ok, concave_ok, grid_values })
}

/// Code-averaged radius bound report.
#[derive(Debug, Clone)]
pub struct CodeAverageReport {
    /// Exact Chebyshev radius of the whole code.
    pub code_radius: Rational,
    /// Exact expectation over all `M^L` tuples of the weighted average
    /// radius, computed column-wise as `(1/n) sum_j f(P_j, omega)`.
    pub expectation: Rational,
    /// The concentration parameter the bound is evaluated at:
    /// `max(1 - code_radius, ell/q)`.
    pub parameter: Rational,
    /// `f(concentrated(q, ell, parameter), U_L)`.
    pub bound: Rational,
    pub holds: bool,
}

/// Bound the expected weighted average radius of random tuples from a
/// code by the concentrated-family value at the code's radius: a code
/// fitting in a ball of relative radius `r` has per-column top-`ell`
/// masses averaging at least `1 - r`, and `f` is concave and decreasing
/// along the concentrated family.
pub fn code_average_bound(
    code: &Codebook,
    omega: &SimplexPoint,
    ell: usize,
    budget: &Budget,
) -> Result<CodeAverageReport> {
    if code.is_empty() {
        return Err(Error::InvalidParameter("empty code".into()));
    }
    let list_len = omega.len();
    let rows: Vec<&[Symbol]> = code.rows().collect();
    let (code_radius, _) = crate::radii::chebyshev_radius(code.q(), &rows, ell, budget)?;

    let n = code.n();
    let m = code.len() as i64;
    let mut expectation = rat_int(0);
    for j in 0..n {
        let tally = code.column_tally(j);
        let dist = SimplexPoint::exact(
            tally.into_iter().map(|k| ratio(k as i64, m)).collect(),
        )?;
        expectation += expected_weighted_radius(&dist, omega, ell, budget)?;
    }
    expectation /= rat_int(n as i64);

    let lo = ratio(ell as i64, code.q() as i64);
    let complement = rat_int(1) - &code_radius;
    let parameter = if complement > lo { complement } else { lo };
    let conc = SimplexPoint::concentrated(code.q(), ell, &parameter)?;
    let bound = expected_uniform_radius_by_composition(&conc, ell, list_len)?;
    let holds = expectation <= bound;
    Ok(CodeAverageReport { code_radius, expectation, parameter, bound, holds })
}

/// Monte-Carlo estimate of `f(P, omega)` with its standard error, used to
/// cross-check the exact enumeration.
pub fn monte_carlo_radius(
    p: &SimplexPoint,
    omega: &SimplexPoint,
    ell: usize,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    use rand::Rng;
    use rand::SeedableRng;
    let q = p.len() as u8;
    if ell == 0 || ell >= q as usize {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= q - 1 = {}, got {ell}",
            q - 1
        )));
    }
    let probs = p
        .exact_entries()?
        .iter()
        .map(|e| e.to_f64().unwrap())
        .collect::<Vec<_>>();
    let weights = omega
        .exact_entries()?
        .iter()
        .map(|e| e.to_f64().unwrap())
        .collect::<Vec<_>>();
    let list_len = weights.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let mut tally = vec![0.0f64; q as usize];
        for w in weights.iter().take(list_len) {
            let mut u: f64 = rng.gen();
            let mut x = 0usize;
            for (k, &pr) in probs.iter().enumerate() {
                if u < pr {
                    x = k;
                    break;
                }
                u -= pr;
                x = k;
            }
            tally[x] += w;
        }
        tally.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        let value = 1.0 - tally[..ell].iter().sum::<f64>();
        sum += value;
        sum_sq += value * value;
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
    let se = (var / samples as f64).sqrt();
    Ok((mean, se))
}
