//! Ground-truth list-recoverability checks, tuple-type statistics, and
//! the projection/pigeonhole subcode certificate.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::code::{list_recovery_distance, Codebook, ListSet, SubsetSpace, Symbol};
use crate::error::{Error, Result};
use crate::radii::{chebyshev_radius, tuple_type};
use crate::rational::{rat_int, ratio, Rational};

/// Verdict of a list-recoverability check. A failure carries a witness:
/// a center whose ball captures at least `L` distinct codewords, and the
/// (0-based) indices of captured rows.
#[derive(Debug, Clone, PartialEq)]
pub enum RecoveryVerdict {
    Pass,
    Fail {
        center: ListSet,
        captured_rows: Vec<usize>,
    },
}

impl RecoveryVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, RecoveryVerdict::Pass)
    }
}

#[derive(Serialize)]
struct VerdictDoc {
    verdict: &'static str,
    p: String,
    ell: usize,
    #[serde(rename = "L")]
    list_len: usize,
    witness_center: Option<Vec<Vec<Symbol>>>,
    captured_rows: Option<Vec<usize>>,
}

/// Serialize a verdict to the JSON wire format (fields: `verdict`, `p`,
/// `ell`, `L`, `witness_center`, `captured_rows`).
pub fn verdict_to_json(v: &RecoveryVerdict, p: &Rational, ell: usize, list_len: usize) -> String {
    let doc = match v {
        RecoveryVerdict::Pass => VerdictDoc {
            verdict: "PASS",
            p: p.to_string(),
            ell,
            list_len,
            witness_center: None,
            captured_rows: None,
        },
        RecoveryVerdict::Fail { center, captured_rows } => VerdictDoc {
            verdict: "FAIL",
            p: p.to_string(),
            ell,
            list_len,
            witness_center: Some(center.all_symbols()),
            captured_rows: Some(captured_rows.clone()),
        },
    };
    serde_json::to_string_pretty(&doc).expect("verdict serializes")
}

/// Distance cap `floor(p * n)` for ball membership.
fn distance_cap(p: &Rational, n: usize) -> BigInt {
    (p.numer() * BigInt::from(n)).div_floor(p.denom())
}

struct BallSearch {
    h: usize,
    n: usize,
    /// miss[j * h + s] = rows (distinct-value representatives) missed.
    miss: Vec<u64>,
    row_count: usize,
    cap: u32,
    need: usize,
}

impl BallSearch {
    fn captured_count(&self, center: &[usize]) -> usize {
        let mut dist = vec![0u32; self.row_count];
        for (j, &s) in center.iter().enumerate() {
            let mask = self.miss[j * self.h + s];
            for (i, d) in dist.iter_mut().enumerate() {
                *d += (mask >> i & 1) as u32;
            }
        }
        dist.iter().filter(|&&d| d <= self.cap).count()
    }

    fn decode(&self, mut idx: u64) -> Vec<usize> {
        let mut center = vec![0usize; self.n];
        for j in (0..self.n).rev() {
            center[j] = (idx % self.h as u64) as usize;
            idx /= self.h as u64;
        }
        center
    }

    /// Smallest center index (lexicographic over per-coordinate subset
    /// indices) whose ball captures at least `need` rows.
    fn first_failure(&self, total: u64, parallel: bool) -> Option<u64> {
        #[cfg(feature = "parallel")]
        if parallel {
            use rayon::prelude::*;
            const CHUNK: u64 = 1 << 14;
            let mut start = 0u64;
            while start < total {
                let end = (start + CHUNK).min(total);
                let hit = (start..end)
                    .into_par_iter()
                    .filter(|&idx| self.captured_count(&self.decode(idx)) >= self.need)
                    .min();
                if hit.is_some() {
                    return hit;
                }
                start = end;
            }
            return None;
        }
        let _ = parallel;
        (0..total).find(|&idx| self.captured_count(&self.decode(idx)) >= self.need)
    }
}

fn recoverable_impl(
    code: &Codebook,
    p: &Rational,
    ell: usize,
    list_len: usize,
    budget: &Budget,
    parallel: bool,
) -> Result<RecoveryVerdict> {
    if list_len < 1 {
        return Err(Error::InvalidParameter("need list size L >= 1".into()));
    }
    let space = SubsetSpace::new(code.q(), ell)?;
    let distinct = code.distinct_row_indices();
    if distinct.len() < list_len {
        return Ok(RecoveryVerdict::Pass);
    }
    if distinct.len() > 64 {
        return Err(Error::BudgetExceeded(
            "instance too large: more than 64 distinct rows".into(),
        ));
    }
    let n = code.n();
    let h = space.len();
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.saturating_mul(h as u64);
        if total > budget.centers {
            return Err(Error::BudgetExceeded(format!(
                "instance too large: {h}^{n} centers exceed budget {}; \
                 consider the tuple-radius check instead",
                budget.centers
            )));
        }
    }
    let cap_big = distance_cap(p, n);
    if cap_big < BigInt::from(0) {
        // negative radius: nothing is ever captured
        return Ok(RecoveryVerdict::Pass);
    }
    let cap = cap_big.min(BigInt::from(n)).try_into().unwrap_or(n as u32);

    let mut miss = vec![0u64; n * h];
    for j in 0..n {
        for s in 0..h {
            let mut mask = 0u64;
            for (i, &row_idx) in distinct.iter().enumerate() {
                if !space.set_contains(s, code.row(row_idx)[j]) {
                    mask |= 1 << i;
                }
            }
            miss[j * h + s] = mask;
        }
    }
    let search = BallSearch { h, n, miss, row_count: distinct.len(), cap, need: list_len };
    match search.first_failure(total, parallel) {
        None => Ok(RecoveryVerdict::Pass),
        Some(idx) => {
            let center_indices = search.decode(idx);
            let masks: Vec<u32> = center_indices.iter().map(|&s| space.mask(s)).collect();
            let center = ListSet::from_masks(code.q(), ell, masks)?;
            let mut captured: Vec<usize> = Vec::new();
            for &row_idx in &distinct {
                let d = list_recovery_distance(code.row(row_idx), &center)?;
                if d as u32 <= cap {
                    captured.push(row_idx);
                }
            }
            Ok(RecoveryVerdict::Fail { center, captured_rows: captured })
        }
    }
}

/// Exhaustive list-recoverability check: search every center for a ball
/// of radius `p*n` capturing `list_len` or more distinct codewords.
/// The returned witness is the first failing center in lexicographic
/// order, independent of worker count.
pub fn is_list_recoverable(
    code: &Codebook,
    p: &Rational,
    ell: usize,
    list_len: usize,
    budget: &Budget,
) -> Result<RecoveryVerdict> {
    recoverable_impl(code, p, ell, list_len, budget, true)
}

/// Sequential variant of [`is_list_recoverable`]; same result.
pub fn is_list_recoverable_seq(
    code: &Codebook,
    p: &Rational,
    ell: usize,
    list_len: usize,
    budget: &Budget,
) -> Result<RecoveryVerdict> {
    recoverable_impl(code, p, ell, list_len, budget, false)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        out.push(subset.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < n - (k - i) {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Minimum Chebyshev radius over all lists of `list_len` distinct
/// codewords, with the first minimizing list and its center. `None` when
/// the code has fewer than `list_len` distinct rows.
pub fn min_list_radius(
    code: &Codebook,
    ell: usize,
    list_len: usize,
    budget: &Budget,
) -> Result<Option<(Rational, Vec<usize>, ListSet)>> {
    let distinct = code.distinct_row_indices();
    if distinct.len() < list_len {
        return Ok(None);
    }
    let combos = combinations(distinct.len(), list_len);
    if combos.len() as u64 > budget.tuples {
        return Err(Error::BudgetExceeded(format!(
            "instance too large: {} lists exceed budget {}",
            combos.len(),
            budget.tuples
        )));
    }
    let mut best: Option<(Rational, Vec<usize>, ListSet)> = None;
    for combo in combos {
        let rows_idx: Vec<usize> = combo.iter().map(|&i| distinct[i]).collect();
        let views = code.list(&rows_idx)?;
        let (radius, center) = chebyshev_radius(code.q(), &views, ell, budget)?;
        if best.as_ref().is_none_or(|(r, _, _)| radius < *r) {
            best = Some((radius, rows_idx, center));
        }
    }
    Ok(best)
}

/// List-recoverability via the radius route: the code is recoverable at
/// `p` exactly when every list of `list_len` distinct codewords has
/// Chebyshev radius strictly above `p`. Agrees with the exhaustive ball
/// search wherever both run.
pub fn is_list_recoverable_via_radius(
    code: &Codebook,
    p: &Rational,
    ell: usize,
    list_len: usize,
    budget: &Budget,
) -> Result<RecoveryVerdict> {
    let distinct = code.distinct_row_indices();
    if distinct.len() < list_len {
        return Ok(RecoveryVerdict::Pass);
    }
    let n = code.n();
    let cap = Rational::new(distance_cap(p, n), BigInt::from(n as u64));
    // first list (in lexicographic order) whose ball of radius floor(p n)
    // captures it entirely
    for combo in combinations(distinct.len(), list_len) {
        let rows_idx: Vec<usize> = combo.iter().map(|&i| distinct[i]).collect();
        let views = code.list(&rows_idx)?;
        let (radius, center) = chebyshev_radius(code.q(), &views, ell, budget)?;
        if radius <= cap {
            return Ok(RecoveryVerdict::Fail { center, captured_rows: rows_idx });
        }
    }
    Ok(RecoveryVerdict::Pass)
}

/// Statistics of tuple types over a code: how many lists of distinct
/// codewords look random.
#[derive(Debug, Clone)]
pub struct TypeStatistics {
    /// Ordered tuples of distinct codewords inspected.
    pub tuples_seen: u64,
    /// Tuples whose type is within `epsilon` of uniform in max-norm.
    pub tuples_close: u64,
    /// `tuples_close / tuples_seen`, `None` when no tuples exist.
    pub fraction_close: Option<Rational>,
    /// Exhaustive or seeded-sample mode.
    pub sampled: bool,
    /// 95% confidence interval for the close fraction in sample mode.
    pub confidence_interval: Option<(f64, f64)>,
    /// Count of tuples per max-norm deviation from uniform.
    pub deviation_histogram: BTreeMap<Rational, u64>,
    /// Exact Chebyshev radius of the whole code, when within budget.
    pub code_radius: Option<Rational>,
    /// `(1 - ell/q) - code_radius`: positive when the code sits strictly
    /// inside the dichotomy threshold.
    pub dichotomy_margin: Option<Rational>,
}

/// Inspect the types of lists of `list_len` distinct codewords: count how
/// many are `epsilon`-close to uniform, histogram the deviations, and
/// report the code's own radius against `1 - ell/q`. Enumeration beyond
/// `budget.tuples` falls back to seeded sampling with a confidence
/// interval.
pub fn tuple_type_statistics(
    code: &Codebook,
    ell: usize,
    list_len: usize,
    epsilon: &Rational,
    budget: &Budget,
    seed: u64,
) -> Result<TypeStatistics> {
    if list_len < 2 {
        return Err(Error::InvalidParameter("need list size L >= 2".into()));
    }
    let distinct = code.distinct_row_indices();
    let m = distinct.len();
    let mut histogram: BTreeMap<Rational, u64> = BTreeMap::new();
    let mut seen = 0u64;
    let mut close = 0u64;

    let mut total_ordered: u64 = 1;
    let mut overflow = false;
    for k in 0..list_len {
        if (k as u64) >= m as u64 {
            total_ordered = 0;
            break;
        }
        total_ordered = match total_ordered.checked_mul((m - k) as u64) {
            Some(t) => t,
            None => {
                overflow = true;
                break;
            }
        };
    }
    let sampled = overflow || total_ordered > budget.tuples;

    let mut inspect = |rows_idx: &[usize]| -> Result<()> {
        let views = code.list(rows_idx)?;
        let ty = tuple_type(code.q(), &views)?;
        let dev = ty.max_uniform_deviation();
        seen += 1;
        if &dev <= epsilon {
            close += 1;
        }
        *histogram.entry(dev).or_insert(0) += 1;
        Ok(())
    };

    if !sampled && total_ordered > 0 {
        // ordered tuples of distinct rows, odometer with repeat skipping
        let mut idx = vec![0usize; list_len];
        'outer: loop {
            let distinct_entries =
                (0..list_len).all(|a| (a + 1..list_len).all(|b| idx[a] != idx[b]));
            if distinct_entries {
                let rows_idx: Vec<usize> = idx.iter().map(|&i| distinct[i]).collect();
                inspect(&rows_idx)?;
            }
            let mut pos = list_len;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                if idx[pos] + 1 < m {
                    idx[pos] += 1;
                    for entry in idx.iter_mut().skip(pos + 1) {
                        *entry = 0;
                    }
                    break;
                }
            }
        }
    } else if sampled && m >= list_len {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let samples = budget.tuples.min(100_000);
        for _ in 0..samples {
            let mut picked: Vec<usize> = Vec::with_capacity(list_len);
            while picked.len() < list_len {
                let cand = rng.gen_range(0..m);
                if !picked.contains(&cand) {
                    picked.push(cand);
                }
            }
            let rows_idx: Vec<usize> = picked.iter().map(|&i| distinct[i]).collect();
            inspect(&rows_idx)?;
        }
    }

    let fraction_close = if seen > 0 {
        Some(ratio(close as i64, seen as i64))
    } else {
        None
    };
    let confidence_interval = if sampled && seen > 0 {
        let phat = close as f64 / seen as f64;
        let half = 1.96 * (phat * (1.0 - phat) / seen as f64).sqrt();
        Some(((phat - half).max(0.0), (phat + half).min(1.0)))
    } else {
        None
    };

    let all_rows: Vec<&[Symbol]> = code.rows().collect();
    let (code_radius, dichotomy_margin) = if all_rows.is_empty() {
        (None, None)
    } else {
        match chebyshev_radius(code.q(), &all_rows, ell, budget) {
            Ok((r, _)) => {
                let margin =
                    rat_int(1) - ratio(ell as i64, code.q() as i64) - &r;
                (Some(r), Some(margin))
            }
            Err(Error::BudgetExceeded(_)) => (None, None),
            Err(e) => return Err(e),
        }
    };

    Ok(TypeStatistics {
        tuples_seen: seen,
        tuples_close: close,
        fraction_close,
        sampled,
        confidence_interval,
        deviation_histogram: histogram,
        code_radius,
        dichotomy_margin,
    })
}

/// Outcome of the projection/pigeonhole subcode construction.
#[derive(Debug, Clone)]
pub enum ProjectionOutcome {
    /// The projected code's radius is not below `1 - ell/q`; the
    /// construction's hypothesis fails (this is a result, not an error).
    HypothesisFails {
        projected_radius: Rational,
        threshold: Rational,
    },
    /// A subcode of size at least `|code| / C(q, ell)` together with a
    /// center certifying its radius bound.
    Certified(ProjectionCertificate),
}

#[derive(Debug, Clone)]
pub struct ProjectionCertificate {
    /// Row indices of the pigeonhole subcode.
    pub subcode_rows: Vec<usize>,
    /// The exhibited center: the projected code's optimal center on the
    /// projection coordinates, the majority set elsewhere.
    pub center: ListSet,
    /// Exact max distance of the subcode to the center.
    pub max_distance: usize,
    pub relative_radius: Rational,
    /// The certified bound `1 - ell/q - (|A|/n) * epsilon`.
    pub bound: Rational,
    /// Margin of the hypothesis: `1 - ell/q - projected_radius`.
    pub epsilon: Rational,
    pub certified: bool,
}

/// Project the code onto `coords`, and when the projected radius sits
/// `epsilon` below `1 - ell/q`, extract the pigeonhole subcode (rows
/// sharing the majority `ell`-set on the remaining coordinates) and
/// certify its radius via the glued center.
pub fn projection_subcode(
    code: &Codebook,
    coords: &[usize],
    ell: usize,
    budget: &Budget,
) -> Result<ProjectionOutcome> {
    if code.is_empty() {
        return Err(Error::InvalidParameter("empty code".into()));
    }
    let n = code.n();
    let mut coords_sorted = coords.to_vec();
    coords_sorted.sort_unstable();
    coords_sorted.dedup();
    if coords_sorted.len() != coords.len() {
        return Err(Error::InvalidParameter("duplicate projection coordinate".into()));
    }
    if coords_sorted.is_empty() {
        return Err(Error::InvalidParameter("empty projection".into()));
    }
    if *coords_sorted.last().unwrap() >= n {
        return Err(Error::InvalidParameter(format!(
            "projection coordinate {} out of range (n = {n})",
            coords_sorted.last().unwrap()
        )));
    }
    let projected: Vec<Vec<Symbol>> = code
        .rows()
        .map(|r| coords_sorted.iter().map(|&j| r[j]).collect())
        .collect();
    let views: Vec<&[Symbol]> = projected.iter().map(|r| r.as_slice()).collect();
    let (projected_radius, proj_center) =
        chebyshev_radius(code.q(), &views, ell, budget)?;
    let threshold = rat_int(1) - ratio(ell as i64, code.q() as i64);
    if projected_radius >= threshold {
        return Ok(ProjectionOutcome::HypothesisFails { projected_radius, threshold });
    }
    let epsilon = &threshold - &projected_radius;

    // Majority ell-set of each row on the complement coordinates, ties
    // broken toward smaller symbols.
    let complement: Vec<usize> = (0..n).filter(|j| !coords_sorted.contains(j)).collect();
    let q = code.q();
    let majority_mask = |row: &[Symbol]| -> u32 {
        let mut tally = vec![0usize; q as usize];
        for &j in &complement {
            tally[(row[j] - 1) as usize] += 1;
        }
        let mut order: Vec<usize> = (0..q as usize).collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(tally[x]), x));
        order[..ell].iter().fold(0u32, |m, &x| m | 1 << x)
    };
    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, row) in code.rows().enumerate() {
        groups.entry(majority_mask(row)).or_default().push(i);
    }
    let (&best_mask, subcode_rows) = groups
        .iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
        .expect("nonempty code has a majority class");
    let subcode_rows = subcode_rows.clone();

    // Glue the center: projected-center sets on the projection, the
    // majority set elsewhere.
    let mut masks = vec![0u32; n];
    for (k, &j) in coords_sorted.iter().enumerate() {
        masks[j] = proj_center.mask(k);
    }
    for &j in &complement {
        masks[j] = best_mask;
    }
    let center = ListSet::from_masks(q, ell, masks)?;

    let mut max_distance = 0usize;
    for &i in &subcode_rows {
        max_distance = max_distance.max(list_recovery_distance(code.row(i), &center)?);
    }
    let m_proj = coords_sorted.len();
    let bound = &threshold - ratio(m_proj as i64, n as i64) * &epsilon;
    let relative_radius = ratio(max_distance as i64, n as i64);
    let certified = relative_radius <= bound;
    Ok(ProjectionOutcome::Certified(ProjectionCertificate {
        subcode_rows,
        center,
        max_distance,
        relative_radius,
        bound,
        epsilon,
        certified,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{generate, BalancedCodeSpec};
    use rand::SeedableRng;

    fn bud() -> Budget {
        Budget::default()
    }

    #[test]
    fn empty_code_passes() {
        let code = Codebook::new(3, 2, vec![]).unwrap();
        let v = is_list_recoverable(&code, &ratio(1, 2), 1, 2, &bud()).unwrap();
        assert!(v.is_pass());
        let v = is_list_recoverable_via_radius(&code, &ratio(1, 2), 1, 2, &bud()).unwrap();
        assert!(v.is_pass());
    }

    #[test]
    fn two_word_code_fails_at_half() {
        let code = Codebook::new(3, 2, vec![vec![1, 1], vec![2, 2]]).unwrap();
        let v = is_list_recoverable(&code, &ratio(1, 2), 1, 2, &bud()).unwrap();
        match &v {
            RecoveryVerdict::Fail { center, captured_rows } => {
                assert_eq!(center, &ListSet::singletons(3, &[1, 2]).unwrap());
                assert_eq!(captured_rows, &vec![0, 1]);
            }
            _ => panic!("expected failure"),
        }
        // radius route agrees, and the serialized verdict carries the witness
        let vr = is_list_recoverable_via_radius(&code, &ratio(1, 2), 1, 2, &bud()).unwrap();
        assert!(!vr.is_pass());
        let json = verdict_to_json(&v, &ratio(1, 2), 1, 2);
        assert!(json.contains("\"verdict\": \"FAIL\""));
        assert!(json.contains("\"p\": \"1/2\""));

        // at p = 1/4 the ball radius is floor(2/4) = 0: passes
        let v = is_list_recoverable(&code, &ratio(1, 4), 1, 2, &bud()).unwrap();
        assert!(v.is_pass());
    }

    #[test]
    fn single_row_passes_everything() {
        let code = Codebook::new(3, 2, vec![vec![1, 2]]).unwrap();
        assert!(is_list_recoverable(&code, &rat_int(1), 1, 2, &bud()).unwrap().is_pass());
        assert!(min_list_radius(&code, 1, 2, &bud()).unwrap().is_none());
    }

    #[test]
    fn duplicate_rows_count_once() {
        let code =
            Codebook::new(3, 2, vec![vec![1, 1], vec![1, 1], vec![1, 1]]).unwrap();
        // three copies of one codeword: never two distinct in a ball
        assert!(is_list_recoverable(&code, &rat_int(1), 1, 2, &bud()).unwrap().is_pass());
    }

    #[test]
    fn verdicts_agree_on_random_instances() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        for trial in 0..60 {
            let q = 3u8;
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=6);
            let l = rng.gen_range(2..=3usize);
            let ell = if trial % 2 == 0 { 1 } else { 2 };
            let code = crate::sampling::codebook(&mut rng, q, n, m);
            let num = rng.gen_range(0..=4i64);
            let p = ratio(num, 4);
            let a = is_list_recoverable(&code, &p, ell, l, &bud()).unwrap();
            let b = is_list_recoverable_via_radius(&code, &p, ell, l, &bud()).unwrap();
            assert_eq!(a.is_pass(), b.is_pass(), "trial {trial} p={p}");
            let c = is_list_recoverable_seq(&code, &p, ell, l, &bud()).unwrap();
            assert_eq!(a, c, "parallel/sequential witness mismatch, trial {trial}");
        }
    }

    #[test]
    fn monotone_in_radius() {
        
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let code = crate::sampling::codebook(&mut rng, 3, 4, 5);
            let mut last_pass = true;
            for num in 0..=8i64 {
                let p = ratio(num, 8);
                let v = is_list_recoverable(&code, &p, 1, 2, &bud()).unwrap();
                if !last_pass {
                    assert!(!v.is_pass(), "failure must persist as p grows");
                }
                last_pass = v.is_pass();
            }
        }
    }

    #[test]
    fn balanced_code_pass_fail_boundaries() {
        for (ell, l) in [(1usize, 2usize), (2, 3)] {
            let spec = BalancedCodeSpec::new(3, ell, l, 1).unwrap();
            let code = generate(&spec, &bud()).unwrap();
            let p_star = crate::thresholds::zero_rate_threshold(3, ell, l).unwrap();
            let p_exact =
                rat_int(1) - crate::construction::exact_expected_plurality(&spec).unwrap();
            let v = is_list_recoverable(&code, &p_star, ell, l, &bud()).unwrap();
            assert!(v.is_pass(), "ell={ell} L={l} at threshold");
            let v = is_list_recoverable(&code, &p_exact, ell, l, &bud()).unwrap();
            assert!(!v.is_pass(), "ell={ell} L={l} at exact radius");
        }
    }

    #[test]
    fn type_statistics_balanced_code() {
        let eps = ratio(1, 15);
        let mut fractions = Vec::new();
        for m in 1..=2usize {
            let spec = BalancedCodeSpec::new(3, 1, 2, m).unwrap();
            let code = generate(&spec, &bud()).unwrap();
            let stats =
                tuple_type_statistics(&code, 1, 2, &eps, &bud(), 0).unwrap();
            assert!(!stats.sampled);
            let m_rows = code.len() as u64;
            assert_eq!(stats.tuples_seen, m_rows * (m_rows - 1));
            fractions.push(stats.fraction_close.unwrap());
            if m == 1 {
                // every pair deviates by exactly 1/9 (the absent patterns)
                assert_eq!(stats.deviation_histogram.len(), 1);
                assert_eq!(
                    stats.deviation_histogram.keys().next().unwrap(),
                    &ratio(1, 9)
                );
            }
        }
        // fraction of near-uniform tuples grows with m
        assert!(fractions[0] < fractions[1]);
        assert_eq!(fractions[1], rat_int(1));
    }

    #[test]
    fn type_statistics_repetition_code() {
        let code = Codebook::new(
            3,
            4,
            vec![vec![1; 4], vec![2; 4], vec![3; 4]],
        )
        .unwrap();
        let stats =
            tuple_type_statistics(&code, 1, 2, &ratio(1, 10), &bud(), 0).unwrap();
        assert_eq!(stats.tuples_close, 0);
    }

    #[test]
    fn type_statistics_sampling_mode() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let code = crate::sampling::codebook(&mut rng, 3, 4, 10);
        let tight = Budget { tuples: 50, ..Budget::default() };
        let stats =
            tuple_type_statistics(&code, 1, 3, &ratio(1, 4), &tight, 11).unwrap();
        assert!(stats.sampled);
        assert_eq!(stats.tuples_seen, 50);
        assert!(stats.confidence_interval.is_some());
        // deterministic under the same seed
        let again =
            tuple_type_statistics(&code, 1, 3, &ratio(1, 4), &tight, 11).unwrap();
        assert_eq!(stats.tuples_close, again.tuples_close);
    }

    #[test]
    fn projection_full_support() {
        // projecting onto everything: subcode bound equals the hypothesis
        let code = Codebook::new(
            3,
            3,
            vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]],
        )
        .unwrap();
        let coords: Vec<usize> = (0..code.n()).collect();
        match projection_subcode(&code, &coords, 1, &bud()).unwrap() {
            ProjectionOutcome::Certified(cert) => {
                assert!(cert.certified);
                assert_eq!(cert.subcode_rows.len(), code.len());
                // radius 1/3, so epsilon = 1/3 and the bound is 2/3 - 1/3
                assert_eq!(cert.epsilon, ratio(1, 3));
                assert_eq!(cert.bound, ratio(2, 3) - cert.epsilon.clone());
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn projection_at_the_dichotomy_threshold_is_rejected() {
        // the balanced m=1 code has radius exactly 1 - 1/q: no margin
        let spec = BalancedCodeSpec::new(3, 1, 2, 1).unwrap();
        let code = generate(&spec, &bud()).unwrap();
        let coords: Vec<usize> = (0..code.n()).collect();
        match projection_subcode(&code, &coords, 1, &bud()).unwrap() {
            ProjectionOutcome::HypothesisFails { projected_radius, threshold } => {
                assert_eq!(projected_radius, ratio(2, 3));
                assert_eq!(threshold, ratio(2, 3));
            }
            other => panic!("expected hypothesis failure, got {other:?}"),
        }
    }

    #[test]
    fn projection_certificate_on_random_codes() {
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let mut certified = 0;
        for _ in 0..40 {
            let n = rng.gen_range(3..=6);
            let m = rng.gen_range(6..=9);
            let code = crate::sampling::codebook(&mut rng, 3, n, m);
            let a_len = rng.gen_range(1..=n);
            let coords: Vec<usize> = (0..a_len).collect();
            match projection_subcode(&code, &coords, 1, &bud()).unwrap() {
                ProjectionOutcome::Certified(cert) => {
                    assert!(cert.certified, "bound violated: {cert:?}");
                    assert!(cert.subcode_rows.len() * 3 >= code.len());
                    certified += 1;
                }
                ProjectionOutcome::HypothesisFails { projected_radius, threshold } => {
                    assert!(projected_radius >= threshold);
                }
            }
        }
        assert!(certified > 0, "no instance satisfied the hypothesis");
    }

    #[test]
    fn projection_rejects_bad_coords() {
        let code = Codebook::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert!(projection_subcode(&code, &[], 1, &bud()).is_err());
        assert!(projection_subcode(&code, &[0, 0], 1, &bud()).is_err());
        assert!(projection_subcode(&code, &[5], 1, &bud()).is_err());
    }
}
