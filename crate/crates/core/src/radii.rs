//! Radii of lists of codewords.
//!
//! Four notions are computed here and in [`crate::lp`]:
//!
//! * the Chebyshev radius — smallest list-recovery ball over integral
//!   centers containing the list (exhaustive branch-and-bound search);
//! * the average radius — closed form via per-column plurality;
//! * the weighted average radius — closed form via per-column weighted
//!   plurality, for an arbitrary weighting of the list;
//! * the relaxed radius — centers relaxed to per-coordinate probability
//!   vectors, an LP value (see [`crate::lp::relaxed_radius`]).
//!
//! They sandwich each other: for a list of L words of length n,
//! `average <= weighted <= relaxed <= chebyshev <= relaxed + L/n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::budget::Budget;
use crate::code::{ListSet, SubsetSpace, Symbol};
use crate::combinatorics::{binomial, plurality};
use crate::distributions::SimplexPoint;
use crate::error::{Error, Result};
use crate::rational::{ratio, rat_int, Rational};

/// Empirical distribution of the columns of an `L × n` matrix of symbols
/// over the pattern space `[q]^L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleType {
    q: u8,
    list_len: usize,
    columns: usize,
    counts: BTreeMap<Vec<Symbol>, usize>,
}

impl TupleType {
    pub fn q(&self) -> u8 {
        self.q
    }

    /// L, the number of rows the type was taken over.
    pub fn list_len(&self) -> usize {
        self.list_len
    }

    /// n, the number of columns.
    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Column counts per pattern; patterns absent from the map have count 0.
    pub fn counts(&self) -> &BTreeMap<Vec<Symbol>, usize> {
        &self.counts
    }

    /// Fraction of columns equal to `pattern`.
    pub fn weight(&self, pattern: &[Symbol]) -> Rational {
        let k = self.counts.get(pattern).copied().unwrap_or(0);
        ratio(k as i64, self.columns as i64)
    }

    /// Max-norm distance from the uniform distribution on `[q]^L`,
    /// accounting for absent patterns.
    pub fn max_uniform_deviation(&self) -> Rational {
        let pattern_count = BigInt::from(self.q).pow(self.list_len as u32);
        let uniform = Rational::new(BigInt::one(), pattern_count.clone());
        let mut dev = if BigInt::from(self.counts.len()) < pattern_count {
            uniform.clone()
        } else {
            rat_int(0)
        };
        for &k in self.counts.values() {
            let w = ratio(k as i64, self.columns as i64);
            let d = if w >= uniform { w - &uniform } else { &uniform - w };
            if d > dev {
                dev = d;
            }
        }
        dev
    }
}

/// The type of a tuple of equal-length words.
pub fn tuple_type(q: u8, rows: &[&[Symbol]]) -> Result<TupleType> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter("empty list".into()));
    }
    let n = rows[0].len();
    if n == 0 {
        return Err(Error::InvalidParameter("zero-length words".into()));
    }
    for row in rows {
        if row.len() != n {
            return Err(Error::LengthMismatch(row.len(), n));
        }
        for &x in *row {
            if x == 0 || x > q {
                return Err(Error::InvalidSymbol { value: x, q });
            }
        }
    }
    let mut counts: BTreeMap<Vec<Symbol>, usize> = BTreeMap::new();
    for j in 0..n {
        let pattern: Vec<Symbol> = rows.iter().map(|r| r[j]).collect();
        *counts.entry(pattern).or_insert(0) += 1;
    }
    Ok(TupleType { q, list_len: rows.len(), columns: n, counts })
}

fn validate_list(q: u8, rows: &[&[Symbol]], ell: usize) -> Result<usize> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter("empty list".into()));
    }
    if ell == 0 || ell >= q as usize {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= q - 1 = {}, got {ell}",
            q - 1
        )));
    }
    let n = rows[0].len();
    if n == 0 {
        return Err(Error::InvalidParameter("zero-length words".into()));
    }
    for row in rows {
        if row.len() != n {
            return Err(Error::LengthMismatch(row.len(), n));
        }
        for &x in *row {
            if x == 0 || x > q {
                return Err(Error::InvalidSymbol { value: x, q });
            }
        }
    }
    Ok(n)
}

/// Average radius of a list: the minimum over centers of the average
/// list-recovery distance, relative to n. The minimization separates per
/// column, giving `(1/n) * sum_j (1 - plurality_ell(column j) / L)`.
pub fn average_radius(q: u8, rows: &[&[Symbol]], ell: usize) -> Result<Rational> {
    let n = validate_list(q, rows, ell)?;
    let l = rows.len();
    let mut plur_sum = 0usize;
    for j in 0..n {
        let col: Vec<Symbol> = rows.iter().map(|r| r[j]).collect();
        plur_sum += plurality(&col, q, ell)?;
    }
    Ok(rat_int(1) - ratio(plur_sum as i64, (n * l) as i64))
}

/// Weighted average radius: `1 - (1/n) sum_j max_{A} sum_{i: c_i(j) in A}
/// omega(i)`, the minimum over fractional centers of the omega-weighted
/// average distance. `omega` must be an exact-mode distribution on the
/// list.
pub fn weighted_average_radius(
    q: u8,
    rows: &[&[Symbol]],
    omega: &SimplexPoint,
    ell: usize,
) -> Result<Rational> {
    let n = validate_list(q, rows, ell)?;
    let w = omega.exact_entries()?;
    if w.len() != rows.len() {
        return Err(Error::LengthMismatch(w.len(), rows.len()));
    }
    let mut captured = rat_int(0);
    for j in 0..n {
        let mut tally = vec![rat_int(0); q as usize];
        for (i, row) in rows.iter().enumerate() {
            tally[(row[j] - 1) as usize] += &w[i];
        }
        tally.sort_by(|a, b| b.cmp(a));
        captured += tally[..ell].iter().sum::<Rational>();
    }
    Ok(rat_int(1) - captured / rat_int(n as i64))
}

/// Image of a symbol under the set embedding: the 0/1 indicator over the
/// `ell`-subsets of `[q]` of "this subset contains x". For `ell = 1` this
/// is the one-hot vector of `x`.
pub fn embed(q: u8, ell: usize, x: Symbol) -> Result<Vec<u8>> {
    let space = SubsetSpace::new(q, ell)?;
    if x == 0 || x > q {
        return Err(Error::InvalidSymbol { value: x, q });
    }
    let mut v = vec![0u8; space.len()];
    for &idx in space.containing(x) {
        v[idx] = 1;
    }
    Ok(v)
}

fn embedded_l1_to_distance(l1: Rational, q: u8, ell: usize) -> Rational {
    let overlap = binomial(q as u64 - 1, ell as u64 - 1);
    (l1 - Rational::from_integer(overlap) + rat_int(1)) / rat_int(2)
}

/// Affine extension of the list-recovery distance to fractional centers:
/// `(|phi(x) - eta|_1 - C(q-1, ell-1) + 1) / 2`. On a vertex `eta = e_A`
/// this is exactly the 0/1 indicator of `x ∉ A`; for `ell = 1` it reduces
/// to half the l1 distance between one-hot vectors.
pub fn embedded_distance(q: u8, ell: usize, x: Symbol, eta: &SimplexPoint) -> Result<Rational> {
    let space = SubsetSpace::new(q, ell)?;
    if x == 0 || x > q {
        return Err(Error::InvalidSymbol { value: x, q });
    }
    let entries = eta.exact_entries()?;
    if entries.len() != space.len() {
        return Err(Error::LengthMismatch(entries.len(), space.len()));
    }
    // simplex entries lie in [0,1], so the l1 terms need no abs
    let mut l1 = rat_int(0);
    for (idx, e) in entries.iter().enumerate() {
        if space.set_contains(idx, x) {
            l1 += rat_int(1) - e;
        } else {
            l1 += e;
        }
    }
    Ok(embedded_l1_to_distance(l1, q, ell))
}

/// Float-mode variant of [`embedded_distance`], for LP centers.
pub fn embedded_distance_f64(q: u8, ell: usize, x: Symbol, eta: &[f64]) -> Result<f64> {
    let space = SubsetSpace::new(q, ell)?;
    if x == 0 || x > q {
        return Err(Error::InvalidSymbol { value: x, q });
    }
    if eta.len() != space.len() {
        return Err(Error::LengthMismatch(eta.len(), space.len()));
    }
    let mut l1 = 0.0;
    for (idx, &e) in eta.iter().enumerate() {
        if space.set_contains(idx, x) {
            l1 += (1.0 - e).abs();
        } else {
            l1 += e.abs();
        }
    }
    let overlap = binomial(q as u64 - 1, ell as u64 - 1)
        .to_string()
        .parse::<f64>()
        .unwrap_or(f64::NAN);
    Ok((l1 - overlap + 1.0) / 2.0)
}

struct CenterSearch {
    h: usize,
    n: usize,
    rows: usize,
    /// miss[j * h + s]: bitmask over rows missed when column j uses subset s.
    miss: Vec<u64>,
}

impl CenterSearch {
    fn build(rows: &[&[Symbol]], space: &SubsetSpace) -> Result<Self> {
        let n = rows[0].len();
        let h = space.len();
        if rows.len() > 64 {
            return Err(Error::BudgetExceeded(format!(
                "instance too large: {} rows exceed the 64-row search limit",
                rows.len()
            )));
        }
        let mut miss = vec![0u64; n * h];
        for j in 0..n {
            for s in 0..h {
                let mut mask = 0u64;
                for (i, row) in rows.iter().enumerate() {
                    if !space.set_contains(s, row[j]) {
                        mask |= 1 << i;
                    }
                }
                miss[j * h + s] = mask;
            }
        }
        Ok(CenterSearch { h, n, rows: rows.len(), miss })
    }

    /// Greedy upper bound: the per-column plurality centroid.
    fn greedy_bound(&self) -> u64 {
        let mut dist = vec![0u32; self.rows];
        for j in 0..self.n {
            let s_best = (0..self.h)
                .min_by_key(|&s| self.miss[j * self.h + s].count_ones())
                .unwrap();
            let mask = self.miss[j * self.h + s_best];
            for (i, d) in dist.iter_mut().enumerate() {
                *d += (mask >> i & 1) as u32;
            }
        }
        dist.iter().copied().max().unwrap_or(0) as u64
    }

    fn apply(&self, j: usize, s: usize, dist: &mut [u32]) -> u32 {
        let mask = self.miss[j * self.h + s];
        let mut max = 0;
        for (i, d) in dist.iter_mut().enumerate() {
            *d += (mask >> i & 1) as u32;
            max = max.max(*d);
        }
        max
    }

    fn undo(&self, j: usize, s: usize, dist: &mut [u32]) {
        let mask = self.miss[j * self.h + s];
        for (i, d) in dist.iter_mut().enumerate() {
            *d -= (mask >> i & 1) as u32;
        }
    }

    fn dfs_value(&self, j: usize, dist: &mut [u32], cur_max: u32, best: &mut u64) {
        if cur_max as u64 >= *best {
            return;
        }
        if j == self.n {
            *best = cur_max as u64;
            return;
        }
        for s in 0..self.h {
            let new_max = self.apply(j, s, dist).max(cur_max);
            self.dfs_value(j + 1, dist, new_max, best);
            self.undo(j, s, dist);
        }
    }

    #[cfg(feature = "parallel")]
    fn dfs_value_atomic(
        &self,
        j: usize,
        dist: &mut [u32],
        cur_max: u32,
        best: &std::sync::atomic::AtomicU64,
    ) {
        use std::sync::atomic::Ordering;
        if cur_max as u64 >= best.load(Ordering::Relaxed) {
            return;
        }
        if j == self.n {
            best.fetch_min(cur_max as u64, Ordering::Relaxed);
            return;
        }
        for s in 0..self.h {
            let new_max = self.apply(j, s, dist).max(cur_max);
            self.dfs_value_atomic(j + 1, dist, new_max, best);
            self.undo(j, s, dist);
        }
    }

    /// First center (in lexicographic order over per-column subset
    /// indices) achieving max distance `target`.
    fn dfs_first(
        &self,
        j: usize,
        dist: &mut [u32],
        cur_max: u32,
        target: u64,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if cur_max as u64 > target {
            return false;
        }
        if j == self.n {
            return true;
        }
        for s in 0..self.h {
            let new_max = self.apply(j, s, dist).max(cur_max);
            chosen.push(s);
            if self.dfs_first(j + 1, dist, new_max, target, chosen) {
                return true;
            }
            chosen.pop();
            self.undo(j, s, dist);
        }
        false
    }

    fn solve_value_seq(&self) -> u64 {
        let mut best = self.greedy_bound().saturating_add(1);
        let mut dist = vec![0u32; self.rows];
        self.dfs_value(0, &mut dist, 0, &mut best);
        best
    }

    #[cfg(feature = "parallel")]
    fn solve_value_par(&self) -> u64 {
        use rayon::prelude::*;
        use std::sync::atomic::{AtomicU64, Ordering};

        // Split the search over fixed prefixes of the first few columns.
        let workers = rayon::current_num_threads().max(1);
        let mut depth = 0usize;
        let mut tasks = 1usize;
        while depth < self.n && tasks < workers * 8 && tasks * self.h <= 16_384 {
            tasks *= self.h;
            depth += 1;
        }
        if depth == 0 {
            return self.solve_value_seq();
        }
        let best = AtomicU64::new(self.greedy_bound().saturating_add(1));
        (0..tasks).into_par_iter().for_each(|prefix| {
            let mut dist = vec![0u32; self.rows];
            let mut cur_max = 0u32;
            let mut p = prefix;
            for j in (0..depth).rev() {
                let s = p % self.h;
                p /= self.h;
                cur_max = self.apply(j, s, &mut dist).max(cur_max);
            }
            self.dfs_value_atomic(depth, &mut dist, cur_max, &best);
        });
        best.load(Ordering::Relaxed)
    }
}

fn center_space_size(h: usize, n: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(h as u64)?;
    }
    Some(acc)
}

fn chebyshev_impl(
    q: u8,
    rows: &[&[Symbol]],
    ell: usize,
    budget: &Budget,
    parallel: bool,
) -> Result<(Rational, ListSet)> {
    let n = validate_list(q, rows, ell)?;
    let space = SubsetSpace::new(q, ell)?;
    match center_space_size(space.len(), n) {
        Some(size) if size <= budget.centers => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "instance too large: {}^{} candidate centers exceed budget {}",
                space.len(),
                n,
                budget.centers
            )))
        }
    }
    let search = CenterSearch::build(rows, &space)?;
    #[cfg(feature = "parallel")]
    let value = if parallel { search.solve_value_par() } else { search.solve_value_seq() };
    #[cfg(not(feature = "parallel"))]
    let value = {
        let _ = parallel;
        search.solve_value_seq()
    };

    let mut chosen = Vec::with_capacity(n);
    let mut dist = vec![0u32; rows.len()];
    let found = search.dfs_first(0, &mut dist, 0, value, &mut chosen);
    debug_assert!(found, "optimal value must be attained");
    let masks: Vec<u32> = chosen.iter().map(|&s| space.mask(s)).collect();
    let center = ListSet::from_masks(q, ell, masks)?;
    Ok((ratio(value as i64, n as i64), center))
}

/// Exact Chebyshev radius of a list, by exhaustive search over all
/// `C(q,ell)^n` centers with branch-and-bound pruning. Returns the
/// relative radius and the lexicographically first optimal center.
/// Refuses instances whose center space exceeds `budget.centers`.
pub fn chebyshev_radius(
    q: u8,
    rows: &[&[Symbol]],
    ell: usize,
    budget: &Budget,
) -> Result<(Rational, ListSet)> {
    chebyshev_impl(q, rows, ell, budget, true)
}

/// Sequential variant of [`chebyshev_radius`]; same result.
pub fn chebyshev_radius_seq(
    q: u8,
    rows: &[&[Symbol]],
    ell: usize,
    budget: &Budget,
) -> Result<(Rational, ListSet)> {
    chebyshev_impl(q, rows, ell, budget, false)
}

/// All radius notions for one list, with certifying centers.
#[derive(Debug, Clone)]
pub struct RadiusReport {
    pub q: u8,
    pub ell: usize,
    pub n: usize,
    pub list_len: usize,
    /// Exact Chebyshev radius; absent when over budget.
    pub chebyshev: Option<Rational>,
    pub chebyshev_center: Option<ListSet>,
    pub average: Rational,
    /// Weighted average radii, keyed by a caller-supplied label.
    pub weighted: BTreeMap<String, Rational>,
    /// LP value of the relaxed radius.
    pub relaxed: f64,
    pub relaxed_center: crate::lp::FractionalCenter,
}

impl RadiusReport {
    /// Check `average <= relaxed <= chebyshev <= relaxed + L/n`
    /// (float comparisons against the LP value use `tol`).
    pub fn sandwich_ok(&self, tol: f64) -> bool {
        let avg = crate::rational::to_f64(&self.average);
        if avg > self.relaxed + tol {
            return false;
        }
        if let Some(cheb) = &self.chebyshev {
            let cheb = crate::rational::to_f64(cheb);
            if self.relaxed > cheb + tol {
                return false;
            }
            if cheb > self.relaxed + self.list_len as f64 / self.n as f64 + tol {
                return false;
            }
        }
        true
    }
}

/// Compute every radius of a list. `omegas` adds labeled weighted-average
/// entries on top of the always-present `"uniform"` one. Chebyshev fields
/// are omitted (not approximated) when the center space exceeds the
/// budget.
pub fn radius_report(
    q: u8,
    rows: &[&[Symbol]],
    ell: usize,
    omegas: &[(String, SimplexPoint)],
    budget: &Budget,
) -> Result<RadiusReport> {
    let n = validate_list(q, rows, ell)?;
    let average = average_radius(q, rows, ell)?;
    let mut weighted = BTreeMap::new();
    let uniform = SimplexPoint::uniform(rows.len())?;
    weighted.insert(
        "uniform".to_string(),
        weighted_average_radius(q, rows, &uniform, ell)?,
    );
    for (label, omega) in omegas {
        weighted.insert(
            label.clone(),
            weighted_average_radius(q, rows, omega, ell)?,
        );
    }
    let (relaxed, relaxed_center) = crate::lp::relaxed_radius(q, rows, ell)?;
    let (chebyshev, chebyshev_center) = match chebyshev_radius(q, rows, ell, budget) {
        Ok((r, c)) => (Some(r), Some(c)),
        Err(Error::BudgetExceeded(_)) => (None, None),
        Err(e) => return Err(e),
    };
    let report = RadiusReport {
        q,
        ell,
        n,
        list_len: rows.len(),
        chebyshev,
        chebyshev_center,
        average,
        weighted,
        relaxed,
        relaxed_center,
    };
    debug_assert!(report.sandwich_ok(1e-6), "radius sandwich violated: {report:?}");
    Ok(report)
}
