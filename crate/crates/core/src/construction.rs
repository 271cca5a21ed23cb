//! The balanced-column code: the optimal zero-rate construction.
//!
//! For `M = q*m` codewords, take as columns all length-`M` vectors
//! containing each symbol exactly `m` times; the blocklength is the
//! multinomial `(qm)! / (m!)^q`. Every tuple of distinct codewords sees
//! the same column statistics (a hypergeometric draw without replacement
//! from the balanced multiset), which makes its average radius an exact
//! closed form and yields the trade-off
//!
//! ```text
//!   p(m) = p* + c/m + O(1/m^2)
//! ```
//!
//! against the zero-rate threshold `p*`, with an explicit positive
//! first-order coefficient `c`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::code::{Codebook, Symbol};
use crate::combinatorics::{
    binomial, compositions, largest_parts_sum, multinomial, multinomial_or_zero,
};
use crate::error::{Error, Result};
use crate::rational::{rat_int, ratio, Rational};
use crate::thresholds::zero_rate_threshold;

/// Parameters of a balanced-column code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalancedCodeSpec {
    q: u8,
    ell: usize,
    list_len: usize,
    m: usize,
}

impl BalancedCodeSpec {
    /// `q >= 2` is accepted; the binary case sits outside the guaranteed
    /// trade-off regime and is only generated for cross-checks (see
    /// [`BalancedCodeSpec::is_binary`]).
    pub fn new(q: u8, ell: usize, list_len: usize, m: usize) -> Result<Self> {
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
        if m == 0 {
            return Err(Error::InvalidParameter("need m >= 1".into()));
        }
        if list_len > q as usize * m {
            return Err(Error::InvalidParameter(format!(
                "list size {list_len} exceeds the code size {}",
                q as usize * m
            )));
        }
        Ok(BalancedCodeSpec { q, ell, list_len, m })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn list_len(&self) -> usize {
        self.list_len
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of codewords, `M = q*m`.
    pub fn code_size(&self) -> usize {
        self.q as usize * self.m
    }

    /// Blocklength `(qm)! / (m!)^q`.
    pub fn blocklength(&self) -> BigInt {
        multinomial(&crate::combinatorics::Composition::new(vec![
            self.m;
            self.q as usize
        ]))
    }

    /// The binary analog falls outside the guaranteed regime.
    pub fn is_binary(&self) -> bool {
        self.q == 2
    }
}

fn next_multiset_permutation(a: &mut [Symbol]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let pivot = i - 1;
    let mut j = a.len() - 1;
    while a[j] <= a[pivot] {
        j -= 1;
    }
    a.swap(pivot, j);
    a[i..].reverse();
    true
}

/// Materialize the codebook: columns enumerate all balanced vectors in
/// lexicographic order, rows are the codewords. Refuses blocklengths
/// beyond `budget.columns`.
pub fn generate(spec: &BalancedCodeSpec, budget: &Budget) -> Result<Codebook> {
    let n_big = spec.blocklength();
    if n_big > BigInt::from(budget.columns) {
        return Err(Error::BudgetExceeded(format!(
            "instance too large: blocklength {n_big} exceeds budget {}",
            budget.columns
        )));
    }
    let n = n_big.to_usize().expect("blocklength fits usize within budget");
    let m_rows = spec.code_size();
    let mut column: Vec<Symbol> = (1..=spec.q).flat_map(|x| vec![x; spec.m]).collect();
    let mut rows = vec![Vec::with_capacity(n); m_rows];
    loop {
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(column[i]);
        }
        if !next_multiset_permutation(&mut column) {
            break;
        }
    }
    debug_assert_eq!(rows[0].len(), n);
    Codebook::new(spec.q, n, rows)
}

/// Exact column weight of a pattern whose symbol tallies are `counts`
/// (`counts[x-1]` occurrences of symbol `x`, summing to L): the fraction
/// of balanced vectors taking prescribed values on L fixed positions,
/// `C(qm - L; m - counts) / C(qm; m, ..., m)`.
pub fn hypergeometric_type_weight(spec: &BalancedCodeSpec, counts: &[usize]) -> Result<Rational> {
    if counts.len() != spec.q as usize {
        return Err(Error::LengthMismatch(counts.len(), spec.q as usize));
    }
    if counts.iter().sum::<usize>() != spec.list_len {
        return Err(Error::InvalidParameter(format!(
            "tallies sum to {}, expected {}",
            counts.iter().sum::<usize>(),
            spec.list_len
        )));
    }
    let residual: Vec<i64> = counts
        .iter()
        .map(|&c| spec.m as i64 - c as i64)
        .collect();
    Ok(Rational::new(
        multinomial_or_zero(&residual),
        spec.blocklength(),
    ))
}

/// `(1/L) E[plurality_ell]` for a uniformly random `L`-subset of the
/// balanced multiset — equivalently, of any `L` distinct codewords read
/// at a random column. Exact hypergeometric sum over compositions.
pub fn exact_expected_plurality(spec: &BalancedCodeSpec) -> Result<Rational> {
    let q = spec.q as usize;
    let l = spec.list_len;
    let blocklength = spec.blocklength();
    let mut acc = rat_int(0);
    for a in compositions(q, l) {
        let residual: Vec<i64> = a
            .parts()
            .iter()
            .map(|&c| spec.m as i64 - c as i64)
            .collect();
        let hyper = multinomial_or_zero(&residual);
        if hyper.is_zero() {
            continue;
        }
        let top = largest_parts_sum(&a, spec.ell)?;
        acc += Rational::new(
            BigInt::from(top) * multinomial(&a) * hyper,
            BigInt::from(l as u64) * &blocklength,
        );
    }
    Ok(acc)
}

/// First-order coefficient of the construction's radius excess over the
/// zero-rate threshold.
#[derive(Debug, Clone)]
pub struct ExcessCoefficient {
    pub value: Rational,
    /// Positivity is guaranteed (and asserted) only for `L > ell`.
    pub positivity_guaranteed: bool,
}

/// The coefficient `c` in `p(m) = p* + c/m + O(1/m^2)`:
/// `q^{-L} sum_a (top_ell(a)/L) C(L, a) (sum_i C(a_i, 2) - C(L, 2)/q)`.
pub fn radius_excess_coefficient(q: u8, ell: usize, list_len: usize) -> Result<ExcessCoefficient> {
    if q < 3 {
        return Err(Error::InvalidParameter(format!(
            "trade-off coefficient requires q >= 3, got {q}"
        )));
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
    let pair_term = Rational::new(
        binomial(list_len as u64, 2),
        BigInt::from(q),
    );
    let mut acc = rat_int(0);
    for a in compositions(q as usize, list_len) {
        let top = largest_parts_sum(&a, ell)?;
        let pairs: BigInt = a
            .parts()
            .iter()
            .map(|&ai| binomial(ai as u64, 2))
            .sum();
        let weight = ratio(top as i64, list_len as i64)
            * Rational::from_integer(multinomial(&a));
        acc += weight * (Rational::from_integer(pairs) - &pair_term);
    }
    let value = acc / Rational::from_integer(BigInt::from(q).pow(list_len as u32));
    let positivity_guaranteed = list_len > ell;
    if positivity_guaranteed {
        assert!(
            value.is_positive(),
            "excess coefficient must be positive for L > ell (q={q}, ell={ell}, L={list_len})"
        );
    }
    Ok(ExcessCoefficient { value, positivity_guaranteed })
}

/// One row of the size-radius trade-off table.
#[derive(Debug, Clone)]
pub struct TradeoffRow {
    pub m: usize,
    pub code_size: usize,
    pub blocklength: BigInt,
    /// `1 - (1/L) E[plurality_ell]`: the exact radius of the construction.
    pub p_exact: Rational,
    pub p_star: Rational,
    pub c_over_m: Rational,
    /// `p_exact - p_star - c/m`.
    pub residual: Rational,
    /// `|residual| * m^2`; bounded across the range when the error term
    /// really is second order.
    pub m2_residual: Rational,
}

/// Exact trade-off rows for the given `m` values.
pub fn tradeoff_table(
    q: u8,
    ell: usize,
    list_len: usize,
    ms: &[usize],
) -> Result<Vec<TradeoffRow>> {
    let p_star = zero_rate_threshold(q, ell, list_len)?;
    let coeff = radius_excess_coefficient(q, ell, list_len)?;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let spec = BalancedCodeSpec::new(q, ell, list_len, m)?;
        let p_exact = rat_int(1) - exact_expected_plurality(&spec)?;
        let c_over_m = &coeff.value / rat_int(m as i64);
        let residual = &p_exact - &p_star - &c_over_m;
        let m2_residual = residual.abs() * rat_int((m * m) as i64);
        rows.push(TradeoffRow {
            m,
            code_size: spec.code_size(),
            blocklength: spec.blocklength(),
            p_exact,
            p_star: p_star.clone(),
            c_over_m,
            residual,
            m2_residual,
        });
    }
    Ok(rows)
}
