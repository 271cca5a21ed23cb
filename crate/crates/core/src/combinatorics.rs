//! Exact combinatorial primitives: binomials, multinomials, compositions
//! of an integer into a fixed number of parts, and plurality counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::code::Symbol;
use crate::error::{Error, Result};

/// `n choose k` as a big integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `(sum parts)! / (parts_1! ... parts_q!)`.
pub fn multinomial_parts(parts: &[usize]) -> BigInt {
    let mut acc = BigInt::one();
    let mut seen: u64 = 0;
    for &p in parts {
        acc *= binomial(seen + p as u64, p as u64);
        seen += p as u64;
    }
    acc
}

/// Multinomial over possibly-negative entries, defined as 0 when any
/// entry is negative. This matches the combinatorial meaning of
/// hypergeometric terms whose cells would be overdrawn.
pub fn multinomial_or_zero(parts: &[i64]) -> BigInt {
    if parts.iter().any(|&p| p < 0) {
        return BigInt::zero();
    }
    let parts: Vec<usize> = parts.iter().map(|&p| p as usize).collect();
    multinomial_parts(&parts)
}

/// A composition of `total` into a fixed number of non-negative parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    parts: Vec<usize>,
    total: usize,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        let total = parts.iter().sum();
        Composition { parts, total }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }
}

/// Multinomial coefficient of a composition.
pub fn multinomial(a: &Composition) -> BigInt {
    multinomial_parts(a.parts())
}

/// All compositions of `total` into exactly `q` non-negative parts, in
/// lexicographic order. There are `C(total + q - 1, q - 1)` of them.
pub fn compositions(q: usize, total: usize) -> Vec<Composition> {
    assert!(q >= 1, "need at least one part");
    let mut out = Vec::new();
    let mut current = vec![0usize; q];
    fill(&mut out, &mut current, 0, total);
    out
}

fn fill(out: &mut Vec<Composition>, current: &mut Vec<usize>, pos: usize, remaining: usize) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Composition::new(current.clone()));
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        fill(out, current, pos + 1, remaining - v);
    }
    current[pos] = 0;
}

/// Sum of the `ell` largest parts of a composition.
pub fn largest_parts_sum(a: &Composition, ell: usize) -> Result<usize> {
    if ell == 0 || ell > a.arity() {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= {}, got {ell}",
            a.arity()
        )));
    }
    let mut sorted = a.parts().to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    Ok(sorted[..ell].iter().sum())
}

/// Top-`ell` plurality of a tuple of symbols: the largest number of
/// entries any `ell`-subset of the alphabet can cover. Equivalently, the
/// sum of the `ell` largest symbol tallies.
pub fn plurality(xs: &[Symbol], q: u8, ell: usize) -> Result<usize> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter("empty symbol list".into()));
    }
    if ell == 0 || ell > q as usize {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= ell <= q = {q}, got {ell}"
        )));
    }
    let mut tally = vec![0usize; q as usize];
    for &x in xs {
        if x == 0 || x > q {
            return Err(Error::InvalidSymbol { value: x, q });
        }
        tally[(x - 1) as usize] += 1;
    }
    tally.sort_unstable_by(|a, b| b.cmp(a));
    Ok(tally[..ell].iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2).to_u64(), Some(6));
        assert_eq!(binomial(3, 5).to_u64(), Some(0));
        assert_eq!(binomial(50, 25).to_string(), "126410606437752");
    }

    #[test]
    fn multinomials() {
        // degenerate composition
        assert_eq!(multinomial(&Composition::new(vec![5, 0, 0])).to_u64(), Some(1));
        assert_eq!(multinomial(&Composition::new(vec![1, 1])).to_u64(), Some(2));
        // 5!/(2!2!1!) = 30
        assert_eq!(multinomial(&Composition::new(vec![2, 2, 1])).to_u64(), Some(30));
        assert_eq!(multinomial_or_zero(&[2, -1, 1]).to_u64(), Some(0));
    }

    #[test]
    fn composition_enumeration() {
        assert_eq!(compositions(1, 5), vec![Composition::new(vec![5])]);
        let c22 = compositions(2, 2);
        assert_eq!(
            c22,
            vec![
                Composition::new(vec![0, 2]),
                Composition::new(vec![1, 1]),
                Composition::new(vec![2, 0]),
            ]
        );
        // C(4, 2) = 6
        assert_eq!(compositions(3, 2).len(), 6);
        // lexicographic order
        let cs = compositions(3, 3);
        for w in cs.windows(2) {
            assert!(w[0].parts() < w[1].parts());
        }
    }

    #[test]
    fn multinomial_theorem() {
        // sum over all compositions of multinomial(a) = q^L, exactly
        for q in 1..=5usize {
            for total in 0..=8usize {
                let sum: BigInt = compositions(q, total).iter().map(multinomial).sum();
                assert_eq!(sum, BigInt::from(q).pow(total as u32), "q={q} L={total}");
            }
        }
    }

    #[test]
    fn largest_parts() {
        assert_eq!(largest_parts_sum(&Composition::new(vec![3, 0, 0]), 1).unwrap(), 3);
        assert_eq!(largest_parts_sum(&Composition::new(vec![2, 2, 1]), 2).unwrap(), 4);
        assert_eq!(largest_parts_sum(&Composition::new(vec![1, 1, 1]), 3).unwrap(), 3);
        assert!(largest_parts_sum(&Composition::new(vec![1, 1]), 3).is_err());
    }

    #[test]
    fn plurality_basics() {
        assert_eq!(plurality(&[1, 1, 1], 3, 1).unwrap(), 3);
        assert_eq!(plurality(&[1, 2, 3], 3, 2).unwrap(), 2);
        assert_eq!(plurality(&[1, 1, 2, 3], 3, 1).unwrap(), 2);
        assert!(plurality(&[], 3, 1).is_err());
        assert!(plurality(&[4], 3, 1).is_err());
    }

    #[test]
    fn plurality_monotone_in_ell() {
        let xs = [1u8, 2, 2, 3, 4, 4, 4, 1];
        let q = 4u8;
        let mut prev = 0;
        for ell in 1..=q as usize {
            let p = plurality(&xs, q, ell).unwrap();
            assert!(p >= prev);
            prev = p;
        }
        assert_eq!(prev, xs.len()); // ell = q covers everything
    }
}
