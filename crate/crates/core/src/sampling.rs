//! Seeded samplers for property checks: rational simplex points with
//! bounded denominator (so strict comparisons stay decidable) and random
//! codebooks.

use rand::Rng;

use crate::code::{Codebook, Symbol};
use crate::distributions::SimplexPoint;
use crate::rational::ratio;

/// A random rational point of the simplex on `k` coordinates with
/// denominator at most `max_den` (stars-and-bars over a random
/// denominator). With `full_support` every coordinate is positive.
pub fn simplex_rational<R: Rng>(
    rng: &mut R,
    k: usize,
    max_den: i64,
    full_support: bool,
) -> SimplexPoint {
    assert!(k >= 1);
    let floor = if full_support { 1i64 } else { 0 };
    let min_den = (k as i64 * floor.max(1)).max(2);
    let den = rng.gen_range(min_den..=max_den.max(min_den));
    // distribute (den - k*floor) units over k cells
    let free = den - k as i64 * floor;
    let mut cuts: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(0..=free)).collect();
    cuts.push(0);
    cuts.push(free);
    cuts.sort_unstable();
    let entries = cuts
        .windows(2)
        .map(|w| ratio(w[1] - w[0] + floor, den))
        .collect();
    SimplexPoint::exact(entries).expect("sampler yields a valid distribution")
}

/// A uniformly random codebook: `m` rows of `n` symbols over `[q]`.
pub fn codebook<R: Rng>(rng: &mut R, q: u8, n: usize, m: usize) -> Codebook {
    let rows: Vec<Vec<Symbol>> = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(1..=q)).collect())
        .collect();
    Codebook::new(q, n, rows).expect("sampler yields a valid codebook")
}

/// A random list of `l` distinct rows drawn from `[q]^n`.
pub fn distinct_rows<R: Rng>(rng: &mut R, q: u8, n: usize, l: usize) -> Vec<Vec<Symbol>> {
    assert!(
        (q as usize).pow(n as u32) >= l,
        "not enough distinct words for the requested list"
    );
    let mut rows: Vec<Vec<Symbol>> = Vec::with_capacity(l);
    while rows.len() < l {
        let cand: Vec<Symbol> = (0..n).map(|_| rng.gen_range(1..=q)).collect();
        if !rows.contains(&cand) {
            rows.push(cand);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn simplex_sampler_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let p = simplex_rational(&mut rng, 4, 64, false);
            for e in p.exact_entries().unwrap() {
                assert!(e.denom() <= &num_bigint::BigInt::from(64));
            }
        }
        for _ in 0..200 {
            let p = simplex_rational(&mut rng, 3, 24, true);
            assert!(p.exact_entries().unwrap().iter().all(|e| !e.is_zero()));
        }
    }

    #[test]
    fn distinct_rows_are_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let rows = distinct_rows(&mut rng, 3, 3, 4);
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    assert_ne!(rows[i], rows[j]);
                }
            }
        }
    }
}
