//! Probability vectors on finite sets.
//!
//! A [`SimplexPoint`] carries either exact rational entries or floating
//! entries, with an explicit mode tag. Closed-form results demand the
//! exact mode; fractional LP centers live in float mode. Combining the two
//! modes in one expression is an error rather than a silent coercion.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{ratio, to_f64, Rational};

const FLOAT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Entries {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// A point of the probability simplex over a finite index set.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    entries: Entries,
}

impl SimplexPoint {
    /// Exact-mode point; entries must be non-negative and sum to 1 exactly.
    pub fn exact(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty probability vector".into()));
        }
        if entries.iter().any(|e| e.is_negative()) {
            return Err(Error::InvalidParameter("negative probability entry".into()));
        }
        let sum: Rational = entries.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(SimplexPoint { entries: Entries::Exact(entries) })
    }

    /// Float-mode point; entries must be non-negative (up to 1e-12) and sum
    /// to 1 within 1e-12.
    pub fn floats(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty probability vector".into()));
        }
        if entries.iter().any(|&e| e.is_nan() || e < -FLOAT_SUM_TOL) {
            return Err(Error::InvalidParameter("negative probability entry".into()));
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > FLOAT_SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {sum}, not 1"
            )));
        }
        Ok(SimplexPoint { entries: Entries::Float(entries) })
    }

    /// The uniform distribution on `[k]`.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("uniform distribution on 0 points".into()));
        }
        Self::exact(vec![ratio(1, k as i64); k])
    }

    /// The distribution on `[q]` with total mass `p` spread evenly over the
    /// last `ell` symbols and the remaining `1 - p` spread evenly over the
    /// first `q - ell`. Requires `ell/q <= p <= 1`. This family is extremal
    /// for the expected-radius functional among all distributions with
    /// top-`ell` mass `p`.
    pub fn concentrated(q: u8, ell: usize, p: &Rational) -> Result<Self> {
        if ell == 0 || ell >= q as usize {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= ell <= q - 1 = {}, got {ell}",
                q - 1
            )));
        }
        let lo = ratio(ell as i64, q as i64);
        if p < &lo || p > &Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "need {ell}/{q} <= p <= 1, got {p}"
            )));
        }
        let head = (Rational::one() - p) / ratio(q as i64 - ell as i64, 1);
        let tail = p / ratio(ell as i64, 1);
        let mut entries = vec![head; q as usize - ell];
        entries.extend(vec![tail; ell]);
        Self::exact(entries)
    }

    /// `concentrated` with `ell = 1`: mass `p` on the last symbol, the rest
    /// even. Requires `1/q <= p <= 1`.
    pub fn concentrated_single(q: u8, p: &Rational) -> Result<Self> {
        Self::concentrated(q, 1, p)
    }

    pub fn len(&self) -> usize {
        match &self.entries {
            Entries::Exact(v) => v.len(),
            Entries::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Exact(_))
    }

    /// Borrow the exact entries; errors in float mode.
    pub fn exact_entries(&self) -> Result<&[Rational]> {
        match &self.entries {
            Entries::Exact(v) => Ok(v),
            Entries::Float(_) => Err(Error::ModeMismatch("exact")),
        }
    }

    /// Entries as floats (lossless in float mode, converted in exact mode).
    pub fn float_entries(&self) -> Vec<f64> {
        match &self.entries {
            Entries::Exact(v) => v.iter().map(to_f64).collect(),
            Entries::Float(v) => v.clone(),
        }
    }

    /// Replace the coordinates in `subset` (0-based, distinct) by their
    /// arithmetic mean; other coordinates are untouched.
    pub fn average_out(&self, subset: &[usize]) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::InvalidParameter("empty averaging subset".into()));
        }
        let mut idx = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != subset.len() {
            return Err(Error::InvalidParameter("duplicate index in averaging subset".into()));
        }
        if *idx.last().unwrap() >= self.len() {
            return Err(Error::InvalidParameter(format!(
                "averaging index {} out of range (len {})",
                idx.last().unwrap(),
                self.len()
            )));
        }
        match &self.entries {
            Entries::Exact(v) => {
                let sum: Rational = idx.iter().map(|&i| v[i].clone()).sum();
                let mean = sum / ratio(idx.len() as i64, 1);
                let mut out = v.clone();
                for &i in &idx {
                    out[i] = mean.clone();
                }
                SimplexPoint::exact(out)
            }
            Entries::Float(v) => {
                let mean: f64 = idx.iter().map(|&i| v[i]).sum::<f64>() / idx.len() as f64;
                let mut out = v.clone();
                for &i in &idx {
                    out[i] = mean;
                }
                // renormalization-free: the subset keeps its total mass
                Ok(SimplexPoint { entries: Entries::Float(out) })
            }
        }
    }

    /// Largest entry and its index, ties broken by lowest index. Exact mode
    /// only.
    pub fn max_coordinate(&self) -> Result<(usize, Rational)> {
        let v = self.exact_entries()?;
        let mut best = 0usize;
        for (i, e) in v.iter().enumerate() {
            if e > &v[best] {
                best = i;
            }
        }
        Ok((best, v[best].clone()))
    }

    /// Sum of the `ell` largest entries — the largest mass any `ell`-subset
    /// of the index set can capture. Exact mode only.
    pub fn top_mass(&self, ell: usize) -> Result<Rational> {
        let v = self.exact_entries()?;
        if ell == 0 || ell > v.len() {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= ell <= {}, got {ell}",
                v.len()
            )));
        }
        let mut sorted = v.to_vec();
        sorted.sort_by(|a, b| b.cmp(a));
        Ok(sorted[..ell].iter().sum())
    }

    /// Exact-mode test for the uniform distribution.
    pub fn is_uniform(&self) -> Result<bool> {
        let v = self.exact_entries()?;
        let u = ratio(1, v.len() as i64);
        Ok(v.iter().all(|e| *e == u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_basics() {
        assert_eq!(
            SimplexPoint::uniform(1).unwrap().exact_entries().unwrap(),
            &[ratio(1, 1)]
        );
        let u4 = SimplexPoint::uniform(4).unwrap();
        assert_eq!(u4.exact_entries().unwrap(), &vec![ratio(1, 4); 4][..]);
        let sum: Rational = SimplexPoint::uniform(3).unwrap().exact_entries().unwrap().iter().sum();
        assert!(sum.is_one());
        assert!(SimplexPoint::uniform(0).is_err());
    }

    #[test]
    fn mode_checks() {
        let f = SimplexPoint::floats(vec![0.5, 0.5]).unwrap();
        assert!(f.exact_entries().is_err());
        assert!(!f.is_exact());
        assert!(SimplexPoint::floats(vec![0.5, 0.6]).is_err());
        assert!(SimplexPoint::exact(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(SimplexPoint::exact(vec![ratio(3, 2), ratio(-1, 2)]).is_err());
    }

    #[test]
    fn average_out_examples() {
        let w = SimplexPoint::exact(vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(w.average_out(&[0, 1]).unwrap(), w);

        let w = SimplexPoint::exact(vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]).unwrap();
        let avg = w.average_out(&[0, 1]).unwrap();
        assert_eq!(
            avg.exact_entries().unwrap(),
            &[ratio(3, 8), ratio(3, 8), ratio(1, 4)]
        );

        // averaging everything yields the uniform distribution
        let full = w.average_out(&[0, 1, 2]).unwrap();
        assert_eq!(full, SimplexPoint::uniform(3).unwrap());

        assert!(w.average_out(&[]).is_err());
        assert!(w.average_out(&[0, 0]).is_err());
        assert!(w.average_out(&[3]).is_err());
    }

    #[test]
    fn average_out_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let k = rng.gen_range(2..6);
            let entries: Vec<Rational> = sample_weights(&mut rng, k);
            let w = SimplexPoint::exact(entries).unwrap();
            let subset: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
            if subset.is_empty() {
                continue;
            }
            let once = w.average_out(&subset).unwrap();
            let twice = once.average_out(&subset).unwrap();
            assert_eq!(once, twice);
        }
    }

    fn sample_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
        let den = 24i64;
        let mut cuts: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(0..=den)).collect();
        cuts.push(0);
        cuts.push(den);
        cuts.sort_unstable();
        cuts.windows(2).map(|w| ratio(w[1] - w[0], den)).collect()
    }

    #[test]
    fn repeated_pairwise_averaging_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k = 6usize;
        let start: Vec<f64> = {
            let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
            let s: f64 = raw.iter().sum();
            raw.into_iter().map(|x| x / s).collect()
        };
        let mut w = SimplexPoint::floats(start).unwrap();
        for _ in 0..200 {
            let i = rng.gen_range(0..k);
            let mut j = rng.gen_range(0..k);
            while j == i {
                j = rng.gen_range(0..k);
            }
            w = w.average_out(&[i, j]).unwrap();
        }
        let target = 1.0 / k as f64;
        for e in w.float_entries() {
            assert!((e - target).abs() < 1e-6, "entry {e} far from uniform");
        }
    }

    #[test]
    fn concentrated_family() {
        // p = 1/q gives the uniform distribution
        assert_eq!(
            SimplexPoint::concentrated_single(3, &ratio(1, 3)).unwrap(),
            SimplexPoint::uniform(3).unwrap()
        );
        // point mass
        assert_eq!(
            SimplexPoint::concentrated_single(3, &ratio(1, 1))
                .unwrap()
                .exact_entries()
                .unwrap(),
            &[ratio(0, 1), ratio(0, 1), ratio(1, 1)]
        );
        assert_eq!(
            SimplexPoint::concentrated_single(4, &ratio(1, 2))
                .unwrap()
                .exact_entries()
                .unwrap(),
            &[ratio(1, 6), ratio(1, 6), ratio(1, 6), ratio(1, 2)]
        );
        // ell = 1 reduction
        assert_eq!(
            SimplexPoint::concentrated(3, 1, &ratio(1, 2)).unwrap(),
            SimplexPoint::concentrated_single(3, &ratio(1, 2)).unwrap()
        );
        // p = ell/q gives uniform
        assert_eq!(
            SimplexPoint::concentrated(4, 2, &ratio(1, 2)).unwrap(),
            SimplexPoint::uniform(4).unwrap()
        );
        assert_eq!(
            SimplexPoint::concentrated(4, 2, &ratio(3, 4))
                .unwrap()
                .exact_entries()
                .unwrap(),
            &[ratio(1, 8), ratio(1, 8), ratio(3, 8), ratio(3, 8)]
        );
        assert!(SimplexPoint::concentrated_single(3, &ratio(1, 4)).is_err());
        assert!(SimplexPoint::concentrated(4, 2, &ratio(5, 4)).is_err());
        assert!(SimplexPoint::concentrated(4, 4, &ratio(1, 2)).is_err());
    }

    #[test]
    fn max_and_top_mass() {
        let w = SimplexPoint::exact(vec![ratio(1, 4), ratio(1, 2), ratio(1, 4)]).unwrap();
        assert_eq!(w.max_coordinate().unwrap(), (1, ratio(1, 2)));
        // ties break to the lowest index
        let t = SimplexPoint::exact(vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(t.max_coordinate().unwrap().0, 0);
        assert_eq!(w.top_mass(2).unwrap(), ratio(3, 4));
        assert_eq!(w.top_mass(3).unwrap(), ratio(1, 1));
        assert!(w.top_mass(0).is_err());
    }
}
