//! The relaxed radius LP, its dual route over list weightings, and the
//! rounding of fractional centers back to integral ones.
//!
//! Relaxing the center of a list-recovery ball from an integral tuple of
//! sets to one probability vector per coordinate turns the radius into a
//! linear program. Solving the feasibility system at the optimum lands on
//! a basic feasible solution with at most `n + L` nonzeros; since every
//! coordinate block must sum to 1, at least `n - L` blocks are forced to
//! be vertices, so rounding the remaining blocks changes the max distance
//! by at most `L`.

use crate::code::{list_recovery_distance, ListSet, SubsetSpace, Symbol};
use crate::error::{Error, Result};
use crate::lp::solver::{solve, LpProblem, LpStatus};
use crate::radii::TupleType;
use crate::rational::{ratio, Rational};

/// Tolerance for recognizing a block of a fractional center as a vertex.
pub const VERTEX_TOL: f64 = 1e-6;

/// A fractional center: one probability vector over the `ell`-subsets of
/// `[q]` per coordinate.
#[derive(Debug, Clone)]
pub struct FractionalCenter {
    pub q: u8,
    pub ell: usize,
    pub blocks: Vec<Vec<f64>>,
}

impl FractionalCenter {
    /// Subset index if block `j` is (numerically) a vertex of the simplex.
    pub fn vertex_block(&self, j: usize) -> Option<usize> {
        let block = &self.blocks[j];
        let (best, &val) = block
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())?;
        if (val - 1.0).abs() <= VERTEX_TOL {
            Some(best)
        } else {
            None
        }
    }

    pub fn vertex_count(&self) -> usize {
        (0..self.blocks.len())
            .filter(|&j| self.vertex_block(j).is_some())
            .count()
    }
}

fn validated(q: u8, rows: &[&[Symbol]], ell: usize) -> Result<(usize, SubsetSpace)> {
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
    Ok((n, SubsetSpace::new(q, ell)?))
}

/// Index of variable `y(j, s)` in the LP layouts below.
fn yvar(j: usize, s: usize, h: usize) -> usize {
    j * h + s
}

/// The stage-1 LP behind [`relaxed_radius`]: minimize `t` (encoded as
/// maximize `-t`) over fractional centers within embedded distance `t`
/// of every word. Variables are laid out `y(j,s) | t | z(i)`; rows are
/// the per-block simplex sums followed by the per-word distance rows
/// `S_i + t - z_i = n`. Exposed so the problem matrix can be dumped for
/// external cross-checking.
pub fn relaxed_radius_lp(q: u8, rows: &[&[Symbol]], ell: usize) -> Result<LpProblem> {
    let (n, space) = validated(q, rows, ell)?;
    let h = space.len();
    let l = rows.len();
    let ny = n * h;
    let nv = ny + 1 + l;
    let mut rows_a = Vec::with_capacity(n + l);
    let mut rhs = Vec::with_capacity(n + l);
    for j in 0..n {
        let mut row = vec![0.0; nv];
        for s in 0..h {
            row[yvar(j, s, h)] = 1.0;
        }
        rows_a.push(row);
        rhs.push(1.0);
    }
    for (i, word) in rows.iter().enumerate() {
        let mut row = vec![0.0; nv];
        for (j, &x) in word.iter().enumerate() {
            for &s in space.containing(x) {
                row[yvar(j, s, h)] = 1.0;
            }
        }
        row[ny] = 1.0; // t
        row[ny + 1 + i] = -1.0; // surplus
        rows_a.push(row);
        rhs.push(n as f64);
    }
    let mut objective = vec![0.0; nv];
    objective[ny] = -1.0;
    LpProblem::new(objective, rows_a, rhs)
}

/// Relaxed radius of a list: minimize `t` such that some fractional
/// center is within embedded distance `t` of every word. Returns the
/// relative radius and a certifying center that is a basic feasible point
/// of the feasibility system at the optimum (hence has at least `n - L`
/// vertex blocks).
pub fn relaxed_radius(q: u8, rows: &[&[Symbol]], ell: usize) -> Result<(f64, FractionalCenter)> {
    let (n, space) = validated(q, rows, ell)?;
    let h = space.len();
    let l = rows.len();
    let ny = n * h;

    let p1 = relaxed_radius_lp(q, rows, ell)?;
    let s1 = solve(&p1);
    if s1.status != LpStatus::Optimal {
        return Err(Error::InvalidParameter(
            "relaxed-radius LP unexpectedly not optimal".into(),
        ));
    }
    let t_opt = s1.x[ny];

    // Stage 2: a basic feasible point of the feasibility system at the
    // optimum (t fixed, tiny slack against roundoff).
    let t_fixed = t_opt + 1e-7;
    let nv2 = ny + l;
    let mut rows_a = Vec::with_capacity(n + l);
    let mut rhs = Vec::with_capacity(n + l);
    for j in 0..n {
        let mut row = vec![0.0; nv2];
        for s in 0..h {
            row[yvar(j, s, h)] = 1.0;
        }
        rows_a.push(row);
        rhs.push(1.0);
    }
    for (i, word) in rows.iter().enumerate() {
        let mut row = vec![0.0; nv2];
        for (j, &x) in word.iter().enumerate() {
            for &s in space.containing(x) {
                row[yvar(j, s, h)] = 1.0;
            }
        }
        row[ny + i] = -1.0;
        rows_a.push(row);
        rhs.push(n as f64 - t_fixed);
    }
    let p2 = LpProblem::new(vec![0.0; nv2], rows_a, rhs)?;
    let s2 = solve(&p2);
    if s2.status != LpStatus::Optimal {
        return Err(Error::InvalidParameter(
            "feasibility system at the optimum unexpectedly infeasible".into(),
        ));
    }
    debug_assert!(s2.nonzero_count <= n + l);
    let blocks: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..h).map(|s| s2.x[yvar(j, s, h)]).collect())
        .collect();
    Ok((t_opt / n as f64, FractionalCenter { q, ell, blocks }))
}

/// The same relaxed radius reached from the other side of the minimax:
/// maximize the weighted average radius over all weightings of the list.
/// Only the type of the list enters. One LP with epigraph variables per
/// pattern replaces the exhaustive walk over weighting polytopes.
pub fn relaxed_radius_by_weights(ty: &TupleType, ell: usize) -> Result<f64> {
    let space = SubsetSpace::new(ty.q(), ell)?;
    let h = space.len();
    let l = ty.list_len();
    let n = ty.columns();
    let patterns: Vec<(&Vec<Symbol>, usize)> =
        ty.counts().iter().map(|(u, &k)| (u, k)).collect();
    let np = patterns.len();

    // Variables: omega(0..l) | t_u (l..l+np) | slack per (pattern, set).
    let nv = l + np + np * h;
    let mut rows_a = Vec::new();
    let mut rhs = Vec::new();
    let mut row = vec![0.0; nv];
    for entry in row.iter_mut().take(l) {
        *entry = 1.0;
    }
    rows_a.push(row);
    rhs.push(1.0);
    for (p, (pattern, _)) in patterns.iter().enumerate() {
        for s in 0..h {
            // sum_{i: u(i) in A_s} omega_i - t_u + slack = 0
            let mut row = vec![0.0; nv];
            for (i, &x) in pattern.iter().enumerate() {
                if space.set_contains(s, x) {
                    row[i] += 1.0;
                }
            }
            row[l + p] = -1.0;
            row[l + np + p * h + s] = 1.0;
            rows_a.push(row);
            rhs.push(0.0);
        }
    }
    let mut objective = vec![0.0; nv];
    for (p, (_, count)) in patterns.iter().enumerate() {
        objective[l + p] = -(*count as f64) / n as f64;
    }
    let problem = LpProblem::new(objective, rows_a, rhs)?;
    let sol = solve(&problem);
    if sol.status != LpStatus::Optimal {
        return Err(Error::InvalidParameter(
            "weighting LP unexpectedly not optimal".into(),
        ));
    }
    Ok(1.0 + sol.objective)
}

/// Round a fractional center to an integral one: vertex blocks map to
/// their subsets, the (at most L) remaining blocks default to the first
/// subset. Returns the rounded center and its exact relative max distance
/// to the list, which is at most `relaxed + L/n`.
pub fn round_center(
    center: &FractionalCenter,
    rows: &[&[Symbol]],
) -> Result<(ListSet, Rational)> {
    let q = center.q;
    let ell = center.ell;
    let (n, space) = validated(q, rows, ell)?;
    if center.blocks.len() != n {
        return Err(Error::LengthMismatch(center.blocks.len(), n));
    }
    let non_vertex = n - center.vertex_count();
    if non_vertex > rows.len() {
        return Err(Error::BfsContract(format!(
            "{non_vertex} non-vertex blocks exceed the list size {}",
            rows.len()
        )));
    }
    let masks: Vec<u32> = (0..n)
        .map(|j| match center.vertex_block(j) {
            Some(s) => space.mask(s),
            None => space.mask(0),
        })
        .collect();
    let rounded = ListSet::from_masks(q, ell, masks)?;
    let max_dist = rows
        .iter()
        .map(|r| list_recovery_distance(r, &rounded))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    Ok((rounded, ratio(max_dist as i64, n as i64)))
}
