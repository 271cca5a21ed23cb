//! Dense two-phase primal simplex over floats, in equational form
//! (maximize `c·x` subject to `Ax = b`, `x >= 0`).
//!
//! Bland's smallest-index rule is used for both the entering and leaving
//! variable, which rules out cycling. The solver always lands on a basic
//! feasible solution: at most m nonzero variables where m is the number of
//! equality rows. That structural guarantee is what the center-rounding
//! step downstream relies on, and it is why the scale here (a few hundred
//! variables) never justifies anything fancier.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;
pub const VALUE_TOL: f64 = 1e-8;

/// An LP in equational form. Inequality rows must be slack-augmented by
/// the caller (the builders in [`crate::lp`] do this).
#[derive(Debug, Clone)]
pub struct LpProblem {
    objective: Vec<f64>,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>, rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self> {
        let n = objective.len();
        if rows.len() != rhs.len() {
            return Err(Error::LengthMismatch(rows.len(), rhs.len()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::LengthMismatch(row.len(), n));
            }
        }
        let finite = objective
            .iter()
            .chain(rhs.iter())
            .chain(rows.iter().flatten())
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("non-finite LP coefficient".into()));
        }
        Ok(LpProblem { objective, rows, rhs })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Tab-separated dump for external cross-checking: the objective row,
    /// then each constraint row with its right-hand side appended.
    pub fn to_tsv(&self) -> String {
        let fmt = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join("\t")
        };
        let mut out = String::new();
        out.push_str(&fmt(&self.objective));
        out.push('\n');
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            out.push_str(&fmt(row));
            out.push('\t');
            out.push_str(&format!("{b}"));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal values (empty unless optimal).
    pub x: Vec<f64>,
    pub objective: f64,
    /// Structural basic columns, sorted.
    pub basis: Vec<usize>,
    /// Number of entries of `x` larger than 1e-9 in absolute value;
    /// at most the number of rows for an optimal solution.
    pub nonzero_count: usize,
    /// Dual values, one per equality row.
    pub duals: Vec<f64>,
}

impl LpSolution {
    fn non_optimal(status: LpStatus) -> Self {
        LpSolution {
            status,
            x: Vec::new(),
            objective: f64::NAN,
            basis: Vec::new(),
            nonzero_count: 0,
            duals: Vec::new(),
        }
    }
}

struct Tableau {
    n: usize,
    m: usize,
    /// m rows of n structural + m artificial columns + rhs.
    rows: Vec<Vec<f64>>,
    /// Reduced-cost row over all n + m columns, then the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    /// Sign each original row was multiplied by to make rhs non-negative.
    row_sign: Vec<f64>,
}

impl Tableau {
    fn new(p: &LpProblem) -> Self {
        let n = p.num_vars();
        let m = p.num_rows();
        let width = n + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut row_sign = Vec::with_capacity(m);
        for (i, row) in p.rows.iter().enumerate() {
            let sign = if p.rhs[i] < 0.0 { -1.0 } else { 1.0 };
            let mut t = vec![0.0; width];
            for (j, &a) in row.iter().enumerate() {
                t[j] = sign * a;
            }
            t[n + i] = 1.0;
            t[width - 1] = sign * p.rhs[i];
            rows.push(t);
            row_sign.push(sign);
        }
        let basis = (n..n + m).collect();
        Tableau { n, m, rows, cost: vec![0.0; width], basis, row_sign }
    }

    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.n + self.m]
    }

    /// Rebuild the reduced-cost row for the given column costs.
    fn load_costs(&mut self, costs: &[f64]) {
        let width = self.n + self.m + 1;
        self.cost = vec![0.0; width];
        for j in 0..self.n + self.m {
            self.cost[j] = costs.get(j).copied().unwrap_or(0.0);
        }
        for i in 0..self.m {
            let cb = costs.get(self.basis[i]).copied().unwrap_or(0.0);
            if cb != 0.0 {
                for j in 0..width {
                    self.cost[j] -= cb * self.rows[i][j];
                }
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.n + self.m + 1;
        let factor = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= factor;
        }
        for i in 0..self.m {
            if i != row {
                let f = self.rows[i][col];
                if f != 0.0 {
                    for j in 0..width {
                        self.rows[i][j] -= f * self.rows[row][j];
                    }
                }
            }
        }
        let f = self.cost[col];
        if f != 0.0 {
            for j in 0..width {
                self.cost[j] -= f * self.rows[row][j];
            }
        }
        self.basis[row] = col;
    }

    /// Run simplex iterations with Bland's rule, allowing only columns
    /// below `col_limit` to enter. Returns false on unboundedness.
    fn iterate(&mut self, col_limit: usize) -> bool {
        let iter_cap = 50_000 + 200 * (self.n + self.m);
        for _ in 0..iter_cap {
            let entering = (0..col_limit).find(|&j| self.cost[j] > PIVOT_TOL);
            let Some(e) = entering else { return true };
            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.m {
                let a = self.rows[i][e];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    let better = ratio < best_ratio - PIVOT_TOL
                        || (ratio < best_ratio + PIVOT_TOL
                            && leave.is_none_or(|l| self.basis[i] < self.basis[l]));
                    if better {
                        best_ratio = ratio;
                        leave = Some(i);
                    }
                }
            }
            match leave {
                Some(r) => self.pivot(r, e),
                None => return false,
            }
        }
        panic!("simplex exceeded its iteration cap; this is a solver bug");
    }
}

/// Solve an equational-form LP. Infeasibility and unboundedness come back
/// as statuses, not errors.
pub fn solve(p: &LpProblem) -> LpSolution {
    let mut t = Tableau::new(p);
    let n = t.n;
    let m = t.m;

    // Phase 1: maximize minus the sum of artificials.
    let mut phase1_costs = vec![0.0; n + m];
    for c in phase1_costs.iter_mut().skip(n) {
        *c = -1.0;
    }
    t.load_costs(&phase1_costs);
    let bounded = t.iterate(n + m);
    debug_assert!(bounded, "phase 1 is bounded by construction");
    let infeasibility: f64 = (0..m)
        .filter(|&i| t.basis[i] >= n)
        .map(|i| t.rhs(i))
        .sum();
    if infeasibility > FEAS_TOL {
        return LpSolution::non_optimal(LpStatus::Infeasible);
    }

    // Drive leftover artificials out of the basis where possible; a row
    // with no structural pivot is redundant and its artificial stays
    // basic at level zero.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t.rows[i][j].abs() > PIVOT_TOL) {
                t.pivot(i, j);
            }
        }
    }

    // Phase 2 with the real objective; artificials may not re-enter.
    t.load_costs(&p.objective);
    if !t.iterate(n) {
        return LpSolution::non_optimal(LpStatus::Unbounded);
    }

    let mut x = vec![0.0; n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs(i);
        }
    }
    let objective = x
        .iter()
        .zip(&p.objective)
        .map(|(xi, ci)| xi * ci)
        .sum::<f64>();
    let mut basis: Vec<usize> = t.basis.iter().copied().filter(|&b| b < n).collect();
    basis.sort_unstable();
    let nonzero_count = x.iter().filter(|v| v.abs() > PIVOT_TOL).count();
    debug_assert!(
        nonzero_count <= m,
        "basic feasible solutions carry at most one nonzero per row"
    );
    // Dual of row i is minus the reduced cost of its artificial column,
    // undoing the sign flip applied to negative rhs rows.
    let duals: Vec<f64> = (0..m).map(|i| -t.cost[n + i] * t.row_sign[i]).collect();
    LpSolution { status: LpStatus::Optimal, x, objective, basis, nonzero_count, duals }
}

/// Max complementary-slackness residual of an optimal solution against its
/// own duals: `max_j |x_j * (c_j - y . A_j)|`. Used as a self-check.
pub fn complementary_slackness_residual(p: &LpProblem, sol: &LpSolution) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..p.num_vars() {
        let reduced: f64 = p.objective[j]
            - (0..p.num_rows()).map(|i| sol.duals[i] * p.rows[i][j]).sum::<f64>();
        worst = worst.max((sol.x[j] * reduced).abs());
    }
    worst
}
