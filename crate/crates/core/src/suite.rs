//! Named, seeded property checks over the whole crate: every structural
//! fact the modules promise, runnable as one deterministic suite. The
//! command-line `propsuite` subcommand prints one PASS/FAIL line per
//! check; any failure is loud.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::code::{hamming_distance, list_recovery_distance, Codebook, ListSet, SubsetSpace};
use crate::combinatorics::{compositions, multinomial, plurality};
use crate::construction::{
    exact_expected_plurality, generate, hypergeometric_type_weight, radius_excess_coefficient,
    tradeoff_table, BalancedCodeSpec,
};
use crate::distributions::SimplexPoint;
use crate::lp;
use crate::radii::{
    average_radius, chebyshev_radius, embedded_distance, tuple_type, weighted_average_radius,
};
use crate::rational::{rat_int, ratio, to_f64};
use crate::sampling;
use crate::thresholds::{
    averaging_criterion, code_average_bound, expected_uniform_radius_by_composition,
    expected_weighted_radius, monte_carlo_radius, schur_concavity_report,
    uniform_weight_maximality, zero_rate_threshold,
};
use crate::verifier::{
    is_list_recoverable, is_list_recoverable_via_radius, projection_subcode,
    tuple_type_statistics, ProjectionOutcome,
};

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub budget: Budget,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 7, trials: 50, budget: Budget::default() }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn(&SuiteConfig) -> Result<String, String>;

fn rng_for(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_list(rng: &mut ChaCha8Rng, q: u8, n: usize, l: usize) -> Vec<Vec<u8>> {
    sampling::distinct_rows(rng, q, n, l)
}

fn check_hamming_metric(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 1);
    for _ in 0..cfg.trials.max(50) {
        let n = rng.gen_range(1..=8);
        let q = 4u8;
        let words: Vec<Vec<u8>> = (0..3)
            .map(|_| (0..n).map(|_| rng.gen_range(1..=q)).collect())
            .collect();
        let d = |a: usize, b: usize| hamming_distance(&words[a], &words[b]).map_err(err);
        let (ab, ba, ac, cb) = (d(0, 1)?, d(1, 0)?, d(0, 2)?, d(2, 1)?);
        if ab != ba {
            return Err("symmetry violated".into());
        }
        if hamming_distance(&words[0], &words[0]).map_err(err)? != 0 {
            return Err("identity violated".into());
        }
        if ab > ac + cb {
            return Err(format!("triangle violated: {ab} > {ac} + {cb}"));
        }
    }
    Ok("symmetry, identity, triangle on random triples".into())
}

fn check_recovery_distance_singletons(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 2);
    for _ in 0..cfg.trials.max(50) {
        let n = rng.gen_range(1..=8);
        let q = 4u8;
        let u: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=q)).collect();
        let center: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=q)).collect();
        let y = ListSet::singletons(q, &center).map_err(err)?;
        if list_recovery_distance(&u, &y).map_err(err)?
            != hamming_distance(&u, &center).map_err(err)?
        {
            return Err(format!("mismatch at u={u:?} center={center:?}"));
        }
    }
    Ok("ell=1 recovery distance equals Hamming distance".into())
}

fn check_plurality_monotone(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 3);
    for _ in 0..cfg.trials.max(50) {
        let q = rng.gen_range(2..=5u8);
        let l = rng.gen_range(1..=8);
        let xs: Vec<u8> = (0..l).map(|_| rng.gen_range(1..=q)).collect();
        let mut prev = 0;
        for ell in 1..=q as usize {
            let p = plurality(&xs, q, ell).map_err(err)?;
            if p < prev {
                return Err(format!("not monotone at {xs:?}, ell={ell}"));
            }
            prev = p;
        }
        if prev != xs.len() {
            return Err(format!("ell=q must cover everything at {xs:?}"));
        }
    }
    Ok("plurality nondecreasing in ell, total at ell=q".into())
}

fn check_multinomial_theorem(_cfg: &SuiteConfig) -> Result<String, String> {
    use num_bigint::BigInt;
    for q in 1..=5usize {
        for l in 0..=8usize {
            let sum: BigInt = compositions(q, l).iter().map(multinomial).sum();
            if sum != BigInt::from(q).pow(l as u32) {
                return Err(format!("q={q} L={l}: sum {sum}"));
            }
        }
    }
    Ok("composition-weighted counts sum to q^L for q<=5, L<=8".into())
}

fn check_averaging_idempotent(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 4);
    for _ in 0..cfg.trials.max(50) {
        let k = rng.gen_range(2..=6);
        let w = sampling::simplex_rational(&mut rng, k, 64, false);
        let subset: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
        if subset.is_empty() {
            continue;
        }
        let once = w.average_out(&subset).map_err(err)?;
        let twice = once.average_out(&subset).map_err(err)?;
        if once != twice {
            return Err("averaging-out is not idempotent".into());
        }
    }
    Ok("averaging-out idempotent on its subset".into())
}

fn check_averaging_convergence(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 5);
    let k = 6usize;
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
    let s: f64 = raw.iter().sum();
    let mut w = SimplexPoint::floats(raw.into_iter().map(|x| x / s).collect()).map_err(err)?;
    for _ in 0..200 {
        let i = rng.gen_range(0..k);
        let mut j = rng.gen_range(0..k);
        while j == i {
            j = rng.gen_range(0..k);
        }
        w = w.average_out(&[i, j]).map_err(err)?;
    }
    let target = 1.0 / k as f64;
    let dev = w
        .float_entries()
        .iter()
        .map(|e| (e - target).abs())
        .fold(0.0f64, f64::max);
    if dev >= 1e-6 {
        return Err(format!("max deviation {dev} after 200 rounds"));
    }
    Ok(format!("200 pair-averaging rounds reach uniform within {dev:.2e}"))
}

fn check_concentrated_endpoint(_cfg: &SuiteConfig) -> Result<String, String> {
    for q in 3..=5u8 {
        for ell in 1..q as usize {
            let p = ratio(ell as i64, q as i64);
            let dist = SimplexPoint::concentrated(q, ell, &p).map_err(err)?;
            if dist != SimplexPoint::uniform(q as usize).map_err(err)? {
                return Err(format!("q={q} ell={ell}: endpoint not uniform"));
            }
        }
    }
    Ok("concentrated family at p = ell/q is the uniform distribution".into())
}

fn check_radius_sandwich(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 6);
    for trial in 0..cfg.trials {
        let q = 3u8;
        let ell = if trial % 2 == 0 { 1 } else { 2 };
        let n = rng.gen_range(1..=6);
        let l = rng.gen_range(2..=4.min(3usize.pow(n as u32)));
        let rows = random_list(&mut rng, q, n, l);
        let views: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        let avg = average_radius(q, &views, ell).map_err(err)?;
        let mut max_weighted = avg.clone();
        for _ in 0..20 {
            let omega = sampling::simplex_rational(&mut rng, l, 64, false);
            let w = weighted_average_radius(q, &views, &omega, ell).map_err(err)?;
            if w > max_weighted {
                max_weighted = w;
            }
        }
        let (relaxed, _) = lp::relaxed_radius(q, &views, ell).map_err(err)?;
        let (cheb, _) = chebyshev_radius(q, &views, ell, &cfg.budget).map_err(err)?;
        let (avg_f, maxw_f, cheb_f) = (to_f64(&avg), to_f64(&max_weighted), to_f64(&cheb));
        if avg > max_weighted
            || maxw_f > relaxed + 1e-6
            || relaxed > cheb_f + 1e-6
            || cheb_f > relaxed + l as f64 / n as f64 + 1e-6
        {
            return Err(format!(
                "sandwich broken: avg={avg_f} maxw={maxw_f} relaxed={relaxed} cheb={cheb_f}"
            ));
        }
    }
    Ok("average <= weighted <= relaxed <= Chebyshev <= relaxed + L/n".into())
}

fn check_weighted_uniform_equals_average(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 7);
    for trial in 0..cfg.trials {
        let q = 3u8;
        let ell = if trial % 2 == 0 { 1 } else { 2 };
        let n = rng.gen_range(1..=6);
        let l = rng.gen_range(2..=4);
        let rows: Vec<Vec<u8>> = (0..l)
            .map(|_| (0..n).map(|_| rng.gen_range(1..=q)).collect())
            .collect();
        let views: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        let uni = SimplexPoint::uniform(l).map_err(err)?;
        if weighted_average_radius(q, &views, &uni, ell).map_err(err)?
            != average_radius(q, &views, ell).map_err(err)?
        {
            return Err("uniform weighting must reproduce the average radius".into());
        }
    }
    Ok("uniform weighting reproduces the average radius exactly".into())
}

fn check_weighted_type_invariance(cfg: &SuiteConfig) -> Result<String, String> {
    use rand::seq::SliceRandom;
    let mut rng = rng_for(cfg, 8);
    for trial in 0..cfg.trials {
        let q = 3u8;
        let ell = if trial % 2 == 0 { 1 } else { 2 };
        let n = rng.gen_range(2..=6);
        let l = rng.gen_range(2..=4);
        let rows: Vec<Vec<u8>> = (0..l)
            .map(|_| (0..n).map(|_| rng.gen_range(1..=q)).collect())
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let shuffled: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| perm.iter().map(|&j| r[j]).collect())
            .collect();
        let omega = sampling::simplex_rational(&mut rng, l, 64, false);
        let v1: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        let v2: Vec<&[u8]> = shuffled.iter().map(|r| r.as_slice()).collect();
        if weighted_average_radius(q, &v1, &omega, ell).map_err(err)?
            != weighted_average_radius(q, &v2, &omega, ell).map_err(err)?
        {
            return Err("column permutation changed the weighted radius".into());
        }
    }
    Ok("weighted radius depends on the list only through its type".into())
}

fn check_embedding_vertices(_cfg: &SuiteConfig) -> Result<String, String> {
    for q in 3..=5u8 {
        for ell in 1..q as usize {
            let space = SubsetSpace::new(q, ell).map_err(err)?;
            for a in 0..space.len() {
                let mut entries = vec![rat_int(0); space.len()];
                entries[a] = rat_int(1);
                let eta = SimplexPoint::exact(entries).map_err(err)?;
                for x in 1..=q {
                    let expected = if space.set_contains(a, x) { 0 } else { 1 };
                    if embedded_distance(q, ell, x, &eta).map_err(err)? != rat_int(expected) {
                        return Err(format!("q={q} ell={ell} x={x} A#{a}"));
                    }
                }
            }
        }
    }
    Ok("vertex centers reproduce the 0/1 recovery distance, q<=5".into())
}

fn check_minimax_duality(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 9);
    let mut worst: f64 = 0.0;
    for trial in 0..cfg.trials {
        let q = 3u8;
        let ell = if trial % 2 == 0 { 1 } else { 2 };
        let n = rng.gen_range(1..=6);
        let l = rng.gen_range(2..=4.min(3usize.pow(n as u32)));
        let rows = random_list(&mut rng, q, n, l);
        let views: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        let (relaxed, _) = lp::relaxed_radius(q, &views, ell).map_err(err)?;
        let ty = tuple_type(q, &views).map_err(err)?;
        let dual = lp::relaxed_radius_by_weights(&ty, ell).map_err(err)?;
        worst = worst.max((relaxed - dual).abs());
        if (relaxed - dual).abs() > 1e-6 {
            return Err(format!("minimax gap {} at trial {trial}", (relaxed - dual).abs()));
        }
    }
    Ok(format!("minimax equality within 1e-6 (worst gap {worst:.2e})"))
}

fn check_bfs_and_rounding(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 10);
    for trial in 0..cfg.trials {
        let q = 3u8;
        let ell = if trial % 2 == 0 { 1 } else { 2 };
        let n = rng.gen_range(1..=6);
        let l = rng.gen_range(2..=4.min(3usize.pow(n as u32)));
        let rows = random_list(&mut rng, q, n, l);
        let views: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
        let (relaxed, center) = lp::relaxed_radius(q, &views, ell).map_err(err)?;
        if center.vertex_count() + l < n {
            return Err(format!(
                "only {} vertex blocks for n={n}, L={l}",
                center.vertex_count()
            ));
        }
        let (_, rounded) = lp::round_center(&center, &views).map_err(err)?;
        if to_f64(&rounded) * n as f64 > relaxed * n as f64 + l as f64 + 1e-5 {
            return Err(format!(
                "rounded distance {} above relaxed*n + L = {}",
                to_f64(&rounded) * n as f64,
                relaxed * n as f64 + l as f64
            ));
        }
    }
    Ok("centers have >= n-L vertex blocks; rounding loses at most L".into())
}

fn check_lp_self_consistency(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 11);
    let mut optimal = 0;
    for _ in 0..cfg.trials.max(30) {
        let m = rng.gen_range(1..=4usize);
        let nv = rng.gen_range(m..=m + 4);
        // rows: Ax <= b with b >= 0, slack-augmented; x = 0 is feasible
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..m {
            let mut row: Vec<f64> = (0..nv).map(|_| rng.gen_range(-3..=3) as f64).collect();
            row.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
            rows.push(row);
            rhs.push(rng.gen_range(0..=6) as f64);
        }
        let mut objective: Vec<f64> =
            (0..nv).map(|_| rng.gen_range(-3..=3) as f64).collect();
        objective.extend(vec![0.0; m]);
        let p = lp::LpProblem::new(objective, rows, rhs).map_err(err)?;
        let sol = lp::solve(&p);
        match sol.status {
            lp::LpStatus::Optimal => {
                optimal += 1;
                if sol.nonzero_count > p.num_rows() {
                    return Err(format!(
                        "{} nonzeros exceed row count {}",
                        sol.nonzero_count,
                        p.num_rows()
                    ));
                }
                let resid = lp::complementary_slackness_residual(&p, &sol);
                if resid > 1e-7 {
                    return Err(format!("complementary slackness residual {resid}"));
                }
            }
            lp::LpStatus::Unbounded => {}
            lp::LpStatus::Infeasible => {
                return Err("feasible-by-construction LP reported infeasible".into())
            }
        }
    }
    Ok(format!(
        "BFS size and complementary slackness on {optimal} optimal LPs"
    ))
}

fn check_threshold_routes(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 12);
    for _ in 0..cfg.trials.min(30) {
        let q = rng.gen_range(3..=4u8);
        let ell = rng.gen_range(1..q as usize);
        let l = rng.gen_range(2..=5usize);
        let p = sampling::simplex_rational(&mut rng, q as usize, 24, false);
        let uni = SimplexPoint::uniform(l).map_err(err)?;
        let direct = expected_weighted_radius(&p, &uni, ell, &cfg.budget).map_err(err)?;
        let collapsed = expected_uniform_radius_by_composition(&p, ell, l).map_err(err)?;
        if direct != collapsed {
            return Err(format!("route mismatch at q={q} ell={ell} L={l}"));
        }
    }
    for (q, ell, l) in [(2u8, 1usize, 2usize), (3, 1, 2), (3, 2, 3), (4, 2, 4)] {
        let uq = SimplexPoint::uniform(q as usize).map_err(err)?;
        let ul = SimplexPoint::uniform(l).map_err(err)?;
        if zero_rate_threshold(q, ell, l).map_err(err)?
            != expected_weighted_radius(&uq, &ul, ell, &cfg.budget).map_err(err)?
        {
            return Err(format!("threshold mismatch at q={q} ell={ell} L={l}"));
        }
    }
    Ok("pattern enumeration and composition collapse agree exactly".into())
}

fn check_threshold_monotone(_cfg: &SuiteConfig) -> Result<String, String> {
    // growing the list only makes the noise floor worse: p*(q,1,L) climbs
    // with L and stays strictly below its large-list limit 1 - 1/q
    for q in 2..=4u8 {
        let mut prev = rat_int(0);
        for l in 2..=8usize {
            let t = zero_rate_threshold(q, 1, l).map_err(err)?;
            if t < prev {
                return Err(format!("threshold dropped at q={q} L={l}"));
            }
            if t >= rat_int(1) - ratio(1, q as i64) {
                return Err(format!("threshold at or above its limit at q={q} L={l}"));
            }
            prev = t;
        }
    }
    Ok("p*(q,1,L) nondecreasing in L, strictly below 1 - 1/q".into())
}

fn check_monte_carlo(cfg: &SuiteConfig) -> Result<String, String> {
    let p = SimplexPoint::exact(vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]).map_err(err)?;
    let w = SimplexPoint::exact(vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]).map_err(err)?;
    let exact = to_f64(&expected_weighted_radius(&p, &w, 1, &cfg.budget).map_err(err)?);
    let (est, se) = monte_carlo_radius(&p, &w, 1, 100_000, cfg.seed).map_err(err)?;
    if (est - exact).abs() > 4.0 * se + 1e-9 {
        return Err(format!("estimate {est} vs exact {exact}, se {se}"));
    }
    Ok(format!("100k samples within 4 standard errors ({se:.1e})"))
}

fn check_code_average_identity(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 13);
    for _ in 0..10 {
        let q = 3u8;
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(2..=3usize);
        let ell = rng.gen_range(1..=2usize);
        let code = sampling::codebook(&mut rng, q, n, m);
        let omega = SimplexPoint::exact(vec![ratio(2, 3), ratio(1, 3)]).map_err(err)?;
        let rep = code_average_bound(&code, &omega, ell, &cfg.budget).map_err(err)?;
        let mut direct = rat_int(0);
        for i in 0..m {
            for j in 0..m {
                let views: Vec<&[u8]> = vec![code.row(i), code.row(j)];
                direct += weighted_average_radius(q, &views, &omega, ell).map_err(err)?;
            }
        }
        direct /= rat_int((m * m) as i64);
        if rep.expectation != direct {
            return Err("column-wise expectation differs from the tuple average".into());
        }
        if !rep.holds {
            return Err(format!("bound violated: {rep:?}"));
        }
    }
    Ok("tuple-averaged radius equals (1/n) sum_j f(P_j, omega); bound holds".into())
}

fn check_balanced_types(cfg: &SuiteConfig) -> Result<String, String> {
    for m in 1..=2usize {
        for l in 2..=3usize {
            let spec = BalancedCodeSpec::new(3, 1, l, m).map_err(err)?;
            let code = generate(&spec, &cfg.budget).map_err(err)?;
            let mut idx: Vec<usize> = (0..l).collect();
            // a couple of distinct tuples suffice here; the acceptance
            // suite checks all of them
            for _ in 0..2 {
                let views = code.list(&idx).map_err(err)?;
                let ty = tuple_type(3, &views).map_err(err)?;
                for (pattern, &count) in ty.counts() {
                    let mut tallies = vec![0usize; 3];
                    for &x in pattern {
                        tallies[(x - 1) as usize] += 1;
                    }
                    let predicted =
                        hypergeometric_type_weight(&spec, &tallies).map_err(err)?;
                    if ratio(count as i64, code.n() as i64) != predicted {
                        return Err(format!("type mismatch at m={m} L={l}"));
                    }
                }
                idx = idx.iter().map(|&i| i + 1).collect();
                if *idx.last().unwrap() >= code.len() {
                    break;
                }
            }
        }
    }
    Ok("balanced-code tuple types equal the hypergeometric weights".into())
}

fn check_balanced_radius_formula(cfg: &SuiteConfig) -> Result<String, String> {
    for m in 1..=2usize {
        for (ell, l) in [(1usize, 2usize), (1, 3), (2, 3)] {
            let spec = BalancedCodeSpec::new(3, ell, l, m).map_err(err)?;
            let code = generate(&spec, &cfg.budget).map_err(err)?;
            let expected = rat_int(1) - exact_expected_plurality(&spec).map_err(err)?;
            let idx: Vec<usize> = (0..l).collect();
            let views = code.list(&idx).map_err(err)?;
            if average_radius(3, &views, ell).map_err(err)? != expected {
                return Err(format!("radius formula mismatch at m={m} ell={ell} L={l}"));
            }
        }
    }
    Ok("list average radius equals 1 - expected plurality".into())
}

fn check_tradeoff(_cfg: &SuiteConfig) -> Result<String, String> {
    let rows = tradeoff_table(3, 1, 2, &[1, 2, 3, 4]).map_err(err)?;
    for w in rows.windows(2) {
        if w[0].p_exact <= w[1].p_exact {
            return Err("radius not strictly decreasing in m".into());
        }
        if w[0].m2_residual < w[1].m2_residual {
            return Err("|residual| * m^2 increased".into());
        }
    }
    let r1 = to_f64(&rows[0].residual);
    let r2 = to_f64(&rows[1].residual);
    let r4 = to_f64(&rows[3].residual);
    for ratio in [r1 / r2, r2 / r4] {
        if !(2.5..=6.0).contains(&ratio) {
            return Err(format!("doubling m gave residual ratio {ratio}"));
        }
    }
    Ok("residual shrinks ~4x per doubling of m; m^2-scaled residual bounded".into())
}

fn check_excess_coefficient(_cfg: &SuiteConfig) -> Result<String, String> {
    if radius_excess_coefficient(3, 1, 2).map_err(err)?.value != ratio(1, 9) {
        return Err("c(3,1,2) != 1/9".into());
    }
    for q in 3..=5u8 {
        if radius_excess_coefficient(q, 1, 2).map_err(err)?.value
            != ratio(q as i64 - 1, 2 * q as i64 * q as i64)
        {
            return Err(format!("pair coefficient mismatch at q={q}"));
        }
        for ell in 1..=2usize {
            for l in (ell + 1)..=6usize {
                let c = radius_excess_coefficient(q, ell, l).map_err(err)?;
                if !c.value.is_positive() {
                    return Err(format!("coefficient not positive at q={q} ell={ell} L={l}"));
                }
            }
        }
    }
    Ok("coefficient exact at known points and positive across the sweep".into())
}

fn check_verifier_agreement(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 14);
    for trial in 0..cfg.trials {
        let q = 3u8;
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=6);
        let l = rng.gen_range(2..=3usize);
        let ell = if trial % 2 == 0 { 1 } else { 2 };
        let code = sampling::codebook(&mut rng, q, n, m);
        let p = ratio(rng.gen_range(0..=4i64), 4);
        let a = is_list_recoverable(&code, &p, ell, l, &cfg.budget).map_err(err)?;
        let b = is_list_recoverable_via_radius(&code, &p, ell, l, &cfg.budget).map_err(err)?;
        if a.is_pass() != b.is_pass() {
            return Err(format!("verdict disagreement at trial {trial}"));
        }
    }
    Ok("ball search and tuple-radius verdicts agree".into())
}

fn check_verifier_monotone(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 15);
    for _ in 0..cfg.trials.min(20) {
        let code = sampling::codebook(&mut rng, 3, 4, 5);
        let mut failed = false;
        for num in 0..=8i64 {
            let v = is_list_recoverable(&code, &ratio(num, 8), 1, 2, &cfg.budget)
                .map_err(err)?;
            if failed && v.is_pass() {
                return Err("verdict flipped back to PASS as p grew".into());
            }
            failed = !v.is_pass();
        }
    }
    Ok("PASS persists below any passing p, FAIL persists above".into())
}

fn check_balanced_verdicts(cfg: &SuiteConfig) -> Result<String, String> {
    for (ell, l) in [(1usize, 2usize), (2, 3)] {
        let spec = BalancedCodeSpec::new(3, ell, l, 1).map_err(err)?;
        let code = generate(&spec, &cfg.budget).map_err(err)?;
        let p_star = zero_rate_threshold(3, ell, l).map_err(err)?;
        let p_exact = rat_int(1) - exact_expected_plurality(&spec).map_err(err)?;
        if !is_list_recoverable(&code, &p_star, ell, l, &cfg.budget)
            .map_err(err)?
            .is_pass()
        {
            return Err(format!("balanced code rejected at the threshold (ell={ell})"));
        }
        if is_list_recoverable(&code, &p_exact, ell, l, &cfg.budget)
            .map_err(err)?
            .is_pass()
        {
            return Err(format!("balanced code passed at its exact radius (ell={ell})"));
        }
    }
    Ok("m=1 code passes at p* and fails at its exact radius".into())
}

fn check_abundance_trend(cfg: &SuiteConfig) -> Result<String, String> {
    let eps = ratio(1, 15);
    let mut prev = rat_int(-1);
    for m in 1..=3usize {
        let spec = BalancedCodeSpec::new(3, 1, 2, m).map_err(err)?;
        let code = generate(&spec, &cfg.budget).map_err(err)?;
        let stats = tuple_type_statistics(&code, 1, 2, &eps, &cfg.budget, cfg.seed)
            .map_err(err)?;
        let frac = stats.fraction_close.ok_or("no tuples seen")?;
        if frac < prev {
            return Err(format!("near-uniform fraction dropped at m={m}"));
        }
        prev = frac;
    }
    if prev != rat_int(1) {
        return Err("largest m should have every tuple near uniform".into());
    }
    Ok("fraction of near-uniform tuples grows to 1 over m=1..3".into())
}

fn check_projection(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 16);
    let mut certified = 0;
    // a clustered code always satisfies the hypothesis; random codes
    // exercise both outcomes
    let clustered = Codebook::new(
        3,
        4,
        vec![
            vec![1, 1, 1, 1],
            vec![1, 1, 1, 2],
            vec![1, 1, 2, 1],
            vec![1, 2, 1, 1],
            vec![2, 1, 1, 1],
            vec![1, 1, 2, 2],
        ],
    )
    .map_err(err)?;
    let run_one = |code: &Codebook, coords: &[usize]| -> Result<bool, String> {
        match projection_subcode(code, coords, 1, &cfg.budget).map_err(err)? {
            ProjectionOutcome::Certified(cert) => {
                if !cert.certified {
                    return Err(format!("certificate bound violated: {cert:?}"));
                }
                if cert.subcode_rows.len() * 3 < code.len() {
                    return Err("pigeonhole class smaller than |code|/q".into());
                }
                Ok(true)
            }
            ProjectionOutcome::HypothesisFails { .. } => Ok(false),
        }
    };
    for a_len in 1..=clustered.n() {
        let coords: Vec<usize> = (0..a_len).collect();
        if run_one(&clustered, &coords)? {
            certified += 1;
        }
    }
    for _ in 0..cfg.trials.min(40) {
        let n = rng.gen_range(3..=6);
        let m = rng.gen_range(6..=9);
        let code = sampling::codebook(&mut rng, 3, n, m);
        let a_len = rng.gen_range(1..=n);
        let coords: Vec<usize> = (0..a_len).collect();
        if run_one(&code, &coords)? {
            certified += 1;
        }
    }
    if certified == 0 {
        return Err("no instance satisfied the projection hypothesis".into());
    }
    Ok(format!("{certified} certificates verified, bound never violated"))
}

fn check_increase_criterion(cfg: &SuiteConfig) -> Result<String, String> {
    let mut rng = rng_for(cfg, 17);
    let mut strict = 0;
    let mut checked = 0;
    for _ in 0..cfg.trials.min(25) {
        let q = rng.gen_range(3..=4u8);
        let ell = rng.gen_range(1..q as usize);
        let l = rng.gen_range(2..=4usize);
        let p = sampling::simplex_rational(&mut rng, q as usize, 24, true);
        let omega = sampling::simplex_rational(&mut rng, l, 24, false);
        let entries = omega.exact_entries().map_err(err)?;
        if entries[l - 2] == entries[l - 1] {
            continue;
        }
        checked += 1;
        let rep = averaging_criterion(&p, &omega, ell, &cfg.budget).map_err(err)?;
        if !rep.holds_everywhere {
            return Err(format!("pointwise criterion violated: {:?}", rep.violations));
        }
        if rep.f_averaged < rep.f_original {
            return Err("averaging decreased the functional".into());
        }
        if rep.strict_on_support {
            strict += 1;
        }
    }
    Ok(format!(
        "criterion held pointwise on {checked} weightings ({strict} strictly)"
    ))
}

fn check_uniform_maximality(cfg: &SuiteConfig) -> Result<String, String> {
    for (q, l) in [(3u8, 2usize), (3, 3), (4, 2)] {
        let p = SimplexPoint::uniform(q as usize).map_err(err)?;
        let rep = uniform_weight_maximality(&p, 1, l, cfg.trials.min(100), cfg.seed, &cfg.budget)
            .map_err(err)?;
        if !rep.ok() {
            return Err(format!("maximality failed at q={q} L={l}: {:?}", rep.violations));
        }
    }
    Ok("f(P, omega) < f(P, U_L) strictly for sampled omega != U_L".into())
}

fn check_schur(cfg: &SuiteConfig) -> Result<String, String> {
    for (q, ell, l) in [(3u8, 1usize, 2usize), (3, 2, 3), (4, 2, 2)] {
        let lo = ratio(ell as i64, q as i64);
        let mut grid = Vec::new();
        for k in 0..=24i64 {
            let p = ratio(k, 24);
            if p >= lo && p <= rat_int(1) {
                grid.push(p);
            }
        }
        let rep = schur_concavity_report(
            q,
            ell,
            l,
            &grid,
            cfg.trials.min(100),
            cfg.seed,
            &cfg.budget,
        )
        .map_err(err)?;
        if !rep.ok() {
            return Err(format!(
                "schur/concavity failed at q={q} ell={ell} L={l}: monotone={} concave={} dominated={}",
                rep.monotone_ok, rep.concave_ok, rep.domination_ok
            ));
        }
    }
    Ok("domination, monotonicity and midpoint concavity all exact".into())
}

/// Every named check, in a stable order.
pub fn all_checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("core::hamming-metric", check_hamming_metric),
        ("core::recovery-distance-singletons", check_recovery_distance_singletons),
        ("core::plurality-monotone", check_plurality_monotone),
        ("core::multinomial-theorem", check_multinomial_theorem),
        ("distributions::averaging-idempotent", check_averaging_idempotent),
        ("distributions::averaging-converges", check_averaging_convergence),
        ("distributions::concentrated-endpoint", check_concentrated_endpoint),
        ("radii::sandwich", check_radius_sandwich),
        ("radii::weighted-uniform-average", check_weighted_uniform_equals_average),
        ("radii::weighted-type-invariance", check_weighted_type_invariance),
        ("radii::embedding-vertices", check_embedding_vertices),
        ("lp::minimax-duality", check_minimax_duality),
        ("lp::bfs-and-rounding", check_bfs_and_rounding),
        ("lp::self-consistency", check_lp_self_consistency),
        ("thresholds::route-agreement", check_threshold_routes),
        ("thresholds::monotone-in-list-size", check_threshold_monotone),
        ("thresholds::monte-carlo", check_monte_carlo),
        ("thresholds::code-average-identity", check_code_average_identity),
        ("thresholds::increase-criterion", check_increase_criterion),
        ("thresholds::uniform-maximality", check_uniform_maximality),
        ("thresholds::schur-concavity", check_schur),
        ("construction::balanced-types", check_balanced_types),
        ("construction::radius-formula", check_balanced_radius_formula),
        ("construction::tradeoff", check_tradeoff),
        ("construction::excess-coefficient", check_excess_coefficient),
        ("verifier::agreement", check_verifier_agreement),
        ("verifier::monotone", check_verifier_monotone),
        ("verifier::balanced-verdicts", check_balanced_verdicts),
        ("verifier::abundance-trend", check_abundance_trend),
        ("verifier::projection", check_projection),
    ]
}

/// Run the whole suite with the given configuration.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    all_checks()
        .into_iter()
        .map(|(name, f)| match f(cfg) {
            Ok(detail) => CheckOutcome { name, passed: true, detail },
            Err(detail) => CheckOutcome { name, passed: false, detail },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_is_green() {
        let cfg = SuiteConfig { trials: 12, ..SuiteConfig::default() };
        let outcomes = run_all(&cfg);
        let failures: Vec<&CheckOutcome> =
            outcomes.iter().filter(|o| !o.passed).collect();
        assert!(failures.is_empty(), "failing checks: {failures:?}");
    }

    #[test]
    fn suite_is_deterministic() {
        let cfg = SuiteConfig { trials: 5, ..SuiteConfig::default() };
        let a = run_all(&cfg);
        let b = run_all(&cfg);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.passed, y.passed);
            assert_eq!(x.detail, y.detail);
        }
    }
}
