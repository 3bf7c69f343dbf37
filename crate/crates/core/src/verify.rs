//! Randomized and exhaustive verification tasks, shared by the CLI's
//! `verify-small` command and the acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chirotope::{enumerate_systems, Label, PseudoConfiguration};
use crate::convexity::{convex_position, extreme_points, hull_cycle, lex_min_convex_of_size};
use crate::error::Result;
use crate::generate::gen_realizable;
use crate::spike::{chain_stats, decompose, relation_in_spike, SpikeDecomposition};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub task: String,
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl VerifyReport {
    fn new(task: &str, trials: usize, checks: usize, failures: Vec<String>) -> Self {
        VerifyReport {
            schema_version: 1,
            task: task.to_string(),
            trials,
            checks,
            passed: failures.is_empty(),
            failures,
        }
    }
}

/// Exhaustive 5-point theorem: every valid 5-point system contains a
/// convex quadruple, and the triangle-with-interior 4-point system has
/// none, pinning the threshold for convex quadruples at exactly 5 points.
pub fn verify_b4() -> Result<VerifyReport> {
    let mut failures = Vec::new();
    let systems = enumerate_systems(5)?;
    let mut checks = 0;
    for cfg in &systems {
        checks += 1;
        if lex_min_convex_of_size(cfg, 4).is_none() {
            failures.push(format!(
                "5-point system {} has no convex quadruple",
                cfg.sign_string()
            ));
        }
    }
    let witness = crate::ccs::parse_ccs("4\n++-+\n", true)?;
    checks += 1;
    if lex_min_convex_of_size(&witness, 4).is_some() {
        failures.push("the 4-point witness ++-+ should have no convex quadruple".into());
    }
    Ok(VerifyReport::new("b4", systems.len(), checks, failures))
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn run_trials<T: Send>(
    trials: usize,
    job: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(job).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(job).collect()
    }
}

/// Visit all `size`-subsets of `0..m` in lexicographic order.
fn for_each_subset(m: usize, size: usize, mut f: impl FnMut(&[Label])) {
    if size > m {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + m - size {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Carathéodory agreement: the every-four-elements test matches the
/// hull-extremes test (all members extreme) on every subset of size <= 7,
/// over random realizable configurations and all 5- and 6-point systems.
pub fn verify_caratheodory(trials: usize, seed: u64) -> Result<VerifyReport> {
    let results = run_trials(trials, |t| {
        let mut rng = trial_rng(seed, t);
        let n = rng.random_range(6..=10usize);
        let cfg = match gen_realizable(n, rng.random()) {
            Ok(c) => c,
            Err(e) => return (0, vec![format!("trial {t}: generator failed: {e}")]),
        };
        let mut checks = 0;
        let mut failures = Vec::new();
        caratheodory_scan(&cfg, &mut checks, &mut failures);
        (checks, failures)
    });
    let mut checks = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        checks += c;
        failures.extend(f);
    }
    for n in [5usize, 6] {
        for cfg in enumerate_systems(n)? {
            caratheodory_scan(&cfg, &mut checks, &mut failures);
        }
    }
    failures.truncate(32);
    Ok(VerifyReport::new("caratheodory", trials, checks, failures))
}

fn caratheodory_scan(cfg: &PseudoConfiguration, checks: &mut usize, failures: &mut Vec<String>) {
    let n = cfg.n();
    for size in 3..=n.min(7) {
        for_each_subset(n, size, |subset| {
            *checks += 1;
            let four_test = convex_position(cfg, subset);
            let hull_test = extreme_points(cfg, subset).len() == subset.len();
            if four_test != hull_test {
                failures.push(format!(
                    "{}: subset {:?} splits the two convexity tests",
                    cfg.sign_string(),
                    subset
                ));
            }
        });
    }
}

/// A reproducible decomposition for randomized spike checks: a random
/// realizable configuration and four spread-out hull vertices as X.
pub fn random_decomposition(
    seed: u64,
    trial: usize,
    max_n: usize,
) -> Result<(PseudoConfiguration, SpikeDecomposition)> {
    let mut rng = trial_rng(seed, trial);
    let n = rng.random_range(12..=max_n.max(12));
    let cfg = gen_realizable(n, rng.random())?;
    let quad = spread_hull_quad(&cfg)
        .or_else(|| lex_min_convex_of_size(&cfg, 4))
        .ok_or(crate::error::Error::NoConvexKSet { k: 4 })?;
    let x = hull_cycle(&cfg, &quad)?;
    let d = decompose(&cfg, &x)?;
    Ok((cfg, d))
}

/// Four labels spread evenly along the Euclidean hull of the stored
/// coordinates; requires the configuration to carry coordinates.
fn spread_hull_quad(cfg: &PseudoConfiguration) -> Option<Vec<Label>> {
    use num_traits::ToPrimitive;
    let coords = cfg.coords()?;
    let pts: Option<Vec<(i64, i64)>> = coords
        .iter()
        .map(|(x, y)| Some((x.to_i64()?, y.to_i64()?)))
        .collect();
    let hull = euclidean_hull(&pts?);
    if hull.len() < 4 {
        return None;
    }
    let h = hull.len();
    let mut quad: Vec<Label> = (0..4).map(|i| hull[i * h / 4]).collect();
    quad.sort_unstable();
    quad.dedup();
    (quad.len() == 4).then_some(quad)
}

/// Andrew's monotone chain on exact integer coordinates; returns hull
/// labels in counterclockwise order.
fn euclidean_hull(pts: &[(i64, i64)]) -> Vec<Label> {
    let mut order: Vec<Label> = (0..pts.len()).collect();
    order.sort_unstable_by_key(|&i| pts[i]);
    let cross = |o: Label, a: Label, b: Label| -> i128 {
        let (ox, oy) = pts[o];
        let (ax, ay) = pts[a];
        let (bx, by) = pts[b];
        (ax - ox) as i128 * (by - oy) as i128 - (ay - oy) as i128 * (bx - ox) as i128
    };
    let half = |iter: &mut dyn Iterator<Item = Label>| {
        let mut chain: Vec<Label> = Vec::new();
        for i in iter {
            while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], i) <= 0
            {
                chain.pop();
            }
            chain.push(i);
        }
        chain.pop();
        chain
    };
    let mut hull = half(&mut order.iter().copied());
    hull.extend(half(&mut order.iter().rev().copied()));
    hull
}

/// Trichotomy: over random decompositions, every pair inside a spike is
/// related by exactly one of the four order relations.
pub fn verify_trichotomy(trials: usize, seed: u64) -> Result<VerifyReport> {
    let results = run_trials(trials, |t| {
        let (cfg, d) = match random_decomposition(seed, t, 40) {
            Ok(v) => v,
            Err(e) => return (0, vec![format!("trial {t}: {e}")]),
        };
        let mut checks = 0;
        let mut failures = Vec::new();
        for i in 0..d.k() {
            let spike = &d.spikes[i];
            for (ai, &p) in spike.iter().enumerate() {
                for &q in &spike[ai + 1..] {
                    checks += 1;
                    match relation_in_spike(&cfg, &d, i, p, q) {
                        Ok((kind, ord)) => {
                            // converse arguments give the converse relation
                            if relation_in_spike(&cfg, &d, i, q, p).ok()
                                != Some((kind, ord.reverse()))
                            {
                                failures
                                    .push(format!("trial {t}: non-converse pair ({p},{q})"));
                            }
                        }
                        Err(e) => failures.push(format!("trial {t}: {e}")),
                    }
                }
            }
        }
        (checks, failures)
    });
    let mut checks = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        checks += c;
        failures.extend(f);
    }
    failures.truncate(32);
    Ok(VerifyReport::new("trichotomy", trials, checks, failures))
}

/// Separation: vertically comparable pairs split the two neighboring
/// spikes; horizontally comparable pairs keep every non-adjacent spike on
/// one side.
pub fn verify_separation(trials: usize, seed: u64) -> Result<VerifyReport> {
    use crate::spike::OrderKind;
    let results = run_trials(trials, |t| {
        let (cfg, d) = match random_decomposition(seed, t, 40) {
            Ok(v) => v,
            Err(e) => return (0, vec![format!("trial {t}: {e}")]),
        };
        let k = d.k();
        let mut checks = 0;
        let mut failures = Vec::new();
        for i in 0..k {
            let spike = &d.spikes[i];
            for (ai, &p) in spike.iter().enumerate() {
                for &q in &spike[ai + 1..] {
                    let Ok((kind, _)) = relation_in_spike(&cfg, &d, i, p, q) else {
                        failures.push(format!("trial {t}: unrelated pair ({p},{q})"));
                        continue;
                    };
                    match kind {
                        OrderKind::Vertical => {
                            // every point of spike i-1 sees (p,q) with the
                            // opposite sign from every point of spike i+1
                            let prev = &d.spikes[(i + k - 1) % k];
                            let next = &d.spikes[(i + 1) % k];
                            for &r in prev {
                                for &s in next {
                                    checks += 1;
                                    if cfg.orient(p, q, r) == cfg.orient(p, q, s) {
                                        failures.push(format!(
                                            "trial {t}: spikes {} and {} not separated by ({p},{q})",
                                            (i + k - 1) % k,
                                            (i + 1) % k
                                        ));
                                    }
                                }
                            }
                        }
                        OrderKind::Horizontal => {
                            // spikes other than i-1, i, i+1 all on one side
                            let mut side = None;
                            for j in 0..k {
                                if j == i || j == (i + 1) % k || j == (i + k - 1) % k {
                                    continue;
                                }
                                for &r in &d.spikes[j] {
                                    checks += 1;
                                    let s = cfg.orient(p, q, r);
                                    match side {
                                        None => side = Some(s),
                                        Some(prev_s) if prev_s != s => {
                                            failures.push(format!(
                                                "trial {t}: far spikes split by ({p},{q})"
                                            ));
                                        }
                                        _ => {}
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        (checks, failures)
    });
    let mut checks = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        checks += c;
        failures.extend(f);
    }
    failures.truncate(32);
    Ok(VerifyReport::new("separation", trials, checks, failures))
}

/// Joining lemmas: right+left witness chains of adjacent spikes and
/// alternating unions of inner chains are in convex position.
pub fn verify_joins(trials: usize, seed: u64) -> Result<VerifyReport> {
    let results = run_trials(trials, |t| {
        let (cfg, d) = match random_decomposition(seed, t, 40) {
            Ok(v) => v,
            Err(e) => return (0, vec![format!("trial {t}: {e}")]),
        };
        let k = d.k();
        let mut checks = 0;
        let mut failures = Vec::new();
        let stats: Vec<crate::spike::ChainStats> =
            match (0..k).map(|i| chain_stats(&cfg, &d, i)).collect::<Result<_>>() {
                Ok(s) => s,
                Err(e) => return (0, vec![format!("trial {t}: {e}")]),
            };
        let mut check_join = |name: &str, members: Vec<Label>| {
            if members.len() >= 3 {
                checks += 1;
                if !convex_position(&cfg, &members) {
                    failures.push(format!("trial {t}: {name} join not convex: {members:?}"));
                }
            }
        };
        for i in 0..k {
            let mut joined = stats[i].right_witness.clone();
            joined.extend_from_slice(&stats[(i + 1) % k].left_witness);
            joined.sort_unstable();
            check_join("right+left", joined);
        }
        for parity in 0..2 {
            let mut union = Vec::new();
            for i in (parity..k).step_by(2) {
                union.extend_from_slice(&stats[i].inner_witness);
            }
            union.sort_unstable();
            check_join("inner-union", union);
        }
        for s in &stats {
            check_join("outer", s.outer_witness.clone());
        }
        (checks, failures)
    });
    let mut checks = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        checks += c;
        failures.extend(f);
    }
    failures.truncate(32);
    Ok(VerifyReport::new("joins", trials, checks, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_iterator_counts() {
        let mut count = 0;
        for_each_subset(6, 3, |_| count += 1);
        assert_eq!(count, 20);
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn euclidean_hull_square() {
        let pts = vec![(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)];
        let mut hull = euclidean_hull(&pts);
        hull.sort_unstable();
        assert_eq!(hull, vec![0, 1, 2, 3]);
    }

    #[test]
    fn b4_task_passes() {
        let r = verify_b4().unwrap();
        assert!(r.passed, "{:?}", r.failures);
        assert!(r.trials > 0);
    }

    #[test]
    fn small_randomized_tasks_pass() {
        for (name, r) in [
            ("caratheodory", verify_caratheodory(20, 5).unwrap()),
            ("trichotomy", verify_trichotomy(30, 6).unwrap()),
            ("separation", verify_separation(30, 7).unwrap()),
            ("joins", verify_joins(30, 8).unwrap()),
        ] {
            assert!(r.passed, "{name}: {:?}", r.failures);
            assert!(r.checks > 0, "{name} did no work");
        }
    }

    #[test]
    fn decompositions_are_reproducible() {
        let (a_cfg, a_d) = random_decomposition(9, 4, 30).unwrap();
        let (b_cfg, b_d) = random_decomposition(9, 4, 30).unwrap();
        assert_eq!(a_cfg.sign_string(), b_cfg.sign_string());
        assert_eq!(a_d.spikes, b_d.spikes);
    }
}
