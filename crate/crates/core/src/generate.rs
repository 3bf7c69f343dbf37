//! Deterministic input generators, sign-table mutation, and a budgeted
//! realizability search.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chirotope::{
    canonical_sign_string, validate_axioms, Label, PseudoConfiguration, RawChirotope,
    ValidationReport, ENUMERATION_MAX_N,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Rejection-sampled integer points in [0, 4n^3]^2, no three collinear.
    RandomRealizable,
    /// n points on the integer parabola (i, i^2): a convex n-gon.
    GridRealizable,
    /// A random realizable system with `mutation_flips` random triple
    /// signs flipped, re-searched until the mutant passes validation.
    Mutated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub seed: u64,
    pub mutation_flips: usize,
}

impl GeneratorSpec {
    pub fn random(n: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind: GeneratorKind::RandomRealizable,
            n,
            seed,
            mutation_flips: 0,
        }
    }
}

const ATTEMPTS_PER_POINT: usize = 10_000;

/// Deterministic realizable configuration: same spec, same bytes.
pub fn gen_realizable(n: usize, seed: u64) -> Result<PseudoConfiguration> {
    if n < 3 {
        return Err(Error::NTooSmall { min: 3, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = 4 * (n as i64).pow(3);
    let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut attempts = 0;
    while pts.len() < n {
        attempts += 1;
        if attempts > ATTEMPTS_PER_POINT * n {
            return Err(Error::ExhaustedAttempts { attempts });
        }
        let cand = (rng.random_range(0..=max), rng.random_range(0..=max));
        if pts.contains(&cand) {
            continue;
        }
        let collinear = pts.iter().enumerate().any(|(i, &p)| {
            pts[i + 1..].iter().any(|&q| {
                (q.0 - p.0) as i128 * (cand.1 - p.1) as i128
                    == (q.1 - p.1) as i128 * (cand.0 - p.0) as i128
            })
        });
        if !collinear {
            pts.push(cand);
        }
    }
    PseudoConfiguration::from_points(&pts)
}

fn gen_grid(n: usize) -> Result<PseudoConfiguration> {
    if n < 3 {
        return Err(Error::NTooSmall { min: 3, got: n });
    }
    let pts: Vec<(i64, i64)> = (0..n as i64).map(|i| (i, i * i)).collect();
    PseudoConfiguration::from_points(&pts)
}

/// Run a generator spec.
pub fn generate(spec: &GeneratorSpec) -> Result<PseudoConfiguration> {
    match spec.kind {
        GeneratorKind::RandomRealizable => gen_realizable(spec.n, spec.seed),
        GeneratorKind::GridRealizable => gen_grid(spec.n),
        GeneratorKind::Mutated => {
            let base = gen_realizable(spec.n, spec.seed)?;
            let t = crate::chirotope::triple_count(spec.n);
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ 0x9E37_79B9_7F4A_7C15);
            for _ in 0..1000 {
                let mut raw = base.raw().clone();
                let mut ranks: Vec<usize> = (0..t).collect();
                for _ in 0..spec.mutation_flips.min(t) {
                    let pick = rng.random_range(0..ranks.len());
                    let rank = ranks.swap_remove(pick);
                    let (i, j, k) = crate::chirotope::sorted_triples(spec.n)
                        .nth(rank)
                        .expect("rank in range");
                    raw.flip_triple(i, j, k)?;
                }
                if spec.mutation_flips == 0 {
                    return Ok(base);
                }
                if let Ok(cfg) = PseudoConfiguration::from_raw(raw) {
                    return Ok(cfg);
                }
            }
            Err(Error::ExhaustedAttempts { attempts: 1000 })
        }
    }
}

/// Flip the listed unordered triples and revalidate. The candidate table
/// is returned alongside its report; it is only usable as a configuration
/// when the report passes.
pub fn mutate(
    cfg: &PseudoConfiguration,
    flips: &[(Label, Label, Label)],
) -> Result<(RawChirotope, ValidationReport)> {
    let mut raw = cfg.raw().clone();
    for &(i, j, k) in flips {
        raw.flip_triple(i, j, k)?;
    }
    let report = validate_axioms(&raw);
    Ok((raw, report))
}

/// Outcome of the budgeted realizability search. `Unknown` makes no claim:
/// deciding realizability is out of scope, so absence of a witness within
/// the budget is reported as exactly that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealizabilityHint {
    RealizableWitness(Vec<(BigInt, BigInt)>),
    Unknown,
}

pub const HINT_DEFAULT_BUDGET: usize = 20_000;

/// Search random integer point sets for one matching `cfg` up to
/// relabeling; on a hit, the witness is permuted back to `cfg`'s labels.
pub fn realizability_hint(
    cfg: &PseudoConfiguration,
    budget: Option<usize>,
    seed: u64,
) -> Result<RealizabilityHint> {
    let n = cfg.n();
    if n > ENUMERATION_MAX_N {
        return Err(Error::NTooLarge {
            max: ENUMERATION_MAX_N,
            got: n,
        });
    }
    if let Some(coords) = cfg.coords() {
        return Ok(RealizabilityHint::RealizableWitness(coords.to_vec()));
    }
    let target = canonical_sign_string(cfg.raw(), false)?;
    let budget = budget.unwrap_or(HINT_DEFAULT_BUDGET);
    for attempt in 0..budget {
        let sample = match gen_realizable(n, seed ^ (attempt as u64).wrapping_mul(0x9E3779B9)) {
            Ok(c) => c,
            Err(_) => continue,
        };
        if canonical_sign_string(sample.raw(), false)? != target {
            continue;
        }
        // find the permutation carrying the sample onto cfg
        let coords = sample.coords().expect("generated with coordinates");
        if let Some(perm) = matching_permutation(cfg, sample.raw()) {
            let witness: Vec<(BigInt, BigInt)> =
                (0..n).map(|i| coords[perm[i]].clone()).collect();
            debug_assert!(PseudoConfiguration::from_integer_points(&witness)
                .map(|r| r.sign_string() == cfg.sign_string())
                .unwrap_or(false));
            return Ok(RealizabilityHint::RealizableWitness(witness));
        }
    }
    Ok(RealizabilityHint::Unknown)
}

fn matching_permutation(cfg: &PseudoConfiguration, sample: &RawChirotope) -> Option<Vec<usize>> {
    let n = cfg.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if sample.relabeled(&perm).sign_string() == cfg.sign_string() {
            return Some(perm.clone());
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
