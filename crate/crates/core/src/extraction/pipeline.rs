//! End-to-end assembly: cluster, decompose, measure chains, and join
//! witness chains into one large convex subset with a full numeric trace.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::chirotope::{Label, PseudoConfiguration};
use crate::convexity::{convex_position, cycle_of_extremes, hull_cycle, ConvexCertificate};
use crate::error::{Error, Result};
use crate::extraction::clustering::{
    find_clustering, ClusteringStrategy, EXHAUSTIVE_MAX_K, EXHAUSTIVE_MAX_N,
};
use crate::extraction::cupcap::binomial;
use crate::spike::{chain_stats, ChainStats, SpikeDecomposition};

#[derive(Clone, Copy, Debug, Default)]
pub struct PipelineOptions {
    /// Clustering strategy; None picks Exhaustive when within its guard
    /// and a seeded default Sampled search otherwise.
    pub strategy: Option<ClusteringStrategy>,
}

/// Per-spike statistics with the 1-based index used in reports.
#[derive(Clone, Debug, Serialize)]
pub struct SpikeReport {
    pub index: usize,
    pub size: usize,
    pub vertical_len: usize,
    pub horizontal_len: usize,
    pub left_len: usize,
    pub right_len: usize,
    pub inner_len: usize,
    pub outer_len: usize,
    pub vertical_witness: Vec<Label>,
    pub horizontal_witness: Vec<Label>,
    pub left_witness: Vec<Label>,
    pub right_witness: Vec<Label>,
    pub inner_witness: Vec<Label>,
    pub outer_witness: Vec<Label>,
}

impl From<&ChainStats> for SpikeReport {
    fn from(s: &ChainStats) -> Self {
        SpikeReport {
            index: s.spike + 1,
            size: s.size,
            vertical_len: s.vertical_len,
            horizontal_len: s.horizontal_len,
            left_len: s.left_len,
            right_len: s.right_len,
            inner_len: s.inner_len,
            outer_len: s.outer_len,
            vertical_witness: s.vertical_witness.clone(),
            horizontal_witness: s.horizontal_witness.clone(),
            left_witness: s.left_witness.clone(),
            right_witness: s.right_witness.clone(),
            inner_witness: s.inner_witness.clone(),
            outer_witness: s.outer_witness.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub source: String,
    pub members: Vec<Label>,
    pub size: usize,
    pub extended_with_polygon_members: bool,
}

/// Everything the assembly measured, with exact big-integer comparisons
/// rendered as decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateTrace {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub x: ConvexCertificate,
    pub spike_sizes: Vec<usize>,
    pub unassigned_points: usize,
    pub stats: Vec<SpikeReport>,
    /// product of |P_i|
    pub product_spike_sizes: String,
    /// product of v_i h_i
    pub product_chain_lengths: String,
    /// product of C(a_i+b_i-2, a_i-1) C(c_i+d_i-2, c_i-1)
    pub product_binomials: String,
    /// N^k and 2^(8k^2): the clustering lower bound as an exact fraction
    pub cluster_bound_numerator: String,
    pub cluster_bound_denominator: String,
    /// product |P_i| >= N^k / 2^(8k^2), compared exactly
    pub cluster_bound_holds: bool,
    /// |P_i| <= v_i h_i for every spike
    pub size_le_chain_product: bool,
    /// v_i <= C(a_i+b_i-2, a_i-1) for every spike
    pub vertical_binomial_holds: bool,
    /// h_i <= C(c_i+d_i-2, c_i-1) for every spike
    pub horizontal_binomial_holds: bool,
    /// product |P_i| <= product v_i h_i <= product of binomials
    pub product_chain_holds: bool,
    /// b_i + a_{i+1} per spike (right chain joined with next left chain)
    pub right_left_join_sizes: Vec<usize>,
    /// sum of the inner chain lengths c_i
    pub inner_sum: usize,
    pub candidates: Vec<CandidateReport>,
    pub winner_source: String,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub certificate: ConvexCertificate,
    pub trace: CertificateTrace,
}

/// Run the full assembly for an even k >= 4: find a well-populated convex
/// k-subset, decompose its exterior, measure the chain statistics of each
/// spike, and return the largest convex subset assembled from the witness
/// chains (right+left joins, alternating inner unions, single outer
/// chains), each candidate optionally extended by compatible polygon
/// members, plus the global hull for reference.
pub fn run_pipeline(
    cfg: &PseudoConfiguration,
    k: usize,
    opts: PipelineOptions,
) -> Result<PipelineOutput> {
    let n = cfg.n();
    let strategy = opts.strategy.unwrap_or({
        if n <= EXHAUSTIVE_MAX_N && k <= EXHAUSTIVE_MAX_K {
            ClusteringStrategy::Exhaustive
        } else {
            ClusteringStrategy::Sampled {
                samples: None,
                seed: 0,
            }
        }
    });
    let clustering = find_clustering(cfg, k, strategy)?;
    let d = &clustering.decomposition;

    let stats: Vec<ChainStats> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..k)
                .into_par_iter()
                .map(|i| chain_stats(cfg, d, i))
                .collect::<Result<Vec<_>>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..k)
                .map(|i| chain_stats(cfg, d, i))
                .collect::<Result<Vec<_>>>()?
        }
    };

    let mut candidates = Vec::new();
    push_candidate(
        cfg,
        &mut candidates,
        "polygon".into(),
        d.x.members.clone(),
        false,
    )?;

    // right chain of spike i joined with left chain of spike i+1
    for i in 0..k {
        let j = (i + 1) % k;
        let mut joined = stats[i].right_witness.clone();
        joined.extend_from_slice(&stats[j].left_witness);
        joined.sort_unstable();
        let label = format!("right({})+left({})", i + 1, j + 1);
        if joined.len() >= 3 && !convex_position(cfg, &joined) {
            return Err(Error::AssemblyContradiction {
                context: label,
                members: joined,
            });
        }
        push_extended(cfg, &mut candidates, label, joined, &d.x.members)?;
    }

    // alternating unions of inner chains (k is even)
    for (parity, name) in [(0, "inner-union(odd)"), (1, "inner-union(even)")] {
        let mut union: Vec<Label> = Vec::new();
        for i in (parity..k).step_by(2) {
            union.extend_from_slice(&stats[i].inner_witness);
        }
        union.sort_unstable();
        if union.len() >= 3 && !convex_position(cfg, &union) {
            return Err(Error::AssemblyContradiction {
                context: name.into(),
                members: union,
            });
        }
        push_extended(cfg, &mut candidates, name.into(), union, &d.x.members)?;
    }

    // each outer chain stands alone
    for (i, s) in stats.iter().enumerate() {
        let outer = s.outer_witness.clone();
        let label = format!("outer({})", i + 1);
        if outer.len() >= 3 && !convex_position(cfg, &outer) {
            return Err(Error::AssemblyContradiction {
                context: label,
                members: outer,
            });
        }
        push_extended(cfg, &mut candidates, label, outer, &d.x.members)?;
    }

    // the hull of the whole configuration, for the case where the input
    // is already largely convex
    let global = hull_cycle(cfg, &(0..n).collect::<Vec<_>>())?;
    push_candidate(
        cfg,
        &mut candidates,
        "global-hull".into(),
        global.members,
        false,
    )?;

    let winner = candidates
        .iter()
        .max_by(|a, b| {
            a.size
                .cmp(&b.size)
                .then_with(|| b.members.cmp(&a.members))
        })
        .expect("the polygon candidate always exists")
        .clone();
    if !convex_position(cfg, &winner.members) {
        return Err(Error::InternalInconsistency(
            "winning candidate failed convex revalidation",
        ));
    }
    let certificate = ConvexCertificate {
        hull_cycle: cycle_of_extremes(cfg, &winner.members)?,
        members: winner.members.clone(),
    };

    let trace = build_trace(cfg, k, &clustering.product, d, &stats, candidates, &winner);
    Ok(PipelineOutput { certificate, trace })
}

fn push_candidate(
    cfg: &PseudoConfiguration,
    out: &mut Vec<CandidateReport>,
    source: String,
    mut members: Vec<Label>,
    extended: bool,
) -> Result<()> {
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Ok(());
    }
    debug_assert!(convex_position(cfg, &members));
    out.push(CandidateReport {
        source,
        size: members.len(),
        members,
        extended_with_polygon_members: extended,
    });
    Ok(())
}

/// Push a candidate and, when polygon members fit, its greedy extension.
fn push_extended(
    cfg: &PseudoConfiguration,
    out: &mut Vec<CandidateReport>,
    source: String,
    members: Vec<Label>,
    polygon: &[Label],
) -> Result<()> {
    if members.is_empty() {
        return Ok(());
    }
    push_candidate(cfg, out, source.clone(), members.clone(), false)?;
    let mut cur = members;
    for &x in polygon {
        cur.push(x);
        if !convex_position(cfg, &cur) {
            cur.pop();
        }
    }
    cur.sort_unstable();
    if cur.len() > out.last().expect("just pushed").members.len() {
        push_candidate(cfg, out, format!("{source}+polygon"), cur, true)?;
    }
    Ok(())
}

fn build_trace(
    cfg: &PseudoConfiguration,
    k: usize,
    product: &BigUint,
    d: &SpikeDecomposition,
    stats: &[ChainStats],
    candidates: Vec<CandidateReport>,
    winner: &CandidateReport,
) -> CertificateTrace {
    let n = cfg.n();
    let spike_sizes: Vec<usize> = d.spikes.iter().map(|s| s.len()).collect();

    let product_chain_lengths: BigUint = stats
        .iter()
        .map(|s| BigUint::from(s.vertical_len) * BigUint::from(s.horizontal_len))
        .product();
    let product_binomials: BigUint = stats
        .iter()
        .map(|s| vertical_binomial(s) * horizontal_binomial(s))
        .product();

    let numerator = BigUint::from(n).pow(k as u32);
    let denominator = BigUint::one() << (8 * k * k);
    let cluster_bound_holds = product * &denominator >= numerator;

    let size_le_chain_product = stats
        .iter()
        .all(|s| s.size <= s.vertical_len * s.horizontal_len);
    let vertical_binomial_holds = stats
        .iter()
        .all(|s| BigUint::from(s.vertical_len) <= vertical_binomial(s));
    let horizontal_binomial_holds = stats
        .iter()
        .all(|s| BigUint::from(s.horizontal_len) <= horizontal_binomial(s));
    let product_chain_holds =
        *product <= product_chain_lengths && product_chain_lengths <= product_binomials;

    let right_left_join_sizes = (0..k)
        .map(|i| stats[i].right_len + stats[(i + 1) % k].left_len)
        .collect();
    let inner_sum = stats.iter().map(|s| s.inner_len).sum();

    CertificateTrace {
        schema_version: 1,
        n,
        k,
        x: d.x.clone(),
        spike_sizes,
        unassigned_points: d.unassigned.len(),
        stats: stats.iter().map(SpikeReport::from).collect(),
        product_spike_sizes: product.to_string(),
        product_chain_lengths: product_chain_lengths.to_string(),
        product_binomials: product_binomials.to_string(),
        cluster_bound_numerator: numerator.to_string(),
        cluster_bound_denominator: denominator.to_string(),
        cluster_bound_holds,
        size_le_chain_product,
        vertical_binomial_holds,
        horizontal_binomial_holds,
        product_chain_holds,
        right_left_join_sizes,
        inner_sum,
        candidates,
        winner_source: winner.source.clone(),
    }
}

/// C(a+b-2, a-1) with the empty-spike case (a = b = 0) read as 1.
pub(crate) fn vertical_binomial(s: &ChainStats) -> BigUint {
    class_binomial(s.left_len, s.right_len)
}

pub(crate) fn horizontal_binomial(s: &ChainStats) -> BigUint {
    class_binomial(s.inner_len, s.outer_len)
}

fn class_binomial(a: usize, b: usize) -> BigUint {
    if a == 0 && b == 0 {
        BigUint::one()
    } else {
        binomial(a + b - 2, a - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::{largest_convex_subset, SearchMode};

    #[test]
    fn convex_polygon_recovers_whole_hull() {
        let pts: Vec<(i64, i64)> = (0..9).map(|i| (i, i * i)).collect();
        let cfg = PseudoConfiguration::from_points(&pts).unwrap();
        let out = run_pipeline(&cfg, 4, PipelineOptions::default()).unwrap();
        assert_eq!(out.certificate.k(), 9);
        assert_eq!(out.trace.winner_source, "global-hull");
    }

    #[test]
    fn tower_joins_with_polygon_corner() {
        // all-left tower of 5 below the bottom edge of a big square:
        // the pipeline must return at least the tower plus one corner
        let mut pts = vec![(0, 0), (400, 0), (400, 400), (0, 400)];
        let tower: Vec<(i64, i64)> = (1..=5).map(|j| (200 + 3 * j * (6 - j), -30 * j)).collect();
        pts.extend_from_slice(&tower);
        let cfg = PseudoConfiguration::from_points(&pts).unwrap();
        let out = run_pipeline(&cfg, 4, PipelineOptions::default()).unwrap();
        assert!(
            out.certificate.k() >= 6,
            "got {} from {}",
            out.certificate.k(),
            out.trace.winner_source
        );
        // sanity against the exact search
        let best = largest_convex_subset(&cfg, SearchMode::ChainDp).unwrap();
        assert!(out.certificate.k() <= best.k());
    }

    #[test]
    fn pipeline_output_is_sound_on_random_configs() {
        for seed in [1u64, 2, 3] {
            let cfg = crate::generate::gen_realizable(30, seed).unwrap();
            let out = run_pipeline(&cfg, 4, PipelineOptions::default()).unwrap();
            assert!(convex_position(&cfg, &out.certificate.members));
            let best = largest_convex_subset(&cfg, SearchMode::ChainDp).unwrap();
            assert!(out.certificate.k() <= best.k());
            let t = &out.trace;
            assert!(t.size_le_chain_product);
            assert!(t.vertical_binomial_holds);
            assert!(t.horizontal_binomial_holds);
            assert!(t.product_chain_holds);
        }
    }

    #[test]
    fn trace_serializes_with_schema_version() {
        let cfg = crate::generate::gen_realizable(16, 4).unwrap();
        let out = run_pipeline(&cfg, 4, PipelineOptions::default()).unwrap();
        let json = serde_json::to_value(&out.trace).unwrap();
        assert_eq!(json["schema_version"], 1);
        assert!(json["product_spike_sizes"].is_string());
        // spike indices are reported 1-based
        let first = &json["stats"][0];
        assert_eq!(first["index"], 1);
    }
}
