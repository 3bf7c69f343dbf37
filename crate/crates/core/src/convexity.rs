//! Convex position, combinatorial hulls, and largest-convex-subset search.
//!
//! Everything here reduces to orientation queries: a point is inside a
//! triangle when it sees all three edges with the triangle's own sign,
//! a set is in convex position when every four of its elements are, and
//! the hull cycle is the unique cyclic order whose edges keep all other
//! extreme points on one side.

use serde::{Deserialize, Serialize};

use crate::chirotope::{Label, PseudoConfiguration, Sign};
use crate::error::{Error, Result};

/// A subset in convex position together with its boundary order.
/// `members` is sorted; `hull_cycle` lists the same labels starting from
/// the smallest one and proceeding counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexCertificate {
    pub members: Vec<Label>,
    pub hull_cycle: Vec<Label>,
}

impl ConvexCertificate {
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, p: Label) -> bool {
        self.members.binary_search(&p).is_ok()
    }
}

#[inline]
pub(crate) fn in_tri(cfg: &PseudoConfiguration, p: Label, a: Label, b: Label, c: Label) -> bool {
    let s = cfg.orient(a, b, c);
    cfg.orient(a, b, p) == s && cfg.orient(b, c, p) == s && cfg.orient(c, a, p) == s
}

/// Is `p` inside the triangle spanned by `a`, `b`, `c`?
pub fn in_triangle(
    cfg: &PseudoConfiguration,
    p: Label,
    a: Label,
    b: Label,
    c: Label,
) -> Result<bool> {
    cfg.check_labels(&[p, a, b, c])?;
    Ok(in_tri(cfg, p, a, b, c))
}

/// Four distinct points are in convex position iff the number of
/// counterclockwise triples among the four they span is even (4 or 2 for
/// the two cyclic labelings of a quadrilateral, 3 or 1 when one point is
/// interior). Equivalent to the no-point-in-triangle test; checked
/// exhaustively against it in the test suite.
#[inline]
pub(crate) fn four_convex(
    cfg: &PseudoConfiguration,
    a: Label,
    b: Label,
    c: Label,
    d: Label,
) -> bool {
    let ccw = (cfg.orient(a, b, c) == Sign::Ccw) as u8
        + (cfg.orient(a, b, d) == Sign::Ccw) as u8
        + (cfg.orient(a, c, d) == Sign::Ccw) as u8
        + (cfg.orient(b, c, d) == Sign::Ccw) as u8;
    ccw % 2 == 0
}

pub(crate) fn convex_position(cfg: &PseudoConfiguration, q: &[Label]) -> bool {
    let m = q.len();
    if m <= 3 {
        return true;
    }
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    if !four_convex(cfg, q[a], q[b], q[c], q[d]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Carathéodory test: true iff every four elements of `q` are in convex
/// position. Three points are always in convex position.
pub fn is_convex_position(cfg: &PseudoConfiguration, q: &[Label]) -> Result<bool> {
    if q.len() < 3 {
        return Err(Error::SubsetTooSmall {
            min: 3,
            got: q.len(),
        });
    }
    cfg.check_labels(q)?;
    Ok(convex_position(cfg, q))
}

/// Is `p` in the convex hull of `q`? By Carathéodory this is the case iff
/// some triangle over `q` contains `p`.
pub fn in_hull(cfg: &PseudoConfiguration, p: Label, q: &[Label]) -> Result<bool> {
    let mut all = q.to_vec();
    all.push(p);
    cfg.check_labels(&all)?;
    let m = q.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if in_tri(cfg, p, q[a], q[b], q[c]) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Members of `q` not contained in any triangle of three other members.
pub(crate) fn extreme_points(cfg: &PseudoConfiguration, q: &[Label]) -> Vec<Label> {
    let m = q.len();
    let mut extremes = Vec::with_capacity(m);
    'outer: for (idx, &p) in q.iter().enumerate() {
        for a in 0..m {
            if a == idx {
                continue;
            }
            for b in a + 1..m {
                if b == idx {
                    continue;
                }
                for c in b + 1..m {
                    if c == idx {
                        continue;
                    }
                    if in_tri(cfg, p, q[a], q[b], q[c]) {
                        continue 'outer;
                    }
                }
            }
        }
        extremes.push(p);
    }
    extremes
}

/// Hull certificate over the extreme points of `q`: each consecutive pair
/// of the cycle keeps every other extreme point on its counterclockwise
/// side. The cycle starts at the smallest extreme label.
pub fn hull_cycle(cfg: &PseudoConfiguration, q: &[Label]) -> Result<ConvexCertificate> {
    if q.len() < 3 {
        return Err(Error::SubsetTooSmall {
            min: 3,
            got: q.len(),
        });
    }
    cfg.check_labels(q)?;
    let mut members = extreme_points(cfg, q);
    members.sort_unstable();
    let cycle = cycle_of_extremes(cfg, &members)?;
    Ok(ConvexCertificate {
        members,
        hull_cycle: cycle,
    })
}

/// Order a set known to be in convex position (all extreme) into its
/// counterclockwise cycle starting at the smallest label.
pub(crate) fn cycle_of_extremes(
    cfg: &PseudoConfiguration,
    extremes: &[Label],
) -> Result<Vec<Label>> {
    let h = extremes.len();
    if h < 3 {
        return Err(Error::InternalInconsistency(
            "a hull has at least three extreme points",
        ));
    }
    let start = *extremes.iter().min().expect("nonempty");
    let successor = |a: Label| -> Result<Label> {
        for &b in extremes {
            if b == a {
                continue;
            }
            if extremes
                .iter()
                .all(|&c| c == a || c == b || cfg.orient(a, b, c) == Sign::Ccw)
            {
                return Ok(b);
            }
        }
        Err(Error::InternalInconsistency(
            "no hull successor found; sign table is not a valid system",
        ))
    };
    let mut cycle = Vec::with_capacity(h);
    let mut cur = start;
    loop {
        cycle.push(cur);
        cur = successor(cur)?;
        if cur == start {
            break;
        }
        if cycle.len() > h {
            return Err(Error::InternalInconsistency(
                "hull walk does not close into a single cycle",
            ));
        }
    }
    if cycle.len() != h {
        return Err(Error::InternalInconsistency(
            "hull walk missed extreme points",
        ));
    }
    Ok(cycle)
}

#[inline]
pub(crate) fn segs_cross(
    cfg: &PseudoConfiguration,
    a: Label,
    b: Label,
    c: Label,
    d: Label,
) -> bool {
    cfg.orient(a, b, c) != cfg.orient(a, b, d) && cfg.orient(c, d, a) != cfg.orient(c, d, b)
}

/// Do the pseudosegments `ab` and `cd` cross?
pub fn segments_cross(
    cfg: &PseudoConfiguration,
    a: Label,
    b: Label,
    c: Label,
    d: Label,
) -> Result<bool> {
    cfg.check_labels(&[a, b, c, d])?;
    Ok(segs_cross(cfg, a, b, c, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Scan subset sizes downward, lexicographically within a size.
    /// Guarded to n <= 20.
    Brute,
    /// Anchored chain dynamic program over rotation orders; same answer
    /// as `Brute`, polynomial time.
    ChainDp,
}

pub const BRUTE_MAX_N: usize = 20;

/// A maximum-size subset in convex position, as a certificate. Ties are
/// broken by the lexicographically smallest sorted member list.
pub fn largest_convex_subset(
    cfg: &PseudoConfiguration,
    mode: SearchMode,
) -> Result<ConvexCertificate> {
    let n = cfg.n();
    let best_size = match mode {
        SearchMode::Brute => {
            if n > BRUTE_MAX_N {
                return Err(Error::NTooLargeForBrute {
                    max: BRUTE_MAX_N,
                    got: n,
                });
            }
            (3..=n)
                .rev()
                .find(|&s| lex_min_convex_of_size(cfg, s).is_some())
                .ok_or(Error::InternalInconsistency(
                    "every triple is in convex position",
                ))?
        }
        SearchMode::ChainDp => chain_dp_max_size(cfg),
    };
    let members = lex_min_convex_of_size(cfg, best_size).ok_or(Error::InternalInconsistency(
        "search size has no witness subset",
    ))?;
    let cycle = cycle_of_extremes(cfg, &members)?;
    Ok(ConvexCertificate {
        members,
        hull_cycle: cycle,
    })
}

/// Lexicographically smallest convex-position subset of exactly `size`
/// labels, or None. Depth-first over ascending-label prefixes; a prefix
/// is extendable only if it stays in convex position, which prunes hard
/// because subsets of convex sets are convex.
pub fn lex_min_convex_of_size(cfg: &PseudoConfiguration, size: usize) -> Option<Vec<Label>> {
    if size < 3 || size > cfg.n() {
        return None;
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let n = cfg.n();
        // Any set starting with a smaller label is lexicographically
        // smaller, so the first non-empty branch wins.
        (0..=n.saturating_sub(size))
            .into_par_iter()
            .map(|first| {
                let mut prefix = vec![first];
                dfs_lex(cfg, &mut prefix, size)
            })
            .find_first(|r| r.is_some())
            .flatten()
    }
    #[cfg(not(feature = "parallel"))]
    {
        lex_min_convex_of_size_seq(cfg, size)
    }
}

/// Sequential kernel behind [`lex_min_convex_of_size`].
pub fn lex_min_convex_of_size_seq(cfg: &PseudoConfiguration, size: usize) -> Option<Vec<Label>> {
    if size < 3 || size > cfg.n() {
        return None;
    }
    for first in 0..=cfg.n() - size {
        let mut prefix = vec![first];
        if let Some(hit) = dfs_lex(cfg, &mut prefix, size) {
            return Some(hit);
        }
    }
    None
}

fn dfs_lex(cfg: &PseudoConfiguration, prefix: &mut Vec<Label>, size: usize) -> Option<Vec<Label>> {
    if prefix.len() == size {
        return Some(prefix.clone());
    }
    let last = *prefix.last().expect("nonempty prefix");
    let remaining = size - prefix.len();
    for next in last + 1..cfg.n() {
        if cfg.n() - next < remaining {
            break;
        }
        if !extension_stays_convex(cfg, prefix, next) {
            continue;
        }
        prefix.push(next);
        if let Some(hit) = dfs_lex(cfg, prefix, size) {
            return Some(hit);
        }
        prefix.pop();
    }
    None
}

#[inline]
fn extension_stays_convex(cfg: &PseudoConfiguration, prefix: &[Label], x: Label) -> bool {
    let m = prefix.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                if !four_convex(cfg, prefix[a], prefix[b], prefix[c], x) {
                    return false;
                }
            }
        }
    }
    true
}

/// Size of the largest convex-position subset by dynamic programming.
///
/// Every convex polygon is counted from its minimum-label vertex `a` with
/// counterclockwise successor `b`: the remaining vertices carry labels
/// above `a`, lie on the counterclockwise side of `(a, b)` where the
/// rotation around `a` is a total order, and the hull cycle traverses them
/// in that order making only left turns.
pub fn chain_dp_max_size(cfg: &PseudoConfiguration) -> usize {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..cfg.n())
            .into_par_iter()
            .map(|a| dp_for_anchor(cfg, a))
            .max()
            .unwrap_or(3)
            .max(3)
    }
    #[cfg(not(feature = "parallel"))]
    {
        chain_dp_max_size_seq(cfg)
    }
}

/// Sequential kernel behind [`chain_dp_max_size`].
pub fn chain_dp_max_size_seq(cfg: &PseudoConfiguration) -> usize {
    (0..cfg.n())
        .map(|a| dp_for_anchor(cfg, a))
        .max()
        .unwrap_or(3)
        .max(3)
}

fn dp_for_anchor(cfg: &PseudoConfiguration, a: Label) -> usize {
    let n = cfg.n();
    let mut best = 3;
    for b in a + 1..n {
        // Candidate vertices after b: above a by label, counterclockwise
        // of (a, b), sorted by rotation around a (total by transitivity).
        let mut h: Vec<Label> = (a + 1..n)
            .filter(|&q| q != b && cfg.orient(a, b, q) == Sign::Ccw)
            .collect();
        h.sort_unstable_by(|&u, &v| {
            if cfg.orient(a, u, v) == Sign::Ccw {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let m = h.len();
        if m == 0 {
            continue;
        }
        // verts[0] = b, verts[1..] = h; f[i][j] = longest polygon through
        // the edge (verts[i], verts[j]).
        let mut verts = Vec::with_capacity(m + 1);
        verts.push(b);
        verts.extend_from_slice(&h);
        let mut f = vec![vec![0usize; m + 1]; m + 1];
        for j in 1..=m {
            f[0][j] = 3;
            best = best.max(3);
        }
        for i in 1..=m {
            for j in i + 1..=m {
                let mut here = 0;
                for p in 0..i {
                    if f[p][i] > here && cfg.orient(verts[p], verts[i], verts[j]) == Sign::Ccw
                    {
                        here = f[p][i];
                    }
                }
                if here > 0 {
                    f[i][j] = here + 1;
                    best = best.max(f[i][j]);
                }
            }
        }
    }
    best
}
