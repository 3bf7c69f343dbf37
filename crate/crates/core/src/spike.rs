//! Spike decompositions of the exterior of a convex polygon, and the two
//! chain orders inside each spike.
//!
//! Given a convex k-set X with counterclockwise cycle x_0..x_{k-1}, spike i
//! sits beyond the edge (x_i, x_{i+1}). A point belongs to spike i exactly
//! when X plus that point is in convex position with the point landing
//! between x_i and x_{i+1} on the boundary. Inside a spike, two points are
//! comparable either vertically (one's triangle to the outer anchors nests
//! in the other's) or horizontally (their anchor segments cross), never
//! both. Vertical triples classify left/right, horizontal triples
//! inner/outer, and both classifications are transitive colorings.

use serde::{Deserialize, Serialize};

use crate::chirotope::{Label, PseudoConfiguration};
use crate::convexity::{convex_position, cycle_of_extremes, in_tri, segs_cross, ConvexCertificate};
use crate::error::{Error, Result};
use crate::extraction::cupcap::{longest_monochromatic, TransitiveColoring, TripleClass};

/// Assignment of every non-member label to its spike, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpikeDecomposition {
    pub x: ConvexCertificate,
    /// spikes[i] lists the labels in spike i (beyond edge (x_i, x_{i+1})),
    /// sorted ascending.
    pub spikes: Vec<Vec<Label>>,
    /// Outside labels in no spike (interior points, or points cut off by
    /// the neighboring edge pseudolines).
    pub unassigned: Vec<Label>,
}

impl SpikeDecomposition {
    pub fn k(&self) -> usize {
        self.x.k()
    }

    pub fn spike_of_label(&self, p: Label) -> Option<usize> {
        self.spikes
            .iter()
            .position(|s| s.binary_search(&p).is_ok())
    }

    /// Outer anchors of spike i: (x_{i-1}, x_{i+2}) on the hull cycle.
    pub fn anchors(&self, i: usize) -> (Label, Label) {
        let k = self.k();
        (
            self.x.hull_cycle[(i + k - 1) % k],
            self.x.hull_cycle[(i + 2) % k],
        )
    }

    /// The hull edge spike i lies beyond: (x_i, x_{i+1}).
    pub fn edge(&self, i: usize) -> (Label, Label) {
        let k = self.k();
        (self.x.hull_cycle[i], self.x.hull_cycle[(i + 1) % k])
    }

    pub fn spike_product(&self) -> num_bigint::BigUint {
        self.spikes
            .iter()
            .map(|s| num_bigint::BigUint::from(s.len()))
            .product()
    }
}

fn check_x(x: &ConvexCertificate) -> Result<()> {
    if x.k() < 4 {
        return Err(Error::ArityTooSmall {
            what: "spike decomposition polygon size k",
            min: 4,
            got: x.k(),
        });
    }
    Ok(())
}

/// Spike index of `p` relative to X, by the convex-extension test:
/// Some(i) iff X plus p is in convex position with p between x_i and
/// x_{i+1} on the extended hull cycle.
pub fn spike_of(
    cfg: &PseudoConfiguration,
    x: &ConvexCertificate,
    p: Label,
) -> Result<Option<usize>> {
    check_x(x)?;
    cfg.check_labels(&x.members)?;
    cfg.check_labels(&[p])?;
    if x.contains(p) {
        return Err(Error::PInX { p });
    }
    let mut labels = x.members.clone();
    labels.push(p);
    if !convex_position(cfg, &labels) {
        return Ok(None);
    }
    let cycle = cycle_of_extremes(cfg, &labels)?;
    let m = cycle.len();
    let pos = cycle.iter().position(|&v| v == p).expect("p in cycle");
    let prev = cycle[(pos + m - 1) % m];
    let next = cycle[(pos + 1) % m];
    let k = x.k();
    for i in 0..k {
        if x.hull_cycle[i] == prev && x.hull_cycle[(i + 1) % k] == next {
            return Ok(Some(i));
        }
    }
    Err(Error::InternalInconsistency(
        "extended hull cycle does not refine the polygon cycle",
    ))
}

/// Assign every label outside X to its spike.
pub fn decompose(cfg: &PseudoConfiguration, x: &ConvexCertificate) -> Result<SpikeDecomposition> {
    check_x(x)?;
    cfg.check_labels(&x.members)?;
    let outside: Vec<Label> = (0..cfg.n()).filter(|&p| !x.contains(p)).collect();
    let assigned: Vec<Option<usize>> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            outside
                .par_iter()
                .map(|&p| spike_of(cfg, x, p))
                .collect::<Result<Vec<_>>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            outside
                .iter()
                .map(|&p| spike_of(cfg, x, p))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let mut spikes = vec![Vec::new(); x.k()];
    let mut unassigned = Vec::new();
    for (&p, slot) in outside.iter().zip(assigned) {
        match slot {
            Some(i) => spikes[i].push(p),
            None => unassigned.push(p),
        }
    }
    Ok(SpikeDecomposition {
        x: x.clone(),
        spikes,
        unassigned,
    })
}

/// Which of the two spike orders relates a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Vertical,
    Horizontal,
}

fn check_in_spike(d: &SpikeDecomposition, i: usize, p: Label) -> Result<()> {
    if d.spikes
        .get(i)
        .is_some_and(|s| s.binary_search(&p).is_ok())
    {
        Ok(())
    } else {
        Err(Error::NotInSpike { spike: i, p })
    }
}

#[inline]
fn v_less(cfg: &PseudoConfiguration, a: Label, b: Label, p: Label, q: Label) -> bool {
    // p's anchor triangle nests inside q's
    in_tri(cfg, p, a, q, b)
}

#[inline]
fn h_less(cfg: &PseudoConfiguration, a: Label, b: Label, p: Label, q: Label) -> bool {
    // the segment from the left anchor to q crosses the one from the
    // right anchor to p
    segs_cross(cfg, a, q, b, p)
}

/// The unique relation holding between two points of spike i:
/// `(kind, Less)` means p precedes q in that order. Exactly one of the
/// four possibilities holds in a valid system; anything else is reported
/// as an error and marks an axiom-level violation.
pub fn relation_in_spike(
    cfg: &PseudoConfiguration,
    d: &SpikeDecomposition,
    i: usize,
    p: Label,
    q: Label,
) -> Result<(OrderKind, std::cmp::Ordering)> {
    use std::cmp::Ordering;
    if p == q {
        return Err(Error::RepeatedLabel {
            labels: vec![p, q],
            n: cfg.n(),
        });
    }
    check_in_spike(d, i, p)?;
    check_in_spike(d, i, q)?;
    let (a, b) = d.anchors(i);
    let hits = [
        (v_less(cfg, a, b, p, q), (OrderKind::Vertical, Ordering::Less)),
        (v_less(cfg, a, b, q, p), (OrderKind::Vertical, Ordering::Greater)),
        (h_less(cfg, a, b, p, q), (OrderKind::Horizontal, Ordering::Less)),
        (h_less(cfg, a, b, q, p), (OrderKind::Horizontal, Ordering::Greater)),
    ];
    let mut found = None;
    for (holds, rel) in hits {
        if holds {
            if found.is_some() {
                return Err(Error::AmbiguousRelation { spike: i, p, q });
            }
            found = Some(rel);
        }
    }
    found.ok_or(Error::NoRelation { spike: i, p, q })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerticalClass {
    /// Convex together with the left outer anchor x_{i-1}.
    Left,
    /// Convex together with the right outer anchor x_{i+2}.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HorizontalClass {
    /// Convex together with both outer anchors.
    Inner,
    Outer,
}

/// Classify a vertical 3-chain p < q < r as left or right; exactly one
/// holds for a valid system.
pub fn classify_vertical_triple(
    cfg: &PseudoConfiguration,
    d: &SpikeDecomposition,
    i: usize,
    p: Label,
    q: Label,
    r: Label,
) -> Result<VerticalClass> {
    for &x in &[p, q, r] {
        check_in_spike(d, i, x)?;
    }
    let (a, b) = d.anchors(i);
    if !(v_less(cfg, a, b, p, q) && v_less(cfg, a, b, q, r)) {
        return Err(Error::NotAChain {
            spike: i,
            kind: "vertical",
            labels: vec![p, q, r],
        });
    }
    let left = convex_position(cfg, &[p, q, r, a]);
    let right = convex_position(cfg, &[p, q, r, b]);
    match (left, right) {
        (true, false) => Ok(VerticalClass::Left),
        (false, true) => Ok(VerticalClass::Right),
        (true, true) => Err(Error::BothOrNeither {
            spike: i,
            labels: vec![p, q, r],
            status: "both",
        }),
        (false, false) => Err(Error::BothOrNeither {
            spike: i,
            labels: vec![p, q, r],
            status: "neither",
        }),
    }
}

/// Classify a horizontal 3-chain p < q < r as inner or outer.
pub fn classify_horizontal_triple(
    cfg: &PseudoConfiguration,
    d: &SpikeDecomposition,
    i: usize,
    p: Label,
    q: Label,
    r: Label,
) -> Result<HorizontalClass> {
    for &x in &[p, q, r] {
        check_in_spike(d, i, x)?;
    }
    let (a, b) = d.anchors(i);
    if !(h_less(cfg, a, b, p, q) && h_less(cfg, a, b, q, r)) {
        return Err(Error::NotAChain {
            spike: i,
            kind: "horizontal",
            labels: vec![p, q, r],
        });
    }
    if convex_position(cfg, &[p, q, r, a, b]) {
        Ok(HorizontalClass::Inner)
    } else {
        Ok(HorizontalClass::Outer)
    }
}

/// Longest-chain statistics of one spike, with witness chains.
///
/// `vertical` / `horizontal` are the longest chains in the two orders;
/// `left` / `right` are the longest left- and right-classified
/// sub-chains within the fixed vertical witness, `inner` / `outer`
/// likewise within the horizontal witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStats {
    pub spike: usize,
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

/// Longest chain in the relation given by `less`, over `items`, with the
/// lexicographically smallest witness sequence (greedy by label at every
/// step). Errors if the relation is cyclic, which cannot happen for a
/// valid system.
fn longest_chain(items: &[Label], less: impl Fn(Label, Label) -> bool) -> Result<Vec<Label>> {
    let m = items.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    // f[v] = longest chain starting at items[v]
    let mut f = vec![0usize; m];
    let mut state = vec![0u8; m]; // 0 new, 1 on stack, 2 done
    fn visit(
        v: usize,
        items: &[Label],
        less: &impl Fn(Label, Label) -> bool,
        f: &mut [usize],
        state: &mut [u8],
    ) -> Result<usize> {
        match state[v] {
            2 => return Ok(f[v]),
            1 => {
                return Err(Error::InternalInconsistency(
                    "spike order relation contains a cycle",
                ))
            }
            _ => {}
        }
        state[v] = 1;
        let mut best = 0;
        for w in 0..items.len() {
            if w != v && less(items[v], items[w]) {
                best = best.max(visit(w, items, less, f, state)?);
            }
        }
        state[v] = 2;
        f[v] = best + 1;
        Ok(f[v])
    }
    for v in 0..m {
        visit(v, items, &less, &mut f, &mut state)?;
    }
    let total = *f.iter().max().expect("nonempty");
    // items is sorted, so scanning ascending yields the lex-least chain
    let mut start = None;
    for v in 0..m {
        if f[v] == total {
            start = Some(v);
            break;
        }
    }
    let mut chain = Vec::with_capacity(total);
    let mut cur = start.expect("some maximum exists");
    chain.push(items[cur]);
    while f[cur] > 1 {
        let mut next = None;
        for w in 0..m {
            if w != cur && less(items[cur], items[w]) && f[w] == f[cur] - 1 {
                next = Some(w);
                break;
            }
        }
        cur = next.ok_or(Error::InternalInconsistency(
            "longest-chain reconstruction lost its successor",
        ))?;
        chain.push(items[cur]);
    }
    Ok(chain)
}

/// Compute the chain statistics of spike i.
pub fn chain_stats(
    cfg: &PseudoConfiguration,
    d: &SpikeDecomposition,
    i: usize,
) -> Result<ChainStats> {
    let members = d
        .spikes
        .get(i)
        .ok_or(Error::NotInSpike { spike: i, p: 0 })?;
    let (a, b) = d.anchors(i);
    let v_chain = longest_chain(members, |p, q| v_less(cfg, a, b, p, q))?;
    let h_chain = longest_chain(members, |p, q| h_less(cfg, a, b, p, q))?;

    let (left_len, left_witness, right_len, right_witness) = if v_chain.is_empty() {
        (0, Vec::new(), 0, Vec::new())
    } else {
        let coloring = TransitiveColoring::try_new(v_chain.clone(), |p, q, r| {
            Ok(match classify_vertical_triple(cfg, d, i, p, q, r)? {
                VerticalClass::Left => TripleClass::First,
                VerticalClass::Right => TripleClass::Second,
            })
        })?;
        let mono = longest_monochromatic(&coloring);
        (
            mono.first_len,
            mono.first_witness,
            mono.second_len,
            mono.second_witness,
        )
    };

    let (inner_len, inner_witness, outer_len, outer_witness) = if h_chain.is_empty() {
        (0, Vec::new(), 0, Vec::new())
    } else {
        let coloring = TransitiveColoring::try_new(h_chain.clone(), |p, q, r| {
            Ok(match classify_horizontal_triple(cfg, d, i, p, q, r)? {
                HorizontalClass::Inner => TripleClass::First,
                HorizontalClass::Outer => TripleClass::Second,
            })
        })?;
        let mono = longest_monochromatic(&coloring);
        (
            mono.first_len,
            mono.first_witness,
            mono.second_len,
            mono.second_witness,
        )
    };

    Ok(ChainStats {
        spike: i,
        size: members.len(),
        vertical_len: v_chain.len(),
        horizontal_len: h_chain.len(),
        left_len,
        right_len,
        inner_len,
        outer_len,
        vertical_witness: v_chain,
        horizontal_witness: h_chain,
        left_witness,
        right_witness,
        inner_witness,
        outer_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::hull_cycle;

    /// 40x40 square with room below the bottom edge for spike content.
    fn square40(extra: &[(i64, i64)]) -> (PseudoConfiguration, ConvexCertificate) {
        let mut pts = vec![(0, 0), (40, 0), (40, 40), (0, 40)];
        pts.extend_from_slice(extra);
        let cfg = PseudoConfiguration::from_points(&pts).unwrap();
        let x = hull_cycle(&cfg, &[0, 1, 2, 3]).unwrap();
        (cfg, x)
    }

    #[test]
    fn spike_of_point_below_bottom_edge() {
        let (cfg, x) = square40(&[(20, -10)]);
        // bottom edge is (x_0, x_1) = labels (0, 1)
        assert_eq!(spike_of(&cfg, &x, 4).unwrap(), Some(0));
    }

    #[test]
    fn spike_of_interior_point_is_none() {
        let (cfg, x) = square40(&[(20, 19)]);
        assert_eq!(spike_of(&cfg, &x, 4).unwrap(), None);
    }

    #[test]
    fn spike_of_cut_off_point_is_none() {
        // far beyond the bottom-right corner: the extension is not convex
        let (cfg, x) = square40(&[(50, -50)]);
        assert_eq!(spike_of(&cfg, &x, 4).unwrap(), None);
        let mut labels = x.members.clone();
        labels.push(4);
        assert!(!convex_position(&cfg, &labels));
    }

    #[test]
    fn spike_of_rejects_members() {
        let (cfg, x) = square40(&[(20, -10)]);
        assert!(matches!(spike_of(&cfg, &x, 2), Err(Error::PInX { p: 2 })));
    }

    #[test]
    fn spike_membership_matches_region_test() {
        // The convex-extension characterization agrees with the raw
        // region test: beyond the edge, inside both neighbor pseudolines.
        let extras: Vec<(i64, i64)> = vec![
            (20, -10),
            (35, -6),
            (45, 20),
            (19, 55),
            (-9, 20),
            (-21, -19),
            (70, -69),
            (17, 22),
            (42, 41),
        ];
        let (cfg, x) = square40(&extras);
        let k = x.k();
        for p in 4..cfg.n() {
            let by_extension = spike_of(&cfg, &x, p).unwrap();
            let mut by_region = None;
            for i in 0..k {
                let (e0, e1) = (x.hull_cycle[i], x.hull_cycle[(i + 1) % k]);
                let (prev, next) = (
                    x.hull_cycle[(i + k - 1) % k],
                    x.hull_cycle[(i + 2) % k],
                );
                if cfg.orient(e0, e1, p) == crate::chirotope::Sign::Cw
                    && cfg.orient(prev, e0, p) == crate::chirotope::Sign::Ccw
                    && cfg.orient(e1, next, p) == crate::chirotope::Sign::Ccw
                {
                    assert!(by_region.is_none(), "regions must be disjoint");
                    by_region = Some(i);
                }
            }
            assert_eq!(by_extension, by_region, "point {p}");
        }
    }

    #[test]
    fn decompose_example() {
        let (cfg, x) = square40(&[(20, -10), (20, -20), (-10, 20)]);
        let d = decompose(&cfg, &x).unwrap();
        assert_eq!(d.spikes[0], vec![4, 5]); // below bottom edge
        assert_eq!(d.spikes[3], vec![6]); // beyond left edge (x_3, x_0)
        assert!(d.spikes[1].is_empty() && d.spikes[2].is_empty());
        assert!(d.unassigned.is_empty());
        // every assigned point extends X convexly
        for (i, spike) in d.spikes.iter().enumerate() {
            for &p in spike {
                let mut labels = x.members.clone();
                labels.push(p);
                assert!(convex_position(&cfg, &labels));
                assert_eq!(d.spike_of_label(p), Some(i));
            }
        }
    }

    #[test]
    fn decompose_no_outside_points() {
        let pts = vec![(0, 0), (40, 0), (40, 40), (0, 40)];
        let cfg = PseudoConfiguration::from_points(&pts).unwrap();
        let x = hull_cycle(&cfg, &[0, 1, 2, 3]).unwrap();
        let d = decompose(&cfg, &x).unwrap();
        assert!(d.spikes.iter().all(|s| s.is_empty()));
        assert!(d.unassigned.is_empty());
    }

    #[test]
    fn vertical_relation_example() {
        // stacked points below the bottom edge: the shallower one's
        // anchor triangle nests inside the deeper one's
        let (cfg, x) = square40(&[(20, -10), (20, -20)]);
        let d = decompose(&cfg, &x).unwrap();
        let (kind, ord) = relation_in_spike(&cfg, &d, 0, 4, 5).unwrap();
        assert_eq!(kind, OrderKind::Vertical);
        assert_eq!(ord, std::cmp::Ordering::Less);
        let (kind, ord) = relation_in_spike(&cfg, &d, 0, 5, 4).unwrap();
        assert_eq!(kind, OrderKind::Vertical);
        assert_eq!(ord, std::cmp::Ordering::Greater);
    }

    #[test]
    fn horizontal_relation_example() {
        let (cfg, x) = square40(&[(10, -10), (30, -10)]);
        let d = decompose(&cfg, &x).unwrap();
        let (kind, ord) = relation_in_spike(&cfg, &d, 0, 4, 5).unwrap();
        assert_eq!(kind, OrderKind::Horizontal);
        assert_eq!(ord, std::cmp::Ordering::Less);
        let (kind, ord) = relation_in_spike(&cfg, &d, 0, 5, 4).unwrap();
        assert_eq!(kind, OrderKind::Horizontal);
        assert_eq!(ord, std::cmp::Ordering::Greater);
    }

    #[test]
    fn vertical_classification_and_mirror() {
        // a tower bulging right classifies left; its mirror classifies right
        let tower = [(20, -10), (21, -20), (20, -30)];
        let (cfg, x) = square40(&tower);
        let d = decompose(&cfg, &x).unwrap();
        assert_eq!(
            classify_vertical_triple(&cfg, &d, 0, 4, 5, 6).unwrap(),
            VerticalClass::Left
        );

        let mirrored: Vec<(i64, i64)> = tower.iter().map(|&(px, py)| (40 - px, py)).collect();
        let (cfg2, x2) = square40(&mirrored);
        let d2 = decompose(&cfg2, &x2).unwrap();
        assert_eq!(
            classify_vertical_triple(&cfg2, &d2, 0, 4, 5, 6).unwrap(),
            VerticalClass::Right
        );
    }

    #[test]
    fn horizontal_classification_examples() {
        // concave-up arc below the edge: inner
        let (cfg, x) = square40(&[(10, -20), (20, -30), (30, -20)]);
        let d = decompose(&cfg, &x).unwrap();
        assert_eq!(
            classify_horizontal_triple(&cfg, &d, 0, 4, 5, 6).unwrap(),
            HorizontalClass::Inner
        );
        // concave-down arc: outer, and the triple itself stays convex
        let (cfg, x) = square40(&[(9, -31), (20, -21), (31, -30)]);
        let d = decompose(&cfg, &x).unwrap();
        assert_eq!(
            classify_horizontal_triple(&cfg, &d, 0, 4, 5, 6).unwrap(),
            HorizontalClass::Outer
        );
        assert!(convex_position(&cfg, &[4, 5, 6]));
    }

    #[test]
    fn not_a_chain_is_rejected() {
        let (cfg, x) = square40(&[(9, -12), (31, -11), (20, -24)]);
        let d = decompose(&cfg, &x).unwrap();
        // 4 and 5 are horizontally comparable, not vertically
        assert!(matches!(
            classify_vertical_triple(&cfg, &d, 0, 4, 5, 6),
            Err(Error::NotAChain { .. })
        ));
    }

    #[test]
    fn stats_empty_spike() {
        let (cfg, x) = square40(&[(20, -10)]);
        let d = decompose(&cfg, &x).unwrap();
        let s = chain_stats(&cfg, &d, 2).unwrap();
        assert_eq!(s.size, 0);
        assert_eq!(s.vertical_len, 0);
        assert_eq!(s.horizontal_len, 0);
        assert!(s.vertical_witness.is_empty() && s.outer_witness.is_empty());
    }

    #[test]
    fn stats_single_tower() {
        // tower of 4, all-left by construction (bulging right)
        let (cfg, x) = square40(&[(20, -5), (22, -12), (23, -20), (22, -28)]);
        let d = decompose(&cfg, &x).unwrap();
        assert_eq!(d.spikes[0].len(), 4);
        let s = chain_stats(&cfg, &d, 0).unwrap();
        assert_eq!(s.vertical_len, 4);
        assert_eq!(s.horizontal_len, 1);
        assert_eq!(s.left_len, 4);
        assert_eq!(s.vertical_witness, vec![4, 5, 6, 7]);
        assert_eq!(s.left_witness, vec![4, 5, 6, 7]);
        assert!(s.size <= s.vertical_len * s.horizontal_len);
    }

    #[test]
    fn stats_single_arc() {
        // inner arc of 4: horizontal chain, vertical length 1
        let (cfg, x) = square40(&[(8, -12), (16, -16), (24, -16), (32, -12)]);
        let d = decompose(&cfg, &x).unwrap();
        assert_eq!(d.spikes[0].len(), 4);
        let s = chain_stats(&cfg, &d, 0).unwrap();
        assert_eq!(s.horizontal_len, 4);
        assert_eq!(s.vertical_len, 1);
        assert_eq!(s.inner_len, 4);
        assert!(s.size <= s.vertical_len * s.horizontal_len);
    }

    #[test]
    fn small_k_is_rejected() {
        let cfg =
            PseudoConfiguration::from_points(&[(0, 0), (40, 0), (20, 40), (20, -10)]).unwrap();
        let x = hull_cycle(&cfg, &[0, 1, 2]).unwrap();
        assert!(matches!(
            spike_of(&cfg, &x, 3),
            Err(Error::ArityTooSmall { .. })
        ));
    }
}
