//! Transitive colorings of triples of an ordered sequence, and the
//! cup-cap dynamic program that pulls a large monochromatic subset out of
//! one.
//!
//! A 2-coloring of the triples of a linearly ordered set is transitive
//! when two same-class triples chained on their middle pair force the two
//! straddling triples into the same class. Under that closure rule a
//! subsequence whose consecutive triples share a class has all its triples
//! in that class, which is what makes the pair-indexed DP sound. Above the
//! binomial threshold C(k+l-4, k-2) the extraction is guaranteed to find a
//! k-subset of the first class or an l-subset of the second.

use serde::{Deserialize, Serialize};

use crate::chirotope::{sorted_triples, triple_count, triple_rank, Label};
use crate::error::{Error, Result};

/// One of the two classes of a transitive coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleClass {
    First,
    Second,
}

impl TripleClass {
    pub fn other(self) -> TripleClass {
        match self {
            TripleClass::First => TripleClass::Second,
            TripleClass::Second => TripleClass::First,
        }
    }
}

/// An ordered label sequence with a validated transitive 2-coloring of
/// its position triples.
#[derive(Clone, Debug)]
pub struct TransitiveColoring {
    seq: Vec<Label>,
    colors: Box<[TripleClass]>,
}

impl TransitiveColoring {
    /// Build a coloring by evaluating `assign` on every position triple
    /// i < j < k, then check the transitive-closure rule on all 4-chains.
    pub fn try_new(
        seq: Vec<Label>,
        mut assign: impl FnMut(Label, Label, Label) -> Result<TripleClass>,
    ) -> Result<Self> {
        let m = seq.len();
        let mut colors = Vec::with_capacity(triple_count(m));
        for (i, j, k) in sorted_triples(m) {
            colors.push(assign(seq[i], seq[j], seq[k])?);
        }
        let coloring = TransitiveColoring {
            seq,
            colors: colors.into_boxed_slice(),
        };
        coloring.check_transitive()?;
        Ok(coloring)
    }

    fn check_transitive(&self) -> Result<()> {
        let m = self.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let c = self.class_at(i, j, k);
                    for l in k + 1..m {
                        if self.class_at(j, k, l) == c
                            && (self.class_at(i, j, l) != c || self.class_at(i, k, l) != c)
                        {
                            return Err(Error::InvalidColoring {
                                witness: [i, j, k, l],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[Label] {
        &self.seq
    }

    /// Class of the triple at positions i < j < k.
    pub fn class_at(&self, i: usize, j: usize, k: usize) -> TripleClass {
        self.colors[triple_rank(self.len(), i, j, k)]
    }
}

/// Longest monochromatic subsets of both classes, as label lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonochromaticBest {
    pub first_len: usize,
    pub first_witness: Vec<Label>,
    pub second_len: usize,
    pub second_witness: Vec<Label>,
}

/// Pair-indexed DP: the longest subsequence all of whose triples lie in
/// one class, for both classes. Singletons and pairs count for either
/// class. Ties prefer the earlier final element, then the earlier
/// predecessor, so the result is deterministic.
pub fn longest_monochromatic(coloring: &TransitiveColoring) -> MonochromaticBest {
    let (first_len, first_witness) = longest_of_class(coloring, TripleClass::First);
    let (second_len, second_witness) = longest_of_class(coloring, TripleClass::Second);
    MonochromaticBest {
        first_len,
        first_witness,
        second_len,
        second_witness,
    }
}

fn longest_of_class(coloring: &TransitiveColoring, class: TripleClass) -> (usize, Vec<Label>) {
    let m = coloring.len();
    let seq = coloring.sequence();
    match m {
        0 => return (0, Vec::new()),
        1 => return (1, vec![seq[0]]),
        _ => {}
    }
    // dp[i][j]: longest subsequence of this class ending in (i, j)
    let mut dp = vec![vec![2usize; m]; m];
    let mut pred = vec![vec![usize::MAX; m]; m];
    for j in 1..m {
        for i in 0..j {
            for h in 0..i {
                if coloring.class_at(h, i, j) == class && dp[h][i] + 1 > dp[i][j] {
                    dp[i][j] = dp[h][i] + 1;
                    pred[i][j] = h;
                }
            }
        }
    }
    let mut best = (2, (0, 1));
    for j in 1..m {
        for i in 0..j {
            if dp[i][j] > best.0 {
                best = (dp[i][j], (i, j));
            }
        }
    }
    let (len, (mut i, mut j)) = best;
    let mut rev = vec![j, i];
    while pred[i][j] != usize::MAX {
        let h = pred[i][j];
        rev.push(h);
        j = i;
        i = h;
    }
    rev.reverse();
    (len, rev.into_iter().map(|p| seq[p]).collect())
}

/// Threshold of the extraction guarantee: C(k + l - 4, k - 2).
pub fn cupcap_threshold(k: usize, l: usize) -> num_bigint::BigUint {
    binomial(k + l - 4, k - 2)
}

pub fn binomial(n: usize, r: usize) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    if r > n {
        return BigUint::from(0u32);
    }
    let r = r.min(n - r);
    let mut acc = BigUint::from(1u32);
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Extract a subset of size >= k with all triples in the first class, or
/// of size >= l with all triples in the second; guaranteed whenever the
/// sequence is longer than C(k+l-4, k-2). Below the threshold, returns
/// the larger monochromatic subset found with no size promise.
pub fn cupcap_extract(
    coloring: &TransitiveColoring,
    k: usize,
    l: usize,
) -> Result<(TripleClass, Vec<Label>)> {
    if k < 3 {
        return Err(Error::ArityTooSmall {
            what: "first-class target size k",
            min: 3,
            got: k,
        });
    }
    if l < 3 {
        return Err(Error::ArityTooSmall {
            what: "second-class target size l",
            min: 3,
            got: l,
        });
    }
    let mono = longest_monochromatic(coloring);
    let (class, subset) = if mono.first_len >= k {
        (TripleClass::First, mono.first_witness)
    } else if mono.second_len >= l {
        (TripleClass::Second, mono.second_witness)
    } else if mono.first_len >= mono.second_len {
        (TripleClass::First, mono.first_witness)
    } else {
        (TripleClass::Second, mono.second_witness)
    };
    revalidate(coloring, class, &subset)?;
    Ok((class, subset))
}

fn revalidate(coloring: &TransitiveColoring, class: TripleClass, subset: &[Label]) -> Result<()> {
    let pos: Vec<usize> = subset
        .iter()
        .map(|lab| {
            coloring
                .sequence()
                .iter()
                .position(|s| s == lab)
                .ok_or(Error::InternalInconsistency(
                    "extracted label missing from the sequence",
                ))
        })
        .collect::<Result<_>>()?;
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            for c in b + 1..pos.len() {
                if coloring.class_at(pos[a], pos[b], pos[c]) != class {
                    return Err(Error::InternalInconsistency(
                        "extracted subset is not monochromatic",
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn by_position(
        m: usize,
        f: impl Fn(usize, usize, usize) -> TripleClass,
    ) -> TransitiveColoring {
        TransitiveColoring::try_new((0..m).collect(), |i, j, k| Ok(f(i, j, k))).unwrap()
    }

    #[test]
    fn thresholds() {
        assert_eq!(cupcap_threshold(4, 4), BigUint::from(6u32));
        assert_eq!(cupcap_threshold(5, 5), BigUint::from(20u32));
        assert_eq!(cupcap_threshold(3, 3), BigUint::from(2u32));
        assert_eq!(cupcap_threshold(4, 5), BigUint::from(10u32));
    }

    #[test]
    fn constant_coloring_extracts_everything() {
        let c = by_position(7, |_, _, _| TripleClass::First);
        let (class, subset) = cupcap_extract(&c, 4, 4).unwrap();
        assert_eq!(class, TripleClass::First);
        assert_eq!(subset, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn single_triple_is_monochromatic() {
        let c = by_position(3, |_, _, _| TripleClass::Second);
        let (class, subset) = cupcap_extract(&c, 3, 3).unwrap();
        assert_eq!(class, TripleClass::Second);
        assert_eq!(subset.len(), 3);
    }

    /// Chord rule on a value sequence with distinct x = position: the
    /// middle value above the chord makes a cap (First), below makes a
    /// cup (Second). This is the classical transitive coloring.
    fn chord_coloring(vals: &[i64]) -> TransitiveColoring {
        let above = |i: usize, j: usize, k: usize| {
            let lhs = (vals[j] - vals[i]) * (k as i64 - i as i64);
            let rhs = (vals[k] - vals[i]) * (j as i64 - i as i64);
            assert_ne!(lhs, rhs, "collinear triple in test data");
            if lhs > rhs {
                TripleClass::First
            } else {
                TripleClass::Second
            }
        };
        by_position(vals.len(), above)
    }

    #[test]
    fn cups_and_caps_split() {
        // strictly concave values: every triple is a cap
        let c = chord_coloring(&[0, 30, 51, 62, 60, 49, 28, -5]);
        let mono = longest_monochromatic(&c);
        assert_eq!(mono.first_len, 8);
        assert_eq!(mono.second_len, 2);
        let (class, subset) = cupcap_extract(&c, 4, 4).unwrap();
        assert_eq!(class, TripleClass::First);
        assert_eq!(subset.len(), 8);
    }

    #[test]
    fn invalid_coloring_is_rejected() {
        // Only the middle triple of a 4-chain differs: breaks closure.
        let err = TransitiveColoring::try_new((0..4).collect(), |i, j, k| {
            Ok(if (i, j, k) == (0, 1, 2) || (i, j, k) == (1, 2, 3) {
                TripleClass::First
            } else {
                TripleClass::Second
            })
        });
        assert!(matches!(err, Err(Error::InvalidColoring { .. })));
    }

    #[test]
    fn arity_guard() {
        let c = by_position(4, |_, _, _| TripleClass::First);
        assert!(matches!(
            cupcap_extract(&c, 2, 4),
            Err(Error::ArityTooSmall { .. })
        ));
    }

    #[test]
    fn guarantee_over_random_chord_colorings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        'outer: for _ in 0..300 {
            let m = 7 + rng.random_range(0..4usize);
            let vals: Vec<i64> = (0..m).map(|_| rng.random_range(-5000..5000)).collect();
            for i in 0..m {
                for j in i + 1..m {
                    for k in j + 1..m {
                        let lhs = (vals[j] - vals[i]) * (k as i64 - i as i64);
                        let rhs = (vals[k] - vals[i]) * (j as i64 - i as i64);
                        if lhs == rhs {
                            continue 'outer; // discard collinear draws
                        }
                    }
                }
            }
            let c = chord_coloring(&vals);
            let (k, l) = (4, 4);
            if BigUint::from(m) > cupcap_threshold(k, l) {
                tested += 1;
                let (class, subset) = cupcap_extract(&c, k, l).unwrap();
                match class {
                    TripleClass::First => assert!(subset.len() >= k),
                    TripleClass::Second => assert!(subset.len() >= l),
                }
            }
        }
        assert!(tested > 100);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(3, 7), BigUint::from(0u32));
    }
}
