//! Sign tables of point triples (CC-systems) and their axioms.
//!
//! A pseudo-configuration of `n` labeled points is stored as one sign per
//! unordered triple `{i < j < k}`; signs of ordered triples follow from
//! permutation parity. Validation checks the interiority and transitivity
//! axioms over all ordered tuples of distinct labels, which together with
//! the built-in alternation characterize the counterclockwise systems
//! realizable by pseudoline arrangements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Point label, `0..n`.
pub type Label = usize;

/// Orientation of an ordered point triple. There is no zero sign:
/// configurations are in general position by definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Ccw,
    Cw,
}

impl Sign {
    #[inline]
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Ccw => Sign::Cw,
            Sign::Cw => Sign::Ccw,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Ccw => '+',
            Sign::Cw => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Ccw),
            '-' => Some(Sign::Cw),
            _ => None,
        }
    }
}

/// `C(n, 3)`: number of unordered triples on `n` labels.
pub fn triple_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

#[inline]
fn choose2(m: usize) -> usize {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

#[inline]
fn choose3(m: usize) -> usize {
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

/// Lexicographic rank of the sorted triple `(i, j, k)` among all sorted
/// triples drawn from `0..n`, e.g. for n = 4: 012, 013, 023, 123.
#[inline]
pub fn triple_rank(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    choose3(n) - choose3(n - i) + choose2(n - 1 - i) - choose2(n - j) + (k - j - 1)
}

/// Iterate sorted triples of `0..n` in lexicographic order.
pub fn sorted_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k)))
    })
}

/// A bare sign table with no validity promise. This is the type mutation
/// search and the unchecked parser operate on; [`PseudoConfiguration`]
/// wraps a table that passed validation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawChirotope {
    n: usize,
    signs: Box<[Sign]>,
}

impl RawChirotope {
    pub fn new(n: usize, signs: Vec<Sign>) -> Result<Self> {
        if n < 3 {
            return Err(Error::NTooSmall { min: 3, got: n });
        }
        let expected = triple_count(n);
        if signs.len() != expected {
            return Err(Error::BadTableLength {
                n,
                expected,
                got: signs.len(),
            });
        }
        Ok(RawChirotope {
            n,
            signs: signs.into_boxed_slice(),
        })
    }

    /// Decode a table from a bit mask. Bit `t - 1 - r` (with `t` the triple
    /// count) encodes the triple of rank `r`: 0 is `+`, 1 is `-`, so
    /// ascending masks enumerate sign strings in lexicographic order.
    pub fn from_bit_mask(n: usize, mask: u64) -> Result<Self> {
        let t = triple_count(n);
        if t > 64 {
            return Err(Error::NTooLarge { max: 8, got: n });
        }
        let signs = (0..t)
            .map(|r| {
                if mask >> (t - 1 - r) & 1 == 0 {
                    Sign::Ccw
                } else {
                    Sign::Cw
                }
            })
            .collect();
        RawChirotope::new(n, signs)
    }

    pub fn from_sign_str(n: usize, s: &str) -> Result<Self> {
        let signs: Option<Vec<Sign>> = s.chars().map(Sign::from_char).collect();
        let signs = signs.ok_or_else(|| Error::SyntaxError {
            line: 0,
            col: 1 + s.chars().take_while(|&c| Sign::from_char(c).is_some()).count(),
            msg: "sign string may contain only '+' and '-'".into(),
        })?;
        RawChirotope::new(n, signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.as_char()).collect()
    }

    /// Sign of the sorted triple `i < j < k`.
    #[inline]
    pub fn sign_sorted(&self, i: usize, j: usize, k: usize) -> Sign {
        self.signs[triple_rank(self.n, i, j, k)]
    }

    pub fn flip_triple(&mut self, i: usize, j: usize, k: usize) -> Result<()> {
        let mut t = [i, j, k];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] || t[2] >= self.n {
            return Err(Error::RepeatedLabel {
                labels: vec![i, j, k],
                n: self.n,
            });
        }
        let r = triple_rank(self.n, t[0], t[1], t[2]);
        self.signs[r] = self.signs[r].flipped();
        Ok(())
    }

    /// Orientation of an ordered triple of distinct labels: the stored sign
    /// of the sorted triple, flipped once per inversion.
    #[inline]
    pub fn orient(&self, p: Label, q: Label, r: Label) -> Sign {
        debug_assert!(p != q && q != r && p != r && p < self.n && q < self.n && r < self.n);
        let (mut a, mut b, mut c) = (p, q, r);
        let mut flip = false;
        if a > b {
            std::mem::swap(&mut a, &mut b);
            flip = !flip;
        }
        if b > c {
            std::mem::swap(&mut b, &mut c);
            flip = !flip;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
            flip = !flip;
        }
        let s = self.signs[triple_rank(self.n, a, b, c)];
        if flip {
            s.flipped()
        } else {
            s
        }
    }

    /// Apply a relabeling: point `x` of the result is point `perm[x]` of
    /// `self`.
    pub fn relabeled(&self, perm: &[Label]) -> RawChirotope {
        debug_assert_eq!(perm.len(), self.n);
        let signs = sorted_triples(self.n)
            .map(|(i, j, k)| self.orient(perm[i], perm[j], perm[k]))
            .collect();
        RawChirotope {
            n: self.n,
            signs,
        }
    }

    pub fn mirrored(&self) -> RawChirotope {
        let signs = self.signs.iter().map(|s| s.flipped()).collect();
        RawChirotope {
            n: self.n,
            signs,
        }
    }
}

/// Which axiom a violation witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axiom {
    Interiority,
    Transitivity,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Label>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ValidationStatus {
    Pass,
    Fail,
}

/// Outcome of axiom validation. `status` is `Pass` exactly when
/// `violations` is empty; `truncated` marks reports that hit the witness
/// cap.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub status: ValidationStatus,
    pub violations: Vec<Violation>,
    pub truncated: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.status == ValidationStatus::Pass
    }
}

const VIOLATION_CAP: usize = 64;

/// Full validation with witnesses, capped at [`VIOLATION_CAP`] instances.
pub fn validate_axioms(raw: &RawChirotope) -> ValidationReport {
    let mut violations = Vec::new();
    let mut truncated = false;
    collect_violations(raw, &mut |axiom, witness| {
        if violations.len() < VIOLATION_CAP {
            violations.push(Violation { axiom, witness });
            true
        } else {
            truncated = true;
            false
        }
    });
    ValidationReport {
        status: if violations.is_empty() {
            ValidationStatus::Pass
        } else {
            ValidationStatus::Fail
        },
        violations,
        truncated,
    }
}

/// Early-exit check used by the enumerator.
pub fn passes_axioms(raw: &RawChirotope) -> bool {
    let mut ok = true;
    collect_violations(raw, &mut |_, _| {
        ok = false;
        false
    });
    ok
}

/// Visit axiom violations; the sink returns false to stop the scan.
fn collect_violations(raw: &RawChirotope, sink: &mut dyn FnMut(Axiom, Vec<Label>) -> bool) {
    let n = raw.n;
    // Interiority: t inside triangle pqr forces pqr counterclockwise.
    for p in 0..n {
        for q in 0..n {
            if q == p {
                continue;
            }
            for r in 0..n {
                if r == p || r == q {
                    continue;
                }
                for t in 0..n {
                    if t == p || t == q || t == r {
                        continue;
                    }
                    if raw.orient(t, q, r) == Sign::Ccw
                        && raw.orient(p, t, r) == Sign::Ccw
                        && raw.orient(p, q, t) == Sign::Ccw
                        && raw.orient(p, q, r) == Sign::Cw
                        && !sink(Axiom::Interiority, vec![p, q, r, t])
                    {
                        return;
                    }
                }
            }
        }
    }
    // Transitivity: on the counterclockwise side of the ray (t, s), the
    // rotation around t is a total order.
    let mut side = Vec::with_capacity(n);
    for t in 0..n {
        for s in 0..n {
            if s == t {
                continue;
            }
            side.clear();
            side.extend(
                (0..n).filter(|&u| u != t && u != s && raw.orient(t, s, u) == Sign::Ccw),
            );
            for &p in &side {
                for &q in &side {
                    if q == p || raw.orient(t, p, q) != Sign::Ccw {
                        continue;
                    }
                    for &r in &side {
                        if r == p || r == q {
                            continue;
                        }
                        if raw.orient(t, q, r) == Sign::Ccw
                            && raw.orient(t, p, r) == Sign::Cw
                            && !sink(Axiom::Transitivity, vec![t, s, p, q, r])
                        {
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// A validated pseudo-configuration: a sign table that satisfies the
/// axioms, with the source coordinates retained when it was built from
/// points. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoConfiguration {
    raw: RawChirotope,
    coords: Option<Vec<(BigInt, BigInt)>>,
}

/// Sign of the determinant | pj - pi, pk - pi |, or None when collinear.
/// i64 coordinates take an i128 fast path; anything larger falls back to
/// exact big-integer arithmetic.
fn det_sign(pi: &(BigInt, BigInt), pj: &(BigInt, BigInt), pk: &(BigInt, BigInt)) -> Option<Sign> {
    use num_traits::ToPrimitive;
    let small = |v: &(BigInt, BigInt)| Some((v.0.to_i64()?, v.1.to_i64()?));
    if let (Some(a), Some(b), Some(c)) = (small(pi), small(pj), small(pk)) {
        let d = (b.0 - a.0) as i128 * (c.1 - a.1) as i128
            - (b.1 - a.1) as i128 * (c.0 - a.0) as i128;
        return match d.cmp(&0) {
            std::cmp::Ordering::Greater => Some(Sign::Ccw),
            std::cmp::Ordering::Less => Some(Sign::Cw),
            std::cmp::Ordering::Equal => None,
        };
    }
    let d = (&pj.0 - &pi.0) * (&pk.1 - &pi.1) - (&pj.1 - &pi.1) * (&pk.0 - &pi.0);
    if d.is_zero() {
        None
    } else if d.is_positive() {
        Some(Sign::Ccw)
    } else {
        Some(Sign::Cw)
    }
}

impl PseudoConfiguration {
    /// Build from integer points in general position.
    pub fn from_points(points: &[(i64, i64)]) -> Result<Self> {
        let big: Vec<(BigInt, BigInt)> = points
            .iter()
            .map(|&(x, y)| (BigInt::from(x), BigInt::from(y)))
            .collect();
        Self::from_bigint_points(big)
    }

    /// Build from exact rational points. Coordinates are normalized by a
    /// common positive scale (the lcm of all denominators), which leaves
    /// every orientation sign unchanged.
    pub fn from_rational_points(points: &[(BigRational, BigRational)]) -> Result<Self> {
        let mut lcm = BigInt::from(1);
        for (x, y) in points {
            lcm = lcm.lcm(x.denom());
            lcm = lcm.lcm(y.denom());
        }
        let scaled = points
            .iter()
            .map(|(x, y)| {
                let sx = (x * BigRational::from(lcm.clone())).to_integer();
                let sy = (y * BigRational::from(lcm.clone())).to_integer();
                (sx, sy)
            })
            .collect();
        Self::from_bigint_points(scaled)
    }

    /// Build from exact big-integer points.
    pub fn from_integer_points(points: &[(BigInt, BigInt)]) -> Result<Self> {
        Self::from_bigint_points(points.to_vec())
    }

    fn from_bigint_points(points: Vec<(BigInt, BigInt)>) -> Result<Self> {
        let n = points.len();
        if n < 3 {
            return Err(Error::NTooSmall { min: 3, got: n });
        }
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint { i, j });
                }
            }
        }
        let mut signs = Vec::with_capacity(triple_count(n));
        for (i, j, k) in sorted_triples(n) {
            match det_sign(&points[i], &points[j], &points[k]) {
                Some(s) => signs.push(s),
                None => return Err(Error::CollinearTriple { i, j, k }),
            }
        }
        let raw = RawChirotope::new(n, signs)?;
        Ok(PseudoConfiguration {
            raw,
            coords: Some(points),
        })
    }

    /// Accept a raw table after validating the axioms.
    pub fn from_raw(raw: RawChirotope) -> Result<Self> {
        let report = validate_axioms(&raw);
        if !report.passed() {
            return Err(Error::AxiomViolation { report });
        }
        Ok(PseudoConfiguration { raw, coords: None })
    }

    /// Accept a raw table without validation. Downstream results are only
    /// meaningful for tables that would pass; intended for the enumerator
    /// (which validates separately) and for explicitly unchecked parsing.
    pub fn from_raw_unchecked(raw: RawChirotope) -> Self {
        PseudoConfiguration { raw, coords: None }
    }

    pub(crate) fn with_coords(raw: RawChirotope, coords: Vec<(BigInt, BigInt)>) -> Self {
        PseudoConfiguration {
            raw,
            coords: Some(coords),
        }
    }

    pub fn n(&self) -> usize {
        self.raw.n
    }

    pub fn raw(&self) -> &RawChirotope {
        &self.raw
    }

    pub fn coords(&self) -> Option<&[(BigInt, BigInt)]> {
        self.coords.as_deref()
    }

    pub fn sign_string(&self) -> String {
        self.raw.sign_string()
    }

    /// Checked orientation of an ordered triple.
    pub fn orientation(&self, p: Label, q: Label, r: Label) -> Result<Sign> {
        self.check_labels(&[p, q, r])?;
        Ok(self.raw.orient(p, q, r))
    }

    /// Unchecked orientation; callers must pass distinct in-range labels.
    #[inline]
    pub(crate) fn orient(&self, p: Label, q: Label, r: Label) -> Sign {
        self.raw.orient(p, q, r)
    }

    pub(crate) fn check_labels(&self, labels: &[Label]) -> Result<()> {
        let n = self.n();
        for (a, &x) in labels.iter().enumerate() {
            if x >= n || labels[..a].contains(&x) {
                return Err(Error::RepeatedLabel {
                    labels: labels.to_vec(),
                    n,
                });
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        validate_axioms(&self.raw)
    }

    /// The lexicographically smallest sign string over all relabelings
    /// (optionally also over the mirror image). Guarded to small n.
    pub fn canonical_sign_string(&self, identify_mirror: bool) -> Result<String> {
        canonical_sign_string(&self.raw, identify_mirror)
    }
}

/// Maximum n for exhaustive enumeration and canonicalization.
pub const ENUMERATION_MAX_N: usize = 6;

pub fn canonical_sign_string(raw: &RawChirotope, identify_mirror: bool) -> Result<String> {
    let n = raw.n();
    if n > ENUMERATION_MAX_N {
        return Err(Error::NTooLarge {
            max: ENUMERATION_MAX_N,
            got: n,
        });
    }
    let mut best: Option<String> = None;
    let mut consider = |cand: String| match &best {
        Some(b) if *b <= cand => {}
        _ => best = Some(cand),
    };
    let mirror = raw.mirrored();
    for perm in permutations(n) {
        consider(raw.relabeled(&perm).sign_string());
        if identify_mirror {
            consider(mirror.relabeled(&perm).sign_string());
        }
    }
    Ok(best.expect("at least the identity permutation"))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(&mut cur, n, &mut out);
    out
}

fn heap_permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(cur, k - 1, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

/// All valid sign tables on `n` labels, in lexicographic sign-string order.
/// Guarded to `n <= 6` (2^20 candidate tables).
pub fn enumerate_systems(n: usize) -> Result<Vec<PseudoConfiguration>> {
    #[cfg(feature = "parallel")]
    {
        enumerate_systems_par(n)
    }
    #[cfg(not(feature = "parallel"))]
    {
        enumerate_systems_seq(n)
    }
}

fn enumerate_guard(n: usize) -> Result<u64> {
    if n < 3 {
        return Err(Error::NTooSmall { min: 3, got: n });
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::NTooLarge {
            max: ENUMERATION_MAX_N,
            got: n,
        });
    }
    Ok(1u64 << triple_count(n))
}

/// Sequential enumeration kernel; also the fallback when the `parallel`
/// feature is disabled.
pub fn enumerate_systems_seq(n: usize) -> Result<Vec<PseudoConfiguration>> {
    let total = enumerate_guard(n)?;
    Ok((0..total)
        .filter_map(|mask| keep_mask(n, mask))
        .collect())
}

#[cfg(feature = "parallel")]
pub fn enumerate_systems_par(n: usize) -> Result<Vec<PseudoConfiguration>> {
    use rayon::prelude::*;
    let total = enumerate_guard(n)?;
    let mut hits: Vec<(u64, PseudoConfiguration)> = (0..total)
        .into_par_iter()
        .filter_map(|mask| keep_mask(n, mask).map(|cfg| (mask, cfg)))
        .collect();
    hits.sort_unstable_by_key(|(mask, _)| *mask);
    Ok(hits.into_iter().map(|(_, cfg)| cfg).collect())
}

fn keep_mask(n: usize, mask: u64) -> Option<PseudoConfiguration> {
    let raw = RawChirotope::from_bit_mask(n, mask).expect("guarded n");
    if passes_axioms(&raw) {
        Some(PseudoConfiguration::from_raw_unchecked(raw))
    } else {
        None
    }
}

/// Deduplicate an enumeration under relabeling (and optionally mirroring),
/// keeping the first representative of each class in stream order.
pub fn dedup_canonical(
    systems: &[PseudoConfiguration],
    identify_mirror: bool,
) -> Result<Vec<PseudoConfiguration>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut reps = Vec::new();
    for cfg in systems {
        let key = cfg.canonical_sign_string(identify_mirror)?;
        if seen.insert(key) {
            reps.push(cfg.clone());
        }
    }
    Ok(reps)
}
