//! Evaluation of the subset-size bound exponent n + 2n log(n)/k + 8k over
//! even k, in the convention where the bound itself is 2^exponent.

use serde::Serialize;

use crate::error::{Error, Result};

/// Identical bounds implied for the four set families: configurations
/// bound the noncrossing-body and disjoint-body problems from above, and
/// the straight-line problem from below.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ImpliedBounds {
    pub log2_b_n: f64,
    pub log2_c_prime_n: f64,
    pub log2_c_n: f64,
    pub log2_e_n: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub n: usize,
    /// smallest even integer >= sqrt(n log2 n) / 2, floored at 4
    pub prescribed_k: usize,
    /// even k minimizing the exponent over [4, ceil(2 sqrt(n log2 n))]
    pub k_star: usize,
    /// n + 2n log2(n)/k + 8k at k_star; the bound is 2^exponent
    pub exponent: f64,
    pub exponent_at_prescribed: f64,
    /// the same optimum computed with natural logarithms, for comparison
    pub exponent_ln: f64,
    pub implied: ImpliedBounds,
}

fn exponent(n: usize, k: usize, log_n: f64) -> f64 {
    let nf = n as f64;
    nf + 2.0 * nf * log_n / k as f64 + 8.0 * k as f64
}

fn smallest_even_at_least(x: f64) -> usize {
    let mut k = x.ceil().max(2.0) as usize;
    if k % 2 == 1 {
        k += 1;
    }
    k
}

/// Evaluate the bound for target polygon size n.
pub fn bound_b(n: usize) -> Result<BoundReport> {
    if n < 3 {
        return Err(Error::NTooSmall { min: 3, got: n });
    }
    let nf = n as f64;
    let log2_n = nf.log2();
    let prescribed_k = smallest_even_at_least((nf * log2_n).sqrt() / 2.0).max(4);
    let hi = ((2.0 * (nf * log2_n).sqrt()).ceil() as usize).max(prescribed_k).max(4);

    let minimize = |log_n: f64| -> (usize, f64) {
        let mut best = (4usize, exponent(n, 4, log_n));
        let mut k = 6;
        while k <= hi + 1 {
            let e = exponent(n, k, log_n);
            if e < best.1 {
                best = (k, e);
            }
            k += 2;
        }
        best
    };
    let (k_star, exp2) = minimize(log2_n);
    let (_, exp_ln) = minimize(nf.ln());

    Ok(BoundReport {
        schema_version: 1,
        n,
        prescribed_k,
        k_star,
        exponent: exp2,
        exponent_at_prescribed: exponent(n, prescribed_k, log2_n),
        exponent_ln: exp_ln,
        implied: ImpliedBounds {
            log2_b_n: exp2,
            log2_c_prime_n: exp2,
            log2_c_n: exp2,
            log2_e_n: exp2,
        },
    })
}
