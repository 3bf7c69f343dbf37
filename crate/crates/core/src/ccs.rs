//! The `.ccs` text format.
//!
//! Line 1 is the point count n, line 2 the '+'/'-' string of length
//! C(n, 3) in lexicographic triple order, and the optional line 3 reads
//! `coords:` followed by n space-separated `x/y` integer pairs. The
//! format is canonical: parse(serialize(cfg)) is the identity.

use num_bigint::BigInt;

use crate::chirotope::{
    triple_count, validate_axioms, PseudoConfiguration, RawChirotope, Sign,
};
use crate::error::{Error, Result};

pub fn serialize_ccs(cfg: &PseudoConfiguration) -> String {
    let mut out = format!("{}\n{}\n", cfg.n(), cfg.sign_string());
    if let Some(coords) = cfg.coords() {
        out.push_str("coords:");
        for (x, y) in coords {
            out.push_str(&format!(" {x}/{y}"));
        }
        out.push('\n');
    }
    out
}

/// Parse a `.ccs` document; axiom validation is skipped only when
/// `checked` is false.
pub fn parse_ccs(text: &str, checked: bool) -> Result<PseudoConfiguration> {
    let mut lines = text.lines();
    let syntax = |line: usize, col: usize, msg: &str| Error::SyntaxError {
        line,
        col,
        msg: msg.to_string(),
    };

    let n_line = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    let n: usize = n_line
        .trim()
        .parse()
        .map_err(|_| syntax(1, 1, "expected the point count"))?;
    if n < 3 {
        return Err(Error::NTooSmall { min: 3, got: n });
    }

    let sign_line = lines
        .next()
        .ok_or_else(|| syntax(2, 1, "missing sign string"))?
        .trim();
    let expected = triple_count(n);
    if sign_line.chars().count() != expected {
        return Err(syntax(
            2,
            sign_line.chars().count() + 1,
            &format!("sign string must have length C(n,3) = {expected}"),
        ));
    }
    let mut signs = Vec::with_capacity(expected);
    for (idx, c) in sign_line.chars().enumerate() {
        match Sign::from_char(c) {
            Some(s) => signs.push(s),
            None => return Err(syntax(2, idx + 1, "signs are '+' or '-'")),
        }
    }
    let raw = RawChirotope::new(n, signs)?;

    let mut coords: Option<Vec<(BigInt, BigInt)>> = None;
    for (extra_idx, line) in lines.enumerate() {
        let line_no = 3 + extra_idx;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if coords.is_some() {
            return Err(syntax(line_no, 1, "unexpected content after coords"));
        }
        let rest = trimmed
            .strip_prefix("coords:")
            .ok_or_else(|| syntax(line_no, 1, "expected 'coords:' prefix"))?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        if tokens.len() != n {
            return Err(syntax(
                line_no,
                1,
                &format!("expected {n} coordinate pairs, got {}", tokens.len()),
            ));
        }
        let mut pts = Vec::with_capacity(n);
        for (ti, tok) in tokens.iter().enumerate() {
            let (xs, ys) = tok
                .split_once('/')
                .ok_or_else(|| syntax(line_no, ti + 1, "coordinate pairs look like x/y"))?;
            let x: BigInt = xs
                .parse()
                .map_err(|_| syntax(line_no, ti + 1, "bad x coordinate"))?;
            let y: BigInt = ys
                .parse()
                .map_err(|_| syntax(line_no, ti + 1, "bad y coordinate"))?;
            pts.push((x, y));
        }
        coords = Some(pts);
    }

    if checked {
        let report = validate_axioms(&raw);
        if !report.passed() {
            return Err(Error::AxiomViolation { report });
        }
    }

    match coords {
        Some(pts) => {
            // stored coordinates must reproduce the stored signs
            let rebuilt = PseudoConfiguration::from_integer_points(&pts)?;
            if rebuilt.sign_string() != raw.sign_string() {
                for (r, (i, j, k)) in crate::chirotope::sorted_triples(n).enumerate() {
                    if rebuilt.sign_string().as_bytes()[r] != raw.sign_string().as_bytes()[r] {
                        return Err(Error::CoordsInconsistent { i, j, k });
                    }
                }
                unreachable!("strings differ at some position");
            }
            Ok(PseudoConfiguration::with_coords(raw, pts))
        }
        None => Ok(PseudoConfiguration::from_raw_unchecked(raw)),
    }
}
