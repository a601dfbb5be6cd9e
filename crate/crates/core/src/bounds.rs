//! Color-budget arithmetic for `r`-regular linear hypergraphs with `n` edges.
//!
//! With `A = ⌊(n−1)/(r−1)⌋`, a palette of `m` colors can never exhaust the
//! recoloring procedure once `m·(m − A) > (r−1)·A·n`. The budget is the
//! smallest such `m`, found in exact integer arithmetic; the real-valued
//! thresholds are reported for comparison only.

use serde::Serialize;

use crate::error::BoundsError;

/// Per-case chromatic limit for `r = 3`.
pub const CASE_LIMIT_R3: f64 = 1.281;
/// Per-case chromatic limit for `r >= 4`.
pub const CASE_LIMIT_R4: f64 = 1.181;

fn check(n: u64, r: u64) -> Result<(), BoundsError> {
    if n < 1 || r < 3 {
        Err(BoundsError::InvalidParameters { n, r })
    } else {
        Ok(())
    }
}

/// `⌊(n−1)/(r−1)⌋`, the largest rank an edge can have.
pub fn coefficient_a(n: u64, r: u64) -> Result<u64, BoundsError> {
    check(n, r)?;
    Ok((n - 1) / (r - 1))
}

/// `m·(m − A) > (r−1)·A·n`
fn clears_token_bound(m: u64, a: u64, rhs: u128) -> bool {
    m > a && (m as u128) * ((m - a) as u128) > rhs
}

/// Smallest palette size `m` with `m·(m − A) > (r−1)·A·n`.
pub fn color_budget(n: u64, r: u64) -> Result<u64, BoundsError> {
    let a = coefficient_a(n, r)?;
    let rhs = (r as u128 - 1) * a as u128 * n as u128;
    let disc = (a as u128) * (a as u128) + 4 * rhs;
    let mut m = ((a as u128 + disc.isqrt()) / 2).max(1) as u64;
    while !clears_token_bound(m, a, rhs) {
        m += 1;
    }
    while m > 1 && clears_token_bound(m - 1, a, rhs) {
        m -= 1;
    }
    Ok(m)
}

/// Positive root of `α²n − αA − (r−1)A`, evaluated once with the floored
/// `A` and once with the exact quotient `(n−1)/(r−1)`.
pub fn beta_threshold(n: u64, r: u64) -> Result<(f64, f64), BoundsError> {
    let a = coefficient_a(n, r)? as f64;
    let nf = n as f64;
    let rm1 = (r - 1) as f64;
    let floored = (a + (a * a + 4.0 * rm1 * a * nf).sqrt()) / (2.0 * nf);
    let a_cont = (nf - 1.0) / rm1;
    let continuous = (a_cont + (a_cont * a_cont + 4.0 * nf * (nf - 1.0)).sqrt()) / (2.0 * nf);
    Ok((floored, continuous))
}

/// `(B + √(B² + 4)) / 2` with `B = 1/(r−1)`; independent of `n`.
pub fn beta_envelope(r: u64) -> Result<f64, BoundsError> {
    check(1, r)?;
    let b = 1.0 / (r - 1) as f64;
    Ok((b + (b * b + 4.0).sqrt()) / 2.0)
}

/// The stated multiple of `n` bounding the chromatic number.
pub fn case_limit(r: u64) -> Result<f64, BoundsError> {
    check(1, r)?;
    Ok(if r == 3 { CASE_LIMIT_R3 } else { CASE_LIMIT_R4 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub r: u64,
    pub a: u64,
    /// `1/(r−1)`
    pub b: f64,
    pub beta_floored: f64,
    pub beta_continuous: f64,
    pub beta_envelope: f64,
    pub budget_m: u64,
    pub case_limit: f64,
    /// `n < r`: the rank estimates `A ≤ (n−1)/2` and the vertex count cap
    /// are only asserted for `n ≥ r`.
    pub n_below_r: bool,
}

impl BoundReport {
    pub fn new(n: u64, r: u64) -> Result<Self, BoundsError> {
        let (beta_floored, beta_continuous) = beta_threshold(n, r)?;
        Ok(Self {
            n,
            r,
            a: coefficient_a(n, r)?,
            b: 1.0 / (r - 1) as f64,
            beta_floored,
            beta_continuous,
            beta_envelope: beta_envelope(r)?,
            budget_m: color_budget(n, r)?,
            case_limit: case_limit(r)?,
            n_below_r: n < r,
        })
    }

    pub const CSV_HEADER: &'static str =
        "n,r,A,B,beta_floored,beta_continuous,beta_envelope,budget_m,case_limit,n_below_r";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.r,
            self.a,
            self.b,
            self.beta_floored,
            self.beta_continuous,
            self.beta_envelope,
            self.budget_m,
            self.case_limit,
            self.n_below_r
        )
    }

    pub fn table(&self) -> String {
        let rows = [
            ("n (edges)", self.n.to_string()),
            ("r (degree)", self.r.to_string()),
            ("A = floor((n-1)/(r-1))", self.a.to_string()),
            ("B = 1/(r-1)", format!("{:.6}", self.b)),
            ("beta (floored A)", format!("{:.6}", self.beta_floored)),
            ("beta (continuous A)", format!("{:.6}", self.beta_continuous)),
            ("beta envelope", format!("{:.6}", self.beta_envelope)),
            ("color budget m", self.budget_m.to_string()),
            ("m / n", format!("{:.6}", self.budget_m as f64 / self.n as f64)),
            ("case limit", format!("{}", self.case_limit)),
        ];
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<24} {v}\n"));
        }
        if self.n_below_r {
            out.push_str("note: n < r, no r-regular linear hypergraph of this size has edges of rank >= 2\n");
        }
        out
    }
}
