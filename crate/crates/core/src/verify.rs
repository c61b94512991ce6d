//! Exact checks of the Eulerian identities behind the alcove counts of
//! dilated hypersimplices, and the Veronese transform of series numerators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::alcove::HypersimplexSpec;
use crate::combinatorics::{composition_set, eulerian_number, eulerian_set};
use crate::enumerate::{enumerate_dilated_alcoves, Strategy};
use crate::error::{ensure, Error, Result};

/// Both sides of
/// `sum_j C(r-1, d+1, ir-j) A(d, j) = r^d A(d, i)`
/// together with alcove counts from each enumeration strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub r: u32,
    pub d: usize,
    pub i: u32,
    pub lhs: u64,
    pub rhs: u64,
    /// `(j, |C(r-1, d+1, ir-j)|, |A(d, j)|)` for the nonzero terms.
    pub terms: Vec<(usize, u64, u64)>,
    /// Empty when enumeration was skipped as too large.
    pub alcove_counts: BTreeMap<Strategy, u64>,
    pub pass: bool,
}

pub fn verify_identity(r: u32, d: usize, i: u32, enumeration_limit: u64) -> Result<IdentityReport> {
    let spec = HypersimplexSpec::new(r, i, d)?;
    let mut terms = Vec::new();
    let mut lhs = 0u64;
    for j in 1..=d {
        let Some(total) = (i * r).checked_sub(j as u32) else { continue };
        let compositions = composition_set(r - 1, d + 1, total)?.len() as u64;
        if compositions == 0 {
            continue;
        }
        let perms = eulerian_set(d, j)?.len() as u64;
        let term = compositions.checked_mul(perms).ok_or(Error::Overflow("identity term"))?;
        lhs = lhs.checked_add(term).ok_or(Error::Overflow("identity sum"))?;
        terms.push((j, compositions, perms));
    }
    let rhs = spec.alcove_count()?;
    let mut alcove_counts = BTreeMap::new();
    if rhs <= enumeration_limit {
        for strategy in Strategy::ALL {
            alcove_counts.insert(strategy, enumerate_dilated_alcoves(&spec, strategy)?.len() as u64);
        }
    }
    let pass = lhs == rhs && alcove_counts.values().all(|&c| c == rhs);
    Ok(IdentityReport { r, d, i, lhs, rhs, terms, alcove_counts, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridBounds {
    pub rmax: u32,
    pub dmax: usize,
    /// Largest alcove count enumerated; larger points compare arithmetic only.
    pub enumeration_limit: u64,
}

impl Default for GridBounds {
    fn default() -> Self {
        GridBounds { rmax: 3, dmax: 4, enumeration_limit: 10_000 }
    }
}

/// Every `(r, d, i)` with `r <= rmax`, `d <= dmax`, `1 <= i <= d`, in that
/// lexicographic order.
pub fn verify_grid(bounds: &GridBounds) -> Result<Vec<IdentityReport>> {
    ensure!(bounds.rmax >= 1 && bounds.dmax >= 1, InvalidParameter, "grid bounds must be at least 1");
    let points: Vec<(u32, usize, u32)> = (1..=bounds.rmax)
        .flat_map(|r| (1..=bounds.dmax).flat_map(move |d| (1..=d as u32).map(move |i| (r, d, i))))
        .collect();
    points
        .par_iter()
        .map(|&(r, d, i)| verify_identity(r, d, i, bounds.enumeration_limit))
        .collect()
}

pub fn render_table(reports: &[IdentityReport]) -> String {
    let mut out = String::from("r  d  i            lhs            rhs  words  pairs  brute  status\n");
    for rep in reports {
        let count = |s: Strategy| rep.alcove_counts.get(&s).map_or("-".to_string(), u64::to_string);
        let _ = writeln!(
            out,
            "{:<2} {:<2} {:<2} {:>14} {:>14} {:>6} {:>6} {:>6}  {}",
            rep.r,
            rep.d,
            rep.i,
            rep.lhs,
            rep.rhs,
            count(Strategy::Words),
            count(Strategy::Pairs),
            count(Strategy::Brute),
            if rep.pass { "pass" } else { "FAIL" }
        );
    }
    out
}

/// Numerator `h_0 + h_1 z + ... + h_s z^s` of a series
/// `h(z) / (1 - z)^n`. Trailing zeros are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumeratorVector {
    coefficients: Vec<i128>,
    denominator_exponent: usize,
}

impl NumeratorVector {
    pub fn new(mut coefficients: Vec<i128>, denominator_exponent: usize) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        NumeratorVector { coefficients, denominator_exponent }
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    pub fn denominator_exponent(&self) -> usize {
        self.denominator_exponent
    }

    /// `s`, or 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn scaled(&self, factor: i128) -> Result<Self> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| c.checked_mul(factor).ok_or(Error::Overflow("numerator scaling")))
            .collect::<Result<_>>()?;
        Ok(NumeratorVector::new(coefficients, self.denominator_exponent))
    }
}

/// `z A_d(z) / (1 - z)^{d+1}`, the series of `n^d`.
pub fn eulerian_numerator(d: usize) -> Result<NumeratorVector> {
    let mut coefficients = vec![0i128];
    for j in 1..=d {
        coefficients.push(i128::from(eulerian_number(d, j)?));
    }
    Ok(NumeratorVector::new(coefficients, d + 1))
}

/// Numerator of the `r`-th Veronese series:
/// `h_i' = sum_j C(r-1, n, ir-j) h_j` for `0 <= i <= max(s, n)`.
pub fn veronese_transform(h: &NumeratorVector, r: u32) -> Result<NumeratorVector> {
    ensure!(r >= 1, InvalidParameter, "Veronese degree must be at least 1");
    let n = h.denominator_exponent;
    let m = h.degree().max(n);
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut acc = 0i128;
        for (j, &hj) in h.coefficients.iter().enumerate() {
            if hj == 0 {
                continue;
            }
            let target = (i as u64 * u64::from(r)).checked_sub(j as u64);
            let Some(target) = target.and_then(|t| u32::try_from(t).ok()) else { continue };
            let count = if n == 0 {
                i128::from(target == 0)
            } else {
                composition_set(r - 1, n, target)?.len() as i128
            };
            let term = count.checked_mul(hj).ok_or(Error::Overflow("Veronese term"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("Veronese sum"))?;
        }
        out.push(acc);
    }
    Ok(NumeratorVector::new(out, n))
}
