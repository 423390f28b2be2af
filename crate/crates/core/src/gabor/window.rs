use serde::{Deserialize, Serialize};

use super::frame::{walnut_h, FiniteGaborSystem};
use super::operator::SubspaceBasis;
use super::signal::Signal;
use crate::error::{Error, Result};

/// Unit-norm samples of `Σ_j exp(−c·((n + jL)/√L)²)`, `n` centred in
/// `(−L/2, L/2]`.
pub fn periodized_gaussian(l: usize, c: f64) -> Result<Signal> {
    if l < 4 {
        return Err(Error::InvalidParameter(format!(
            "L = {l} must be at least 4"
        )));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    let lf = l as f64;
    // Term j is at distance at least (j − 1/2)·L from the origin.
    let mut terms = 0i64;
    while (-c * ((terms as f64 + 0.5) * lf).powi(2) / lf).exp() > 1e-17 {
        terms += 1;
    }
    let samples: Vec<f64> = (0..l)
        .map(|n| {
            let centred = if n > l / 2 { n as f64 - lf } else { n as f64 };
            (-terms..=terms)
                .map(|j| {
                    let x = (centred + j as f64 * lf) / lf.sqrt();
                    (-c * x * x).exp()
                })
                .sum()
        })
        .collect();
    Ok(Signal::from_real(&samples).normalized())
}

/// `Σ_j T_{j·period} g` over `j = 0..L/period`, renormalised; the result is
/// exactly `period`-periodic.
pub fn periodize(g: &Signal, period: usize) -> Result<Signal> {
    let l = g.len();
    if period == 0 || !l.is_multiple_of(period) {
        return Err(Error::InvalidParameter(format!(
            "period {period} must divide L = {l}"
        )));
    }
    let mut out = Signal::zeros(l);
    for n in 0..l {
        out.0[n] = (0..l / period).map(|j| g.0[(n + l - j * period) % l]).sum();
    }
    if out.is_zero() {
        return Err(Error::ZeroWindow);
    }
    Ok(out.normalized())
}

/// Finite analogue of `𝒢 = L²(E)` under full modulation invariance.
#[derive(Clone, Debug)]
pub struct SupportSpace {
    pub basis: SubspaceBasis,
    /// `h = G_0`.
    pub h: Vec<f64>,
    /// `E = {n : h[n] > tol · max h}`.
    pub support: Vec<usize>,
    /// `min_E h / max h`, the finite lower bound `A`.
    pub lower_ratio: f64,
    /// `max_{E^c} h / max h`.
    pub off_support_ratio: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportSummary {
    pub support_size: usize,
    pub lower_ratio: f64,
    pub off_support_ratio: f64,
}

impl SupportSpace {
    pub fn summary(&self) -> SupportSummary {
        SupportSummary {
            support_size: self.support.len(),
            lower_ratio: self.lower_ratio,
            off_support_ratio: self.off_support_ratio,
        }
    }
}

/// Coordinate subspace on the support of `h = Σ_k |T_{ka} g|²`.
pub fn support_space(sys: &FiniteGaborSystem, tol: f64) -> Result<SupportSpace> {
    let g = sys.window();
    if g.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let h = walnut_h(g, sys.a());
    let max = h.iter().cloned().fold(0.0, f64::max);
    let support: Vec<usize> = (0..h.len()).filter(|&n| h[n] > tol * max).collect();
    let lower_ratio = support.iter().map(|&n| h[n]).fold(f64::INFINITY, f64::min) / max;
    let off_support_ratio = (0..h.len())
        .filter(|n| !support.contains(n))
        .map(|n| h[n])
        .fold(0.0, f64::max)
        / max;
    Ok(SupportSpace {
        basis: SubspaceBasis::coordinate(h.len(), &support, tol),
        h,
        support,
        lower_ratio,
        off_support_ratio,
    })
}

/// The `period`-periodisation of the Gaussian window; `T_period` fixes it.
pub fn periodic_gaussian(l: usize, c: f64, period: usize) -> Result<Signal> {
    periodize(&periodized_gaussian(l, c)?, period)
}
