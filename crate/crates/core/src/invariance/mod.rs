//! Detection of time-frequency shift invariance of Gabor spaces in the
//! finite model: membership residuals, the dichotomy scan over a refined
//! lattice, group closure, completeness from two shifts and transport of
//! the invariance set under metaplectic operators.

mod criteria;
mod gaussian;

pub use criteria::{
    criteria_engine, dft_omega, dft_vector_relation, orthogonality_table, CriteriaFlags,
    CriteriaReport, DirectSumSummary, OrthogonalityRow, ProjectionResiduals, Verdict,
};
pub use gaussian::{gaussian_corollary_scenario, GaussianScenarioReport};

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gabor::{
    gabor_matrix, tf_shift, FiniteGaborSystem, Signal, SubspaceBasis, DEFAULT_RANK_TOL,
};
use crate::symplectic::{apply, transport_system, MetaplecticOperator};

/// Default membership tolerance.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Residuals in `[tol, GAP_FACTOR·tol)` are neither in nor out.
pub const GAP_FACTOR: f64 = 1e3;

/// `‖f − P f‖ / ‖f‖` for the orthogonal projection `P` onto `span`.
pub fn membership_residual(span: &SubspaceBasis, f: &Signal) -> Result<f64> {
    let n = f.norm();
    if n == 0.0 {
        return Err(Error::ZeroInput);
    }
    Ok(span.distance(f) / n)
}

/// The Gabor space `𝒢(g, Λ)` of the system.
pub fn gabor_space(sys: &FiniteGaborSystem) -> SubspaceBasis {
    SubspaceBasis::from_spanning(&gabor_matrix(sys), DEFAULT_RANK_TOL)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DichotomyVerdict {
    SubsetOfRefinedLattice { m: usize },
    SpansEverything,
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvarianceReport {
    #[serde(rename = "L")]
    pub l: usize,
    pub a: usize,
    pub b: usize,
    pub refinement: usize,
    pub tol: f64,
    pub span_rank: usize,
    pub tested_points: Vec<(i64, i64)>,
    pub residuals: Vec<f64>,
    pub invariant_set: Vec<(i64, i64)>,
    /// Points whose residual falls in the band `[tol, 10³·tol)`.
    pub ambiguous_points: Vec<(i64, i64)>,
    pub max_in_set: f64,
    pub min_out_of_set: Option<f64>,
    pub dichotomy_verdict: DichotomyVerdict,
}

impl InvarianceReport {
    pub fn residual_at(&self, z: (i64, i64)) -> Option<f64> {
        self.tested_points
            .binary_search(&z)
            .ok()
            .map(|i| self.residuals[i])
    }

    /// `min_out_of_set / max_in_set`; infinite if either side is empty or
    /// the in-set residuals vanish.
    pub fn gap_ratio(&self) -> f64 {
        match self.min_out_of_set {
            Some(out) if self.max_in_set > 0.0 => out / self.max_in_set,
            _ => f64::INFINITY,
        }
    }

    /// Whether the invariant set is exactly the lattice points of the grid.
    pub fn is_lattice_only(&self) -> bool {
        let (a, b) = (self.a as i64, self.b as i64);
        let lattice: Vec<_> = self
            .tested_points
            .iter()
            .filter(|(t, m)| t % a == 0 && m % b == 0)
            .cloned()
            .collect();
        lattice == self.invariant_set
    }
}

/// Residuals of `π(z) g` against `𝒢(g, Λ)` for all `z` in `(1/r)Λ` mod `L`,
/// with the dichotomy classification.
pub fn scan_invariance(
    sys: &FiniteGaborSystem,
    refinement: usize,
    tol: f64,
) -> Result<InvarianceReport> {
    let (l, a, b) = (sys.l(), sys.a(), sys.b());
    if refinement == 0 || a % refinement != 0 || b % refinement != 0 {
        return Err(Error::InvalidRefinement(format!(
            "refinement {refinement} must divide a = {a} and b = {b}"
        )));
    }
    if sys.window().is_zero() {
        return Err(Error::ZeroWindow);
    }
    let span = gabor_space(sys);
    let (dt, df) = ((a / refinement) as i64, (b / refinement) as i64);
    let points: Vec<(i64, i64)> = (0..l as i64 / dt)
        .flat_map(|j| (0..l as i64 / df).map(move |k| (j * dt, k * df)))
        .collect();
    let g = sys.window();
    let residuals: Vec<f64> = points
        .par_iter()
        .map(|&(t, m)| membership_residual(&span, &tf_shift(g, t, m)))
        .collect::<Result<_>>()?;

    let mut invariant_set = Vec::new();
    let mut ambiguous_points = Vec::new();
    let mut max_in_set = 0.0f64;
    let mut min_out: Option<f64> = None;
    for (&z, &r) in points.iter().zip(&residuals) {
        if r < tol {
            invariant_set.push(z);
            max_in_set = max_in_set.max(r);
        } else {
            min_out = Some(min_out.map_or(r, |x: f64| x.min(r)));
            if r < GAP_FACTOR * tol {
                ambiguous_points.push(z);
            }
        }
    }

    let (ai, bi) = (a as i64, b as i64);
    let lattice_ok = points
        .iter()
        .zip(&residuals)
        .all(|(&(t, m), &r)| !(t % ai == 0 && m % bi == 0) || r < tol);
    let dichotomy_verdict = if !ambiguous_points.is_empty() {
        DichotomyVerdict::Inconclusive {
            reason: format!(
                "{} residuals in the band [tol, {GAP_FACTOR}·tol)",
                ambiguous_points.len()
            ),
        }
    } else if !lattice_ok {
        DichotomyVerdict::Inconclusive {
            reason: "a lattice point is not detected as invariant".into(),
        }
    } else if invariant_set.len() == points.len() && span.rank() == l {
        DichotomyVerdict::SpansEverything
    } else {
        let m = (1..=refinement)
            .filter(|m| refinement.is_multiple_of(*m))
            .find(|&m| {
                let (st, sf) = ((a / m) as i64, (b / m) as i64);
                invariant_set
                    .iter()
                    .all(|(t, f)| t % st == 0 && f % sf == 0)
            })
            .unwrap_or(refinement);
        DichotomyVerdict::SubsetOfRefinedLattice { m }
    };

    Ok(InvarianceReport {
        l,
        a,
        b,
        refinement,
        tol,
        span_rank: span.rank(),
        tested_points: points,
        residuals,
        invariant_set,
        ambiguous_points,
        max_in_set,
        min_out_of_set: min_out,
        dichotomy_verdict,
    })
}

/// Checks that the detected set is closed under negation and addition mod
/// `L`: for detected `z, z′`, both `−z` and `z + z′` must have residual
/// below `10·tol`, recomputed against the system.
pub fn group_closure_check(report: &InvarianceReport, sys: &FiniteGaborSystem, tol: f64) -> bool {
    let span = gabor_space(sys);
    let l = sys.l() as i64;
    let g = sys.window();
    let mut cache: HashMap<(i64, i64), f64> = HashMap::new();
    let mut residual = |z: (i64, i64)| -> f64 {
        let z = (z.0.rem_euclid(l), z.1.rem_euclid(l));
        *cache.entry(z).or_insert_with(|| {
            membership_residual(&span, &tf_shift(g, z.0, z.1)).unwrap_or(f64::INFINITY)
        })
    };
    let set = &report.invariant_set;
    for &z in set {
        if residual((-z.0, -z.1)) >= 10.0 * tol {
            return false;
        }
    }
    for (i, &z) in set.iter().enumerate() {
        for &w in &set[i..] {
            if residual((z.0 + w.0, z.1 + w.1)) >= 10.0 * tol {
                return false;
            }
        }
    }
    true
}

/// True iff `{π(j·v1 + k·v2) g}` spans `C^L`.
pub fn small_shift_completeness(
    sys: &FiniteGaborSystem,
    v1: (i64, i64),
    v2: (i64, i64),
    tol: f64,
) -> Result<bool> {
    if v1.0 * v2.1 - v1.1 * v2.0 == 0 {
        return Err(Error::DegenerateInput(format!(
            "{v1:?} and {v2:?} are linearly dependent"
        )));
    }
    let l = sys.l() as i64;
    let mut points = BTreeSet::new();
    for j in 0..l {
        for k in 0..l {
            points.insert((
                (j * v1.0 + k * v2.0).rem_euclid(l),
                (j * v1.1 + k * v2.1).rem_euclid(l),
            ));
        }
    }
    if (points.len() as i64) < l {
        return Ok(false);
    }
    let vectors: Vec<Signal> = points
        .iter()
        .map(|&(t, m)| tf_shift(sys.window(), t, m))
        .collect();
    Ok(SubspaceBasis::from_signals(&vectors, tol).rank() == sys.l())
}

/// Residuals of the original and transported systems at `z` and `Bz`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransportInvarianceReport {
    #[serde(rename = "B")]
    pub b: [[i64; 2]; 2],
    pub tol: f64,
    pub original_set: Vec<(i64, i64)>,
    pub mapped_set: Vec<(i64, i64)>,
    pub transported_set: Vec<(i64, i64)>,
    /// Largest transported residual over `B·(original set)`.
    pub max_mapped_residual: f64,
    pub sets_equal: bool,
    pub within_bound: bool,
}

/// Scans the system, then evaluates the transported system `(U_B g, BΛ)` at
/// every image point `Bz` of the refined grid (which is the refined grid of
/// `BΛ`).
pub fn transport_invariance_check(
    sys: &FiniteGaborSystem,
    op: &MetaplecticOperator,
    refinement: usize,
    tol: f64,
) -> Result<TransportInvarianceReport> {
    let report = scan_invariance(sys, refinement, tol)?;
    let transported = transport_system(op, sys)?;
    let span = transported.span(DEFAULT_RANK_TOL);
    let l = sys.l() as i64;
    let window = transported.window();
    let image = |z: (i64, i64)| {
        let w = apply(&op.matrix_b, z);
        (w.0.rem_euclid(l), w.1.rem_euclid(l))
    };
    let residuals: Vec<((i64, i64), f64)> = report
        .tested_points
        .par_iter()
        .map(|&z| {
            let w = image(z);
            membership_residual(&span, &tf_shift(window, w.0, w.1)).map(|r| (w, r))
        })
        .collect::<Result<_>>()?;

    let mut mapped: Vec<(i64, i64)> = report.invariant_set.iter().map(|&z| image(z)).collect();
    mapped.sort();
    let mut transported_set: Vec<(i64, i64)> = residuals
        .iter()
        .filter(|(_, r)| *r < tol)
        .map(|(w, _)| *w)
        .collect();
    transported_set.sort();
    let max_mapped_residual = report
        .tested_points
        .iter()
        .zip(&residuals)
        .filter(|(z, _)| report.invariant_set.binary_search(z).is_ok())
        .map(|(_, (_, r))| *r)
        .fold(0.0, f64::max);
    Ok(TransportInvarianceReport {
        b: op.matrix_b,
        tol,
        sets_equal: mapped == transported_set,
        within_bound: max_mapped_residual < 10.0 * tol,
        original_set: report.invariant_set,
        mapped_set: mapped,
        transported_set,
        max_mapped_residual,
    })
}
