use serde::{Deserialize, Serialize};

use super::criteria::{
    criteria_engine, dft_vector_relation, orthogonality_table, CriteriaReport, OrthogonalityRow,
};
use super::{scan_invariance, InvarianceReport};
use crate::error::{Error, Result};
use crate::gabor::{
    canonical_dual, frame_bounds, periodized_gaussian, tf_shift, FiniteGaborSystem, FrameBounds,
    DEFAULT_RANK_TOL,
};

/// Everything the undersampled Gaussian pipeline produces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaussianScenarioReport {
    #[serde(rename = "L")]
    pub l: usize,
    pub a: usize,
    pub b: usize,
    pub c: f64,
    pub nu: usize,
    pub refinement: usize,
    pub frame_bounds: FrameBounds,
    /// `max_λ |⟨γ, π(λ)g⟩ − δ_{λ,0}|`.
    pub biorthogonality: f64,
    pub conditioning: f64,
    pub poorly_conditioned: bool,
    pub criteria: Option<CriteriaReport>,
    pub criteria_error: Option<String>,
    pub scan: InvarianceReport,
    pub scan_is_lattice: bool,
    pub dft_relation: Option<f64>,
    #[serde(skip)]
    pub orthogonality: Vec<OrthogonalityRow>,
}

/// Full pipeline on a periodised Gaussian with `ab > L`.
pub fn gaussian_corollary_scenario(
    l: usize,
    a: usize,
    b: usize,
    c: f64,
    nu: usize,
    refinement: usize,
) -> Result<GaussianScenarioReport> {
    if a * b <= l {
        return Err(Error::NotUndersampled { ab: a * b, l });
    }
    if nu < 2 || !a.is_multiple_of(nu) {
        return Err(Error::InvalidNu(format!(
            "nu = {nu} must be at least 2 and divide a = {a}"
        )));
    }
    let window = periodized_gaussian(l, c)?;
    let sys = FiniteGaborSystem::new(l, a, b, window)?;
    let bounds = frame_bounds(&sys, DEFAULT_RANK_TOL);
    let dual = canonical_dual(&sys, DEFAULT_RANK_TOL)?;
    let g = sys.window();
    let biorthogonality = sys
        .points()
        .iter()
        .map(|&(t, m)| {
            let v = dual.gamma.inner(&tf_shift(g, t, m));
            let target = if (t, m) == (0, 0) { 1.0 } else { 0.0 };
            (v.re - target).hypot(v.im)
        })
        .fold(0.0, f64::max);
    let conditioning = dual.conditioning();
    let poorly_conditioned = conditioning
        < super::criteria::FRAME_SEQUENCE_MARGIN * DEFAULT_RANK_TOL
        || !bounds.is_riesz_sequence;

    let (criteria, criteria_error) = match criteria_engine(&sys, nu, DEFAULT_RANK_TOL) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let dft_relation = dft_vector_relation(&sys, nu).ok();
    let scan = scan_invariance(&sys, refinement, super::DEFAULT_TOL)?;
    let scan_is_lattice = scan.is_lattice_only();
    Ok(GaussianScenarioReport {
        l,
        a,
        b,
        c,
        nu,
        refinement,
        frame_bounds: bounds,
        biorthogonality,
        conditioning,
        poorly_conditioned,
        criteria,
        criteria_error,
        scan,
        scan_is_lattice,
        dft_relation,
        orthogonality: orthogonality_table(&sys, &dual.gamma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariance::Verdict;
    use std::f64::consts::PI;

    #[test]
    fn undersampled_gaussian_pipeline() {
        let rep = gaussian_corollary_scenario(120, 12, 12, PI, 2, 4).unwrap();
        assert!(rep.frame_bounds.is_riesz_sequence);
        assert!(rep.biorthogonality < 1e-8, "{}", rep.biorthogonality);
        assert!(rep.scan_is_lattice);
        let crit = rep.criteria.unwrap();
        assert_eq!(crit.verdict, Verdict::AllFail);
        assert!(crit.res_i > 1e-3 && crit.res_iv > 1e-3);
        assert!(crit.res_ii.iter().cloned().fold(0.0, f64::max) > 1e-3);
        assert!(rep.dft_relation.unwrap() < 1e-8);
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            gaussian_corollary_scenario(144, 12, 12, PI, 2, 4)
                .unwrap_err()
                .name(),
            "NotUndersampled"
        );
        assert_eq!(
            gaussian_corollary_scenario(120, 12, 12, PI, 5, 4)
                .unwrap_err()
                .name(),
            "InvalidNu"
        );
        assert_eq!(
            gaussian_corollary_scenario(120, 12, 12, PI, 2, 5)
                .unwrap_err()
                .name(),
            "InvalidRefinement"
        );
    }

    #[test]
    fn flat_window_is_flagged() {
        let rep = gaussian_corollary_scenario(120, 12, 12, 1e-6, 2, 4).unwrap();
        assert!(rep.poorly_conditioned);
    }
}
