use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{membership_residual, GAP_FACTOR};
use crate::error::{Error, Result};
use crate::gabor::{
    canonical_dual, cross_frame_operator, tf_shift, CanonicalDual, FiniteGaborSystem,
    OperatorMatrix, Signal, SubspaceBasis, DEFAULT_RANK_TOL,
};

/// Retained eigenvalues of `S` must clear `rank_tol · λ_max` by this factor.
pub const FRAME_SEQUENCE_MARGIN: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AllHold,
    AllFail,
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectSumSummary {
    pub ranks: Vec<usize>,
    pub rank_sum: usize,
    pub joint_rank: usize,
    /// Smallest principal angle between some `ℒ_s` and the sum of the others.
    pub min_principal_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResiduals {
    /// `max_s ‖P_s² − P_s‖_F`.
    pub idempotence: f64,
    /// `max_{r≠s} ‖P_s P_r‖_F`.
    pub mutual_annihilation: f64,
    /// `‖Σ_s P_s − P_𝒦‖_F`.
    pub sum_minus_pk: f64,
    /// `max_s ‖P_s (I − P_𝒦)‖_F`.
    pub off_k: f64,
}

impl ProjectionResiduals {
    pub fn max(&self) -> f64 {
        self.idempotence
            .max(self.mutual_annihilation)
            .max(self.sum_minus_pk)
            .max(self.off_k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaFlags {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityRow {
    pub k: usize,
    pub l: usize,
    pub magnitude: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriteriaReport {
    #[serde(rename = "L")]
    pub l: usize,
    pub a: usize,
    pub b: usize,
    pub nu: usize,
    pub tol: f64,
    pub rank_tol: f64,
    pub span_rank: usize,
    pub conditioning: f64,
    pub res_i: f64,
    pub res_ii: Vec<f64>,
    pub res_iii: DirectSumSummary,
    pub res_iv: f64,
    pub projections: ProjectionResiduals,
    pub projections_ok: bool,
    pub criteria: CriteriaFlags,
    pub verdict: Verdict,
    pub verdict_consistent: bool,
    /// Residuals lying in `[tol, 10³·tol)`, by criterion name.
    pub ambiguous: Vec<String>,
    /// `L/(ab)`, the constant used in `P`.
    pub p_constant: f64,
    /// Least-squares constant `c` making `c · S_{γ,g} g` closest to `g`.
    pub p_constant_calibrated: f64,
    /// `dist(γ, ℒ_0)/‖γ‖`; reported only.
    pub gamma_l0_residual: f64,
    #[serde(skip)]
    pub orthogonality: Vec<OrthogonalityRow>,
}

/// Shared objects of the criteria: dual, `P`, `𝒢`, spans.
pub(crate) struct Context {
    pub sys: FiniteGaborSystem,
    pub nu: usize,
    pub dual: CanonicalDual,
    pub p: OperatorMatrix,
    pub p_constant: f64,
}

impl Context {
    pub fn new(sys: &FiniteGaborSystem, nu: usize) -> Result<Self> {
        let (l, a, b) = (sys.l(), sys.a(), sys.b());
        if nu < 2 || a % nu != 0 {
            return Err(Error::InvalidNu(format!(
                "nu = {nu} must be at least 2 and divide a = {a}"
            )));
        }
        let dual = canonical_dual(sys, DEFAULT_RANK_TOL)?;
        let cond = dual.conditioning();
        if cond < FRAME_SEQUENCE_MARGIN * DEFAULT_RANK_TOL {
            return Err(Error::NotFrameSequence(format!(
                "smallest retained eigenvalue of S is {cond:.3e}·λ_max, \
                 below {:.0e}",
                FRAME_SEQUENCE_MARGIN * DEFAULT_RANK_TOL
            )));
        }
        let p_constant = l as f64 / (a * b) as f64;
        let p =
            cross_frame_operator(&dual.gamma, sys.window(), l / b, nu * l / a)?.scale(p_constant);
        Ok(Context {
            sys: sys.clone(),
            nu,
            dual,
            p,
            p_constant,
        })
    }

    fn freq_unit(&self) -> i64 {
        (self.sys.l() / self.sys.a()) as i64
    }

    fn modulation(&self, m: i64) -> OperatorMatrix {
        OperatorMatrix::tf_shift(self.sys.l(), 0, m)
    }

    /// `P_s = M_{sL/a} P M_{−sL/a}`.
    fn p_s(&self, s: usize) -> OperatorMatrix {
        let m = s as i64 * self.freq_unit();
        self.modulation(m)
            .compose(&self.p)
            .compose(&self.modulation(-m))
    }

    /// `ℒ_s = span{T_{kL/b} M_{(lν+s)L/a} g}`.
    fn l_space(&self, s: usize) -> SubspaceBasis {
        let (l, a, b) = (self.sys.l(), self.sys.a(), self.sys.b());
        let mut vectors = Vec::new();
        for li in 0..a / self.nu {
            for k in 0..b {
                let t = (k * (l / b)) as i64;
                let m = ((li * self.nu + s) * (l / a)) as i64;
                vectors.push(tf_shift(self.sys.window(), t, m));
            }
        }
        SubspaceBasis::from_signals(&vectors, DEFAULT_RANK_TOL)
    }

    /// `𝒦`, the span of the adjoint system.
    fn k_space(&self) -> SubspaceBasis {
        let (l, a, b) = (self.sys.l(), self.sys.a(), self.sys.b());
        let mut vectors = Vec::new();
        for li in 0..a {
            for k in 0..b {
                vectors.push(tf_shift(
                    self.sys.window(),
                    (k * (l / b)) as i64,
                    (li * (l / a)) as i64,
                ));
            }
        }
        SubspaceBasis::from_signals(&vectors, DEFAULT_RANK_TOL)
    }
}

/// `|⟨T_{kL/b} M_{lL/a} γ, g⟩|` over `0 ≤ k < b`, `0 ≤ l < a`.
pub fn orthogonality_table(sys: &FiniteGaborSystem, gamma: &Signal) -> Vec<OrthogonalityRow> {
    let (l, a, b) = (sys.l(), sys.a(), sys.b());
    let mut rows = Vec::with_capacity(a * b);
    for li in 0..a {
        for k in 0..b {
            let v = tf_shift(gamma, (k * (l / b)) as i64, (li * (l / a)) as i64);
            rows.push(OrthogonalityRow {
                k,
                l: li,
                magnitude: v.inner(sys.window()).norm(),
            });
        }
    }
    rows
}

fn frobenius(op: &OperatorMatrix) -> f64 {
    op.frobenius()
}

/// Evaluates the four equivalent criteria for the extra shift `(a/ν, 0)`,
/// plus the projection identities.
pub fn criteria_engine(sys: &FiniteGaborSystem, nu: usize, tol: f64) -> Result<CriteriaReport> {
    let ctx = Context::new(sys, nu)?;
    let (l, a, b) = (sys.l(), sys.a(), sys.b());
    let g = sys.window();
    let gamma = &ctx.dual.gamma;
    let g_norm = g.norm();

    let res_i = membership_residual(&ctx.dual.span, &g.translate((a / nu) as i64))?;

    let res_ii: Vec<f64> = (0..nu)
        .map(|s| {
            let v = ctx.p.apply(&g.modulate(s as i64 * ctx.freq_unit()));
            let target = if s == 0 { g.clone() } else { Signal::zeros(l) };
            (&v - &target).norm() / g_norm
        })
        .collect();

    let spaces: Vec<SubspaceBasis> = (0..nu).map(|s| ctx.l_space(s)).collect();
    let ranks: Vec<usize> = spaces.iter().map(SubspaceBasis::rank).collect();
    let joint = SubspaceBasis::sum(&spaces.iter().collect::<Vec<_>>(), DEFAULT_RANK_TOL);
    let min_gap = (0..nu)
        .map(|s| {
            let others: Vec<&SubspaceBasis> = spaces
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != s)
                .map(|(_, x)| x)
                .collect();
            let rest = SubspaceBasis::sum(&others, DEFAULT_RANK_TOL);
            spaces[s].min_principal_angle(&rest)
        })
        .fold(f64::INFINITY, f64::min);
    let res_iii = DirectSumSummary {
        rank_sum: ranks.iter().sum(),
        ranks,
        joint_rank: joint.rank(),
        min_principal_gap: min_gap,
    };

    let orthogonality = orthogonality_table(sys, gamma);
    let norm0 = gamma.inner(g).norm();
    let res_iv = orthogonality
        .iter()
        .filter(|r| r.l % nu != 0)
        .map(|r| r.magnitude)
        .fold(0.0, f64::max)
        / norm0;

    let p_k = ctx.k_space().projector();
    let p_s: Vec<OperatorMatrix> = (0..nu).map(|s| ctx.p_s(s)).collect();
    let identity = OperatorMatrix::identity(l);
    let off_k_proj = OperatorMatrix(&identity.0 - &p_k.0);
    let mut projections = ProjectionResiduals {
        idempotence: 0.0,
        mutual_annihilation: 0.0,
        sum_minus_pk: 0.0,
        off_k: 0.0,
    };
    let mut sum = OperatorMatrix::zeros(l);
    for (s, ps) in p_s.iter().enumerate() {
        let sq = ps.compose(ps);
        projections.idempotence = projections
            .idempotence
            .max(frobenius(&OperatorMatrix(&sq.0 - &ps.0)));
        for (r, pr) in p_s.iter().enumerate() {
            if r != s {
                projections.mutual_annihilation = projections
                    .mutual_annihilation
                    .max(frobenius(&ps.compose(pr)));
            }
        }
        projections.off_k = projections.off_k.max(frobenius(&ps.compose(&off_k_proj)));
        sum.0 += &ps.0;
    }
    projections.sum_minus_pk = frobenius(&OperatorMatrix(&sum.0 - &p_k.0));
    let projections_ok = projections.max() < tol;

    let sg = cross_frame_operator(gamma, g, l / b, nu * l / a)?.apply(g);
    let p_constant_calibrated = g.inner(&sg).re / sg.norm().powi(2);

    let res_ii_max = res_ii.iter().cloned().fold(0.0, f64::max);
    let criteria = CriteriaFlags {
        i: res_i < tol,
        ii: res_ii_max < tol,
        iii: res_iii.rank_sum == res_iii.joint_rank,
        iv: res_iv < tol,
    };
    let flags = [criteria.i, criteria.ii, criteria.iii, criteria.iv];
    let verdict = if flags.iter().all(|&x| x) {
        Verdict::AllHold
    } else if flags.iter().all(|&x| !x) {
        Verdict::AllFail
    } else {
        Verdict::Inconsistent
    };
    let mut ambiguous = Vec::new();
    for (name, r) in [("i", res_i), ("ii", res_ii_max), ("iv", res_iv)] {
        if r >= tol && r < GAP_FACTOR * tol {
            ambiguous.push(name.to_string());
        }
    }

    let l0 = &spaces[0];
    let gamma_l0_residual = membership_residual(l0, gamma).unwrap_or(f64::NAN);

    Ok(CriteriaReport {
        l,
        a,
        b,
        nu,
        tol,
        rank_tol: DEFAULT_RANK_TOL,
        span_rank: ctx.dual.rank(),
        conditioning: ctx.dual.conditioning(),
        res_i,
        res_ii,
        res_iii,
        res_iv,
        projections,
        projections_ok,
        criteria,
        verdict_consistent: verdict != Verdict::Inconsistent,
        verdict,
        ambiguous,
        p_constant: ctx.p_constant,
        p_constant_calibrated,
        gamma_l0_residual,
        orthogonality,
    })
}

/// `(F_ω x)_s = ν^{−1/2} Σ_r ω^{sr} x_r`, `ω = e^{2πi/ν}`; with
/// `inverse = true` the adjoint `F_ω^*`.
pub fn dft_omega(x: &[Signal], inverse: bool) -> Vec<Signal> {
    let nu = x.len();
    let l = x.first().map(Signal::len).unwrap_or(0);
    let sign = if inverse { -1 } else { 1 };
    (0..nu)
        .map(|s| {
            let mut out = Signal::zeros(l);
            for (r, xr) in x.iter().enumerate() {
                let w = crate::gabor::unit_root(sign * (s * r) as i64, nu);
                for n in 0..l {
                    out.0[n] += xr.0[n] * w;
                }
            }
            out.scale(Complex64::new(1.0 / (nu as f64).sqrt(), 0.0))
        })
        .collect()
}

/// `‖F_ω u − √ν v‖ / ‖u‖` with `u_r = T_{−ra/ν} P_𝒢 T_{ra/ν} g` and
/// `v_s = M_{−sL/a} P M_{sL/a} g`.
pub fn dft_vector_relation(sys: &FiniteGaborSystem, nu: usize) -> Result<f64> {
    let ctx = Context::new(sys, nu)?;
    let g = sys.window();
    let step = (sys.a() / nu) as i64;
    let u: Vec<Signal> = (0..nu as i64)
        .map(|r| {
            ctx.dual
                .span
                .project(&g.translate(r * step))
                .translate(-r * step)
        })
        .collect();
    let v: Vec<Signal> = (0..nu as i64)
        .map(|s| {
            let m = s * ctx.freq_unit();
            ctx.p.apply(&g.modulate(m)).modulate(-m)
        })
        .collect();
    let fu = dft_omega(&u, false);
    let root = Complex64::new((nu as f64).sqrt(), 0.0);
    let num: f64 = fu
        .iter()
        .zip(&v)
        .map(|(a, b)| (a - &b.scale(root)).norm().powi(2))
        .sum();
    let den: f64 = u.iter().map(|x| x.norm().powi(2)).sum();
    Ok((num / den).sqrt())
}
