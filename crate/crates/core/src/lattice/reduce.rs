use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{Lattice2D, Rational, RationalMatrix2x2, RationalVector, SeparableLattice};
use crate::error::{Error, Result};

/// Which case of the reduction produced the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionBranch {
    /// `s = 0`: the shift already lies on the time axis, `B = I`.
    TimeAxis,
    /// `r = 0`: the argument runs on the Fourier side (roles of `a` and `b`
    /// swapped); `B` is the quarter turn `[[0, 1], [-1, 0]]`.
    FourierSwap,
    /// `r, s ≠ 0`: the explicit symplectic matrix built from Bézout data.
    General,
}

/// Bézout data of the general branch: `r = dρ`, `s = dσ`, `ρσ̃ − σρ̃ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutData {
    pub rho: i64,
    pub sigma: i64,
    pub rho_tilde: i64,
    pub sigma_tilde: i64,
    /// `A = diag(a, b) · [[ρ, ρ̃], [σ, σ̃]]`, a second basis of `aZ × bZ`.
    #[serde(rename = "A")]
    pub a_matrix: RationalMatrix2x2,
}

/// Outcome of moving an extra invariant shift `(ra/m, sb/m)` of `aZ × bZ`
/// onto the time axis of a separable lattice.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionResult {
    pub branch: ReductionBranch,
    pub fourier_swap: bool,
    #[serde(rename = "B")]
    pub b: RationalMatrix2x2,
    #[serde(rename = "det_B")]
    pub det_b: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub d: i64,
    pub m: i64,
    /// The original shift `(ra/m, sb/m)`.
    pub shift: RationalVector,
    /// `B · shift`, always `(dα/m, 0)`.
    pub image: RationalVector,
    /// `m′ = m / gcd(d, m)`: `(α/m′, 0)` is an invariant shift as well.
    pub reduced_order: i64,
    /// `(k, ℓ)` with `k·(d/g) + ℓ·m′ = 1`, so `k·(dα/m) + ℓα = α/m′`.
    pub bezout_kl: (i64, i64),
    pub bezout: Option<BezoutData>,
}

impl ReductionResult {
    /// The source lattice `aZ × bZ`.
    pub fn source_lattice(a: &Rational, b: &Rational) -> Result<Lattice2D> {
        SeparableLattice::new(a.clone(), b.clone()).map(|s| s.to_lattice())
    }

    pub fn target_lattice(&self) -> SeparableLattice {
        SeparableLattice {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }
}

/// Bézout coefficients `(x, y)` with `p·x + q·y = gcd(p, q)`.
fn bezout(p: i64, q: i64) -> (i64, i64, i64) {
    let e = p.extended_gcd(&q);
    (e.gcd, e.x, e.y)
}

/// Reduce the extra invariant shift `(ra/m, sb/m)` of `aZ × bZ` to the form
/// `(dα/m, 0)` of a separable lattice `αZ × βZ = B(aZ × bZ)`, `det B = 1`.
pub fn reduce_invariant_shift(
    a: &Rational,
    b: &Rational,
    r: i64,
    s: i64,
    m: i64,
) -> Result<ReductionResult> {
    if m < 2 {
        return Err(Error::InvalidOrder(m));
    }
    if r == 0 && s == 0 {
        return Err(Error::NotAnExtraShift);
    }
    if !(0..m).contains(&r) || !(0..m).contains(&s) {
        return Err(Error::InvalidIndex(format!(
            "r = {r}, s = {s} must lie in 0..{m}"
        )));
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::InvalidLattice(format!(
            "steps must be positive, got a = {a}, b = {b}"
        )));
    }

    let m_q = Rational::from_integer(m);
    let shift = [
        a * Rational::from_integer(r) / &m_q,
        b * Rational::from_integer(s) / &m_q,
    ];

    let (branch, bmat, alpha, beta, d, bez) = if s == 0 {
        (
            ReductionBranch::TimeAxis,
            RationalMatrix2x2::identity(),
            a.clone(),
            b.clone(),
            r,
            None,
        )
    } else if r == 0 {
        (
            ReductionBranch::FourierSwap,
            RationalMatrix2x2::from_i64([[0, 1], [-1, 0]]),
            b.clone(),
            a.clone(),
            s,
            None,
        )
    } else {
        let d = r.gcd(&s);
        let (rho, sigma) = (r / d, s / d);
        // p·x + q·y = 1 with p = ρ, q = σ gives σ̃ = x, ρ̃ = -y.
        let (_, x, y) = bezout(rho, sigma);
        let (mut sigma_t, mut rho_t) = (x, -y);
        // Shift along (σ, ρ) until ρ̃ ≥ 1; α = b/ρ̃ must be positive.
        if rho_t < 1 {
            let k = Integer::div_ceil(&(1 - rho_t), &rho);
            sigma_t += k * sigma;
            rho_t += k * rho;
        }
        debug_assert_eq!(rho * sigma_t - sigma * rho_t, 1);

        let q = Rational::from_integer;
        let a_matrix =
            RationalMatrix2x2::new([[q(rho) * a, q(rho_t) * a], [q(sigma) * b, q(sigma_t) * b]]);
        let bmat = RationalMatrix2x2::new([
            [q(sigma_t) * b / (q(rho_t) * a), q(-1)],
            [q(-sigma * rho_t), a / b * q(rho * rho_t)],
        ]);
        (
            ReductionBranch::General,
            bmat,
            b / q(rho_t),
            q(rho_t) * a,
            d,
            Some(BezoutData {
                rho,
                sigma,
                rho_tilde: rho_t,
                sigma_tilde: sigma_t,
                a_matrix,
            }),
        )
    };

    let g = d.gcd(&m);
    let reduced_order = m / g;
    let (_, k, l) = bezout(d / g, reduced_order);
    let image = bmat.apply(&shift);
    Ok(ReductionResult {
        branch,
        fourier_swap: branch == ReductionBranch::FourierSwap,
        det_b: bmat.det(),
        b: bmat,
        alpha,
        beta,
        d,
        m,
        shift,
        image,
        reduced_order,
        bezout_kl: (k, l),
        bezout: bez,
    })
}
