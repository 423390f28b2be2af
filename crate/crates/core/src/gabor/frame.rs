use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::operator::{hermitian_eigen, numerical_rank, CMatrix, OperatorMatrix, SubspaceBasis};
use super::signal::{tf_shift, unit_root, Signal};
use crate::error::{Error, Result};

/// The system `{π(ka, lb) g : 0 ≤ k < L/a, 0 ≤ l < L/b}` on `C^L`.
#[derive(Clone, Debug)]
pub struct FiniteGaborSystem {
    l: usize,
    a: usize,
    b: usize,
    window: Signal,
}

fn check_step(l: usize, step: usize, what: &str) -> Result<()> {
    if step == 0 || !l.is_multiple_of(step) {
        return Err(Error::InvalidLattice(format!(
            "{what} = {step} must be a positive divisor of L = {l}"
        )));
    }
    Ok(())
}

impl FiniteGaborSystem {
    pub fn new(l: usize, a: usize, b: usize, window: Signal) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidLattice("L must be positive".into()));
        }
        check_step(l, a, "a")?;
        check_step(l, b, "b")?;
        if window.len() != l {
            return Err(Error::InvalidParameter(format!(
                "window has length {}, expected L = {l}",
                window.len()
            )));
        }
        Ok(FiniteGaborSystem { l, a, b, window })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn window(&self) -> &Signal {
        &self.window
    }

    /// Number of time positions `N = L/a`.
    pub fn n_time(&self) -> usize {
        self.l / self.a
    }

    /// Number of frequency positions `M = L/b`.
    pub fn n_freq(&self) -> usize {
        self.l / self.b
    }

    pub fn len(&self) -> usize {
        self.n_time() * self.n_freq()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `L/(ab)`, the finite analogue of `1/(αβ)`.
    pub fn redundancy(&self) -> f64 {
        self.l as f64 / (self.a * self.b) as f64
    }

    /// Lattice points `(ka, lb)` in column order (k fastest).
    pub fn points(&self) -> Vec<(i64, i64)> {
        let (a, b) = (self.a as i64, self.b as i64);
        (0..self.n_freq() as i64)
            .flat_map(|l| (0..self.n_time() as i64).map(move |k| (k * a, l * b)))
            .collect()
    }

    pub fn with_window(&self, window: Signal) -> Result<Self> {
        Self::new(self.l, self.a, self.b, window)
    }

    /// Whether `(t, m)` lies in `aZ × bZ` modulo `L`.
    pub fn contains_point(&self, t: i64, m: i64) -> bool {
        t.rem_euclid(self.a as i64) == 0 && m.rem_euclid(self.b as i64) == 0
    }
}

/// Synthesis matrix `L × NM`, column `l·N + k` equal to `π(ka, lb) g`.
pub fn gabor_matrix(sys: &FiniteGaborSystem) -> CMatrix {
    system_matrix(&sys.window, sys.a, sys.b)
}

/// Synthesis matrix of `{π(k·t_step, l·f_step) g}`; steps must divide `L`.
fn system_matrix(g: &Signal, t_step: usize, f_step: usize) -> CMatrix {
    let l = g.len();
    let (n, m) = (l / t_step, l / f_step);
    let mut out = CMatrix::zeros(l, n * m);
    for li in 0..m {
        for k in 0..n {
            let col = tf_shift(g, (k * t_step) as i64, (li * f_step) as i64);
            out.column_mut(li * n + k).copy_from_slice(&col.0);
        }
    }
    out
}

/// `S = D Dᴴ`.
pub fn frame_operator_direct(sys: &FiniteGaborSystem) -> OperatorMatrix {
    let d = gabor_matrix(sys);
    OperatorMatrix(&d * d.adjoint())
}

/// Walnut data: `S = scale · Σ_q diag(G_q) T_{q·shift}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WalnutCoefficients {
    #[serde(rename = "G")]
    pub g: Vec<Signal>,
    pub shift: usize,
    pub scale: f64,
}

impl WalnutCoefficients {
    /// `h = G_0 = Σ_k |T_{ka} g|²`, real part only.
    pub fn h(&self) -> Vec<f64> {
        self.g[0].0.iter().map(|x| x.re).collect()
    }
}

/// `G_0[n] = Σ_k |g[n − ka]|²`.
pub fn walnut_h(g: &Signal, a: usize) -> Vec<f64> {
    let l = g.len();
    (0..l)
        .map(|n| {
            (0..l / a)
                .map(|k| g.0[(n + l - k * a) % l].norm_sqr())
                .sum()
        })
        .collect()
}

/// Frame operator via the Walnut representation
/// `S = (L/b) Σ_{q<b} diag(G_q) T_{qL/b}`,
/// `G_q[n] = Σ_k g[n − ka] · conj(g[n − qL/b − ka])`.
pub fn frame_operator_walnut(sys: &FiniteGaborSystem) -> (OperatorMatrix, WalnutCoefficients) {
    let (l, a, b) = (sys.l, sys.a, sys.b);
    let shift = l / b;
    let g = &sys.window.0;
    let coeffs: Vec<Signal> = (0..b)
        .map(|q| {
            Signal(
                (0..l)
                    .map(|n| {
                        (0..l / a)
                            .map(|k| {
                                let i = (n + l - k * a) % l;
                                let j = (n + 2 * l - q * shift - k * a) % l;
                                g[i] * g[j].conj()
                            })
                            .sum()
                    })
                    .collect(),
            )
        })
        .collect();
    let scale = shift as f64;
    let mut s = CMatrix::zeros(l, l);
    for (q, gq) in coeffs.iter().enumerate() {
        for n in 0..l {
            let col = (n + l - (q * shift) % l) % l;
            s[(n, col)] += gq.0[n] * scale;
        }
    }
    (
        OperatorMatrix(s),
        WalnutCoefficients {
            g: coeffs,
            shift,
            scale,
        },
    )
}

/// Canonical dual window with the spectral data it was built from.
#[derive(Clone, Debug)]
pub struct CanonicalDual {
    pub gamma: Signal,
    pub s_pinv: OperatorMatrix,
    /// `ran S`, the Gabor space.
    pub span: SubspaceBasis,
    /// Eigenvalues of `S`, descending.
    pub eigenvalues: Vec<f64>,
}

impl CanonicalDual {
    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    /// Smallest retained eigenvalue over the largest.
    pub fn conditioning(&self) -> f64 {
        let r = self.rank();
        if r == 0 {
            return 0.0;
        }
        self.eigenvalues[r - 1] / self.eigenvalues[0]
    }
}

/// `γ = S† g` with eigenvalues below `rank_tol · λ_max` treated as zero.
pub fn canonical_dual(sys: &FiniteGaborSystem, rank_tol: f64) -> Result<CanonicalDual> {
    if rank_tol.is_nan() || rank_tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "rank_tol must be positive, got {rank_tol}"
        )));
    }
    if sys.window.is_zero() {
        return Err(Error::ZeroWindow);
    }
    let s = frame_operator_direct(sys);
    let (values, vectors) = hermitian_eigen(&s.0);
    if values[0] <= 0.0 {
        return Err(Error::ZeroWindow);
    }
    let r = numerical_rank(&values, rank_tol);
    let v = vectors.columns(0, r).into_owned();
    let inv = CMatrix::from_fn(r, r, |i, j| {
        if i == j {
            Complex64::new(1.0 / values[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let s_pinv = OperatorMatrix(&v * inv * v.adjoint());
    let gamma = s_pinv.apply(&sys.window);
    Ok(CanonicalDual {
        gamma,
        s_pinv,
        span: SubspaceBasis {
            columns: v,
            rank_tol,
        },
        eigenvalues: values,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub rank: usize,
    pub is_riesz_sequence: bool,
}

/// Extreme retained eigenvalues of `S`; Riesz test on the Gram matrix `DᴴD`.
pub fn frame_bounds(sys: &FiniteGaborSystem, rank_tol: f64) -> FrameBounds {
    let s = frame_operator_direct(sys);
    let (values, _) = hermitian_eigen(&s.0);
    let rank = numerical_rank(&values, rank_tol);
    let (lower, upper) = if rank == 0 {
        (0.0, 0.0)
    } else {
        (values[rank - 1], values[0])
    };
    let is_riesz_sequence = rank > 0 && sys.len() <= sys.l && {
        let d = gabor_matrix(sys);
        let (gram, _) = hermitian_eigen(&(d.adjoint() * &d));
        let min = gram.last().copied().unwrap_or(0.0);
        min > rank_tol * gram[0]
    };
    FrameBounds {
        lower,
        upper,
        rank,
        is_riesz_sequence,
    }
}

/// `S_{γ,g} f = Σ_{k,l} ⟨f, π(k·t, l·f)γ⟩ π(k·t, l·f) g`.
pub fn cross_frame_operator(
    gamma: &Signal,
    g: &Signal,
    t_step: usize,
    f_step: usize,
) -> Result<OperatorMatrix> {
    let l = g.len();
    check_step(l, t_step, "t_step")?;
    check_step(l, f_step, "f_step")?;
    let dg = system_matrix(g, t_step, f_step);
    let dgamma = system_matrix(gamma, t_step, f_step);
    Ok(OperatorMatrix(dg * dgamma.adjoint()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JanssenTerm {
    pub t: i64,
    pub m: i64,
    pub re: f64,
    pub im: f64,
}

impl JanssenTerm {
    pub fn magnitude(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// `S_{γ,g} = constant · Σ ⟨g, π(μ)γ⟩ π(μ)` over the adjoint grid.
#[derive(Clone, Debug)]
pub struct JanssenRepresentation {
    pub constant: f64,
    pub terms: Vec<JanssenTerm>,
    pub operator: OperatorMatrix,
}

impl JanssenRepresentation {
    /// Largest `|coefficient|` with centred `|t| > radius` or `|m| > radius`,
    /// relative to the largest overall.
    pub fn tail(&self, l: usize, radius: i64) -> f64 {
        let centred = |x: i64| {
            let li = l as i64;
            if x > li / 2 {
                x - li
            } else {
                x
            }
        };
        let max = self
            .terms
            .iter()
            .map(JanssenTerm::magnitude)
            .fold(0.0, f64::max);
        let tail = self
            .terms
            .iter()
            .filter(|t| centred(t.t).abs() > radius || centred(t.m).abs() > radius)
            .map(JanssenTerm::magnitude)
            .fold(0.0, f64::max);
        if max == 0.0 {
            0.0
        } else {
            tail / max
        }
    }
}

/// Janssen form of the cross-frame operator over steps `(t_step, f_step)`:
/// adjoint shifts `(j·L/f_step, n·L/t_step)`, constant `L/(t_step·f_step)`.
pub fn janssen_representation(
    gamma: &Signal,
    g: &Signal,
    t_step: usize,
    f_step: usize,
) -> Result<JanssenRepresentation> {
    let l = g.len();
    check_step(l, t_step, "t_step")?;
    check_step(l, f_step, "f_step")?;
    let (adj_t, adj_f) = (l / f_step, l / t_step);
    let constant = l as f64 / (t_step * f_step) as f64;
    let grid: Vec<(i64, i64)> = (0..f_step as i64)
        .flat_map(|j| (0..t_step as i64).map(move |n| (j * adj_t as i64, n * adj_f as i64)))
        .collect();
    let terms: Vec<JanssenTerm> = grid
        .par_iter()
        .map(|&(t, m)| {
            let c = g.inner(&tf_shift(gamma, t, m));
            JanssenTerm {
                t,
                m,
                re: c.re,
                im: c.im,
            }
        })
        .collect();
    let li = l as i64;
    let mut s = CMatrix::zeros(l, l);
    for term in &terms {
        let c = Complex64::new(term.re, term.im) * constant;
        for n in 0..li {
            let src = (n - term.t).rem_euclid(li);
            s[(n as usize, src as usize)] += c * unit_root(term.m * src, l);
        }
    }
    Ok(JanssenRepresentation {
        constant,
        terms,
        operator: OperatorMatrix(s),
    })
}
