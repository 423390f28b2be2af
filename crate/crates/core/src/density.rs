//! Lower Beurling density of planar point sets: exact box counts for
//! lattice-like sets, the windowed estimator θ_R, the linear-transform law
//! and an equidistribution diagnostic for orbits `t·z mod Λ`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Lattice2D, SeparableLattice};

/// Boundary fuzz: points within this distance of the box edge count as inside.
pub const BOX_FUZZ: f64 = 1e-9;
pub const DEFAULT_PROBE_GRID: usize = 32;
/// Resolution of the grid on which the covering radius is estimated.
pub const COVERING_GRID: usize = 200;
/// Anchors per axis for the box discrepancy.
pub const DISCREPANCY_GRID: usize = 32;

/// A 2×2 real matrix, row-major; as a lattice basis the columns are the
/// generators.
pub type Mat2 = [[f64; 2]; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointSetSpec {
    Lattice {
        basis: Mat2,
    },
    ShiftedLattice {
        basis: Mat2,
        shift: [f64; 2],
    },
    PuncturedLattice {
        basis: Mat2,
    },
    /// `t_step·Z × f_step·(Z ∖ νZ)`.
    ExcludedResidues {
        t_step: f64,
        f_step: f64,
        modulus: i64,
    },
    /// Counted with multiplicity.
    Union {
        parts: Vec<PointSetSpec>,
    },
}

fn det(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn apply(m: &Mat2, v: [f64; 2]) -> [f64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

impl PointSetSpec {
    pub fn lattice(lat: &Lattice2D) -> Self {
        PointSetSpec::Lattice {
            basis: lat.basis().to_f64(),
        }
    }

    pub fn separable(alpha: f64, beta: f64) -> Self {
        PointSetSpec::Lattice {
            basis: [[alpha, 0.0], [0.0, beta]],
        }
    }

    /// The two components of `((αZ×βZ) ∖ {0}) ∪ ((1/β)Z × (1/α)(Z ∖ νZ))`.
    pub fn omega_components(alpha: f64, beta: f64, nu: i64) -> (Self, Self) {
        (
            PointSetSpec::PuncturedLattice {
                basis: [[alpha, 0.0], [0.0, beta]],
            },
            PointSetSpec::ExcludedResidues {
                t_step: 1.0 / beta,
                f_step: 1.0 / alpha,
                modulus: nu,
            },
        )
    }

    pub fn omega(alpha: f64, beta: f64, nu: i64) -> Self {
        let (p, q) = Self::omega_components(alpha, beta, nu);
        PointSetSpec::Union { parts: vec![p, q] }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PointSetSpec::Lattice { basis }
            | PointSetSpec::ShiftedLattice { basis, .. }
            | PointSetSpec::PuncturedLattice { basis } => {
                let d = det(basis);
                if !d.is_finite() || d.abs() < 1e-300 {
                    return Err(Error::InvalidLattice(format!("singular basis {basis:?}")));
                }
            }
            PointSetSpec::ExcludedResidues {
                t_step,
                f_step,
                modulus,
            } => {
                if *modulus < 2 {
                    return Err(Error::InvalidModulus(*modulus));
                }
                if !(*t_step > 0.0 && *f_step > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "steps must be positive, got {t_step}, {f_step}"
                    )));
                }
            }
            PointSetSpec::Union { parts } => {
                for p in parts {
                    p.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Density of the set (with multiplicity for unions).
    pub fn analytic_density(&self) -> f64 {
        match self {
            PointSetSpec::Lattice { basis }
            | PointSetSpec::ShiftedLattice { basis, .. }
            | PointSetSpec::PuncturedLattice { basis } => 1.0 / det(basis).abs(),
            PointSetSpec::ExcludedResidues {
                t_step,
                f_step,
                modulus,
            } => (1.0 - 1.0 / *modulus as f64) / (t_step * f_step),
            PointSetSpec::Union { parts } => parts.iter().map(Self::analytic_density).sum(),
        }
    }

    /// Image of the set under the linear map `b`.
    pub fn transformed(&self, b: &Mat2) -> Self {
        match self {
            PointSetSpec::Lattice { basis } => PointSetSpec::Lattice {
                basis: mat_mul(b, basis),
            },
            PointSetSpec::ShiftedLattice { basis, shift } => PointSetSpec::ShiftedLattice {
                basis: mat_mul(b, basis),
                shift: apply(b, *shift),
            },
            PointSetSpec::PuncturedLattice { basis } => PointSetSpec::PuncturedLattice {
                basis: mat_mul(b, basis),
            },
            PointSetSpec::ExcludedResidues { .. } => self.residue_classes().transformed(b),
            PointSetSpec::Union { parts } => PointSetSpec::Union {
                parts: parts.iter().map(|p| p.transformed(b)).collect(),
            },
        }
    }

    /// `t_step·Z × f_step·(Z ∖ νZ)` as the union of the ν − 1 cosets
    /// `t_step·Z × (ν·f_step·Z + j·f_step)`; other variants are returned as is.
    pub fn residue_classes(&self) -> Self {
        match self {
            PointSetSpec::ExcludedResidues {
                t_step,
                f_step,
                modulus,
            } => PointSetSpec::Union {
                parts: (1..*modulus)
                    .map(|j| PointSetSpec::ShiftedLattice {
                        basis: [[*t_step, 0.0], [0.0, *modulus as f64 * f_step]],
                        shift: [0.0, j as f64 * f_step],
                    })
                    .collect(),
            },
            other => other.clone(),
        }
    }

    /// A period parallelogram `(origin, e1, e2)` for placing probe windows.
    /// Unions use the rectangle spanned by the widest component extents.
    fn probe_cell(&self) -> ([f64; 2], [f64; 2]) {
        match self {
            PointSetSpec::Lattice { basis }
            | PointSetSpec::ShiftedLattice { basis, .. }
            | PointSetSpec::PuncturedLattice { basis } => {
                ([basis[0][0], basis[1][0]], [basis[0][1], basis[1][1]])
            }
            PointSetSpec::ExcludedResidues {
                t_step,
                f_step,
                modulus,
            } => ([*t_step, 0.0], [0.0, *modulus as f64 * f_step]),
            PointSetSpec::Union { parts } => {
                let (mut w, mut h) = (0.0f64, 0.0f64);
                for p in parts {
                    let (e1, e2) = p.probe_cell();
                    w = w.max(e1[0].abs() + e2[0].abs());
                    h = h.max(e1[1].abs() + e2[1].abs());
                }
                ([w, 0.0], [0.0, h])
            }
        }
    }
}

/// Number of multiples of `step` in `[lo, hi]`, boundary fuzz included.
fn count_multiples(step: f64, lo: f64, hi: f64) -> i64 {
    let first = ((lo - BOX_FUZZ) / step).ceil() as i64;
    let last = ((hi + BOX_FUZZ) / step).floor() as i64;
    (last - first + 1).max(0)
}

/// Interval of reals `k` with `lo ≤ c·k + d ≤ hi`, or everything/nothing when
/// `c = 0`.
fn solve_row(c: f64, d: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    if c.abs() < 1e-300 {
        return if lo - BOX_FUZZ <= d && d <= hi + BOX_FUZZ {
            Some((f64::NEG_INFINITY, f64::INFINITY))
        } else {
            None
        };
    }
    let (x, y) = ((lo - BOX_FUZZ - d) / c, (hi + BOX_FUZZ - d) / c);
    Some((x.min(y), x.max(y)))
}

/// Points `basis·k` in `center + [−R, R]²`, by exact integer enumeration of
/// one coordinate and an interval count for the other.
fn count_lattice(basis: &Mat2, center: [f64; 2], r: f64) -> i64 {
    let d = det(basis);
    let inv = [
        [basis[1][1] / d, -basis[0][1] / d],
        [-basis[1][0] / d, basis[0][0] / d],
    ];
    // Range of k2 over the box: extremes of the linear functional at corners.
    let (mut k2_lo, mut k2_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            let p = [
                center[0] + sx * (r + BOX_FUZZ),
                center[1] + sy * (r + BOX_FUZZ),
            ];
            let k2 = inv[1][0] * p[0] + inv[1][1] * p[1];
            k2_lo = k2_lo.min(k2);
            k2_hi = k2_hi.max(k2);
        }
    }
    let mut total = 0;
    for k2 in (k2_lo.floor() as i64)..=(k2_hi.ceil() as i64) {
        let k2f = k2 as f64;
        let rows =
            (0..2).map(|i| solve_row(basis[i][0], basis[i][1] * k2f, center[i] - r, center[i] + r));
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let mut empty = false;
        for row in rows {
            match row {
                Some((a, b)) => {
                    lo = lo.max(a);
                    hi = hi.min(b);
                }
                None => empty = true,
            }
        }
        if empty || lo > hi {
            continue;
        }
        total += (hi.floor() as i64 - lo.ceil() as i64 + 1).max(0);
    }
    total
}

fn in_box(p: [f64; 2], center: [f64; 2], r: f64) -> bool {
    (p[0] - center[0]).abs() <= r + BOX_FUZZ && (p[1] - center[1]).abs() <= r + BOX_FUZZ
}

/// Number of points of `spec` in the closed box `center + [−R, R]²`.
pub fn count_in_box(spec: &PointSetSpec, center: [f64; 2], r: f64) -> i64 {
    match spec {
        PointSetSpec::Lattice { basis } => count_lattice(basis, center, r),
        PointSetSpec::ShiftedLattice { basis, shift } => {
            count_lattice(basis, [center[0] - shift[0], center[1] - shift[1]], r)
        }
        PointSetSpec::PuncturedLattice { basis } => {
            count_lattice(basis, center, r) - i64::from(in_box([0.0, 0.0], center, r))
        }
        PointSetSpec::ExcludedResidues {
            t_step,
            f_step,
            modulus,
        } => {
            let (lo, hi) = (center[1] - r, center[1] + r);
            let time = count_multiples(*t_step, center[0] - r, center[0] + r);
            let freq = count_multiples(*f_step, lo, hi)
                - count_multiples(*modulus as f64 * f_step, lo, hi);
            time * freq
        }
        PointSetSpec::Union { parts } => parts.iter().map(|p| count_in_box(p, center, r)).sum(),
    }
}

/// Windowed estimate `θ_R` of the lower density at one scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    #[serde(rename = "R")]
    pub r: f64,
    pub theta: f64,
    pub analytic: Option<f64>,
    pub gap: Option<f64>,
}

/// `θ_R = (2R)⁻² · min count` over `probe_grid²` window centres in one period
/// cell.
pub fn lower_density_empirical(
    spec: &PointSetSpec,
    r_list: &[f64],
    probe_grid: usize,
) -> Result<Vec<DensityEstimate>> {
    spec.validate()?;
    if probe_grid == 0 {
        return Err(Error::InvalidParameter(
            "probe_grid must be at least 1".into(),
        ));
    }
    if let Some(r) = r_list.iter().find(|r| r.is_nan() || **r <= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "R must be positive, got {r}"
        )));
    }
    let (e1, e2) = spec.probe_cell();
    let p = probe_grid as f64;
    let centres: Vec<[f64; 2]> = (0..probe_grid * probe_grid)
        .map(|idx| {
            let (i, j) = ((idx / probe_grid) as f64 / p, (idx % probe_grid) as f64 / p);
            [i * e1[0] + j * e2[0], i * e1[1] + j * e2[1]]
        })
        .collect();
    let analytic = spec.analytic_density();
    Ok(r_list
        .iter()
        .map(|&r| {
            let min = centres
                .par_iter()
                .map(|c| count_in_box(spec, *c, r))
                .min()
                .unwrap_or(0);
            let theta = min as f64 / (4.0 * r * r);
            DensityEstimate {
                r,
                theta,
                analytic: Some(analytic),
                gap: Some((theta - analytic).abs()),
            }
        })
        .collect())
}

/// `1/(αβ) + (1 − 1/ν)·αβ`.
pub fn omega_density_formula(alpha: f64, beta: f64, nu: i64) -> Result<f64> {
    if nu < 2 {
        return Err(Error::InvalidModulus(nu));
    }
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha, beta must be positive, got {alpha}, {beta}"
        )));
    }
    let ab = alpha * beta;
    Ok(1.0 / ab + (1.0 - 1.0 / nu as f64) * ab)
}

/// `(θ_R(BΓ), |det B|⁻¹ · θ_R(Γ))`.
pub fn density_transform_check(spec: &PointSetSpec, b: &Mat2, r: f64) -> Result<(f64, f64)> {
    let d = det(b);
    if !d.is_finite() || d.abs() < 1e-12 {
        return Err(Error::InvalidMatrix(format!("det B = {d}")));
    }
    let image = spec.transformed(b);
    let est = |s: &PointSetSpec| -> Result<f64> {
        Ok(lower_density_empirical(s, &[r], DEFAULT_PROBE_GRID)?[0].theta)
    };
    Ok((est(&image)?, est(spec)? / d.abs()))
}

/// `(βR − 1, βR + 1, #([0, R] ∩ β⁻¹Z))`.
pub fn interval_count_bounds(beta: f64, r: f64) -> Result<(f64, f64, i64)> {
    if !(beta > 0.0 && r > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "beta and R must be positive, got {beta}, {r}"
        )));
    }
    let exact = count_multiples(1.0 / beta, 0.0, r);
    let (lo, hi) = (beta * r - 1.0, beta * r + 1.0);
    debug_assert!(lo <= exact as f64 + 1e-9 && exact as f64 <= hi + 1e-9);
    Ok((lo, hi, exact))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquidistributionReport {
    pub covering_radius: f64,
    pub discrepancy: f64,
    pub n_samples: usize,
    pub t_step: f64,
}

/// Golden-ratio conjugate, the default orbit step.
pub const GOLDEN_STEP: f64 = 0.618_033_988_749_894_8;

fn torus_dist2(p: [f64; 2], q: [f64; 2], cell: [f64; 2]) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        let d = (p[i] - q[i]).abs();
        let d = d.min(cell[i] - d);
        s += d * d;
    }
    s
}

/// Nearest-sample distance on the torus via a bucket grid, searching rings
/// outward until no closer bucket can exist.
struct Buckets {
    n: usize,
    cell: [f64; 2],
    slots: Vec<Vec<[f64; 2]>>,
}

impl Buckets {
    fn new(points: &[[f64; 2]], cell: [f64; 2]) -> Self {
        let n = ((points.len() as f64).sqrt().ceil() as usize).clamp(1, 256);
        let mut slots = vec![Vec::new(); n * n];
        for p in points {
            let (i, j) = Self::index(n, cell, *p);
            slots[i * n + j].push(*p);
        }
        Buckets { n, cell, slots }
    }

    fn index(n: usize, cell: [f64; 2], p: [f64; 2]) -> (usize, usize) {
        let i = ((p[0] / cell[0] * n as f64) as usize).min(n - 1);
        let j = ((p[1] / cell[1] * n as f64) as usize).min(n - 1);
        (i, j)
    }

    fn nearest(&self, q: [f64; 2]) -> f64 {
        let n = self.n as i64;
        let (qi, qj) = Self::index(self.n, self.cell, q);
        let bw = (self.cell[0] / n as f64).min(self.cell[1] / n as f64);
        let mut best = f64::INFINITY;
        for ring in 0..=n / 2 + 1 {
            // Anything in ring k is at least (k − 1)·bw away.
            let bound = (ring as f64 - 1.0).max(0.0) * bw;
            if bound * bound > best {
                break;
            }
            for di in -ring..=ring {
                for dj in -ring..=ring {
                    if di.abs() != ring && dj.abs() != ring {
                        continue;
                    }
                    let i = (qi as i64 + di).rem_euclid(n) as usize;
                    let j = (qj as i64 + dj).rem_euclid(n) as usize;
                    for p in &self.slots[i * self.n + j] {
                        best = best.min(torus_dist2(*p, q, self.cell));
                    }
                }
            }
        }
        best.sqrt()
    }
}

/// Covering radius and anchored-box discrepancy of `{j·t_step·z mod Λ}`,
/// `j = 1..=n_samples`, in the cell `[0, α) × [0, β)`.
pub fn equidistribution_diagnostic(
    z: [f64; 2],
    lat: &SeparableLattice,
    t_step: f64,
    n_samples: usize,
) -> Result<EquidistributionReport> {
    if z == [0.0, 0.0] {
        return Err(Error::InvalidParameter("z must be nonzero".into()));
    }
    if n_samples == 0 {
        return Err(Error::InvalidParameter(
            "n_samples must be at least 1".into(),
        ));
    }
    let cell = [lat.alpha.to_f64(), lat.beta.to_f64()];
    let points: Vec<[f64; 2]> = (1..=n_samples)
        .map(|j| {
            let t = j as f64 * t_step;
            [
                (t * z[0]).rem_euclid(cell[0]),
                (t * z[1]).rem_euclid(cell[1]),
            ]
        })
        .collect();

    let buckets = Buckets::new(&points, cell);
    let g = COVERING_GRID;
    let covering_radius = (0..g * g)
        .into_par_iter()
        .map(|idx| {
            let q = [
                ((idx / g) as f64 + 0.5) / g as f64 * cell[0],
                ((idx % g) as f64 + 0.5) / g as f64 * cell[1],
            ];
            buckets.nearest(q)
        })
        .reduce(|| 0.0, f64::max);

    // Histogram, then 2D prefix sums give counts in [0, u) × [0, v).
    let k = DISCREPANCY_GRID;
    let mut hist = vec![0usize; k * k];
    for p in &points {
        let i = ((p[0] / cell[0] * k as f64) as usize).min(k - 1);
        let j = ((p[1] / cell[1] * k as f64) as usize).min(k - 1);
        hist[i * k + j] += 1;
    }
    let mut cum = vec![0usize; (k + 1) * (k + 1)];
    for i in 0..k {
        for j in 0..k {
            cum[(i + 1) * (k + 1) + j + 1] =
                hist[i * k + j] + cum[i * (k + 1) + j + 1] + cum[(i + 1) * (k + 1) + j]
                    - cum[i * (k + 1) + j];
        }
    }
    let mut discrepancy = 0.0f64;
    for i in 1..=k {
        for j in 1..=k {
            let frac = cum[i * (k + 1) + j] as f64 / n_samples as f64;
            let area = (i * j) as f64 / (k * k) as f64;
            discrepancy = discrepancy.max((frac - area).abs());
        }
    }
    Ok(EquidistributionReport {
        covering_radius,
        discrepancy,
        n_samples,
        t_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Rational;

    fn unit() -> PointSetSpec {
        PointSetSpec::separable(1.0, 1.0)
    }

    fn brute(spec: &PointSetSpec, c: [f64; 2], r: f64) -> i64 {
        // Integer-range oracle for axis-aligned sets.
        let mut n = 0;
        for x in -40..=40 {
            for y in -40..=40 {
                let p = [x as f64, y as f64];
                let hit = match spec {
                    PointSetSpec::ExcludedResidues { modulus, .. } => y % modulus != 0,
                    PointSetSpec::PuncturedLattice { .. } => (x, y) != (0, 0),
                    _ => true,
                };
                if hit && in_box(p, c, r) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn box_counts() {
        assert_eq!(count_in_box(&unit(), [0.0, 0.0], 1.5), 9);
        let punct = PointSetSpec::PuncturedLattice {
            basis: [[1.0, 0.0], [0.0, 1.0]],
        };
        assert_eq!(count_in_box(&punct, [0.0, 0.0], 1.5), 8);
        let odd = PointSetSpec::ExcludedResidues {
            t_step: 1.0,
            f_step: 1.0,
            modulus: 2,
        };
        assert_eq!(
            count_in_box(&odd, [0.0, 0.0], 2.5),
            brute(&odd, [0.0, 0.0], 2.5)
        );
        assert_eq!(count_in_box(&odd, [0.0, 0.0], 2.5), 10);
        for (c, r) in [([0.3, -1.7], 4.2), ([2.0, 2.0], 3.0), ([-5.5, 0.5], 7.9)] {
            assert_eq!(count_in_box(&unit(), c, r), brute(&unit(), c, r));
            assert_eq!(count_in_box(&punct, c, r), brute(&punct, c, r));
            assert_eq!(count_in_box(&odd, c, r), brute(&odd, c, r));
        }
    }

    #[test]
    fn sheared_lattice_count_matches_brute_force() {
        let basis = [[1.0, 1.0], [0.0, 1.0]];
        let spec = PointSetSpec::Lattice { basis };
        for (c, r) in [([0.0, 0.0], 2.5), ([0.4, 1.3], 5.1)] {
            let mut n = 0;
            for k1 in -30..=30 {
                for k2 in -30..=30 {
                    let p = apply(&basis, [k1 as f64, k2 as f64]);
                    n += i64::from(in_box(p, c, r));
                }
            }
            assert_eq!(count_in_box(&spec, c, r), n);
        }
    }

    #[test]
    fn union_is_additive() {
        let (p, q) = PointSetSpec::omega_components(1.5, 5.0 / 7.0, 2);
        let u = PointSetSpec::omega(1.5, 5.0 / 7.0, 2);
        let c = [0.37, -2.1];
        assert_eq!(
            count_in_box(&u, c, 9.0),
            count_in_box(&p, c, 9.0) + count_in_box(&q, c, 9.0)
        );
    }

    #[test]
    fn theta_unit_lattice() {
        let est = lower_density_empirical(&unit(), &[50.0], 8).unwrap();
        assert!((est[0].theta - 1.0).abs() <= 2.0 / 50.0);
    }

    #[test]
    fn omega_formula() {
        assert!((omega_density_formula(1.0, 1.0, 2).unwrap() - 1.5).abs() < 1e-15);
        let s2 = 2f64.sqrt();
        assert!((omega_density_formula(s2, 1.0, 2).unwrap() - s2).abs() < 1e-12);
        assert!((omega_density_formula(2.0, 1.0, 3).unwrap() - 11.0 / 6.0).abs() < 1e-12);
        assert_eq!(
            omega_density_formula(1.0, 1.0, 1).unwrap_err(),
            Error::InvalidModulus(1)
        );
    }

    #[test]
    fn interval_counts() {
        assert_eq!(interval_count_bounds(1.0, 10.0).unwrap(), (9.0, 11.0, 11));
        assert_eq!(interval_count_bounds(2.0, 5.0).unwrap(), (9.0, 11.0, 11));
        let (lo, hi, n) = interval_count_bounds(5.0 / 7.0, 14.0).unwrap();
        // Multiples of 7/5 in [0, 14]: 0, 7/5, ..., 14.
        let oracle = (0..=20).filter(|k| 7 * k <= 70).count() as i64;
        assert_eq!(n, oracle);
        assert!(lo <= n as f64 && n as f64 <= hi);
    }

    #[test]
    fn transform_rejects_singular() {
        let err = density_transform_check(&unit(), &[[1.0, 2.0], [2.0, 4.0]], 10.0).unwrap_err();
        assert_eq!(err.name(), "InvalidMatrix");
    }

    #[test]
    fn excluded_residues_as_cosets() {
        let spec = PointSetSpec::ExcludedResidues {
            t_step: 0.7,
            f_step: 1.3,
            modulus: 3,
        };
        let cosets = spec.residue_classes();
        for c in [[0.0, 0.0], [1.1, -4.2]] {
            assert_eq!(count_in_box(&spec, c, 6.0), count_in_box(&cosets, c, 6.0));
        }
    }

    #[test]
    fn rational_orbit_is_not_dense() {
        let z2 = SeparableLattice::new(Rational::one(), Rational::one()).unwrap();
        let rep = equidistribution_diagnostic([1.0, 0.0], &z2, GOLDEN_STEP, 2000).unwrap();
        assert!(rep.covering_radius > 0.4);
    }
}
