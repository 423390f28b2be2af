use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::signal::{unit_root, Signal};

pub type CMatrix = DMatrix<Complex64>;

/// Tolerance of the Hermitian flag, relative Frobenius.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Default relative eigenvalue cut-off for pseudoinverses and spans.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// Dense `L × L` complex operator.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix(pub CMatrix);

impl OperatorMatrix {
    pub fn zeros(l: usize) -> Self {
        OperatorMatrix(CMatrix::zeros(l, l))
    }

    pub fn identity(l: usize) -> Self {
        OperatorMatrix(CMatrix::identity(l, l))
    }

    /// The matrix of `π(t, m)`.
    pub fn tf_shift(l: usize, t: i64, m: i64) -> Self {
        let mut out = CMatrix::zeros(l, l);
        let li = l as i64;
        for n in 0..li {
            let src = (n - t).rem_euclid(li);
            out[(n as usize, src as usize)] = unit_root(m * src, l);
        }
        OperatorMatrix(out)
    }

    pub fn diagonal(d: &Signal) -> Self {
        OperatorMatrix(CMatrix::from_diagonal(&DVector::from_column_slice(&d.0)))
    }

    /// Unitary DFT, `W[k, n] = L^{−1/2} e^{−2πi kn/L}`.
    pub fn dft(l: usize) -> Self {
        let s = 1.0 / (l as f64).sqrt();
        OperatorMatrix(CMatrix::from_fn(l, l, |k, n| {
            unit_root(-((k * n) as i64), l) * s
        }))
    }

    /// `‖Uᴴ U − I‖_F`.
    pub fn unitarity_error(&self) -> f64 {
        let l = self.dim();
        (self.0.adjoint() * &self.0 - CMatrix::identity(l, l)).norm()
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn frobenius(&self) -> f64 {
        self.0.norm()
    }

    /// `‖self − other‖_F / ‖other‖_F` (absolute when `other = 0`).
    pub fn rel_diff(&self, other: &OperatorMatrix) -> f64 {
        let d = (&self.0 - &other.0).norm();
        let n = other.0.norm();
        if n == 0.0 {
            d
        } else {
            d / n
        }
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.0.norm();
        (self.0.adjoint() - &self.0).norm() <= HERMITIAN_TOL * n
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix(self.0.adjoint())
    }

    pub fn apply(&self, f: &Signal) -> Signal {
        let v = &self.0 * DVector::from_column_slice(&f.0);
        Signal(v.as_slice().to_vec())
    }

    pub fn compose(&self, other: &OperatorMatrix) -> Self {
        OperatorMatrix(&self.0 * &other.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        OperatorMatrix(self.0.scale(c))
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<Complex64> {
        let (r, c) = self.0.shape();
        (0..r)
            .flat_map(|i| (0..c).map(move |j| (i, j)))
            .map(|ij| self.0[ij])
            .collect()
    }
}

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    // Symmetrise so round-off in the input cannot leak into the solver.
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

/// Number of eigenvalues above `rank_tol · λ_max`.
pub fn numerical_rank(values: &[f64], rank_tol: f64) -> usize {
    let max = values.iter().cloned().fold(0.0, f64::max);
    if max <= 0.0 {
        return 0;
    }
    values.iter().filter(|&&v| v > rank_tol * max).count()
}

/// Orthonormal basis (`L × r`) of a subspace of `C^L`.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub columns: CMatrix,
    pub rank_tol: f64,
}

impl SubspaceBasis {
    /// Span of the columns of `m`, extracted from the eigenvectors of `m mᴴ`.
    pub fn from_spanning(m: &CMatrix, rank_tol: f64) -> Self {
        let (values, vectors) = hermitian_eigen(&(m * m.adjoint()));
        let r = numerical_rank(&values, rank_tol);
        SubspaceBasis {
            columns: vectors.columns(0, r).into_owned(),
            rank_tol,
        }
    }

    pub fn from_signals(signals: &[Signal], rank_tol: f64) -> Self {
        Self::from_spanning(&signals_to_matrix(signals), rank_tol)
    }

    /// The coordinate subspace on `indices`.
    pub fn coordinate(l: usize, indices: &[usize], rank_tol: f64) -> Self {
        let mut columns = CMatrix::zeros(l, indices.len());
        for (c, &i) in indices.iter().enumerate() {
            columns[(i, c)] = Complex64::new(1.0, 0.0);
        }
        SubspaceBasis { columns, rank_tol }
    }

    pub fn full(l: usize) -> Self {
        SubspaceBasis {
            columns: CMatrix::identity(l, l),
            rank_tol: DEFAULT_RANK_TOL,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.columns.nrows()
    }

    pub fn rank(&self) -> usize {
        self.columns.ncols()
    }

    pub fn project(&self, f: &Signal) -> Signal {
        let v = DVector::from_column_slice(&f.0);
        let p = &self.columns * (self.columns.adjoint() * v);
        Signal(p.as_slice().to_vec())
    }

    pub fn projector(&self) -> OperatorMatrix {
        OperatorMatrix(&self.columns * self.columns.adjoint())
    }

    /// `‖f − P f‖`.
    pub fn distance(&self, f: &Signal) -> f64 {
        (f - &self.project(f)).norm()
    }

    /// `‖Qᴴ Q − I‖_max`.
    pub fn orthonormality_error(&self) -> f64 {
        let g =
            self.columns.adjoint() * &self.columns - CMatrix::identity(self.rank(), self.rank());
        g.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Cosines of the principal angles with `other`, descending.
    pub fn principal_cosines(&self, other: &SubspaceBasis) -> Vec<f64> {
        if self.rank() == 0 || other.rank() == 0 {
            return Vec::new();
        }
        let c = self.columns.adjoint() * &other.columns;
        let mut s: Vec<f64> = c.singular_values().iter().cloned().collect();
        s.sort_by(|x, y| y.total_cmp(x));
        s
    }

    /// Largest principal angle with `other` (radians); `π/2` if the ranks
    /// differ. Computed as `asin ‖(I − P_self) Q_other‖₂`, which stays
    /// accurate for nearly equal subspaces.
    pub fn max_principal_angle(&self, other: &SubspaceBasis) -> f64 {
        if self.rank() != other.rank() {
            return std::f64::consts::FRAC_PI_2;
        }
        if self.rank() == 0 {
            return 0.0;
        }
        let resid = &other.columns - &self.columns * (self.columns.adjoint() * &other.columns);
        let sine = resid.singular_values().iter().cloned().fold(0.0, f64::max);
        sine.min(1.0).asin()
    }

    /// Smallest principal angle with `other` (radians).
    pub fn min_principal_angle(&self, other: &SubspaceBasis) -> f64 {
        self.principal_cosines(other)
            .first()
            .map(|c| c.min(1.0).acos())
            .unwrap_or(std::f64::consts::FRAC_PI_2)
    }

    /// Span of the union of the subspaces.
    pub fn sum(parts: &[&SubspaceBasis], rank_tol: f64) -> SubspaceBasis {
        let l = parts.first().map(|p| p.ambient_dim()).unwrap_or(0);
        let total: usize = parts.iter().map(|p| p.rank()).sum();
        let mut m = CMatrix::zeros(l, total);
        let mut c = 0;
        for p in parts {
            m.columns_mut(c, p.rank()).copy_from(&p.columns);
            c += p.rank();
        }
        Self::from_spanning(&m, rank_tol)
    }

    /// `U · self` for a unitary `U`.
    pub fn transformed(&self, u: &OperatorMatrix) -> SubspaceBasis {
        SubspaceBasis {
            columns: &u.0 * &self.columns,
            rank_tol: self.rank_tol,
        }
    }
}

/// Signals as the columns of a matrix.
pub fn signals_to_matrix(signals: &[Signal]) -> CMatrix {
    let l = signals.first().map(Signal::len).unwrap_or(0);
    CMatrix::from_fn(l, signals.len(), |r, c| signals[c].0[r])
}
