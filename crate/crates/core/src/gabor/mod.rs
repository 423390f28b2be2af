//! Finite Gabor model on `C^L`.
//!
//! Conventions: `(T_t f)[n] = f[n − t]`, `(M_m f)[n] = e^{2πi mn/L} f[n]`,
//! `π(t, m) = T_t M_m`, inner products linear in the first slot. Lattice
//! steps are integers dividing `L`; the continuous `α ↔ a`, `β ↔ b` and the
//! adjoint lattice `(1/β, 1/α) ↔ (L/b, L/a)`.

mod frame;
mod operator;
mod signal;
mod window;

pub use frame::{
    canonical_dual, cross_frame_operator, frame_bounds, frame_operator_direct,
    frame_operator_walnut, gabor_matrix, janssen_representation, walnut_h, CanonicalDual,
    FiniteGaborSystem, FrameBounds, JanssenRepresentation, JanssenTerm, WalnutCoefficients,
};
pub use operator::{
    hermitian_eigen, numerical_rank, signals_to_matrix, CMatrix, OperatorMatrix, SubspaceBasis,
    DEFAULT_RANK_TOL, HERMITIAN_TOL,
};
pub use signal::{tf_shift, unit_root, Signal};
pub use window::{
    periodic_gaussian, periodize, periodized_gaussian, support_space, SupportSpace, SupportSummary,
};
