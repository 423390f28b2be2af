//! Exact rational algebra for lattices in R².
//!
//! Every identity here is checked with zero tolerance: entries are
//! arbitrary-precision rationals, so determinants, lattice equality and
//! orders in quotient groups are decided exactly.

mod matrix;
mod rational;
mod reduce;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use matrix::{is_integer_vector, RationalMatrix2x2, RationalVector};
pub use rational::{lcm_of_denominators, Rational};
pub use reduce::{reduce_invariant_shift, ReductionBranch, ReductionResult};

use crate::error::{Error, Result};

/// The lattice `basis · Z²` for an invertible rational basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice2D {
    basis: RationalMatrix2x2,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    basis: RationalMatrix2x2,
}

impl TryFrom<LatticeRepr> for Lattice2D {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        Lattice2D::new(r.basis)
    }
}

impl From<Lattice2D> for LatticeRepr {
    fn from(l: Lattice2D) -> Self {
        LatticeRepr { basis: l.basis }
    }
}

impl Lattice2D {
    pub fn new(basis: RationalMatrix2x2) -> Result<Self> {
        if basis.det().is_zero() {
            return Err(Error::InvalidLattice(format!("singular basis {basis:?}")));
        }
        Ok(Lattice2D { basis })
    }

    /// Z².
    pub fn integer() -> Self {
        Lattice2D {
            basis: RationalMatrix2x2::identity(),
        }
    }

    pub fn basis(&self) -> &RationalMatrix2x2 {
        &self.basis
    }

    /// Coordinates of `z` with respect to the basis.
    pub fn coordinates(&self, z: &RationalVector) -> RationalVector {
        self.basis
            .inverse()
            .expect("lattice basis is invertible")
            .apply(z)
    }

    pub fn contains(&self, z: &RationalVector) -> bool {
        is_integer_vector(&self.coordinates(z))
    }

    /// Same point set: the change of basis is integral and unimodular.
    pub fn same_lattice(&self, other: &Lattice2D) -> bool {
        let inv = self.basis.inverse().expect("lattice basis is invertible");
        (&inv * &other.basis).is_unimodular()
    }

    /// The image `B · self`.
    pub fn transformed(&self, b: &RationalMatrix2x2) -> Result<Lattice2D> {
        Lattice2D::new(b * &self.basis)
    }
}

/// `αZ × βZ` with `α, β > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeparableLattice {
    pub alpha: Rational,
    pub beta: Rational,
}

impl SeparableLattice {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::InvalidLattice(format!(
                "separable steps must be positive, got ({alpha}, {beta})"
            )));
        }
        Ok(SeparableLattice { alpha, beta })
    }

    pub fn density(&self) -> Rational {
        (&self.alpha * &self.beta).recip().expect("positive steps")
    }

    pub fn to_lattice(&self) -> Lattice2D {
        Lattice2D {
            basis: RationalMatrix2x2::diag(self.alpha.clone(), self.beta.clone()),
        }
    }
}

/// `|det basis|⁻¹`, exact.
pub fn density(lat: &Lattice2D) -> Result<Rational> {
    lat.basis
        .det()
        .abs()
        .recip()
        .ok_or_else(|| Error::InvalidLattice("singular basis".into()))
}

/// Output of [`separate`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Separation {
    /// Unit-determinant matrix with `C · lat = αZ × βZ`.
    pub c: RationalMatrix2x2,
    pub sep: SeparableLattice,
    /// Integer unimodular `U` with `C · basis · U = diag(α, β)`.
    pub unimodular: RationalMatrix2x2,
}

/// Find a unit-determinant `C` that maps `lat` onto a separable lattice.
///
/// Denominators are cleared, the second row of the integer basis is
/// reduced to `(0, g)` by a unimodular column operation (extended Euclid),
/// and the remaining off-diagonal entry is removed by a row shear.
pub fn separate(lat: &Lattice2D) -> Result<Separation> {
    let basis = &lat.basis;
    if basis.det().is_zero() {
        return Err(Error::InvalidLattice("singular basis".into()));
    }
    let scale = lcm_of_denominators(basis.entries.iter().flatten());
    let scale_q = Rational::from_bigint(scale.clone());
    let n = basis
        .scale(&scale_q)
        .to_integer_entries()
        .expect("denominators cleared");

    let (n10, n11) = (&n[1][0], &n[1][1]);
    let egcd = n10.extended_gcd(n11);
    let g = egcd.gcd.clone();
    debug_assert!(g.is_positive());
    let (x, y) = (egcd.x, egcd.y);

    // Columns of U: c1 = (-n11/g, n10/g), c2 = (x, y). det U = -1.
    let mut u = [[-(n11 / &g), x.clone()], [n10 / &g, y.clone()]];
    let mut h11 = &u[0][0] * &n[0][0] + &u[1][0] * &n[0][1];
    let h12 = &x * &n[0][0] + &y * &n[0][1];
    if h11.is_negative() {
        u[0][0] = -&u[0][0];
        u[1][0] = -&u[1][0];
        h11 = -h11;
    }
    debug_assert!(!h11.is_zero());

    let shear = Rational::from_big(-h12, g.clone());
    let c = RationalMatrix2x2::new([
        [Rational::one(), shear],
        [Rational::zero(), Rational::one()],
    ]);
    let sep = SeparableLattice::new(
        Rational::from_big(h11, scale.clone()),
        Rational::from_big(g, scale),
    )?;
    let unimodular = RationalMatrix2x2::new(u.map(|row| row.map(Rational::from_bigint)));
    Ok(Separation { c, sep, unimodular })
}

/// The adjoint lattice `(1/β)Z × (1/α)Z`.
pub fn adjoint_lattice(sep: &SeparableLattice) -> SeparableLattice {
    SeparableLattice {
        alpha: sep.beta.recip().expect("positive"),
        beta: sep.alpha.recip().expect("positive"),
    }
}

/// Smallest `n ∈ [1, n_max]` with `n·z ∈ lat`.
///
/// The order is the lcm of the denominators of the lattice coordinates of
/// `z`; see [`order_in_lattice_brute`] for the scan it must agree with.
pub fn order_in_lattice(z: &RationalVector, lat: &Lattice2D, n_max: u64) -> Option<u64> {
    let coords = lat.coordinates(z);
    let order = lcm_of_denominators(coords.iter());
    let order = order.to_u64()?;
    (order <= n_max).then_some(order)
}

/// Linear scan `n = 1, 2, …, n_max`.
pub fn order_in_lattice_brute(z: &RationalVector, lat: &Lattice2D, n_max: u64) -> Option<u64> {
    let coords = lat.coordinates(z);
    (1..=n_max).find(|&n| {
        let n = BigInt::from(n);
        coords
            .iter()
            .all(|c| (&n * c.numer()).is_multiple_of(c.denom()))
    })
}

/// Representatives `(kα/q, 0)`, `k = 0..q`, of `(α/q)Z × βZ` over `αZ × βZ`.
pub fn coset_decomposition(sep: &SeparableLattice, q: i64) -> Result<Vec<RationalVector>> {
    if q < 1 {
        return Err(Error::InvalidIndex(format!("q = {q} must be at least 1")));
    }
    Ok((0..q)
        .map(|k| [&sep.alpha * Rational::new(k, q), Rational::zero()])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn density_examples() {
        let unit = Lattice2D::integer();
        assert_eq!(density(&unit).unwrap(), q(1, 1));
        let d = Lattice2D::new(RationalMatrix2x2::diag(q(3, 2), q(5, 7))).unwrap();
        assert_eq!(density(&d).unwrap(), q(14, 15));
        let skew = Lattice2D::new(RationalMatrix2x2::from_i64([[2, 1], [1, 1]])).unwrap();
        assert_eq!(density(&skew).unwrap(), q(1, 1));
    }

    #[test]
    fn singular_basis_rejected() {
        let err = Lattice2D::new(RationalMatrix2x2::from_i64([[1, 2], [2, 4]])).unwrap_err();
        assert_eq!(err.name(), "InvalidLattice");
    }

    #[test]
    fn separate_already_separable() {
        let lat = Lattice2D::new(RationalMatrix2x2::diag(q(2, 1), q(1, 2))).unwrap();
        let s = separate(&lat).unwrap();
        assert_eq!(s.c, RationalMatrix2x2::identity());
        assert_eq!(s.sep, SeparableLattice::new(q(2, 1), q(1, 2)).unwrap());
    }

    #[test]
    fn separate_shear() {
        let lat = Lattice2D::new(RationalMatrix2x2::from_i64([[1, 1], [0, 1]])).unwrap();
        let s = separate(&lat).unwrap();
        assert!(s.c.is_symplectic());
        assert_eq!(s.sep, SeparableLattice::new(q(1, 1), q(1, 1)).unwrap());
        let prod = &(&s.c * lat.basis()) * &s.unimodular;
        assert_eq!(prod, RationalMatrix2x2::identity());
        assert!(s.unimodular.is_unimodular());
    }

    #[test]
    fn same_lattice_detects_basis_change() {
        let a = Lattice2D::new(RationalMatrix2x2::from_i64([[1, 0], [0, 1]])).unwrap();
        let b = Lattice2D::new(RationalMatrix2x2::from_i64([[2, 1], [1, 1]])).unwrap();
        let c = Lattice2D::new(RationalMatrix2x2::from_i64([[2, 0], [0, 1]])).unwrap();
        assert!(a.same_lattice(&b));
        assert!(!a.same_lattice(&c));
    }

    #[test]
    fn adjoint_examples() {
        let s = |a, b| SeparableLattice::new(a, b).unwrap();
        assert_eq!(adjoint_lattice(&s(q(1, 1), q(1, 1))), s(q(1, 1), q(1, 1)));
        assert_eq!(adjoint_lattice(&s(q(2, 1), q(3, 1))), s(q(1, 3), q(1, 2)));
        assert_eq!(adjoint_lattice(&s(q(3, 2), q(5, 7))), s(q(7, 5), q(2, 3)));
    }

    #[test]
    fn order_examples() {
        let z2 = Lattice2D::integer();
        assert_eq!(order_in_lattice(&[q(1, 2), q(1, 3)], &z2, 100), Some(6));
        assert_eq!(order_in_lattice(&[q(1, 1), q(0, 1)], &z2, 100), Some(1));
        assert_eq!(order_in_lattice(&[q(1, 2), q(1, 3)], &z2, 5), None);

        let d = Lattice2D::new(RationalMatrix2x2::diag(q(3, 2), q(5, 7))).unwrap();
        let z = d.basis().apply(&[q(1, 6), q(2, 5)]);
        assert_eq!(order_in_lattice_brute(&z, &d, 60), Some(30));
        assert_eq!(order_in_lattice(&z, &d, 60), Some(30));
    }

    #[test]
    fn cosets() {
        let s = |a, b| SeparableLattice::new(a, b).unwrap();
        assert_eq!(
            coset_decomposition(&s(q(1, 1), q(1, 1)), 1).unwrap(),
            vec![[q(0, 1), q(0, 1)]]
        );
        assert_eq!(
            coset_decomposition(&s(q(1, 1), q(1, 1)), 3).unwrap(),
            vec![[q(0, 1), q(0, 1)], [q(1, 3), q(0, 1)], [q(2, 3), q(0, 1)]]
        );
        assert_eq!(
            coset_decomposition(&s(q(2, 1), q(5, 1)), 2).unwrap(),
            vec![[q(0, 1), q(0, 1)], [q(1, 1), q(0, 1)]]
        );
        assert_eq!(
            coset_decomposition(&s(q(1, 1), q(1, 1)), 0)
                .unwrap_err()
                .name(),
            "InvalidIndex"
        );
    }

    #[test]
    fn lattice_json_shape() {
        let lat = Lattice2D::new(RationalMatrix2x2::from_fractions([
            [(3, 2), (0, 1)],
            [(1, 3), (5, 7)],
        ]))
        .unwrap();
        let s = serde_json::to_string(&lat).unwrap();
        assert_eq!(s, r#"{"basis":[["3/2","0"],["1/3","5/7"]]}"#);
        let back: Lattice2D = serde_json::from_str(&s).unwrap();
        assert!(back.same_lattice(&lat));
        assert!(serde_json::from_str::<Lattice2D>(r#"{"basis":[["1","2"],["2","4"]]}"#).is_err());
    }
}
