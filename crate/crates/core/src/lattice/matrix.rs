use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Column vector in Q².
pub type RationalVector = [Rational; 2];

/// Exact 2×2 rational matrix, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalMatrix2x2 {
    pub entries: [[Rational; 2]; 2],
}

impl RationalMatrix2x2 {
    pub fn new(entries: [[Rational; 2]; 2]) -> Self {
        RationalMatrix2x2 { entries }
    }

    pub fn from_i64(e: [[i64; 2]; 2]) -> Self {
        Self::new(e.map(|row| row.map(Rational::from_integer)))
    }

    /// Rows given as `(num, den)` pairs.
    pub fn from_fractions(e: [[(i64, i64); 2]; 2]) -> Self {
        Self::new(e.map(|row| row.map(|(n, d)| Rational::new(n, d))))
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0], [0, 1]])
    }

    pub fn diag(x: Rational, y: Rational) -> Self {
        Self::new([[x, Rational::zero()], [Rational::zero(), y]])
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> RationalVector {
        [self.entries[0][col].clone(), self.entries[1][col].clone()]
    }

    pub fn det(&self) -> Rational {
        let e = &self.entries;
        &e[0][0] * &e[1][1] - &e[0][1] * &e[1][0]
    }

    /// `det == 1` exactly.
    pub fn is_symplectic(&self) -> bool {
        self.det() == Rational::one()
    }

    pub fn is_integer(&self) -> bool {
        self.entries.iter().flatten().all(Rational::is_integer)
    }

    /// Integer matrix with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.is_integer() && self.det().abs() == Rational::one()
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv_det = self.det().recip()?;
        let e = &self.entries;
        Some(Self::new([
            [&e[1][1] * &inv_det, -(&e[0][1] * &inv_det)],
            [-(&e[1][0] * &inv_det), &e[0][0] * &inv_det],
        ]))
    }

    pub fn transpose(&self) -> Self {
        let e = &self.entries;
        Self::new([
            [e[0][0].clone(), e[1][0].clone()],
            [e[0][1].clone(), e[1][1].clone()],
        ])
    }

    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        let e = &self.entries;
        [
            &e[0][0] * &v[0] + &e[0][1] * &v[1],
            &e[1][0] * &v[0] + &e[1][1] * &v[1],
        ]
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.entries.clone().map(|row| row.map(|x| x * s)))
    }

    /// Entries as big integers, if all are integral.
    pub fn to_integer_entries(&self) -> Option<[[BigInt; 2]; 2]> {
        if !self.is_integer() {
            return None;
        }
        Some(
            self.entries
                .clone()
                .map(|row| row.map(|x| x.numer().clone())),
        )
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        self.entries.clone().map(|row| row.map(|x| x.to_f64()))
    }
}

impl Mul<&RationalMatrix2x2> for &RationalMatrix2x2 {
    type Output = RationalMatrix2x2;
    fn mul(self, rhs: &RationalMatrix2x2) -> RationalMatrix2x2 {
        let (a, b) = (&self.entries, &rhs.entries);
        let cell = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        RationalMatrix2x2::new([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

impl Mul for RationalMatrix2x2 {
    type Output = RationalMatrix2x2;
    fn mul(self, rhs: RationalMatrix2x2) -> RationalMatrix2x2 {
        &self * &rhs
    }
}

impl fmt::Debug for RationalMatrix2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

/// Whether every entry of `v` is an integer.
pub fn is_integer_vector(v: &RationalVector) -> bool {
    v[0].is_integer() && v[1].is_integer()
}
