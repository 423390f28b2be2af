use std::f64::consts::PI;
use std::ops::{Add, Index, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `e^{2πi k/L}` with `k` reduced mod `L` first, so equal residues give
/// bit-identical values.
pub fn unit_root(k: i64, l: usize) -> Complex64 {
    let r = k.rem_euclid(l as i64);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / l as f64)
}

/// A vector in `C^L`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signal(pub Vec<Complex64>);

impl Signal {
    pub fn zeros(l: usize) -> Self {
        Signal(vec![Complex64::new(0.0, 0.0); l])
    }

    pub fn delta(l: usize, n: usize) -> Self {
        let mut s = Self::zeros(l);
        s.0[n % l] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn from_real(values: &[f64]) -> Self {
        Signal(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.0
    }

    /// `⟨self, other⟩ = Σ self[n]·conj(other[n])`, linear in the first slot.
    pub fn inner(&self, other: &Signal) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(x, y)| x * y.conj()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Signal {
        Signal(self.0.iter().map(|x| x * c).collect())
    }

    pub fn normalized(&self) -> Signal {
        let n = self.norm();
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == Complex64::new(0.0, 0.0))
    }

    /// Plain cyclic translation `T_t`.
    pub fn translate(&self, t: i64) -> Signal {
        let l = self.len() as i64;
        Signal(
            (0..l)
                .map(|n| self.0[(n - t).rem_euclid(l) as usize])
                .collect(),
        )
    }

    /// Plain modulation `M_m`.
    pub fn modulate(&self, m: i64) -> Signal {
        let l = self.len();
        Signal(
            self.0
                .iter()
                .enumerate()
                .map(|(n, x)| x * unit_root(m * n as i64, l))
                .collect(),
        )
    }
}

impl Index<usize> for Signal {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl Add for &Signal {
    type Output = Signal;
    fn add(self, rhs: &Signal) -> Signal {
        Signal(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Signal {
    type Output = Signal;
    fn sub(self, rhs: &Signal) -> Signal {
        Signal(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

/// `π(t, m) f = T_t M_m f`, i.e. `(π f)[n] = e^{2πi m(n−t)/L} f[n−t]`.
pub fn tf_shift(f: &Signal, t: i64, m: i64) -> Signal {
    let l = f.len();
    let li = l as i64;
    Signal(
        (0..li)
            .map(|n| {
                let src = (n - t).rem_euclid(li);
                f.0[src as usize] * unit_root(m * src, l)
            })
            .collect(),
    )
}
