//! Finite metaplectic operators `U_B` on `C^L` for integer `B` with
//! `det B = 1`, built from the DFT and chirp generators, and the covariance
//! `U_B ρ(z) = ρ(Bz) U_B` up to a unimodular phase.

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gabor::{tf_shift, unit_root, FiniteGaborSystem, OperatorMatrix, Signal, SubspaceBasis};

pub type IntMatrix = [[i64; 2]; 2];

/// `J = [[0, 1], [−1, 0]]`, the matrix realised by the forward DFT.
pub const J: IntMatrix = [[0, 1], [-1, 0]];

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn det(b: &IntMatrix) -> i64 {
    b[0][0] * b[1][1] - b[0][1] * b[1][0]
}

pub fn apply(b: &IntMatrix, z: (i64, i64)) -> (i64, i64) {
    (b[0][0] * z.0 + b[0][1] * z.1, b[1][0] * z.0 + b[1][1] * z.1)
}

/// One factor of a generator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum Generator {
    /// `J`, realised by the unitary DFT `W`.
    Dft,
    /// `[[1, 0], [c, 1]]`, realised by the chirp `e^{2πi c h n²/L}`,
    /// `h = (L + 1)/2`.
    LowerShear { c: i64 },
    /// `[[1, c], [0, 1]] = J · [[1, 0], [−c, 1]] · J⁻¹`.
    UpperShear { c: i64 },
}

impl Generator {
    pub fn matrix(&self) -> IntMatrix {
        match *self {
            Generator::Dft => J,
            Generator::LowerShear { c } => [[1, 0], [c, 1]],
            Generator::UpperShear { c } => [[1, c], [0, 1]],
        }
    }

    fn inverse(&self) -> Self {
        match *self {
            Generator::Dft => unreachable!("J is inverted as J³"),
            Generator::LowerShear { c } => Generator::LowerShear { c: -c },
            Generator::UpperShear { c } => Generator::UpperShear { c: -c },
        }
    }
}

/// Word `G_1 ⋯ G_k` whose matrix product equals `b`.
pub fn factorize(b: &IntMatrix) -> Result<Vec<Generator>> {
    let d = det(b);
    if d != 1 {
        return Err(Error::NotSymplectic(d));
    }
    let mut power = [[1, 0], [0, 1]];
    for k in 0..4 {
        if power == *b {
            return Ok(vec![Generator::Dft; k]);
        }
        power = mul(&J, &power);
    }

    // Row reduction E_k ⋯ E_1 B = I, then B = E_1⁻¹ ⋯ E_k⁻¹.
    let mut m = *b;
    let mut applied: Vec<Vec<Generator>> = Vec::new();
    let mut left = |m: &mut IntMatrix, g: Vec<Generator>| {
        let mat = g
            .iter()
            .fold([[1, 0], [0, 1]], |acc, x| mul(&acc, &x.matrix()));
        *m = mul(&mat, m);
        applied.push(g);
    };
    while m[1][0] != 0 {
        if m[0][0] == 0 {
            left(&mut m, vec![Generator::UpperShear { c: 1 }]);
        }
        let k = m[1][0] / m[0][0];
        if k != 0 {
            left(&mut m, vec![Generator::LowerShear { c: -k }]);
        }
        if m[1][0] == 0 {
            break;
        }
        let k = m[0][0] / m[1][0];
        left(&mut m, vec![Generator::UpperShear { c: -k }]);
    }
    if m[0][0] == -1 {
        left(&mut m, vec![Generator::Dft, Generator::Dft]);
    }
    debug_assert_eq!((m[0][0], m[1][0], m[1][1]), (1, 0, 1));
    let q = m[0][1];
    if q != 0 {
        left(&mut m, vec![Generator::UpperShear { c: -q }]);
    }
    debug_assert_eq!(m, [[1, 0], [0, 1]]);

    let mut word = Vec::new();
    for step in &applied {
        // Each step is a single shear (self-inverting sign) or J² = −I.
        if step.len() == 2 {
            word.extend_from_slice(step);
        } else {
            word.push(step[0].inverse());
        }
    }
    debug_assert_eq!(
        word.iter()
            .fold([[1, 0], [0, 1]], |acc, x| mul(&acc, &x.matrix())),
        *b
    );
    Ok(word)
}

fn chirp(l: usize, c: i64) -> OperatorMatrix {
    let li = l as i64;
    let h = (li + 1) / 2;
    let d = Signal(
        (0..li)
            .map(|n| {
                let k = (c.rem_euclid(li) * h % li) * (n * n % li) % li;
                unit_root(k, l)
            })
            .collect(),
    );
    OperatorMatrix::diagonal(&d)
}

fn generator_unitary(g: &Generator, l: usize, w: &OperatorMatrix) -> OperatorMatrix {
    match *g {
        Generator::Dft => w.clone(),
        Generator::LowerShear { c } => chirp(l, c),
        Generator::UpperShear { c } => w.compose(&chirp(l, -c)).compose(&w.adjoint()),
    }
}

/// A unitary `U` with `U ρ(z) U⁻¹ = τ(z) ρ(Bz)` for unimodular `τ(z)`.
#[derive(Clone, Debug)]
pub struct MetaplecticOperator {
    pub matrix_b: IntMatrix,
    pub unitary: OperatorMatrix,
    pub l: usize,
    pub word: Vec<Generator>,
}

impl MetaplecticOperator {
    /// An operator assembled by hand, e.g. for negative controls.
    pub fn from_parts(matrix_b: IntMatrix, unitary: OperatorMatrix, l: usize) -> Self {
        MetaplecticOperator {
            matrix_b,
            unitary,
            l,
            word: Vec::new(),
        }
    }

    pub fn unitarity_error(&self) -> f64 {
        self.unitary.unitarity_error()
    }

    /// The generator word as JSON.
    pub fn trace_json(&self) -> serde_json::Value {
        serde_json::json!({
            "B": self.matrix_b,
            "L": self.l,
            "generators": self.word,
        })
    }
}

/// `U_B` as a product of DFT and chirp unitaries. Odd `L` is required unless
/// `B` is a power of `J`, which needs no chirp.
pub fn metaplectic_from_generators(b: &IntMatrix, l: usize) -> Result<MetaplecticOperator> {
    let word = factorize(b)?;
    if l == 0 {
        return Err(Error::UnsupportedLength("L must be positive".into()));
    }
    let needs_chirp = word.iter().any(|g| *g != Generator::Dft);
    if needs_chirp && l.is_multiple_of(2) {
        return Err(Error::UnsupportedLength(format!(
            "L = {l} is even; shears need odd L"
        )));
    }
    let w = OperatorMatrix::dft(l);
    let unitary = word.iter().fold(OperatorMatrix::identity(l), |acc, g| {
        acc.compose(&generator_unitary(g, l, &w))
    });
    Ok(MetaplecticOperator {
        matrix_b: *b,
        unitary,
        l,
        word,
    })
}

/// `ρ(t, m) = e^{πi tm(L+1)/L} π(t, m)` with `t, m` reduced to `[0, L)`.
pub fn rho(l: usize, t: i64, m: i64) -> OperatorMatrix {
    let li = l as i64;
    let (t, m) = (t.rem_euclid(li), m.rem_euclid(li));
    let k = (t * m % (2 * li)) * ((li + 1) % (2 * li)) % (2 * li);
    let phase = unit_root(k, 2 * l);
    let mut op = OperatorMatrix::tf_shift(l, t, m);
    op.0 *= phase;
    op
}

/// `min_τ ‖U ρ(z) − τ ρ(Bz) U‖_F / ‖U‖_F` over `|τ| = 1`.
pub fn covariance_residual(op: &MetaplecticOperator, z: (i64, i64)) -> f64 {
    let l = op.l;
    let x = op.unitary.compose(&rho(l, z.0, z.1)).0;
    let bz = apply(&op.matrix_b, z);
    let y = rho(l, bz.0, bz.1).compose(&op.unitary).0;
    let cross: Complex64 = y.iter().zip(x.iter()).map(|(b, a)| b.conj() * a).sum();
    // The optimal τ aligns the two matrices: τ = ⟨x, y⟩ / |⟨x, y⟩|.
    let tau = if cross.norm() > 0.0 {
        cross / cross.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    (x - y * tau).norm() / op.unitary.frobenius()
}

/// A window with an arbitrary finite set of time-frequency shifts.
#[derive(Clone, Debug)]
pub struct GeneralSystem {
    pub window: Signal,
    pub points: Vec<(i64, i64)>,
}

impl GeneralSystem {
    pub fn span(&self, rank_tol: f64) -> SubspaceBasis {
        let vectors: Vec<Signal> = self
            .points
            .iter()
            .map(|&(t, m)| tf_shift(&self.window, t, m))
            .collect();
        SubspaceBasis::from_signals(&vectors, rank_tol)
    }
}

#[derive(Clone, Debug)]
pub enum TransportedSystem {
    Separable(FiniteGaborSystem),
    General(GeneralSystem),
}

impl TransportedSystem {
    pub fn span(&self, rank_tol: f64) -> SubspaceBasis {
        match self {
            TransportedSystem::Separable(sys) => {
                SubspaceBasis::from_spanning(&crate::gabor::gabor_matrix(sys), rank_tol)
            }
            TransportedSystem::General(g) => g.span(rank_tol),
        }
    }

    pub fn window(&self) -> &Signal {
        match self {
            TransportedSystem::Separable(sys) => sys.window(),
            TransportedSystem::General(g) => &g.window,
        }
    }
}

/// The subgroup of `Z_L²` generated by `B(a, 0)` and `B(0, b)`, sorted.
fn image_group(b: &IntMatrix, l: usize, step_t: usize, step_f: usize) -> Vec<(i64, i64)> {
    let li = l as i64;
    let gens = [apply(b, (step_t as i64, 0)), apply(b, (0, step_f as i64))];
    let mut set = BTreeSet::new();
    for k in 0..(l / step_t) as i64 {
        for j in 0..(l / step_f) as i64 {
            set.insert((
                (k * gens[0].0 + j * gens[1].0).rem_euclid(li),
                (k * gens[0].1 + j * gens[1].1).rem_euclid(li),
            ));
        }
    }
    set.into_iter().collect()
}

/// `(U_B g, BΛ)`: separable when `BΛ = a′Z × b′Z` mod `L`.
pub fn transport_system(
    op: &MetaplecticOperator,
    sys: &FiniteGaborSystem,
) -> Result<TransportedSystem> {
    if op.l != sys.l() {
        return Err(Error::UnsupportedTransport(format!(
            "operator acts on L = {}, system has L = {}",
            op.l,
            sys.l()
        )));
    }
    let l = sys.l();
    let window = op.unitary.apply(sys.window());
    let points = image_group(&op.matrix_b, l, sys.a(), sys.b());
    if points.len() != sys.len() {
        return Err(Error::UnsupportedTransport(format!(
            "B is not injective on the lattice mod L ({} of {} points)",
            points.len(),
            sys.len()
        )));
    }
    let li = l as i64;
    let on_axis = |pick: fn(&(i64, i64)) -> (i64, i64)| {
        points
            .iter()
            .map(pick)
            .filter(|&(zero, _)| zero == 0)
            .fold(li, |acc, (_, v)| acc.gcd(&v))
    };
    let a2 = on_axis(|p| (p.1, p.0));
    let b2 = on_axis(|p| (p.0, p.1));
    if (l as i64 / a2) * (l as i64 / b2) == points.len() as i64 {
        Ok(TransportedSystem::Separable(FiniteGaborSystem::new(
            l,
            a2 as usize,
            b2 as usize,
            window,
        )?))
    } else {
        Ok(TransportedSystem::General(GeneralSystem { window, points }))
    }
}
