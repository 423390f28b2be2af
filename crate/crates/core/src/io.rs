//! Plain-text and binary serialisation of signals, operators and tables.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::density::DensityEstimate;
use crate::error::{Error, Result};
use crate::gabor::{CMatrix, OperatorMatrix, Signal};
use crate::invariance::OrthogonalityRow;

pub const OPERATOR_MAGIC: &[u8; 8] = b"GABOROP1";

/// Shortest round-tripping decimal form; `NaN` and infinities spelled out.
fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn signal_to_csv(f: &Signal) -> String {
    let mut out = String::from("index,real,imag\n");
    for (n, z) in f.0.iter().enumerate() {
        let _ = writeln!(out, "{n},{},{}", num(z.re), num(z.im));
    }
    out
}

pub fn signal_from_csv(text: &str) -> Result<Signal> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == "index,real,imag" => {}
        _ => return Err(Error::Parse("expected header index,real,imag".into())),
    }
    let mut samples = Vec::new();
    for (row, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!("row {row}: expected 3 columns")));
        }
        let idx: usize = cols[0]
            .parse()
            .map_err(|_| Error::Parse(format!("row {row}: bad index {:?}", cols[0])))?;
        if idx != row {
            return Err(Error::Parse(format!("row {row}: index {idx} out of order")));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Parse(format!("row {row}: bad number {s:?}")))
        };
        samples.push(Complex64::new(parse(cols[1])?, parse(cols[2])?));
    }
    if samples.is_empty() {
        return Err(Error::Parse("signal has no samples".into()));
    }
    Ok(Signal(samples))
}

/// Dense `row,col,real,imag` listing.
pub fn operator_to_csv(op: &OperatorMatrix) -> String {
    let mut out = String::from("row,col,real,imag\n");
    let (r, c) = op.0.shape();
    for i in 0..r {
        for j in 0..c {
            let z = op.0[(i, j)];
            let _ = writeln!(out, "{i},{j},{},{}", num(z.re), num(z.im));
        }
    }
    out
}

/// Magic, then interleaved little-endian `re, im` in row-major order. The
/// dimension is implied by the payload length.
pub fn operator_to_bytes(op: &OperatorMatrix) -> Vec<u8> {
    let l = op.dim();
    let mut out = Vec::with_capacity(8 + 16 * l * l);
    out.extend_from_slice(OPERATOR_MAGIC);
    for z in op.row_major() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn operator_from_bytes(bytes: &[u8]) -> Result<OperatorMatrix> {
    if bytes.len() < 8 || &bytes[..8] != OPERATOR_MAGIC {
        return Err(Error::Parse("missing GABOROP1 header".into()));
    }
    let body = &bytes[8..];
    let l = ((body.len() / 16) as f64).sqrt().round() as usize;
    if body.len() != 16 * l * l {
        return Err(Error::Parse(format!(
            "payload of {} bytes is not a square complex matrix",
            body.len()
        )));
    }
    let read = |k: usize| f64::from_le_bytes(body[8 * k..8 * k + 8].try_into().unwrap());
    Ok(OperatorMatrix(CMatrix::from_fn(l, l, |i, j| {
        let k = 2 * (i * l + j);
        Complex64::new(read(k), read(k + 1))
    })))
}

pub fn orthogonality_to_csv(rows: &[OrthogonalityRow]) -> String {
    let mut out = String::from("k,l,abs\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.k, r.l, num(r.magnitude));
    }
    out
}

pub fn density_to_csv(rows: &[DensityEstimate]) -> String {
    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    let mut out = String::from("R,theta,analytic,gap\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(r.r),
            num(r.theta),
            opt(r.analytic),
            opt(r.gap)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gabor::periodized_gaussian;

    #[test]
    fn signal_round_trip() {
        let g = periodized_gaussian(12, 1.3).unwrap().modulate(5);
        let back = signal_from_csv(&signal_to_csv(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn operator_round_trip() {
        let op = OperatorMatrix::dft(6);
        let bytes = operator_to_bytes(&op);
        assert_eq!(&bytes[..8], b"GABOROP1");
        assert_eq!(bytes.len(), 8 + 16 * 36);
        assert_eq!(operator_from_bytes(&bytes).unwrap(), op);
        assert!(operator_from_bytes(&bytes[..40]).is_err());
        assert!(operator_from_bytes(b"GABOROP2").is_err());
    }

    #[test]
    fn bad_signal_csv() {
        assert!(signal_from_csv("a,b,c\n0,1,0\n").is_err());
        assert!(signal_from_csv("index,real,imag\n1,1,0\n").is_err());
        assert!(signal_from_csv("index,real,imag\n").is_err());
    }
}
