//! Value parsers for command-line flags.

use std::str::FromStr;

use tfshift::lattice::Rational;

/// An integer or `p/q`.
pub fn rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("{s:?} is not a rational: {e}"))
}

/// A decimal, `p/q`, or the named constant `sqrt2` (optionally negated).
pub fn real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, t),
    };
    if body == "sqrt2" {
        return Ok(sign * std::f64::consts::SQRT_2);
    }
    if body.contains('/') {
        return rational(t).map(|q| q.to_f64());
    }
    let x: f64 = t.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

pub fn real_list(s: &str) -> Result<Vec<f64>, String> {
    let v = s.split(',').map(real).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty list".into());
    }
    Ok(v)
}

/// Comma-separated window radii.
#[derive(Clone, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct Radii(pub Vec<f64>);

pub fn radii(s: &str) -> Result<Radii, String> {
    let v = real_list(s)?;
    if v.iter().any(|&r| r <= 0.0) {
        return Err("radii must be positive".into());
    }
    Ok(Radii(v))
}

pub fn real_pair(s: &str) -> Result<[f64; 2], String> {
    match real_list(s)?.as_slice() {
        [x, y] => Ok([*x, *y]),
        other => Err(format!(
            "expected two comma-separated values, got {}",
            other.len()
        )),
    }
}

pub fn rational_pair(s: &str) -> Result<[Rational; 2], String> {
    let v: Vec<Rational> = s.split(',').map(rational).collect::<Result<_, _>>()?;
    match <[Rational; 2]>::try_from(v) {
        Ok(p) => Ok(p),
        Err(v) => Err(format!(
            "expected two comma-separated rationals, got {}",
            v.len()
        )),
    }
}

/// Four rationals `b11,b12,b21,b22`, row-major.
pub fn rational_matrix(s: &str) -> Result<[[Rational; 2]; 2], String> {
    let v: Vec<Rational> = s.split(',').map(rational).collect::<Result<_, _>>()?;
    if v.len() != 4 {
        return Err(format!(
            "expected four comma-separated rationals, got {}",
            v.len()
        ));
    }
    let mut it = v.into_iter();
    let mut next = || it.next().unwrap();
    Ok([[next(), next()], [next(), next()]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals() {
        assert_eq!(real("3/2").unwrap(), 1.5);
        assert_eq!(real("sqrt2").unwrap(), std::f64::consts::SQRT_2);
        assert_eq!(real("-sqrt2").unwrap(), -std::f64::consts::SQRT_2);
        assert_eq!(real(" 0.25").unwrap(), 0.25);
        assert!(real("sqrt3").is_err());
        assert!(real("inf").is_err());
        assert_eq!(real_pair("1,sqrt2").unwrap()[0], 1.0);
        assert!(real_pair("1,2,3").is_err());
        assert_eq!(real_list("50,100,200").unwrap(), vec![50.0, 100.0, 200.0]);
    }

    #[test]
    fn rationals() {
        assert_eq!(rational("6/4").unwrap(), Rational::new(3, 2));
        assert!(rational("1/0").is_err());
        assert!(rational("x").is_err());
        assert_eq!(
            rational_pair("1/3,2").unwrap()[1],
            Rational::from_integer(2)
        );
        assert!(rational_matrix("1,0,0").is_err());
    }
}
