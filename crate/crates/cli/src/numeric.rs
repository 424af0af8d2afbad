//! Parsing of Satake coordinates and of the `q` / `v` specialization.

use std::str::FromStr;

use hecke_whittaker::{IntPoly, Scalar};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::CliError;

/// `"3/2"`, `"-4"` or `"0.25"`, read exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let bad = || CliError::Usage(format!("invalid rational number {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(n, scale));
    }
    let r = BigRational::from_str(s).map_err(|_| bad())?;
    if r.denom().is_zero() {
        return Err(bad());
    }
    Ok(r)
}

pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    Complex64::from_str(s.trim()).map_err(|_| CliError::Usage(format!("invalid complex number {s:?}")))
}

pub fn rational_to_scalar(r: &BigRational) -> Scalar {
    Scalar::from_parts(IntPoly::constant(r.numer().clone()), IntPoly::constant(r.denom().clone()))
        .expect("rational denominators are nonzero")
}

fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

/// How `v = q^{1/2}` is specialized.
#[derive(Clone, Debug, PartialEq)]
pub enum Specialization {
    Formal,
    Rational { v: BigRational, label: String },
    Float { v: f64, label: String },
}

impl Specialization {
    /// Reads `--q` and `--v`. Exact mode needs `q` to be a rational square
    /// unless `v` is given; `float` allows any positive `q`.
    pub fn parse(q: Option<&str>, v: Option<&str>, float: bool) -> Result<Self, CliError> {
        let q = q.map(str::trim).filter(|q| *q != "formal");
        match (q, v) {
            (None, None) => {
                if float {
                    Err(CliError::Usage("complex Satake parameters need a numeric --q or --v".into()))
                } else {
                    Ok(Specialization::Formal)
                }
            }
            (q, Some(v)) => {
                let v_exact = parse_rational(v)?;
                if v_exact.is_zero() {
                    return Err(CliError::Usage("--v must be nonzero".into()));
                }
                let square = &v_exact * &v_exact;
                if let Some(q) = q {
                    if parse_rational(q)? != square {
                        return Err(CliError::Usage(format!("--v {v} does not square to --q {q}")));
                    }
                }
                let label = q.map_or_else(|| square.to_string(), str::to_string);
                Ok(if float {
                    Specialization::Float { v: to_f64(&v_exact), label }
                } else {
                    Specialization::Rational { v: v_exact, label }
                })
            }
            (Some(q), None) => {
                let q_exact = parse_rational(q)?;
                if !q_exact.is_positive() {
                    return Err(CliError::Usage(format!("--q {q} must be positive")));
                }
                if float {
                    return Ok(Specialization::Float { v: to_f64(&q_exact).sqrt(), label: q.to_string() });
                }
                let v = exact_sqrt(&q_exact).ok_or_else(|| {
                    CliError::Usage(format!("--q {q} is not a rational square; pass --v explicitly"))
                })?;
                Ok(Specialization::Rational { v, label: q.to_string() })
            }
        }
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Satake coordinates, exact unless some entry is complex.
#[derive(Clone, Debug, PartialEq)]
pub enum Gamma {
    Rational(Vec<BigRational>),
    Complex(Vec<Complex64>),
}

impl Gamma {
    pub fn parse(s: &str, rank: usize) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != rank {
            return Err(CliError::Usage(format!("--gamma has {} coordinates, expected {rank}", parts.len())));
        }
        if parts.iter().any(|p| p.contains(['i', 'j'])) {
            Ok(Gamma::Complex(parts.iter().map(|p| parse_complex(p)).collect::<Result<_, _>>()?))
        } else {
            Ok(Gamma::Rational(parts.iter().map(|p| parse_rational(p)).collect::<Result<_, _>>()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn specializations() {
        assert_eq!(Specialization::parse(None, None, false).unwrap(), Specialization::Formal);
        assert_eq!(Specialization::parse(Some("formal"), None, false).unwrap(), Specialization::Formal);
        assert_eq!(
            Specialization::parse(Some("9/4"), None, false).unwrap(),
            Specialization::Rational { v: rat(3, 2), label: "9/4".into() }
        );
        assert!(Specialization::parse(Some("2"), None, false).is_err());
        assert_eq!(
            Specialization::parse(None, Some("-3"), false).unwrap(),
            Specialization::Rational { v: rat(-3, 1), label: "9".into() }
        );
        assert!(Specialization::parse(Some("4"), Some("3"), false).is_err());
        assert!(matches!(Specialization::parse(Some("2"), None, true).unwrap(), Specialization::Float { .. }));
        assert!(Specialization::parse(None, None, true).is_err());
    }

    #[test]
    fn gammas() {
        assert_eq!(Gamma::parse("2,1/3", 2).unwrap(), Gamma::Rational(vec![rat(2, 1), rat(1, 3)]));
        assert!(matches!(Gamma::parse("1+2i", 1).unwrap(), Gamma::Complex(_)));
        assert!(Gamma::parse("1,2", 1).is_err());
    }
}
