//! Exact scalars: rational functions in a formal variable `v` with `q = v²`.
//!
//! A [`Scalar`] is stored as a pair of integer polynomials `num / den` in
//! canonical form: the two are coprime over `ℚ[v]`, their integer contents are
//! coprime, and the leading coefficient of `den` is positive. Zero is `0 / 1`.
//! Canonical form makes structural equality coincide with equality of the
//! rational functions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial in `v` with integer coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · v^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder of `self` by `rhs`: `lc(rhs)^k · self mod rhs`.
    fn pseudo_rem(&self, rhs: &IntPoly) -> IntPoly {
        let d = rhs.degree().expect("pseudo-remainder by zero");
        let lc = rhs.leading().unwrap();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < d {
                break;
            }
            let lr = r.coeffs[dr].clone();
            r = r.scale(lc);
            for (i, c) in rhs.coeffs.iter().enumerate() {
                r.coeffs[dr - d + i] -= c * &lr;
            }
            r = IntPoly::from_coeffs(r.coeffs);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, rhs: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = rhs.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient `self / rhs`; panics if the division leaves a remainder
    /// or a non-integral coefficient.
    fn div_exact(&self, rhs: &IntPoly) -> IntPoly {
        let d = rhs.degree().expect("division by zero polynomial");
        let lc = rhs.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return IntPoly::zero();
        };
        assert!(dr >= d, "inexact polynomial division");
        let mut quot = vec![BigInt::zero(); dr - d + 1];
        while let Some(dr) = r.degree() {
            let (qc, rem) = r.coeffs[dr].div_rem(lc);
            assert!(rem.is_zero() && dr >= d, "inexact polynomial division");
            for (i, c) in rhs.coeffs.iter().enumerate() {
                r.coeffs[dr - d + i] -= c * &qc;
            }
            quot[dr - d] = qc;
            r = IntPoly::from_coeffs(r.coeffs);
        }
        IntPoly::from_coeffs(quot)
    }

    /// Horner evaluation in any field.
    pub fn eval<F: crate::field::Field>(&self, v: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(v).add(&F::from_bigint(c)))
    }

    /// Parses the output of [`fmt::Display`], e.g. `3*v^2 - v + 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("invalid polynomial in v: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err());
            }
            let end = compact[pos..]
                .find(['+', '-'])
                .map_or(compact.len(), |e| pos + e);
            let term = &compact[pos..end];
            pos = end;
            let (c, k) = match term.split_once('v') {
                None => (term.parse::<BigInt>().map_err(|_| err())?, 0usize),
                Some((c, rest)) => {
                    let c = match c {
                        "" => BigInt::one(),
                        _ => c
                            .strip_suffix('*')
                            .ok_or_else(err)?
                            .parse::<BigInt>()
                            .map_err(|_| err())?,
                    };
                    let k = match rest {
                        "" => 1,
                        _ => rest
                            .strip_prefix('^')
                            .ok_or_else(err)?
                            .parse::<usize>()
                            .map_err(|_| err())?,
                    };
                    (c, k)
                }
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += sign * c;
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => f.write_str("v")?,
                (_, false) => write!(f, "{abs}*v")?,
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

/// An element of `ℚ(v)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: IntPoly,
    den: IntPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    pub fn from_poly(num: IntPoly) -> Self {
        Scalar {
            num,
            den: IntPoly::one(),
        }
    }

    /// The rational number `n / d`.
    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        Self::from_parts(
            IntPoly::constant(BigInt::from(n)),
            IntPoly::constant(BigInt::from(d)),
        )
    }

    /// Builds `num / den` in canonical form.
    pub fn from_parts(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    /// The formal square root `v` of the Hecke parameter.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// The Hecke parameter `q = v²`.
    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// `v^k` for any integer `k`.
    pub fn v_pow(k: i64) -> Self {
        let mono = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar {
                num: mono,
                den: IntPoly::one(),
            }
        } else {
            Scalar {
                num: IntPoly::one(),
                den: mono,
            }
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Returns the integer value when the scalar is a constant integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.coeffs() {
            [] => Some(BigInt::zero()),
            [c] => Some(c.clone()),
            _ => None,
        }
    }

    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        Scalar { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Specializes `v` to a value in `F`; fails if the denominator vanishes.
    pub fn eval<F: crate::field::Field>(&self, v: &F) -> Result<F> {
        let den = self.den.eval(v);
        let inv = den.inv().ok_or(Error::SingularSpecialization)?;
        Ok(self.num.eval(v).mul(&inv))
    }

    /// Parses a `{num, den}` pair of polynomial strings.
    pub fn parse_parts(num: &str, den: &str) -> Result<Self> {
        Self::from_parts(IntPoly::parse(num)?, IntPoly::parse(den)?)
    }

    /// Parses the output of [`fmt::Display`]: `p` or `(p)/(d)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            if let Some((num, den)) = rest.split_once(")/(") {
                if let Some(den) = den.strip_suffix(')') {
                    return Self::parse_parts(num, den);
                }
            }
            return Err(Error::Parse(format!("invalid scalar: {s:?}")));
        }
        match s.split_once('/') {
            Some((n, d)) => Self::parse_parts(n, d),
            None => Ok(Self::from_poly(IntPoly::parse(s)?)),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Scalar::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Total order used only to make containers of scalars deterministic.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |s: &Scalar| (s.num.coeffs.clone(), s.den.coeffs.clone());
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// JSON shape `{ "num": "<poly>", "den": "<poly>" }`.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Scalar", 2)?;
        st.serialize_field("num", &self.num.to_string())?;
        st.serialize_field("den", &self.den.to_string())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            num: String,
            den: String,
        }
        let raw = Raw::deserialize(d)?;
        let num = IntPoly::parse(&raw.num).map_err(serde::de::Error::custom)?;
        let den = IntPoly::parse(&raw.den).map_err(serde::de::Error::custom)?;
        let parsed = Scalar::from_parts(num.clone(), den.clone()).map_err(serde::de::Error::custom)?;
        // Only canonical pairs are accepted, so serialization stays bit-exact.
        if parsed.num != num || parsed.den != den {
            return Err(serde::de::Error::custom("scalar is not in canonical form"));
        }
        Ok(parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        Scalar::parse(x).unwrap()
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        // (v^2 - 1) / (v - 1) = v + 1
        let x = Scalar::from_parts(IntPoly::parse("v^2 - 1").unwrap(), IntPoly::parse("v - 1").unwrap())
            .unwrap();
        assert_eq!(x, s("v + 1"));
        assert!(x.denominator().is_one());
        // 2 / (-4 v) = -1 / (2 v)
        let y = Scalar::from_parts(IntPoly::parse("2").unwrap(), IntPoly::parse("-4*v").unwrap()).unwrap();
        assert_eq!(y.to_string(), "(-1)/(2*v)");
    }

    #[test]
    fn zero_is_unique() {
        let a = s("v + 1");
        assert_eq!(&a - &a, Scalar::zero());
        assert_eq!((&a - &a).denominator(), &IntPoly::one());
        assert!(Scalar::from_parts(IntPoly::one(), IntPoly::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let q = Scalar::q();
        let one = Scalar::one();
        let lhs = (&q - &one).mul(q.clone() + one.clone());
        assert_eq!(lhs, s("v^4 - 1"));
        let inv = q.inv().unwrap();
        assert_eq!(&inv * &q, one);
        assert_eq!(Scalar::v_pow(-2), inv);
        assert_eq!(&Scalar::v_pow(-1) + &Scalar::v_pow(-2), s("(v + 1)/(v^2)"));
    }

    #[test]
    fn display_parse_round_trip() {
        for text in ["0", "1", "-3", "v", "-v^3 + 2*v - 7", "(v + 1)/(v^2)", "(-1)/(2*v)"] {
            assert_eq!(s(text).to_string(), text);
        }
        assert!(Scalar::parse("v^").is_err());
        assert!(Scalar::parse("2v").is_err());
    }

    #[test]
    fn evaluation() {
        use num_rational::BigRational;
        let x = s("(v + 1)/(v^2)");
        let two = BigRational::from_integer(2.into());
        assert_eq!(x.eval(&two).unwrap(), BigRational::new(3.into(), 4.into()));
        let y = s("(1)/(v - 2)");
        assert!(matches!(y.eval(&two), Err(Error::SingularSpecialization)));
    }

    #[test]
    fn json_round_trip() {
        let x = s("(v^2 - 3)/(2*v)");
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"num":"v^2 - 3","den":"2*v"}"#);
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
        let bad = r#"{"num":"2","den":"4"}"#;
        assert!(serde_json::from_str::<Scalar>(bad).is_err());
    }
}
