//! The group algebra of the coweight lattice with `ℚ(v)` coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::{Coweight, RootDatum, WeylElement};
use crate::scalar::Scalar;

/// A finite linear combination `Σ c_μ e^μ`.
///
/// Terms are kept sorted by exponent (lexicographic order on coordinates) and
/// zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LatticeElement {
    terms: BTreeMap<Coweight, Scalar>,
}

impl LatticeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e^μ`.
    pub fn monomial(mu: Coweight) -> Self {
        Self::term(Scalar::one(), mu)
    }

    /// `c · e^μ`.
    pub fn term(c: Scalar, mu: Coweight) -> Self {
        let mut out = Self::zero();
        out.add_term(mu, c);
        out
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Coweight::zero(rank))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Coweight, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (mu, c) in terms {
            out.add_term(mu, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Coweight, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, mu: &Coweight) -> Scalar {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    /// The lexicographically greatest term.
    pub fn leading_term(&self) -> Option<(&Coweight, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Adds `c · e^μ` in place.
    pub fn add_term(&mut self, mu: Coweight, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &LatticeElement) {
        for (mu, c) in &rhs.terms {
            self.add_term(mu.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LatticeElement {
            terms: self.terms.iter().map(|(mu, x)| (mu.clone(), x * c)).collect(),
        }
    }

    /// Multiplication by `e^ν`.
    pub fn shift(&self, nu: &Coweight) -> Self {
        LatticeElement {
            terms: self.terms.iter().map(|(mu, c)| (mu + nu, c.clone())).collect(),
        }
    }

    /// Applies an exponent map that is injective on the support.
    fn map_exponents(&self, f: impl Fn(&Coweight) -> Coweight) -> Self {
        Self::from_terms(self.terms.iter().map(|(mu, c)| (f(mu), c.clone())))
    }

    /// `e^μ ↦ e^{wμ}`.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        self.map_exponents(|mu| w.apply(mu))
    }

    /// Action of the simple reflection `s_i`.
    pub fn reflect(&self, datum: &RootDatum, i: usize) -> Self {
        self.map_exponents(|mu| datum.reflect(i, mu))
    }

    /// `alt(e^μ) = Σ_w (-1)^{l(w)} e^{wμ}`.
    pub fn alt(&self, datum: &RootDatum) -> Self {
        let mut out = Self::zero();
        for w in datum.weyl_group().elements() {
            let sign = Scalar::from_int(w.sign());
            for (mu, c) in &self.terms {
                out.add_term(w.apply(mu), c * &sign);
            }
        }
        out
    }

    pub fn is_invariant(&self, datum: &RootDatum) -> bool {
        (0..datum.rank()).all(|i| self.reflect(datum, i) == *self)
    }

    pub fn is_skew_invariant(&self, datum: &RootDatum) -> bool {
        let neg = -self;
        (0..datum.rank()).all(|i| self.reflect(datum, i) == neg)
    }

    /// Sum of `e^ν` over the distinct elements of the orbit `W·μ`.
    pub fn orbit_sum(datum: &RootDatum, mu: &Coweight) -> Self {
        Self::from_terms(datum.orbit_set(mu).into_iter().map(|x| (x, Scalar::one())))
    }

    /// Exact quotient `self / divisor` in the Laurent polynomial ring.
    ///
    /// Leading terms (lexicographic) of the remainder are cancelled against
    /// the leading term of the divisor. Any exact quotient has its exponents
    /// inside the coordinate box cut out by the Newton polytopes of the two
    /// operands, so a quotient exponent leaving that box proves that no exact
    /// quotient exists.
    pub fn exact_divide(&self, divisor: &LatticeElement) -> Result<LatticeElement> {
        let Some((lead_g, lc_g)) = divisor.leading_term() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = lc_g.inv()?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (lo_f, hi_f) = coordinate_box(self);
        let (lo_g, hi_g) = coordinate_box(divisor);
        let in_box = |e: &Coweight| {
            e.coords().iter().enumerate().all(|(k, &c)| {
                c >= lo_f[k] - lo_g[k] && c <= hi_f[k] - hi_g[k]
            })
        };
        let mut quotient = Self::zero();
        let mut remainder = self.clone();
        while let Some((lead_r, lc_r)) = remainder.leading_term() {
            let exponent = lead_r - lead_g;
            if !in_box(&exponent) {
                return Err(Error::NotDivisible {
                    remainder: Box::new(remainder),
                });
            }
            let c = lc_r * &lc_inv;
            remainder.sub_scaled_shift(divisor, &exponent, &c);
            quotient.add_term(exponent, c);
        }
        Ok(quotient)
    }

    /// `self −= c · e^ν · g`, in place.
    pub fn sub_scaled_shift(&mut self, g: &LatticeElement, nu: &Coweight, c: &Scalar) {
        let neg = -c;
        for (mu, b) in &g.terms {
            self.add_term(mu + nu, b * &neg);
        }
    }

    /// `self −= c · g`, in place.
    pub fn sub_scaled(&mut self, g: &LatticeElement, c: &Scalar) {
        let neg = -c;
        for (mu, b) in &g.terms {
            self.add_term(mu.clone(), b * &neg);
        }
    }

    /// Evaluates every coefficient at a value of `v`, keeping exponents.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(mu, c)| (mu.clone(), f(c))))
    }
}

fn coordinate_box(f: &LatticeElement) -> (Vec<i32>, Vec<i32>) {
    let rank = f.terms.keys().next().map_or(0, Coweight::rank);
    let mut lo = vec![i32::MAX; rank];
    let mut hi = vec![i32::MIN; rank];
    for mu in f.terms.keys() {
        for (k, &c) in mu.coords().iter().enumerate() {
            lo[k] = lo[k].min(c);
            hi[k] = hi[k].max(c);
        }
    }
    (lo, hi)
}

/// `(e^{s_i μ} − e^{μ}) / (1 − e^{−α_i^∨})` written as a finite sum.
///
/// With `k = ⟨α_i, μ⟩` this is `−Σ_{j<k} e^{μ − jα_i^∨}` for `k > 0`, zero
/// for `k = 0`, and `Σ_{j<−k} e^{s_iμ − jα_i^∨}` for `k < 0`.
pub fn truncated_geometric(datum: &RootDatum, mu: &Coweight, i: usize) -> Result<LatticeElement> {
    datum.check_index(i)?;
    datum.check_rank(mu)?;
    Ok(truncated_geometric_unchecked(datum, mu, i))
}

pub(crate) fn truncated_geometric_unchecked(datum: &RootDatum, mu: &Coweight, i: usize) -> LatticeElement {
    let k = mu.coords()[i];
    let coroot = datum.simple_coroot(i);
    let (start, sign) = match k.cmp(&0) {
        std::cmp::Ordering::Equal => return LatticeElement::zero(),
        std::cmp::Ordering::Greater => (mu.clone(), Scalar::from_int(-1)),
        std::cmp::Ordering::Less => (datum.reflect(i, mu), Scalar::one()),
    };
    let mut out = LatticeElement::zero();
    let mut x = start;
    for _ in 0..k.unsigned_abs() {
        let next = &x - coroot;
        out.add_term(x, sign.clone());
        x = next;
    }
    out
}

impl Add for &LatticeElement {
    type Output = LatticeElement;
    fn add(self, rhs: &LatticeElement) -> LatticeElement {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LatticeElement {
    type Output = LatticeElement;
    fn sub(self, rhs: &LatticeElement) -> LatticeElement {
        let mut out = self.clone();
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), -c);
        }
        out
    }
}

impl Neg for &LatticeElement {
    type Output = LatticeElement;
    fn neg(self) -> LatticeElement {
        LatticeElement {
            terms: self.terms.iter().map(|(mu, c)| (mu.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LatticeElement {
    type Output = LatticeElement;
    fn mul(self, rhs: &LatticeElement) -> LatticeElement {
        let mut out = LatticeElement::zero();
        for (mu, a) in &self.terms {
            for (nu, b) in &rhs.terms {
                out.add_term(mu + nu, a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LatticeElement {
            type Output = LatticeElement;
            fn $m(self, rhs: LatticeElement) -> LatticeElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for LatticeElement {
    /// Terms in descending exponent order, e.g. `e^(1) + (v^2)*e^(-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (mu, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (neg, body) = match (c.as_integer(), text.strip_prefix('-')) {
                (Some(_), Some(rest)) => (true, rest.to_string()),
                _ => (false, text),
            };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let exp = if mu.is_zero() { "0".to_string() } else { mu.to_string() };
            match body.as_str() {
                "1" => write!(f, "e^{exp}")?,
                b if c.as_integer().is_some() => write!(f, "{b}*e^{exp}")?,
                b => write!(f, "[{b}]*e^{exp}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    exponent: Coweight,
    coeff: Scalar,
}

/// JSON shape: a list of `{exponent, coeff}` sorted by exponent.
impl Serialize for LatticeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(mu, c)| TermJson {
            exponent: mu.clone(),
            coeff: c.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for LatticeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(d)?;
        let sorted = raw.windows(2).all(|w| w[0].exponent < w[1].exponent);
        if !sorted || raw.iter().any(|t| t.coeff.is_zero()) {
            return Err(serde::de::Error::custom(
                "lattice element terms must be sorted, distinct and nonzero",
            ));
        }
        Ok(LatticeElement {
            terms: raw.into_iter().map(|t| (t.exponent, t.coeff)).collect(),
        })
    }
}
