//! The Iwahori–Hecke algebra in its Bernstein presentation.
//!
//! Elements are stored in the normal form `Σ c · t_w θ_μ`, finite Hecke
//! generators on the left and lattice elements on the right. Products are
//! reduced to that form using
//!
//! * `t_s² = (q − 1) t_s + q`,
//! * `t_w t_s = t_{ws}` when `l(ws) > l(w)`,
//! * `θ_μ t_s = t_s θ_{sμ} + (1 − q)(e^{sμ} − e^μ)/(1 − e^{−α^∨})`, the
//!   Bernstein relation solved for `θ_μ t_s`.
//!
//! The polynomial module `ℚ(v)[Λ]` is the induced module on which `θ_ν`
//! acts by multiplication with `e^ν` and `t_s` by the Demazure–Lusztig
//! operator `T_s`, normalized so that `T_s(e^0) = q·e^0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::characters::WeightMultiset;
use crate::error::{Error, Result};
use crate::lattice::{truncated_geometric_unchecked, LatticeElement};
use crate::root_data::{Coweight, RootDatum, WeylElement};
use crate::scalar::Scalar;

/// `Σ c · t_w θ_μ` keyed by `(w.id, μ)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    terms: BTreeMap<(usize, Coweight), Scalar>,
}

fn one_minus_q() -> Scalar {
    &Scalar::one() - &Scalar::q()
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `t_e = θ_0`.
    pub fn identity(rank: usize) -> Self {
        Self::theta(Coweight::zero(rank))
    }

    pub fn theta(mu: Coweight) -> Self {
        Self::basis(0, mu, Scalar::one())
    }

    /// `c · t_w θ_μ` for the group element with the given id.
    pub fn basis(w: usize, mu: Coweight, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(w, mu, c);
        out
    }

    pub fn t_simple(datum: &RootDatum, i: usize) -> Result<Self> {
        datum.check_index(i)?;
        let w = datum.weyl_group().right_mul(0, i);
        Ok(Self::basis(w, datum.zero(), Scalar::one()))
    }

    /// `t_w`, equal to the product of `t_s` along any reduced word of `w`.
    pub fn t_word(datum: &RootDatum, w: &WeylElement) -> Self {
        Self::basis(w.id, datum.zero(), Scalar::one())
    }

    /// Embeds `Σ c_μ e^μ` as `Σ c_μ θ_μ`.
    pub fn from_lattice(f: &LatticeElement) -> Self {
        let mut out = Self::zero();
        for (mu, c) in f.terms() {
            out.add_term(0, mu.clone(), c.clone());
        }
        out
    }

    /// The lattice part, when every term has `w = e`.
    pub fn as_lattice(&self) -> Option<LatticeElement> {
        self.terms
            .keys()
            .all(|(w, _)| *w == 0)
            .then(|| LatticeElement::from_terms(self.terms.iter().map(|((_, mu), c)| (mu.clone(), c.clone()))))
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

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Coweight, &Scalar)> {
        self.terms.iter().map(|((w, mu), c)| (*w, mu, c))
    }

    pub fn coefficient(&self, w: usize, mu: &Coweight) -> Scalar {
        self.terms.get(&(w, mu.clone())).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: usize, mu: Coweight, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w, mu)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn add_scaled(&mut self, rhs: &HeckeElement, c: &Scalar) {
        for ((w, mu), x) in &rhs.terms {
            self.add_term(*w, mu.clone(), x * c);
        }
    }

    pub fn add(&self, rhs: &HeckeElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }

    pub fn sub(&self, rhs: &HeckeElement) -> Self {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// `self · θ_ν`.
    pub fn mul_theta(&self, nu: &Coweight) -> Self {
        HeckeElement {
            terms: self
                .terms
                .iter()
                .map(|((w, mu), c)| ((*w, mu + nu), c.clone()))
                .collect(),
        }
    }

    /// `self · t_{s_i}`.
    pub fn mul_simple(&self, datum: &RootDatum, i: usize) -> Self {
        let group = datum.weyl_group();
        let q = Scalar::q();
        let q_minus_one = &q - &Scalar::one();
        let one_minus_q = one_minus_q();
        let mut out = Self::zero();
        for ((w, mu), c) in &self.terms {
            // t_w θ_μ t_s = t_w t_s θ_{sμ} + (1 − q) t_w G(μ)
            let s_mu = datum.reflect(i, mu);
            let ws = group.right_mul(*w, i);
            if group.element(ws).length > group.element(*w).length {
                out.add_term(ws, s_mu, c.clone());
            } else {
                out.add_term(ws, s_mu.clone(), c * &q);
                out.add_term(*w, s_mu, c * &q_minus_one);
            }
            let scaled = c * &one_minus_q;
            for (nu, g) in truncated_geometric_unchecked(datum, mu, i).terms() {
                out.add_term(*w, nu.clone(), g * &scaled);
            }
        }
        out
    }

    /// `self · t_w` by right multiplication along a reduced word.
    pub fn mul_t_word(&self, datum: &RootDatum, w: &WeylElement) -> Self {
        w.reduced_word
            .iter()
            .fold(self.clone(), |acc, &i| acc.mul_simple(datum, i))
    }

    /// Normal-form product `self · rhs`.
    pub fn mul(&self, datum: &RootDatum, rhs: &HeckeElement) -> Self {
        let group = datum.weyl_group();
        let mut by_w: BTreeMap<usize, HeckeElement> = BTreeMap::new();
        let mut out = Self::zero();
        for ((w, mu), c) in &rhs.terms {
            let left = by_w
                .entry(*w)
                .or_insert_with(|| self.mul_t_word(datum, group.element(*w)));
            out.add_scaled(&left.mul_theta(mu), c);
        }
        out
    }

    /// `x·y − y·x`.
    pub fn commutator(&self, datum: &RootDatum, rhs: &HeckeElement) -> Self {
        self.mul(datum, rhs).sub(&rhs.mul(datum, self))
    }

    /// Action on the polynomial module.
    pub fn act(&self, datum: &RootDatum, f: &LatticeElement) -> LatticeElement {
        let group = datum.weyl_group();
        let mut out = LatticeElement::zero();
        for ((w, mu), c) in &self.terms {
            let mut g = f.shift(mu);
            for &i in group.element(*w).reduced_word.iter().rev() {
                g = demazure_lusztig(datum, i, &g);
            }
            out.add_assign_ref(&g.scale(c));
        }
        out
    }
}

/// `T_s(e^μ) = q·e^{sμ} + (1 − q)(e^{sμ} − e^μ)/(1 − e^{−α^∨})`, extended
/// linearly.
pub fn demazure_lusztig(datum: &RootDatum, i: usize, f: &LatticeElement) -> LatticeElement {
    let q = Scalar::q();
    let one_minus_q = one_minus_q();
    let mut out = LatticeElement::zero();
    for (mu, c) in f.terms() {
        out.add_term(datum.reflect(i, mu), c * &q);
        let scaled = c * &one_minus_q;
        for (nu, g) in truncated_geometric_unchecked(datum, mu, i).terms() {
            out.add_term(nu.clone(), g * &scaled);
        }
    }
    out
}

/// Action of `x` on the polynomial module.
pub fn polynomial_action(datum: &RootDatum, x: &HeckeElement, f: &LatticeElement) -> LatticeElement {
    x.act(datum, f)
}

/// `z_λ = Σ_{ν ∈ wt(V_λ)} θ_ν`, central in the Hecke algebra.
pub fn central_element(datum: &RootDatum, weights: &WeightMultiset) -> Result<HeckeElement> {
    if !weights.lambda.is_dominant() {
        return Err(Error::NotDominant(weights.lambda.clone()));
    }
    Ok(HeckeElement::from_lattice(&weights.orbit_expansion(datum)))
}

/// `ι_i = 1 + t_{s_i}`.
pub fn iota(datum: &RootDatum, i: usize) -> Result<HeckeElement> {
    Ok(HeckeElement::identity(datum.rank()).add(&HeckeElement::t_simple(datum, i)?))
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, ((w, mu), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}]*t_{w}*θ{mu}")?;
        }
        Ok(())
    }
}

/// One normal-form term in JSON: `{w: reduced word, mu, coeff}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeckeTermJson {
    pub w: Vec<usize>,
    pub mu: Coweight,
    pub coeff: Scalar,
}

impl HeckeElement {
    /// Terms in normal-form order (by group element id, then exponent).
    pub fn to_json(&self, datum: &RootDatum) -> Vec<HeckeTermJson> {
        let group = datum.weyl_group();
        self.terms
            .iter()
            .map(|((w, mu), c)| HeckeTermJson {
                w: group.element(*w).reduced_word.clone(),
                mu: mu.clone(),
                coeff: c.clone(),
            })
            .collect()
    }

    /// Inverse of [`Self::to_json`]. Words are read as products of the
    /// simple generators, so non-reduced words are accepted too.
    pub fn from_json(datum: &RootDatum, terms: &[HeckeTermJson]) -> Result<Self> {
        let mut out = HeckeElement::zero();
        for t in terms {
            datum.check_rank(&t.mu)?;
            let mut x = HeckeElement::identity(datum.rank());
            for &i in &t.w {
                datum.check_index(i)?;
                x = x.mul_simple(datum, i);
            }
            out.add_scaled(&x.mul_theta(&t.mu), &t.coeff);
        }
        Ok(out)
    }
}
