//! The spherical Whittaker space modelled as skew-invariant lattice
//! elements, and the values of the normalized spherical Whittaker function.
//!
//! On the polynomial model `ℚ(v)[Λ]` of the Iwahori-spherical module the
//! twisted Satake map is the alternating map. Its image is the space of
//! skew-invariants, with basis `φ_μ = alt(e^μ)` for strictly dominant `μ`,
//! and the spherical Hecke algebra acts through multiplication by the
//! characters `a_λ`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{dominant_up_to, evaluate_at, trace_from_weights, weyl_character, SatakeParameter, WeightMultiset};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::LatticeElement;
use crate::root_data::{CartanType, Coweight, RootDatum};
use crate::scalar::Scalar;

/// A skew-invariant lattice element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerModelElement {
    value: LatticeElement,
}

impl WhittakerModelElement {
    pub fn new(datum: &RootDatum, value: LatticeElement) -> Result<Self> {
        if value.is_skew_invariant(datum) {
            Ok(WhittakerModelElement { value })
        } else {
            Err(Error::NotSkewInvariant)
        }
    }

    pub fn value(&self) -> &LatticeElement {
        &self.value
    }

    pub fn into_value(self) -> LatticeElement {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Coordinates in the basis `{φ_μ}`: the coefficient of `e^μ` for each
    /// strictly dominant `μ` in the support.
    pub fn phi_coordinates(&self) -> BTreeMap<Coweight, Scalar> {
        self.value
            .terms()
            .filter(|(mu, _)| mu.is_strictly_dominant())
            .map(|(mu, c)| (mu.clone(), c.clone()))
            .collect()
    }
}

/// The twisted Satake map on the polynomial model: `f ↦ alt(f)`.
pub fn twisted_satake_model(datum: &RootDatum, f: &LatticeElement) -> WhittakerModelElement {
    WhittakerModelElement { value: f.alt(datum) }
}

/// The basis vector `φ_μ = alt(e^μ)`, `μ ∈ Λ⁺ + ρ`.
pub fn phi(datum: &RootDatum, mu: &Coweight) -> Result<WhittakerModelElement> {
    datum.check_rank(mu)?;
    if !mu.is_strictly_dominant() {
        return Err(Error::NotStrictlyDominant(mu.clone()));
    }
    Ok(twisted_satake_model(datum, &LatticeElement::monomial(mu.clone())))
}

/// Right action of the spherical Hecke algebra: `x ↦ x · a_λ`.
pub fn hk_action(datum: &RootDatum, x: &WhittakerModelElement, lambda: &Coweight) -> Result<WhittakerModelElement> {
    let a = weyl_character(datum, lambda)?;
    Ok(WhittakerModelElement { value: &x.value * &a })
}

/// Whether the image of `θ^K_ρ · A_λ`, namely `alt(e^ρ · a_λ)`, equals
/// the basis vector `φ_{λ+ρ}`.
pub fn spherical_image_check(datum: &RootDatum, lambda: &Coweight) -> Result<bool> {
    let rho = datum.rho();
    let a = weyl_character(datum, lambda)?;
    let lhs = twisted_satake_model(datum, &a.shift(&rho));
    Ok(lhs == phi(datum, &(lambda + &rho))?)
}

/// `δ_B^{1/2}(t_μ) = v^{−⟨2ρ_G, μ⟩}`.
pub fn delta_half(datum: &RootDatum, mu: &Coweight) -> Scalar {
    Scalar::v_pow(-datum.pairing_two_rho(mu))
}

/// `W(t_{λ+ρ}) = δ_B^{1/2}(t_{λ+ρ}) · tr V_λ(γ)` for dominant `λ`, zero
/// otherwise. The trace is the evaluation of the bialternant quotient `a_λ`.
pub fn whittaker_value<F: Field>(datum: &RootDatum, lambda: &Coweight, gamma: &SatakeParameter<F>, v: &F) -> Result<F> {
    datum.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Ok(F::zero());
    }
    let trace = evaluate_at(&weyl_character(datum, lambda)?, gamma, v)?;
    Ok(delta_half(datum, &(lambda + &datum.rho())).eval(v)?.mul(&trace))
}

/// Same value as [`whittaker_value`], with the trace summed over a weight
/// multiset instead.
pub fn whittaker_value_from_weights<F: Field>(
    datum: &RootDatum,
    weights: &WeightMultiset,
    gamma: &SatakeParameter<F>,
    v: &F,
) -> Result<F> {
    let trace = trace_from_weights(datum, weights, gamma);
    Ok(delta_half(datum, &(&weights.lambda + &datum.rho())).eval(v)?.mul(&trace))
}

/// Whittaker values on `t_{λ+ρ}` for all dominant `λ` with coordinate sum at
/// most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerTable<F: Field> {
    pub cartan_type: CartanType,
    pub gamma: SatakeParameter<F>,
    /// Textual form of the `q` specialization (`"formal"` or a number).
    pub q_label: String,
    /// Keyed by `λ + ρ`.
    pub rows: BTreeMap<Coweight, F>,
}

pub fn whittaker_table<F: Field>(
    datum: &RootDatum,
    bound: u32,
    gamma: &SatakeParameter<F>,
    v: &F,
    q_label: &str,
) -> Result<WhittakerTable<F>> {
    let rho = datum.rho();
    // force enumeration before fanning out
    datum.weyl_group();
    let rows = dominant_up_to(datum.rank(), bound)
        .into_par_iter()
        .map(|lambda| Ok((&lambda + &rho, whittaker_value(datum, &lambda, gamma, v)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(WhittakerTable {
        cartan_type: datum.cartan_type(),
        gamma: gamma.clone(),
        q_label: q_label.to_string(),
        rows: rows.into_iter().collect(),
    })
}

/// JSON shape of a [`WhittakerTable`]; values are strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhittakerTableJson {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub gamma: Vec<String>,
    pub q: String,
    pub rows: Vec<WhittakerRowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhittakerRowJson {
    pub lambda: Coweight,
    pub lambda_plus_rho: Coweight,
    pub value: String,
}

impl<F: Field> WhittakerTable<F> {
    pub fn to_json(&self) -> WhittakerTableJson {
        WhittakerTableJson {
            schema_version: crate::SCHEMA_VERSION,
            cartan_type: self.cartan_type,
            gamma: self.gamma.coords().iter().map(ToString::to_string).collect(),
            q: self.q_label.clone(),
            rows: self
                .rows
                .iter()
                .map(|(shifted, value)| WhittakerRowJson {
                    lambda: Coweight::new(shifted.coords().iter().map(|c| c - 1).collect()),
                    lambda_plus_rho: shifted.clone(),
                    value: value.to_string(),
                })
                .collect(),
        }
    }

    /// One line per row: `lambda,lambda_plus_rho,value`, coordinates joined
    /// by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,lambda_plus_rho,value\n");
        for row in self.to_json().rows {
            out.push_str(&format!(
                "{},{},{}\n",
                join(&row.lambda),
                join(&row.lambda_plus_rho),
                csv_field(&row.value)
            ));
        }
        out
    }
}

fn join(mu: &Coweight) -> String {
    mu.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl<F: Field> fmt::Display for WhittakerTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type {}  q = {}  gamma = {:?}", self.cartan_type, self.q_label, self.to_json().gamma)?;
        for row in self.to_json().rows {
            writeln!(f, "  W(t_{}) = {}", row.lambda_plus_rho, row.value)?;
        }
        Ok(())
    }
}
