//! Irreducible characters `a_λ` of the dual group.
//!
//! The dual group never appears explicitly: its weights are coweights of the
//! root datum and its roots are the coroots. Characters are computed along
//! two independent routes, the Freudenthal recursion for weight
//! multiplicities and the quotient `alt(e^{λ+ρ}) / alt(e^ρ)`, and the two are
//! expected to agree term by term.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::LatticeElement;
use crate::root_data::{CartanType, Coweight, RootDatum};
use crate::scalar::Scalar;

/// Dominant weights of `V_λ` with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultiset {
    pub cartan_type: CartanType,
    pub lambda: Coweight,
    pub dominant_mults: BTreeMap<Coweight, u64>,
}

impl WeightMultiset {
    /// `Σ_ν m_ν |W·ν|`.
    pub fn dimension(&self, datum: &RootDatum) -> u64 {
        self.dominant_mults
            .iter()
            .map(|(nu, m)| m * datum.orbit_set(nu).len() as u64)
            .sum()
    }

    /// Every weight with its multiplicity.
    pub fn full_multiset(&self, datum: &RootDatum) -> BTreeMap<Coweight, u64> {
        let mut out = BTreeMap::new();
        for (nu, &m) in &self.dominant_mults {
            for x in datum.orbit_set(nu) {
                out.insert(x, m);
            }
        }
        out
    }

    /// `Σ_ν m_ν e^ν` over all weights.
    pub fn orbit_expansion(&self, datum: &RootDatum) -> LatticeElement {
        LatticeElement::from_terms(
            self.full_multiset(datum)
                .into_iter()
                .map(|(x, m)| (x, Scalar::from_bigint(BigInt::from(m)))),
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightMultJson {
    weight: Coweight,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightMultisetJson {
    schema_version: u32,
    #[serde(rename = "type")]
    cartan_type: CartanType,
    lambda: Coweight,
    dominant_mults: Vec<WeightMultJson>,
}

/// JSON shape `{schema_version, type, lambda, dominant_mults: [{weight, mult}]}`
/// with `dominant_mults` sorted by weight.
impl Serialize for WeightMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightMultisetJson {
            schema_version: crate::SCHEMA_VERSION,
            cartan_type: self.cartan_type,
            lambda: self.lambda.clone(),
            dominant_mults: self
                .dominant_mults
                .iter()
                .map(|(w, &m)| WeightMultJson {
                    weight: w.clone(),
                    mult: m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = WeightMultisetJson::deserialize(d)?;
        if raw.schema_version != crate::SCHEMA_VERSION {
            return Err(D::Error::custom(format!(
                "unsupported schema version {}",
                raw.schema_version
            )));
        }
        let sorted = raw.dominant_mults.windows(2).all(|w| w[0].weight < w[1].weight);
        if !sorted {
            return Err(D::Error::custom("dominant_mults must be sorted by weight"));
        }
        Ok(WeightMultiset {
            cartan_type: raw.cartan_type,
            lambda: raw.lambda,
            dominant_mults: raw.dominant_mults.into_iter().map(|e| (e.weight, e.mult)).collect(),
        })
    }
}

fn check_dominant(datum: &RootDatum, lambda: &Coweight) -> Result<()> {
    datum.check_rank(lambda)?;
    if lambda.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.clone()))
    }
}

/// `(x, β)` for a coroot `β` given in simple-coroot coordinates.
fn form_with_coroot(datum: &RootDatum, x: &Coweight, beta: &[i32]) -> i64 {
    beta.iter()
        .zip(datum.dual_symmetrizers())
        .zip(x.coords())
        .map(|((&b, &eps), &c)| b as i64 * eps * c as i64)
        .sum()
}

/// Dominant weights `ν ≤ λ`, keyed by their coroot depth vector `b` with
/// `ν = λ − Σ b_j α_j^∨`.
fn dominant_weights_below(datum: &RootDatum, lambda: &Coweight) -> Vec<(Vec<i64>, Coweight)> {
    let rank = datum.rank();
    // For dominant ν, b = C⁻¹(λ − ν) ≤ C⁻¹λ since C⁻¹ has non-negative entries.
    let bounds: Vec<i64> = datum
        .coroot_coordinates_rational(lambda)
        .iter()
        .map(|x| x.floor().to_integer())
        .collect();
    let mut out = Vec::new();
    let mut b = vec![0i64; rank];
    loop {
        let mut coords: Vec<i64> = lambda.coords().iter().map(|&c| c as i64).collect();
        for (j, &bj) in b.iter().enumerate() {
            for (k, c) in coords.iter_mut().enumerate() {
                *c -= bj * datum.simple_coroot(j).coords()[k] as i64;
            }
        }
        if coords.iter().all(|&c| c >= 0) {
            out.push((b.clone(), Coweight::new(coords.iter().map(|&c| c as i32).collect())));
        }
        // odometer over the box 0 ≤ b ≤ bounds
        let mut k = 0;
        loop {
            if k == rank {
                out.sort_by_key(|(b, nu)| (b.iter().sum::<i64>(), nu.clone()));
                return out;
            }
            if b[k] < bounds[k] {
                b[k] += 1;
                break;
            }
            b[k] = 0;
            k += 1;
        }
    }
}

/// Weight multiplicities of `V_λ` by the Freudenthal recursion
///
/// `((λ+ρ, λ+ρ) − (ν+ρ, ν+ρ)) m_ν = 2 Σ_{β>0} Σ_{k≥1} (ν+kβ, β) m_{ν+kβ}`
///
/// over the positive coroots `β`, with a Weyl-invariant form on coweights.
pub fn freudenthal_multiplicities(datum: &RootDatum, lambda: &Coweight) -> Result<WeightMultiset> {
    check_dominant(datum, lambda)?;
    let rho = datum.rho();
    let dominant = dominant_weights_below(datum, lambda);
    let mut mults: HashMap<Coweight, u64> = HashMap::new();
    let lambda_rho2 = &(lambda + &rho) * 2;
    for (b, nu) in &dominant {
        if b.iter().all(|&x| x == 0) {
            mults.insert(nu.clone(), 1);
            continue;
        }
        // (λ − ν, λ + ν + 2ρ)
        let shifted = &(&lambda_rho2 - lambda) + nu;
        let denom: i64 = b
            .iter()
            .zip(datum.dual_symmetrizers())
            .zip(shifted.coords())
            .map(|((&bj, &eps), &c)| bj * eps * c as i64)
            .sum();
        let mut numer: i64 = 0;
        for (beta, beta_cw) in datum.positive_coroots().iter().zip(datum.positive_coroot_coweights()) {
            let mut x = nu + beta_cw;
            loop {
                let (dom, _) = datum.dominant_conjugate(&x);
                let Some(&m) = mults.get(&dom) else { break };
                numer += 2 * form_with_coroot(datum, &x, beta) * m as i64;
                x = &x + beta_cw;
            }
        }
        if denom <= 0 || numer % denom != 0 || numer < 0 {
            return Err(Error::InvariantViolation(format!(
                "Freudenthal step at {nu} gave {numer}/{denom}"
            )));
        }
        if numer > 0 {
            mults.insert(nu.clone(), (numer / denom) as u64);
        }
    }
    Ok(WeightMultiset {
        cartan_type: datum.cartan_type(),
        lambda: lambda.clone(),
        dominant_mults: mults.into_iter().collect(),
    })
}

/// `a_λ = alt(e^{λ+ρ}) / alt(e^ρ)`.
pub fn weyl_character(datum: &RootDatum, lambda: &Coweight) -> Result<LatticeElement> {
    check_dominant(datum, lambda)?;
    let rho = datum.rho();
    let numer = LatticeElement::monomial(lambda + &rho).alt(datum);
    let denom = LatticeElement::monomial(rho).alt(datum);
    numer.exact_divide(&denom).map_err(|e| match e {
        Error::NotDivisible { remainder } => Error::InvariantViolation(format!(
            "Weyl denominator does not divide alt(e^(λ+ρ)) for λ = {lambda}; remainder {remainder}"
        )),
        other => other,
    })
}

/// Weyl dimension formula `Π_{β>0} (λ+ρ, β) / (ρ, β)` over positive coroots.
pub fn weyl_dimension(datum: &RootDatum, lambda: &Coweight) -> Result<u64> {
    check_dominant(datum, lambda)?;
    let rho = datum.rho();
    let shifted = lambda + &rho;
    let mut acc = BigRational::from_integer(1.into());
    for beta in datum.positive_coroots() {
        let num = form_with_coroot(datum, &shifted, beta);
        let den = form_with_coroot(datum, &rho, beta);
        acc *= BigRational::new(num.into(), den.into());
    }
    if !acc.is_integer() {
        return Err(Error::InvariantViolation(format!(
            "non-integral Weyl dimension {acc} for {lambda}"
        )));
    }
    acc.to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvariantViolation("dimension overflow".into()))
}

/// Coefficients `c_λ` with `f = Σ c_λ a_λ`.
pub fn decompose_invariant(datum: &RootDatum, f: &LatticeElement) -> Result<BTreeMap<Coweight, Scalar>> {
    if !f.is_invariant(datum) {
        return Err(Error::NotInvariant);
    }
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    loop {
        // ⟨2ρ_G, ·⟩ increases strictly along the dominance order, so its
        // maximizer among the dominant exponents is dominance-maximal.
        let top = rest
            .terms()
            .filter(|(mu, _)| mu.is_dominant())
            .max_by_key(|(mu, _)| (datum.pairing_two_rho(mu), (*mu).clone()))
            .map(|(mu, c)| (mu.clone(), c.clone()));
        let Some((mu, c)) = top else { break };
        let a = weyl_character(datum, &mu)?;
        rest.sub_scaled(&a, &c);
        out.insert(mu, c);
    }
    if !rest.is_zero() {
        return Err(Error::InvariantViolation(format!(
            "invariant element left residue {rest} with no dominant exponent"
        )));
    }
    Ok(out)
}

/// Multiplicities of `V_μ` in `V_λ ⊗ V_ν`.
pub fn tensor_product(datum: &RootDatum, lambda: &Coweight, nu: &Coweight) -> Result<BTreeMap<Coweight, Scalar>> {
    let product = &weyl_character(datum, lambda)? * &weyl_character(datum, nu)?;
    decompose_invariant(datum, &product)
}

/// A point `γ` of the dual torus: nonzero values on the fundamental
/// coweight basis, extended multiplicatively to `Λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParameter<F: Field> {
    coords: Vec<F>,
    inverses: Vec<F>,
}

impl<F: Field> SatakeParameter<F> {
    pub fn new(coords: Vec<F>) -> Result<Self> {
        let inverses = coords
            .iter()
            .enumerate()
            .map(|(index, x)| x.inv().ok_or(Error::ZeroSatakeCoordinate { index }))
            .collect::<Result<Vec<_>>>()?;
        Ok(SatakeParameter { coords, inverses })
    }

    /// The identity of the dual torus.
    pub fn trivial(rank: usize) -> Self {
        Self::new(vec![F::one(); rank]).expect("one is invertible")
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `γ(μ) = Π_i x_i^{μ_i}`.
    pub fn value(&self, mu: &Coweight) -> F {
        let mut acc = F::one();
        for (k, &c) in mu.coords().iter().enumerate() {
            let base = if c < 0 { &self.inverses[k] } else { &self.coords[k] };
            for _ in 0..c.unsigned_abs() {
                acc = acc.mul(base);
            }
        }
        acc
    }
}

/// Evaluates `f` at `γ`, specializing `v` in every coefficient.
pub fn evaluate_at<F: Field>(f: &LatticeElement, gamma: &SatakeParameter<F>, v: &F) -> Result<F> {
    let mut acc = F::zero();
    for (mu, c) in f.terms() {
        if mu.rank() != gamma.rank() {
            return Err(Error::RankMismatch {
                expected: gamma.rank(),
                found: mu.coords().to_vec(),
            });
        }
        acc = acc.add(&c.eval(v)?.mul(&gamma.value(mu)));
    }
    Ok(acc)
}

/// `tr V_λ(γ) = Σ_ν m_ν γ(ν)` summed over the weight multiset.
pub fn trace_from_weights<F: Field>(datum: &RootDatum, weights: &WeightMultiset, gamma: &SatakeParameter<F>) -> F {
    let mut acc = F::zero();
    for (nu, &m) in &weights.dominant_mults {
        let orbit_total = datum
            .orbit_set(nu)
            .iter()
            .fold(F::zero(), |s, x| s.add(&gamma.value(x)));
        acc = acc.add(&orbit_total.mul(&F::from_bigint(&BigInt::from(m))));
    }
    acc
}

type CacheKey = (CartanType, Coweight);

/// Thread-safe memo table for weight multisets keyed by `(type, λ)`.
///
/// Concurrent callers racing on the same key both compute the multiset and
/// the first insertion wins; the values are equal, so the race is harmless.
#[derive(Default)]
pub struct WeightCache {
    entries: RwLock<HashMap<CacheKey, Arc<WeightMultiset>>>,
}

impl WeightCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, cartan_type: CartanType, lambda: &Coweight) -> Option<Arc<WeightMultiset>> {
        let map = self.entries.read().unwrap_or_else(|e| e.into_inner());
        map.get(&(cartan_type, lambda.clone())).cloned()
    }

    pub fn get_or_compute(&self, datum: &RootDatum, lambda: &Coweight) -> Result<Arc<WeightMultiset>> {
        if let Some(hit) = self.get(datum.cartan_type(), lambda) {
            return Ok(hit);
        }
        let computed = Arc::new(freudenthal_multiplicities(datum, lambda)?);
        let mut map = self.entries.write().unwrap_or_else(|e| e.into_inner());
        Ok(map
            .entry((datum.cartan_type(), lambda.clone()))
            .or_insert(computed)
            .clone())
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Dominant coweights of the given rank with coordinate sum at most `bound`,
/// in lexicographic order.
pub fn dominant_up_to(rank: usize, bound: u32) -> Vec<Coweight> {
    fn rec(rank: usize, left: i32, prefix: &mut Vec<i32>, out: &mut Vec<Coweight>) {
        if prefix.len() == rank {
            out.push(Coweight::new(prefix.clone()));
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            rec(rank, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, bound as i32, &mut Vec::new(), &mut out);
    out
}

/// Whether every coefficient is a non-negative integer.
pub fn is_nonnegative_integral(coeffs: &BTreeMap<Coweight, Scalar>) -> bool {
    coeffs
        .values()
        .all(|c| c.as_integer().is_some_and(|n| !n.is_zero() && n > BigInt::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap())
    }

    fn cw(c: &[i32]) -> Coweight {
        Coweight::new(c.to_vec())
    }

    fn e(c: &[i32]) -> LatticeElement {
        LatticeElement::monomial(cw(c))
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = datum("A1");
        let triv = freudenthal_multiplicities(&a1, &cw(&[0])).unwrap();
        assert_eq!(triv.dominant_mults, BTreeMap::from([(cw(&[0]), 1)]));
        let std = freudenthal_multiplicities(&a1, &cw(&[1])).unwrap();
        assert_eq!(std.dominant_mults, BTreeMap::from([(cw(&[1]), 1)]));
        assert_eq!(std.full_multiset(&a1), BTreeMap::from([(cw(&[-1]), 1), (cw(&[1]), 1)]));

        let a2 = datum("A2");
        let adj = freudenthal_multiplicities(&a2, &cw(&[1, 1])).unwrap();
        assert_eq!(adj.dominant_mults, BTreeMap::from([(cw(&[0, 0]), 2), (cw(&[1, 1]), 1)]));
        assert_eq!(adj.dimension(&a2), 8);

        assert!(matches!(
            freudenthal_multiplicities(&a2, &cw(&[1, -1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn weyl_character_examples() {
        let a1 = datum("A1");
        assert_eq!(weyl_character(&a1, &cw(&[0])).unwrap(), e(&[0]));
        assert_eq!(weyl_character(&a1, &cw(&[1])).unwrap(), &e(&[1]) + &e(&[-1]));
        assert_eq!(
            weyl_character(&a1, &cw(&[2])).unwrap(),
            &(&e(&[2]) + &e(&[0])) + &e(&[-2])
        );
        assert!(matches!(weyl_character(&a1, &cw(&[-1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn dimension_examples() {
        let a1 = datum("A1");
        assert_eq!(weyl_dimension(&a1, &cw(&[0])).unwrap(), 1);
        for n in 0..8 {
            assert_eq!(weyl_dimension(&a1, &cw(&[n])).unwrap(), n as u64 + 1);
        }
        assert_eq!(weyl_dimension(&datum("A2"), &cw(&[1, 1])).unwrap(), 8);
        // dual of B2 is C2 = Sp4: fundamental representations 4 and 5
        let b2 = datum("B2");
        let mut dims = [weyl_dimension(&b2, &cw(&[1, 0])).unwrap(), weyl_dimension(&b2, &cw(&[0, 1])).unwrap()];
        dims.sort();
        assert_eq!(dims, [4, 5]);
        let g2 = datum("G2");
        let mut dims = [weyl_dimension(&g2, &cw(&[1, 0])).unwrap(), weyl_dimension(&g2, &cw(&[0, 1])).unwrap()];
        dims.sort();
        assert_eq!(dims, [7, 14]);
        assert!(weyl_dimension(&a1, &cw(&[-2])).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let a1 = datum("A1");
        let a = weyl_character(&a1, &cw(&[1])).unwrap();
        assert_eq!(decompose_invariant(&a1, &a).unwrap(), BTreeMap::from([(cw(&[1]), Scalar::one())]));
        assert_eq!(
            decompose_invariant(&a1, &(&a * &a)).unwrap(),
            BTreeMap::from([(cw(&[0]), Scalar::one()), (cw(&[2]), Scalar::one())])
        );
        let c = LatticeElement::term(Scalar::q(), cw(&[0]));
        assert_eq!(decompose_invariant(&a1, &c).unwrap(), BTreeMap::from([(cw(&[0]), Scalar::q())]));
        assert!(matches!(decompose_invariant(&a1, &e(&[1])), Err(Error::NotInvariant)));
    }

    #[test]
    fn evaluation_examples() {
        let a1 = datum("A1");
        let x = BigRational::new(3.into(), 2.into());
        let gamma = SatakeParameter::new(vec![x.clone()]).unwrap();
        let v = BigRational::from_integer(2.into());
        assert_eq!(evaluate_at(&e(&[0]), &gamma, &v).unwrap(), BigRational::from_integer(1.into()));
        let a = weyl_character(&a1, &cw(&[1])).unwrap();
        assert_eq!(evaluate_at(&a, &gamma, &v).unwrap(), &x + x.recip());

        let a2 = datum("A2");
        let ones = SatakeParameter::<BigRational>::trivial(2);
        let a = weyl_character(&a2, &cw(&[2, 1])).unwrap();
        let dim = weyl_dimension(&a2, &cw(&[2, 1])).unwrap();
        assert_eq!(evaluate_at(&a, &ones, &v).unwrap(), BigRational::from_integer(dim.into()));

        assert!(matches!(
            SatakeParameter::new(vec![BigRational::from_integer(0.into())]),
            Err(Error::ZeroSatakeCoordinate { index: 0 })
        ));
        let f = LatticeElement::term(Scalar::v_pow(-1), cw(&[0]));
        let zero_v = BigRational::from_integer(0.into());
        assert!(matches!(evaluate_at(&f, &gamma, &zero_v), Err(Error::SingularSpecialization)));
    }

    #[test]
    fn memo_cache_is_idempotent() {
        let a2 = datum("A2");
        let cache = WeightCache::new();
        let lambda = cw(&[2, 1]);
        let first = cache.get_or_compute(&a2, &lambda).unwrap();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    let hit = cache.get_or_compute(&a2, &lambda).unwrap();
                    assert_eq!(*hit, *first);
                });
            }
        });
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn multiset_json() {
        let a2 = datum("A2");
        let m = freudenthal_multiplicities(&a2, &cw(&[1, 1])).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"schema_version":1,"type":"A2","lambda":[1,1],"dominant_mults":[{"weight":[0,0],"mult":2},{"weight":[1,1],"mult":1}]}"#
        );
        let back: WeightMultiset = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn dominant_enumeration() {
        assert_eq!(dominant_up_to(2, 1), vec![cw(&[0, 0]), cw(&[0, 1]), cw(&[1, 0])]);
        assert_eq!(dominant_up_to(3, 4).len(), 35);
    }
}
