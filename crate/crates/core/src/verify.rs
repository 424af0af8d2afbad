//! Executable checks of the structural identities, grouped into suites.
//!
//! Every suite records the number of instances it checked and, on failure,
//! the first failing input as JSON. Random inputs come from a seeded
//! ChaCha generator, so a report is a deterministic function of its
//! [`VerifyConfig`] and multiplicity source.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characters::{
    decompose_invariant, dominant_up_to, evaluate_at, freudenthal_multiplicities, is_nonnegative_integral,
    weyl_character, weyl_dimension, SatakeParameter, WeightMultiset,
};
use crate::error::Result;
use crate::hecke::{central_element, iota, polynomial_action, HeckeElement};
use crate::lattice::LatticeElement;
use crate::linear::EchelonBasis;
use crate::root_data::{CartanType, Coweight, RootDatum};
use crate::scalar::Scalar;
use crate::whittaker::{hk_action, phi, spherical_image_check, twisted_satake_model, whittaker_value, whittaker_value_from_weights};

/// Where dominant weight multiplicities come from. The default recomputes
/// them; the CLI plugs in its disk cache, so a corrupted cache entry shows
/// up as an oracle mismatch.
pub trait MultiplicitySource: Sync {
    fn multiplicities(&self, datum: &RootDatum, lambda: &Coweight) -> Result<WeightMultiset>;
}

/// Freudenthal's recursion, computed afresh.
#[derive(Clone, Copy, Debug, Default)]
pub struct Freudenthal;

impl MultiplicitySource for Freudenthal {
    fn multiplicities(&self, datum: &RootDatum, lambda: &Coweight) -> Result<WeightMultiset> {
        freudenthal_multiplicities(datum, lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub cartan_type: CartanType,
    /// Bound on the coordinate sum of dominant `λ`.
    pub bound: u32,
    /// Random instances per simple reflection (alt_kills_iota) or per suite.
    pub samples: usize,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(cartan_type: CartanType, bound: u32) -> Self {
        VerifyConfig { cartan_type, bound, samples: 200, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    /// The identity checked, as a formula.
    pub statement: String,
    pub instances: u64,
    pub passed: bool,
    pub counterexample: Option<Value>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub bound: u32,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

struct Suite {
    name: &'static str,
    statement: &'static str,
    instances: u64,
    counterexample: Option<Value>,
    start: Instant,
}

impl Suite {
    fn new(name: &'static str, statement: &'static str) -> Self {
        Suite { name, statement, instances: 0, counterexample: None, start: Instant::now() }
    }

    fn check(&mut self, outcome: Result<bool>, input: impl FnOnce() -> Value) {
        self.instances += 1;
        if self.counterexample.is_some() {
            return;
        }
        match outcome {
            Ok(true) => {}
            Ok(false) => self.counterexample = Some(json!({ "input": input() })),
            Err(e) => self.counterexample = Some(json!({ "input": input(), "error": e.to_string() })),
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            statement: self.statement.to_string(),
            instances: self.instances,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Shared inputs for the suites of one run.
pub struct Context<'a> {
    pub datum: &'a RootDatum,
    pub config: &'a VerifyConfig,
    pub source: &'a dyn MultiplicitySource,
    /// Dominant `λ` with coordinate sum at most `bound`.
    pub lambdas: Vec<Coweight>,
}

impl<'a> Context<'a> {
    pub fn new(datum: &'a RootDatum, config: &'a VerifyConfig, source: &'a dyn MultiplicitySource) -> Self {
        let lambdas = dominant_up_to(datum.rank(), config.bound);
        Context { datum, config, source, lambdas }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Runs every suite with multiplicities recomputed by Freudenthal.
pub fn verify(datum: &RootDatum, config: &VerifyConfig) -> VerificationReport {
    verify_with(datum, config, &Freudenthal)
}

pub fn verify_with(datum: &RootDatum, config: &VerifyConfig, source: &dyn MultiplicitySource) -> VerificationReport {
    let cx = Context::new(datum, config, source);
    let suites = vec![
        character_oracle(&cx),
        weyl_character_formula(&cx),
        dimension(&cx),
        tensor_nonnegativity(&cx),
        evaluation_multiplicative(&cx),
        quadratic_relation(&cx),
        braid_relations(&cx),
        bernstein_relation(&cx),
        commutation(&cx),
        centrality(&cx),
        associativity(&cx),
        module_property(&cx),
        alt_kills_iota(&cx),
        sign_property(&cx),
        module_map(&cx),
        spherical_image(&cx),
        basis(&cx),
        torsion_free(&cx),
        whittaker_cross_check(&cx),
    ];
    VerificationReport {
        schema_version: crate::SCHEMA_VERSION,
        cartan_type: datum.cartan_type(),
        bound: config.bound,
        seed: config.seed,
        suites,
    }
}

fn lattice_json(f: &LatticeElement) -> Value {
    serde_json::to_value(f).unwrap_or(Value::Null)
}

fn hecke_json(datum: &RootDatum, x: &HeckeElement) -> Value {
    serde_json::to_value(x.to_json(datum)).unwrap_or(Value::Null)
}

/// A few terms with exponents in `[-3, 3]^r` and coefficients `n·v^k`.
pub fn random_lattice_element(rng: &mut impl Rng, rank: usize) -> LatticeElement {
    let mut f = LatticeElement::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mu = Coweight::new((0..rank).map(|_| rng.gen_range(-3..=3)).collect());
        let c = &Scalar::from_int(rng.gen_range(-3..=3)) * &Scalar::v_pow(rng.gen_range(-1..=1));
        f.add_term(mu, c);
    }
    f
}

/// A short word in the generators `t_s`, `θ_μ` and scalars.
pub fn random_hecke_element(rng: &mut impl Rng, datum: &RootDatum) -> HeckeElement {
    let rank = datum.rank();
    let mut x = HeckeElement::identity(rank).scale(&Scalar::from_int(rng.gen_range(1..=2)));
    for _ in 0..rng.gen_range(1..=3) {
        x = if rng.gen_bool(0.5) {
            x.mul_simple(datum, rng.gen_range(0..rank))
        } else {
            x.mul_theta(&Coweight::new((0..rank).map(|_| rng.gen_range(-2..=2)).collect()))
        };
    }
    if rng.gen_bool(0.5) {
        let y = HeckeElement::theta(Coweight::new((0..rank).map(|_| rng.gen_range(-1..=1)).collect()));
        x = x.add(&y.scale(&Scalar::q()));
    }
    x
}

/// Exponent box `[-r, r]^rank`, with `r` shrunk so the box stays small.
fn exponent_box(rank: usize, radius: u32, max_size: usize) -> Vec<Coweight> {
    let mut r = radius as i32;
    while r > 0 && ((2 * r + 1) as usize).pow(rank as u32) > max_size {
        r -= 1;
    }
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|c: Vec<i32>| {
                (-r..=r).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    out.into_iter().map(Coweight::new).collect()
}

fn character_oracle(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("character_oracle", "orbit expansion of Freudenthal multiplicities m_ν(λ) = alt(e^(λ+ρ)) / alt(e^ρ)");
    for lambda in &cx.lambdas {
        let outcome = (|| {
            let weights = cx.source.multiplicities(cx.datum, lambda)?;
            Ok(weights.orbit_expansion(cx.datum) == weyl_character(cx.datum, lambda)?)
        })();
        s.check(outcome, || json!({ "lambda": lambda }));
    }
    s.finish()
}

fn weyl_character_formula(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("weyl_character_formula", "alt(e^(λ+ρ)) = alt(e^ρ) · a_λ");
    let rho = cx.datum.rho();
    let denominator = LatticeElement::monomial(rho.clone()).alt(cx.datum);
    for lambda in &cx.lambdas {
        let outcome = (|| {
            let a = cx.source.multiplicities(cx.datum, lambda)?.orbit_expansion(cx.datum);
            Ok(LatticeElement::monomial(lambda + &rho).alt(cx.datum) == &denominator * &a)
        })();
        s.check(outcome, || json!({ "lambda": lambda }));
    }
    s.finish()
}

fn dimension(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("dimension", "Σ_ν m_ν |W·ν| = a_λ(1) = Π_β (λ+ρ, β)/(ρ, β)");
    let ones = SatakeParameter::<BigRational>::trivial(cx.datum.rank());
    let one = BigRational::from_integer(1.into());
    for lambda in &cx.lambdas {
        let outcome = (|| {
            let dim = weyl_dimension(cx.datum, lambda)?;
            let weights = cx.source.multiplicities(cx.datum, lambda)?;
            let traced = evaluate_at(&weyl_character(cx.datum, lambda)?, &ones, &one)?;
            Ok(weights.dimension(cx.datum) == dim && traced == BigRational::from_integer(dim.into()))
        })();
        s.check(outcome, || json!({ "lambda": lambda }));
    }
    s.finish()
}

fn tensor_nonnegativity(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("tensor_nonnegativity", "a_λ · a_μ = Σ c_ν a_ν with c_ν ∈ ℤ≥0");
    let small: Vec<_> = cx.lambdas.iter().filter(|l| l.coordinate_sum() <= 3).collect();
    for (n, lambda) in small.iter().enumerate() {
        for mu in &small[n..] {
            let outcome = (|| {
                let product = &weyl_character(cx.datum, lambda)? * &weyl_character(cx.datum, mu)?;
                Ok(is_nonnegative_integral(&decompose_invariant(cx.datum, &product)?))
            })();
            s.check(outcome, || json!({ "lambda": lambda, "mu": mu }));
        }
    }
    s.finish()
}

fn evaluation_multiplicative(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("evaluation_multiplicative", "(f·g)(γ) = f(γ) · g(γ)");
    let mut rng = cx.rng(1);
    let rank = cx.datum.rank();
    for _ in 0..cx.config.samples.min(100) {
        let f = random_lattice_element(&mut rng, rank);
        let g = random_lattice_element(&mut rng, rank);
        let coords = (0..rank)
            .map(|_| BigRational::new(rng.gen_range(1..=7).into(), rng.gen_range(1..=5).into()))
            .collect();
        let v = BigRational::from_integer(rng.gen_range(2..=5).into());
        let outcome = (|| {
            let gamma = SatakeParameter::new(coords)?;
            let lhs = evaluate_at(&(&f * &g), &gamma, &v)?;
            Ok(lhs == evaluate_at(&f, &gamma, &v)? * evaluate_at(&g, &gamma, &v)?)
        })();
        s.check(outcome, || json!({ "f": lattice_json(&f), "g": lattice_json(&g), "v": v.to_string() }));
    }
    s.finish()
}

fn quadratic_relation(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("quadratic_relation", "t_s² = (q − 1) t_s + q");
    let rank = cx.datum.rank();
    for i in 0..rank {
        let outcome = (|| {
            let t = HeckeElement::t_simple(cx.datum, i)?;
            let rhs = t
                .scale(&(&Scalar::q() - &Scalar::one()))
                .add(&HeckeElement::identity(rank).scale(&Scalar::q()));
            Ok(t.mul(cx.datum, &t) == rhs)
        })();
        s.check(outcome, || json!({ "s": i }));
    }
    s.finish()
}

/// Order of `s_i s_j` from the Cartan matrix.
fn braid_order(datum: &RootDatum, i: usize, j: usize) -> usize {
    let c = datum.cartan_matrix();
    match c[i][j] * c[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

fn braid_relations(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("braid_relations", "t_i t_j t_i ⋯ = t_j t_i t_j ⋯ (m_ij factors each)");
    let rank = cx.datum.rank();
    let word = |a: usize, b: usize, m: usize| {
        (0..m).fold(HeckeElement::identity(rank), |x, k| {
            x.mul_simple(cx.datum, if k % 2 == 0 { a } else { b })
        })
    };
    for i in 0..rank {
        for j in i + 1..rank {
            let m = braid_order(cx.datum, i, j);
            s.check(Ok(word(i, j, m) == word(j, i, m)), || json!({ "i": i, "j": j, "m": m }));
        }
    }
    s.finish()
}

fn bernstein_relation(cx: &Context) -> SuiteResult {
    let mut s = Suite::new(
        "bernstein_relation",
        "(t_s θ_μ − θ_(sμ) t_s) · (1 − θ_(−α^∨)) = (1 − q)(θ_(sμ) − θ_μ)",
    );
    let datum = cx.datum;
    let rank = datum.rank();
    let one_minus_q = &Scalar::one() - &Scalar::q();
    for i in 0..rank {
        let Ok(t) = HeckeElement::t_simple(datum, i) else { continue };
        let neg_coroot = -datum.simple_coroot(i);
        let factor = HeckeElement::identity(rank).sub(&HeckeElement::theta(neg_coroot));
        for mu in exponent_box(rank, 3, 2401) {
            let s_mu = datum.reflect(i, &mu);
            let theta_mu = HeckeElement::theta(mu.clone());
            let theta_s_mu = HeckeElement::theta(s_mu);
            let commutator = t.mul(datum, &theta_mu).sub(&theta_s_mu.mul(datum, &t));
            let lhs = commutator.mul(datum, &factor);
            let rhs = theta_s_mu.sub(&theta_mu).scale(&one_minus_q);
            s.check(Ok(lhs == rhs), || json!({ "s": i, "mu": mu }));
        }
    }
    s.finish()
}

fn commutation(cx: &Context) -> SuiteResult {
    let mut s = Suite::new(
        "commutation",
        "t_s commutes with θ_(kα^∨) + θ_(−kα^∨) for 0 ≤ k ≤ 3, and with θ_μ when sμ = μ",
    );
    let datum = cx.datum;
    let rank = datum.rank();
    for i in 0..rank {
        let Ok(t) = HeckeElement::t_simple(datum, i) else { continue };
        let coroot = datum.simple_coroot(i);
        for k in 0..=3 {
            let x = HeckeElement::theta(coroot * k).add(&HeckeElement::theta(coroot * -k));
            s.check(Ok(t.commutator(datum, &x).is_zero()), || json!({ "s": i, "k": k }));
        }
        for mu in exponent_box(rank, 3, 2401).into_iter().filter(|mu| mu.coords()[i] == 0) {
            let x = HeckeElement::theta(mu.clone());
            s.check(Ok(t.commutator(datum, &x).is_zero()), || json!({ "s": i, "mu": mu }));
        }
    }
    s.finish()
}

fn centrality(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("centrality", "z_λ = Σ_ν m_ν θ_ν commutes with every t_s and θ_μ");
    let datum = cx.datum;
    let rank = datum.rank();
    let mut generators: Vec<(Value, HeckeElement)> = Vec::new();
    for i in 0..rank {
        if let Ok(t) = HeckeElement::t_simple(datum, i) {
            generators.push((json!({ "t": i }), t));
        }
        let omega = Coweight::fundamental(rank, i);
        generators.push((json!({ "theta": omega }), HeckeElement::theta(omega)));
    }
    for lambda in &cx.lambdas {
        let z = cx
            .source
            .multiplicities(datum, lambda)
            .and_then(|w| central_element(datum, &w));
        match z {
            Ok(z) => {
                for (label, g) in &generators {
                    s.check(Ok(z.commutator(datum, g).is_zero()), || json!({ "lambda": lambda, "generator": label }));
                }
            }
            Err(e) => s.check(Err(e), || json!({ "lambda": lambda })),
        }
    }
    s.finish()
}

fn associativity(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("associativity", "(x·y)·z = x·(y·z)");
    let datum = cx.datum;
    let mut rng = cx.rng(2);
    for _ in 0..cx.config.samples.min(50) {
        let x = random_hecke_element(&mut rng, datum);
        let y = random_hecke_element(&mut rng, datum);
        let z = random_hecke_element(&mut rng, datum);
        let ok = x.mul(datum, &y).mul(datum, &z) == x.mul(datum, &y.mul(datum, &z));
        s.check(Ok(ok), || {
            json!({ "x": hecke_json(datum, &x), "y": hecke_json(datum, &y), "z": hecke_json(datum, &z) })
        });
    }
    s.finish()
}

fn module_property(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("module_property", "(x·y)·f = x·(y·f) on the polynomial module");
    let datum = cx.datum;
    let mut rng = cx.rng(3);
    for _ in 0..cx.config.samples.min(100) {
        let x = random_hecke_element(&mut rng, datum);
        let y = random_hecke_element(&mut rng, datum);
        let f = random_lattice_element(&mut rng, datum.rank());
        let lhs = polynomial_action(datum, &x.mul(datum, &y), &f);
        let rhs = polynomial_action(datum, &x, &polynomial_action(datum, &y, &f));
        s.check(Ok(lhs == rhs), || {
            json!({ "x": hecke_json(datum, &x), "y": hecke_json(datum, &y), "f": lattice_json(&f) })
        });
    }
    s.finish()
}

fn alt_kills_iota(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("alt_kills_iota", "alt((1 + T_s) f) = 0");
    let datum = cx.datum;
    let mut rng = cx.rng(4);
    for i in 0..datum.rank() {
        let Ok(x) = iota(datum, i) else { continue };
        for _ in 0..cx.config.samples {
            let f = random_lattice_element(&mut rng, datum.rank());
            let ok = polynomial_action(datum, &x, &f).alt(datum).is_zero();
            s.check(Ok(ok), || json!({ "s": i, "f": lattice_json(&f) }));
        }
    }
    s.finish()
}

fn sign_property(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("sign_property", "alt(T_s f) = −alt(f)");
    let datum = cx.datum;
    let mut rng = cx.rng(5);
    for i in 0..datum.rank() {
        let Ok(t) = HeckeElement::t_simple(datum, i) else { continue };
        for _ in 0..cx.config.samples {
            let f = random_lattice_element(&mut rng, datum.rank());
            let ok = polynomial_action(datum, &t, &f).alt(datum) == -&f.alt(datum);
            s.check(Ok(ok), || json!({ "s": i, "f": lattice_json(&f) }));
        }
    }
    s.finish()
}

fn module_map(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("module_map", "alt(f · a_λ) = alt(f) · a_λ");
    let datum = cx.datum;
    let mut rng = cx.rng(6);
    let pairs = cx.config.samples.max(100);
    let characters: Vec<_> = cx.lambdas.iter().map(|l| weyl_character(datum, l)).collect();
    for n in 0..pairs {
        let f = random_lattice_element(&mut rng, datum.rank());
        let k = n % cx.lambdas.len();
        let lambda = &cx.lambdas[k];
        let outcome = (|| {
            let a = characters[k].as_ref().map_err(Clone::clone)?;
            let lhs = twisted_satake_model(datum, &(&f * a));
            Ok(lhs == hk_action(datum, &twisted_satake_model(datum, &f), lambda)?)
        })();
        s.check(outcome, || json!({ "f": lattice_json(&f), "lambda": lambda }));
    }
    s.finish()
}

fn spherical_image(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("spherical_image", "alt(e^ρ · a_λ) = φ_(λ+ρ)");
    for lambda in &cx.lambdas {
        s.check(spherical_image_check(cx.datum, lambda), || json!({ "lambda": lambda }));
    }
    s.finish()
}

/// The `W`-stable box of all coweights whose dominant conjugate has
/// coordinate sum at most `bound + rank`, and the strictly dominant points
/// in it, i.e. `λ + ρ` for `λ` in the suite.
pub fn bounded_box(datum: &RootDatum, bound: u32) -> (Vec<Coweight>, Vec<Coweight>) {
    let dominant = dominant_up_to(datum.rank(), bound + datum.rank() as u32);
    let mut cube: Vec<Coweight> = dominant.iter().flat_map(|mu| datum.orbit_set(mu)).collect();
    cube.sort();
    let indices = dominant.into_iter().filter(Coweight::is_strictly_dominant).collect();
    (cube, indices)
}

fn basis(cx: &Context) -> SuiteResult {
    let mut s = Suite::new(
        "basis",
        "{φ_(λ+ρ)} is linearly independent and spans alt(e^ν) for every ν in the W-stable box",
    );
    let datum = cx.datum;
    let (cube, indices) = bounded_box(cx.datum, cx.config.bound);
    let mut span = EchelonBasis::new();
    for mu in &indices {
        let outcome = phi(datum, mu).map(|p| span.insert(p.value()));
        s.check(outcome, || json!({ "dependent": mu }));
    }
    for nu in &cube {
        let image = LatticeElement::monomial(nu.clone()).alt(datum);
        s.check(Ok(span.contains(&image)), || json!({ "outside_span": nu }));
    }
    s.finish()
}

fn torsion_free(cx: &Context) -> SuiteResult {
    let mut s = Suite::new("torsion_free", "x · a_λ = 0 implies x = 0 on span{φ_μ}");
    let datum = cx.datum;
    let (_, indices) = bounded_box(cx.datum, cx.config.bound);
    let basis: Vec<_> = indices.iter().filter_map(|mu| phi(datum, mu).ok()).collect();
    for lambda in &cx.lambdas {
        let outcome = (|| {
            let a = weyl_character(datum, lambda)?;
            let mut image = EchelonBasis::new();
            for p in &basis {
                if !image.insert(&(p.value() * &a)) {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        s.check(outcome, || json!({ "lambda": lambda }));
    }
    s.finish()
}

fn whittaker_cross_check(cx: &Context) -> SuiteResult {
    let mut s = Suite::new(
        "whittaker_cross_check",
        "δ^(1/2)(t_(λ+ρ)) a_λ(γ) = δ^(1/2)(t_(λ+ρ)) Σ_ν m_ν γ(ν)",
    );
    let datum = cx.datum;
    let rank = datum.rank();
    let exact = SatakeParameter::new(
        (0..rank)
            .map(|i| BigRational::new((2 * i as i64 + 3).into(), (i as i64 + 2).into()))
            .collect(),
    )
    .expect("coordinates are nonzero");
    let complex = SatakeParameter::new(
        (0..rank)
            .map(|i| Complex64::from_polar(1.0 + 0.25 * i as f64, 0.7 + 0.9 * i as f64))
            .collect(),
    )
    .expect("coordinates are nonzero");
    let v_exact = BigRational::from_integer(3.into());
    let v_complex = Complex64::new(3.0, 0.0);
    for lambda in &cx.lambdas {
        let outcome = (|| {
            let weights = cx.source.multiplicities(datum, lambda)?;
            let a = whittaker_value(datum, lambda, &exact, &v_exact)?;
            let b = whittaker_value_from_weights(datum, &weights, &exact, &v_exact)?;
            let c = whittaker_value(datum, lambda, &complex, &v_complex)?;
            let d = whittaker_value_from_weights(datum, &weights, &complex, &v_complex)?;
            Ok(a == b && crate::field::Field::approx_eq(&c, &d, 1e-9))
        })();
        s.check(outcome, || json!({ "lambda": lambda }));
    }
    s.finish()
}
