use std::fmt::Write as _;
use std::io::Write as _;

use hecke_whittaker::characters::dominant_up_to;
use hecke_whittaker::verify::{verify_with, Freudenthal, MultiplicitySource, VerificationReport, VerifyConfig};
use hecke_whittaker::whittaker::whittaker_table;
use hecke_whittaker::{
    freudenthal_multiplicities, weyl_character, CartanType, Coweight, Error, Field, HeckeElement, RootDatum,
    SatakeParameter, Scalar, WeightMultiset, WhittakerTable,
};
use num_complex::Complex64;
use serde_json::json;

use crate::cache::DiskCache;
use crate::numeric::{rational_to_scalar, Gamma, Specialization};
use crate::{expr, Bounded, CliError, Common, ExportArgs, Format, VerifyArgs, WhittakerArgs};

struct Session {
    datum: RootDatum,
    cache: Option<DiskCache>,
}

impl Session {
    fn open(common: &Common) -> Result<Self, CliError> {
        let name = common
            .cartan_type
            .as_deref()
            .or(common.type_pos.as_deref())
            .ok_or_else(|| CliError::Usage("missing Cartan type".into()))?;
        let cartan_type: CartanType = name.parse().map_err(CliError::from_core)?;
        let order = cartan_type.weyl_order();
        if order > common.max_weyl_order {
            return Err(CliError::Domain(Error::WeylGroupTooLarge { order, limit: common.max_weyl_order }));
        }
        let cache = common.cache.as_ref().map(DiskCache::open).transpose()?;
        Ok(Session { datum: RootDatum::new(cartan_type), cache })
    }

    fn source(&self) -> &dyn MultiplicitySource {
        match &self.cache {
            Some(c) => c,
            None => &Freudenthal,
        }
    }

    fn weights(&self, lambda: &Coweight) -> Result<WeightMultiset, CliError> {
        match &self.cache {
            Some(c) => c.get_or_compute(&self.datum, lambda),
            None => freudenthal_multiplicities(&self.datum, lambda),
        }
        .map_err(CliError::from_core)
    }

    fn lambda(&self, s: &str) -> Result<Coweight, CliError> {
        let lambda = Coweight::parse(s).map_err(CliError::from_core)?;
        self.datum.check_rank(&lambda).map_err(CliError::from_core)?;
        Ok(lambda)
    }
}

fn check_bound(b: &Bounded) -> Result<(), CliError> {
    if b.bound > b.max_bound {
        return Err(CliError::Usage(format!(
            "--bound {} exceeds the limit {}; raise it with --max-bound",
            b.bound, b.max_bound
        )));
    }
    Ok(())
}

fn pretty_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs serialize");
    s.push('\n');
    s
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

fn weights_pretty(datum: &RootDatum, w: &WeightMultiset, out: &mut String) {
    let _ = writeln!(out, "V_{} of {}: dimension {}", w.lambda, w.cartan_type, w.dimension(datum));
    for (nu, m) in w.dominant_mults.iter().rev() {
        let _ = writeln!(out, "  {nu}  mult {m}  orbit {}", datum.orbit_set(nu).len());
    }
}

fn weights_csv_rows(datum: &RootDatum, w: &WeightMultiset, with_lambda: bool, out: &mut String) {
    for (nu, m) in &w.dominant_mults {
        if with_lambda {
            let _ = write!(out, "{},", join(&w.lambda));
        }
        let _ = writeln!(out, "{},{m},{}", join(nu), datum.orbit_set(nu).len());
    }
}

pub fn character(common: &Common, lambda: &str, with_character: bool) -> Result<String, CliError> {
    let session = Session::open(common)?;
    let datum = &session.datum;
    let lambda = session.lambda(lambda)?;
    let weights = session.weights(&lambda)?;
    if !with_character {
        return Ok(match common.format {
            Format::Json => pretty_json(&weights),
            Format::Csv => {
                let mut out = String::from("weight,mult,orbit_size\n");
                weights_csv_rows(datum, &weights, false, &mut out);
                out
            }
            Format::Pretty => {
                let mut out = String::new();
                weights_pretty(datum, &weights, &mut out);
                out
            }
        });
    }
    let a = weyl_character(datum, &lambda).map_err(CliError::from_core)?;
    Ok(match common.format {
        Format::Json => pretty_json(&json!({
            "schema_version": hecke_whittaker::SCHEMA_VERSION,
            "type": datum.cartan_type(),
            "lambda": lambda,
            "dimension": weights.dimension(datum),
            "character": a,
            "weights": weights,
        })),
        Format::Csv => {
            let mut out = String::from("exponent,coeff\n");
            for (mu, c) in a.terms() {
                let _ = writeln!(out, "{},{}", join(mu), csv_field(&c.to_string()));
            }
            out
        }
        Format::Pretty => {
            let mut out = format!("a_{lambda} = {a}\n");
            weights_pretty(datum, &weights, &mut out);
            out
        }
    })
}

fn hecke_pretty(datum: &RootDatum, x: &HeckeElement) -> String {
    if x.is_zero() {
        return "0\n".into();
    }
    let mut out = String::new();
    for t in x.to_json(datum) {
        let word: Vec<String> = t.w.iter().map(|i| format!("T{i}")).collect();
        let word = if word.is_empty() { "1".to_string() } else { word.join("*") };
        let _ = writeln!(out, "[{}] {word} θ{}", t.coeff, t.mu);
    }
    out
}

pub fn hecke_mul(common: &Common, exprs: &[String]) -> Result<String, CliError> {
    let session = Session::open(common)?;
    let datum = &session.datum;
    let mut product = HeckeElement::identity(datum.rank());
    for e in exprs {
        product = product.mul(datum, &expr::parse(datum, e)?);
    }
    Ok(match common.format {
        Format::Json => pretty_json(&json!({
            "schema_version": hecke_whittaker::SCHEMA_VERSION,
            "type": datum.cartan_type(),
            "terms": product.to_json(datum),
        })),
        Format::Csv => {
            let mut out = String::from("w,mu,coeff\n");
            for t in product.to_json(datum) {
                let w: Vec<String> = t.w.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{},{},{}", w.join(";"), join(&t.mu), csv_field(&t.coeff.to_string()));
            }
            out
        }
        Format::Pretty => hecke_pretty(datum, &product),
    })
}

fn render_table<F: Field>(table: &WhittakerTable<F>, format: Format) -> String {
    match format {
        Format::Json => pretty_json(&table.to_json()),
        Format::Csv => table.to_csv(),
        Format::Pretty => table.to_string(),
    }
}

fn table<F: Field>(
    datum: &RootDatum,
    bound: u32,
    coords: Vec<F>,
    v: F,
    label: &str,
    format: Format,
) -> Result<String, CliError> {
    let gamma = SatakeParameter::new(coords).map_err(CliError::from_core)?;
    let t = whittaker_table(datum, bound, &gamma, &v, label).map_err(CliError::from_core)?;
    Ok(render_table(&t, format))
}

pub fn whittaker(a: &WhittakerArgs) -> Result<String, CliError> {
    check_bound(&a.bounded)?;
    let session = Session::open(&a.common)?;
    let datum = &session.datum;
    let gamma = Gamma::parse(&a.gamma, datum.rank())?;
    let complex = matches!(gamma, Gamma::Complex(_));
    let specialization = Specialization::parse(a.q.as_deref(), a.v.as_deref(), complex)?;
    let (bound, format) = (a.bounded.bound, a.common.format);
    match (gamma, specialization) {
        (Gamma::Rational(g), Specialization::Formal) => {
            let coords = g.iter().map(rational_to_scalar).collect();
            table(datum, bound, coords, Scalar::v(), "formal", format)
        }
        (Gamma::Rational(g), Specialization::Rational { v, label }) => table(datum, bound, g, v, &label, format),
        (Gamma::Complex(g), Specialization::Float { v, label }) => {
            table(datum, bound, g, Complex64::new(v, 0.0), &label, format)
        }
        _ => Err(CliError::Usage("complex Satake parameters need a numeric --q or --v".into())),
    }
}

fn report_pretty(report: &VerificationReport) -> String {
    let mut out = format!("verification of {} with bound {}\n", report.cartan_type, report.bound);
    for s in &report.suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} {:<26} {:>6}  {}", s.name, s.instances, s.statement);
        if let Some(c) = &s.counterexample {
            let _ = writeln!(out, "     counterexample: {c}");
        }
    }
    out
}

pub fn verify(a: &VerifyArgs) -> Result<String, CliError> {
    check_bound(&a.bounded)?;
    let session = Session::open(&a.common)?;
    let datum = &session.datum;
    let config = VerifyConfig { cartan_type: datum.cartan_type(), bound: a.bounded.bound, samples: a.samples, seed: a.seed };
    let report = verify_with(datum, &config, session.source());
    for s in &report.suites {
        eprintln!("{:<26} {:>10.3} ms", s.name, s.elapsed.as_secs_f64() * 1e3);
    }
    let out = match a.common.format {
        Format::Json => pretty_json(&report),
        Format::Csv => {
            let mut out = String::from("suite,instances,passed\n");
            for s in &report.suites {
                let _ = writeln!(out, "{},{},{}", s.name, s.instances, s.passed);
            }
            out
        }
        Format::Pretty => report_pretty(&report),
    };
    if report.all_passed() {
        Ok(out)
    } else {
        Err(CliError::VerificationFailed(out))
    }
}

pub fn export(a: &ExportArgs) -> Result<String, CliError> {
    check_bound(&a.bounded)?;
    let session = Session::open(&a.common)?;
    let datum = &session.datum;
    let all = dominant_up_to(datum.rank(), a.bounded.bound)
        .iter()
        .map(|l| session.weights(l))
        .collect::<Result<Vec<_>, _>>()?;
    let body = match a.common.format {
        Format::Json => pretty_json(&json!({
            "schema_version": hecke_whittaker::SCHEMA_VERSION,
            "type": datum.cartan_type(),
            "bound": a.bounded.bound,
            "weights": all,
        })),
        Format::Csv => {
            let mut out = String::from("lambda,weight,mult,orbit_size\n");
            for w in &all {
                weights_csv_rows(datum, w, true, &mut out);
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for w in &all {
                weights_pretty(datum, w, &mut out);
            }
            out
        }
    };
    let Some(path) = &a.out else { return Ok(body) };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(std::path::Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(format!("wrote {} entries to {}\n", all.len(), path.display()))
}
