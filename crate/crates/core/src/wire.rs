//! JSON payloads of the command-line tool: input parsing, encoding of
//! engine results, and recomputation of the embedded `verified` flags.
//!
//! Every coefficient list is constant-term first. Rationals are written
//! `a` or `a/b`; elements of ℚ(t) use [`RatFun::to_wire`].

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::arith::factor_fp::factor_mod_p;
use crate::arith::modular::PrimeField;
use crate::arith::poly::{render, Poly, PolyRing};
use crate::arith::ratfun::RatFun;
use crate::arith::ring::Ring;
use crate::engine::{
    check_package, localize_cover_with, CertificateKind, Cover, CoverEntry, GeneratorPackage, HenselianCertificate,
    LocalSetting, TripleCertificate,
};
use crate::error::{Error, Result};
use crate::number_field::{split_prime_with, NumberField, PrimeNode};
use crate::spectrum::{
    chain_decomposition, element_at_eta, enumerate_spectrum, fg_conditions, ratfun_poly, restriction_check, BaseChain,
    FgReport, FiberFactor, FiniteSpectrum,
};
use crate::suite::SuiteOutcome;
use crate::uniformize::{entry, run_pipeline, PipelineReport};
use crate::valuation::{LocalBase, PadicBase};

/// Comma-separated list; empty items are rejected.
pub fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|item| {
            item.trim()
                .parse::<T>()
                .map_err(|_| Error::InvalidInput(format!("cannot read `{}` in {what} `{s}`", item.trim())))
        })
        .collect()
}

pub fn parse_ratfuns(s: &str, what: &str) -> Result<Vec<RatFun>> {
    s.split(',')
        .map(|item| {
            RatFun::from_wire(item.trim())
                .ok_or_else(|| Error::InvalidInput(format!("cannot read `{}` in {what} `{s}`", item.trim())))
        })
        .collect()
}

/// `;`-separated coordinate vectors.
pub fn parse_elements(s: &str) -> Result<Vec<Vec<BigRational>>> {
    s.split(';').map(|e| parse_list(e, "element list")).collect()
}

pub fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(T::to_string).collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::InvalidInput(format!("payload has no field `{key}`")))
}

fn u64_field(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| Error::InvalidInput(format!("`{key}` is not a nonnegative integer")))
}

fn parsed<T: FromStr>(v: &Value, key: &str) -> Result<Vec<T>> {
    let items = field(v, key)?
        .as_array()
        .ok_or_else(|| Error::InvalidInput(format!("`{key}` is not a list")))?;
    items
        .iter()
        .map(|x| {
            x.as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad entry {x} in `{key}`")))
        })
        .collect()
}

/// A number field, a prime and a chosen node, as given on the command line.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldInput {
    pub f: Vec<BigInt>,
    pub p: u64,
    pub node: usize,
    pub precision_start: u32,
}

impl FieldInput {
    pub fn to_json(&self) -> Value {
        json!({
            "f": strings(&self.f),
            "p": self.p,
            "node": self.node,
            "precision_start": self.precision_start,
        })
    }

    pub fn from_json(input: &Value) -> Result<Self> {
        Ok(FieldInput {
            f: parsed(input, "f")?,
            p: u64_field(input, "p")?,
            node: u64_field(input, "node")? as usize,
            precision_start: u64_field(input, "precision_start")? as u32,
        })
    }

    pub fn field(&self) -> Result<NumberField> {
        NumberField::new(&Poly::new(self.f.clone())).map_err(|e| e.at_stage("number_field"))
    }

    pub fn setting(&self) -> Result<LocalSetting<PadicBase>> {
        let ext = self.field()?;
        let base = PadicBase::new(self.p).map_err(|e| e.at_stage("split"))?;
        LocalSetting::with_precision(ext, base, self.node, self.precision_start).map_err(|e| e.at_stage("split"))
    }
}

type Setting = LocalSetting<PadicBase>;
type Package = GeneratorPackage<PadicBase>;

fn coords(setting: &Setting, a: &Poly<BigRational>) -> Vec<String> {
    strings(&setting.ext().coords(a))
}

fn element(setting: &Setting, v: &Value, key: &str) -> Result<Poly<BigRational>> {
    setting.ext().from_coords(parsed(v, key)?)
}

fn qpoly(setting: &Setting, v: &Value, key: &str) -> Result<Poly<BigRational>> {
    Ok(setting.polys().from_coeffs(parsed(v, key)?))
}

fn residue_poly(setting: &Setting, v: &Value, key: &str) -> Result<Poly<u64>> {
    let cs: Vec<u64> = parsed(v, key)?;
    let p = setting.base().p();
    if let Some(c) = cs.iter().find(|&&c| c >= p) {
        return Err(Error::InvalidInput(format!("residue {c} in `{key}` is not reduced modulo {p}")));
    }
    Ok(PolyRing::new(*setting.base().residue_field()).from_coeffs(cs))
}

/// `(p, θ - 3)`-style label of a node with the factor in balanced form.
pub fn node_label(node: &PrimeNode<PadicBase>) -> String {
    let field = node.base().residue_field();
    let balanced: Poly<i64> = Poly::new(node.local_factor().coeffs().iter().map(|&c| field.balanced(c)).collect());
    format!("({}, {})", node.base().p(), render(&balanced, "θ"))
}

pub fn generator_json(setting: &Setting, pkg: &Package) -> Value {
    json!({
        "eta": coords(setting, &pkg.eta),
        "h": strings(pkg.min_poly.coeffs()),
        "residue_generator": strings(pkg.residue_generator.coeffs()),
        "l": pkg.l,
        "g": strings(pkg.g.coeffs()),
        "attempts": pkg.attempts,
    })
}

pub fn generator_from_json(setting: &Setting, v: &Value) -> Result<Package> {
    Ok(GeneratorPackage {
        eta: element(setting, v, "eta")?,
        min_poly: qpoly(setting, v, "h")?,
        chosen: setting.chosen_index(),
        residue_generator: residue_poly(setting, v, "residue_generator")?,
        l: u64_field(v, "l")? as usize,
        g: residue_poly(setting, v, "g")?,
        attempts: u64_field(v, "attempts")? as usize,
    })
}

pub fn certificate_json(setting: &Setting, c: &HenselianCertificate<BigRational>) -> Value {
    json!({
        "element": coords(setting, &c.element),
        "witness": strings(c.witness.coeffs()),
        "node": c.node,
        "kind": c.kind,
        "derivative_value": c.derivative_value,
    })
}

pub fn certificate_from_json(setting: &Setting, v: &Value) -> Result<HenselianCertificate<BigRational>> {
    let kind: CertificateKind = serde_json::from_value(field(v, "kind")?.clone())
        .map_err(|e| Error::InvalidInput(format!("certificate kind: {e}")))?;
    Ok(HenselianCertificate {
        element: element(setting, v, "element")?,
        witness: qpoly(setting, v, "witness")?,
        node: u64_field(v, "node")? as usize,
        kind,
        derivative_value: field(v, "derivative_value")?
            .as_i64()
            .ok_or_else(|| Error::InvalidInput("`derivative_value` is not an integer".into()))?,
    })
}

pub fn cover_json(setting: &Setting, cover: &Cover<BigRational>) -> Value {
    let entries: Vec<Value> = cover
        .entries
        .iter()
        .map(|e| json!({"z": coords(setting, &e.z), "exponent": e.exponent, "coords": strings(&e.coords)}))
        .collect();
    json!({
        "u": coords(setting, &cover.u),
        "u_coords": strings(&cover.u_coords),
        "entries": entries,
    })
}

pub fn cover_from_json(setting: &Setting, v: &Value) -> Result<Cover<BigRational>> {
    let entries = field(v, "entries")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("`entries` is not a list".into()))?
        .iter()
        .map(|e| {
            Ok(CoverEntry {
                z: element(setting, e, "z")?,
                exponent: u64_field(e, "exponent")? as u32,
                coords: parsed(e, "coords")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Cover {
        u: element(setting, v, "u")?,
        u_coords: parsed(v, "u_coords")?,
        entries,
    })
}

pub fn triple_json(setting: &Setting, t: &TripleCertificate<BigRational>) -> Value {
    json!({
        "b": coords(setting, &t.b),
        "f": strings(t.f.coeffs()),
        "b_prime": coords(setting, &t.b_prime),
        "c": coords(setting, &t.c),
        "eta": certificate_json(setting, &t.eta),
        "r": certificate_json(setting, &t.r),
        "s": certificate_json(setting, &t.s),
    })
}

pub fn triple_from_json(setting: &Setting, v: &Value) -> Result<TripleCertificate<BigRational>> {
    Ok(TripleCertificate {
        b: element(setting, v, "b")?,
        f: qpoly(setting, v, "f")?,
        b_prime: element(setting, v, "b_prime")?,
        c: element(setting, v, "c")?,
        eta: certificate_from_json(setting, field(v, "eta")?)?,
        r: certificate_from_json(setting, field(v, "r")?)?,
        s: certificate_from_json(setting, field(v, "s")?)?,
    })
}

/// Factors multiply back to `f mod p`, each is irreducible, none repeats.
pub fn split_holds(f: &[BigInt], p: u64, factors: &[Poly<u64>]) -> bool {
    let Ok(field) = PrimeField::new(p) else {
        return false;
    };
    let base = PadicBase::new(p).unwrap();
    let r = PolyRing::new(field);
    let reduced = r.from_coeffs(
        f.iter()
            .map(|c| base.reduce(&BigRational::from_integer(c.clone())).unwrap())
            .collect(),
    );
    let product = factors.iter().fold(r.one(), |acc, g| r.mul(&acc, g));
    let irreducible = factors.iter().all(|g| {
        g.deg() >= 1
            && r.is_monic(g)
            && factor_mod_p(g, &field).is_ok_and(|fac| fac.factors.len() == 1 && fac.factors[0].1 == 1)
    });
    let distinct = factors.iter().enumerate().all(|(i, g)| !factors[..i].contains(g));
    product == reduced && irreducible && distinct
}

pub fn split_payload(input: &FieldInput) -> Result<Value> {
    let ext = input.field()?;
    let base = PadicBase::new(input.p).map_err(|e| e.at_stage("split"))?;
    let nodes = split_prime_with(&ext, &base, input.precision_start).map_err(|e| e.at_stage("split"))?;
    let factors: Vec<Poly<u64>> = nodes.iter().map(|n| n.local_factor().clone()).collect();
    let wire: Vec<Value> = nodes
        .iter()
        .map(|n| {
            json!({
                "index": n.index(),
                "factor": strings(n.local_factor().coeffs()),
                "residue_degree": n.residue_degree(),
                "label": node_label(n),
            })
        })
        .collect();
    let mut input_json = input.to_json();
    input_json.as_object_mut().unwrap().remove("node");
    Ok(json!({
        "kind": "split",
        "input": input_json,
        "nodes": wire,
        "verified": split_holds(&input.f, input.p, &factors),
    }))
}

fn reverify_split(v: &Value) -> Result<bool> {
    let input = field(v, "input")?;
    let f: Vec<BigInt> = parsed(input, "f")?;
    let p = u64_field(input, "p")?;
    let nodes = field(v, "nodes")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("`nodes` is not a list".into()))?;
    let field_p = PrimeField::new(p)?;
    let factors = nodes
        .iter()
        .map(|n| Ok(PolyRing::new(field_p).from_coeffs(parsed(n, "factor")?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(split_holds(&f, p, &factors))
}

/// Setting and generator package embedded in a payload.
fn embedded(v: &Value) -> Result<(Setting, Package)> {
    let setting = FieldInput::from_json(field(v, "input")?)?.setting()?;
    let pkg = generator_from_json(&setting, field(v, "generator")?)?;
    Ok((setting, pkg))
}

pub fn hensel_gen_payload(input: &FieldInput, seed: u64, setting: &Setting, pkg: &Package) -> Value {
    let failed = check_package(setting, pkg);
    let mut input_json = input.to_json();
    input_json["seed"] = json!(seed);
    json!({
        "kind": "hensel_gen",
        "input": input_json,
        "node_label": node_label(setting.chosen()),
        "generator": generator_json(setting, pkg),
        "failed_invariants": failed,
        "verified": failed.is_empty(),
    })
}

pub fn check_payload(
    input: &FieldInput,
    setting: &Setting,
    b: &Poly<BigRational>,
    h: &Poly<BigRational>,
    verdict: &crate::engine::HenselVerdict<BigRational>,
) -> Value {
    let mut input_json = input.to_json();
    input_json["element"] = json!(coords(setting, b));
    input_json["witness"] = json!(strings(h.coeffs()));
    let (certificate, rejection, verified) = match verdict {
        crate::engine::HenselVerdict::Henselian(c) => (certificate_json(setting, c), Value::Null, c.verify(setting)),
        crate::engine::HenselVerdict::Rejected(r) => (Value::Null, json!(r), false),
    };
    json!({
        "kind": "check",
        "input": input_json,
        "henselian": verdict.is_henselian(),
        "certificate": certificate,
        "rejection": rejection,
        "verified": verified,
    })
}

fn reverify_check(v: &Value) -> Result<bool> {
    let input = field(v, "input")?;
    let setting = FieldInput::from_json(input)?.setting()?;
    let cert = field(v, "certificate")?;
    if cert.is_null() {
        return Ok(false);
    }
    let cert = certificate_from_json(&setting, cert)?;
    Ok(cert.element == element(&setting, input, "element")?
        && cert.witness == qpoly(&setting, input, "witness")?
        && cert.verify(&setting))
}

pub fn cover_payload(
    input: &FieldInput,
    seed: u64,
    setting: &Setting,
    pkg: &Package,
    cover: &Cover<BigRational>,
) -> Value {
    let mut input_json = input.to_json();
    input_json["seed"] = json!(seed);
    input_json["elements"] = json!(cover.entries.iter().map(|e| coords(setting, &e.z)).collect::<Vec<_>>());
    json!({
        "kind": "cover",
        "input": input_json,
        "generator": generator_json(setting, pkg),
        "cover": cover_json(setting, cover),
        "verified": check_package(setting, pkg).is_empty() && cover.verify(setting, pkg),
    })
}

fn reverify_cover(v: &Value) -> Result<bool> {
    let (setting, pkg) = embedded(v)?;
    let cover = cover_from_json(&setting, field(v, "cover")?)?;
    Ok(check_package(&setting, &pkg).is_empty() && cover.verify(&setting, &pkg))
}

pub fn triple_payload(
    input: &FieldInput,
    seed: u64,
    setting: &Setting,
    pkg: &Package,
    triple: &TripleCertificate<BigRational>,
) -> Value {
    let mut input_json = input.to_json();
    input_json["seed"] = json!(seed);
    input_json["element"] = json!(coords(setting, &triple.b));
    json!({
        "kind": "triple",
        "input": input_json,
        "generator": generator_json(setting, pkg),
        "triple": triple_json(setting, triple),
        "verified": triple.verify(setting),
    })
}

fn reverify_triple(v: &Value) -> Result<bool> {
    let (setting, _) = embedded(v)?;
    let triple = triple_from_json(&setting, field(v, "triple")?)?;
    Ok(triple.b == element(&setting, field(v, "input")?, "element")? && triple.verify(&setting))
}

/// Chain decomposition covering every node with at most `deg h` chains.
fn chains_hold(spec: &FiniteSpectrum, chains: &[Vec<usize>]) -> bool {
    let covered = (0..spec.len()).all(|i| chains.iter().any(|c| c.contains(&i)));
    let total = chains
        .iter()
        .all(|c| c.iter().all(|&a| c.iter().all(|&b| spec.leq(a, b) || spec.leq(b, a))));
    covered && total && chains.len() <= spec.h().deg()
}

/// Condition (ii): `u(η)` localizes the powers of `θ` into `A[η]`.
fn condition_ii(setting: &Setting, pkg: &Package, report: &FgReport) -> Value {
    let Some(u) = element_at_eta(setting, pkg, &report.u) else {
        return json!({"u": Value::Null, "holds": false});
    };
    let ext = setting.ext();
    let ring = ext.ring();
    let zs: Vec<_> = (0..ext.degree() as u64).map(|k| ring.pow(&ext.theta(), k)).collect();
    let holds = localize_cover_with(setting, pkg, &u, &zs)
        .ok()
        .flatten()
        .is_some_and(|c| c.verify(setting, pkg));
    json!({"u": coords(setting, &u), "holds": holds})
}

fn spectrum_body(spec: &FiniteSpectrum) -> (Value, bool) {
    let chains = chain_decomposition(spec);
    let report = fg_conditions(spec);
    let restriction = restriction_check(spec);
    let ok = chains_hold(spec, &chains) && report.condition_iv && report.condition_v && restriction;
    let body = json!({
        "spectrum": spec.to_json(),
        "chains": chains,
        "fg_conditions": report,
        "restriction": restriction,
    });
    (body, ok)
}

fn merge(target: &mut Value, extra: Value) {
    let target = target.as_object_mut().unwrap();
    for (k, v) in extra.as_object().unwrap() {
        target.insert(k.clone(), v.clone());
    }
}

/// Spectrum of `A[η]` for the generator of a number-field setting.
pub fn spectrum_engine_payload(input: &FieldInput, seed: u64, setting: &Setting, pkg: &Package) -> Result<Value> {
    let spec = crate::spectrum::spectrum_of(setting, pkg).map_err(|e| e.at_stage("spectrum"))?;
    let (body, ok) = spectrum_body(&spec);
    let ii = condition_ii(setting, pkg, &fg_conditions(&spec));
    let ii_holds = ii["holds"] == json!(true);
    let mut input_json = input.to_json();
    input_json["seed"] = json!(seed);
    input_json["base"] = json!("padic");
    let mut out = json!({
        "kind": "spectrum",
        "input": input_json,
        "generator": generator_json(setting, pkg),
        "condition_ii": ii,
        "verified": ok && ii_holds && check_package(setting, pkg).is_empty(),
    });
    merge(&mut out, body);
    Ok(out)
}

/// Spectrum of `A[X]/(h)` over the x-adic or composite base, `n` given by
/// the index of a factor of `h` at the maximal ideal.
pub fn direct_spectrum(base: BaseChain, h: &[RatFun], node: usize) -> Result<FiniteSpectrum> {
    let hp = ratfun_poly(h.to_vec());
    let top = crate::spectrum::top_factors(&base.descriptor(), &hp).map_err(|e| e.at_stage("spectrum"))?;
    let Some(chosen) = top.get(node) else {
        return Err(Error::InvalidInput(format!(
            "node index {node} out of range; h has {} factors at the maximal ideal",
            top.len()
        ))
        .at_stage("spectrum"));
    };
    enumerate_spectrum(&base.descriptor(), &hp, chosen).map_err(|e| e.at_stage("spectrum"))
}

pub fn spectrum_direct_payload(spec: &FiniteSpectrum, node: usize) -> Value {
    let (body, ok) = spectrum_body(spec);
    let mut out = json!({
        "kind": "spectrum",
        "input": {
            "base": spec.base(),
            "h": spec.h().coeffs().iter().map(RatFun::to_wire).collect::<Vec<_>>(),
            "node": node,
        },
        "generator": Value::Null,
        "condition_ii": Value::Null,
        "verified": ok,
    });
    merge(&mut out, body);
    out
}

/// Rebuilds the spectrum from its embedded base, `h` and distinguished
/// factor and recomputes every flag.
fn reverify_spectrum(v: &Value) -> Result<bool> {
    let embedded_spec = field(v, "spectrum")?;
    let base: BaseChain = serde_json::from_value(field(embedded_spec, "base")?.clone())
        .map_err(|e| Error::InvalidInput(format!("spectrum base: {e}")))?;
    let h: Vec<String> = parsed(embedded_spec, "h")?;
    let h = h
        .iter()
        .map(|c| RatFun::from_wire(c).ok_or_else(|| Error::InvalidInput(format!("bad coefficient {c}"))))
        .collect::<Result<Vec<_>>>()?;
    let nodes = field(embedded_spec, "nodes")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("`nodes` is not a list".into()))?;
    let d = u64_field(embedded_spec, "distinguished")? as usize;
    let node = nodes
        .get(d)
        .ok_or_else(|| Error::InvalidInput("distinguished index out of range".into()))?;
    let factor = match base {
        BaseChain::Xadic => FiberFactor::Rational(Poly::new(parsed(node, "factor")?)),
        _ => FiberFactor::Modular(Poly::new(parsed(node, "factor")?)),
    };
    let spec = enumerate_spectrum(&base.descriptor(), &ratfun_poly(h), &factor)?;
    if &spec.to_json() != embedded_spec {
        return Ok(false);
    }
    let (body, ok) = spectrum_body(&spec);
    if body["chains"] != v["chains"] || body["fg_conditions"] != v["fg_conditions"] {
        return Ok(false);
    }
    if v["generator"].is_null() {
        return Ok(ok);
    }
    let (setting, pkg) = embedded(v)?;
    let ii = condition_ii(&setting, &pkg, &fg_conditions(&spec));
    Ok(ok && ii == v["condition_ii"] && ii["holds"] == json!(true) && check_package(&setting, &pkg).is_empty())
}

pub fn uniformize_payload(name: &str, seed: u64, report: &std::result::Result<PipelineReport, Error>) -> Value {
    let input = json!({"entry": name, "seed": seed});
    match report {
        Ok(r) => json!({
            "kind": "uniformize",
            "input": input,
            "report": r,
            "rejection": Value::Null,
            "verified": r.verified(),
        }),
        Err(e) => json!({
            "kind": "uniformize",
            "input": input,
            "report": Value::Null,
            "rejection": error_fields(e),
            "verified": false,
        }),
    }
}

fn reverify_uniformize(v: &Value) -> Result<bool> {
    let input = field(v, "input")?;
    let name = field(input, "entry")?
        .as_str()
        .ok_or_else(|| Error::InvalidInput("`entry` is not a string".into()))?;
    let e = entry(name).ok_or_else(|| Error::InvalidInput(format!("unknown entry {name}")))?;
    let again = run_pipeline(e, u64_field(input, "seed")?);
    let same = match &again {
        Ok(r) => serde_json::to_value(r).unwrap() == v["report"],
        Err(e) => error_fields(e) == v["rejection"],
    };
    Ok(same && again.is_ok_and(|r| r.verified()))
}

pub fn verify_all_payload(seed: u64, quick: bool, sequential: bool, timings: bool, outcomes: &[SuiteOutcome]) -> Value {
    let suites: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut s = json!({
                "name": o.name,
                "instances": o.instances,
                "checks": o.checks,
                "failure_count": o.failure_count,
                "failures": o.failures,
                "passed": o.passed(),
            });
            if timings {
                s["millis"] = json!(o.millis);
            }
            s
        })
        .collect();
    json!({
        "kind": "verify_all",
        "input": {"seed": seed, "quick": quick, "sequential": sequential},
        "suites": suites,
        "verified": outcomes.iter().all(SuiteOutcome::passed),
    })
}

fn reverify_verify_all(v: &Value) -> Result<bool> {
    let suites = field(v, "suites")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("`suites` is not a list".into()))?;
    let mut all = !suites.is_empty();
    for s in suites {
        let passed = u64_field(s, "failure_count")? == 0 && u64_field(s, "checks")? > 0;
        if s["passed"] != json!(passed) {
            return Ok(false);
        }
        all &= passed;
    }
    Ok(all)
}

/// The value the payload's `verified` flag should carry, recomputed from
/// its embedded data.
pub fn reverify(v: &Value) -> Result<bool> {
    let kind = field(v, "kind")?.as_str().unwrap_or_default();
    match kind {
        "split" => reverify_split(v),
        "hensel_gen" => {
            let (setting, pkg) = embedded(v)?;
            Ok(check_package(&setting, &pkg).is_empty())
        }
        "check" => reverify_check(v),
        "cover" => reverify_cover(v),
        "triple" => reverify_triple(v),
        "spectrum" => reverify_spectrum(v),
        "uniformize" => reverify_uniformize(v),
        "verify_all" => reverify_verify_all(v),
        other => Err(Error::InvalidInput(format!("unknown payload kind `{other}`"))),
    }
}

/// Stage, message and witness of an error.
pub fn error_fields(e: &Error) -> Value {
    let (stage, inner) = match e {
        Error::Stage { stage, source } => (stage.as_str(), source.as_ref()),
        other => ("input", other),
    };
    let witness = match inner {
        Error::InvalidInput(_) | Error::Precondition(_) | Error::Unsupported(_) | Error::NoProperPrime => None,
        Error::NotIntegral(s) | Error::InvalidWitness(s) | Error::Domain(s) => Some(s.clone()),
        Error::Separability { modulus } | Error::Ramified { modulus } => Some(modulus.clone()),
        Error::NoCenter { witness } => Some(witness.clone()),
        Error::UnsupportedDegree { degree, .. } => Some(degree.to_string()),
        Error::DegenerateLift { retries } => Some(retries.to_string()),
        Error::NotHenselian { multiplicity } => Some(multiplicity.to_string()),
        Error::Stage { .. } => None,
    };
    json!({"stage": stage, "error": inner.to_string(), "witness": witness})
}

pub fn error_payload(e: &Error) -> Value {
    let mut v = json!({"kind": "error"});
    merge(&mut v, error_fields(e));
    v
}

/// Indented `key: value` rendering of a payload.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let parts: Vec<String> = a.iter().map(|x| scalar(x).unwrap()).collect();
            Some(format!("({})", parts.join(", ")))
        }
        _ => None,
    }
}

fn write_text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        write_text(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}[{i}] {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}[{i}]").unwrap();
                        write_text(out, x, depth + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_fp::DEFAULT_SEED;
    use crate::engine::construct_generator;

    fn sqrt2(node: usize) -> FieldInput {
        FieldInput {
            f: vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)],
            p: 7,
            node,
            precision_start: 8,
        }
    }

    #[test]
    fn parsing() {
        let v: Vec<BigRational> = parse_list("1/2, -3,0", "x").unwrap();
        assert_eq!(strings(&v), ["1/2", "-3", "0"]);
        assert!(parse_list::<BigInt>("1,,2", "x").is_err());
        assert_eq!(parse_elements("0,1;1,1").unwrap().len(), 2);
        assert_eq!(parse_ratfuns("-2:-1,0,1", "h").unwrap()[0].to_wire(), "-2:-1");
    }

    #[test]
    fn split_and_generator_round_trip() {
        let v = split_payload(&sqrt2(0)).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
        assert_eq!(v["nodes"][0]["label"], "(7, θ - 3)");
        assert!(reverify(&v).unwrap());

        let input = sqrt2(0);
        let s = input.setting().unwrap();
        let pkg = construct_generator(&s, DEFAULT_SEED).unwrap();
        assert_eq!(generator_from_json(&s, &generator_json(&s, &pkg)).unwrap(), pkg);
        let v = hensel_gen_payload(&input, DEFAULT_SEED, &s, &pkg);
        assert_eq!(v["generator"]["eta"], json!(["5", "4"]));
        assert_eq!(v["generator"]["h"], json!(["-7", "-10", "1"]));
        assert!(reverify(&v).unwrap());

        let mut tampered = v.clone();
        tampered["generator"]["eta"] = json!(["5", "3"]);
        assert!(!reverify(&tampered).unwrap());
    }

    #[test]
    fn split_tamper() {
        let mut v = split_payload(&sqrt2(0)).unwrap();
        v["nodes"][0]["factor"] = json!(["3", "1"]);
        assert!(!reverify(&v).unwrap());
    }

    #[test]
    fn error_shape() {
        let e = Error::Separability { modulus: "2".into() }.at_stage("split");
        let v = error_payload(&e);
        assert_eq!(v["stage"], "split");
        assert_eq!(v["witness"], "2");
    }

    #[test]
    fn text_rendering() {
        let t = to_text(&json!({"a": [1, 2], "b": {"c": null}}));
        assert_eq!(t, "a: (1, 2)\nb:\n  c: -\n");
    }
}
