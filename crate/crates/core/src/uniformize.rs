//! A worked end-to-end instance over the regular local ring `ℚ[x]_(x)`:
//! a henselian generator of a function field `F = ℚ(x)[Y]/(q)` at one
//! extension of the `x`-adic valuation, a localizing element `u`, and the
//! certificate that `R′ = A[η]` localized at the chosen prime is again
//! regular.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::factor_fp::DEFAULT_SEED;
use crate::arith::poly::{render, Poly};
use crate::arith::ratfun::RatFun;
use crate::arith::ring::int_rat;
use crate::engine::{check_package, construct_generator, localize_cover, LocalSetting};
use crate::error::{Error, Result};
use crate::number_field::FunctionField;
use crate::spectrum::ratfun_poly;
use crate::valuation::{LocalBase, XadicBase};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityCertificate {
    pub base: &'static str,
    pub dimension: usize,
    pub maximal_ideal: &'static str,
    /// The witness `h ∈ A[Y]`, constant-first.
    pub h: Vec<String>,
    /// Monic factors of `h mod x` over ℚ with multiplicities.
    pub residue_factorization: Vec<(Vec<String>, usize)>,
    /// Minimal polynomial of the residue of `η`.
    pub chosen: Vec<String>,
    pub multiplicity: usize,
    /// `R′/xR′` is a field, i.e. the chosen factor is simple.
    pub regular: bool,
}

fn strings<E: ToString>(p: &Poly<E>) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn xadic_strings(p: &Poly<RatFun>) -> Vec<String> {
    p.coeffs().iter().map(|c| XadicBase.render(c)).collect()
}

/// Factors `h mod x` over ℚ and checks that `g`, the minimal polynomial of
/// the residue of `η`, occurs exactly once.
pub fn regularity_transfer(h: &Poly<RatFun>, g: &Poly<BigRational>) -> Result<RegularityCertificate> {
    let Some(lead) = h.leading() else {
        return Err(Error::InvalidInput("h is zero".into()));
    };
    if h.deg() == 0 || XadicBase.reduce(lead) != Some(int_rat(1)) || !lead.is_polynomial() {
        return Err(Error::InvalidInput("h must be monic of positive degree".into()));
    }
    let reduced = h
        .coeffs()
        .iter()
        .map(|c| XadicBase.reduce(c))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotIntegral("h has a coefficient with a pole at x = 0".into()))?;
    let reduced = crate::arith::poly::qpoly_ring().from_coeffs(reduced);
    let factors = XadicBase.factor_residue(&reduced)?;
    let Some(&(_, multiplicity)) = factors.iter().find(|(f, _)| f == g) else {
        return Err(Error::InvalidInput(format!(
            "{} is not a factor of h mod x",
            render(g, "Y")
        )));
    };
    if multiplicity > 1 {
        return Err(Error::NotHenselian { multiplicity });
    }
    Ok(RegularityCertificate {
        base: "Q[x]_(x)",
        dimension: 1,
        maximal_ideal: "x",
        h: xadic_strings(h),
        residue_factorization: factors.iter().map(|(f, m)| (strings(f), *m)).collect(),
        chosen: strings(g),
        multiplicity,
        regular: true,
    })
}

/// A fixed function field together with the extension of the valuation to
/// use and the elements to cover.
#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: &'static str,
    /// `q(x, Y)` as constant-first lists of `ℚ[x]` coefficients.
    pub q: &'static [&'static [i64]],
    /// The residue of `Y` at the chosen extension is a root of this factor.
    pub node_factor: &'static [i64],
    /// Each list `c` contributes `1/(c₀ + c₁Y + …)`; `Y` is always covered.
    pub inverses: &'static [&'static [i64]],
    pub note: &'static str,
}

pub const CATALOGUE: &[CatalogueEntry] = &[
    CatalogueEntry {
        name: "sqrt(1+x)",
        q: &[&[-1, -1], &[0], &[1]],
        node_factor: &[-1, 1],
        inverses: &[&[1, 1], &[2, 1]],
        note: "Y^2 - (1 + x): two extensions, Y -> 1 and Y -> -1; take Y -> 1",
    },
    CatalogueEntry {
        name: "inert quadratic",
        q: &[&[-2], &[0], &[1]],
        node_factor: &[-2, 0, 1],
        inverses: &[&[0, 1], &[1, 1]],
        note: "Y^2 - 2: residue field Q(sqrt 2), a single extension",
    },
    CatalogueEntry {
        name: "split cubic",
        q: &[&[0, 1], &[-1], &[0], &[1]],
        node_factor: &[-1, 1],
        inverses: &[&[0, 1], &[1, 1]],
        note: "Y^3 - Y + x: three extensions, Y -> 0, 1, -1; take Y -> 1",
    },
    CatalogueEntry {
        name: "ramified",
        q: &[&[0, -1], &[0], &[1]],
        node_factor: &[0, 1],
        inverses: &[],
        note: "Y^2 - x: x ramifies, rejected when splitting",
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogueEntry> {
    CATALOGUE.iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorSummary {
    pub eta: Vec<String>,
    pub min_poly: Vec<String>,
    pub l: usize,
    pub g: Vec<String>,
    pub attempts: usize,
    pub invariants_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverSummary {
    pub u: Vec<String>,
    /// `(z, m, coordinates of u^m z on the powers of η)`.
    pub entries: Vec<(Vec<String>, u32, Vec<String>)>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub entry: String,
    pub seed: u64,
    /// Defining polynomial `q` of `F`, constant-first.
    pub extension: Vec<String>,
    pub node: usize,
    pub node_factor: Vec<String>,
    pub generator: GeneratorSummary,
    pub cover: CoverSummary,
    pub regularity: RegularityCertificate,
}

fn ratfun_of(cs: &[i64]) -> RatFun {
    RatFun::from_poly(&Poly::<BigRational>::from_i64s(cs))
}

/// Runs split, generator, cover and regularity on a catalogue entry; a
/// failing stage is reported by name.
pub fn run_pipeline(entry: &CatalogueEntry, seed: u64) -> Result<PipelineReport> {
    let q = ratfun_poly(entry.q.iter().map(|c| ratfun_of(c)).collect());
    let want: Poly<BigRational> = Poly::<BigRational>::from_i64s(entry.node_factor);
    let setting = FunctionField::new(q.clone())
        .and_then(|f| LocalSetting::new(f, XadicBase, 0))
        .map_err(|e| e.at_stage("split"))?;
    let Some(node) = setting.nodes().iter().position(|n| n.local_factor() == &want) else {
        return Err(Error::InvalidInput(format!("no extension with residue factor {}", render(&want, "Y"))).at_stage("split"));
    };
    let setting = setting.choose(node).map_err(|e| e.at_stage("split"))?;

    let pkg = construct_generator(&setting, seed).map_err(|e| e.at_stage("construct_generator"))?;
    let invariants_hold = check_package(&setting, &pkg).is_empty();

    let ext = setting.ext();
    let mut zs = vec![ext.theta()];
    for c in entry.inverses {
        let d = ext.from_coords(pad(c, ext.degree())).map_err(|e| e.at_stage("localize_cover"))?;
        let z = ext
            .inv(&d)
            .ok_or_else(|| Error::InvalidInput("element has no inverse".into()).at_stage("localize_cover"))?;
        zs.push(z);
    }
    let cover = localize_cover(&setting, &pkg, &zs).map_err(|e| e.at_stage("localize_cover"))?;
    let verified = cover.verify(&setting, &pkg);

    let regularity = regularity_transfer(&pkg.min_poly, &pkg.g).map_err(|e| e.at_stage("regularity_transfer"))?;
    let render_coords = |a: &Poly<RatFun>| -> Vec<String> { ext.coords(a).iter().map(|c| XadicBase.render(c)).collect() };
    let render_list = |v: &[RatFun]| -> Vec<String> { v.iter().map(|c| XadicBase.render(c)).collect() };
    Ok(PipelineReport {
        entry: entry.name.to_string(),
        seed,
        extension: xadic_strings(&q),
        node,
        node_factor: strings(&want),
        generator: GeneratorSummary {
            eta: render_coords(&pkg.eta),
            min_poly: xadic_strings(&pkg.min_poly),
            l: pkg.l,
            g: strings(&pkg.g),
            attempts: pkg.attempts,
            invariants_hold,
        },
        cover: CoverSummary {
            u: render_coords(&cover.u),
            entries: cover
                .entries
                .iter()
                .map(|e| (render_coords(&e.z), e.exponent, render_list(&e.coords)))
                .collect(),
            verified,
        },
        regularity,
    })
}

fn pad(c: &[i64], n: usize) -> Vec<RatFun> {
    (0..n)
        .map(|i| RatFun::constant(int_rat(c.get(i).copied().unwrap_or(0))))
        .collect()
}

impl PipelineReport {
    /// Every stage's own checks passed.
    pub fn verified(&self) -> bool {
        self.generator.invariants_hold && self.cover.verified && self.regularity.regular
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let list = |v: &[String]| format!("({})", v.join(", "));
        writeln!(s, "entry {} (seed {})", self.entry, self.seed).unwrap();
        writeln!(s, "field      F = Q(x)[Y]/(q), q = {}", list(&self.extension)).unwrap();
        writeln!(
            s,
            "valuation  extension {} of the x-adic valuation, Y mod m a root of {}",
            self.node,
            list(&self.node_factor)
        )
        .unwrap();
        writeln!(
            s,
            "generator  eta = {} with h = {}: h(eta) = 0, h'(eta) a unit, eta generates the residue field [{}]",
            list(&self.generator.eta),
            list(&self.generator.min_poly),
            ok(self.generator.invariants_hold)
        )
        .unwrap();
        writeln!(
            s,
            "cover      u = {}: every listed element lies in A[eta, 1/u], u a unit at the chosen prime [{}]",
            list(&self.cover.u),
            ok(self.cover.verified)
        )
        .unwrap();
        for (z, m, _) in &self.cover.entries {
            writeln!(s, "             u^{m} * {} in A[eta]", list(z)).unwrap();
        }
        writeln!(
            s,
            "regularity h mod x has the chosen factor {} with multiplicity {}: the localization of A[eta] is regular [{}]",
            list(&self.regularity.chosen),
            self.regularity.multiplicity,
            ok(self.regularity.regular)
        )
        .unwrap();
        s
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

/// Runs every catalogue entry; entries expected to be rejected appear as
/// errors.
pub fn run_catalogue(seed: u64) -> Vec<(&'static str, Result<PipelineReport>)> {
    CATALOGUE.iter().map(|e| (e.name, run_pipeline(e, seed))).collect()
}

/// Seed used when none is given.
pub const PIPELINE_SEED: u64 = DEFAULT_SEED;

#[cfg(test)]
mod tests {
    use super::*;

    fn qy(cs: &[i64]) -> Poly<RatFun> {
        ratfun_poly(cs.iter().map(|&c| RatFun::constant(int_rat(c))).collect())
    }

    #[test]
    fn regularity_examples() {
        let h = ratfun_poly(vec![ratfun_of(&[-1, -1]), RatFun::zero(), ratfun_of(&[1])]);
        let c = regularity_transfer(&h, &Poly::<BigRational>::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(c.residue_factorization.len(), 2);
        assert_eq!(c.multiplicity, 1);
        assert!(regularity_transfer(&qy(&[-5, 1]), &Poly::<BigRational>::from_i64s(&[-5, 1])).is_ok());
        let ramified = ratfun_poly(vec![ratfun_of(&[0, -1]), RatFun::zero(), ratfun_of(&[1])]);
        assert_eq!(
            regularity_transfer(&ramified, &Poly::<BigRational>::from_i64s(&[0, 1])),
            Err(Error::NotHenselian { multiplicity: 2 })
        );
    }

    #[test]
    fn catalogue_runs() {
        for (name, result) in run_catalogue(PIPELINE_SEED) {
            match (name, result) {
                ("ramified", Err(Error::Stage { stage, source })) => {
                    assert_eq!(stage, "split");
                    assert!(matches!(*source, Error::Ramified { .. }));
                }
                (_, Ok(r)) => assert!(r.verified(), "{name}"),
                (_, Err(e)) => panic!("{name}: {e}"),
            }
        }
        let r = run_pipeline(entry("inert quadratic").unwrap(), 1).unwrap();
        assert_eq!(r.generator.eta, vec!["0", "1"]);
        assert_eq!(r.regularity.residue_factorization.len(), 1);
    }

    #[test]
    fn deterministic() {
        let e = entry("sqrt(1+x)").unwrap();
        let a = serde_json::to_string(&run_pipeline(e, 9).unwrap()).unwrap();
        let b = serde_json::to_string(&run_pipeline(e, 9).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
