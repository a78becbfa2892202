//! Randomized invariants across the crate.

use std::collections::BTreeSet;

use henselkit::arith::factor_fp::factor_mod_p;
use henselkit::arith::factor_q::factor_over_rationals;
use henselkit::arith::modular::PrimeField;
use henselkit::arith::poly::Poly;
use henselkit::arith::ratfun::RatFun;
use henselkit::arith::ring::{int_rat, Ring};
use henselkit::engine::{
    certify_by_conjugates, check_package, conductor_check, construct_generator, reciprocal_certificate, HenselVerdict,
    LocalSetting,
};
use henselkit::number_field::NumberField;
use henselkit::spectrum::{
    chain_decomposition, enumerate_spectrum, fg_conditions, fiber_by_root_search, ratfun_poly, restriction_check,
    top_factors, width, FiberFactor,
};
use henselkit::valuation::{valuate, FieldElement, LocalBase, PadicBase, ValuedFieldDescriptor};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::Value;

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn monic(lower: Vec<i64>) -> Vec<i64> {
    let mut cs = lower;
    cs.push(1);
    cs
}

fn monic_poly(max_degree: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_degree).prop_map(monic)
}

fn irreducible(cs: &[i64]) -> bool {
    factor_over_rationals(&Poly::<BigRational>::from_i64s(cs)).is_ok_and(|f| f.is_irreducible())
}

fn constant_ratfun_poly(cs: &[i64]) -> Poly<RatFun> {
    ratfun_poly(cs.iter().map(|&c| RatFun::constant(int_rat(c))).collect())
}

fn qpoly(max_degree: usize) -> impl Strategy<Value = Poly<BigRational>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 1..=max_degree + 1).prop_map(|cs| {
        Poly::new(
            cs.into_iter()
                .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    })
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (qpoly(3), qpoly(2)).prop_filter_map("nonzero denominator", |(n, d)| RatFun::from_parts(&n, &d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratfun_wire_round_trip(a in ratfun()) {
        prop_assert_eq!(RatFun::from_wire(&a.to_wire()), Some(a));
    }

    #[test]
    fn fp_factorization_expands_back(cs in prop::collection::vec(0u64..13, 2..=7), pi in 0usize..6) {
        let p = SMALL_PRIMES[pi];
        let field = PrimeField::new(p).unwrap();
        let f = Poly::new(cs.iter().map(|c| c % p).collect::<Vec<_>>());
        prop_assume!(f.deg() >= 1);
        let fac = factor_mod_p(&f, &field).unwrap();
        prop_assert_eq!(fac.expand(&field), f);
        for (g, _) in &fac.factors {
            let again = factor_mod_p(g, &field).unwrap();
            prop_assert!(again.factors.len() == 1 && again.factors[0].1 == 1);
        }
    }

    /// Fibers match root search, primes in one fiber are incomparable, and
    /// the chain decomposition has exactly `width` chains.
    #[test]
    fn padic_spectra(cs in monic_poly(4), pi in 0usize..6) {
        prop_assume!(irreducible(&cs));
        let p = SMALL_PRIMES[pi];
        let desc = ValuedFieldDescriptor::PadicQ { p };
        let h = constant_ratfun_poly(&cs);
        let top = top_factors(&desc, &h).unwrap();
        let reduced: Vec<u64> = cs.iter().map(|&c| PrimeField::new(p).unwrap().reduce_i64(c)).collect();
        let oracle = fiber_by_root_search(&reduced, p, 4);
        let ours: BTreeSet<Vec<u64>> = top
            .iter()
            .map(|f| match f {
                FiberFactor::Modular(g) => g.coeffs().to_vec(),
                FiberFactor::Rational(_) => unreachable!(),
            })
            .collect();
        prop_assert_eq!(&ours, &oracle);
        for chosen in &top {
            let spec = enumerate_spectrum(&desc, &h, chosen).unwrap();
            for (i, a) in spec.nodes().iter().enumerate() {
                for (j, b) in spec.nodes().iter().enumerate() {
                    if i != j && a.level == b.level {
                        prop_assert!(!spec.leq(i, j));
                    }
                }
            }
            let chains = chain_decomposition(&spec);
            prop_assert_eq!(chains.len(), width(&spec));
            prop_assert!(chains.len() <= h.deg());
            prop_assert!((0..spec.len()).all(|i| chains.iter().any(|c| c.contains(&i))));
            prop_assert!(restriction_check(&spec));
            let report = fg_conditions(&spec);
            prop_assert!(report.condition_iv && report.condition_v);
        }
    }

    #[test]
    fn composite_valuation_is_additive(a in ratfun(), b in ratfun(), pi in 0usize..6) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let desc = ValuedFieldDescriptor::CompositeTP { p: SMALL_PRIMES[pi] };
        let f = henselkit::arith::ratfun::RationalFunctions;
        let va = valuate(&desc, &FieldElement::RationalFunction(a.clone())).unwrap();
        let vb = valuate(&desc, &FieldElement::RationalFunction(b.clone())).unwrap();
        let vab = valuate(&desc, &FieldElement::RationalFunction(f.mul(&a, &b))).unwrap();
        prop_assert_eq!(vab, &va + &vb);
    }
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).all(|d| k % d != 0)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Generator invariants at every node, the conductor bound on `θ`, and
    /// reciprocal certificates of unit henselian elements.
    #[test]
    fn generators_at_every_node(
        lower in prop::collection::vec(-12i64..=12, 1..=2),
        pi in 0usize..11,
        seed in any::<u64>(),
    ) {
        let cs = monic(lower);
        prop_assume!(irreducible(&cs));
        let p = primes_upto(31)[pi];
        let k = NumberField::new(&Poly::<BigInt>::from_i64s(&cs)).unwrap();
        let setting = LocalSetting::new(k, PadicBase::new(p).unwrap(), 0);
        prop_assume!(setting.is_ok());
        let setting = setting.unwrap();
        for node in 0..setting.nodes().len() {
            let s = setting.choose(node).unwrap();
            let pkg = construct_generator(&s, seed).unwrap();
            prop_assert!(check_package(&s, &pkg).is_empty());
            let theta = s.ext().theta();
            prop_assert!(conductor_check(&s, &pkg, &theta).unwrap().integral);
            if let HenselVerdict::Henselian(c) = certify_by_conjugates(&s, &pkg.eta).unwrap() {
                prop_assert!(c.verify(&s));
                if s.chosen().valuation(&c.element) == Some(0) {
                    match reciprocal_certificate(&s, &c).unwrap() {
                        HenselVerdict::Henselian(r) => prop_assert!(r.verify(&s)),
                        HenselVerdict::Rejected(r) => prop_assert!(false, "reciprocal rejected: {}", r.reason),
                    }
                }
            } else {
                prop_assert!(false, "eta was not certified");
            }
            prop_assert!(s.base().is_integral(&pkg.min_poly.coeffs()[0]));
        }
    }

    /// Identical invocations print identical bytes, and the payload's
    /// `verified` flag recomputes from the payload alone.
    #[test]
    fn cli_is_reproducible(d in 2i64..40, seed in any::<u64>(), node in 0usize..2) {
        prop_assume!(irreducible(&[-d, 0, 1]));
        let f = format!("{},0,1", -d);
        let seed = seed.to_string();
        let node = node.to_string();
        let args = ["henselkit", "hensel-gen", "-f", &f, "-p", "7", "--node", &node, "--seed", &seed];
        let first = henselkit::cli::run(args);
        prop_assert_eq!(&first, &henselkit::cli::run(args));
        if first.code == 0 {
            let v: Value = serde_json::from_str(&first.stdout).unwrap();
            prop_assert!(henselkit::wire::reverify(&v).unwrap());
        } else {
            prop_assert_eq!(first.code, 2);
        }
    }
}
