//! Library output against the brute-force oracles on seeded random rings.

mod support;

use std::collections::BTreeSet;

use curvegr::criteria::BFVerdict;
use curvegr::ring::{make_reduction, ring_build, BuildOptions, CurveRing};
use curvegr::{
    analyze, sg_from_generators, sg_three_gen_ci, AnalysisOptions, AnalysisReport, Field,
    TruncatedSeries,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use support::instances::{sample, Instance};
use support::oracle::{self, Dense, Sumset};

const BIG_PRIME: u64 = 2_147_483_647;

fn build(inst: &Instance, field: Field) -> CurveRing {
    let gens = inst.generators();
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    ring_build(field, &refs, BuildOptions::default()).unwrap()
}

fn report(ring: &CurveRing) -> AnalysisReport {
    analyze(ring, &AnalysisOptions::default()).unwrap()
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn to_dense(f: &TruncatedSeries, n: usize) -> Vec<u64> {
    let modp = |x: &BigInt| x.mod_floor(&BigInt::from(oracle::P)).to_u64().unwrap();
    let mut v = vec![0; n];
    for (k, c) in f.terms().iter().filter(|(k, _)| (*k as usize) < n) {
        let (num, den) = c.as_fraction().unwrap();
        v[*k as usize] = oracle::divide(modp(&num), modp(&den));
    }
    v
}

#[test]
fn oracles_agree_on_monomial_rings() {
    for inst in sample(11, 25, 0, 0) {
        let n = inst.window();
        let s = Sumset::new(&inst.base, n as u32);
        let d = Dense::new(&inst.terms, n, inst.e() + 1);
        assert_eq!(s.apery(), d.apery(), "{:?}", inst.base);
        let r = s.reduction_number();
        assert_eq!(r, d.reduction_number(), "{:?}", inst.base);
        for i in 0..=r + 1 {
            assert_eq!(s.power(i), d.values(i), "{:?} i={i}", inst.base);
        }
    }
}

#[test]
fn monomial_rings_match_sumset_oracle() {
    for inst in sample(12, 120, 0, 0) {
        let ring = build(&inst, Field::Rational);
        let rep = report(&ring);
        let s = Sumset::new(&inst.base, inst.window() as u32);
        let [b, c, a, hilb_r, hilb_mod] = s.invariants();
        let p = &rep.invariants;
        let tag = format!("{:?}", inst.base);
        assert_eq!(ring.apery(), s.apery().as_slice(), "{tag}");
        assert_eq!(p.r, s.reduction_number(), "{tag}");
        for (i, ap) in p.power_apery.iter().enumerate() {
            assert_eq!(ap, &s.apery_of(&s.power(i as u32)), "{tag} i={i}");
        }
        assert_eq!((&p.b, &p.c, &p.a), (&b, &c, &a), "{tag}");
        assert_eq!((&p.hilb_r, &p.hilb_mod), (&hilb_r, &hilb_mod), "{tag}");
        assert_eq!(p.eps, sorted(&a), "{tag}");
        assert_eq!(rep.bf.verdict, BFVerdict::Holds, "{tag}");
    }
}

#[test]
fn perturbed_rings_match_dense_oracle() {
    for inst in sample(13, 0, 60, 6) {
        let ring = build(&inst, Field::Rational);
        let rep = report(&ring);
        let d = Dense::new(&inst.terms, inst.window(), inst.e() + 1);
        let x: oracle::Terms = vec![(inst.e(), 1)];
        let tag = inst.generators().join(", ");
        let p = &rep.invariants;
        assert_eq!(ring.apery(), d.apery().as_slice(), "{tag}");
        let r = d.reduction_number();
        assert_eq!(p.r, r, "{tag}");
        for i in 0..=r + 1 {
            let ap: Vec<u32> = (0..inst.e())
                .map(|j| *d.values(i).iter().find(|&&v| v % inst.e() == j).unwrap())
                .collect();
            assert_eq!(p.power_apery[i as usize], ap, "{tag} i={i}");
        }
        let b: Vec<u32> = d.apery().iter().map(|&w| d.vord(w)).collect();
        assert_eq!(p.b, b, "{tag}");
        assert_eq!(p.c, d.c(&x, r), "{tag}");
        let (a, eps) = d.a_eps(&x, r);
        assert_eq!((&p.a, &p.eps), (&a, &eps), "{tag}");
        assert_eq!(p.hilb_r, d.hilb_r(r), "{tag}");
    }
}

#[test]
fn bf_certificates_hold_in_the_dense_oracle() {
    let mut certified = 0;
    for inst in sample(14, 0, 40, 6) {
        let ring = build(&inst, Field::Rational);
        let rep = report(&ring);
        if !rep.bf.holds {
            continue;
        }
        certified += 1;
        let n = inst.window();
        let d = Dense::new(&inst.terms, n, inst.e() + 1);
        let x = to_dense(&make_reduction(&ring, &rep.bf.reduction).unwrap().x, n);
        for cert in &rep.bf.certificates {
            let f = ring.parse(&rep.bf.basis[cert.class as usize]).unwrap();
            let mut g = to_dense(&f, n);
            for _ in 0..cert.h {
                g = oracle::mul(&g, &x);
            }
            assert_eq!(g.iter().position(|&c| c != 0), Some(cert.value as usize));
            assert!(d.in_power(&g, cert.i), "{:?}: {cert:?}", inst.generators());
        }
    }
    assert!(certified > 0);
}

#[test]
fn rational_and_prime_fields_agree() {
    for inst in sample(15, 20, 40, 6) {
        let q = build(&inst, Field::Rational);
        let p = build(&inst, Field::prime(BIG_PRIME).unwrap());
        let tag = inst.generators().join(", ");
        assert_eq!(q.apery(), p.apery(), "{tag}");
        let (rq, rp) = (report(&q), report(&p));
        assert_eq!(
            rq.invariants.power_apery, rp.invariants.power_apery,
            "{tag}"
        );
        assert_eq!(
            (
                &rq.invariants.a,
                &rq.invariants.b,
                &rq.invariants.c,
                &rq.invariants.eps
            ),
            (
                &rp.invariants.a,
                &rp.invariants.b,
                &rp.invariants.c,
                &rp.invariants.eps
            ),
            "{tag}"
        );
        assert_eq!(rq.cm.cm, rp.cm.cm, "{tag}");
    }
}

#[test]
fn analysis_report_round_trips_through_json() {
    for inst in sample(16, 10, 10, 6) {
        let rep = report(&build(&inst, Field::Rational));
        let text = serde_json::to_string(&rep).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
    }
}

fn gaps(gens: &[u32], bound: u32) -> BTreeSet<u32> {
    let s = Sumset::new(gens, bound);
    (0..bound).filter(|v| !s.s.contains(v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_generated_ci_iff_symmetric(a in 3u32..20, b in 3u32..40, c in 3u32..60) {
        let Ok(s) = sg_from_generators(&[a, b, c]) else { return Ok(()) };
        prop_assume!(s.minimal_generators().len() == 3 && s.frobenius() <= 60);
        let g = gaps(s.minimal_generators(), 200);
        let f = *g.iter().max().unwrap();
        let symmetric = g.iter().all(|&x| !g.contains(&(f - x)));
        let ci = sg_three_gen_ci(&s).unwrap();
        prop_assert_eq!(ci.is_ci, symmetric);
        prop_assert_eq!(s.is_symmetric(), symmetric);
    }
}

#[test]
fn descent_basis_certifies_bf_when_cm_and_divisible() {
    let mut checked = 0;
    for inst in sample(17, 80, 80, 6) {
        let rep = report(&build(&inst, Field::Rational));
        if let Some(d) = &rep.checks.descent {
            checked += 1;
            assert!(d.certified, "{:?}: {:?}", inst.generators(), d.anomaly);
        }
    }
    assert!(checked > 0);
}
