#![allow(dead_code)]

use iwasawa_core::hypothesis::{NewformRecord, TwistQuery};
use iwasawa_core::lambda::{cyclotomic_phi, DistinguishedPoly, LambdaSeries};
use iwasawa_core::module::ElementaryModule;
use proptest::prelude::*;
use rand::Rng;

/// Irreducible distinguished polynomials over Z_3 of degree <= 3 (Eisenstein or `X`).
pub fn pool() -> Vec<DistinguishedPoly> {
    vec![
        DistinguishedPoly::x(3).unwrap(),
        DistinguishedPoly::from_i64(3, &[3, 1]).unwrap(),
        cyclotomic_phi(1, 3).unwrap(),
        DistinguishedPoly::from_i64(3, &[3, 6, 1]).unwrap(),
        DistinguishedPoly::from_i64(3, &[3, 3, 0, 1]).unwrap(),
    ]
}

pub fn poly_from_low(p: u64, low: &[i64]) -> DistinguishedPoly {
    let mut c: Vec<i64> = low.iter().map(|x| x * p as i64).collect();
    c.push(1);
    DistinguishedPoly::from_i64(p, &c).unwrap()
}

// proptest strategies

pub fn distinguished(p: u64, max_deg: usize) -> impl Strategy<Value = DistinguishedPoly> {
    prop::collection::vec(-4i64..=4, 1..=max_deg).prop_map(move |low| poly_from_low(p, &low))
}

pub fn pool_poly() -> impl Strategy<Value = DistinguishedPoly> {
    prop::sample::select(pool())
}

pub fn torsion_module() -> impl Strategy<Value = ElementaryModule> {
    (prop::collection::vec(1u32..=3, 0..=2), prop::collection::vec((pool_poly(), 1u32..=3), 0..=3))
        .prop_map(|(mu, parts)| ElementaryModule::torsion(3, &mu, &parts).unwrap())
}

pub fn series(p: u64) -> impl Strategy<Value = LambdaSeries> {
    (1u32..=8, 1usize..=16).prop_flat_map(move |(a, b)| {
        let m = p.pow(a) as i128;
        prop::collection::vec(0..m, b)
            .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
            .prop_map(move |c| LambdaSeries::new(p, a, b, &c).unwrap())
    })
}

// seeded generators for the acceptance run

pub fn random_module<R: Rng>(rng: &mut R) -> ElementaryModule {
    let pool = pool();
    let mu: Vec<u32> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(1..=3)).collect();
    let parts: Vec<(DistinguishedPoly, u32)> = (0..rng.gen_range(0..=3))
        .map(|_| (pool[rng.gen_range(0..pool.len())].clone(), rng.gen_range(1..=3)))
        .collect();
    ElementaryModule::torsion(3, &mu, &parts).unwrap()
}

/// Pairs that agree on the part under test about half the time.
pub fn random_pair<R: Rng>(rng: &mut R) -> (ElementaryModule, ElementaryModule) {
    let u = random_module(rng);
    let v = if rng.gen_bool(0.5) {
        random_module(rng)
    } else {
        // perturb only one kind of summand
        let extra = random_module(rng);
        let keep_p = rng.gen_bool(0.5);
        let mu: Vec<u32> = if keep_p { u.mu_exponents().to_vec() } else { extra.mu_exponents().to_vec() };
        let mut parts: Vec<(DistinguishedPoly, u32)> =
            u.torsion_parts().iter().map(|t| (t.poly.clone(), t.beta)).collect();
        if keep_p {
            parts.extend(extra.torsion_parts().iter().map(|t| (t.poly.clone(), t.beta)));
        }
        ElementaryModule::torsion(3, &mu, &parts).unwrap()
    };
    (u, v)
}

pub fn random_series<R: Rng>(rng: &mut R) -> LambdaSeries {
    let p: u64 = if rng.gen_bool(0.5) { 3 } else { 5 };
    let a = rng.gen_range(1..=8);
    let b = rng.gen_range(1..=16);
    let m = p.pow(a) as i128;
    loop {
        // bias towards p-divisible coefficients so mu and lambda vary
        let coeffs: Vec<i128> = (0..b)
            .map(|_| {
                let c = rng.gen_range(0..m);
                if rng.gen_bool(0.5) { c * p as i128 % m } else { c }
            })
            .collect();
        if coeffs.iter().any(|&c| c != 0) {
            return LambdaSeries::new(p, a, b, &coeffs).unwrap();
        }
    }
}

pub fn random_distinguished<R: Rng>(rng: &mut R, p: u64, max_deg: usize) -> DistinguishedPoly {
    let d = rng.gen_range(1..=max_deg);
    let low: Vec<i64> = (0..d).map(|_| rng.gen_range(-4..=4)).collect();
    poly_from_low(p, &low)
}

const SMALL_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// A valid record and an admissible query for it.
pub fn random_record_query<R: Rng>(rng: &mut R) -> (NewformRecord, TwistQuery) {
    loop {
        let primes: Vec<u64> = SMALL_PRIMES.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
        if primes.is_empty() {
            continue;
        }
        let level: u64 = primes.iter().product();
        let conductor: u64 = primes.iter().filter(|_| rng.gen_bool(0.5)).product();
        let weight = rng.gen_range(2..=12);
        let p = *[3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 61, 97]
            .get(rng.gen_range(0..15))
            .unwrap();
        if level % p == 0 {
            continue;
        }
        let record = NewformRecord::new(format!("{level}.{weight}.{conductor}"), level, weight, conductor).unwrap();
        return (record, TwistQuery { p, i: rng.gen_range(0..=weight) });
    }
}
