//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use iwasawa_core::greenberg::{chi_glob_level, chi_glob_rational, criterion1_check, criterion2_check, ledger_ratio, SizeLedger};
use iwasawa_core::hypothesis::{check_hcyc, scan, NewformRecord, ScanEntry, TwistQuery, TwistRange, Verdict};
use iwasawa_core::lambda::{cyclotomic_phi, iota_normalize, omega, weierstrass_prepare, DistinguishedPoly};
use iwasawa_core::module::{brute_force_corank, twisted_dual_invariant_corank, DEFAULT_ORACLE_E_MAX};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn verdicts(record: &NewformRecord, p: u64, is: impl Iterator<Item = u64>) -> Vec<Verdict> {
    is.map(|i| check_hcyc(record, &TwistQuery { p, i }).unwrap().verdict).collect()
}

fn c1_example_5_10() -> Check {
    let record = NewformRecord::new("11.4.a.a", 11, 4, 1).unwrap();
    let entries = scan(&record, 10_000, TwistRange::Single(0)).map_err(|e| e.to_string())?;
    let failing: Vec<u64> = entries.iter().filter(|e| e.failed()).map(ScanEntry::p).collect();
    let inadmissible: Vec<u64> =
        entries.iter().filter(|e| matches!(e, ScanEntry::Inadmissible { .. })).map(ScanEntry::p).collect();
    ensure(failing == [3, 5, 61], || format!("failing primes {failing:?}"))?;
    ensure(inadmissible == [11], || format!("inadmissible {inadmissible:?}"))?;
    Ok(format!("{} primes scanned, failing {failing:?}, inadmissible {inadmissible:?}", entries.len()))
}

fn c2_example_5_9() -> Check {
    use Verdict::*;
    let record = NewformRecord::new("13.2.a.a", 13, 2, 13).unwrap();
    for p in [5, 7] {
        let v = verdicts(&record, p, 0..=2);
        ensure(v == [Pass, Fail, Pass], || format!("p = {p}: {v:?}"))?;
    }
    Ok("p = 5 and p = 7: pass/fail/pass".into())
}

fn c3_example_5_11() -> Check {
    let record = NewformRecord::new("10.4.a.a", 10, 4, 5).unwrap();
    let pass: Vec<u64> =
        (0..=4).filter(|&i| check_hcyc(&record, &TwistQuery { p: 7, i }).unwrap().verdict == Verdict::Pass).collect();
    ensure(pass == [0, 2, 4], || format!("pass set {pass:?}"))?;
    Ok("pass set {0, 2, 4}".into())
}

fn c4_cyclotomic() -> Check {
    for p in [3u64, 5] {
        let mut prod = DistinguishedPoly::x(p).unwrap();
        for n in 1..=3u32 {
            let phi = cyclotomic_phi(n, p).unwrap();
            let deg = p.pow(n - 1) * (p - 1);
            ensure(phi.degree() as u64 == deg, || format!("deg Φ_{n} at p = {p}"))?;
            ensure(*phi.constant_term() == BigInt::from(p), || format!("Φ_{n}(0) at p = {p}"))?;
            prod = prod.mul(&phi).unwrap();
            ensure(prod == omega(n, p).unwrap(), || format!("ω_{n} at p = {p}"))?;
        }
    }
    Ok("ω_N = X·ΠΦ_n for p ∈ {3,5}, N ≤ 3".into())
}

fn c5_weierstrass(rng: &mut ChaCha8Rng) -> Check {
    let mut lambdas = 0;
    for _ in 0..500 {
        let f = common::random_series(rng);
        let w = weierstrass_prepare(&f).map_err(|e| format!("{f}: {e}"))?;
        let back = w.reconstruct().unwrap();
        ensure(back == f.truncate(w.result_p_precision, w.result_x_precision), || format!("round trip of {f}"))?;
        ensure(w.unit_part.is_unit(), || format!("unit part of {f}"))?;
        let p = BigInt::from(f.prime());
        let low = &w.distinguished_part.coeffs()[..w.lambda()];
        ensure(low.iter().all(|c| c % &p == BigInt::from(0)), || format!("P of {f}"))?;
        lambdas += w.lambda();
    }
    Ok(format!("500 series, total λ {lambdas}"))
}

fn c6_iota(rng: &mut ChaCha8Rng) -> Check {
    const A: u32 = 8;
    for p in [3u64, 5] {
        let x = DistinguishedPoly::x(p).unwrap();
        ensure(iota_normalize(&x, A).unwrap() == x, || "ι(X) ≠ X".into())?;
        for n in 1..=3 {
            let phi = cyclotomic_phi(n, p).unwrap();
            ensure(iota_normalize(&phi, A).unwrap().congruent(&phi, A).unwrap(), || format!("ι(Φ_{n}) at p = {p}"))?;
        }
    }
    for _ in 0..200 {
        let p = if rng.gen_bool(0.5) { 3 } else { 5 };
        let f = common::random_distinguished(rng, p, 6);
        let twice = iota_normalize(&iota_normalize(&f, A).unwrap(), A).unwrap();
        ensure(twice.congruent(&f, A).unwrap(), || format!("ι∘ι({f}) = {twice}"))?;
    }
    Ok(format!("X, Φ_1..Φ_3 fixed; 200 involutions mod p^{A}"))
}

fn c7_criterion1(rng: &mut ChaCha8Rng) -> Check {
    let pool = common::pool();
    let mut agree_true = 0;
    for _ in 0..200 {
        let (u, v) = common::random_pair(rng);
        let f = &pool[rng.gen_range(0..pool.len())];
        let r = criterion1_check(&u, &v, f, 4).unwrap();
        ensure(r.consistent(), || format!("{u} vs {v}:\n{r}"))?;
        agree_true += r.side_a as usize;
    }
    Ok(format!("200 pairs, {agree_true} with equal F-parts"))
}

fn c8_criterion2(rng: &mut ChaCha8Rng) -> Check {
    let mut agree_true = 0;
    for _ in 0..200 {
        let (u, v) = common::random_pair(rng);
        let r = criterion2_check(&u, &v, 3, 3).unwrap();
        ensure(r.consistent(), || format!("{u} vs {v}:\n{r}"))?;
        agree_true += r.side_a as usize;
    }
    Ok(format!("200 pairs, {agree_true} with equal p-parts"))
}

fn c9_oracle(rng: &mut ChaCha8Rng) -> Check {
    let pool = common::pool();
    let mut nonzero = 0;
    for _ in 0..60 {
        let m = common::random_module(rng);
        let f = &pool[rng.gen_range(0..pool.len())];
        let twist = rng.gen_range(1..=3);
        let closed = twisted_dual_invariant_corank(&m, f, twist).unwrap();
        let oracle = brute_force_corank(&m, f, twist, DEFAULT_ORACLE_E_MAX).map_err(|e| format!("{m}, F = {f}: {e}"))?;
        ensure(closed == oracle, || format!("{m}, F = {f}, m = {twist}: {closed} vs {oracle}"))?;
        nonzero += (closed > 0) as usize;
    }
    Ok(format!("60 instances, {nonzero} with positive corank"))
}

fn c10_ledger(rng: &mut ChaCha8Rng) -> Check {
    let pool = common::pool();
    for _ in 0..100 {
        let e = rng.gen_range(1..=5);
        let chi = if rng.gen_bool(0.5) {
            chi_glob_rational(e, &pool[rng.gen_range(0..pool.len())], rng.gen_range(1..=4))
        } else {
            chi_glob_level(e, rng.gen_range(0..=4), 3).unwrap()
        };
        let mut x = || rng.gen_range(0..=40i64);
        let (k1, g1, g2, h0) = (x(), x(), x(), x());
        let l = SizeLedger::from_right_side(k1, g1, g2, h0, chi);
        SizeLedger::new(k1, l.k1_dagger, g1, g2, h0, chi).map_err(|e| e.to_string())?;
        ensure(l.residual() == 0 && ledger_ratio(&l) == l.k1_dagger - k1, || format!("{l:?}"))?;
    }
    Ok("100 assignments, zero residual".into())
}

fn c11_conjugate(rng: &mut ChaCha8Rng) -> Check {
    let mut fails = 0;
    for _ in 0..200 {
        let (record, q) = common::random_record_query(rng);
        let a = check_hcyc(&record, &q).unwrap();
        let b = check_hcyc(&record, &TwistQuery { p: q.p, i: record.weight - q.i }).unwrap();
        let flags = |r: &iwasawa_core::hypothesis::HypothesisReport| {
            r.per_prime.iter().map(|e| e.passed()).collect::<Vec<_>>()
        };
        ensure(a.verdict == b.verdict && flags(&a) == flags(&b), || format!("{} vs {}", a.line(), b.line()))?;
        fails += (a.verdict == Verdict::Fail) as usize;
    }
    Ok(format!("200 queries, {fails} failing"))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a3b_5c7d);
    let criteria: Vec<(&str, Duration, Box<dyn FnMut(&mut ChaCha8Rng) -> Check>)> = vec![
        ("scan of 11.4 for p <= 10^4", Duration::from_secs(1), Box::new(|_| c1_example_5_10())),
        ("13.2 verdicts at p = 5, 7", Duration::from_secs(1), Box::new(|_| c2_example_5_9())),
        ("10.4 pass set at p = 7", Duration::from_secs(1), Box::new(|_| c3_example_5_11())),
        ("cyclotomic identity", Duration::from_secs(1), Box::new(|_| c4_cyclotomic())),
        ("Weierstrass round trip", Duration::from_secs(10), Box::new(c5_weierstrass)),
        ("iota invariance", Duration::from_secs(10), Box::new(c6_iota)),
        ("criterion 1 equivalence", Duration::from_secs(30), Box::new(c7_criterion1)),
        ("criterion 2 equivalence", Duration::from_secs(60), Box::new(c8_criterion2)),
        ("oracle agreement", Duration::from_secs(60), Box::new(c9_oracle)),
        ("ledger consistency", Duration::from_secs(1), Box::new(c10_ledger)),
        ("conjugate symmetry", Duration::from_secs(1), Box::new(c11_conjugate)),
    ];
    let mut all_ok = true;
    for (i, (name, limit, mut run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut rng);
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("acceptance {:>2} PASS {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                all_ok = false;
                println!("acceptance {:>2} FAIL {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
