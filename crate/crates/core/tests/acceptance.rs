//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use adjunct_core::adjoint::{
    c2_lower_bound_check, check_second_adjoint, check_thm42, cubic_params, eq_rhs, i1_lhs, i1_rhs, thm415_expression,
    thm42_bound,
};
use adjunct_core::genus::{b18_residual, g1_closed, g2_adjoint_closed, g_i};
use adjunct_core::hrr::chi_multi;
use adjunct_core::rational::rat;
use adjunct_core::semigroup::{closure, coin_solve, guaranteed_threshold};
use adjunct_core::variety::{by_name, standard_fourfolds};
use adjunct_core::{DivisorClass, I1Request, Rational, VarietyData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: adjunct_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn draw(rng: &mut ChaCha8Rng, v: &VarietyData, lo: i64, hi: i64) -> DivisorClass {
    DivisorClass((0..v.rank()).map(|_| rng.random_range(lo..=hi)).collect())
}

fn rng_for(criterion: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_000 + criterion);
    rng.set_stream(index as u64);
    rng
}

fn cls(v: &VarietyData, s: &str) -> DivisorClass {
    v.parse_divisor(s).unwrap()
}

fn difference_formula() -> Outcome {
    let start = Instant::now();
    let p4 = by_name("P4").unwrap();
    let req = e2s(I1Request::new(&p4, vec![cls(&p4, "6H")], cls(&p4, "H")))?;
    let (lhs, rhs) = (e2s(i1_lhs(&p4, &req))?.value, e2s(i1_rhs(&p4, &req))?);
    let g2 = e2s(g_i(&p4, 2, &[cls(&p4, "6H"), cls(&p4, "H")]))?;
    ensure((lhs, rhs, g2) == (10, 10, 10), || format!("anchor gave lhs={lhs} rhs={rhs} g2={g2}"))?;

    let names = ["P4", "P1xP3", "P2xP2", "Q4", "X3", "X4", "X5", "X6", "X7", "A4"];
    let mut count = 0;
    for (idx, name) in names.iter().enumerate() {
        let v = by_name(name).unwrap();
        let mut rng = rng_for(1, idx);
        for _ in 0..25 {
            let m = rng.random_range(1..=3);
            let big: Vec<_> = (0..m).map(|_| draw(&mut rng, &v, 1, 3)).collect();
            let l = draw(&mut rng, &v, 0, 2);
            let req = e2s(I1Request::new(&v, big, l))?;
            let lhs = e2s(i1_lhs(&v, &req))?.value;
            let rhs = e2s(i1_rhs(&v, &req))?;
            ensure(lhs == rhs, || format!("{name}: lhs {lhs} != rhs {rhs}"))?;
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("anchor 10 = 10, {count} draws equal, {:.2}s", elapsed.as_secs_f64()))
}

fn fourfold_specialization() -> Outcome {
    let x6 = by_name("X6").unwrap();
    let h = cls(&x6, "H");
    let mut values = Vec::new();
    for m in 2..=6 {
        let rhs = e2s(eq_rhs(&x6, &h, m))?;
        let lhs = e2s(x6.h0_exact(&(m * &h)))? - e2s(x6.h0_exact(&((m - 1) * &h)))?;
        ensure(lhs == rhs, || format!("m={m}: {lhs} != {rhs}"))?;
        values.push(rhs);
    }
    let (h1, h2) = (e2s(x6.h0_exact(&h))?, e2s(x6.h0_exact(&(2 * &h)))?);
    ensure(values[0] == 15 && (h1, h2) == (6, 21), || format!("m=2 anchor: {} with h0 {h1}, {h2}", values[0]))?;
    Ok(format!("X6 m=2..6 differences {values:?}"))
}

fn lower_bound() -> Outcome {
    let bounds: Vec<i64> = (2..=4).map(|m| thm42_bound(m).unwrap()).collect();
    ensure(bounds == [1, 5, 18], || format!("bound values {bounds:?}"))?;
    let mut detail = Vec::new();
    for (name, l) in [("X6", "H"), ("A4", "L")] {
        let v = by_name(name).unwrap();
        let l = cls(&v, l);
        let adj = v.canonical() + &l;
        let h0 = |t: i64| v.h0_exact(&(t * &adj)).unwrap();
        for m in 2..=10 {
            let b = thm42_bound(m).unwrap();
            ensure(h0(m) >= b, || format!("{name} m={m}: h0 {} < {b}", h0(m)))?;
        }
        let f = |t: i64| h0(t) - h0(t - 1);
        for t in 3..=10 {
            ensure(f(t) - f(t - 1) >= (t - 1) * (t - 1), || format!("{name} t={t}: recursion fails"))?;
        }
        if name == "X6" {
            ensure(f(3) - f(2) == 20 && f(4) - f(3) == 35, || "X6 recursion anchors".into())?;
        }
        let report = e2s(check_thm42(&v, &l, 10))?;
        ensure(report.passed() && report.abstentions() == 0, || format!("{name}: {report}"))?;
        detail.push(format!("{name} {} entries", report.entries.len()));
    }
    Ok(format!("bounds 1,5,18; {}", detail.join(", ")))
}

fn expression_bound() -> Outcome {
    let mut detail = Vec::new();
    for (name, l, expected) in [("X6", "H", Rational::new(111, 32)), ("A4", "L", Rational::new(111, 8))] {
        let v = by_name(name).unwrap();
        let l = cls(&v, l);
        let x = e2s(thm415_expression(&v, &l))?;
        ensure(x == expected && x >= Rational::new(111, 192), || format!("{name}: {x}"))?;
        let adj = v.canonical() + &l;
        let diff = e2s(v.h0_exact(&(2 * &adj)))? - e2s(v.h0_exact(&adj))?;
        ensure(diff >= 1, || format!("{name}: h0 difference {diff}"))?;
        ensure(e2s(check_second_adjoint(&v, &l))?.passed(), || format!("{name}: report failed"))?;
        detail.push(format!("{name} {x}, diff {diff}"));
    }
    Ok(detail.join("; "))
}

fn genus_ground_truths() -> Outcome {
    let x6 = by_name("X6").unwrap();
    let h = cls(&x6, "H");
    let got = [
        e2s(g_i(&x6, 1, &vec![h.clone(); 3]))?,
        e2s(g_i(&x6, 2, &vec![h.clone(); 2]))?,
        e2s(g_i(&x6, 3, std::slice::from_ref(&h)))?,
        e2s(g_i(&x6, 4, &[]))?,
    ];
    ensure(got == [10, 10, 5, 1], || format!("X6 g_1..g_4 = {got:?}"))?;
    let fourfolds = standard_fourfolds();
    let mut rng = rng_for(5, 0);
    for k in 0..50 {
        let v = &fourfolds[k % fourfolds.len()];
        let tuple: Vec<_> = (0..4).map(|_| draw(&mut rng, v, -3, 3)).collect();
        let (g0, x) = (e2s(g_i(v, 0, &tuple))?, e2s(v.intersection_number(&tuple))?);
        ensure(g0 == x, || format!("{}: g_0 {g0} != {x}", v.name()))?;
    }
    Ok("X6 (g1,g2,g3,g4) = (10,10,5,1); g_0 = intersection number on 50 tuples".into())
}

fn additivity_and_closed_forms() -> Outcome {
    let mut catalog = standard_fourfolds();
    catalog.extend(["P2", "P3"].map(|n| by_name(n).unwrap()));
    let mut rng = rng_for(6, 0);
    for k in 0..100 {
        let v = &catalog[k % catalog.len()];
        let n = v.dim();
        let i = rng.random_range(1..n);
        let a = draw(&mut rng, v, -2, 3);
        let b = draw(&mut rng, v, -2, 3);
        let rest: Vec<_> = (0..n - i - 1).map(|_| draw(&mut rng, v, -2, 3)).collect();
        let r = e2s(b18_residual(v, i, &a, &b, &rest))?;
        ensure(r == 0, || format!("{} i={i}: residual {r}", v.name()))?;
    }
    let mut closed = 0;
    for (idx, v) in standard_fourfolds().iter().enumerate() {
        let mut rng = rng_for(60, idx);
        for _ in 0..20 {
            let abc: Vec<_> = (0..3).map(|_| draw(&mut rng, v, -2, 3)).collect();
            let l = draw(&mut rng, v, -2, 3);
            let g1 = e2s(g1_closed(v, &abc[0], &abc[1], &abc[2]))?;
            ensure(g1 == e2s(g_i(v, 1, &abc))?, || format!("{}: g1 closed form", v.name()))?;
            let m = v.canonical() + &l;
            let g2 = e2s(g2_adjoint_closed(v, &l))?;
            ensure(g2 == e2s(g_i(v, 2, &[m.clone(), m]))?, || format!("{}: g2 closed form", v.name()))?;
            closed += 2;
        }
    }
    Ok(format!("100 residuals zero, {closed} closed-form comparisons equal"))
}

fn integrality_and_parity() -> Outcome {
    let mut catalog = standard_fourfolds();
    catalog.extend(["P1", "P2", "P3"].map(|n| by_name(n).unwrap()));
    let (mut expansions, mut parities) = (0, 0);
    for (idx, v) in catalog.iter().enumerate() {
        let mut rng = rng_for(7, idx);
        for _ in 0..20 {
            let k = rng.random_range(1..=v.dim());
            let tuple: Vec<_> = (0..k).map(|_| draw(&mut rng, v, -3, 3)).collect();
            let p = e2s(chi_multi(v, &tuple))?;
            ensure(p.is_integral(), || format!("{}: non-integral expansion", v.name()))?;
            expansions += 1;
            if v.dim() == 4 {
                let l = draw(&mut rng, v, 1, 5);
                let k3l = v.canonical() + &(3 * &l);
                let x = e2s(v.intersection_number([&k3l, &l, &l, &l]))?;
                ensure(x % 2 == 0, || format!("{}: (K+3L)L^3 = {x}", v.name()))?;
                parities += 1;
            }
        }
    }
    Ok(format!("{expansions} expansions integral, {parities} parity checks even"))
}

fn c2_inequality() -> Outcome {
    let mut checked = 0;
    for (idx, v) in standard_fourfolds().iter().enumerate().filter(|(_, v)| !v.sre_declared()) {
        let mut rng = rng_for(8, idx);
        for l in v.declared_polarizations() {
            if !e2s(v.is_nef_and_big(&(v.canonical() + l)))? {
                continue;
            }
            for _ in 0..20 {
                let a1 = draw(&mut rng, v, 0, 3);
                let a2 = draw(&mut rng, v, 0, 3);
                let c = e2s(c2_lower_bound_check(v, l, &a1, &a2))?;
                ensure(c.holds_i, || format!("{}: c2 = {} below {}", v.name(), c.c2_value, c.bound_i))?;
                checked += 1;
            }
        }
    }
    ensure(checked > 0, || "no eligible entries".into())?;
    Ok(format!("{checked} inequalities hold"))
}

fn semigroups() -> Outcome {
    let mut cases = 0;
    for p in 1..=12u64 {
        for q in 1..=12u64 {
            if num_gcd(p, q) != 1 {
                continue;
            }
            for l in (p - 1) * (q - 1)..=200 {
                let brute = (0..=l / p).find(|&i| (l - p * i) % q == 0).map(|i| (i, (l - p * i) / q));
                let got = coin_solve(p, q, l).ok();
                ensure(got == brute, || format!("coin ({p},{q},{l}): {got:?} vs {brute:?}"))?;
                cases += 1;
            }
        }
    }
    let t = e2s(guaranteed_threshold(&BTreeSet::from([4, 5])))?;
    ensure(t == Some(12), || format!("threshold {{4,5}} = {t:?}"))?;
    for p in 1..=5u64 {
        for other in [7u64, 11, 13, 19] {
            let c = e2s(closure(&BTreeSet::from([p, other]), 120))?;
            ensure(c.contains(120), || format!("120 missing from closure of {{{p},{other}}}"))?;
        }
    }
    Ok(format!("{cases} coin cases match, threshold(4,5) = 12, 120 reached from p <= 5"))
}

fn cubic() -> Outcome {
    let p = e2s(cubic_params([-2, 4, -8, 6], 0))?;
    let got = (p.d, p.a, p.b, p.g1, p.g2);
    ensure(got == (rat(1), rat(0), rat(2), 9, 3), || format!("{got:?}"))?;
    ensure(p.g2_expressions_agree, || format!("g2 forms {} vs {}", p.g2, p.g2_from_params))?;
    Ok("(d,a,b) = (1,0,2), g1 = 9, g2 = 3, both g2 forms agree".into())
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("difference formula exactness", difference_formula),
        ("fourfold specialization", fourfold_specialization),
        ("lower bound and recursion", lower_bound),
        ("explicit expression bound", expression_bound),
        ("genus ground truths", genus_ground_truths),
        ("additivity and closed forms", additivity_and_closed_forms),
        ("integrality and parity", integrality_and_parity),
        ("c2 inequality (i)", c2_inequality),
        ("semigroup suite", semigroups),
        ("cubic parametrization", cubic),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
