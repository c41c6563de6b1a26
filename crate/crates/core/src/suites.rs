//! Verification suites over the catalog and seeded random draws.
//!
//! Draws for each variety come from a ChaCha8 stream selected by the
//! variety's position, so results do not depend on evaluation order. Checks
//! are evaluated in parallel and collected in draw order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::adjoint::{
    c2_lower_bound_check, check_superadditivity, check_second_adjoint, cubic_params, eq_rhs, i1_lhs,
    i1_rhs, nonvanishing_report, BoundReport, I1Request,
};
use crate::binpoly::coefficients_from_oracle;
use crate::classify::{classify, surrogate_kappa, DeclaredInvariants};
use crate::error::{Error, Result};
use crate::genus::{b18_residual, g1_closed, g2_adjoint_closed, g_i, g_i_equal};
use crate::hrr::{chi_multi, h0_certified};
use crate::rational::rat;
use crate::report::{Check, VerificationReport};
use crate::semigroup::{closure, coin_solve, guaranteed_threshold};
use crate::variety::{standard_fourfolds, DivisorClass, Kappa, VarietyData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    I1,
    Eq,
    B18,
    Bounds,
    Genus,
    Closed,
    Integrality,
    C2,
    Semigroup,
    Cubic,
    Classify,
    All,
}

const SUITE_NAMES: [(Suite, &str); 12] = [
    (Suite::I1, "i1"),
    (Suite::Eq, "eq"),
    (Suite::B18, "b18"),
    (Suite::Bounds, "bounds"),
    (Suite::Genus, "genus"),
    (Suite::Closed, "closed"),
    (Suite::Integrality, "integrality"),
    (Suite::C2, "c2"),
    (Suite::Semigroup, "semigroup"),
    (Suite::Cubic, "cubic"),
    (Suite::Classify, "classify"),
    (Suite::All, "all"),
];

impl Suite {
    pub fn name(self) -> &'static str {
        SUITE_NAMES.iter().find(|(s, _)| *s == self).unwrap().1
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        SUITE_NAMES.iter().map(|(_, n)| *n)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SUITE_NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(x, _)| *x)
            .ok_or_else(|| {
                let known: Vec<_> = Suite::names().collect();
                Error::InvalidInput(format!("unknown suite `{s}` (known: {})", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub draws: usize,
    pub m_max: i64,
    pub varieties: Vec<VarietyData>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            draws: 25,
            m_max: 10,
            varieties: standard_fourfolds(),
        }
    }
}

impl SuiteConfig {
    fn rng(&self, suite: Suite, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ ((suite as u64) << 56));
        rng.set_stream(index as u64);
        rng
    }

    fn fourfolds(&self) -> impl Iterator<Item = (usize, &VarietyData)> {
        self.varieties.iter().enumerate().filter(|(_, v)| v.dim() == 4)
    }
}

fn draw_class(rng: &mut ChaCha8Rng, rank: usize, lo: i64, hi: i64) -> DivisorClass {
    DivisorClass((0..rank).map(|_| rng.random_range(lo..=hi)).collect())
}

fn describe(v: &VarietyData, classes: &[DivisorClass]) -> String {
    let parts: Vec<String> = classes.iter().map(|c| v.format_divisor(c)).collect();
    format!("{} [{}]", v.name(), parts.join(", "))
}

fn error_check(name: &str, inputs: String, e: Error) -> Check {
    if e.is_abstention() {
        Check::abstain(name, inputs, e.to_string())
    } else {
        Check::holds(name, inputs, false, e.to_string())
    }
}

/// Polarizations whose adjoint bundle is nef.
fn adjoint_nef_polarizations(v: &VarietyData) -> Vec<DivisorClass> {
    v.declared_polarizations()
        .filter(|l| v.is_nef(&(v.canonical() + *l)))
        .cloned()
        .collect()
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerificationReport> {
    if cfg.varieties.is_empty() && !matches!(suite, Suite::Semigroup | Suite::Cubic) {
        return Err(Error::InvalidInput("no varieties selected".into()));
    }
    Ok(match suite {
        Suite::I1 => suite_i1(cfg),
        Suite::Eq => suite_eq(cfg),
        Suite::B18 => suite_b18(cfg),
        Suite::Bounds => suite_bounds(cfg),
        Suite::Genus => suite_genus(cfg),
        Suite::Closed => suite_closed(cfg),
        Suite::Integrality => suite_integrality(cfg),
        Suite::C2 => suite_c2(cfg),
        Suite::Semigroup => suite_semigroup(),
        Suite::Cubic => suite_cubic(cfg),
        Suite::Classify => suite_classify(cfg),
        Suite::All => {
            let mut all = VerificationReport::new("all");
            for &(s, name) in SUITE_NAMES.iter().filter(|(s, _)| *s != Suite::All) {
                let sub = run_suite(s, cfg)?;
                all.extend(sub.checks.into_iter().map(|mut c| {
                    c.name = format!("{name}/{}", c.name);
                    c
                }));
            }
            all
        }
    })
}

fn suite_i1(cfg: &SuiteConfig) -> VerificationReport {
    let mut jobs: Vec<(&VarietyData, Vec<DivisorClass>, DivisorClass)> = Vec::new();
    for (idx, v) in cfg.fourfolds() {
        let mut rng = cfg.rng(Suite::I1, idx);
        for _ in 0..cfg.draws {
            let m = rng.random_range(1..=3);
            let big = (0..m).map(|_| draw_class(&mut rng, v.rank(), 1, 3)).collect();
            jobs.push((v, big, draw_class(&mut rng, v.rank(), 0, 2)));
        }
    }
    let checks: Vec<Check> = jobs
        .par_iter()
        .map(|(v, big, l)| {
            let mut all = big.clone();
            all.push(l.clone());
            let inputs = describe(v, &all);
            let run = || -> Result<Check> {
                let req = I1Request::new(v, big.clone(), l.clone())?;
                let lhs = i1_lhs(v, &req)?;
                let rhs = i1_rhs(v, &req)?;
                let mut c = Check::equal("h0 difference = genus sum", inputs.clone(), lhs.value, rhs);
                c.certifications = req.certifications().to_vec();
                c.certifications.push(format!("upper: {}", lhs.upper.certification));
                c.certifications.push(format!("lower: {}", lhs.lower.certification));
                Ok(c)
            };
            run().unwrap_or_else(|e| error_check("h0 difference = genus sum", inputs, e))
        })
        .collect();
    let mut r = VerificationReport::new("i1");
    let certified = checks.iter().filter(|c| !c.abstained).count();
    r.extend(checks);
    let total = r.checks.len().max(1);
    r.push(Check::holds(
        "coverage",
        format!("{} draws", r.checks.len()),
        true,
        format!("{:.1}% certified", 100.0 * certified as f64 / total as f64),
    ));
    r
}

fn suite_eq(cfg: &SuiteConfig) -> VerificationReport {
    let mut r = VerificationReport::new("eq");
    let jobs: Vec<(&VarietyData, DivisorClass, i64)> = cfg
        .fourfolds()
        .flat_map(|(_, v)| adjoint_nef_polarizations(v).into_iter().map(move |l| (v, l)))
        .flat_map(|(v, l)| (2..=6).map(move |m| (v, l.clone(), m)))
        .collect();
    r.extend(jobs.par_iter().map(|(v, l, m)| {
        let inputs = format!("{} L={} m={m}", v.name(), v.format_divisor(l));
        let run = || -> Result<Check> {
            let adj = v.canonical() + l;
            let hi = h0_certified(v, &(*m * &adj))?;
            let lo = h0_certified(v, &((m - 1) * &adj))?;
            Ok(Check::equal("h0(m(K+L)) - h0((m-1)(K+L))", inputs.clone(), hi.value - lo.value, eq_rhs(v, l, *m)?)
                .with_certification(format!("{}; {}", hi.certification, lo.certification)))
        };
        run().unwrap_or_else(|e| error_check("h0(m(K+L)) - h0((m-1)(K+L))", inputs, e))
    }).collect::<Vec<_>>());
    r
}

fn suite_b18(cfg: &SuiteConfig) -> VerificationReport {
    let mut jobs = Vec::new();
    for (idx, v) in cfg.varieties.iter().enumerate().filter(|(_, v)| v.dim() >= 2) {
        let mut rng = cfg.rng(Suite::B18, idx);
        let n = v.dim();
        for _ in 0..cfg.draws {
            let i = rng.random_range(1..n);
            let a = draw_class(&mut rng, v.rank(), -2, 3);
            let b = draw_class(&mut rng, v.rank(), -2, 3);
            let rest: Vec<_> = (0..n - i - 1).map(|_| draw_class(&mut rng, v.rank(), -2, 3)).collect();
            jobs.push((v, i, a, b, rest));
        }
    }
    let mut r = VerificationReport::new("b18");
    r.extend(jobs.par_iter().map(|(v, i, a, b, rest)| {
        let mut all = vec![a.clone(), b.clone()];
        all.extend(rest.iter().cloned());
        let inputs = format!("i={i} {}", describe(v, &all));
        match b18_residual(v, *i, a, b, rest) {
            Ok(x) => Check::equal("additivity residual", inputs, 0, x),
            Err(e) => error_check("additivity residual", inputs, e),
        }
    }).collect::<Vec<_>>());
    r
}

fn push_bound(r: &mut VerificationReport, label: &str, inputs: String, result: Result<BoundReport>) {
    match result {
        Ok(b) => r.merge(b.to_verification()),
        Err(e) => r.push(error_check(label, inputs, e)),
    }
}

fn suite_bounds(cfg: &SuiteConfig) -> VerificationReport {
    let jobs: Vec<(&VarietyData, DivisorClass)> = cfg
        .fourfolds()
        .flat_map(|(_, v)| adjoint_nef_polarizations(v).into_iter().map(move |l| (v, l)))
        .collect();
    let parts: Vec<VerificationReport> = jobs
        .par_iter()
        .map(|(v, l)| {
            let mut r = VerificationReport::new("bounds");
            let inputs = format!("{} L={}", v.name(), v.format_divisor(l));
            let kappa_x_ok = v.kappa_x().is_some_and(Kappa::is_nonnegative);
            push_bound(&mut r, "nonvanishing", inputs.clone(), nonvanishing_report(v, l, cfg.m_max));
            if kappa_x_ok && cfg.m_max >= 2 {
                push_bound(&mut r, "second-adjoint", inputs.clone(), check_second_adjoint(v, l));
            }
            push_bound(&mut r, "superadditivity", inputs, check_superadditivity(v, l, cfg.m_max.max(2)));
            r
        })
        .collect();
    let mut r = VerificationReport::new("bounds");
    for p in parts {
        r.merge(p);
    }
    r
}

fn suite_genus(cfg: &SuiteConfig) -> VerificationReport {
    let mut jobs = Vec::new();
    for (idx, v) in cfg.varieties.iter().enumerate() {
        let mut rng = cfg.rng(Suite::Genus, idx);
        for _ in 0..cfg.draws {
            let tuple: Vec<_> = (0..v.dim()).map(|_| draw_class(&mut rng, v.rank(), -3, 3)).collect();
            let l = draw_class(&mut rng, v.rank(), -2, 3);
            jobs.push((v, tuple, l));
        }
    }
    let mut r = VerificationReport::new("genus");
    for v in &cfg.varieties {
        let n = v.dim();
        let inputs = v.name().to_string();
        r.push(match g_i(v, n, &[]) {
            Ok(g) => Check::equal("g_n = h^n(O)", inputs, v.h_i(n), g),
            Err(e) => error_check("g_n = h^n(O)", inputs, e),
        });
    }
    let checks: Vec<Check> = jobs
        .par_iter()
        .flat_map(|(v, tuple, l)| {
            let mut out = Vec::new();
            let inputs = describe(v, tuple);
            out.push(match (g_i(v, 0, tuple), v.intersection_number(tuple)) {
                (Ok(g), Ok(x)) => Check::equal("g_0 = intersection number", inputs, x, g),
                (Err(e), _) | (_, Err(e)) => error_check("g_0 = intersection number", inputs, e),
            });
            for i in 0..v.dim() {
                let inputs = format!("i={i} {}", describe(v, std::slice::from_ref(l)));
                let multi = g_i(v, i, &vec![l.clone(); v.dim() - i]);
                out.push(match (multi, g_i_equal(v, i, l)) {
                    (Ok(a), Ok(b)) => Check::equal("equal-bundle genus", inputs, a, b),
                    (Err(e), _) | (_, Err(e)) => error_check("equal-bundle genus", inputs, e),
                });
            }
            out
        })
        .collect();
    r.extend(checks);
    r
}

fn suite_closed(cfg: &SuiteConfig) -> VerificationReport {
    let mut jobs = Vec::new();
    for (idx, v) in cfg.fourfolds() {
        let mut rng = cfg.rng(Suite::Closed, idx);
        for _ in 0..cfg.draws {
            let abc: Vec<_> = (0..3).map(|_| draw_class(&mut rng, v.rank(), -2, 3)).collect();
            jobs.push((v, abc, draw_class(&mut rng, v.rank(), -2, 3)));
        }
    }
    let mut r = VerificationReport::new("closed");
    r.extend(jobs.par_iter().flat_map(|(v, abc, l)| {
        let inputs = describe(v, abc);
        let first = match (g1_closed(v, &abc[0], &abc[1], &abc[2]), g_i(v, 1, abc)) {
            (Ok(a), Ok(b)) => Check::equal("g1 closed form", inputs, b, a),
            (Err(e), _) | (_, Err(e)) => error_check("g1 closed form", inputs, e),
        };
        let inputs = describe(v, std::slice::from_ref(l));
        let m = v.canonical() + l;
        let second = match (g2_adjoint_closed(v, l), g_i(v, 2, &[m.clone(), m])) {
            (Ok(a), Ok(b)) => Check::equal("g2(K+L,K+L) closed form", inputs, b, a),
            (Err(e), _) | (_, Err(e)) => error_check("g2(K+L,K+L) closed form", inputs, e),
        };
        vec![first, second]
    }).collect::<Vec<_>>());
    r
}

fn suite_integrality(cfg: &SuiteConfig) -> VerificationReport {
    let mut jobs = Vec::new();
    for (idx, v) in cfg.varieties.iter().enumerate() {
        let mut rng = cfg.rng(Suite::Integrality, idx);
        for _ in 0..cfg.draws {
            let k = rng.random_range(1..=v.dim());
            let tuple: Vec<_> = (0..k).map(|_| draw_class(&mut rng, v.rank(), -3, 3)).collect();
            let ample = draw_class(&mut rng, v.rank(), 1, 4);
            jobs.push((v, tuple, ample));
        }
    }
    let mut r = VerificationReport::new("integrality");
    r.extend(jobs.par_iter().flat_map(|(v, tuple, l)| {
        let mut out = Vec::new();
        let inputs = describe(v, tuple);
        out.push(match chi_multi(v, tuple) {
            Ok(p) => Check::holds("integral binomial coefficients", inputs, p.is_integral(), format!("{} terms", p.terms().count())),
            Err(e) => error_check("integral binomial coefficients", inputs, e),
        });
        if v.dim() == 4 {
            let inputs = describe(v, std::slice::from_ref(l));
            let k3l = v.canonical() + &(3 * l);
            out.push(match v.intersection_number([&k3l, l, l, l]) {
                Ok(x) => Check::holds("(K+3L)L^3 even", inputs, x % 2 == 0, x.to_string()),
                Err(e) => error_check("(K+3L)L^3 even", inputs, e),
            });
        }
        out
    }).collect::<Vec<_>>());
    r
}

fn suite_c2(cfg: &SuiteConfig) -> VerificationReport {
    let mut jobs = Vec::new();
    for (idx, v) in cfg.fourfolds().filter(|(_, v)| !v.sre_declared()) {
        let mut rng = cfg.rng(Suite::C2, idx);
        for l in v.declared_polarizations() {
            if !v.is_nef_and_big(&(v.canonical() + l)).unwrap_or(false) {
                continue;
            }
            for _ in 0..cfg.draws {
                let a1 = draw_class(&mut rng, v.rank(), 0, 3);
                let a2 = draw_class(&mut rng, v.rank(), 0, 3);
                jobs.push((v, l.clone(), a1, a2));
            }
        }
    }
    let mut r = VerificationReport::new("c2");
    r.extend(jobs.par_iter().flat_map(|(v, l, a1, a2)| {
        let inputs = describe(v, &[l.clone(), a1.clone(), a2.clone()]);
        match c2_lower_bound_check(v, l, a1, a2) {
            Ok(c) => {
                let mut asserted = Check::holds("c2 A1A2 >= bound (i)", inputs.clone(), c.holds_i, c.c2_value.to_string())
                    .with_bound(c.bound_i.to_string());
                asserted.certifications = c.certifications.clone();
                let reported = Check::holds(
                    "c2 A1A2 >= bound (ii.1), reported",
                    inputs,
                    true,
                    if c.holds_ii1 { "holds" } else { "fails" },
                )
                .with_bound(c.bound_ii1.to_string());
                vec![asserted, reported]
            }
            Err(e) => vec![error_check("c2 A1A2 >= bound (i)", inputs, e)],
        }
    }).collect::<Vec<_>>());
    r
}

fn suite_semigroup() -> VerificationReport {
    let mut r = VerificationReport::new("semigroup");
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for p in 1..=12u64 {
        for q in 1..=12u64 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            for l in (p - 1) * (q - 1)..=200 {
                cases += 1;
                let brute = (0..=l / p).find(|&i| (l - p * i) % q == 0).map(|i| (i, (l - p * i) / q));
                if coin_solve(p, q, l).ok() != brute {
                    mismatches.push(format!("({p},{q},{l})"));
                }
            }
        }
    }
    r.push(Check::holds(
        "coin solver = brute force",
        "coprime p,q <= 12, l <= 200",
        mismatches.is_empty(),
        format!("{cases} cases, {} mismatches {}", mismatches.len(), mismatches.join(" ")),
    ));
    for (set, expected) in [(vec![4u64, 5], Some(12u64)), (vec![3, 4], Some(6)), (vec![2, 4], None)] {
        let s: BTreeSet<u64> = set.iter().copied().collect();
        let inputs = format!("{set:?}");
        r.push(match guaranteed_threshold(&s) {
            Ok(t) => Check::equal("guaranteed threshold", inputs, format!("{expected:?}"), format!("{t:?}")),
            Err(e) => error_check("guaranteed threshold", inputs, e),
        });
    }
    let mut bound_failures = Vec::new();
    for p in 2..=9u64 {
        for q in p + 1..=10 {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            for extra in [None, Some(p + q + 1), Some(2 * q + 3)] {
                let s: BTreeSet<u64> = [Some(p), Some(q), extra].into_iter().flatten().collect();
                match guaranteed_threshold(&s) {
                    Ok(Some(t)) if t <= (p - 1) * (q - 1) => {}
                    other => bound_failures.push(format!("{s:?}: {other:?}")),
                }
            }
        }
    }
    r.push(Check::holds(
        "threshold <= (p-1)(q-1)",
        "coprime 2 <= p < q <= 10",
        bound_failures.is_empty(),
        bound_failures.join("; "),
    ));
    for p in 1..=5u64 {
        for other in [6u64, 7, 11, 13, 17] {
            let s: BTreeSet<u64> = [p, other].into_iter().collect();
            let inputs = format!("{s:?}");
            r.push(match closure(&s, 120) {
                Ok(c) => Check::holds("5! in closure", inputs, c.contains(120), ""),
                Err(e) => error_check("5! in closure", inputs, e),
            });
        }
    }
    r
}

fn suite_cubic(cfg: &SuiteConfig) -> VerificationReport {
    let mut r = VerificationReport::new("cubic");
    r.push(match cubic_params([-2, 4, -8, 6], 0) {
        Ok(p) => Check::holds(
            "cubic parameters",
            "(-2,4,-8,6), h1=0",
            (p.d, p.a, p.b, p.g1, p.g2, p.g2_expressions_agree) == (rat(1), rat(0), rat(2), 9, 3, true),
            format!("d={} a={} b={} g1={} g2={}", p.d, p.a, p.b, p.g1, p.g2),
        ),
        Err(e) => error_check("cubic parameters", "(-2,4,-8,6)".into(), e),
    });
    let mut rng = cfg.rng(Suite::Cubic, 0);
    for _ in 0..cfg.draws {
        let (d, a, b) = (rng.random_range(1..=4i64), rng.random_range(-5..=5i64), rng.random_range(-5..=5i64));
        let inputs = format!("d={d} a={a} b={b}");
        let expanded = coefficients_from_oracle::<_, Error>(
            |t: &[i64]| Ok(rat((d * (t[0] - 1) * (t[0] * t[0] + a * t[0] + b)) as i128)),
            1,
            3,
        );
        let chi = expanded.and_then(|p| {
            let c: Vec<i64> = (0..4)
                .map(|j| p.coeff(&crate::binpoly::MultiIndex(vec![j])).to_integer() as i64)
                .collect();
            cubic_params([c[0], c[1], c[2], c[3]], 0)
        });
        r.push(match chi {
            Ok(p) => Check::equal(
                "cubic round trip",
                inputs,
                format!("({d}, {a}, {b})"),
                format!("({}, {}, {})", p.d, p.a, p.b),
            ),
            Err(e) => error_check("cubic round trip", inputs, e),
        });
    }
    r
}

fn suite_classify(cfg: &SuiteConfig) -> VerificationReport {
    let mut r = VerificationReport::new("classify");
    for v in &cfg.varieties {
        for l in v.declared_polarizations() {
            let inputs = format!("{} L={}", v.name(), v.format_divisor(l));
            let declared = DeclaredInvariants::from_variety(v, l);
            let mut surrogate = DeclaredInvariants::new(v.dim());
            for &a in declared.kappa.keys() {
                if let Some(k) = surrogate_kappa(v, l, a as i64) {
                    surrogate.kappa.insert(a, k);
                }
            }
            if surrogate.kappa.len() < declared.kappa.len() {
                r.push(Check::abstain("surrogate label = declared label", inputs, "kappa not determined numerically"));
                continue;
            }
            r.push(match (classify(&declared), classify(&surrogate)) {
                (Ok(a), Ok(b)) => Check::equal("surrogate label = declared label", inputs, a.to_string(), b.to_string()),
                (Err(e), _) | (_, Err(e)) => error_check("surrogate label = declared label", inputs, e),
            });
        }
    }
    r
}
