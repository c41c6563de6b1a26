//! Adjoint-bundle section counts: the difference formula expressing
//! `h^0(K+L_1+...+L_m+L) - h^0(K+L_1+...+L_m)` through sectional geometric
//! genera, its fourfold specialization, and the effective non-vanishing
//! bounds for `h^0(m(K+L))`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genus::g_i;
use crate::hrr::{h0_certified, SectionCount};
use crate::rational::{choose, rat, Rational};
use crate::report::{Check, VerificationReport};
use crate::variety::{DivisorClass, Kappa, VarietyData};

/// Nef-and-big bundles `L_1..L_m` plus one nef bundle `L`, with the
/// certification trail of both hypotheses.
#[derive(Debug, Clone)]
pub struct I1Request {
    big: Vec<DivisorClass>,
    nef: DivisorClass,
    certifications: Vec<String>,
}

impl I1Request {
    pub fn new(v: &VarietyData, big: Vec<DivisorClass>, nef: DivisorClass) -> Result<Self> {
        if big.is_empty() {
            return Err(Error::InvalidInput("need at least one nef and big bundle".into()));
        }
        if v.dim() < 2 {
            return Err(Error::InvalidInput("difference formula needs dimension >= 2".into()));
        }
        let mut certifications = Vec::new();
        for (j, b) in big.iter().enumerate() {
            if !v.is_nef_and_big(b)? {
                return Err(Error::NotCertifiable(format!(
                    "L_{} = {} is not certified nef and big",
                    j + 1,
                    v.format_divisor(b)
                )));
            }
            certifications.push(format!("L_{}={} nef+big", j + 1, v.format_divisor(b)));
        }
        if !v.is_nef(&nef) {
            return Err(Error::NotCertifiable(format!("L = {} is not certified nef", v.format_divisor(&nef))));
        }
        certifications.push(format!("L={} nef", v.format_divisor(&nef)));
        Ok(I1Request {
            big,
            nef,
            certifications,
        })
    }

    pub fn big(&self) -> &[DivisorClass] {
        &self.big
    }

    pub fn nef(&self) -> &DivisorClass {
        &self.nef
    }

    pub fn certifications(&self) -> &[String] {
        &self.certifications
    }
}

/// Increasing `t`-subsets of `0..m`.
fn increasing_tuples(m: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for k in start..m {
            cur.push(k);
            rec(k + 1, m, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, t, &mut Vec::with_capacity(t), &mut out);
    out
}

/// Genus side of the difference formula:
/// `Σ_{s=0}^{n-1} Σ_{k_1<...<k_{n-s-1}} g_s(L_{k_1}, ..., L_{k_{n-s-1}}, L) - Σ_{s=0}^{n-2} C(m-1, n-s-2) h^s(O)`.
pub fn i1_rhs(v: &VarietyData, req: &I1Request) -> Result<i64> {
    let n = v.dim();
    let m = req.big.len();
    let mut total = 0i64;
    for s in 0..n {
        let t = n - s - 1;
        if t > m {
            continue;
        }
        for tuple in increasing_tuples(m, t) {
            let mut bundles: Vec<DivisorClass> = tuple.iter().map(|&k| req.big[k].clone()).collect();
            bundles.push(req.nef.clone());
            total += g_i(v, s, &bundles)?;
        }
    }
    for s in 0..=n - 2 {
        total -= choose(m as i128 - 1, (n - s - 2) as i128) as i64 * v.h_i(s);
    }
    Ok(total)
}

/// Section side of the difference formula with its certification trail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionDifference {
    pub value: i64,
    pub upper: SectionCount,
    pub lower: SectionCount,
}

/// `h^0(K + L_1 + ... + L_m + L) - h^0(K + L_1 + ... + L_m)`.
pub fn i1_lhs(v: &VarietyData, req: &I1Request) -> Result<SectionDifference> {
    let base = req.big.iter().fold(v.canonical().clone(), |acc, b| &acc + b);
    let upper = h0_certified(v, &(&base + &req.nef))?;
    let lower = h0_certified(v, &base)?;
    Ok(SectionDifference {
        value: upper.value - lower.value,
        upper,
        lower,
    })
}

fn require_fourfold(v: &VarietyData) -> Result<()> {
    if v.dim() != 4 {
        return Err(Error::InvalidInput(format!("fourfold required, `{}` has dimension {}", v.name(), v.dim())));
    }
    Ok(())
}

/// `g_3(K+L) + g_2(K+L, (m-2)K + (m-1)L) - h^2(O)`, which equals
/// `h^0(m(K+L)) - h^0((m-1)(K+L))` when `K+L` is nef.
pub fn eq_rhs(v: &VarietyData, l: &DivisorClass, m: i64) -> Result<i64> {
    require_fourfold(v)?;
    if m < 2 {
        return Err(Error::InvalidInput(format!("m = {m} < 2")));
    }
    let k = v.canonical();
    let adj = k + l;
    let second = &((m - 2) * k) + &((m - 1) * l);
    Ok(g_i(v, 3, std::slice::from_ref(&adj))? + g_i(v, 2, &[adj, second])? - v.h_i(2))
}

/// `(m-1)(m-2)(m^2+3m+6)/12 + 1`.
pub fn thm42_bound(m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("bound defined for m >= 2, got {m}")));
    }
    let num = (m as i128 - 1) * (m as i128 - 2) * (m as i128 * m as i128 + 3 * m as i128 + 6);
    debug_assert_eq!(num % 12, 0);
    Ok((num / 12 + 1) as i64)
}

/// One comparison `value >= required` inside a [`BoundReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub check: String,
    pub m: i64,
    pub value: Option<Rational>,
    pub required: Rational,
    pub pass: bool,
    pub abstained: bool,
    pub certifications: Vec<String>,
    pub detail: String,
}

impl BoundEntry {
    fn compare(check: &str, m: i64, value: Rational, required: Rational, certs: Vec<String>) -> Self {
        BoundEntry {
            check: check.into(),
            m,
            value: Some(value),
            required,
            pass: value >= required,
            abstained: false,
            certifications: certs,
            detail: String::new(),
        }
    }

    fn abstain(check: &str, m: i64, required: Rational, reason: String) -> Self {
        BoundEntry {
            check: check.into(),
            m,
            value: None,
            required,
            pass: false,
            abstained: true,
            certifications: Vec::new(),
            detail: reason,
        }
    }
}

/// Per-`m` results of a bound suite. Entries are kept sorted by `(check, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub name: String,
    pub inputs: String,
    pub entries: Vec<BoundEntry>,
    pub annotations: Vec<String>,
}

impl BoundReport {
    fn new(name: &str, inputs: String) -> Self {
        BoundReport {
            name: name.into(),
            inputs,
            entries: Vec::new(),
            annotations: Vec::new(),
        }
    }

    fn push(&mut self, e: BoundEntry) {
        self.entries.push(e);
        self.entries.sort_by(|a, b| (&a.check, a.m).cmp(&(&b.check, b.m)));
    }

    fn merge(&mut self, other: BoundReport) {
        for e in other.entries {
            self.push(e);
        }
        self.annotations.extend(other.annotations);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass || e.abstained)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| !e.pass && !e.abstained)
    }

    pub fn abstentions(&self) -> usize {
        self.entries.iter().filter(|e| e.abstained).count()
    }

    pub fn entry(&self, check: &str, m: i64) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.check == check && e.m == m)
    }

    pub fn to_verification(&self) -> VerificationReport {
        let mut r = VerificationReport::new(self.name.clone());
        for e in &self.entries {
            let inputs = format!("{}, m={}", self.inputs, e.m);
            let mut c = if e.abstained {
                Check::abstain(&e.check, inputs, &e.detail)
            } else {
                let mut c = Check::new(&e.check, inputs);
                c.pass = e.pass;
                c.expected = format!(">= {}", e.required);
                c.actual = e.value.map(|x| x.to_string()).unwrap_or_default();
                c
            };
            c.bound = Some(e.required.to_string());
            c.certifications = e.certifications.clone();
            r.push(c);
        }
        for a in &self.annotations {
            let mut c = Check::holds("annotation", &self.inputs, true, a);
            c.expected = "note".into();
            r.push(c);
        }
        r
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_verification().to_table())
    }
}

fn adjoint_class(v: &VarietyData, l: &DivisorClass) -> Result<DivisorClass> {
    let adj = v.canonical() + l;
    if !v.is_nef(&adj) {
        return Err(Error::InvalidInput(format!(
            "K+L = {} is not certified nef on {}",
            v.format_divisor(&adj),
            v.name()
        )));
    }
    Ok(adj)
}

fn require_kappa_x_nonnegative(v: &VarietyData) -> Result<()> {
    match v.kappa_x() {
        Some(Kappa::Dim(_)) => Ok(()),
        Some(Kappa::NegInfinity) => Err(Error::InvalidInput(format!("kappa(X) = -inf on {}", v.name()))),
        None => Err(Error::NotCertifiable(format!("kappa(X) undeclared on {}", v.name()))),
    }
}

/// `h^0(t(K+L))` for `t = 1..=t_max`; `None` where no certified count exists.
fn adjoint_counts(v: &VarietyData, adj: &DivisorClass, t_max: i64) -> Vec<(i64, Result<SectionCount>)> {
    (1..=t_max).map(|t| (t, h0_certified(v, &(t * adj)))).collect()
}

/// Lower bound `h^0(m(K+L)) >= thm42_bound(m)` for `m = 2..=m_max` and the
/// recursion `F(t) - F(t-1) >= (t-1)^2` for `t = 3..=m_max`, with
/// `F(t) = h^0(t(K+L)) - h^0((t-1)(K+L))`.
pub fn check_thm42(v: &VarietyData, l: &DivisorClass, m_max: i64) -> Result<BoundReport> {
    require_fourfold(v)?;
    require_kappa_x_nonnegative(v)?;
    let adj = adjoint_class(v, l)?;
    if m_max < 2 {
        return Err(Error::InvalidInput(format!("m_max = {m_max} < 2")));
    }
    let mut report = BoundReport::new("lower-bound", format!("{} L={}", v.name(), v.format_divisor(l)));
    let counts = adjoint_counts(v, &adj, m_max);
    let h0 = |t: i64| -> Option<&SectionCount> {
        if t == 0 {
            return None;
        }
        counts[(t - 1) as usize].1.as_ref().ok()
    };
    let cert = |t: i64| h0(t).map(|c| format!("h0({t}(K+L)): {}", c.certification));

    for m in 2..=m_max {
        let required = rat(thm42_bound(m)? as i128);
        match h0(m) {
            Some(c) => report.push(BoundEntry::compare(
                "h0(m(K+L)) >= bound",
                m,
                rat(c.value as i128),
                required,
                vec![cert(m).unwrap()],
            )),
            None => report.push(BoundEntry::abstain(
                "h0(m(K+L)) >= bound",
                m,
                required,
                format!("{}", counts[(m - 1) as usize].1.as_ref().unwrap_err()),
            )),
        }
    }
    // F(t) needs h^0 at t, t-1, t-2.
    for t in 3..=m_max {
        let required = rat(((t - 1) * (t - 1)) as i128);
        let values: Option<Vec<i64>> = [t, t - 1, t - 2].iter().map(|&s| h0(s).map(|c| c.value)).collect();
        match values {
            Some(x) => {
                let second_difference = (x[0] - x[1]) - (x[1] - x[2]);
                let certs = [t, t - 1, t - 2].iter().filter_map(|&s| cert(s)).collect();
                report.push(BoundEntry::compare(
                    "F(t)-F(t-1) >= (t-1)^2",
                    t,
                    rat(second_difference as i128),
                    required,
                    certs,
                ));
            }
            None => report.push(BoundEntry::abstain(
                "F(t)-F(t-1) >= (t-1)^2",
                t,
                required,
                "h0 not certifiable".into(),
            )),
        }
    }
    Ok(report)
}

/// `(K+L)·{32K(K+2L)^2 + 20K(K+2L)L + 56(K+L)L^2 + 55L^3} / 192`.
pub fn thm415_expression(v: &VarietyData, l: &DivisorClass) -> Result<Rational> {
    require_fourfold(v)?;
    let k = v.canonical();
    let adj = k + l;
    let k2l = k + &(2 * l);
    let total = 32 * v.intersection_number([&adj, k, &k2l, &k2l])? as i128
        + 20 * v.intersection_number([&adj, k, &k2l, l])? as i128
        + 56 * v.intersection_number([&adj, &adj, l, l])? as i128
        + 55 * v.intersection_number([&adj, l, l, l])? as i128;
    Ok(Rational::new(total, 192))
}

/// The expression is at least `111/192` and `h^0(2(K+L)) - h^0(K+L) >= 1`.
pub fn check_second_adjoint(v: &VarietyData, l: &DivisorClass) -> Result<BoundReport> {
    require_fourfold(v)?;
    require_kappa_x_nonnegative(v)?;
    let adj = adjoint_class(v, l)?;
    let mut report = BoundReport::new("second-adjoint", format!("{} L={}", v.name(), v.format_divisor(l)));
    report.push(BoundEntry::compare(
        "expression >= 111/192",
        2,
        thm415_expression(v, l)?,
        Rational::new(111, 192),
        Vec::new(),
    ));
    match (h0_certified(v, &(2 * &adj)), h0_certified(v, &adj)) {
        (Ok(two), Ok(one)) => report.push(BoundEntry::compare(
            "h0(2(K+L)) - h0(K+L) >= 1",
            2,
            rat((two.value - one.value) as i128),
            Rational::one(),
            vec![
                format!("h0(2(K+L)): {}", two.certification),
                format!("h0(K+L): {}", one.certification),
            ],
        )),
        (Err(e), _) | (_, Err(e)) => {
            if !e.is_abstention() {
                return Err(e);
            }
            report.push(BoundEntry::abstain("h0(2(K+L)) - h0(K+L) >= 1", 2, Rational::one(), e.to_string()))
        }
    }
    Ok(report)
}

/// First multiple from which non-vanishing is asserted for a declared `κ(K+L)`.
pub fn nonvanishing_start(kappa: Kappa) -> Option<i64> {
    match kappa {
        Kappa::Dim(0..=2) => Some(1),
        Kappa::Dim(3) => Some(2),
        Kappa::Dim(_) => Some(3),
        Kappa::NegInfinity => None,
    }
}

/// Case dispatch on the declared `κ(K+L)`, plus the lower-bound suite when
/// `κ(X) >= 0` is declared.
pub fn nonvanishing_report(v: &VarietyData, l: &DivisorClass, m_max: i64) -> Result<BoundReport> {
    require_fourfold(v)?;
    let adj = adjoint_class(v, l)?;
    let kappa = v.declared_kappa_adjoint(l, 1).ok_or_else(|| {
        Error::NotCertifiable(format!("kappa(K+L) undeclared for L={} on {}", v.format_divisor(l), v.name()))
    })?;
    let start = nonvanishing_start(kappa).ok_or_else(|| {
        Error::InvalidInput(format!("declared kappa(K+L) = -inf contradicts K+L nef on {}", v.name()))
    })?;
    let mut report = BoundReport::new("nonvanishing", format!("{} L={}", v.name(), v.format_divisor(l)));
    report.annotations.push(format!("kappa(K+L) = {kappa}: h0(m(K+L)) > 0 asserted for m >= {start}"));
    for m in start..=m_max {
        match h0_certified(v, &(m * &adj)) {
            Ok(c) => report.push(BoundEntry::compare(
                "h0(m(K+L)) > 0",
                m,
                rat(c.value as i128),
                Rational::one(),
                vec![format!("h0({m}(K+L)): {}", c.certification)],
            )),
            Err(e) if e.is_abstention() => {
                report.push(BoundEntry::abstain("h0(m(K+L)) > 0", m, Rational::one(), e.to_string()))
            }
            Err(e) => return Err(e),
        }
    }
    match v.kappa_x() {
        Some(Kappa::Dim(_)) if m_max >= 2 => report.merge(check_thm42(v, l, m_max)?),
        Some(Kappa::Dim(_)) => {}
        Some(Kappa::NegInfinity) => report.annotations.push("kappa(X) = -inf: lower-bound suite not applicable".into()),
        None => report.annotations.push("kappa(X) undeclared: lower-bound suite skipped".into()),
    }
    report
        .annotations
        .push("smooth fourfolds: h0(m(K+L)) > 0 for all m >= 6 whenever kappa(K+L) >= 0".into());
    Ok(report)
}

/// Superadditivity `h^0((a+b)M) >= h^0(aM) + h^0(bM) - 1` for
/// `M = K+L`, over all `a <= b` with `a + b <= r_max` where `aM` and `bM` are
/// effective.
pub fn check_superadditivity(v: &VarietyData, l: &DivisorClass, r_max: i64) -> Result<BoundReport> {
    let adj = adjoint_class(v, l)?;
    let mut report = BoundReport::new("superadditivity", format!("{} L={}", v.name(), v.format_divisor(l)));
    let counts = adjoint_counts(v, &adj, r_max);
    let get = |t: i64| counts[(t - 1) as usize].1.as_ref().ok().map(|c| c.value);
    for a in 1..r_max {
        for b in a..=r_max - a {
            let name = format!("h0(({a}+{b})M) >= h0({a}M)+h0({b}M)-1");
            match (get(a + b), get(a), get(b)) {
                (Some(s), Some(x), Some(y)) if x > 0 && y > 0 => report.push(BoundEntry::compare(
                    &name,
                    a + b,
                    rat(s as i128),
                    rat((x + y - 1) as i128),
                    Vec::new(),
                )),
                (Some(_), Some(_), Some(_)) => {
                    report.push(BoundEntry::abstain(&name, a + b, Rational::zero(), "summand not effective".into()))
                }
                _ => report.push(BoundEntry::abstain(&name, a + b, Rational::zero(), "h0 not certifiable".into())),
            }
        }
    }
    Ok(report)
}

/// Evaluated `c_2` inequalities for nef `A_1, A_2` when `K+L` is nef and big.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C2BoundCheck {
    pub c2_value: i64,
    /// `-(18 K L A_1 A_2 + 27 L^2 A_1 A_2)/8`.
    pub bound_i: Rational,
    /// `-(6 K L A_1 A_2 + 8 L^2 A_1 A_2)/3`.
    pub bound_ii1: Rational,
    pub holds_i: bool,
    /// Reported only: the alternative branch cannot be excluded numerically.
    pub holds_ii1: bool,
    pub certifications: Vec<String>,
}

pub fn c2_lower_bound_check(
    v: &VarietyData,
    l: &DivisorClass,
    a1: &DivisorClass,
    a2: &DivisorClass,
) -> Result<C2BoundCheck> {
    require_fourfold(v)?;
    let k = v.canonical();
    let adj = k + l;
    if !v.is_nef_and_big(&adj)? {
        return Err(Error::NotCertifiable(format!("K+L = {} not certified nef and big", v.format_divisor(&adj))));
    }
    for a in [a1, a2] {
        if !v.is_nef(a) {
            return Err(Error::NotCertifiable(format!("{} not certified nef", v.format_divisor(a))));
        }
    }
    let c2_value = v.c2_pair([a1, a2])?;
    let kl = v.intersection_number([k, l, a1, a2])? as i128;
    let ll = v.intersection_number([l, l, a1, a2])? as i128;
    let bound_i = -Rational::new(18 * kl + 27 * ll, 8);
    let bound_ii1 = -Rational::new(6 * kl + 8 * ll, 3);
    let c2 = rat(c2_value as i128);
    Ok(C2BoundCheck {
        c2_value,
        bound_i,
        bound_ii1,
        holds_i: c2 >= bound_i,
        holds_ii1: c2 >= bound_ii1,
        certifications: vec![
            format!("K+L={} nef+big", v.format_divisor(&adj)),
            format!("A1={}, A2={} nef", v.format_divisor(a1), v.format_divisor(a2)),
        ],
    })
}

/// Parameters of `χ(tH) = d(t-1)(t^2 + a t + b)` on a threefold with `χ(H) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicParams {
    pub d: Rational,
    pub a: Rational,
    pub b: Rational,
    /// `1 - χ_2`.
    pub g1: i64,
    /// `-1 + h^1(O) + χ_1`.
    pub g2: i64,
    /// `d(b - 2a + 2) - 1`.
    pub g2_from_params: Rational,
    pub g2_expressions_agree: bool,
    /// `3χ_3 + 2χ_2 = 2d(2a+1)`.
    pub cl_gate_value: i64,
    pub a_at_least_minus_half: bool,
}

/// Solves `χ_3 = 6d`, `χ_2 + χ_3 = 2d(a-1)`, `χ_0 = -bd` and checks the
/// remaining relation `2χ_3 + 3χ_2 + 6χ_1 = 6d(b-a)`.
pub fn cubic_params(chi: [i64; 4], h1: i64) -> Result<CubicParams> {
    let [c0, c1, c2, c3] = chi.map(|x| x as i128);
    if c3 <= 0 {
        return Err(Error::InvalidInput(format!("chi_3 = {c3} must be positive")));
    }
    let d = Rational::new(c3, 6);
    let a = rat(c2 + c3) / (rat(2) * d) + Rational::one();
    let b = -rat(c0) / d;
    let lhs = rat(2 * c3 + 3 * c2 + 6 * c1);
    let rhs = rat(6) * d * (b - a);
    if lhs != rhs {
        return Err(Error::InvalidInput(format!(
            "coefficients {chi:?} admit no (d, a, b): 2chi_3+3chi_2+6chi_1 = {lhs} but 6d(b-a) = {rhs} (chi(H) = {})",
            c0 + c1 + c2 + c3
        )));
    }
    let g2 = (-1 + h1 as i128 + c1) as i64;
    let g2_from_params = d * (b - rat(2) * a + rat(2)) - Rational::one();
    let cl_gate_value = (3 * c3 + 2 * c2) as i64;
    Ok(CubicParams {
        d,
        a,
        b,
        g1: (1 - c2) as i64,
        g2,
        g2_from_params,
        g2_expressions_agree: g2_from_params == rat(g2 as i128),
        cl_gate_value,
        a_at_least_minus_half: a >= Rational::new(-1, 2),
    })
}
