//! Numerical model of a polarized variety of dimension at most four.
//!
//! A variety is described by a finite list of generator divisor classes, the
//! top-degree intersection numbers of those generators, the canonical class,
//! the pairings of `c_2(X)` with degree `n-2` generator monomials and the
//! Hodge numbers `h^i(O_X)`. Kodaira dimensions are declarations, never
//! derived.

mod catalog;
mod description;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

pub use catalog::{by_name, catalog_build, standard_fourfolds, Family, CATALOG_NAMES};
pub use description::VarietyDescription;

/// Integer combination of a variety's generator classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        DivisorClass(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    /// The `index`-th generator as a class.
    pub fn generator(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        DivisorClass(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.rank(), other.rank(), "divisor classes over different generator sets");
        DivisorClass(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass(rhs.0.iter().map(|c| self * c).collect())
    }
}

/// Kodaira dimension: `-inf` or a value in `0..=n`. `-inf` sorts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kappa {
    NegInfinity,
    Dim(u8),
}

impl Kappa {
    pub fn is_nonnegative(self) -> bool {
        matches!(self, Kappa::Dim(_))
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::NegInfinity => write!(f, "-inf"),
            Kappa::Dim(k) => write!(f, "{k}"),
        }
    }
}

impl std::str::FromStr for Kappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" | "-infinity" | "−∞" | "-∞" => Ok(Kappa::NegInfinity),
            t => t
                .parse::<u8>()
                .map(Kappa::Dim)
                .map_err(|_| Error::InvalidInput(format!("not a Kodaira dimension: `{s}`"))),
        }
    }
}

impl Serialize for Kappa {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Kappa::NegInfinity => s.serialize_str("-inf"),
            Kappa::Dim(k) => s.serialize_u8(*k),
        }
    }
}

impl<'de> Deserialize<'de> for Kappa {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u8),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(Kappa::Dim(k)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Nef-cone descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeDescriptor {
    /// Nef iff every coordinate is `>= 0`; ample iff every coordinate is `> 0`.
    Orthant,
    /// Picard rank one: nef iff the coefficient is `>= 0`, ample iff `> 0`.
    Ray,
}

impl ConeDescriptor {
    pub fn is_nef(self, d: &DivisorClass) -> bool {
        d.0.iter().all(|&c| c >= 0)
    }

    pub fn is_ample(self, d: &DivisorClass) -> bool {
        d.0.iter().all(|&c| c > 0)
    }
}

/// Family tag enabling exact global-section counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFamily {
    Projective(u32),
    P1xP3,
    P2xP2,
    Hypersurface(u32),
    Abelian,
}

impl fmt::Display for OracleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleFamily::Projective(n) => write!(f, "p{n}"),
            OracleFamily::P1xP3 => write!(f, "p1xp3"),
            OracleFamily::P2xP2 => write!(f, "p2xp2"),
            OracleFamily::Hypersurface(d) => write!(f, "hypersurface:{d}"),
            OracleFamily::Abelian => write!(f, "abelian"),
        }
    }
}

impl std::str::FromStr for OracleFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown oracle tag `{s}`"));
        match s {
            "p1xp3" => Ok(OracleFamily::P1xP3),
            "p2xp2" => Ok(OracleFamily::P2xP2),
            "abelian" => Ok(OracleFamily::Abelian),
            _ => {
                if let Some(d) = s.strip_prefix("hypersurface:") {
                    let d: u32 = d.parse().map_err(|_| bad())?;
                    Ok(OracleFamily::Hypersurface(d))
                } else if let Some(n) = s.strip_prefix('p') {
                    let n: u32 = n.parse().map_err(|_| bad())?;
                    if (1..=4).contains(&n) {
                        Ok(OracleFamily::Projective(n))
                    } else {
                        Err(bad())
                    }
                } else {
                    Err(bad())
                }
            }
        }
    }
}

/// Exponent vector over the generators, in declaration order.
pub type Monomial = Vec<u32>;

/// Immutable numerical model of a polarized variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyData {
    name: String,
    dim: usize,
    generators: Vec<String>,
    intersection_form: BTreeMap<Monomial, i64>,
    canonical: DivisorClass,
    c2_pairings: BTreeMap<Monomial, i64>,
    hodge: Vec<i64>,
    nef_cone: ConeDescriptor,
    kappa_x: Option<Kappa>,
    kappa_adjoint: BTreeMap<DivisorClass, BTreeMap<u32, Kappa>>,
    oracle: Option<OracleFamily>,
    sre_declared: bool,
}

/// Raw parts for [`VarietyData::assemble`].
#[derive(Debug, Clone)]
pub struct VarietyParts {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<String>,
    pub intersection_form: BTreeMap<Monomial, i64>,
    pub canonical: DivisorClass,
    pub c2_pairings: BTreeMap<Monomial, i64>,
    pub hodge: Vec<i64>,
    pub nef_cone: ConeDescriptor,
    pub kappa_x: Option<Kappa>,
    pub kappa_adjoint: BTreeMap<DivisorClass, BTreeMap<u32, Kappa>>,
    pub oracle: Option<OracleFamily>,
    pub sre_declared: bool,
}

impl VarietyData {
    /// Structural checks only (shapes and ranges); numerical consistency is
    /// the job of [`VarietyData::validate`].
    pub fn assemble(p: VarietyParts) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidInput(format!("variety `{}`: {m}", p.name)));
        if !(1..=4).contains(&p.dim) {
            return bad(format!("dimension {} outside 1..=4", p.dim));
        }
        let r = p.generators.len();
        if r == 0 {
            return bad("no generators".into());
        }
        if p.nef_cone == ConeDescriptor::Ray && r != 1 {
            return bad("ray cone descriptor needs exactly one generator".into());
        }
        if p.canonical.rank() != r {
            return bad(format!("canonical class has {} coefficients, expected {r}", p.canonical.rank()));
        }
        for m in p.intersection_form.keys() {
            if m.len() != r || m.iter().sum::<u32>() as usize != p.dim {
                return bad(format!("intersection monomial {m:?} is not of degree {}", p.dim));
            }
        }
        for m in p.c2_pairings.keys() {
            if p.dim < 2 {
                return bad("c2 pairings given for a curve".into());
            }
            if m.len() != r || m.iter().sum::<u32>() as usize != p.dim - 2 {
                return bad(format!("c2 monomial {m:?} is not of degree {}", p.dim - 2));
            }
        }
        if p.hodge.len() != p.dim + 1 {
            return bad(format!("expected {} Hodge numbers, got {}", p.dim + 1, p.hodge.len()));
        }
        if p.hodge.iter().any(|&h| h < 0) {
            return bad("negative Hodge number".into());
        }
        for (l, twists) in &p.kappa_adjoint {
            if l.rank() != r {
                return bad("kappa_adjoint polarization of wrong rank".into());
            }
            if twists.values().any(|k| matches!(k, Kappa::Dim(d) if *d as usize > p.dim)) {
                return bad("declared kappa exceeds dimension".into());
            }
        }
        if matches!(p.kappa_x, Some(Kappa::Dim(d)) if d as usize > p.dim) {
            return bad("declared kappa_X exceeds dimension".into());
        }
        Ok(VarietyData {
            name: p.name,
            dim: p.dim,
            generators: p.generators,
            intersection_form: p.intersection_form,
            canonical: p.canonical,
            c2_pairings: p.c2_pairings,
            hodge: p.hodge,
            nef_cone: p.nef_cone,
            kappa_x: p.kappa_x,
            kappa_adjoint: p.kappa_adjoint,
            oracle: p.oracle,
            sre_declared: p.sre_declared,
        })
    }

    pub fn into_parts(self) -> VarietyParts {
        VarietyParts {
            name: self.name,
            dim: self.dim,
            generators: self.generators,
            intersection_form: self.intersection_form,
            canonical: self.canonical,
            c2_pairings: self.c2_pairings,
            hodge: self.hodge,
            nef_cone: self.nef_cone,
            kappa_x: self.kappa_x,
            kappa_adjoint: self.kappa_adjoint,
            oracle: self.oracle,
            sre_declared: self.sre_declared,
        }
    }

    /// Copy with one intersection number replaced.
    pub fn with_intersection(&self, monomial: Monomial, value: i64) -> Result<Self> {
        let mut p = self.clone().into_parts();
        p.intersection_form.insert(monomial, value);
        Self::assemble(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn hodge(&self) -> &[i64] {
        &self.hodge
    }

    /// `h^i(O_X)`, zero outside `0..=n`.
    pub fn h_i(&self, i: usize) -> i64 {
        self.hodge.get(i).copied().unwrap_or(0)
    }

    /// `χ(O_X) = Σ (-1)^i h^i(O_X)`.
    pub fn chi_o(&self) -> i64 {
        self.hodge
            .iter()
            .enumerate()
            .map(|(i, h)| if i % 2 == 0 { *h } else { -h })
            .sum()
    }

    pub fn nef_cone(&self) -> ConeDescriptor {
        self.nef_cone
    }

    pub fn kappa_x(&self) -> Option<Kappa> {
        self.kappa_x
    }

    pub fn oracle(&self) -> Option<OracleFamily> {
        self.oracle
    }

    pub fn sre_declared(&self) -> bool {
        self.sre_declared
    }

    pub fn intersection_form(&self) -> &BTreeMap<Monomial, i64> {
        &self.intersection_form
    }

    pub fn c2_pairings(&self) -> &BTreeMap<Monomial, i64> {
        &self.c2_pairings
    }

    /// Declared `κ(K_X + a L)`.
    pub fn declared_kappa_adjoint(&self, polarization: &DivisorClass, twist: u32) -> Option<Kappa> {
        self.kappa_adjoint.get(polarization)?.get(&twist).copied()
    }

    pub fn kappa_adjoint(&self) -> &BTreeMap<DivisorClass, BTreeMap<u32, Kappa>> {
        &self.kappa_adjoint
    }

    /// Polarizations carrying κ declarations.
    pub fn declared_polarizations(&self) -> impl Iterator<Item = &DivisorClass> {
        self.kappa_adjoint.keys()
    }

    pub fn generator(&self, index: usize) -> DivisorClass {
        DivisorClass::generator(self.rank(), index)
    }

    pub fn zero_class(&self) -> DivisorClass {
        DivisorClass::zero(self.rank())
    }

    fn check_rank(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() != self.rank() {
            return Err(Error::ArityMismatch {
                expected: self.rank(),
                got: d.rank(),
            });
        }
        Ok(())
    }

    /// Multilinear expansion of `classes` against a table of monomial values.
    fn pair_against<'a>(
        &self,
        table: &BTreeMap<Monomial, i64>,
        classes: impl IntoIterator<Item = &'a DivisorClass>,
        degree: usize,
    ) -> Result<i64> {
        let classes: Vec<&DivisorClass> = classes.into_iter().collect();
        for class in &classes {
            self.check_rank(class)?;
        }
        if classes.len() != degree {
            return Err(Error::ArityMismatch {
                expected: degree,
                got: classes.len(),
            });
        }
        let r = self.rank();
        let entries = table.keys().filter(|m| m.iter().sum::<u32>() as usize == degree).count();
        if entries as i128 == crate::rational::choose((degree + r - 1) as i128, (r - 1) as i128) {
            // complete table: sum over stored monomials, no missing-key checks needed
            let mut total: i128 = 0;
            let mut scratch = Vec::with_capacity(r);
            for (mono, &value) in table {
                if mono.iter().sum::<u32>() as usize != degree || value == 0 {
                    continue;
                }
                scratch.clear();
                scratch.extend_from_slice(mono);
                total += value as i128 * monomial_coefficient(&mut scratch, &classes);
            }
            return i64::try_from(total).map_err(|_| Error::ModelInconsistent("intersection number overflows".into()));
        }
        let mut expansion: BTreeMap<Monomial, i128> = BTreeMap::from([(vec![0; r], 1)]);
        for class in classes {
            let mut next = BTreeMap::new();
            for (mono, coef) in &expansion {
                for (g, &x) in class.0.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let mut m = mono.clone();
                    m[g] += 1;
                    *next.entry(m).or_insert(0i128) += coef * x as i128;
                }
            }
            expansion = next;
        }
        let mut total: i128 = 0;
        for (mono, coef) in expansion {
            if coef == 0 {
                continue;
            }
            let value = table
                .get(&mono)
                .ok_or_else(|| Error::ModelIncomplete(self.monomial_key(&mono)))?;
            total += coef * *value as i128;
        }
        i64::try_from(total).map_err(|_| Error::ModelInconsistent("intersection number overflows".into()))
    }

    /// `D_1 ⋯ D_n`.
    pub fn intersection_number<'a>(&self, classes: impl IntoIterator<Item = &'a DivisorClass>) -> Result<i64> {
        self.pair_against(&self.intersection_form, classes, self.dim)
    }

    /// `c_2(X) · D_1 ⋯ D_{n-2}`.
    pub fn c2_pair<'a>(&self, classes: impl IntoIterator<Item = &'a DivisorClass>) -> Result<i64> {
        if self.dim < 2 {
            return Err(Error::InvalidInput("c2 pairing needs dimension >= 2".into()));
        }
        self.pair_against(&self.c2_pairings, classes, self.dim - 2)
    }

    /// `D^n`.
    pub fn top_power(&self, d: &DivisorClass) -> Result<i64> {
        self.intersection_number(std::iter::repeat_n(d, self.dim))
    }

    pub fn is_nef(&self, d: &DivisorClass) -> bool {
        d.rank() == self.rank() && self.nef_cone.is_nef(d)
    }

    pub fn is_ample(&self, d: &DivisorClass) -> bool {
        d.rank() == self.rank() && self.nef_cone.is_ample(d)
    }

    /// Nef with positive top self-intersection.
    pub fn is_nef_and_big(&self, d: &DivisorClass) -> Result<bool> {
        if !self.is_nef(d) {
            return Ok(false);
        }
        Ok(self.top_power(d)? > 0)
    }

    /// Exact `h^0(O_X(D))` from the family's section-count formula.
    pub fn h0_exact(&self, d: &DivisorClass) -> Result<i64> {
        self.check_rank(d)?;
        let family = self
            .oracle
            .ok_or_else(|| Error::Unsupported(format!("no section-count oracle for `{}`", self.name)))?;
        catalog::h0_exact(self, family, d)
    }

    /// Renders an exponent vector in the `a^2 b` key syntax; the empty monomial is `1`.
    pub fn monomial_key(&self, mono: &[u32]) -> String {
        let parts: Vec<String> = mono
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Parses a monomial key such as `a b^3` or `H H H H`.
    pub fn parse_monomial(&self, key: &str) -> Result<Monomial> {
        parse_monomial(&self.generators, key)
    }

    /// Parses a divisor such as `2a+1b`, `-1H`, `H`, `0` or `K+2H`.
    /// `K` denotes the canonical class unless a generator has that name.
    pub fn parse_divisor(&self, expr: &str) -> Result<DivisorClass> {
        parse_divisor(&self.generators, Some(&self.canonical), expr)
    }

    pub fn format_divisor(&self, d: &DivisorClass) -> String {
        format_divisor(&self.generators, d)
    }

    /// Structural and numerical consistency report.
    pub fn validate(&self) -> VerificationReport {
        validate(self)
    }
}

pub(crate) fn parse_monomial(generators: &[String], key: &str) -> Result<Monomial> {
    let mut mono = vec![0u32; generators.len()];
    let key = key.trim();
    if key == "1" || key.is_empty() {
        return Ok(mono);
    }
    for tok in key.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad exponent in monomial `{key}`")))?,
            ),
            None => (tok, 1),
        };
        let g = generators
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator `{name}` in monomial `{key}`")))?;
        mono[g] += exp;
    }
    Ok(mono)
}

pub(crate) fn parse_divisor(
    generators: &[String],
    canonical: Option<&DivisorClass>,
    expr: &str,
) -> Result<DivisorClass> {
    let bad = |m: &str| Error::InvalidInput(format!("divisor `{expr}`: {m}"));
    let s: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad("empty expression"));
    }
    let mut out = DivisorClass::zero(generators.len());
    let mut i = 0;
    while i < s.len() {
        let mut sign = 1i64;
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(bad("expected `+` or `-` between terms"));
        }
        let start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start {
            Some(
                s[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad("coefficient out of range"))?,
            )
        } else {
            None
        };
        let nstart = i;
        if i < s.len() && (s[i].is_ascii_alphabetic() || s[i] == '_') {
            i += 1;
            while i < s.len() && (s[i].is_ascii_alphanumeric() || s[i] == '_') {
                i += 1;
            }
        }
        let name: String = s[nstart..i].iter().collect();
        let c = sign * coeff.unwrap_or(1);
        if name.is_empty() {
            match coeff {
                Some(0) => continue,
                _ => return Err(bad("term without a generator name")),
            }
        }
        if let Some(g) = generators.iter().position(|x| *x == name) {
            out.0[g] += c;
        } else if name == "K" {
            let k = canonical.ok_or_else(|| bad("canonical class unavailable"))?;
            out = &out + &(c * k);
        } else {
            return Err(bad(&format!("unknown generator `{name}`")));
        }
    }
    Ok(out)
}

pub(crate) fn format_divisor(generators: &[String], d: &DivisorClass) -> String {
    let mut out = String::new();
    for (c, g) in d.0.iter().zip(generators) {
        if *c == 0 {
            continue;
        }
        if *c > 0 && !out.is_empty() {
            out.push('+');
        }
        out.push_str(&format!("{c}{g}"));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn sample_ample(v: &VarietyData) -> Vec<DivisorClass> {
    let r = v.rank();
    let mut out = Vec::new();
    let mut cur = vec![1i64; r];
    loop {
        out.push(DivisorClass(cur.clone()));
        let mut j = 0;
        loop {
            if j == r {
                return out;
            }
            if cur[j] < 3 {
                cur[j] += 1;
                break;
            }
            cur[j] = 1;
            j += 1;
        }
    }
}

fn validate(v: &VarietyData) -> VerificationReport {
    let mut report = VerificationReport::new(format!("validate {}", v.name));
    let n = v.dim;

    // Monomial-keyed storage makes both tables symmetric; the loader rejects
    // conflicting duplicate keys.
    report.push(Check::holds("symmetry", "intersection form, c2 pairings", true, "monomial-keyed"));

    let missing: Vec<String> = crate::binpoly::MultiIndex::all_up_to(v.rank(), n as u32)
        .into_iter()
        .filter(|m| m.total_degree() as usize == n)
        .filter(|m| !v.intersection_form.contains_key(&m.0))
        .map(|m| v.monomial_key(&m.0))
        .collect();
    report.push(Check::holds(
        "intersection form complete",
        format!("degree-{n} monomials"),
        missing.is_empty(),
        if missing.is_empty() { "complete".into() } else { format!("missing {}", missing.join(", ")) },
    ));
    if n >= 2 {
        let missing: Vec<String> = crate::binpoly::MultiIndex::all_up_to(v.rank(), n as u32 - 2)
            .into_iter()
            .filter(|m| m.total_degree() as usize == n - 2)
            .filter(|m| !v.c2_pairings.contains_key(&m.0))
            .map(|m| v.monomial_key(&m.0))
            .collect();
        report.push(Check::holds(
            "c2 pairings complete",
            format!("degree-{} monomials", n - 2),
            missing.is_empty(),
            if missing.is_empty() { "complete".into() } else { format!("missing {}", missing.join(", ")) },
        ));
    }

    report.push(Check::equal("connected", "h^0(O)", 1, v.h_i(0)));

    let samples = sample_ample(v);
    for l in &samples {
        let ls = v.format_divisor(l);
        if n == 4 {
            let k3l = &v.canonical + &(3 * l);
            let check = match v.intersection_number([&k3l, l, l, l]) {
                Ok(x) => Check::holds("parity (K+3L)L^3", format!("L={ls}"), x % 2 == 0, format!("{x}")),
                Err(e) => Check::holds("parity (K+3L)L^3", format!("L={ls}"), false, e.to_string()),
            };
            report.push(check);
        }
        let check = match crate::hrr::chi_multi(v, std::slice::from_ref(l)) {
            Ok(p) => Check::holds(
                "chi coefficients integral",
                format!("L={ls}"),
                p.is_integral(),
                p.terms().map(|(i, c)| format!("{i}:{c}")).collect::<Vec<_>>().join(" "),
            ),
            Err(e) => Check::holds("chi coefficients integral", format!("L={ls}"), false, e.to_string()),
        };
        report.push(check);

        if v.oracle.is_some() {
            for m in 0..=4i64 {
                let d = m * l;
                let d_minus_k = &d - &v.canonical;
                if !v.is_ample(&d_minus_k) {
                    continue;
                }
                let inputs = format!("D={}", v.format_divisor(&d));
                let check = match (crate::hrr::chi_divisor(v, &d), v.h0_exact(&d)) {
                    (Ok(chi), Ok(h0)) => Check::equal("chi = h0 (oracle)", inputs, h0, chi)
                        .with_certification("D-K ample"),
                    (Err(e), Ok(h0)) => {
                        let mut c = Check::holds("chi = h0 (oracle)", inputs, false, e.to_string());
                        c.expected = h0.to_string();
                        c
                    }
                    (_, Err(e)) => Check::holds("chi = h0 (oracle)", inputs, false, e.to_string()),
                };
                report.push(check);
            }
        }
    }
    report
}

/// Coefficient of `x^mono` in `prod_j (sum_g classes[j]_g x_g)`.
fn monomial_coefficient(mono: &mut [u32], classes: &[&DivisorClass]) -> i128 {
    let Some((first, rest)) = classes.split_first() else {
        return 1;
    };
    let mut acc = 0i128;
    for (g, &c) in first.0.iter().enumerate() {
        if c != 0 && mono[g] > 0 {
            mono[g] -= 1;
            acc += c as i128 * monomial_coefficient(mono, rest);
            mono[g] += 1;
        }
    }
    acc
}
