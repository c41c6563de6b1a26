//! Adjunction-theoretic decision table over declared Kodaira dimensions of
//! adjoint twists `K + aL`.
//!
//! The three-way split on `κ(K+(n-2)L)` separates the types `(1)`..`(7.4)`,
//! the Mukai case `(7.5)` and `(7.6)`..`(7.9)`. On fourfolds the sign of
//! `κ(K+L)` further selects between the second-reduction case `TH2-1` and the
//! lists `TH2-2.1` / `TH2-2.2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::{Check, VerificationReport};
use crate::variety::{ConeDescriptor, DivisorClass, Kappa, OracleFamily, VarietyData};

/// Entries of the adjunction-theoretic type list, by their numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FineType {
    ProjectiveSpace,
    Quadric,
    ScrollOverCurve,
    DelPezzo,
    QuadricFibrationOverCurve,
    ScrollOverSurface,
    /// Reduction `(P^4, O(2))`.
    R71,
    /// Reduction `(Q^3, O(2))`.
    R72,
    /// Reduction `(P^3, O(3))`.
    R73,
    /// Reduction a `P^2`-bundle over a curve with `(P^2, O(2))` fibers.
    R74,
    /// Reduction is a Mukai manifold.
    R75,
    /// Reduction is a Del Pezzo fibration over a curve.
    R76,
    /// Reduction is a quadric fibration over a surface.
    R77,
    /// Reduction is a scroll over a threefold.
    R78,
    /// `K_M + (n-2)A` nef and big.
    R79,
}

const FINE_TYPES: [(FineType, &str); 15] = [
    (FineType::ProjectiveSpace, "1"),
    (FineType::Quadric, "2"),
    (FineType::ScrollOverCurve, "3"),
    (FineType::DelPezzo, "4"),
    (FineType::QuadricFibrationOverCurve, "5"),
    (FineType::ScrollOverSurface, "6"),
    (FineType::R71, "7.1"),
    (FineType::R72, "7.2"),
    (FineType::R73, "7.3"),
    (FineType::R74, "7.4"),
    (FineType::R75, "7.5"),
    (FineType::R76, "7.6"),
    (FineType::R77, "7.7"),
    (FineType::R78, "7.8"),
    (FineType::R79, "7.9"),
];

impl FineType {
    pub fn code(self) -> &'static str {
        FINE_TYPES.iter().find(|(t, _)| *t == self).map(|(_, c)| *c).unwrap()
    }

    pub fn all() -> impl Iterator<Item = FineType> {
        FINE_TYPES.iter().map(|(t, _)| *t)
    }

    /// Group selected by `κ(K+(n-2)L)`.
    pub fn group(self) -> Group {
        match self {
            FineType::R75 => Group::Mukai,
            FineType::R76 | FineType::R77 | FineType::R78 | FineType::R79 => Group::Positive,
            _ => Group::NegativeInfinity,
        }
    }

    /// Whether the type exists in dimension `n`.
    pub fn allowed_in(self, n: usize) -> bool {
        match self {
            FineType::R71 => n == 4,
            FineType::R72 | FineType::R73 | FineType::R74 => n == 3,
            FineType::R78 => n >= 4,
            _ => n >= 3,
        }
    }

    /// Member of the fourfold list with `κ(K+L) = -∞` not passing through a
    /// second reduction.
    pub fn in_th2_first_list(self) -> bool {
        !matches!(self, FineType::R72 | FineType::R73 | FineType::R74 | FineType::R79)
    }
}

impl fmt::Display for FineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.code())
    }
}

impl FromStr for FineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let code = s.trim().trim_start_matches('(').trim_end_matches(')');
        FINE_TYPES
            .iter()
            .find(|(_, c)| *c == code)
            .map(|(t, _)| *t)
            .ok_or_else(|| Error::InvalidInput(format!("unknown fine type `{s}`")))
    }
}

/// Labels of the second-reduction case list carried without interpretation.
pub const FUJITA_LABELS: [&str; 10] = [
    "4.2", "4.4.0", "4.4.1", "4.4.2", "4.6.0.0", "4.6.0.1.0", "4.6.0.2.1", "4.6.1", "4.7", "4.8.0",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Group {
    NegativeInfinity,
    Mukai,
    Positive,
}

impl Group {
    fn of(kappa: Kappa) -> Group {
        match kappa {
            Kappa::NegInfinity => Group::NegativeInfinity,
            Kappa::Dim(0) => Group::Mukai,
            Kappa::Dim(_) => Group::Positive,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Group::NegativeInfinity => "(1)-(7.4)",
            Group::Mukai => "7.5",
            Group::Positive => "(7.6)-(7.9)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Exact,
    CoarseGroup,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certainty::Exact => "exact",
            Certainty::CoarseGroup => "coarse-group",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionLabel {
    /// `"(1)-(7.4)"`, `"7.5"`, `"(7.6)-(7.9)"`, or a fine type code.
    pub type_label: String,
    pub type_certainty: Certainty,
    /// Fourfolds only: `"TH2-1"`, `"TH2-2.1"`, `"TH2-2.2"`, or `"TH2-2"`
    /// when the two lists cannot be told apart.
    pub fourfold_label: Option<String>,
    pub fourfold_certainty: Option<Certainty>,
    /// Opaque second-reduction case label.
    pub fujita: Option<String>,
    pub notes: Vec<String>,
}

impl AdjunctionLabel {
    /// Most specific label: the fourfold label when present.
    pub fn primary(&self) -> &str {
        self.fourfold_label.as_deref().unwrap_or(&self.type_label)
    }
}

impl fmt::Display for AdjunctionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [type {} ({})", self.primary(), self.type_label, self.type_certainty)?;
        if let Some(c) = self.fourfold_certainty {
            write!(f, ", fourfold {c}")?;
        }
        if let Some(j) = &self.fujita {
            write!(f, ", case ({j})")?;
        }
        f.write_str("]")
    }
}

/// Declared `κ(K + aL)` for `a ∈ {n-3, n-2, n-1}` plus optional refinements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeclaredInvariants {
    pub n: usize,
    /// Twist `a` -> `κ(K + aL)`; missing twists are undeclared.
    pub kappa: BTreeMap<u32, Kappa>,
    pub fine_type: Option<FineType>,
    pub fujita: Option<String>,
    /// Nef value of the second reduction.
    pub tau: Option<Rational>,
}

impl DeclaredInvariants {
    pub fn new(n: usize) -> Self {
        DeclaredInvariants {
            n,
            ..Default::default()
        }
    }

    pub fn with_kappa(mut self, twist: u32, k: Kappa) -> Self {
        self.kappa.insert(twist, k);
        self
    }

    pub fn kappa_at(&self, twist: usize) -> Option<Kappa> {
        self.kappa.get(&(twist as u32)).copied()
    }

    /// Reads declared values from a variety; twist `0` is `κ(X)`.
    pub fn from_variety(v: &VarietyData, l: &DivisorClass) -> Self {
        let n = v.dim();
        let mut inv = DeclaredInvariants::new(n);
        for a in n.saturating_sub(3)..n {
            let k = if a == 0 {
                v.kappa_x()
            } else {
                v.declared_kappa_adjoint(l, a as u32)
            };
            if let Some(k) = k {
                inv.kappa.insert(a as u32, k);
            }
        }
        inv
    }
}

pub fn validate_invariants(inv: &DeclaredInvariants) -> VerificationReport {
    let mut r = VerificationReport::new("invariants");
    let n = inv.n;
    r.push(Check::holds(
        "dimension in 3..=4",
        format!("n={n}"),
        (3..=4).contains(&n),
        format!("n={n}"),
    ));
    for (&a, &k) in &inv.kappa {
        let inputs = format!("kappa(K+{a}L)={k}");
        r.push(Check::holds("twist in {n-3,n-2,n-1}", &inputs, a as usize + 3 >= n && (a as usize) < n, format!("a={a}")));
        let in_range = match k {
            Kappa::NegInfinity => true,
            Kappa::Dim(d) => d as usize <= n,
        };
        r.push(Check::holds("kappa <= n", &inputs, in_range, k.to_string()));
    }
    let declared: Vec<(u32, Kappa)> = inv.kappa.iter().map(|(&a, &k)| (a, k)).collect();
    for w in declared.windows(2) {
        let ((a, ka), (b, kb)) = (w[0], w[1]);
        r.push(Check::holds(
            "kappa monotone in twist",
            format!("kappa(K+{a}L)={ka}, kappa(K+{b}L)={kb}"),
            ka <= kb,
            format!("{ka} <= {kb}"),
        ));
    }
    if let Some(t) = inv.fine_type {
        r.push(Check::holds("fine type exists in dimension", format!("type {t}, n={n}"), t.allowed_in(n), ""));
        if let Some(k) = inv.kappa_at(n.saturating_sub(2)) {
            r.push(Check::holds(
                "fine type matches kappa(K+(n-2)L)",
                format!("type {t}, kappa={k}"),
                t.group() == Group::of(k),
                Group::of(k).label(),
            ));
        }
    }
    if let Some(j) = &inv.fujita {
        r.push(Check::holds("known case label", j.as_str(), FUJITA_LABELS.contains(&j.as_str()), ""));
        r.push(Check::holds("case label needs n = 4", j.as_str(), n == 4, format!("n={n}")));
        if let Some(k) = inv.kappa_at(1) {
            r.push(Check::holds("case label needs kappa(K+L) = -inf", j.as_str(), k == Kappa::NegInfinity, k.to_string()));
        }
        if let Some(t) = inv.fine_type {
            r.push(Check::holds(
                "case label excludes first-list types",
                format!("type {t}, case {j}"),
                !t.in_th2_first_list(),
                "",
            ));
        }
    }
    if let (Some(tau), Some(k)) = (inv.tau, inv.kappa_at(1)) {
        if n == 4 && k.is_nonnegative() {
            r.push(Check::holds("tau <= 1 when kappa(K+L) >= 0", format!("tau={tau}"), tau <= Rational::one(), tau.to_string()));
        }
    }
    r
}

pub fn classify(inv: &DeclaredInvariants) -> Result<AdjunctionLabel> {
    let report = validate_invariants(inv);
    if !report.passed() {
        let listed: Vec<String> = report.failures().map(|c| format!("{} ({})", c.name, c.inputs)).collect();
        return Err(Error::InvalidInput(format!("invalid invariants: {}", listed.join("; "))));
    }
    let n = inv.n;
    let k_mid = inv.kappa_at(n - 2).ok_or_else(|| {
        Error::NotCertifiable(format!("kappa(K+{}L) undeclared; the type group is undetermined", n - 2))
    })?;
    let group = Group::of(k_mid);
    let mut label = AdjunctionLabel {
        type_label: group.label().into(),
        type_certainty: Certainty::CoarseGroup,
        fourfold_label: None,
        fourfold_certainty: None,
        fujita: None,
        notes: Vec::new(),
    };
    if let Some(t) = inv.fine_type {
        label.type_label = t.code().into();
        label.type_certainty = Certainty::Exact;
    } else if group == Group::Mukai {
        label.type_certainty = Certainty::Exact;
    }
    if n != 4 {
        return Ok(label);
    }
    let k1 = inv.kappa_at(1).ok_or_else(|| {
        Error::NotCertifiable("kappa(K+L) undeclared; the fourfold case is undetermined".into())
    })?;
    let (fourfold, certainty) = if k1.is_nonnegative() {
        label
            .notes
            .push("birational to a Gorenstein W3 with tau(H3) <= 1 and matching adjoint section counts".into());
        ("TH2-1", Certainty::Exact)
    } else if let Some(j) = &inv.fujita {
        label.fujita = Some(j.clone());
        ("TH2-2.2", Certainty::Exact)
    } else if let Some(t) = inv.fine_type {
        if t.in_th2_first_list() {
            ("TH2-2.1", Certainty::Exact)
        } else {
            ("TH2-2.2", Certainty::Exact)
        }
    } else if group == Group::Positive {
        label.notes.push("(7.6)-(7.8) give TH2-2.1, (7.9) gives TH2-2.2; declare a fine type to decide".into());
        ("TH2-2", Certainty::CoarseGroup)
    } else {
        ("TH2-2.1", Certainty::Exact)
    };
    label.fourfold_label = Some(fourfold.into());
    label.fourfold_certainty = Some(certainty);
    Ok(label)
}

/// `κ(K + aL)` computed from numerical data where it is determined: on a
/// Picard-rank-one model by the sign of `K + aL` along the ray, and on a
/// product of projective spaces by the signs of the bidegree.
pub fn surrogate_kappa(v: &VarietyData, l: &DivisorClass, a: i64) -> Option<Kappa> {
    let d = v.canonical() + &(a * l);
    let n = v.dim() as u8;
    match v.nef_cone() {
        ConeDescriptor::Ray => Some(match d.coeffs()[0].signum() {
            1 => Kappa::Dim(n),
            0 => Kappa::Dim(0),
            _ => Kappa::NegInfinity,
        }),
        ConeDescriptor::Orthant => {
            let dims: &[u8] = match v.oracle()? {
                OracleFamily::P1xP3 => &[1, 3],
                OracleFamily::P2xP2 => &[2, 2],
                _ => return None,
            };
            if d.coeffs().iter().any(|&c| c < 0) {
                return Some(Kappa::NegInfinity);
            }
            Some(Kappa::Dim(
                d.coeffs().iter().zip(dims).filter(|(&c, _)| c > 0).map(|(_, &k)| k).sum(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::{by_name, standard_fourfolds};

    fn fourfold(k3: Option<Kappa>, k2: Option<Kappa>, k1: Option<Kappa>) -> DeclaredInvariants {
        let mut inv = DeclaredInvariants::new(4);
        for (a, k) in [(3, k3), (2, k2), (1, k1)] {
            if let Some(k) = k {
                inv.kappa.insert(a, k);
            }
        }
        inv
    }

    const NEG: Kappa = Kappa::NegInfinity;

    #[test]
    fn validation_examples() {
        let inv = fourfold(Some(NEG), Some(Kappa::Dim(0)), None);
        assert!(!validate_invariants(&inv).passed());
        let inv = fourfold(Some(Kappa::Dim(4)), Some(Kappa::Dim(4)), Some(Kappa::Dim(4)));
        assert!(validate_invariants(&inv).passed());
        let inv = fourfold(None, None, Some(Kappa::Dim(5)));
        assert!(!validate_invariants(&inv).passed());
    }

    #[test]
    fn validation_checks_declarations() {
        let mut inv = fourfold(Some(Kappa::Dim(4)), Some(Kappa::Dim(4)), Some(Kappa::Dim(4)));
        inv.fine_type = Some(FineType::ProjectiveSpace);
        assert!(!validate_invariants(&inv).passed());
        inv.fine_type = Some(FineType::R72);
        assert!(!validate_invariants(&inv).passed());
        inv.fine_type = Some(FineType::R79);
        assert!(validate_invariants(&inv).passed());
        inv.tau = Some(Rational::new(3, 2));
        assert!(!validate_invariants(&inv).passed());
        let mut inv = fourfold(None, None, Some(NEG));
        inv.fujita = Some("4.9".into());
        assert!(!validate_invariants(&inv).passed());
        inv.fujita = Some("4.7".into());
        assert!(validate_invariants(&inv).passed());
        let mut inv = fourfold(None, None, None);
        inv.kappa.insert(0, Kappa::Dim(0));
        assert!(!validate_invariants(&inv).passed());
    }

    #[test]
    fn projective_fourfold_labels() {
        let p4 = by_name("P4").unwrap();
        let h = p4.parse_divisor("H").unwrap();
        let inv = DeclaredInvariants::from_variety(&p4, &h);
        let label = classify(&inv).unwrap();
        assert_eq!(label.type_label, "(1)-(7.4)");
        assert_eq!(label.type_certainty, Certainty::CoarseGroup);
        assert_eq!(label.primary(), "TH2-2.1");
        let mut inv = inv;
        inv.fine_type = Some("1".parse().unwrap());
        let label = classify(&inv).unwrap();
        assert_eq!((label.type_label.as_str(), label.type_certainty), ("1", Certainty::Exact));
    }

    #[test]
    fn general_type_and_abelian_labels() {
        for (name, l) in [("X6", "H"), ("A4", "L")] {
            let v = by_name(name).unwrap();
            let l = v.parse_divisor(l).unwrap();
            let label = classify(&DeclaredInvariants::from_variety(&v, &l)).unwrap();
            assert_eq!(label.type_label, "(7.6)-(7.9)");
            assert_eq!(label.primary(), "TH2-1");
            assert_eq!(label.fourfold_certainty, Some(Certainty::Exact));
        }
    }

    #[test]
    fn mukai_and_second_list() {
        let inv = fourfold(Some(Kappa::Dim(4)), Some(Kappa::Dim(0)), Some(NEG));
        let label = classify(&inv).unwrap();
        assert_eq!((label.type_label.as_str(), label.primary()), ("7.5", "TH2-2.1"));
        let inv = fourfold(Some(Kappa::Dim(4)), Some(Kappa::Dim(4)), Some(NEG));
        let label = classify(&inv).unwrap();
        assert_eq!(label.primary(), "TH2-2");
        assert_eq!(label.fourfold_certainty, Some(Certainty::CoarseGroup));
        let mut refined = inv.clone();
        refined.fine_type = Some(FineType::R79);
        assert_eq!(classify(&refined).unwrap().primary(), "TH2-2.2");
        refined.fine_type = Some(FineType::R77);
        assert_eq!(classify(&refined).unwrap().primary(), "TH2-2.1");
        let mut opaque = inv;
        opaque.fujita = Some("4.6.0.1.0".into());
        let label = classify(&opaque).unwrap();
        assert_eq!((label.primary(), label.fujita.as_deref()), ("TH2-2.2", Some("4.6.0.1.0")));
    }

    #[test]
    fn undeclared_kappa_abstains() {
        let inv = fourfold(Some(Kappa::Dim(4)), None, Some(Kappa::Dim(4)));
        assert!(matches!(classify(&inv), Err(Error::NotCertifiable(_))));
        let inv = fourfold(None, Some(Kappa::Dim(4)), None);
        assert!(matches!(classify(&inv), Err(Error::NotCertifiable(_))));
        let inv = fourfold(Some(NEG), Some(Kappa::Dim(0)), None);
        assert!(matches!(classify(&inv), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn threefolds_stop_at_type_group() {
        let p3 = by_name("P3").unwrap();
        let h = p3.parse_divisor("H").unwrap();
        let inv = DeclaredInvariants::from_variety(&p3, &h);
        let label = classify(&inv).unwrap();
        assert_eq!(label.type_label, "(1)-(7.4)");
        assert!(label.fourfold_label.is_none());
    }

    #[test]
    fn classification_is_total_and_follows_split() {
        let values = [NEG, Kappa::Dim(0), Kappa::Dim(1), Kappa::Dim(2), Kappa::Dim(3), Kappa::Dim(4)];
        for &k3 in &values {
            for &k2 in &values {
                for &k1 in &values {
                    let inv = fourfold(Some(k3), Some(k2), Some(k1));
                    match classify(&inv) {
                        Ok(label) => assert_eq!(label.type_label, Group::of(k2).label()),
                        Err(e) => {
                            assert!(!validate_invariants(&inv).passed(), "{e}");
                            assert!(!(k1 <= k2 && k2 <= k3));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fine_type_codes_round_trip() {
        for t in FineType::all() {
            assert_eq!(t.code().parse::<FineType>().unwrap(), t);
            assert_eq!(t.to_string().parse::<FineType>().unwrap(), t);
        }
        assert!("8".parse::<FineType>().is_err());
    }

    #[test]
    fn surrogates_match_catalog_declarations() {
        let mut compared = 0;
        let mut varieties = standard_fourfolds();
        varieties.extend(["P2", "P3", "X2", "X8"].map(|n| by_name(n).unwrap()));
        for v in &varieties {
            let name = v.name();
            for l in v.declared_polarizations() {
                for (&a, &declared) in &v.kappa_adjoint()[l] {
                    if let Some(s) = surrogate_kappa(v, l, a as i64) {
                        assert_eq!(s, declared, "{name} L={} a={a}", v.format_divisor(l));
                        compared += 1;
                    }
                }
            }
        }
        assert!(compared > 20, "{compared}");
    }

    #[test]
    fn surrogate_labels_match_declared_labels() {
        for v in standard_fourfolds() {
            for l in v.declared_polarizations() {
                let declared = DeclaredInvariants::from_variety(&v, l);
                let mut surrogate = DeclaredInvariants::new(4);
                for a in 1..=3 {
                    surrogate.kappa.insert(a, surrogate_kappa(&v, l, a as i64).unwrap());
                }
                assert_eq!(classify(&surrogate).unwrap(), classify(&declared).unwrap(), "{}", v.name());
            }
        }
    }
}
