//! Riemann–Roch for line bundles on varieties of dimension at most four.
//!
//! `χ(D) = χ(O_X) + Σ_{k=1}^{n} D^k/k! · T_{n-k}`, where the Todd pieces
//! `T_1 = c_1/2`, `T_2 = (c_1^2 + c_2)/12` and `T_3 = c_1 c_2/24` enter only as
//! pairings against powers of `D`, and the degree-`n` Todd constant is
//! replaced by `χ(O_X)` from the Hodge numbers.

use std::fmt;

use crate::binpoly::{coefficients_from_oracle, BinBasisPoly};
use crate::error::{Error, Result};
use crate::rational::{rat, to_integer, Rational};
use crate::variety::{DivisorClass, VarietyData};

/// Todd pairing functionals of a variety, with `c_1 = -K_X`.
pub struct ToddData<'a> {
    variety: &'a VarietyData,
    c1: DivisorClass,
}

impl<'a> ToddData<'a> {
    pub fn new(variety: &'a VarietyData) -> Self {
        ToddData {
            variety,
            c1: -variety.canonical(),
        }
    }

    /// `T_1 · D_1 ⋯ D_{n-1}`.
    pub fn t1(&self, classes: &[&DivisorClass]) -> Result<Rational> {
        let mut all = vec![&self.c1];
        all.extend_from_slice(classes);
        Ok(Rational::new(self.variety.intersection_number(all)? as i128, 2))
    }

    /// `T_2 · D_1 ⋯ D_{n-2}`.
    pub fn t2(&self, classes: &[&DivisorClass]) -> Result<Rational> {
        let mut sq = vec![&self.c1, &self.c1];
        sq.extend_from_slice(classes);
        let c1_sq = self.variety.intersection_number(sq)? as i128;
        let c2 = self.variety.c2_pair(classes.iter().copied())? as i128;
        Ok(Rational::new(c1_sq + c2, 12))
    }

    /// `T_3 · D_1 ⋯ D_{n-3}`.
    pub fn t3(&self, classes: &[&DivisorClass]) -> Result<Rational> {
        let mut all = vec![&self.c1];
        all.extend_from_slice(classes);
        Ok(Rational::new(self.variety.c2_pair(all)? as i128, 24))
    }
}

/// `χ(O_X(D))` as an exact rational, before the integrality check.
fn chi_rational(v: &VarietyData, d: &DivisorClass) -> Result<Rational> {
    let n = v.dim();
    let todd = ToddData::new(v);
    let powers = |k: usize| vec![d; k];
    let mut chi = rat(v.chi_o() as i128);
    let mut factorial = 1i128;
    for k in 1..=n {
        factorial *= k as i128;
        let ch_k = |pairing: Rational| pairing / rat(factorial);
        let term = match n - k {
            0 => rat(v.intersection_number(powers(k))? as i128),
            1 => todd.t1(&powers(k))?,
            2 => todd.t2(&powers(k))?,
            3 => todd.t3(&powers(k))?,
            _ => unreachable!("dimension is at most four"),
        };
        chi += ch_k(term);
    }
    Ok(chi)
}

/// Euler characteristic of `O_X(D)`; a non-integer value is a model error.
pub fn chi_divisor(v: &VarietyData, d: &DivisorClass) -> Result<i64> {
    if d.rank() != v.rank() {
        return Err(Error::ArityMismatch {
            expected: v.rank(),
            got: d.rank(),
        });
    }
    let chi = chi_rational(v, d)?;
    to_integer(chi, &format!("chi({}) on {}", v.format_divisor(d), v.name()))
}

/// Binomial-basis expansion of `t -> χ(t_1 D_1 + ... + t_k D_k)`.
pub fn chi_multi(v: &VarietyData, bundles: &[DivisorClass]) -> Result<BinBasisPoly> {
    let k = bundles.len();
    if k == 0 || k > v.dim() {
        return Err(Error::InvalidInput(format!(
            "chi_multi needs between 1 and {} bundles, got {k}",
            v.dim()
        )));
    }
    let zero = v.zero_class();
    coefficients_from_oracle(
        |t: &[i64]| {
            let d = bundles
                .iter()
                .zip(t)
                .fold(zero.clone(), |acc, (b, &tj)| &acc + &(tj * b));
            chi_divisor(v, &d).map(|x| rat(x as i128))
        },
        k,
        v.dim() as u32,
    )
}

/// `h^0(D)` when `D - K_X` is nef and big, so all higher cohomology of `D`
/// vanishes by Kawamata–Viehweg.
pub fn h0_via_vanishing(v: &VarietyData, d: &DivisorClass) -> Result<i64> {
    let rest = d - v.canonical();
    if !v.is_nef_and_big(&rest)? {
        return Err(Error::NotCertifiable(format!(
            "D - K = {} is not nef and big on {}",
            v.format_divisor(&rest),
            v.name()
        )));
    }
    let chi = chi_divisor(v, d)?;
    if chi < 0 {
        return Err(Error::ModelInconsistent(format!(
            "certified h^0({}) = chi = {chi} is negative",
            v.format_divisor(d)
        )));
    }
    Ok(chi)
}

/// How a section count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    KawamataViehweg,
    FamilyOracle,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::KawamataViehweg => write!(f, "KV vanishing"),
            Certification::FamilyOracle => write!(f, "family oracle"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionCount {
    pub value: i64,
    pub certification: Certification,
}

/// Vanishing route first, then the family oracle; abstains otherwise.
pub fn h0_certified(v: &VarietyData, d: &DivisorClass) -> Result<SectionCount> {
    match h0_via_vanishing(v, d) {
        Ok(value) => Ok(SectionCount {
            value,
            certification: Certification::KawamataViehweg,
        }),
        Err(Error::NotCertifiable(reason)) => match v.h0_exact(d) {
            Ok(value) => Ok(SectionCount {
                value,
                certification: Certification::FamilyOracle,
            }),
            Err(Error::Unsupported(_)) => Err(Error::NotCertifiable(reason)),
            Err(e) => Err(e),
        },
        Err(e) => Err(e),
    }
}
