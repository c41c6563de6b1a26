//! Additively closed sets of positive integers: closure, two-generator coin
//! problem, eventual-membership thresholds, and the minimal common multiple
//! `r` with `h^0(r(K+L)) > 0` over a family of polarized varieties.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hrr::h0_certified;
use crate::variety::{DivisorClass, VarietyData};

/// A set of positive integers explored up to `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupSet {
    members: BTreeSet<u64>,
    bound: u64,
}

impl SemigroupSet {
    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, m: u64) -> bool {
        self.members.contains(&m)
    }

    pub fn min(&self) -> Option<u64> {
        self.members.first().copied()
    }
}

fn check_generators(s: &BTreeSet<u64>) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidInput("empty generating set".into()));
    }
    if s.contains(&0) {
        return Err(Error::InvalidInput("generators must be positive".into()));
    }
    Ok(())
}

/// Smallest additively closed superset of `s` inside `[1, bound]`.
pub fn closure(s: &BTreeSet<u64>, bound: u64) -> Result<SemigroupSet> {
    check_generators(s)?;
    let gens: Vec<u64> = s.iter().copied().filter(|&g| g <= bound).collect();
    let mut reach = vec![false; bound as usize + 1];
    reach[0] = true;
    for m in 1..=bound as usize {
        reach[m] = gens.iter().any(|&g| g as usize <= m && reach[m - g as usize]);
    }
    Ok(SemigroupSet {
        members: (1..=bound).filter(|&m| reach[m as usize]).collect(),
        bound,
    })
}

/// Non-negative `(i, j)` with `p i + q j = l`, choosing the least `i`.
pub fn coin_solve(p: u64, q: u64, l: u64) -> Result<(u64, u64)> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidInput("p and q must be positive".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!("gcd({p}, {q}) != 1")));
    }
    let frobenius = (p - 1) * (q - 1);
    if l < frobenius {
        return Err(Error::InvalidInput(format!(
            "l = {l} is below (p-1)(q-1) = {frobenius}, no representation is guaranteed"
        )));
    }
    (0..q)
        .take_while(|&i| p * i <= l)
        .find(|&i| (l - p * i).is_multiple_of(q))
        .map(|i| (i, (l - p * i) / q))
        .ok_or_else(|| unreachable_representation(p, q, l))
}

fn unreachable_representation(p: u64, q: u64, l: u64) -> Error {
    Error::ModelInconsistent(format!("no representation of {l} by {p} and {q}"))
}

/// Least `r >= 1` such that every `m >= r` lies in the closure of `s`;
/// `None` when `gcd(s) > 1`.
///
/// Membership is eventually total from `min_{coprime p,q} (p-1)(q-1)`, or from
/// `(a_min - 1)(a_max - 1)` when no pair is coprime; below that the closure is
/// enumerated.
pub fn guaranteed_threshold(s: &BTreeSet<u64>) -> Result<Option<u64>> {
    check_generators(s)?;
    if s.iter().fold(0, |g, &x| g.gcd(&x)) != 1 {
        return Ok(None);
    }
    let gens: Vec<u64> = s.iter().copied().collect();
    let mut ceiling = (gens[0] - 1) * (gens[gens.len() - 1] - 1);
    for (k, &p) in gens.iter().enumerate() {
        for &q in &gens[k + 1..] {
            if p.gcd(&q) == 1 {
                ceiling = ceiling.min((p - 1) * (q - 1));
            }
        }
    }
    let ceiling = ceiling.max(1);
    let closed = closure(s, ceiling)?;
    let threshold = (1..=ceiling).rev().find(|&m| !closed.contains(m)).map_or(1, |gap| gap + 1);
    Ok(Some(threshold))
}

/// Source of `h^0(r(K+L))` for one polarized variety.
pub trait AdjointSections {
    fn label(&self) -> String;
    fn h0_multiple(&self, r: i64) -> Result<i64>;
}

/// `(V, L)` with `K+L` certified nef.
#[derive(Debug, Clone)]
pub struct AdjointPair<'a> {
    variety: &'a VarietyData,
    adjoint: DivisorClass,
    polarization: DivisorClass,
}

impl<'a> AdjointPair<'a> {
    pub fn new(variety: &'a VarietyData, polarization: DivisorClass) -> Result<Self> {
        let adjoint = variety.canonical() + &polarization;
        if !variety.is_nef(&adjoint) {
            return Err(Error::InvalidInput(format!(
                "K+L = {} is not nef on {}",
                variety.format_divisor(&adjoint),
                variety.name()
            )));
        }
        Ok(AdjointPair {
            variety,
            adjoint,
            polarization,
        })
    }
}

impl AdjointSections for AdjointPair<'_> {
    fn label(&self) -> String {
        format!("{} L={}", self.variety.name(), self.variety.format_divisor(&self.polarization))
    }

    fn h0_multiple(&self, r: i64) -> Result<i64> {
        h0_certified(self.variety, &(r * &self.adjoint)).map(|c| c.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmpiricalMinimum {
    /// Least `r <= r_max` with `h^0(r(K+L)) > 0` certified for every entry.
    pub min_r: Option<u64>,
    /// Threshold past which the common positive set is eventually total,
    /// computed from its members up to `r_max`.
    pub eventual_threshold: Option<u64>,
    /// Multiples `r <= r_max` with positive sections on every entry.
    pub common_positive: Vec<u64>,
    /// `(entry, r, reason)` for each uncertifiable count.
    pub abstentions: Vec<(String, u64, String)>,
}

pub fn empirical_min_r<S: AdjointSections>(entries: &[S], r_max: u64) -> Result<EmpiricalMinimum> {
    if entries.is_empty() {
        return Err(Error::InvalidInput("empty entry list".into()));
    }
    if r_max == 0 {
        return Err(Error::InvalidInput("r_max must be positive".into()));
    }
    let mut common_positive = Vec::new();
    let mut abstentions = Vec::new();
    for r in 1..=r_max {
        let mut all_positive = true;
        for e in entries {
            match e.h0_multiple(r as i64) {
                Ok(h) => all_positive &= h > 0,
                Err(err) if err.is_abstention() => {
                    all_positive = false;
                    abstentions.push((e.label(), r, err.to_string()));
                }
                Err(err) => return Err(err),
            }
        }
        if all_positive {
            common_positive.push(r);
        }
    }
    let eventual_threshold = if common_positive.is_empty() {
        None
    } else {
        guaranteed_threshold(&common_positive.iter().copied().collect())?
    };
    Ok(EmpiricalMinimum {
        min_r: common_positive.first().copied(),
        eventual_threshold,
        common_positive,
        abstentions,
    })
}

/// Parses `"4,5"` into a generating set.
pub fn parse_set(text: &str) -> Result<BTreeSet<u64>> {
    let set = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| Error::InvalidInput(format!("bad set element `{}`: {e}", t.trim())))
        })
        .collect::<Result<BTreeSet<u64>>>()?;
    check_generators(&set)?;
    Ok(set)
}
