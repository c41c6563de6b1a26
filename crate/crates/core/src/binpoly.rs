//! Integer-valued multivariate polynomials expanded over the binomial basis
//! `C(t_1+p_1-1, p_1) ... C(t_k+p_k-1, p_k)`.
//!
//! The coefficient at a multi-index `p` is the iterated backward difference
//! `(Δ_1^{p_1} ... Δ_k^{p_k} f)(0)` with `Δ_j f(t) = f(t) - f(t - e_j)`, so a
//! polynomial of total degree `n` is recovered from its values on the grid
//! `{-n, ..., 0}^k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

/// Exponent vector `(p_1, ..., p_k)` of a binomial-basis monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// The all-ones index `(1, ..., 1)` of length `k`.
    pub fn ones(k: usize) -> Self {
        MultiIndex(vec![1; k])
    }

    pub fn zeros(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// All indices of the given arity with total degree at most `max_degree`,
    /// in lexicographic order.
    pub fn all_up_to(arity: usize, max_degree: u32) -> Vec<MultiIndex> {
        fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<MultiIndex>) {
            if left == 0 {
                out.push(MultiIndex(prefix.clone()));
                return;
            }
            for p in 0..=budget {
                prefix.push(p);
                rec(prefix, left - 1, budget - p, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::with_capacity(arity), arity, max_degree, &mut out);
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A polynomial in `arity` variables of total degree at most `max_degree`,
/// stored by its binomial-basis coordinates. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BinBasisPolyWire", into = "BinBasisPolyWire")]
pub struct BinBasisPoly {
    arity: usize,
    max_degree: u32,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl BinBasisPoly {
    pub fn zero(arity: usize, max_degree: u32) -> Result<Self> {
        Self::new(arity, max_degree, std::iter::empty())
    }

    pub fn constant(arity: usize, max_degree: u32, c: Rational) -> Result<Self> {
        Self::new(arity, max_degree, [(MultiIndex::zeros(arity), c)])
    }

    pub fn new<I>(arity: usize, max_degree: u32, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        if arity == 0 {
            return Err(Error::InvalidInput("binomial-basis polynomial needs arity >= 1".into()));
        }
        let mut map = BTreeMap::new();
        for (idx, c) in coeffs {
            if idx.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: idx.arity(),
                });
            }
            if idx.total_degree() > max_degree {
                return Err(Error::InvalidInput(format!(
                    "multi-index {idx} exceeds total degree {max_degree}"
                )));
            }
            let slot = map.entry(idx).or_insert_with(Rational::zero);
            *slot += c;
        }
        map.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(BinBasisPoly {
            arity,
            max_degree,
            coeffs: map,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Rational {
        self.coeffs.get(idx).copied().unwrap_or_else(Rational::zero)
    }

    /// Non-zero coefficients in multi-index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn eval(&self, point: &[i64]) -> Result<Rational> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut sum = Rational::zero();
        for (idx, c) in &self.coeffs {
            let basis: i128 = idx
                .0
                .iter()
                .zip(point)
                .map(|(&p, &t)| binomial(t as i128 + p as i128 - 1, p))
                .product();
            sum += *c * Rational::from_integer(basis);
        }
        Ok(sum)
    }

    /// `t -> f(t) - f(t - e_axis)`. Each basis element drops its `axis`
    /// exponent by one; terms with exponent zero there vanish.
    pub fn forward_difference(&self, axis: usize) -> Result<Self> {
        if axis >= self.arity {
            return Err(Error::InvalidInput(format!(
                "difference axis {axis} out of range for arity {}",
                self.arity
            )));
        }
        let shifted = self.coeffs.iter().filter_map(|(idx, c)| {
            if idx.0[axis] == 0 {
                return None;
            }
            let mut e = idx.0.clone();
            e[axis] -= 1;
            Some((MultiIndex(e), *c))
        });
        Self::new(self.arity, self.max_degree, shifted)
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: Rational, other: &Self, beta: Rational) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        let terms = self
            .coeffs
            .iter()
            .map(|(i, c)| (i.clone(), *c * alpha))
            .chain(other.coeffs.iter().map(|(i, c)| (i.clone(), *c * beta)));
        Self::new(self.arity, self.max_degree.max(other.max_degree), terms)
    }
}

/// Odometer over `{-n, ..., 0}^k`, returned as offset vectors `(k_1, ..., k_k)`
/// with each `k_j in 0..=n` (the point is `-k`).
fn grid_offsets(arity: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity((n as usize + 1).pow(arity as u32));
    let mut cur = vec![0u32; arity];
    loop {
        out.push(cur.clone());
        let mut j = 0;
        loop {
            if j == arity {
                return out;
            }
            if cur[j] < n {
                cur[j] += 1;
                break;
            }
            cur[j] = 0;
            j += 1;
        }
    }
}

fn flat(offsets: &[u32], n: u32) -> usize {
    offsets
        .iter()
        .rev()
        .fold(0usize, |acc, &k| acc * (n as usize + 1) + k as usize)
}

/// Expands an integer-point oracle over the binomial basis.
///
/// The oracle is sampled once on `{-n, ..., 0}^k`. Backward differences along
/// each axis turn the samples into `Δ^p f(0)` for every `p` in the box; these
/// reproduce the samples exactly, so the expansion is accepted iff every
/// entry of total degree above `n` vanishes. Excess degree is only visible
/// through mixed terms with every exponent at most `n`.
pub fn coefficients_from_oracle<F, E>(mut f: F, arity: usize, max_degree: u32) -> Result<BinBasisPoly, E>
where
    F: FnMut(&[i64]) -> Result<Rational, E>,
    E: From<Error>,
{
    if arity == 0 {
        return Err(Error::InvalidInput("oracle arity must be >= 1".into()).into());
    }
    let n = max_degree;
    let side = n as usize + 1;
    let offsets = grid_offsets(arity, n);
    let mut table = vec![Rational::zero(); offsets.len()];
    for off in &offsets {
        let point: Vec<i64> = off.iter().map(|&k| -(k as i64)).collect();
        table[flat(off, n)] = f(&point)?;
    }
    let samples = table.clone();

    // After stage p, slot k >= p holds Δ^p f at -(k-p) and slots below p are final.
    let mut stride = 1;
    for _axis in 0..arity {
        for base in 0..table.len() {
            if (base / stride) % side != 0 {
                continue;
            }
            for p in 1..side {
                for k in (p..side).rev() {
                    let prev = table[base + (k - 1) * stride];
                    table[base + k * stride] = prev - table[base + k * stride];
                }
            }
        }
        stride *= side;
    }

    let mut coeffs = Vec::new();
    let mut excess = false;
    for off in &offsets {
        let value = table[flat(off, n)];
        if off.iter().sum::<u32>() <= n {
            coeffs.push((MultiIndex(off.clone()), value));
        } else if !value.is_zero() {
            excess = true;
        }
    }
    let poly = BinBasisPoly::new(arity, n, coeffs)?;
    if excess {
        for off in &offsets {
            let point: Vec<i64> = off.iter().map(|&k| -(k as i64)).collect();
            if poly.eval(&point)? != samples[flat(off, n)] {
                return Err(Error::NotPolynomial { degree: n, point }.into());
            }
        }
        unreachable!("nonzero excess coefficient must show on the grid");
    }
    Ok(poly)
}

#[derive(Serialize, Deserialize)]
struct BinBasisPolyWire {
    arity: usize,
    max_degree: u32,
    coeffs: Vec<(Vec<u32>, i128, i128)>,
}

impl From<BinBasisPoly> for BinBasisPolyWire {
    fn from(p: BinBasisPoly) -> Self {
        BinBasisPolyWire {
            arity: p.arity,
            max_degree: p.max_degree,
            coeffs: p
                .coeffs
                .into_iter()
                .map(|(i, c)| (i.0, *c.numer(), *c.denom()))
                .collect(),
        }
    }
}

impl TryFrom<BinBasisPolyWire> for BinBasisPoly {
    type Error = Error;

    fn try_from(w: BinBasisPolyWire) -> Result<Self> {
        let mut terms = Vec::with_capacity(w.coeffs.len());
        for (idx, num, den) in w.coeffs {
            if den == 0 {
                return Err(Error::InvalidInput("zero denominator in coefficient".into()));
            }
            terms.push((MultiIndex(idx), Rational::new(num, den)));
        }
        BinBasisPoly::new(w.arity, w.max_degree, terms)
    }
}
