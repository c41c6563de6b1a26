//! Sectional `H`-arithmetic genera and sectional geometric genera of tuples of
//! line bundles, with the structure sheaf as coefficient sheaf.

use crate::binpoly::MultiIndex;
use crate::error::{Error, Result};
use crate::hrr::chi_multi;
use crate::rational::{rat, to_integer, Rational};
use crate::variety::{DivisorClass, VarietyData};

fn check_request(v: &VarietyData, i: usize, bundles: &[DivisorClass]) -> Result<()> {
    let n = v.dim();
    if i > n {
        return Err(Error::InvalidInput(format!("genus index {i} exceeds dimension {n}")));
    }
    if bundles.len() != n - i {
        return Err(Error::ArityMismatch {
            expected: n - i,
            got: bundles.len(),
        });
    }
    Ok(())
}

/// `χ_i^H(X; L_1, ..., L_{n-i})`: the all-ones binomial-basis coefficient of
/// `χ(t_1 L_1 + ... + t_{n-i} L_{n-i})`, or `χ(O_X)` when `i = n`.
pub fn chi_h_i(v: &VarietyData, i: usize, bundles: &[DivisorClass]) -> Result<i64> {
    check_request(v, i, bundles)?;
    if i == v.dim() {
        return Ok(v.chi_o());
    }
    let poly = chi_multi(v, bundles)?;
    to_integer(poly.coeff(&MultiIndex::ones(bundles.len())), "sectional H-arithmetic genus")
}

/// `g_i(X; L_1, ..., L_{n-i})`.
pub fn g_i(v: &VarietyData, i: usize, bundles: &[DivisorClass]) -> Result<i64> {
    let chi_h = chi_h_i(v, i, bundles)?;
    Ok(genus_from_chi(v, i, chi_h))
}

fn genus_from_chi(v: &VarietyData, i: usize, chi_h: i64) -> i64 {
    let n = v.dim();
    let sign = if i.is_multiple_of(2) { 1 } else { -1 };
    let tail: i64 = (0..=n - i)
        .map(|j| {
            let s = if (n - i - j).is_multiple_of(2) { 1 } else { -1 };
            s * v.h_i(n - j)
        })
        .sum();
    sign * (chi_h - v.chi_o()) + tail
}

/// `g_i(X; L, ..., L)` read off the single-variable expansion of `χ(tL)`:
/// the coefficient at `n-i` equals the all-ones coefficient of the
/// multi-variable expansion when every bundle is `L`.
pub fn g_i_equal(v: &VarietyData, i: usize, l: &DivisorClass) -> Result<i64> {
    let n = v.dim();
    if i > n {
        return Err(Error::InvalidInput(format!("genus index {i} exceeds dimension {n}")));
    }
    if i == n {
        return g_i(v, i, &[]);
    }
    let poly = chi_multi(v, std::slice::from_ref(l))?;
    let chi_h = to_integer(poly.coeff(&MultiIndex(vec![(n - i) as u32])), "sectional H-arithmetic genus")?;
    Ok(genus_from_chi(v, i, chi_h))
}

fn require_fourfold(v: &VarietyData, what: &str) -> Result<()> {
    if v.dim() != 4 {
        return Err(Error::InvalidInput(format!("{what} is defined for fourfolds, got dimension {}", v.dim())));
    }
    Ok(())
}

/// Curve-section genus `1 + (K_X + A + B + C)·A·B·C / 2` on a fourfold.
pub fn g1_closed(v: &VarietyData, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Result<i64> {
    require_fourfold(v, "g1_closed")?;
    let sum = &(&(v.canonical() + a) + b) + c;
    let x = v.intersection_number([&sum, a, b, c])?;
    if x % 2 != 0 {
        return Err(Error::ModelInconsistent(format!(
            "(K+A+B+C)ABC = {x} is odd, so g_1 is not an integer"
        )));
    }
    Ok(1 + x / 2)
}

/// `g_2(X; K+L, K+L)` on a smooth fourfold:
/// `-1 + h^1(O) + (K+3M)(K+2M)M^2/12 + c_2 M^2/12 + (2K+2M)M^3/24` with `M = K+L`.
pub fn g2_adjoint_closed(v: &VarietyData, l: &DivisorClass) -> Result<i64> {
    require_fourfold(v, "g2_adjoint_closed")?;
    let k = v.canonical();
    let m = k + l;
    let k3m = k + &(3 * &m);
    let k2m = k + &(2 * &m);
    let twice = &(2 * k) + &(2 * &m);
    let value = rat(-1 + v.h_i(1) as i128)
        + Rational::new(v.intersection_number([&k3m, &k2m, &m, &m])? as i128, 12)
        + Rational::new(v.c2_pair([&m, &m])? as i128, 12)
        + Rational::new(v.intersection_number([&twice, &m, &m, &m])? as i128, 24);
    to_integer(value, "g_2(K+L, K+L)")
}

/// `g_i(A+B, rest) - g_i(A, rest) - g_i(B, rest) - g_{i-1}(A, B, rest) + h^{i-1}(O)`,
/// which vanishes identically.
pub fn b18_residual(
    v: &VarietyData,
    i: usize,
    a: &DivisorClass,
    b: &DivisorClass,
    rest: &[DivisorClass],
) -> Result<i64> {
    let n = v.dim();
    if i == 0 || i >= n {
        return Err(Error::InvalidInput(format!("additivity needs 1 <= i <= n-1, got i={i}, n={n}")));
    }
    if rest.len() + i + 1 != n {
        return Err(Error::ArityMismatch {
            expected: n - i - 1,
            got: rest.len(),
        });
    }
    let with = |first: DivisorClass| {
        let mut bundles = vec![first];
        bundles.extend_from_slice(rest);
        bundles
    };
    let mut both = vec![a.clone(), b.clone()];
    both.extend_from_slice(rest);
    Ok(g_i(v, i, &with(a + b))? - g_i(v, i, &with(a.clone()))? - g_i(v, i, &with(b.clone()))?
        - g_i(v, i - 1, &both)?
        + v.h_i(i - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::by_name;

    fn setup(name: &str, class: &str) -> (VarietyData, DivisorClass) {
        let v = by_name(name).unwrap();
        let d = v.parse_divisor(class).unwrap();
        (v, d)
    }

    #[test]
    fn arithmetic_genera() {
        let (x6, h) = setup("X6", "H");
        assert_eq!(chi_h_i(&x6, 2, &[h.clone(), h.clone()]).unwrap(), 11);
        assert_eq!(chi_h_i(&x6, 4, &[]).unwrap(), 2);
        let (p4, h) = setup("P4", "H");
        assert_eq!(chi_h_i(&p4, 0, &vec![h; 4]).unwrap(), 1);
    }

    #[test]
    fn request_shape_is_checked() {
        let (x6, h) = setup("X6", "H");
        assert!(matches!(chi_h_i(&x6, 2, std::slice::from_ref(&h)), Err(Error::ArityMismatch { .. })));
        assert!(g_i(&x6, 5, &[]).is_err());
    }

    #[test]
    fn sectional_geometric_genera() {
        let (p4, h) = setup("P4", "H");
        assert_eq!(g_i(&p4, 0, &vec![h; 4]).unwrap(), 1);
        let (x6, h) = setup("X6", "H");
        assert_eq!(g_i(&x6, 1, &vec![h.clone(); 3]).unwrap(), 10);
        assert_eq!(g_i(&x6, 2, &vec![h.clone(); 2]).unwrap(), 10);
        assert_eq!(g_i(&x6, 3, &[h]).unwrap(), 5);
        assert_eq!(g_i(&x6, 4, &[]).unwrap(), 1);
    }

    #[test]
    fn equal_bundle_shortcut_agrees() {
        for name in ["P4", "X6", "A4", "P2xP2", "P3"] {
            let v = by_name(name).unwrap();
            let l = v.declared_polarizations().next().unwrap().clone();
            for i in 0..=v.dim() {
                let multi = g_i(&v, i, &vec![l.clone(); v.dim() - i]).unwrap();
                assert_eq!(g_i_equal(&v, i, &l).unwrap(), multi, "{name} i={i}");
            }
        }
    }

    #[test]
    fn curve_section_genus_closed_form() {
        let (x6, h) = setup("X6", "H");
        assert_eq!(g1_closed(&x6, &h, &h, &h).unwrap(), 10);
        let (p4, h) = setup("P4", "H");
        assert_eq!(g1_closed(&p4, &h, &h, &h).unwrap(), 0);
    }

    #[test]
    fn curve_section_genus_rejects_odd_parity() {
        let mut parts = by_name("A4").unwrap().into_parts();
        parts.intersection_form.insert(vec![4], 1);
        let v = VarietyData::assemble(parts).unwrap();
        let l = v.generator(0);
        assert!(matches!(g1_closed(&v, &l, &l, &l), Err(Error::ModelInconsistent(_))));
    }

    #[test]
    fn adjoint_g2_closed_form() {
        let (x6, h) = setup("X6", "H");
        assert_eq!(g2_adjoint_closed(&x6, &h).unwrap(), 10);
        let (a4, l) = setup("A4", "L");
        assert_eq!(g2_adjoint_closed(&a4, &l).unwrap(), 17);
        for (v, l) in [(&x6, &h), (&a4, &l)] {
            let m = v.canonical() + l;
            assert_eq!(g2_adjoint_closed(v, l).unwrap(), g_i(v, 2, &[m.clone(), m]).unwrap());
        }
    }

    #[test]
    fn additivity_examples() {
        let (x6, h) = setup("X6", "H");
        assert_eq!(b18_residual(&x6, 2, &h, &h, std::slice::from_ref(&h)).unwrap(), 0);
        assert_eq!(g_i(&x6, 2, &[&h + &h, h.clone()]).unwrap(), 30);
        let (p4, h) = setup("P4", "H");
        assert_eq!(b18_residual(&p4, 1, &h, &h, &[h.clone(), h.clone()]).unwrap(), 0);
        let a4 = by_name("A4").unwrap();
        let z = a4.zero_class();
        for i in 1..4 {
            assert_eq!(b18_residual(&a4, i, &z, &z, &vec![z.clone(); 3 - i]).unwrap(), 0);
        }
    }

    #[test]
    fn additivity_index_range() {
        let (x6, h) = setup("X6", "H");
        assert!(b18_residual(&x6, 0, &h, &h, &[h.clone(), h.clone(), h.clone()]).is_err());
        assert!(b18_residual(&x6, 4, &h, &h, &[]).is_err());
        assert!(b18_residual(&x6, 2, &h, &h, &[]).is_err());
    }
}
