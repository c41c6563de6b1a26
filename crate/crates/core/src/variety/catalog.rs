//! Built-in varieties with Chern data from the Euler sequence, Whitney sums
//! and Künneth, together with exact section counts.

use std::collections::BTreeMap;

use super::{ConeDescriptor, DivisorClass, Kappa, OracleFamily, VarietyData, VarietyParts};
use crate::error::{Error, Result};
use crate::rational::choose;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ProjectiveSpace(u32),
    ProductP1xP3,
    ProductP2xP2,
    /// Smooth hypersurface of degree `d` in `P^5`.
    HypersurfaceInP5(u32),
    /// Abelian fourfold with a polarization of the given self-intersection.
    AbelianFourfold { self_intersection: i64 },
}

pub const CATALOG_NAMES: &[&str] = &[
    "P1", "P2", "P3", "P4", "P1xP3", "P2xP2", "Q4", "X<d>", "A4", "A4:<L^4>",
];

/// The fourfolds every verification suite sweeps.
pub fn standard_fourfolds() -> Vec<VarietyData> {
    ["P4", "P1xP3", "P2xP2", "Q4", "X3", "X4", "X5", "X6", "X7", "A4"]
        .iter()
        .map(|n| by_name(n).expect("built-in catalog entry"))
        .collect()
}

/// Resolves names like `P4`, `P1xP3`, `Q4`, `X6` or `A4:48`.
pub fn by_name(name: &str) -> Result<VarietyData> {
    let unknown = || Error::InvalidInput(format!("unknown catalog entry `{name}`"));
    let family = match name {
        "P1xP3" => Family::ProductP1xP3,
        "P2xP2" => Family::ProductP2xP2,
        "Q4" => Family::HypersurfaceInP5(2),
        "A4" => Family::AbelianFourfold { self_intersection: 24 },
        _ => {
            if let Some(rest) = name.strip_prefix("A4:") {
                Family::AbelianFourfold {
                    self_intersection: rest.parse().map_err(|_| unknown())?,
                }
            } else if let Some(d) = name.strip_prefix('X') {
                Family::HypersurfaceInP5(d.parse().map_err(|_| unknown())?)
            } else if let Some(n) = name.strip_prefix('P') {
                Family::ProjectiveSpace(n.parse().map_err(|_| unknown())?)
            } else {
                return Err(unknown());
            }
        }
    };
    let mut v = catalog_build(family)?;
    if name == "Q4" {
        v.name = "Q4".into();
    }
    Ok(v)
}

fn kappa_of_rank_one(dim: usize, coefficient: i64) -> Kappa {
    match coefficient.signum() {
        1 => Kappa::Dim(dim as u8),
        0 => Kappa::Dim(0),
        _ => Kappa::NegInfinity,
    }
}

/// κ of `O(c_1, c_2)` on `P^{d_1} x P^{d_2}`.
fn kappa_of_product(dims: [usize; 2], c: [i64; 2]) -> Kappa {
    if c.iter().any(|&x| x < 0) {
        return Kappa::NegInfinity;
    }
    Kappa::Dim(
        dims.iter()
            .zip(c)
            .map(|(&d, x)| if x > 0 { d as u8 } else { 0 })
            .sum(),
    )
}

fn adjoint_declarations(
    dim: usize,
    canonical: &DivisorClass,
    polarizations: &[DivisorClass],
    kappa: impl Fn(&DivisorClass) -> Kappa,
) -> BTreeMap<DivisorClass, BTreeMap<u32, Kappa>> {
    polarizations
        .iter()
        .map(|l| {
            let twists = (1..dim as u32)
                .map(|a| (a, kappa(&(canonical + &(a as i64 * l)))))
                .collect();
            (l.clone(), twists)
        })
        .collect()
}

fn single(x: i64) -> DivisorClass {
    DivisorClass(vec![x])
}

fn pair(a: i64, b: i64) -> DivisorClass {
    DivisorClass(vec![a, b])
}

pub fn catalog_build(family: Family) -> Result<VarietyData> {
    let parts = match family {
        Family::ProjectiveSpace(n) => {
            if !(1..=4).contains(&n) {
                return Err(Error::InvalidInput(format!("P^{n} outside dimension range 1..=4")));
            }
            let dim = n as usize;
            let canonical = single(-(n as i64 + 1));
            let mut c2 = BTreeMap::new();
            if dim >= 2 {
                c2.insert(vec![n - 2], choose(n as i128 + 1, 2) as i64);
            }
            let mut hodge = vec![0; dim + 1];
            hodge[0] = 1;
            let pols = [single(1), single(n as i64 + 2)];
            VarietyParts {
                name: format!("P{n}"),
                dim,
                generators: vec!["H".into()],
                intersection_form: BTreeMap::from([(vec![n], 1)]),
                kappa_adjoint: adjoint_declarations(dim, &canonical, &pols, |d| kappa_of_rank_one(dim, d.0[0])),
                canonical,
                c2_pairings: c2,
                hodge,
                nef_cone: ConeDescriptor::Ray,
                kappa_x: Some(Kappa::NegInfinity),
                oracle: Some(OracleFamily::Projective(n)),
                sre_declared: false,
            }
        }
        Family::ProductP1xP3 => {
            // a = fiber over P^1, b = pullback of the hyperplane of P^3.
            // c(X) = (1+a)^2 (1+b)^4 gives c_2 = 8ab + 6b^2.
            let canonical = pair(-2, -4);
            let pols = [pair(1, 1), pair(3, 5)];
            VarietyParts {
                name: "P1xP3".into(),
                dim: 4,
                generators: vec!["a".into(), "b".into()],
                intersection_form: BTreeMap::from([
                    (vec![4, 0], 0),
                    (vec![3, 1], 0),
                    (vec![2, 2], 0),
                    (vec![1, 3], 1),
                    (vec![0, 4], 0),
                ]),
                kappa_adjoint: adjoint_declarations(4, &canonical, &pols, |d| kappa_of_product([1, 3], [d.0[0], d.0[1]])),
                canonical,
                c2_pairings: BTreeMap::from([(vec![2, 0], 0), (vec![1, 1], 6), (vec![0, 2], 8)]),
                hodge: vec![1, 0, 0, 0, 0],
                nef_cone: ConeDescriptor::Orthant,
                kappa_x: Some(Kappa::NegInfinity),
                oracle: Some(OracleFamily::P1xP3),
                sre_declared: false,
            }
        }
        Family::ProductP2xP2 => {
            // c(X) = (1+a)^3 (1+b)^3 gives c_2 = 3a^2 + 9ab + 3b^2.
            let canonical = pair(-3, -3);
            let pols = [pair(1, 1), pair(4, 4)];
            VarietyParts {
                name: "P2xP2".into(),
                dim: 4,
                generators: vec!["a".into(), "b".into()],
                intersection_form: BTreeMap::from([
                    (vec![4, 0], 0),
                    (vec![3, 1], 0),
                    (vec![2, 2], 1),
                    (vec![1, 3], 0),
                    (vec![0, 4], 0),
                ]),
                kappa_adjoint: adjoint_declarations(4, &canonical, &pols, |d| kappa_of_product([2, 2], [d.0[0], d.0[1]])),
                canonical,
                c2_pairings: BTreeMap::from([(vec![2, 0], 3), (vec![1, 1], 9), (vec![0, 2], 3)]),
                hodge: vec![1, 0, 0, 0, 0],
                nef_cone: ConeDescriptor::Orthant,
                kappa_x: Some(Kappa::NegInfinity),
                oracle: Some(OracleFamily::P2xP2),
                sre_declared: false,
            }
        }
        Family::HypersurfaceInP5(d) => {
            if d < 2 {
                return Err(Error::InvalidInput(format!("hypersurface degree {d} < 2")));
            }
            let di = d as i64;
            // c(X) = (1+H)^6 / (1+dH): c_1 = (6-d)H, c_2 = (d^2 - 6d + 15)H^2.
            let canonical = single(di - 6);
            let mut pols = vec![single(1)];
            if d < 6 {
                pols.push(single(7 - di));
            }
            VarietyParts {
                name: format!("X{d}"),
                dim: 4,
                generators: vec!["H".into()],
                intersection_form: BTreeMap::from([(vec![4], di)]),
                kappa_adjoint: adjoint_declarations(4, &canonical, &pols, |x| kappa_of_rank_one(4, x.0[0])),
                canonical,
                c2_pairings: BTreeMap::from([(vec![2], (di * di - 6 * di + 15) * di)]),
                hodge: vec![1, 0, 0, 0, choose(di as i128 - 1, 5) as i64],
                nef_cone: ConeDescriptor::Ray,
                kappa_x: Some(kappa_of_rank_one(4, di - 6)),
                oracle: Some(OracleFamily::Hypersurface(d)),
                sre_declared: false,
            }
        }
        Family::AbelianFourfold { self_intersection } => {
            if self_intersection <= 0 || self_intersection % 24 != 0 {
                return Err(Error::InvalidInput(format!(
                    "abelian fourfold needs L^4 a positive multiple of 24, got {self_intersection}"
                )));
            }
            let canonical = single(0);
            VarietyParts {
                name: if self_intersection == 24 { "A4".into() } else { format!("A4:{self_intersection}") },
                dim: 4,
                generators: vec!["L".into()],
                intersection_form: BTreeMap::from([(vec![4], self_intersection)]),
                kappa_adjoint: adjoint_declarations(4, &canonical, &[single(1)], |x| kappa_of_rank_one(4, x.0[0])),
                canonical,
                c2_pairings: BTreeMap::from([(vec![2], 0)]),
                hodge: vec![1, 4, 6, 4, 1],
                nef_cone: ConeDescriptor::Ray,
                kappa_x: Some(Kappa::Dim(0)),
                oracle: Some(OracleFamily::Abelian),
                sre_declared: false,
            }
        }
    };
    VarietyData::assemble(parts)
}

fn h0_projective(n: u32, d: i64) -> i128 {
    if d < 0 {
        0
    } else {
        choose(d as i128 + n as i128, n as i128)
    }
}

pub(super) fn h0_exact(v: &VarietyData, family: OracleFamily, d: &DivisorClass) -> Result<i64> {
    let c = d.coeffs();
    let count: i128 = match family {
        OracleFamily::Projective(n) => h0_projective(n, c[0]),
        OracleFamily::P1xP3 => h0_projective(1, c[0]) * h0_projective(3, c[1]),
        OracleFamily::P2xP2 => h0_projective(2, c[0]) * h0_projective(2, c[1]),
        OracleFamily::Hypersurface(deg) => {
            let m = c[0] as i128;
            if m < 0 {
                0
            } else {
                choose(m + 5, 5) - choose(m - deg as i128 + 5, 5)
            }
        }
        OracleFamily::Abelian => {
            let m = c[0] as i128;
            let top = *v
                .intersection_form()
                .get(&vec![4])
                .ok_or_else(|| Error::ModelIncomplete("L^4".into()))? as i128;
            match m.signum() {
                1 => m.pow(4) * top / 24,
                0 => 1,
                _ => 0,
            }
        }
    };
    i64::try_from(count).map_err(|_| Error::ModelInconsistent("section count overflows".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sextic_fourfold_data() {
        let v = catalog_build(Family::HypersurfaceInP5(6)).unwrap();
        assert!(v.canonical().is_zero());
        assert_eq!(v.chi_o(), 2);
        let h = v.generator(0);
        assert_eq!(v.c2_pair([&h, &h]).unwrap(), 90);
        assert_eq!(v.kappa_x(), Some(Kappa::Dim(0)));
    }

    #[test]
    fn quadric_data() {
        let v = by_name("Q4").unwrap();
        assert_eq!(v.canonical(), &single(-4));
        assert_eq!(v.hodge(), &[1, 0, 0, 0, 0]);
        assert_eq!(v.name(), "Q4");
    }

    #[test]
    fn projective_fourfold_data() {
        let v = catalog_build(Family::ProjectiveSpace(4)).unwrap();
        assert_eq!(v.canonical(), &single(-5));
        let h = v.generator(0);
        assert_eq!(v.c2_pair([&h, &h]).unwrap(), 10);
        assert_eq!(v.hodge(), &[1, 0, 0, 0, 0]);
    }

    #[test]
    fn septic_has_geometric_genus() {
        let v = by_name("X7").unwrap();
        assert_eq!(v.h_i(4), 6);
        assert_eq!(v.kappa_x(), Some(Kappa::Dim(4)));
    }

    #[test]
    fn unsupported_parameters() {
        assert!(catalog_build(Family::ProjectiveSpace(5)).is_err());
        assert!(catalog_build(Family::HypersurfaceInP5(1)).is_err());
        assert!(catalog_build(Family::AbelianFourfold { self_intersection: 25 }).is_err());
        assert!(by_name("Y3").is_err());
        assert!(by_name("Xq").is_err());
    }

    #[test]
    fn product_adjoint_kappa_declarations() {
        let v = by_name("P1xP3").unwrap();
        // K + (3a+5b) = a + b
        assert_eq!(v.declared_kappa_adjoint(&pair(3, 5), 1), Some(Kappa::Dim(4)));
        assert_eq!(v.declared_kappa_adjoint(&pair(1, 1), 3), Some(Kappa::NegInfinity));
        let w = by_name("P2xP2").unwrap();
        // K + 3(a+b) = 0
        assert_eq!(w.declared_kappa_adjoint(&pair(1, 1), 3), Some(Kappa::Dim(0)));
    }

    #[test]
    fn product_section_counts_follow_kunneth() {
        let v = by_name("P1xP3").unwrap();
        assert_eq!(v.h0_exact(&pair(1, 1)).unwrap(), 2 * 4);
        assert_eq!(v.h0_exact(&pair(-1, 3)).unwrap(), 0);
        let w = by_name("P2xP2").unwrap();
        assert_eq!(w.h0_exact(&pair(2, 1)).unwrap(), 6 * 3);
    }

    #[test]
    fn hypersurface_counts_subtract_the_equation() {
        let v = by_name("X3").unwrap();
        // C(8,5) - C(5,5)
        assert_eq!(v.h0_exact(&single(3)).unwrap(), 55);
        assert_eq!(v.h0_exact(&single(-1)).unwrap(), 0);
    }

    #[test]
    fn abelian_counts() {
        let v = by_name("A4:48").unwrap();
        assert_eq!(v.h0_exact(&single(1)).unwrap(), 2);
        assert_eq!(v.h0_exact(&single(0)).unwrap(), 1);
        assert_eq!(v.h0_exact(&single(-2)).unwrap(), 0);
    }
}
