use std::collections::BTreeSet;
use std::sync::OnceLock;

use adjunct_core::adjoint::{i1_lhs, i1_rhs};
use adjunct_core::genus::{b18_residual, g_i, g_i_equal};
use adjunct_core::hrr::{chi_divisor, chi_multi};
use adjunct_core::rational::rat;
use adjunct_core::semigroup::{closure, coin_solve, guaranteed_threshold};
use adjunct_core::variety::by_name;
use adjunct_core::{coefficients_from_oracle, BinBasisPoly, DivisorClass, Error, I1Request, MultiIndex, VarietyData};
use proptest::prelude::*;

const NAMES: [&str; 13] = ["P1", "P2", "P3", "P4", "P1xP3", "P2xP2", "Q4", "X3", "X5", "X6", "X7", "A4", "A4:48"];

fn catalog() -> &'static [VarietyData] {
    static CELL: OnceLock<Vec<VarietyData>> = OnceLock::new();
    CELL.get_or_init(|| NAMES.iter().map(|n| by_name(n).unwrap()).collect())
}

fn fourfolds() -> Vec<&'static VarietyData> {
    catalog().iter().filter(|v| v.dim() == 4).collect()
}

fn class(v: &VarietyData, coeffs: &[i64]) -> DivisorClass {
    DivisorClass(coeffs[..v.rank()].to_vec())
}

fn poly_strategy() -> impl Strategy<Value = BinBasisPoly> {
    (1usize..=3, 0u32..=4).prop_flat_map(|(arity, deg)| {
        let idx = MultiIndex::all_up_to(arity, deg);
        prop::collection::vec(-20i128..=20, idx.len()).prop_map(move |cs| {
            BinBasisPoly::new(arity, deg, idx.iter().cloned().zip(cs.into_iter().map(rat))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extraction_reconstructs_polynomials(p in poly_strategy()) {
        let q = coefficients_from_oracle::<_, Error>(|t| p.eval(t), p.arity(), p.max_degree()).unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn extraction_is_linear(p in poly_strategy(), a in -5i128..=5, b in -5i128..=5, shift in -3i128..=3) {
        let q = BinBasisPoly::constant(p.arity(), p.max_degree(), rat(shift)).unwrap();
        let combined = coefficients_from_oracle::<_, Error>(
            |t| Ok(rat(a) * p.eval(t)? + rat(b) * q.eval(t)?),
            p.arity(),
            p.max_degree(),
        )
        .unwrap();
        prop_assert_eq!(combined, p.combine(rat(a), &q, rat(b)).unwrap());
    }

    #[test]
    fn extraction_rejects_excess_degree(arity in 2usize..=3, deg in 1u32..=3) {
        // t_1^deg t_2 has total degree one more than allowed
        let res = coefficients_from_oracle::<_, Error>(
            |t| Ok(rat((t[0] as i128).pow(deg) * t[1] as i128)),
            arity,
            deg,
        );
        prop_assert!(
            matches!(res, Err(Error::NotPolynomial { .. })),
            "expected NotPolynomial, got {:?}",
            res
        );
    }

    #[test]
    fn intersection_is_symmetric_and_multilinear(
        vi in 0usize..7,
        raw in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 5),
        perm in Just(()).prop_perturb(|_, mut rng| { let mut p = [0usize, 1, 2, 3]; for i in (1..4).rev() { p.swap(i, rng.random_range(0..=i)); } p }),
    ) {
        let fs = fourfolds();
        let v = fs[vi % fs.len()];
        let d: Vec<DivisorClass> = raw.iter().map(|c| class(v, c)).collect();
        let base = v.intersection_number(&d[..4]).unwrap();
        let permuted: Vec<&DivisorClass> = perm.iter().map(|&i| &d[i]).collect();
        prop_assert_eq!(v.intersection_number(permuted).unwrap(), base);
        let sum = &d[0] + &d[4];
        let lhs = v.intersection_number([&sum, &d[1], &d[2], &d[3]]).unwrap();
        let rhs = base + v.intersection_number([&d[4], &d[1], &d[2], &d[3]]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn serre_duality(vi in 0usize..13, raw in prop::collection::vec(-5i64..=5, 2)) {
        let v = &catalog()[vi % catalog().len()];
        let d = class(v, &raw);
        let dual = v.canonical() - &d;
        let sign = if v.dim().is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(chi_divisor(v, &dual).unwrap(), sign * chi_divisor(v, &d).unwrap());
    }

    #[test]
    fn chi_is_h0_in_vanishing_range(vi in 0usize..13, raw in prop::collection::vec(1i64..=4, 2)) {
        let v = &catalog()[vi % catalog().len()];
        let d = v.canonical() + &class(v, &raw);
        prop_assert_eq!(v.h0_exact(&d).unwrap(), chi_divisor(v, &d).unwrap());
    }

    #[test]
    fn expansions_are_integral(vi in 0usize..13, k in 1usize..=4, raw in prop::collection::vec(-3i64..=3, 8)) {
        let v = &catalog()[vi % catalog().len()];
        let k = k.min(v.dim());
        let bundles: Vec<DivisorClass> = raw.chunks(2).take(k).map(|c| class(v, c)).collect();
        prop_assert!(chi_multi(v, &bundles).unwrap().is_integral());
    }

    #[test]
    fn additivity_residual_vanishes(vi in 0usize..13, i in 1usize..4, raw in prop::collection::vec(-3i64..=3, 8)) {
        let v = &catalog()[vi % catalog().len()];
        prop_assume!(v.dim() >= 2);
        let i = 1 + (i - 1) % (v.dim() - 1);
        let cls: Vec<DivisorClass> = raw.chunks(2).map(|c| class(v, c)).collect();
        let rest = &cls[2..2 + (v.dim() - i - 1)];
        prop_assert_eq!(b18_residual(v, i, &cls[0], &cls[1], rest).unwrap(), 0);
    }

    #[test]
    fn equal_bundle_genus_consistency(vi in 0usize..13, raw in prop::collection::vec(-3i64..=3, 2)) {
        let v = &catalog()[vi % catalog().len()];
        let l = class(v, &raw);
        for i in 0..=v.dim() {
            prop_assert_eq!(g_i_equal(v, i, &l).unwrap(), g_i(v, i, &vec![l.clone(); v.dim() - i]).unwrap());
        }
    }

    #[test]
    fn g0_is_intersection_number(vi in 0usize..7, raw in prop::collection::vec(-3i64..=3, 8)) {
        let fs = fourfolds();
        let v = fs[vi % fs.len()];
        let cls: Vec<DivisorClass> = raw.chunks(2).map(|c| class(v, c)).collect();
        prop_assert_eq!(g_i(v, 0, &cls).unwrap(), v.intersection_number(&cls).unwrap());
    }

    #[test]
    fn difference_formula_identity(
        vi in 0usize..7,
        big in prop::collection::vec(prop::collection::vec(1i64..=3, 2), 1..=3),
        nef in prop::collection::vec(0i64..=2, 2),
    ) {
        let fs = fourfolds();
        let v = fs[vi % fs.len()];
        let req = I1Request::new(v, big.iter().map(|c| class(v, c)).collect(), class(v, &nef)).unwrap();
        prop_assert_eq!(i1_lhs(v, &req).unwrap().value, i1_rhs(v, &req).unwrap());
    }

    #[test]
    fn closure_is_idempotent_and_monotone(
        s in prop::collection::btree_set(1u64..=15, 1..4),
        extra in 1u64..=15,
        bound in 1u64..=60,
    ) {
        let c = closure(&s, bound).unwrap();
        if !c.members().is_empty() {
            prop_assert_eq!(closure(c.members(), bound).unwrap(), c.clone());
        }
        let mut bigger = s.clone();
        bigger.insert(extra);
        let cb = closure(&bigger, bound).unwrap();
        prop_assert!(c.members().is_subset(cb.members()));
        for &a in c.members() {
            for &b in c.members() {
                if a + b <= bound {
                    prop_assert!(c.contains(a + b));
                }
            }
        }
    }

    #[test]
    fn threshold_is_least_eventual_member(s in prop::collection::btree_set(1u64..=20, 1..4)) {
        match guaranteed_threshold(&s).unwrap() {
            None => prop_assert!(s.iter().fold(0, |g, &x| num_gcd(g, x)) > 1),
            Some(r) => {
                let top = r + 2 * s.iter().max().unwrap();
                let c = closure(&s, top).unwrap();
                prop_assert!((r..=top).all(|m| c.contains(m)));
                prop_assert!(r == 1 || !c.contains(r - 1));
            }
        }
    }

    #[test]
    fn threshold_bounded_by_coprime_pairs(p in 2u64..=30, q in 2u64..=30, extra in prop::option::of(1u64..=40)) {
        prop_assume!(num_gcd(p, q) == 1);
        let s: BTreeSet<u64> = [Some(p), Some(q), extra].into_iter().flatten().collect();
        prop_assert!(guaranteed_threshold(&s).unwrap().unwrap() <= (p - 1) * (q - 1));
    }

    #[test]
    fn coin_solutions_are_minimal(p in 1u64..=25, q in 1u64..=25, extra in 0u64..=300) {
        prop_assume!(num_gcd(p, q) == 1);
        let l = (p - 1) * (q - 1) + extra;
        let (i, j) = coin_solve(p, q, l).unwrap();
        prop_assert_eq!(p * i + q * j, l);
        prop_assert!((0..i).all(|k| (l - p * k) % q != 0));
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

#[test]
fn catalog_descriptions_round_trip() {
    for v in catalog() {
        assert_eq!(&VarietyData::from_json(&v.to_json()).unwrap(), v, "{}", v.name());
        let report = v.validate();
        assert!(report.passed(), "{}: {}", v.name(), report.to_table());
    }
}

#[test]
fn polynomial_json_round_trip() {
    let v = by_name("X6").unwrap();
    let p = chi_multi(&v, &[v.generator(0), v.generator(0)]).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<BinBasisPoly>(&text).unwrap(), p);
}
