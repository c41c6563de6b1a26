//! Fixtures shared by the criterion benches.

use adjunct_core::variety::by_name;
use adjunct_core::{DivisorClass, I1Request, VarietyData};

/// A Picard-rank-2 fourfold with four distinct ample bundles.
pub fn product_fourfold() -> (VarietyData, Vec<DivisorClass>) {
    let v = by_name("P2xP2").expect("catalog entry");
    let bundles = [[1, 1], [2, 1], [1, 3], [2, 2]].iter().map(|c| DivisorClass(c.to_vec())).collect();
    (v, bundles)
}

/// Difference-formula request on the sextic fourfold with three big bundles.
pub fn sextic_i1() -> (VarietyData, I1Request) {
    let v = by_name("X6").expect("catalog entry");
    let big = [2, 3, 1].iter().map(|&a| DivisorClass(vec![a])).collect();
    let req = I1Request::new(&v, big, DivisorClass(vec![1])).expect("ample bundles");
    (v, req)
}
