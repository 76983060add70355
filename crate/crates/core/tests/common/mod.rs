#![allow(dead_code)]

use num_bigint::BigInt;
use treembed::family::enumerate_family;
use treembed::tree::canonical_text;
use treembed::{FamilyId, PlaneTree};

/// Every plane tree with `m` nodes.
pub fn plane_trees(m: usize) -> Vec<PlaneTree> {
    enumerate_family(FamilyId::PlantedPlane, m).unwrap()
}

/// One representative per non-plane class of unary-binary trees with `m` nodes.
pub fn motzkin_classes(m: usize) -> Vec<PlaneTree> {
    let mut out: Vec<PlaneTree> = plane_trees(m).into_iter().filter(PlaneTree::is_motzkin).collect();
    out.sort_by_key(canonical_text);
    out.dedup_by_key(|t| canonical_text(t));
    out
}

/// Patterns the exact engine covers in `fam`, sizes `1..=max_m`.
pub fn patterns(fam: FamilyId, max_m: usize) -> Vec<PlaneTree> {
    (1..=max_m)
        .flat_map(|m| if fam == FamilyId::NonplaneBinary { motzkin_classes(m) } else { plane_trees(m) })
        .collect()
}

pub fn big(x: &num_bigint::BigUint) -> BigInt {
    BigInt::from(x.clone())
}

pub fn t(s: &str) -> PlaneTree {
    s.parse().unwrap()
}
