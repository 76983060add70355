mod common;

use common::{big, patterns, t};
use num_bigint::BigInt;
use treembed::oracle::{count_in_family, count_in_tree, Mode};
use treembed::series::{GfEngine, Kind};
use treembed::tree::canonical_nonplane;
use treembed::family::enumerate_family;
use treembed::FamilyId;

fn host_sizes(fam: FamilyId) -> Vec<usize> {
    match fam {
        FamilyId::PlaneBinary | FamilyId::NonplaneBinary => (1..=13).collect(),
        FamilyId::PlantedPlane => (1..=9).collect(),
    }
}

fn check_family(fam: FamilyId, extra: &[&str]) {
    let engine = GfEngine::new(13);
    let mut pats = patterns(fam, 4);
    pats.extend(extra.iter().map(|s| t(s)));
    for s in &pats {
        let a = engine.series(s, fam, Kind::All).unwrap();
        let g = engine.good_from_all(&a, fam);
        for n in host_sizes(fam) {
            let c = count_in_family(s, fam, n).unwrap();
            assert_eq!(big(&c.all), *a.coeff(n), "all: {fam} {s} n={n}");
            assert_eq!(big(&c.good), *g.coeff(n), "good: {fam} {s} n={n}");
        }
    }
}

#[test]
fn plane_binary_matches_oracle() {
    check_family(FamilyId::PlaneBinary, &["(()()()())", "((()())())", "(((()))())"]);
}

#[test]
fn nonplane_motzkin_matches_oracle() {
    check_family(FamilyId::NonplaneBinary, &["((()())())", "((())(()))", "(((()())))"]);
}

#[test]
fn planted_plane_matches_oracle() {
    check_family(FamilyId::PlantedPlane, &["(()()()())", "((()())())", "(()(())())"]);
}

#[test]
fn binary_series_vanish_at_even_sizes() {
    let engine = GfEngine::new(30);
    for fam in [FamilyId::PlaneBinary, FamilyId::NonplaneBinary] {
        for s in patterns(fam, 4) {
            let a = engine.series(&s, fam, Kind::All).unwrap();
            let g = engine.good_from_all(&a, fam);
            for n in (0..=30).step_by(2) {
                assert_eq!(*a.coeff(n), BigInt::from(0));
                assert_eq!(*g.coeff(n), BigInt::from(0));
            }
        }
    }
}

#[test]
fn good_never_exceeds_all() {
    let engine = GfEngine::new(40);
    for fam in FamilyId::ALL {
        for s in patterns(fam, 4) {
            let a = engine.series(&s, fam, Kind::All).unwrap();
            let g = engine.good_from_all(&a, fam);
            for n in 0..=40 {
                assert!(g.coeff(n) <= a.coeff(n), "{fam} {s} n={n}");
                assert!(*g.coeff(n) >= BigInt::from(0));
            }
        }
    }
}

/// Each non-plane embedding is an orbit of subsets, and every subset induces some
/// plane shape of the pattern's class, so summing plane counts over the class dominates.
#[test]
fn plane_counts_over_a_class_dominate_nonplane_counts() {
    let shapes = patterns(FamilyId::PlantedPlane, 4);
    for n in [5, 7, 9] {
        for host in enumerate_family(FamilyId::PlaneBinary, n).unwrap() {
            let chost = canonical_nonplane(&host);
            for s in &shapes {
                let class = canonical_nonplane(s);
                let plane: u64 = shapes
                    .iter()
                    .filter(|p| canonical_nonplane(p) == class)
                    .map(|p| count_in_tree(p, &host, Mode::Plane).all.try_into().unwrap_or(u64::MAX))
                    .sum();
                let nonplane = count_in_tree(&class, &chost, Mode::Nonplane);
                assert!(BigInt::from(plane) >= big(&nonplane.all), "{s} in {host}");
            }
        }
    }
}

/// The per-pattern version fails: the chain-then-leaf shape cannot sit in this host
/// in plane order, yet the non-plane class embeds once.
#[test]
fn single_plane_shape_need_not_dominate() {
    let host = t("(()(()()))");
    let s = t("((())())");
    assert_eq!(count_in_tree(&s, &host, Mode::Plane).all, 0u32.into());
    assert_eq!(count_in_tree(&canonical_nonplane(&s), &canonical_nonplane(&host), Mode::Nonplane).all, 1u32.into());
}

#[test]
fn pattern_equal_to_host_is_one_good_embedding() {
    for fam in FamilyId::ALL {
        for host in enumerate_family(fam, 7).unwrap() {
            let c = count_in_tree(&host, &host, Mode::for_family(fam));
            assert_eq!((c.all.clone(), c.good.clone()), (1u32.into(), 1u32.into()), "{host}");
        }
    }
}
