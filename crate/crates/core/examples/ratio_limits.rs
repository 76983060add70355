//! Good/all ratios, their limits, Gautschi's bounds and monotonicity.

use treembed::asymptotics::{compare_patterns, gautschi_check, gamma_ratio_half, ratio_coefficient, ln_bigint};
use treembed::series::{GfEngine, Kind};
use treembed::{FamilyId, PlaneTree};

fn main() -> treembed::Result<()> {
    let engine = GfEngine::new(1001);
    let n = 1001;
    for fam in [FamilyId::PlaneBinary, FamilyId::PlantedPlane] {
        for text in ["()", "(())", "(()())", "((()))", "(()()())"] {
            let s: PlaneTree = text.parse()?;
            let a = engine.series(&s, fam, Kind::All)?;
            let g = engine.good_from_all(&a, fam);
            let r = (ln_bigint(g.coeff(n)) - ln_bigint(a.coeff(n))).exp();
            println!("{fam:>14} {text:<10} sqrt(n) g/a = {:.5}  n g/a = {:.5}  limit {:?}",
                r * (n as f64).sqrt(), r * n as f64, ratio_coefficient(&s, fam));
        }
    }
    println!();
    for k in [0.5, 1.0, 1.5, 2.0, 4.5] {
        println!("Gamma(k+1/2)/Gamma(k) at k = {k}: {:.6}", gamma_ratio_half(k));
    }
    println!("Gautschi (1, 1/2): {}", gautschi_check(1.0, 0.5)?);
    let c = compare_patterns(&PlaneTree::cherry(), &"((()())(()()))".parse()?, FamilyId::PlaneBinary);
    println!("cherry vs complete tree: {} ({:?} <= {:?})", c.verdict(), c.limit1, c.limit2);
    Ok(())
}
