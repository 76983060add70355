//! Disconnected patterns: orderings in the plane case, clipping in the non-plane case.

use treembed::oracle::count_forest_in_family;
use treembed::series::GfEngine;
use treembed::{FamilyId, PlaneForest};

fn main() -> treembed::Result<()> {
    let engine = GfEngine::new(11);
    for text in ["();()", "();(())", "();();()", "(()());()"] {
        let f: PlaneForest = text.parse()?;
        for fam in [FamilyId::PlaneBinary, FamilyId::NonplaneBinary] {
            let a = match engine.forest_series(&f, fam) {
                Ok(a) => a,
                Err(e) => {
                    println!("{fam:>16} {text:<10}  {e}");
                    continue;
                }
            };
            let mut line = format!("{fam:>16} {text:<10}");
            for n in (5..=11).step_by(2) {
                let oracle = count_forest_in_family(&f, fam, n)?.all;
                line += &format!("  n={n}: {}/{}", a.coeff(n), oracle);
            }
            println!("{line}");
        }
    }
    Ok(())
}
