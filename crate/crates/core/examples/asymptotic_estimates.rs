//! Leading-order estimates against exact coefficients.

use treembed::asymptotics::asym_count;
use treembed::series::{GfEngine, Kind};
use treembed::{FamilyId, PlaneTree};

fn main() -> treembed::Result<()> {
    let engine = GfEngine::new(1001);
    let patterns = [PlaneTree::cherry(), PlaneTree::chain(4)];
    for fam in [FamilyId::PlaneBinary, FamilyId::PlantedPlane, FamilyId::NonplaneBinary] {
        for s in &patterns {
            if fam == FamilyId::NonplaneBinary && !s.is_motzkin() {
                continue;
            }
            let a = engine.series(s, fam, Kind::All)?;
            let est = asym_count(s, fam, Kind::All)?;
            print!("{fam:>16} {s:<10} K={:.6e} beta={:.4} alpha={:>4}  exact/estimate:", est.k_const, est.beta, est.alpha);
            for n in [101, 301, 501, 1001] {
                print!(" {:.5}", est.ratio_to(a.coeff(n), n).unwrap_or(f64::NAN));
            }
            println!();
        }
    }
    Ok(())
}
