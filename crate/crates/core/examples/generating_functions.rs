//! Exact generating functions for all three families.

use treembed::series::{GfEngine, Kind};
use treembed::{FamilyId, PlaneTree};

fn show(label: &str, coeffs: &[num_bigint::BigInt]) {
    let text: Vec<String> = coeffs.iter().skip(1).map(|c| c.to_string()).collect();
    println!("{label:<28} {}", text.join(" "));
}

fn main() -> treembed::Result<()> {
    let engine = GfEngine::new(13);
    show("B(z)", engine.b().coeffs());
    show("V(z)", engine.v().coeffs());
    show("T(z)", engine.t().coeffs());

    let patterns: [PlaneTree; 3] = [PlaneTree::cherry(), "((())())".parse()?, "(()()())".parse()?];
    for fam in FamilyId::ALL {
        println!("\n{fam}");
        for s in &patterns {
            match engine.series(s, fam, Kind::All) {
                Ok(a) => {
                    show(&format!("  A {s}"), a.coeffs());
                    show(&format!("  G {s}"), engine.good_from_all(&a, fam).coeffs());
                }
                Err(e) => println!("  {s}: {e}"),
            }
        }
    }
    Ok(())
}
