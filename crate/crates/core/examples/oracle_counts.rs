//! Brute-force embedding counts, per host and per family.

use treembed::oracle::{count_forest_in_family, count_in_family, count_in_tree, induced_substructure, Mode};
use treembed::{FamilyId, PlaneForest, PlaneTree};

fn main() -> treembed::Result<()> {
    let cherry = PlaneTree::cherry();
    let host: PlaneTree = "(()(()()))".parse()?;
    println!("host {host}");
    println!("  induced on {{0, 1, 3}}: {}", induced_substructure(&host, &[0, 1, 3])?);
    let c = count_in_tree(&cherry, &host, Mode::Plane);
    println!("  cherry, plane:     all {} good {}", c.all, c.good);
    let c = count_in_tree(&cherry, &host, Mode::Nonplane);
    println!("  cherry, non-plane: all {} good {}", c.all, c.good);

    for fam in FamilyId::ALL {
        for n in [5, 7, 9] {
            let c = count_in_family(&cherry, fam, n)?;
            println!("{fam:>16} n={n}: all {:>5} good {:>5}", c.all, c.good);
        }
    }
    let f: PlaneForest = "();()".parse()?;
    let c = count_forest_in_family(&f, FamilyId::PlaneBinary, 5)?;
    println!("two single nodes in B_5: {}", c.all);
    Ok(())
}
