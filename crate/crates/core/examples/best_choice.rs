//! Win probabilities of the best-choice game and a Monte Carlo check.

use treembed::stopping::{balanced_identification_prob, best_choice_win_prob, simulate_best_choice};
use treembed::{FamilyId, PlaneTree};

fn main() -> treembed::Result<()> {
    let cherry = PlaneTree::cherry();
    for fam in [FamilyId::PlaneBinary, FamilyId::NonplaneBinary] {
        for n in [5, 7] {
            let exact = best_choice_win_prob(&cherry, fam, n)?;
            let sim = simulate_best_choice(fam, n, &cherry, 100_000, 7)?;
            println!(
                "{fam:>16} n={n}: exact {exact} simulated {:.4} +- {:.4} ({} hits)",
                sim.estimate.unwrap_or(f64::NAN),
                sim.std_error.unwrap_or(f64::NAN),
                sim.hits
            );
        }
    }
    for h in 1..=3 {
        let p = balanced_identification_prob(&"(()())".parse()?, h)?;
        println!("cherry seen, host complete of height {h}: {p}");
    }
    Ok(())
}
