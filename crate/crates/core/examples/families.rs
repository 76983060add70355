//! Family sizes and exhaustive enumeration.

use treembed::family::{complete_balanced, enumerate_family, family_size};
use treembed::FamilyId;

fn main() -> treembed::Result<()> {
    println!("{:>3} {:>12} {:>12} {:>12}", "n", "|B_n|", "|V_n|", "|T_n|");
    for n in 1..=15 {
        let sizes: Vec<String> = FamilyId::ALL
            .iter()
            .map(|&f| family_size(f, n).map(|c| c.to_string()))
            .collect::<treembed::Result<_>>()?;
        println!("{n:>3} {:>12} {:>12} {:>12}", sizes[0], sizes[1], sizes[2]);
    }
    println!("\nnon-plane binary trees with 7 nodes:");
    for t in enumerate_family(FamilyId::NonplaneBinary, 7)? {
        println!("  {t}");
    }
    println!("complete tree of height 2: {}", complete_balanced(2));
    Ok(())
}
