//! The dominant singularity of non-plane binary trees and its amplitude.

use treembed::asymptotics::solve_nonplane_constants;

fn main() -> treembed::Result<()> {
    for digits in [10, 20, 30] {
        let c = solve_nonplane_constants(digits)?;
        println!("{digits} digits");
        println!("  rho   = {}", c.decimals.rho);
        println!("  b     = {}", c.decimals.b);
        println!("  sigma = {}", c.decimals.sigma);
        println!("  a     = {}", c.decimals.a_const);
        println!("  |F| = {:e}, |F_V| = {:e}", c.residual_f, c.residual_fv);
    }
    Ok(())
}
