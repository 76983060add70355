//! Parsing, degree sequences, canonical forms and high-degree expansions.
//!
//! ```text
//! cargo run --example tree_structure
//! ```

use treembed::tree::{
    canonical_nonplane, clip_forest_nonplane, count_symmetry_nodes, forest_orderings, format_tree,
    motzkin_expansions, parse_tree,
};
use treembed::PlaneForest;

fn main() -> treembed::Result<()> {
    let s = parse_tree(" ( () ( ()() ) ) ")?;
    println!("pattern      {}", format_tree(&s));
    let d = s.degree_sequence();
    println!("d = {:?}  m = {}  l = {}  u = {}  k = {}", d.d, d.m, d.l, d.u, d.k_param());
    println!("canonical    {}", canonical_nonplane(&s));
    println!("symmetry nodes {}", count_symmetry_nodes(&s)?);

    let star = parse_tree("(()()()())")?;
    let exp = motzkin_expansions(&star);
    println!("\n{star} expands to {} unary-binary trees, C_S = {}", exp.trees.len(), exp.c_s);
    for t in &exp.trees {
        println!("  {}  symmetric nodes: {}", t.tree, t.symmetry_nodes);
    }

    let f: PlaneForest = "();(());()".parse()?;
    println!("\norderings of {f}:");
    for t in forest_orderings(&f)? {
        println!("  {t}");
    }
    println!("clipped: {}", clip_forest_nonplane(&f)?);
    Ok(())
}
