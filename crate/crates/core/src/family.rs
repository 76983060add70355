//! The three host families and their exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numbers::{catalan, wedderburn_etherington_table};
use crate::tree::canonical::canonical_order;
use crate::tree::{canonical_text, PlaneTree};

/// Default bound on the number of trees a single enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    /// Plane binary trees, counted by Catalan numbers at odd sizes.
    PlaneBinary,
    /// Non-plane binary trees, counted by Wedderburn–Etherington numbers.
    NonplaneBinary,
    /// Planted plane trees, `|T_n| = Catalan(n - 1)`.
    PlantedPlane,
}

impl FamilyId {
    pub const ALL: [FamilyId; 3] = [
        FamilyId::PlaneBinary,
        FamilyId::NonplaneBinary,
        FamilyId::PlantedPlane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::PlaneBinary => "plane-binary",
            FamilyId::NonplaneBinary => "nonplane-binary",
            FamilyId::PlantedPlane => "planted-plane",
        }
    }

    /// Only odd sizes are inhabited.
    pub fn is_binary(self) -> bool {
        !matches!(self, FamilyId::PlantedPlane)
    }

    /// Embeddings into this family respect sibling order.
    pub fn is_plane(self) -> bool {
        !matches!(self, FamilyId::NonplaneBinary)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "plane-binary" | "b" => Ok(FamilyId::PlaneBinary),
            "nonplane-binary" | "non-plane-binary" | "v" => Ok(FamilyId::NonplaneBinary),
            "planted-plane" | "t" => Ok(FamilyId::PlantedPlane),
            other => Err(Error::domain(format!("unknown family {other:?}"))),
        }
    }
}

/// Exact number of trees of size `n` in `fam`.
pub fn family_size(fam: FamilyId, n: usize) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::domain("family size needs n >= 1"));
    }
    Ok(match fam {
        FamilyId::PlaneBinary if n % 2 == 0 => BigUint::zero(),
        FamilyId::PlaneBinary => catalan((n - 1) / 2),
        FamilyId::NonplaneBinary => wedderburn_etherington_table(n).swap_remove(n),
        FamilyId::PlantedPlane => catalan(n - 1),
    })
}

/// All trees of size `n` in `fam`, each once, in a fixed order, refusing to produce
/// more than [`DEFAULT_ENUMERATION_CAP`] trees.
pub fn enumerate_family(fam: FamilyId, n: usize) -> Result<Vec<PlaneTree>> {
    enumerate_family_capped(fam, n, DEFAULT_ENUMERATION_CAP)
}

/// [`enumerate_family`] with an explicit cap.
///
/// Plane binary trees are generated by left-subtree size, non-plane ones as
/// canonical unordered pairs, planted plane trees by first-subtree size. Non-plane
/// output trees are their own canonical forms.
pub fn enumerate_family_capped(fam: FamilyId, n: usize, cap: u64) -> Result<Vec<PlaneTree>> {
    let count = family_size(fam, n)?;
    if count.to_u64().map_or(true, |c| c > cap) {
        return Err(Error::Resource(format!(
            "{fam} at n = {n} has {count} trees, above the enumeration cap of {cap}"
        )));
    }
    Ok(match fam {
        FamilyId::PlaneBinary => plane_binary_table(n).swap_remove(n),
        FamilyId::NonplaneBinary => nonplane_binary_table(n)
            .swap_remove(n)
            .into_iter()
            .map(|(t, _)| t)
            .collect(),
        FamilyId::PlantedPlane => planted_plane(n),
    })
}

fn plane_binary_table(n: usize) -> Vec<Vec<PlaneTree>> {
    let mut table: Vec<Vec<PlaneTree>> = vec![Vec::new(); n + 1];
    if n >= 1 {
        table[1].push(PlaneTree::leaf());
    }
    for size in (3..=n).step_by(2) {
        let mut here = Vec::new();
        for left in (1..size - 1).step_by(2) {
            let right = size - 1 - left;
            for l in &table[left] {
                for r in &table[right] {
                    here.push(PlaneTree::node(vec![l.clone(), r.clone()]));
                }
            }
        }
        table[size] = here;
    }
    table
}

/// Canonical non-plane binary trees with their canonical text, per size.
fn nonplane_binary_table(n: usize) -> Vec<Vec<(PlaneTree, String)>> {
    let mut table: Vec<Vec<(PlaneTree, String)>> = vec![Vec::new(); n + 1];
    if n >= 1 {
        table[1].push((PlaneTree::leaf(), "()".to_string()));
    }
    for size in (3..=n).step_by(2) {
        let mut here = Vec::new();
        let rest = size - 1;
        for a in (1..=rest / 2).step_by(2) {
            let b = rest - a;
            for (i, (l, ls)) in table[a].iter().enumerate() {
                // Symmetric case: only unordered pairs i <= j.
                let start = if a == b { i } else { 0 };
                for (r, rs) in &table[b][start..] {
                    let (first, second) = if canonical_order(ls, rs).is_le() {
                        ((l, ls), (r, rs))
                    } else {
                        ((r, rs), (l, ls))
                    };
                    let tree = PlaneTree::node(vec![first.0.clone(), second.0.clone()]);
                    let text = format!("({}{})", first.1, second.1);
                    debug_assert_eq!(text, canonical_text(&tree));
                    here.push((tree, text));
                }
            }
        }
        table[size] = here;
    }
    table
}

fn planted_plane(n: usize) -> Vec<PlaneTree> {
    // forests[k] = ordered forests with k nodes in total
    let mut trees: Vec<Vec<PlaneTree>> = vec![Vec::new(); n + 1];
    let mut forests: Vec<Vec<Vec<PlaneTree>>> = vec![Vec::new(); n];
    if n == 0 {
        return Vec::new();
    }
    forests[0].push(Vec::new());
    for size in 1..=n {
        trees[size] = forests[size - 1]
            .iter()
            .map(|f| PlaneTree::node(f.clone()))
            .collect();
        if size < n {
            let mut here = Vec::new();
            for first in 1..=size {
                for t in &trees[first] {
                    for rest in &forests[size - first] {
                        let mut f = Vec::with_capacity(rest.len() + 1);
                        f.push(t.clone());
                        f.extend(rest.iter().cloned());
                        here.push(f);
                    }
                }
            }
            forests[size] = here;
        }
    }
    trees.swap_remove(n)
}

/// Complete balanced binary tree of height `h` (`2^{h+1} - 1` nodes).
pub fn complete_balanced(h: usize) -> PlaneTree {
    (0..h).fold(PlaneTree::leaf(), |t, _| PlaneTree::node(vec![t.clone(), t]))
}
