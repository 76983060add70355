//! Rooted plane trees and forests.
//!
//! A [`PlaneTree`] is the single representation used for patterns and hosts alike.
//! Non-plane trees are represented by their canonical plane representative
//! (see [`canonical_nonplane`]).

pub(crate) mod canonical;
mod expansion;
mod flat;
mod forest;
mod parse;

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

pub use canonical::{canonical_nonplane, canonical_text, count_symmetry_nodes};
pub use expansion::{binary_expansion_constant, motzkin_expansions, ExpandedTree, MotzkinExpansion};
pub use flat::FlatTree;
pub use forest::{clip_forest_nonplane, forest_orderings, PlaneForest};
pub use parse::{format_tree, parse_tree};

use crate::error::{Error, Result};

/// Rooted ordered tree. Equality is structural and respects the order of children.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
}

impl PlaneTree {
    /// The single-node tree.
    pub fn leaf() -> Self {
        PlaneTree { children: Vec::new() }
    }

    /// A root over the given subtrees, in order.
    pub fn node(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    /// Root with two leaf children.
    pub fn cherry() -> Self {
        Self::star(2)
    }

    /// Root with `k` leaf children.
    pub fn star(k: usize) -> Self {
        Self::node(vec![Self::leaf(); k])
    }

    /// Path on `m >= 1` nodes.
    pub fn chain(m: usize) -> Self {
        assert!(m >= 1, "a chain has at least one node");
        (1..m).fold(Self::leaf(), |t, _| Self::node(vec![t]))
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    pub fn into_children(self) -> Vec<PlaneTree> {
        self.children
    }

    pub fn out_degree(&self) -> usize {
        self.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::size).sum::<usize>()
    }

    pub fn leaves(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(PlaneTree::leaves).sum()
        }
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        self.children
            .iter()
            .map(PlaneTree::max_out_degree)
            .max()
            .unwrap_or(0)
            .max(self.out_degree())
    }

    /// Every node has out-degree at most two (a unary-binary tree).
    pub fn is_motzkin(&self) -> bool {
        self.max_out_degree() <= 2
    }

    /// Every node has out-degree zero or two.
    pub fn is_full_binary(&self) -> bool {
        (self.children.is_empty() || self.children.len() == 2)
            && self.children.iter().all(PlaneTree::is_full_binary)
    }

    /// Pre-order flattening with parent pointers and subtree sizes.
    pub fn flatten(&self) -> FlatTree {
        FlatTree::from_tree(self)
    }

    /// Node count by out-degree.
    pub fn degree_sequence(&self) -> DegreeSequence {
        degree_sequence(self)
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tree(self))
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

/// Counts of nodes by out-degree, with the derived sizes `m`, `l`, `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    /// `d[i]` = number of nodes with out-degree `i`, for `i in 0..m`.
    pub d: Vec<usize>,
    /// Total number of nodes.
    pub m: usize,
    /// Leaves.
    pub l: usize,
    /// Unary nodes.
    pub u: usize,
}

impl DegreeSequence {
    /// Builds a sequence from raw counts, checking the tree identities.
    pub fn from_counts(mut d: Vec<usize>) -> Result<Self> {
        let m: usize = d.iter().sum();
        let edges: usize = d.iter().enumerate().map(|(i, c)| i * c).sum();
        if m == 0 || edges + 1 != m {
            return Err(Error::domain(format!(
                "counts {d:?} do not describe a rooted tree"
            )));
        }
        if d.iter().skip(m).any(|&c| c != 0) {
            return Err(Error::domain("out-degree exceeds m - 1"));
        }
        d.resize(m, 0);
        let l = d[0];
        let u = d.get(1).copied().unwrap_or(0);
        Ok(DegreeSequence { d, m, l, u })
    }

    /// `(m + l - 2) / 2`.
    pub fn k_param(&self) -> Rational64 {
        Rational64::new((self.m + self.l) as i64 - 2, 2)
    }

    /// `m + l`, the quantity every exponent in the asymptotics is built from.
    pub fn m_plus_l(&self) -> usize {
        self.m + self.l
    }

    pub fn count(&self, out_degree: usize) -> usize {
        self.d.get(out_degree).copied().unwrap_or(0)
    }

    pub fn is_motzkin(&self) -> bool {
        self.d.iter().skip(3).all(|&c| c == 0)
    }
}

/// Node count by out-degree for `t`.
pub fn degree_sequence(t: &PlaneTree) -> DegreeSequence {
    fn walk(t: &PlaneTree, d: &mut Vec<usize>) {
        let k = t.out_degree();
        if d.len() <= k {
            d.resize(k + 1, 0);
        }
        d[k] += 1;
        for c in t.children() {
            walk(c, d);
        }
    }
    let mut d = Vec::new();
    walk(t, &mut d);
    let m = t.size();
    d.resize(m.max(d.len()), 0);
    d.truncate(m);
    let l = d[0];
    let u = d.get(1).copied().unwrap_or(0);
    DegreeSequence { d, m, l, u }
}
