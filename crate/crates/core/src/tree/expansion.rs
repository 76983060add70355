//! Replacement of high-degree nodes by binary trees.
//!
//! A node of out-degree `d >= 3` is replaced by a binary tree with `d` leaves whose
//! leaves are the node's original subtrees. The new internal nodes are *auxiliary*:
//! they are not part of the pattern, so two expansions are identified only by an
//! isomorphism that maps auxiliary nodes to auxiliary nodes.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::canonical::canonical_order;
use super::{DegreeSequence, PlaneTree};
use crate::family::FamilyId;
use crate::numbers::catalan;

/// A non-plane unary-binary tree produced by the expansion, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedTree {
    pub tree: PlaneTree,
    /// Auxiliary flag per node, in pre-order of `tree`.
    pub auxiliary: Vec<bool>,
    /// Binary nodes whose two subtrees are isomorphic (auxiliary flags included).
    pub symmetry_nodes: usize,
}

/// The set of expansions of a pattern and the constant `sum_t (1/2)^{s(t)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotzkinExpansion {
    pub trees: Vec<ExpandedTree>,
    pub c_s: BigRational,
}

#[derive(Clone, Debug)]
struct Marked {
    aux: bool,
    children: Vec<Marked>,
    code: String,
}

impl Marked {
    fn new(aux: bool, mut children: Vec<Marked>) -> Self {
        children.sort_by(|a, b| canonical_order(&a.code, &b.code));
        let mut code = String::new();
        code.push(if aux { '[' } else { '(' });
        for c in &children {
            code.push_str(&c.code);
        }
        code.push(if aux { ']' } else { ')' });
        Marked { aux, children, code }
    }

    fn symmetry_nodes(&self) -> usize {
        let own = usize::from(self.children.len() == 2 && self.children[0].code == self.children[1].code);
        own + self.children.iter().map(Marked::symmetry_nodes).sum::<usize>()
    }

    fn to_plane(&self, aux: &mut Vec<bool>) -> PlaneTree {
        aux.push(self.aux);
        PlaneTree::node(self.children.iter().map(|c| c.to_plane(aux)).collect())
    }
}

/// Enumerates the distinct expansions of `s` (up to non-plane isomorphism
/// preserving auxiliary nodes) and sums `(1/2)^{symmetry nodes}` over them.
///
/// A unary-binary `s` has exactly one expansion, its own canonical form.
pub fn motzkin_expansions(s: &PlaneTree) -> MotzkinExpansion {
    let mut distinct: BTreeMap<String, Marked> = BTreeMap::new();
    for m in expand(s) {
        distinct.entry(m.code.clone()).or_insert(m);
    }
    let mut c_s = BigRational::zero();
    let mut trees = Vec::with_capacity(distinct.len());
    for m in distinct.into_values() {
        let symmetry_nodes = m.symmetry_nodes();
        c_s += BigRational::new(BigInt::one(), BigInt::one() << symmetry_nodes);
        let mut auxiliary = Vec::new();
        let tree = m.to_plane(&mut auxiliary);
        trees.push(ExpandedTree { tree, auxiliary, symmetry_nodes });
    }
    MotzkinExpansion { trees, c_s }
}

fn expand(t: &PlaneTree) -> Vec<Marked> {
    let options: Vec<Vec<Marked>> = t.children().iter().map(expand).collect();
    let mut out: BTreeMap<String, Marked> = BTreeMap::new();
    for combo in cartesian(&options) {
        if combo.len() <= 2 {
            let m = Marked::new(false, combo);
            out.entry(m.code.clone()).or_insert(m);
        } else {
            for m in hierarchies(&combo, false) {
                out.entry(m.code.clone()).or_insert(m);
            }
        }
    }
    out.into_values().collect()
}

/// All binary hierarchies over `items`: the top node gets `aux = top_aux`, every
/// internal node below it is auxiliary. Items are used as the leaves.
fn hierarchies(items: &[Marked], top_aux: bool) -> Vec<Marked> {
    if items.len() == 1 {
        return vec![items[0].clone()];
    }
    let n = items.len();
    let mut out = Vec::new();
    // Unordered splits {A, B}: A always holds item 0, B is nonempty.
    for mask in 0..(1u32 << (n - 1)) {
        let in_a = |i: usize| i == 0 || (mask >> (i - 1)) & 1 == 1;
        let a: Vec<Marked> = (0..n).filter(|&i| in_a(i)).map(|i| items[i].clone()).collect();
        let b: Vec<Marked> = (0..n).filter(|&i| !in_a(i)).map(|i| items[i].clone()).collect();
        if b.is_empty() {
            continue;
        }
        let left = hierarchies(&a, true);
        let right = hierarchies(&b, true);
        for l in &left {
            for r in &right {
                out.push(Marked::new(top_aux, vec![l.clone(), r.clone()]));
            }
        }
    }
    out
}

fn cartesian(options: &[Vec<Marked>]) -> Vec<Vec<Marked>> {
    let mut acc: Vec<Vec<Marked>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for o in opts {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

/// `C = prod_i Catalan(i - 1)^{d_i}`: the number of plane binary trees that can replace
/// the high-degree nodes. The plane-binary product starts at `i = 3`, the planted-plane
/// product at `i = 1`; both give the same number since `Catalan(0) = Catalan(1) = 1`.
pub fn binary_expansion_constant(d: &DegreeSequence, family: FamilyId) -> BigUint {
    let start = match family {
        FamilyId::PlantedPlane => 1,
        FamilyId::PlaneBinary | FamilyId::NonplaneBinary => 3,
    };
    d.d.iter()
        .enumerate()
        .skip(start)
        .filter(|(_, &c)| c > 0)
        .fold(BigUint::one(), |acc, (i, &c)| acc * catalan(i - 1).pow(c as u32))
}
