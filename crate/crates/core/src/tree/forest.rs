use std::fmt;
use std::str::FromStr;

use super::canonical::canonical_nonplane;
use super::parse::{parse_tree, write_tree};
use super::PlaneTree;
use crate::error::{Error, Result};

/// Ordered list of rooted plane trees. Text form: tree literals separated by `;`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneForest {
    components: Vec<PlaneTree>,
}

impl PlaneForest {
    pub fn new(components: Vec<PlaneTree>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("a forest needs at least one component"));
        }
        Ok(PlaneForest { components })
    }

    pub fn components(&self) -> &[PlaneTree] {
        &self.components
    }

    /// Number of components `r`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Total number of nodes.
    pub fn size(&self) -> usize {
        self.components.iter().map(PlaneTree::size).sum()
    }

    /// The only component when `r == 1`.
    pub fn as_tree(&self) -> Option<&PlaneTree> {
        match self.components.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    fn require_disconnected(&self) -> Result<()> {
        if self.components.len() < 2 {
            return Err(Error::domain(format!(
                "expected a forest with at least two components, got {}",
                self.components.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PlaneForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            write_tree(c, &mut out);
        }
        f.write_str(&out)
    }
}

impl FromStr for PlaneForest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        let mut start = 0;
        for part in s.split(';') {
            let tree = parse_tree(part).map_err(|e| match e {
                Error::Parse { offset, message } => Error::Parse {
                    offset: start + offset,
                    message,
                },
                other => other,
            })?;
            components.push(tree);
            start += part.len() + 1;
        }
        PlaneForest::new(components)
    }
}

/// All distinct plane trees obtained by putting a new root over the components in
/// some order. There are `r! / (k_1! ... k_l!)` of them, `k_i` being the sizes of
/// the classes of equal components.
///
/// Output is in lexicographic order of the component sequence.
pub fn forest_orderings(f: &PlaneForest) -> Result<Vec<PlaneTree>> {
    f.require_disconnected()?;
    let mut seq: Vec<PlaneTree> = f.components.clone();
    seq.sort();
    let mut out = vec![PlaneTree::node(seq.clone())];
    while next_permutation(&mut seq) {
        out.push(PlaneTree::node(seq.clone()));
    }
    Ok(out)
}

/// Single non-plane tree with a new root clipping all components together.
pub fn clip_forest_nonplane(f: &PlaneForest) -> Result<PlaneTree> {
    f.require_disconnected()?;
    Ok(canonical_nonplane(&PlaneTree::node(f.components.clone())))
}

/// Lexicographic successor; returns false (leaving `v` sorted) after the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
