use super::PlaneTree;

/// Pre-order array form of a tree. Node ids are pre-order indices, the root is 0.
///
/// The subtree of node `v` occupies ids `v .. v + size[v]`, so ancestry is an
/// interval test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatTree {
    pub parent: Vec<Option<usize>>,
    pub size: Vec<usize>,
    pub children: Vec<Vec<usize>>,
}

impl FlatTree {
    pub fn from_tree(t: &PlaneTree) -> Self {
        let n = t.size();
        let mut flat = FlatTree {
            parent: Vec::with_capacity(n),
            size: Vec::with_capacity(n),
            children: Vec::with_capacity(n),
        };
        flat.push(t, None);
        flat
    }

    fn push(&mut self, t: &PlaneTree, parent: Option<usize>) -> usize {
        let id = self.parent.len();
        self.parent.push(parent);
        self.size.push(0);
        self.children.push(Vec::with_capacity(t.out_degree()));
        for c in t.children() {
            let cid = self.push(c, Some(id));
            self.children[id].push(cid);
        }
        self.size[id] = self.parent.len() - id;
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// `a` is an ancestor of `b` or equal to it.
    #[inline]
    pub fn is_ancestor_or_self(&self, a: usize, b: usize) -> bool {
        a <= b && b < a + self.size[a]
    }

    /// Rebuilds the nested representation.
    pub fn to_tree(&self) -> PlaneTree {
        self.subtree(0)
    }

    pub fn subtree(&self, v: usize) -> PlaneTree {
        PlaneTree::node(self.children[v].iter().map(|&c| self.subtree(c)).collect())
    }
}
