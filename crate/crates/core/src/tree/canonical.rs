use super::parse::format_tree;
use super::PlaneTree;
use crate::error::{Error, Result};

/// Canonical plane representative of the non-plane isomorphism class of `t`.
///
/// Children are sorted recursively by (size, canonical text). Since the text of a
/// tree with `k` nodes has length `2k`, this is the order of (text length, text).
pub fn canonical_nonplane(t: &PlaneTree) -> PlaneTree {
    canon(t).0
}

/// Text of [`canonical_nonplane`]; equal strings iff non-plane isomorphic.
pub fn canonical_text(t: &PlaneTree) -> String {
    canon(t).1
}

fn canon(t: &PlaneTree) -> (PlaneTree, String) {
    let mut kids: Vec<(PlaneTree, String)> = t.children().iter().map(canon).collect();
    kids.sort_by(|a, b| canonical_order(&a.1, &b.1));
    let mut text = String::with_capacity(2 * t.size());
    text.push('(');
    for (_, s) in &kids {
        text.push_str(s);
    }
    text.push(')');
    (PlaneTree::node(kids.into_iter().map(|k| k.0).collect()), text)
}

/// Order on canonical encodings: shorter first, then bytewise.
pub(crate) fn canonical_order(a: &str, b: &str) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Binary nodes whose two subtrees are non-plane isomorphic.
///
/// Defined for unary-binary trees only.
pub fn count_symmetry_nodes(t: &PlaneTree) -> Result<usize> {
    if !t.is_motzkin() {
        return Err(Error::domain(format!(
            "symmetry nodes are defined for unary-binary trees, got {}",
            format_tree(t)
        )));
    }
    fn walk(t: &PlaneTree) -> (String, usize) {
        let parts: Vec<(String, usize)> = t.children().iter().map(walk).collect();
        let mut count: usize = parts.iter().map(|p| p.1).sum();
        if parts.len() == 2 && parts[0].0 == parts[1].0 {
            count += 1;
        }
        let mut codes: Vec<String> = parts.into_iter().map(|p| p.0).collect();
        codes.sort_by(|a, b| canonical_order(a, b));
        (format!("({})", codes.concat()), count)
    }
    Ok(walk(t).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PlaneTree {
        s.parse().unwrap()
    }

    #[test]
    fn mirror_pair_shares_canonical_form() {
        assert_eq!(canonical_nonplane(&t("(()(()()))")), canonical_nonplane(&t("((()())())")));
        assert_eq!(canonical_text(&t("((()())())")), "(()(()()))");
        assert_eq!(canonical_nonplane(&PlaneTree::cherry()), PlaneTree::cherry());
    }

    #[test]
    fn size_dominates_text_in_the_order() {
        // "(()())" is bigger than "(())" even though '(' < ')'.
        assert_eq!(canonical_text(&t("((()())(()))")), "((())(()()))");
    }

    #[test]
    fn symmetry_nodes() {
        assert_eq!(count_symmetry_nodes(&PlaneTree::cherry()).unwrap(), 1);
        assert_eq!(count_symmetry_nodes(&t("(()(()()))")).unwrap(), 1);
        assert_eq!(count_symmetry_nodes(&PlaneTree::leaf()).unwrap(), 0);
        assert_eq!(count_symmetry_nodes(&t("((()())(()()))")).unwrap(), 3);
        assert_eq!(count_symmetry_nodes(&t("((())(()))")).unwrap(), 1);
        assert!(count_symmetry_nodes(&PlaneTree::star(3)).is_err());
    }
}
