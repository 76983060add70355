//! Nested-parenthesis text form: `tree := "(" tree* ")"`, a leaf is `()`.

use super::PlaneTree;
use crate::error::{Error, Result};

/// Parses one tree. Whitespace is allowed between any two tokens.
pub fn parse_tree(text: &str) -> Result<PlaneTree> {
    // Open nodes; each entry collects the children parsed so far.
    let mut stack: Vec<(usize, Vec<PlaneTree>)> = Vec::new();
    let mut done: Option<PlaneTree> = None;

    for (offset, ch) in text.char_indices() {
        match ch {
            c if c.is_whitespace() => {}
            '(' => {
                if done.is_some() {
                    return Err(parse_err(offset, "unexpected content after the tree"));
                }
                stack.push((offset, Vec::new()));
            }
            ')' => {
                let (_, children) = stack
                    .pop()
                    .ok_or_else(|| parse_err(offset, "unmatched ')'"))?;
                let node = PlaneTree::node(children);
                match stack.last_mut() {
                    Some((_, siblings)) => siblings.push(node),
                    None => done = Some(node),
                }
            }
            other => {
                return Err(parse_err(offset, format!("unexpected character {other:?}")));
            }
        }
    }

    if let Some((offset, _)) = stack.first() {
        return Err(parse_err(*offset, "unclosed '('"));
    }
    done.ok_or_else(|| parse_err(text.len(), "empty input"))
}

/// Canonical text with no whitespace; `parse_tree(&format_tree(t)) == t`.
pub fn format_tree(t: &PlaneTree) -> String {
    let mut out = String::with_capacity(2 * t.size());
    write_tree(t, &mut out);
    out
}

pub(crate) fn write_tree(t: &PlaneTree, out: &mut String) {
    out.push('(');
    for c in t.children() {
        write_tree(c, out);
    }
    out.push(')');
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}
