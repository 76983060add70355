//! Brute-force embedding counts.
//!
//! An embedding is a set of host nodes whose induced ancestor order is the pattern.
//! In plane mode sibling order is inherited from the host and every qualifying
//! subset is one embedding. In non-plane mode two subsets are the same embedding
//! when a host automorphism maps one onto the other, so the oracle counts orbits of
//! subsets. Orbits are identified by the canonical form of the host with the
//! chosen nodes marked.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{enumerate_family_capped, family_size, FamilyId, DEFAULT_ENUMERATION_CAP};
use crate::numbers::binomial_u128;
use crate::tree::canonical::canonical_order;
use crate::tree::{canonical_text, format_tree, FlatTree, PlaneForest, PlaneTree};

/// Default bound on `|family| * binom(n, m)` subsets inspected by one family query.
pub const DEFAULT_SUBSET_BUDGET: u128 = 100_000_000;

/// How embeddings are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Plane,
    Nonplane,
}

impl Mode {
    pub fn for_family(fam: FamilyId) -> Mode {
        if fam.is_plane() {
            Mode::Plane
        } else {
            Mode::Nonplane
        }
    }
}

/// Number of all and of good (host-root containing) embeddings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EmbedCount {
    pub all: BigUint,
    pub good: BigUint,
}

impl EmbedCount {
    pub fn new(all: impl Into<BigUint>, good: impl Into<BigUint>) -> Self {
        EmbedCount { all: all.into(), good: good.into() }
    }
}

impl std::ops::AddAssign<&EmbedCount> for EmbedCount {
    fn add_assign(&mut self, rhs: &EmbedCount) {
        self.all += &rhs.all;
        self.good += &rhs.good;
    }
}

/// Resource bounds for family-wide queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub enumeration_cap: u64,
    pub subset_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            subset_budget: DEFAULT_SUBSET_BUDGET,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits { enumeration_cap: u64::MAX, subset_budget: u128::MAX }
    }
}

/// The forest induced on `subset` (pre-order ids of `t`) by the ancestor order.
///
/// Each selected node hangs below its nearest selected proper ancestor; siblings
/// keep the host's left-to-right order.
pub fn induced_substructure(t: &PlaneTree, subset: &[usize]) -> Result<PlaneForest> {
    let flat = t.flatten();
    let mut sel = subset.to_vec();
    sel.sort_unstable();
    sel.dedup();
    if sel.is_empty() {
        return Err(Error::domain("empty node subset"));
    }
    if let Some(&bad) = sel.iter().find(|&&v| v >= flat.len()) {
        return Err(Error::domain(format!("node id {bad} out of range for a tree of size {}", flat.len())));
    }
    let parents = induced_parents(&flat, &sel);
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); sel.len()];
    let mut roots = Vec::new();
    for (i, p) in parents.iter().enumerate() {
        match p {
            Some(p) => kids[*p].push(i),
            None => roots.push(i),
        }
    }
    fn build(v: usize, kids: &[Vec<usize>]) -> PlaneTree {
        PlaneTree::node(kids[v].iter().map(|&c| build(c, kids)).collect())
    }
    PlaneForest::new(roots.iter().map(|&r| build(r, &kids)).collect())
}

/// Embeddings of `s` into the single host `t`.
pub fn count_in_tree(s: &PlaneTree, t: &PlaneTree, mode: Mode) -> EmbedCount {
    let target = Target::tree(s, mode);
    let (all, good) = HostScan::new(t).count(&target, mode);
    EmbedCount::new(all, good)
}

/// Whether `s1` embeds into `s2` at least once.
pub fn is_subposet(s1: &PlaneTree, s2: &PlaneTree, mode: Mode) -> bool {
    let target = Target::tree(s1, mode);
    let scan = HostScan::new(s2);
    let mut found = false;
    scan.for_each_subset(target.size, true, |sel| {
        if scan.matches(sel, &target, mode) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found
}

/// Sum of [`count_in_tree`] over every tree of the family at size `n`.
pub fn count_in_family(s: &PlaneTree, fam: FamilyId, n: usize) -> Result<EmbedCount> {
    count_in_family_with(s, fam, n, &Limits::default())
}

pub fn count_in_family_with(s: &PlaneTree, fam: FamilyId, n: usize, limits: &Limits) -> Result<EmbedCount> {
    let hosts = hosts_within_budget(fam, n, s.size(), limits)?;
    let mode = Mode::for_family(fam);
    let target = Target::tree(s, mode);
    let mut total = (0u64, 0u64);
    for host in &hosts {
        let (a, g) = HostScan::new(host).count(&target, mode);
        total.0 += a;
        total.1 += g;
    }
    Ok(EmbedCount::new(total.0, total.1))
}

/// Embeddings of a disconnected pattern (`r >= 2`) into a binary family.
///
/// Components are matched as a multiset, compared as plane shapes in plane mode and
/// up to isomorphism in non-plane mode. Good embeddings do not exist since the host
/// root is comparable with every node.
pub fn count_forest_in_family(f: &PlaneForest, fam: FamilyId, n: usize) -> Result<EmbedCount> {
    count_forest_in_family_with(f, fam, n, &Limits::default())
}

pub fn count_forest_in_family_with(
    f: &PlaneForest,
    fam: FamilyId,
    n: usize,
    limits: &Limits,
) -> Result<EmbedCount> {
    if f.len() < 2 {
        return Err(Error::domain("forest queries need at least two components"));
    }
    if fam == FamilyId::PlantedPlane {
        return Err(Error::UnsupportedFamily(
            "forest patterns are only defined for the binary families".into(),
        ));
    }
    let hosts = hosts_within_budget(fam, n, f.size(), limits)?;
    let mode = Mode::for_family(fam);
    let target = Target::forest(f, mode);
    let mut all = 0u64;
    for host in &hosts {
        all += HostScan::new(host).count(&target, mode).0;
    }
    Ok(EmbedCount::new(all, 0u32))
}

/// Embeddings of a forest into one host.
pub fn count_forest_in_tree(f: &PlaneForest, t: &PlaneTree, mode: Mode) -> EmbedCount {
    let target = Target::forest(f, mode);
    let (all, good) = HostScan::new(t).count(&target, mode);
    EmbedCount::new(all, good)
}

fn hosts_within_budget(fam: FamilyId, n: usize, m: usize, limits: &Limits) -> Result<Vec<PlaneTree>> {
    let trees = family_size(fam, n)?;
    let subsets = binomial_u128(n, m);
    let work = trees
        .to_u128()
        .and_then(|t| t.checked_mul(subsets))
        .unwrap_or(u128::MAX);
    if work > limits.subset_budget {
        return Err(Error::Resource(format!(
            "{fam} at n = {n} needs {trees} hosts x binom({n}, {m}) subsets, above the budget of {}",
            limits.subset_budget
        )));
    }
    enumerate_family_capped(fam, n, limits.enumeration_cap)
}

/// What a subset must induce.
struct Target {
    size: usize,
    /// Single component; lets the scan restrict itself to subsets inside one subtree.
    connected: bool,
    /// Plane text, or concatenated sorted canonical component texts.
    code: Vec<u8>,
}

impl Target {
    fn tree(s: &PlaneTree, mode: Mode) -> Self {
        let code = match mode {
            Mode::Plane => format_tree(s),
            Mode::Nonplane => canonical_text(s),
        };
        Target { size: s.size(), connected: true, code: code.into_bytes() }
    }

    fn forest(f: &PlaneForest, mode: Mode) -> Self {
        let code = match mode {
            Mode::Plane => {
                let mut parts: Vec<String> = f.components().iter().map(format_tree).collect();
                parts.sort();
                parts.concat()
            }
            Mode::Nonplane => {
                let mut parts: Vec<String> = f.components().iter().map(canonical_text).collect();
                parts.sort_by(|a, b| canonical_order(a, b));
                parts.concat()
            }
        };
        Target { size: f.size(), connected: f.len() == 1, code: code.into_bytes() }
    }
}

struct HostScan {
    flat: FlatTree,
}

impl HostScan {
    fn new(t: &PlaneTree) -> Self {
        HostScan { flat: t.flatten() }
    }

    /// (all, good) for the target.
    fn count(&self, target: &Target, mode: Mode) -> (u64, u64) {
        let mut all = 0u64;
        let mut good = 0u64;
        let mut orbits: HashSet<Vec<u8>> = HashSet::new();
        self.for_each_subset(target.size, target.connected, |sel| {
            if self.matches(sel, target, mode) {
                let fresh = match mode {
                    Mode::Plane => true,
                    Mode::Nonplane => orbits.insert(self.marked_code(sel)),
                };
                if fresh {
                    all += 1;
                    if sel[0] == 0 {
                        good += 1;
                    }
                }
            }
            ControlFlow::Continue(())
        });
        (all, good)
    }

    /// Visits sorted `m`-subsets. With `connected`, only subsets whose first node is
    /// an ancestor of all others: every other subset induces several components.
    fn for_each_subset(
        &self,
        m: usize,
        connected: bool,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
    ) {
        let n = self.flat.len();
        if m == 0 || m > n {
            return;
        }
        let mut sel = Vec::with_capacity(m);
        if connected {
            for r in 0..n {
                sel.push(r);
                let end = r + self.flat.size[r];
                let flow = combinations(r + 1, end, m - 1, &mut sel, &mut visit);
                sel.pop();
                if flow.is_break() {
                    return;
                }
            }
        } else {
            let _ = combinations(0, n, m, &mut sel, &mut visit);
        }
    }

    fn matches(&self, sel: &[usize], target: &Target, mode: Mode) -> bool {
        match mode {
            Mode::Plane if target.connected => self.plane_code(sel) == target.code,
            Mode::Plane => sorted_components(&self.plane_code(sel)) == target.code,
            Mode::Nonplane => self.nonplane_code(sel) == target.code,
        }
    }

    /// Parenthesization of the induced forest, components in host order.
    fn plane_code(&self, sel: &[usize]) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * sel.len());
        let mut stack: Vec<usize> = Vec::with_capacity(sel.len());
        for &v in sel {
            while let Some(&top) = stack.last() {
                if self.flat.is_ancestor_or_self(top, v) {
                    break;
                }
                stack.pop();
                out.push(b')');
            }
            out.push(b'(');
            stack.push(v);
        }
        out.extend(std::iter::repeat(b')').take(stack.len()));
        out
    }

    fn nonplane_code(&self, sel: &[usize]) -> Vec<u8> {
        let parents = induced_parents(&self.flat, sel);
        let k = sel.len();
        let mut kids: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                kids[*p].push(i);
            }
        }
        // Children come after their parent in pre-order, so a reverse sweep is bottom-up.
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); k];
        for v in (0..k).rev() {
            codes[v] = join_sorted(b'(', kids[v].iter().map(|&c| std::mem::take(&mut codes[c])).collect(), b')');
        }
        let mut roots: Vec<Vec<u8>> = parents
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(i, _)| std::mem::take(&mut codes[i]))
            .collect();
        roots.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        roots.concat()
    }

    /// Canonical code of the host with the nodes of `sel` marked.
    fn marked_code(&self, sel: &[usize]) -> Vec<u8> {
        let n = self.flat.len();
        let mut marked = vec![false; n];
        for &v in sel {
            marked[v] = true;
        }
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
        for v in (0..n).rev() {
            let (open, close) = if marked[v] { (b'[', b']') } else { (b'(', b')') };
            let kids = self.flat.children[v].iter().map(|&c| std::mem::take(&mut codes[c])).collect();
            codes[v] = join_sorted(open, kids, close);
        }
        std::mem::take(&mut codes[0])
    }
}

fn join_sorted(open: u8, mut parts: Vec<Vec<u8>>, close: u8) -> Vec<u8> {
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out = Vec::with_capacity(2 + parts.iter().map(Vec::len).sum::<usize>());
    out.push(open);
    for p in parts {
        out.extend_from_slice(&p);
    }
    out.push(close);
    out
}

/// Index (into `sel`) of the nearest selected proper ancestor of each selected node.
/// `sel` must be sorted.
fn induced_parents(flat: &FlatTree, sel: &[usize]) -> Vec<Option<usize>> {
    let mut parents = Vec::with_capacity(sel.len());
    let mut stack: Vec<usize> = Vec::with_capacity(sel.len());
    for (i, &v) in sel.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if flat.is_ancestor_or_self(sel[top], v) {
                break;
            }
            stack.pop();
        }
        parents.push(stack.last().copied());
        stack.push(i);
    }
    parents
}

fn combinations(
    lo: usize,
    hi: usize,
    need: usize,
    sel: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if need == 0 {
        return visit(sel);
    }
    if hi < lo + need {
        return ControlFlow::Continue(());
    }
    for i in lo..=hi - need {
        sel.push(i);
        let flow = combinations(i + 1, hi, need - 1, sel, visit);
        sel.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Top-level components of a parenthesization, sorted bytewise and rejoined.
fn sorted_components(code: &[u8]) -> Vec<u8> {
    let mut parts: Vec<&[u8]> = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, &c) in code.iter().enumerate() {
        if c == b'(' {
            depth += 1;
        } else {
            depth -= 1;
            if depth == 0 {
                parts.push(&code[start..=i]);
                start = i + 1;
            }
        }
    }
    parts.sort();
    parts.concat()
}

/// Slow reference counter: every subset of the host via a bit-mask sweep, the
/// induced structure rebuilt as trees, and non-plane orbits found by applying the
/// full automorphism group of the host. Shares no matching code with the fast path.
pub mod reference {
    use std::collections::BTreeSet;

    use super::{induced_substructure, EmbedCount, Mode};
    use crate::tree::{canonical_nonplane, FlatTree, PlaneForest, PlaneTree};

    /// Exhaustive count of `pattern` (a tree or forest) in `host`. Hosts up to 24 nodes.
    pub fn count(pattern: &PlaneForest, host: &PlaneTree, mode: Mode) -> EmbedCount {
        let flat = host.flatten();
        let n = flat.len();
        assert!(n <= 24, "reference sweep limited to 24 nodes");
        let m = pattern.size();
        let want = normalize(pattern.components(), mode);
        let autos = match mode {
            Mode::Plane => vec![(0..n).collect::<Vec<_>>()],
            Mode::Nonplane => automorphisms(&flat),
        };
        let mut seen: BTreeSet<u32> = BTreeSet::new();
        let (mut all, mut good) = (0u64, 0u64);
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize != m {
                continue;
            }
            let ids: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let induced = induced_substructure(host, &ids).expect("valid subset");
            if normalize(induced.components(), mode) != want {
                continue;
            }
            let rep = autos
                .iter()
                .map(|a| ids.iter().fold(0u32, |acc, &v| acc | 1 << a[v]))
                .min()
                .unwrap();
            if seen.insert(rep) {
                all += 1;
                if mask & 1 == 1 {
                    good += 1;
                }
            }
        }
        EmbedCount::new(all, good)
    }

    fn normalize(components: &[PlaneTree], mode: Mode) -> Vec<PlaneTree> {
        match mode {
            Mode::Plane => {
                let mut v = components.to_vec();
                v.sort();
                v
            }
            Mode::Nonplane => {
                let mut v: Vec<PlaneTree> = components.iter().map(canonical_nonplane).collect();
                v.sort();
                v
            }
        }
    }

    /// All automorphisms of the unordered tree as permutations of pre-order ids.
    pub fn automorphisms(flat: &FlatTree) -> Vec<Vec<usize>> {
        let n = flat.len();
        isomorphisms(flat, 0, 0)
            .into_iter()
            .map(|pairs| {
                let mut perm = vec![0; n];
                for (a, b) in pairs {
                    perm[a] = b;
                }
                perm
            })
            .collect()
    }

    /// Every isomorphism between the subtrees at `a` and `b`, as node pairings.
    fn isomorphisms(flat: &FlatTree, a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
        let ka = &flat.children[a];
        let kb = &flat.children[b];
        if ka.len() != kb.len() {
            return Vec::new();
        }
        let shape = |v: usize| canonical_nonplane(&flat.subtree(v));
        let sb: Vec<PlaneTree> = kb.iter().map(|&c| shape(c)).collect();
        let mut out = Vec::new();
        // Try every bijection between child lists; trees here are small.
        for perm in permutations(kb.len()) {
            if !ka.iter().zip(&perm).all(|(&ca, &j)| shape(ca) == sb[j]) {
                continue;
            }
            let mut partial: Vec<Vec<(usize, usize)>> = vec![vec![(a, b)]];
            for (&ca, &j) in ka.iter().zip(&perm) {
                let sub = isomorphisms(flat, ca, kb[j]);
                let mut next = Vec::new();
                for p in &partial {
                    for s in &sub {
                        let mut q = p.clone();
                        q.extend_from_slice(s);
                        next.push(q);
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        out
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
}
