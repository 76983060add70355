use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Series;
use crate::error::{Error, Result};
use crate::family::FamilyId;
use crate::tree::{
    binary_expansion_constant, canonical_nonplane, canonical_text, clip_forest_nonplane,
    forest_orderings, format_tree, PlaneForest, PlaneTree,
};

/// Which embeddings a series counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    All,
    Good,
}

/// `B = z + z B^2`; `[z^{2k+1}] B = Catalan(k)`, built from the ratio
/// `C_{k+1} = C_k 2(2k+1)/(k+2)`.
pub fn series_b(order: usize) -> Series {
    let mut b = vec![BigInt::zero(); order + 1];
    let mut c = BigInt::one();
    for k in 0.. {
        let n = 2 * k + 1;
        if n > order {
            break;
        }
        b[n] = c.clone();
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    Series::from_coeffs(b, order)
}

/// `V = z + z/2 (V^2 + V(z^2))`, solved one order at a time.
pub fn series_v(order: usize) -> Series {
    let mut v = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        if n == 1 {
            v[1] = BigInt::one();
            continue;
        }
        let rest = n - 1;
        let mut c = BigInt::zero();
        for i in 1..rest {
            let j = rest - i;
            if !v[i].is_zero() && !v[j].is_zero() {
                c += &v[i] * &v[j];
            }
        }
        if rest % 2 == 0 {
            c += &v[rest / 2];
        }
        debug_assert!((&c % 2u32).is_zero());
        v[n] = c / 2u32;
    }
    Series::from_coeffs(v, order)
}

/// `T = (1 - sqrt(1 - 4z)) / 2`; `[z^n] T = Catalan(n - 1)`.
pub fn series_t(order: usize) -> Series {
    let mut t = vec![BigInt::zero(); order + 1];
    let mut c = BigInt::one();
    for n in 1..=order {
        t[n] = c.clone();
        let k = n - 1;
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    Series::from_coeffs(t, order)
}

/// Factors of the planted-plane recursions, all functions of `T`.
struct PlantedUnits {
    /// `1 / (1 - 2T)`
    inv_1m2t: Series,
    /// `1 / (1 - T)`
    inv_1mt: Series,
    /// `(1 - 2T) / (1 - T)`: turns all embeddings into good ones.
    good: Series,
    /// `T / (1 - 2T)`: the one-subtree case.
    single: Series,
    /// `T (1 - T)^2 / (1 - 2T)^2`: prefactor of the block sum.
    blocks: Series,
}

/// Shared building blocks at a fixed truncation order. Each piece is computed on
/// first use and sub-pattern series are memoized, so one engine can serve many
/// patterns cheaply.
pub struct GfEngine {
    order: usize,
    b: OnceLock<Series>,
    v: OnceLock<Series>,
    t: OnceLock<Series>,
    /// `1 / (1 - 2 z B)`
    path_b: OnceLock<Series>,
    /// `1 - 2 z B`
    unpath_b: OnceLock<Series>,
    /// `1 / (1 - z V)`
    path_v: OnceLock<Series>,
    planted: OnceLock<PlantedUnits>,
    memo: Mutex<HashMap<(Route, String), Series>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Route {
    PlaneBinary,
    Nonplane,
    Planted,
    Splitting,
}

impl GfEngine {
    pub fn new(order: usize) -> Self {
        GfEngine {
            order,
            b: OnceLock::new(),
            v: OnceLock::new(),
            t: OnceLock::new(),
            path_b: OnceLock::new(),
            unpath_b: OnceLock::new(),
            path_v: OnceLock::new(),
            planted: OnceLock::new(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn b(&self) -> &Series {
        self.b.get_or_init(|| series_b(self.order))
    }

    pub fn v(&self) -> &Series {
        self.v.get_or_init(|| series_v(self.order))
    }

    pub fn t(&self) -> &Series {
        self.t.get_or_init(|| series_t(self.order))
    }

    fn unpath_b(&self) -> &Series {
        self.unpath_b
            .get_or_init(|| self.b().shift(1).scale(&BigInt::from(2)).one_minus())
    }

    fn path_b(&self) -> &Series {
        self.path_b.get_or_init(|| unit_inverse(self.unpath_b()))
    }

    fn path_v(&self) -> &Series {
        self.path_v.get_or_init(|| unit_inverse(&self.v().shift(1).one_minus()))
    }

    fn planted_units(&self) -> &PlantedUnits {
        self.planted.get_or_init(|| {
            let t = self.t();
            let one_m2t = t.scale(&BigInt::from(2)).one_minus();
            let one_mt = t.one_minus();
            let inv_1m2t = unit_inverse(&one_m2t);
            let inv_1mt = unit_inverse(&one_mt);
            let good = &one_m2t * &inv_1mt;
            let single = t * &inv_1m2t;
            let blocks = &(&single * &inv_1m2t) * &one_mt.square();
            PlantedUnits { inv_1m2t, inv_1mt, good, single, blocks }
        })
    }

    fn cached(&self, route: Route, key: &str) -> Option<Series> {
        self.memo.lock().unwrap().get(&(route, key.to_string())).cloned()
    }

    fn store(&self, route: Route, key: String, value: &Series) {
        self.memo.lock().unwrap().insert((route, key), value.clone());
    }

    /// Generating function of `kind` embeddings of `s` into `fam`.
    pub fn series(&self, s: &PlaneTree, fam: FamilyId, kind: Kind) -> Result<Series> {
        let a = match fam {
            FamilyId::PlaneBinary => self.plane_binary_a(s),
            FamilyId::NonplaneBinary => self.nonplane_a(s)?,
            FamilyId::PlantedPlane => self.planted_a(s),
        };
        Ok(match kind {
            Kind::All => a,
            Kind::Good => self.good_from_all(&a, fam),
        })
    }

    /// All embeddings of a disconnected pattern (`r >= 2`).
    pub fn forest_series(&self, f: &PlaneForest, fam: FamilyId) -> Result<Series> {
        match fam {
            FamilyId::PlaneBinary => {
                let mut acc = Series::zero(self.order);
                for clipped in forest_orderings(f)? {
                    acc = &acc + &self.series(&clipped, fam, Kind::Good)?;
                }
                Ok(acc)
            }
            FamilyId::NonplaneBinary => {
                let clipped = clip_forest_nonplane(f)?;
                self.series(&clipped, fam, Kind::Good)
            }
            FamilyId::PlantedPlane => Err(Error::UnsupportedFamily(
                "forest patterns are only defined for the binary families".into(),
            )),
        }
    }

    /// Multiplies by the inverse of the path factor in front of the embedded root.
    pub fn good_from_all(&self, a: &Series, fam: FamilyId) -> Series {
        match fam {
            FamilyId::PlaneBinary => a * self.unpath_b(),
            FamilyId::NonplaneBinary => a * &self.v().shift(1).one_minus(),
            FamilyId::PlantedPlane => a * &self.planted_units().good,
        }
    }

    /// `C 2^u (1/(1-2zB))^{m+l-1} z^{l+u-1} B^{l+u}`.
    fn plane_binary_a(&self, s: &PlaneTree) -> Series {
        let d = s.degree_sequence();
        let key = format!("{:?}", d.d);
        if let Some(hit) = self.cached(Route::PlaneBinary, &key) {
            return hit;
        }
        let c = binary_expansion_constant(&d, FamilyId::PlaneBinary) << d.u;
        let body = self
            .path_b()
            .pow((d.m + d.l - 1) as u32)
            .mul(&self.b().pow((d.l + d.u) as u32))
            .shift(d.l + d.u - 1);
        let out = body.scale(&BigInt::from(c));
        self.store(Route::PlaneBinary, key, &out);
        out
    }

    fn nonplane_a(&self, s: &PlaneTree) -> Result<Series> {
        if !s.is_motzkin() {
            return Err(Error::UnsupportedExact(format!(
                "{s} has a node of out-degree {} > 2; the non-plane series covers unary-binary \
                 patterns only (use the oracle or the asymptotic estimate)",
                s.max_out_degree()
            )));
        }
        self.nonplane_rec(&canonical_nonplane(s))
    }

    fn nonplane_rec(&self, s: &PlaneTree) -> Result<Series> {
        let key = canonical_text(s);
        if let Some(hit) = self.cached(Route::Nonplane, &key) {
            return Ok(hit);
        }
        let path = self.path_v();
        let out = match s.children() {
            [] => self.v() * path,
            [only] => {
                let inner = self.nonplane_rec(only)?;
                &(&self.v().shift(1) * path) * &inner
            }
            [left, right] => {
                let a_l = self.nonplane_rec(left)?;
                let pair = if canonical_text(left) == canonical_text(right) {
                    (&a_l.square() + &a_l.substitute_square()).exact_div(&BigInt::from(2))?
                } else {
                    &a_l * &self.nonplane_rec(right)?
                };
                (&path.square() * &pair).shift(1)
            }
            _ => unreachable!("checked by is_motzkin"),
        };
        self.store(Route::Nonplane, key, &out);
        Ok(out)
    }

    fn planted_a(&self, s: &PlaneTree) -> Series {
        self.planted_rec(s.children())
    }

    /// All-embedding series of a root over `kids`.
    ///
    /// Below the embedded root the subtrees are split into consecutive blocks, one per
    /// child of the root that carries embedded nodes. A block holding a single `S_i`
    /// contributes `A_{S_i}`; a longer block is an ordered forest under a non-embedded
    /// node, which is a good embedding of the clipped tree, `g A_{S_{a,b}}` with
    /// `g = (1-2T)/(1-T)`. Summing over block sequences and solving out the single
    /// block case (the forest sinks into one child) gives, for `k >= 2`,
    /// `A = T/(1-2T)^2 sum_{q >= 2 blocks} (1-T)^{2-q} prod E_block`.
    fn planted_rec(&self, kids: &[PlaneTree]) -> Series {
        let key: String = kids.iter().map(format_tree).collect();
        if let Some(hit) = self.cached(Route::Planted, &key) {
            return hit;
        }
        let units = self.planted_units();
        let k = kids.len();
        let out = match k {
            0 => self.t().z_derivative(),
            1 => &units.single * &self.planted_rec(kids[0].children()),
            _ => {
                let block = |i: usize, j: usize| {
                    if j == i + 1 {
                        self.planted_rec(kids[i].children())
                    } else {
                        &units.good * &self.planted_rec(&kids[i..j])
                    }
                };
                // h[j]: block sequences covering kids[..j], each block weighted by 1/(1-T).
                let mut h: Vec<Series> = vec![Series::one(self.order)];
                for j in 1..k {
                    let mut acc = Series::zero(self.order);
                    for i in 0..j {
                        acc = &acc + &(&h[i] * &block(i, j));
                    }
                    h.push(&acc * &units.inv_1mt);
                }
                let mut several = Series::zero(self.order);
                for i in 1..k {
                    several = &several + &(&h[i] * &block(i, k));
                }
                // The final block's 1/(1-T) is folded into the prefactor.
                &(&units.blocks * &units.inv_1mt) * &several
            }
        };
        self.store(Route::Planted, key, &out);
        out
    }

    /// The splitting-node recursion: below the embedded root a path leads to a
    /// non-embedded node where the subtrees separate. It has the same leading
    /// asymptotics as [`GfEngine::series`] for the planted family, but it never lets the
    /// embedded root itself separate the subtrees, so for `k >= 2` its coefficients
    /// undercount.
    pub fn planted_splitting_node_series(&self, s: &PlaneTree) -> Series {
        self.splitting_rec(s.children())
    }

    fn splitting_rec(&self, kids: &[PlaneTree]) -> Series {
        let key: String = kids.iter().map(format_tree).collect();
        if let Some(hit) = self.cached(Route::Splitting, &key) {
            return hit;
        }
        let t = self.t();
        let PlantedUnits { inv_1m2t, inv_1mt, good, .. } = self.planted_units();
        let child = |c: &PlaneTree| self.splitting_rec(c.children());
        let k = kids.len();
        let out = match k {
            0 => t.z_derivative(),
            1 => &(t * inv_1m2t) * &child(&kids[0]),
            2 => {
                let pre = &(&t.square() * &inv_1m2t.square()) * inv_1mt;
                &pre * &(&child(&kids[0]) * &child(&kids[1]))
            }
            _ => {
                // S_1 alone on the left, the rest embedded with its root at the splitting node.
                let first = &(good * &child(&kids[0])) * &self.splitting_rec(&kids[1..]);
                // S_k alone on the right, counted through its bad embeddings.
                let bad_last = &(&(t * good) * inv_1mt) * &self.splitting_rec(&kids[..k - 1]);
                let last = &bad_last * &child(&kids[k - 1]);
                let mut middle = Series::zero(self.order);
                for i in 2..=k - 2 {
                    let left = self.splitting_rec(&kids[..i]);
                    let right = self.splitting_rec(&kids[i..]);
                    middle = &middle + &(&left * &right);
                }
                let middle = &good.square() * &middle;
                let bracket = &(&first + &last) + &middle;
                &(t * &inv_1m2t.square()) * &bracket
            }
        };
        self.store(Route::Splitting, key, &out);
        out
    }
}

fn unit_inverse(s: &Series) -> Series {
    s.reciprocal().expect("path factors have constant term 1")
}

/// All embeddings of `s` into `fam`, through `z^order`.
pub fn series_a(s: &PlaneTree, fam: FamilyId, order: usize) -> Result<Series> {
    GfEngine::new(order).series(s, fam, Kind::All)
}

/// Good embeddings of `s` into `fam`, through `z^order`.
pub fn series_g(s: &PlaneTree, fam: FamilyId, order: usize) -> Result<Series> {
    GfEngine::new(order).series(s, fam, Kind::Good)
}

pub fn series_a_plane_binary(s: &PlaneTree, order: usize) -> Series {
    GfEngine::new(order).plane_binary_a(s)
}

pub fn series_g_plane_binary(s: &PlaneTree, order: usize) -> Series {
    let e = GfEngine::new(order);
    e.good_from_all(&e.plane_binary_a(s), FamilyId::PlaneBinary)
}

pub fn series_a_nonplane_motzkin(s: &PlaneTree, order: usize) -> Result<Series> {
    series_a(s, FamilyId::NonplaneBinary, order)
}

pub fn series_g_nonplane_motzkin(s: &PlaneTree, order: usize) -> Result<Series> {
    series_g(s, FamilyId::NonplaneBinary, order)
}

pub fn series_a_planted_plane(s: &PlaneTree, order: usize) -> Series {
    GfEngine::new(order).planted_a(s)
}

pub fn series_g_planted_plane(s: &PlaneTree, order: usize) -> Series {
    let e = GfEngine::new(order);
    e.good_from_all(&e.planted_a(s), FamilyId::PlantedPlane)
}

pub fn series_forest_plane_binary(f: &PlaneForest, order: usize) -> Result<Series> {
    GfEngine::new(order).forest_series(f, FamilyId::PlaneBinary)
}

pub fn series_forest_nonplane(f: &PlaneForest, order: usize) -> Result<Series> {
    GfEngine::new(order).forest_series(f, FamilyId::NonplaneBinary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{catalan, wedderburn_etherington_table};

    fn t(s: &str) -> PlaneTree {
        s.parse().unwrap()
    }

    fn ints(s: &Series, range: std::ops::RangeInclusive<usize>) -> Vec<i64> {
        range.map(|n| s.coeff(n).try_into().unwrap()).collect()
    }

    #[test]
    fn base_series() {
        let b = series_b(9);
        assert_eq!(ints(&b, 0..=9), vec![0, 1, 0, 1, 0, 2, 0, 5, 0, 14]);
        let v = series_v(9);
        assert_eq!(ints(&v, 1..=9), vec![1, 0, 1, 0, 1, 0, 2, 0, 3]);
        let tt = series_t(5);
        assert_eq!(ints(&tt, 0..=5), vec![0, 1, 1, 2, 5, 14]);
    }

    #[test]
    fn functional_identities() {
        let n = 60;
        let b = series_b(n);
        let lhs = b.z_derivative();
        let rhs = &b * &b.shift(1).scale(&BigInt::from(2)).one_minus().reciprocal().unwrap();
        assert_eq!(lhs, rhs);

        let tt = series_t(n);
        assert_eq!(&tt * &tt.one_minus(), Series::z(n));
        let inv = tt.scale(&BigInt::from(2)).one_minus().reciprocal().unwrap();
        assert_eq!(tt.z_derivative(), &(&tt * &tt.one_minus()) * &inv);

        let v = series_v(n);
        let w = wedderburn_etherington_table(n);
        for k in 0..=n {
            assert_eq!(v.coeff(k), &BigInt::from(w[k].clone()));
        }
        for k in 0..=n / 2 {
            let odd = 2 * k + 1;
            if odd <= n {
                assert_eq!(b.coeff(odd), &BigInt::from(catalan(k)));
            }
        }
    }

    #[test]
    fn plane_binary_examples() {
        let a = series_a_plane_binary(&PlaneTree::cherry(), 9);
        assert_eq!(a.coeff(5), &BigInt::from(10));
        let g = series_g_plane_binary(&PlaneTree::cherry(), 9);
        assert_eq!(g.coeff(5), &BigInt::from(8));
        let single = series_a_plane_binary(&PlaneTree::leaf(), 21);
        let good = series_g_plane_binary(&PlaneTree::leaf(), 21);
        for n in (1..=21).step_by(2) {
            let c = BigInt::from(catalan((n - 1) / 2));
            assert_eq!(single.coeff(n), &(&c * BigInt::from(n)));
            assert_eq!(good.coeff(n), &c);
        }
    }

    #[test]
    fn nonplane_examples() {
        let a = series_a_nonplane_motzkin(&PlaneTree::leaf(), 9).unwrap();
        assert_eq!(a.coeff(5), &BigInt::from(4));
        let a = series_a_nonplane_motzkin(&PlaneTree::cherry(), 9).unwrap();
        assert_eq!(a.coeff(5), &BigInt::from(4));
        let g = series_g_nonplane_motzkin(&PlaneTree::cherry(), 9).unwrap();
        assert_eq!(g.coeff(5), &BigInt::from(3));
        let g = series_g_nonplane_motzkin(&PlaneTree::leaf(), 9).unwrap();
        assert_eq!(ints(&g, 1..=9), vec![1, 0, 1, 0, 1, 0, 2, 0, 3]);
        assert!(matches!(
            series_a_nonplane_motzkin(&PlaneTree::star(3), 9),
            Err(Error::UnsupportedExact(_))
        ));
    }

    #[test]
    fn planted_examples() {
        let a = series_a_planted_plane(&PlaneTree::leaf(), 6);
        assert_eq!(ints(&a, 1..=4), vec![1, 2, 6, 20]);
        let g = series_g_planted_plane(&PlaneTree::leaf(), 8);
        assert_eq!(ints(&g, 1..=8), vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(series_a_planted_plane(&PlaneTree::cherry(), 6).coeff(3), &BigInt::one());
        assert_eq!(series_g_planted_plane(&PlaneTree::cherry(), 6).coeff(3), &BigInt::one());
    }

    #[test]
    fn degree_sequence_invariance() {
        let n = 40;
        let pairs = [("((())())", "(()(()))"), ("((()())())", "(()(()()))"), ("((()())(()))", "(((()())()))")];
        for (x, y) in pairs {
            for fam in [FamilyId::PlaneBinary, FamilyId::PlantedPlane] {
                assert_eq!(series_a(&t(x), fam, n).unwrap(), series_a(&t(y), fam, n).unwrap(), "{x} {y} {fam}");
            }
        }
    }

    #[test]
    fn forest_examples() {
        let two: PlaneForest = "();()".parse().unwrap();
        assert_eq!(series_forest_plane_binary(&two, 7).unwrap().coeff(5), &BigInt::from(8));
        assert_eq!(series_forest_nonplane(&two, 7).unwrap().coeff(5), &BigInt::from(3));
        let mixed: PlaneForest = "();(()())".parse().unwrap();
        let f = series_forest_plane_binary(&mixed, 15).unwrap();
        let one = series_g_plane_binary(&t("(()(()()))"), 15);
        assert_eq!(f, one.scale(&BigInt::from(2)));
    }
}
