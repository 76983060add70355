//! Leading-order asymptotics of embedding counts.
//!
//! Every estimate has the shape `K * beta^n * n^alpha`. Counts grow far beyond `f64`
//! at the sizes of interest, so estimates are compared with exact counts in log space.

mod constants;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use statrs::function::gamma::{gamma, ln_gamma};
use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};

pub use constants::{
    nonplane_constants, solve_nonplane_constants, ConstantDecimals, NonplaneConstants, DEFAULT_PRECISION,
    MAX_PRECISION,
};

use crate::error::{Error, Result};
use crate::family::FamilyId;
use crate::oracle::{is_subposet, Mode};
use crate::series::Kind;
use crate::tree::{
    binary_expansion_constant, clip_forest_nonplane, motzkin_expansions, DegreeSequence, PlaneForest, PlaneTree,
};

/// Which sizes an estimate applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// Binary families: even sizes are empty.
    OddOnly,
    AllN,
}

/// `K * beta^n * n^alpha`, zero at inadmissible `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymEstimate {
    #[serde(rename = "K")]
    pub k_const: f64,
    pub beta: f64,
    pub alpha: f64,
    pub parity: Parity,
}

impl AsymEstimate {
    pub fn admits(&self, n: usize) -> bool {
        n >= 1 && (self.parity == Parity::AllN || n % 2 == 1)
    }

    /// Natural log of the estimate; `-inf` where it is zero.
    pub fn ln_value(&self, n: usize) -> f64 {
        if !self.admits(n) {
            return f64::NEG_INFINITY;
        }
        let n = n as f64;
        self.k_const.ln() + n * self.beta.ln() + self.alpha * n.ln()
    }

    /// May overflow to infinity for large `n`; use [`AsymEstimate::ratio_to`] for comparisons.
    pub fn value(&self, n: usize) -> f64 {
        self.ln_value(n).exp()
    }

    /// `exact / estimate(n)`. `None` at inadmissible `n`.
    pub fn ratio_to(&self, exact: &BigInt, n: usize) -> Option<f64> {
        if !self.admits(n) {
            return None;
        }
        Some((ln_bigint(exact) - self.ln_value(n)).exp())
    }

    fn scaled(self, factor: f64) -> Self {
        AsymEstimate { k_const: self.k_const * factor, ..self }
    }
}

/// Natural log of a positive big integer (`-inf` for zero).
pub fn ln_bigint(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let x = x.abs();
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (&x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Limit of `sqrt(n) g_n / a_n`, or the `1/n` regime of the single node.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum RatioLimit {
    /// `g_n / a_n = 1/n` (single-node pattern, `k = 0`).
    InverseN,
    /// `sqrt(n) g_n / a_n -> coefficient`.
    Coefficient { coefficient: f64 },
}

impl RatioLimit {
    pub fn coefficient(&self) -> Option<f64> {
        match self {
            RatioLimit::InverseN => None,
            RatioLimit::Coefficient { coefficient } => Some(*coefficient),
        }
    }

    /// Order by asymptotic size of `g/a`: the `1/n` regime sits below every coefficient.
    pub fn le(&self, other: &RatioLimit, tol: f64) -> bool {
        match (self, other) {
            (RatioLimit::InverseN, _) => true,
            (RatioLimit::Coefficient { .. }, RatioLimit::InverseN) => false,
            (RatioLimit::Coefficient { coefficient: a }, RatioLimit::Coefficient { coefficient: b }) => {
                *a <= *b + tol * b.abs().max(1.0)
            }
        }
    }
}

/// `Gamma(k + 1/2) / Gamma(k)`, increasing in `k`.
pub fn gamma_ratio_half(k: f64) -> f64 {
    (ln_gamma(k + 0.5) - ln_gamma(k)).exp()
}

fn is_single(d: &DegreeSequence) -> bool {
    d.m == 1
}

fn c_plane(d: &DegreeSequence, fam: FamilyId) -> f64 {
    binary_expansion_constant(d, fam).to_f64().unwrap_or(f64::INFINITY)
}

fn c_nonplane(s: &PlaneTree) -> f64 {
    motzkin_expansions(s).c_s.to_f64().unwrap_or(f64::NAN)
}

/// Leading-order estimate for `a_n(s)` or `g_n(s)`.
pub fn asym_count(s: &PlaneTree, fam: FamilyId, kind: Kind) -> Result<AsymEstimate> {
    let d = s.degree_sequence();
    let (m, l) = (d.m as f64, d.l as f64);
    let ml = m + l;
    let single = is_single(&d);
    let est = match (fam, kind) {
        (FamilyId::PlaneBinary, Kind::All) => AsymEstimate {
            k_const: c_plane(&d, fam) * 2f64.powf((5.0 - m - 3.0 * l) / 2.0) / gamma((ml - 1.0) / 2.0),
            beta: 2.0,
            alpha: (ml - 3.0) / 2.0,
            parity: Parity::OddOnly,
        },
        (FamilyId::PlaneBinary, Kind::Good) if single => AsymEstimate {
            k_const: SQRT_2 / PI.sqrt(),
            beta: 2.0,
            alpha: -1.5,
            parity: Parity::OddOnly,
        },
        (FamilyId::PlaneBinary, Kind::Good) => AsymEstimate {
            k_const: c_plane(&d, fam) * 2f64.powf((6.0 - m - 3.0 * l) / 2.0) / gamma((ml - 2.0) / 2.0),
            beta: 2.0,
            alpha: (ml - 4.0) / 2.0,
            parity: Parity::OddOnly,
        },
        (FamilyId::NonplaneBinary, kind) => {
            let c = nonplane_constants();
            let (rho, b) = (c.rho, c.b);
            match kind {
                Kind::All => AsymEstimate {
                    k_const: 2.0 * c_nonplane(s) * b.powf(1.0 - ml) * rho.powf(-ml) / gamma((ml - 1.0) / 2.0),
                    beta: 1.0 / rho,
                    alpha: (ml - 3.0) / 2.0,
                    parity: Parity::OddOnly,
                },
                Kind::Good if single => AsymEstimate {
                    k_const: b / PI.sqrt(),
                    beta: 1.0 / rho,
                    alpha: -1.5,
                    parity: Parity::OddOnly,
                },
                Kind::Good => AsymEstimate {
                    k_const: 2.0 * c_nonplane(s) * b.powf(2.0 - ml) * rho.powf(1.0 - ml) / gamma((ml - 2.0) / 2.0),
                    beta: 1.0 / rho,
                    alpha: (ml - 4.0) / 2.0,
                    parity: Parity::OddOnly,
                },
            }
        }
        (FamilyId::PlantedPlane, Kind::All) => AsymEstimate {
            k_const: c_plane(&d, fam) * 0.5f64.powf(ml) / gamma((ml - 1.0) / 2.0),
            beta: 4.0,
            alpha: (ml - 3.0) / 2.0,
            parity: Parity::AllN,
        },
        // Catalan(n - 1) ~ 4^n / (4 sqrt(pi) n^{3/2})
        (FamilyId::PlantedPlane, Kind::Good) if single => AsymEstimate {
            k_const: 1.0 / (4.0 * PI.sqrt()),
            beta: 4.0,
            alpha: -1.5,
            parity: Parity::AllN,
        },
        (FamilyId::PlantedPlane, Kind::Good) => AsymEstimate {
            k_const: 2.0 * c_plane(&d, fam) * 0.5f64.powf(ml) / gamma((ml - 2.0) / 2.0),
            beta: 4.0,
            alpha: (ml - 4.0) / 2.0,
            parity: Parity::AllN,
        },
    };
    Ok(est)
}

/// Estimate for `a_n` of a disconnected pattern.
///
/// Plane binary: `r! / (k_1! ... k_l!)` times the good estimate of one ordering
/// (all orderings share a degree sequence). Non-plane: the good estimate of the
/// clipped tree.
pub fn asym_count_forest(f: &PlaneForest, fam: FamilyId, kind: Kind) -> Result<AsymEstimate> {
    if kind == Kind::Good {
        return Err(Error::domain("a disconnected pattern has no good embeddings"));
    }
    if f.len() < 2 {
        return Err(Error::domain("a forest pattern needs at least two components"));
    }
    match fam {
        FamilyId::PlaneBinary => {
            let joined = PlaneTree::node(f.components().to_vec());
            Ok(asym_count(&joined, fam, Kind::Good)?.scaled(distinct_orderings(f)))
        }
        FamilyId::NonplaneBinary => asym_count(&clip_forest_nonplane(f)?, fam, Kind::Good),
        FamilyId::PlantedPlane => Err(Error::UnsupportedFamily(
            "forest patterns are not defined for planted plane trees".into(),
        )),
    }
}

/// `r! / prod k_i!` over classes of equal components.
fn distinct_orderings(f: &PlaneForest) -> f64 {
    let mut classes: BTreeMap<&PlaneTree, u32> = BTreeMap::new();
    for c in f.components() {
        *classes.entry(c).or_default() += 1;
    }
    let ln = ln_gamma(f.len() as f64 + 1.0) - classes.values().map(|&k| ln_gamma(k as f64 + 1.0)).sum::<f64>();
    ln.exp().round()
}

/// `lim sqrt(n) g_n / a_n`.
pub fn ratio_coefficient(s: &PlaneTree, fam: FamilyId) -> RatioLimit {
    let d = s.degree_sequence();
    if is_single(&d) {
        return RatioLimit::InverseN;
    }
    let k = (d.m_plus_l() as f64 - 2.0) / 2.0;
    let f = gamma_ratio_half(k);
    let coefficient = match fam {
        FamilyId::PlaneBinary => f * SQRT_2,
        FamilyId::NonplaneBinary => {
            let c = nonplane_constants();
            f * c.b * c.rho
        }
        FamilyId::PlantedPlane => 2.0 * f,
    };
    RatioLimit::Coefficient { coefficient }
}

/// `x^{1-s} < Gamma(x+1)/Gamma(x+s) < (x+1)^{1-s}`, with relative slack `1e-10`.
pub fn gautschi_check(x: f64, s: f64) -> Result<bool> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("x must be a positive real, got {x}")));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain(format!("s must lie in (0, 1), got {s}")));
    }
    const TOL: f64 = 1e-10;
    let ratio = (ln_gamma(x + 1.0) - ln_gamma(x + s)).exp();
    let lower = x.powf(1.0 - s);
    let upper = (x + 1.0).powf(1.0 - s);
    Ok(lower * (1.0 - TOL) < ratio && ratio < upper * (1.0 + TOL))
}

/// Outcome of comparing two patterns' asymptotic good/all ratios.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub subposet: bool,
    pub k1: f64,
    pub k2: f64,
    pub limit1: RatioLimit,
    pub limit2: RatioLimit,
    /// `limit1 <= limit2`; `None` when `s1` is not contained in `s2`.
    pub ordered: Option<bool>,
}

impl Comparison {
    pub fn verdict(&self) -> &'static str {
        match self.ordered {
            None => "incomparable",
            Some(true) => "ordered",
            Some(false) => "violated",
        }
    }
}

pub fn compare_patterns(s1: &PlaneTree, s2: &PlaneTree, fam: FamilyId) -> Comparison {
    let subposet = is_subposet(s1, s2, Mode::for_family(fam));
    let k = |s: &PlaneTree| (s.degree_sequence().m_plus_l() as f64 - 2.0) / 2.0;
    let limit1 = ratio_coefficient(s1, fam);
    let limit2 = ratio_coefficient(s2, fam);
    Comparison {
        subposet,
        k1: k(s1),
        k2: k(s2),
        limit1,
        limit2,
        ordered: subposet.then(|| limit1.le(&limit2, 1e-12)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PlaneTree {
        s.parse().unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn cherry_plane_binary_all() {
        let e = asym_count(&PlaneTree::cherry(), FamilyId::PlaneBinary, Kind::All).unwrap();
        assert!(close(e.k_const, 0.25, 1e-12));
        assert_eq!((e.beta, e.alpha, e.parity), (2.0, 1.0, Parity::OddOnly));
        assert_eq!(e.value(4), 0.0);
    }

    #[test]
    fn single_node_good() {
        let e = asym_count(&PlaneTree::leaf(), FamilyId::PlaneBinary, Kind::Good).unwrap();
        assert!(close(e.k_const, (2.0 / PI).sqrt(), 1e-12));
        assert_eq!(e.alpha, -1.5);
    }

    #[test]
    fn cherry_nonplane_all() {
        let c = nonplane_constants();
        let e = asym_count(&PlaneTree::cherry(), FamilyId::NonplaneBinary, Kind::All).unwrap();
        let expected = 2.0 * 0.5 * c.b.powi(-4) * c.rho.powi(-5);
        assert!(close(e.k_const, expected, 1e-12));
        assert!(close(e.beta, 1.0 / c.rho, 1e-12));
    }

    #[test]
    fn ratio_examples() {
        let cherry = PlaneTree::cherry();
        let pb = ratio_coefficient(&cherry, FamilyId::PlaneBinary).coefficient().unwrap();
        assert!(close(pb, 2.0 * SQRT_2 / PI.sqrt(), 1e-12));
        assert!((pb - 1.5958).abs() < 1e-4);
        let pp = ratio_coefficient(&cherry, FamilyId::PlantedPlane).coefficient().unwrap();
        assert!((pp - 4.0 / PI.sqrt()).abs() < 1e-12);
        for fam in FamilyId::ALL {
            assert_eq!(ratio_coefficient(&PlaneTree::leaf(), fam), RatioLimit::InverseN);
        }
    }

    #[test]
    fn gautschi_examples() {
        assert!(gautschi_check(1.0, 0.5).unwrap());
        assert!(gautschi_check(10.0, 0.5).unwrap());
        assert!(gautschi_check(0.5, 0.5).unwrap());
        assert!(gautschi_check(0.0, 0.5).is_err());
        assert!(gautschi_check(1.0, 1.0).is_err());
    }

    #[test]
    fn compare_examples() {
        let c = compare_patterns(&PlaneTree::leaf(), &PlaneTree::cherry(), FamilyId::PlaneBinary);
        assert_eq!((c.k1, c.k2, c.ordered), (0.0, 1.5, Some(true)));
        let full = t("((()())(()()))");
        let c = compare_patterns(&PlaneTree::cherry(), &full, FamilyId::PlaneBinary);
        assert_eq!(c.k2, 4.5);
        assert_eq!(c.ordered, Some(true));
        let c = compare_patterns(&full, &full, FamilyId::NonplaneBinary);
        assert_eq!(c.limit1, c.limit2);
        let c = compare_patterns(&full, &PlaneTree::cherry(), FamilyId::PlaneBinary);
        assert_eq!(c.ordered, None);
    }

    #[test]
    fn forest_prefactor() {
        let f: PlaneForest = "();()".parse().unwrap();
        assert_eq!(distinct_orderings(&f), 1.0);
        let f: PlaneForest = "();(());()".parse().unwrap();
        assert_eq!(distinct_orderings(&f), 3.0);
        assert!(asym_count_forest(&f, FamilyId::PlaneBinary, Kind::Good).is_err());
        assert!(asym_count_forest(&f, FamilyId::PlantedPlane, Kind::All).is_err());
    }

    #[test]
    fn ln_of_large_integers() {
        let x = BigInt::from(3u32).pow(2000);
        assert!(close(ln_bigint(&x), 2000.0 * 3f64.ln(), 1e-12));
        assert!(close(ln_bigint(&BigInt::from(10)), 10f64.ln(), 1e-15));
    }
}
