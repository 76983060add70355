//! Truncated power series with exact integer coefficients and the embedding
//! generating functions built from them.
//!
//! Every generating function handled here has integer coefficients, including the
//! non-plane ones whose recursions halve a sum. Halving goes through
//! [`Series::exact_div`], which fails loudly on a remainder instead of rounding.

mod gf;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use gf::{
    series_a, series_a_nonplane_motzkin, series_a_plane_binary, series_a_planted_plane, series_b,
    series_forest_nonplane, series_forest_plane_binary, series_g, series_g_nonplane_motzkin,
    series_g_plane_binary, series_g_planted_plane, series_t, series_v, GfEngine, Kind,
};

/// Power series known through `z^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, BigInt::one(), order)
    }

    /// `c z^k`, or zero when `k > order`.
    pub fn monomial(k: usize, c: impl Into<BigInt>, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c.into();
        }
        s
    }

    /// The series `z` itself.
    pub fn z(order: usize) -> Self {
        Self::monomial(1, 1, order)
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[z^n]`; zero past the truncation order is *not* assumed, so this panics there.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &BigInt) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides every coefficient by `d`, failing if any division is inexact.
    pub fn exact_div(&self, d: &BigInt) -> Result<Series> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (n, c) in self.coeffs.iter().enumerate() {
            let (q, r) = (c / d, c % d);
            if !r.is_zero() {
                return Err(Error::Numeric(format!("[z^{n}] = {c} is not divisible by {d}")));
            }
            out.push(q);
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplication by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Series {
        let order = self.order();
        let mut out = Self::zero(order);
        for n in k..=order {
            out.coeffs[n] = self.coeffs[n - k].clone();
        }
        out
    }

    /// `z f'(z)`, same order.
    pub fn z_derivative(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c * BigInt::from(n)).collect(),
        }
    }

    /// `f'(z)`, known through `z^{order - 1}`.
    pub fn derivative(&self) -> Series {
        let order = self.order();
        if order == 0 {
            return Self::zero(0);
        }
        Series {
            coeffs: (1..=order).map(|n| &self.coeffs[n] * BigInt::from(n)).collect(),
        }
    }

    /// `f(z^2)`, same order.
    pub fn substitute_square(&self) -> Series {
        let order = self.order();
        let mut out = Self::zero(order);
        for n in 0..=order / 2 {
            out.coeffs[2 * n] = self.coeffs[n].clone();
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let a = &self.coeffs[..=order];
        let b = &other.coeffs[..=order];
        let nonzero = |c: &[BigInt]| c.iter().filter(|x| !x.is_zero()).count();
        if nonzero(a).min(nonzero(b)) <= KRONECKER_THRESHOLD {
            Series { coeffs: mul_schoolbook(a, b, order) }
        } else {
            Series { coeffs: mul_kronecker(a, b, order) }
        }
    }

    pub fn square(&self) -> Series {
        self.mul(self)
    }

    pub fn pow(&self, mut k: u32) -> Series {
        let mut base = self.clone();
        let mut acc = Series::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `1 / f` for a series whose constant term is `1` or `-1`, by Newton iteration
    /// `r <- r (2 - f r)`, doubling the number of correct terms each round.
    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = self.unit_constant()?;
        let order = self.order();
        let mut r = Series::from_coeffs(vec![c0], 0);
        let mut known = 0;
        while known < order {
            known = (2 * known + 1).min(order);
            let f = self.truncate(known);
            let r_ext = Series::from_coeffs(r.coeffs, known);
            let fr = f.mul(&r_ext);
            let two_minus = &Series::monomial(0, 2, known) - &fr;
            r = r_ext.mul(&two_minus);
        }
        Ok(r)
    }

    /// `1 / f` by the term-by-term recurrence `r_n = -(1/f_0) sum_{k>=1} f_k r_{n-k}`.
    pub fn reciprocal_recurrence(&self) -> Result<Series> {
        let c0 = self.unit_constant()?;
        let neg = c0.is_negative();
        let order = self.order();
        let f = sparse(&self.coeffs);
        let mut r: Vec<BigInt> = Vec::with_capacity(order + 1);
        r.push(c0);
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for &(k, fk) in f.iter().skip_while(|(k, _)| *k == 0) {
                if k > n {
                    break;
                }
                if !r[n - k].is_zero() {
                    acc += fk * &r[n - k];
                }
            }
            r.push(if neg { acc } else { -acc });
        }
        Ok(Series { coeffs: r })
    }

    fn unit_constant(&self) -> Result<BigInt> {
        let c0 = &self.coeffs[0];
        if c0.is_one() || (-c0).is_one() {
            Ok(c0.clone())
        } else {
            Err(Error::Numeric(format!("reciprocal needs a unit constant term, found {c0}")))
        }
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Series {
        &Series::one(self.order()) - self
    }
}

/// Below this many nonzero terms in the sparser factor, schoolbook wins.
const KRONECKER_THRESHOLD: usize = 24;

fn mul_schoolbook(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let a = sparse(a);
    let b = sparse(b);
    let mut out = vec![BigInt::zero(); order + 1];
    for &(i, x) in &a {
        for &(j, y) in &b {
            if i + j > order {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// Packs both coefficient vectors into single integers at a slot width wide enough
/// for any product coefficient, multiplies once and reads the slots back.
fn mul_kronecker(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let bits = |c: &[BigInt]| c.iter().map(|x| x.bits()).max().unwrap_or(0);
    let terms = (order + 1) as u64;
    let need = bits(a) + bits(b) + (64 - terms.leading_zeros()) as u64 + 2;
    let words = need.div_ceil(64) as usize;
    let width = 64 * words as u64;
    let product = pack(a, words) * pack(b, words);
    // Offset every slot by 2^(width-1) so signed slots read back without borrows.
    let mut half = vec![0u64; (2 * order + 1) * words];
    for slot in 0..=2 * order {
        half[slot * words + words - 1] = 1 << 63;
    }
    let biased = product + Integer::from(Natural::from_owned_limbs_asc(half));
    let limbs = Natural::try_from(biased).expect("bias exceeds every slot").into_limbs_asc();
    let bias = BigInt::one() << (width - 1);
    (0..=order)
        .map(|slot| {
            let lo = (slot * words).min(limbs.len());
            let hi = (lo + words).min(limbs.len());
            BigInt::from(biguint_from_limbs(&limbs[lo..hi])) - &bias
        })
        .collect()
}

fn pack(c: &[BigInt], words: usize) -> Integer {
    let mut pos = vec![0u64; c.len() * words];
    let mut neg = vec![0u64; c.len() * words];
    for (i, x) in c.iter().enumerate() {
        let (sign, digits) = x.to_u64_digits();
        let dst = if sign == Sign::Minus { &mut neg } else { &mut pos };
        dst[i * words..i * words + digits.len()].copy_from_slice(&digits);
    }
    Integer::from(Natural::from_owned_limbs_asc(pos)) - Integer::from(Natural::from_owned_limbs_asc(neg))
}

fn biguint_from_limbs(limbs: &[u64]) -> BigUint {
    let digits: Vec<u32> = limbs.iter().flat_map(|&l| [l as u32, (l >> 32) as u32]).collect();
    BigUint::new(digits)
}

fn sparse(c: &[BigInt]) -> Vec<(usize, &BigInt)> {
    c.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.coeffs.len().min(12);
        write!(f, "Series[order {}](", self.order())?;
        for (i, c) in self.coeffs[..shown].iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        if shown < self.coeffs.len() {
            f.write_str(", ...")?;
        }
        f.write_str(")")
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64], order: usize) -> Series {
        Series::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect(), order)
    }

    #[test]
    fn arithmetic() {
        let a = s(&[1, 1], 5);
        assert_eq!(a.pow(3), s(&[1, 3, 3, 1], 5));
        assert_eq!(a.pow(0), Series::one(5));
        let geo = s(&[1, -1], 5).reciprocal().unwrap();
        assert_eq!(geo, s(&[1, 1, 1, 1, 1, 1], 5));
        assert_eq!(s(&[-1, 1], 3).reciprocal().unwrap(), s(&[-1, -1, -1, -1], 3));
        assert!(s(&[2, 1], 3).reciprocal().is_err());
        assert!(s(&[2, 1], 3).reciprocal_recurrence().is_err());
        assert_eq!(s(&[0, 1, 2], 4).substitute_square(), s(&[0, 0, 1, 0, 2], 4));
        assert_eq!(s(&[5, 1, 2], 4).z_derivative(), s(&[0, 1, 4], 4));
        assert_eq!(s(&[5, 1, 2], 4).derivative(), s(&[1, 4], 3));
        assert_eq!(s(&[1, 2], 3).shift(2), s(&[0, 0, 1, 2], 3));
        assert_eq!(s(&[2, 4], 2).exact_div(&BigInt::from(2)).unwrap(), s(&[1, 2], 2));
        assert!(s(&[2, 3], 2).exact_div(&BigInt::from(2)).is_err());
    }

    fn pseudo_random(order: usize, seed: u64, signed: bool) -> Series {
        let mut x = seed;
        let coeffs = (0..=order)
            .map(|i| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let mag = BigInt::from(x >> 20) << (i % 97);
                if signed && x % 3 == 0 { -mag } else if x % 5 == 0 { BigInt::zero() } else { mag }
            })
            .collect();
        Series::from_coeffs(coeffs, order)
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        for (order, signed) in [(40, false), (40, true), (257, true), (300, false)] {
            let a = pseudo_random(order, 7, signed);
            let b = pseudo_random(order, 11, !signed);
            let fast = mul_kronecker(a.coeffs(), b.coeffs(), order);
            let slow = mul_schoolbook(a.coeffs(), b.coeffs(), order);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn newton_reciprocal_matches_recurrence() {
        for order in [0, 1, 2, 7, 64, 301] {
            let mut f = pseudo_random(order, 3, true);
            f.coeffs[0] = BigInt::one();
            assert_eq!(f.reciprocal().unwrap(), f.reciprocal_recurrence().unwrap());
            f.coeffs[0] = -BigInt::one();
            let r = f.reciprocal().unwrap();
            assert_eq!(r, f.reciprocal_recurrence().unwrap());
            assert_eq!(&f * &r, Series::one(order));
        }
    }

    #[test]
    fn mixed_orders_truncate_to_the_smaller() {
        let a = s(&[1, 1, 1], 2);
        let b = s(&[1, 1, 1, 1, 1], 4);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }
}
