//! Singularity constants of the non-plane binary tree generating function.
//!
//! At the dominant singularity `rho` the system `F(z, V) = 0`, `F_V(z, V) = 0` holds
//! for `F(z, V) = z + z/2 (V^2 + W(z)) - V` with `W(z) = V(z^2)`. Since `F_V = zV - 1`,
//! the system collapses to the single equation `z^2 (2 + W(z)) = 1`, which is solved
//! by Newton's method in fixed-point big-integer arithmetic. `W` is analytic at `rho`
//! (its own singularity sits at `sqrt(rho)`), so a few hundred exact coefficients of
//! `V` evaluate it far beyond the requested precision.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numbers::wedderburn_etherington_table;

pub const MAX_PRECISION: u32 = 30;
pub const DEFAULT_PRECISION: u32 = 20;
const GUARD_DIGITS: u32 = 12;
const MAX_NEWTON_STEPS: usize = 200;

/// `V(z) ~ 1/rho - b sqrt(1 - z/rho)` near `z = rho`; `N(z) = V(sqrt z)/sqrt z` has
/// singularity `sigma = rho^2` with amplitude `a = b / sqrt(2 sigma)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonplaneConstants {
    pub rho: f64,
    pub b: f64,
    pub sigma: f64,
    pub a_const: f64,
    /// `|F(rho, 1/rho)|`
    pub residual_f: f64,
    /// `|F_V(rho, 1/rho)|`
    pub residual_fv: f64,
    pub precision: u32,
    /// The same four constants as decimal strings with `precision` fractional digits.
    pub decimals: ConstantDecimals,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantDecimals {
    pub rho: String,
    pub b: String,
    pub sigma: String,
    pub a_const: String,
}

/// Constants at [`DEFAULT_PRECISION`], computed once per process.
pub fn nonplane_constants() -> &'static NonplaneConstants {
    static CACHE: OnceLock<NonplaneConstants> = OnceLock::new();
    CACHE.get_or_init(|| solve_nonplane_constants(DEFAULT_PRECISION).expect("default solve converges"))
}

/// Solves for `rho` and `b` to `precision` decimal digits (at most [`MAX_PRECISION`]).
pub fn solve_nonplane_constants(precision: u32) -> Result<NonplaneConstants> {
    if precision == 0 || precision > MAX_PRECISION {
        return Err(Error::domain(format!(
            "precision must be between 1 and {MAX_PRECISION} digits, got {precision}"
        )));
    }
    let fx = Fixed::new(precision + GUARD_DIGITS);
    // rho^n < 10^-digits needs n > digits * ln 10 / ln(1/rho) ~ 5.1 digits.
    let terms = 400.max(8 * fx.digits as usize);
    let table = wedderburn_etherington_table(2 * terms + 1);
    let v: Vec<BigInt> = (0..=2 * terms + 1).map(|n| BigInt::from(table[n].clone())).collect();

    let two = fx.int(2);
    let one = fx.int(1);
    let mut z = fx.from_f64(0.6346);
    let mut converged = false;
    for _ in 0..MAX_NEWTON_STEPS {
        let x = fx.mul(&z, &z);
        let (w, w_dx) = eval_with_derivative(&fx, &v, &x);
        // g(z) = z^2 (2 + W) - 1, g'(z) = 2z (2 + W) + z^2 W'(z), W'(z) = 2z dW/dx
        let two_plus_w = &two + &w;
        let g = &fx.mul(&x, &two_plus_w) - &one;
        let w_dz = fx.mul(&(&z * 2), &w_dx);
        let g_prime = &fx.mul(&(&z * 2), &two_plus_w) + &fx.mul(&x, &w_dz);
        let step = fx.div(&g, &g_prime);
        z -= &step;
        if step.abs() <= BigInt::from(4) {
            converged = true;
            break;
        }
    }
    let rho = z;
    let x = fx.mul(&rho, &rho);
    let (w, w_dx) = eval_with_derivative(&fx, &v, &x);
    let tau = fx.div(&one, &rho);
    let tau_sq = fx.mul(&tau, &tau);
    let f = &(&rho + &fx.mul(&fx.half(&rho), &(&tau_sq + &w))) - &tau;
    let f_v = &fx.mul(&rho, &tau) - &one;
    let residual_f = fx.to_f64(&f).abs();
    let residual_fv = fx.to_f64(&f_v).abs();
    if !converged || residual_f > 1e-10 || residual_fv > 1e-10 {
        return Err(Error::Numeric(format!(
            "constant solver did not converge: |F| = {residual_f:e}, |F_V| = {residual_fv:e}"
        )));
    }
    // F_z = 1 + (V^2 + W)/2 + z W'(z)/2 and F_VV = z, so b = sqrt(2 rho F_z / F_VV) = sqrt(2 F_z).
    let w_dz = fx.mul(&(&rho * 2), &w_dx);
    let f_z = &(&one + &fx.half(&(&tau_sq + &w))) + &fx.half(&fx.mul(&rho, &w_dz));
    let b = fx.sqrt(&(&f_z * 2));
    let sigma = fx.mul(&rho, &rho);
    let a_const = fx.div(&b, &fx.sqrt(&(&sigma * 2)));
    Ok(NonplaneConstants {
        rho: fx.to_f64(&rho),
        b: fx.to_f64(&b),
        sigma: fx.to_f64(&sigma),
        a_const: fx.to_f64(&a_const),
        residual_f,
        residual_fv,
        precision,
        decimals: ConstantDecimals {
            rho: fx.to_decimal(&rho, precision),
            b: fx.to_decimal(&b, precision),
            sigma: fx.to_decimal(&sigma, precision),
            a_const: fx.to_decimal(&a_const, precision),
        },
    })
}

/// `W(x) = sum_n v_n x^n` and `dW/dx` at `x = z^2`, by Horner's rule.
fn eval_with_derivative(fx: &Fixed, v: &[BigInt], x: &BigInt) -> (BigInt, BigInt) {
    let mut w = BigInt::zero();
    let mut dw = BigInt::zero();
    for n in (0..v.len()).rev() {
        dw = &fx.mul(&dw, x) + &w;
        w = &fx.mul(&w, x) + &(&v[n] * &fx.scale);
    }
    (w, dw)
}

/// Decimal fixed point: a value `x` is stored as `round(x * 10^digits)`.
struct Fixed {
    digits: u32,
    scale: BigInt,
}

impl Fixed {
    fn new(digits: u32) -> Self {
        Fixed { digits, scale: BigInt::from(10u32).pow(digits) }
    }

    fn int(&self, k: i64) -> BigInt {
        &self.scale * k
    }

    fn from_f64(&self, x: f64) -> BigInt {
        let micro = (x * 1e9).round() as i64;
        &self.scale * micro / 1_000_000_000i64
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b / &self.scale
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * &self.scale / b
    }

    fn half(&self, a: &BigInt) -> BigInt {
        a / 2
    }

    fn sqrt(&self, a: &BigInt) -> BigInt {
        (a * &self.scale).sqrt()
    }

    fn to_f64(&self, a: &BigInt) -> f64 {
        // Keep 17 significant digits and let f64 do the rest.
        let drop = self.digits.saturating_sub(17);
        let shrunk = a / BigInt::from(10u32).pow(drop);
        shrunk.to_f64().unwrap_or(f64::NAN) / 10f64.powi((self.digits - drop) as i32)
    }

    /// Rounded to `places` fractional digits.
    fn to_decimal(&self, a: &BigInt, places: u32) -> String {
        let unit = BigInt::from(10u32).pow(self.digits - places);
        let rounded: BigInt = (a + &unit / 2) / &unit;
        let negative = rounded.sign() == Sign::Minus;
        let text = rounded.abs().to_string();
        let width = places as usize + 1;
        let padded = format!("{text:0>width$}");
        let (int, frac) = padded.split_at(padded.len() - places as usize);
        format!("{}{int}.{frac}", if negative { "-" } else { "" })
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_decimals() {
        let c = solve_nonplane_constants(20).unwrap();
        assert!((c.rho - 0.6346).abs() < 5e-5, "{}", c.rho);
        assert!((c.b - 2.5184).abs() < 5e-5, "{}", c.b);
        assert!((c.sigma - 0.4027).abs() < 5e-5, "{}", c.sigma);
        assert!((c.a_const - 2.8062).abs() < 5e-5, "{}", c.a_const);
        assert!(c.residual_f < 1e-10 && c.residual_fv < 1e-10);
        assert_eq!(c.decimals.rho.len(), 22);
    }

    #[test]
    fn precision_is_stable() {
        let lo = solve_nonplane_constants(10).unwrap();
        let hi = solve_nonplane_constants(30).unwrap();
        assert!(hi.decimals.rho.starts_with(&lo.decimals.rho[..10]));
        assert!(hi.decimals.b.starts_with(&lo.decimals.b[..10]));
        assert!(solve_nonplane_constants(31).is_err());
        assert!(solve_nonplane_constants(0).is_err());
    }

    #[test]
    fn decimal_formatting() {
        let fx = Fixed::new(6);
        assert_eq!(fx.to_decimal(&BigInt::from(1_234_567), 3), "1.235");
        assert_eq!(fx.to_decimal(&BigInt::from(4_567), 3), "0.005");
    }
}
