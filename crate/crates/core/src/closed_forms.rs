//! Closed-form series: the sinh-normalized series S and its constants
//! c_{2k}, the closed 1-point series for each positive degree, and the
//! degree-0 series that seed the recursions.
//!
//! S = sinh(λ/2)/(λ/2) = Σ c_{2k} λ^{2k} with c_{2k} = 1/(2^{2k}(2k+1)!).
//! This is the real form of sin(iλ/2)/(iλ/2), so all coefficients are
//! rational and arithmetic never leaves ℚ.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::factorial;
use crate::rational::{rat_int, Rat};
use crate::series::Series;

/// The constant c_{2k} = 1/(2^{2k}·(2k+1)!).
pub fn c2k(k: usize) -> Rat {
    let denom = (BigInt::one() << (2 * k)) * factorial(2 * k + 1);
    Rat::new(BigInt::one(), denom)
}

/// Exact harmonic numbers Σ_{j=1..d} 1/j, cached for all d up to a bound.
#[derive(Clone, Debug)]
pub struct Harmonics {
    values: Vec<Rat>,
}

impl Harmonics {
    /// Precomputes H_1 … H_dmax (H_0 = 0 is stored too).
    pub fn up_to(dmax: u32) -> Self {
        let mut values = Vec::with_capacity(dmax as usize + 1);
        values.push(Rat::zero());
        for d in 1..=dmax {
            let next = &values[d as usize - 1] + rat_int(d as i64).recip();
            values.push(next);
        }
        Harmonics { values }
    }

    /// H_d = Σ_{j=1..d} 1/j.
    pub fn value(&self, d: u32) -> &Rat {
        &self.values[d as usize]
    }
}

/// Convenience for a single harmonic number.
pub fn harmonic(d: u32) -> Rat {
    Harmonics::up_to(d).value(d).clone()
}

/// The sinh-normalized series S = Σ_{2k ≤ N} c_{2k} λ^{2k}.
pub fn sinh_normalized(order: usize) -> Series {
    Series::from_fn(order, |n| if n % 2 == 0 { c2k(n / 2) } else { Rat::zero() })
}

/// Closed form of the 1-point y-series: Y_d = S^{2d−1}/(d!)², d ≥ 1.
pub fn one_point_y_closed(d: u32, order: usize) -> Series {
    assert!(d >= 1, "the closed 1-point series start at degree 1");
    let s = sinh_normalized(order);
    let pow = s.powi(2 * d as i64 - 1).expect("positive power");
    pow.scale(&inv_factorial_squared(d))
}

/// Closed form of the 1-point x-series:
/// X_d = (2/(d!)²)·S^{2d−1}·(log S − H_d), d ≥ 1.
pub fn one_point_x_closed(d: u32, order: usize) -> Series {
    assert!(d >= 1, "the closed 1-point series start at degree 1");
    let s = sinh_normalized(order);
    let pow = s.powi(2 * d as i64 - 1).expect("positive power");
    let log_s = s.log().expect("S has constant term 1");
    let shifted = &log_s - &Series::constant(harmonic(d), order);
    (&pow * &shifted).scale(&(rat_int(2) * inv_factorial_squared(d)))
}

/// The degree-0 y-seed: S^{−1} = 1 + Σ_{g ≥ 1} λ^{2g}·(2-point degree-0 value).
pub fn degree0_y_series(order: usize) -> Series {
    sinh_normalized(order).powi(-1).expect("S is a unit")
}

/// The degree-0 x-seed: 2·S^{−1}·log S.
pub fn degree0_x_series(order: usize) -> Series {
    let s = sinh_normalized(order);
    let inv = s.powi(-1).expect("S is a unit");
    let log_s = s.log().expect("S has constant term 1");
    (&inv * &log_s).scale(&rat_int(2))
}

fn inv_factorial_squared(d: u32) -> Rat {
    let f = factorial(d as usize);
    Rat::new(BigInt::one(), &f * &f)
}
