//! Truncated formal power series in λ over exact rationals.
//!
//! A [`Series`] stores the coefficients of λ^0 … λ^N where N is the
//! truncation order. Coefficients above the order are *unknown*, not zero:
//! binary operations therefore truncate to the minimum order of their
//! inputs, so no unknown coefficient is ever used.
//!
//! exp and log are computed by coefficient recurrences (from h′ = f′·h and
//! g′·f = f′ respectively), never by evaluating transcendental functions,
//! so every coefficient stays an exact rational.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{rat_int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    DivisorNotUnit,
    #[error("exp requires a zero constant term, found {0}")]
    ExpConstantTerm(String),
    #[error("log requires constant term 1, found {0}")]
    LogConstantTerm(String),
    #[error("negative power of a series with zero constant term")]
    NegativePowerNotUnit,
    #[error("exponential of a double series needs a zero q^0 slice")]
    QSliceNotNilpotent,
}

/// A formal power series in λ truncated at a fixed order.
///
/// Invariant: `coeffs.len() == order + 1`, so the zero series of order N
/// still stores N+1 zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    /// The zero series at the given truncation order.
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    /// The constant series 1 at the given truncation order.
    pub fn one(order: usize) -> Self {
        Series::constant(Rat::one(), order)
    }

    /// A constant series.
    pub fn constant(c: Rat, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c·λ^power`; zero if the power exceeds the order.
    pub fn monomial(c: Rat, power: usize, order: usize) -> Self {
        let mut s = Series::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Builds a series from an exhaustive coefficient list (order = len − 1).
    ///
    /// Panics on an empty list: a series always knows at least λ^0.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        Series { coeffs }
    }

    /// Builds a series of the given order with coefficient `f(k)` at λ^k.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rat) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// The truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient of λ^k. Panics beyond the truncation order, where
    /// the coefficient is unknown.
    pub fn coeff(&self, k: usize) -> &Rat {
        assert!(
            k <= self.order(),
            "coefficient of λ^{k} is unknown at truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    /// All known coefficients, λ^0 first.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Restricts to a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Quotient with `g`: requires a nonzero constant term in `g`.
    pub fn div(&self, g: &Series) -> Result<Series, SeriesError> {
        if g.constant_term().is_zero() {
            return Err(SeriesError::DivisorNotUnit);
        }
        let order = self.order().min(g.order());
        let g0_inv = g.constant_term().recip();
        let mut h = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &g.coeffs[k] * &h[n - k];
            }
            h.push(acc * &g0_inv);
        }
        Ok(Series { coeffs: h })
    }

    /// exp of a series with zero constant term, via the recurrence
    /// `n·h_n = Σ_{k=1..n} k·f_k·h_{n−k}`.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::ExpConstantTerm(self.constant_term().to_string()));
        }
        let order = self.order();
        let mut h: Vec<Rat> = Vec::with_capacity(order + 1);
        h.push(Rat::one());
        for n in 1..=order {
            let mut acc = Rat::zero();
            for (k, fk) in self.coeffs.iter().enumerate().take(n + 1).skip(1) {
                acc += fk * &h[n - k] * rat_int(k as i64);
            }
            h.push(acc / rat_int(n as i64));
        }
        Ok(Series { coeffs: h })
    }

    /// log of a series with constant term 1, via the recurrence
    /// `g_n = f_n − (1/n)·Σ_{k=1..n−1} k·g_k·f_{n−k}`.
    pub fn log(&self) -> Result<Series, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::LogConstantTerm(self.constant_term().to_string()));
        }
        let order = self.order();
        let mut g: Vec<Rat> = Vec::with_capacity(order + 1);
        g.push(Rat::zero());
        for n in 1..=order {
            let mut acc = Rat::zero();
            for (k, gk) in g.iter().enumerate().take(n).skip(1) {
                acc += gk * &self.coeffs[n - k] * rat_int(k as i64);
            }
            g.push(&self.coeffs[n] - acc / rat_int(n as i64));
        }
        Ok(Series { coeffs: g })
    }

    /// Integer power. Negative exponents invert first and therefore need a
    /// nonzero constant term.
    pub fn powi(&self, k: i64) -> Result<Series, SeriesError> {
        if k == 0 {
            return Ok(Series::one(self.order()));
        }
        let base = if k < 0 {
            if self.constant_term().is_zero() {
                return Err(SeriesError::NegativePowerNotUnit);
            }
            Series::one(self.order()).div(self)?
        } else {
            self.clone()
        };
        let mut result = Series::one(self.order());
        let mut square = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &square;
            }
            e >>= 1;
            if e > 0 {
                square = &square * &square;
            }
        }
        Ok(result)
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*λ")?,
                _ => write!(f, "{c}*λ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(λ^{})", self.order() + 1)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A series in λ per power of q, with q = e^{y_0}.
///
/// Slice d is the coefficient of q^d; every slice carries the same
/// λ-truncation order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    slices: Vec<Series>,
}

impl BiSeries {
    pub fn zero(degree_max: usize, lambda_order: usize) -> Self {
        BiSeries {
            slices: vec![Series::zero(lambda_order); degree_max + 1],
        }
    }

    /// Assembles from per-degree slices, which must share a λ-order.
    pub fn from_slices(slices: Vec<Series>) -> Self {
        assert!(!slices.is_empty(), "a double series needs a q^0 slice");
        let order = slices[0].order();
        assert!(
            slices.iter().all(|s| s.order() == order),
            "all q-slices must share one λ-order"
        );
        BiSeries { slices }
    }

    /// The q-truncation degree D (slices run q^0 … q^D).
    pub fn degree_max(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn lambda_order(&self) -> usize {
        self.slices[0].order()
    }

    pub fn slice(&self, degree: usize) -> &Series {
        &self.slices[degree]
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(Series::is_zero)
    }

    /// The first nonzero coefficient in (q-degree, λ-power) lexicographic
    /// order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Rat)> {
        self.slices.iter().enumerate().find_map(|(d, s)| {
            s.coeffs()
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .map(|(k, c)| (d, k, c))
        })
    }

    /// q-adic exponential: requires the q^0 slice to vanish identically, so
    /// that `Σ_{n ≤ D} T^n/n!` is exact through the q-truncation.
    pub fn exp(&self) -> Result<BiSeries, SeriesError> {
        if !self.slices[0].is_zero() {
            return Err(SeriesError::QSliceNotNilpotent);
        }
        let mut result = BiSeries::zero(self.degree_max(), self.lambda_order());
        result.slices[0] = Series::one(self.lambda_order());
        let mut term = result.clone();
        for n in 1..=self.degree_max() {
            term = &term * self;
            term = term.scale(&rat_int(n as i64).recip());
            result = &result + &term;
        }
        Ok(result)
    }

    pub fn scale(&self, c: &Rat) -> BiSeries {
        BiSeries {
            slices: self.slices.iter().map(|s| s.scale(c)).collect(),
        }
    }
}

impl Add for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        let dmax = self.degree_max().min(rhs.degree_max());
        BiSeries::from_slices(
            (0..=dmax)
                .map(|d| &self.slices[d] + &rhs.slices[d])
                .collect(),
        )
    }
}

impl Sub for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        let dmax = self.degree_max().min(rhs.degree_max());
        BiSeries::from_slices(
            (0..=dmax)
                .map(|d| &self.slices[d] - &rhs.slices[d])
                .collect(),
        )
    }
}

impl Mul for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let dmax = self.degree_max().min(rhs.degree_max());
        let order = self.lambda_order().min(rhs.lambda_order());
        let mut slices = vec![Series::zero(order); dmax + 1];
        for i in 0..=dmax {
            if self.slices[i].is_zero() {
                continue;
            }
            for j in 0..=dmax - i {
                if !rhs.slices[j].is_zero() {
                    slices[i + j] = &slices[i + j] + &(&self.slices[i] * &rhs.slices[j]);
                }
            }
        }
        BiSeries { slices }
    }
}
