//! Mechanical verification of the proven genus-0 and genus-1 identities.
//!
//! The genus-1 identity is checked in the free polynomial ring
//! ℚ[A_0…A_m, B_0…B_m, Q] carrying two derivations,
//!
//! ```text
//! ∂x: A_i ↦ A_{i+1},  B_i ↦ B_{i+1},  Q ↦ Q·A_1
//! ∂y: A_i ↦ B_{i+1},  B_i ↦ ∂x^i(Q·A_1),  Q ↦ Q·B_1
//! ```
//!
//! localized at Δ = B_1² − Q·A_1². No algebraic relations are imposed on
//! the variables; elements of the localization are (numerator, Δ-power)
//! pairs compared after cross-multiplication. The identity
//! Q·(A_0 + log Δ)_{x_0x_0} = (−A_0 + log Δ)_{y_0y_0} reduces to a
//! polynomial that must vanish identically.
//!
//! The genus-0 check works on the small phase space, where the potential
//! is x_0²y_0/2 + e^{y_0}: both sides of exp(F_{x_0x_0}) = F_{y_0y_0} are
//! computed mechanically as truncated series in y_0.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::rational::{rat, Rat};
use crate::series::Series;

/// Derivative index headroom of the shared standard table; the genus-1
/// identity needs indices through 3, so 4 leaves room to detect growth.
pub const DEFAULT_MAX_INDEX: u32 = 4;

/// A generator of the ring: A_i, B_i, or Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A(u32),
    B(u32),
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A(i) => write!(f, "A{i}"),
            Var::B(i) => write!(f, "B{i}"),
            Var::Q => write!(f, "Q"),
        }
    }
}

impl Var {
    fn derivative_index(&self) -> Option<u32> {
        match self {
            Var::A(i) | Var::B(i) => Some(*i),
            Var::Q => None,
        }
    }
}

/// A power product of generators; exponents are always positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial(BTreeMap::from([(v, 1)]))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&v, &e) in &other.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    fn without_one(&self, v: Var) -> Monomial {
        let mut out = self.0.clone();
        match out.get_mut(&v) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                out.remove(&v);
            }
            None => unreachable!("variable not present"),
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in the A_i, B_i, Q with rational coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial has an
/// empty term map and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(Monomial::var(v), Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(existing) => {
                *existing += coeff;
                if existing.is_zero() {
                    self.terms.remove(&monomial);
                }
            }
            None => {
                self.terms.insert(monomial, coeff);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Largest derivative index appearing in any term; None for constants
    /// and pure powers of Q.
    pub fn max_derivative_index(&self) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().filter_map(|(v, _)| v.derivative_index()))
            .max()
    }

    /// Sets every variable matching the predicate to zero: monomials that
    /// contain one are dropped.
    pub fn drop_vars(&self, dropped: impl Fn(Var) -> bool) -> DiffPoly {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.exponents().any(|(v, _)| dropped(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rescales one variable: v ↦ factor·v.
    pub fn scale_var(&self, v: Var, factor: &Rat) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponents().find(|&(w, _)| w == v).map_or(0, |(_, e)| e);
            let mut scaled = c.clone();
            for _ in 0..e {
                scaled *= factor;
            }
            out.add_term(m.clone(), scaled);
        }
        out
    }

    /// Terms in graded lexicographic order (degree first, then the
    /// variable order); used for canonical printing.
    fn graded_terms(&self) -> Vec<(&Monomial, &Rat)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.total_degree(), (*m).clone()));
        terms
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.graded_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.total_degree() == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Which derivation to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    X0,
    Y0,
}

/// The images of the generators under both derivations, for indices up to
/// a fixed bound. ∂y(B_i) = ∂x^i(Q·A_1) is materialized once here, which
/// keeps the table finite; asking for an index beyond the bound panics,
/// so unnoticed index growth cannot happen.
#[derive(Clone, Debug)]
pub struct DerivationTable {
    max_index: u32,
    dx_a: Vec<DiffPoly>,
    dx_b: Vec<DiffPoly>,
    dx_q: DiffPoly,
    dy_a: Vec<DiffPoly>,
    dy_b: Vec<DiffPoly>,
    dy_q: DiffPoly,
}

impl DerivationTable {
    pub fn standard(max_index: u32) -> Self {
        let q_a1 = &DiffPoly::var(Var::Q) * &DiffPoly::var(Var::A(1));
        let mut table = DerivationTable {
            max_index,
            dx_a: (0..=max_index).map(|i| DiffPoly::var(Var::A(i + 1))).collect(),
            dx_b: (0..=max_index).map(|i| DiffPoly::var(Var::B(i + 1))).collect(),
            dx_q: q_a1.clone(),
            dy_a: (0..=max_index).map(|i| DiffPoly::var(Var::B(i + 1))).collect(),
            dy_b: Vec::with_capacity(max_index as usize + 1),
            dy_q: &DiffPoly::var(Var::Q) * &DiffPoly::var(Var::B(1)),
        };
        let mut image = q_a1;
        table.dy_b.push(image.clone());
        for _ in 1..=max_index {
            image = table.derive(Derivation::X0, &image);
            table.dy_b.push(image.clone());
        }
        table
    }

    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    fn image(&self, which: Derivation, v: Var) -> &DiffPoly {
        if let Some(i) = v.derivative_index() {
            assert!(
                i <= self.max_index,
                "derivative index {i} exceeds the table bound {}; the identity should not generate it",
                self.max_index
            );
        }
        match (which, v) {
            (Derivation::X0, Var::A(i)) => &self.dx_a[i as usize],
            (Derivation::X0, Var::B(i)) => &self.dx_b[i as usize],
            (Derivation::X0, Var::Q) => &self.dx_q,
            (Derivation::Y0, Var::A(i)) => &self.dy_a[i as usize],
            (Derivation::Y0, Var::B(i)) => &self.dy_b[i as usize],
            (Derivation::Y0, Var::Q) => &self.dy_q,
        }
    }

    /// Adds `delta` to the image of one generator; used by the
    /// falsification tests.
    pub fn perturb(&mut self, which: Derivation, v: Var, delta: &DiffPoly) {
        let slot = match (which, v) {
            (Derivation::X0, Var::A(i)) => &mut self.dx_a[i as usize],
            (Derivation::X0, Var::B(i)) => &mut self.dx_b[i as usize],
            (Derivation::X0, Var::Q) => &mut self.dx_q,
            (Derivation::Y0, Var::A(i)) => &mut self.dy_a[i as usize],
            (Derivation::Y0, Var::B(i)) => &mut self.dy_b[i as usize],
            (Derivation::Y0, Var::Q) => &mut self.dy_q,
        };
        *slot = &*slot + delta;
    }

    /// Leibniz extension of the generator images to the whole ring.
    pub fn derive(&self, which: Derivation, p: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (monomial, coeff) in &p.terms {
            for (v, e) in monomial.exponents() {
                let rest = monomial.without_one(v);
                let factor = self.image(which, v);
                for (im, ic) in &factor.terms {
                    out.add_term(rest.mul(im), coeff * ic * rat(e as i64, 1));
                }
            }
        }
        out
    }
}

fn standard_table() -> &'static DerivationTable {
    static TABLE: OnceLock<DerivationTable> = OnceLock::new();
    TABLE.get_or_init(|| DerivationTable::standard(DEFAULT_MAX_INDEX))
}

/// ∂/∂x_0 with the standard table.
pub fn d_x0(p: &DiffPoly) -> DiffPoly {
    standard_table().derive(Derivation::X0, p)
}

/// ∂/∂y_0 with the standard table.
pub fn d_y0(p: &DiffPoly) -> DiffPoly {
    standard_table().derive(Derivation::Y0, p)
}

/// Δ = B_1² − Q·A_1², the discriminant inverted in the localization.
pub fn delta_poly() -> DiffPoly {
    let b1 = DiffPoly::var(Var::B(1));
    let q = DiffPoly::var(Var::Q);
    let a1 = DiffPoly::var(Var::A(1));
    &(&b1 * &b1) - &(&q * &(&a1 * &a1))
}

/// An element numerator/Δ^delta_power of the localized ring.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    pub numerator: DiffPoly,
    pub delta_power: u32,
}

impl LocalizedElement {
    /// Equality after cross-multiplying by Δ powers.
    pub fn equals(&self, other: &LocalizedElement) -> bool {
        self.cross_difference(other).is_zero()
    }

    /// self − other, brought to the common denominator Δ^max(powers);
    /// returns the numerator of the difference.
    pub fn cross_difference(&self, other: &LocalizedElement) -> DiffPoly {
        let delta = delta_poly();
        let raise = |p: &DiffPoly, by: u32| {
            let mut out = p.clone();
            for _ in 0..by {
                out = &out * &delta;
            }
            out
        };
        let common = self.delta_power.max(other.delta_power);
        let lhs = raise(&self.numerator, common - self.delta_power);
        let rhs = raise(&other.numerator, common - other.delta_power);
        &lhs - &rhs
    }
}

/// (log Δ)_{x_0x_0} and (log Δ)_{y_0y_0} as localized elements with
/// denominator Δ²: the numerators are Δ·∂²Δ − (∂Δ)².
pub fn log_delta_second_derivs_with(
    table: &DerivationTable,
) -> (LocalizedElement, LocalizedElement) {
    let delta = delta_poly();
    let second = |which: Derivation| {
        let first = table.derive(which, &delta);
        let twice = table.derive(which, &first);
        LocalizedElement {
            numerator: &(&delta * &twice) - &(&first * &first),
            delta_power: 2,
        }
    };
    (second(Derivation::X0), second(Derivation::Y0))
}

pub fn log_delta_second_derivs() -> (LocalizedElement, LocalizedElement) {
    log_delta_second_derivs_with(standard_table())
}

/// Both sides of the genus-1 identity over the common denominator Δ²,
/// and their difference.
#[derive(Clone, Debug)]
pub struct Genus1Check {
    pub lhs_numerator: DiffPoly,
    pub rhs_numerator: DiffPoly,
    pub residual: DiffPoly,
}

impl Genus1Check {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Forms Q·(A_0 + log Δ)_{x_0x_0} and (−A_0 + log Δ)_{y_0y_0} over Δ² and
/// subtracts the numerators.
pub fn genus1_check_with(table: &DerivationTable) -> Genus1Check {
    let delta = delta_poly();
    let delta_sq = &delta * &delta;
    let a0 = DiffPoly::var(Var::A(0));
    let q = DiffPoly::var(Var::Q);

    let a0_xx = table.derive(Derivation::X0, &table.derive(Derivation::X0, &a0));
    let a0_yy = table.derive(Derivation::Y0, &table.derive(Derivation::Y0, &a0));
    let (log_xx, log_yy) = log_delta_second_derivs_with(table);

    let lhs_numerator = &q * &(&(&a0_xx * &delta_sq) + &log_xx.numerator);
    let rhs_numerator = &log_yy.numerator - &(&a0_yy * &delta_sq);
    let residual = &lhs_numerator - &rhs_numerator;
    Genus1Check {
        lhs_numerator,
        rhs_numerator,
        residual,
    }
}

pub fn genus1_check() -> Genus1Check {
    genus1_check_with(standard_table())
}

/// True iff the genus-1 identity holds identically in the localized ring.
pub fn verify_genus1_toda() -> bool {
    genus1_check().holds()
}

/// The two sides of the genus-0 identity on the small phase space, as
/// series in y_0: exp(F_{x_0x_0}) computed by the series engine, and
/// F_{y_0y_0} by differentiating the potential twice. Both are returned
/// at order `order − 2`.
pub fn genus0_small_phase_sides(order: usize) -> (Series, Series) {
    assert!(order >= 2, "need two y_0-derivatives");
    // F = x_0²·y_0/2 + e^{y_0}: x_0-polynomial with y_0-series coefficients.
    let exp_y = Series::from_fn(order, |n| {
        Rat::from_integer(crate::combinatorics::factorial(n)).recip()
    });
    let f = vec![
        exp_y,
        Series::zero(order),
        Series::monomial(rat(1, 2), 1, order),
    ];
    let fx = x_derivative(&f);
    let fxx = x_derivative(&fx);
    // After two x_0-derivatives only the constant-in-x_0 part remains.
    assert!(fxx.iter().skip(1).all(Series::is_zero));
    let f_x0x0 = fxx[0].truncate(order - 2);

    let fyy: Vec<Series> = f.iter().map(|s| y_derivative(&y_derivative(s))).collect();
    assert!(fyy.iter().skip(1).all(Series::is_zero));
    let f_y0y0 = fyy[0].clone();

    let lhs = f_x0x0.exp().expect("F_{x0x0} = y_0 has no constant term");
    (lhs, f_y0y0)
}

/// exp(F_{x_0x_0}) = F_{y_0y_0} on the small phase space, through the
/// given truncation order in y_0.
pub fn verify_genus0_small_phase(order: usize) -> bool {
    let (lhs, rhs) = genus0_small_phase_sides(order);
    lhs == rhs
}

fn x_derivative(poly: &[Series]) -> Vec<Series> {
    if poly.len() <= 1 {
        return vec![poly
            .first()
            .map_or_else(|| Series::zero(0), |s| Series::zero(s.order()))];
    }
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(k, s)| s.scale(&rat(k as i64, 1)))
        .collect()
}

fn y_derivative(s: &Series) -> Series {
    let order = s.order();
    assert!(order >= 1);
    Series::from_fn(order - 1, |k| s.coeff(k + 1) * rat((k + 1) as i64, 1))
}
