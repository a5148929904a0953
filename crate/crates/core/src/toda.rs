//! The recursions induced by the Toda equation.
//!
//! Three pieces live here:
//!
//! - the degree-by-degree recursion for the 1-point series,
//!   S²·Y_{d−1} = d²·Y_d and S²·X_{d−1} = d²·X_d + 2d·Y_d, seeded by the
//!   degree-0 series S^{−1} and 2·S^{−1}·log S;
//! - the Hurwitz number recursion d²·H_{g,d} = Σ_{ξ ∈ P(g,d)} (2^l/l!)·
//!   multinomial(2g+2d−2; 2g_1+2d_1−2, 2k_1, …)·Π d_i^{2k_i}·H_{g_i,d_i},
//!   where P(g,d) collects ordered sequences of triples (g_i, d_i, k_i)
//!   with Σ d_i = d−1 and Σ (g_i + k_i) = g + l;
//! - the functional residual of the Hurwitz generating function: with
//!   h_{g,d} = H_{g,d}/(2g+2d−2)! and q = e^{y_0},
//!   exp(Σ 2d^{2k}/(2k)!·h_{g,d}·λ^{2g−2+2k}·q^d) − Σ d²·h_{g,d}·λ^{2g}·q^{d−1}
//!   must vanish identically for a correct table.
//!
//! The production Hurwitz fill enumerates unordered multisets of triples
//! with the weight 2^l/Π m_t! (m_t the multiplicities), which resums the
//! ordered sum with weight 2^l/l!. The ordered enumeration is kept as a
//! public operation and the equivalence is unit-tested.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::closed_forms::{degree0_x_series, degree0_y_series, sinh_normalized};
use crate::combinatorics::{factorial, multinomial};
use crate::hurwitz_table::{HurwitzTable, TableError};
use crate::rational::{rat_int, Rat};
use crate::series::{BiSeries, Series};

/// One factor (g_i, d_i, k_i) of a recursion term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triple {
    pub genus: u32,
    pub degree: u32,
    pub k: u32,
}

/// An ordered sequence of triples; membership in P(g,d) means
/// Σ d_i = d−1 and Σ (g_i + k_i) = g + length.
pub type TripleSequence = Vec<Triple>;

/// The 1-point series (Y_d, X_d) for d = 0 … dmax, by recursion from the
/// degree-0 seeds.
pub fn one_point_by_recursion(dmax: u32, order: usize) -> Vec<(Series, Series)> {
    let s = sinh_normalized(order);
    let s2 = &s * &s;
    let mut out = Vec::with_capacity(dmax as usize + 1);
    out.push((degree0_y_series(order), degree0_x_series(order)));
    for d in 1..=dmax {
        let (y_prev, x_prev) = out.last().expect("seeded");
        let inv_d2 = rat_int((d * d) as i64).recip();
        let y = (&s2 * y_prev).scale(&inv_d2);
        let x = (&(&s2 * x_prev) - &y.scale(&rat_int(2 * d as i64))).scale(&inv_d2);
        out.push((y, x));
    }
    out
}

/// Every ordered sequence in P(g,d). For d = 1 this is the empty sequence
/// alone, and only when g = 0.
pub fn enumerate_p(g: u32, d: u32) -> Vec<TripleSequence> {
    assert!(d >= 1);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    ordered_sequences(d - 1, g, &mut prefix, &mut out);
    out
}

/// Each triple spends d_i ≥ 1 of the degree budget (initially d−1) and
/// g_i + k_i − 1 ≥ 0 of the genus budget (initially g); k_i ≥ 1 makes the
/// split of the excess into (g_i, k_i) finite.
fn ordered_sequences(
    degree_left: u32,
    genus_left: u32,
    prefix: &mut TripleSequence,
    out: &mut Vec<TripleSequence>,
) {
    if degree_left == 0 && genus_left == 0 {
        out.push(prefix.clone());
    }
    if degree_left == 0 {
        return;
    }
    for di in 1..=degree_left {
        for excess in 0..=genus_left {
            for gi in 0..=excess {
                prefix.push(Triple {
                    genus: gi,
                    degree: di,
                    k: excess - gi + 1,
                });
                ordered_sequences(degree_left - di, genus_left - excess, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// Multiset variant: non-decreasing sequences only, paired with the weight
/// 2^l / Π m_t! as an exact rational.
fn multiset_sequences(g: u32, d: u32) -> Vec<(TripleSequence, Rat)> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    multiset_go(d - 1, g, None, &mut prefix, &mut out);
    out
}

fn multiset_go(
    degree_left: u32,
    genus_left: u32,
    min_triple: Option<Triple>,
    prefix: &mut TripleSequence,
    out: &mut Vec<(TripleSequence, Rat)>,
) {
    if degree_left == 0 && genus_left == 0 {
        out.push((prefix.clone(), multiset_weight(prefix)));
    }
    if degree_left == 0 {
        return;
    }
    for di in 1..=degree_left {
        for excess in 0..=genus_left {
            for gi in 0..=excess {
                let triple = Triple {
                    genus: gi,
                    degree: di,
                    k: excess - gi + 1,
                };
                if min_triple.is_some_and(|m| triple < m) {
                    continue;
                }
                prefix.push(triple);
                multiset_go(
                    degree_left - di,
                    genus_left - excess,
                    Some(triple),
                    prefix,
                    out,
                );
                prefix.pop();
            }
        }
    }
}

fn multiset_weight(sorted: &TripleSequence) -> Rat {
    let mut denominator = BigInt::one();
    let mut run = 1usize;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            denominator *= factorial(run);
            run = 1;
        }
    }
    Rat::new(BigInt::one() << sorted.len(), denominator)
}

/// One term of the recursion sum: multinomial(2g+2d−2; 2g_i+2d_i−2, 2k_i, …)
/// · Π d_i^{2k_i} · H_{g_i,d_i}. Shared by the ordered and multiset routes.
fn sequence_term(g: u32, d: u32, sequence: &TripleSequence, table: &HurwitzTable) -> Rat {
    let total = 2 * (g + d) as usize - 2;
    let mut parts = Vec::with_capacity(2 * sequence.len());
    for t in sequence {
        parts.push(2 * (t.genus + t.degree) as usize - 2);
        parts.push(2 * t.k as usize);
    }
    let mut term = Rat::from_integer(multinomial(total, &parts));
    for t in sequence {
        let weight = BigInt::from(t.degree).pow(2 * t.k);
        term *= Rat::from_integer(weight);
        term *= table
            .get(t.genus, t.degree)
            .expect("recursion consumes only lower degrees");
    }
    term
}

/// Fills H_{g,d} for g ≤ gmax, d ≤ dmax by increasing degree, using the
/// multiset enumeration of P(g,d).
pub fn hurwitz_by_recursion(gmax: u32, dmax: u32) -> HurwitzTable {
    let mut table = HurwitzTable::new(gmax, dmax);
    for d in 1..=dmax {
        for g in 0..=gmax {
            let mut sum = Rat::zero();
            for (sequence, weight) in multiset_sequences(g, d) {
                sum += weight * sequence_term(g, d, &sequence, &table);
            }
            table.insert(g, d, sum / rat_int((d * d) as i64));
        }
    }
    table
}

/// Reference fill using the ordered enumeration with weight 2^l/l!;
/// kept for the equivalence test, quadratically slower.
pub fn hurwitz_by_recursion_ordered(gmax: u32, dmax: u32) -> HurwitzTable {
    let mut table = HurwitzTable::new(gmax, dmax);
    for d in 1..=dmax {
        for g in 0..=gmax {
            let mut sum = Rat::zero();
            for sequence in enumerate_p(g, d) {
                let weight = Rat::new(
                    BigInt::one() << sequence.len(),
                    factorial(sequence.len()),
                );
                sum += weight * sequence_term(g, d, &sequence, &table);
            }
            table.insert(g, d, sum / rat_int((d * d) as i64));
        }
    }
    table
}

/// The residual of the functional equation for H, truncated to q^{≤ D−1}
/// and λ^{≤ 2G}. Identically zero exactly when the table satisfies the
/// equation through those orders.
///
/// Every λ-exponent 2g−2+2k in the exponential argument is non-negative
/// (k ≥ 1), so no Laurent bookkeeping is needed: the comparison is already
/// multiplied through by λ².
pub fn toda_residual_h(
    table: &HurwitzTable,
    genus_bound: u32,
    degree_bound: u32,
) -> Result<BiSeries, TableError> {
    assert!(degree_bound >= 1);
    let lambda_order = 2 * genus_bound as usize;
    let qmax = degree_bound as usize - 1;

    // Argument of the exponential: Σ 2·d^{2k}/(2k)!·h_{g,d}·λ^{2g−2+2k}·q^d.
    let mut arg = BiSeries::zero(qmax, lambda_order);
    let mut sum_side = BiSeries::zero(qmax, lambda_order);
    for d in 1..=degree_bound {
        for g in 0..=genus_bound {
            let h = normalized_coefficient(table, g, d)?;
            if d as usize <= qmax {
                let mut slice = Series::zero(lambda_order);
                for k in 1.. {
                    let power = 2 * g as usize + 2 * k - 2;
                    if power > lambda_order {
                        break;
                    }
                    let coeff = Rat::new(
                        BigInt::from(2) * BigInt::from(d).pow(2 * k as u32),
                        factorial(2 * k),
                    ) * &h;
                    slice = &slice + &Series::monomial(coeff, power, lambda_order);
                }
                arg = &arg + &q_monomial(slice, d as usize, qmax);
            }
            let power = 2 * g as usize;
            if power <= lambda_order {
                let coeff = rat_int((d * d) as i64) * &h;
                sum_side = &sum_side
                    + &q_monomial(
                        Series::monomial(coeff, power, lambda_order),
                        d as usize - 1,
                        qmax,
                    );
            }
        }
    }
    let exp_side = arg.exp().expect("argument has no q^0 slice");
    Ok(&exp_side - &sum_side)
}

fn normalized_coefficient(table: &HurwitzTable, g: u32, d: u32) -> Result<Rat, TableError> {
    let h = table.get(g, d)?;
    Ok(h / Rat::from_integer(factorial(2 * (g + d) as usize - 2)))
}

fn q_monomial(slice: Series, degree: usize, qmax: usize) -> BiSeries {
    let order = slice.order();
    let mut slices = vec![Series::zero(order); qmax + 1];
    if degree <= qmax {
        slices[degree] = slice;
    }
    BiSeries::from_slices(slices)
}
