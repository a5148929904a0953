//! Degree-1 descendent invariants of the sphere.
//!
//! The product rule: ⟨τ_{2k_1}(y) ⋯ τ_{2k_n}(y)⟩_{g,1} = Π c_{2k_i} when
//! Σ 2k_i = 2g, and the invariant vanishes whenever some index is odd or
//! the index sum disagrees with 2g. The genus is determined by the key.
//!
//! `degree1_generating_check` verifies the generating identity behind the
//! rule mechanically: the exponential exp(Σ c_{2k}·y_{2k}·λ^{2k}) is
//! expanded as a genuine multivariate exponential (Σ Pⁿ/n!) and compared
//! monomial by monomial against the sum assembled from the invariants with
//! the ordered-tuple-to-monomial weight 1/Π m_k!.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::closed_forms::{c2k, one_point_y_closed};
use crate::combinatorics::factorial;
use crate::rational::Rat;
use crate::series::Series;

/// A multiset of descendent indices (a_1, …, a_n), kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DescendentKey {
    indices: Vec<u32>,
}

impl DescendentKey {
    pub fn new(indices: impl IntoIterator<Item = u32>) -> Self {
        let mut indices: Vec<u32> = indices.into_iter().collect();
        indices.sort_unstable();
        DescendentKey { indices }
    }

    /// Parses a comma-separated index list; the empty string is the empty key.
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(DescendentKey::new([]));
        }
        let indices = text
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("invalid descendent index `{}`", part.trim()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DescendentKey::new(indices))
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// The genus forced by dimension, when the index sum is even.
    pub fn genus(&self) -> Option<u32> {
        let sum: u32 = self.indices.iter().sum();
        sum.is_multiple_of(2).then_some(sum / 2)
    }

    /// Multiset union.
    pub fn union(&self, other: &DescendentKey) -> DescendentKey {
        DescendentKey::new(self.indices.iter().chain(&other.indices).copied())
    }
}

/// ⟨τ_{a_1}(y) ⋯ τ_{a_n}(y)⟩_{g,1} with g = (Σ a_i)/2: the product of the
/// constants c_{a_i} when every index is even, zero otherwise.
pub fn degree1_invariant(key: &DescendentKey) -> Rat {
    let mut product = Rat::one();
    for &a in key.indices() {
        if a % 2 == 1 {
            return Rat::zero();
        }
        product *= c2k(a as usize / 2);
    }
    product
}

/// A monomial in the variables y_0, y_2, …: exponent of y_{2k} at slot k.
type YMonomial = Vec<u32>;

/// Multivariate polynomial in the y-variables with λ-series coefficients.
#[derive(Clone, Debug)]
struct YPolynomial {
    terms: BTreeMap<YMonomial, Series>,
    slots: usize,
    max_insertions: u32,
}

impl YPolynomial {
    fn constant(series: Series, slots: usize, max_insertions: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; slots], series);
        YPolynomial {
            terms,
            slots,
            max_insertions,
        }
    }

    fn add_term(&mut self, monomial: YMonomial, series: Series) {
        if monomial.iter().sum::<u32>() > self.max_insertions || series.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(existing) => *existing = &*existing + &series,
            None => {
                self.terms.insert(monomial, series);
            }
        }
    }

    fn mul(&self, rhs: &YPolynomial) -> YPolynomial {
        let mut out = YPolynomial {
            terms: BTreeMap::new(),
            slots: self.slots,
            max_insertions: self.max_insertions,
        };
        for (m1, s1) in &self.terms {
            for (m2, s2) in &rhs.terms {
                let monomial: YMonomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(monomial, s1 * s2);
            }
        }
        out
    }

    fn scale(&self, c: &Rat) -> YPolynomial {
        YPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, s)| (m.clone(), s.scale(c)))
                .collect(),
            slots: self.slots,
            max_insertions: self.max_insertions,
        }
    }

    fn coefficient(&self, monomial: &YMonomial, lambda_order: usize) -> Series {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(|| Series::zero(lambda_order))
    }
}

/// One mismatching coefficient of the generating identity.
#[derive(Clone, Debug)]
pub struct GeneratingMismatch {
    /// The descendent indices of the monomial, with multiplicity.
    pub indices: Vec<u32>,
    pub lambda_power: usize,
    pub exponential_side: Rat,
    pub invariant_side: Rat,
}

/// Outcome of the mechanical expansion of the generating identity.
#[derive(Clone, Debug)]
pub struct GeneratingCheckReport {
    pub monomials_checked: usize,
    pub coefficients_checked: usize,
    pub mismatches: Vec<GeneratingMismatch>,
}

impl GeneratingCheckReport {
    pub fn is_zero(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Expands exp(Σ_{2k ≤ max_index} c_{2k}·y_{2k}·λ^{2k}) through λ^{2·genus_bound}
/// and compares against the invariant sum, monomial by monomial, over all
/// monomials with at most `max_insertions` insertions.
///
/// `max_index` must be even. The y_0 direction never terminates on its own
/// (c_0 = 1 exponentiates to e^{y_0}), which is why the insertion bound is
/// part of the truncation.
pub fn degree1_generating_check(
    genus_bound: u32,
    max_index: u32,
    max_insertions: u32,
) -> GeneratingCheckReport {
    assert!(max_index.is_multiple_of(2), "descendent indices of y are even");
    let lambda_order = 2 * genus_bound as usize;
    let slots = max_index as usize / 2 + 1;

    // P = Σ_k c_{2k}·y_{2k}·λ^{2k}, one linear term per variable.
    let mut linear = YPolynomial {
        terms: BTreeMap::new(),
        slots,
        max_insertions,
    };
    for k in 0..slots {
        let mut monomial = vec![0u32; slots];
        monomial[k] = 1;
        linear.add_term(monomial, Series::monomial(c2k(k), 2 * k, lambda_order));
    }

    // exp(P) = Σ_{n ≤ max_insertions} Pⁿ/n!.
    let mut exponential = YPolynomial::constant(Series::one(lambda_order), slots, max_insertions);
    let mut power = YPolynomial::constant(Series::one(lambda_order), slots, max_insertions);
    for n in 1..=max_insertions {
        power = power.mul(&linear);
        let term = power.scale(&Rat::from_integer(factorial(n as usize)).recip());
        for (monomial, series) in &term.terms {
            exponential.add_term(monomial.clone(), series.clone());
        }
    }

    // Invariant side: monomial Π y_{2k}^{m_k} carries
    // λ²·λ^{2g−2}·⟨…⟩/Π m_k! with 2g = Σ 2k·m_k.
    let mut report = GeneratingCheckReport {
        monomials_checked: 0,
        coefficients_checked: 0,
        mismatches: Vec::new(),
    };
    for monomial in monomials_up_to(slots, max_insertions) {
        let indices: Vec<u32> = monomial
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| std::iter::repeat_n(2 * k as u32, m as usize))
            .collect();
        let key = DescendentKey::new(indices.iter().copied());
        let lambda_power = indices.iter().sum::<u32>() as usize;
        let mut invariant_series = Series::zero(lambda_order);
        if lambda_power <= lambda_order {
            let mut weight = degree1_invariant(&key);
            for &m in &monomial {
                weight /= Rat::from_integer(factorial(m as usize));
            }
            invariant_series = Series::monomial(weight, lambda_power, lambda_order);
        }
        let exponential_series = exponential.coefficient(&monomial, lambda_order);

        report.monomials_checked += 1;
        for power in 0..=lambda_order {
            report.coefficients_checked += 1;
            let lhs = exponential_series.coeff(power);
            let rhs = invariant_series.coeff(power);
            if lhs != rhs {
                report.mismatches.push(GeneratingMismatch {
                    indices: indices.clone(),
                    lambda_power: power,
                    exponential_side: lhs.clone(),
                    invariant_side: rhs.clone(),
                });
            }
        }
    }
    report
}

fn monomials_up_to(slots: usize, max_total: u32) -> Vec<YMonomial> {
    fn go(slots: usize, budget: u32, prefix: &mut YMonomial, out: &mut Vec<YMonomial>) {
        if prefix.len() == slots {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            go(slots, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(slots, max_total, &mut Vec::new(), &mut out);
    out
}

/// Checks ⟨τ_{2g}(y)⟩_{g,1} = c_{2g} against the λ-coefficients of the
/// closed 1-point series at degree 1, through the given order.
pub fn degree1_consistency_with_y1(order: usize) -> bool {
    let y1 = one_point_y_closed(1, order);
    (0..=order / 2).all(|g| {
        let key = DescendentKey::new([2 * g as u32]);
        degree1_invariant(&key) == *y1.coeff(2 * g)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn invariant_anchors() {
        assert_eq!(degree1_invariant(&DescendentKey::new([0])), rat_int(1));
        assert_eq!(degree1_invariant(&DescendentKey::new([2])), rat(1, 24));
        assert_eq!(degree1_invariant(&DescendentKey::new([1, 1])), rat_int(0));
        assert_eq!(degree1_invariant(&DescendentKey::new([2, 2])), rat(1, 576));
        assert_eq!(degree1_invariant(&DescendentKey::new([1, 3])), rat_int(0));
        // The empty invariant ⟨⟩_{0,1} = 1.
        assert_eq!(degree1_invariant(&DescendentKey::new([])), rat_int(1));
    }

    #[test]
    fn key_is_a_multiset() {
        assert_eq!(DescendentKey::new([4, 0, 2]), DescendentKey::new([0, 2, 4]));
        assert_eq!(DescendentKey::parse("4,0,2").unwrap().indices(), &[0, 2, 4]);
        assert_eq!(DescendentKey::parse("").unwrap().indices(), &[] as &[u32]);
        assert!(DescendentKey::parse("2,-1").is_err());
        assert_eq!(DescendentKey::new([2, 4]).genus(), Some(3));
        assert_eq!(DescendentKey::new([1]).genus(), None);
    }

    #[test]
    fn invariant_is_multiplicative_and_ignores_index_zero() {
        let keys = [
            DescendentKey::new([]),
            DescendentKey::new([2]),
            DescendentKey::new([2, 4]),
            DescendentKey::new([6, 2, 2]),
        ];
        for a in &keys {
            for b in &keys {
                assert_eq!(
                    degree1_invariant(&a.union(b)),
                    degree1_invariant(a) * degree1_invariant(b)
                );
            }
            let padded = a.union(&DescendentKey::new([0]));
            assert_eq!(degree1_invariant(&padded), degree1_invariant(a));
        }
    }

    #[test]
    fn generating_check_hand_values() {
        let report = degree1_generating_check(2, 4, 4);
        assert!(report.is_zero(), "mismatches: {:?}", report.mismatches);
        assert!(report.monomials_checked > 0);

        // Hand expansion of the y_2² slot at λ⁴: both sides 1/1152.
        let check = degree1_generating_check(2, 2, 2);
        assert!(check.is_zero());
        let key = DescendentKey::new([2, 2]);
        let both = degree1_invariant(&key) / rat_int(2);
        assert_eq!(both, rat(1, 1152));
    }

    #[test]
    fn consistency_with_y1() {
        assert!(degree1_consistency_with_y1(20));
    }
}
