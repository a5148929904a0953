//! Ground-truth Hurwitz numbers from symmetric-group combinatorics.
//!
//! H_{g,d} is computed here as the number of ordered tuples of
//! r = 2g+2d−2 transpositions in the symmetric group on d points whose
//! product is the identity and whose factors act transitively, divided
//! by d!. This path never touches the Toda recursion and validates it.
//!
//! Two backends are layered:
//!
//! - direct enumeration over all tuples with an explicit orbit check,
//!   feasible only for tiny (d, r) — the oracle's own oracle;
//! - a dynamic program over the full group (elements addressed by Lehmer
//!   rank) counting identity products, then a sieve over set partitions
//!   of the d points that isolates the transitive part, feasible through
//!   d = 7 (5040 elements, 877 partitions).
//!
//! Character theory is deliberately avoided: every intermediate count is
//! an exact big integer.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinatorics::factorial;
use crate::hurwitz_table::HurwitzTable;
use crate::rational::Rat;

/// Hard cap on tuple count for the direct backend.
const DIRECT_WORK_LIMIT: u128 = 20_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("degree {d} exceeds the configured oracle bound {bound}; the group tables grow like d!, raise the bound explicitly if you mean it")]
    DegreeBound { d: usize, bound: usize },
    #[error("direct enumeration would visit {tuples} tuples (limit {DIRECT_WORK_LIMIT}); use the dp-sieve backend")]
    WorkLimit { tuples: u128 },
}

/// Resource guard for the oracle backends.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Largest degree (number of sheets) the group-table backend accepts.
    pub max_degree: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_degree: 7 }
    }
}

impl OracleConfig {
    fn check_degree(&self, d: usize) -> Result<(), OracleError> {
        if d > self.max_degree {
            Err(OracleError::DegreeBound {
                d,
                bound: self.max_degree,
            })
        } else {
            Ok(())
        }
    }
}

/// A permutation of {0, …, d−1} in image form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection.
    pub fn new(images: Vec<usize>) -> Self {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            assert!(i < d && !seen[i], "images must form a permutation");
            seen[i] = true;
        }
        Permutation { images }
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: (0..self.degree())
                .map(|i| self.images[other.images[i]])
                .collect(),
        }
    }

    /// The transposition swapping points `a` and `b`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        assert!(a < d && b < d && a != b);
        let mut images: Vec<usize> = (0..d).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// Lehmer rank in 0 … d!−1; the identity ranks 0.
    pub fn lehmer_rank(&self) -> usize {
        let d = self.degree();
        let mut rank = 0usize;
        for i in 0..d {
            let code = self.images[i + 1..]
                .iter()
                .filter(|&&p| p < self.images[i])
                .count();
            rank = rank * (d - i) + code;
        }
        rank
    }

    /// Inverse of [`Permutation::lehmer_rank`].
    pub fn from_lehmer_rank(mut rank: usize, d: usize) -> Self {
        let mut codes = vec![0usize; d];
        for i in (0..d).rev() {
            codes[i] = rank % (d - i);
            rank /= d - i;
        }
        debug_assert_eq!(rank, 0, "rank out of range");
        let mut pool: Vec<usize> = (0..d).collect();
        let images = codes.iter().map(|&c| pool.remove(c)).collect();
        Permutation { images }
    }
}

fn transposition_pairs(d: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            pairs.push((a, b));
        }
    }
    pairs
}

/// For each transposition τ, the table m ↦ rank(σ_m ∘ τ).
///
/// σ ∘ (a b) swaps the images at positions a and b, so each table is a
/// fixed-point-free involution of the rank space.
fn compose_tables(d: usize) -> Vec<Vec<u32>> {
    let n = factorial_usize(d);
    transposition_pairs(d)
        .into_iter()
        .map(|(a, b)| {
            (0..n)
                .map(|m| {
                    let mut p = Permutation::from_lehmer_rank(m, d);
                    p.images.swap(a, b);
                    p.lehmer_rank() as u32
                })
                .collect()
        })
        .collect()
}

fn factorial_usize(d: usize) -> usize {
    (1..=d).product::<usize>().max(1)
}

/// Counts of identity products A(d, r) for every r = 0 … rmax at once:
/// one DP pass, convolving with the transposition class indicator.
fn identity_counts(d: usize, rmax: usize) -> Vec<BigUint> {
    let n = factorial_usize(d);
    let tables = compose_tables(d);
    let mut counts = vec![BigUint::zero(); n];
    counts[0] = BigUint::one();
    let mut out = Vec::with_capacity(rmax + 1);
    out.push(BigUint::one());
    for _ in 1..=rmax {
        let mut next = vec![BigUint::zero(); n];
        for (m, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for table in &tables {
                next[table[m] as usize] += c;
            }
        }
        counts = next;
        out.push(counts[0].clone());
    }
    out
}

/// Every set partition of {0, …, d−1}, via restricted growth strings.
fn set_partitions(d: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rgs: &mut Vec<usize>, d: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if rgs.len() == d {
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            let mut partition = vec![Vec::new(); blocks];
            for (point, &block) in rgs.iter().enumerate() {
                partition[block].push(point);
            }
            out.push(partition);
            return;
        }
        let next_free = rgs.iter().max().map_or(0, |m| m + 1);
        for block in 0..=next_free {
            rgs.push(block);
            go(rgs, d, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), d, &mut out);
    out
}

/// Transitive factorization counts T(d, r) for all d ≤ dmax, r ≤ rmax,
/// solved from the identity counts by the set-partition sieve.
pub struct TransitiveCounts {
    all: Vec<Vec<BigUint>>,
    transitive: Vec<Vec<BigUint>>,
}

impl TransitiveCounts {
    pub fn compute(dmax: usize, rmax: usize, config: &OracleConfig) -> Result<Self, OracleError> {
        assert!(dmax >= 1);
        config.check_degree(dmax)?;
        // Row 0 (degree 0) is unused padding so rows index by degree.
        let mut all: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); rmax + 1]];
        let mut transitive: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); rmax + 1]];
        for d in 1..=dmax {
            let a_row = identity_counts(d, rmax);
            let splittings: Vec<Vec<usize>> = set_partitions(d)
                .into_iter()
                .filter(|p| p.len() > 1)
                .map(|p| p.iter().map(Vec::len).collect())
                .collect();
            let mut t_row = vec![BigUint::zero(); rmax + 1];
            for r in 0..=rmax {
                // Subtract every way the r factors split over a partition
                // with more than one block; what is left is transitive.
                let mut intransitive = BigUint::zero();
                for sizes in &splittings {
                    intransitive += distribute(sizes, r, &transitive);
                }
                assert!(
                    a_row[r] >= intransitive,
                    "sieve produced a negative transitive count"
                );
                t_row[r] = &a_row[r] - &intransitive;
            }
            all.push(a_row);
            transitive.push(t_row);
        }
        Ok(TransitiveCounts { all, transitive })
    }

    pub fn all_tuples(&self, d: usize, r: usize) -> &BigUint {
        &self.all[d][r]
    }

    pub fn transitive_tuples(&self, d: usize, r: usize) -> &BigUint {
        &self.transitive[d][r]
    }
}

/// Σ over (r_1, …, r_m) with Σ r_j = r of multinomial(r; r_1…) · Π T(b_j, r_j),
/// computed recursively with binomials over the remaining slots.
fn distribute(block_sizes: &[usize], r: usize, transitive: &[Vec<BigUint>]) -> BigUint {
    let Some((&first, rest)) = block_sizes.split_first() else {
        return if r == 0 { BigUint::one() } else { BigUint::zero() };
    };
    let mut total = BigUint::zero();
    for r1 in 0..=r {
        let t = &transitive[first][r1];
        if t.is_zero() {
            continue;
        }
        let tail = distribute(rest, r - r1, transitive);
        if tail.is_zero() {
            continue;
        }
        let choose: BigUint = crate::combinatorics::binomial(r, r1)
            .try_into()
            .expect("binomial is non-negative");
        total += choose * t * tail;
    }
    total
}

/// Both counts for one (degree, factor-count) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCount {
    pub degree: usize,
    pub factors: usize,
    /// Tuples with product identity, transitivity not required.
    pub all_count: BigUint,
    /// The transitive subset; never exceeds `all_count`, and both vanish
    /// for odd factor counts.
    pub transitive_count: BigUint,
}

/// Counts via the DP + sieve backend, packaged together.
pub fn factorization_count(
    d: usize,
    r: usize,
    config: &OracleConfig,
) -> Result<FactorizationCount, OracleError> {
    assert!(d >= 1);
    let counts = TransitiveCounts::compute(d, r, config)?;
    Ok(FactorizationCount {
        degree: d,
        factors: r,
        all_count: counts.all_tuples(d, r).clone(),
        transitive_count: counts.transitive_tuples(d, r).clone(),
    })
}

/// Ordered tuples of r transpositions on d points multiplying to the
/// identity (transitivity not required). DP backend.
pub fn count_identity_tuples(
    d: usize,
    r: usize,
    config: &OracleConfig,
) -> Result<BigUint, OracleError> {
    assert!(d >= 1);
    config.check_degree(d)?;
    Ok(identity_counts(d, r).pop().expect("rmax entry present"))
}

/// Identity tuples whose factors generate a transitive group. DP + sieve.
pub fn count_transitive_tuples(
    d: usize,
    r: usize,
    config: &OracleConfig,
) -> Result<BigUint, OracleError> {
    assert!(d >= 1);
    let counts = TransitiveCounts::compute(d, r, config)?;
    Ok(counts.transitive_tuples(d, r).clone())
}

/// Direct enumeration of all r-tuples with an explicit product and orbit
/// check. Only for small cases; this is the independent check on the DP.
pub fn count_tuples_direct(
    d: usize,
    r: usize,
    config: &OracleConfig,
) -> Result<(BigUint, BigUint), OracleError> {
    assert!(d >= 1);
    config.check_degree(d)?;
    let pairs = transposition_pairs(d);
    if r > 0 && pairs.is_empty() {
        return Ok((BigUint::zero(), BigUint::zero()));
    }
    match (pairs.len().max(1) as u128).checked_pow(r as u32) {
        Some(t) if t <= DIRECT_WORK_LIMIT => {}
        t => {
            return Err(OracleError::WorkLimit {
                tuples: t.unwrap_or(u128::MAX),
            })
        }
    }
    let mut all = BigUint::zero();
    let mut transitive = BigUint::zero();
    let mut digits = vec![0usize; r];
    loop {
        // Product τ_1 ⋯ τ_r applied left to right to each point.
        let mut images: Vec<usize> = (0..d).collect();
        for &i in digits.iter().rev() {
            let (a, b) = pairs[i];
            images.swap(a, b);
        }
        if images.iter().enumerate().all(|(i, &p)| i == p) {
            all += 1u32;
            if is_transitive(d, digits.iter().map(|&i| pairs[i])) {
                transitive += 1u32;
            }
        }
        // Odometer.
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok((all, transitive));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < pairs.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Orbit check: the factors act transitively iff the graph with one edge
/// per transposition connects all d points.
fn is_transitive(d: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = d;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

/// H_{g,d} by the transposition count: transitive tuples of length
/// 2g+2d−2 divided by d!.
pub fn hurwitz_oracle(g: u32, d: u32, config: &OracleConfig) -> Result<Rat, OracleError> {
    assert!(d >= 1);
    let r = branch_points(g, d);
    let count = count_transitive_tuples(d as usize, r, config)?;
    Ok(normalize(count, d))
}

/// Same value through the direct-enumeration backend.
pub fn hurwitz_oracle_direct(g: u32, d: u32, config: &OracleConfig) -> Result<Rat, OracleError> {
    assert!(d >= 1);
    let r = branch_points(g, d);
    let (_, transitive) = count_tuples_direct(d as usize, r, config)?;
    Ok(normalize(transitive, d))
}

/// Fills a full table through (gmax, dmax) with one DP + sieve pass.
pub fn hurwitz_oracle_table(
    gmax: u32,
    dmax: u32,
    config: &OracleConfig,
) -> Result<HurwitzTable, OracleError> {
    assert!(dmax >= 1);
    let rmax = branch_points(gmax, dmax);
    let counts = TransitiveCounts::compute(dmax as usize, rmax, config)?;
    let mut table = HurwitzTable::new(gmax, dmax);
    for g in 0..=gmax {
        for d in 1..=dmax {
            let r = branch_points(g, d);
            table.insert(g, d, normalize(counts.transitive_tuples(d as usize, r).clone(), d));
        }
    }
    Ok(table)
}

/// The number of simple branch points, 2g+2d−2.
pub fn branch_points(g: u32, d: u32) -> usize {
    (2 * g + 2 * d - 2) as usize
}

fn normalize(count: BigUint, d: u32) -> Rat {
    Rat::new(BigInt::from(count), factorial(d as usize))
}
