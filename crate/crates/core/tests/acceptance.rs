//! Acceptance suite: one test per exit criterion, each printing a
//! PASS line when its exact checks go through. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! Every comparison in this file is exact rational equality; there are no
//! tolerances to tune.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use todasphere::closed_forms::{harmonic, one_point_x_closed, one_point_y_closed};
use todasphere::degree_one::{degree1_consistency_with_y1, degree1_generating_check};
use todasphere::genus01::{
    genus1_check_with, verify_genus0_small_phase, verify_genus1_toda, Derivation,
    DerivationTable, DiffPoly, Monomial, Var, DEFAULT_MAX_INDEX,
};
use todasphere::oracle::{hurwitz_oracle, hurwitz_oracle_direct, OracleConfig};
use todasphere::rational::{rat, rat_int, Rat};
use todasphere::series::Series;
use todasphere::toda::{hurwitz_by_recursion, one_point_by_recursion, toda_residual_h};

fn pass(criterion: &str) {
    println!("acceptance: {criterion}: PASS");
}

/// 1. The Toda-derived recursion and the transposition-count oracle agree
///    exactly on every cell within the stated resource window.
#[test]
fn criterion_1_hurwitz_cross_validation() {
    let config = OracleConfig::default();
    let table = hurwitz_by_recursion(6, 5);
    let mut dp_cells = 0;
    for d in 1..=5u32 {
        for g in 0..=6u32 {
            if 2 * g + 2 * d - 2 > 12 {
                continue;
            }
            let recursion = table.get(g, d).unwrap();
            let oracle = hurwitz_oracle(g, d, &config).unwrap();
            assert_eq!(recursion, &oracle, "dp-sieve mismatch at (g,d)=({g},{d})");
            dp_cells += 1;
        }
    }
    let mut direct_cells = 0;
    for d in 1..=3u32 {
        for g in 0..=4u32 {
            if 2 * g + 2 * d - 2 > 8 {
                continue;
            }
            let recursion = table.get(g, d).unwrap();
            let oracle = hurwitz_oracle_direct(g, d, &config).unwrap();
            assert_eq!(recursion, &oracle, "direct mismatch at (g,d)=({g},{d})");
            direct_cells += 1;
        }
    }
    assert!(dp_cells >= 14 && direct_cells >= 9);
    pass("criterion 1 (Hurwitz recursion = oracle, dp-sieve d<=5 r<=12, direct d<=3 r<=8)");
}

/// 2. The anchor values come out exactly.
#[test]
fn criterion_2_anchor_values() {
    let table = hurwitz_by_recursion(4, 3);
    assert_eq!(table.get(0, 1).unwrap(), &rat_int(1));
    for g in 1..=4 {
        assert_eq!(table.get(g, 1).unwrap(), &rat_int(0), "H({g},1)");
    }
    assert_eq!(table.get(0, 2).unwrap(), &rat(1, 2));
    assert_eq!(table.get(1, 2).unwrap(), &rat(1, 2));
    assert_eq!(table.get(0, 3).unwrap(), &rat_int(4));
    pass("criterion 2 (anchors H(0,1)=1, H(g,1)=0, H(0,2)=1/2, H(1,2)=1/2, H(0,3)=4)");
}

/// 3. The 1-point recursion reproduces the closed forms through λ^20 for
///    d ≤ 6, and the constant terms carry the genus-0 formulas.
#[test]
fn criterion_3_one_point_consistency() {
    let order = 20;
    let series = one_point_by_recursion(6, order);
    for d in 1..=6u32 {
        let (y, x) = &series[d as usize];
        assert_eq!(y, &one_point_y_closed(d, order), "Y_{d}");
        assert_eq!(x, &one_point_x_closed(d, order), "X_{d}");
        let fact_sq = {
            let f = Rat::from_integer(todasphere::combinatorics::factorial(d as usize));
            &f * &f
        };
        assert_eq!(y.coeff(0), &fact_sq.recip(), "⟨τ_{{2d−2}}(y)⟩ at d={d}");
        assert_eq!(
            x.coeff(0),
            &(rat_int(-2) * harmonic(d) / fact_sq),
            "⟨τ_{{2d−1}}(x)⟩ at d={d}"
        );
    }
    pass("criterion 3 (one-point recursion = closed forms, d<=6, λ^20)");
}

/// 4. The genus-1 identity holds, and random single-entry perturbations of
///    the derivation table break it.
#[test]
fn criterion_4_genus1_identity() {
    assert!(verify_genus1_toda(), "genus-1 identity must hold");

    let mut rng = StdRng::seed_from_u64(0x70da);
    let entries = [
        (Derivation::X0, Var::Q),
        (Derivation::X0, Var::A(1)),
        (Derivation::X0, Var::B(1)),
        (Derivation::X0, Var::A(2)),
        (Derivation::Y0, Var::Q),
        (Derivation::Y0, Var::A(0)),
        (Derivation::Y0, Var::A(1)),
        (Derivation::Y0, Var::B(1)),
    ];
    let vars = [Var::A(0), Var::A(1), Var::B(0), Var::B(1), Var::Q];
    for trial in 0..5 {
        let (which, target) = entries[rng.gen_range(0..entries.len())];
        let mut delta = DiffPoly::constant(rat_int(rng.gen_range(1..=5)));
        let factors = rng.gen_range(0..=2);
        let mut monomial = Monomial::one();
        for _ in 0..factors {
            monomial = monomial.mul(&Monomial::var(vars[rng.gen_range(0..vars.len())]));
        }
        delta = &delta * &{
            let mut p = DiffPoly::zero();
            p.add_term(monomial, rat_int(1));
            p
        };
        let mut table = DerivationTable::standard(DEFAULT_MAX_INDEX);
        table.perturb(which, target, &delta);
        let check = genus1_check_with(&table);
        assert!(
            !check.holds(),
            "perturbation {trial} ({which:?} image of {target}, +{delta}) kept the identity"
        );
    }
    pass("criterion 4 (genus-1 identity holds; 5 random table perturbations break it)");
}

/// 5. The genus-0 identity on the small phase space.
#[test]
fn criterion_5_genus0_identity() {
    assert!(verify_genus0_small_phase(20));
    pass("criterion 5 (genus-0 small-phase-space identity)");
}

/// 6. The degree-1 generating identity expands to zero residual, and the
///    product rule matches the closed 1-point series at degree 1.
#[test]
fn criterion_6_degree1_generating_identity() {
    for genus_bound in 0..=4u32 {
        let report = degree1_generating_check(genus_bound, 8, 2 * genus_bound + 2);
        assert!(
            report.is_zero(),
            "G={genus_bound}: first mismatch {:?}",
            report.mismatches.first()
        );
    }
    assert!(degree1_consistency_with_y1(20));
    pass("criterion 6 (degree-1 generating identity, G<=4 over y_0..y_8; Y_1 consistency λ^20)");
}

/// 7. The functional residual of the recursion table vanishes through
///    (G,D) = (3,5), and a unit bump of any one entry surfaces in the
///    predicted (q^{d−1}, λ^{2g}) cell.
#[test]
fn criterion_7_toda_functional_check() {
    let table = hurwitz_by_recursion(3, 5);
    let residual = toda_residual_h(&table, 3, 5).unwrap();
    assert!(
        residual.is_zero(),
        "residual at {:?}",
        residual.first_nonzero().map(|(d, k, c)| (d, k, c.clone()))
    );
    for d in 1..=5u32 {
        for g in 0..=3u32 {
            let mut tampered = table.clone();
            tampered.insert(g, d, table.get(g, d).unwrap() + rat_int(1));
            let perturbed = toda_residual_h(&tampered, 3, 5).unwrap();
            let cell = perturbed.slice(d as usize - 1).coeff(2 * g as usize);
            assert!(
                !cell.is_zero(),
                "bumping H({g},{d}) left the (q^{}, λ^{}) cell zero",
                d - 1,
                2 * g
            );
        }
    }
    pass("criterion 7 (Toda functional residual zero at G=3, D=5; perturbations localized)");
}

/// 8. Randomized series-engine properties, 120 cases each, exact equality.
#[test]
fn criterion_8_series_property_suite() {
    let mut rng = StdRng::seed_from_u64(0x5e41e5);
    let cases = 120;

    let rand_rat = |rng: &mut StdRng| rat(rng.gen_range(-30..=30), rng.gen_range(1..=20));
    let rand_series = |rng: &mut StdRng, min_order: usize| {
        let order = rng.gen_range(min_order..=10);
        Series::from_coeffs((0..=order).map(|_| rand_rat(rng)).collect())
    };
    let with_constant = |s: &Series, c: Rat| {
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = c;
        Series::from_coeffs(coeffs)
    };
    let derivative = |s: &Series| {
        Series::from_fn(s.order() - 1, |k| s.coeff(k + 1) * rat_int((k + 1) as i64))
    };

    for _ in 0..cases {
        // exp/log round-trips.
        let f = with_constant(&rand_series(&mut rng, 1), Rat::zero());
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        let g = with_constant(&rand_series(&mut rng, 1), rat_int(1));
        assert_eq!(g.log().unwrap().exp().unwrap(), g);

        // Derivative rule (Leibniz for exp).
        let h = with_constant(&rand_series(&mut rng, 2), Rat::zero());
        let e = h.exp().unwrap();
        assert_eq!(derivative(&e), &derivative(&h) * &e);

        // Commutativity and associativity.
        let (a, b, c) = (
            rand_series(&mut rng, 0),
            rand_series(&mut rng, 0),
            rand_series(&mut rng, 0),
        );
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));

        // Division round-trip against multiplication.
        let unit = with_constant(&rand_series(&mut rng, 0), rat_int(1));
        let q = a.div(&unit).unwrap();
        let back = &q * &unit;
        let order = back.order();
        assert_eq!(back, a.truncate(order));

        // Order stability: lower-order recomputation reproduces prefixes.
        let n = a.order().min(b.order());
        let small = n.saturating_sub(2);
        assert_eq!((&a + &b).truncate(small), &a.truncate(small) + &b.truncate(small));
        assert_eq!((&a * &b).truncate(small), &a.truncate(small) * &b.truncate(small));
        let f_small = f.truncate(f.order().saturating_sub(1));
        assert_eq!(
            f.exp().unwrap().truncate(f_small.order()),
            f_small.exp().unwrap()
        );
    }
    pass("criterion 8 (series engine property suite, 120 random cases per law)");
}
