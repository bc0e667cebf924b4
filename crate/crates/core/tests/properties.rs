//! Property tests for the algebraic substrate and the arrangement layer.

mod common;

use common::{cl1, cl2, cl3, line, st};
use mcurves::arrangement::Arrangement;
use mcurves::exactpoly::hform::{monomial_basis, Exp};
use mcurves::exactpoly::rat::{rat, rat_i, Rat};
use mcurves::exactpoly::resultant_eliminating;
use mcurves::syzygy::{self, RankEngine, RankMode};
use mcurves::{HForm, Var};
use num::Zero;
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// Sparse random form of the given degree (possibly zero).
fn arb_form(max_degree: usize) -> impl Strategy<Value = HForm> {
    (0..=max_degree).prop_flat_map(move |d| {
        let monos = monomial_basis(d);
        let n = monos.len();
        proptest::collection::vec((0..n, arb_rat()), 1..=6).prop_map(move |picks| {
            let terms: Vec<(Exp, Rat)> =
                picks.into_iter().map(|(i, c)| (monos[i], c)).collect();
            HForm::from_terms(d, terms).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    // Euler relation x fx + y fy + z fz = deg(f) f on random forms
    #[test]
    fn euler_relation(f in arb_form(8)) {
        let x = line(1, 0, 0);
        let y = line(0, 1, 0);
        let z = line(0, 0, 1);
        let lhs = &(&(&x * &f.partial(Var::X)) + &(&y * &f.partial(Var::Y)))
            + &(&z * &f.partial(Var::Z));
        let rhs = f.scale(&rat_i(f.degree() as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiply_commutative_and_associative(
        a in arb_form(4),
        b in arb_form(4),
        c in arb_form(3),
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    // restriction to a line is multiplicative
    #[test]
    fn restriction_multiplicative(
        f in arb_form(4),
        g in arb_form(4),
        la in -4i64..=4,
        lb in -4i64..=4,
        lc in -4i64..=4,
    ) {
        prop_assume!(la != 0 || lb != 0 || lc != 0);
        let l = line(la, lb, lc);
        let rf = f.restrict_to_line(&l).unwrap();
        let rg = g.restrict_to_line(&l).unwrap();
        let rfg = (&f * &g).restrict_to_line(&l).unwrap();
        prop_assert_eq!(rfg, &rf * &rg);
    }
}

// resultant vanishes exactly on pairs with a common factor
#[test]
fn resultant_detects_planted_common_factors() {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut rand_line = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let l = line(
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
            rng.gen_range(1..=5), // positive degree in z
        );
        if !l.is_zero() {
            return l;
        }
    };
    for _ in 0..40 {
        let shared = rand_line(&mut rng);
        let a = rand_line(&mut rng);
        let b = rand_line(&mut rng);
        let f = &shared * &a;
        let g = &shared * &b;
        let res = resultant_eliminating(&f, &g, Var::Z).unwrap();
        assert!(res.is_zero(), "planted factor must kill the resultant");

        // coprime pair: distinct normalized lines
        if a.normalized() != b.normalized() {
            let res = resultant_eliminating(&a, &b, Var::Z).unwrap();
            assert!(!res.is_zero(), "coprime pair must have nonzero resultant");
        }
    }
}

// weak combinatorics is invariant under invertible changes of coordinates
#[test]
fn combinatorics_invariant_under_coordinate_changes() {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let fixtures = [cl1(), cl2(), cl3(), st()];
    let base: Vec<_> = fixtures
        .iter()
        .map(|arr| arr.weak_combinatorics(0).unwrap())
        .collect();
    let mut done = 0;
    while done < 10 {
        let mut m = [[Rat::zero(), Rat::zero(), Rat::zero()],
                     [Rat::zero(), Rat::zero(), Rat::zero()],
                     [Rat::zero(), Rat::zero(), Rat::zero()]];
        let mut e = [[0i64; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                e[r][c] = rng.gen_range(-5..=5);
                m[r][c] = rat_i(e[r][c]);
            }
        }
        let det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
            - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
            + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
        if det == 0 {
            continue;
        }
        done += 1;
        for (arr, wc) in fixtures.iter().zip(&base) {
            let lines: Vec<HForm> =
                arr.lines().iter().map(|f| f.substitute_linear(&m)).collect();
            let conics: Vec<HForm> =
                arr.conics().iter().map(|f| f.substitute_linear(&m)).collect();
            let moved = Arrangement::new(lines, conics).unwrap();
            let moved_wc = moved.weak_combinatorics(done as u64).unwrap();
            assert_eq!(&moved_wc, wc);
        }
    }
}

// conic trace bound: r <= 2 (d + 2(k-1))
#[test]
fn conic_trace_bounds() {
    for (arr, expect_r) in [(cl1(), 4), (cl2(), 6), (cl3(), 6)] {
        let r = arr.conic_trace(0, 0).unwrap();
        assert_eq!(r, expect_r);
        assert!(r <= 2 * (arr.d() + 2 * (arr.k() - 1)));
    }
    let r = st().conic_trace(0, 0).unwrap();
    assert!(r <= 2 * (st().d() + 2 * (st().k() - 1)));
}

// multiplicity equals the number of components vanishing at the witness
#[test]
fn multiplicity_matches_reevaluation() {
    use mcurves::arrangement::Witness;
    use mcurves::exactpoly::NumberField;
    for arr in [cl1(), cl2(), st()] {
        for p in arr.singular_points(0).unwrap() {
            let through = match &p.witness {
                Witness::Rational { coords } => arr
                    .component_ids()
                    .into_iter()
                    .filter(|id| {
                        arr.component(*id).unwrap().eval_rat(coords).is_zero()
                    })
                    .count(),
                Witness::Algebraic {
                    min_poly, coords, ..
                } => {
                    let field = NumberField::new(min_poly.clone()).unwrap();
                    arr.component_ids()
                        .into_iter()
                        .filter(|id| {
                            field.is_zero(
                                &field.eval_hform(arr.component(*id).unwrap(), coords),
                            )
                        })
                        .count()
                }
            };
            assert_eq!(p.multiplicity, through);
        }
    }
}

// KR(f) sits inside AR(f) degreewise
#[test]
fn koszul_contained_in_ar() {
    let engine = RankEngine::new(RankMode::ModularCertified, 0);
    let f = st().defining_form();
    for r in 0..=8 {
        let kr = syzygy::koszul_dimension(&f, r, &engine);
        let ar = syzygy::ar_dimension(&f, r, &engine);
        assert!(kr <= ar, "r = {r}: kr = {kr} > ar = {ar}");
    }
}

// rank-nullity across a spread of degrees on a golden fixture
#[test]
fn rank_nullity_on_st() {
    let engine = RankEngine::new(RankMode::ModularCertified, 0);
    let f = st().defining_form();
    for r in 0..=6 {
        let (lhs, rhs) = syzygy::rank_nullity_ar(&f, r, &engine);
        assert_eq!(lhs, rhs);
    }
}
