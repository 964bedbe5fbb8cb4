mod common;

use proptest::prelude::*;

use muhzv::coeff_ring::{int, rat, MuPoly, Rational};
use muhzv::comparison::{rho_mixed, rho_mixed_direct, rho_sh, rho_st};
use muhzv::numeric_eval::{nested_sum_at, truncated_sum, zeta_mu_levels, Evaluator};
use muhzv::relations::{gen_dsh_relations, zeta2_expr, AUDIT_THRESHOLD};
use muhzv::shuffle_algebra::{decompose_sh, is_in_x0, psi_sh, shuffle, shuffle_bruteforce, XPoly};
use muhzv::stuffle_algebra::{decompose_st, is_in_y0, mu_stuffle, odot, psi_st, zeta_partial_sum, YPoly};
use muhzv::symbolic_values::{
    linearize, reg_sh, reg_star, reg_star_poly, t_power, tpoly_mul, zeta_sh_sym, zeta_star_sym, GExpr, TPolyG,
};
use muhzv::word_core::{bs, bs_inv, phi_mu, phi_mu_inv, BiIndex, Word, XLetter, XWord, YLetter, YWord};

fn shift() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![int(1), rat(1, 2), int(2), int(3), rat(3, 2)])
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn mupoly() -> impl Strategy<Value = MuPoly> {
    prop::collection::vec(small_rat(), 0..4).prop_map(MuPoly::new)
}

fn letter(max_k: u32) -> impl Strategy<Value = YLetter> {
    (1..=max_k, shift()).prop_map(|(k, m)| YLetter::new(k, m))
}

/// Y-words with length ≤ `max_len` and weight ≤ `max_weight`.
fn yword(max_len: usize, max_weight: u32) -> impl Strategy<Value = YWord> {
    prop::collection::vec(letter(3), 0..=max_len)
        .prop_map(Word)
        .prop_filter("weight", move |w| w.weight() <= max_weight)
}

fn admissible_yword(max_len: usize, max_weight: u32) -> impl Strategy<Value = YWord> {
    (yword(max_len.saturating_sub(1), max_weight.saturating_sub(2)), 2..=3u32, shift()).prop_filter_map(
        "weight",
        move |(w, k, m)| {
            let w = w.with_letter(YLetter::new(k, m));
            (w.weight() <= max_weight).then_some(w)
        },
    )
}

fn positive_biindex() -> impl Strategy<Value = BiIndex> {
    prop::collection::vec((1..=4u32, shift()), 1..=4)
        .prop_map(|v| BiIndex::new(v.iter().map(|p| p.0).collect(), v.iter().map(|p| p.1.clone()).collect()).unwrap())
}

fn xletter() -> impl Strategy<Value = XLetter> {
    prop_oneof![Just(XLetter::X), prop::sample::select(vec![int(1), rat(1, 2), int(-1), int(2)]).prop_map(XLetter::Y)]
}

fn xword(max_len: usize) -> impl Strategy<Value = XWord> {
    prop::collection::vec(xletter(), 0..=max_len).prop_map(Word)
}

fn y(w: &YWord) -> YPoly {
    YPoly::from_word(w.clone())
}

fn x(w: &XWord) -> XPoly {
    XPoly::from_word(w.clone())
}

fn phi_poly(p: &YPoly) -> XPoly {
    let mut out = XPoly::zero();
    for (w, c) in p.terms() {
        out.add_term(phi_mu(w), c);
    }
    out
}

/// Quasi-admissible difference w·y_{1,a} − w·y_{1,b}.
fn quasi_difference() -> impl Strategy<Value = YPoly> {
    (yword(2, 3), shift(), shift()).prop_filter_map("distinct tails", |(w, a, b)| {
        (a != b).then(|| &y(&w.with_letter(YLetter::new(1, a))) - &y(&w.with_letter(YLetter::new(1, b))))
    })
}

fn y0_element() -> impl Strategy<Value = YPoly> {
    prop_oneof![admissible_yword(3, 5).prop_map(|w| y(&w)), quasi_difference()]
}

fn eval_all(mu: &Rational, p: &TPolyG) -> Vec<f64> {
    let mut ev = Evaluator::new(mu.clone(), 1e-10);
    p.coeffs.iter().map(|c| ev.expr(c).unwrap().value).collect()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    (0..a.len().max(b.len())).all(|i| (a.get(i).unwrap_or(&0.0) - b.get(i).unwrap_or(&0.0)).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mupoly_ring_axioms(p in mupoly(), q in mupoly(), r in mupoly()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn mupoly_eval_is_homomorphism(p in mupoly(), q in mupoly(), mu in small_rat()) {
        prop_assert_eq!((&p * &q).eval(&mu), p.eval(&mu) * q.eval(&mu));
        prop_assert_eq!((&p + &q).eval(&mu), p.eval(&mu) + q.eval(&mu));
    }

    #[test]
    fn bs_roundtrip(b in positive_biindex()) {
        prop_assert_eq!(bs_inv(&bs(&b)).unwrap(), b);
    }

    #[test]
    fn phi_preserves_length_weight_admissibility(w in yword(4, 8)) {
        let p = phi_mu(&w);
        prop_assert_eq!(p.depth(), w.len());
        prop_assert_eq!(p.weight() as u32, w.weight());
        prop_assert_eq!(p.is_admissible(), w.is_admissible());
        prop_assert!(w.is_empty() || p.is_positive());
        prop_assert_eq!(phi_mu_inv(&p).unwrap(), w);
    }

    #[test]
    fn phi_maps_y0_into_x0(p in y0_element()) {
        prop_assert!(is_in_y0(&p));
        prop_assert!(is_in_x0(&phi_poly(&p)));
    }

    #[test]
    fn stuffle_commutative_associative(u in yword(3, 5), v in yword(3, 5), w in yword(2, 4)) {
        let (u, v, w) = (y(&u), y(&v), y(&w));
        prop_assert_eq!(mu_stuffle(&u, &v), mu_stuffle(&v, &u));
        prop_assert_eq!(mu_stuffle(&mu_stuffle(&u, &v), &w), mu_stuffle(&u, &mu_stuffle(&v, &w)));
    }

    #[test]
    fn odot_commutative_associative(a in letter(3), b in letter(3), c in letter(3)) {
        prop_assert_eq!(odot(&a, &b), odot(&b, &a));
        let left: YPoly = odot(&a, &b).terms().fold(YPoly::zero(), |acc, (w, k)| {
            &acc + &odot(&w.letters()[0], &c).scale(k)
        });
        let right: YPoly = odot(&b, &c).terms().fold(YPoly::zero(), |acc, (w, k)| {
            &acc + &odot(&a, &w.letters()[0]).scale(k)
        });
        prop_assert_eq!(left, right);
    }

    #[test]
    fn y0_closed_under_stuffle(p in y0_element(), q in y0_element()) {
        prop_assert!(is_in_y0(&mu_stuffle(&p, &q)));
    }

    #[test]
    fn decompose_st_roundtrip(w in yword(4, 7), m in shift()) {
        prop_assert_eq!(psi_st(&decompose_st(&w, &m), &m), y(&w));
    }

    #[test]
    fn shuffle_commutative_associative(u in xword(3), v in xword(3), w in xword(3)) {
        let (u, v, w) = (x(&u), x(&v), x(&w));
        prop_assert_eq!(shuffle(&u, &v), shuffle(&v, &u));
        prop_assert_eq!(shuffle(&shuffle(&u, &v), &w), shuffle(&u, &shuffle(&v, &w)));
    }

    #[test]
    fn shuffle_matches_bruteforce(u in xword(5), v in xword(5)) {
        let rec = shuffle(&x(&u), &x(&v));
        prop_assert_eq!(&rec, &shuffle_bruteforce(&u, &v).unwrap());
        prop_assert!(common::counts_match(&rec, &common::shuffle_counts(u.letters(), v.letters())));
    }

    #[test]
    fn x0_closed_under_shuffle(p in y0_element(), q in y0_element()) {
        prop_assert!(is_in_x0(&shuffle(&phi_poly(&p), &phi_poly(&q))));
    }

    #[test]
    fn decompose_sh_roundtrip(w in yword(4, 7).prop_filter("nonempty", |w| !w.is_empty()), m in shift()) {
        let xw = phi_mu(&w);
        prop_assert_eq!(psi_sh(&decompose_sh(&xw, &m).unwrap(), &m), x(&xw));
    }

    #[test]
    fn star_and_shuffle_values_agree_on_y0(p in y0_element()) {
        prop_assert_eq!(zeta_star_sym(&p).unwrap(), zeta_sh_sym(&phi_poly(&p)).unwrap());
    }

    #[test]
    fn partial_sums_match_enumeration(w in yword(3, 5), mu in prop::sample::select(vec![int(1), int(2), rat(1, 3)])) {
        prop_assert_eq!(zeta_partial_sum(&w, &mu, 6), common::enumerated_partial_sum(&w, &mu, 6));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reg_star_is_multiplicative(u in yword(2, 3), v in yword(2, 3), m in shift()) {
        let lhs = reg_star_poly(&mu_stuffle(&y(&u), &y(&v)), &m);
        let prod = tpoly_mul(&reg_star(&u, &m), &reg_star(&v, &m));
        let rhs = TPolyG::new(prod.coeffs.iter().map(|c| linearize(c).unwrap()).collect());
        prop_assert!(close(&eval_all(&int(1), &lhs), &eval_all(&int(1), &rhs), 1e-8));
    }

    #[test]
    fn reg_sh_is_multiplicative(u in yword(2, 3).prop_filter("nonempty", |w| !w.is_empty()),
                                v in yword(2, 3).prop_filter("nonempty", |w| !w.is_empty()),
                                m in shift(), mu in prop::sample::select(vec![int(1), int(2)])) {
        let (pu, pv) = (phi_mu(&u), phi_mu(&v));
        let lhs = muhzv::symbolic_values::reg_sh_poly(&shuffle(&x(&pu), &x(&pv)), &m).unwrap();
        let rhs = tpoly_mul(&reg_sh(&pu, &m).unwrap(), &reg_sh(&pv, &m).unwrap());
        prop_assert!(close(&eval_all(&mu, &lhs), &eval_all(&mu, &rhs), 1e-8));
    }

    #[test]
    fn linearize_preserves_value(u in admissible_yword(2, 4), v in admissible_yword(2, 4),
                                 mu in prop::sample::select(vec![int(1), rat(1, 2), int(2)])) {
        let e = &GExpr::zeta_mu(u.to_biindex().unwrap()).unwrap() * &GExpr::zeta_mu(v.to_biindex().unwrap()).unwrap();
        let mut ev = Evaluator::new(mu, 1e-10);
        let a = ev.expr(&e).unwrap();
        let b = ev.expr(&linearize(&e).unwrap()).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.err_bound + b.err_bound + 1e-9);
    }

    #[test]
    fn stuffle_and_shuffle_products_agree_numerically(u in admissible_yword(2, 4), v in admissible_yword(2, 4),
                                                      mu in prop::sample::select(vec![int(1), int(3)])) {
        let e = &GExpr::zeta_mu(u.to_biindex().unwrap()).unwrap() * &GExpr::zeta_mu(v.to_biindex().unwrap()).unwrap();
        let st = linearize(&e).unwrap();
        let sh = zeta_sh_sym(&shuffle(&x(&phi_mu(&u)), &x(&phi_mu(&v)))).unwrap();
        let mut ev = Evaluator::new(mu, 1e-10);
        let (a, b) = (ev.expr(&st).unwrap(), ev.expr(&sh).unwrap());
        prop_assert!((a.value - b.value).abs() <= a.err_bound + b.err_bound + 1e-9);
    }

    #[test]
    fn comparison_square(m1 in shift(), m1p in shift(), m2 in shift(), m2p in shift(), n in 0usize..=4,
                         mu in prop::sample::select(vec![int(1), int(2), rat(1, 2)])) {
        let p = t_power(n);
        let left = rho_sh(&m2, &m2p, &rho_mixed(&m1, &m2, &p));
        let right = rho_mixed(&m1p, &m2p, &rho_st(&m1, &m1p, &p));
        prop_assert!(close(&eval_all(&mu, &left), &eval_all(&mu, &right), 1e-8));
    }

    #[test]
    fn mixed_map_closed_form_matches_direct(m in shift(), mp in shift(), s in 0usize..=4,
                                            mu in prop::sample::select(vec![int(1), int(2), rat(1, 2)])) {
        let closed = rho_mixed(&m, &mp, &t_power(s));
        let direct = rho_mixed_direct(&m, &mp, s).unwrap();
        prop_assert!(close(&eval_all(&mu, &closed), &eval_all(&mu, &direct), 1e-6));
    }

    #[test]
    fn mixed_map_relates_regularizations(w in yword(3, 4).prop_filter("nonempty", |w| !w.is_empty()),
                                         m in shift(), mp in shift(), mu in prop::sample::select(vec![int(1), int(2)])) {
        let sh = reg_sh(&phi_mu(&w), &mp).unwrap();
        let st = rho_mixed(&m, &mp, &reg_star(&w, &m));
        prop_assert!(close(&eval_all(&mu, &sh), &eval_all(&mu, &st), 1e-6));
    }

    #[test]
    fn cutoff_doubling_within_bounds(b in admissible_yword(2, 5), mu in prop::sample::select(vec![int(1), int(2), rat(1, 3)])) {
        let levels = zeta_mu_levels(&b.to_biindex().unwrap(), &mu);
        let r1 = nested_sum_at(&levels, 2_000).unwrap();
        let r2 = nested_sum_at(&levels, 4_000).unwrap();
        prop_assert!((r1.value - r2.value).abs() <= r1.err_bound + r2.err_bound);
    }

    #[test]
    fn truncation_matches_exact_partial_sum(w in yword(3, 6), big_m in 0usize..=100,
                                            mu in prop::sample::select(vec![int(1), int(2), rat(1, 3)])) {
        let exact = muhzv::coeff_ring::to_f64(&zeta_partial_sum(&w, &mu, big_m));
        let bi = BiIndex::new(w.letters().iter().map(|l| l.k).collect(), w.letters().iter().map(|l| l.m.clone()).collect()).unwrap();
        let float = truncated_sum(&zeta_mu_levels(&bi, &mu), big_m);
        prop_assert!((exact - float).abs() <= 1e-12 * (1.0 + exact.abs()), "{} vs {}", exact, float);
    }
}

#[test]
fn zeta2_identity_is_mu_invariant() {
    let target = 3.0 * std::f64::consts::PI.powi(2) / 6.0;
    for mu in [int(1), rat(1, 2), int(2), int(3)] {
        let v = Evaluator::new(mu, 1e-10).expr(&zeta2_expr()).unwrap().value;
        assert!((v - target).abs() < 1e-6);
    }
}

#[test]
fn relations_pass_audit_at_two_mu() {
    let rels = gen_dsh_relations(4, 3, &[int(1), int(2)], &int(1), &int(2)).unwrap();
    assert!(!rels.is_empty());
    for r in &rels {
        for mu in [int(2), rat(1, 3)] {
            let (v, scale) = Evaluator::new(mu, 1e-10).expr_with_scale(&r.lhs).unwrap();
            assert!(v.value.abs() <= AUDIT_THRESHOLD * (1.0 + scale), "{}", r.lhs);
        }
    }
}

#[test]
fn relations_are_deterministic() {
    let render = || {
        let rels = gen_dsh_relations(4, 2, &[int(2), int(1)], &int(1), &int(2)).unwrap();
        rels.iter().map(|r| muhzv::json::relation_to_json(r).to_string()).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(render(), render());
}

#[test]
fn relations_specialize_in_mu() {
    let mu = int(3);
    for r in gen_dsh_relations(4, 2, &[int(1), int(2)], &int(1), &int(2)).unwrap() {
        let mut ev = Evaluator::new(mu.clone(), 1e-10);
        let symbolic = ev.expr(&r.lhs).unwrap().value;
        let fixed = ev.expr(&r.lhs.specialize_mu(&mu)).unwrap().value;
        assert!((symbolic - fixed).abs() < 1e-12);
    }
}
