use gzb_core::brauer_local::BrauerElem;
use gzb_core::exact_algebra::{int, rat, QuadElem, QuadField, QuadPoly, Rational};
use gzb_core::kummer_chars::*;
use proptest::prelude::*;

fn l2() -> QuadField {
    QuadField::new(2).unwrap()
}

fn small_elem() -> impl Strategy<Value = QuadElem> {
    (-6i64..=6, 1i64..=3, -4i64..=4, 1i64..=2).prop_map(|(a, da, b, db)| l2().elem(rat(a, da), rat(b, db)))
}

fn nonzero_elem() -> impl Strategy<Value = QuadElem> {
    small_elem().prop_filter("nonzero", |e| !e.is_zero())
}

fn irred_quadratic() -> impl Strategy<Value = IrredPoly> {
    (small_elem(), nonzero_elem()).prop_filter_map("reducible", |(b, n)| {
        IrredPoly::new(QuadPoly::new(l2(), vec![n, b, l2().one()])).ok()
    })
}

fn irred_low() -> impl Strategy<Value = IrredPoly> {
    prop_oneof![
        nonzero_elem().prop_map(|a| IrredPoly::new(QuadPoly::linear(&a)).unwrap()),
        irred_quadratic(),
    ]
}

fn c_value() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![3i64, 5, 7]).prop_map(int)
}

/// Self-tilde quadratics `u² + r w u + c·w/σ(w)` and linear `u − a` with `N(a) = c`.
fn self_tilde() -> impl Strategy<Value = (IrredPoly, Rational)> {
    let quad = (nonzero_elem(), -4i64..=4, c_value()).prop_filter_map("reducible", |(w, r, c)| {
        let field = l2();
        let n = &field.rational(c.clone()) * &(&w * &w.conj().inv().unwrap());
        let b = w.scale(&int(r));
        IrredPoly::new(QuadPoly::new(field, vec![n, b, field.one()]))
            .ok()
            .map(|p| (p, c))
    });
    let lin = nonzero_elem().prop_map(|a| {
        let c = a.norm();
        (IrredPoly::new(QuadPoly::linear(&a)).unwrap(), c)
    });
    prop_oneof![3 => quad, 1 => lin]
}

fn rep_for(p: &IrredPoly) -> impl Strategy<Value = QuadPoly> {
    let p = p.clone();
    (small_elem(), small_elem()).prop_filter_map("zero mod p", move |(a, b)| {
        let f = QuadPoly::new(l2(), vec![a, b]).rem(p.poly()).unwrap();
        (!f.is_zero()).then_some(f)
    })
}

fn char_over(p: IrredPoly) -> impl Strategy<Value = Char2P> {
    rep_for(&p).prop_map(move |f| Char2P::new(p.clone(), f).unwrap())
}

fn random_char() -> impl Strategy<Value = Char2P> {
    irred_low().prop_flat_map(char_over)
}

fn self_tilde_char() -> impl Strategy<Value = (Char2P, Rational)> {
    self_tilde().prop_flat_map(|(p, c)| char_over(p).prop_map(move |chi| (chi, c.clone())))
}

fn factored() -> impl Strategy<Value = FactoredRF> {
    (
        nonzero_elem(),
        -3i64..=3,
        prop::collection::vec((irred_low(), -2i64..=2), 0..=3),
    )
        .prop_map(|(unit, k, fs)| FactoredRF::new(unit, k, fs).unwrap())
}

/// Exhaustive search for `g` with `g² ≡ h (mod p)` over a box of small coefficients.
fn brute_sqrt_exists(h: &QuadPoly, p: &IrredPoly) -> bool {
    let vals: Vec<Rational> = (-4..=4).map(|k| rat(k, 2)).collect();
    let elems: Vec<QuadElem> = vals
        .iter()
        .flat_map(|a| vals.iter().map(move |b| l2().elem(a.clone(), b.clone())))
        .collect();
    let h = h.rem(p.poly()).unwrap();
    let lin: Vec<&QuadElem> = if p.degree() == 1 {
        vec![&elems[40]]
    } else {
        elems.iter().collect()
    };
    for g1 in lin {
        for g0 in &elems {
            let g = QuadPoly::new(l2(), vec![g0.clone(), g1.clone()]);
            if g.mul(&g).sub(&h).rem(p.poly()).unwrap().is_zero() {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tilde_is_degree_preserving_involution(p in irred_low(), c in c_value()) {
        let t = tilde_poly(&p, &c).unwrap();
        prop_assert_eq!(t.degree(), p.degree());
        prop_assert!(IrredPoly::new(t.poly().clone()).is_ok());
        prop_assert_eq!(t.poly(), &tilde_poly_by_roots(&p, &c).unwrap());
        prop_assert_eq!(tilde_poly(&t, &c).unwrap(), p);
    }

    #[test]
    fn s_is_multiplicative_involution(x in factored(), y in factored(), c in c_value(), u0 in nonzero_elem()) {
        let sx = s_action_factored(&x, &c).unwrap();
        prop_assert_eq!(&s_action_factored(&sx, &c).unwrap(), &x);
        let sxy = s_action_factored(&x.mul(&y), &c).unwrap();
        prop_assert_eq!(sxy, sx.mul(&s_action_factored(&y, &c).unwrap()));
        // s(f)(u₀) = σ(f(c/σ(u₀)))
        let moved = &l2().rational(c.clone()) * &u0.conj().inv().unwrap();
        if let (Ok(lhs), Ok(rhs)) = (sx.eval(&u0), x.eval(&moved)) {
            prop_assert_eq!(lhs, rhs.conj());
        }
    }

    #[test]
    fn cor_is_multiplicative(chi in random_char(), g in small_elem(), h in small_elem()) {
        let p = chi.p().clone();
        let other = QuadPoly::new(l2(), vec![g, h]).rem(p.poly()).unwrap();
        prop_assume!(!other.is_zero());
        let psi = Char2P::new(p, other).unwrap();
        let lhs = cor_char(&chi.mul(&psi).unwrap()).unwrap();
        let rhs = Char2L::sum(cor_char(&chi).unwrap().as_ref(), cor_char(&psi).unwrap().as_ref(), l2());
        prop_assert!(Char2L::opt_eq(lhs.as_ref(), rhs.as_ref()));
    }

    #[test]
    fn squares_are_trivial(chi in random_char()) {
        let sq = Char2P::new(chi.p().clone(), chi.f().mul(chi.f())).unwrap();
        prop_assert!(sq.is_trivial().unwrap());
        prop_assert!(cor_char(&sq).unwrap().is_none());
    }

    #[test]
    fn s_pp_involution_and_cor_identity((chi, c) in self_tilde_char()) {
        let once = s_pp_star(&chi, &c).unwrap();
        prop_assert_eq!(once.p(), chi.p());
        let twice = s_pp_star(&once, &c).unwrap();
        prop_assert!(twice.same_class(&chi).unwrap());
        prop_assert!(cor_identity_check(&chi, &c).unwrap());
    }

    #[test]
    fn cor_identity_off_the_diagonal(chi in random_char(), c in c_value()) {
        prop_assert!(cor_identity_check(&chi, &c).unwrap());
        let back = s_tilde_star(&s_tilde_star(&chi, &c).unwrap(), &c).unwrap();
        prop_assert_eq!(back.p(), chi.p());
        prop_assert_eq!(back.f(), chi.f());
    }

    #[test]
    fn w_class_is_square_class_invariant(e in nonzero_elem(), s in nonzero_elem()) {
        let Ok(w) = w_membership(&e) else { return Ok(()) };
        prop_assert_eq!(w_membership(&(&e * &(&s * &s))).unwrap(), w);
        if w == WClass::KleinW {
            let r = klein_rational_rep(&e).unwrap().unwrap();
            prop_assert!(Char2L::new(l2().rational(r)).unwrap().same_class(&Char2L::new(e.clone()).unwrap()));
        }
        prop_assert_eq!(w == WClass::Cyclic4, w != WClass::NotGalois && cyclic_quartic_criterion(&e));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn square_test_agrees_with_search(p in irred_low(), g in small_elem(), k in prop::sample::select(vec![1i64, -1, 3, 2, 0])) {
        // k = 0 stands for the class of a_p itself
        let base = QuadPoly::new(l2(), vec![g.clone(), l2().rational(rat(1, 2))]).rem(p.poly()).unwrap();
        prop_assume!(!base.is_zero());
        let twist = if k == 0 { QuadPoly::u(l2()) } else { QuadPoly::constant(l2().int(k)) };
        let h = base.mul(&base).mul(&twist).rem(p.poly()).unwrap();
        let found = sqrt_mod(&h, &p).unwrap();
        if let Some(r) = &found {
            prop_assert!(r.mul(r).sub(&h).rem(p.poly()).unwrap().is_zero());
        }
        if k == 1 {
            prop_assert!(found.is_some());
        }
        if brute_sqrt_exists(&h, &p) {
            prop_assert!(found.is_some());
        }
    }
}

fn sign_table() -> NormSignTable {
    NormSignTable::new(BrauerElem::parse("d=2; 7.0:1/2, 7.1:1/2").unwrap()).unwrap()
}

fn brlu() -> impl Strategy<Value = BrLUElem> {
    let beta = prop::sample::select(vec![
        "d=2; ",
        "d=2; 7.0:1/2, 3:1/2",
        "d=2; 7.0:1/2, 7.1:1/2",
        "d=2; 17.1:1/2, inf.0:1/2",
        "d=2; 3:1/2, 5:1/2",
    ]);
    let chi_u = prop::option::of(nonzero_elem());
    (beta, chi_u, prop::collection::vec(random_char(), 0..=3)).prop_map(|(b, e, chis)| {
        let chi_u = e.and_then(|e| Char2L::from_class(e).unwrap());
        BrLUElem::new(BrauerElem::parse(b).unwrap(), chi_u, chis).unwrap()
    })
}

struct LopsidedTable(BrauerElem);

impl SStarTable for LopsidedTable {
    fn s_u1(&self, _: &Char2L) -> gzb_core::error::Result<BrauerElem> {
        Ok(self.0.clone())
    }

    fn s_p1(&self, chi: &Char2P) -> gzb_core::error::Result<BrauerElem> {
        BrauerElem::zero(chi.p().field().d())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn s_star_is_an_involution(x in brlu(), c in c_value()) {
        for table in [&ZeroTable as &dyn SStarTable, &sign_table()] {
            let y = apply_s_star(&x, &c, table).unwrap();
            prop_assert!(apply_s_star(&y, &c, table).unwrap().same_class(&x).unwrap());
        }
    }

    #[test]
    fn symmetrized_elements_are_fixed(x in brlu(), c in c_value()) {
        let table = sign_table();
        let fixed = x.add(&apply_s_star(&x, &c, &table).unwrap()).unwrap();
        prop_assert!(apply_s_star(&fixed, &c, &table).unwrap().same_class(&fixed).unwrap());
        let report = check_fixed_conditions(&fixed, &c, &table).unwrap();
        prop_assert!(report.all_pass(), "{:?}", report);

        // Cor Σχ_p is σ-fixed once (i) holds, and the table output is σ-negated
        let mut cor = None;
        for chi in fixed.chis.values() {
            cor = Char2L::sum(cor.as_ref(), cor_char(chi).unwrap().as_ref(), l2());
        }
        let cor_sigma = cor.as_ref().map(sigma_char);
        prop_assert!(Char2L::opt_eq(cor.as_ref(), cor_sigma.as_ref()));
        let out = table_image(&fixed, &table).unwrap();
        prop_assert_eq!(out.galois_act(), out.neg());
    }

    #[test]
    fn lopsided_table_is_rejected(x in brlu(), c in c_value()) {
        let table = LopsidedTable(BrauerElem::parse("d=2; 7.0:1/2, 3:1/2").unwrap());
        let needs_u = x.chi_u.is_some() || x.chis.values().any(|chi| cor_char(chi).unwrap().is_some());
        let r = apply_s_star(&x, &c, &table);
        if needs_u {
            prop_assert!(r.is_err());
        }
    }
}

#[test]
fn twisted_chi_u_breaks_condition_ii() {
    let c = int(3);
    let y = BrLUElem::new(
        BrauerElem::zero(2).unwrap(),
        None,
        [Char2P::parse("chi[u - 1 - sqrt(2); u]", l2()).unwrap()],
    )
    .unwrap();
    let fixed = y.add(&apply_s_star(&y, &c, &ZeroTable).unwrap()).unwrap();
    assert_eq!(fixed.chis.len(), 2);
    assert!(check_fixed_conditions(&fixed, &c, &ZeroTable).unwrap().all_pass());

    let mut broken = fixed.clone();
    let twist = Char2L::new(l2().sqrt_d()).unwrap();
    broken.chi_u = Char2L::sum(broken.chi_u.as_ref(), Some(&twist), l2());
    let r = check_fixed_conditions(&broken, &c, &ZeroTable).unwrap();
    assert!(r.cond_i.pass && r.cond_iii.pass);
    assert!(!r.cond_ii.pass);
    assert!(r.cond_ii.witness.unwrap().contains("Cor"));
}
