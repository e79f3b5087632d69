use gzb_core::exact_algebra::*;
use gzb_core::par::Exec;
use num_bigint::BigInt;
use proptest::prelude::*;

const PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

#[test]
fn hilbert_formula_matches_bruteforce() {
    let cases: Vec<(i64, i64, u64)> = (-30i64..=30)
        .filter(|&a| a != 0)
        .flat_map(|a| (-30i64..=30).filter(|&b| b != 0).map(move |b| (a, b)))
        .flat_map(|(a, b)| PRIMES.iter().map(move |&p| (a, b, p)))
        .collect();
    let brute = hilbert_bruteforce_many(Exec::Auto, &cases);
    for (&(a, b, p), bf) in cases.iter().zip(brute) {
        let sym = hilbert_symbol(&int(a), &int(b), PlaceQ::Prime(p)).unwrap();
        assert_eq!(sym, bf.unwrap(), "({a},{b})_{p}");
    }
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    (1i64..=10_000, 1i64..=10_000, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn quad2() -> impl Strategy<Value = QuadElem> {
    (-50i64..50, 1i64..10, -50i64..50, 1i64..10)
        .prop_map(|(a, b, c, e)| QuadField::new(2).unwrap().elem(rat(a, b), rat(c, e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_formula(a in nonzero_rat(), b in nonzero_rat()) {
        let prod: i32 = relevant_places(&a, &b).unwrap().into_iter()
            .map(|v| hilbert_symbol(&a, &b, v).unwrap() as i32).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn symbol_symmetries(a in nonzero_rat(), b in nonzero_rat(), s in 1i64..50) {
        for v in relevant_places(&a, &b).unwrap() {
            let h = hilbert_symbol(&a, &b, v).unwrap();
            prop_assert_eq!(h, hilbert_symbol(&b, &a, v).unwrap());
            prop_assert_eq!(hilbert_symbol(&a, &(-a.clone()), v).unwrap(), 1);
            prop_assert_eq!(h, hilbert_symbol(&(a.clone() * int(s * s)), &b, v).unwrap());
        }
    }

    #[test]
    fn norm_is_multiplicative(x in quad2(), y in quad2()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj().conj(), x.clone());
    }

    #[test]
    fn squares_are_squares(x in quad2()) {
        prop_assume!(!x.is_zero());
        prop_assert!(is_square_quad(&(&x * &x)).unwrap());
        if is_square_quad(&x).unwrap() {
            prop_assert!(is_square_rational(&x.norm()));
        }
    }

    #[test]
    fn legendre_matches_residue_table(a in -200i64..200, pi in 1usize..15) {
        let p = PRIMES[pi] as i64;
        let r = a.rem_euclid(p);
        let expected = if r == 0 { 0 } else if (1..p).any(|t| t * t % p == r) { 1 } else { -1 };
        prop_assert_eq!(legendre_symbol(&BigInt::from(a), &BigInt::from(p)).unwrap(), expected);
    }
}
