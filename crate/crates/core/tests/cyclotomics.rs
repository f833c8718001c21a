use ibr_core::cyclotomic::{totient, Cyclotomic};
use ibr_core::rational::{frac, int};
use proptest::prelude::*;

const CONDUCTORS: [u64; 7] = [1, 3, 4, 5, 8, 12, 15];

fn element(e: u64) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-6i64..=6, 1i64..=4), e as usize).prop_map(move |terms| {
        terms
            .iter()
            .enumerate()
            .map(|(k, &(n, d))| Cyclotomic::root_of_unity(e, k as i64).scale(&frac(n, d)))
            .sum()
    })
}

fn in_field() -> impl Strategy<Value = (u64, Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS.to_vec())
        .prop_flat_map(|e| (Just(e), element(e), element(e), element(e)))
}

fn close(x: (f64, f64), y: (f64, f64)) -> bool {
    (x.0 - y.0).abs() < 1e-9 && (x.1 - y.1).abs() < 1e-9
}

fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms((_e, a, b, c) in in_field()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Cyclotomic::zero(), a.clone());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-&(-&a), a.clone());
    }

    #[test]
    fn inverse((_e, a, _b, _c) in in_field()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert_eq!(&a * &a.inv().unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism((_e, a, b, _c) in in_field()) {
        let (x, y) = (a.to_complex(), b.to_complex());
        prop_assert!(close((&a + &b).to_complex(), (x.0 + y.0, x.1 + y.1)));
        prop_assert!(close((&a * &b).to_complex(), cmul(x, y)));
        prop_assert!(close(a.conj().to_complex(), (x.0, -x.1)));
    }

    #[test]
    fn galois_action((e, a, b, _c) in in_field(), k in 1i64..60, l in 1i64..60) {
        let e64 = e as i64;
        prop_assume!(gcd(k as u64, e) == 1 && gcd(l as u64, e) == 1);
        let ga = a.galois(k).unwrap();
        prop_assert_eq!(ga.galois(l).unwrap(), a.galois(k * l % e64.max(1)).unwrap());
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &ga * &b.galois(k).unwrap());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.galois(1).unwrap(), a.clone());
    }

    #[test]
    fn mixed_conductors(a in element(4), b in element(15)) {
        let s = &a + &b;
        let (x, y) = (a.to_complex(), b.to_complex());
        prop_assert!(close(s.to_complex(), (x.0 + y.0, x.1 + y.1)));
        prop_assert_eq!(&s - &b, a.clone());
    }

    #[test]
    fn text_round_trip((_e, a, _b, _c) in in_field()) {
        let back: Cyclotomic = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn roots_of_unity_have_order_e() {
    for e in 1..=36u64 {
        let z = Cyclotomic::root_of_unity(e, 1);
        let mut p = Cyclotomic::one();
        for k in 1..=e {
            p = &p * &z;
            assert_eq!(
                p.is_rational() && p == Cyclotomic::one(),
                k == e,
                "e={e} k={k}"
            );
        }
    }
}

#[test]
fn sum_of_prime_roots_vanishes() {
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let s: Cyclotomic = (0..p as i64).map(|i| Cyclotomic::root_of_unity(p, i)).sum();
        assert!(s.is_zero(), "p={p}");
    }
}

#[test]
fn field_degree_is_totient() {
    for e in 1..=40u64 {
        let n = (1..=e).filter(|k| gcd(*k, e) == 1).count() as u64;
        assert_eq!(totient(e), n);
    }
}

#[test]
fn classical_identities() {
    // sqrt(5) = 1 + 2(z5 + z5^4) and sqrt(-3) = 1 + 2 z3
    let z5 = |k| Cyclotomic::root_of_unity(5, k);
    let s5 = &Cyclotomic::one() + &(&z5(1) + &z5(4)).scale(&int(2));
    assert_eq!(&s5 * &s5, Cyclotomic::from_int(5));
    let s3 = &Cyclotomic::one() + &Cyclotomic::root_of_unity(3, 1).scale(&int(2));
    assert_eq!(&s3 * &s3, Cyclotomic::from_int(-3));
    // i = z4 = z8^2
    assert_eq!(
        Cyclotomic::root_of_unity(8, 2),
        Cyclotomic::root_of_unity(4, 1)
    );
    let i = Cyclotomic::root_of_unity(4, 1);
    assert_eq!(&i * &i, Cyclotomic::from_int(-1));
}
