use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qdim_core::exact::{LaurentPoly, RationalFunctionQ};
use qdim_core::gf::{GFMatrix, GFq, SUPPORTED_ORDERS};
use qdim_core::qseries::{sum_terms, QTerm};
use qdim_core::Exec;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..4, prop::collection::vec(-6i64..6, 0..6)).prop_map(|(lo, c)| LaurentPoly::from_i64(lo, &c))
}

fn rational() -> impl Strategy<Value = RationalFunctionQ> {
    (laurent(), laurent().prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunctionQ::new(n, d).unwrap())
}

fn point() -> impl Strategy<Value = BigRational> {
    (-7i64..8, 1i64..5).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
            prop_assert_eq!(&b * &b.recip().unwrap(), RationalFunctionQ::one());
        }
    }

    #[test]
    fn canonical_form_is_unique(n in laurent(), d in laurent().prop_filter("nonzero", |p| !p.is_zero()), s in laurent().prop_filter("nonzero", |p| !p.is_zero())) {
        let plain = RationalFunctionQ::new(n.clone(), d.clone()).unwrap();
        let scaled = RationalFunctionQ::new(&n * &s, &d * &s).unwrap();
        prop_assert_eq!(&plain, &scaled);
        let again = RationalFunctionQ::new(plain.num().clone(), plain.den().clone()).unwrap();
        prop_assert_eq!(&again, &plain);
        let json = serde_json::to_string(&plain).unwrap();
        prop_assert_eq!(serde_json::from_str::<RationalFunctionQ>(&json).unwrap(), plain);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in rational(), b in rational(), x in point()) {
        if let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) {
            prop_assert_eq!((&a + &b).eval(&x).unwrap(), &va + &vb);
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), &va * &vb);
        }
    }

    #[test]
    fn term_sum_independent_of_strategy(specs in prop::collection::vec((-3i64..4, -5i64..6, 0u32..4, 0u32..4), 1..12)) {
        let terms: Vec<QTerm> = specs
            .iter()
            .map(|&(c, e, i, j)| QTerm::new(c).times_q(e).times_qq(i).over_qq(j))
            .collect();
        let direct: RationalFunctionQ = terms.iter().map(QTerm::to_rational).sum();
        prop_assert_eq!(sum_terms(&terms, Exec::Sequential), direct.clone());
        prop_assert_eq!(sum_terms(&terms, Exec::default()), direct);
    }

    #[test]
    fn rank_invariant_under_invertible_multiplication(qi in 0usize..7, n in 1usize..5, seed in any::<u64>()) {
        let f = GFq::new(SUPPORTED_ORDERS[qi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = GFMatrix::random(&f, n, n, &mut rng);
        let p = GFMatrix::random_invertible(&f, n, &mut rng);
        let q = GFMatrix::random_invertible(&f, n, &mut rng);
        let pa_q = p.mul(&f, &a).unwrap().mul(&f, &q).unwrap();
        prop_assert_eq!(pa_q.rank(&f), a.rank(&f));
        prop_assert_eq!(p.inverse(&f).unwrap().mul(&f, &p).unwrap(), GFMatrix::identity(n));
    }

    #[test]
    fn integer_evaluation_of_products(k in 0u32..6, x in 2i64..6) {
        let p = (1..=k).fold(LaurentPoly::one(), |acc, i| &acc * &LaurentPoly::one_minus(1, i as i64));
        let want = (1..=k).fold(BigInt::from(1), |acc, i| acc * (BigInt::from(1) - BigInt::from(x).pow(i)));
        prop_assert_eq!(p.eval(&BigRational::from_integer(x.into())).unwrap(), BigRational::from_integer(want));
    }
}
