//! Exact coefficient arithmetic: Laurent expressions in rational powers of
//! `q` and a few commuting units, their fractions, q-integers, and numeric
//! evaluation at roots of unity.

mod numeric;
mod qexpr;
mod ratfun;

pub use numeric::{eval_at_root, eval_ratfun, EvalPoint};
pub use qexpr::{qfact, qnum, Aux, Mono, QExpr, AUX};
pub use ratfun::RatFun;

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::ring::Ring;
    use num_complex::Complex64;
    use num_rational::Rational64;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Mono> {
        (
            -6i64..=6,
            prop::sample::select(vec![1i64, 2, 3, 4]),
            -2i32..=2,
            -1i32..=1,
        )
            .prop_map(|(n, d, w, u)| {
                let mut m = Mono::q(Rational64::new(n, d));
                m.aux[Aux::W as usize] = w;
                m.aux[Aux::U as usize] = u;
                m
            })
    }

    fn qexpr() -> impl Strategy<Value = QExpr> {
        prop::collection::vec((mono(), -3i64..=3), 0..5).prop_map(|ts| {
            QExpr::from_terms(
                ts.into_iter()
                    .map(|(m, c)| (m, Rational64::from_integer(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(a in qexpr()) {
            let again = QExpr::from_terms(a.terms().iter().copied());
            prop_assert_eq!(again, a);
        }

        #[test]
        fn ring_axioms(a in qexpr(), b in qexpr(), c in qexpr()) {
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn exact_division_recovers_factor(a in qexpr(), b in qexpr()) {
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b), Some(a));
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(a in qexpr(), b in qexpr(), h in 3u32..9) {
            let at = EvalPoint::new(h, Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.25));
            let (ea, eb) = (eval_at_root(&a, &at), eval_at_root(&b, &at));
            let sum = eval_at_root(&(&a + &b), &at);
            let prod = eval_at_root(&(&a * &b), &at);
            let scale = 1.0 + (ea.norm() + eb.norm()).powi(2);
            prop_assert!((sum - (ea + eb)).norm() <= 1e-12 * scale);
            prop_assert!((prod - ea * eb).norm() <= 1e-12 * scale);
        }

        #[test]
        fn ratfun_field_laws(a in qexpr(), b in qexpr(), c in qexpr()) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let x = RatFun::new(a.clone(), b.clone()).unwrap();
            let y = RatFun::new(c.clone(), b.clone()).unwrap();
            let z = RatFun::new(a.clone(), c.clone()).unwrap();
            prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
            if !a.is_zero() {
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }
            prop_assert!(x.sub(&x).is_zero());
            prop_assert!(Ring::is_zero(&x.add(&x.neg())));
        }
    }
}
