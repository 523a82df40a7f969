use proptest::prelude::*;

use qid_core::polyring::{divide_exact, divide_exact_linear, Monomial};
use qid_core::qkernel::{expand_in_cauchy_basis, generalized_cauchy_poly, CauchyExpansion, QParam};
use qid_core::qoperators::{apply_e_tilde, apply_r, d_q, theta_xy};
use qid_core::tseries::{euler_inv_pochhammer, euler_pochhammer, pochhammer_infinite_product, SeriesContext, TruncatedSeries};
use qid_core::{ExactRational, MultiPoly, Symbol};

const X: Symbol = Symbol::X;
const Y: Symbol = Symbol::Y;
const A: Symbol = Symbol::A;
const Q: Symbol = Symbol::Q;

fn rational() -> impl Strategy<Value = ExactRational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ExactRational::new(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = ExactRational> {
    (1i64..=9, 1i64..=6, any::<bool>()).prop_map(|(n, d, neg)| ExactRational::new(if neg { -n } else { n }, d))
}

/// Polynomials over {q, x, y, a} with Laurent exponents on q and x.
fn poly_in(syms: &'static [Symbol], max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (rational(), prop::collection::vec(-2i32..=3, syms.len())).prop_map(move |(c, es)| {
        let mut m = Monomial::one();
        for (s, e) in syms.iter().zip(es) {
            let e = if s.laurent_allowed() { e } else { e.abs() };
            m = m.mul(&Monomial::var_pow(*s, e).expect("allowed exponent"));
        }
        MultiPoly::term(c, m)
    });
    prop::collection::vec(term, 0..=max_terms).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |a, t| &a + t))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(&[Q, X, Y, A], 5)
}

/// Polynomial in x only (nonnegative powers), coefficients in q and y.
fn x_poly() -> impl Strategy<Value = MultiPoly> {
    let term = (rational(), 0u32..=4, 0u32..=2, 0i32..=2).prop_map(|(c, ex, ey, eq)| {
        let m = Monomial::var_pow(X, ex as i32)
            .unwrap()
            .mul(&Monomial::var_pow(Y, ey as i32).unwrap())
            .mul(&Monomial::var_pow(Q, eq).unwrap());
        MultiPoly::term(c, m)
    });
    prop::collection::vec(term, 0..=4).prop_map(|ts| ts.iter().fold(MultiPoly::zero(), |a, t| &a + t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &MultiPoly::zero(), a.clone());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_has_no_zero_terms(a in poly(), b in poly()) {
        let p = &(&a * &b) - &(&b * &a);
        prop_assert!(p.is_zero());
        prop_assert_eq!(p.len(), 0);
        let s = &a + &b;
        prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(), b in poly(), v in poly_in(&[Y, A], 3)) {
        let sub = |p: &MultiPoly| p.substitute(Y, &v).unwrap();
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), xq in nonzero_rational(), yv in rational(), av in rational()) {
        let point = [(Q, xq.clone()), (X, xq), (Y, yv), (A, av)].into_iter().collect();
        let ev = |p: &MultiPoly| p.eval(&point).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
    }

    #[test]
    fn exact_division_round_trip(p in poly(), c in nonzero_rational(), e in -2i32..=2) {
        // Divisor linear in x with unit leading coefficient c*q^e.
        let lead = MultiPoly::term(c, Monomial::var_pow(Q, e).unwrap());
        let divisor = &(&lead * &MultiPoly::var(X)) - &MultiPoly::var(Y);
        let product = &p * &divisor;
        prop_assert_eq!(divide_exact_linear(&product, X, &divisor).unwrap(), p.clone());
        let one_minus_q = &MultiPoly::one() - &MultiPoly::var(Q);
        prop_assert_eq!(divide_exact(&(&p * &one_minus_q), Q, &one_minus_q).unwrap(), p);
    }

    #[test]
    fn cauchy_expansion_round_trip(coeffs in prop::collection::vec(poly_in(&[Q, A], 2), 0..=5)) {
        let exp = CauchyExpansion { coeffs: coeffs.clone(), param_a: A, vars: (X, Y) };
        let f = exp.evaluate();
        let back = expand_in_cauchy_basis(&f, (X, Y), A).unwrap();
        prop_assert_eq!(back.evaluate(), f);
        let trimmed: Vec<_> = {
            let mut c = coeffs;
            while c.last().is_some_and(|p| p.is_zero()) {
                c.pop();
            }
            c
        };
        let mut got = back.coeffs;
        while got.last().is_some_and(|p| p.is_zero()) {
            got.pop();
        }
        prop_assert_eq!(got, trimmed);
    }

    #[test]
    fn operators_are_linear(f in x_poly(), g in x_poly(), c in rational()) {
        let h = &f.scale(&c) + &g;
        prop_assert_eq!(d_q(&h, X).unwrap(), &d_q(&f, X).unwrap().scale(&c) + &d_q(&g, X).unwrap());
        let b = MultiPoly::var(Symbol::B);
        let sym = QParam::Symbolic;
        prop_assert_eq!(
            apply_r(&b, &h, X, &sym).unwrap(),
            &apply_r(&b, &f, X, &sym).unwrap().scale(&c) + &apply_r(&b, &g, X, &sym).unwrap()
        );
        let a = MultiPoly::var(A);
        let y = MultiPoly::var(Y);
        prop_assert_eq!(
            apply_e_tilde(&a, &y, &h, X, &sym).unwrap(),
            &apply_e_tilde(&a, &y, &f, X, &sym).unwrap().scale(&c) + &apply_e_tilde(&a, &y, &g, X, &sym).unwrap()
        );
    }

    #[test]
    fn theta_xy_is_linear_on_cauchy_span(c in prop::collection::vec(rational(), 1..=4)) {
        let q = QParam::Symbolic;
        let basis = |n| qid_core::qkernel::cauchy_poly_in(n, &MultiPoly::var(Y), &MultiPoly::var(X), &q);
        let f = c.iter().enumerate().fold(MultiPoly::zero(), |acc, (n, k)| &acc + &basis(n).scale(k));
        let direct = theta_xy(&f, X, Y).unwrap();
        let termwise = c.iter().enumerate().fold(MultiPoly::zero(), |acc, (n, k)| {
            &acc + &theta_xy(&basis(n), X, Y).unwrap().scale(k)
        });
        prop_assert_eq!(direct, termwise);
    }

    #[test]
    fn series_algebra(u in nonzero_rational(), v in nonzero_rational(), qn in 2i64..=5, qd in 3i64..=7) {
        let q = ExactRational::new(qn, qd);
        prop_assume!(!q.abs().is_one());
        let ctx = SeriesContext::new(Symbol::T, 7, q).unwrap();
        let s = euler_inv_pochhammer(&MultiPoly::constant(u.clone()), &ctx).unwrap();
        let t = euler_pochhammer(&MultiPoly::constant(v), &ctx).unwrap();
        prop_assert_eq!(s.mul(&t).unwrap(), t.mul(&s).unwrap());
        prop_assert_eq!(s.mul(&s.invert().unwrap()).unwrap(), TruncatedSeries::one(&ctx));
        // Sum form of (ut;q)_inf agrees with the product form.
        let sum = euler_pochhammer(&MultiPoly::constant(u.clone()), &ctx).unwrap();
        prop_assert_eq!(sum, pochhammer_infinite_product(&MultiPoly::constant(u), &ctx).unwrap());
    }

    #[test]
    fn generalized_cauchy_specializes(n in 0usize..=6) {
        let at_zero = generalized_cauchy_poly(n).substitute(A, &MultiPoly::zero()).unwrap();
        prop_assert_eq!(at_zero, qid_core::qkernel::cauchy_poly(n));
    }
}
