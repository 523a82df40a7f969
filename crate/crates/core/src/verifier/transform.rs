//! Coefficient-sequence transform: if `Σ_k A(k) x^k = Σ_j B(j) / (x t q^j; q)_∞`
//! then `Σ_k A(k) p_k(x,y,a) = Σ_j B(j) / (x t q^j; q)_∞ · 1Φ1[a; 0; q, y t q^j]`.
//!
//! `x` stays symbolic; each `A(k)` is a series in `t` read off the
//! `x^k` coefficient of the left-hand expansion.

use std::collections::BTreeMap;

use rand::Rng;

use super::sampling::random_nonzero_rational;
use super::{Instance, Pair, VerifyError};
use crate::polyring::{MultiPoly, Symbol};
use crate::qkernel::generalized_cauchy_poly_in;
use crate::tseries::{euler_inv_pochhammer, BasicHypergeometric, SeriesContext, TruncatedSeries};

/// A finitely supported sequence `j ↦ B(j)` of constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffSequence {
    pub terms: BTreeMap<usize, MultiPoly>,
}

impl CoeffSequence {
    pub fn new<I: IntoIterator<Item = (usize, MultiPoly)>>(terms: I) -> Self {
        CoeffSequence { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Random support of size 1 to 3 within `0..=3`, nonzero rational values.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let size = rng.gen_range(1..=3);
        let mut terms = BTreeMap::new();
        while terms.len() < size {
            terms.insert(rng.gen_range(0..=3usize), MultiPoly::constant(random_nonzero_rational(rng)));
        }
        CoeffSequence { terms }
    }
}

/// `Σ_j B(j) / (x t q^j; q)_∞` with symbolic `x`.
fn b_side(b: &CoeffSequence, ctx: &SeriesContext) -> Result<TruncatedSeries, VerifyError> {
    let base = euler_inv_pochhammer(&MultiPoly::var(Symbol::X), ctx)?;
    let mut total = TruncatedSeries::zero(ctx);
    for (&j, c) in &b.terms {
        total = total.add(&base.scale_series_var(j as i64).scale(c)?)?;
    }
    Ok(total)
}

/// The series `A(0), ..., A(N)` determined by `b`.
pub fn transform_coefficients(b: &CoeffSequence, ctx: &SeriesContext) -> Result<Vec<TruncatedSeries>, VerifyError> {
    let s = b_side(b, ctx)?;
    (0..=ctx.order())
        .map(|k| {
            let coeffs = s.coeffs().iter().map(|c| c.coefficient_of(Symbol::X, k as i32)).collect();
            Ok(TruncatedSeries::from_coeffs(ctx, coeffs)?)
        })
        .collect()
}

/// Pairs: the transformed identity, and the reconstruction `Σ A(k) x^k`
/// against the defining expansion.
pub fn transform_check(
    b: &CoeffSequence,
    y: &MultiPoly,
    a: &MultiPoly,
    ctx: &SeriesContext,
    drop_q_factor: bool,
) -> Result<Vec<Pair>, VerifyError> {
    let q = ctx.qparam();
    let x = MultiPoly::var(Symbol::X);
    let a_seq = transform_coefficients(b, ctx)?;

    let mut lhs = TruncatedSeries::zero(ctx);
    let mut rebuilt = TruncatedSeries::zero(ctx);
    for (k, ak) in a_seq.iter().enumerate() {
        lhs = lhs.add(&ak.scale(&generalized_cauchy_poly_in(k, &x, y, a, &q))?)?;
        rebuilt = rebuilt.add(&ak.scale(&x.pow(k as u32))?)?;
    }

    let base = euler_inv_pochhammer(&x, ctx)?;
    let mut phi = BasicHypergeometric::new(vec![a.clone()], vec![MultiPoly::zero()], y.clone(), 1);
    if drop_q_factor {
        phi = phi.with_balance(0);
    }
    let phi = phi.series(ctx)?;
    let mut rhs = TruncatedSeries::zero(ctx);
    for (&j, c) in &b.terms {
        let term = base.mul(&phi)?.scale_series_var(j as i64).scale(c)?;
        rhs = rhs.add(&term)?;
    }
    Ok(vec![Pair::series(lhs, rhs), Pair::series(rebuilt, b_side(b, ctx)?)])
}

pub(super) fn transform_identity(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let b = CoeffSequence::random(&mut inst.rng());
    transform_check(&b, &inst.p(Symbol::Y), &inst.p(Symbol::A), inst.ctx()?, inst.drop_q_factor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ExactRational;
    use crate::verifier::first_mismatch;

    fn ctx() -> SeriesContext {
        SeriesContext::new(Symbol::T, 6, ExactRational::new(1, 2)).unwrap()
    }

    #[test]
    fn unit_sequence_gives_euler_coefficients() {
        // B = {0: 1}: A(k) = t^k / (q;q)_k.
        let ctx = ctx();
        let b = CoeffSequence::new([(0, MultiPoly::one())]);
        let a = transform_coefficients(&b, &ctx).unwrap();
        for (k, ak) in a.iter().enumerate() {
            for m in 0..=ctx.order() {
                let expected = if m == k {
                    MultiPoly::constant(ctx.q_factorial(k).recip().unwrap())
                } else {
                    MultiPoly::zero()
                };
                assert_eq!(ak.coeff(m), &expected, "A({k}) at t^{m}");
            }
        }
    }

    #[test]
    fn closed_form_of_coefficients() {
        // A(k) = t^k/(q;q)_k Σ_j B(j) q^{jk}.
        let ctx = ctx();
        let b = CoeffSequence::new([(1, MultiPoly::int(3)), (3, MultiPoly::constant(ExactRational::new(-2, 5)))]);
        let a = transform_coefficients(&b, &ctx).unwrap();
        for (k, ak) in a.iter().enumerate() {
            let mut s = ExactRational::zero();
            for (&j, c) in &b.terms {
                s += &(&c.as_constant().unwrap() * &ctx.q_pow((j * k) as i64));
            }
            let expected = &s * &ctx.q_factorial(k).recip().unwrap();
            assert_eq!(ak.coeff(k), &MultiPoly::constant(expected));
        }
    }

    #[test]
    fn empty_sequence_is_zero() {
        let ctx = ctx();
        let pairs = transform_check(&CoeffSequence::default(), &MultiPoly::int(2), &MultiPoly::int(3), &ctx, false)
            .unwrap();
        for p in &pairs {
            if let Pair::Series { lhs, rhs } = p {
                assert!(lhs.is_zero() && rhs.is_zero());
            }
        }
    }

    #[test]
    fn random_sequences_satisfy_transform() {
        let ctx = ctx();
        let mut rng = crate::verifier::sampling::rng_from(11);
        for _ in 0..4 {
            let b = CoeffSequence::random(&mut rng);
            let y = MultiPoly::constant(ExactRational::new(-3, 4));
            let a = MultiPoly::constant(ExactRational::new(5, 2));
            let pairs = transform_check(&b, &y, &a, &ctx, false).unwrap();
            assert_eq!(first_mismatch(&pairs).unwrap(), None);
            let bad = transform_check(&b, &y, &a, &ctx, true).unwrap();
            assert!(first_mismatch(&bad).unwrap().is_some());
        }
    }
}
