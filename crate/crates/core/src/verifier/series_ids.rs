//! Generating-function identities checked as truncated series in `t`.

use super::{Instance, Pair, VerifyError};
use crate::polyring::{MultiPoly, Symbol};
use crate::qkernel::{
    binom2, cauchy_poly_in, gaussian_binomial_at, generalized_cauchy_poly_in, hahn_poly_in, q_pochhammer_at,
};
use crate::qoperators::d_q_at;
use crate::rational::ExactRational;
use crate::tseries::{
    euler_inv_pochhammer, euler_pochhammer, finite_pochhammer_series, pochhammer_infinite_product,
    BasicHypergeometric, SeriesContext, TruncatedSeries,
};

type Sides = (TruncatedSeries, TruncatedSeries);

const X: Symbol = Symbol::X;
const Y: Symbol = Symbol::Y;
const A: Symbol = Symbol::A;

fn c(v: ExactRational) -> MultiPoly {
    MultiPoly::constant(v)
}

fn zero() -> MultiPoly {
    MultiPoly::zero()
}

fn one() -> MultiPoly {
    MultiPoly::one()
}

/// `Σ_n f(n) t^n / (q;q)_n`.
fn egf<F>(ctx: &SeriesContext, mut f: F) -> Result<TruncatedSeries, VerifyError>
where
    F: FnMut(usize) -> MultiPoly,
{
    let coeffs = (0..=ctx.order())
        .map(|n| f(n).scale(&ctx.q_factorial(n).recip().expect("q not a root of unity")))
        .collect();
    Ok(TruncatedSeries::from_coeffs(ctx, coeffs)?)
}

/// `(-1)^n q^{n(n-1)/2}` as a rational.
fn alt_weight(ctx: &SeriesContext, n: usize) -> ExactRational {
    let w = ctx.q_pow(binom2(n as i64));
    if n % 2 == 1 {
        -w
    } else {
        w
    }
}

fn hyper(inst: &Instance, h: BasicHypergeometric, ctx: &SeriesContext) -> Result<TruncatedSeries, VerifyError> {
    let h = if inst.drop_q_factor() { h.with_balance(0) } else { h };
    Ok(h.series(ctx)?)
}

fn mul_all(first: TruncatedSeries, rest: &[TruncatedSeries]) -> Result<TruncatedSeries, VerifyError> {
    rest.iter().try_fold(first, |acc, s| Ok(acc.mul(s)?))
}

pub(super) fn q_binomial_theorem(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ctx = inst.ctx()?;
    let (a, x) = (inst.p(A), inst.p(X));
    let lhs = hyper(inst, BasicHypergeometric::new(vec![a.clone()], vec![], x.clone(), 1), ctx)?;
    let rhs = pochhammer_infinite_product(&(&a * &x), ctx)?.mul(&pochhammer_infinite_product(&x, ctx)?.invert()?)?;
    Ok(vec![Pair::series(lhs, rhs)])
}

pub(super) fn euler_identity(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ctx = inst.ctx()?;
    let x = inst.p(X);
    let lhs = egf(ctx, |n| x.pow(n as u32))?;
    let rhs = pochhammer_infinite_product(&x, ctx)?.invert()?;
    Ok(vec![Pair::series(lhs, rhs)])
}

pub(super) fn euler_inverse(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ctx = inst.ctx()?;
    let x = inst.p(X);
    let lhs = hyper(inst, BasicHypergeometric::new(vec![], vec![], x.clone(), 1), ctx)?;
    let rhs = pochhammer_infinite_product(&x, ctx)?;
    Ok(vec![Pair::series(lhs, rhs)])
}

pub(super) fn cauchy_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let (x, y) = (inst.p(X), inst.p(Y));
    let lhs = egf(ctx, |n| cauchy_poly_in(n, &x, &y, &q))?;
    let rhs = euler_pochhammer(&y, ctx)?.mul(&euler_inv_pochhammer(&x, ctx)?)?;
    Ok(vec![Pair::series(lhs, rhs)])
}

/// `D_q^n {x^k / (xt;q)_∞}` against its expansion in `(xt;q)_j`, with `x` symbolic.
pub(super) fn leibniz_dq_euler(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let (n, k) = (inst.params.knob("n") as usize, inst.params.knob("k") as usize);
    let x = MultiPoly::var(X);
    let base = euler_inv_pochhammer(&x, ctx)?;

    let mut lhs = base.scale(&x.pow(k as u32))?;
    for _ in 0..n {
        lhs = lhs.map_coefficients(|c| Ok(d_q_at(c, X, &q)?))?;
    }

    let mut sum = TruncatedSeries::zero(ctx);
    for j in 0..=n.min(k) {
        let coeff = &gaussian_binomial_at(n, j as i64, &q)
            * &c(&ctx.q_factorial(k) / &ctx.q_factorial(k - j));
        let term = finite_pochhammer_series(&x, j, ctx)?
            .scale(&(&coeff * &x.pow((k - j) as u32)))?
            .shift_up(n - j);
        sum = sum.add(&term)?;
    }
    let rhs = base.mul(&sum)?;
    Ok(vec![Pair::series(lhs, rhs)])
}

fn gencauchy_sides(inst: &Instance, x: &MultiPoly, y: &MultiPoly, a: &MultiPoly) -> Result<Sides, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let lhs = egf(ctx, |n| generalized_cauchy_poly_in(n, x, y, a, &q))?;
    let phi = hyper(inst, BasicHypergeometric::new(vec![a.clone()], vec![zero()], y.clone(), 1), ctx)?;
    let rhs = euler_inv_pochhammer(x, ctx)?.mul(&phi)?;
    Ok((lhs, rhs))
}

pub(super) fn gencauchy_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (lhs, rhs) = gencauchy_sides(inst, &inst.p(X), &inst.p(Y), &inst.p(A))?;
    Ok(vec![Pair::series(lhs, rhs)])
}

fn cauchy_a0_sides(inst: &Instance, x: &MultiPoly, y: &MultiPoly) -> Result<Sides, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let lhs = egf(ctx, |n| generalized_cauchy_poly_in(n, x, y, &zero(), &q))?;
    let rhs = euler_pochhammer(y, ctx)?.mul(&euler_inv_pochhammer(x, ctx)?)?;
    Ok((lhs, rhs))
}

pub(super) fn cauchy_genfunc_a0(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (lhs, rhs) = cauchy_a0_sides(inst, &inst.p(X), &inst.p(Y))?;
    Ok(vec![Pair::series(lhs, rhs)])
}

/// Both sides of the two-argument generating function with `s = σt`, `r = ρt`.
fn sr_sides(
    inst: &Instance,
    x: &MultiPoly,
    y: &MultiPoly,
    a: &MultiPoly,
    rho: &MultiPoly,
    sigma: &MultiPoly,
) -> Result<Sides, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let lhs = egf(ctx, |n| {
        &generalized_cauchy_poly_in(n, x, y, a, &q) * &cauchy_poly_in(n, rho, sigma, &q)
    })?;

    let sx = sigma * x;
    let mut sum = TruncatedSeries::zero(ctx);
    for n in 0..=ctx.order() {
        let mut w = &q_pochhammer_at(a, n, &q) * &cauchy_poly_in(n, rho, sigma, &q);
        w = &w * &y.pow(n as u32);
        let mut scale = ctx.q_factorial(n).recip().expect("nonzero");
        if !inst.drop_q_factor() {
            scale = &scale * &alt_weight(ctx, n);
        }
        let term = finite_pochhammer_series(&sx, n, ctx)?
            .invert()?
            .scale(&w.scale(&scale))?
            .shift_up(n);
        sum = sum.add(&term)?;
    }
    let rhs = mul_all(euler_pochhammer(&sx, ctx)?, &[euler_inv_pochhammer(&(rho * x), ctx)?, sum])?;
    Ok((lhs, rhs))
}

pub(super) fn gencauchy_sr_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (lhs, rhs) = sr_sides(
        inst,
        &inst.p(X),
        &inst.p(Y),
        &inst.p(A),
        &inst.p(Symbol::RHO),
        &inst.p(Symbol::SIGMA),
    )?;
    Ok(vec![Pair::series(lhs, rhs)])
}

pub(super) fn gencauchy_s_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let (x, y, a, sigma) = (inst.p(X), inst.p(Y), inst.p(A), inst.p(Symbol::SIGMA));
    let lhs = egf(ctx, |n| {
        generalized_cauchy_poly_in(n, &x, &y, &a, &q).scale(&alt_weight(ctx, n)) * sigma.pow(n as u32)
    })?;
    let sx = &sigma * &x;
    let t = MultiPoly::var(ctx.series_var());
    let phi = hyper(
        inst,
        BasicHypergeometric::new(vec![a.clone()], vec![&sx * &t, zero()], &sigma * &y, 1),
        ctx,
    )?;
    let rhs = euler_pochhammer(&sx, ctx)?.mul(&phi)?;
    Ok(vec![Pair::series(lhs, rhs)])
}

/// Generating function of the shifted sequence `p_{n+k}(x,y,a)`; needs `x != 0`.
fn shifted_sides(inst: &Instance, x: &MultiPoly, y: &MultiPoly, a: &MultiPoly, k: usize) -> Result<Sides, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let lhs = egf(ctx, |n| generalized_cauchy_poly_in(n + k, x, y, a, &q))?;

    let x_inv = x.unit_inverse().ok_or(crate::polyring::PolyError::DivisionByZero)?;
    let ratio = &(y * &x_inv) * &q.pow(k as i64);
    let qmk = q.pow(-(k as i64));
    let mut sum = TruncatedSeries::zero(ctx);
    for n in 0..=k {
        let w = &(&q_pochhammer_at(&qmk, n, &q) * &q_pochhammer_at(a, n, &q)) * &ratio.pow(n as u32);
        let w = w.scale(&ctx.q_factorial(n).recip().expect("nonzero"));
        let qn = q.pow(n as i64);
        let phi = hyper(
            inst,
            BasicHypergeometric::new(vec![a * &qn], vec![zero()], y * &qn, 1),
            ctx,
        )?;
        let term = finite_pochhammer_series(x, n, ctx)?.mul(&phi)?.scale(&w)?;
        sum = sum.add(&term)?;
    }
    let rhs = euler_inv_pochhammer(x, ctx)?.scale(&x.pow(k as u32))?.mul(&sum)?;
    Ok((lhs, rhs))
}

pub(super) fn gencauchy_shifted_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let k = inst.params.knob("k") as usize;
    let (lhs, rhs) = shifted_sides(inst, &inst.p(X), &inst.p(Y), &inst.p(A), k)?;
    Ok(vec![Pair::series(lhs, rhs)])
}

pub(super) fn sr_reduces_to_gencauchy(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (x, y, a) = (inst.p(X), inst.p(Y), inst.p(A));
    let (sl, sr) = sr_sides(inst, &x, &y, &a, &one(), &zero())?;
    let (gl, gr) = gencauchy_sides(inst, &x, &y, &a)?;
    Ok(vec![Pair::series(sl, gl), Pair::series(sr, gr)])
}

pub(super) fn sr_reduces_to_cauchy(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (x, y) = (inst.p(X), inst.p(Y));
    let (sl, sr) = sr_sides(inst, &x, &y, &zero(), &one(), &zero())?;
    let (cl, cr) = cauchy_a0_sides(inst, &x, &y)?;
    Ok(vec![Pair::series(sl, cl), Pair::series(sr, cr)])
}

pub(super) fn shifted_k0_reduces(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (x, y, a) = (inst.p(X), inst.p(Y), inst.p(A));
    let (kl, kr) = shifted_sides(inst, &x, &y, &a, 0)?;
    let (gl, gr) = gencauchy_sides(inst, &x, &y, &a)?;
    Ok(vec![Pair::series(kl, gl), Pair::series(kr, gr)])
}

fn hahn_lambda_sides(inst: &Instance, x: &MultiPoly, lambda: &MultiPoly, alpha: &MultiPoly) -> Result<Sides, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let lhs = egf(ctx, |n| &hahn_poly_in(n, x, alpha, &q) * &q_pochhammer_at(lambda, n, &q))?;
    let t = MultiPoly::var(ctx.series_var());
    let phi = hyper(
        inst,
        BasicHypergeometric::new(vec![lambda.clone(), alpha.clone()], vec![lambda * &t], x.clone(), 1),
        ctx,
    )?;
    let rhs = mul_all(euler_pochhammer(lambda, ctx)?, &[euler_inv_pochhammer(&one(), ctx)?, phi])?;
    Ok((lhs, rhs))
}

pub(super) fn hahn_lambda_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (lhs, rhs) = hahn_lambda_sides(inst, &inst.p(X), &inst.p(Symbol::LAMBDA), &inst.p(Symbol::ALPHA))?;
    Ok(vec![Pair::series(lhs, rhs)])
}

fn hahn_sides(inst: &Instance, x: &MultiPoly, alpha: &MultiPoly) -> Result<Sides, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let lhs = egf(ctx, |n| hahn_poly_in(n, x, alpha, &q))?;
    let rhs = mul_all(
        euler_pochhammer(&(alpha * x), ctx)?,
        &[euler_inv_pochhammer(x, ctx)?, euler_inv_pochhammer(&one(), ctx)?],
    )?;
    Ok((lhs, rhs))
}

pub(super) fn hahn_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let (lhs, rhs) = hahn_sides(inst, &inst.p(X), &inst.p(Symbol::ALPHA))?;
    Ok(vec![Pair::series(lhs, rhs)])
}

/// Hahn times generalized Cauchy, for `α = q^{-M}` so the inner sum stops at `M`.
fn hahn_gencauchy_sides(
    inst: &Instance,
    x: &MultiPoly,
    lambda: &MultiPoly,
    mu: &MultiPoly,
    a: &MultiPoly,
    m: usize,
) -> Result<Sides, VerifyError> {
    let ctx = inst.ctx()?;
    let q = ctx.qparam();
    let alpha = q.pow(-(m as i64));
    let lhs = egf(ctx, |n| {
        &hahn_poly_in(n, x, &alpha, &q) * &generalized_cauchy_poly_in(n, lambda, mu, a, &q)
    })?;

    let alx = &(&alpha * lambda) * x;
    let mut sum = TruncatedSeries::zero(ctx);
    for k in 0..=m.min(ctx.order()) {
        let mut w = &q_pochhammer_at(a, k, &q) * &q_pochhammer_at(&alpha, k, &q);
        w = &w * &(mu * x).pow(k as u32);
        let mut scale = ctx.q_factorial(k).recip().expect("nonzero");
        if !inst.drop_q_factor() {
            scale = &scale * &alt_weight(ctx, k);
        }
        let qk = q.pow(k as i64);
        let phi = hyper(
            inst,
            BasicHypergeometric::new(vec![a * &qk], vec![zero()], mu * &qk, 1),
            ctx,
        )?;
        let term = finite_pochhammer_series(lambda, k, ctx)?
            .mul(&finite_pochhammer_series(&alx, k, ctx)?.invert()?)?
            .mul(&phi)?
            .scale(&w.scale(&scale))?
            .shift_up(k);
        sum = sum.add(&term)?;
    }
    let rhs = mul_all(
        euler_pochhammer(&alx, ctx)?,
        &[euler_inv_pochhammer(&(lambda * x), ctx)?, euler_inv_pochhammer(lambda, ctx)?, sum],
    )?;
    Ok((lhs, rhs))
}

pub(super) fn hahn_gencauchy_genfunc(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let m = inst.params.knob("M") as usize;
    let (lhs, rhs) = hahn_gencauchy_sides(
        inst,
        &inst.p(X),
        &inst.p(Symbol::LAMBDA),
        &inst.p(Symbol::MU),
        &inst.p(A),
        m,
    )?;
    Ok(vec![Pair::series(lhs, rhs)])
}

pub(super) fn hahn_gencauchy_reductions(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ctx = inst.ctx()?;
    let m = inst.params.knob("M") as usize;
    let alpha = ctx.qparam().pow(-(m as i64));
    let (x, lambda) = (inst.p(X), inst.p(Symbol::LAMBDA));
    let (l1, r1) = hahn_gencauchy_sides(inst, &x, &one(), &lambda, &zero(), m)?;
    let (l2, r2) = hahn_lambda_sides(inst, &x, &lambda, &alpha)?;
    let (l3, r3) = hahn_gencauchy_sides(inst, &x, &one(), &zero(), &zero(), m)?;
    let (l4, r4) = hahn_sides(inst, &x, &alpha)?;
    Ok(vec![
        Pair::series(l1, l2),
        Pair::series(r1, r2),
        Pair::series(l3, l4),
        Pair::series(r3, r4),
    ])
}
