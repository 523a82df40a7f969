//! Truncated formal power series in one series variable, with exact
//! polynomial coefficients and a fixed rational `q`.
//!
//! Coefficients never contain the series variable or `q`: every `q` is
//! already a number, so `1/(q;q)_n` is just a rational.

use std::fmt;

use thiserror::Error;

use crate::polyring::{Monomial, MultiPoly, PolyError, Symbol};
use crate::qkernel::{binom2, q_factorial_value, QParam};
use crate::qoperators::OperatorError;
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series belong to different contexts")]
    ContextMismatch,
    #[error("constant term is not a nonzero rational")]
    NonUnitConstantTerm,
    #[error("denominator parameter #{index} ({param}) makes (d;q)_{n} non-invertible")]
    NonInvertibleDenParam { index: usize, param: String, n: usize },
    #[error("q = {0} is not allowed (must avoid 0, 1, -1)")]
    InvalidQ(ExactRational),
    #[error("series variable cannot be q")]
    SeriesVarIsQ,
    #[error("coefficient contains {0}")]
    CoefficientContainsSymbol(Symbol),
    #[error("argument power must be positive")]
    ZeroArgumentPower,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// The expansion frame: series variable, truncation order `N`, value of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesContext {
    series_var: Symbol,
    order: usize,
    q: ExactRational,
}

impl SeriesContext {
    pub fn new(series_var: Symbol, order: usize, q: ExactRational) -> Result<Self, SeriesError> {
        if series_var == Symbol::Q {
            return Err(SeriesError::SeriesVarIsQ);
        }
        // For rational q, (q;q)_n vanishes only at q = ±1 (and q = 0 is excluded).
        if q.is_zero() || q.abs().is_one() {
            return Err(SeriesError::InvalidQ(q));
        }
        Ok(SeriesContext { series_var, order, q })
    }

    pub fn series_var(&self) -> Symbol {
        self.series_var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn q(&self) -> &ExactRational {
        &self.q
    }

    pub fn qparam(&self) -> QParam {
        QParam::Numeric(self.q.clone())
    }

    pub fn q_pow(&self, e: i64) -> ExactRational {
        self.q.pow(i32::try_from(e).expect("exponent fits")).expect("q nonzero")
    }

    pub fn q_factorial(&self, n: usize) -> ExactRational {
        q_factorial_value(n, &self.q)
    }

    pub fn with_order(&self, order: usize) -> SeriesContext {
        SeriesContext { order, ..self.clone() }
    }
}

/// `Σ_{k=0}^{N} coeffs[k] t^k + O(t^{N+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ctx: SeriesContext,
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    pub fn zero(ctx: &SeriesContext) -> Self {
        TruncatedSeries {
            ctx: ctx.clone(),
            coeffs: vec![MultiPoly::zero(); ctx.order + 1],
        }
    }

    pub fn one(ctx: &SeriesContext) -> Self {
        TruncatedSeries::constant(MultiPoly::one(), ctx).expect("1 is a valid coefficient")
    }

    pub fn constant(c: MultiPoly, ctx: &SeriesContext) -> Result<Self, SeriesError> {
        let mut s = TruncatedSeries::zero(ctx);
        s.coeffs[0] = c;
        s.validate()?;
        Ok(s)
    }

    /// Coefficients beyond the order are dropped; missing ones are zero.
    pub fn from_coeffs(ctx: &SeriesContext, mut coeffs: Vec<MultiPoly>) -> Result<Self, SeriesError> {
        coeffs.resize(ctx.order + 1, MultiPoly::zero());
        let s = TruncatedSeries { ctx: ctx.clone(), coeffs };
        s.validate()?;
        Ok(s)
    }

    /// Reads a polynomial in the series variable (and possibly `q`) as a series.
    pub fn from_poly(p: &MultiPoly, ctx: &SeriesContext) -> Result<Self, SeriesError> {
        let p = ctx.qparam().specialize(p);
        let mut s = TruncatedSeries::zero(ctx);
        for (deg, c) in p.coefficients_in(ctx.series_var) {
            let deg = deg as usize;
            if deg <= ctx.order {
                s.coeffs[deg] = c;
            }
        }
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<(), SeriesError> {
        for c in &self.coeffs {
            for sym in [self.ctx.series_var, Symbol::Q] {
                if c.contains(sym) {
                    return Err(SeriesError::CoefficientContainsSymbol(sym));
                }
            }
        }
        Ok(())
    }

    pub fn context(&self) -> &SeriesContext {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.ctx.order
    }

    pub fn coeff(&self, k: usize) -> &MultiPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    fn check_ctx(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(SeriesError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_ctx(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_ctx(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with<F: Fn(&MultiPoly, &MultiPoly) -> MultiPoly>(&self, other: &TruncatedSeries, f: F) -> TruncatedSeries {
        TruncatedSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product truncated at the context order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_ctx(other)?;
        let n = self.ctx.order;
        let mut out = vec![MultiPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(TruncatedSeries { ctx: self.ctx.clone(), coeffs: out })
    }

    /// Multiplies every coefficient by a polynomial free of the series variable.
    pub fn scale(&self, c: &MultiPoly) -> Result<TruncatedSeries, SeriesError> {
        let c = self.ctx.qparam().specialize(c);
        if c.contains(self.ctx.series_var) {
            return self.mul(&TruncatedSeries::from_poly(&c, &self.ctx)?);
        }
        Ok(TruncatedSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a * &c).collect(),
        })
    }

    pub fn scale_rational(&self, c: &ExactRational) -> TruncatedSeries {
        TruncatedSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(&self.ctx);
        for i in 0..=self.ctx.order {
            if i >= k {
                s.coeffs[i] = self.coeffs[i - k].clone();
            }
        }
        s
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn invert(&self) -> Result<TruncatedSeries, SeriesError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .and_then(|c| c.recip())
            .ok_or(SeriesError::NonUnitConstantTerm)?;
        let n = self.ctx.order;
        let mut inv: Vec<MultiPoly> = Vec::with_capacity(n + 1);
        inv.push(MultiPoly::constant(c0.clone()));
        for m in 1..=n {
            let mut acc = MultiPoly::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &inv[m - i]);
                }
            }
            inv.push(acc.scale(&-&c0));
        }
        Ok(TruncatedSeries { ctx: self.ctx.clone(), coeffs: inv })
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let n = self.ctx.order;
        let mut e: Vec<MultiPoly> = vec![MultiPoly::one()];
        // n E_n = Σ_{k=1}^n k f_k E_{n-k}
        for m in 1..=n {
            let mut acc = MultiPoly::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &e[m - k]).scale(&ExactRational::from(k as i64));
                }
            }
            e.push(acc.scale(&ExactRational::new(1, m as i64)));
        }
        Ok(TruncatedSeries { ctx: self.ctx.clone(), coeffs: e })
    }

    /// Applies `op` to every coefficient.
    pub fn map_coefficients<F>(&self, mut op: F) -> Result<TruncatedSeries, SeriesError>
    where
        F: FnMut(&MultiPoly) -> Result<MultiPoly, SeriesError>,
    {
        let coeffs = self.coeffs.iter().map(&mut op).collect::<Result<Vec<_>, _>>()?;
        let s = TruncatedSeries { ctx: self.ctx.clone(), coeffs };
        s.validate()?;
        Ok(s)
    }

    /// `t -> q^j t`: coefficient `k` picks up `q^{jk}`.
    pub fn scale_series_var(&self, j: i64) -> TruncatedSeries {
        TruncatedSeries {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&self.ctx.q_pow(j * k as i64)))
                .collect(),
        }
    }

    /// Keeps only orders `0..=m` (`m` at most the current order).
    pub fn truncate(&self, m: usize) -> TruncatedSeries {
        assert!(m <= self.ctx.order, "cannot extend a truncated series");
        TruncatedSeries {
            ctx: self.ctx.with_order(m),
            coeffs: self.coeffs[..=m].to_vec(),
        }
    }

    /// Lowest order where the two series differ.
    pub fn first_mismatch(&self, other: &TruncatedSeries) -> Result<Option<usize>, SeriesError> {
        self.check_ctx(other)?;
        Ok((0..=self.ctx.order).find(|&k| self.coeffs[k] != other.coeffs[k]))
    }

    /// Sum of `terms` (all in this context).
    pub fn sum<'a, I>(ctx: &SeriesContext, terms: I) -> Result<TruncatedSeries, SeriesError>
    where
        I: IntoIterator<Item = &'a TruncatedSeries>,
    {
        terms.into_iter().try_fold(TruncatedSeries::zero(ctx), |acc, s| acc.add(s))
    }
}

/// One `t^k: <polynomial>` line per order.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{}^{}: {}", self.ctx.series_var, k, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(q={}, ", self.ctx.q)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

fn require_free_of_t(u: &MultiPoly, ctx: &SeriesContext) -> Result<MultiPoly, SeriesError> {
    let u = ctx.qparam().specialize(u);
    if u.contains(ctx.series_var) {
        Err(SeriesError::CoefficientContainsSymbol(ctx.series_var))
    } else {
        Ok(u)
    }
}

/// `1/(u t; q)_∞ = Σ_k u^k t^k / (q;q)_k`.
pub fn euler_inv_pochhammer(u: &MultiPoly, ctx: &SeriesContext) -> Result<TruncatedSeries, SeriesError> {
    let u = require_free_of_t(u, ctx)?;
    let mut coeffs = Vec::with_capacity(ctx.order + 1);
    let mut upow = MultiPoly::one();
    for k in 0..=ctx.order {
        coeffs.push(upow.scale(&ctx.q_factorial(k).recip().expect("nonzero")));
        upow = &upow * &u;
    }
    Ok(TruncatedSeries { ctx: ctx.clone(), coeffs })
}

/// `(u t; q)_∞ = Σ_k (-1)^k q^{k(k-1)/2} u^k t^k / (q;q)_k`.
pub fn euler_pochhammer(u: &MultiPoly, ctx: &SeriesContext) -> Result<TruncatedSeries, SeriesError> {
    let base = euler_inv_pochhammer(u, ctx)?;
    let coeffs = base
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let s = if k % 2 == 0 { ctx.q_pow(binom2(k as i64)) } else { -ctx.q_pow(binom2(k as i64)) };
            c.scale(&s)
        })
        .collect();
    Ok(TruncatedSeries { ctx: ctx.clone(), coeffs })
}

/// `(u t; q)_∞` as the product `∏_j (1 - u q^j t)`, computed from
/// `log ∏_j (1 - u q^j t) = -Σ_m u^m t^m / (m (1 - q^m))`.
pub fn pochhammer_infinite_product(u: &MultiPoly, ctx: &SeriesContext) -> Result<TruncatedSeries, SeriesError> {
    let u = require_free_of_t(u, ctx)?;
    let mut log = TruncatedSeries::zero(ctx);
    let mut upow = MultiPoly::one();
    for m in 1..=ctx.order {
        upow = &upow * &u;
        let denom = &ExactRational::from(m as i64) * &(&ExactRational::one() - &ctx.q_pow(m as i64));
        log.coeffs[m] = upow.scale(&-denom.recip().expect("q not a root of unity"));
    }
    log.exp()
}

/// `(u t; q)_n`, a polynomial in `t` truncated at the order.
pub fn finite_pochhammer_series(u: &MultiPoly, n: usize, ctx: &SeriesContext) -> Result<TruncatedSeries, SeriesError> {
    let u = require_free_of_t(u, ctx)?;
    let t = MultiPoly::var(ctx.series_var);
    let base = TruncatedSeries::from_poly(&(&u * &t), ctx)?;
    pochhammer_of(&base, n)
}

/// `(d; q)_n = ∏_{j<n} (1 - d q^j)` for a series-valued parameter `d`.
pub fn pochhammer_of(d: &TruncatedSeries, n: usize) -> Result<TruncatedSeries, SeriesError> {
    let ctx = d.context();
    let one = TruncatedSeries::one(ctx);
    let mut acc = one.clone();
    for j in 0..n {
        let factor = one.sub(&d.scale_rational(&ctx.q_pow(j as i64)))?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Basic hypergeometric series
///
/// ```text
/// rΦs[a_1..a_r; b_1..b_s; q, z] = Σ_n [(-1)^n q^{n(n-1)/2}]^{1+s-r} (a;q)_n / (b;q)_n z^n / (q;q)_n
/// ```
///
/// with `z = arg_coeff · t^arg_tpower`. Parameters may contain the series
/// variable; denominator Pochhammers must have an invertible constant term.
#[derive(Clone, Debug)]
pub struct BasicHypergeometric {
    pub num: Vec<MultiPoly>,
    pub den: Vec<MultiPoly>,
    pub arg_coeff: MultiPoly,
    pub arg_tpower: usize,
    balance: Option<i64>,
}

impl BasicHypergeometric {
    pub fn new(num: Vec<MultiPoly>, den: Vec<MultiPoly>, arg_coeff: MultiPoly, arg_tpower: usize) -> Self {
        BasicHypergeometric { num, den, arg_coeff, arg_tpower, balance: None }
    }

    /// The exponent `1 + s - r` of the sign/q-power factor.
    pub fn balance(&self) -> i64 {
        self.balance
            .unwrap_or(1 + self.den.len() as i64 - self.num.len() as i64)
    }

    /// Overrides the exponent of the sign/q-power factor.
    pub fn with_balance(mut self, e: i64) -> Self {
        self.balance = Some(e);
        self
    }

    pub fn series(&self, ctx: &SeriesContext) -> Result<TruncatedSeries, SeriesError> {
        if self.arg_tpower == 0 {
            return Err(SeriesError::ZeroArgumentPower);
        }
        let one = TruncatedSeries::one(ctx);
        let to_series = |p: &MultiPoly| TruncatedSeries::from_poly(p, ctx);
        let nums = self.num.iter().map(to_series).collect::<Result<Vec<_>, _>>()?;
        let dens = self.den.iter().map(to_series).collect::<Result<Vec<_>, _>>()?;
        let arg = require_free_of_t(&self.arg_coeff, ctx)?;
        let balance = self.balance();

        let mut num_poch = one.clone();
        let mut den_poch: Vec<TruncatedSeries> = vec![one.clone(); dens.len()];
        let mut total = TruncatedSeries::zero(ctx);
        let mut n = 0usize;
        while n * self.arg_tpower <= ctx.order {
            if n > 0 {
                let qn = ctx.q_pow(n as i64 - 1);
                for a in &nums {
                    num_poch = num_poch.mul(&one.sub(&a.scale_rational(&qn))?)?;
                }
                for (d, acc) in dens.iter().zip(den_poch.iter_mut()) {
                    *acc = acc.mul(&one.sub(&d.scale_rational(&qn))?)?;
                }
            }
            let mut term = num_poch.clone();
            for (index, acc) in den_poch.iter().enumerate() {
                let inv = acc.invert().map_err(|_| SeriesError::NonInvertibleDenParam {
                    index,
                    param: self.den[index].to_string(),
                    n,
                })?;
                term = term.mul(&inv)?;
            }
            let sign = if n % 2 == 1 && balance % 2 != 0 { -1 } else { 1 };
            let factor = &ctx.q_pow(balance * binom2(n as i64)) * &ExactRational::from(sign);
            let factor = &factor * &ctx.q_factorial(n).recip().expect("nonzero");
            let term = term
                .scale(&arg.pow(n as u32).scale(&factor))?
                .shift_up(n * self.arg_tpower);
            total = total.add(&term)?;
            n += 1;
        }
        Ok(total)
    }
}

/// Convenience wrapper around [`BasicHypergeometric`].
pub fn phi_rs(
    num: &[MultiPoly],
    den: &[MultiPoly],
    arg_coeff: &MultiPoly,
    arg_tpower: usize,
    ctx: &SeriesContext,
) -> Result<TruncatedSeries, SeriesError> {
    BasicHypergeometric::new(num.to_vec(), den.to_vec(), arg_coeff.clone(), arg_tpower).series(ctx)
}

/// `t^k` as a monomial, for building polynomial parameters.
pub fn series_var_pow(ctx: &SeriesContext, k: u32) -> MultiPoly {
    MultiPoly::term(
        ExactRational::one(),
        Monomial::var_pow(ctx.series_var, k as i32).expect("nonneg"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, var};
    use crate::qoperators::d_q_at;

    const X: Symbol = Symbol::X;
    const Y: Symbol = Symbol::Y;
    const A: Symbol = Symbol::A;
    const T: Symbol = Symbol::T;

    fn ctx(order: usize) -> SeriesContext {
        SeriesContext::new(T, order, ExactRational::new(1, 2)).unwrap()
    }

    fn poly_series(p: MultiPoly, c: &SeriesContext) -> TruncatedSeries {
        TruncatedSeries::from_poly(&p, c).unwrap()
    }

    #[test]
    fn context_validation() {
        for bad in [0, 1, -1] {
            assert!(SeriesContext::new(T, 4, ExactRational::from(bad)).is_err());
        }
        assert_eq!(
            SeriesContext::new(Symbol::Q, 4, ExactRational::new(1, 2)),
            Err(SeriesError::SeriesVarIsQ)
        );
        assert!(SeriesContext::new(T, 4, ExactRational::from(2)).is_ok());
    }

    #[test]
    fn products() {
        let c = ctx(2);
        let a = poly_series(MultiPoly::one() + var(T), &c);
        let b = poly_series(MultiPoly::one() - var(T), &c);
        assert_eq!(a.mul(&b).unwrap(), poly_series(MultiPoly::one() - var(T).pow(2), &c));
        let other = SeriesContext::new(T, 2, ExactRational::new(2, 3)).unwrap();
        assert_eq!(a.mul(&TruncatedSeries::one(&other)), Err(SeriesError::ContextMismatch));
    }

    #[test]
    fn coefficient_invariant() {
        let c = ctx(3);
        assert!(TruncatedSeries::from_coeffs(&c, vec![var(T)]).is_err());
        assert!(TruncatedSeries::from_coeffs(&c, vec![var(Symbol::Q)]).is_err());
        // q inside from_poly is specialized, not rejected
        let s = poly_series(var(Symbol::Q) * var(T), &c);
        assert_eq!(s.coeff(1), &rat(1, 2));
    }

    #[test]
    fn inversion() {
        let c = ctx(6);
        let geo = poly_series(MultiPoly::one() - var(T), &c).invert().unwrap();
        assert!(geo.coeffs().iter().all(MultiPoly::is_one));
        assert_eq!(TruncatedSeries::one(&c).invert().unwrap(), TruncatedSeries::one(&c));
        let s = poly_series(MultiPoly::one() + var(X) * var(T) - rat(2, 3) * var(T).pow(3), &c);
        assert_eq!(s.mul(&s.invert().unwrap()).unwrap(), TruncatedSeries::one(&c));
        assert_eq!(poly_series(var(T), &c).invert(), Err(SeriesError::NonUnitConstantTerm));
        assert_eq!(
            poly_series(var(X) + var(T), &c).invert(),
            Err(SeriesError::NonUnitConstantTerm)
        );
    }

    #[test]
    fn euler_pair_is_inverse() {
        let c = ctx(8);
        let u = var(X) - rat(1, 3) * var(Y);
        let e = euler_pochhammer(&u, &c).unwrap();
        let ei = euler_inv_pochhammer(&u, &c).unwrap();
        assert_eq!(e.mul(&ei).unwrap(), TruncatedSeries::one(&c));
        // coefficient k of the inverse product: x^k/(q;q)_k
        let qf3 = c.q_factorial(3);
        assert_eq!(euler_inv_pochhammer(&var(X), &c).unwrap().coeff(3), &var(X).pow(3).scale(&qf3.recip().unwrap()));
        // t^1 of (yt;q)_∞ is -y/(1-q); -y alone is the finite (yt;q)_1.
        assert_eq!(euler_pochhammer(&var(Y), &c).unwrap().coeff(1), &(var(Y) * rat(-2, 1)));
        assert_eq!(finite_pochhammer_series(&var(Y), 1, &c).unwrap().coeff(1), &-var(Y));
        assert_eq!(euler_pochhammer(&MultiPoly::zero(), &c).unwrap(), TruncatedSeries::one(&c));
    }

    #[test]
    fn infinite_product_matches_euler_sum() {
        for q in [ExactRational::new(1, 2), ExactRational::new(2, 3), ExactRational::new(-1, 3)] {
            let c = SeriesContext::new(T, 7, q).unwrap();
            let u = var(X) + rat(1, 2);
            assert_eq!(
                pochhammer_infinite_product(&u, &c).unwrap(),
                euler_pochhammer(&u, &c).unwrap()
            );
        }
    }

    #[test]
    fn euler_pochhammer_functional_equation() {
        // (ut;q)_∞ = (1 - ut) (uqt;q)_∞
        let c = ctx(8);
        let u = var(Y);
        let e = euler_pochhammer(&u, &c).unwrap();
        let rhs = poly_series(MultiPoly::one() - &u * &var(T), &c).mul(&e.scale_series_var(1)).unwrap();
        assert_eq!(e, rhs);
    }

    #[test]
    fn finite_pochhammer() {
        let c = ctx(5);
        let q = rat(1, 2);
        let expected = MultiPoly::one() - (MultiPoly::one() + q.clone()) * var(X) * var(T)
            + q * var(X).pow(2) * var(T).pow(2);
        assert_eq!(finite_pochhammer_series(&var(X), 2, &c).unwrap(), poly_series(expected, &c));
        assert_eq!(finite_pochhammer_series(&var(X), 0, &c).unwrap(), TruncatedSeries::one(&c));
    }

    #[test]
    fn phi_examples() {
        let c = ctx(6);
        // 1Φ0[a; -; q, t]: coefficient (a;q)_k/(q;q)_k
        let s = phi_rs(&[var(A)], &[], &MultiPoly::one(), 1, &c).unwrap();
        for k in 0..=6 {
            let poch = crate::qkernel::q_pochhammer_at(&var(A), k, &c.qparam());
            assert_eq!(s.coeff(k), &poch.scale(&c.q_factorial(k).recip().unwrap()));
        }
        // 0Φ0 has balance 1 and equals (z;q)_∞
        let z = var(X);
        assert_eq!(phi_rs(&[], &[], &z, 1, &c).unwrap(), euler_pochhammer(&z, &c).unwrap());
        // 1Φ1[0;0] is also (z;q)_∞ because (0;q)_n = 1
        assert_eq!(
            phi_rs(&[MultiPoly::zero()], &[MultiPoly::zero()], &z, 1, &c).unwrap(),
            euler_pochhammer(&z, &c).unwrap()
        );
    }

    #[test]
    fn phi_pole_detected() {
        let c = ctx(4);
        // d = q^-1 = 2 at q = 1/2: (d;q)_2 = (1-2)(1-1) = 0
        let err = phi_rs(&[var(A)], &[rat(2, 1)], &MultiPoly::one(), 1, &c).unwrap_err();
        assert!(matches!(err, SeriesError::NonInvertibleDenParam { index: 0, n: 2, .. }));
    }

    #[test]
    fn phi_argument_power() {
        let c = ctx(6);
        let s = phi_rs(&[var(A)], &[], &MultiPoly::one(), 2, &c).unwrap();
        assert!(s.coeff(1).is_zero() && s.coeff(3).is_zero() && s.coeff(5).is_zero());
        assert!(!s.coeff(4).is_zero());
    }

    #[test]
    fn map_dq_over_euler() {
        let c = ctx(6);
        let s = euler_inv_pochhammer(&var(X), &c).unwrap();
        let qp = c.qparam();
        let mapped = s.map_coefficients(|p| Ok(d_q_at(p, X, &qp)?)).unwrap();
        for k in 1..=6usize {
            let expected = var(X)
                .pow(k as u32 - 1)
                .scale(&(&(&ExactRational::one() - &c.q_pow(k as i64)) * &c.q_factorial(k).recip().unwrap()));
            assert_eq!(mapped.coeff(k), &expected);
        }
        assert_eq!(s.map_coefficients(|p| Ok(p.clone())).unwrap(), s);
    }

    #[test]
    fn series_var_scaling() {
        let c = ctx(5);
        let geo = poly_series(MultiPoly::one() - var(T), &c).invert().unwrap();
        assert_eq!(geo.scale_series_var(0), geo);
        let once = geo.scale_series_var(1);
        for k in 0..=5 {
            assert_eq!(once.coeff(k), &MultiPoly::constant(c.q_pow(k as i64)));
        }
        assert_eq!(once.scale_series_var(1), geo.scale_series_var(2));
    }

    #[test]
    fn truncation_coherence() {
        let big = ctx(8);
        let small = ctx(5);
        let u = var(X) + rat(2, 7);
        assert_eq!(euler_pochhammer(&u, &big).unwrap().truncate(5), euler_pochhammer(&u, &small).unwrap());
        assert_eq!(euler_inv_pochhammer(&u, &big).unwrap().truncate(5), euler_inv_pochhammer(&u, &small).unwrap());
        let phi = |c: &SeriesContext| {
            phi_rs(&[var(A), rat(1, 3)], &[&var(X) * &var(T)], &var(Y), 1, c).unwrap()
        };
        assert_eq!(phi(&big).truncate(5), phi(&small));
    }

    #[test]
    fn rendering() {
        let c = ctx(2);
        let s = poly_series(MultiPoly::one() - var(X) * var(T), &c);
        assert_eq!(s.to_string(), "t^0: 1\nt^1: -x\nt^2: 0\n");
    }
}
