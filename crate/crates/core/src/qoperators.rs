//! q-difference operators and the exponential operator series built from them.
//!
//! ```text
//! D_q{f}(x)      = (f(x) - f(qx)) / x
//! θ_xy{f}(x, y)  = (f(q^-1 x, y) - f(x, qy)) / (q^-1 x - y)
//! θ_x{f}(x)      = (f(q^-1 x) - f(x)) / (q^-1 x)
//! ```
//!
//! The series `R(bD_q)`, `𝔼(bθ)`, `Ẽ(a,b;D_q)` and `L̃(a,b;θ_xy)` terminate on
//! polynomials because each operator lowers degree. With symbolic `q` the
//! `D_q`/`θ_x` series use monomial closed forms so that `1/(q;q)_k` folds into
//! a Gaussian binomial; with numeric `q` they iterate the operator directly.

use thiserror::Error;

use crate::polyring::{divide_exact, divide_exact_linear, Monomial, MultiPoly, PolyError, Symbol};
use crate::qkernel::{binom2, gaussian_binomial_row, q_factorial_value, QParam};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operand is outside the polynomial domain of θ_xy: {0}")]
    OutsideDomain(PolyError),
    #[error("operand has a negative power of {0}")]
    NegativePower(Symbol),
    #[error("operator parameter must not contain the acted-on variable {0}")]
    ParameterContainsVar(Symbol),
    #[error("θ_xy needs two distinct variables")]
    SameVariables,
    #[error("operator series did not terminate")]
    NonTerminating,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which elementary operator a series is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Dq(Symbol),
    ThetaXY(Symbol, Symbol),
    ThetaSingle(Symbol),
}

impl OperatorKind {
    pub fn theta_xy(x: Symbol, y: Symbol) -> Result<Self, OperatorError> {
        if x == y {
            Err(OperatorError::SameVariables)
        } else {
            Ok(OperatorKind::ThetaXY(x, y))
        }
    }

    pub fn acting_vars(&self) -> Vec<Symbol> {
        match *self {
            OperatorKind::Dq(v) | OperatorKind::ThetaSingle(v) => vec![v],
            OperatorKind::ThetaXY(x, y) => vec![x, y],
        }
    }

    /// One application of the operator.
    pub fn apply(&self, p: &MultiPoly, q: &QParam) -> Result<MultiPoly, OperatorError> {
        match *self {
            OperatorKind::Dq(v) => d_q_at(p, v, q),
            OperatorKind::ThetaXY(x, y) => theta_xy_at(p, x, y, q),
            OperatorKind::ThetaSingle(v) => theta_single_at(p, v, q),
        }
    }
}

fn require_polynomial_in(p: &MultiPoly, var: Symbol) -> Result<(), OperatorError> {
    if p.min_degree_in(var).unwrap_or(0) < 0 {
        Err(OperatorError::NegativePower(var))
    } else {
        Ok(())
    }
}

fn require_free_of(b: &MultiPoly, var: Symbol) -> Result<(), OperatorError> {
    if b.contains(var) {
        Err(OperatorError::ParameterContainsVar(var))
    } else {
        Ok(())
    }
}

pub fn d_q(p: &MultiPoly, var: Symbol) -> Result<MultiPoly, OperatorError> {
    d_q_at(p, var, &QParam::Symbolic)
}

pub fn d_q_at(p: &MultiPoly, var: Symbol, q: &QParam) -> Result<MultiPoly, OperatorError> {
    require_polynomial_in(p, var)?;
    let x = MultiPoly::var(var);
    let shifted = p.substitute(var, &(&q.poly() * &x))?;
    Ok(divide_exact_linear(&(p - &shifted), var, &x)?)
}

pub fn theta_xy(p: &MultiPoly, xvar: Symbol, yvar: Symbol) -> Result<MultiPoly, OperatorError> {
    theta_xy_at(p, xvar, yvar, &QParam::Symbolic)
}

pub fn theta_xy_at(p: &MultiPoly, xvar: Symbol, yvar: Symbol, q: &QParam) -> Result<MultiPoly, OperatorError> {
    if xvar == yvar {
        return Err(OperatorError::SameVariables);
    }
    let qinv_x = &q.pow(-1) * &MultiPoly::var(xvar);
    let left = p.substitute(xvar, &qinv_x)?;
    let right = p.substitute(yvar, &(&q.poly() * &MultiPoly::var(yvar)))?;
    let divisor = &qinv_x - &MultiPoly::var(yvar);
    divide_exact_linear(&(&left - &right), xvar, &divisor).map_err(|e| match e {
        PolyError::NonZeroRemainder => OperatorError::OutsideDomain(e),
        other => OperatorError::Poly(other),
    })
}

pub fn theta_single(p: &MultiPoly, var: Symbol) -> Result<MultiPoly, OperatorError> {
    theta_single_at(p, var, &QParam::Symbolic)
}

pub fn theta_single_at(p: &MultiPoly, var: Symbol, q: &QParam) -> Result<MultiPoly, OperatorError> {
    require_polynomial_in(p, var)?;
    let qinv_x = &q.pow(-1) * &MultiPoly::var(var);
    let left = p.substitute(var, &qinv_x)?;
    Ok(divide_exact(&(&left - p), var, &qinv_x)?)
}

/// `p / (q;q)_k`, exact long division in `q` when symbolic.
pub fn divide_by_q_factorial(p: &MultiPoly, k: usize, q: &QParam) -> Result<MultiPoly, OperatorError> {
    match q {
        QParam::Numeric(v) => {
            let f = q_factorial_value(k, v);
            Ok(p.scale(&f.recip().expect("q is not a root of unity")))
        }
        QParam::Symbolic => {
            let mut out = p.clone();
            for i in 1..=k {
                let d = &MultiPoly::one() - &q.pow(i as i64);
                out = divide_exact(&out, Symbol::Q, &d)?;
            }
            Ok(out)
        }
    }
}

/// `Σ_k weight(k) · op^k{p} / (q;q)_k`, iterating `op` until it vanishes.
///
/// `weight(k)` carries everything except the operator power and the
/// `(q;q)_k` denominator.
pub fn operator_series<W>(
    kind: OperatorKind,
    p: &MultiPoly,
    q: &QParam,
    mut weight: W,
) -> Result<MultiPoly, OperatorError>
where
    W: FnMut(usize) -> MultiPoly,
{
    let mut current = q.specialize(p);
    let vars = kind.acting_vars();
    let bound = current
        .terms()
        .map(|(m, _)| vars.iter().map(|&v| m.exponent(v).max(0) as usize).sum::<usize>())
        .max()
        .unwrap_or(0);
    let mut total = MultiPoly::zero();
    for k in 0..=bound + 1 {
        if current.is_zero() {
            return Ok(total);
        }
        let term = divide_by_q_factorial(&(&weight(k) * &current), k, q)?;
        total = &total + &term;
        current = kind.apply(&current, q)?;
    }
    if current.is_zero() {
        Ok(total)
    } else {
        Err(OperatorError::NonTerminating)
    }
}

fn sign(k: usize) -> ExactRational {
    ExactRational::from(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// Applies `var^n · rest ↦ Σ_k coeff(n, k) · var^{n-k} · rest` term by term.
fn monomial_closed_form<C>(p: &MultiPoly, var: Symbol, mut coeff: C) -> Result<MultiPoly, OperatorError>
where
    C: FnMut(usize, usize) -> MultiPoly,
{
    require_polynomial_in(p, var)?;
    let mut out = MultiPoly::zero();
    for (n, c) in p.coefficients_in(var) {
        let n = n as usize;
        for k in 0..=n {
            let factor = coeff(n, k);
            if factor.is_zero() {
                continue;
            }
            let m = Monomial::var_pow(var, (n - k) as i32).expect("nonneg");
            out = &out + (&(&factor * &c).mul_monomial(&m));
        }
    }
    Ok(out)
}

/// Gaussian-binomial rows shared across monomials of one call.
struct BinomialCache {
    q: QParam,
    rows: Vec<Vec<MultiPoly>>,
}

impl BinomialCache {
    fn new(q: &QParam) -> Self {
        BinomialCache { q: q.clone(), rows: Vec::new() }
    }

    fn get(&mut self, n: usize, k: usize) -> MultiPoly {
        while self.rows.len() <= n {
            let m = self.rows.len();
            self.rows.push(gaussian_binomial_row(m, &self.q));
        }
        self.rows[n][k].clone()
    }
}

/// `R(bD_q) = Σ_k (-1)^k q^{k(k-1)/2} (bD_q)^k / (q;q)_k`.
pub fn apply_r(b: &MultiPoly, p: &MultiPoly, var: Symbol, q: &QParam) -> Result<MultiPoly, OperatorError> {
    require_free_of(b, var)?;
    let b = q.specialize(b);
    match q {
        QParam::Symbolic => {
            let mut binom = BinomialCache::new(q);
            monomial_closed_form(p, var, |n, k| {
                (&binom.get(n, k) * &q.pow(binom2(k as i64)).scale(&sign(k))) * b.pow(k as u32)
            })
        }
        QParam::Numeric(_) => operator_series(OperatorKind::Dq(var), p, q, |k| {
            q.pow(binom2(k as i64)).scale(&sign(k)) * b.pow(k as u32)
        }),
    }
}

/// `𝔼(bθ) = Σ_k q^{k(k-1)/2} (bθ)^k / (q;q)_k` with `θ` the single-variable theta.
pub fn apply_e_frak(b: &MultiPoly, p: &MultiPoly, var: Symbol, q: &QParam) -> Result<MultiPoly, OperatorError> {
    require_free_of(b, var)?;
    let b = q.specialize(b);
    match q {
        QParam::Symbolic => {
            // θ^k{v^n} = q^{k(1-n) + k(k-1)/2} (q;q)_n/(q;q)_{n-k} v^{n-k}
            let mut binom = BinomialCache::new(q);
            monomial_closed_form(p, var, |n, k| {
                let (n, k) = (n as i64, k as i64);
                let qexp = 2 * binom2(k) + k * (1 - n);
                (&binom.get(n as usize, k as usize) * &q.pow(qexp)) * b.pow(k as u32)
            })
        }
        QParam::Numeric(_) => operator_series(OperatorKind::ThetaSingle(var), p, q, |k| {
            q.pow(binom2(k as i64)) * b.pow(k as u32)
        }),
    }
}

/// `Ẽ(a,b;D_q) = Σ_k (-1)^k q^{k(k-1)/2} (a;q)_k (bD_q)^k / (q;q)_k`.
pub fn apply_e_tilde(
    a: &MultiPoly,
    b: &MultiPoly,
    p: &MultiPoly,
    var: Symbol,
    q: &QParam,
) -> Result<MultiPoly, OperatorError> {
    require_free_of(b, var)?;
    require_free_of(a, var)?;
    let a = q.specialize(a);
    let b = q.specialize(b);
    let mut poch = vec![MultiPoly::one()];
    let mut poch_at = |k: usize| {
        while poch.len() <= k {
            let j = poch.len() - 1;
            let next = &poch[j] * &(&MultiPoly::one() - &(&a * &q.pow(j as i64)));
            poch.push(next);
        }
        poch[k].clone()
    };
    match q {
        QParam::Symbolic => {
            let mut binom = BinomialCache::new(q);
            monomial_closed_form(p, var, |n, k| {
                let w = &binom.get(n, k) * &q.pow(binom2(k as i64)).scale(&sign(k));
                &(&w * &poch_at(k)) * &b.pow(k as u32)
            })
        }
        QParam::Numeric(_) => operator_series(OperatorKind::Dq(var), p, q, |k| {
            &(&q.pow(binom2(k as i64)).scale(&sign(k)) * &poch_at(k)) * &b.pow(k as u32)
        }),
    }
}

/// `L̃(a,b;θ_xy) = Σ_k q^{k(k-1)/2} (a;q)_k (bθ_xy)^k / (q;q)_k`.
///
/// Only defined where iterated `θ_xy` stays polynomial, e.g. on the span of
/// `p_n(y, x)`; elsewhere the result is [`OperatorError::OutsideDomain`].
pub fn apply_l_tilde(
    a: &MultiPoly,
    b: &MultiPoly,
    p: &MultiPoly,
    xvar: Symbol,
    yvar: Symbol,
    q: &QParam,
) -> Result<MultiPoly, OperatorError> {
    let kind = OperatorKind::theta_xy(xvar, yvar)?;
    for v in [xvar, yvar] {
        require_free_of(a, v)?;
        require_free_of(b, v)?;
    }
    let a = q.specialize(a);
    let b = q.specialize(b);
    let mut poch = MultiPoly::one();
    operator_series(kind, p, q, |k| {
        if k > 0 {
            poch = &poch * &(&MultiPoly::one() - &(&a * &q.pow(k as i64 - 1)));
        }
        &(&q.pow(binom2(k as i64)) * &poch) * &b.pow(k as u32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, var};
    use crate::qkernel::{cauchy_poly, cauchy_poly_in, generalized_cauchy_poly};

    const Q: Symbol = Symbol::Q;
    const X: Symbol = Symbol::X;
    const Y: Symbol = Symbol::Y;
    const A: Symbol = Symbol::A;
    const B: Symbol = Symbol::B;
    const Z: Symbol = Symbol::Z;

    fn one() -> MultiPoly {
        MultiPoly::one()
    }

    fn qinv() -> MultiPoly {
        MultiPoly::var_pow(Q, -1).unwrap()
    }

    #[test]
    fn d_q_examples() {
        assert_eq!(d_q(&var(X).pow(3), X).unwrap(), (one() - var(Q).pow(3)) * var(X).pow(2));
        assert!(d_q(&(var(Y) + rat(2, 1)), X).unwrap().is_zero());
        assert_eq!(
            d_q(&(var(X).pow(2) + var(X)), X).unwrap(),
            (one() - var(Q).pow(2)) * var(X) + (one() - var(Q))
        );
        assert_eq!(d_q(&qinv(), X).unwrap(), MultiPoly::zero());
        assert!(matches!(d_q(&MultiPoly::var_pow(X, -1).unwrap(), X), Err(OperatorError::NegativePower(_))));
    }

    #[test]
    fn theta_xy_examples() {
        assert_eq!(theta_xy(&(var(X) - var(Y)), X, Y).unwrap(), one() - var(Q));
        let p2_yx = (var(Y) - var(X)) * (var(Y) - var(Q) * var(X));
        assert_eq!(
            theta_xy(&p2_yx, X, Y).unwrap(),
            (one() - var(Q).pow(2)) * (var(X) - var(Y))
        );
        assert!(matches!(theta_xy(&var(X), X, Y), Err(OperatorError::OutsideDomain(_))));
        assert_eq!(theta_xy(&var(X), X, X), Err(OperatorError::SameVariables));
        assert_eq!(OperatorKind::theta_xy(X, X), Err(OperatorError::SameVariables));
    }

    #[test]
    fn theta_xy_leaves_forward_cauchy_span() {
        // θ_xy{p_2(x,y)} = (1-q^2)(q^-1 x - q y), not a multiple of p_1(x,y)
        let got = theta_xy(&cauchy_poly(2), X, Y).unwrap();
        assert_eq!(got, (one() - var(Q).pow(2)) * (qinv() * var(X) - var(Q) * var(Y)));
    }

    #[test]
    fn theta_xy_closure_on_swapped_span() {
        for n in 1..=5 {
            let pn = cauchy_poly_in(n, &var(Y), &var(X), &QParam::Symbolic);
            let pm = cauchy_poly_in(n - 1, &var(Y), &var(X), &QParam::Symbolic);
            let coeff = -(one() - var(Q).pow(n as u32));
            assert_eq!(theta_xy(&pn, X, Y).unwrap(), coeff * pm, "n = {n}");
        }
    }

    #[test]
    fn theta_single_examples() {
        assert_eq!(theta_single(&var(A), A).unwrap(), one() - var(Q));
        assert!(theta_single(&one(), A).unwrap().is_zero());
        assert_eq!(theta_single(&var(A).pow(2), A).unwrap(), (qinv() - var(Q)) * var(A));
    }

    #[test]
    fn r_examples() {
        let s = QParam::Symbolic;
        assert_eq!(apply_r(&var(B), &var(A), A, &s).unwrap(), var(A) - var(B));
        assert_eq!(apply_r(&var(B), &one(), A, &s).unwrap(), one());
        assert_eq!(apply_r(&var(Y), &var(X).pow(2), X, &s).unwrap(), cauchy_poly(2));
        assert_eq!(
            apply_r(&var(A), &var(A), A, &s),
            Err(OperatorError::ParameterContainsVar(A))
        );
    }

    #[test]
    fn e_frak_examples() {
        let s = QParam::Symbolic;
        assert_eq!(apply_e_frak(&var(B), &var(A), A, &s).unwrap(), var(A) + var(B));
        assert_eq!(apply_e_frak(&var(B), &one(), A, &s).unwrap(), one());
        // Oracle: iterate theta_single and divide by (q;q)_k exactly.
        let p = var(A).pow(2);
        let th1 = theta_single(&p, A).unwrap();
        let th2 = theta_single(&th1, A).unwrap();
        let expected = p.clone()
            + divide_by_q_factorial(&(&th1 * &var(B)), 1, &s).unwrap()
            + divide_by_q_factorial(&(&(&th2 * &var(Q)) * &var(B).pow(2)), 2, &s).unwrap();
        assert_eq!(apply_e_frak(&var(B), &p, A, &s).unwrap(), expected);
    }

    #[test]
    fn e_tilde_examples() {
        let s = QParam::Symbolic;
        assert_eq!(
            apply_e_tilde(&var(A), &var(Y), &var(X).pow(2), X, &s).unwrap(),
            generalized_cauchy_poly(2)
        );
        assert_eq!(apply_e_tilde(&var(A), &var(Y), &one(), X, &s).unwrap(), one());
        for n in 0..5 {
            assert_eq!(
                apply_e_tilde(&MultiPoly::zero(), &var(Y), &var(X).pow(n), X, &s).unwrap(),
                cauchy_poly(n as usize)
            );
        }
    }

    #[test]
    fn l_tilde_examples() {
        let s = QParam::Symbolic;
        let yx = var(Y) - var(X);
        assert_eq!(
            apply_l_tilde(&var(A), &var(Z), &yx, X, Y, &s).unwrap(),
            &yx - &((one() - var(A)) * var(Z))
        );
        assert_eq!(apply_l_tilde(&var(A), &var(Z), &one(), X, Y, &s).unwrap(), one());
        assert!(matches!(
            apply_l_tilde(&var(A), &var(Z), &var(X), X, Y, &s),
            Err(OperatorError::OutsideDomain(_))
        ));
    }

    #[test]
    fn symbolic_and_numeric_paths_agree() {
        let qv = QParam::Numeric(ExactRational::new(-1, 3));
        let p = var(X).pow(3) - rat(2, 5) * var(X) * var(Y) + var(Q) * var(X).pow(2);
        let b = var(Y) + rat(1, 2);
        let sym = apply_r(&b, &p, X, &QParam::Symbolic).unwrap();
        assert_eq!(qv.specialize(&sym), apply_r(&b, &p, X, &qv).unwrap());
        let sym = apply_e_tilde(&var(A), &b, &p, X, &QParam::Symbolic).unwrap();
        assert_eq!(qv.specialize(&sym), apply_e_tilde(&var(A), &b, &p, X, &qv).unwrap());
        let sym = apply_e_frak(&b, &p, X, &QParam::Symbolic).unwrap();
        assert_eq!(qv.specialize(&sym), apply_e_frak(&b, &p, X, &qv).unwrap());
    }

    #[test]
    fn iterated_series_matches_closed_form_symbolically() {
        let s = QParam::Symbolic;
        for n in 0..=5u32 {
            let p = var(X).pow(n);
            let iter = operator_series(OperatorKind::Dq(X), &p, &s, |k| {
                let mut poch = one();
                for j in 0..k {
                    poch = poch * (one() - var(A) * s.pow(j as i64));
                }
                s.pow(binom2(k as i64)).scale(&sign(k)) * poch * var(Y).pow(k as u32)
            })
            .unwrap();
            assert_eq!(iter, generalized_cauchy_poly(n as usize));
        }
    }
}
