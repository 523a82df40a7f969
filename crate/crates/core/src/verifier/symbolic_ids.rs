//! Polynomial identities with symbolic `q`, checked over a range of indices.

use super::sampling::random_univariate;
use super::{Instance, Pair, VerifyError};
use crate::polyring::{divide_exact, MultiPoly, Symbol};
use crate::qkernel::{
    binom2, cauchy_poly, cauchy_poly_in, gaussian_binomial, generalized_cauchy_poly, hahn_poly,
    hahn_poly_in, q_pochhammer, QParam,
};
use crate::qoperators::{apply_e_tilde, d_q, operator_series, OperatorKind};

const X: Symbol = Symbol::X;
const Y: Symbol = Symbol::Y;
const A: Symbol = Symbol::A;
const Q: Symbol = Symbol::Q;

fn v(s: Symbol) -> MultiPoly {
    MultiPoly::var(s)
}

fn qp(e: i64) -> MultiPoly {
    QParam::Symbolic.pow(e)
}

fn signed(p: MultiPoly, n: usize) -> MultiPoly {
    if n % 2 == 1 {
        -p
    } else {
        p
    }
}

/// `(q;q)_n / ((q;q)_k (q;q)_{n-k})` by exact division, independent of q-Pascal.
fn ratio_binomial(n: usize, k: usize) -> Result<MultiPoly, VerifyError> {
    let qq = |m| q_pochhammer(&v(Q), m);
    let step = divide_exact(&qq(n), Q, &qq(k))?;
    Ok(divide_exact(&step, Q, &qq(n - k))?)
}

pub(super) fn pochhammer_split(_: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let a = v(A);
    let mut pairs = Vec::new();
    for n in 0..=6 {
        for k in 0..=6 {
            let rhs = &q_pochhammer(&a, n) * &q_pochhammer(&(&a * &qp(n as i64)), k);
            pairs.push(Pair::poly(q_pochhammer(&a, n + k), rhs));
        }
    }
    Ok(pairs)
}

pub(super) fn qbinom_symmetry(_: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let mut pairs = Vec::new();
    for n in 0..=8usize {
        for k in 0..=n {
            let b = gaussian_binomial(n, k as i64);
            pairs.push(Pair::poly(b.clone(), gaussian_binomial(n, (n - k) as i64)));
            pairs.push(Pair::poly(b, ratio_binomial(n, k)?));
        }
    }
    Ok(pairs)
}

pub(super) fn cauchy_reflection(_: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let q = QParam::Symbolic;
    let mut pairs = Vec::new();
    for n in 0..=6usize {
        let n_i = n as i64;
        let reflected = cauchy_poly_in(n, &v(Y), &(&qp(1 - n_i) * &v(X)), &q);
        pairs.push(Pair::poly(cauchy_poly(n), signed(&qp(binom2(n_i)) * &reflected, n)));
    }
    Ok(pairs)
}

pub(super) fn cauchy_shifted_reflection(_: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let q = QParam::Symbolic;
    let mut pairs = Vec::new();
    for n in 0..=6usize {
        for k in 0..=n {
            let (n_i, k_i) = (n as i64, k as i64);
            let lhs = cauchy_poly_in(n - k, &v(X), &(&qp(1 - n_i) * &v(Y)), &q);
            let rhs = cauchy_poly_in(n - k, &v(Y), &(&qp(k_i) * &v(X)), &q);
            let rhs = signed(&qp(binom2(k_i) - binom2(n_i)) * &rhs, n - k);
            pairs.push(Pair::poly(lhs, rhs));
        }
    }
    Ok(pairs)
}

pub(super) fn cauchy_product_form(_: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let ratio = &v(Y) * &MultiPoly::var_pow(X, -1)?;
    let a0 = [(A, MultiPoly::zero())];
    let mut pairs = Vec::new();
    for n in 0..=8usize {
        let product = &q_pochhammer(&ratio, n) * &v(X).pow(n as u32);
        pairs.push(Pair::poly(product, cauchy_poly(n)));
        pairs.push(Pair::poly(generalized_cauchy_poly(n).substitute_all(&a0)?, cauchy_poly(n)));
    }
    Ok(pairs)
}

/// q-Leibniz rule on random `f`, `g` of degree at most 4, orders `0..=4`.
pub(super) fn leibniz_dq(inst: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let mut rng = inst.rng();
    let f = random_univariate(&mut rng, X, 4);
    let g = random_univariate(&mut rng, X, 4);
    let iterate = |p: &MultiPoly, times: usize| -> Result<MultiPoly, VerifyError> {
        (0..times).try_fold(p.clone(), |acc, _| Ok(d_q(&acc, X)?))
    };
    let mut pairs = Vec::new();
    for n in 0..=4usize {
        let lhs = iterate(&(&f * &g), n)?;
        let mut rhs = MultiPoly::zero();
        for k in 0..=n {
            let k_i = k as i64;
            let g_shift = g.substitute(X, &(&qp(k_i) * &v(X)))?;
            let term = &gaussian_binomial(n, k_i) * &qp(k_i * (k_i - n as i64));
            rhs = &rhs + &(&(&term * &iterate(&f, k)?) * &iterate(&g_shift, n - k)?);
        }
        pairs.push(Pair::poly(lhs, rhs));
    }
    Ok(pairs)
}

/// `Ẽ(a, y; D_q){x^n}` by iterating `D_q` and by the monomial closed form.
pub(super) fn gencauchy_operator_form(_: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let q = QParam::Symbolic;
    let a = v(A);
    let mut pairs = Vec::new();
    for n in 0..=6u32 {
        let xn = v(X).pow(n);
        let iterated = operator_series(OperatorKind::Dq(X), &xn, &q, |k| {
            let w = &qp(binom2(k as i64)) * &q_pochhammer(&a, k);
            signed(&w * &v(Y).pow(k as u32), k)
        })?;
        pairs.push(Pair::poly(iterated, generalized_cauchy_poly(n as usize)));
        pairs.push(Pair::poly(apply_e_tilde(&a, &v(Y), &xn, X, &q)?, generalized_cauchy_poly(n as usize)));
    }
    Ok(pairs)
}

/// Hahn polynomials against the ratio-of-factorials definition, and the
/// three-term recurrence of the `α = 0` (Rogers–Szegő) case.
pub(super) fn hahn_definition(_: &Instance) -> Result<Vec<Pair>, VerifyError> {
    let q = QParam::Symbolic;
    let alpha = v(Symbol::ALPHA);
    let mut pairs = Vec::new();
    for n in 0..=6usize {
        let mut def = MultiPoly::zero();
        for k in 0..=n {
            def = &def + &(&(&ratio_binomial(n, k)? * &q_pochhammer(&alpha, k)) * &v(X).pow(k as u32));
        }
        pairs.push(Pair::poly(hahn_poly(n, Symbol::ALPHA), def));
    }
    let h = |n: usize| hahn_poly_in(n, &v(X), &MultiPoly::zero(), &q);
    let one = MultiPoly::one();
    for n in 1..=6usize {
        let rhs = &(&(&one + &v(X)) * &h(n)) - &(&(&v(X) * &(&one - &qp(n as i64))) * &h(n - 1));
        pairs.push(Pair::poly(h(n + 1), rhs));
    }
    Ok(pairs)
}
