//! q-difference equations satisfied by operator images, checked on functions
//! generated from a seed polynomial. All checks use symbolic `q`.

use super::{Pair, VerifyError};
use crate::polyring::{MultiPoly, Symbol};
use crate::qkernel::{cauchy_poly_in, expand_in_cauchy_basis, generalized_cauchy_poly, QParam};
use crate::qoperators::{apply_e_frak, apply_e_tilde, apply_l_tilde, apply_r};

const X: Symbol = Symbol::X;
const Y: Symbol = Symbol::Y;
const Z: Symbol = Symbol::Z;
const A: Symbol = Symbol::A;
const B: Symbol = Symbol::B;
const U: Symbol = Symbol::U;

fn v(s: Symbol) -> MultiPoly {
    MultiPoly::var(s)
}

fn qp(e: i64) -> MultiPoly {
    QParam::Symbolic.pow(e)
}

/// `f` with each listed variable `s` replaced by `q^e s`.
fn dilate(f: &MultiPoly, shifts: &[(Symbol, i64)]) -> Result<MultiPoly, VerifyError> {
    let subs: Vec<(Symbol, MultiPoly)> = shifts.iter().map(|&(s, e)| (s, &qp(e) * &v(s))).collect();
    Ok(f.substitute_all(&subs)?)
}

fn at_zero(f: &MultiPoly, s: Symbol) -> Result<MultiPoly, VerifyError> {
    Ok(f.substitute(s, &MultiPoly::zero())?)
}

/// Coefficients `c_n` of a seed `Σ c_n u^n`.
fn seed_coefficients(seed: &MultiPoly) -> Vec<MultiPoly> {
    let top = seed.degree_in(U).unwrap_or(0).max(0) as usize;
    (0..=top).map(|n| seed.coefficient_of(U, n as i32)).collect()
}

/// `x[f(x,y) - f(x,qy)] = y[f(qx,qy) - f(x,qy)] - a y[f(qx,q²y) - f(x,q²y)]`.
fn x_y_a_equation(f: &MultiPoly) -> Result<Pair, VerifyError> {
    let f_y1 = dilate(f, &[(Y, 1)])?;
    let lhs = &v(X) * &(f - &f_y1);
    let first = &dilate(f, &[(X, 1), (Y, 1)])? - &f_y1;
    let second = &dilate(f, &[(X, 1), (Y, 2)])? - &dilate(f, &[(Y, 2)])?;
    let rhs = &(&v(Y) * &first) - &(&(&v(A) * &v(Y)) * &second);
    Ok(Pair::poly(lhs, rhs))
}

/// `f = 𝔼(bθ_a){f0(a)}` satisfies `a f(aq,b) - b f(a,bq) = (a-b) f(aq,bq)`
/// and `f(a,0) = f0`.
pub fn e_frak_qde(f0: &MultiPoly) -> Result<Vec<Pair>, VerifyError> {
    let f = apply_e_frak(&v(B), f0, A, &QParam::Symbolic)?;
    let lhs = &(&v(A) * &dilate(&f, &[(A, 1)])?) - &(&v(B) * &dilate(&f, &[(B, 1)])?);
    let rhs = &(&v(A) - &v(B)) * &dilate(&f, &[(A, 1), (B, 1)])?;
    Ok(vec![Pair::poly(lhs, rhs), Pair::poly(at_zero(&f, B)?, f0.clone())])
}

/// `f = Σ c_n p_n(x,y,a)` for the seed `Σ c_n u^n` satisfies the `(x,y,a)`
/// equation, and expanding `f` in the `p_n(x,y,a)` basis recovers `c_n`.
pub fn cauchy_expansion_qde(seed: &MultiPoly) -> Result<Vec<Pair>, VerifyError> {
    let coeffs = seed_coefficients(seed);
    let f = coeffs
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(), |acc, (n, c)| &acc + &(c * &generalized_cauchy_poly(n)));
    let mut pairs = vec![x_y_a_equation(&f)?];
    let expansion = expand_in_cauchy_basis(&f, (X, Y), A)?;
    for (n, c) in coeffs.iter().enumerate() {
        let got = expansion.coeffs.get(n).cloned().unwrap_or_else(MultiPoly::zero);
        pairs.push(Pair::poly(got, c.clone()));
    }
    Ok(pairs)
}

/// `f = Ẽ(a,y;D_q){f0(x)}` satisfies the `(x,y,a)` equation and `f(x,0) = f0`.
pub fn e_tilde_qde(f0: &MultiPoly) -> Result<Vec<Pair>, VerifyError> {
    let f = apply_e_tilde(&v(A), &v(Y), f0, X, &QParam::Symbolic)?;
    Ok(vec![x_y_a_equation(&f)?, Pair::poly(at_zero(&f, Y)?, f0.clone())])
}

/// For the seed `Σ c_n u^n`, `f0 = Σ c_n p_n(y,x)` and `f = L̃(a,z;θ_xy){f0}`
/// satisfies
///
/// ```text
/// (q^-1 x - y)[f(x,y,z) - f(x,y,qz)]
///     = z[f(q^-1 x,y,qz) - f(x,qy,qz)] + a z[f(x,qy,q²z) - f(q^-1 x,y,q²z)]
/// ```
///
/// and `f(x,y,0) = f0`.
pub fn l_tilde_qde(seed: &MultiPoly) -> Result<Vec<Pair>, VerifyError> {
    let q = QParam::Symbolic;
    let f0 = seed_coefficients(seed)
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(), |acc, (n, c)| &acc + &(c * &cauchy_poly_in(n, &v(Y), &v(X), &q)));
    let f = apply_l_tilde(&v(A), &v(Z), &f0, X, Y, &q)?;
    let lhs = &(&(&qp(-1) * &v(X)) - &v(Y)) * &(&f - &dilate(&f, &[(Z, 1)])?);
    let first = &dilate(&f, &[(X, -1), (Z, 1)])? - &dilate(&f, &[(Y, 1), (Z, 1)])?;
    let second = &dilate(&f, &[(Y, 1), (Z, 2)])? - &dilate(&f, &[(X, -1), (Z, 2)])?;
    let rhs = &(&v(Z) * &first) + &(&(&v(A) * &v(Z)) * &second);
    Ok(vec![Pair::poly(lhs, rhs), Pair::poly(at_zero(&f, Z)?, f0)])
}

/// `f = R(bD_q){f0(a)}` satisfies `a f(a,b) - b f(qa,qb) = (a-b) f(a,qb)`
/// and `f(a,0) = f0`.
pub fn r_qde(f0: &MultiPoly) -> Result<Vec<Pair>, VerifyError> {
    let f = apply_r(&v(B), f0, A, &QParam::Symbolic)?;
    let lhs = &(&v(A) * &f) - &(&v(B) * &dilate(&f, &[(A, 1), (B, 1)])?);
    let rhs = &(&v(A) - &v(B)) * &dilate(&f, &[(B, 1)])?;
    Ok(vec![Pair::poly(lhs, rhs), Pair::poly(at_zero(&f, B)?, f0.clone())])
}
