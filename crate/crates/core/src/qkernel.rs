//! The polynomial families: q-shifted factorials, Gaussian binomials,
//! Cauchy polynomials `p_n(x,y)`, generalized Cauchy polynomials
//! `p_n(x,y,a)` and Hahn polynomials.
//!
//! Every builder has a symbolic-`q` form and an `_at` form taking a
//! [`QParam`], so the same code serves exact Laurent-`q` identities and the
//! numeric-`q` series layer.

use thiserror::Error;

use crate::polyring::{MultiPoly, PolyError, Symbol};
use crate::rational::ExactRational;

/// How `q` enters a computation: as the symbol `q` or as a fixed rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QParam {
    Symbolic,
    Numeric(ExactRational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("numeric q must be nonzero")]
    ZeroQ,
    #[error("polynomial is not in the span of p_n(x,y,a): residual left at degree {degree}")]
    NotInSpan { degree: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl QParam {
    pub fn numeric(q: ExactRational) -> Result<Self, KernelError> {
        if q.is_zero() {
            Err(KernelError::ZeroQ)
        } else {
            Ok(QParam::Numeric(q))
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, QParam::Symbolic)
    }

    /// `q^e` as a polynomial (a monomial or a rational constant).
    pub fn pow(&self, e: i64) -> MultiPoly {
        let e = i32::try_from(e).expect("q exponent fits in i32");
        match self {
            QParam::Symbolic => MultiPoly::var_pow(Symbol::Q, e).expect("q is Laurent"),
            QParam::Numeric(v) => MultiPoly::constant(v.pow(e).expect("q is nonzero")),
        }
    }

    pub fn poly(&self) -> MultiPoly {
        self.pow(1)
    }

    /// Replaces the symbol `q` in `p` by this parameter (identity when symbolic).
    pub fn specialize(&self, p: &MultiPoly) -> MultiPoly {
        match self {
            QParam::Symbolic => p.clone(),
            QParam::Numeric(_) => p
                .substitute(Symbol::Q, &self.poly())
                .expect("nonzero q is a unit"),
        }
    }
}

/// `k(k-1)/2`, valid for negative `k` as well.
pub fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// `(base; q)_n = (1 - base)(1 - base q) ... (1 - base q^{n-1})`.
pub fn q_pochhammer(base: &MultiPoly, n: usize) -> MultiPoly {
    q_pochhammer_at(base, n, &QParam::Symbolic)
}

pub fn q_pochhammer_at(base: &MultiPoly, n: usize, q: &QParam) -> MultiPoly {
    let one = MultiPoly::one();
    (0..n).fold(MultiPoly::one(), |acc, k| {
        let factor = &one - &(base * &q.pow(k as i64));
        &acc * &factor
    })
}

/// `(q; q)_n` at a numeric `q`.
pub fn q_factorial_value(n: usize, q: &ExactRational) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut qk = ExactRational::one();
    for _ in 0..n {
        qk = &qk * q;
        acc = &acc * &(&ExactRational::one() - &qk);
    }
    acc
}

/// Row `n` of the Gaussian binomials, `[n; 0] .. [n; n]`, by the q-Pascal rule
/// `[n; k] = [n-1; k-1] + q^k [n-1; k]`.
pub fn gaussian_binomial_row(n: usize, q: &QParam) -> Vec<MultiPoly> {
    let mut row = vec![MultiPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k >= 1 { row[k - 1].clone() } else { MultiPoly::zero() };
            let right = if k < m { &row[k] * &q.pow(k as i64) } else { MultiPoly::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    row
}

/// `[n; k]_q`, zero outside `0 <= k <= n`.
pub fn gaussian_binomial(n: usize, k: i64) -> MultiPoly {
    gaussian_binomial_at(n, k, &QParam::Symbolic)
}

pub fn gaussian_binomial_at(n: usize, k: i64, q: &QParam) -> MultiPoly {
    if k < 0 || k as usize > n {
        return MultiPoly::zero();
    }
    gaussian_binomial_row(n, q).swap_remove(k as usize)
}

/// `p_n(x, y) = (x - y)(x - qy) ... (x - q^{n-1} y)`.
pub fn cauchy_poly(n: usize) -> MultiPoly {
    cauchy_poly_in(n, &MultiPoly::var(Symbol::X), &MultiPoly::var(Symbol::Y), &QParam::Symbolic)
}

/// `p_n(xv, yv)` for arbitrary polynomial arguments.
pub fn cauchy_poly_in(n: usize, xv: &MultiPoly, yv: &MultiPoly, q: &QParam) -> MultiPoly {
    (0..n).fold(MultiPoly::one(), |acc, j| {
        let factor = xv - &(yv * &q.pow(j as i64));
        &acc * &factor
    })
}

/// `p_n(x, y, a) = Σ_k [n;k] (-1)^k q^{k(k-1)/2} (a;q)_k x^{n-k} y^k`.
pub fn generalized_cauchy_poly(n: usize) -> MultiPoly {
    generalized_cauchy_poly_in(
        n,
        &MultiPoly::var(Symbol::X),
        &MultiPoly::var(Symbol::Y),
        &MultiPoly::var(Symbol::A),
        &QParam::Symbolic,
    )
}

pub fn generalized_cauchy_poly_in(
    n: usize,
    xv: &MultiPoly,
    yv: &MultiPoly,
    av: &MultiPoly,
    q: &QParam,
) -> MultiPoly {
    let row = gaussian_binomial_row(n, q);
    let mut poch = MultiPoly::one();
    let mut total = MultiPoly::zero();
    for (k, binom) in row.iter().enumerate() {
        if k > 0 {
            poch = &poch * &(&MultiPoly::one() - &(av * &q.pow(k as i64 - 1)));
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let term = binom * &q.pow(binom2(k as i64)).scale(&ExactRational::from(sign));
        let term = &(&term * &poch) * &(&xv.pow((n - k) as u32) * &yv.pow(k as u32));
        total = &total + &term;
    }
    total
}

/// Hahn polynomial `φ_n^{(param)}(x|q) = Σ_k [n;k] (param;q)_k x^k`.
pub fn hahn_poly(n: usize, param: Symbol) -> MultiPoly {
    hahn_poly_in(n, &MultiPoly::var(Symbol::X), &MultiPoly::var(param), &QParam::Symbolic)
}

pub fn hahn_poly_in(n: usize, xv: &MultiPoly, param: &MultiPoly, q: &QParam) -> MultiPoly {
    let row = gaussian_binomial_row(n, q);
    let mut poch = MultiPoly::one();
    let mut total = MultiPoly::zero();
    for (k, binom) in row.iter().enumerate() {
        if k > 0 {
            poch = &poch * &(&MultiPoly::one() - &(param * &q.pow(k as i64 - 1)));
        }
        total = &total + &(&(binom * &poch) * &xv.pow(k as u32));
    }
    total
}

/// Finite expansion `Σ coeffs[n] · p_n(x, y, a)` with coefficients free of `x`, `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyExpansion {
    pub coeffs: Vec<MultiPoly>,
    pub param_a: Symbol,
    pub vars: (Symbol, Symbol),
}

impl CauchyExpansion {
    /// The basis element `p_n(x, y, a)` in this expansion's variables.
    pub fn basis(&self, n: usize) -> MultiPoly {
        generalized_cauchy_poly_in(
            n,
            &MultiPoly::var(self.vars.0),
            &MultiPoly::var(self.vars.1),
            &MultiPoly::var(self.param_a),
            &QParam::Symbolic,
        )
    }

    pub fn evaluate(&self) -> MultiPoly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(MultiPoly::zero(), |acc, (n, c)| &acc + &(c * &self.basis(n)))
    }
}

/// Writes `p` as `Σ μ_n p_n(x, y, a)` with `μ_n` free of `x`, `y`.
///
/// Each `p_n(x,y,a)` is homogeneous of degree `n` in `(x, y)` with `x^n`
/// coefficient 1, so the `x^n` coefficient of the degree-`n` component
/// fixes `μ_n`; anything left in that component means `p` is outside the
/// span.
pub fn expand_in_cauchy_basis(
    p: &MultiPoly,
    vars: (Symbol, Symbol),
    param_a: Symbol,
) -> Result<CauchyExpansion, KernelError> {
    let (xs, ys) = vars;
    let mut residual = p.clone();
    let xy_degree = |m: &crate::polyring::Monomial| m.exponent(xs) as i64 + m.exponent(ys) as i64;
    if residual.terms().any(|(m, _)| m.exponent(xs) < 0 || m.exponent(ys) < 0) {
        return Err(KernelError::NotInSpan { degree: 0 });
    }
    let top = residual.terms().map(|(m, _)| xy_degree(m)).max().unwrap_or(0) as usize;
    let mut out = CauchyExpansion {
        coeffs: vec![MultiPoly::zero(); top + 1],
        param_a,
        vars,
    };
    for n in (0..=top).rev() {
        let lead = MultiPoly::from_terms(
            residual
                .terms()
                .filter(|(m, _)| m.exponent(xs) == n as i32 && m.exponent(ys) == 0)
                .map(|(m, c)| (m.without(xs), c.clone())),
        );
        if !lead.is_zero() {
            residual = &residual - &(&lead * &out.basis(n));
            out.coeffs[n] = lead;
        }
        if residual.terms().any(|(m, _)| xy_degree(m) == n as i64) {
            return Err(KernelError::NotInSpan { degree: n });
        }
    }
    while out.coeffs.len() > 1 && out.coeffs.last().is_some_and(MultiPoly::is_zero) {
        out.coeffs.pop();
    }
    if out.evaluate() != *p {
        return Err(KernelError::NotInSpan { degree: top });
    }
    Ok(out)
}
