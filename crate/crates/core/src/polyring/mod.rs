//! Sparse multivariate Laurent polynomials over exact rationals.

mod divide;
mod monomial;
mod poly;
mod symbol;

pub use divide::{divide_exact, divide_exact_linear};
pub use monomial::Monomial;
pub use poly::MultiPoly;
pub use symbol::{Symbol, NUM_SYMBOLS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("symbol {0} does not admit negative exponents")]
    LaurentNotAllowed(Symbol),
    #[error("cannot substitute into a negative power of {0}: value is not invertible")]
    NegativeExponentSubstitution(Symbol),
    #[error("division leaves a nonzero remainder")]
    NonZeroRemainder,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("divisor must be a polynomial of degree <= 1 in {0}")]
    DivisorNotLinear(Symbol),
    #[error("leading coefficient of divisor is not a unit")]
    NonUnitLeadingCoefficient,
    #[error("no value assigned to {0}")]
    MissingAssignment(Symbol),
    #[error("zero assigned to {0}, which appears with a negative exponent")]
    ZeroToNegativePower(Symbol),
}

/// Shorthand for `sym` as a polynomial.
pub fn var(sym: Symbol) -> MultiPoly {
    MultiPoly::var(sym)
}

/// Shorthand for the rational constant `num/den`.
pub fn rat(num: i64, den: i64) -> MultiPoly {
    MultiPoly::constant(crate::rational::ExactRational::new(num, den))
}

#[cfg(test)]
mod tests {
    const Q: Symbol = Symbol::Q;
    const X: Symbol = Symbol::X;
    const Y: Symbol = Symbol::Y;
    use super::*;
    use crate::rational::ExactRational;
    use std::collections::BTreeMap;

    #[test]
    fn product_example() {
        // (x - y)(x - qy) = x^2 - (1+q)xy + qy^2
        let p = (var(X) - var(Y)) * (var(X) - var(Q) * var(Y));
        let expected = var(X).pow(2) - (MultiPoly::one() + var(Q)) * var(X) * var(Y)
            + var(Q) * var(Y).pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "-x*y*q + y^2*q + x^2 - x*y");
    }

    #[test]
    fn small_identities() {
        let p = var(X) * var(Y) + rat(3, 4);
        assert_eq!(&p + &MultiPoly::zero(), p);
        assert_eq!((MultiPoly::one() + var(Q)) * (MultiPoly::one() - var(Q)), MultiPoly::one() - var(Q).pow(2));
    }

    #[test]
    fn substitution_examples() {
        let p = var(X).pow(2) - var(X) * var(Y);
        let shifted = p.substitute(X, &(var(Q) * var(X))).unwrap();
        assert_eq!(shifted, var(Q).pow(2) * var(X).pow(2) - var(Q) * var(X) * var(Y));
        assert_eq!((var(X) - var(Y)).substitute(Y, &MultiPoly::zero()).unwrap(), var(X));
        let qi = MultiPoly::var_pow(Q, -1).unwrap();
        let r = (&qi * &var(X) - var(Y)).substitute(X, &(var(Q) * var(Y))).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn negative_power_substitution_needs_unit() {
        let p = MultiPoly::var_pow(X, -1).unwrap();
        assert_eq!(
            p.substitute(X, &MultiPoly::zero()),
            Err(PolyError::NegativeExponentSubstitution(X))
        );
        assert_eq!(
            p.substitute(X, &(var(X) + var(Y))),
            Err(PolyError::NegativeExponentSubstitution(X))
        );
        assert_eq!(p.substitute(X, &var(Y)), Err(PolyError::NegativeExponentSubstitution(X)));
        assert_eq!(p.substitute(X, &rat(2, 1)).unwrap(), rat(1, 2));
    }

    #[test]
    fn eval_examples() {
        let mut asg = BTreeMap::new();
        asg.insert(Q, ExactRational::new(1, 2));
        assert_eq!((MultiPoly::one() + var(Q)).eval(&asg).unwrap(), ExactRational::new(3, 2));

        let mut asg = BTreeMap::new();
        asg.insert(X, ExactRational::one());
        asg.insert(Y, ExactRational::one());
        assert!((var(X) - var(Y)).eval(&asg).unwrap().is_zero());

        let mut asg = BTreeMap::new();
        asg.insert(Q, ExactRational::new(1, 3));
        asg.insert(X, ExactRational::from(2));
        let qix = MultiPoly::var_pow(Q, -1).unwrap() * var(X);
        assert_eq!(qix.eval(&asg).unwrap(), ExactRational::from(6));

        asg.remove(&X);
        assert_eq!(qix.eval(&asg), Err(PolyError::MissingAssignment(X)));
        asg.insert(X, ExactRational::one());
        asg.insert(Q, ExactRational::zero());
        assert_eq!(qix.eval(&asg), Err(PolyError::ZeroToNegativePower(Q)));
    }

    #[test]
    fn rendering() {
        let p = MultiPoly::var_pow(Q, -1).unwrap() * var(X) - rat(3, 4) * var(Y).pow(2) + rat(-5, 1);
        assert_eq!(p.to_string(), "-3/4*y^2 + x*q^-1 - 5");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((-var(X)).to_string(), "-x");
    }
}
