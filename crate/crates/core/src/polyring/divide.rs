use super::poly::MultiPoly;
use super::symbol::Symbol;
use super::PolyError;

/// Exact quotient `p / divisor` where `divisor` is at most linear in `mainvar`.
///
/// The coefficient of `mainvar` in `divisor` must be a unit (a nonzero
/// rational times a monomial in Laurent symbols), e.g. `q^-1*x - y` in `x`.
pub fn divide_exact_linear(
    p: &MultiPoly,
    mainvar: Symbol,
    divisor: &MultiPoly,
) -> Result<MultiPoly, PolyError> {
    match divisor.degree_in(mainvar) {
        None => Err(PolyError::DivisionByZero),
        Some(d) if d > 1 => Err(PolyError::DivisorNotLinear(mainvar)),
        _ => divide_exact(p, mainvar, divisor),
    }
}

/// Exact quotient of `p` by `divisor`, doing long division in `mainvar`.
///
/// Fails with [`PolyError::NonZeroRemainder`] if `divisor` does not divide `p`.
pub fn divide_exact(p: &MultiPoly, mainvar: Symbol, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if divisor.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if divisor.min_degree_in(mainvar).unwrap_or(0) < 0 {
        return Err(PolyError::DivisorNotLinear(mainvar));
    }
    let dd = divisor.degree_in(mainvar).expect("nonzero");
    let lead = divisor.coefficient_of(mainvar, dd);
    let lead_inv = lead.unit_inverse().ok_or(PolyError::NonUnitLeadingCoefficient)?;
    if p.is_zero() {
        return Ok(MultiPoly::zero());
    }

    // Laurent dividends are shifted to start at degree 0 and shifted back.
    let low = p.min_degree_in(mainvar).expect("nonzero");
    let shift = low.min(0);
    let mut rem = if shift < 0 { p.shift(mainvar, -shift)? } else { p.clone() };

    let mut quotient = MultiPoly::zero();
    while !rem.is_zero() {
        let deg = rem.degree_in(mainvar).expect("nonzero");
        if deg < dd {
            return Err(PolyError::NonZeroRemainder);
        }
        let c = rem.coefficient_of(mainvar, deg);
        let step = (&c * &lead_inv).shift(mainvar, deg - dd)?;
        rem = &rem - &(&step * divisor);
        quotient = &quotient + &step;
    }
    if shift < 0 {
        quotient = quotient.shift(mainvar, shift)?;
    }
    Ok(quotient)
}
