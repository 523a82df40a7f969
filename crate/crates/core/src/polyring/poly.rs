use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::symbol::Symbol;
use super::PolyError;
use crate::rational::ExactRational;

/// Sparse multivariate Laurent polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomial order with
/// zero coefficients never stored, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, ExactRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(ExactRational::from(n))
    }

    pub fn term(c: ExactRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn var(sym: Symbol) -> Self {
        MultiPoly::term(ExactRational::one(), Monomial::var_pow(sym, 1).expect("positive"))
    }

    pub fn var_pow(sym: Symbol, exp: i32) -> Result<Self, PolyError> {
        Monomial::var_pow(sym, exp)
            .map(|m| MultiPoly::term(ExactRational::one(), m))
            .ok_or(PolyError::LaurentNotAllowed(sym))
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ExactRational)>,
    {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial has no symbols (zero included).
    pub fn as_constant(&self) -> Option<ExactRational> {
        match self.terms.len() {
            0 => Some(ExactRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(sym) != 0)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::all().filter(|&s| self.contains(s)).collect()
    }

    /// Largest exponent of `sym`, `None` for the zero polynomial.
    pub fn degree_in(&self, sym: Symbol) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(sym)).max()
    }

    pub fn min_degree_in(&self, sym: Symbol) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(sym)).min()
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().map(Monomial::max_abs_exponent).max().unwrap_or(0)
    }

    /// Splits into `sym`-degree → coefficient polynomial free of `sym`.
    pub fn coefficients_in(&self, sym: Symbol) -> BTreeMap<i32, MultiPoly> {
        let mut out: BTreeMap<i32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(sym))
                .or_default()
                .add_term(m.without(sym), c);
        }
        out
    }

    /// The coefficient of `sym^deg`, as a polynomial free of `sym`.
    pub fn coefficient_of(&self, sym: Symbol, deg: i32) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(sym) == deg)
                .map(|(m, c)| (m.without(sym), c.clone())),
        )
    }

    pub fn scale(&self, c: &ExactRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    /// Multiplies by `sym^exp`.
    pub fn shift(&self, sym: Symbol, exp: i32) -> Result<MultiPoly, PolyError> {
        let m = Monomial::var_pow(sym, exp).ok_or(PolyError::LaurentNotAllowed(sym))?;
        Ok(self.mul_monomial(&m))
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse if this is a single term whose monomial is invertible.
    pub fn unit_inverse(&self) -> Option<MultiPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        Some(MultiPoly::term(c.recip()?, m.inverse()?))
    }

    /// Integer power allowing negative exponents on units.
    pub fn pow_signed(&self, exp: i32) -> Option<MultiPoly> {
        if exp >= 0 {
            Some(self.pow(exp as u32))
        } else {
            Some(self.unit_inverse()?.pow(exp.unsigned_abs()))
        }
    }

    /// Replaces `sym` by `value` everywhere.
    pub fn substitute(&self, sym: Symbol, value: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.substitute_all(&[(sym, value.clone())])
    }

    /// Simultaneous substitution of several symbols.
    pub fn substitute_all(&self, subs: &[(Symbol, MultiPoly)]) -> Result<MultiPoly, PolyError> {
        let mut cache: Vec<BTreeMap<i32, MultiPoly>> = vec![BTreeMap::new(); subs.len()];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut factor = MultiPoly::constant(c.clone());
            for (i, (sym, val)) in subs.iter().enumerate() {
                let e = m.exponent(*sym);
                if e == 0 {
                    continue;
                }
                rest = rest.without(*sym);
                let pw = match cache[i].get(&e) {
                    Some(p) => p.clone(),
                    None => {
                        let p = val
                            .pow_signed(e)
                            .ok_or(PolyError::NegativeExponentSubstitution(*sym))?;
                        cache[i].insert(e, p.clone());
                        p
                    }
                };
                factor = &factor * &pw;
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&rest), &fc);
            }
        }
        Ok(out)
    }

    /// Exact value at a full rational assignment.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, ExactRational>) -> Result<ExactRational, PolyError> {
        let mut total = ExactRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (sym, e) in m.factors() {
                let x = assignment.get(&sym).ok_or(PolyError::MissingAssignment(sym))?;
                let p = x.pow(e).ok_or(PolyError::ZeroToNegativePower(sym))?;
                v *= &p;
            }
            total += &v;
        }
        Ok(total)
    }

    /// Sum of `f(term)` images; used for monomial-wise linear maps.
    pub fn map_terms<F>(&self, mut f: F) -> Result<MultiPoly, PolyError>
    where
        F: FnMut(&Monomial, &ExactRational) -> Result<MultiPoly, PolyError>,
    {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out = &out + &f(m, c)?;
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: std::collections::HashMap<Monomial, ExactRational> =
            std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += &c;
                    }
                }
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<ExactRational> for MultiPoly {
    fn from(c: ExactRational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Symbol> for MultiPoly {
    fn from(s: Symbol) -> Self {
        MultiPoly::var(s)
    }
}

/// Renders terms from highest to lowest in canonical order, e.g.
/// `q*x*y + x^2 - 3/4*q^-1*y`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_one() {
                parts.push(mag.to_string());
            }
            for (s, e) in m.factors() {
                if e == 1 {
                    parts.push(s.name().to_string());
                } else {
                    parts.push(format!("{}^{}", s.name(), e));
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
