use std::cmp::Ordering;

use super::symbol::{Symbol, NUM_SYMBOLS};

/// Exponent vector indexed by symbol id; absent symbols have exponent 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [i32; NUM_SYMBOLS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// `sym^exp`; `None` if `exp < 0` on a symbol without Laurent powers.
    pub fn var_pow(sym: Symbol, exp: i32) -> Option<Self> {
        if exp < 0 && !sym.laurent_allowed() {
            return None;
        }
        let mut m = Monomial::one();
        m.exps[sym.id()] = exp;
        Some(m)
    }

    pub fn exponent(&self, sym: Symbol) -> i32 {
        self.exps[sym.id()]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    /// Nonzero `(symbol, exponent)` pairs in id order.
    pub fn factors(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        Symbol::all()
            .zip(self.exps.iter().copied())
            .filter(|&(_, e)| e != 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Monomial { exps }
    }

    /// Inverse monomial, if every symbol present admits negative powers.
    pub fn inverse(&self) -> Option<Monomial> {
        let mut exps = self.exps;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = -*e;
            if *e < 0 && !Symbol::from_id(i).laurent_allowed() {
                return None;
            }
        }
        Some(Monomial { exps })
    }

    /// Same monomial with `sym` removed.
    pub fn without(&self, sym: Symbol) -> Monomial {
        let mut exps = self.exps;
        exps[sym.id()] = 0;
        Monomial { exps }
    }

    pub fn with_exponent(&self, sym: Symbol, exp: i32) -> Monomial {
        let mut exps = self.exps;
        exps[sym.id()] = exp;
        Monomial { exps }
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.exps.iter().map(|&e| (e as i64).abs()).max().unwrap_or(0)
    }
}

/// Graded lexicographic: total degree first, then exponents by symbol id.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors().map(|(s, e)| format!("{s}^{e}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_before_lex() {
        let x2 = Monomial::var_pow(Symbol::X, 2).unwrap();
        let qxy = Monomial::var_pow(Symbol::Q, 1)
            .unwrap()
            .mul(&Monomial::var_pow(Symbol::X, 1).unwrap())
            .mul(&Monomial::var_pow(Symbol::Y, 1).unwrap());
        assert!(x2 < qxy);
        let y2 = Monomial::var_pow(Symbol::Y, 2).unwrap();
        assert!(y2 < x2);
    }

    #[test]
    fn laurent_restriction() {
        assert!(Monomial::var_pow(Symbol::Y, -1).is_none());
        assert!(Monomial::var_pow(Symbol::Q, -1).is_some());
        assert!(Monomial::var_pow(Symbol::Y, 2).unwrap().inverse().is_none());
        let qx = Monomial::var_pow(Symbol::Q, 2).unwrap().mul(&Monomial::var_pow(Symbol::X, 1).unwrap());
        assert!(qx.mul(&qx.inverse().unwrap()).is_one());
    }
}
