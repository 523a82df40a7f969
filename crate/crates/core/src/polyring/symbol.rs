use std::fmt;

/// Number of symbols in the fixed symbol table.
pub const NUM_SYMBOLS: usize = 16;

struct SymbolInfo {
    name: &'static str,
    alias: Option<&'static str>,
    laurent: bool,
}

// Order here is the symbol id, which drives the canonical monomial order.
static TABLE: [SymbolInfo; NUM_SYMBOLS] = [
    SymbolInfo { name: "x", alias: None, laurent: true },
    SymbolInfo { name: "y", alias: None, laurent: false },
    SymbolInfo { name: "z", alias: None, laurent: false },
    SymbolInfo { name: "a", alias: None, laurent: false },
    SymbolInfo { name: "b", alias: None, laurent: false },
    SymbolInfo { name: "s", alias: None, laurent: false },
    SymbolInfo { name: "r", alias: None, laurent: false },
    SymbolInfo { name: "lambda", alias: Some("λ"), laurent: false },
    SymbolInfo { name: "mu", alias: Some("μ"), laurent: false },
    SymbolInfo { name: "alpha", alias: Some("α"), laurent: false },
    SymbolInfo { name: "rho", alias: Some("ρ"), laurent: false },
    SymbolInfo { name: "sigma", alias: Some("σ"), laurent: false },
    SymbolInfo { name: "c", alias: None, laurent: false },
    SymbolInfo { name: "u", alias: None, laurent: false },
    SymbolInfo { name: "t", alias: None, laurent: false },
    SymbolInfo { name: "q", alias: None, laurent: true },
];

/// A variable of the shared symbol table.
///
/// Only `q` and `x` admit negative exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u8);

impl Symbol {
    pub const X: Symbol = Symbol(0);
    pub const Y: Symbol = Symbol(1);
    pub const Z: Symbol = Symbol(2);
    pub const A: Symbol = Symbol(3);
    pub const B: Symbol = Symbol(4);
    pub const S: Symbol = Symbol(5);
    pub const R: Symbol = Symbol(6);
    pub const LAMBDA: Symbol = Symbol(7);
    pub const MU: Symbol = Symbol(8);
    pub const ALPHA: Symbol = Symbol(9);
    pub const RHO: Symbol = Symbol(10);
    pub const SIGMA: Symbol = Symbol(11);
    pub const C: Symbol = Symbol(12);
    pub const U: Symbol = Symbol(13);
    pub const T: Symbol = Symbol(14);
    pub const Q: Symbol = Symbol(15);

    pub fn id(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        TABLE[self.id()].name
    }

    pub fn laurent_allowed(self) -> bool {
        TABLE[self.id()].laurent
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        TABLE
            .iter()
            .position(|s| s.name == name || s.alias == Some(name))
            .map(|i| Symbol(i as u8))
    }

    pub(crate) fn from_id(id: usize) -> Symbol {
        assert!(id < NUM_SYMBOLS);
        Symbol(id as u8)
    }

    pub fn all() -> impl Iterator<Item = Symbol> {
        (0..NUM_SYMBOLS as u8).map(Symbol)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
