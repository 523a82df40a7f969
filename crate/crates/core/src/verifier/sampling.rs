//! Deterministic sampling of rational parameters and random seed polynomials.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyring::{Monomial, MultiPoly, Symbol};
use crate::rational::ExactRational;

/// Largest |numerator| and denominator drawn for a parameter.
pub const SAMPLE_BOUND: i64 = 7;
/// Resampling attempts before giving up on an identity's constraints.
pub const MAX_RETRIES: usize = 20;

/// Sampled rational values for an identity's free parameters, plus integer
/// knobs such as the shift `k` or the truncation `M`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParameterAssignment {
    pub values: BTreeMap<Symbol, ExactRational>,
    pub knobs: BTreeMap<&'static str, i64>,
}

impl ParameterAssignment {
    pub fn with(mut self, sym: Symbol, v: ExactRational) -> Self {
        self.values.insert(sym, v);
        self
    }

    pub fn with_knob(mut self, name: &'static str, v: i64) -> Self {
        self.knobs.insert(name, v);
        self
    }

    /// The value of `sym` as a constant polynomial; unsampled symbols stay symbolic.
    pub fn poly(&self, sym: Symbol) -> MultiPoly {
        match self.values.get(&sym) {
            Some(v) => MultiPoly::constant(v.clone()),
            None => MultiPoly::var(sym),
        }
    }

    pub fn value(&self, sym: Symbol) -> Option<&ExactRational> {
        self.values.get(&sym)
    }

    /// Panics if the identity did not declare the knob.
    pub fn knob(&self, name: &str) -> i64 {
        *self
            .knobs
            .get(name)
            .unwrap_or_else(|| panic!("knob {name} not sampled"))
    }

    /// Stable string map for reports.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        let mut out: BTreeMap<String, String> = self
            .values
            .iter()
            .map(|(s, v)| (s.name().to_string(), v.to_string()))
            .collect();
        for (k, v) in &self.knobs {
            out.insert((*k).to_string(), v.to_string());
        }
        out
    }
}

/// An integer knob drawn uniformly from `lo..=hi`.
#[derive(Clone, Copy, Debug)]
pub struct Knob {
    pub name: &'static str,
    pub lo: i64,
    pub hi: i64,
}

/// Per-sample RNG seed mixed from the run seed and the sample's coordinates.
pub fn sample_seed(seed: u64, id: &str, q_index: usize, sample_index: usize) -> u64 {
    // FNV-1a over the id, then splitmix64 finalization.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut z = seed
        ^ h.rotate_left(17)
        ^ (q_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (sample_index as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational `n/d` with `1 <= |n|, d <= SAMPLE_BOUND`.
pub fn random_nonzero_rational<R: Rng>(rng: &mut R) -> ExactRational {
    let mut n = rng.gen_range(1..=SAMPLE_BOUND);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    ExactRational::new(n, rng.gen_range(1..=SAMPLE_BOUND))
}

/// A rational that is zero with probability about 1/4.
pub fn random_rational<R: Rng>(rng: &mut R) -> ExactRational {
    if rng.gen_range(0..4) == 0 {
        ExactRational::zero()
    } else {
        random_nonzero_rational(rng)
    }
}

/// Draws values for `params` and `knobs`.
pub fn draw_assignment<R: Rng>(rng: &mut R, params: &[Symbol], knobs: &[Knob]) -> ParameterAssignment {
    let mut a = ParameterAssignment::default();
    for &p in params {
        a.values.insert(p, random_nonzero_rational(rng));
    }
    for k in knobs {
        a.knobs.insert(k.name, rng.gen_range(k.lo..=k.hi));
    }
    a
}

/// Random univariate polynomial `Σ c_i var^i`, degree at most `degree`,
/// with a nonzero top coefficient.
pub fn random_univariate<R: Rng>(rng: &mut R, var: Symbol, degree: usize) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for i in 0..=degree {
        let c = if i == degree { random_nonzero_rational(rng) } else { random_rational(rng) };
        let m = Monomial::var_pow(var, i as i32).expect("nonneg");
        p = &p + &MultiPoly::term(c, m);
    }
    p
}

/// Random coefficient list of length `len` with a nonzero last entry.
pub fn random_coefficients<R: Rng>(rng: &mut R, len: usize) -> Vec<ExactRational> {
    (0..len)
        .map(|i| if i + 1 == len { random_nonzero_rational(rng) } else { random_rational(rng) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_distinct_and_stable() {
        let a = sample_seed(1, "E1", 0, 0);
        assert_eq!(a, sample_seed(1, "E1", 0, 0));
        assert_ne!(a, sample_seed(1, "E1", 0, 1));
        assert_ne!(a, sample_seed(1, "E1", 1, 0));
        assert_ne!(a, sample_seed(1, "E2", 0, 0));
        assert_ne!(a, sample_seed(2, "E1", 0, 0));
    }

    #[test]
    fn draws_are_bounded_and_nonzero() {
        let mut rng = rng_from(7);
        for _ in 0..200 {
            let r = random_nonzero_rational(&mut rng);
            assert!(!r.is_zero());
            assert!(r.denominator() <= &num_bigint::BigInt::from(SAMPLE_BOUND));
        }
        let p = random_univariate(&mut rng, Symbol::A, 4);
        assert_eq!(p.degree_in(Symbol::A), Some(4));
    }

    #[test]
    fn assignment_strings() {
        let a = ParameterAssignment::default()
            .with(Symbol::X, ExactRational::new(-2, 3))
            .with_knob("k", 2);
        let s = a.to_strings();
        assert_eq!(s["x"], "-2/3");
        assert_eq!(s["k"], "2");
        assert_eq!(a.poly(Symbol::Y), MultiPoly::var(Symbol::Y));
    }
}
