//! Exact rational representation of the accuracy parameter η.
//!
//! Every threshold the solvers compare against has the shape `(a + b·η)·φ`
//! for small integers `a`, `b`. Keeping η as a reduced fraction lets those
//! comparisons be done by cross-multiplication in integers, so ties at the
//! boundary are decided exactly.

use std::fmt;

use crate::error::{Error, Result};

/// Denominator used when converting decimal input (`0.3`, `0.25`, ...).
const DECIMAL_SCALE: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Eta {
    num: u64,
    den: u64,
}

impl Eta {
    pub const ZERO: Eta = Eta { num: 0, den: 1 };

    /// `num / den`, required to lie in `[0, 1)`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den {
            return Err(Error::param(format!("eta = {num}/{den} must lie in [0, 1)")));
        }
        let g = gcd(num, den);
        Ok(Eta { num: num / g, den: den / g })
    }

    /// Rounds `value` to six decimal places and reduces the fraction.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..1.0).contains(&value) {
            return Err(Error::param(format!("eta = {value} must lie in [0, 1)")));
        }
        let num = (value * DECIMAL_SCALE as f64).round() as u64;
        if num >= DECIMAL_SCALE {
            return Err(Error::param(format!("eta = {value} rounds to 1")));
        }
        Eta::new(num, DECIMAL_SCALE)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// η/2.
    pub fn half(&self) -> Eta {
        let g = gcd(self.num, 2 * self.den);
        Eta { num: self.num / g, den: 2 * self.den / g }
    }

    /// `value ≤ (base + η)·φ`, evaluated exactly.
    pub fn within(&self, value: u64, base: u64, phi: u64) -> bool {
        let lhs = value as u128 * self.den as u128;
        let rhs = (base as u128 * self.den as u128 + self.num as u128) * phi as u128;
        lhs <= rhs
    }

    /// `value ≤ (3 + η)·φ`: the low-degree cutoff and the certificate bound.
    pub fn within_three_plus(&self, value: u64, phi: u64) -> bool {
        self.within(value, 3, phi)
    }

    /// `⌈(1 + η)·t⌉`.
    pub fn ceil_one_plus(&self, t: u64) -> u64 {
        let scaled = (self.den as u128 + self.num as u128) * t as u128;
        scaled.div_ceil(self.den as u128) as u64
    }

    /// Accuracy `ε` of a sketch whose η-query is sound: `(1 + η) = (1 + ε)/(1 − ε)`,
    /// i.e. `ε = η/(2 + η)`.
    pub fn sketch_epsilon(&self) -> f64 {
        let eta = self.as_f64();
        eta / (2.0 + eta)
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Inverse of [`Eta::sketch_epsilon`]: `η = 2ε/(1 − ε)`.
pub fn eta_for_sketch_epsilon(epsilon: f64) -> f64 {
    2.0 * epsilon / (1.0 - epsilon)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}
