use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `|GL(n, F_p)| = ∏_{i<n} (pⁿ − pⁱ)`, exactly.
pub fn order_gl(n: u32, p: u64) -> Result<BigUint> {
    if n == 0 || n > 64 {
        return invalid(format!("order_gl supports 1 <= n <= 64, got {n}"));
    }
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let base = BigUint::from(p);
    let top: BigUint = Pow::pow(&base, n);
    let mut acc = BigUint::one();
    for i in 0..n {
        acc *= &top - Pow::pow(&base, i);
    }
    Ok(acc)
}

/// `C = 61⁸ · |GL(F₃, N)|` with `N = 10^2560`, held in logarithmic form.
///
/// `log₁₀ C = 8·log₁₀ 61 + log₁₀|GL(F₃, N)|` and the second term is
/// approximately `N²·log₁₀ 3 = log₁₀ 3 · 10^5120`, far outside `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantC {
    pub log10_61_pow8: f64,
    /// `log₁₀|GL(F₃, N)| ≈ dominant_coefficient · 10^dominant_exponent`.
    pub dominant_coefficient: f64,
    pub dominant_exponent: u32,
}

impl ConstantC {
    /// `log₁₀ log₁₀ C`; the 61⁸ contribution vanishes at this scale.
    pub fn log10_log10(&self) -> f64 {
        self.dominant_coefficient.log10() + f64::from(self.dominant_exponent)
    }

    /// Whether `log₁₀ C > x`.
    pub fn log10_exceeds(&self, x: f64) -> bool {
        x < self.log10_61_pow8 || x.log10() < self.log10_log10()
    }
}

/// Order-of-magnitude form of the universal constant; not an exact integer.
pub fn log10_constant_c() -> ConstantC {
    // C(4) ≈ 10^{10·4⁴}
    let log10_n = 10 * 4u32.pow(4);
    ConstantC {
        log10_61_pow8: 8.0 * 61f64.log10(),
        dominant_coefficient: 3f64.log10(),
        dominant_exponent: 2 * log10_n,
    }
}
