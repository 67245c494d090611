//! The Fibonacci partition function R(H): Carlitz's special case at
//! Fibonacci arguments, the gap-derived coefficient tables, the closed
//! formula, and the direct recursion on Zeckendorf suffixes as an
//! independent reference path.

use num_bigint::BigUint;
use num_traits::One;

use crate::bigfib::ZeckendorfExpansion;
use crate::{Error, Result};

/// The coefficient tables derived from the Zeckendorf index gaps:
/// t_i = ⌊(m_{i−1} − m_i + 2)/2⌋, ε_i = 2t_i − 1 − m_{i−1} + m_i,
/// and a₀ = 1, a₁ = t₁, a_{ℓ+1} = t_{ℓ+1} a_ℓ − ε_ℓ a_{ℓ−1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionTables {
    /// t₁..t_k, each ≥ 2.
    pub t: Vec<u64>,
    /// ε₁..ε_k, each 0 or 1; ε_i = 1 iff the gap m_{i−1} − m_i is even.
    pub eps: Vec<u8>,
    /// a₀..a_k, strictly increasing; can grow exponentially in k.
    pub a: Vec<BigUint>,
}

impl RecursionTables {
    pub fn k(&self) -> usize {
        self.t.len()
    }
}

/// Builds the coefficient tables for an expansion with k + 1 terms.
pub fn recursion_tables(z: &ZeckendorfExpansion) -> RecursionTables {
    tables_from_gaps(&index_gaps(z.indices()))
}

fn index_gaps(indices: &[u64]) -> Vec<u64> {
    indices.windows(2).map(|w| w[0] - w[1]).collect()
}

/// The same tables driven by the gap sequence alone; also used by the
/// subdivision endpoints, whose leading index is symbolic.
pub(crate) fn tables_from_gaps(gaps: &[u64]) -> RecursionTables {
    let mut t = Vec::with_capacity(gaps.len());
    let mut eps = Vec::with_capacity(gaps.len());
    for &g in gaps {
        debug_assert!(g >= 2);
        let ti = (g + 2) / 2;
        t.push(ti);
        eps.push((2 * ti - 1 - g) as u8);
    }
    let mut a = vec![BigUint::one()];
    if let Some(&t1) = t.first() {
        a.push(BigUint::from(t1));
    }
    for l in 1..t.len() {
        // a_{l+1} = t_{l+1} a_l − ε_l a_{l−1}; the sequence is strictly
        // increasing, so the subtraction never underflows
        let next = &a[l] * BigUint::from(t[l]) - &a[l - 1] * BigUint::from(eps[l - 1] as u32);
        a.push(next);
    }
    RecursionTables { t, eps, a }
}

/// R(F_m) = ⌊m/2⌋ for m ≥ 2.
pub fn r_carlitz(m: u64) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::Domain(format!("r_carlitz: index {m} must be >= 2")));
    }
    Ok(BigUint::from(m / 2))
}

/// R(H) by the closed formula: a_k ⌊m_k/2⌋ − ε_k a_{k−1} for k ≥ 1,
/// ⌊m₀/2⌋ for k = 0, and R(0) = 1 by convention.
pub fn r_exact(h: &BigUint) -> BigUint {
    use num_traits::Zero;
    if h.is_zero() {
        return BigUint::one();
    }
    let z = ZeckendorfExpansion::encode(h).expect("h >= 1");
    r_from_tables(&z)
}

fn r_from_tables(z: &ZeckendorfExpansion) -> BigUint {
    let indices = z.indices();
    let k = z.k();
    let m_k = *indices.last().unwrap();
    if k == 0 {
        return BigUint::from(m_k / 2);
    }
    let tab = recursion_tables(z);
    // a_k ⌊m_k/2⌋ ≥ a_k > a_{k−1} ≥ ε_k a_{k−1}
    &tab.a[k] * BigUint::from(m_k / 2) - &tab.a[k - 1] * BigUint::from(tab.eps[k - 1] as u32)
}

/// R(H) by iterating the suffix recursion R(x_ℓ) = t_{ℓ+1} R(x_{ℓ+1})
/// − ε_{ℓ+1} R(x_{ℓ+2}) upward from R(x_{k+1}) = R(0) = 1 and
/// R(x_k) = ⌊m_k/2⌋. Independent of the closed formula's final step;
/// iterative so that 100-digit inputs cannot exhaust the call stack.
pub fn r_robbins(h: &BigUint) -> BigUint {
    use num_traits::Zero;
    if h.is_zero() {
        return BigUint::one();
    }
    let z = ZeckendorfExpansion::encode(h).expect("h >= 1");
    let indices = z.indices();
    let k = z.k();
    let m_k = *indices.last().unwrap();
    let mut below = BigUint::one(); // R(x_{ℓ+2})
    let mut cur = BigUint::from(m_k / 2); // R(x_{ℓ+1}), starting at ℓ+1 = k
    if k == 0 {
        return cur;
    }
    let tab = recursion_tables(&z);
    for l in (0..k).rev() {
        let next = &cur * BigUint::from(tab.t[l]) - &below * BigUint::from(tab.eps[l] as u32);
        below = cur;
        cur = next;
    }
    cur
}
