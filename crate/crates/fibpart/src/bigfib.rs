//! Arbitrary-precision Fibonacci numbers and the Zeckendorf codec.
//!
//! Indices follow the convention F₁ = F₂ = 1, F₃ = 2. Zeckendorf expansions
//! never use index 1, so every positive integer has a unique expansion with
//! all index gaps ≥ 2 and smallest index ≥ 2.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// F_m by fast doubling: O(log m) big-integer multiplications.
///
/// Uses the identities F_{2n} = F_n (2F_{n+1} − F_n) and
/// F_{2n+1} = F_n² + F_{n+1}².
pub fn fib(m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Domain("fib: index must be >= 1".into()));
    }
    let (f, _) = fib_pair(m);
    Ok(f)
}

/// Returns (F_n, F_{n+1}) with F_0 = 0.
fn fib_pair(n: u64) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::one());
    }
    let (a, b) = fib_pair(n >> 1);
    // c = F_{2k} = a(2b − a),  d = F_{2k+1} = a² + b²
    let two_b_minus_a = (&b << 1u32) - &a;
    let c = &a * two_b_minus_a;
    let d = &a * &a + &b * &b;
    if n & 1 == 0 {
        (c, d)
    } else {
        let next = &c + &d;
        (d, next)
    }
}

/// Fibonacci numbers F_2, F_3, ..., F_hi as a lookup table (index i holds F_i;
/// slots 0 and 1 are padding). Iterative; used by the greedy encoder.
fn fib_table_through(hi: u64) -> Vec<BigUint> {
    let hi = hi as usize;
    let mut t = Vec::with_capacity(hi + 1);
    t.push(BigUint::zero()); // F_0
    t.push(BigUint::one()); // F_1
    for i in 2..=hi {
        let next = &t[i - 1] + &t[i - 2];
        t.push(next);
    }
    t
}

/// Largest m ≥ 2 with F_m ≤ n.
pub fn max_fib_index(n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::Domain("max_fib_index: argument must be >= 1".into()));
    }
    let mut prev = BigUint::one(); // F_2
    let mut cur = BigUint::from(2u32); // F_3
    let mut m = 2u64;
    while &cur <= n {
        let next = &prev + &cur;
        prev = cur;
        cur = next;
        m += 1;
    }
    Ok(m)
}

/// A Zeckendorf expansion: indices m₀ > m₁ > ... > m_k, most significant
/// first, with all gaps ≥ 2 and m_k ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeckendorfExpansion {
    indices: Vec<u64>,
}

impl ZeckendorfExpansion {
    /// Builds an expansion from explicit indices, validating the invariants.
    pub fn new(indices: Vec<u64>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidExpansion("expansion must be non-empty".into()));
        }
        if *indices.last().unwrap() < 2 {
            return Err(Error::InvalidExpansion(format!(
                "smallest index {} < 2",
                indices.last().unwrap()
            )));
        }
        for w in indices.windows(2) {
            if w[0] < w[1] + 2 {
                return Err(Error::InvalidExpansion(format!(
                    "indices {} and {} are consecutive or out of order",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { indices })
    }

    /// Greedy Zeckendorf encoding of n ≥ 1.
    pub fn encode(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::Domain("zeckendorf_encode: argument must be >= 1".into()));
        }
        let top = max_fib_index(n)?;
        let fibs = fib_table_through(top);
        let mut indices = Vec::new();
        let mut rest = n.clone();
        let mut m = top;
        while !rest.is_zero() {
            while fibs[m as usize] > rest {
                m -= 1;
            }
            indices.push(m);
            rest -= &fibs[m as usize];
            // the greedy step never picks adjacent indices
            m = m.saturating_sub(2).max(2);
        }
        Ok(Self { indices })
    }

    /// Sum of the indexed Fibonacci numbers; inverse of [`encode`](Self::encode).
    pub fn decode(&self) -> BigUint {
        let fibs = fib_table_through(self.indices[0]);
        self.indices
            .iter()
            .fold(BigUint::zero(), |acc, &m| acc + &fibs[m as usize])
    }

    /// Indices m₀ > m₁ > ... > m_k, most significant first.
    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Number of terms minus one (the k of the closed formulas).
    pub fn k(&self) -> usize {
        self.indices.len() - 1
    }

    /// Suffix values x_0 = H, x_1, ..., x_k, x_{k+1} = 0, where
    /// x_ℓ = F_{m_ℓ} + ... + F_{m_k}.
    pub fn suffix_values(&self) -> Vec<BigUint> {
        let fibs = fib_table_through(self.indices[0]);
        let mut xs = vec![BigUint::zero()];
        for &m in self.indices.iter().rev() {
            let next = xs.last().unwrap() + &fibs[m as usize];
            xs.push(next);
        }
        xs.reverse();
        xs
    }
}
