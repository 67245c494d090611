//! Brute-force ground truth at desk scale: a 0/1 subset-sum table over the
//! distinct Fibonacci *values* {1, 2, 3, 5, 8, ...} (F₁ and F₂ collapse to
//! the single value 1), with prefix sums. Every formula path is validated
//! against this table.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partition::{r_exact, r_robbins};
use crate::summatory::{a_exact, SummatoryMemo};
use crate::{Error, Result};

/// Hard cap on the table size; beyond this the formula paths are the only
/// sensible route.
pub const MAX_ORACLE_LIMIT: u64 = 2_000_000;

/// Exhaustive R and A values for 0 ≤ n ≤ limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTable {
    limit: u64,
    r_values: Vec<BigUint>,
    a_values: Vec<BigUint>,
}

impl OracleTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn r(&self, n: u64) -> &BigUint {
        &self.r_values[n as usize]
    }

    pub fn a(&self, n: u64) -> &BigUint {
        &self.a_values[n as usize]
    }
}

/// Builds the table by dynamic programming: one pass per Fibonacci value
/// ≤ N, counting each value at most once.
pub fn build_oracle(limit: u64) -> Result<OracleTable> {
    if limit > MAX_ORACLE_LIMIT {
        return Err(Error::Resource(format!(
            "oracle limit {limit} exceeds the {MAX_ORACLE_LIMIT} cap; \
             use the closed-form paths for larger arguments"
        )));
    }
    let mut values: Vec<u64> = Vec::new();
    let (mut prev, mut cur) = (1u64, 2u64); // F_2, F_3 as values
    while prev <= limit {
        values.push(prev);
        let next = prev + cur;
        prev = cur;
        cur = next;
    }

    let n = limit as usize;
    let mut r_values = vec![BigUint::zero(); n + 1];
    r_values[0] = BigUint::one();
    for &v in &values {
        let v = v as usize;
        for i in (v..=n).rev() {
            let add = r_values[i - v].clone();
            r_values[i] += add;
        }
    }

    let mut a_values = Vec::with_capacity(n + 1);
    let mut acc = BigUint::zero();
    for r in &r_values {
        acc += r;
        a_values.push(acc.clone());
    }
    Ok(OracleTable {
        limit,
        r_values,
        a_values,
    })
}

/// One disagreement between a formula path and the brute-force table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub h: u64,
    pub quantity: &'static str,
    pub expected: BigUint,
    pub actual: BigUint,
}

/// Checks r_exact, r_robbins, a_exact and the combinatorial recursion
/// against the table for every 0 ≤ H ≤ N. Returns at most the first 100
/// mismatches; empty means all four paths agree with the enumeration.
pub fn verify_formulas(limit: u64) -> Result<Vec<Mismatch>> {
    let table = build_oracle(limit)?;
    let mut memo = SummatoryMemo::new();
    let mut mismatches = Vec::new();
    let record = |h: u64,
                      quantity: &'static str,
                      expected: &BigUint,
                      actual: BigUint,
                      out: &mut Vec<Mismatch>| {
        if actual != *expected {
            out.push(Mismatch {
                h,
                quantity,
                expected: expected.clone(),
                actual,
            });
        }
    };
    for h in 0..=limit {
        if mismatches.len() >= 100 {
            break;
        }
        let hb = BigUint::from(h);
        record(h, "r_exact", table.r(h), r_exact(&hb), &mut mismatches);
        record(h, "r_robbins", table.r(h), r_robbins(&hb), &mut mismatches);
        record(h, "a_exact", table.a(h), a_exact(&hb), &mut mismatches);
        record(h, "a_recursive", table.a(h), memo.eval(&hb), &mut mismatches);
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfib::fib;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn tiny_tables() {
        let t = build_oracle(0).unwrap();
        assert_eq!(t.r(0), &big(1));
        assert_eq!(t.a(0), &big(1));

        let t = build_oracle(8).unwrap();
        let r: Vec<u64> = (0..=8).map(|n| t.r(n).try_into().unwrap()).collect();
        assert_eq!(r, vec![1, 1, 1, 2, 1, 2, 2, 1, 3]);
    }

    #[test]
    fn rejects_oversize_limit() {
        assert!(build_oracle(MAX_ORACLE_LIMIT + 1).is_err());
    }

    #[test]
    fn deterministic_rebuild() {
        assert_eq!(build_oracle(2000).unwrap(), build_oracle(2000).unwrap());
    }

    #[test]
    fn verify_small_ranges() {
        assert!(verify_formulas(0).unwrap().is_empty());
        assert!(verify_formulas(5000).unwrap().is_empty());
    }

    #[test]
    fn subsets_of_small_fibs_stay_below_f_m() {
        // every subset of {F_2, ..., F_{m-2}} sums to <= F_m - 1, via
        // F_1 + F_2 + ... + F_{m-2} = F_m - 1
        for m in 4..=20u64 {
            let total: BigUint = (1..=m - 2).map(|i| fib(i).unwrap()).sum();
            assert_eq!(total + big(1), fib(m).unwrap());
        }
        // so A(F_m - 1) counts at least the 2^{m-3} subsets of that set
        let t = build_oracle(6765).unwrap();
        for m in 4..=20u64 {
            let fm: u64 = fib(m).unwrap().try_into().unwrap();
            assert!(t.a(fm - 1) >= &(big(1) << (m - 3)), "m = {m}");
        }
    }
}
