//! The summatory function A(H) = Σ_{n=0}^{H} R(n): closed forms, the
//! combinatorial recursion as a reference path, the mean M(H) = A(H)/H,
//! the logarithmic average B(H), and the A(H)/H^λ ratio series.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::ops::Pow;
use rug::Float;

use crate::bigfib::{fib, max_fib_index, ZeckendorfExpansion};
use crate::partition::{r_exact, recursion_tables};
use crate::precision::{biguint_to_float, lambda, prec_bits};
use crate::{Error, Result};

/// f(t) = 1 + 2(4^{t−1} − 1)/3, the weight attached to a gap of size
/// 2t − 1 or 2t − 2 in the summatory recursion.
pub fn f_weight(t: u64) -> Result<BigUint> {
    if t == 0 {
        return Err(Error::Domain("f_weight: argument must be >= 1".into()));
    }
    let four_pow = BigUint::from(4u32).pow((t - 1) as u32);
    Ok(BigUint::one() + ((four_pow - BigUint::one()) << 1u32) / BigUint::from(3u32))
}

/// A(F_m) = ⌊2^m/6 + (m+1)/2⌋ = ⌊(2^m + 3(m+1))/6⌋, exactly.
pub fn a_fib(m: u64) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::Domain(format!("a_fib: index {m} must be >= 2")));
    }
    let numerator = (BigUint::one() << m) + BigUint::from(3 * (m + 1));
    Ok(numerator / BigUint::from(6u32))
}

/// A(H) by the closed formula:
/// a_k ⌊2^{m_k}/6 + (m_k+1)/2⌋ − ε_k a_{k−1} + Σ_{i≤k} a_{i−1} f(t_i) 2^{m_{i−1} − 2t_i},
/// with A(0) = 1 and the k = 0 branch equal to [`a_fib`].
pub fn a_exact(h: &BigUint) -> BigUint {
    if h.is_zero() {
        return BigUint::one();
    }
    let z = ZeckendorfExpansion::encode(h).expect("h >= 1");
    let indices = z.indices();
    let k = z.k();
    let m_k = *indices.last().unwrap();
    let head = a_fib(m_k).expect("m_k >= 2");
    if k == 0 {
        return head;
    }
    let tab = recursion_tables(&z);
    let mut total = &tab.a[k] * head;
    for i in 1..=k {
        // exponent m_{i−1} − 2t_i equals m_i − 1 (odd gap) or m_i − 2
        // (even gap), hence never negative
        let exp = indices[i - 1]
            .checked_sub(2 * tab.t[i - 1])
            .expect("summatory exponent m_{i-1} - 2t_i must be non-negative");
        total += &tab.a[i - 1] * f_weight(tab.t[i - 1]).unwrap() << exp;
    }
    total - &tab.a[k - 1] * BigUint::from(tab.eps[k - 1] as u32)
}

/// Memoized evaluator for the combinatorial recursion
/// A(H) = A(H−F_m) + A(H−F_{m−1}) − A(H−2F_{m−1}) + 2^{m−3}
/// (F_m ≤ H < F_{m+1}, m ≥ 3), with A(x) = 0 for x < 0.
///
/// Each evaluator owns its memo table; sharing one across calls is an
/// optimization, not a correctness requirement.
#[derive(Debug, Default)]
pub struct SummatoryMemo {
    memo: HashMap<BigUint, BigUint>,
}

impl SummatoryMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&mut self, h: &BigUint) -> BigUint {
        // direct values below F_3's range, where the lemma needs m >= 3
        if *h <= BigUint::from(2u32) {
            let small = h.to_u64_digits().first().copied().unwrap_or(0);
            return BigUint::from(small + 1);
        }
        if let Some(v) = self.memo.get(h) {
            return v.clone();
        }
        let m = max_fib_index(h).expect("h >= 3");
        let f_m = fib(m).unwrap();
        let f_m1 = fib(m - 1).unwrap();
        let two_f_m1 = &f_m1 << 1u32;
        let mut total = self.eval(&(h - &f_m)) + self.eval(&(h - &f_m1));
        total += BigUint::one() << (m - 3);
        if *h >= two_f_m1 {
            total -= self.eval(&(h - two_f_m1));
        }
        self.memo.insert(h.clone(), total.clone());
        total
    }
}

/// A(H) by the combinatorial recursion, with a fresh memo table.
pub fn a_recursive(h: &BigUint) -> BigUint {
    SummatoryMemo::new().eval(h)
}

/// M(H) = A(H)/H as an exact rational, for H ≥ 1.
pub fn mean(h: &BigUint) -> Result<BigRational> {
    if h.is_zero() {
        return Err(Error::Domain("mean: argument must be >= 1".into()));
    }
    let a = BigInt::from(a_exact(h));
    Ok(BigRational::new(a, BigInt::from(h.clone())))
}

/// B(H) = (log H)⁻¹ Σ_{n=1}^{H} R(n)/n^λ for H ≥ 2, to at least `digits`
/// significant decimals. The n = 0 term is excluded (0^λ is undefined).
pub fn b_log_average(h: u64, digits: u32) -> Result<Float> {
    if h < 2 {
        return Err(Error::Domain("b_log_average: argument must be >= 2".into()));
    }
    let prec = prec_bits(digits);
    let lam = lambda(prec);
    let mut sum = Float::with_val(prec, 0);
    for n in 1..=h {
        let r = biguint_to_float(&r_exact(&BigUint::from(n)), prec);
        let n_pow = Float::with_val(prec, n).pow(&lam);
        sum += r / n_pow;
    }
    Ok(sum / Float::with_val(prec, h).ln())
}

/// One (H, A(H)/H^λ) row per H in 1..=h_max, with A accumulated from the
/// brute-force R table.
pub fn ratio_series(h_max: u64, digits: u32) -> Result<Vec<(u64, Float)>> {
    if h_max < 1 {
        return Err(Error::Domain("ratio_series: limit must be >= 1".into()));
    }
    let table = crate::oracle::build_oracle(h_max)?;
    let prec = prec_bits(digits);
    let lam = lambda(prec);
    let mut out = Vec::with_capacity(h_max as usize);
    for h in 1..=h_max {
        let a = biguint_to_float(table.a(h), prec);
        let h_pow = Float::with_val(prec, h).pow(&lam);
        out.push((h, a / h_pow));
    }
    Ok(out)
}
