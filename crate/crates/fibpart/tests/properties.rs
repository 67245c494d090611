//! Property suites: codec invariants, the recursion identities behind the
//! closed formulas, and the sandwich structure of the subdivision.
//!
//! Randomized sweeps draw from a ChaCha stream seeded by FIBPART_TEST_SEED
//! (default 0xA000119) so failures replay deterministically.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fibpart::asymptotics::{endpoint_v, endpoint_w, enumerate_patterns, ratio_limit};
use fibpart::bigfib::{fib, ZeckendorfExpansion};
use fibpart::oracle::build_oracle;
use fibpart::partition::{r_exact, recursion_tables};
use fibpart::summatory::{a_exact, f_weight};

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn seeded_rng() -> ChaCha8Rng {
    let seed = std::env::var("FIBPART_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xA000119);
    ChaCha8Rng::seed_from_u64(seed)
}

/// Zeckendorf word as bits indexed from the top, for lexicographic
/// comparison after padding to a common leading index.
fn zeck_bits(z: &ZeckendorfExpansion, top: u64) -> Vec<bool> {
    let mut bits = vec![false; (top - 1) as usize];
    for &m in z.indices() {
        bits[(top - m) as usize] = true;
    }
    bits
}

proptest! {
    #[test]
    fn round_trip(n in 1u64..=1_000_000) {
        let z = ZeckendorfExpansion::encode(&big(n)).unwrap();
        prop_assert_eq!(z.decode(), big(n));
    }

    #[test]
    fn gap_property(n in 1u64..=1_000_000_000) {
        let z = ZeckendorfExpansion::encode(&big(n)).unwrap();
        let idx = z.indices();
        prop_assert!(*idx.last().unwrap() >= 2);
        for w in idx.windows(2) {
            prop_assert!(w[0] - w[1] >= 2);
        }
    }

    #[test]
    fn encoding_order_matches_numeric_order(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
        let za = ZeckendorfExpansion::encode(&big(a)).unwrap();
        let zb = ZeckendorfExpansion::encode(&big(b)).unwrap();
        let top = za.indices()[0].max(zb.indices()[0]);
        let (wa, wb) = (zeck_bits(&za, top), zeck_bits(&zb, top));
        prop_assert_eq!(a.cmp(&b), wa.cmp(&wb));
    }

    #[test]
    fn r_is_positive(n in 0u64..=1_000_000_000) {
        prop_assert!(r_exact(&big(n)) >= BigUint::one());
    }
}

#[test]
fn robbins_induction_identity() {
    // R(H) = a_l R(x_l) - eps_l a_{l-1} R(x_{l+1}) at every level l
    let mut rng = seeded_rng();
    for _ in 0..300 {
        let h = rng.gen_range(2u64..=100_000);
        let z = ZeckendorfExpansion::encode(&big(h)).unwrap();
        let k = z.k();
        if k == 0 {
            continue;
        }
        let tab = recursion_tables(&z);
        let xs = z.suffix_values();
        let r_h = BigInt::from(r_exact(&big(h)));
        for l in 1..=k {
            let lhs = BigInt::from(&tab.a[l] * r_exact(&xs[l]))
                - BigInt::from(tab.eps[l - 1] as u32) * BigInt::from(&tab.a[l - 1] * r_exact(&xs[l + 1]));
            assert_eq!(lhs, r_h, "H = {h}, l = {l}");
        }
    }
}

#[test]
fn summatory_general_recursion_identity() {
    // A(H) = a_l A(x_l) - eps_l a_{l-1} A(x_{l+1}) + sum_{i<=l} a_{i-1} f(t_i) 2^{m_{i-1}-2t_i}
    let mut rng = seeded_rng();
    for _ in 0..300 {
        let h = rng.gen_range(2u64..=100_000);
        let z = ZeckendorfExpansion::encode(&big(h)).unwrap();
        let k = z.k();
        if k == 0 {
            continue;
        }
        let tab = recursion_tables(&z);
        let xs = z.suffix_values();
        let indices = z.indices();
        let a_h = BigInt::from(a_exact(&big(h)));
        let mut tail = BigInt::zero();
        for l in 1..=k {
            let exp = indices[l - 1] - 2 * tab.t[l - 1];
            tail += BigInt::from(&tab.a[l - 1] * f_weight(tab.t[l - 1]).unwrap()) << exp;
            let lhs = BigInt::from(&tab.a[l] * a_exact(&xs[l]))
                - BigInt::from(tab.eps[l - 1] as u32)
                    * BigInt::from(&tab.a[l - 1] * a_exact(&xs[l + 1]))
                + &tail;
            assert_eq!(lhs, a_h, "H = {h}, l = {l}");
        }
    }
}

#[test]
fn key_recursion_identity_full_ranges() {
    // A(H) = A(H-F_m) + A(H-F_{m-1}) - A(H-2F_{m-1}) + 2^{m-3} on [F_m, F_{m+1})
    let table = build_oracle(200_000).unwrap();
    let a = |x: i64| -> BigInt {
        if x < 0 {
            BigInt::zero()
        } else {
            BigInt::from(table.a(x as u64).clone())
        }
    };
    for m in 3u64..=24 {
        let f_m: i64 = fib(m).unwrap().try_into().map(|v: u64| v as i64).unwrap();
        let f_m1: i64 = fib(m - 1).unwrap().try_into().map(|v: u64| v as i64).unwrap();
        let f_next: i64 = fib(m + 1).unwrap().try_into().map(|v: u64| v as i64).unwrap();
        for h in f_m..f_next {
            let rhs = a(h - f_m) + a(h - f_m1) - a(h - 2 * f_m1) + (BigInt::one() << (m - 3));
            assert_eq!(a(h), rhs, "m = {m}, H = {h}");
        }
    }
}

#[test]
fn shifted_recursion_and_case_split() {
    // A(F_m + x) = tA(x) - A(x - F_{m-2t+2}) + f(t) 2^{m-2t}
    // for t in 2..=5, m >= 2t, x in [F_{m-2t+1}, F_{m-2t+3}), and the same
    // via the (eps, y) case split
    let table = build_oracle(200_000).unwrap();
    let a = |x: i64| -> BigInt {
        if x < 0 {
            BigInt::zero()
        } else {
            BigInt::from(table.a(x as u64).clone())
        }
    };
    let fi = |i: u64| -> i64 { u64::try_from(fib(i).unwrap()).unwrap() as i64 };
    for t in 2u64..=5 {
        for m in (2 * t).max(4)..=24 {
            let lo = fi(m - 2 * t + 1);
            let mid = fi(m - 2 * t + 2);
            let hi = fi(m - 2 * t + 3);
            let weight = BigInt::from(f_weight(t).unwrap()) << (m - 2 * t);
            for x in lo..hi {
                let lhs = a(fi(m) + x);
                let rhs = BigInt::from(t) * a(x) - a(x - mid) + &weight;
                assert_eq!(lhs, rhs, "t = {t}, m = {m}, x = {x}");

                // corollary form
                let (eps, y) = if x >= mid { (1, x - mid) } else { (0, x - lo) };
                let rhs2 = BigInt::from(t) * a(x) - BigInt::from(eps) * a(y) + &weight;
                assert_eq!(lhs, rhs2, "case split, t = {t}, m = {m}, x = {x}");
            }
        }
    }
}

#[test]
fn endpoint_sandwich_per_subinterval() {
    // L_j <= v_j (sqrt5/w_j)^lambda <= U_j along the whole list
    let digits = 30;
    let patterns = enumerate_patterns(9).unwrap();
    let rows = fibpart::asymptotics::endpoint_rows(9, digits).unwrap();
    assert_eq!(rows.len(), patterns.len() + 1);
    for (row, p) in rows.iter().zip(&patterns) {
        let point = ratio_limit(p, digits);
        assert!(row.lower.as_ref().unwrap() <= &point, "{p}");
        assert!(&point <= row.upper.as_ref().unwrap(), "{p}");
    }
}

#[test]
fn endpoint_v_matches_finite_evaluations() {
    // A(p at m) / 2^m converges to v: the gap shrinks by well over 10x
    // as m doubles from 60 to 120 to 240
    let mut rng = seeded_rng();
    let patterns = enumerate_patterns(16).unwrap();
    for _ in 0..50 {
        let p = &patterns[rng.gen_range(0..patterns.len())];
        let v = endpoint_v(p);
        let mut last: Option<BigRational> = None;
        for m in [60u64, 120, 240] {
            let h = p.instantiate(m).unwrap();
            let ratio = BigRational::new(
                BigInt::from(a_exact(&h)),
                BigInt::one() << m,
            );
            let gap = (ratio - &v).abs();
            if let Some(prev) = last {
                assert!(
                    &gap * BigRational::from(BigInt::from(10)) <= prev,
                    "{p} at m = {m}"
                );
            }
            last = Some(gap);
        }
    }
}

#[test]
fn b_log_average_interval_sandwich() {
    // sum over (F_m, F_{m+1}] of R(n)/n^lambda sits between the A-difference
    // divided by the range endpoints raised to lambda
    use fibpart::precision::{biguint_to_float, lambda, prec_bits};
    use rug::ops::Pow;
    use rug::Float;

    let digits = 30;
    let prec = prec_bits(digits);
    let lam = lambda(prec);
    let table = build_oracle(11_000).unwrap();
    for m in 5u64..=20 {
        let f_m: u64 = fib(m).unwrap().try_into().unwrap();
        let f_next: u64 = fib(m + 1).unwrap().try_into().unwrap();
        if f_next > table.limit() {
            break;
        }
        let mut sum = Float::with_val(prec, 0);
        for n in f_m + 1..=f_next {
            sum += biguint_to_float(table.r(n), prec) / Float::with_val(prec, n).pow(&lam);
        }
        let diff = biguint_to_float(&(table.a(f_next) - table.a(f_m)), prec);
        let lower = diff.clone() / Float::with_val(prec, f_next).pow(&lam);
        let upper = diff / Float::with_val(prec, f_m).pow(&lam);
        assert!(lower <= sum && sum <= upper, "m = {m}");
    }
}

#[test]
fn w_stays_in_unit_golden_interval() {
    let digits = 30;
    let phi = fibpart::precision::phi(fibpart::precision::prec_bits(digits));
    for p in enumerate_patterns(10).unwrap() {
        let w = endpoint_w(&p, digits);
        assert!(w >= 1u32);
        assert!(w < phi, "{p}");
    }
}
