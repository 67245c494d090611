//! High-precision real helpers: the golden ratio φ, the growth exponent
//! λ = log 2 / log φ, and x^λ at a caller-chosen number of significant
//! decimal digits. Exact code paths never touch these.

use num_bigint::BigUint;
use num_rational::BigRational;
use rug::ops::Pow;
use rug::Float;

/// Bits of working precision for `digits` significant decimals, with guard
/// bits for the handful of transcendental operations per value.
pub fn prec_bits(digits: u32) -> u32 {
    ((digits as f64 + 20.0) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// √5 at the given precision.
pub fn sqrt5(prec: u32) -> Float {
    Float::with_val(prec, 5u32).sqrt()
}

/// φ = (1 + √5)/2.
pub fn phi(prec: u32) -> Float {
    (sqrt5(prec) + 1u32) / 2u32
}

/// λ = log 2 / log φ ≈ 1.4404; the exponent with φ^λ = 2.
pub fn lambda(prec: u32) -> Float {
    Float::with_val(prec, 2u32).ln() / phi(prec).ln()
}

/// c = √5^λ / 6, the limit of A(F_m)/F_m^λ.
pub fn c_const(prec: u32) -> Float {
    sqrt5(prec).pow(&lambda(prec)) / 6u32
}

/// x^λ for x > 0.
pub fn pow_lambda(x: &Float, prec: u32) -> Float {
    Float::with_val(prec, x.clone().pow(&lambda(prec)))
}

pub fn biguint_to_float(n: &BigUint, prec: u32) -> Float {
    Float::with_val(prec, rug::Integer::from_digits(&n.to_u64_digits(), rug::integer::Order::Lsf))
}

pub fn rational_to_float(q: &BigRational, prec: u32) -> Float {
    let (sign_num, num) = q.numer().clone().into_parts();
    let (_, den) = q.denom().clone().into_parts();
    let f = biguint_to_float(&num, prec) / biguint_to_float(&den, prec);
    if sign_num == num_bigint::Sign::Minus {
        -f
    } else {
        f
    }
}

/// Decimal rendering with the requested number of significant digits.
pub fn to_decimal_string(x: &Float, digits: u32) -> String {
    let (sign, mantissa, exp) = x.to_sign_string_exp(10, Some(digits as usize));
    match exp {
        Some(e) => {
            let s = if sign { "-" } else { "" };
            format!("{s}0.{mantissa}e{e}")
        }
        None => "0".to_string(),
    }
}
