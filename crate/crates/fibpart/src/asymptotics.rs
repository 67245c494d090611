//! Subdivision of [F_m, F_{m+1}) by leading Zeckendorf digits, the limit
//! coefficients of each subinterval endpoint, and certified enclosures of
//! the liminf c₁ and limsup c₂ of A(H)/H^λ.
//!
//! Each endpoint is a prefix pattern (a₁, ..., a_ℓ) standing for the family
//! H = F_m + Σ_i F_{m−a_i} as m → ∞. Along such a family A(H)/2^m converges
//! to an exact rational v and H√5/φ^m converges to w = 1 + Σ_i φ^{−a_i}, so
//! A(H)/H^λ → v (√5/w)^λ. Consecutive endpoints sandwich every H in between,
//! which is what turns a finite enumeration into bounds on c₁ and c₂.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::bigfib::fib;
use crate::partition::tables_from_gaps;
use crate::precision::{prec_bits, lambda, phi, rational_to_float, sqrt5};
use crate::summatory::f_weight;
use crate::{Error, Result};

/// A Zeckendorf prefix (a₁, ..., a_ℓ), possibly empty, with a₁ ≥ 2 and
/// pairwise gaps ≥ 2. Defines the endpoint family F_m + Σ_i F_{m−a_i}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OffsetPattern {
    offsets: Vec<u32>,
}

impl OffsetPattern {
    pub fn new(offsets: Vec<u32>) -> Result<Self> {
        if let Some(&first) = offsets.first() {
            if first < 2 {
                return Err(Error::InvalidExpansion(format!(
                    "offset pattern must start at >= 2, got {first}"
                )));
            }
        }
        for w in offsets.windows(2) {
            if w[1] < w[0] + 2 {
                return Err(Error::InvalidExpansion(format!(
                    "offsets {} and {} violate the gap-2 rule",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { offsets })
    }

    pub fn empty() -> Self {
        Self { offsets: Vec::new() }
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Index gaps (a₁ − 0, a₂ − a₁, ...) seen from the leading term.
    fn gaps(&self) -> Vec<u64> {
        let mut prev = 0u64;
        self.offsets
            .iter()
            .map(|&a| {
                let g = a as u64 - prev;
                prev = a as u64;
                g
            })
            .collect()
    }

    /// The concrete member of the family at leading index m.
    pub fn instantiate(&self, m: u64) -> Result<BigUint> {
        let max_offset = self.offsets.last().copied().unwrap_or(0) as u64;
        if m < max_offset + 2 {
            return Err(Error::Domain(format!(
                "leading index {m} too small for pattern reaching offset {max_offset}"
            )));
        }
        let mut h = fib(m)?;
        for &a in &self.offsets {
            h += fib(m - a as u64)?;
        }
        Ok(h)
    }

    /// Semicolon-joined offsets for CSV output; empty pattern renders as "".
    pub fn csv_field(&self) -> String {
        self.offsets
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl std::fmt::Display for OffsetPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.offsets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All patterns with largest offset ≤ depth, in increasing order of the
/// endpoint value they define. There are F_{depth+1} of them, the empty
/// pattern included; the interval's right fence post F_{m+1} is *not* in
/// the list and is appended separately by [`bounds`].
pub fn enumerate_patterns(depth: u32) -> Result<Vec<OffsetPattern>> {
    if depth < 2 {
        return Err(Error::Domain(format!("depth {depth} must be >= 2")));
    }
    let mut out = vec![OffsetPattern::empty()];
    let mut stack: Vec<Vec<u32>> = (2..=depth).rev().map(|a| vec![a]).collect();
    while let Some(prefix) = stack.pop() {
        for a in (prefix.last().unwrap() + 2..=depth).rev() {
            let mut next = prefix.clone();
            next.push(a);
            stack.push(next);
        }
        out.push(OffsetPattern { offsets: prefix });
    }
    // order by the exact decoded value at a fixed reference index; the
    // ordering is the same for every m >= depth + 2
    let m_star = depth as u64 + 2;
    out.sort_by_cached_key(|p| p.instantiate(m_star).expect("m_star is large enough"));
    Ok(out)
}

/// The limit v = lim A(p)/2^m of a pattern endpoint, as an exact rational:
/// v = c_ℓ/(6·2^{a_ℓ}) + Σ_{i=1}^{ℓ} c_{i−1} f(t_i) / 2^{a_{i−1} + 2t_i}
/// with a₀ = 0 and the c, t, ε tables built from the pattern's gaps.
/// The empty pattern gives 1/6.
pub fn endpoint_v(p: &OffsetPattern) -> BigRational {
    let sixth = BigRational::new(BigInt::one(), BigInt::from(6));
    if p.is_empty() {
        return sixth;
    }
    let tab = tables_from_gaps(&p.gaps());
    let l = tab.k();
    let a_last = *p.offsets.last().unwrap() as u64;
    let mut v = BigRational::new(
        BigInt::from(tab.a[l].clone()),
        BigInt::from(BigUint::from(6u32) << a_last),
    );
    let mut prev_offset = 0u64;
    for i in 1..=l {
        let denom_exp = prev_offset + 2 * tab.t[i - 1];
        v += BigRational::new(
            BigInt::from(&tab.a[i - 1] * f_weight(tab.t[i - 1]).unwrap()),
            BigInt::from(BigUint::one() << denom_exp),
        );
        prev_offset = p.offsets[i - 1] as u64;
    }
    v
}

/// The limit w = lim p√5/φ^m = 1 + Σ_i φ^{−a_i}, to at least `digits`
/// significant decimals. The empty pattern gives 1; the interval's right
/// fence post would give φ.
pub fn endpoint_w(p: &OffsetPattern, digits: u32) -> Float {
    endpoint_w_prec(p, prec_bits(digits))
}

fn endpoint_w_prec(p: &OffsetPattern, prec: u32) -> Float {
    let phi = phi(prec);
    let mut w = Float::with_val(prec, 1);
    for &a in p.offsets() {
        w += Float::with_val(prec, phi.clone().pow(-(a as i32)));
    }
    w
}

/// The limit of A(H)/H^λ along the pattern's family: v (√5/w)^λ.
pub fn ratio_limit(p: &OffsetPattern, digits: u32) -> Float {
    let prec = prec_bits(digits);
    let v = rational_to_float(&endpoint_v(p), prec);
    let w = endpoint_w_prec(p, prec);
    v * (sqrt5(prec) / w).pow(&lambda(prec))
}

/// Exact rational and high-precision limit data for one endpoint.
#[derive(Debug, Clone)]
pub struct EndpointEstimate {
    pub pattern: OffsetPattern,
    /// lim A(p)/2^m, exact.
    pub v: BigRational,
    /// lim p√5/φ^m, in [1, φ).
    pub w: Float,
    /// v (√5/w)^λ, the limit of A(H)/H^λ at the endpoint itself.
    pub ratio: Float,
}

pub fn endpoint_estimate(p: &OffsetPattern, digits: u32) -> EndpointEstimate {
    EndpointEstimate {
        pattern: p.clone(),
        v: endpoint_v(p),
        w: endpoint_w(p, digits),
        ratio: ratio_limit(p, digits),
    }
}

/// Certified enclosures of c₁ and c₂ from a subdivision of given depth.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub depth: u32,
    pub digits: u32,
    pub c1_lower: Float,
    pub c1_upper: Float,
    pub c2_lower: Float,
    pub c2_upper: Float,
    /// Endpoint attaining the least lower bound L_j (pins c₁ from both sides).
    pub argmin_pattern: OffsetPattern,
    /// Endpoint attaining the greatest upper bound U_j (pins c₂ from both sides).
    pub argmax_pattern: OffsetPattern,
    /// Number of subinterval endpoints, the final fence post F_{m+1} included.
    pub endpoint_count: usize,
    /// Slack added around the raw extrema to absorb transcendental rounding.
    pub slack: Float,
}

impl BoundsReport {
    pub fn to_json(&self) -> serde_json::Value {
        let d = self.digits;
        serde_json::json!({
            "depth": self.depth,
            "digits": d,
            "c1": [
                crate::precision::to_decimal_string(&self.c1_lower, d),
                crate::precision::to_decimal_string(&self.c1_upper, d),
            ],
            "c2": [
                crate::precision::to_decimal_string(&self.c2_lower, d),
                crate::precision::to_decimal_string(&self.c2_upper, d),
            ],
            "argmin_pattern": self.argmin_pattern,
            "argmax_pattern": self.argmax_pattern,
            "endpoint_count": self.endpoint_count,
            "slack": crate::precision::to_decimal_string(&self.slack, 3),
        })
    }
}

/// Per-endpoint row of the optional full CSV dump: the pattern, its exact
/// v, its w, and the subinterval bounds L_j, U_j it anchors on the left.
#[derive(Debug, Clone)]
pub struct EndpointRow {
    pub pattern: OffsetPattern,
    pub v: BigRational,
    pub w: Float,
    /// L_j = v_j (√5/w_{j+1})^λ; `None` on the final fence post.
    pub lower: Option<Float>,
    /// U_j = v_{j+1} (√5/w_j)^λ; `None` on the final fence post.
    pub upper: Option<Float>,
}

struct Subdivision {
    patterns: Vec<OffsetPattern>,
    /// v as floats, fence post 1/3 appended.
    v: Vec<Float>,
    /// w, fence post φ appended.
    w: Vec<Float>,
    /// (√5/w_j)^λ for every endpoint.
    pow_factor: Vec<Float>,
}

fn subdivide(depth: u32, prec: u32) -> Result<Subdivision> {
    let patterns = enumerate_patterns(depth)?;
    let s5 = sqrt5(prec);
    let lam = lambda(prec);
    let mut v: Vec<Float> = patterns
        .iter()
        .map(|p| rational_to_float(&endpoint_v(p), prec))
        .collect();
    v.push(Float::with_val(prec, 1) / 3u32);
    let mut w: Vec<Float> = patterns
        .iter()
        .map(|p| endpoint_w_prec(p, prec))
        .collect();
    w.push(phi(prec));
    let pow_factor: Vec<Float> = w
        .iter()
        .map(|wj| Float::with_val(prec, &s5 / wj).pow(&lam))
        .collect();
    Ok(Subdivision {
        patterns,
        v,
        w,
        pow_factor,
    })
}

/// Enclosures of c₁ = liminf A(H)/H^λ and c₂ = limsup A(H)/H^λ.
///
/// Over consecutive endpoints, L_j = v_j (√5/w_{j+1})^λ bounds the ratio
/// from below on [p_j, p_{j+1}) and U_j = v_{j+1} (√5/w_j)^λ from above, so
/// min L_j ≤ c₁ and c₂ ≤ max U_j; the ratio limits at the extremal
/// endpoints themselves give the other side of each enclosure. All reported
/// bounds are padded by an explicit rounding slack, and an error is raised
/// if the slack could change which endpoint is extremal.
pub fn bounds(depth: u32, digits: u32) -> Result<BoundsReport> {
    if digits < 15 {
        return Err(Error::Domain(format!("digits {digits} must be >= 15")));
    }
    let prec = prec_bits(digits);
    let sub = subdivide(depth, prec)?;
    let n = sub.patterns.len();

    // one part in 10^{digits-10} per transcendental step, a handful of
    // steps per bound
    let slack = Float::with_val(prec, 10u32).pow(-(digits as i32 - 10)) * 8u32;

    let mut min_l: Option<(usize, Float)> = None;
    let mut max_u: Option<(usize, Float)> = None;
    let mut runner_l = Float::with_val(prec, f64::INFINITY);
    let mut runner_u = Float::with_val(prec, f64::NEG_INFINITY);
    for j in 0..n {
        let l = Float::with_val(prec, &sub.v[j] * &sub.pow_factor[j + 1]);
        let u = Float::with_val(prec, &sub.v[j + 1] * &sub.pow_factor[j]);
        match &mut min_l {
            Some((jm, lm)) => {
                if l < *lm {
                    runner_l = lm.clone();
                    *jm = j;
                    *lm = l;
                } else if l < runner_l {
                    runner_l = l;
                }
            }
            None => min_l = Some((j, l)),
        }
        match &mut max_u {
            Some((jm, um)) => {
                if u > *um {
                    runner_u = um.clone();
                    *jm = j;
                    *um = u;
                } else if u > runner_u {
                    runner_u = u;
                }
            }
            None => max_u = Some((j, u)),
        }
    }
    let (jmin, l_min) = min_l.expect("at least two endpoints");
    let (jmax, u_max) = max_u.expect("at least two endpoints");

    let sep = Float::with_val(prec, &slack) * 2u32;
    if n > 1 && Float::with_val(prec, &runner_l - &l_min) < sep {
        return Err(Error::Precision(format!(
            "two candidate minima within {} of each other; raise --digits",
            sep
        )));
    }
    if n > 1 && Float::with_val(prec, &u_max - &runner_u) < sep {
        return Err(Error::Precision(format!(
            "two candidate maxima within {} of each other; raise --digits",
            sep
        )));
    }

    let point_min = Float::with_val(prec, &sub.v[jmin] * &sub.pow_factor[jmin]);
    let point_max = Float::with_val(prec, &sub.v[jmax] * &sub.pow_factor[jmax]);

    Ok(BoundsReport {
        depth,
        digits,
        c1_lower: l_min - &slack,
        c1_upper: point_min + &slack,
        c2_lower: point_max - &slack,
        c2_upper: u_max + &slack,
        argmin_pattern: sub.patterns[jmin].clone(),
        argmax_pattern: sub.patterns[jmax].clone(),
        endpoint_count: n + 1,
        slack,
    })
}

/// Full per-endpoint table backing the optional bounds CSV.
pub fn endpoint_rows(depth: u32, digits: u32) -> Result<Vec<EndpointRow>> {
    let prec = prec_bits(digits);
    let sub = subdivide(depth, prec)?;
    let n = sub.patterns.len();
    let mut rows = Vec::with_capacity(n + 1);
    for j in 0..n {
        rows.push(EndpointRow {
            pattern: sub.patterns[j].clone(),
            v: endpoint_v(&sub.patterns[j]),
            w: sub.w[j].clone(),
            lower: Some(Float::with_val(prec, &sub.v[j] * &sub.pow_factor[j + 1])),
            upper: Some(Float::with_val(prec, &sub.v[j + 1] * &sub.pow_factor[j])),
        });
    }
    rows.push(EndpointRow {
        pattern: OffsetPattern::empty(),
        v: BigRational::new(BigInt::one(), BigInt::from(3)),
        w: sub.w[n].clone(),
        lower: None,
        upper: None,
    });
    Ok(rows)
}
