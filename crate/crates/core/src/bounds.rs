//! Exact evaluation of the point-count bounds.
//!
//! Every quantity has the form sum c_k * root_k with rational c_k and roots
//! of integers (square roots of q, cube roots of δ). Roots are bracketed by
//! integer square/cube roots at a binary scale, so each bound is an
//! interval with rational endpoints. Signs are decided by refining the scale
//! until the interval excludes zero; a perfect power yields a zero-width
//! interval.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

const START_BITS: u32 = 32;
const MAX_BITS: u32 = 1 << 14;

/// A closed interval [lo, hi] with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn int(v: i64) -> Self {
        Self::exact(BigRational::from_integer(v.into()))
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    /// Product of two intervals with nonnegative endpoints.
    pub fn mul_nonneg(&self, o: &Interval) -> Interval {
        debug_assert!(!self.lo.is_negative() && !o.lo.is_negative());
        Interval {
            lo: &self.lo * &o.lo,
            hi: &self.hi * &o.hi,
        }
    }

    pub fn scale(&self, k: i64) -> Interval {
        let k = BigRational::from_integer(k.into());
        if k.is_negative() {
            Interval {
                lo: &self.hi * &k,
                hi: &self.lo * &k,
            }
        } else {
            Interval {
                lo: &self.lo * &k,
                hi: &self.hi * &k,
            }
        }
    }

    /// `Some` once the sign is decided.
    pub fn sign(&self) -> Option<Ordering> {
        let zero = BigRational::zero();
        if self.lo > zero {
            Some(Ordering::Greater)
        } else if self.hi < zero {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        let two = BigRational::from_integer(2.into());
        ((&self.lo + &self.hi) / two).to_f64().unwrap_or(f64::NAN)
    }
}

/// n^{1/k} bracketed at scale 2^bits.
fn root_interval(n: u64, k: u32, bits: u32) -> Interval {
    let n = BigInt::from(n);
    let scaled = n << (k * bits) as usize;
    let r = scaled.nth_root(k);
    let den = BigInt::one() << bits as usize;
    if r.pow(k) == scaled {
        return Interval::exact(BigRational::new(r, den));
    }
    Interval {
        lo: BigRational::new(r.clone(), den.clone()),
        hi: BigRational::new(r + 1, den),
    }
}

pub fn sqrt_interval(n: u64, bits: u32) -> Interval {
    root_interval(n, 2, bits)
}

pub fn cbrt_interval(n: u64, bits: u32) -> Interval {
    root_interval(n, 3, bits)
}

fn pow_int(base: u64, e: u32) -> Interval {
    Interval::exact(BigRational::from_integer(BigInt::from(base).pow(e)))
}

/// δ^{13/3} = δ^4 δ^{1/3}.
fn delta_13_3(delta: u64, bits: u32) -> Interval {
    pow_int(delta, 4).mul_nonneg(&cbrt_interval(delta, bits))
}

/// q^{k/2} for k >= 0.
fn q_half_power(q: u64, k: u32, bits: u32) -> Interval {
    let whole = pow_int(q, k / 2);
    if k.is_multiple_of(2) {
        whole
    } else {
        whole.mul_nonneg(&sqrt_interval(q, bits))
    }
}

/// An exactly evaluated bound: an enclosing interval whose sign is decided.
#[derive(Clone, Debug, Serialize)]
pub struct ExactValue {
    #[serde(skip)]
    pub interval: Interval,
    /// -1, 0 or 1.
    pub sign: i8,
    pub approx: f64,
    pub precision_bits: u32,
}

impl ExactValue {
    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign < 0
    }
}

/// Refines `f(bits)` until its sign is determined.
pub fn decide(f: impl Fn(u32) -> Interval) -> ExactValue {
    let mut bits = START_BITS;
    loop {
        let iv = f(bits);
        if let Some(s) = iv.sign() {
            let sign = match s {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            };
            return ExactValue {
                approx: iv.midpoint_f64(),
                interval: iv,
                sign,
                precision_bits: bits,
            };
        }
        assert!(bits < MAX_BITS, "sign undecided at {bits} bits");
        bits *= 2;
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundQuery {
    pub q: u64,
    pub r: u32,
    pub delta: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CafureMatera {
    /// q > 2(r+1)δ^2.
    pub condition_ok: bool,
    /// 2(r+1)δ^2.
    pub threshold: u64,
    /// (δ-1)(δ-2), the coefficient of q^{r-1/2}.
    pub sqrt_coefficient: u64,
    /// (δ-1)δ, the constant that appears in the dimension-two count.
    pub delta_adjacent: u64,
    pub lower: ExactValue,
    pub upper: ExactValue,
}

fn cm_error(bq: BoundQuery, bits: u32) -> Interval {
    let c = ((bq.delta - 1) * (bq.delta - 2)) as i64;
    let first = q_half_power(bq.q, 2 * bq.r - 1, bits).scale(c);
    let second = delta_13_3(bq.delta, bits).mul_nonneg(&pow_int(bq.q, bq.r - 1)).scale(5);
    first.add(&second)
}

pub fn cafure_matera(bq: BoundQuery) -> CafureMatera {
    assert!(bq.q >= 2 && bq.r >= 1 && bq.delta >= 1, "invalid bound query {bq:?}");
    let threshold = 2 * (bq.r as u64 + 1) * bq.delta * bq.delta;
    CafureMatera {
        condition_ok: bq.q > threshold,
        threshold,
        sqrt_coefficient: (bq.delta - 1) * (bq.delta.saturating_sub(2)),
        delta_adjacent: (bq.delta - 1) * bq.delta,
        lower: decide(|b| pow_int(bq.q, bq.r).sub(&cm_error(bq, b))),
        upper: decide(|b| pow_int(bq.q, bq.r).add(&cm_error(bq, b))),
    }
}

/// q^3 - 3422 q^{5/2} - 5·60^{13/3} q^2 - 9 q^2.
pub fn propmain1_interval(q: u64, bits: u32) -> Interval {
    let q2 = pow_int(q, 2);
    pow_int(q, 3)
        .sub(&q_half_power(q, 5, bits).scale(3422))
        .sub(&delta_13_3(60, bits).mul_nonneg(&q2).scale(5))
        .sub(&q2.scale(9))
}

/// q^2 + 1499·1500 q^{1/2} + 5·1500^{13/3} q.
pub fn propmain2_interval(q: u64, bits: u32) -> Interval {
    pow_int(q, 2)
        .add(&sqrt_interval(q, bits).scale(1499 * 1500))
        .add(&delta_13_3(1500, bits).mul_nonneg(&pow_int(q, 1)).scale(5))
}

/// propmain1 - propmain2 - (q + 1).
pub fn ultimosez1_interval(q: u64, bits: u32) -> Interval {
    propmain1_interval(q, bits)
        .sub(&propmain2_interval(q, bits))
        .sub(&Interval::int(q as i64 + 1))
}

/// q + 1 - 2 sqrt(q).
pub fn hasse_weil_interval(q: u64, bits: u32) -> Interval {
    Interval::int(q as i64 + 1).sub(&sqrt_interval(q, bits).scale(2))
}

pub fn propmain1_lower(q: u64) -> ExactValue {
    decide(|b| propmain1_interval(q, b))
}

pub fn propmain2_upper(q: u64) -> ExactValue {
    decide(|b| propmain2_interval(q, b))
}

pub fn ultimosez1_lower(q: u64) -> ExactValue {
    decide(|b| ultimosez1_interval(q, b))
}

pub fn hasse_weil_lower(q: u64) -> ExactValue {
    decide(|b| hasse_weil_interval(q, b))
}

/// Floating-point estimate for display next to small-field counts.
pub fn ultimosez1_lower_approx(q: u64) -> f64 {
    ultimosez1_interval(q, START_BITS).midpoint_f64()
}

/// Smallest q >= 1 with `f(q) > 0`, for an `f` that is negative below a
/// single crossing and positive above it.
pub fn first_positive(f: impl Fn(u64) -> ExactValue) -> u64 {
    let mut hi = 1u64;
    while !f(hi).is_positive() {
        hi *= 2;
    }
    let mut lo = hi / 2;
    // invariant: f(lo) <= 0 (or lo = 0), f(hi) > 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f(mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// q* = min{q : ultimosez1_lower(q) > 0}.
///
/// With s = sqrt(q) the bound is s^6 - 3422 s^5 - c_4 s^4 - c_2 s^2 - c_1 s - 1
/// with positive c_i; one sign change in the coefficients means exactly one
/// positive root, so bisection is exact.
pub fn q_star() -> u64 {
    first_positive(ultimosez1_lower)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub q: u64,
    pub propmain1_lower: ExactValue,
    pub propmain2_upper: ExactValue,
    pub ultimosez1_lower: ExactValue,
    pub hasse_weil_lower: ExactValue,
}

pub fn bound_row(q: u64) -> BoundRow {
    BoundRow {
        q,
        propmain1_lower: propmain1_lower(q),
        propmain2_upper: propmain2_upper(q),
        ultimosez1_lower: ultimosez1_lower(q),
        hasse_weil_lower: hasse_weil_lower(q),
    }
}

/// Golden values written to and checked against `data/bounds_golden.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Golden {
    pub q_star: u64,
    /// Enclosure of propmain2_upper(4) at 64 bits, as "num/den" strings.
    pub propmain2_upper_4: (String, String),
}

pub fn golden() -> Golden {
    let iv = propmain2_interval(4, 64);
    Golden {
        q_star: q_star(),
        propmain2_upper_4: (iv.lo.to_string(), iv.hi.to_string()),
    }
}
