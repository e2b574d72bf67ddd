//! Exact enumeration by truncated integer power series.
//!
//! All coefficients are exact big integers; floating point enters only when a
//! caller compares against an asymptotic form. Series are stored as
//! coefficient vectors indexed by the exponent.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `S_1..S_N`: the number of plane trees with every internal vertex of
/// degree at least two, by leaf count. Computed by the holonomic recurrence
/// `m S_m = 3(2m−3) S_{m−1} − (m−3) S_{m−2}`, with exact division.
pub fn schroder_numbers(n: usize) -> Vec<BigUint> {
    let mut s: Vec<BigUint> = Vec::with_capacity(n);
    for m in 1..=n {
        let next = match m {
            1 | 2 => BigUint::one(),
            _ => {
                let a = &s[m - 2] * (3 * (2 * m as u32 - 3));
                let b = &s[m - 3] * (m as u32 - 3);
                (a - b) / m as u32
            }
        };
        s.push(next);
    }
    s
}

/// Truncated product, keeping exponents `0..=n`.
fn mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len().max(b.len());
    let zero = BigInt::zero();
    (0..len)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect()
}

/// Truncated quotient; requires `b[0] == 1` so the division is exact over
/// the integers.
fn div(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    assert!(b[0].is_one(), "divisor must have unit constant term");
    let zero = BigInt::zero();
    let mut out = vec![BigInt::zero(); n + 1];
    for k in 0..=n {
        let mut acc = a.get(k).unwrap_or(&zero).clone();
        for j in 1..=k {
            if let Some(bj) = b.get(j) {
                if !bj.is_zero() {
                    acc -= bj * &out[k - j];
                }
            }
        }
        out[k] = acc;
    }
    out
}

fn constant(c: i32, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::from(c);
    out
}

/// The tree counting series as coefficients `s[0..=n]`, `s[0] = 0`.
fn counting_series(n: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); n + 1];
    for (m, v) in schroder_numbers(n).into_iter().enumerate() {
        s[m + 1] = BigInt::from(v);
    }
    s
}

fn to_unsigned(series: Vec<BigInt>) -> Vec<BigUint> {
    series
        .into_iter()
        .skip(1)
        .map(|c| {
            debug_assert!(!c.is_negative());
            c.to_biguint().unwrap()
        })
        .collect()
}

/// `1 − 4S + 2S²`, the denominator shared by the parameter series.
fn denominator(s: &[BigInt], n: usize) -> Vec<BigInt> {
    let four_s: Vec<BigInt> = s.iter().map(|c| c * 4).collect();
    let mut out = sub(&constant(1, n), &four_s);
    for (o, c) in out.iter_mut().zip(mul(s, s, n)) {
        *o += c * 2;
    }
    out
}

/// Total internal-vertex count over all trees with `m` leaves, for
/// `m = 1..=n`. Closed form `S²(1−S)/(1−4S+2S²)` from marking internal
/// vertices in the tree decomposition.
pub fn internal_vertex_series(n: usize) -> Vec<BigUint> {
    let s = counting_series(n);
    let s2 = mul(&s, &s, n);
    let numer = mul(&s2, &sub(&constant(1, n), &s), n);
    to_unsigned(div(&numer, &denominator(&s, n), n))
}

/// Total pathlength (sum of non-root subtree sizes) over all trees with `m`
/// leaves, for `m = 1..=n`. Closed form
/// `zS(2−S)(1−S)²/(1−4S+2S²)²` from marking the additive parameter.
pub fn pathlength_series(n: usize) -> Vec<BigUint> {
    let s = counting_series(n);
    let one_minus_s = sub(&constant(1, n), &s);
    let mut zs = vec![BigInt::zero(); n + 1];
    for k in 0..n {
        zs[k + 1] = s[k].clone();
    }
    let numer = mul(
        &mul(&zs, &sub(&constant(2, n), &s), n),
        &mul(&one_minus_s, &one_minus_s, n),
        n,
    );
    let den = denominator(&s, n);
    to_unsigned(div(&numer, &mul(&den, &den, n), n))
}

/// Exact coefficient ratio as floating point, for asymptotic comparisons.
pub fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    // scale down in lockstep so both fit in f64 range; keyed to the smaller
    // operand so neither shifts to zero
    let shift = a.bits().min(b.bits()).saturating_sub(512);
    ((a >> shift).to_f64().unwrap()) / ((b >> shift).to_f64().unwrap())
}
