//! High-precision reference values shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Decimal digits carried by the fixed-point oracle.
pub const DIGITS: u32 = 120;

fn scale() -> BigInt {
    BigInt::from(10).pow(DIGITS)
}

/// `x * 10^DIGITS`, exact for every finite double.
fn to_fixed(x: f64) -> BigInt {
    let bits = x.abs().to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exp == 0 {
        (bits & ((1u64 << 52) - 1)) << 1
    } else {
        (bits & ((1u64 << 52) - 1)) | (1u64 << 52)
    };
    let e = exp - 1075;
    let mut v = BigInt::from(mantissa) * scale();
    if e >= 0 {
        v <<= e as usize;
    } else {
        v >>= (-e) as usize;
    }
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn to_f64(v: &BigInt) -> f64 {
    // Keep 30 significant digits before converting.
    let s = scale();
    let shift = BigInt::from(10).pow(DIGITS - 30);
    (v / &shift).to_f64().unwrap() / (&s / &shift).to_f64().unwrap()
}

/// `g(y_1, ..., y_k)` for `g(x) = exp(-i x tau)` to roughly `DIGITS - log10(max term)`
/// decimal digits, as `(re, im)`.
///
/// Uses `g[y] = sum_{m >= k-1} (-i tau)^m / m! h_{m-k+1}(y)` with `h_q` the complete
/// homogeneous symmetric polynomials, which holds for repeated arguments too.
pub fn divided_difference_oracle(values: &[f64], tau: f64) -> (f64, f64) {
    let k = values.len();
    let s = scale();
    let ys: Vec<BigInt> = values.iter().map(|&v| to_fixed(v)).collect();
    let t = to_fixed(tau);
    let mul = |a: &BigInt, b: &BigInt| (a * b) / &s;

    // h[q] for q = 0..=qmax, built one variable at a time.
    let qmax = 400usize;
    let mut h = vec![BigInt::zero(); qmax + 1];
    h[0] = s.clone();
    // Start from the empty set: h_0 = 1, h_q = 0.
    for y in &ys {
        for q in 1..=qmax {
            let add = mul(y, &h[q - 1]);
            h[q] += add;
        }
    }

    let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
    // coef = tau^m / m!
    let mut coef = s.clone();
    let tiny = BigInt::from(10).pow(DIGITS / 2 - 10);
    let mut small_run = 0;
    for m in 0..=(qmax + k - 1) {
        if m > 0 {
            coef = mul(&coef, &t) / BigInt::from(m);
        }
        if m + 1 < k {
            continue;
        }
        let q = m + 1 - k;
        if q > qmax {
            break;
        }
        let term = mul(&coef, &h[q]);
        match m % 4 {
            0 => re += &term,
            1 => im -= &term,
            2 => re -= &term,
            _ => im += &term,
        }
        if term.abs() < tiny && q > 10 {
            small_run += 1;
            if small_run > 8 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    (to_f64(&re), to_f64(&im))
}

#[test]
fn oracle_single_point() {
    let (re, im) = divided_difference_oracle(&[2.0], 0.5);
    assert!((re - 1f64.cos()).abs() < 1e-15);
    assert!((im + 1f64.sin()).abs() < 1e-15);
}
