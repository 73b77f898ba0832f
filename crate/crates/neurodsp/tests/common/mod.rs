//! Independent reference implementations the integration tests check the
//! library against. Everything here recomputes results from first principles
//! (arbitrary-precision integers, textbook difference equations) without
//! touching the library's arithmetic helpers.

use num_bigint::{BigInt, BigUint, Sign};

/// Rounds `acc / 2^frac` to the nearest integer, ties to even, carried out
/// in arbitrary precision. Symmetric in sign.
pub fn round_ties_even_div_pow2(acc: &BigInt, frac: u32) -> i64 {
    let (sign, mag) = acc.clone().into_parts();
    let floor: BigUint = &mag >> frac;
    let rem: BigUint = &mag - (&floor << frac);
    let half: BigUint = BigUint::from(1u32) << (frac - 1);
    let one = BigUint::from(1u32);
    let rounded = if rem > half {
        &floor + &one
    } else if rem < half {
        floor
    } else if (&floor & &one) == one {
        &floor + &one
    } else {
        floor
    };
    let out = i64::try_from(&rounded).expect("oracle result exceeds i64");
    if sign == Sign::Minus {
        -out
    } else {
        out
    }
}

/// Direct convolution `y[n] = sum_k h[k] x[n-k]` on raw fixed-point words,
/// every product and partial sum exact, one symmetric ties-to-even rounding
/// per output. No saturation: callers construct cases that stay in range.
pub fn fir_convolution_oracle(taps_raw: &[i64], input_raw: &[i64], frac: u32) -> Vec<i64> {
    let mut out = Vec::with_capacity(input_raw.len());
    for n in 0..input_raw.len() {
        let mut acc = BigInt::from(0);
        for (k, &h) in taps_raw.iter().enumerate() {
            if n >= k {
                acc += BigInt::from(h) * BigInt::from(input_raw[n - k]);
            }
        }
        out.push(round_ties_even_div_pow2(&acc, frac));
    }
    out
}

/// Textbook direct-form-I recursion
/// `y[n] = round((sum_k b[k] x[n-k] - sum_k a[k] y[n-k-1]) / 2^frac)`
/// with exact inner arithmetic and one rounding per output sample. Past
/// outputs feed back as already-rounded data words, exactly as a DF1
/// datapath stores them.
pub fn df1_reference(b_raw: &[i64], a_raw: &[i64], input_raw: &[i64], frac: u32) -> Vec<i64> {
    let mut y: Vec<i64> = Vec::with_capacity(input_raw.len());
    for n in 0..input_raw.len() {
        let mut acc = BigInt::from(0);
        for (k, &bk) in b_raw.iter().enumerate() {
            if n >= k {
                acc += BigInt::from(bk) * BigInt::from(input_raw[n - k]);
            }
        }
        for (k, &ak) in a_raw.iter().enumerate() {
            if n >= k + 1 {
                acc -= BigInt::from(ak) * BigInt::from(y[n - k - 1]);
            }
        }
        y.push(round_ties_even_div_pow2(&acc, frac));
    }
    y
}

/// Plain f64 dot product, the reference for the crossbar's column currents.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Mean of a slice (panics on empty input — test data is never empty).
pub fn mean(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty(), "mean of empty slice");
    xs.iter().sum::<f64>() / xs.len() as f64
}
