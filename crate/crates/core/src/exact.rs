//! Fixed-denominator exact arithmetic.
//!
//! Every quantity with a denominator in `1..=64` (stability terms, accuracy
//! ratios) is scaled by [`COMMON_DENOM`], the least common multiple of
//! `1..=64`, so sums and comparisons stay in `u128` integer arithmetic.

use crate::graph::MAX_VERTICES;

const fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

const fn lcm_up_to(k: u128) -> u128 {
    let mut acc = 1u128;
    let mut i = 2u128;
    while i <= k {
        acc = acc / gcd(acc, i) * i;
        i += 1;
    }
    acc
}

/// lcm(1, 2, ..., 64), about 2^88.
pub const COMMON_DENOM: u128 = lcm_up_to(MAX_VERTICES as u128);

/// `COMMON_DENOM / d` for `d` in `1..=64`.
pub(crate) fn scaled_unit(d: usize) -> u128 {
    debug_assert!((1..=MAX_VERTICES).contains(&d));
    COMMON_DENOM / d as u128
}

/// Formats `num / den` with exactly `digits` decimals, rounding half to even.
pub fn format_fixed(num: u128, den: u128, digits: u32) -> String {
    assert!(den > 0, "zero denominator");
    let scale = 10u128.pow(digits);
    let whole = num / den;
    let rem = num % den;
    // rem < den, so rem * scale only overflows for den > 2^128 / 10^digits
    let scaled = rem.checked_mul(scale).expect("fixed-point overflow");
    let mut frac = scaled / den;
    let tail = scaled % den;
    let mut whole = whole;
    let last_digit = if digits == 0 { whole } else { frac };
    match (2 * tail).cmp(&den) {
        std::cmp::Ordering::Greater => frac += 1,
        std::cmp::Ordering::Equal if last_digit % 2 == 1 => frac += 1,
        _ => {}
    }
    if frac == scale {
        frac = 0;
        whole += 1;
    }
    if digits == 0 {
        return whole.to_string();
    }
    format!("{whole}.{frac:0width$}", width = digits as usize)
}
