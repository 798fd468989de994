//! Special functions: gamma, generalized binomial coefficients, and the
//! truncated Mittag-Leffler sum.
//!
//! The gamma implementation is a Lanczos-type rational approximation
//! (the 13-term coefficient set used by musl and Boost) with the
//! reflection identity for arguments below 1/2. Relative accuracy is
//! near machine precision on the range the operators use, comfortably
//! inside the 1e-12 target on [0.1, 30].

use crate::error::{Error, Result};

/// g - 0.5 for the 13-term Lanczos set (g = 6.024680040776729583740234375).
const LANCZOS_G_MINUS_HALF: f64 = 5.524680040776729583740234375;

/// Numerator coefficients of the Lanczos rational S(x); sqrt(2*pi) is
/// folded into the leading term.
const LANCZOS_NUM: [f64; 13] = [
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
];

/// Denominator coefficients: Stirling numbers, x*(x+1)*...*(x+11).
const LANCZOS_DEN: [f64; 13] = [
    0.0,
    39916800.0,
    120543840.0,
    150917976.0,
    105258076.0,
    45995730.0,
    13339535.0,
    2637558.0,
    357423.0,
    32670.0,
    1925.0,
    66.0,
    1.0,
];

/// n! for n = 0..=22, all exactly representable in f64.
const FACTORIALS: [f64; 23] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
];

/// Rational part S(x) of the Lanczos approximation, valid for x > 0.
fn lanczos_sum(x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    if x < 8.0 {
        for i in (0..13).rev() {
            num = num * x + LANCZOS_NUM[i];
            den = den * x + LANCZOS_DEN[i];
        }
    } else {
        // Evaluate in 1/x to avoid overflow of the high-degree terms.
        for i in 0..13 {
            num = num / x + LANCZOS_NUM[i];
            den = den / x + LANCZOS_DEN[i];
        }
    }
    num / den
}

/// sin(pi * x) with range reduction around the nearest integer, so the
/// reflection identity stays accurate for arguments far from zero.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (std::f64::consts::PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Gamma function.
///
/// Exact on integer arguments up to 23 (factorial table); Lanczos plus
/// reflection elsewhere. Non-positive integers are poles and yield
/// [`Error::GammaPole`].
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma of {x}")));
    }
    if x == x.floor() {
        if x <= 0.0 {
            return Err(Error::GammaPole(x));
        }
        let n = x as usize;
        if n <= 23 {
            return Ok(FACTORIALS[n - 1]);
        }
    }
    if x >= 0.5 {
        let y = x + LANCZOS_G_MINUS_HALF;
        let z = x - 0.5;
        // Split the power to halve the rounding error of powf at large z.
        let r = y.powf(0.5 * z);
        Ok(r * r * (-y).exp() * lanczos_sum(x))
    } else {
        // Reflection: gamma(x) * gamma(1-x) = pi / sin(pi x).
        let denom = sin_pi(x) * gamma_fn(1.0 - x)?;
        Ok(std::f64::consts::PI / denom)
    }
}

/// Generalized binomial coefficient alpha over k, built by the product
/// recurrence alpha * (alpha-1) * ... * (alpha-k+1) / k!.
///
/// The recurrence avoids gamma evaluations at negative arguments, which
/// would hit poles for integer alpha.
pub fn generalized_binomial(alpha: f64, k: usize) -> f64 {
    let mut b = 1.0;
    for j in 0..k {
        b *= (alpha - j as f64) / (j as f64 + 1.0);
    }
    b
}

/// Truncated Mittag-Leffler sum: the k = 0..=m partial sum of
/// z^k / gamma(beta * k + 1).
pub fn truncated_mittag_leffler(beta: f64, m: usize, z: f64) -> Result<f64> {
    if beta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "truncated Mittag-Leffler requires beta > 0, got {beta}"
        )));
    }
    let mut sum = 0.0;
    let mut z_pow = 1.0;
    for k in 0..=m {
        sum += z_pow / gamma_fn(beta * k as f64 + 1.0)?;
        z_pow *= z;
    }
    Ok(sum)
}
