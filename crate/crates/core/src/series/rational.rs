use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a rational when it is itself rational (nonnegative branch).
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let num = exact_isqrt(x.numer())?;
    let den = exact_isqrt(x.denom())?;
    Some(Rational::new(num, den))
}

/// Fixed-point decimal rendering rounded half away from zero.
pub fn decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    render_scaled(x.is_negative() && !rounded.is_zero(), &rounded, &scale, digits)
}

/// Renders `magnitude / scale` where `scale = 10^digits`.
pub(crate) fn render_scaled(negative: bool, magnitude: &BigInt, scale: &BigInt, digits: usize) -> String {
    let (whole, frac) = magnitude.div_rem(scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    let frac = frac.to_str_radix(10);
    let frac = if frac.len() < digits {
        format!("{}{}", "0".repeat(digits - frac.len()), frac)
    } else {
        frac
    };
    format!("{sign}{whole}.{frac}")
}
