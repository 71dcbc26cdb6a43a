use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::bivariate::BivariateSeries;
use super::power::PowerSeries;
use super::rational::{int, Rational};
use super::{Result, SeriesError};

/// Shared surface of the univariate and bivariate truncated series, so the
/// algebraic solver runs over either.
pub trait TruncatedSeries: Clone + Sized
where
    for<'a> &'a Self: Add<&'a Self, Output = Self> + Sub<&'a Self, Output = Self> + Mul<&'a Self, Output = Self>,
{
    fn order(&self) -> usize;
    fn constant_term(&self) -> &Rational;
    fn constant(c: Rational, order: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn recip(&self) -> Result<Self>;
    fn scale(&self, c: &Rational) -> Self;
    fn truncate(&self, order: usize) -> Self;
}

impl TruncatedSeries for PowerSeries {
    fn order(&self) -> usize {
        PowerSeries::order(self)
    }
    fn constant_term(&self) -> &Rational {
        PowerSeries::constant_term(self)
    }
    fn constant(c: Rational, order: usize) -> Self {
        PowerSeries::constant(c, order)
    }
    fn is_zero(&self) -> bool {
        PowerSeries::is_zero(self)
    }
    fn recip(&self) -> Result<Self> {
        PowerSeries::recip(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        PowerSeries::scale(self, c)
    }
    fn truncate(&self, order: usize) -> Self {
        PowerSeries::truncate(self, order)
    }
}

impl TruncatedSeries for BivariateSeries {
    fn order(&self) -> usize {
        BivariateSeries::order(self)
    }
    fn constant_term(&self) -> &Rational {
        BivariateSeries::constant_term(self)
    }
    fn constant(c: Rational, order: usize) -> Self {
        BivariateSeries::constant(c, order)
    }
    fn is_zero(&self) -> bool {
        BivariateSeries::is_zero(self)
    }
    fn recip(&self) -> Result<Self> {
        BivariateSeries::recip(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        BivariateSeries::scale(self, c)
    }
    fn truncate(&self, order: usize) -> Self {
        BivariateSeries::truncate(self, order)
    }
}

/// Evaluates `Σ coeffs[k] y^k` by Horner's rule.
pub(crate) fn eval_poly<T>(coeffs: &[T], y: &T) -> T
where
    T: TruncatedSeries,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let order = coeffs.iter().map(T::order).min().unwrap_or(0).min(y.order());
    let mut acc = T::constant(Rational::zero(), order);
    for c in coeffs.iter().rev() {
        acc = &(&acc * y) + c;
    }
    acc
}

fn derivative_coeffs<T>(coeffs: &[T]) -> Vec<T>
where
    T: TruncatedSeries,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&int(k as i64))).collect()
}

/// Solves `P(y) = Σ coeffs[k] y^k = 0` for the unique series root with
/// constant term `seed`.
///
/// The seed must be a simple root of `P` at the origin. Newton's method
/// doubles the number of correct terms per step; the result is returned
/// only once its residual vanishes through the common order of the
/// coefficients.
pub fn solve_algebraic<T>(coeffs: &[T], seed: &Rational) -> Result<T>
where
    T: TruncatedSeries,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let eval_at_origin = |cs: &[T]| -> Rational {
        cs.iter().rev().fold(Rational::zero(), |acc, c| acc * seed + c.constant_term())
    };
    if !eval_at_origin(coeffs).is_zero() {
        return Err(SeriesError::SeedNotRoot);
    }
    let slope = derivative_coeffs(coeffs);
    if eval_at_origin(&slope).is_zero() {
        return Err(SeriesError::DegenerateRoot);
    }
    let order = coeffs.iter().map(T::order).min().unwrap_or(0);
    let mut y = T::constant(seed.clone(), order);
    let steps = usize::BITS - order.leading_zeros() + 2;
    for _ in 0..=steps {
        let residual = eval_poly(coeffs, &y);
        if residual.is_zero() {
            return Ok(y);
        }
        let correction = &residual * &eval_poly(&slope, &y).recip()?;
        y = &y - &correction;
    }
    Err(SeriesError::NotConverged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_equation() {
        // y - 1 - g = 0
        let coeffs = [PowerSeries::from_ints(&[-1, -1], 4), PowerSeries::one(4)];
        let y = solve_algebraic(&coeffs, &int(1)).unwrap();
        assert_eq!(y, PowerSeries::from_ints(&[1, 1], 4));
    }

    #[test]
    fn seed_checks() {
        let coeffs = [PowerSeries::from_ints(&[-1, -1], 4), PowerSeries::one(4)];
        assert_eq!(solve_algebraic(&coeffs, &int(2)), Err(SeriesError::SeedNotRoot));
        // y^2 - g = 0 has a double root at the origin.
        let coeffs = [PowerSeries::from_ints(&[0, -1], 4), PowerSeries::zero(4), PowerSeries::one(4)];
        assert_eq!(solve_algebraic(&coeffs, &int(0)), Err(SeriesError::DegenerateRoot));
    }

    #[test]
    fn bivariate_quadratic() {
        // y^2 - (1 - s) y + s = 0 at s = g + ζ, root vanishing at 0.
        let n = 5;
        let s = &BivariateSeries::var_g(n) + &BivariateSeries::var_zeta(n);
        let coeffs = [s.clone(), &s - &BivariateSeries::one(n), BivariateSeries::one(n)];
        let y = solve_algebraic(&coeffs, &int(0)).unwrap();
        assert!(eval_poly(&coeffs, &y).is_zero());
        assert_eq!(y.get(1, 0), Some(&int(1)));
        assert_eq!(y.get(0, 2), Some(&int(2)));
        assert_eq!(y.get(2, 3), Some(&int(90 * 10)));
    }
}
