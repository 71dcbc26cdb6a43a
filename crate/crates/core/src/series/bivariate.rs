use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::power::PowerSeries;
use super::rational::{binomial, int, rational_sqrt, Rational};
use super::{Result, SeriesError};

/// Truncated series in two variables `g` (first) and `ζ` (second),
/// known for all monomials `g^m ζ^n` with `m + n <= order`.
///
/// Coefficients are stored densely by total degree: degree `d` occupies
/// the slots `d(d+1)/2 ..= d(d+1)/2 + d`, indexed by the ζ exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariateSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

fn slot(m: usize, n: usize) -> usize {
    let d = m + n;
    d * (d + 1) / 2 + n
}

/// Number of slots with total degree at most `order`.
fn triangle_len(order: usize) -> usize {
    slot(0, order + 1)
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries { order, coeffs: vec![Rational::zero(); triangle_len(order)] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The first variable `g`.
    pub fn var_g(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(1, 0, Rational::one());
        s
    }

    /// The second variable `ζ`.
    pub fn var_zeta(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 1, Rational::one());
        s
    }

    /// Builds from `(m, n, value)` triples; terms with `m + n > order` are dropped.
    pub fn from_terms<I>(terms: I, order: usize) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut s = Self::zero(order);
        for (m, n, c) in terms {
            s.set(m, n, c);
        }
        s
    }

    /// Embeds a series in `g` alone.
    pub fn from_g_series(f: &PowerSeries) -> Self {
        Self::from_terms(f.coeffs().iter().cloned().enumerate().map(|(m, c)| (m, 0, c)), f.order())
    }

    /// Embeds a series in `ζ` alone.
    pub fn from_zeta_series(f: &PowerSeries) -> Self {
        Self::from_terms(f.coeffs().iter().cloned().enumerate().map(|(n, c)| (0, n, c)), f.order())
    }

    /// `K(g + ζ)` for a univariate kernel `K`: the coefficient of
    /// `g^m ζ^n` is `C(m+n, m) [s^{m+n}] K`.
    pub fn of_sum(kernel: &PowerSeries) -> Self {
        let order = kernel.order();
        let mut s = Self::zero(order);
        for (d, c) in kernel.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for m in 0..=d {
                let b = Rational::from_integer(binomial(d as u64, m as u64));
                s.set(m, d - m, c * b);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `[g^m ζ^n]`, or `None` when `m + n` exceeds the order.
    pub fn get(&self, m: usize, n: usize) -> Option<&Rational> {
        (m + n <= self.order).then(|| &self.coeffs[slot(m, n)])
    }

    fn set(&mut self, m: usize, n: usize, c: Rational) {
        if m + n <= self.order {
            self.coeffs[slot(m, n)] = c;
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// All known `(m, n, coefficient)` triples by total degree, then by `n`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        (0..=self.order).flat_map(move |d| (0..=d).map(move |n| (d - n, n, &self.coeffs[slot(d - n, n)])))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        BivariateSeries { order, coeffs: self.coeffs[..triangle_len(order)].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BivariateSeries { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Restriction to `ζ = 0`.
    pub fn at_zeta_zero(&self) -> PowerSeries {
        PowerSeries::from_rationals(
            &(0..=self.order).map(|m| self.coeffs[slot(m, 0)].clone()).collect::<Vec<_>>(),
            self.order,
        )
    }

    /// Sum of the coefficients of `ζ^n` as a polynomial in `g`, known through `order - n`.
    fn zeta_row(&self, n: usize, len: usize) -> PowerSeries {
        let values: Vec<Rational> = (0..len)
            .map(|m| self.get(m, n).cloned().unwrap_or_else(Rational::zero))
            .collect();
        PowerSeries::from_rationals(&values, len - 1)
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::NotInvertible("constant term vanishes"));
        }
        let inv = c0.recip();
        let mut r = Self::zero(self.order);
        r.coeffs[0] = inv.clone();
        for d in 1..=self.order {
            for n in 0..=d {
                let m = d - n;
                let mut acc = Rational::zero();
                for (i, j, a) in self.terms().skip(1) {
                    if i + j > d {
                        break;
                    }
                    if i <= m && j <= n && !a.is_zero() {
                        acc += a * &r.coeffs[slot(m - i, n - j)];
                    }
                }
                r.coeffs[slot(m, n)] = -acc * &inv;
            }
        }
        Ok(r)
    }

    /// Square root with positive constant term, which must be a nonzero
    /// rational square.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::NotASquare(c0.clone()));
        }
        let root = rational_sqrt(c0).ok_or_else(|| SeriesError::NotASquare(c0.clone()))?;
        let two_root = &root * int(2);
        let mut s = Self::zero(self.order);
        s.coeffs[0] = root;
        for d in 1..=self.order {
            for n in 0..=d {
                let m = d - n;
                let mut acc = self.coeffs[slot(m, n)].clone();
                // Subtract s_{ij} s_{m-i,n-j} over pairs that avoid the unknown corner.
                for e in 1..d {
                    for j in 0..=e {
                        let i = e - j;
                        if i > m || j > n {
                            continue;
                        }
                        let a = &s.coeffs[slot(i, j)];
                        if !a.is_zero() {
                            acc -= a * &s.coeffs[slot(m - i, n - j)];
                        }
                    }
                }
                s.coeffs[slot(m, n)] = acc / &two_root;
            }
        }
        Ok(s)
    }

    /// Replaces `ζ` by a series in `g` with vanishing constant term.
    /// The result is known through `min(order, zeta.order())`.
    pub fn substitute(&self, zeta: &PowerSeries) -> Result<PowerSeries> {
        if !zeta.constant_term().is_zero() {
            return Err(SeriesError::InnerConstantNonzero);
        }
        let order = self.order.min(zeta.order());
        let len = order + 1;
        let z = zeta.truncate(order);
        let mut acc = PowerSeries::zero(order);
        for n in (0..=self.order).rev() {
            acc = &(&acc * &z) + &self.zeta_row(n, len);
        }
        Ok(acc)
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;

    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        let order = self.order.min(rhs.order);
        let len = triangle_len(order);
        BivariateSeries { order, coeffs: (0..len).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;

    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        let order = self.order.min(rhs.order);
        let len = triangle_len(order);
        BivariateSeries { order, coeffs: (0..len).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;

    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        let order = self.order.min(rhs.order);
        let mut out = BivariateSeries::zero(order);
        let left: Vec<_> = self.terms().filter(|(m, n, c)| m + n <= order && !c.is_zero()).collect();
        let right: Vec<_> = rhs.terms().filter(|(m, n, c)| m + n <= order && !c.is_zero()).collect();
        for &(i, j, a) in &left {
            for &(k, l, b) in &right {
                if i + j + k + l > order {
                    // `right` is sorted by total degree.
                    break;
                }
                out.coeffs[slot(i + k, j + l)] += a * b;
            }
        }
        out
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;

    fn neg(self) -> BivariateSeries {
        BivariateSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
