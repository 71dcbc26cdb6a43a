use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, rational_sqrt, Rational};
use super::{Result, SeriesError};

/// Truncated univariate power series `c_0 + c_1 g + ... + c_N g^N + O(g^{N+1})`.
///
/// `coeffs` always has exactly `order + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Builds a series known through `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least one known coefficient");
        PowerSeries { coeffs }
    }

    /// Integer coefficients, zero padded up to `order`.
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| values.get(k).map_or_else(Rational::zero, |&v| int(v)))
            .collect();
        PowerSeries { coeffs }
    }

    /// Rational coefficients, zero padded up to `order`.
    pub fn from_rationals(values: &[Rational], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| values.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect();
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c g^k` known through `order`.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series variable `g`.
    pub fn var(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `[g^k]`, or `None` beyond the known order.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Drops known terms above `order`. Asking for more than is known
    /// keeps the series as is.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        PowerSeries { coeffs: self.coeffs[..=keep].to_vec() }
    }

    /// Degree of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `g^k`; the known order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries { coeffs }
    }

    /// Formal derivative; loses one order of knowledge.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// Antiderivative with zero constant term; gains one order.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / int(k as i64 + 1)));
        PowerSeries { coeffs }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// The divisor's lowest nonzero term `g^v` is cancelled against the
    /// numerator, so the result is known through `min(orders) - v`.
    pub fn div(&self, divisor: &PowerSeries) -> Result<Self> {
        let v = divisor.valuation().ok_or(SeriesError::DivisionByZero)?;
        if let Some(numerator) = self.valuation() {
            if numerator < v {
                return Err(SeriesError::ValuationMismatch { numerator, divisor: v });
            }
        }
        let base = self.order().min(divisor.order());
        if base < v {
            return Err(SeriesError::OrderExhausted);
        }
        let len = base - v + 1;
        let a = &self.coeffs[v..v + len];
        let b = &divisor.coeffs[v..v + len];
        Ok(PowerSeries { coeffs: div_unit(a, b, len) })
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        if self.constant_term().is_zero() {
            return Err(SeriesError::NotInvertible("constant term vanishes"));
        }
        Self::one(self.order()).div(self)
    }

    /// `self ∘ inner`, known through the exact provable order.
    ///
    /// If `self` is known through `N_f`, `inner` through `N_h` with
    /// valuation `w`, and `k` is the lowest positive degree present in
    /// `self`, the result is known through
    /// `min(N_h + (k - 1) w, w (N_f + 1) - 1)`.
    pub fn compose(&self, inner: &PowerSeries) -> Result<Self> {
        if !inner.constant_term().is_zero() {
            return Err(SeriesError::InnerConstantNonzero);
        }
        let w = inner.valuation().unwrap_or(inner.order() + 1);
        let n_f = self.order();
        let n_h = inner.order();
        let k = (1..=n_f).find(|&k| !self.coeffs[k].is_zero()).unwrap_or(n_f + 1);
        let order = (n_h + (k - 1) * w).min(w * (n_f + 1) - 1);
        let len = order + 1;
        let h: Vec<Rational> = (0..len)
            .map(|i| inner.coeffs.get(i).cloned().unwrap_or_else(Rational::zero))
            .collect();
        Ok(PowerSeries { coeffs: horner(&self.coeffs, &h, len) })
    }

    /// Compositional inverse: `f.reversion()?.compose(&f)` is `g`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NotInvertible("constant term must vanish"));
        }
        let n = self.order();
        if n == 0 || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotInvertible("linear coefficient must be nonzero"));
        }
        let len = n + 1;
        let x = PowerSeries::var(n).coeffs;
        let df: Vec<Rational> = (0..len)
            .map(|k| self.coeffs.get(k + 1).map_or_else(Rational::zero, |c| c * int(k as i64 + 1)))
            .collect();
        // Newton: y <- y - (f(y) - x) / f'(y), doubling the working length
        // each pass. Terms of f' beyond N only reach degrees above N since
        // the residual vanishes at order 1.
        let mut y = PowerSeries::monomial(self.coeffs[1].recip(), 1, n).coeffs;
        let mut known = 2.min(len);
        for _ in 0..=usize::BITS - n.leading_zeros() + 2 {
            let m = (2 * known).min(len);
            let residual: Vec<Rational> =
                horner(&self.coeffs[..m], &y[..m], m).into_iter().zip(&x).map(|(a, b)| a - b).collect();
            if m == len && residual.iter().all(Zero::is_zero) {
                return Ok(PowerSeries { coeffs: y });
            }
            let slope = horner(&df[..m], &y[..m], m);
            let step = div_unit(&residual, &slope, m);
            for (a, b) in y.iter_mut().zip(step) {
                *a -= b;
            }
            known = m;
        }
        Err(SeriesError::NotConverged)
    }

    /// Square root with positive constant term.
    ///
    /// A series `g^{2k} u` with `u(0)` a nonzero rational square has root
    /// `g^k sqrt(u)` known through `N - k`.
    pub fn sqrt(&self) -> Result<Self> {
        let v = match self.valuation() {
            Some(v) => v,
            None => return Err(SeriesError::NotASquare(Rational::zero())),
        };
        if v % 2 == 1 {
            return Err(SeriesError::NotASquare(Rational::zero()));
        }
        let lead = &self.coeffs[v];
        let root = rational_sqrt(lead).ok_or_else(|| SeriesError::NotASquare(lead.clone()))?;
        let shift = v / 2;
        let len = self.order() - v + 1;
        let f = &self.coeffs[v..];
        let two_root = &root * int(2);
        let mut s: Vec<Rational> = Vec::with_capacity(len);
        s.push(root);
        for k in 1..len {
            let mut acc = f[k].clone();
            for i in 1..k {
                acc -= &s[i] * &s[k - i];
            }
            s.push(acc / &two_root);
        }
        let out = PowerSeries { coeffs: s };
        Ok(if shift > 0 { out.shift_up(shift) } else { out })
    }

    /// Logarithm of a series with constant term 1, via `∫ f'/f`.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::LogConstantTerm(self.constant_term().clone()));
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(self.derivative()?.div(&self.truncate(self.order() - 1))?.integral())
    }

    /// Exponential of a series with vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::ExpConstantTerm(self.constant_term().clone()));
        }
        let len = self.coeffs.len();
        let mut e: Vec<Rational> = Vec::with_capacity(len);
        e.push(Rational::one());
        for n in 1..len {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &e[n - k] * int(k as i64);
                }
            }
            e.push(acc / int(n as i64));
        }
        Ok(PowerSeries { coeffs: e })
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }
}

/// Cauchy product of the first `len` terms.
pub(crate) fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `a / b` for `b[0] != 0`, first `len` terms.
fn div_unit(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let inv = b[0].recip();
    let mut q: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = a[k].clone();
        for i in 1..=k {
            if !b[i].is_zero() {
                acc -= &b[i] * &q[k - i];
            }
        }
        q.push(acc * &inv);
    }
    q
}

/// `Σ f_k h^k` truncated to `len` terms, with `h[0] = 0`.
fn horner(f: &[Rational], h: &[Rational], len: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); len];
    for c in f.iter().rev() {
        acc = mul_trunc(&acc, h, len);
        acc[0] += c;
    }
    acc
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries { coeffs: (0..len).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries { coeffs: (0..len).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries { coeffs: mul_trunc(&self.coeffs, &rhs.coeffs, len) }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $method(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => format!("{c}"),
                1 if c.is_one() => "g".to_string(),
                1 => format!("{c}*g"),
                _ if c.is_one() => format!("g^{k}"),
                _ => format!("{c}*g^{k}"),
            };
            if first {
                write!(f, "{body}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(g^{})", self.order() + 1)
    }
}
