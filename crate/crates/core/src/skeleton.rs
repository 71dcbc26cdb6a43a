//! Skeleton decomposition of the tangle generating function.
//!
//! A tangle diagram is either two-particle irreducible in both channels
//! (counted by `D`), or a horizontal/vertical sum of smaller pieces.
//! Replacing 4-leg subdiagrams by blobs yields templates: fully 2PR
//! (algebraic) templates counted by `Γ{g, ζ}` and fully 2PI (polyhedral)
//! ones counted by `ζ[Γ]`. Dressing the templates recovers `Γ(g)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix_model::{renormalized_model, Residual};
use crate::series::{int, rat, rational_sqrt, solve_algebraic, BivariateSeries, PowerSeries, Rational, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("channel decomposition inconsistent at degree {degree}")]
    ChannelInconsistent { degree: usize },
    #[error("closed form of zeta[Gamma] is not rational at Gamma = {0}")]
    IrrationalPoint(Rational),
}

pub type Result<T> = std::result::Result<T, SkeletonError>;

/// All skeleton generating functions at a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonSeries {
    pub d: PowerSeries,
    pub zeta: PowerSeries,
    pub h: PowerSeries,
    pub v: PowerSeries,
    pub gamma_template: BivariateSeries,
    pub g_of_gamma: PowerSeries,
    pub zeta_of_gamma: PowerSeries,
}

impl SkeletonSeries {
    pub fn new(order: usize) -> Result<Self> {
        let gamma = renormalized_model(order).gamma;
        let (d, zeta) = d_series(&gamma)?;
        let (h, v) = h_v_series(&gamma, &d)?;
        Ok(SkeletonSeries {
            d,
            zeta,
            h,
            v,
            gamma_template: gamma_template(order),
            g_of_gamma: g_of_gamma(order),
            zeta_of_gamma: zeta_of_gamma(order),
        })
    }
}

/// `D = Γ(1 - Γ)/(1 + Γ)` and `ζ = D - g`.
pub fn d_series(gamma: &PowerSeries) -> Result<(PowerSeries, PowerSeries)> {
    if !gamma.constant_term().is_zero() {
        return Err(SeriesError::InnerConstantNonzero.into());
    }
    let n = gamma.order();
    let one = PowerSeries::one(n);
    let d = (gamma * &(&one - gamma)).div(&(&one + gamma))?;
    let zeta = &d - &PowerSeries::var(n);
    Ok((d, zeta))
}

/// Channel-symmetric split `H = V = (Γ + D)/2`, checked against
/// `H = D + H²/(1 - H)`.
pub fn h_v_series(gamma: &PowerSeries, d: &PowerSeries) -> Result<(PowerSeries, PowerSeries)> {
    let h = (gamma + d).scale(&rat(1, 2));
    let n = h.order();
    let chain = (&h * &h).div(&(&PowerSeries::one(n) - &h))?;
    let residual = &(&h - d) - &chain;
    if let Some(degree) = residual.valuation() {
        return Err(SkeletonError::ChannelInconsistent { degree });
    }
    Ok((h.clone(), h))
}

/// Univariate kernel `K(s) = ½[1 - s - √((1 - s)² - 4s)]`; `Γ{g, ζ} = K(g + ζ)`.
pub fn gamma_kernel(order: usize) -> PowerSeries {
    let disc = PowerSeries::from_ints(&[1, -6, 1], order);
    let root = disc.sqrt().expect("constant term 1");
    (&PowerSeries::from_ints(&[1, -1], order) - &root).scale(&rat(1, 2))
}

/// Counts `γ_{m,n}` of algebraic templates with `m` vertices and `n`
/// blobs, with `γ_{m,n} = C(m+n, m) [s^{m+n}] K`.
pub fn gamma_template(order: usize) -> BivariateSeries {
    BivariateSeries::of_sum(&gamma_kernel(order))
}

/// The same template series from Newton's method on
/// `Γ² - (1 - g - ζ) Γ + (g + ζ) = 0`, without using the `g + ζ` collapse.
pub fn gamma_template_newton(order: usize) -> BivariateSeries {
    let s = &BivariateSeries::var_g(order) + &BivariateSeries::var_zeta(order);
    let coeffs = [s.clone(), &s - &BivariateSeries::one(order), BivariateSeries::one(order)];
    solve_algebraic(&coeffs, &Rational::zero()).expect("simple root at the origin")
}

/// `g[Γ] = ½ (Γ + 2)⁻³ [1 + 10Γ - 2Γ² - (1 - 4Γ)^{3/2}]`, as a series in `Γ`.
pub fn g_of_gamma(order: usize) -> PowerSeries {
    let n = order;
    let one_minus_4 = PowerSeries::from_ints(&[1, -4], n);
    let three_halves = &one_minus_4 * &one_minus_4.sqrt().expect("constant term 1");
    let bracket = &PowerSeries::from_ints(&[1, 10, -2], n) - &three_halves;
    let cube = PowerSeries::from_ints(&[2, 1], n).pow(3);
    bracket.div(&cube).expect("unit divisor").scale(&rat(1, 2))
}

/// Fully 2PI skeletons: `ζ[Γ] = -2/(1 + Γ) + 2 - Γ - g[Γ]`.
pub fn zeta_of_gamma(order: usize) -> PowerSeries {
    let n = order;
    let inv = PowerSeries::from_ints(&[1, 1], n).recip().expect("unit");
    let rational_part = &inv.scale(&int(-2)) + &PowerSeries::from_ints(&[2, -1], n);
    &rational_part - &g_of_gamma(n)
}

/// Exact value of the closed form of `ζ[Γ]` at a rational point where
/// `1 - 4Γ` is a rational square.
pub fn zeta_closed_form_at(gamma: &Rational) -> Result<Rational> {
    let disc = Rational::one() - gamma * int(4);
    let root = rational_sqrt(&disc).ok_or_else(|| SkeletonError::IrrationalPoint(gamma.clone()))?;
    let plus2 = gamma + int(2);
    let plus1 = gamma + int(1);
    if plus2.is_zero() || plus1.is_zero() {
        return Err(SkeletonError::IrrationalPoint(gamma.clone()));
    }
    let g = (Rational::one() + gamma * int(10) - gamma * gamma * int(2) - &disc * &root)
        / (&plus2 * &plus2 * &plus2)
        * rat(1, 2);
    Ok(int(-2) / plus1 + int(2) - gamma - g)
}

/// `Γ(g) - Γ{g, ζ(g)}`, which vanishes when the blobs are dressed by the
/// full tangle series.
pub fn dressing_residual(gamma: &PowerSeries, zeta: &PowerSeries, template: &BivariateSeries) -> Result<PowerSeries> {
    Ok(gamma - &template.substitute(zeta)?)
}

pub fn dressing_check(order: usize) -> Result<PowerSeries> {
    let gamma = renormalized_model(order).gamma;
    let (_, zeta) = d_series(&gamma)?;
    dressing_residual(&gamma, &zeta, &gamma_template(order))
}

/// With `η = 1 - a²`: residuals of `27 g = -η(3 + η)²` and
/// `Γ = -η(3 + 2η)/(3 + η)²`.
pub fn eta_residuals(a2: &PowerSeries, gamma: &PowerSeries) -> Result<(PowerSeries, PowerSeries)> {
    let n = a2.order().min(gamma.order());
    let eta = &PowerSeries::one(n) - &a2.truncate(n);
    let three = PowerSeries::constant(int(3), n);
    let three_eta = &three + &eta;
    let cubic = &PowerSeries::var(n).scale(&int(27)) + &(&eta * &(&three_eta * &three_eta));
    let numer = -&(&eta * &(&three + &eta.scale(&int(2))));
    let ratio = numer.div(&(&three_eta * &three_eta))?;
    Ok((cubic, &gamma.truncate(n) - &ratio))
}

pub fn eta_system_check(order: usize) -> Result<(PowerSeries, PowerSeries)> {
    let model = renormalized_model(order);
    eta_residuals(&model.a2, &model.gamma)
}

/// Every skeleton identity at `order`, for reporting.
pub fn residuals(order: usize) -> Result<Vec<Residual>> {
    let gamma = renormalized_model(order).gamma;
    let reversed = gamma.reversion()?;
    let (eta_cubic, eta_gamma) = eta_system_check(order)?;
    let zeta = zeta_of_gamma(order);
    let g_inv = g_of_gamma(order);
    let (d, _) = d_series(&gamma)?;
    let d_gamma = d_series(&PowerSeries::var(order))?.0;
    Ok(vec![
        Residual::new("dressing Gamma(g) = Gamma{g, zeta(g)}", dressing_check(order)?),
        Residual::new("eta system 27g = -eta(3+eta)^2", eta_cubic),
        Residual::new("eta system Gamma = -eta(3+2eta)/(3+eta)^2", eta_gamma),
        Residual::new("reversion(Gamma(g)) = closed-form g[Gamma]", &reversed - &g_inv),
        Residual::new("zeta[Gamma] = D[Gamma] - g[Gamma]", &(&zeta + &g_inv) - &d_gamma),
        Residual::new("zeta[Gamma(g)] = D(g) - g", &zeta.compose(&gamma)? - &(&d - &PowerSeries::var(order))),
    ])
}
