//! Flype-equivalence classes of tangles.
//!
//! Flypes only act on the algebraic (fully 2PR) templates, so the
//! quotient replaces `Γ{g, ζ}` by the class-counting `Γ̃{g, ζ}` and then
//! dresses it with the unchanged polyhedral series `ζ[Γ]`. The dressed
//! series is the fixed point `Γ̃(g) = Γ̃{g, ζ[Γ̃(g)]}`.

use std::cmp::Ordering;

use num_traits::Zero;
use thiserror::Error;

use crate::matrix_model::AsymptoticConstants;
use crate::series::{int, rat, solve_algebraic, BivariateSeries, PowerSeries, Rational, SeriesError};
use crate::skeleton::{zeta_closed_form_at, zeta_of_gamma, SkeletonError};
use crate::surd::{quadratic_roots, QuadraticSurd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlypeError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
    #[error("fixed point not converged within {iterations} iterations")]
    NotConverged { iterations: usize },
    #[error("no root in physical interval")]
    NoPhysicalRoot,
}

pub type Result<T> = std::result::Result<T, FlypeError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlypeSeries {
    /// `γ̃_{m,n}`: flype classes of algebraic templates.
    pub gamma_tilde_template: BivariateSeries,
    pub gamma_tilde: PowerSeries,
    pub zeta_tilde: PowerSeries,
    pub f1_tilde: PowerSeries,
    /// `H̃{g, ζ} = (Γ̃{g, ζ} + g + ζ)/2`.
    pub h_tilde: BivariateSeries,
}

impl FlypeSeries {
    pub fn new(order: usize) -> Result<Self> {
        let template = gamma_tilde_template(order);
        let gamma_tilde = solve_fixed_point(&template, order)?;
        let zeta_tilde = zeta_of_gamma(order).compose(&gamma_tilde)?.truncate(order);
        Ok(FlypeSeries {
            h_tilde: h_tilde(&template),
            f1_tilde: free_energy_from_gamma(&gamma_tilde, order),
            gamma_tilde_template: template,
            gamma_tilde,
            zeta_tilde,
        })
    }
}

fn g_and_zeta(order: usize) -> (BivariateSeries, BivariateSeries) {
    (BivariateSeries::var_g(order), BivariateSeries::var_zeta(order))
}

/// `g (1 + g)/(1 - g)`: the simple-vertex chains that survive the quotient.
fn vertex_chains(order: usize) -> BivariateSeries {
    let (g, _) = g_and_zeta(order);
    let one = BivariateSeries::one(order);
    let inv = (&one - &g).recip().expect("unit");
    &(&g * &(&one + &g)) * &inv
}

/// Closed form `½[(1 + g - ζ) - √((1 - g + ζ)² - 8ζ - 8g²/(1 - g))]`.
pub fn gamma_tilde_template(order: usize) -> BivariateSeries {
    let (g, zeta) = g_and_zeta(order);
    let one = BivariateSeries::one(order);
    let inv = (&one - &g).recip().expect("unit");
    let base = &(&one - &g) + &zeta;
    let disc = &(&(&base * &base) - &zeta.scale(&int(8))) - &(&(&g * &g) * &inv).scale(&int(8));
    let linear = &(&one + &g) - &zeta;
    (&linear - &disc.sqrt().expect("constant term 1")).scale(&rat(1, 2))
}

/// Coefficients of `Γ̃² - (1 + g - ζ) Γ̃ + ζ + g(1 + g)/(1 - g)`, lowest power first.
fn template_quadratic(order: usize) -> [BivariateSeries; 3] {
    let (g, zeta) = g_and_zeta(order);
    let one = BivariateSeries::one(order);
    [&zeta + &vertex_chains(order), -&(&(&one + &g) - &zeta), one]
}

/// The class template series from Newton's method on its quadratic,
/// seeded at `Γ̃{0, 0} = 0`.
pub fn gamma_tilde_template_newton(order: usize) -> BivariateSeries {
    solve_algebraic(&template_quadratic(order), &Rational::zero()).expect("simple root at the origin")
}

/// Residual of the defining quadratic at a candidate template series.
pub fn quadratic_residual(template: &BivariateSeries) -> BivariateSeries {
    let [c0, c1, c2] = template_quadratic(template.order());
    &(&(&(&c2 * template) + &c1) * template) + &c0
}

fn h_tilde(template: &BivariateSeries) -> BivariateSeries {
    let (g, zeta) = g_and_zeta(template.order());
    (&(template + &g) + &zeta).scale(&rat(1, 2))
}

/// Residual of `Ṽ = D + g Γ̃ + (H̃ - g)²/(1 - (H̃ - g))` with `H̃ = Ṽ = (Γ̃ + D)/2`.
///
/// `with_vertex_term = false` drops the `g Γ̃` contribution, which must
/// break the identity.
pub fn h_tilde_residual(template: &BivariateSeries, with_vertex_term: bool) -> BivariateSeries {
    let order = template.order();
    let (g, zeta) = g_and_zeta(order);
    let one = BivariateSeries::one(order);
    let d = &g + &zeta;
    let h = h_tilde(template);
    let x = &h - &g;
    let chain = &(&x * &x) * &(&one - &x).recip().expect("unit");
    let mut rhs = &d + &chain;
    if with_vertex_term {
        rhs = &rhs + &(&g * template);
    }
    &h - &rhs
}

pub fn h_tilde_check(order: usize) -> BivariateSeries {
    h_tilde_residual(&gamma_tilde_template(order), true)
}

/// Solves `Γ̃(g) = Γ̃{g, ζ[Γ̃(g)]}` by substitution.
///
/// Starting from `Γ̃ = 0 + O(g)`, each pass extends the known order by 4
/// because `ζ[Γ]` starts at `Γ⁵`; the iteration stops once a pass at full
/// order reproduces its input.
fn solve_fixed_point(template: &BivariateSeries, order: usize) -> Result<PowerSeries> {
    let zeta = zeta_of_gamma(order);
    let limit = order.div_ceil(4) + 1;
    let mut current = PowerSeries::zero(0);
    for _ in 0..limit {
        let next = template.substitute(&zeta.compose(&current)?)?.truncate(order);
        if next.order() == order && current.order() == order && next == current {
            return Ok(current);
        }
        current = next;
    }
    // The last pass may land exactly on the fixed point.
    let check = template.substitute(&zeta.compose(&current)?)?.truncate(order);
    if current.order() == order && check == current {
        return Ok(current);
    }
    Err(FlypeError::NotConverged { iterations: limit })
}

pub fn gamma_tilde_series(order: usize) -> Result<PowerSeries> {
    solve_fixed_point(&gamma_tilde_template(order), order)
}

/// `Γ̃(g) - Γ̃{g, ζ[Γ̃(g)]}`.
pub fn fixed_point_residual(gamma_tilde: &PowerSeries, template: &BivariateSeries) -> Result<PowerSeries> {
    let zeta = zeta_of_gamma(gamma_tilde.order()).compose(gamma_tilde)?;
    Ok(gamma_tilde - &template.substitute(&zeta)?)
}

/// `f̃_n = [g^{n-1}] Γ̃ / (2n)`.
fn free_energy_from_gamma(gamma: &PowerSeries, order: usize) -> PowerSeries {
    let coeffs: Vec<Rational> = (0..=order)
        .map(|n| match n {
            0 => Rational::zero(),
            _ => gamma.coeff(n - 1).cloned().unwrap_or_else(Rational::zero) / int(2 * n as i64),
        })
        .collect();
    PowerSeries::new(coeffs)
}

/// Free energy `F̃⁽¹⁾` with `Γ̃ = 2 dF̃⁽¹⁾/dg`, known through `order`.
pub fn f1_tilde_series(order: usize) -> Result<PowerSeries> {
    assert!(order >= 2, "free energy needs order >= 2");
    Ok(free_energy_from_gamma(&gamma_tilde_series(order - 1)?, order))
}

/// Dominant singularity of `Γ̃(g)`.
///
/// `ζ[Γ]` is singular where `1 - 4Γ` vanishes. Setting `Γ̃ = 1/4` and
/// `ζ = ζ[1/4]` in the template quadratic leaves a quadratic in `g`:
/// `(1 + Γ̃) g² + (1 - Γ̃ - c) g + c = 0` with `c = Γ̃² - (1 - ζ)Γ̃ + ζ`.
/// The singularity is its smallest positive root.
pub fn tangle_asymptotics() -> Result<AsymptoticConstants> {
    let gamma_star = rat(1, 4);
    let zeta_star = zeta_closed_form_at(&gamma_star)?;
    let c = &gamma_star * &gamma_star - (int(1) - &zeta_star) * &gamma_star + &zeta_star;
    let a = int(1) + &gamma_star;
    let b = int(1) - &gamma_star - &c;
    let zero = QuadraticSurd::from_rational(&Rational::zero());
    let radius = quadratic_roots(&a, &b, &c)
        .into_iter()
        .find(|r| r.cmp_value(&zero) == Ordering::Greater)
        .ok_or(FlypeError::NoPhysicalRoot)?;
    let growth = radius.recip().ok_or(FlypeError::NoPhysicalRoot)?;
    Ok(AsymptoticConstants { radius, growth, exponent: rat(-7, 2) })
}
