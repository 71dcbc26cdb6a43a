//! Planar one-matrix model with quartic vertex, before and after the
//! removal of self-energy insertions.
//!
//! The bare model is evaluated at unit propagator weight. The
//! renormalized model chooses the propagator weight `α(g)` so that the
//! full two-point function is identically 1, which leaves only diagrams
//! corresponding to prime reduced alternating links and tangles.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::{factorial, int, rat, solve_algebraic, PowerSeries, Rational, Result};
use crate::surd::QuadraticSurd;

/// Generating functions of the quartic model at `α = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BareModel {
    pub order: usize,
    /// `a²(1, g)`, root of `3 g a⁴ - a² + 1 = 0` equal to 1 at `g = 0`.
    pub a2_bare: PowerSeries,
    /// Planar free energy `F(1, g)`.
    pub f: PowerSeries,
    pub g2: PowerSeries,
    pub g4: PowerSeries,
    /// Connected four-point function.
    pub g4c: PowerSeries,
}

/// The model after imposing `G₂(α(g), g) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenormalizedModel {
    pub order: usize,
    /// `a²(g)`, root of `27 g = (a² - 1)(4 - a²)²` equal to 1 at `g = 0`.
    pub a2: PowerSeries,
    pub alpha: PowerSeries,
    pub sigma: PowerSeries,
    pub sigma_prime: PowerSeries,
    /// Truncated connected four-point function without self-energies:
    /// counts prime alternating tangle diagrams by crossing number.
    pub gamma: PowerSeries,
    /// Link free energy `F⁽¹⁾(g)`.
    pub f1: PowerSeries,
}

/// Location and strength of the dominant singularity of a generating
/// function whose coefficients grow like `const · growth^n · n^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticConstants {
    pub radius: QuadraticSurd,
    pub growth: QuadraticSurd,
    pub exponent: Rational,
}

impl AsymptoticConstants {
    pub fn radius_decimal(&self, digits: usize) -> String {
        self.radius.decimal(digits)
    }

    pub fn growth_decimal(&self, digits: usize) -> String {
        self.growth.decimal(digits)
    }

    /// `growth · radius`, which is exactly 1 for consistent constants.
    pub fn product(&self) -> QuadraticSurd {
        self.growth.mul(&self.radius)
    }
}

/// A named series that must vanish through its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub name: &'static str,
    pub series: PowerSeries,
}

impl Residual {
    pub fn new(name: &'static str, series: PowerSeries) -> Self {
        Residual { name, series }
    }

    pub fn vanishes(&self) -> bool {
        self.series.is_zero()
    }
}

fn constant(c: i64, order: usize) -> PowerSeries {
    PowerSeries::constant(int(c), order)
}

/// `a²(4 - a²)/3`, the two-point function at `α = 1`.
fn two_point_polynomial(a2: &PowerSeries) -> PowerSeries {
    let n = a2.order();
    (a2 * &(&constant(4, n) - a2)).scale(&rat(1, 3))
}

pub fn bare_model(order: usize) -> BareModel {
    let n = order;
    // 3 g y² - y + 1 = 0
    let coeffs = [
        PowerSeries::one(n),
        constant(-1, n),
        PowerSeries::monomial(int(3), 1, n),
    ];
    let a2_bare = solve_algebraic(&coeffs, &int(1)).expect("simple root at g = 0");
    let one = PowerSeries::one(n);
    let shifted = &a2_bare - &one;
    let f = &a2_bare.log().expect("a² starts at 1").scale(&rat(1, 2))
        - &(&shifted * &(&constant(9, n) - &a2_bare)).scale(&rat(1, 24));
    let g2 = two_point_polynomial(&a2_bare);
    let a4 = &a2_bare * &a2_bare;
    let g4 = &a4 * &(&constant(3, n) - &a2_bare);
    let g4c = &g4 - &(&g2 * &g2).scale(&int(2));
    BareModel { order, a2_bare, f, g2, g4, g4c }
}

/// `3^p (2p-1)! / (p! (p+2)!)`, the coefficient of `g^p` in `F(1, g)`.
pub fn closed_form_f_coeff(p: u64) -> Rational {
    assert!(p >= 1, "the free energy has no constant term");
    let numer = BigInt::from(3u32).pow(p as u32) * factorial(2 * p - 1);
    let denom = factorial(p) * factorial(p + 2);
    Rational::new(numer, denom)
}

impl BareModel {
    /// Identities the bare series must satisfy through their order.
    pub fn residuals(&self) -> Vec<Residual> {
        let n = self.order;
        let g = PowerSeries::var(n);
        let a2 = &self.a2_bare;
        let closed_f = PowerSeries::from_rationals(
            &std::iter::once(Rational::zero())
                .chain((1..=n as u64).map(closed_form_f_coeff))
                .collect::<Vec<_>>(),
            n,
        );
        let a4 = a2 * a2;
        let g4c_closed = (&(&a4 * &(a2 - &PowerSeries::one(n))) * &(&a2.scale(&int(2)) - &constant(5, n)))
            .scale(&rat(-1, 9));
        let mut out = vec![
            Residual::new("F(1,g) matches closed-form coefficients", &self.f - &closed_f),
            Residual::new("G2 = 1 + g G4 at alpha = 1", &self.g2 - &(&PowerSeries::one(n) + &(&g * &self.g4))),
            Residual::new("G4c = G4 - 2 G2^2 closed form", &self.g4c - &g4c_closed),
        ];
        if let Ok(df) = self.f.derivative() {
            out.push(Residual::new("G4 = 4 dF/dg", &self.g4.truncate(n - 1) - &df.scale(&int(4))));
        }
        out
    }
}

pub fn renormalized_model(order: usize) -> RenormalizedModel {
    assert!(order >= 1, "renormalized model needs order >= 1");
    let n = order;
    // Γ = Σ'/g loses one order, so solve one order deeper.
    let m = n + 1;
    // With a² = 1 + u: u (3 - u)² = 27 g, i.e. u³ - 6u² + 9u - 27g = 0.
    let coeffs = [
        PowerSeries::monomial(int(-27), 1, m),
        constant(9, m),
        constant(-6, m),
        PowerSeries::one(m),
    ];
    let u = solve_algebraic(&coeffs, &Rational::zero()).expect("simple root at g = 0");
    let a2_full = &PowerSeries::one(m) + &u;
    let alpha_full = two_point_polynomial(&a2_full);
    let sigma_prime_full = &(&alpha_full - &PowerSeries::one(m)) - &PowerSeries::var(m).scale(&int(2));
    let gamma = sigma_prime_full.div(&PowerSeries::var(m)).expect("Σ' vanishes at g = 0");
    let f1 = free_energy_from_sigma_prime(&sigma_prime_full.truncate(n));
    let alpha = alpha_full.truncate(n);
    RenormalizedModel {
        order,
        a2: a2_full.truncate(n),
        sigma: &alpha - &PowerSeries::one(n),
        sigma_prime: sigma_prime_full.truncate(n),
        alpha,
        gamma,
        f1,
    }
}

/// Divides `[gⁿ]Σ'` by `2n`: each propagator of a vacuum diagram may be
/// opened to give a two-point diagram.
fn free_energy_from_sigma_prime(sigma_prime: &PowerSeries) -> PowerSeries {
    let coeffs: Vec<Rational> = sigma_prime
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { Rational::zero() } else { c / int(2 * k as i64) })
        .collect();
    PowerSeries::new(coeffs)
}

impl RenormalizedModel {
    /// `Γ` from the explicit expression `-(a² - 1)(2a² - 5)/(4 - a²)²`.
    pub fn gamma_closed_form(&self) -> Result<PowerSeries> {
        let n = self.order;
        let a2 = &self.a2;
        let four_minus = &constant(4, n) - a2;
        let numer = -&(&(a2 - &PowerSeries::one(n)) * &(&a2.scale(&int(2)) - &constant(5, n)));
        numer.div(&(&four_minus * &four_minus))
    }

    pub fn residuals(&self) -> Result<Vec<Residual>> {
        let n = self.order;
        let g = PowerSeries::var(n);
        let one = PowerSeries::one(n);
        let a2 = &self.a2;
        let alpha = &self.alpha;

        let g2 = two_point_polynomial(a2).div(alpha)?;
        let alpha_sq = alpha * alpha;
        // 3 (g/α²) a⁴ - a² + 1 = 0, cleared of α².
        let quartic = &(&(&g * &(a2 * a2)).scale(&int(3)) - &(&alpha_sq * a2)) + &alpha_sq;
        // Homogeneity: a²(α, g) = a²(1, g/α²).
        let rescaled_g = g.div(&alpha_sq)?;
        let a2_homogeneous = bare_model(n).a2_bare.compose(&rescaled_g)?;
        let df1 = self.f1.derivative()?.scale(&int(2));

        Ok(vec![
            Residual::new("G2(alpha(g), g) = 1", &g2 - &one),
            Residual::new("3 (g/alpha^2) a^4 - a^2 + 1 = 0 along alpha(g)", quartic),
            Residual::new("a^2(alpha, g) = a^2(1, g/alpha^2)", &a2_homogeneous - a2),
            Residual::new("Sigma = alpha - 1", &self.sigma - &(alpha - &one)),
            Residual::new("Gamma = Sigma'/g closed form", &self.gamma - &self.gamma_closed_form()?),
            Residual::new("Gamma = 2 dF1/dg", &self.gamma.truncate(n - 1) - &df1),
        ])
    }
}

/// Radius and growth of link and tangle counts before the flype quotient.
///
/// The radius is the critical value of `27 g = (a² - 1)(4 - a²)²`, where
/// `d/da²` vanishes at `a² = 2`.
pub fn link_asymptotics() -> AsymptoticConstants {
    // d/dx (x - 1)(4 - x)² = (4 - x)(6 - 3x); the branch starting at x = 1 hits x = 2 first.
    let critical = int(2);
    let four_minus = int(4) - &critical;
    let radius = (&critical - Rational::one()) * &four_minus * &four_minus / int(27);
    AsymptoticConstants {
        growth: QuadraticSurd::from_rational(&radius.recip()),
        radius: QuadraticSurd::from_rational(&radius),
        exponent: rat(-7, 2),
    }
}
