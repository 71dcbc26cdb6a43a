#![allow(dead_code)]

use alternating_tangles::oracle::{Channel, DiagramFilter, FatGraph};
use alternating_tangles::series::{int, rat, PowerSeries, Rational};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn run_property<S>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

/// A series of order 1..=8 with arbitrary coefficients.
pub fn series() -> impl Strategy<Value = PowerSeries> {
    (1usize..=8).prop_flat_map(|order| vec(rational(), order + 1)).prop_map(PowerSeries::new)
}

/// `c₁ g + c₂ g² + …` with `c₁ ≠ 0`.
pub fn invertible_series() -> impl Strategy<Value = PowerSeries> {
    (nonzero_rational(), (1usize..=8).prop_flat_map(|order| vec(rational(), order - 1))).prop_map(|(c1, rest)| {
        let mut coeffs = vec![int(0), c1];
        coeffs.extend(rest);
        PowerSeries::new(coeffs)
    })
}

fn eq(label: &str, left: &PowerSeries, right: &PowerSeries) -> Result<(), TestCaseError> {
    prop_assert_eq!(left, right, "{}", label);
    Ok(())
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

pub fn reversion_round_trip(cases: u32) -> Result<(), String> {
    run_property(cases, invertible_series(), |f| {
        let r = f.reversion().map_err(fail)?;
        prop_assert_eq!(r.order(), f.order());
        let left = r.compose(&f).map_err(fail)?;
        let right = f.compose(&r).map_err(fail)?;
        prop_assert_eq!(left.order(), f.order());
        eq("r∘f", &left, &PowerSeries::var(f.order()))?;
        eq("f∘r", &right, &PowerSeries::var(f.order()))
    })
}

pub fn compose_with_scaling(cases: u32) -> Result<(), String> {
    run_property(cases, (series(), nonzero_rational()), |(f, c)| {
        let inner = PowerSeries::monomial(c.clone(), 1, f.order());
        let composed = f.compose(&inner).map_err(fail)?;
        let mut power = int(1);
        let mut expected = Vec::new();
        for a in f.coeffs() {
            expected.push(a * &power);
            power *= &c;
        }
        eq("f(c g)", &composed, &PowerSeries::new(expected))
    })
}

pub fn exp_log_round_trip(cases: u32) -> Result<(), String> {
    run_property(cases, invertible_series(), |f| {
        eq("log exp f", &f.exp().map_err(fail)?.log().map_err(fail)?, &f)?;
        let one_plus = &PowerSeries::one(f.order()) + &f;
        eq("exp log (1+f)", &one_plus.log().map_err(fail)?.exp().map_err(fail)?, &one_plus)
    })
}

pub fn sqrt_of_square(cases: u32) -> Result<(), String> {
    run_property(cases, (series(), (1i64..=6, 1i64..=5)), |(s, (p, q))| {
        let mut coeffs = s.into_coeffs();
        coeffs[0] = rat(p, q);
        let s = PowerSeries::new(coeffs);
        eq("sqrt(s²)", &(&s * &s).sqrt().map_err(fail)?, &s)
    })
}

pub fn division_round_trip(cases: u32) -> Result<(), String> {
    run_property(cases, (series(), series(), nonzero_rational()), |(a, b, b0)| {
        let mut coeffs = b.into_coeffs();
        coeffs[0] = b0;
        let b = PowerSeries::new(coeffs);
        let n = a.order().min(b.order());
        eq("(a b)/b", &(&a * &b).div(&b).map_err(fail)?, &a.truncate(n))
    })
}

/// A random perfect matching on `4n + k` half-edges with a random
/// relabeling of the internal vertices.
pub fn graph_and_relabeling() -> impl Strategy<Value = (FatGraph, Vec<usize>, Vec<usize>)> {
    (1usize..=5, prop_oneof![Just(0usize), Just(2), Just(4)])
        .prop_flat_map(|(n, k)| {
            let total = 4 * n + k;
            (
                Just(n),
                Just(k),
                Just((0..total).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                vec(0usize..4, n),
            )
        })
        .prop_map(|(n, k, order, perm, shift)| {
            let pairs: Vec<(usize, usize)> = order.chunks(2).map(|p| (p[0], p[1])).collect();
            (FatGraph::from_pairs(n, k, &pairs).expect("valid pairing"), perm, shift)
        })
}

pub fn relabeling_invariance(cases: u32) -> Result<(), String> {
    run_property(cases, graph_and_relabeling(), |(g, perm, shift)| {
        let r = g.relabel(&perm, &shift);
        prop_assert_eq!(r.genus(), g.genus());
        prop_assert_eq!(r.face_count(), g.face_count());
        prop_assert_eq!(r.is_connected(), g.is_connected());
        prop_assert_eq!(r.is_connected_amputated(), g.is_connected_amputated());
        prop_assert_eq!(r.has_self_energy(), g.has_self_energy());
        for channel in [Channel::Horizontal, Channel::Vertical] {
            prop_assert_eq!(r.is_2pi_channel(channel), g.is_2pi_channel(channel));
        }
        Ok(())
    })
}

/// Every flag combination that includes connectivity.
pub fn connected_filters() -> Vec<DiagramFilter> {
    (0..8u8)
        .map(|bits| DiagramFilter {
            connected: true,
            no_self_energy: bits & 1 != 0,
            two_pi_horizontal: bits & 2 != 0,
            two_pi_vertical: bits & 4 != 0,
        })
        .collect()
}

pub fn filter_monotonicity(cases: u32) -> Result<(), String> {
    let filters = connected_filters();
    run_property(cases, graph_and_relabeling(), move |(g, _, _)| {
        for loose in &filters {
            for strict in filters.iter().filter(|s| loose.is_weaker_than(s)) {
                prop_assert!(!strict.accepts(&g) || loose.accepts(&g), "{:?} accepts but {:?} rejects", strict, loose);
            }
        }
        Ok(())
    })
}
