//! Brute-force counting of planar 4-valent fat graphs.
//!
//! Every vertex carries four labeled half-edges; a diagram is a perfect
//! matching of them. Weighted counts divide the labeled count by `n!·4ⁿ`,
//! the size of the relabeling group, which reproduces the symmetry
//! factors of the quartic matrix model.

mod fatgraph;
mod search;

pub use fatgraph::{Channel, FatGraph};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::series::{factorial, Rational};
use search::count_matchings;

pub const FREE_ENERGY_CAP: usize = 5;
pub const TWO_POINT_CAP: usize = 4;
pub const TANGLE_CAP: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the cap of {cap}; pass force to override")]
    CapExceeded { n: usize, cap: usize },
    #[error("n = {n} is below the minimum of {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("malformed fat graph: {0}")]
    MalformedGraph(&'static str),
    #[error("tangle counts require the connected filter")]
    FilterNotConnected,
    #[error("labeled count {labeled} is not divisible by n!·4^n at n = {n}")]
    NotIntegral { labeled: u64, n: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    /// Lifts the size caps.
    pub force: bool,
    /// Turns off genus and disconnection pruning; leaves are then checked
    /// directly, so counts must agree with the pruned search.
    pub prune: bool,
    /// Searches one representative first pairing per relabeling orbit.
    pub symmetric: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, force: false, prune: true, symmetric: true }
    }
}

impl SearchOptions {
    pub fn with_workers(workers: usize) -> Self {
        SearchOptions { workers: workers.max(1), ..Self::default() }
    }
}

/// Cut conditions a 4-leg diagram must satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagramFilter {
    pub connected: bool,
    pub no_self_energy: bool,
    pub two_pi_horizontal: bool,
    pub two_pi_vertical: bool,
}

impl DiagramFilter {
    pub fn connected() -> Self {
        DiagramFilter { connected: true, ..Self::default() }
    }

    /// Truncated diagrams without self-energy insertions: the Γ filter.
    pub fn no_self_energy() -> Self {
        Self::connected().without_self_energy()
    }

    /// Self-energy free and 2PI in both channels: the D filter.
    pub fn two_pi_both() -> Self {
        Self::no_self_energy().two_pi(Channel::Horizontal).two_pi(Channel::Vertical)
    }

    pub fn without_self_energy(mut self) -> Self {
        self.no_self_energy = true;
        self
    }

    pub fn two_pi(mut self, channel: Channel) -> Self {
        match channel {
            Channel::Horizontal => self.two_pi_horizontal = true,
            Channel::Vertical => self.two_pi_vertical = true,
        }
        self
    }

    /// True when every flag set here is also set in `other`.
    pub fn is_weaker_than(&self, other: &DiagramFilter) -> bool {
        (!self.connected || other.connected)
            && (!self.no_self_energy || other.no_self_energy)
            && (!self.two_pi_horizontal || other.two_pi_horizontal)
            && (!self.two_pi_vertical || other.two_pi_vertical)
    }

    pub fn accepts(&self, graph: &FatGraph) -> bool {
        (!self.connected || graph.is_connected_amputated())
            && (!self.no_self_energy || !graph.has_self_energy())
            && (!self.two_pi_horizontal || graph.is_2pi_channel(Channel::Horizontal))
            && (!self.two_pi_vertical || graph.is_2pi_channel(Channel::Vertical))
    }
}

fn check_range(n: usize, min: usize, cap: usize, options: &SearchOptions) -> Result<(), OracleError> {
    if n < min {
        return Err(OracleError::OrderTooSmall { n, min });
    }
    if n > cap && !options.force {
        return Err(OracleError::CapExceeded { n, cap });
    }
    Ok(())
}

fn relabelings(n: usize) -> BigInt {
    factorial(n as u64) * BigInt::from(4u32).pow(n as u32)
}

/// Pruned leaves are planar and connected (legs cut off) by construction;
/// without pruning those properties are tested on each leaf.
fn search(n: usize, legs: usize, options: &SearchOptions, extra: search::Accept) -> Result<u64, OracleError> {
    let accept = |g: &FatGraph| (options.prune || g.genus() == 0 && g.is_connected_amputated()) && extra(g);
    count_matchings(n, legs, options.prune, options.symmetric, options.workers, &accept)
}

/// Labeled connected planar vacuum diagrams with `n` vertices.
pub fn labeled_free_energy(n: usize, options: &SearchOptions) -> Result<u64, OracleError> {
    check_range(n, 1, FREE_ENERGY_CAP, options)?;
    search(n, 0, options, &|_| true)
}

pub fn count_free_energy(n: usize, options: &SearchOptions) -> Result<Rational, OracleError> {
    let labeled = labeled_free_energy(n, options)?;
    Ok(Rational::new(BigInt::from(labeled), relabelings(n)))
}

/// Labeled connected planar diagrams with two legs and `n` vertices.
pub fn labeled_two_point(n: usize, options: &SearchOptions) -> Result<u64, OracleError> {
    check_range(n, 0, TWO_POINT_CAP, options)?;
    search(n, 2, options, &|_| true)
}

pub fn count_two_point(n: usize, options: &SearchOptions) -> Result<Rational, OracleError> {
    let labeled = labeled_two_point(n, options)?;
    Ok(Rational::new(BigInt::from(labeled), relabelings(n)))
}

/// Labeled planar 4-leg diagrams passing `filter`.
pub fn labeled_tangles(n: usize, filter: DiagramFilter, options: &SearchOptions) -> Result<u64, OracleError> {
    check_range(n, 1, TANGLE_CAP, options)?;
    if !filter.connected {
        return Err(OracleError::FilterNotConnected);
    }
    let extra = DiagramFilter { connected: false, ..filter };
    search(n, 4, options, &|g| extra.accepts(g))
}

/// Tangle diagrams with the legs fixed in cyclic order. Such diagrams have
/// no automorphisms, so the weighted count is an integer.
pub fn count_tangles(n: usize, filter: DiagramFilter, options: &SearchOptions) -> Result<u64, OracleError> {
    let labeled = labeled_tangles(n, filter, options)?;
    let group = relabelings(n);
    let labeled_big = BigInt::from(labeled);
    if &labeled_big % &group != BigInt::from(0) {
        return Err(OracleError::NotIntegral { labeled, n });
    }
    Ok((labeled_big / group).to_u64().expect("quotient bounded by labeled count"))
}
