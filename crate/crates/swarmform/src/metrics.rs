//! Formation-quality and convergence measurements.
//!
//! These are read-only summaries of a world snapshot: how far links sit from
//! their rest lengths, how line-like the swarm is (via the position
//! covariance), how many sensing-range components exist, and whether the
//! swarm has come to rest.

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{LinkSet, World};
use crate::topology::connected_components;
use crate::vec2::Vec2;

/// Absolute link-length error statistics, in distance units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorStats {
    pub mean_abs_error: f64,
    pub max_abs_error: f64,
    pub rms_error: f64,
}

/// Principal-axis summary of the agent positions.
///
/// `eigen_ratio` is λ₂/λ₁ of the population covariance (0 = perfectly
/// collinear, 1 = isotropic), `rms_perpendicular` is √λ₂, and `length` is
/// the position extent projected onto the principal axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineFit {
    pub eigen_ratio: f64,
    pub rms_perpendicular: f64,
    pub length: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("cannot compute neighbor distance error: link set is empty")]
    EmptyLinkSet,
}

/// Statistics of `|‖x_from − x_to‖ − rest_length|` over all links, each
/// directed link counted once.
pub fn neighbor_distance_error(world: &World, links: &LinkSet) -> Result<ErrorStats, MetricsError> {
    if links.is_empty() {
        return Err(MetricsError::EmptyLinkSet);
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut max = 0.0f64;
    for link in links.iter() {
        let gap = (world.agents[link.from].position - world.agents[link.to].position).norm();
        let err = (gap - link.rest_length).abs();
        sum += err;
        sum_sq += err * err;
        max = max.max(err);
    }
    let n = links.len() as f64;
    Ok(ErrorStats {
        mean_abs_error: sum / n,
        max_abs_error: max,
        rms_error: (sum_sq / n).sqrt(),
    })
}

/// Eigen-decomposes the 2×2 population covariance of the positions.
///
/// The two-by-two case has a closed form: with t the mean of the diagonal
/// and d = √(((cxx−cyy)/2)² + cxy²), the eigenvalues are t ± d. Fewer than
/// two agents, or all agents coincident, yield the all-zero fit.
pub fn collinearity(world: &World) -> LineFit {
    let zero = LineFit { eigen_ratio: 0.0, rms_perpendicular: 0.0, length: 0.0 };
    let n = world.len();
    if n < 2 {
        return zero;
    }
    let inv_n = 1.0 / n as f64;
    let mean = world
        .agents
        .iter()
        .fold(Vec2::ZERO, |acc, a| acc + a.position)
        * inv_n;
    let (mut cxx, mut cxy, mut cyy) = (0.0, 0.0, 0.0);
    for a in &world.agents {
        let r = a.position - mean;
        cxx += r.x * r.x;
        cxy += r.x * r.y;
        cyy += r.y * r.y;
    }
    cxx *= inv_n;
    cxy *= inv_n;
    cyy *= inv_n;

    let t = 0.5 * (cxx + cyy);
    let d = (0.25 * (cxx - cyy) * (cxx - cyy) + cxy * cxy).sqrt();
    let lambda1 = t + d;
    let lambda2 = (t - d).max(0.0);
    if lambda1 <= 0.0 {
        return zero; // all positions coincident
    }

    // Principal eigenvector: (Cov − λ₁I)v = 0 gives two candidate rows;
    // take the better-conditioned one, falling back to the x axis for the
    // isotropic case where every direction is principal.
    let cand_a = Vec2::new(cxy, lambda1 - cxx);
    let cand_b = Vec2::new(lambda1 - cyy, cxy);
    let raw = if cand_a.norm_sq() >= cand_b.norm_sq() { cand_a } else { cand_b };
    let axis = if raw.norm_sq() > 0.0 { raw * (1.0 / raw.norm()) } else { Vec2::new(1.0, 0.0) };

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for a in &world.agents {
        let proj = (a.position - mean).dot(axis);
        lo = lo.min(proj);
        hi = hi.max(proj);
    }
    LineFit {
        eigen_ratio: lambda2 / lambda1,
        rms_perpendicular: lambda2.sqrt(),
        length: hi - lo,
    }
}

/// Number of sensing-range connected components; see
/// [`connected_components`].
pub fn component_count(world: &World, range: Option<f64>) -> usize {
    connected_components(world, range).len()
}

/// True iff the last `window` recorded max-agent speeds are all below
/// `v_tol`. A history shorter than the window is never converged.
pub fn is_converged(speed_history: &[f64], v_tol: f64, window: usize) -> bool {
    speed_history.len() >= window
        && speed_history[speed_history.len() - window..]
            .iter()
            .all(|&s| s < v_tol)
}
