//! Two charts that carry the open simplex to unconstrained coordinates, and
//! the densities they transport.
//!
//! * Additive log-ratio chart: `t_j = log(x_j / x_J)` for j < J, with
//!   inverse `x_j = e^{t_j} / S(t)`, `x_J = 1 / S(t)` where
//!   `S(t) = 1 + sum_r e^{t_r}`. The inverse has Jacobian determinant
//!   `prod_{j=1..J} x_j(t)`, so a Dirichlet pushes forward to
//!   `g_alpha(t) = c(alpha) * exp(<alpha_{1:J-1}, t>) * S(t)^{-alpha_+}`.
//! * Ratio chart onto the positive orthant: `y_j = x_j / x_J`, with inverse
//!   `x_j = y_j / (1+Y)`, `x_J = 1 / (1+Y)` and Jacobian determinant
//!   `(1+Y)^{-J}`, `Y = sum y_j`.

use crate::error::{DirimixError, Result};
use crate::kernels::SimplexPoint;
use crate::numeric::{log_normalizer, PositiveVector};

/// A point of the additive log-ratio chart: t in R^{J-1}, finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRatioPoint(Vec<f64>);

impl LogRatioPoint {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(DirimixError::DimensionMismatch(
                "log-ratio point needs at least one coordinate".into(),
            ));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(DirimixError::InvalidParameter(
                "log-ratio coordinates must be finite".into(),
            ));
        }
        Ok(LogRatioPoint(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }
}

/// A point of the positive orthant R_{>0}^{J-1} with its coordinate total
/// cached.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthantPoint {
    y: Vec<f64>,
    total: f64,
}

impl OrthantPoint {
    pub fn new(y: Vec<f64>) -> Result<Self> {
        if y.is_empty() {
            return Err(DirimixError::DimensionMismatch(
                "orthant point needs at least one coordinate".into(),
            ));
        }
        if y.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(DirimixError::DomainViolation(
                "orthant coordinates must be strictly positive and finite".into(),
            ));
        }
        let total = y.iter().sum();
        Ok(OrthantPoint { y, total })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.y
    }

    /// Y = sum of the coordinates.
    pub fn total(&self) -> f64 {
        self.total
    }
}

/// Additive log-ratio coordinates of an interior simplex point.
pub fn alr_transform(x: &SimplexPoint) -> LogRatioPoint {
    let last = x.last().ln();
    LogRatioPoint(x.head().iter().map(|&v| v.ln() - last).collect())
}

/// Interior simplex point with the given log-ratio coordinates. The shifted
/// soft-max normalization keeps large |t| from overflowing; coordin, that
/// underflow to zero are rejected as boundary points.
pub fn alr_inverse(t: &LogRatioPoint) -> Result<SimplexPoint> {
    let m = t.entries().iter().cloned().fold(0.0_f64, f64::max);
    let tail = (-m).exp();
    let scaled: Vec<f64> = t.entries().iter().map(|&v| (v - m).exp()).collect();
    let s = tail + scaled.iter().sum::<f64>();
    SimplexPoint::from_head(scaled.iter().map(|&e| e / s).collect())
}

/// |det| of the derivative of `alr_inverse` at t: the product of all J
/// coordinates of the image point.
pub fn alr_jacobian_det(t: &LogRatioPoint) -> Result<f64> {
    let x = alr_inverse(t)?;
    Ok(x.full().iter().product())
}

/// Density of the log-ratio pushforward of a Dirichlet:
/// `g_alpha(t) = c(alpha) * exp(<alpha_{1:J-1}, t>) * S(t)^{-alpha_+}`.
pub fn alr_density(alpha: &PositiveVector<f64>, t: &LogRatioPoint) -> Result<f64> {
    if alpha.dim() != t.len() + 1 {
        return Err(DirimixError::DimensionMismatch(format!(
            "log-ratio point has {} coordinates but the parameter has dimension {}",
            t.len(),
            alpha.dim()
        )));
    }
    let total: f64 = alpha.entries().iter().sum();
    let dot: f64 = alpha
        .entries()
        .iter()
        .zip(t.entries())
        .map(|(a, v)| a * v)
        .sum();
    // log S(t) via the usual shifted form, stable for large |t|.
    let m = t.entries().iter().cloned().fold(0.0_f64, f64::max);
    let log_s = m + ((-m).exp() + t.entries().iter().map(|&v| (v - m).exp()).sum::<f64>()).ln();
    Ok((log_normalizer(alpha) + dot - total * log_s).exp())
}

/// Ratio chart onto the positive orthant: y_j = x_j / x_J.
pub fn chart_transform(x: &SimplexPoint) -> Result<OrthantPoint> {
    let last = x.last();
    OrthantPoint::new(x.head().iter().map(|&v| v / last).collect())
}

/// Inverse ratio chart: x_j = y_j / (1+Y), x_J = 1 / (1+Y).
pub fn chart_inverse(y: &OrthantPoint) -> Result<SimplexPoint> {
    let denom = 1.0 + y.total();
    SimplexPoint::from_head(y.entries().iter().map(|&v| v / denom).collect())
}

/// |det| of the derivative of `chart_inverse` at y: (1+Y)^{-J}.
pub fn chart_jacobian_det(y: &OrthantPoint) -> f64 {
    let j = y.len() + 1;
    (1.0 + y.total()).powi(-(j as i32))
}
