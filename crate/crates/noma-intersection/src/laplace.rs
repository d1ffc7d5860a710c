//! Laplace transforms of the aggregate road interference.
//!
//! Every closed-form outage expression is assembled from `E[exp(-s I)]`
//! where `I` is the ALOHA-thinned, Rayleigh-faded shot noise of one road's
//! Poisson field seen at a receiver. The probability generating functional
//! reduces that expectation to a single improper integral along the road;
//! for a path-loss exponent of exactly 2 the integral collapses to an
//! elementary closed form, and any other exponent is handled by adaptive
//! quadrature. The receiver enters only through its polar decomposition
//! `(m, theta)`: road X sees the perpendicular offset `m sin(theta)`, road Y
//! sees `m cos(theta)`.

use crate::error::{Error, Result};
use crate::quad;
use crate::scenario::{ChannelParams, ReceiverGeometry};

use std::f64::consts::PI;

/// Quadrature tolerances on the interference integral.
const ABS_TOL: f64 = 1e-10;
const REL_TOL: f64 = 1e-8;

/// The two perpendicular roads forming the intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoadId {
    X,
    Y,
}

impl RoadId {
    /// Perpendicular distance from the receiver to this road.
    fn offset(self, receiver: &ReceiverGeometry) -> f64 {
        match self {
            RoadId::X => receiver.m * receiver.theta.sin(),
            RoadId::Y => receiver.m * receiver.theta.cos(),
        }
    }

    fn intensity(self, ch: &ChannelParams) -> f64 {
        match self {
            RoadId::X => ch.lambda_x(),
            RoadId::Y => ch.lambda_y(),
        }
    }
}

/// A transform argument `s >= 0` bound to the receiver it applies to.
///
/// Callers always form `s` as a threshold-to-path-loss ratio; this module
/// treats it as an opaque nonnegative number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceArg {
    pub s: f64,
    pub receiver: ReceiverGeometry,
}

impl LaplaceArg {
    pub fn new(s: f64, receiver: ReceiverGeometry) -> LaplaceArg {
        LaplaceArg { s, receiver }
    }
}

fn check_arg(arg: &LaplaceArg) -> Result<()> {
    if arg.s < 0.0 || arg.s.is_nan() {
        return Err(Error::NegativeTransformArg(arg.s));
    }
    if !arg.s.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "transform argument must be finite, got {}",
            arg.s
        )));
    }
    Ok(())
}

/// Transform of one road's interference by adaptive quadrature, valid for
/// any path-loss exponent above 1.
///
/// The integrand `1 / (1 + r(x)^alpha / s)` is integrated over the whole
/// road, split at the projection of the receiver onto the road; each
/// half-infinite piece is mapped through `x = tan(u)`. The two pieces are
/// mirror images about the projection point, so one is evaluated and
/// doubled.
pub fn numeric(arg: &LaplaceArg, road: RoadId, ch: &ChannelParams) -> Result<f64> {
    check_arg(arg)?;
    let alpha = ch.alpha();
    if alpha <= 1.0 {
        return Err(Error::DivergentModel(alpha));
    }
    let thinned = ch.p() * road.intensity(ch);
    if arg.s == 0.0 || thinned == 0.0 {
        return Ok(1.0);
    }
    let s = arg.s;
    let h2 = road.offset(&arg.receiver).powi(2);
    let half = quad::integrate_half_line(
        |u| {
            let q = (h2 + u * u).powf(alpha / 2.0);
            1.0 / (1.0 + q / s)
        },
        0.5 * ABS_TOL,
        REL_TOL,
    )?;
    Ok((-thinned * 2.0 * half).exp())
}

/// Closed-form transform for a path-loss exponent of exactly 2:
/// `exp(-p lambda s pi / sqrt(offset^2 + s))`.
pub fn closed_form_alpha2(arg: &LaplaceArg, road: RoadId, ch: &ChannelParams) -> Result<f64> {
    check_arg(arg)?;
    if ch.alpha() != 2.0 {
        return Err(Error::InvalidParameter(format!(
            "closed form requires alpha = 2 exactly, got {}",
            ch.alpha()
        )));
    }
    let thinned = ch.p() * road.intensity(ch);
    if arg.s == 0.0 || thinned == 0.0 {
        return Ok(1.0);
    }
    let h2 = road.offset(&arg.receiver).powi(2);
    Ok((-thinned * arg.s * PI / (h2 + arg.s).sqrt()).exp())
}

/// Transform of one road's interference, dispatching to the closed form
/// when the exponent is exactly 2 and to quadrature otherwise.
pub fn transform(arg: &LaplaceArg, road: RoadId, ch: &ChannelParams) -> Result<f64> {
    if ch.alpha() == 2.0 {
        closed_form_alpha2(arg, road, ch)
    } else {
        numeric(arg, road, ch)
    }
}

/// Joint factor over both roads: the product of the per-road transforms at
/// the same argument.
pub fn joint(arg: &LaplaceArg, ch: &ChannelParams) -> Result<f64> {
    Ok(transform(arg, RoadId::X, ch)? * transform(arg, RoadId::Y, ch)?)
}

/// Derivative of one road's integral exponent with respect to `s`.
fn exponent_derivative(s: f64, h2: f64, alpha: f64) -> Result<f64> {
    if alpha == 2.0 {
        return Ok(PI * (h2 + 0.5 * s) / (h2 + s).powf(1.5));
    }
    let half = quad::integrate_half_line(
        |u| {
            let q = (h2 + u * u).powf(alpha / 2.0);
            if q.is_finite() {
                q / ((s + q) * (s + q))
            } else {
                0.0
            }
        },
        0.5 * ABS_TOL,
        REL_TOL,
    )?;
    Ok(2.0 * half)
}

/// Derivative `d/ds` of the joint factor, defined for `s > 0`.
///
/// Used to evaluate the combining tail in the removable-singularity limit
/// where the two combined path losses coincide; always nonpositive.
pub fn joint_derivative(arg: &LaplaceArg, ch: &ChannelParams) -> Result<f64> {
    check_arg(arg)?;
    if arg.s == 0.0 {
        return Err(Error::InvalidParameter(
            "joint derivative requires s > 0; the slope at 0 may be unbounded".into(),
        ));
    }
    let alpha = ch.alpha();
    if alpha <= 1.0 {
        return Err(Error::DivergentModel(alpha));
    }
    let value = joint(arg, ch)?;
    let mut slope = 0.0;
    for road in [RoadId::X, RoadId::Y] {
        let thinned = ch.p() * road.intensity(ch);
        if thinned == 0.0 {
            continue;
        }
        let h2 = road.offset(&arg.receiver).powi(2);
        slope += thinned * exponent_derivative(arg.s, h2, alpha)?;
    }
    Ok(-value * slope)
}
