//! Experiment geometry and protocol parameters.
//!
//! A [`Scenario`] pins down everything a single transmission needs: the four
//! node positions (source, relay, two destinations), the interferer field
//! parameters of the two perpendicular roads, and the NOMA power split with
//! its target rates. All types are immutable once constructed and validate
//! their invariants up front.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// A point in the plane, in meters. The intersection of the two roads is the
/// origin; road X is the x-axis and road Y the y-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const ORIGIN: Position = Position { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Position {
        Position { x, y }
    }

    /// Euclidean distance to another position.
    pub fn distance_to(&self, other: &Position) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Polar decomposition relative to the intersection. The origin maps to
    /// distance 0 with angle 0 by convention.
    pub fn polar(&self) -> ReceiverGeometry {
        let m = self.x.hypot(self.y);
        let mut theta = self.y.atan2(self.x);
        if theta < 0.0 {
            theta += TAU;
        }
        if theta >= TAU {
            theta = 0.0;
        }
        if m == 0.0 {
            theta = 0.0;
        }
        ReceiverGeometry { m, theta }
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Polar view of a receiver relative to the intersection: distance `m` and
/// angle `theta` in `[0, 2*pi)` measured from the positive road-X axis.
///
/// This is derived from [`Position`] on demand; Cartesian coordinates remain
/// the primary representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverGeometry {
    pub m: f64,
    pub theta: f64,
}

impl ReceiverGeometry {
    /// Reconstruct the Cartesian position `(m cos(theta), m sin(theta))`.
    pub fn position(&self) -> Position {
        Position::new(self.m * self.theta.cos(), self.m * self.theta.sin())
    }

    /// Perpendicular distance to road X (the x-axis).
    pub fn offset_from_road_x(&self) -> f64 {
        (self.m * self.theta.sin()).abs()
    }

    /// Perpendicular distance to road Y (the y-axis).
    pub fn offset_from_road_y(&self) -> f64 {
        (self.m * self.theta.cos()).abs()
    }
}

/// Path loss `||a - b||^(-alpha)` between two distinct nodes.
pub fn path_loss(a: &Position, b: &Position, alpha: f64) -> Result<f64> {
    let r = a.distance_to(b);
    if r == 0.0 {
        return Err(Error::DegenerateGeometry(format!(
            "coincident nodes at ({}, {})",
            a.x, a.y
        )));
    }
    Ok(r.powf(-alpha))
}

/// Interference-field parameters: path-loss exponent, road intensities, and
/// the slotted-ALOHA access probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    alpha: f64,
    lambda_x: f64,
    lambda_y: f64,
    p: f64,
}

impl ChannelParams {
    pub fn new(alpha: f64, lambda_x: f64, lambda_y: f64, p: f64) -> Result<ChannelParams> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "path-loss exponent must be positive, got {alpha}"
            )));
        }
        if !lambda_x.is_finite() || lambda_x < 0.0 || !lambda_y.is_finite() || lambda_y < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "road intensities must be nonnegative, got ({lambda_x}, {lambda_y})"
            )));
        }
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "access probability must lie in [0, 1], got {p}"
            )));
        }
        Ok(ChannelParams {
            alpha,
            lambda_x,
            lambda_y,
            p,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda_x(&self) -> f64 {
        self.lambda_x
    }

    pub fn lambda_y(&self) -> f64 {
        self.lambda_y
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Power-domain NOMA configuration: the power fractions of the two messages
/// (`a1 + a2 = 1`, `a1 >= a2 > 0`) and the target rates in bit/s/Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NomaConfig {
    a1: f64,
    a2: f64,
    rate1: f64,
    rate2: f64,
}

impl NomaConfig {
    /// Build from the strong-message fraction alone; `a2` is `1 - a1`, which
    /// is exact in floating point for `a1` in `[0.5, 1)`.
    pub fn new(a1: f64, rate1: f64, rate2: f64) -> Result<NomaConfig> {
        NomaConfig::from_split(a1, 1.0 - a1, rate1, rate2)
    }

    pub fn from_split(a1: f64, a2: f64, rate1: f64, rate2: f64) -> Result<NomaConfig> {
        if !a1.is_finite() || !a2.is_finite() || a1 + a2 != 1.0 {
            return Err(Error::InvalidParameter(format!(
                "power fractions must sum to 1 exactly, got a1 + a2 = {}",
                a1 + a2
            )));
        }
        if !(a1 >= a2 && a2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "power fractions must satisfy a1 >= a2 > 0, got ({a1}, {a2})"
            )));
        }
        if !rate1.is_finite() || rate1 <= 0.0 || !rate2.is_finite() || rate2 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "target rates must be positive, got ({rate1}, {rate2})"
            )));
        }
        Ok(NomaConfig {
            a1,
            a2,
            rate1,
            rate2,
        })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn rate1(&self) -> f64 {
        self.rate1
    }

    pub fn rate2(&self) -> f64 {
        self.rate2
    }

    /// SIR thresholds and normalized decode gains implied by this split.
    pub fn thresholds(&self) -> DerivedThresholds {
        DerivedThresholds::from_noma(self)
    }
}

/// SIR thresholds and normalized decode gains derived from a [`NomaConfig`].
///
/// `theta_i = 2^(2 rate_i) - 1` is the SIR threshold of message `i` over a
/// two-slot transmission. `gain1 = theta1 / (a1 - theta1 * a2)` normalizes
/// the first SIC stage; it only exists while `theta1 * a2 < a1`. When that
/// fails, decoding message 1 is impossible at any SIR and every NOMA scheme
/// is in certain outage under almost-surely-positive interference, so
/// `gain1` (and `gain_max`) are `None` rather than an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedThresholds {
    pub theta1: f64,
    pub theta2: f64,
    pub gain1: Option<f64>,
    pub gain2: f64,
    pub gain_max: Option<f64>,
}

impl DerivedThresholds {
    fn from_noma(noma: &NomaConfig) -> DerivedThresholds {
        let theta1 = f64::exp2(2.0 * noma.rate1) - 1.0;
        let theta2 = f64::exp2(2.0 * noma.rate2) - 1.0;
        let gain2 = theta2 / noma.a2;
        let gain1 = if theta1 * noma.a2 < noma.a1 {
            Some(theta1 / (noma.a1 - theta1 * noma.a2))
        } else {
            None
        };
        let gain_max = gain1.map(|g1| g1.max(gain2));
        DerivedThresholds {
            theta1,
            theta2,
            gain1,
            gain2,
            gain_max,
        }
    }

    /// Whether the first SIC stage is achievable at all.
    pub fn feasible(&self) -> bool {
        self.gain1.is_some()
    }
}

/// Immutable description of one experiment: node placement plus channel and
/// protocol parameters. Nodes may sit on or off the roads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    source: Position,
    relay: Position,
    dest1: Position,
    dest2: Position,
    channel: ChannelParams,
    noma: NomaConfig,
}

impl Scenario {
    pub fn new(
        source: Position,
        relay: Position,
        dest1: Position,
        dest2: Position,
        channel: ChannelParams,
        noma: NomaConfig,
    ) -> Result<Scenario> {
        let nodes = [
            ("source", source),
            ("relay", relay),
            ("dest1", dest1),
            ("dest2", dest2),
        ];
        for (name, node) in &nodes {
            if !node.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} position must be finite"
                )));
            }
        }
        for i in 0..nodes.len() {
            for j in (i + 1)..nodes.len() {
                if nodes[i].1.distance_to(&nodes[j].1) == 0.0 {
                    return Err(Error::DegenerateGeometry(format!(
                        "{} and {} coincide at ({}, {})",
                        nodes[i].0, nodes[j].0, nodes[i].1.x, nodes[i].1.y
                    )));
                }
            }
        }
        Ok(Scenario {
            source,
            relay,
            dest1,
            dest2,
            channel,
            noma,
        })
    }

    pub fn source(&self) -> Position {
        self.source
    }

    pub fn relay(&self) -> Position {
        self.relay
    }

    pub fn dest1(&self) -> Position {
        self.dest1
    }

    pub fn dest2(&self) -> Position {
        self.dest2
    }

    pub fn channel(&self) -> &ChannelParams {
        &self.channel
    }

    pub fn noma(&self) -> &NomaConfig {
        &self.noma
    }

    /// Rebuild with different node positions, revalidating the geometry.
    pub fn with_positions(
        &self,
        source: Position,
        relay: Position,
        dest1: Position,
        dest2: Position,
    ) -> Result<Scenario> {
        Scenario::new(source, relay, dest1, dest2, self.channel, self.noma)
    }

    /// Rebuild with a different channel.
    pub fn with_channel(&self, channel: ChannelParams) -> Scenario {
        Scenario { channel, ..*self }
    }

    /// Rebuild with a different power split and rates.
    pub fn with_noma(&self, noma: NomaConfig) -> Scenario {
        Scenario { noma, ..*self }
    }

    pub fn loss_source_relay(&self) -> Result<f64> {
        path_loss(&self.source, &self.relay, self.channel.alpha)
    }

    pub fn loss_source_dest1(&self) -> Result<f64> {
        path_loss(&self.source, &self.dest1, self.channel.alpha)
    }

    pub fn loss_source_dest2(&self) -> Result<f64> {
        path_loss(&self.source, &self.dest2, self.channel.alpha)
    }

    pub fn loss_relay_dest1(&self) -> Result<f64> {
        path_loss(&self.relay, &self.dest1, self.channel.alpha)
    }

    pub fn loss_relay_dest2(&self) -> Result<f64> {
        path_loss(&self.relay, &self.dest2, self.channel.alpha)
    }
}
