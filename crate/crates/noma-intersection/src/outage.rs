//! Closed-form outage probabilities.
//!
//! Four schemes are covered, all half-duplex and decode-and-forward:
//!
//! * `MrcNoma` — the destinations combine the broadcast and relayed
//!   observations by summing received powers before decoding.
//! * `RelayNoma` — pure two-hop: the direct observation is discarded, so a
//!   destination succeeds only if the relay decoded and the second hop
//!   clears its SIR threshold.
//! * `MrcOma` / `RelayOma` — orthogonal baselines in which each destination
//!   gets its own two-slot cooperative transaction at full power, with the
//!   SIR threshold raised to `2^(4 rate) - 1` so the end-to-end rate matches
//!   the power-split scheme. This baseline is a modeled comparator, not a
//!   measured system.
//!
//! Every expression is a composition of joint Laplace factors evaluated at
//! threshold-to-path-loss ratios, plus the survival function of a sum of
//! two independent exponentials for the combining stage.

use crate::diagnostics::clamp_probability;
use crate::error::{Error, Result};
use crate::laplace::{self, LaplaceArg};
use crate::scenario::{ChannelParams, ReceiverGeometry, Scenario};

/// Relative spread below which two path losses are treated as equal and the
/// removable-singularity limit is used instead of the difference quotient.
pub const DEGENERATE_LOSS_TOLERANCE: f64 = 1e-12;

/// Transmission schemes compared by the experiment drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    MrcNoma,
    RelayNoma,
    MrcOma,
    RelayOma,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::MrcNoma,
        Scheme::RelayNoma,
        Scheme::MrcOma,
        Scheme::RelayOma,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Scheme::MrcNoma => "mrc_noma",
            Scheme::RelayNoma => "relay_noma",
            Scheme::MrcOma => "mrc_oma",
            Scheme::RelayOma => "relay_oma",
        }
    }

    pub fn parse(text: &str) -> Result<Scheme> {
        match text.trim().to_ascii_lowercase().as_str() {
            "mrc_noma" => Ok(Scheme::MrcNoma),
            "relay_noma" => Ok(Scheme::RelayNoma),
            "mrc_oma" => Ok(Scheme::MrcOma),
            "relay_oma" => Ok(Scheme::RelayOma),
            other => Err(Error::InvalidParameter(format!("unknown scheme `{other}`"))),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Outage probabilities of both destinations under one scheme.
///
/// `feasible` is false when the first SIC stage cannot succeed at any SIR
/// (power-split schemes only); both probabilities are then exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageReport {
    pub p_out_d1: f64,
    pub p_out_d2: f64,
    pub scheme: Scheme,
    pub feasible: bool,
}

/// Survival probability `P[E_a l_a + E_b l_b >= z]` for independent
/// unit-mean exponentials `E_a`, `E_b` weighted by positive gains.
///
/// Uses the two-sided difference form when the gains are distinct and the
/// Gamma(2) tail `(1 + z/l) exp(-z/l)` when they agree to within
/// [`DEGENERATE_LOSS_TOLERANCE`].
pub fn hypoexp_tail(l_a: f64, l_b: f64, z: f64) -> Result<f64> {
    if !(l_a > 0.0 && l_a.is_finite() && l_b > 0.0 && l_b.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "gains must be positive and finite, got ({l_a}, {l_b})"
        )));
    }
    if z < 0.0 || z.is_nan() {
        return Err(Error::NegativeTailArg(z));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let value = if (l_a - l_b).abs() <= DEGENERATE_LOSS_TOLERANCE * l_a.max(l_b) {
        let l = 0.5 * (l_a + l_b);
        (1.0 + z / l) * (-z / l).exp()
    } else {
        (l_a * (-z / l_a).exp() - l_b * (-z / l_b).exp()) / (l_a - l_b)
    };
    Ok(value.clamp(0.0, 1.0))
}

/// Geometry of one cooperative link: the destination and relay receivers
/// plus the three path losses that enter the composition.
struct LinkGeometry {
    dest: ReceiverGeometry,
    relay: ReceiverGeometry,
    loss_sd: f64,
    loss_sr: f64,
    loss_rd: f64,
}

impl LinkGeometry {
    fn for_dest1(scn: &Scenario) -> Result<LinkGeometry> {
        Ok(LinkGeometry {
            dest: scn.dest1().polar(),
            relay: scn.relay().polar(),
            loss_sd: scn.loss_source_dest1()?,
            loss_sr: scn.loss_source_relay()?,
            loss_rd: scn.loss_relay_dest1()?,
        })
    }

    fn for_dest2(scn: &Scenario) -> Result<LinkGeometry> {
        Ok(LinkGeometry {
            dest: scn.dest2().polar(),
            relay: scn.relay().polar(),
            loss_sd: scn.loss_source_dest2()?,
            loss_sr: scn.loss_source_relay()?,
            loss_rd: scn.loss_relay_dest2()?,
        })
    }
}

fn joint_at(gain: f64, loss: f64, recv: ReceiverGeometry, ch: &ChannelParams) -> Result<f64> {
    laplace::joint(&LaplaceArg::new(gain / loss, recv), ch)
}

/// Expected combining survival `E[hypoexp_tail(l_sd, l_rd, g I)]` expressed
/// through joint factors; the removable singularity at `l_rd = l_sd` is
/// evaluated as `J(z) - z J'(z)` with `z = g / l_sd`.
fn combining_bracket(g: f64, geo: &LinkGeometry, ch: &ChannelParams) -> Result<f64> {
    if (geo.loss_rd - geo.loss_sd).abs() <= DEGENERATE_LOSS_TOLERANCE * geo.loss_rd.max(geo.loss_sd)
    {
        let z = g / (0.5 * (geo.loss_sd + geo.loss_rd));
        let arg = LaplaceArg::new(z, geo.dest);
        return Ok(laplace::joint(&arg, ch)? - z * laplace::joint_derivative(&arg, ch)?);
    }
    let j_rd = joint_at(g, geo.loss_rd, geo.dest, ch)?;
    let j_sd = joint_at(g, geo.loss_sd, geo.dest, ch)?;
    Ok((geo.loss_rd * j_rd - geo.loss_sd * j_sd) / (geo.loss_rd - geo.loss_sd))
}

/// Probability that the destination misses the broadcast and the relay
/// fails to decode (both receivers below threshold in the first slot).
fn first_slot_term(g: f64, geo: &LinkGeometry, ch: &ChannelParams) -> Result<f64> {
    let j_sd = joint_at(g, geo.loss_sd, geo.dest, ch)?;
    let j_sr = joint_at(g, geo.loss_sr, geo.relay, ch)?;
    Ok(1.0 - j_sd - j_sr + j_sd * j_sr)
}

/// Probability that the relay decodes but the power-combined observation at
/// the destination stays below threshold.
fn combining_term(g: f64, geo: &LinkGeometry, ch: &ChannelParams) -> Result<f64> {
    let j_sr = joint_at(g, geo.loss_sr, geo.relay, ch)?;
    Ok(j_sr * (1.0 - combining_bracket(g, geo, ch)?))
}

/// Full combining-scheme outage at normalized gain `g` for one destination.
fn mrc_outage(g: f64, geo: &LinkGeometry, ch: &ChannelParams) -> Result<f64> {
    let j_sd = joint_at(g, geo.loss_sd, geo.dest, ch)?;
    let j_sr = joint_at(g, geo.loss_sr, geo.relay, ch)?;
    let value = if (geo.loss_rd - geo.loss_sd).abs()
        <= DEGENERATE_LOSS_TOLERANCE * geo.loss_rd.max(geo.loss_sd)
    {
        1.0 - j_sd - j_sr + j_sd * j_sr + j_sr - j_sr * combining_bracket(g, geo, ch)?
    } else {
        let j_rd = joint_at(g, geo.loss_rd, geo.dest, ch)?;
        1.0 - j_sd - j_sr + j_sd * j_sr + j_sr
            - (geo.loss_rd * j_sr * j_rd - geo.loss_sd * j_sr * j_sd) / (geo.loss_rd - geo.loss_sd)
    };
    Ok(clamp_probability(value, "mrc outage composition"))
}

/// Pure two-hop outage at normalized gain `g` for one destination.
fn relay_outage(g: f64, geo: &LinkGeometry, ch: &ChannelParams) -> Result<f64> {
    let j_sr = joint_at(g, geo.loss_sr, geo.relay, ch)?;
    let j_rd = joint_at(g, geo.loss_rd, geo.dest, ch)?;
    Ok(clamp_probability(
        1.0 - j_sr * j_rd,
        "relay outage composition",
    ))
}

/// Outage of destination 1 under combining NOMA.
pub fn d1_mrc(scn: &Scenario) -> Result<f64> {
    match scn.noma().thresholds().gain1 {
        None => Ok(1.0),
        Some(g1) => mrc_outage(g1, &LinkGeometry::for_dest1(scn)?, scn.channel()),
    }
}

/// Outage of destination 2 under combining NOMA; both SIC stages must clear,
/// which collapses to the larger of the two normalized gains.
pub fn d2_mrc(scn: &Scenario) -> Result<f64> {
    match scn.noma().thresholds().gain_max {
        None => Ok(1.0),
        Some(gmax) => mrc_outage(gmax, &LinkGeometry::for_dest2(scn)?, scn.channel()),
    }
}

/// Outage of destination 1 under two-hop NOMA.
pub fn d1_relay(scn: &Scenario) -> Result<f64> {
    match scn.noma().thresholds().gain1 {
        None => Ok(1.0),
        Some(g1) => relay_outage(g1, &LinkGeometry::for_dest1(scn)?, scn.channel()),
    }
}

/// Outage of destination 2 under two-hop NOMA.
pub fn d2_relay(scn: &Scenario) -> Result<f64> {
    match scn.noma().thresholds().gain_max {
        None => Ok(1.0),
        Some(gmax) => relay_outage(gmax, &LinkGeometry::for_dest2(scn)?, scn.channel()),
    }
}

/// Rate-equalized orthogonal threshold: each destination is served in its
/// own two-slot transaction, so it must carry twice the spectral efficiency.
pub fn oma_threshold(rate: f64) -> f64 {
    f64::exp2(4.0 * rate) - 1.0
}

/// Combining outage of both destinations under the orthogonal baseline.
pub fn mrc_oma(scn: &Scenario) -> Result<OutageReport> {
    let ch = scn.channel();
    Ok(OutageReport {
        p_out_d1: mrc_outage(
            oma_threshold(scn.noma().rate1()),
            &LinkGeometry::for_dest1(scn)?,
            ch,
        )?,
        p_out_d2: mrc_outage(
            oma_threshold(scn.noma().rate2()),
            &LinkGeometry::for_dest2(scn)?,
            ch,
        )?,
        scheme: Scheme::MrcOma,
        feasible: true,
    })
}

/// Two-hop outage of both destinations under the orthogonal baseline.
pub fn relay_oma(scn: &Scenario) -> Result<OutageReport> {
    let ch = scn.channel();
    Ok(OutageReport {
        p_out_d1: relay_outage(
            oma_threshold(scn.noma().rate1()),
            &LinkGeometry::for_dest1(scn)?,
            ch,
        )?,
        p_out_d2: relay_outage(
            oma_threshold(scn.noma().rate2()),
            &LinkGeometry::for_dest2(scn)?,
            ch,
        )?,
        scheme: Scheme::RelayOma,
        feasible: true,
    })
}

/// Outage report for any scheme.
pub fn report(scn: &Scenario, scheme: Scheme) -> Result<OutageReport> {
    let feasible = scn.noma().thresholds().feasible();
    match scheme {
        Scheme::MrcNoma => Ok(OutageReport {
            p_out_d1: d1_mrc(scn)?,
            p_out_d2: d2_mrc(scn)?,
            scheme,
            feasible,
        }),
        Scheme::RelayNoma => Ok(OutageReport {
            p_out_d1: d1_relay(scn)?,
            p_out_d2: d2_relay(scn)?,
            scheme,
            feasible,
        }),
        Scheme::MrcOma => mrc_oma(scn),
        Scheme::RelayOma => relay_oma(scn),
    }
}

/// First building block of the destination-1 outage: probability that both
/// first-slot receptions fail. Exposed so the composition can be
/// cross-checked term by term.
pub fn d1_first_slot_term(scn: &Scenario) -> Result<f64> {
    match scn.noma().thresholds().gain1 {
        None => Ok(1.0),
        Some(g1) => first_slot_term(g1, &LinkGeometry::for_dest1(scn)?, scn.channel()),
    }
}

/// Second building block: probability that the relay decodes but the
/// combined observation fails.
pub fn d1_combining_term(scn: &Scenario) -> Result<f64> {
    match scn.noma().thresholds().gain1 {
        None => Ok(0.0),
        Some(g1) => combining_term(g1, &LinkGeometry::for_dest1(scn)?, scn.channel()),
    }
}
