//! Parameter sweeps over scenarios, emitting one row per
//! (grid point, scheme, destination) in deterministic order.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monte_carlo::{self, TrialConfig};
use crate::outage::{self, Scheme};
use crate::scenario::{ChannelParams, NomaConfig, Position, Scenario};

/// What a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Strong-message power fraction, grid inside (0.5, 1).
    A1,
    /// Signed rigid-translation offset of the whole constellation along the
    /// ray through the base receiver centroid, in meters.
    NodeDistance,
    /// Common road intensity (both roads), vehicles per meter.
    Lambda,
    /// Relay distance from the source along the segment toward the midpoint
    /// of the two destinations, in meters.
    RelayPosition,
}

impl SweepVariable {
    pub fn label(&self) -> &'static str {
        match self {
            SweepVariable::A1 => "a1",
            SweepVariable::NodeDistance => "node_distance",
            SweepVariable::Lambda => "lambda",
            SweepVariable::RelayPosition => "relay_position",
        }
    }

    pub fn parse(text: &str) -> Result<SweepVariable> {
        match text.trim().to_ascii_lowercase().as_str() {
            "a1" => Ok(SweepVariable::A1),
            "node_distance" => Ok(SweepVariable::NodeDistance),
            "lambda" => Ok(SweepVariable::Lambda),
            "relay_position" => Ok(SweepVariable::RelayPosition),
            other => Err(Error::InvalidParameter(format!(
                "unknown sweep variable `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A validated sweep description.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    variable: SweepVariable,
    grid: Vec<f64>,
    schemes: Vec<Scheme>,
    base: Scenario,
    mc: Option<TrialConfig>,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVariable,
        grid: Vec<f64>,
        schemes: Vec<Scheme>,
        base: Scenario,
        mc: Option<TrialConfig>,
    ) -> Result<SweepSpec> {
        if grid.is_empty() {
            return Err(Error::InvalidParameter(
                "sweep grid must be non-empty".into(),
            ));
        }
        if grid
            .windows(2)
            .any(|w| w[0] >= w[1] || w[0].is_nan() || w[1].is_nan())
        {
            return Err(Error::InvalidParameter(
                "sweep grid must be strictly increasing".into(),
            ));
        }
        if schemes.is_empty() {
            return Err(Error::InvalidParameter(
                "sweep needs at least one scheme".into(),
            ));
        }
        match variable {
            SweepVariable::A1 => {
                if grid.iter().any(|&a1| !(a1 > 0.5 && a1 < 1.0)) {
                    return Err(Error::InvalidParameter(
                        "a1 grid must lie strictly inside (0.5, 1)".into(),
                    ));
                }
            }
            SweepVariable::Lambda => {
                if grid.iter().any(|&l| l < 0.0 || !l.is_finite()) {
                    return Err(Error::InvalidParameter(
                        "lambda grid must be nonnegative".into(),
                    ));
                }
            }
            SweepVariable::RelayPosition => {
                let reach = relay_track(&base).1;
                if grid.iter().any(|&g| !(g > 0.0 && g <= reach)) {
                    return Err(Error::InvalidParameter(format!(
                        "relay positions must lie in (0, {reach}] along the source-to-midpoint segment"
                    )));
                }
            }
            SweepVariable::NodeDistance => {
                if grid.iter().any(|&d| !d.is_finite()) {
                    return Err(Error::InvalidParameter(
                        "node distance grid must be finite".into(),
                    ));
                }
            }
        }
        let spec = SweepSpec {
            variable,
            grid,
            schemes,
            base,
            mc,
        };
        // Every grid point must yield a constructible scenario.
        for &value in &spec.grid {
            spec.scenario_at(value)?;
        }
        Ok(spec)
    }

    pub fn variable(&self) -> SweepVariable {
        self.variable
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn schemes(&self) -> &[Scheme] {
        &self.schemes
    }

    pub fn base(&self) -> &Scenario {
        &self.base
    }

    pub fn mc(&self) -> Option<&TrialConfig> {
        self.mc.as_ref()
    }

    /// Replace the Monte Carlo settings (None disables the MC columns).
    pub fn with_mc(mut self, mc: Option<TrialConfig>) -> SweepSpec {
        self.mc = mc;
        self
    }

    /// The scenario evaluated at one grid value.
    pub fn scenario_at(&self, value: f64) -> Result<Scenario> {
        let base = &self.base;
        match self.variable {
            SweepVariable::A1 => Ok(base.with_noma(NomaConfig::new(
                value,
                base.noma().rate1(),
                base.noma().rate2(),
            )?)),
            SweepVariable::Lambda => {
                let ch = base.channel();
                Ok(base.with_channel(ChannelParams::new(ch.alpha(), value, value, ch.p())?))
            }
            SweepVariable::NodeDistance => {
                let (vx, vy) = approach_direction(base);
                let shift = |pos: Position| Position::new(pos.x + value * vx, pos.y + value * vy);
                base.with_positions(
                    shift(base.source()),
                    shift(base.relay()),
                    shift(base.dest1()),
                    shift(base.dest2()),
                )
            }
            SweepVariable::RelayPosition => {
                let ((ux, uy), _) = relay_track(base);
                let s = base.source();
                base.with_positions(
                    s,
                    Position::new(s.x + value * ux, s.y + value * uy),
                    base.dest1(),
                    base.dest2(),
                )
            }
        }
    }
}

/// Unit direction of the ray from the intersection through the receiver
/// centroid of the base scenario; falls back to the road-X axis when the
/// centroid sits on the intersection.
fn approach_direction(base: &Scenario) -> (f64, f64) {
    let cx = (base.relay().x + base.dest1().x + base.dest2().x) / 3.0;
    let cy = (base.relay().y + base.dest1().y + base.dest2().y) / 3.0;
    let norm = cx.hypot(cy);
    if norm == 0.0 {
        (1.0, 0.0)
    } else {
        (cx / norm, cy / norm)
    }
}

/// Unit direction and length of the segment from the source to the midpoint
/// of the two destinations.
fn relay_track(base: &Scenario) -> ((f64, f64), f64) {
    let s = base.source();
    let mx = 0.5 * (base.dest1().x + base.dest2().x);
    let my = 0.5 * (base.dest1().y + base.dest2().y);
    let (dx, dy) = (mx - s.x, my - s.y);
    let len = dx.hypot(dy);
    if len == 0.0 {
        ((1.0, 0.0), 0.0)
    } else {
        ((dx / len, dy / len), len)
    }
}

/// One output row of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub variable: SweepVariable,
    pub value: f64,
    pub scheme: Scheme,
    pub dest: u8,
    pub analytic: f64,
    pub mc_mean: Option<f64>,
    pub mc_std_err: Option<f64>,
    pub feasible: bool,
}

/// Evaluate the sweep. Grid points are dispatched to parallel workers;
/// rows come back in grid order, then scheme order, then destination order.
/// Infeasible power splits are emitted with `feasible = false` and outage 1,
/// never dropped.
pub fn run(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let per_point: Vec<Result<Vec<SweepRow>>> = spec
        .grid
        .par_iter()
        .map(|&value| evaluate_point(spec, value))
        .collect();
    let mut rows = Vec::with_capacity(spec.grid.len() * spec.schemes.len() * 2);
    for point in per_point {
        rows.extend(point?);
    }
    Ok(rows)
}

fn evaluate_point(spec: &SweepSpec, value: f64) -> Result<Vec<SweepRow>> {
    let scn = spec.scenario_at(value)?;
    let coupled = match &spec.mc {
        Some(cfg) => Some(monte_carlo::estimate_coupled(&scn, cfg)?),
        None => None,
    };
    let mut rows = Vec::with_capacity(spec.schemes.len() * 2);
    for &scheme in &spec.schemes {
        let report = outage::report(&scn, scheme)?;
        let mc = coupled.as_ref().map(|c| match scheme {
            Scheme::MrcNoma => c.mrc_noma,
            Scheme::RelayNoma => c.relay_noma,
            Scheme::MrcOma => c.mrc_oma,
            Scheme::RelayOma => c.relay_oma,
        });
        for (dest, analytic) in [(1u8, report.p_out_d1), (2u8, report.p_out_d2)] {
            let est = mc.map(|pair| if dest == 1 { pair.0 } else { pair.1 });
            rows.push(SweepRow {
                variable: spec.variable,
                value,
                scheme,
                dest,
                analytic,
                mc_mean: est.map(|e| e.mean),
                mc_std_err: est.map(|e| e.std_err),
                feasible: report.feasible,
            });
        }
    }
    Ok(rows)
}

/// Write rows as CSV with a fixed header. Identical inputs produce
/// byte-identical output.
pub fn write_csv<W: Write>(rows: &[SweepRow], spec: &SweepSpec, out: &mut W) -> io::Result<()> {
    let geometry_note = match spec.variable {
        SweepVariable::A1 => "value is the strong-message power fraction a1 (a2 = 1 - a1)",
        SweepVariable::NodeDistance => {
            "value is the signed rigid-translation offset of all four nodes, in meters, \
             along the ray from the intersection through the base receiver centroid"
        }
        SweepVariable::Lambda => "value is the common road intensity in vehicles per meter",
        SweepVariable::RelayPosition => {
            "value is the relay's distance from the source, in meters, along the segment \
             toward the midpoint of the destinations"
        }
    };
    writeln!(
        out,
        "# sweep over {}: {}",
        spec.variable.label(),
        geometry_note
    )?;
    writeln!(
        out,
        "# oma rows are the modeled rate-equalized orthogonal baseline \
         (full power, per-destination threshold 2^(4*rate) - 1)"
    )?;
    writeln!(
        out,
        "variable,value,scheme,dest,analytic,mc_mean,mc_stderr,feasible"
    )?;
    for row in rows {
        let mc_mean = row.mc_mean.map(|v| v.to_string()).unwrap_or_default();
        let mc_std_err = row.mc_std_err.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.variable,
            row.value,
            row.scheme,
            row.dest,
            row.analytic,
            mc_mean,
            mc_std_err,
            row.feasible
        )?;
    }
    Ok(())
}

/// Render rows to a CSV string.
pub fn csv_string(rows: &[SweepRow], spec: &SweepSpec) -> String {
    let mut buf = Vec::new();
    write_csv(rows, spec, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is ascii")
}
