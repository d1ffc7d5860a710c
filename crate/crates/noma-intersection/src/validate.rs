//! Cross-engine validation battery.
//!
//! Pits the closed-form engine against quadrature and against the Monte
//! Carlo oracle on one scenario, plus the structural orderings that must
//! hold regardless of parameters. Every check reports its measured delta so
//! a failure is diagnosable from the output alone.

use crate::error::Result;
use crate::laplace::{self, LaplaceArg};
use crate::monte_carlo::{self, TrialConfig};
use crate::outage::{self, Scheme};
use crate::scenario::{ChannelParams, NomaConfig, Scenario};

/// One check of the battery.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of the full battery.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for check in &self.checks {
            writeln!(
                f,
                "{} {:32} {}",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            )?;
        }
        Ok(())
    }
}

/// Battery options.
#[derive(Debug, Clone)]
pub struct ValidationOptions {
    pub mc: TrialConfig,
    /// Test hook: scales the first decode threshold inside the analytic
    /// engine only, leaving the simulator untouched. Anything other than
    /// 1.0 must make the agreement check fail (negative control).
    #[doc(hidden)]
    pub analytic_theta1_scale: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            mc: TrialConfig::new(100_000, 42),
            analytic_theta1_scale: 1.0,
        }
    }
}

/// Scenario whose rate is adjusted so the analytic engine sees a scaled
/// first threshold.
fn with_scaled_theta1(scn: &Scenario, scale: f64) -> Result<Scenario> {
    if scale == 1.0 {
        return Ok(*scn);
    }
    let theta1 = scn.noma().thresholds().theta1;
    let rate1 = 0.5 * (1.0 + scale * theta1).log2();
    Ok(scn.with_noma(NomaConfig::from_split(
        scn.noma().a1(),
        scn.noma().a2(),
        rate1,
        scn.noma().rate2(),
    )?))
}

fn check_closed_vs_quadrature(scn: &Scenario) -> Result<CheckResult> {
    let ch = scn.channel();
    if ch.alpha() != 2.0 {
        return Ok(CheckResult {
            name: "closed_form_vs_quadrature",
            passed: true,
            detail: format!("skipped: alpha = {} has no closed form", ch.alpha()),
        });
    }
    let mut worst: f64 = 0.0;
    for recv in [
        scn.relay().polar(),
        scn.dest1().polar(),
        scn.dest2().polar(),
    ] {
        for s in [1.0, 100.0, 1e4, 1e6] {
            let arg = LaplaceArg::new(s, recv);
            for road in [laplace::RoadId::X, laplace::RoadId::Y] {
                let closed = laplace::closed_form_alpha2(&arg, road, ch)?;
                let numeric = laplace::numeric(&arg, road, ch)?;
                worst = worst.max((closed - numeric).abs() / closed);
            }
        }
    }
    Ok(CheckResult {
        name: "closed_form_vs_quadrature",
        passed: worst <= 1e-6,
        detail: format!("max relative difference {worst:.3e} (tolerance 1e-6)"),
    })
}

fn check_analytic_vs_mc(scn: &Scenario, opts: &ValidationOptions) -> Result<CheckResult> {
    let analytic_scn = with_scaled_theta1(scn, opts.analytic_theta1_scale)?;
    let a1 = outage::d1_mrc(&analytic_scn)?;
    let a2 = outage::d2_mrc(&analytic_scn)?;
    let (m1, m2) = monte_carlo::estimate_outage(scn, &opts.mc)?;
    let d1 = (a1 - m1.mean).abs();
    let d2 = (a2 - m2.mean).abs();
    let passed = d1 <= 3.0 * m1.std_err && d2 <= 3.0 * m2.std_err;
    Ok(CheckResult {
        name: "analytic_vs_monte_carlo",
        passed,
        detail: format!(
            "d1 |{a1:.5} - {:.5}| = {d1:.2e} vs 3se {:.2e}; d2 |{a2:.5} - {:.5}| = {d2:.2e} vs 3se {:.2e}",
            m1.mean,
            3.0 * m1.std_err,
            m2.mean,
            3.0 * m2.std_err,
        ),
    })
}

fn check_dominance(scn: &Scenario, opts: &ValidationOptions) -> Result<CheckResult> {
    let est = monte_carlo::estimate_coupled(scn, &opts.mc)?;
    let violations = est.dominance_violations;
    let analytic_ok = outage::d1_mrc(scn)? <= outage::d1_relay(scn)? + 1e-12
        && outage::d2_mrc(scn)? <= outage::d2_relay(scn)? + 1e-12;
    Ok(CheckResult {
        name: "combining_dominates_two_hop",
        passed: violations == 0 && analytic_ok,
        detail: format!(
            "{violations} per-trial violations over {} trials; analytic ordering {}",
            opts.mc.n_trials,
            if analytic_ok { "holds" } else { "violated" }
        ),
    })
}

fn check_monotonicity(scn: &Scenario) -> Result<CheckResult> {
    let ch = scn.channel();
    let mut worst_drop: f64 = 0.0;
    for scheme in Scheme::ALL {
        let mut last = (0.0_f64, 0.0_f64);
        for &lambda in &[0.001, 0.005, 0.01, 0.02] {
            let varied = scn.with_channel(ChannelParams::new(ch.alpha(), lambda, lambda, ch.p())?);
            let r = outage::report(&varied, scheme)?;
            worst_drop = worst_drop.max(last.0 - r.p_out_d1).max(last.1 - r.p_out_d2);
            last = (r.p_out_d1, r.p_out_d2);
        }
    }
    Ok(CheckResult {
        name: "outage_monotone_in_density",
        passed: worst_drop <= 0.0,
        detail: format!("largest decrease along the density grid {worst_drop:.3e}"),
    })
}

/// Run the battery: closed form vs quadrature, analytic vs simulation,
/// coupling dominance, and density monotonicity.
pub fn run(scn: &Scenario, opts: &ValidationOptions) -> Result<ValidationReport> {
    let checks = vec![
        check_closed_vs_quadrature(scn)?,
        check_analytic_vs_mc(scn, opts)?,
        check_dominance(scn, opts)?,
        check_monotonicity(scn)?,
    ];
    Ok(ValidationReport { checks })
}
