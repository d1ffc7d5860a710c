//! Process-wide counters for rare numerical events.
//!
//! The analytic compositions clamp to [0, 1] and the field sampler resamples
//! interferers that land exactly on a receiver. Both are expected to be
//! no-ops in practice, so each occurrence is counted (and logged when it is
//! large enough to matter) instead of being silently absorbed.

use std::sync::atomic::{AtomicU64, Ordering};

static CLAMP_EVENTS: AtomicU64 = AtomicU64::new(0);
static COINCIDENCE_RESAMPLES: AtomicU64 = AtomicU64::new(0);

/// Tolerated overshoot outside [0, 1] before a clamp is considered a
/// genuine numerical problem worth warning about.
pub const CLAMP_WARN_MARGIN: f64 = 1e-9;

/// Clamp a probability composition to [0, 1], recording a warning when the
/// excursion exceeds [`CLAMP_WARN_MARGIN`].
pub(crate) fn clamp_probability(value: f64, context: &str) -> f64 {
    if (0.0..=1.0).contains(&value) {
        return value;
    }
    let excess = if value < 0.0 { -value } else { value - 1.0 };
    if excess > CLAMP_WARN_MARGIN || value.is_nan() {
        CLAMP_EVENTS.fetch_add(1, Ordering::Relaxed);
        log::warn!("{context}: composition {value} clamped to [0, 1] (excess {excess:.3e})");
    }
    value.clamp(0.0, 1.0)
}

pub(crate) fn record_coincidence_resample() {
    COINCIDENCE_RESAMPLES.fetch_add(1, Ordering::Relaxed);
}

/// Number of clamp events that exceeded the warning margin since startup.
pub fn clamp_events() -> u64 {
    CLAMP_EVENTS.load(Ordering::Relaxed)
}

/// Number of interferer positions redrawn because they coincided exactly
/// with a receiver.
pub fn coincidence_resamples() -> u64 {
    COINCIDENCE_RESAMPLES.load(Ordering::Relaxed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn in_range_values_pass_through() {
        assert_eq!(clamp_probability(0.25, "test"), 0.25);
        assert_eq!(clamp_probability(0.0, "test"), 0.0);
        assert_eq!(clamp_probability(1.0, "test"), 1.0);
    }

    #[test]
    fn small_overshoot_clamps_quietly() {
        let before = clamp_events();
        assert_eq!(clamp_probability(1.0 + 1e-12, "test"), 1.0);
        assert_eq!(clamp_probability(-1e-13, "test"), 0.0);
        assert_eq!(clamp_events(), before);
    }

    #[test]
    fn large_overshoot_is_counted() {
        let before = clamp_events();
        assert_eq!(clamp_probability(1.5, "test"), 1.0);
        assert!(clamp_events() > before);
    }
}
