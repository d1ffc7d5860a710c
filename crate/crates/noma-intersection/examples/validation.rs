//! Cross-engine validation battery on the default scenario.
//!
//! ```bash
//! cargo run --release --example validation
//! ```

use noma_intersection::config;
use noma_intersection::monte_carlo::TrialConfig;
use noma_intersection::validate::{self, ValidationOptions};

fn main() -> noma_intersection::Result<()> {
    let path = format!("{}/configs/default.cfg", env!("CARGO_MANIFEST_DIR"));
    let scn = config::load_scenario(path.as_ref())?;
    let opts = ValidationOptions {
        mc: TrialConfig::new(50_000, 42).with_window(100_000.0),
        ..ValidationOptions::default()
    };
    let report = validate::run(&scn, &opts)?;
    print!("{report}");
    std::process::exit(if report.passed() { 0 } else { 1 });
}
