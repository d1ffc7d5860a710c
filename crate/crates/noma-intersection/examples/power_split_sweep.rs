//! Outage versus the strong-message power fraction, as CSV on stdout.
//!
//! ```bash
//! cargo run --release --example power_split_sweep > power_split.csv
//! ```

use noma_intersection::{config, sweep};

fn main() -> noma_intersection::Result<()> {
    let path = format!(
        "{}/configs/sweep_power_split.cfg",
        env!("CARGO_MANIFEST_DIR")
    );
    let spec = config::load_sweep(path.as_ref())?;
    let rows = sweep::run(&spec)?;
    print!("{}", sweep::csv_string(&rows, &spec));
    Ok(())
}
