//! Outage versus vehicle density on both roads, as CSV on stdout.
//!
//! ```bash
//! cargo run --release --example density_sweep > density.csv
//! ```

use noma_intersection::{config, sweep};

fn main() -> noma_intersection::Result<()> {
    let path = format!("{}/configs/sweep_density.cfg", env!("CARGO_MANIFEST_DIR"));
    let spec = config::load_sweep(path.as_ref())?;
    let rows = sweep::run(&spec)?;
    print!("{}", sweep::csv_string(&rows, &spec));
    Ok(())
}
