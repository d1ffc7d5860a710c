//! Outage versus the constellation's distance to the intersection.
//!
//! The base placement centers the receivers on the crossing; the sweep
//! translates all four nodes rigidly through it, so the zero offset is the
//! worst case for both destinations.
//!
//! ```bash
//! cargo run --release --example intersection_distance_sweep > distance.csv
//! ```

use noma_intersection::{config, sweep};

fn main() -> noma_intersection::Result<()> {
    let path = format!(
        "{}/configs/sweep_intersection_distance.cfg",
        env!("CARGO_MANIFEST_DIR")
    );
    let spec = config::load_sweep(path.as_ref())?;
    let rows = sweep::run(&spec)?;
    print!("{}", sweep::csv_string(&rows, &spec));
    Ok(())
}
