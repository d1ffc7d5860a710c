//! Outage versus relay placement between the source and the destinations.
//!
//! Both destinations sit 100 m from the source; the relay slides along the
//! segment toward their midpoint. The two-hop scheme is best served by a
//! mid-segment relay, while power combining keeps the direct observation
//! and prefers the relay near the destinations.
//!
//! ```bash
//! cargo run --release --example relay_placement_sweep > relay.csv
//! ```

use noma_intersection::{config, sweep};

fn main() -> noma_intersection::Result<()> {
    let path = format!(
        "{}/configs/sweep_relay_position.cfg",
        env!("CARGO_MANIFEST_DIR")
    );
    let spec = config::load_sweep(path.as_ref())?;
    let rows = sweep::run(&spec)?;
    print!("{}", sweep::csv_string(&rows, &spec));
    Ok(())
}
