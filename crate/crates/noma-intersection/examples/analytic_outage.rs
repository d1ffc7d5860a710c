//! Closed-form outage probabilities of all four schemes.
//!
//! ```bash
//! cargo run --example analytic_outage
//! ```

use noma_intersection::config;
use noma_intersection::outage::{self, Scheme};

fn main() -> noma_intersection::Result<()> {
    let path = format!("{}/configs/default.cfg", env!("CARGO_MANIFEST_DIR"));
    let scn = config::load_scenario(path.as_ref())?;

    println!(
        "{:<12} {:>10} {:>10}  feasible",
        "scheme", "dest 1", "dest 2"
    );
    for scheme in Scheme::ALL {
        let r = outage::report(&scn, scheme)?;
        println!(
            "{:<12} {:>10.6} {:>10.6}  {}",
            scheme.label(),
            r.p_out_d1,
            r.p_out_d2,
            r.feasible
        );
    }

    println!("\nterm-level view of the destination-1 combining outage:");
    println!(
        "  both first-slot receptions fail   {:.6}",
        outage::d1_first_slot_term(&scn)?
    );
    println!(
        "  relay decodes, combiner fails     {:.6}",
        outage::d1_combining_term(&scn)?
    );
    println!(
        "  total                             {:.6}",
        outage::d1_mrc(&scn)?
    );
    Ok(())
}
