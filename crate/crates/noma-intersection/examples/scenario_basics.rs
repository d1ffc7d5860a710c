//! Load a scenario from a config file and inspect its derived quantities.
//!
//! ```bash
//! cargo run --example scenario_basics
//! ```

use noma_intersection::config;
use noma_intersection::scenario::path_loss;

fn main() -> noma_intersection::Result<()> {
    let path = format!("{}/configs/default.cfg", env!("CARGO_MANIFEST_DIR"));
    let scn = config::load_scenario(path.as_ref())?;

    println!("nodes (meters, intersection at the origin):");
    for (name, pos) in [
        ("source", scn.source()),
        ("relay", scn.relay()),
        ("dest1", scn.dest1()),
        ("dest2", scn.dest2()),
    ] {
        let polar = pos.polar();
        println!(
            "  {name:<7} ({:>7.1}, {:>6.1})  distance to crossing {:8.3} m, angle {:.4} rad",
            pos.x, pos.y, polar.m, polar.theta
        );
    }

    let alpha = scn.channel().alpha();
    println!("\npath losses (alpha = {alpha}):");
    println!(
        "  source -> relay  {:.3e}",
        path_loss(&scn.source(), &scn.relay(), alpha)?
    );
    println!(
        "  source -> dest1  {:.3e}",
        path_loss(&scn.source(), &scn.dest1(), alpha)?
    );
    println!(
        "  relay  -> dest1  {:.3e}",
        path_loss(&scn.relay(), &scn.dest1(), alpha)?
    );

    let t = scn.noma().thresholds();
    println!(
        "\ndecode thresholds for rates ({}, {}) bit/s/Hz:",
        scn.noma().rate1(),
        scn.noma().rate2()
    );
    println!("  theta1 = {:.6}, theta2 = {:.6}", t.theta1, t.theta2);
    match t.gain1 {
        Some(g1) => println!(
            "  normalized gains: gain1 = {g1:.6}, gain2 = {:.6}, gain_max = {:.6}",
            t.gain2,
            t.gain_max.unwrap()
        ),
        None => println!("  power split infeasible: the first SIC stage cannot succeed"),
    }
    Ok(())
}
