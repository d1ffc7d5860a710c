//! Interference Laplace transforms: closed form against quadrature.
//!
//! ```bash
//! cargo run --release --example laplace_transforms
//! ```

use noma_intersection::laplace::{self, LaplaceArg, RoadId};
use noma_intersection::scenario::{ChannelParams, Position};

fn main() -> noma_intersection::Result<()> {
    let ch = ChannelParams::new(2.0, 0.01, 0.01, 0.5)?;
    let receiver = Position::new(86.6, 50.0).polar();

    println!("receiver 100 m from the crossing, 30 degrees off road X");
    println!(
        "{:>10}  {:>12}  {:>12}  {:>9}",
        "s", "closed form", "quadrature", "rel diff"
    );
    for exp in 0..=6 {
        let s = 10.0_f64.powi(exp - 2);
        let arg = LaplaceArg::new(s, receiver);
        let closed = laplace::closed_form_alpha2(&arg, RoadId::X, &ch)?;
        let numeric = laplace::numeric(&arg, RoadId::X, &ch)?;
        println!(
            "{s:>10.2}  {closed:>12.8}  {numeric:>12.8}  {:>9.1e}",
            (closed - numeric).abs() / closed
        );
    }

    println!("\njoint factor over both roads, and how it grows toward 1 with distance:");
    for m in [0.0, 10.0, 50.0, 200.0, 1000.0] {
        let recv = Position::new(m, 0.0).polar();
        let j = laplace::joint(&LaplaceArg::new(100.0, recv), &ch)?;
        println!("  m = {m:>6.0} m  joint = {j:.6}");
    }

    // Any exponent above 1 goes through adaptive quadrature.
    let ch3 = ChannelParams::new(3.0, 0.01, 0.01, 0.5)?;
    let j3 = laplace::joint(&LaplaceArg::new(100.0, receiver), &ch3)?;
    println!("\nalpha = 3 (quadrature only): joint at s = 100 is {j3:.6}");
    Ok(())
}
