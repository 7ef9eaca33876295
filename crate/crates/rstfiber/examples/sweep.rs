//! Sweep one root through a valuation range and tabulate how the fiber
//! invariants move: disc counts flip exactly at the threshold B.

use rstfiber::report::{run_sweep, InputSpec, Overrides};
use rstfiber::Result;

fn main() -> Result<()> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/quintic.json"
    ))
    .expect("example data ships with the crate");
    let input = InputSpec::from_json(&text)?.normalized(&Overrides::default())?;
    // rows are independent; four workers, merged in order
    print!("{}", run_sweep(&input, 4)?);
    Ok(())
}
