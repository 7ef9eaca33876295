//! Emit the dual graph of the special fiber as Graphviz DOT, for a
//! configuration whose hub cluster degenerates to two crossing lines.

use rstfiber::report::{analyze, emit_dot, InputSpec, Overrides};
use rstfiber::Result;

fn main() -> Result<()> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/uebereven.json"
    ))
    .expect("example data ships with the crate");
    let input = InputSpec::from_json(&text)?.normalized(&Overrides::default())?;
    let a = analyze(&input, None)?;
    print!("{}", emit_dot(&a));
    Ok(())
}
