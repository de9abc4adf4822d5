//! The three built-in worked examples, as JSON reports.
//!
//! Run with `cargo run --example worked_examples -- [1|2|3]`.

use vekua::cli::{example_report, EXAMPLES};

fn main() -> vekua::Result<()> {
    let only: Option<u8> = std::env::args().nth(1).and_then(|s| s.parse().ok());
    for ex in &EXAMPLES {
        let n = ex.n;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let report = example_report(n)?;
        println!("# example {n}: K = {}, Phi = {}", ex.k, ex.phi);
        println!("{}", report.to_json()?);
    }
    Ok(())
}
