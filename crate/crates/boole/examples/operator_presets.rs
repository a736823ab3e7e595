// Quantum bounds from the bundled operator expressions: the KCBS operator
// on a spin-1 pair and Cabello's 256 × 256 operator.

use std::collections::BTreeMap;

use boole::quantum::{build_with, builtin_vectors, eigenvalues, preset};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["kcbs", "cabelloT"] {
        let op = build_with(&preset(name)?, &BTreeMap::new(), &builtin_vectors)?;
        let ev = eigenvalues(&op)?;
        println!(
            "{name}: dimension {}, min {:.5}, max {:.5}",
            op.nrows(),
            ev[0],
            ev[ev.len() - 1]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
