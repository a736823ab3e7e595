// Checking a vector realization of a logic, and recovering a logic from a
// set of vectors through the cliques of its orthogonality graph.

use boole::builtin::{logic_text, vector_text};
use boole::logic::parse_logic;
use boole::realization::{derive_logic, parse_vectors, verify_realization};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let logic = parse_logic(logic_text("cabello18").unwrap())?;
    let vectors = parse_vectors(vector_text("cabello18").unwrap())?;
    let report = verify_realization(&logic, &vectors, 0.0)?;
    println!("cabello18 in R^{}:\n{report}", vectors.dim);
    assert!(report.passed());

    let yu_oh = parse_vectors(vector_text("yu-oh").unwrap())?;
    let derived = derive_logic("yu-oh", &yu_oh, 1e-10)?;
    println!("derived from {} vectors:", yu_oh.vectors.len());
    print!("{}", derived.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
