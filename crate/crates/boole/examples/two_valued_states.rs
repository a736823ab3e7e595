// Two-valued states of small logics, and the parity argument that rules
// them out for Cabello's 18-atom logic.
//
// Run with `cargo run --example two_valued_states`.

use boole::builtin::logic_text;
use boole::logic::{enumerate_states, parity_certificate, parse_logic, partition_logic};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pentagon = parse_logic(logic_text("pentagon").unwrap())?;
    let states = enumerate_states(&pentagon);
    println!("pentagon: {} states", states.len());
    for (i, s) in states.iter().enumerate() {
        println!("  s{:<2} {s}", i + 1);
    }
    assert_eq!(states.len(), 11);

    // Each atom becomes the set of states in which it is true.
    let p = partition_logic(&states, &pentagon)?;
    println!("a1 is true in states {:?}", p.blocks[pentagon.atom_index("a1").unwrap()]);

    let cabello = parse_logic(logic_text("cabello18").unwrap())?;
    assert!(enumerate_states(&cabello).is_empty());
    let cert = parity_certificate(&cabello).ok_or("expected a parity certificate")?;
    println!("cabello18: no states; {cert}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
