// Atoms that no two-valued state can tell apart, and the same phenomenon
// for three-colorings.

use boole::builtin::logic_text;
use boole::logic::{enumerate_colorings, enumerate_states, parse_logic, unseparated_pairs};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g3 = parse_logic(logic_text("gamma3").unwrap())?;
    let states = enumerate_states(&g3);
    let pairs = unseparated_pairs(&g3, &states);
    println!("gamma3: {} states, {} unseparated pairs", states.len(), pairs.len());
    for (x, y) in &pairs {
        println!("  {} ~ {}", g3.atom_name(*x), g3.atom_name(*y));
    }

    // With the extra context {a13, c, b13}, a7 and b7 get the same color in
    // every admissible three-coloring.
    let tk = parse_logic(logic_text("gamma3-tkadlec").unwrap())?;
    let cs = enumerate_colorings(&tk, 3, true)?;
    let (a7, b7) = (tk.atom_index("a7").unwrap(), tk.atom_index("b7").unwrap());
    let same = cs.iter().all(|c| c.colors[a7] == c.colors[b7]);
    println!("gamma3-tkadlec: {} colorings up to relabeling, a7 and b7 always share a color: {same}", cs.len());
    assert!(same);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
