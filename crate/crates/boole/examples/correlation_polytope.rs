// Boole's conditions of possible experience for two observers with two
// dichotomic observables each: the 16 facets of the CHSH polytope.

use boole::builtin::{logic_text, terms_text};
use boole::hull::rat::int;
use boole::hull::{emit_h, hull};
use boole::logic::parse_logic;
use boole::vertex_gen::{gen_state_vertices, parse_terms};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let logic = parse_logic(logic_text("epr-2x2").unwrap())?;
    let terms = parse_terms(terms_text("chsh-expect").unwrap(), &logic)?;
    println!("terms: {}", terms.labels().join(" "));
    let v = gen_state_vertices(&logic, &terms)?;
    let h = hull(&v.deduped())?;
    print!("{}", emit_h(&h));
    assert_eq!(h.inequalities.len(), 16);
    let chsh = h.inequalities.iter().filter(|c| c.b == int(2)).count();
    println!("{chsh} of them are CHSH inequalities (constant term 2)");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
