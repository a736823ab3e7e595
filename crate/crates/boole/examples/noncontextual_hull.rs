// Noncontextual hidden variables: every atom gets a sign, and each context
// contributes the product of its signs. The pentagon gives the 32-vertex
// cube; Cabello's logic gives 256 vertices and 274 facets.

use boole::builtin::logic_text;
use boole::hull::hull;
use boole::logic::parse_logic;
use boole::vertex_gen::{gen_noncontextual_vertices, NONCONTEXTUAL_ATOM_LIMIT};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, vertices, facets) in [("pentagon", 32, 10), ("cabello18", 256, 274)] {
        let logic = parse_logic(logic_text(name).unwrap())?;
        let v = gen_noncontextual_vertices(&logic, NONCONTEXTUAL_ATOM_LIMIT)?;
        let h = hull(&v)?;
        println!("{name}: {} vertices, {} facets", v.points.len(), h.inequalities.len());
        assert_eq!((v.points.len(), h.inequalities.len()), (vertices, facets));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
