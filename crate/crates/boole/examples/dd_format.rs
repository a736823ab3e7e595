// Reading and writing the DD interchange format, in both directions.

use boole::hull::format::{parse_h, parse_v};
use boole::hull::{emit_v, hull, vertices};

const SQUARE: &str = "\
* the unit square
V-representation
begin
 4 3 rational
 1 0 0
 1 1 0
 1 0 1
 1 1 1
end
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = parse_v(SQUARE)?;
    let h = hull(&v)?;
    let text = boole::hull::emit_h(&h);
    print!("{text}");

    // Facets back to vertices.
    let back = vertices(&parse_h(&text)?)?;
    print!("{}", emit_v(&back));
    assert_eq!(back.points.len(), 4);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
