// Every bundled hull scenario, recomputed and compared with its expected
// H-representation.

use boole::hull::hull;
use boole::vertex_gen::{builtin_scenario, scenario_names};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in scenario_names() {
        let s = builtin_scenario(&name)?;
        let h = hull(&s.vertices()?.deduped())?;
        let check = s.check(&h);
        println!(
            "{name:<28} {:>4} inequalities {:>3} linearities  {}",
            h.inequalities.len(),
            h.linearities.len(),
            if check.passed() { "ok" } else { "MISMATCH" }
        );
        if !check.passed() {
            return Err(format!("{name}:\n{check}").into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
