// Driving the command line in-process, as a script would.

use boole::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let out = run(["boole", "states", "builtin:firefly"]);
    print!("{}", out.stdout);
    let out = run(["boole", "hull", "--scenario", "bwf-2x2"]);
    eprint!("{}", out.stderr);
    let out = run(["boole", "states", "builtin:cabello18"]);
    println!("cabello18 exits with {}", out.code);
    if out.code != boole::cli::EXIT_NO_STATES {
        return Err("expected the no-states exit code".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
