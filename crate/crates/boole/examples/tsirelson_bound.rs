// The CHSH operator: spectrum at fixed angles, the optimizer reaching the
// Tsirelson bound 2√2, and the value in the singlet state.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use boole::quantum::{
    bell_state, builtin_vectors, chsh_operator, eigenvalues, maximize_bound, preset, project_and_bound,
    OptimizeOptions,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let t = [0.0, FRAC_PI_2, FRAC_PI_4, 3.0 * FRAC_PI_4];
    println!("spectrum at {t:?}: {:?}", eigenvalues(&chsh_operator(t))?);

    let expr = preset("chsh")?;
    let free = expr.param_names();
    let b = maximize_bound(&expr, &free, &builtin_vectors, &OptimizeOptions::default())?;
    println!("lambda_max = {:.9} (2√2 = {:.9}) after {} evaluations", b.lambda_max, 2.0 * SQRT_2, b.evaluations);
    assert!((b.lambda_max - 2.0 * SQRT_2).abs() < 1e-6);

    let op = chsh_operator([0.0, FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4]);
    let v = project_and_bound(&op, &bell_state("psi-minus")?)?;
    println!("<psi-|CHSH|psi-> = {v:.9}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
