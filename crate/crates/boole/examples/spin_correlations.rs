// Singlet correlations of spin observables, against the closed form, and
// the largest gap between classical and quantum correlations.

use std::f64::consts::PI;

use boole::quantum::spin::{correlation, correlation_closed_form, delta_e, joint_probability};
use boole::quantum::{Direction, Spin};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (d1, d2) = (Direction::new(0.4, 1.1), Direction::new(2.0, -0.3));
    for s in [Spin::HALF, Spin::ONE, Spin::THREE_HALVES] {
        let (t, c) = (correlation(s, d1, d2), correlation_closed_form(s, d1, d2));
        println!("j = {}: trace {t:+.12}, closed form {c:+.12}", s.j());
        assert!((t - c).abs() < 1e-10);
    }
    let same = joint_probability(Spin::HALF, d1, d1, 0.5, 0.5)?;
    println!("P(+,+) along equal directions: {same:.2e}");

    // ΔE(θ) = −1 + 2θ/π + cos θ peaks where sin θ = 2/π.
    let theta = (2.0 / PI).asin();
    println!("max ΔE = {:.6} at θ = {theta:.6}", delta_e(theta)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
