//! Spin-j observables, their spectral projectors and the two-particle
//! singlet state.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::eigen::eigh;
use super::{CMatrix, CVector, QuantumError};

/// Angular momentum `j`, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub const HALF: Spin = Spin { twice: 1 };
    pub const ONE: Spin = Spin { twice: 2 };
    pub const THREE_HALVES: Spin = Spin { twice: 3 };

    pub fn new(j: f64) -> Result<Spin, QuantumError> {
        let t = 2.0 * j;
        if !(t >= 0.0 && t.fract() == 0.0 && t <= 64.0) {
            return Err(QuantumError::InvalidSpin(j));
        }
        Ok(Spin { twice: t as u32 })
    }

    pub fn from_twice(twice: u32) -> Spin {
        Spin { twice }
    }

    pub fn j(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.twice as usize + 1
    }

    /// Magnetic quantum numbers in basis order `j, j−1, …, −j`.
    pub fn basis_m(self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.j() - k as f64).collect()
    }

    /// Basis index of `m`.
    pub fn index_of(self, m: f64) -> Result<usize, QuantumError> {
        let k = self.j() - m;
        if k.fract() != 0.0 || k < 0.0 || k >= self.dim() as f64 {
            return Err(QuantumError::InvalidM { m, j: self.j() });
        }
        Ok(k as usize)
    }
}

/// A direction on the unit sphere: polar angle `theta`, azimuth `phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Direction {
        Direction { theta, phi }
    }

    pub fn unit(self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(Mx, My, Mz)` from the ladder operators, in the basis `m = j..−j`.
pub fn spin_components(s: Spin) -> (CMatrix, CMatrix, CMatrix) {
    let d = s.dim();
    let j = s.j();
    let m = s.basis_m();
    let mut up = CMatrix::zeros(d, d);
    for k in 1..d {
        // J+ |m⟩ = sqrt(j(j+1) − m(m+1)) |m+1⟩, and m+1 sits one index up.
        up[(k - 1, k)] = c((j * (j + 1.0) - m[k] * (m[k] + 1.0)).sqrt());
    }
    let down = up.adjoint();
    let mx = (&up + &down) * c(0.5);
    let my = (&up - &down) * Complex64::new(0.0, -0.5);
    let mz = CMatrix::from_diagonal(&m.iter().map(|&x| c(x)).collect::<Vec<_>>().into());
    (mx, my, mz)
}

/// `S(θ,φ) = Mx sinθ cosφ + My sinθ sinφ + Mz cosθ`.
pub fn spin_operator(s: Spin, dir: Direction) -> CMatrix {
    let (mx, my, mz) = spin_components(s);
    let [x, y, z] = dir.unit();
    mx * c(x) + my * c(y) + mz * c(z)
}

/// The dichotomic spin-½ observable `σ(θ,φ) = 2 S(θ,φ)` with outcomes ±1.
pub fn sigma(dir: Direction) -> CMatrix {
    spin_operator(Spin::HALF, dir) * c(2.0)
}

/// Eigenstates of `S(θ,φ)` ordered by `m = −j..j`, each with its first
/// nonzero component real and positive.
pub fn eigenstates(s: Spin, dir: Direction) -> Result<Vec<CVector>, QuantumError> {
    let e = eigh(&spin_operator(s, dir))?;
    Ok((0..s.dim()).map(|k| e.vectors.column(k).into_owned()).collect())
}

/// Spectral projectors `F_m` of `S(θ,φ)`, indexed by `m = −j..j`.
pub fn projectors(s: Spin, dir: Direction) -> Result<Vec<CMatrix>, QuantumError> {
    Ok(eigenstates(s, dir)?.iter().map(|v| v * v.adjoint()).collect())
}

/// `Σ_m (−1)^{j−m} |m, −m⟩ / √(2j+1)`, with `|k1⟩⊗|k2⟩` at index `k1·d + k2`.
pub fn singlet(s: Spin) -> CVector {
    let d = s.dim();
    let norm = 1.0 / (d as f64).sqrt();
    let mut psi = CVector::zeros(d * d);
    for k in 0..d {
        // m = j − k, −m = j − (d − 1 − k)
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        psi[k * d + (d - 1 - k)] = c(sign * norm);
    }
    psi
}

/// `|ψ⟩⟨ψ|`.
pub fn density(psi: &CVector) -> CMatrix {
    psi * psi.adjoint()
}

fn expectation(psi: &CVector, op: &CMatrix) -> f64 {
    (psi.adjoint() * op * psi)[(0, 0)].re
}

/// `Tr{ρ_singlet · F_{m1}(d1) ⊗ F_{m2}(d2)}`.
pub fn joint_probability(s: Spin, d1: Direction, d2: Direction, m1: f64, m2: f64) -> Result<f64, QuantumError> {
    // projectors are indexed from −j, the basis from +j
    let i1 = s.dim() - 1 - s.index_of(m1)?;
    let i2 = s.dim() - 1 - s.index_of(m2)?;
    let f1 = &projectors(s, d1)?[i1];
    let f2 = &projectors(s, d2)?[i2];
    let rho = density(&singlet(s));
    Ok((rho * f1.kronecker(f2)).trace().re)
}

/// `Tr{ρ_singlet · S(d1) ⊗ S(d2)}`.
pub fn correlation(s: Spin, d1: Direction, d2: Direction) -> f64 {
    expectation(&singlet(s), &spin_operator(s, d1).kronecker(&spin_operator(s, d2)))
}

/// `−(j(j+1)/3)[cosθ1 cosθ2 + cos(φ1−φ2) sinθ1 sinθ2]`.
pub fn correlation_closed_form(s: Spin, d1: Direction, d2: Direction) -> f64 {
    let j = s.j();
    let bracket = d1.theta.cos() * d2.theta.cos() + (d1.phi - d2.phi).cos() * d1.theta.sin() * d2.theta.sin();
    -(j * (j + 1.0) / 3.0) * bracket
}

fn check_angle(theta: f64) -> Result<(), QuantumError> {
    if !(0.0..=PI).contains(&theta) {
        return Err(QuantumError::AngleOutOfRange(theta));
    }
    Ok(())
}

/// Classical dichotomic correlation at relative angle `θ`: `2θ/π − 1`.
pub fn classical_correlation(theta: f64) -> Result<f64, QuantumError> {
    check_angle(theta)?;
    Ok(2.0 * theta / PI - 1.0)
}

/// Singlet spin-½ correlation, ±1-normalized: `−cos θ`.
pub fn quantum_correlation(theta: f64) -> Result<f64, QuantumError> {
    check_angle(theta)?;
    Ok(-theta.cos())
}

/// Classical minus quantum: `−1 + 2θ/π + cos θ`.
pub fn delta_e(theta: f64) -> Result<f64, QuantumError> {
    Ok(classical_correlation(theta)? - quantum_correlation(theta)?)
}

/// The "stronger-than-quantum" correlation `sgn(θ − π/2)`.
pub fn stronger_than_quantum(theta: f64) -> Result<f64, QuantumError> {
    check_angle(theta)?;
    let x = theta - PI / 2.0;
    Ok(if x == 0.0 { 0.0 } else { x.signum() })
}
