//! Quantum bounds by the min-max principle: substitute operators for the
//! terms of a classical inequality and read the bounds off the spectrum.
//!
//! All arithmetic here is double precision.

pub mod eigen;
pub mod operator;
pub mod optimize;
pub mod spin;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::builtin::{operator_text, vector_text};
use crate::realization::{parse_vectors, Realization};

pub use eigen::{eigenvalues, eigh, Eigh};
pub use operator::{build_operator, parse_operator, OperatorExpr};
pub use optimize::{maximize, GridReport, Maximum, OptimizeOptions};
pub use spin::{Direction, Spin};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[derive(Debug, Error, PartialEq)]
pub enum QuantumError {
    #[error("spin {0} is not a nonnegative half-integer")]
    InvalidSpin(f64),
    #[error("m = {m} is not a magnetic quantum number of spin {j}")]
    InvalidM { m: f64, j: f64 },
    #[error("angle {0} outside [0, pi]")]
    AngleOutOfRange(f64),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("state is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("label `{0}` is not bound")]
    UnboundLabel(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("site {site} out of range (operator has {sites} sites)")]
    SiteOutOfRange { site: usize, sites: usize },
    #[error("no vector file `{0}`")]
    UnknownVectors(String),
    #[error("vector file `{file}` has no atom `{atom}`")]
    UnknownAtom { file: String, atom: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("nothing to optimize: no free parameters")]
    NoFreeParameters,
}

/// Resolves `proj` bindings against the bundled vector files.
pub fn builtin_vectors(name: &str) -> Option<Realization> {
    parse_vectors(vector_text(name)?).ok()
}

/// A bundled operator expression by name (`chsh`, `kcbs`, `cabelloT`).
pub fn preset(name: &str) -> Result<OperatorExpr, QuantumError> {
    let text = operator_text(name).ok_or_else(|| QuantumError::UnknownPreset(name.to_string()))?;
    parse_operator(text)
}

/// Builds an expression with its default parameters, overridden by
/// `overrides`.
pub fn build_with(
    expr: &OperatorExpr,
    overrides: &BTreeMap<String, f64>,
    vectors: &dyn Fn(&str) -> Option<Realization>,
) -> Result<CMatrix, QuantumError> {
    let mut params = expr.default_params();
    for (k, v) in overrides {
        if !params.contains_key(k) {
            return Err(QuantumError::UnknownParam(k.clone()));
        }
        params.insert(k.clone(), *v);
    }
    build_operator(expr, &expr.bind(&params, vectors)?)
}

/// Two-qubit Bell states by name: `psi-minus`, `psi-plus`, `phi-minus`,
/// `phi-plus`.
pub fn bell_state(name: &str) -> Result<CVector, QuantumError> {
    let r = FRAC_1_SQRT_2;
    let v = match name {
        "psi-minus" => [0.0, r, -r, 0.0],
        "psi-plus" => [0.0, r, r, 0.0],
        "phi-minus" => [r, 0.0, 0.0, -r],
        "phi-plus" => [r, 0.0, 0.0, r],
        _ => return Err(QuantumError::UnknownState(name.to_string())),
    };
    Ok(CVector::from_iterator(4, v.iter().map(|&x| Complex64::new(x, 0.0))))
}

/// `⟨ψ|T|ψ⟩`: the value of `E_ψ T E_ψ` on its range.
pub fn project_and_bound(op: &CMatrix, state: &CVector) -> Result<f64, QuantumError> {
    eigen::check_hermitian(op)?;
    if state.len() != op.nrows() {
        return Err(QuantumError::Dimension {
            expected: op.nrows(),
            found: state.len(),
        });
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(QuantumError::NotUnit(norm));
    }
    Ok((state.adjoint() * op * state)[(0, 0)].re)
}

/// `σ(t1)⊗σ(t3) + σ(t1)⊗σ(t4) + σ(t2)⊗σ(t3) − σ(t2)⊗σ(t4)` with in-plane
/// directions at azimuths `t`.
pub fn chsh_operator(t: [f64; 4]) -> CMatrix {
    let s = |phi: f64| spin::sigma(Direction::new(std::f64::consts::FRAC_PI_2, phi));
    let (a1, a2, b1, b2) = (s(t[0]), s(t[1]), s(t[2]), s(t[3]));
    a1.kronecker(&b1) + a1.kronecker(&b2) + a2.kronecker(&b1) - a2.kronecker(&b2)
}

/// `∓2√(1 ∓ sin(t1−t2) sin(t3−t4))`, ascending.
pub fn chsh_eigen_formula(t: [f64; 4]) -> [f64; 4] {
    let p = (t[0] - t[1]).sin() * (t[2] - t[3]).sin();
    let a = 2.0 * (1.0 - p).max(0.0).sqrt();
    let b = 2.0 * (1.0 + p).max(0.0).sqrt();
    let mut v = [-a, a, -b, b];
    v.sort_by(f64::total_cmp);
    v
}

/// Result of maximizing the top eigenvalue over some parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Bound {
    pub lambda_max: f64,
    pub params: Vec<(String, f64)>,
    pub evaluations: usize,
    pub grid: GridReport,
}

/// Maximizes `λ_max` of the expression over the named parameters; the other
/// parameters keep their defaults.
pub fn maximize_bound(
    expr: &OperatorExpr,
    free: &[&str],
    vectors: &(dyn Fn(&str) -> Option<Realization> + Sync),
    options: &OptimizeOptions,
) -> Result<Bound, QuantumError> {
    for p in free {
        if !expr.params.iter().any(|(n, _)| n == p) {
            return Err(QuantumError::UnknownParam(p.to_string()));
        }
    }
    let base = expr.default_params();
    let objective = |x: &[f64]| {
        let mut params = base.clone();
        for (name, v) in free.iter().zip(x) {
            params.insert(name.to_string(), *v);
        }
        let m = build_operator(expr, &expr.bind(&params, vectors)?)?;
        Ok(*eigenvalues(&m)?.last().unwrap())
    };
    let m = maximize(objective, free.len(), options)?;
    Ok(Bound {
        lambda_max: m.value,
        params: free.iter().map(|s| s.to_string()).zip(m.x).collect(),
        evaluations: m.evaluations,
        grid: m.grid,
    })
}
