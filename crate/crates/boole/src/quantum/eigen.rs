//! Hermitian eigensolver: cyclic complex Jacobi.

use num_complex::Complex64;

use super::{CMatrix, QuantumError};

const SWEEP_CAP: usize = 100;
const HERMITIAN_TOL: f64 = 1e-12;

/// Largest entry of `m − m†`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn check_hermitian(m: &CMatrix) -> Result<(), QuantumError> {
    if !m.is_square() {
        return Err(QuantumError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let d = hermitian_deviation(m);
    if d > HERMITIAN_TOL || d.is_nan() {
        return Err(QuantumError::NotHermitian(d));
    }
    Ok(())
}

/// A Hermitian spectral decomposition: ascending eigenvalues and the
/// matching orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
    pub sweeps: usize,
}

fn off_norm2(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix. Each
/// eigenvector is scaled so that its first nonzero component is real and
/// positive.
pub fn eigh(h: &CMatrix) -> Result<Eigh, QuantumError> {
    check_hermitian(h)?;
    let n = h.nrows();
    let mut a = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let mut v = CMatrix::identity(n, n);
    let threshold = (1e-13 * a.norm()).powi(2);
    let mut sweeps = 0;
    while off_norm2(&a) > threshold {
        if sweeps == SWEEP_CAP {
            return Err(QuantumError::NoConvergence(SWEEP_CAP));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        let mut col = v.column(i).into_owned();
        if let Some(lead) = col.iter().find(|z| z.norm() > 1e-12).copied() {
            col *= lead.conj() / lead.norm();
        }
        vectors.set_column(k, &col);
    }
    Ok(Eigh { values, vectors, sweeps })
}

/// Annihilates `a[p][q]` with `U = D·R`: `D` turns the entry real, `R` is the
/// real Jacobi rotation. Applies `a ← U† a U`, `v ← v U`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq.conj() / r; // e^{-iα}
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = -phase * s;
    let uqq = phase * c;
    let n = a.nrows();
    for k in 0..n {
        let (x, y) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = x * upp + y * uqp;
        a[(k, q)] = x * upq + y * uqq;
    }
    for k in 0..n {
        let (x, y) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = upp.conj() * x + uqp.conj() * y;
        a[(q, k)] = upq.conj() * x + uqq.conj() * y;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    for k in 0..n {
        let (x, y) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = x * upp + y * uqp;
        v[(k, q)] = x * upq + y * uqq;
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn eigenvalues(h: &CMatrix) -> Result<Vec<f64>, QuantumError> {
    Ok(eigh(h)?.values)
}
