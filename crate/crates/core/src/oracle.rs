//! Brute-force references, independent of the fast evolution path: dense
//! matrix evolution for small registers, exhaustive maximization and naive
//! clause counting. Deliberately naive; correctness over speed.

use num_complex::Complex;

use crate::diagonal::SatInstance;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense operators are capped at 8 qubits (256 x 256).
pub const MAX_DENSE_QUBITS: usize = 8;

/// Explicit `2^n x 2^n` complex matrix, row-major.
#[derive(Debug, Clone)]
pub struct DenseOperator<T: Scalar> {
    n: usize,
    matrix: Vec<Complex<T>>,
}

impl<T: Scalar> DenseOperator<T> {
    fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `diag(exp(-i * angle * values[z]))`.
    pub fn diagonal_phase(values: &[T], angle: T) -> Result<Self> {
        let n = check_dense_size(values.len())?;
        let dim = values.len();
        let mut matrix = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for (z, &v) in values.iter().enumerate() {
            matrix[z * dim + z] = Complex::from_polar(T::one(), -angle * v);
        }
        Ok(DenseOperator { n, matrix })
    }

    /// `exp(-i * beta * sum_j X_j)` as the n-fold Kronecker power of the
    /// exact 2x2 rotation `[[cos b, -i sin b], [-i sin b, cos b]]`.
    pub fn mixer(n: usize, beta: T) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::QubitCount {
                n,
                max: MAX_DENSE_QUBITS,
            });
        }
        let c = Complex::new(beta.cos(), T::zero());
        let s = Complex::new(T::zero(), -beta.sin());
        let single = [c, s, s, c];
        let mut matrix = single.to_vec();
        let mut dim = 2;
        for _ in 1..n {
            matrix = kronecker(&single, 2, &matrix, dim);
            dim *= 2;
        }
        Ok(DenseOperator { n, matrix })
    }

    pub fn apply(&self, vec: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let dim = self.dim();
        if vec.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: vec.len(),
            });
        }
        let mut out = Vec::with_capacity(dim);
        for row in 0..dim {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (col, v) in vec.iter().enumerate() {
                acc = acc + self.matrix[row * dim + col] * v;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Largest entry magnitude of `U U^dagger - I`.
    pub fn unitarity_defect(&self) -> T {
        let dim = self.dim();
        let mut worst = T::zero();
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..dim {
                    acc = acc + self.matrix[r * dim + k] * self.matrix[c * dim + k].conj();
                }
                let expect = if r == c { T::one() } else { T::zero() };
                worst = worst.max((acc - Complex::new(expect, T::zero())).norm());
            }
        }
        worst
    }
}

fn kronecker<T: Scalar>(
    a: &[Complex<T>],
    a_dim: usize,
    b: &[Complex<T>],
    b_dim: usize,
) -> Vec<Complex<T>> {
    let dim = a_dim * b_dim;
    let mut out = vec![Complex::new(T::zero(), T::zero()); dim * dim];
    for ar in 0..a_dim {
        for ac in 0..a_dim {
            let f = a[ar * a_dim + ac];
            for br in 0..b_dim {
                for bc in 0..b_dim {
                    out[(ar * b_dim + br) * dim + (ac * b_dim + bc)] = f * b[br * b_dim + bc];
                }
            }
        }
    }
    out
}

fn check_dense_size(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::domain(format!(
            "diagonal length {len} is not a power of two"
        )));
    }
    let n = len.trailing_zeros() as usize;
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(Error::QubitCount {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(n)
}

/// Reference evolution: starting from the uniform state, apply per iteration
/// the explicit diagonal-phase matrix for `gammas[p]` followed by the explicit
/// Kronecker-power mixer for `beta`.
pub fn dense_evolution<T: Scalar>(
    diag: &[T],
    gammas: &[T],
    beta: T,
) -> Result<Vec<Complex<T>>> {
    let n = check_dense_size(diag.len())?;
    let dim = diag.len();
    let amp = (T::one() / T::from_count(dim)).sqrt();
    let mut state = vec![Complex::new(amp, T::zero()); dim];
    let mixer = DenseOperator::mixer(n, beta)?;
    for &gamma in gammas {
        let phase = DenseOperator::diagonal_phase(diag, gamma)?;
        state = phase.apply(&state)?;
        state = mixer.apply(&state)?;
    }
    Ok(state)
}

/// Exact maximum of `values` together with every index attaining it.
pub fn exhaustive_max<T: Scalar>(values: &[T]) -> (T, Vec<u64>) {
    let mut best = T::neg_infinity();
    for &v in values {
        if v > best {
            best = v;
        }
    }
    let argmax = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == best)
        .map(|(z, _)| z as u64)
        .collect();
    (best, argmax)
}

/// Count satisfied clauses of `instance` at assignment `z` by direct literal
/// evaluation.
pub fn clause_count_check(instance: &SatInstance, z: u64) -> usize {
    instance
        .clauses()
        .iter()
        .filter(|c| c.satisfied_by(z))
        .count()
}
