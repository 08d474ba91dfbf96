//! Dense complex statevector and the elementary evolution primitives:
//! diagonal phases, the transverse-field mixer, the global Hadamard and
//! measurement statistics.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::transform::{apply_pairwise_levels, walsh_hadamard_in_place};

/// Hard cap on the register size: 2^26 amplitudes is 1 GiB of f64 pairs.
pub const MAX_QUBITS: usize = 26;

/// Which realization of `exp(-i beta sum_j X_j)` to apply.
///
/// Both are the same unitary; the direct form does one pass of 2x2 mixing per
/// qubit, the conjugated form sandwiches a diagonal phase between two global
/// Hadamards and exists to cross-check the identity `H Z H = X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixerForm {
    Direct,
    HadamardConjugated,
}

/// State of an `n`-qubit register: `2^n` complex amplitudes, unit norm.
///
/// Qubit `i` is bit `i` of the basis index (little-endian), so basis index
/// `z` assigns value `(z >> i) & 1` to qubit `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Scalar> {
    n: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> StateVector<T> {
    /// The equal superposition over all basis states: every amplitude is
    /// `2^(-n/2)`.
    pub fn uniform(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let amp = (T::one() / T::from_count(1usize << n)).sqrt();
        Ok(StateVector {
            n,
            amps: vec![Complex::new(amp, T::zero()); 1 << n],
        })
    }

    /// The computational basis state `|z>`.
    pub fn basis(n: usize, z: u64) -> Result<Self> {
        check_qubit_count(n)?;
        check_index(z, n)?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        amps[z as usize] = Complex::new(T::one(), T::zero());
        Ok(StateVector { n, amps })
    }

    /// Wrap an explicit amplitude vector; the length must be a power of two
    /// and the norm must already be 1 within 1e-6.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_qubit_count(n)?;
        if amps.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: amps.len(),
            });
        }
        let state = StateVector { n, amps };
        let norm = state.norm_sqr();
        if (norm - T::one()).abs() > T::from_f64(1e-6).unwrap() {
            return Err(Error::domain(format!(
                "amplitudes are not normalized: |psi|^2 = {norm}"
            )));
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// Total squared magnitude; 1 up to accumulated rounding.
    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiply each amplitude by `exp(-i * angle * diag[z])`.
    pub fn apply_diagonal_phase(&mut self, diag: &[T], angle: T) -> Result<()> {
        if diag.len() != self.amps.len() {
            return Err(Error::LengthMismatch {
                expected: self.amps.len(),
                got: diag.len(),
            });
        }
        for (a, d) in self.amps.iter_mut().zip(diag.iter()) {
            *a = *a * Complex::from_polar(T::one(), -angle * *d);
        }
        Ok(())
    }

    /// Diagonal phase for a diagonal given as `levels[index[z]]`. Produces
    /// the same bits as [`apply_diagonal_phase`] on the expanded array while
    /// evaluating one sine/cosine per level instead of per amplitude.
    pub fn apply_diagonal_phase_indexed(
        &mut self,
        levels: &[T],
        index: &[u16],
        angle: T,
    ) -> Result<()> {
        if index.len() != self.amps.len() {
            return Err(Error::LengthMismatch {
                expected: self.amps.len(),
                got: index.len(),
            });
        }
        let table: Vec<Complex<T>> = levels
            .iter()
            .map(|d| Complex::from_polar(T::one(), -angle * *d))
            .collect();
        for (a, k) in self.amps.iter_mut().zip(index.iter()) {
            *a = *a * table[*k as usize];
        }
        Ok(())
    }

    /// Apply `exp(-i beta sum_j X_j)`.
    pub fn apply_mixer(&mut self, beta: T, form: MixerForm) {
        match form {
            MixerForm::Direct => {
                let c = beta.cos();
                let s = beta.sin();
                // Per qubit, each (bit=0, bit=1) amplitude pair is mixed by
                // [[cos b, -i sin b], [-i sin b, cos b]].
                apply_pairwise_levels(&mut self.amps, |a, b| {
                    (
                        Complex::new(c * a.re + s * b.im, c * a.im - s * b.re),
                        Complex::new(c * b.re + s * a.im, c * b.im - s * a.re),
                    )
                });
            }
            MixerForm::HadamardConjugated => {
                self.apply_hadamard_all();
                // Eigenvalue of sum_j Z_j at z is n - 2 popcount(z).
                let n = self.n;
                let table: Vec<Complex<T>> = (0..=n)
                    .map(|k| {
                        let eig = T::from_count(n) - T::from_count(2 * k);
                        Complex::from_polar(T::one(), -beta * eig)
                    })
                    .collect();
                for (z, a) in self.amps.iter_mut().enumerate() {
                    *a = *a * table[z.count_ones() as usize];
                }
                self.apply_hadamard_all();
            }
        }
    }

    /// Apply the Hadamard gate to every qubit: the Walsh–Hadamard transform
    /// of the amplitudes scaled by `2^(-n/2)`.
    pub fn apply_hadamard_all(&mut self) {
        walsh_hadamard_in_place(&mut self.amps);
        let scale = (T::one() / T::from_count(self.amps.len())).sqrt();
        for a in self.amps.iter_mut() {
            *a = a.scale(scale);
        }
    }

    /// `sum_z diag[z] * |amp[z]|^2`.
    pub fn expectation(&self, diag: &[T]) -> Result<T> {
        if diag.len() != self.amps.len() {
            return Err(Error::LengthMismatch {
                expected: self.amps.len(),
                got: diag.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(diag.iter())
            .map(|(a, d)| *d * a.norm_sqr())
            .sum())
    }

    /// Total probability of the given basis states. Callers pass each index
    /// at most once (set semantics).
    pub fn probability_mass(&self, indices: &[u64]) -> Result<T> {
        let mut total = T::zero();
        for &z in indices {
            check_index(z, self.n)?;
            total = total + self.amps[z as usize].norm_sqr();
        }
        Ok(total)
    }
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    Ok(())
}

fn check_index(z: u64, n: usize) -> Result<()> {
    if z >> n != 0 {
        return Err(Error::IndexOutOfRange { index: z, n });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C64 = Complex<f64>;

    fn random_state(n: usize, seed: u64) -> StateVector<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<C64> = (0..1usize << n)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        StateVector::from_amplitudes(n, amps).unwrap()
    }

    fn max_amp_diff(a: &StateVector<f64>, b: &StateVector<f64>) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn uniform_n1() {
        let s = StateVector::<f64>::uniform(1).unwrap();
        for a in s.amplitudes() {
            assert_abs_diff_eq!(a.re, 0.70710678, epsilon = 1e-8);
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn uniform_n2() {
        let s = StateVector::<f64>::uniform(2).unwrap();
        assert_eq!(s.len(), 4);
        for a in s.amplitudes() {
            assert_eq!(a.re, 0.5);
        }
    }

    #[test]
    fn uniform_n20() {
        let s = StateVector::<f64>::uniform(20).unwrap();
        assert_eq!(s.len(), 1_048_576);
        assert_eq!(s.amplitudes()[123_456].re, 0.0009765625);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn uniform_rejects_bad_qubit_count() {
        assert!(matches!(
            StateVector::<f64>::uniform(0),
            Err(Error::QubitCount { .. })
        ));
        assert!(matches!(
            StateVector::<f64>::uniform(27),
            Err(Error::QubitCount { .. })
        ));
    }

    #[test]
    fn diagonal_phase_zero_diag_is_identity() {
        let mut s = random_state(4, 7);
        let before = s.clone();
        s.apply_diagonal_phase(&[0.0; 16], 1.234).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn diagonal_phase_pi_negates_marked() {
        let mut s = StateVector::<f64>::uniform(3).unwrap();
        let mut diag = [0.0; 8];
        diag[5] = 1.0;
        s.apply_diagonal_phase(&diag, std::f64::consts::PI).unwrap();
        for (z, a) in s.amplitudes().iter().enumerate() {
            let expect = if z == 5 { -1.0 } else { 1.0 } * 8f64.sqrt().recip();
            assert_abs_diff_eq!(a.re, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn diagonal_phase_quarter_levels() {
        // diag = [0, 0.5, 0.5, 1], angle = pi on the uniform state:
        // amplitudes become [0.5, -0.5i, -0.5i, -0.5].
        let mut s = StateVector::<f64>::uniform(2).unwrap();
        s.apply_diagonal_phase(&[0.0, 0.5, 0.5, 1.0], std::f64::consts::PI)
            .unwrap();
        let expect = [
            C64::new(0.5, 0.0),
            C64::new(0.0, -0.5),
            C64::new(0.0, -0.5),
            C64::new(-0.5, 0.0),
        ];
        for (a, e) in s.amplitudes().iter().zip(expect.iter()) {
            assert_abs_diff_eq!((a - e).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn diagonal_phase_rejects_length_mismatch() {
        let mut s = StateVector::<f64>::uniform(2).unwrap();
        assert!(matches!(
            s.apply_diagonal_phase(&[0.0; 3], 1.0),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn indexed_phase_matches_plain_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let n = 6;
        let levels: Vec<f64> = (0..10).map(|k| k as f64 / 9.0).collect();
        let index: Vec<u16> = (0..1u32 << n).map(|_| rng.gen_range(0..10u16)).collect();
        let diag: Vec<f64> = index.iter().map(|&k| levels[k as usize]).collect();

        let mut a = random_state(n, 41);
        let mut b = a.clone();
        a.apply_diagonal_phase(&diag, 2.7).unwrap();
        b.apply_diagonal_phase_indexed(&levels, &index, 2.7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mixer_beta_zero_is_identity() {
        let mut s = random_state(5, 11);
        let before = s.clone();
        s.apply_mixer(0.0, MixerForm::Direct);
        assert!(max_amp_diff(&s, &before) <= 1e-15);
    }

    #[test]
    fn mixer_half_pi_flips_single_qubit() {
        // exp(-i (pi/2) X) |0> = -i |1>
        let mut s = StateVector::<f64>::basis(1, 0).unwrap();
        s.apply_mixer(std::f64::consts::FRAC_PI_2, MixerForm::Direct);
        let a = s.amplitudes();
        assert_abs_diff_eq!(a[0].norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((a[1] - C64::new(0.0, -1.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn mixer_forms_agree() {
        for n in 1..=8 {
            let mut direct = random_state(n, 100 + n as u64);
            let mut conj = direct.clone();
            direct.apply_mixer(0.37, MixerForm::Direct);
            conj.apply_mixer(0.37, MixerForm::HadamardConjugated);
            assert!(
                max_amp_diff(&direct, &conj) <= 1e-12,
                "forms disagree at n = {n}"
            );
        }
    }

    #[test]
    fn hadamard_of_zero_state_is_uniform() {
        let mut s = StateVector::<f64>::basis(3, 0).unwrap();
        s.apply_hadamard_all();
        let uniform = StateVector::<f64>::uniform(3).unwrap();
        assert!(max_amp_diff(&s, &uniform) <= 1e-12);
    }

    #[test]
    fn hadamard_is_involution() {
        let orig = random_state(6, 13);
        let mut s = orig.clone();
        s.apply_hadamard_all();
        s.apply_hadamard_all();
        assert!(max_amp_diff(&s, &orig) <= 1e-12);
    }

    #[test]
    fn hadamard_of_one_state() {
        let mut s = StateVector::<f64>::basis(1, 1).unwrap();
        s.apply_hadamard_all();
        let a = s.amplitudes();
        assert_abs_diff_eq!(a[0].re, 0.70710678, epsilon = 1e-8);
        assert_abs_diff_eq!(a[1].re, -0.70710678, epsilon = 1e-8);
    }

    #[test]
    fn expectation_of_constant_diag() {
        let s = random_state(4, 17);
        let e = s.expectation(&[2.5; 16]).unwrap();
        assert_abs_diff_eq!(e, 2.5, epsilon = 1e-12);
    }

    #[test]
    fn expectation_of_basis_state() {
        let s = StateVector::<f64>::basis(3, 6).unwrap();
        let diag: Vec<f64> = (0..8).map(|z| z as f64 * 1.5).collect();
        assert_eq!(s.expectation(&diag).unwrap(), 9.0);
    }

    #[test]
    fn expectation_of_uniform_is_mean() {
        let s = StateVector::<f64>::uniform(2).unwrap();
        assert_abs_diff_eq!(
            s.expectation(&[0.0, 1.0, 2.0, 3.0]).unwrap(),
            1.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn expectation_invariant_under_global_phase() {
        let s = random_state(4, 19);
        let diag: Vec<f64> = (0..16).map(|z| (z as f64).sin()).collect();
        let rotated = StateVector {
            n: s.n,
            amps: s
                .amps
                .iter()
                .map(|a| a * C64::from_polar(1.0, 1.9))
                .collect(),
        };
        assert_abs_diff_eq!(
            s.expectation(&diag).unwrap(),
            rotated.expectation(&diag).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn probability_mass_full_singleton_empty() {
        let s = StateVector::<f64>::uniform(3).unwrap();
        let all: Vec<u64> = (0..8).collect();
        assert_abs_diff_eq!(s.probability_mass(&all).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.probability_mass(&[5]).unwrap(), 0.125, epsilon = 1e-12);
        assert_eq!(s.probability_mass(&[]).unwrap(), 0.0);
    }

    #[test]
    fn probability_mass_rejects_out_of_range() {
        let s = StateVector::<f64>::uniform(2).unwrap();
        assert!(matches!(
            s.probability_mass(&[4]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn norm_conserved_over_operation_sequence() {
        let mut s = StateVector::<f64>::uniform(10).unwrap();
        let diag: Vec<f64> = (0..1 << 10).map(|z| ((z * 7) % 13) as f64 / 13.0).collect();
        for p in 0..100 {
            s.apply_diagonal_phase(&diag, 0.1 + p as f64).unwrap();
            s.apply_mixer(0.05, MixerForm::Direct);
        }
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn works_in_single_precision() {
        let mut s = StateVector::<f32>::uniform(4).unwrap();
        s.apply_mixer(0.3f32, MixerForm::Direct);
        s.apply_hadamard_all();
        assert!((s.norm_sqr() - 1.0).abs() <= 1e-5);
    }
}
