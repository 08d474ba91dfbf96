//! Diagonal problem Hamiltonians: clause objectives, normalization, and the
//! projector / Walsh coefficient transforms with layer classification.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::MAX_QUBITS;
use crate::transform::{subset_moebius_in_place, subset_zeta_in_place, walsh_hadamard_in_place};

/// Basis-change transforms materialize 2^n dense arrays; cap them below the
/// statevector limit.
pub const MAX_TRANSFORM_QUBITS: usize = 24;

/// One 3-literal clause. `signs[k] = true` is a positive literal, satisfied
/// when the variable's bit is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause3 {
    vars: [usize; 3],
    signs: [bool; 3],
}

impl Clause3 {
    pub fn new(vars: [usize; 3], signs: [bool; 3]) -> Result<Self> {
        if vars[0] == vars[1] || vars[0] == vars[2] || vars[1] == vars[2] {
            return Err(Error::domain(format!(
                "clause variables must be distinct, got {vars:?}"
            )));
        }
        Ok(Clause3 { vars, signs })
    }

    pub fn vars(&self) -> [usize; 3] {
        self.vars
    }

    pub fn signs(&self) -> [bool; 3] {
        self.signs
    }

    pub fn satisfied_by(&self, z: u64) -> bool {
        self.vars
            .iter()
            .zip(self.signs.iter())
            .any(|(&v, &s)| ((z >> v) & 1 == 1) == s)
    }

    /// The unique forbidden assignment pattern as a (mask, fixed-bits) coset:
    /// the clause is violated exactly by the `z` with `z & mask == fixed`.
    pub(crate) fn forbidden_coset(&self) -> (u64, u64) {
        let mut mask = 0u64;
        let mut fixed = 0u64;
        for (&v, &s) in self.vars.iter().zip(self.signs.iter()) {
            mask |= 1 << v;
            if !s {
                fixed |= 1 << v;
            }
        }
        (mask, fixed)
    }
}

/// A 3-SAT instance: `m` clauses over `n` boolean variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    n: usize,
    clauses: Vec<Clause3>,
}

impl SatInstance {
    pub fn new(n: usize, clauses: Vec<Clause3>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        if clauses.is_empty() {
            return Err(Error::domain("instance needs at least one clause"));
        }
        for clause in &clauses {
            if clause.vars.iter().any(|&v| v >= n) {
                return Err(Error::domain(format!(
                    "clause variable out of range for n = {n}: {:?}",
                    clause.vars
                )));
            }
        }
        Ok(SatInstance { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Clause count.
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause3] {
        &self.clauses
    }
}

/// Visit every `z < 2^n` with `z & mask == fixed`, in increasing order.
pub(crate) fn for_each_in_coset(n: usize, mask: u64, fixed: u64, mut f: impl FnMut(usize)) {
    let free = !mask & ((1u64 << n) - 1);
    let mut sub = 0u64;
    loop {
        f((fixed | sub) as usize);
        if sub == free {
            break;
        }
        sub = sub.wrapping_sub(free) & free;
    }
}

/// Per-assignment satisfied-clause counts: `counts[z]` = number of clauses of
/// `instance` satisfied by `z`. Starts from the constant `m` and, per clause,
/// decrements exactly the `2^(n-3)` assignments matching its forbidden
/// pattern.
pub(crate) fn satisfied_counts(instance: &SatInstance) -> Vec<u32> {
    let n = instance.n();
    let mut counts = vec![instance.m() as u32; 1 << n];
    for clause in instance.clauses() {
        let (mask, fixed) = clause.forbidden_coset();
        for_each_in_coset(n, mask, fixed, |z| counts[z] -= 1);
    }
    counts
}

/// Array of `2^n` objective values `C(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalObjective<T: Scalar> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> DiagonalObjective<T> {
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: values.len(),
            });
        }
        Ok(DiagonalObjective { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// `values[z]` = number of clauses satisfied by assignment `z`.
pub fn build_sat_diagonal<T: Scalar>(instance: &SatInstance) -> DiagonalObjective<T> {
    let counts = satisfied_counts(instance);
    DiagonalObjective {
        n: instance.n(),
        values: counts.into_iter().map(|c| T::from_count(c as usize)).collect(),
    }
}

/// A diagonal rescaled so the normalization ceiling is 1.
///
/// For integer-valued inputs (clause counts, vertex counts, Grover marks) the
/// distinct levels are tabulated and each value indexes its level; the
/// satisfiability test `delta_c = 0` is then exact because it is decided on
/// the raw values before division.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedDiagonal<T: Scalar> {
    n: usize,
    values: Vec<T>,
    divisor: T,
    c_max: T,
    delta_c: T,
    levels: Option<(Vec<T>, Vec<u16>)>,
}

impl<T: Scalar> NormalizedDiagonal<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// The divisor the raw objective was scaled by.
    pub fn divisor(&self) -> T {
        self.divisor
    }

    /// The normalization ceiling; 1 by construction.
    pub fn c_lim(&self) -> T {
        T::one()
    }

    /// Largest normalized value actually attained.
    pub fn c_max(&self) -> T {
        self.c_max
    }

    /// `c_lim - c_max`; exactly zero iff the ceiling is attained.
    pub fn delta_c(&self) -> T {
        self.delta_c
    }

    pub fn is_satisfiable(&self) -> bool {
        self.delta_c == T::zero()
    }

    /// Level table and per-index level ids, when the raw values were small
    /// nonnegative integers.
    pub fn quantized(&self) -> Option<(&[T], &[u16])> {
        self.levels.as_ref().map(|(l, i)| (l.as_slice(), i.as_slice()))
    }
}

const MAX_LEVELS: usize = u16::MAX as usize + 1;

/// Scale a diagonal by `1 / divisor` and record the ceiling statistics.
/// For 3-SAT pass `divisor = m`, making the per-clause coefficients sum to 1.
pub fn normalize<T: Scalar>(diag: &DiagonalObjective<T>, divisor: T) -> Result<NormalizedDiagonal<T>> {
    if !(divisor > T::zero()) {
        return Err(Error::domain(format!("divisor must be positive, got {divisor}")));
    }
    let raw_max = diag
        .values
        .iter()
        .fold(T::neg_infinity(), |acc, &v| acc.max(v));
    // Exact test on the raw values, before any division.
    let attained = raw_max == divisor;
    let c_max = if attained { T::one() } else { raw_max / divisor };
    let delta_c = if attained { T::zero() } else { T::one() - c_max };

    let levels = quantize(&diag.values, divisor, attained);
    let values = match &levels {
        Some((table, index)) => index.iter().map(|&k| table[k as usize]).collect(),
        None => diag.values.iter().map(|&v| v / divisor).collect(),
    };
    Ok(NormalizedDiagonal {
        n: diag.n,
        values,
        divisor,
        c_max,
        delta_c,
        levels,
    })
}

fn quantize<T: Scalar>(raw: &[T], divisor: T, attained: bool) -> Option<(Vec<T>, Vec<u16>)> {
    let mut max_level = 0usize;
    let mut index = Vec::with_capacity(raw.len());
    let limit = T::from_count(MAX_LEVELS - 1);
    for &v in raw {
        if v < T::zero() || v > limit || v.trunc() != v {
            return None;
        }
        let k = v.to_f64().unwrap() as usize;
        max_level = max_level.max(k);
        index.push(k as u16);
    }
    let table: Vec<T> = (0..=max_level)
        .map(|k| {
            if attained && k == max_level {
                T::one()
            } else {
                T::from_count(k) / divisor
            }
        })
        .collect();
    Some((table, index))
}

/// The Grover-style diagonal: 1 on every marked state, 0 elsewhere, already
/// normalized (each marked state carries coefficient 1).
pub fn grover_diagonal<T: Scalar>(n: usize, marked: &[u64]) -> Result<NormalizedDiagonal<T>> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_QUBITS });
    }
    if marked.is_empty() {
        return Err(Error::domain("marked set must be nonempty"));
    }
    let mut index = vec![0u16; 1 << n];
    for &z in marked {
        if z >> n != 0 {
            return Err(Error::IndexOutOfRange { index: z, n });
        }
        index[z as usize] = 1;
    }
    let table = vec![T::zero(), T::one()];
    let values = index.iter().map(|&k| table[k as usize]).collect();
    Ok(NormalizedDiagonal {
        n,
        values,
        divisor: T::one(),
        c_max: T::one(),
        delta_c: T::zero(),
        levels: Some((table, index)),
    })
}

/// Sparse diagonal operator in the projector basis: `sum_j coeff[j] * p_j`
/// where `p_j` projects onto `z` with `j & z == j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorHamiltonian<T: Scalar> {
    n: usize,
    terms: BTreeMap<u64, T>,
}

impl<T: Scalar> ProjectorHamiltonian<T> {
    /// Build from (mask, coefficient) pairs; zero coefficients are dropped.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u64, T)>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let mut map = BTreeMap::new();
        for (mask, coeff) in terms {
            if mask >> n != 0 {
                return Err(Error::IndexOutOfRange { index: mask, n });
            }
            if coeff != T::zero() {
                *map.entry(mask).or_insert(T::zero()) += coeff;
            }
        }
        map.retain(|_, c| *c != T::zero());
        Ok(ProjectorHamiltonian { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<u64, T> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum number of control bits over the stored terms: `max_j d(j)`.
    pub fn layer(&self) -> Result<u32> {
        if self.terms.is_empty() {
            return Err(Error::EmptyTerms);
        }
        Ok(self.terms.keys().map(|j| j.count_ones()).max().unwrap())
    }

    pub fn coefficient_l1(&self) -> T {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Rescale so the coefficient magnitudes sum to 1.
    pub fn normalized(&self) -> Result<Self> {
        if self.terms.is_empty() {
            return Err(Error::EmptyTerms);
        }
        let l1 = self.coefficient_l1();
        Ok(ProjectorHamiltonian {
            n: self.n,
            terms: self.terms.iter().map(|(&j, &c)| (j, c / l1)).collect(),
        })
    }

    /// Materialize the dense eigenvalue array `D[z] = sum_{j subset z} coeff[j]`.
    pub fn dense_values(&self) -> Vec<T> {
        let mut dense = vec![T::zero(); 1 << self.n];
        for (&j, &c) in &self.terms {
            dense[j as usize] += c;
        }
        subset_zeta_in_place(&mut dense);
        dense
    }

    /// The inverse of [`projector_coefficients`].
    pub fn to_diagonal(&self) -> DiagonalObjective<T> {
        DiagonalObjective {
            n: self.n,
            values: self.dense_values(),
        }
    }
}

/// Sparse diagonal operator in the Walsh basis: `sum_j theta[j] * w_j` where
/// `w_j` has eigenvalue `(-1)^popcount(j & z)` at `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalshHamiltonian<T: Scalar> {
    n: usize,
    terms: BTreeMap<u64, T>,
}

impl<T: Scalar> WalshHamiltonian<T> {
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u64, T)>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount { n, max: MAX_QUBITS });
        }
        let mut map = BTreeMap::new();
        for (mask, coeff) in terms {
            if mask >> n != 0 {
                return Err(Error::IndexOutOfRange { index: mask, n });
            }
            if coeff != T::zero() {
                *map.entry(mask).or_insert(T::zero()) += coeff;
            }
        }
        map.retain(|_, c| *c != T::zero());
        Ok(WalshHamiltonian { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<u64, T> {
        &self.terms
    }

    /// The inverse of [`walsh_coefficients`].
    pub fn to_diagonal(&self) -> DiagonalObjective<T> {
        let mut dense = vec![T::zero(); 1 << self.n];
        for (&j, &c) in &self.terms {
            dense[j as usize] += c;
        }
        walsh_hadamard_in_place(&mut dense);
        DiagonalObjective {
            n: self.n,
            values: dense,
        }
    }
}

/// Expand a diagonal in the projector basis via the subset Möbius transform:
/// coefficients `c_j` with `diag[z] = sum_{j subset z} c_j`.
pub fn projector_coefficients<T: Scalar>(diag: &DiagonalObjective<T>) -> Result<ProjectorHamiltonian<T>> {
    check_transform_size(diag.n)?;
    let mut work = diag.values.clone();
    subset_moebius_in_place(&mut work);
    let terms = work
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != T::zero())
        .map(|(j, c)| (j as u64, c));
    Ok(ProjectorHamiltonian {
        n: diag.n,
        terms: terms.collect(),
    })
}

/// Expand a diagonal in the Walsh basis: the Walsh–Hadamard transform of the
/// values divided by `2^n`.
pub fn walsh_coefficients<T: Scalar>(diag: &DiagonalObjective<T>) -> Result<WalshHamiltonian<T>> {
    check_transform_size(diag.n)?;
    let mut work = diag.values.clone();
    walsh_hadamard_in_place(&mut work);
    let scale = T::from_count(1usize << diag.n);
    let terms = work
        .into_iter()
        .enumerate()
        .filter_map(|(j, c)| {
            let theta = c / scale;
            (theta != T::zero()).then_some((j as u64, theta))
        });
    Ok(WalshHamiltonian {
        n: diag.n,
        terms: terms.collect(),
    })
}

/// Rewrite projector-basis terms in the Walsh basis through `P = (I - Z)/2`:
/// `p_j = 2^-d(j) * sum_{k subset j} (-1)^popcount(k) w_k`.
pub fn projector_to_walsh<T: Scalar>(h: &ProjectorHamiltonian<T>) -> WalshHamiltonian<T> {
    let mut acc: BTreeMap<u64, T> = BTreeMap::new();
    for (&j, &c) in &h.terms {
        let weight = T::from_count(1usize << j.count_ones());
        let scaled = c / weight;
        let mut k = j;
        loop {
            let signed = if k.count_ones() % 2 == 0 { scaled } else { -scaled };
            *acc.entry(k).or_insert(T::zero()) += signed;
            if k == 0 {
                break;
            }
            k = (k - 1) & j;
        }
    }
    acc.retain(|_, c| *c != T::zero());
    WalshHamiltonian { n: h.n, terms: acc }
}

/// `<z| p_j |z>`: 1 iff every bit of `j` is set in `z`.
pub fn eval_projector(j: u64, z: u64) -> bool {
    j & z == j
}

fn check_transform_size(n: usize) -> Result<()> {
    if n > MAX_TRANSFORM_QUBITS {
        return Err(Error::TransformTooLarge {
            n,
            max: MAX_TRANSFORM_QUBITS,
        });
    }
    Ok(())
}
