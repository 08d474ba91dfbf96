//! The QAOA evolution loops (standard shared-phase and enhanced per-term
//! phases), the iteration-count and gamma schedules, and the measurement-based
//! coefficient update.

use serde::{Deserialize, Serialize};

use crate::diagonal::{eval_projector, NormalizedDiagonal, ProjectorHamiltonian};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::{MixerForm, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleVariant {
    Full,
    Reduced,
}

/// How the per-iteration global phase is stepped.
///
/// `Literal` is the printed ramp `(floor(2 sqrt(2) p / n) + 1) pi`, which
/// passes through even multiples of pi. `Odd` keeps the phase an odd multiple
/// of pi, `(2 t + 1) pi` with `t` ramping linearly, so the phase shift of a
/// ceiling-attaining state is exactly pi at every iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaForm {
    Literal,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    Natural,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }
}

/// Scheduled iteration budget: full `ceil(n log(m) / sqrt(2))`, reduced
/// `ceil(n log(2 m / n) / sqrt(2))`.
pub fn iteration_count(
    n: usize,
    m: usize,
    variant: ScheduleVariant,
    log_base: LogBase,
) -> Result<usize> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if m < 2 {
        return Err(Error::domain(format!(
            "iteration count needs m >= 2, got {m}"
        )));
    }
    let arg = match variant {
        ScheduleVariant::Full => m as f64,
        ScheduleVariant::Reduced => 2.0 * m as f64 / n as f64,
    };
    let raw = n as f64 * log_base.log(arg) / std::f64::consts::SQRT_2;
    let count = raw.ceil();
    if count < 1.0 {
        return Err(Error::domain(format!(
            "schedule degenerates to {count} iterations for n = {n}, m = {m}"
        )));
    }
    Ok(count as usize)
}

/// A fixed run schedule: iteration budget, gamma ramp form, mixing angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<T: Scalar> {
    pub variant: ScheduleVariant,
    pub gamma_form: GammaForm,
    pub p_max: usize,
    pub beta: T,
    pub log_base: LogBase,
}

impl<T: Scalar> Schedule<T> {
    /// Schedule with the default iteration budget, `beta = 1/n` and base-2
    /// logarithms.
    pub fn with_defaults(
        variant: ScheduleVariant,
        gamma_form: GammaForm,
        n: usize,
        m: usize,
    ) -> Result<Self> {
        let log_base = LogBase::Two;
        Ok(Schedule {
            variant,
            gamma_form,
            p_max: iteration_count(n, m, variant, log_base)?,
            beta: beta_default(n),
            log_base,
        })
    }

    /// Global phase for iteration `p` (1-based).
    pub fn gamma(&self, p: usize, n: usize, m: usize) -> Result<T> {
        if p < 1 || p > self.p_max {
            return Err(Error::domain(format!(
                "iteration {p} outside schedule 1..={}",
                self.p_max
            )));
        }
        let sqrt2 = std::f64::consts::SQRT_2;
        let multiplier = match (self.gamma_form, self.variant) {
            // The printed ramp, for either iteration budget.
            (GammaForm::Literal, _) => (2.0 * sqrt2 * p as f64 / n as f64).floor() + 1.0,
            // Odd multiples with t stepping every n/sqrt(2) iterations, so t
            // reaches log(m) at the full budget.
            (GammaForm::Odd, ScheduleVariant::Full) => {
                2.0 * (sqrt2 * p as f64 / n as f64).floor() + 1.0
            }
            // Odd multiples ramping t linearly to ceil(log(2 m n)) across the
            // reduced budget.
            (GammaForm::Odd, ScheduleVariant::Reduced) => {
                let t_max = self.log_base.log(2.0 * m as f64 * n as f64).ceil();
                2.0 * (t_max * p as f64 / self.p_max as f64).floor() + 1.0
            }
        };
        Ok(T::from_f64(multiplier).unwrap() * T::PI())
    }

    /// The whole ramp, `gamma(1), ..., gamma(p_max)`.
    pub fn gamma_values(&self, n: usize, m: usize) -> Result<Vec<T>> {
        (1..=self.p_max).map(|p| self.gamma(p, n, m)).collect()
    }
}

/// `beta = 1/n`, matching a mixer spectrum normalized to `[-1, 1]`.
pub fn beta_default<T: Scalar>(n: usize) -> T {
    assert!(n >= 1, "beta_default needs n >= 1");
    T::one() / T::from_count(n)
}

/// Everything a run needs besides the Hamiltonian: the gamma ramp, the mixing
/// angle, what to record and which basis states count as the target.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig<T: Scalar> {
    /// Global phase per iteration, in order.
    pub gammas: Vec<T>,
    pub beta: T,
    pub record_expectation: bool,
    /// The argmax set of the objective diagonal, deduplicated.
    pub target: Vec<u64>,
}

impl<T: Scalar> RunConfig<T> {
    pub fn from_schedule(
        schedule: &Schedule<T>,
        n: usize,
        m: usize,
        target: Vec<u64>,
    ) -> Result<Self> {
        Ok(RunConfig {
            gammas: schedule.gamma_values(n, m)?,
            beta: schedule.beta,
            record_expectation: false,
            target: normalize_target(target)?,
        })
    }

    pub fn with_gammas(gammas: Vec<T>, beta: T, target: Vec<u64>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::domain("schedule must have at least one iteration"));
        }
        Ok(RunConfig {
            gammas,
            beta,
            record_expectation: false,
            target: normalize_target(target)?,
        })
    }
}

fn normalize_target(mut target: Vec<u64>) -> Result<Vec<u64>> {
    if target.is_empty() {
        return Err(Error::domain("target set must be nonempty"));
    }
    target.sort_unstable();
    target.dedup();
    Ok(target)
}

/// One record per iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint<T: Scalar> {
    /// 1-based iteration index.
    pub iteration: usize,
    pub gamma_s: T,
    pub target_probability: T,
    pub expectation: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T: Scalar> {
    pub points: Vec<TrajectoryPoint<T>>,
    pub max_target_probability: T,
}

/// A finished run: the per-iteration record plus the final state, which the
/// reference-oracle comparisons inspect amplitude by amplitude.
#[derive(Debug, Clone)]
pub struct RunResult<T: Scalar> {
    pub trajectory: Trajectory<T>,
    pub state: StateVector<T>,
}

/// Standard evolution: per iteration a shared-phase step
/// `exp(-i gamma_p H)` over the normalized diagonal, then the mixer.
pub fn run_standard<T: Scalar>(
    diag: &NormalizedDiagonal<T>,
    config: &RunConfig<T>,
) -> Result<RunResult<T>> {
    let quantized = diag.quantized();
    evolve(
        diag.n(),
        config,
        |state, gamma| match quantized {
            Some((levels, index)) => state.apply_diagonal_phase_indexed(levels, index, gamma),
            None => state.apply_diagonal_phase(diag.values(), gamma),
        },
        diag.values(),
    )
}

/// Enhanced evolution: the commuting control-evolution gates of all terms act
/// as one diagonal `D(z) = sum_j coeff[j] * <z|p_j|z>`, scaled per iteration
/// by the supplied global phase. `D` is materialized once.
pub fn run_enhanced<T: Scalar>(
    h: &ProjectorHamiltonian<T>,
    config: &RunConfig<T>,
) -> Result<RunResult<T>> {
    if h.is_empty() {
        return Err(Error::EmptyTerms);
    }
    let dense = h.dense_values();
    evolve(
        h.n(),
        config,
        |state, gamma| state.apply_diagonal_phase(&dense, gamma),
        &dense,
    )
}

fn evolve<T: Scalar>(
    n: usize,
    config: &RunConfig<T>,
    mut phase_step: impl FnMut(&mut StateVector<T>, T) -> Result<()>,
    expectation_diag: &[T],
) -> Result<RunResult<T>> {
    if config.gammas.is_empty() {
        return Err(Error::domain("schedule must have at least one iteration"));
    }
    let mut state = StateVector::uniform(n)?;
    // Validate the target once up front so a bad index fails before evolving.
    state.probability_mass(&config.target)?;

    let mut points = Vec::with_capacity(config.gammas.len());
    let mut max_prob = T::zero();
    for (i, &gamma) in config.gammas.iter().enumerate() {
        phase_step(&mut state, gamma)?;
        state.apply_mixer(config.beta, MixerForm::Direct);
        let target_probability = state.probability_mass(&config.target)?;
        let expectation = if config.record_expectation {
            Some(state.expectation(expectation_diag)?)
        } else {
            None
        };
        max_prob = max_prob.max(target_probability);
        points.push(TrajectoryPoint {
            iteration: i + 1,
            gamma_s: gamma,
            target_probability,
            expectation,
        });
    }
    Ok(RunResult {
        trajectory: Trajectory {
            points,
            max_target_probability: max_prob,
        },
        state,
    })
}

/// Reweight coefficients by measured term importance: with
/// `e_j = mean over samples of <z|p_j|z>`, the new coefficient is
/// proportional to `e_j^alpha * coeff[j]`, renormalized to unit magnitude
/// sum. `0^0 = 1`, so `alpha = 0` leaves the (renormalized) coefficients
/// unchanged.
pub fn update_parameters<T: Scalar>(
    h: &ProjectorHamiltonian<T>,
    samples: &[u64],
    alpha: T,
) -> Result<ProjectorHamiltonian<T>> {
    if h.is_empty() {
        return Err(Error::EmptyTerms);
    }
    if samples.is_empty() {
        return Err(Error::domain("need at least one measurement sample"));
    }
    if alpha < T::zero() {
        return Err(Error::domain(format!("alpha must be nonnegative, got {alpha}")));
    }
    let count = T::from_count(samples.len());
    let reweighted: Vec<(u64, T)> = h
        .terms()
        .iter()
        .map(|(&j, &c)| {
            let hits = samples.iter().filter(|&&z| eval_projector(j, z)).count();
            let e_j = T::from_count(hits) / count;
            (j, e_j.powf(alpha) * c)
        })
        .collect();
    let l1: T = reweighted.iter().map(|(_, c)| c.abs()).sum();
    if l1 == T::zero() {
        return Err(Error::DegenerateUpdate);
    }
    ProjectorHamiltonian::from_terms(h.n(), reweighted.into_iter().map(|(j, c)| (j, c / l1)))
}
