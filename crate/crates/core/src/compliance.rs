//! Monte Carlo robustness analysis: how does an assignment plan degrade when
//! passengers do not show up exactly when told?
//!
//! Two perturbation models, both sampled per passenger:
//!
//! * **Gaussian jitter** — the passenger aims for the start of their assigned
//!   slot but arrives `N(0, sigma)` minutes off, rebucketed to the slot
//!   containing the perturbed minute (clamped to the day's first and last
//!   slot).
//! * **Bernoulli compliance** — with probability `p` the passenger follows
//!   the plan; otherwise they revert to their group's preferred slot.
//!
//! Each trial perturbs every passenger, runs the FIFO queue under the plan's
//! capacity profile, and records the exact total wait plus how many
//! passengers finish screening after their flight departs. Streams are
//! seeded as `(sweep_point << 32) | trial`, so every (point, trial) pair
//! draws from an independent, reproducible substream of one base seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::{AssignmentPlan, CapacityProfile, SlotGrid};
use crate::numeric::{rational_to_f64, Rational};
use crate::queue::{
    missed_by_completion, simulate_queue, total_wait, GroupedArrivals, Provenance, QueueError,
};
use crate::schedule::sample_normal;

/// A passenger-behaviour perturbation model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplianceModel {
    /// Arrival minute jittered by a centered normal with this standard
    /// deviation, in minutes.
    GaussianJitter { sigma_minutes: f64 },
    /// Each passenger independently follows the plan with this probability,
    /// reverting to their preferred slot otherwise.
    Bernoulli { compliance_probability: f64 },
}

impl ComplianceModel {
    pub fn validate(&self) -> Result<(), ComplianceError> {
        match *self {
            ComplianceModel::GaussianJitter { sigma_minutes } => {
                if !sigma_minutes.is_finite() || sigma_minutes < 0.0 {
                    return Err(ComplianceError::InvalidSigma {
                        sigma: sigma_minutes,
                    });
                }
            }
            ComplianceModel::Bernoulli {
                compliance_probability,
            } => {
                if !compliance_probability.is_finite()
                    || !(0.0..=1.0).contains(&compliance_probability)
                {
                    return Err(ComplianceError::InvalidProbability {
                        probability: compliance_probability,
                    });
                }
            }
        }
        Ok(())
    }

    /// The swept parameter: sigma in minutes, or the compliance probability.
    pub fn parameter(&self) -> f64 {
        match *self {
            ComplianceModel::GaussianJitter { sigma_minutes } => sigma_minutes,
            ComplianceModel::Bernoulli {
                compliance_probability,
            } => compliance_probability,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ComplianceModel::GaussianJitter { .. } => "gaussian_jitter",
            ComplianceModel::Bernoulli { .. } => "bernoulli",
        }
    }
}

/// One Monte Carlo experiment: a model, a trial count, and a base seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplianceConfig {
    pub model: ComplianceModel,
    pub num_trials: usize,
    pub seed: u64,
}

/// Measurements from a single perturbed day.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: usize,
    /// Exact total passenger wait under FIFO, in passenger-hours.
    pub total_wait_hours: Rational,
    /// Passengers screened after their departure slot (or never screened,
    /// or arriving after departure).
    pub missed: u64,
    /// Passengers still unscreened at the end of the day.
    pub spillover: u64,
}

/// Aggregated Monte Carlo results for one model point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplianceResult {
    pub model: ComplianceModel,
    pub num_trials: usize,
    pub seed: u64,
    pub total_passengers: u64,
    pub outcomes: Vec<TrialOutcome>,
    /// Exact mean of the per-trial total waits.
    pub mean_wait_hours: Rational,
    /// Sample standard deviation (n - 1) of the total waits.
    pub sd_wait_hours: f64,
    /// Exact mean of the per-trial missed counts.
    pub mean_missed: Rational,
    pub sd_missed: f64,
}

impl ComplianceResult {
    /// Mean fraction of passengers missing their flight, in [0, 1].
    pub fn mean_missed_fraction(&self) -> f64 {
        if self.total_passengers == 0 {
            return 0.0;
        }
        rational_to_f64(self.mean_missed) / self.total_passengers as f64
    }
}

/// Errors from the compliance analysis.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComplianceError {
    #[error("jitter standard deviation must be finite and nonnegative, got {sigma}")]
    InvalidSigma { sigma: f64 },
    #[error("compliance probability must lie in [0, 1], got {probability}")]
    InvalidProbability { probability: f64 },
    #[error("need at least one trial")]
    NoTrials,
    #[error("trial count {0} exceeds the stream space (2^32)")]
    TooManyTrials(usize),
    #[error("queue simulation failed: {0}")]
    Queue(#[from] QueueError),
}

/// Draws one perturbed day of arrivals under Gaussian jitter.
fn perturb_gaussian(
    plan: &AssignmentPlan,
    grid: &SlotGrid,
    sigma_minutes: f64,
    rng: &mut ChaCha8Rng,
) -> GroupedArrivals {
    let num_slots = grid.num_slots();
    let mut items: Vec<(usize, usize, u64)> = Vec::new();
    for entry in &plan.entries {
        for (&slot, &count) in &entry.by_slot {
            let target_minute = grid.slot_start_minute(slot) as f64;
            let mut per_slot = vec![0u64; num_slots];
            for _ in 0..count {
                let minute = sample_normal(rng, target_minute, sigma_minutes);
                let offset = minute - grid.day_start_minute() as f64;
                let raw = (offset / grid.delta_minutes() as f64).floor();
                let arrival = if raw <= 0.0 {
                    0
                } else {
                    (raw as usize).min(num_slots - 1)
                };
                per_slot[arrival] += 1;
            }
            for (arrival, &n) in per_slot.iter().enumerate() {
                if n > 0 {
                    items.push((arrival, entry.group.departure_slot, n));
                }
            }
        }
    }
    GroupedArrivals::from_items(Provenance::Plan, num_slots, items.into_iter())
}

/// Draws one perturbed day of arrivals under Bernoulli compliance.
fn perturb_bernoulli(
    plan: &AssignmentPlan,
    grid: &SlotGrid,
    compliance_probability: f64,
    rng: &mut ChaCha8Rng,
) -> GroupedArrivals {
    let num_slots = grid.num_slots();
    let mut items: Vec<(usize, usize, u64)> = Vec::new();
    for entry in &plan.entries {
        let preferred = entry.group.preferred_slot;
        for (&slot, &count) in &entry.by_slot {
            let mut kept = 0u64;
            for _ in 0..count {
                if rng.gen::<f64>() < compliance_probability {
                    kept += 1;
                }
            }
            if kept > 0 {
                items.push((slot, entry.group.departure_slot, kept));
            }
            if count - kept > 0 {
                items.push((preferred, entry.group.departure_slot, count - kept));
            }
        }
    }
    GroupedArrivals::from_items(Provenance::Plan, num_slots, items.into_iter())
}

fn perturb(
    plan: &AssignmentPlan,
    grid: &SlotGrid,
    model: &ComplianceModel,
    rng: &mut ChaCha8Rng,
) -> GroupedArrivals {
    match *model {
        ComplianceModel::GaussianJitter { sigma_minutes } => {
            perturb_gaussian(plan, grid, sigma_minutes, rng)
        }
        ComplianceModel::Bernoulli {
            compliance_probability,
        } => perturb_bernoulli(plan, grid, compliance_probability, rng),
    }
}

fn sample_sd(values: impl Iterator<Item = f64> + Clone, mean: f64, n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let sum_sq: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    (sum_sq / (n as f64 - 1.0)).sqrt()
}

/// Runs `num_trials` perturbed days for one model at sweep position
/// `point_index`, evaluating each under the plan's capacity profile.
fn run_trials_indexed(
    plan: &AssignmentPlan,
    capacity: &CapacityProfile,
    grid: &SlotGrid,
    model: &ComplianceModel,
    num_trials: usize,
    seed: u64,
    point_index: usize,
) -> Result<ComplianceResult, ComplianceError> {
    model.validate()?;
    if num_trials == 0 {
        return Err(ComplianceError::NoTrials);
    }
    if num_trials > u32::MAX as usize {
        return Err(ComplianceError::TooManyTrials(num_trials));
    }
    let mut outcomes = Vec::with_capacity(num_trials);
    for trial in 0..num_trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(((point_index as u64) << 32) | trial as u64);
        let arrivals = perturb(plan, grid, model, &mut rng);
        let curves = simulate_queue(&arrivals.series(), capacity, grid)?;
        outcomes.push(TrialOutcome {
            trial,
            total_wait_hours: total_wait(&curves, grid)?,
            missed: missed_by_completion(&arrivals, &curves),
            spillover: curves.spillover(),
        });
    }
    let n = Rational::from_integer(num_trials as i64);
    let mean_wait_hours = outcomes
        .iter()
        .map(|o| o.total_wait_hours)
        .sum::<Rational>()
        / n;
    let mean_missed = outcomes
        .iter()
        .map(|o| Rational::from_integer(o.missed as i64))
        .sum::<Rational>()
        / n;
    let sd_wait_hours = sample_sd(
        outcomes.iter().map(|o| rational_to_f64(o.total_wait_hours)),
        rational_to_f64(mean_wait_hours),
        num_trials,
    );
    let sd_missed = sample_sd(
        outcomes.iter().map(|o| o.missed as f64),
        rational_to_f64(mean_missed),
        num_trials,
    );
    Ok(ComplianceResult {
        model: *model,
        num_trials,
        seed,
        total_passengers: plan.total_passengers(),
        outcomes,
        mean_wait_hours,
        sd_wait_hours,
        mean_missed,
        sd_missed,
    })
}

/// Runs one Monte Carlo experiment (sweep position 0).
pub fn run_trials(
    plan: &AssignmentPlan,
    capacity: &CapacityProfile,
    grid: &SlotGrid,
    config: &ComplianceConfig,
) -> Result<ComplianceResult, ComplianceError> {
    run_trials_indexed(
        plan,
        capacity,
        grid,
        &config.model,
        config.num_trials,
        config.seed,
        0,
    )
}

/// Runs a sweep over several models (typically one model family at different
/// parameter values). Point `i` draws from stream block `i`, so results are
/// independent across points and reproducible from the single base seed.
pub fn sweep(
    plan: &AssignmentPlan,
    capacity: &CapacityProfile,
    grid: &SlotGrid,
    models: &[ComplianceModel],
    num_trials: usize,
    seed: u64,
) -> Result<Vec<ComplianceResult>, ComplianceError> {
    models
        .iter()
        .enumerate()
        .map(|(i, model)| run_trials_indexed(plan, capacity, grid, model, num_trials, seed, i))
        .collect()
}
