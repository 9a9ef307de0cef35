//! Coordinate pattern search with first-improvement acceptance.
//!
//! Each [`PatternSearch::refine`] call probes `+step` then `-step` (as a
//! fraction of each field's range) along every tunable coordinate in
//! declaration order and moves to the first probe that strictly improves the
//! objective. A full sweep without improvement halves the step.

use std::fmt::Write as _;

use crate::geometry::BladeDesignParams;
use crate::hydro::{bem_evaluate, root_bending_stress, HydroResult, OperatingPoint};

use super::{objective, ObjectiveConfig, OptimizeError, ParameterBounds, Tunable};

/// Initial probe step as a fraction of each parameter range.
pub const INITIAL_STEP: f64 = 0.25;
/// The search stops once the step fraction falls below this.
pub const MIN_STEP: f64 = 1e-4;

/// Evaluator output for one parameter vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub feedback: HydroResult,
    pub objective: f64,
}

/// One evaluated point. `accepted` marks points that became the incumbent;
/// the starting point is always accepted.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub params: BladeDesignParams,
    pub feedback: HydroResult,
    pub objective: f64,
    pub accepted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchState {
    /// Current step as a fraction of each range.
    pub step: f64,
    /// Probe evaluations spent, excluding the starting point.
    pub evaluations: usize,
    pub budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Moved,
    Contracted,
    Converged,
    BudgetExhausted,
}

pub struct PatternSearch<F> {
    bounds: ParameterBounds,
    evaluator: F,
    state: SearchState,
    current: BladeDesignParams,
    current_objective: f64,
    history: Vec<IterationRecord>,
}

impl<F> PatternSearch<F>
where
    F: FnMut(&BladeDesignParams) -> Result<Evaluation, OptimizeError>,
{
    /// Checks and evaluates the starting point.
    pub fn start(
        p0: &BladeDesignParams,
        bounds: ParameterBounds,
        budget: usize,
        mut evaluator: F,
    ) -> Result<Self, OptimizeError> {
        bounds.validate()?;
        p0.validate()
            .map_err(|e| OptimizeError::Config(format!("infeasible starting point: {e}")))?;
        if let Some(e) = bounds.entries().iter().find(|e| {
            let v = e.field.get(p0);
            !(v >= e.lower && v <= e.upper)
        }) {
            return Err(OptimizeError::Config(format!(
                "starting {} = {} lies outside [{}, {}]",
                e.field,
                e.field.get(p0),
                e.lower,
                e.upper
            )));
        }
        let eval = evaluator(p0)?;
        let history = vec![IterationRecord {
            iteration: 0,
            params: p0.clone(),
            feedback: eval.feedback,
            objective: eval.objective,
            accepted: true,
        }];
        Ok(Self {
            bounds,
            evaluator,
            state: SearchState {
                step: INITIAL_STEP,
                evaluations: 0,
                budget,
            },
            current: p0.clone(),
            current_objective: eval.objective,
            history,
        })
    }

    pub fn current(&self) -> &BladeDesignParams {
        &self.current
    }

    pub fn current_objective(&self) -> f64 {
        self.current_objective
    }

    pub fn state(&self) -> SearchState {
        self.state
    }

    pub fn history(&self) -> &[IterationRecord] {
        &self.history
    }

    /// Performs one pattern step from the incumbent.
    pub fn refine(&mut self) -> Result<StepOutcome, OptimizeError> {
        if self.state.step < MIN_STEP {
            return Ok(StepOutcome::Converged);
        }
        let coords: Vec<_> = self.bounds.tunable().copied().collect();
        for bound in coords {
            for sign in [1.0, -1.0] {
                let from = bound.field.get(&self.current);
                let to =
                    (from + sign * self.state.step * bound.range()).clamp(bound.lower, bound.upper);
                if to == from {
                    continue;
                }
                let mut probe = self.current.clone();
                bound.field.set(&mut probe, to);
                if probe.validate().is_err() {
                    continue;
                }
                if self.state.evaluations >= self.state.budget {
                    return Ok(StepOutcome::BudgetExhausted);
                }
                let eval = (self.evaluator)(&probe)?;
                self.state.evaluations += 1;
                let improved = eval.objective > self.current_objective;
                self.history.push(IterationRecord {
                    iteration: self.history.len(),
                    params: probe.clone(),
                    feedback: eval.feedback,
                    objective: eval.objective,
                    accepted: improved,
                });
                if improved {
                    self.current = probe;
                    self.current_objective = eval.objective;
                    return Ok(StepOutcome::Moved);
                }
            }
        }
        self.state.step *= 0.5;
        Ok(if self.state.step < MIN_STEP {
            StepOutcome::Converged
        } else {
            StepOutcome::Contracted
        })
    }

    /// Refines until convergence or budget exhaustion and returns the history.
    pub fn run(mut self) -> Result<Vec<IterationRecord>, OptimizeError> {
        loop {
            match self.refine()? {
                StepOutcome::Moved | StepOutcome::Contracted => {}
                StepOutcome::Converged | StepOutcome::BudgetExhausted => return Ok(self.history),
            }
        }
    }
}

/// Runs the search with a caller-supplied evaluator.
pub fn optimize_with<F>(
    p0: &BladeDesignParams,
    bounds: &ParameterBounds,
    budget: usize,
    evaluator: F,
) -> Result<Vec<IterationRecord>, OptimizeError>
where
    F: FnMut(&BladeDesignParams) -> Result<Evaluation, OptimizeError>,
{
    PatternSearch::start(p0, bounds.clone(), budget, evaluator)?.run()
}

/// Blade-element evaluation plus root stress, scored by [`objective`].
///
/// Root stress is undefined without positive thrust; such designs are
/// scored with zero stress and carry the thrust penalty instead.
pub fn evaluate_design(
    params: &BladeDesignParams,
    cfg: &ObjectiveConfig,
    op: &OperatingPoint,
) -> Result<Evaluation, OptimizeError> {
    let feedback = bem_evaluate(params, op)?;
    let stress = root_bending_stress(&feedback, params).unwrap_or(0.0);
    let objective = objective(&feedback, stress, cfg);
    Ok(Evaluation {
        feedback,
        objective,
    })
}

pub fn optimize(
    p0: &BladeDesignParams,
    bounds: &ParameterBounds,
    cfg: &ObjectiveConfig,
    op: &OperatingPoint,
    budget: usize,
) -> Result<Vec<IterationRecord>, OptimizeError> {
    cfg.validate()?;
    op.validate()?;
    optimize_with(p0, bounds, budget, |p| evaluate_design(p, cfg, op))
}

/// The incumbent at the end of a history: its last accepted record.
pub fn best(history: &[IterationRecord]) -> Option<&IterationRecord> {
    history.iter().rev().find(|r| r.accepted)
}

/// Comma-separated history table with a header row and LF line endings.
pub fn history_csv(history: &[IterationRecord]) -> String {
    let mut out = String::from("iteration");
    for t in Tunable::ALL {
        out.push(',');
        out.push_str(t.name());
    }
    out.push_str(",thrust_N,torque_Nm,efficiency,objective,accepted\n");
    for r in history {
        let _ = write!(out, "{}", r.iteration);
        for t in Tunable::ALL {
            let _ = write!(out, ",{:.9e}", t.get(&r.params));
        }
        let _ = writeln!(
            out,
            ",{:.9e},{:.9e},{:.9e},{:.9e},{}",
            r.feedback.thrust, r.feedback.torque, r.feedback.efficiency, r.objective, r.accepted
        );
    }
    out
}
