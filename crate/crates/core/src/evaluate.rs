//! Out-of-sample simulation of fixed first-stage decisions.

use std::collections::HashMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::models::Plan;
use crate::scenario::{perturbed_spec, sample_scenarios, ScenarioSet, UncertaintySpec};
use crate::sp;
use crate::stats::{self, HistogramBin, Summary};

pub const DEFAULT_EVAL_SAMPLES: usize = 10_000;
pub const HISTOGRAM_BINS: usize = 50;

/// Set 1 samples the training distribution; Set 2 samples a uniform
/// distribution on supports widened by `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetKind {
    Set1,
    Set2,
}

pub fn make_eval_samples(spec: &UncertaintySpec, kind: SetKind, delta: f64, n: usize, seed: u64) -> Result<ScenarioSet> {
    match kind {
        SetKind::Set1 => sample_scenarios(spec, n, seed),
        SetKind::Set2 => sample_scenarios(&perturbed_spec(spec, delta)?, n, seed),
    }
}

/// `max{0, (V_out − V_opt)/V_opt}` in percent.
pub fn disappointment(v_opt: f64, v_out: f64) -> Result<f64> {
    if !(v_opt > 0.0) {
        return Err(Error::InvalidInput(format!("disappointment needs V_opt > 0, got {v_opt}")));
    }
    Ok(((v_out - v_opt) / v_opt).max(0.0) * 100.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub sample: usize,
    pub total_cost: f64,
    pub second_stage_cost: f64,
    /// Unmet demand-minutes per day, averaged over the horizon.
    pub under_minutes: f64,
    /// Surplus capacity-minutes per day, averaged over the horizon.
    pub over_minutes: f64,
    pub disappointment: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub model: String,
    pub delta: f64,
    pub v_opt: f64,
    pub first_stage_cost: f64,
    pub headcount: u32,
    pub total: Summary,
    pub second_stage: Summary,
    pub under: Summary,
    pub over: Summary,
    pub disappointment: Summary,
    pub disappointment_histogram: Vec<HistogramBin>,
    #[serde(skip)]
    pub rows: Vec<SampleRow>,
}

impl EvaluationReport {
    pub fn mean_disappointment(&self) -> f64 {
        self.disappointment.mean
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)?;
        for r in &self.rows {
            w.serialize(r)?;
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `(cost, under, over)` of one scenario under `plan`.
fn per_sample(inst: &Instance, plan: &Plan, samples: &ScenarioSet) -> Vec<(f64, f64, f64)> {
    let (nl, nt) = (inst.n_services, inst.n_days);
    match plan {
        Plan::Ea(sol) => {
            let alloc = sol.allocated(inst);
            (0..samples.n_scenarios)
                .into_par_iter()
                .map(|n| {
                    let (d, s) = (samples.scenario_d(n), samples.scenario_s(n));
                    let cost = sp::recourse_cost_ea_from_alloc(inst, &alloc, d, s);
                    let (mut under, mut over) = (0.0, 0.0);
                    for l in 0..nl {
                        for t in 0..nt {
                            let gap = d[l * nt + t] * s[l * nt + t] - alloc[l][t];
                            under += gap.max(0.0);
                            over += (-gap).max(0.0);
                        }
                    }
                    (cost, under, over)
                })
                .collect()
        }
        Plan::Fa(sol) => {
            // Integer demand vectors repeat across samples; solve each once.
            let memo: Vec<HashMap<Vec<u64>, (f64, f64, f64)>> = (0..nt)
                .into_par_iter()
                .map(|t| {
                    let mut m = HashMap::new();
                    for n in 0..samples.n_scenarios {
                        let minutes: Vec<f64> = (0..nl).map(|l| samples.minutes(n, l, t)).collect();
                        let key = minutes.iter().map(|v| v.to_bits()).collect();
                        m.entry(key).or_insert_with(|| {
                            let r = sp::fa_day(inst, &sol.x, t, &minutes);
                            (r.cost, r.under.iter().sum(), r.over.iter().sum())
                        });
                    }
                    m
                })
                .collect();
            (0..samples.n_scenarios)
                .map(|n| {
                    let mut acc = (0.0, 0.0, 0.0);
                    for (t, day) in memo.iter().enumerate() {
                        let key: Vec<u64> = (0..nl).map(|l| samples.minutes(n, l, t).to_bits()).collect();
                        let v = day[&key];
                        acc = (acc.0 + v.0, acc.1 + v.1, acc.2 + v.2);
                    }
                    acc
                })
                .collect()
        }
    }
}

/// Simulate `plan` on `samples`. `v_opt` is the model's own optimal value.
pub fn evaluate_out_of_sample(
    inst: &Instance,
    plan: &Plan,
    samples: &ScenarioSet,
    v_opt: f64,
    label: &str,
    delta: f64,
) -> Result<EvaluationReport> {
    samples.check_dims(inst)?;
    sp::check_headcount(inst, plan.x())?;
    let first = plan.first_stage_cost();
    let nt = inst.n_days as f64;
    let rows: Vec<SampleRow> = per_sample(inst, plan, samples)
        .into_iter()
        .enumerate()
        .map(|(i, (cost, under, over))| {
            let total = first + cost;
            Ok(SampleRow {
                sample: i,
                total_cost: total,
                second_stage_cost: cost,
                under_minutes: under / nt,
                over_minutes: over / nt,
                disappointment: disappointment(v_opt, total)?,
            })
        })
        .collect::<Result<_>>()?;
    let col = |f: fn(&SampleRow) -> f64| -> Vec<f64> { rows.iter().map(f).collect() };
    let dis = col(|r| r.disappointment);
    Ok(EvaluationReport {
        model: label.to_string(),
        delta,
        v_opt,
        first_stage_cost: first,
        headcount: plan.headcount(),
        total: stats::summarize(&col(|r| r.total_cost)),
        second_stage: stats::summarize(&col(|r| r.second_stage_cost)),
        under: stats::summarize(&col(|r| r.under_minutes)),
        over: stats::summarize(&col(|r| r.over_minutes)),
        disappointment_histogram: stats::histogram(&dis, HISTOGRAM_BINS),
        disappointment: stats::summarize(&dis),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::SolveStatus;
    use crate::scenario::Family;
    use crate::sp::{EaSolution, FaSolution, SolveMeta};

    fn meta() -> SolveMeta {
        SolveMeta {
            status: SolveStatus::Optimal,
            objective: 0.0,
            best_bound: 0.0,
            gap: 0.0,
            wall_time: 0.0,
        }
    }

    fn toy() -> Instance {
        Instance {
            schema_version: 1,
            id: "toy".into(),
            n_services: 1,
            n_types: 1,
            n_days: 2,
            skills: vec![vec![0]],
            hire_cost: vec![100.0],
            alloc_cost: vec![vec![vec![0.5, 0.5]]],
            under_cost: vec![vec![20.0, 20.0]],
            over_cost_lt: vec![vec![2.0, 2.0]],
            over_cost_kt: vec![vec![2.0, 2.0]],
            capacity: vec![480.0],
            staff_min: 0,
            staff_max: 10,
        }
    }

    #[test]
    fn disappointment_examples() {
        assert!((disappointment(100.0, 120.0).unwrap() - 20.0).abs() < 1e-12);
        assert_eq!(disappointment(100.0, 90.0).unwrap(), 0.0);
        assert!((disappointment(100.0, 250.0).unwrap() - 150.0).abs() < 1e-12);
        assert!(disappointment(0.0, 1.0).is_err());
    }

    #[test]
    fn exact_sizing_has_no_second_stage_cost() {
        let inst = toy();
        let spec = UncertaintySpec::uniform_cells(1, 2, (10.0, 48.0), (0.0, 0.0), (5.0, 20.0), (20.0, 80.0), Family::Lognormal);
        let samples = make_eval_samples(&spec, SetKind::Set1, 0.0, 50, 1).unwrap();
        let plan = Plan::Ea(EaSolution {
            x: vec![1],
            y: vec![vec![vec![480.0, 480.0]]],
            first_stage_cost: 580.0,
            second_stage_cost: 0.0,
            meta: meta(),
        });
        let r = evaluate_out_of_sample(&inst, &plan, &samples, 580.0, "e", 0.0).unwrap();
        assert_eq!(r.second_stage.max, 0.0);
        assert_eq!(r.disappointment.max, 0.0);
    }

    #[test]
    fn unstaffed_fa_pays_all_demand() {
        let inst = toy();
        let spec = UncertaintySpec::uniform_cells(1, 2, (50.0, 50.0), (5.0, 5.0), (40.0, 60.0), (20.0, 80.0), Family::Uniform);
        let samples = make_eval_samples(&spec, SetKind::Set2, 0.5, 200, 3).unwrap();
        let plan = Plan::Fa(FaSolution {
            x: vec![0],
            first_stage_cost: 0.0,
            second_stage_cost: 0.0,
            meta: meta(),
        });
        let r = evaluate_out_of_sample(&inst, &plan, &samples, 1.0, "f", 0.5).unwrap();
        for row in &r.rows {
            let n = row.sample;
            let expect: f64 = (0..2).map(|t| 20.0 * samples.minutes(n, 0, t)).sum();
            assert!((row.second_stage_cost - expect).abs() < 1e-9);
        }
        assert!(samples.d.iter().all(|&d| (20.0..=90.0).contains(&d)));
    }
}
