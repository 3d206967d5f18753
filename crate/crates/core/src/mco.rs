//! Monte Carlo optimization: grow the SAA sample until the statistical
//! lower and upper bound estimates agree.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::milp::SolverOptions;
use crate::scenario::{sample_scenarios, UncertaintySpec};
use crate::seed::SeedStream;
use crate::sp;
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpKind {
    ESp,
    FSp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McoOptions {
    pub n0: usize,
    pub replications: usize,
    pub n_eval: usize,
    pub epsilon: f64,
    /// Stop doubling beyond this sample size.
    pub max_n: usize,
    pub seed: u64,
    /// `None` uses the per-model default gap.
    pub solver: Option<SolverOptions>,
}

impl Default for McoOptions {
    fn default() -> Self {
        McoOptions {
            n0: 10,
            replications: 10,
            n_eval: 1000,
            epsilon: 0.01,
            max_n: 5120,
            seed: 0,
            solver: None,
        }
    }
}

/// `(v̄_N' − v̄_N) / v̄_N'`.
pub fn aoi(mean_n: f64, mean_eval: f64) -> Result<f64> {
    if mean_eval == 0.0 || !mean_eval.is_finite() {
        return Err(Error::InvalidInput("AOI undefined for a zero upper estimate".into()));
    }
    Ok((mean_eval - mean_n) / mean_eval)
}

/// Student-t confidence interval for the mean.
pub fn confidence_interval(samples: &[f64], level: f64) -> Result<(f64, f64)> {
    if samples.len() < 2 {
        return Err(Error::InvalidInput("confidence interval needs at least 2 samples".into()));
    }
    if !(0.0..1.0).contains(&level) || level == 0.0 {
        return Err(Error::InvalidInput(format!("confidence level {level} not in (0, 1)")));
    }
    let n = samples.len() as f64;
    let m = stats::mean(samples);
    let sd = stats::std_dev(samples);
    let t = StudentsT::new(0.0, 1.0, n - 1.0)
        .map_err(|e| Error::InvalidInput(e.to_string()))?
        .inverse_cdf(0.5 + level / 2.0);
    let half = t * sd / n.sqrt();
    Ok((m - half, m + half))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McoRound {
    pub round: usize,
    pub n: usize,
    /// SAA optimum per replication.
    pub v_n: Vec<f64>,
    /// Simulated cost of each replication's solution on the evaluation set.
    pub v_eval: Vec<f64>,
    pub headcounts: Vec<u32>,
    pub mean_n: f64,
    pub mean_eval: f64,
    pub ci_n: (f64, f64),
    pub ci_eval: (f64, f64),
    pub aoi: f64,
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McoReport {
    pub model: SpKind,
    pub converged: bool,
    /// Sample size of the last round.
    pub n_final: usize,
    pub final_aoi: f64,
    pub rounds: Vec<McoRound>,
    pub wall_time: f64,
}

#[derive(Serialize)]
struct CsvRow {
    round: usize,
    n: usize,
    replication: usize,
    v_n: f64,
    v_eval: f64,
    headcount: u32,
}

impl McoReport {
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)?;
        for r in &self.rounds {
            for k in 0..r.v_n.len() {
                w.serialize(CsvRow {
                    round: r.round,
                    n: r.n,
                    replication: k,
                    v_n: r.v_n[k],
                    v_eval: r.v_eval[k],
                    headcount: r.headcounts[k],
                })?;
            }
        }
        w.flush().map_err(|e| Error::io(path, e))
    }
}

/// Run the doubling procedure. Replications within a round run in
/// parallel; each has its own seed stream.
pub fn run_mco(inst: &Instance, spec: &UncertaintySpec, kind: SpKind, opts: &McoOptions) -> Result<McoReport> {
    inst.ensure_valid()?;
    spec.ensure_valid()?;
    spec.check_dims(inst)?;
    if opts.n0 == 0 || opts.replications < 2 || opts.n_eval == 0 {
        return Err(Error::InvalidInput("MCO needs N0 ≥ 1, ≥ 2 replications and N' ≥ 1".into()));
    }
    if !(0.0..1.0).contains(&opts.epsilon) {
        return Err(Error::InvalidInput(format!("ε = {} not in [0, 1)", opts.epsilon)));
    }
    let solver = opts.solver.clone().unwrap_or_else(|| match kind {
        SpKind::ESp => SolverOptions::sp_default(),
        SpKind::FSp => SolverOptions::fa_saa_default(),
    });
    let root = SeedStream::new(opts.seed).child("mco");
    let start = Instant::now();
    let mut rounds = Vec::new();
    let mut n = opts.n0;
    let mut converged = false;
    for round in 0.. {
        let t0 = Instant::now();
        let stream = root.index(round as u64);
        let eval = sample_scenarios(spec, opts.n_eval, stream.child("eval").value())?;
        let reps: Vec<(f64, f64, u32)> = (0..opts.replications)
            .into_par_iter()
            .map(|k| -> Result<(f64, f64, u32)> {
                let train = sample_scenarios(spec, n, stream.child("train").index(k as u64).value())?;
                match kind {
                    SpKind::ESp => {
                        let s = sp::solve_esp(inst, &train, &solver)?;
                        let sim = s.first_stage_cost + sp::mean_recourse_ea(inst, &s.y, &eval);
                        Ok((s.objective(), sim, s.headcount()))
                    }
                    SpKind::FSp => {
                        let s = sp::solve_fsp(inst, &train, &solver)?;
                        let sim = s.first_stage_cost + sp::mean_recourse_fa(inst, &s.x, &eval)?;
                        Ok((s.objective(), sim, s.headcount()))
                    }
                }
            })
            .collect::<Result<_>>()?;
        let v_n: Vec<f64> = reps.iter().map(|r| r.0).collect();
        let v_eval: Vec<f64> = reps.iter().map(|r| r.1).collect();
        let mean_n = stats::mean(&v_n);
        let mean_eval = stats::mean(&v_eval);
        let index = aoi(mean_n, mean_eval)?;
        log::info!("mco round={round} N={n} v_N={mean_n:.2} v_N'={mean_eval:.2} AOI={index:.5}");
        rounds.push(McoRound {
            round,
            n,
            ci_n: confidence_interval(&v_n, 0.95)?,
            ci_eval: confidence_interval(&v_eval, 0.95)?,
            headcounts: reps.iter().map(|r| r.2).collect(),
            v_n,
            v_eval,
            mean_n,
            mean_eval,
            aoi: index,
            wall_time: t0.elapsed().as_secs_f64(),
        });
        if index.abs() <= opts.epsilon {
            converged = true;
            break;
        }
        if n * 2 > opts.max_n {
            break;
        }
        n *= 2;
    }
    let last = rounds.last().expect("at least one round");
    Ok(McoReport {
        model: kind,
        converged,
        n_final: last.n,
        final_aoi: last.aoi,
        wall_time: start.elapsed().as_secs_f64(),
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_instance, HorizonKind, InstanceTemplate};
    use crate::scenario::Family;

    #[test]
    fn aoi_examples() {
        assert!((aoi(95.0, 100.0).unwrap() - 0.05).abs() < 1e-12);
        assert_eq!(aoi(100.0, 100.0).unwrap(), 0.0);
        assert!((aoi(1.308e6, 1.317e6).unwrap() - 0.0068).abs() < 5e-4);
        assert!(aoi(1.0, 0.0).is_err());
    }

    #[test]
    fn t_interval_examples() {
        assert_eq!(confidence_interval(&[3.0, 3.0, 3.0], 0.95).unwrap(), (3.0, 3.0));
        let (lo, hi) = confidence_interval(&[0.0, 2.0], 0.95).unwrap();
        assert!((hi - 1.0 - 12.706).abs() < 1e-3);
        assert!((1.0 - lo - 12.706).abs() < 1e-3);
        assert!(confidence_interval(&[1.0], 0.95).is_err());
    }

    #[test]
    fn deterministic_spec_stops_in_first_round() {
        let t = InstanceTemplate::benchmark(1).unwrap().with_dims(2, 2, 2);
        let inst = generate_instance(&t, HorizonKind::Monthly, 2);
        let spec = UncertaintySpec::uniform_cells(2, 2, (50.0, 40.0), (0.0, 0.0), (40.0, 60.0), (20.0, 80.0), Family::Normal);
        for kind in [SpKind::ESp, SpKind::FSp] {
            let r = run_mco(&inst, &spec, kind, &McoOptions { replications: 3, n_eval: 20, ..Default::default() }).unwrap();
            assert!(r.converged);
            assert_eq!(r.rounds.len(), 1);
            assert!(r.final_aoi.abs() < 1e-6);
        }
    }
}
