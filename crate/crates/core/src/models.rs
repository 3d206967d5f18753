//! One entry point for the four models.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dro_ea;
use crate::dro_fa::{self, CcgOptions};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::milp::SolverOptions;
use crate::scenario::{sample_scenarios, UncertaintySpec};
use crate::seed::SeedStream;
use crate::sp::{self, EaSolution, FaSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    ESp,
    FSp,
    EDro,
    FDro,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [ModelKind::ESp, ModelKind::FSp, ModelKind::EDro, ModelKind::FDro];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::ESp => "e-sp",
            ModelKind::FSp => "f-sp",
            ModelKind::EDro => "e-dro",
            ModelKind::FDro => "f-dro",
        }
    }

    pub fn is_ea(self) -> bool {
        matches!(self, ModelKind::ESp | ModelKind::EDro)
    }

    pub fn is_sampled(self) -> bool {
        matches!(self, ModelKind::ESp | ModelKind::FSp)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown model '{s}' (e-sp, f-sp, e-dro, f-dro)")))
    }
}

/// First-stage decisions of either decision-maker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Plan {
    Ea(EaSolution),
    Fa(FaSolution),
}

impl Plan {
    pub fn x(&self) -> &[u32] {
        match self {
            Plan::Ea(s) => &s.x,
            Plan::Fa(s) => &s.x,
        }
    }

    pub fn headcount(&self) -> u32 {
        self.x().iter().sum()
    }

    pub fn objective(&self) -> f64 {
        match self {
            Plan::Ea(s) => s.objective(),
            Plan::Fa(s) => s.objective(),
        }
    }

    pub fn first_stage_cost(&self) -> f64 {
        match self {
            Plan::Ea(s) => s.first_stage_cost,
            Plan::Fa(s) => s.first_stage_cost,
        }
    }

    pub fn wall_time(&self) -> f64 {
        match self {
            Plan::Ea(s) => s.meta.wall_time,
            Plan::Fa(s) => s.meta.wall_time,
        }
    }
}

/// Settings shared by every model solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelOptions {
    /// SAA sample size for the stochastic programs.
    pub n_scenarios: usize,
    pub seed: u64,
    /// `None` uses the per-model default gap.
    pub solver: Option<SolverOptions>,
    pub ccg: CcgOptions,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            n_scenarios: 100,
            seed: 0,
            solver: None,
            ccg: CcgOptions::default(),
        }
    }
}

/// Solved model with its reported optimal value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelOutcome {
    pub model: ModelKind,
    pub plan: Plan,
    /// The model's own optimum: SAA objective or worst-case value.
    pub objective: f64,
    pub wall_time: f64,
}

pub fn solve_model(inst: &Instance, spec: &UncertaintySpec, kind: ModelKind, opts: &ModelOptions) -> Result<ModelOutcome> {
    inst.ensure_valid()?;
    spec.check_dims(inst)?;
    let start = std::time::Instant::now();
    let sample = || sample_scenarios(spec, opts.n_scenarios, SeedStream::new(opts.seed).child("saa").value());
    let plan = match kind {
        ModelKind::ESp => {
            let o = opts.solver.clone().unwrap_or_else(SolverOptions::sp_default);
            Plan::Ea(sp::solve_esp(inst, &sample()?, &o)?)
        }
        ModelKind::FSp => {
            let o = opts.solver.clone().unwrap_or_else(SolverOptions::fa_saa_default);
            Plan::Fa(sp::solve_fsp(inst, &sample()?, &o)?)
        }
        ModelKind::EDro => {
            let o = opts.solver.clone().unwrap_or_else(SolverOptions::sp_default);
            Plan::Ea(dro_ea::solve_edhscp(inst, spec, &o)?.solution)
        }
        ModelKind::FDro => Plan::Fa(dro_fa::solve_fdhscp_ccg(inst, spec, &opts.ccg)?.solution),
    };
    Ok(ModelOutcome {
        model: kind,
        objective: plan.objective(),
        plan,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
