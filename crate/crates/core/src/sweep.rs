//! Penalty sweeps: headcount as a function of `c^u` or `c^o`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::models::{solve_model, ModelKind, ModelOptions};
use crate::scenario::UncertaintySpec;

/// Which penalty varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Under,
    Over,
}

/// The grids used for each decision-maker: `(varied values, fixed other)`.
pub fn default_grid(kind: ModelKind, axis: SweepAxis) -> (Vec<f64>, f64) {
    match (kind.is_ea(), axis) {
        (true, SweepAxis::Under) => (vec![1.0, 5.0, 10.0, 15.0, 20.0, 25.0], 1.0),
        (true, SweepAxis::Over) => (vec![1.0, 5.0, 10.0, 15.0, 20.0, 25.0], 10.0),
        (false, SweepAxis::Under) => (vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0], 2.0),
        (false, SweepAxis::Over) => (vec![2.0, 3.0, 4.0, 5.0, 6.0, 7.0], 5.0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub model: String,
    pub under_cost: f64,
    pub over_cost: f64,
    pub headcount: u32,
    /// Headcount per caregiver type, `;`-separated.
    pub x: String,
    pub objective: f64,
    pub wall_time: f64,
}

/// Solve `kind` for every `(c^u, c^o)` pair in `pairs`, with flat penalties.
pub fn penalty_sweep(
    inst: &Instance,
    spec: &UncertaintySpec,
    kind: ModelKind,
    pairs: &[(f64, f64)],
    opts: &ModelOptions,
) -> Result<Vec<SweepRow>> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput("sweep grid is empty".into()));
    }
    pairs
        .iter()
        .map(|&(cu, co)| {
            let variant = inst.with_penalties(cu, co);
            let out = solve_model(&variant, spec, kind, opts)?;
            let x = out.plan.x();
            Ok(SweepRow {
                model: kind.name().to_string(),
                under_cost: cu,
                over_cost: co,
                headcount: out.plan.headcount(),
                x: x.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
                objective: out.objective,
                wall_time: out.wall_time,
            })
        })
        .collect()
}

/// Grid pairs for sweeping one axis with the other fixed.
pub fn axis_pairs(values: &[f64], fixed: f64, axis: SweepAxis) -> Vec<(f64, f64)> {
    values
        .iter()
        .map(|&v| match axis {
            SweepAxis::Under => (v, fixed),
            SweepAxis::Over => (fixed, v),
        })
        .collect()
}

/// Number of adjacent steps where headcount moves against the expected
/// direction, and the largest such move.
pub fn monotonicity_violations(headcounts: &[u32], increasing: bool) -> (usize, u32) {
    let mut count = 0;
    let mut worst = 0;
    for w in headcounts.windows(2) {
        let against = if increasing {
            w[0].saturating_sub(w[1])
        } else {
            w[1].saturating_sub(w[0])
        };
        if against > 0 {
            count += 1;
            worst = worst.max(against);
        }
    }
    (count, worst)
}

pub fn write_csv(rows: &[SweepRow], path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path.as_ref())?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path.as_ref(), e))
}
