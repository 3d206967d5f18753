//! Distributionally robust EA model over the mean-support ambiguity set.
//!
//! For fixed allocation the EA recourse of one cell is
//! `Q = max(c^u (ds − Y), c^o (Y − ds))`, convex in `d·s`. Dualizing the
//! moment constraints leaves `min μ^d α + μ^s β + η` with
//! `η ≥ Q(d, s) − dα − sβ` over the support, and the maximum of the right
//! side is attained at one of the four support corners. Each corner times
//! the two linear pieces of `Q` gives eight rows per cell.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::Instance;
use crate::milp::{self, Cmp, ModelSpec, Sense, SolverOptions, Var};
use crate::scenario::UncertaintySpec;
use crate::sp::{self, allocation_cost, EaSolution, EaVars, SolveMeta};

/// Support box of one `(l, t)` cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellSupport {
    pub d_lo: f64,
    pub d_hi: f64,
    pub s_lo: f64,
    pub s_hi: f64,
}

impl CellSupport {
    pub fn of(spec: &UncertaintySpec, l: usize, t: usize) -> Self {
        CellSupport {
            d_lo: spec.d_lo[l][t],
            d_hi: spec.d_hi[l][t],
            s_lo: spec.s_lo[l][t],
            s_hi: spec.s_hi[l][t],
        }
    }

    pub fn corners(&self) -> [(f64, f64); 4] {
        [
            (self.d_lo, self.s_lo),
            (self.d_lo, self.s_hi),
            (self.d_hi, self.s_lo),
            (self.d_hi, self.s_hi),
        ]
    }
}

/// Pointwise inner maximum of one cell: the largest of the eight corner
/// rows at the given `(Y, α, β)`.
pub fn corner_eta(y_sum: f64, alpha: f64, beta: f64, support: CellSupport, cu: f64, co: f64) -> f64 {
    support
        .corners()
        .iter()
        .flat_map(|&(d, s)| {
            [cu, -co].map(|rho| rho * (d * s - y_sum) - d * alpha - s * beta)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Moment multipliers and epigraph values of a solved model, `[l][t]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EaDroDuals {
    pub alpha: Vec<Vec<f64>>,
    pub beta: Vec<Vec<f64>>,
    pub eta: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct EdroModel {
    pub model: ModelSpec,
    pub(crate) vars: EaVars,
    pub alpha: Vec<Vec<Var>>,
    pub beta: Vec<Vec<Var>>,
    pub eta: Vec<Vec<Var>>,
}

/// Add `α, β, η` and the eight corner rows for each cell. `alloc[l][t]`
/// holds the terms of `Y_{l,t}` (empty when the allocation is fixed) and
/// `fixed[l][t]` any constant part of `Y`.
fn add_corner_block(
    m: &mut ModelSpec,
    inst: &Instance,
    spec: &UncertaintySpec,
    alloc: &[Vec<Vec<(Var, f64)>>],
    fixed: &[Vec<f64>],
) -> (Vec<Vec<Var>>, Vec<Vec<Var>>, Vec<Vec<Var>>) {
    let (nl, nt) = (inst.n_services, inst.n_days);
    let mut alpha = vec![Vec::with_capacity(nt); nl];
    let mut beta = vec![Vec::with_capacity(nt); nl];
    let mut eta = vec![Vec::with_capacity(nt); nl];
    for l in 0..nl {
        for t in 0..nt {
            let a = m.free(format!("alpha[{l},{t}]"));
            let b = m.free(format!("beta[{l},{t}]"));
            let e = m.free(format!("eta[{l},{t}]"));
            m.add_objective(a, spec.mean_d[l][t]);
            m.add_objective(b, spec.mean_s[l][t]);
            m.add_objective(e, 1.0);
            let cell = CellSupport::of(spec, l, t);
            for (c, &(d, s)) in cell.corners().iter().enumerate() {
                for (p, rho) in [inst.under_cost[l][t], -inst.over_cost_lt[l][t]].into_iter().enumerate() {
                    let mut row = vec![(e, 1.0), (a, d), (b, s)];
                    row.extend(alloc[l][t].iter().map(|&(v, w)| (v, rho * w)));
                    m.constrain(
                        format!("corner[{l},{t},{c},{p}]"),
                        row,
                        Cmp::Ge,
                        rho * (d * s - fixed[l][t]),
                    );
                }
            }
            alpha[l].push(a);
            beta[l].push(b);
            eta[l].push(e);
        }
    }
    (alpha, beta, eta)
}

/// The single-shot E-DHSCP MILP.
pub fn build_edhscp(inst: &Instance, spec: &UncertaintySpec) -> Result<EdroModel> {
    spec.ensure_valid()?;
    spec.check_dims(inst)?;
    let mut m = ModelSpec::new("e-dhscp", Sense::Minimize);
    let vars = sp::add_ea_first_stage(&mut m, inst);
    let mut alloc = vec![vec![Vec::new(); inst.n_days]; inst.n_services];
    for &(_, l, t, v) in &vars.y {
        alloc[l][t].push((v, 1.0));
    }
    let zero = vec![vec![0.0; inst.n_days]; inst.n_services];
    let (alpha, beta, eta) = add_corner_block(&mut m, inst, spec, &alloc, &zero);
    Ok(EdroModel {
        model: m,
        vars,
        alpha,
        beta,
        eta,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdroSolution {
    pub solution: EaSolution,
    pub duals: EaDroDuals,
}

/// Solve E-DHSCP. The second-stage cost is the model's worst-case
/// expectation term `Σ μα + μβ + η`.
pub fn solve_edhscp(inst: &Instance, spec: &UncertaintySpec, opts: &SolverOptions) -> Result<EdroSolution> {
    let built = build_edhscp(inst, spec)?;
    let r = milp::solve(&built.model, opts)?.require_solution()?;
    let (x, y) = built.vars.extract(inst, &r);
    let grid = |g: &Vec<Vec<Var>>| -> Vec<Vec<f64>> {
        g.iter().map(|row| row.iter().map(|&v| r.value(v)).collect()).collect()
    };
    let duals = EaDroDuals {
        alpha: grid(&built.alpha),
        beta: grid(&built.beta),
        eta: grid(&built.eta),
    };
    let first = inst.hire_cost_of(&x) + allocation_cost(inst, &y);
    Ok(EdroSolution {
        solution: EaSolution {
            second_stage_cost: r.objective - first,
            x,
            y,
            first_stage_cost: first,
            meta: SolveMeta::from_result(&r),
        },
        duals,
    })
}

/// `sup_{P ∈ F} E_P[Q(y, ξ)]` for a fixed allocation, as an LP in `(α, β, η)`.
pub fn worst_case_expectation_ea(inst: &Instance, spec: &UncertaintySpec, y: &[Vec<Vec<f64>>]) -> Result<f64> {
    spec.ensure_valid()?;
    spec.check_dims(inst)?;
    let mut m = ModelSpec::new("ea-worst-case", Sense::Minimize);
    let empty = vec![vec![Vec::new(); inst.n_days]; inst.n_services];
    let fixed = sp::allocated_minutes(inst, y);
    add_corner_block(&mut m, inst, spec, &empty, &fixed);
    let r = milp::solve(&m, &SolverOptions::default())?.require_solution()?;
    Ok(r.objective)
}
