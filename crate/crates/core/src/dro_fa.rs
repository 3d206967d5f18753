//! Distributionally robust FA model solved by column-and-constraint
//! generation.
//!
//! The master keeps headcount `x`, moment multipliers `α, β` and one
//! epigraph variable `δ_t` per day, with a recourse block and an optimality
//! cut for every scenario in the day's pool. The per-day subproblem finds the
//! support corner that maximizes recourse minus the moment terms; it works
//! on the recourse dual `(ρ, λ)`, picks the corner with binaries `g` (demand
//! high) and `z` (service time high), and linearizes the products
//! `q = gρ`, `r = zρ`, `e = gzρ` with McCormick envelopes.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::milp::{self, Cmp, ModelSpec, Sense, SolveStatus, SolverOptions, Var};
use crate::scenario::UncertaintySpec;
use crate::sp::{self, FaSolution, SolveMeta};

/// `ρ̲_{l,t} = min_{k: l ∈ R_k} (c_{k,l,t} − c^o_{k,t})`, as `[l][t]`.
pub fn rho_lower_bounds(inst: &Instance) -> Result<Vec<Vec<f64>>> {
    let mut out = vec![vec![f64::INFINITY; inst.n_days]; inst.n_services];
    for (k, r) in inst.skills.iter().enumerate() {
        for &l in r {
            for t in 0..inst.n_days {
                let v = inst.alloc_cost[k][l][t] - inst.over_cost_kt[k][t];
                out[l][t] = out[l][t].min(v);
            }
        }
    }
    if let Some(l) = out.iter().position(|row| row.iter().any(|v| v.is_infinite())) {
        return Err(Error::InvalidInput(format!("service l={} has no covering caregiver type", l + 1)));
    }
    Ok(out)
}

/// Bounds on the dual and moment variables, all `[l][t]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualBounds {
    pub rho_lo: Vec<Vec<f64>>,
    pub alpha_lo: Vec<Vec<f64>>,
    pub alpha_hi: Vec<Vec<f64>>,
    pub beta_lo: Vec<Vec<f64>>,
    pub beta_hi: Vec<Vec<f64>>,
}

impl DualBounds {
    /// Same `ρ̲`, with the `α, β` boxes multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> DualBounds {
        let s = |g: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            g.iter().map(|r| r.iter().map(|v| v * factor).collect()).collect()
        };
        DualBounds {
            rho_lo: self.rho_lo.clone(),
            alpha_lo: s(&self.alpha_lo),
            alpha_hi: s(&self.alpha_hi),
            beta_lo: s(&self.beta_lo),
            beta_hi: s(&self.beta_hi),
        }
    }
}

/// `ᾱ = s̄ c^u`, `α̲ = −s̄|ρ̲|`, `β̄ = d̄ c^u`, `β̲ = −d̄|ρ̲|`.
pub fn alpha_beta_bounds(inst: &Instance, spec: &UncertaintySpec, rho_lo: &[Vec<f64>]) -> DualBounds {
    let (nl, nt) = (inst.n_services, inst.n_days);
    let grid = |f: &dyn Fn(usize, usize) -> f64| -> Vec<Vec<f64>> {
        (0..nl).map(|l| (0..nt).map(|t| f(l, t)).collect()).collect()
    };
    DualBounds {
        rho_lo: rho_lo.to_vec(),
        alpha_hi: grid(&|l, t| spec.s_hi[l][t] * inst.under_cost[l][t]),
        alpha_lo: grid(&|l, t| -spec.s_hi[l][t] * rho_lo[l][t].abs()),
        beta_hi: grid(&|l, t| spec.d_hi[l][t] * inst.under_cost[l][t]),
        beta_lo: grid(&|l, t| -spec.d_hi[l][t] * rho_lo[l][t].abs()),
    }
}

/// Demand and service time of every service on one day.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DayScenario {
    pub d: Vec<f64>,
    pub s: Vec<f64>,
}

impl DayScenario {
    pub fn minutes(&self) -> Vec<f64> {
        self.d.iter().zip(&self.s).map(|(d, s)| d * s).collect()
    }
}

/// Per-day scenario pools of the master.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScenarioPool {
    pub days: Vec<Vec<DayScenario>>,
}

impl ScenarioPool {
    pub fn empty(n_days: usize) -> Self {
        ScenarioPool {
            days: vec![Vec::new(); n_days],
        }
    }

    /// One scenario per day at the mean `ξ = μ`.
    pub fn mean(spec: &UncertaintySpec) -> Self {
        let days = (0..spec.n_days)
            .map(|t| {
                vec![DayScenario {
                    d: (0..spec.n_services).map(|l| spec.mean_d[l][t]).collect(),
                    s: (0..spec.n_services).map(|l| spec.mean_s[l][t]).collect(),
                }]
            })
            .collect();
        ScenarioPool { days }
    }

    /// Every support corner of every day (`4^L` per day).
    pub fn all_corners(spec: &UncertaintySpec) -> Self {
        let nl = spec.n_services;
        let days = (0..spec.n_days)
            .map(|t| {
                (0..4usize.pow(nl as u32))
                    .map(|code| {
                        let g: Vec<bool> = (0..nl).map(|l| (code >> (2 * l)) & 1 == 1).collect();
                        let z: Vec<bool> = (0..nl).map(|l| (code >> (2 * l + 1)) & 1 == 1).collect();
                        recover_scenario(&g, &z, spec, t)
                    })
                    .collect()
            })
            .collect();
        ScenarioPool { days }
    }

    pub fn len(&self) -> usize {
        self.days.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, t: usize, sc: &DayScenario) -> bool {
        self.days[t].iter().any(|p| p == sc)
    }

    /// Insert unless already present; returns whether it was new.
    pub fn insert(&mut self, t: usize, sc: DayScenario) -> bool {
        if self.contains(t, &sc) {
            false
        } else {
            self.days[t].push(sc);
            true
        }
    }
}

/// `d = d̲ + Δd·g`, `s = s̲ + Δs·z` for day `t`.
pub fn recover_scenario(g: &[bool], z: &[bool], spec: &UncertaintySpec, t: usize) -> DayScenario {
    let d = g
        .iter()
        .enumerate()
        .map(|(l, &hi)| if hi { spec.d_hi[l][t] } else { spec.d_lo[l][t] })
        .collect();
    let s = z
        .iter()
        .enumerate()
        .map(|(l, &hi)| if hi { spec.s_hi[l][t] } else { spec.s_lo[l][t] })
        .collect();
    DayScenario { d, s }
}

#[derive(Debug, Clone)]
pub struct MasterModel {
    pub model: ModelSpec,
    pub x: Vec<Var>,
    pub alpha: Vec<Vec<Var>>,
    pub beta: Vec<Vec<Var>>,
    pub delta: Vec<Var>,
}

/// Master problem over the current pool. `bounds = None` leaves `α, β`
/// free, which is unbounded below when a day's pool is empty.
pub fn build_master(
    inst: &Instance,
    spec: &UncertaintySpec,
    pool: &ScenarioPool,
    bounds: Option<&DualBounds>,
) -> Result<MasterModel> {
    spec.check_dims(inst)?;
    if pool.days.len() != inst.n_days {
        return Err(Error::Dimension(format!("pool has {} days, T = {}", pool.days.len(), inst.n_days)));
    }
    let (nl, nt) = (inst.n_services, inst.n_days);
    let mut m = ModelSpec::new("f-dhscp-master", Sense::Minimize);
    let x = sp::add_staffing(&mut m, inst);
    let mut alpha = vec![Vec::with_capacity(nt); nl];
    let mut beta = vec![Vec::with_capacity(nt); nl];
    for l in 0..nl {
        for t in 0..nt {
            let (alo, ahi, blo, bhi) = match bounds {
                Some(b) => (b.alpha_lo[l][t], b.alpha_hi[l][t], b.beta_lo[l][t], b.beta_hi[l][t]),
                None => (f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY),
            };
            let a = m.continuous(format!("alpha[{l},{t}]"), alo, ahi);
            let b = m.continuous(format!("beta[{l},{t}]"), blo, bhi);
            m.add_objective(a, spec.mean_d[l][t]);
            m.add_objective(b, spec.mean_s[l][t]);
            alpha[l].push(a);
            beta[l].push(b);
        }
    }
    let delta: Vec<Var> = (0..nt).map(|t| m.free(format!("delta[{t}]"))).collect();
    for &d in &delta {
        m.add_objective(d, 1.0);
    }
    for (t, scenarios) in pool.days.iter().enumerate() {
        for (n, sc) in scenarios.iter().enumerate() {
            let minutes = sc.minutes();
            let (cost, constant) =
                sp::add_fa_recourse_compact(&mut m, inst, &x, t, &format!("{t},{n}"), 0.0, |l| minutes[l]);
            let mut row = vec![(delta[t], 1.0)];
            row.extend(cost.into_iter().map(|(v, c)| (v, -c)));
            for l in 0..nl {
                row.push((alpha[l][t], sc.d[l]));
                row.push((beta[l][t], sc.s[l]));
            }
            m.constrain(format!("cut[{t},{n}]"), row, Cmp::Ge, constant);
        }
    }
    Ok(MasterModel {
        model: m,
        x,
        alpha,
        beta,
        delta,
    })
}

#[derive(Debug, Clone)]
pub struct SubproblemModel {
    pub model: ModelSpec,
    pub rho: Vec<Var>,
    pub lambda: Vec<Var>,
    pub g: Vec<Var>,
    pub z: Vec<Var>,
}

/// Per-day worst-case subproblem at the master incumbent. `alpha`, `beta`
/// and `rho_lo` are indexed by service for day `t`.
pub fn build_subproblem_t(
    inst: &Instance,
    spec: &UncertaintySpec,
    t: usize,
    x: &[u32],
    alpha: &[f64],
    beta: &[f64],
    rho_lo: &[f64],
) -> Result<SubproblemModel> {
    sp::check_headcount(inst, x)?;
    spec.check_dims(inst)?;
    if t >= inst.n_days {
        return Err(Error::InvalidInput(format!("day {t} out of range")));
    }
    let nl = inst.n_services;
    let mut m = ModelSpec::new(format!("f-dhscp-sub-{t}"), Sense::Maximize);
    let mut rho = Vec::with_capacity(nl);
    let mut g = Vec::with_capacity(nl);
    let mut z = Vec::with_capacity(nl);
    let mut constant = 0.0;
    for l in 0..nl {
        let (dlo, dhi, slo, shi) = (spec.d_lo[l][t], spec.d_hi[l][t], spec.s_lo[l][t], spec.s_hi[l][t]);
        let (dd, ds) = (dhi - dlo, shi - slo);
        let (lo, hi) = (rho_lo[l], inst.under_cost[l][t]);
        let p = m.continuous(format!("rho[{l}]"), lo, hi);
        let gl = m.binary(format!("g[{l}]"));
        let zl = m.binary(format!("z[{l}]"));
        let v = m.continuous(format!("v[{l}]"), 0.0, 1.0);
        m.constrain(format!("v_g[{l}]"), vec![(v, 1.0), (gl, -1.0)], Cmp::Le, 0.0);
        m.constrain(format!("v_z[{l}]"), vec![(v, 1.0), (zl, -1.0)], Cmp::Le, 0.0);
        m.constrain(format!("v_gz[{l}]"), vec![(v, 1.0), (gl, -1.0), (zl, -1.0)], Cmp::Ge, -1.0);
        for (name, bin, coef) in [("q", gl, dd * slo), ("r", zl, ds * dlo), ("e", v, dd * ds)] {
            let w = m.continuous(format!("{name}[{l}]"), lo.min(0.0), hi.max(0.0));
            m.constrain(format!("{name}_lo[{l}]"), vec![(w, 1.0), (bin, -lo)], Cmp::Ge, 0.0);
            m.constrain(format!("{name}_hi[{l}]"), vec![(w, 1.0), (bin, -hi)], Cmp::Le, 0.0);
            m.constrain(format!("{name}_rlo[{l}]"), vec![(w, 1.0), (p, -1.0), (bin, -lo)], Cmp::Le, -lo);
            m.constrain(format!("{name}_rhi[{l}]"), vec![(w, 1.0), (p, -1.0), (bin, -hi)], Cmp::Ge, -hi);
            m.add_objective(w, coef);
        }
        m.add_objective(p, dlo * slo);
        m.add_objective(gl, -dd * alpha[l]);
        m.add_objective(zl, -ds * beta[l]);
        constant -= dlo * alpha[l] + slo * beta[l];
        rho.push(p);
        g.push(gl);
        z.push(zl);
    }
    m.add_objective_constant(constant);
    let mut lambda = Vec::with_capacity(inst.n_types);
    for (k, r) in inst.skills.iter().enumerate() {
        let co = inst.over_cost_kt[k][t];
        let floor = r
            .iter()
            .map(|&l| inst.alloc_cost[k][l][t] - inst.under_cost[l][t])
            .fold(co, f64::min);
        let lk = m.continuous(format!("lambda[{k}]"), floor, co);
        m.add_objective(lk, f64::from(x[k]) * inst.capacity[k]);
        for &l in r {
            m.constrain(
                format!("dualfeas[{k},{l}]"),
                vec![(rho[l], 1.0), (lk, 1.0)],
                Cmp::Le,
                inst.alloc_cost[k][l][t],
            );
        }
        lambda.push(lk);
    }
    Ok(SubproblemModel {
        model: m,
        rho,
        lambda,
        g,
        z,
    })
}

/// Outcome of one subproblem solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubproblemSolution {
    /// Value of the returned corner, recomputed exactly. The MIP's own
    /// incumbent value can drift when wide `ρ` boxes amplify integrality
    /// slack in the linearized products.
    pub objective: f64,
    pub mip_objective: f64,
    /// Proven upper bound on the day's worst case.
    pub bound: f64,
    pub g: Vec<bool>,
    pub z: Vec<bool>,
    pub rho: Vec<f64>,
    pub lambda: Vec<f64>,
    pub scenario: DayScenario,
    /// Recourse cost at the recovered corner minus the moment terms,
    /// evaluated exactly.
    pub exact_value: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn solve_subproblem_t(
    inst: &Instance,
    spec: &UncertaintySpec,
    t: usize,
    x: &[u32],
    alpha: &[f64],
    beta: &[f64],
    rho_lo: &[f64],
    opts: &SolverOptions,
) -> Result<SubproblemSolution> {
    let built = build_subproblem_t(inst, spec, t, x, alpha, beta, rho_lo)?;
    let r = milp::solve(&built.model, opts)?.require_solution()?;
    let g: Vec<bool> = built.g.iter().map(|&v| r.value(v) > 0.5).collect();
    let z: Vec<bool> = built.z.iter().map(|&v| r.value(v) > 0.5).collect();
    let scenario = recover_scenario(&g, &z, spec, t);
    let moment: f64 = (0..inst.n_services)
        .map(|l| scenario.d[l] * alpha[l] + scenario.s[l] * beta[l])
        .sum();
    let exact_value = sp::fa_day(inst, x, t, &scenario.minutes()).cost - moment;
    let bound = if r.best_bound.is_finite() { r.best_bound } else { r.objective };
    Ok(SubproblemSolution {
        objective: exact_value,
        mip_objective: r.objective,
        bound: bound.max(r.objective),
        rho: built.rho.iter().map(|&v| r.value(v)).collect(),
        lambda: built.lambda.iter().map(|&v| r.value(v)).collect(),
        g,
        z,
        scenario,
        exact_value,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcgOptions {
    /// Relative optimality tolerance `(UB − LB)/UB`.
    pub epsilon: f64,
    pub max_iterations: usize,
    /// Wall-clock limit of the whole loop, seconds.
    pub time_limit: f64,
    /// Seed the pool with the mean scenario and box `α, β` with the tight
    /// bounds. When off, the loop starts from minimum staffing with zero
    /// multipliers and uses boxes `loose_box_factor` times wider.
    pub valid_inequalities: bool,
    pub loose_box_factor: f64,
    pub master_gap: f64,
    pub sub_gap: f64,
    pub threads: u32,
}

impl Default for CcgOptions {
    fn default() -> Self {
        CcgOptions {
            epsilon: 0.02,
            max_iterations: 500,
            time_limit: 7200.0,
            valid_inequalities: true,
            loose_box_factor: 100.0,
            master_gap: 1e-4,
            sub_gap: 1e-9,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CcgStatus {
    Converged,
    IterationLimit,
    TimeLimit,
    /// Every recovered scenario was already pooled while the gap stayed open.
    Stalled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcgIteration {
    pub iteration: usize,
    pub lb: f64,
    pub ub: f64,
    pub master_objective: f64,
    pub master_bound: f64,
    /// `Σ_t W_t` at this iteration's master solution.
    pub sub_total: f64,
    pub pool_size: usize,
    pub added: usize,
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcgResult {
    pub status: CcgStatus,
    pub solution: FaSolution,
    /// Moment multipliers of the incumbent, `[l][t]`.
    pub alpha: Vec<Vec<f64>>,
    pub beta: Vec<Vec<f64>>,
    pub lb: f64,
    pub ub: f64,
    pub gap: f64,
    pub iterations: Vec<CcgIteration>,
    pub pool_size: usize,
    pub wall_time: f64,
}

impl CcgResult {
    pub fn objective(&self) -> f64 {
        self.ub
    }

    pub fn n_iterations(&self) -> usize {
        self.iterations.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

fn relative_gap(lb: f64, ub: f64) -> f64 {
    if !ub.is_finite() || !lb.is_finite() {
        return f64::INFINITY;
    }
    (ub - lb).max(0.0) / ub.abs().max(1e-9)
}

struct Incumbent {
    x: Vec<u32>,
    alpha: Vec<Vec<f64>>,
    beta: Vec<Vec<f64>>,
}

/// Worst-case subproblems of every day at `(x, α, β)`.
fn solve_all_days(
    inst: &Instance,
    spec: &UncertaintySpec,
    x: &[u32],
    alpha: &[Vec<f64>],
    beta: &[Vec<f64>],
    rho_lo: &[Vec<f64>],
    opts: &SolverOptions,
) -> Result<Vec<SubproblemSolution>> {
    (0..inst.n_days)
        .into_par_iter()
        .map(|t| {
            let col = |g: &[Vec<f64>]| -> Vec<f64> { g.iter().map(|r| r[t]).collect() };
            solve_subproblem_t(inst, spec, t, x, &col(alpha), &col(beta), &col(rho_lo), opts)
        })
        .collect()
}

fn moment_cost(spec: &UncertaintySpec, alpha: &[Vec<f64>], beta: &[Vec<f64>]) -> f64 {
    let mut total = 0.0;
    for l in 0..spec.n_services {
        for t in 0..spec.n_days {
            total += spec.mean_d[l][t] * alpha[l][t] + spec.mean_s[l][t] * beta[l][t];
        }
    }
    total
}

/// Column-and-constraint generation for F-DHSCP.
pub fn solve_fdhscp_ccg(inst: &Instance, spec: &UncertaintySpec, opts: &CcgOptions) -> Result<CcgResult> {
    inst.ensure_valid()?;
    spec.ensure_valid()?;
    spec.check_dims(inst)?;
    if !(opts.epsilon >= 0.0) || opts.max_iterations == 0 {
        return Err(Error::InvalidInput("C&CG needs ε ≥ 0 and at least one iteration".into()));
    }
    if inst.staff_min > inst.staff_max {
        return Err(Error::InvalidInput("master infeasible: staff_min > staff_max".into()));
    }
    let start = Instant::now();
    let (nl, nt) = (inst.n_services, inst.n_days);
    let rho_lo = rho_lower_bounds(inst)?;
    let tight = alpha_beta_bounds(inst, spec, &rho_lo);
    let boxes = if opts.valid_inequalities {
        tight
    } else {
        tight.scaled(opts.loose_box_factor)
    };
    let master_opts = SolverOptions {
        mip_gap: opts.master_gap,
        time_limit: opts.time_limit,
        threads: opts.threads,
        seed: 0,
    };
    let sub_opts = SolverOptions {
        mip_gap: opts.sub_gap,
        ..master_opts.clone()
    };

    let mut pool;
    let mut lb = f64::NEG_INFINITY;
    let mut ub = f64::INFINITY;
    let mut incumbent: Option<Incumbent> = None;
    let mut trace = Vec::new();

    let evaluate_point = |x: &[u32], alpha: &[Vec<f64>], beta: &[Vec<f64>]| -> Result<(Vec<SubproblemSolution>, f64)> {
        let subs = solve_all_days(inst, spec, x, alpha, beta, &rho_lo, &sub_opts)?;
        let worst: f64 = subs.iter().map(|s| s.bound.max(s.exact_value)).sum();
        Ok((subs, inst.hire_cost_of(x) + moment_cost(spec, alpha, beta) + worst))
    };

    if opts.valid_inequalities {
        pool = ScenarioPool::mean(spec);
    } else {
        pool = ScenarioPool::empty(nt);
        let cheapest = (0..inst.n_types)
            .min_by(|&a, &b| inst.hire_cost[a].total_cmp(&inst.hire_cost[b]))
            .unwrap_or(0);
        let mut x0 = vec![0u32; inst.n_types];
        x0[cheapest] = inst.staff_min;
        let zero = vec![vec![0.0; nt]; nl];
        let (subs, value) = evaluate_point(&x0, &zero, &zero)?;
        for (t, s) in subs.into_iter().enumerate() {
            pool.insert(t, s.scenario);
        }
        ub = value;
        incumbent = Some(Incumbent {
            x: x0,
            alpha: zero.clone(),
            beta: zero,
        });
    }

    let mut status = CcgStatus::IterationLimit;
    for it in 1..=opts.max_iterations {
        let remaining = opts.time_limit - start.elapsed().as_secs_f64();
        if remaining <= 0.0 {
            status = CcgStatus::TimeLimit;
            break;
        }
        let master = build_master(inst, spec, &pool, Some(&boxes))?;
        let mo = SolverOptions {
            time_limit: remaining,
            ..master_opts.clone()
        };
        let r = milp::solve(&master.model, &mo)?;
        let master_time = r.wall_time;
        if r.status == SolveStatus::TimeLimit && r.values.is_empty() {
            status = CcgStatus::TimeLimit;
            break;
        }
        if r.status == SolveStatus::Infeasible {
            return Err(Error::Solver {
                status: "infeasible".into(),
                message: "C&CG master is infeasible".into(),
            });
        }
        let r = if r.status == SolveStatus::TimeLimit { r } else { r.require_solution()? };
        let x: Vec<u32> = master.x.iter().map(|&v| r.value(v).round().max(0.0) as u32).collect();
        let grid = |g: &Vec<Vec<Var>>| -> Vec<Vec<f64>> {
            g.iter().map(|row| row.iter().map(|&v| r.value(v)).collect()).collect()
        };
        let alpha = grid(&master.alpha);
        let beta = grid(&master.beta);
        let delta_sum: f64 = master.delta.iter().map(|&v| r.value(v)).sum();
        let bound = if r.best_bound.is_finite() { r.best_bound } else { r.objective };
        lb = lb.max(bound);

        let sub_start = Instant::now();
        let (subs, exact_ub) = evaluate_point(&x, &alpha, &beta)?;
        let sub_time = sub_start.elapsed().as_secs_f64();
        let sub_total: f64 = subs.iter().map(|s| s.mip_objective).sum();
        let formula_ub = sub_total + (lb - delta_sum);
        let candidate = exact_ub.min(formula_ub);
        if candidate < ub {
            ub = candidate;
            incumbent = Some(Incumbent {
                x: x.clone(),
                alpha: alpha.clone(),
                beta: beta.clone(),
            });
        }
        // The bound from a non-optimal master is still valid, but the
        // recorded LB must never cross the UB because of solver slack.
        lb = lb.min(ub);

        let mut added = 0;
        for (t, s) in subs.into_iter().enumerate() {
            if pool.insert(t, s.scenario) {
                added += 1;
            }
        }
        trace.push(CcgIteration {
            iteration: it,
            lb,
            ub,
            master_objective: r.objective,
            master_bound: bound,
            sub_total,
            pool_size: pool.len(),
            added,
            elapsed: start.elapsed().as_secs_f64(),
        });
        log::debug!("ccg it={it} lb={lb:.3} ub={ub:.3} added={added} master={master_time:.2}s subproblems={sub_time:.2}s");
        if relative_gap(lb, ub) <= opts.epsilon {
            status = CcgStatus::Converged;
            break;
        }
        if added == 0 {
            status = CcgStatus::Stalled;
            log::warn!("C&CG stalled at iteration {it}: all recovered scenarios already pooled");
            break;
        }
        if start.elapsed().as_secs_f64() >= opts.time_limit {
            status = CcgStatus::TimeLimit;
            break;
        }
    }

    let inc = incumbent.ok_or_else(|| Error::Solver {
        status: format!("{status:?}"),
        message: "no incumbent found".into(),
    })?;
    let first = inst.hire_cost_of(&inc.x);
    let gap = relative_gap(lb, ub);
    Ok(CcgResult {
        status,
        solution: FaSolution {
            x: inc.x,
            first_stage_cost: first,
            second_stage_cost: ub - first,
            meta: SolveMeta {
                status: if status == CcgStatus::Converged { SolveStatus::Optimal } else { SolveStatus::GapLimit },
                objective: ub,
                best_bound: lb,
                gap,
                wall_time: start.elapsed().as_secs_f64(),
            },
        },
        alpha: inc.alpha,
        beta: inc.beta,
        lb,
        ub,
        gap,
        pool_size: pool.len(),
        iterations: trace,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
