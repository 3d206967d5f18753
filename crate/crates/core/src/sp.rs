//! Sample average approximation of the two stochastic programs, plus the
//! recourse evaluators shared by every model.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow;
use crate::instance::Instance;
use crate::milp::{self, Cmp, ModelSpec, Sense, SolveResult, SolveStatus, SolverOptions, Var};
use crate::scenario::ScenarioSet;

/// Solver bookkeeping attached to a solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveMeta {
    pub status: SolveStatus,
    pub objective: f64,
    pub best_bound: f64,
    pub gap: f64,
    pub wall_time: f64,
}

impl SolveMeta {
    pub fn from_result(r: &SolveResult) -> Self {
        SolveMeta {
            status: r.status,
            objective: r.objective,
            best_bound: r.best_bound,
            gap: r.gap,
            wall_time: r.wall_time,
        }
    }
}

/// Everything-in-advance decisions: headcount and allocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EaSolution {
    pub x: Vec<u32>,
    /// `y[k][l][t]` minutes; zero when `l ∉ R_k`.
    pub y: Vec<Vec<Vec<f64>>>,
    /// Hiring plus allocation cost.
    pub first_stage_cost: f64,
    /// Expected (SAA) or worst-case (DRO) second-stage cost.
    pub second_stage_cost: f64,
    pub meta: SolveMeta,
}

impl EaSolution {
    pub fn objective(&self) -> f64 {
        self.first_stage_cost + self.second_stage_cost
    }

    pub fn headcount(&self) -> u32 {
        self.x.iter().sum()
    }

    /// `Σ_k y[k][l][t]` as `[l][t]`.
    pub fn allocated(&self, inst: &Instance) -> Vec<Vec<f64>> {
        allocated_minutes(inst, &self.y)
    }
}

/// Flexible-adjustment decisions: headcount only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaSolution {
    pub x: Vec<u32>,
    pub first_stage_cost: f64,
    pub second_stage_cost: f64,
    pub meta: SolveMeta,
}

impl FaSolution {
    pub fn objective(&self) -> f64 {
        self.first_stage_cost + self.second_stage_cost
    }

    pub fn headcount(&self) -> u32 {
        self.x.iter().sum()
    }
}

pub fn allocated_minutes(inst: &Instance, y: &[Vec<Vec<f64>>]) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; inst.n_days]; inst.n_services];
    for (k, l) in inst.pairs() {
        for t in 0..inst.n_days {
            out[l][t] += y[k][l][t];
        }
    }
    out
}

pub fn allocation_cost(inst: &Instance, y: &[Vec<Vec<f64>>]) -> f64 {
    inst.pairs()
        .into_iter()
        .map(|(k, l)| (0..inst.n_days).map(|t| inst.alloc_cost[k][l][t] * y[k][l][t]).sum::<f64>())
        .sum()
}

/// Handles into the first-stage variables shared by both EA models.
#[derive(Debug, Clone)]
pub(crate) struct EaVars {
    pub x: Vec<Var>,
    /// `(k, l, t, var)` for `l ∈ R_k`.
    pub y: Vec<(usize, usize, usize, Var)>,
}

impl EaVars {
    pub(crate) fn extract(&self, inst: &Instance, r: &SolveResult) -> (Vec<u32>, Vec<Vec<Vec<f64>>>) {
        let x = self.x.iter().map(|&v| r.value(v).round().max(0.0) as u32).collect();
        let mut y = vec![vec![vec![0.0; inst.n_days]; inst.n_services]; inst.n_types];
        for &(k, l, t, v) in &self.y {
            y[k][l][t] = r.value(v).max(0.0);
        }
        (x, y)
    }
}

/// Integer headcount `x_k` with the total-staffing bounds.
pub(crate) fn add_staffing(m: &mut ModelSpec, inst: &Instance) -> Vec<Var> {
    let x: Vec<Var> = (0..inst.n_types)
        .map(|k| m.integer(format!("x[{k}]"), 0.0, f64::from(inst.staff_max)))
        .collect();
    for (k, &v) in x.iter().enumerate() {
        m.add_objective(v, inst.hire_cost[k]);
    }
    let all: Vec<(Var, f64)> = x.iter().map(|&v| (v, 1.0)).collect();
    m.constrain("staff_min", all.clone(), Cmp::Ge, f64::from(inst.staff_min));
    m.constrain("staff_max", all, Cmp::Le, f64::from(inst.staff_max));
    x
}

/// Staffing plus the EA allocation `y` with its capacity rows and cost.
pub(crate) fn add_ea_first_stage(m: &mut ModelSpec, inst: &Instance) -> EaVars {
    let x = add_staffing(m, inst);
    let mut y = Vec::new();
    for (k, r) in inst.skills.iter().enumerate() {
        for t in 0..inst.n_days {
            let mut row = vec![(x[k], -inst.capacity[k])];
            for &l in r {
                let v = m.nonneg(format!("y[{k},{l},{t}]"));
                m.add_objective(v, inst.alloc_cost[k][l][t]);
                row.push((v, 1.0));
                y.push((k, l, t, v));
            }
            m.constrain(format!("cap[{k},{t}]"), row, Cmp::Le, 0.0);
        }
    }
    EaVars { x, y }
}

/// The E-SP SAA model and its variable handles.
#[derive(Debug, Clone)]
pub struct EspModel {
    pub model: ModelSpec,
    pub(crate) vars: EaVars,
}

pub fn build_esp_saa(inst: &Instance, scen: &ScenarioSet) -> Result<EspModel> {
    scen.check_dims(inst)?;
    let mut m = ModelSpec::new("e-sp-saa", Sense::Minimize);
    let vars = add_ea_first_stage(&mut m, inst);
    let w = 1.0 / scen.n_scenarios as f64;
    let mut ysum: Vec<Vec<Vec<(Var, f64)>>> = vec![vec![Vec::new(); inst.n_days]; inst.n_services];
    for &(_, l, t, v) in &vars.y {
        ysum[l][t].push((v, 1.0));
    }
    for n in 0..scen.n_scenarios {
        for l in 0..inst.n_services {
            for t in 0..inst.n_days {
                let u = m.nonneg(format!("u[{n},{l},{t}]"));
                let o = m.nonneg(format!("o[{n},{l},{t}]"));
                m.add_objective(u, w * inst.under_cost[l][t]);
                m.add_objective(o, w * inst.over_cost_lt[l][t]);
                let mut row = ysum[l][t].clone();
                row.push((u, 1.0));
                row.push((o, -1.0));
                m.constrain(format!("bal[{n},{l},{t}]"), row, Cmp::Eq, scen.minutes(n, l, t));
            }
        }
    }
    Ok(EspModel { model: m, vars })
}

/// Solve E-SP by SAA. The second-stage cost reported is the closed-form
/// average over `scen` at the returned allocation.
pub fn solve_esp(inst: &Instance, scen: &ScenarioSet, opts: &SolverOptions) -> Result<EaSolution> {
    let built = build_esp_saa(inst, scen)?;
    let r = milp::solve(&built.model, opts)?.require_solution()?;
    let (x, y) = built.vars.extract(inst, &r);
    let first = inst.hire_cost_of(&x) + allocation_cost(inst, &y);
    let second = mean_recourse_ea(inst, &y, scen);
    Ok(EaSolution {
        x,
        y,
        first_stage_cost: first,
        second_stage_cost: second,
        meta: SolveMeta::from_result(&r),
    })
}

/// The F-SP SAA model and its variable handles.
#[derive(Debug, Clone)]
pub struct FspModel {
    pub model: ModelSpec,
    pub x: Vec<Var>,
}

pub fn build_fsp_saa(inst: &Instance, scen: &ScenarioSet) -> Result<FspModel> {
    scen.check_dims(inst)?;
    let mut m = ModelSpec::new("f-sp-saa", Sense::Minimize);
    let x = add_staffing(&mut m, inst);
    let w = 1.0 / scen.n_scenarios as f64;
    for n in 0..scen.n_scenarios {
        for t in 0..inst.n_days {
            add_fa_recourse_compact(&mut m, inst, &x, t, &format!("{n},{t}"), w, |l| scen.minutes(n, l, t));
        }
    }
    Ok(FspModel { model: m, x })
}

/// Recourse block of one scenario-day: `y`, `o_k`, `u_l` with the two
/// balance equalities. Costs enter the objective scaled by `weight`. Returns
/// the expression `Σ c y + Σ c^o o + Σ c^u u` as terms.
pub(crate) fn add_fa_recourse(
    m: &mut ModelSpec,
    inst: &Instance,
    x: &[Var],
    t: usize,
    tag: &str,
    weight: f64,
    minutes: impl Fn(usize) -> f64,
) -> Vec<(Var, f64)> {
    let mut cost_terms = Vec::new();
    let mut serve: Vec<Vec<(Var, f64)>> = vec![Vec::new(); inst.n_services];
    for (k, r) in inst.skills.iter().enumerate() {
        let o = m.nonneg(format!("o[{tag},{k}]"));
        let mut row = vec![(o, 1.0), (x[k], -inst.capacity[k])];
        cost_terms.push((o, inst.over_cost_kt[k][t]));
        for &l in r {
            let y = m.nonneg(format!("y[{tag},{k},{l}]"));
            row.push((y, 1.0));
            serve[l].push((y, 1.0));
            cost_terms.push((y, inst.alloc_cost[k][l][t]));
        }
        m.constrain(format!("capbal[{tag},{k}]"), row, Cmp::Eq, 0.0);
    }
    for (l, mut row) in serve.into_iter().enumerate() {
        let u = m.nonneg(format!("u[{tag},{l}]"));
        row.push((u, 1.0));
        cost_terms.push((u, inst.under_cost[l][t]));
        m.constrain(format!("dembal[{tag},{l}]"), row, Cmp::Eq, minutes(l));
    }
    if weight != 0.0 {
        for &(v, c) in &cost_terms {
            m.add_objective(v, weight * c);
        }
    }
    cost_terms
}

/// Same recourse block with the slacks substituted out:
/// `o_k = h_k x_k − Σ_l y_kl` and `u_l = m_l − Σ_k y_kl` become `≤` rows,
/// leaving only `y`. The cost is
/// `Σ_k c^o_k h_k x_k + Σ_l c^u_l m_l − Σ (c^u_l + c^o_k − c_kl) y_kl`,
/// returned as `(terms, constant)`.
pub(crate) fn add_fa_recourse_compact(
    m: &mut ModelSpec,
    inst: &Instance,
    x: &[Var],
    t: usize,
    tag: &str,
    weight: f64,
    minutes: impl Fn(usize) -> f64,
) -> (Vec<(Var, f64)>, f64) {
    let mut terms = Vec::new();
    let mut serve: Vec<Vec<(Var, f64)>> = vec![Vec::new(); inst.n_services];
    for (k, r) in inst.skills.iter().enumerate() {
        let mut row = vec![(x[k], -inst.capacity[k])];
        terms.push((x[k], inst.over_cost_kt[k][t] * inst.capacity[k]));
        for &l in r {
            let y = m.nonneg(format!("y[{tag},{k},{l}]"));
            row.push((y, 1.0));
            serve[l].push((y, 1.0));
            let profit = inst.under_cost[l][t] + inst.over_cost_kt[k][t] - inst.alloc_cost[k][l][t];
            terms.push((y, -profit));
        }
        m.constrain(format!("cap[{tag},{k}]"), row, Cmp::Le, 0.0);
    }
    let mut constant = 0.0;
    for (l, row) in serve.into_iter().enumerate() {
        let need = minutes(l);
        constant += inst.under_cost[l][t] * need;
        m.constrain(format!("dem[{tag},{l}]"), row, Cmp::Le, need);
    }
    if weight != 0.0 {
        for &(v, c) in &terms {
            m.add_objective(v, weight * c);
        }
        m.add_objective_constant(weight * constant);
    }
    (terms, constant)
}

pub fn solve_fsp(inst: &Instance, scen: &ScenarioSet, opts: &SolverOptions) -> Result<FaSolution> {
    let built = build_fsp_saa(inst, scen)?;
    let r = milp::solve(&built.model, opts)?.require_solution()?;
    let x: Vec<u32> = built.x.iter().map(|&v| r.value(v).round().max(0.0) as u32).collect();
    let first = inst.hire_cost_of(&x);
    Ok(FaSolution {
        second_stage_cost: r.objective - first,
        x,
        first_stage_cost: first,
        meta: SolveMeta::from_result(&r),
    })
}

/// EA recourse cost of one scenario given allocated minutes `Y[l][t]`.
/// `d` and `s` are `[l][t]` flattened.
pub fn recourse_cost_ea_from_alloc(inst: &Instance, alloc: &[Vec<f64>], d: &[f64], s: &[f64]) -> f64 {
    let nt = inst.n_days;
    let mut total = 0.0;
    for l in 0..inst.n_services {
        for t in 0..nt {
            let gap = d[l * nt + t] * s[l * nt + t] - alloc[l][t];
            total += if gap > 0.0 {
                inst.under_cost[l][t] * gap
            } else {
                -inst.over_cost_lt[l][t] * gap
            };
        }
    }
    total
}

/// Closed-form EA recourse `Σ c^u (ds − Y)⁺ + c^o (Y − ds)⁺`.
pub fn recourse_cost_ea(inst: &Instance, y: &[Vec<Vec<f64>>], d: &[f64], s: &[f64]) -> f64 {
    recourse_cost_ea_from_alloc(inst, &allocated_minutes(inst, y), d, s)
}

/// The same value from the recourse dual, maximized over its two extreme
/// points `ρ ∈ {−c^o, c^u}` per cell.
pub fn recourse_cost_ea_dual(inst: &Instance, y: &[Vec<Vec<f64>>], d: &[f64], s: &[f64]) -> f64 {
    let alloc = allocated_minutes(inst, y);
    let nt = inst.n_days;
    let mut total = 0.0;
    for l in 0..inst.n_services {
        for t in 0..nt {
            let gap = d[l * nt + t] * s[l * nt + t] - alloc[l][t];
            total += (gap * inst.under_cost[l][t]).max(-gap * inst.over_cost_lt[l][t]);
        }
    }
    total
}

/// Average closed-form EA recourse over a scenario set.
pub fn mean_recourse_ea(inst: &Instance, y: &[Vec<Vec<f64>>], scen: &ScenarioSet) -> f64 {
    let alloc = allocated_minutes(inst, y);
    let costs: Vec<f64> = (0..scen.n_scenarios)
        .map(|n| recourse_cost_ea_from_alloc(inst, &alloc, scen.scenario_d(n), scen.scenario_s(n)))
        .collect();
    crate::stats::mean(&costs)
}

/// Optimal FA recourse of one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct FaRecourse {
    pub cost: f64,
    /// `y[k][l][t]`.
    pub y: Vec<Vec<Vec<f64>>>,
    /// `o[k][t]`.
    pub over: Vec<Vec<f64>>,
    /// `u[l][t]`.
    pub under: Vec<Vec<f64>>,
}

/// Per-day FA recourse given `minutes[l] = d·s`, solved exactly as a
/// transportation flow.
pub fn fa_day(inst: &Instance, x: &[u32], t: usize, minutes: &[f64]) -> flow::DayRecourse {
    let alloc: Vec<Vec<f64>> = (0..inst.n_types)
        .map(|k| (0..inst.n_services).map(|l| inst.alloc_cost[k][l][t]).collect())
        .collect();
    let over: Vec<f64> = (0..inst.n_types).map(|k| inst.over_cost_kt[k][t]).collect();
    let under: Vec<f64> = (0..inst.n_services).map(|l| inst.under_cost[l][t]).collect();
    let cap: Vec<f64> = (0..inst.n_types).map(|k| f64::from(x[k]) * inst.capacity[k]).collect();
    flow::solve_day(&inst.skills, &alloc, &over, &under, &cap, minutes)
}

fn day_minutes(inst: &Instance, t: usize, d: &[f64], s: &[f64]) -> Vec<f64> {
    let nt = inst.n_days;
    (0..inst.n_services).map(|l| d[l * nt + t] * s[l * nt + t]).collect()
}

fn assemble(inst: &Instance, days: Vec<flow::DayRecourse>) -> FaRecourse {
    let (nk, nl, nt) = (inst.n_types, inst.n_services, inst.n_days);
    let mut out = FaRecourse {
        cost: 0.0,
        y: vec![vec![vec![0.0; nt]; nl]; nk],
        over: vec![vec![0.0; nt]; nk],
        under: vec![vec![0.0; nt]; nl],
    };
    for (t, day) in days.into_iter().enumerate() {
        out.cost += day.cost;
        for k in 0..nk {
            out.over[k][t] = day.over[k];
            for l in 0..nl {
                out.y[k][l][t] = day.y[k][l];
            }
        }
        for l in 0..nl {
            out.under[l][t] = day.under[l];
        }
    }
    out
}

/// FA recourse of one scenario (`d`, `s` flattened `[l][t]`), by flow.
pub fn recourse_cost_fa(inst: &Instance, x: &[u32], d: &[f64], s: &[f64]) -> FaRecourse {
    let days = (0..inst.n_days)
        .map(|t| fa_day(inst, x, t, &day_minutes(inst, t, d, s)))
        .collect();
    assemble(inst, days)
}

/// FA recourse of one scenario through the MILP backend; the reference path
/// the flow solver is checked against.
pub fn recourse_cost_fa_lp(inst: &Instance, x: &[u32], d: &[f64], s: &[f64]) -> Result<FaRecourse> {
    let mut m = ModelSpec::new("fa-recourse", Sense::Minimize);
    let xv: Vec<Var> = x
        .iter()
        .enumerate()
        .map(|(k, &n)| m.continuous(format!("x[{k}]"), f64::from(n), f64::from(n)))
        .collect();
    let nt = inst.n_days;
    for t in 0..nt {
        add_fa_recourse(&mut m, inst, &xv, t, &t.to_string(), 1.0, |l| d[l * nt + t] * s[l * nt + t]);
    }
    let r = milp::solve(&m, &SolverOptions::default())?.require_solution()?;
    let mut out = FaRecourse {
        cost: r.objective,
        y: vec![vec![vec![0.0; nt]; inst.n_services]; inst.n_types],
        over: vec![vec![0.0; nt]; inst.n_types],
        under: vec![vec![0.0; nt]; inst.n_services],
    };
    let index: HashMap<&str, usize> =
        m.variables.iter().enumerate().map(|(i, v)| (v.name.as_str(), i)).collect();
    for t in 0..nt {
        for (k, r_k) in inst.skills.iter().enumerate() {
            out.over[k][t] = r.values[index[format!("o[{t},{k}]").as_str()]];
            for &l in r_k {
                out.y[k][l][t] = r.values[index[format!("y[{t},{k},{l}]").as_str()]];
            }
        }
        for l in 0..inst.n_services {
            out.under[l][t] = r.values[index[format!("u[{t},{l}]").as_str()]];
        }
    }
    Ok(out)
}

/// Average FA recourse over a scenario set, memoizing repeated day vectors.
pub fn mean_recourse_fa(inst: &Instance, x: &[u32], scen: &ScenarioSet) -> Result<f64> {
    scen.check_dims(inst)?;
    let costs = fa_costs_memo(inst, x, scen);
    Ok(crate::stats::mean(&costs))
}

/// Per-scenario FA recourse costs. Days with identical demand vectors are
/// solved once.
pub fn fa_costs_memo(inst: &Instance, x: &[u32], scen: &ScenarioSet) -> Vec<f64> {
    use rayon::prelude::*;
    let nt = inst.n_days;
    let per_day: Vec<HashMap<Vec<u64>, f64>> = (0..nt)
        .into_par_iter()
        .map(|t| {
            let mut memo: HashMap<Vec<u64>, f64> = HashMap::new();
            for n in 0..scen.n_scenarios {
                let m: Vec<f64> = (0..inst.n_services).map(|l| scen.minutes(n, l, t)).collect();
                let key: Vec<u64> = m.iter().map(|v| v.to_bits()).collect();
                memo.entry(key).or_insert_with(|| fa_day(inst, x, t, &m).cost);
            }
            memo
        })
        .collect();
    (0..scen.n_scenarios)
        .map(|n| {
            (0..nt)
                .map(|t| {
                    let key: Vec<u64> = (0..inst.n_services).map(|l| scen.minutes(n, l, t).to_bits()).collect();
                    per_day[t][&key]
                })
                .sum()
        })
        .collect()
}

/// Check dimensions of a headcount vector against an instance.
pub fn check_headcount(inst: &Instance, x: &[u32]) -> Result<()> {
    if x.len() != inst.n_types {
        return Err(Error::Dimension(format!("x has {} entries, K = {}", x.len(), inst.n_types)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_instance, HorizonKind, InstanceTemplate};
    use crate::scenario::{generate_spec, sample_scenarios, DemandRange};

    pub(crate) fn single(hire: f64, alloc: f64, under: f64, over: f64) -> Instance {
        Instance {
            schema_version: 1,
            id: "toy".into(),
            n_services: 1,
            n_types: 1,
            n_days: 1,
            skills: vec![vec![0]],
            hire_cost: vec![hire],
            alloc_cost: vec![vec![vec![alloc]]],
            under_cost: vec![vec![under]],
            over_cost_lt: vec![vec![over]],
            over_cost_kt: vec![vec![over]],
            capacity: vec![480.0],
            staff_min: 0,
            staff_max: 5,
        }
    }

    fn one_scenario(d: f64, s: f64) -> ScenarioSet {
        ScenarioSet::from_grids(&[(vec![vec![d]], vec![vec![s]])])
    }

    #[test]
    fn exact_capacity_match() {
        let inst = single(10.0, 0.1, 100.0, 1.0);
        let sol = solve_esp(&inst, &one_scenario(12.0, 40.0), &SolverOptions::default()).unwrap();
        assert_eq!(sol.x, vec![1]);
        assert!((sol.y[0][0][0] - 480.0).abs() < 1e-6);
        assert!(sol.second_stage_cost.abs() < 1e-6);
    }

    #[test]
    fn zero_penalties_hire_minimum() {
        let mut inst = single(10.0, 0.1, 0.0, 0.0);
        inst.staff_min = 2;
        let sol = solve_esp(&inst, &one_scenario(12.0, 40.0), &SolverOptions::default()).unwrap();
        assert_eq!(sol.headcount(), 2);
        assert!(sol.y[0][0][0].abs() < 1e-9);
    }

    #[test]
    fn fa_without_staff_pays_all_shortage() {
        let mut inst = single(10.0, 0.1, 20.0, 2.0);
        inst.staff_max = 0;
        let scen = ScenarioSet::from_grids(&[
            (vec![vec![10.0]], vec![vec![30.0]]),
            (vec![vec![20.0]], vec![vec![30.0]]),
        ]);
        let sol = solve_fsp(&inst, &scen, &SolverOptions::default()).unwrap();
        assert_eq!(sol.x, vec![0]);
        assert!((sol.objective() - 20.0 * 450.0).abs() < 1e-6);
    }

    #[test]
    fn fa_ample_capacity_serves_everything() {
        let inst = single(1.0, 0.5, 20.0, 2.0);
        let r = recourse_cost_fa(&inst, &[2], &[10.0], &[30.0]);
        assert!(r.under[0][0].abs() < 1e-9);
        assert!((r.y[0][0][0] - 300.0).abs() < 1e-9);
    }

    #[test]
    fn ea_closed_form_examples() {
        let inst = single(1.0, 0.5, 20.0, 2.0);
        let y = vec![vec![vec![100.0]]];
        assert_eq!(recourse_cost_ea(&inst, &y, &[12.0], &[10.0]), 400.0);
        assert_eq!(recourse_cost_ea(&inst, &y, &[10.0], &[10.0]), 0.0);
    }

    #[test]
    fn flow_matches_lp_on_generated_instance() {
        let t = InstanceTemplate::benchmark(7).unwrap().with_dims(4, 8, 3);
        let inst = generate_instance(&t, HorizonKind::Monthly, 5);
        let spec = generate_spec(&inst, DemandRange::Wide, 5);
        let scen = sample_scenarios(&spec, 6, 9).unwrap();
        for x in [vec![0, 1, 0, 2, 1, 0, 1, 3], vec![2; 8], vec![0; 8]] {
            for n in 0..scen.n_scenarios {
                let a = recourse_cost_fa(&inst, &x, scen.scenario_d(n), scen.scenario_s(n));
                let b = recourse_cost_fa_lp(&inst, &x, scen.scenario_d(n), scen.scenario_s(n)).unwrap();
                assert!((a.cost - b.cost).abs() <= 1e-7 * b.cost.max(1.0), "{} vs {}", a.cost, b.cost);
            }
        }
    }

    #[test]
    fn saa_objective_matches_recomputed_recourse() {
        let t = InstanceTemplate::benchmark(1).unwrap().with_dims(2, 2, 2);
        let inst = generate_instance(&t, HorizonKind::Monthly, 3);
        let spec = generate_spec(&inst, DemandRange::Base, 3);
        let scen = sample_scenarios(&spec, 8, 4).unwrap();
        let opts = SolverOptions::default().with_gap(1e-9);
        let ea = solve_esp(&inst, &scen, &opts).unwrap();
        assert!((ea.objective() - ea.meta.objective).abs() <= 1e-5 * ea.objective());
        let fa = solve_fsp(&inst, &scen, &opts).unwrap();
        let recomputed = inst.hire_cost_of(&fa.x) + mean_recourse_fa(&inst, &fa.x, &scen).unwrap();
        assert!((recomputed - fa.objective()).abs() <= 1e-5 * recomputed);
    }
}
