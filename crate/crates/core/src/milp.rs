//! Solver-agnostic model building and the HiGHS backend.
//!
//! Model builders in this crate only ever produce a [`ModelSpec`]; [`solve`]
//! is the single place that talks to the solver library.

use std::collections::HashSet;
use std::ffi::CString;
use std::fmt::Write as _;
use std::ops::Bound;
use std::path::Path;
use std::time::Instant;

use highs::{RowProblem, Sense as HighsSense};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for primal feasibility checks on returned values.
pub const FEASIBILITY_TOL: f64 = 1e-6;
/// Integrality tolerance; integer values within it are snapped.
pub const INTEGRALITY_TOL: f64 = 1e-5;

/// Handle to a declared variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarKind {
    Continuous,
    Integer,
    Binary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(Var, f64)>,
    pub cmp: Cmp,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub sense: Sense,
    pub terms: Vec<(Var, f64)>,
    pub constant: f64,
}

/// A mixed-integer linear program.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub name: String,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub objective: Objective,
}

impl ModelSpec {
    pub fn new(name: impl Into<String>, sense: Sense) -> Self {
        ModelSpec {
            name: name.into(),
            variables: Vec::new(),
            constraints: Vec::new(),
            objective: Objective {
                sense,
                terms: Vec::new(),
                constant: 0.0,
            },
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind, lower: f64, upper: f64) -> Var {
        let (lower, upper) = match kind {
            VarKind::Binary => (lower.max(0.0), upper.min(1.0)),
            _ => (lower, upper),
        };
        self.variables.push(Variable {
            name: name.into(),
            kind,
            lower,
            upper,
        });
        Var(self.variables.len() - 1)
    }

    pub fn continuous(&mut self, name: impl Into<String>, lower: f64, upper: f64) -> Var {
        self.add_var(name, VarKind::Continuous, lower, upper)
    }

    pub fn nonneg(&mut self, name: impl Into<String>) -> Var {
        self.add_var(name, VarKind::Continuous, 0.0, f64::INFINITY)
    }

    pub fn free(&mut self, name: impl Into<String>) -> Var {
        self.add_var(name, VarKind::Continuous, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn integer(&mut self, name: impl Into<String>, lower: f64, upper: f64) -> Var {
        self.add_var(name, VarKind::Integer, lower, upper)
    }

    pub fn binary(&mut self, name: impl Into<String>) -> Var {
        self.add_var(name, VarKind::Binary, 0.0, 1.0)
    }

    pub fn constrain(&mut self, name: impl Into<String>, terms: Vec<(Var, f64)>, cmp: Cmp, rhs: f64) {
        self.constraints.push(Constraint {
            name: name.into(),
            terms,
            cmp,
            rhs,
        });
    }

    pub fn add_objective(&mut self, var: Var, coef: f64) {
        if coef != 0.0 {
            self.objective.terms.push((var, coef));
        }
    }

    pub fn add_objective_constant(&mut self, c: f64) {
        self.objective.constant += c;
    }

    pub fn is_mip(&self) -> bool {
        self.variables.iter().any(|v| v.kind != VarKind::Continuous)
    }

    pub fn variable(&self, v: Var) -> &Variable {
        &self.variables[v.0]
    }

    /// Check structural invariants: unique names, declared variables,
    /// finite coefficients and consistent bounds.
    pub fn validate(&self) -> Result<()> {
        let mut names = HashSet::with_capacity(self.variables.len());
        for v in &self.variables {
            if !names.insert(v.name.as_str()) {
                return Err(Error::Model(format!("duplicate variable name {}", v.name)));
            }
            if v.lower.is_nan() || v.upper.is_nan() || v.lower > v.upper {
                return Err(Error::Model(format!("bad bounds on {}", v.name)));
            }
        }
        let n = self.variables.len();
        let mut cnames = HashSet::with_capacity(self.constraints.len());
        for c in &self.constraints {
            if !cnames.insert(c.name.as_str()) {
                return Err(Error::Model(format!("duplicate constraint name {}", c.name)));
            }
            if !c.rhs.is_finite() {
                return Err(Error::Model(format!("non-finite rhs in {}", c.name)));
            }
            for &(v, a) in &c.terms {
                if v.0 >= n {
                    return Err(Error::Model(format!("undeclared variable in {}", c.name)));
                }
                if !a.is_finite() {
                    return Err(Error::Model(format!("non-finite coefficient in {}", c.name)));
                }
            }
        }
        for &(v, a) in &self.objective.terms {
            if v.0 >= n || !a.is_finite() {
                return Err(Error::Model("bad objective term".into()));
            }
        }
        if !self.objective.constant.is_finite() {
            return Err(Error::Model("non-finite objective constant".into()));
        }
        Ok(())
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.constant
            + self
                .objective
                .terms
                .iter()
                .map(|&(v, a)| a * values[v.0])
                .sum::<f64>()
    }

    /// Largest absolute violation of any bound, row or integrality requirement.
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (v, &x) in self.variables.iter().zip(values) {
            worst = worst.max(v.lower - x).max(x - v.upper);
            if v.kind != VarKind::Continuous {
                worst = worst.max((x - x.round()).abs());
            }
        }
        for c in &self.constraints {
            let lhs: f64 = c.terms.iter().map(|&(v, a)| a * values[v.0]).sum();
            let viol = match c.cmp {
                Cmp::Le => lhs - c.rhs,
                Cmp::Ge => c.rhs - lhs,
                Cmp::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(viol);
        }
        worst
    }

    /// Copy with every integer or binary variable made continuous.
    pub fn lp_relaxation(&self) -> ModelSpec {
        let mut m = self.clone();
        for v in &mut m.variables {
            v.kind = VarKind::Continuous;
        }
        m
    }

    /// CPLEX LP text format, for debugging.
    pub fn to_lp_string(&self) -> String {
        let mut out = String::new();
        let fmt_terms = |terms: &[(Var, f64)], vars: &[Variable]| -> String {
            if terms.is_empty() {
                return "0 ".to_string();
            }
            let mut s = String::new();
            for &(v, a) in terms {
                let _ = write!(s, "{} {} {} ", if a < 0.0 { "-" } else { "+" }, a.abs(), lp_name(&vars[v.0].name));
            }
            s
        };
        let _ = writeln!(out, "\\ {}", self.name);
        let _ = writeln!(
            out,
            "{}",
            match self.objective.sense {
                Sense::Minimize => "Minimize",
                Sense::Maximize => "Maximize",
            }
        );
        let _ = writeln!(out, " obj: {}", fmt_terms(&self.objective.terms, &self.variables));
        let _ = writeln!(out, "Subject To");
        for c in &self.constraints {
            let op = match c.cmp {
                Cmp::Le => "<=",
                Cmp::Eq => "=",
                Cmp::Ge => ">=",
            };
            let _ = writeln!(out, " {}: {}{} {}", lp_name(&c.name), fmt_terms(&c.terms, &self.variables), op, c.rhs);
        }
        let _ = writeln!(out, "Bounds");
        for v in &self.variables {
            let lo = if v.lower == f64::NEG_INFINITY { "-inf".to_string() } else { v.lower.to_string() };
            let hi = if v.upper == f64::INFINITY { "+inf".to_string() } else { v.upper.to_string() };
            let _ = writeln!(out, " {} <= {} <= {}", lo, lp_name(&v.name), hi);
        }
        let ints: Vec<&str> = self
            .variables
            .iter()
            .filter(|v| v.kind != VarKind::Continuous)
            .map(|v| v.name.as_str())
            .collect();
        if !ints.is_empty() {
            let _ = writeln!(out, "General");
            for n in ints {
                let _ = writeln!(out, " {}", lp_name(n));
            }
        }
        let _ = writeln!(out, "End");
        out
    }

    pub fn write_lp(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_lp_string()).map_err(|e| Error::io(path, e))
    }
}

fn lp_name(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            '[' | ']' | ',' | ' ' => '_',
            c => c,
        })
        .collect()
}

/// Free-function form of [`ModelSpec::lp_relaxation`].
pub fn lp_relaxation(model: &ModelSpec) -> ModelSpec {
    model.lp_relaxation()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Optimal,
    /// Stopped at the configured relative gap with a feasible solution.
    GapLimit,
    TimeLimit,
    Infeasible,
    Unbounded,
    Error,
}

impl SolveStatus {
    pub fn has_solution(self) -> bool {
        matches!(self, SolveStatus::Optimal | SolveStatus::GapLimit)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub mip_gap: f64,
    pub time_limit: f64,
    /// 0 leaves the solver default.
    pub threads: u32,
    pub seed: u32,
}

impl SolverOptions {
    /// 1 % relative gap, used for the EA stochastic program.
    pub fn sp_default() -> Self {
        SolverOptions {
            mip_gap: 0.01,
            ..Default::default()
        }
    }

    /// 0.1 % relative gap, used for the FA stochastic program.
    pub fn fa_saa_default() -> Self {
        SolverOptions {
            mip_gap: 0.001,
            ..Default::default()
        }
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.mip_gap = gap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.mip_gap) {
            return Err(Error::InvalidInput(format!("mip gap {} not in [0, 1)", self.mip_gap)));
        }
        if !(self.time_limit > 0.0) {
            return Err(Error::InvalidInput("time limit must be positive".into()));
        }
        Ok(())
    }
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            mip_gap: 1e-4,
            time_limit: 7200.0,
            threads: 0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Objective of the returned values (NaN without a solution).
    pub objective: f64,
    /// Proven bound on the optimum (lower for min, upper for max).
    pub best_bound: f64,
    pub gap: f64,
    pub values: Vec<f64>,
    pub wall_time: f64,
    pub message: String,
}

impl SolveResult {
    pub fn value(&self, v: Var) -> f64 {
        self.values[v.0]
    }

    /// Error unless the status carries a feasible solution.
    pub fn require_solution(self) -> Result<SolveResult> {
        if self.status.has_solution() {
            Ok(self)
        } else {
            Err(Error::Solver {
                status: format!("{:?}", self.status),
                message: self.message,
            })
        }
    }
}

fn bound(v: f64) -> Bound<f64> {
    if v.is_infinite() {
        Bound::Unbounded
    } else {
        Bound::Included(v)
    }
}

fn merged(terms: &[(Var, f64)]) -> Vec<(usize, f64)> {
    let mut t: Vec<(usize, f64)> = terms.iter().map(|&(v, a)| (v.0, a)).collect();
    t.sort_by_key(|p| p.0);
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(t.len());
    for (i, a) in t {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += a,
            _ => out.push((i, a)),
        }
    }
    out.retain(|p| p.1 != 0.0);
    out
}

fn double_info(ptr: *const std::ffi::c_void, name: &str) -> Option<f64> {
    let c = CString::new(name).ok()?;
    let mut v = f64::NAN;
    let status = unsafe { highs_sys::Highs_getDoubleInfoValue(ptr, c.as_ptr(), &mut v) };
    (status == highs_sys::STATUS_OK).then_some(v)
}

fn int_info(ptr: *const std::ffi::c_void, name: &str) -> Option<i64> {
    let c = CString::new(name).ok()?;
    let mut v: highs_sys::HighsInt = 0;
    let status = unsafe { highs_sys::Highs_getIntInfoValue(ptr, c.as_ptr(), &mut v) };
    (status == highs_sys::STATUS_OK).then_some(v as i64)
}

struct RawOutcome {
    status: highs_sys::HighsInt,
    values: Option<Vec<f64>>,
    objective: f64,
    dual_bound: f64,
    gap: f64,
}

fn run_highs(model: &ModelSpec, opts: &SolverOptions, zero_objective: bool) -> std::result::Result<RawOutcome, String> {
    let mut pb = RowProblem::default();
    let mut obj = vec![0.0; model.variables.len()];
    if !zero_objective {
        for &(v, a) in &model.objective.terms {
            obj[v.0] += a;
        }
    }
    let cols: Vec<highs::Col> = model
        .variables
        .iter()
        .zip(&obj)
        .map(|(v, &c)| {
            pb.add_column_with_integrality(c, (bound(v.lower), bound(v.upper)), v.kind != VarKind::Continuous)
        })
        .collect();
    for c in &model.constraints {
        let terms: Vec<(highs::Col, f64)> = merged(&c.terms).into_iter().map(|(i, a)| (cols[i], a)).collect();
        let range = match c.cmp {
            Cmp::Le => (Bound::Unbounded, Bound::Included(c.rhs)),
            Cmp::Ge => (Bound::Included(c.rhs), Bound::Unbounded),
            Cmp::Eq => (Bound::Included(c.rhs), Bound::Included(c.rhs)),
        };
        pb.add_row(range, terms);
    }
    let sense = match model.objective.sense {
        Sense::Minimize => HighsSense::Minimise,
        Sense::Maximize => HighsSense::Maximise,
    };
    let mut m = pb.try_optimise(sense).map_err(|e| format!("model rejected: {e:?}"))?;
    m.make_quiet();
    m.set_option("mip_rel_gap", opts.mip_gap);
    m.set_option("time_limit", opts.time_limit);
    m.set_option("random_seed", opts.seed as i32);
    m.set_option("mip_feasibility_tolerance", FEASIBILITY_TOL);
    m.set_option("primal_feasibility_tolerance", 1e-7);
    if opts.threads > 0 {
        m.set_option("threads", opts.threads as i32);
    }
    let solved = m.try_solve().map_err(|e| format!("solve failed: {e:?}"))?;
    let ptr = solved.as_ptr();
    let status = unsafe { highs_sys::Highs_getModelStatus(ptr) };
    let has_primal = int_info(ptr, "primal_solution_status").unwrap_or(0) == 2;
    let values = has_primal.then(|| solved.get_solution().columns().to_vec());
    let objective = double_info(ptr, "objective_function_value").unwrap_or(f64::NAN);
    let dual_bound = double_info(ptr, "mip_dual_bound").unwrap_or(f64::NAN);
    let gap = double_info(ptr, "mip_gap").unwrap_or(f64::NAN);
    Ok(RawOutcome {
        status,
        values,
        objective,
        dual_bound,
        gap,
    })
}

/// Solve with HiGHS. Infeasible and unbounded outcomes are statuses, not
/// errors; `Err` is reserved for malformed models and bad options.
pub fn solve(model: &ModelSpec, opts: &SolverOptions) -> Result<SolveResult> {
    model.validate()?;
    opts.validate()?;
    let start = Instant::now();
    let is_mip = model.is_mip();
    let constant = model.objective.constant;

    if model.variables.is_empty() {
        let feasible = model.constraints.iter().all(|c| match c.cmp {
            Cmp::Le => 0.0 <= c.rhs + FEASIBILITY_TOL,
            Cmp::Ge => 0.0 >= c.rhs - FEASIBILITY_TOL,
            Cmp::Eq => c.rhs.abs() <= FEASIBILITY_TOL,
        });
        return Ok(SolveResult {
            status: if feasible { SolveStatus::Optimal } else { SolveStatus::Infeasible },
            objective: if feasible { constant } else { f64::NAN },
            best_bound: if feasible { constant } else { f64::NAN },
            gap: 0.0,
            values: Vec::new(),
            wall_time: start.elapsed().as_secs_f64(),
            message: String::new(),
        });
    }

    let raw = match run_highs(model, opts, false) {
        Ok(r) => r,
        Err(message) => {
            return Ok(SolveResult {
                status: SolveStatus::Error,
                objective: f64::NAN,
                best_bound: f64::NAN,
                gap: f64::NAN,
                values: Vec::new(),
                wall_time: start.elapsed().as_secs_f64(),
                message,
            })
        }
    };

    use highs_sys::*;
    let mut status = match raw.status {
        MODEL_STATUS_OPTIMAL => {
            if is_mip && raw.gap.is_finite() && raw.gap > 1e-9 {
                SolveStatus::GapLimit
            } else {
                SolveStatus::Optimal
            }
        }
        MODEL_STATUS_INFEASIBLE => SolveStatus::Infeasible,
        MODEL_STATUS_UNBOUNDED => SolveStatus::Unbounded,
        MODEL_STATUS_UNBOUNDED_OR_INFEASIBLE => {
            // Disambiguate with a pure feasibility solve.
            match run_highs(model, opts, true) {
                Ok(f) if f.status == MODEL_STATUS_OPTIMAL => SolveStatus::Unbounded,
                Ok(f) if f.status == MODEL_STATUS_INFEASIBLE => SolveStatus::Infeasible,
                _ => SolveStatus::Error,
            }
        }
        MODEL_STATUS_REACHED_TIME_LIMIT
        | MODEL_STATUS_REACHED_ITERATION_LIMIT
        | MODEL_STATUS_REACHED_SOLUTION_LIMIT
        | MODEL_STATUS_REACHED_INTERRUPT
        | MODEL_STATUS_OBJECTIVE_BOUND
        | MODEL_STATUS_OBJECTIVE_TARGET => SolveStatus::TimeLimit,
        _ => SolveStatus::Error,
    };

    let mut values = if status == SolveStatus::Unbounded || status == SolveStatus::Infeasible {
        Vec::new()
    } else {
        raw.values.unwrap_or_default()
    };
    if status.has_solution() && values.len() != model.variables.len() {
        status = SolveStatus::Error;
        values.clear();
    }
    for (v, x) in model.variables.iter().zip(values.iter_mut()) {
        if v.kind != VarKind::Continuous && (*x - x.round()).abs() <= INTEGRALITY_TOL {
            *x = x.round();
        }
        if v.kind == VarKind::Continuous {
            *x = x.clamp(v.lower, v.upper);
        }
    }
    let objective = if values.is_empty() {
        f64::NAN
    } else {
        model.objective_value(&values)
    };
    let best_bound = if is_mip {
        if raw.dual_bound.is_finite() {
            raw.dual_bound + constant
        } else {
            objective
        }
    } else if status.has_solution() {
        raw.objective + constant
    } else {
        f64::NAN
    };
    let gap = if is_mip && status.has_solution() { raw.gap.max(0.0) } else if status.has_solution() { 0.0 } else { f64::NAN };
    Ok(SolveResult {
        status,
        objective,
        best_bound,
        gap,
        values,
        wall_time: start.elapsed().as_secs_f64(),
        message: format!("highs model status {}", raw.status),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_var(kind: VarKind, cmp: Cmp, rhs: f64, sense: Sense) -> ModelSpec {
        let mut m = ModelSpec::new("t", sense);
        let x = m.add_var("x", kind, 0.0, f64::INFINITY);
        m.constrain("c", vec![(x, 1.0)], cmp, rhs);
        m.add_objective(x, 1.0);
        m
    }

    #[test]
    fn integer_minimum() {
        let m = one_var(VarKind::Integer, Cmp::Ge, 3.0, Sense::Minimize);
        let r = solve(&m, &SolverOptions::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.objective, 3.0);
    }

    #[test]
    fn integrality_rounds_down_when_maximizing() {
        let m = one_var(VarKind::Integer, Cmp::Le, 2.5, Sense::Maximize);
        let r = solve(&m, &SolverOptions::default()).unwrap();
        assert_eq!(r.objective, 2.0);
        let relaxed = solve(&m.lp_relaxation(), &SolverOptions::default()).unwrap();
        assert!((relaxed.objective - 2.5).abs() < 1e-9);
    }

    #[test]
    fn contradiction_is_infeasible() {
        let mut m = ModelSpec::new("t", Sense::Minimize);
        let x = m.continuous("x", f64::NEG_INFINITY, f64::INFINITY);
        m.constrain("a", vec![(x, 1.0)], Cmp::Ge, 1.0);
        m.constrain("b", vec![(x, 1.0)], Cmp::Le, 0.0);
        m.add_objective(x, 1.0);
        assert_eq!(solve(&m, &SolverOptions::default()).unwrap().status, SolveStatus::Infeasible);
        let mut mi = m.clone();
        mi.variables[0].kind = VarKind::Integer;
        assert_eq!(solve(&mi, &SolverOptions::default()).unwrap().status, SolveStatus::Infeasible);
    }

    #[test]
    fn unbounded_is_reported() {
        let mut m = ModelSpec::new("t", Sense::Minimize);
        let x = m.free("x");
        let n = m.integer("n", 0.0, 4.0);
        m.constrain("c", vec![(x, 1.0), (n, 1.0)], Cmp::Le, 1.0);
        m.add_objective(x, 1.0);
        assert_eq!(solve(&m, &SolverOptions::default()).unwrap().status, SolveStatus::Unbounded);
    }

    #[test]
    fn relaxation_properties() {
        let mut m = ModelSpec::new("t", Sense::Minimize);
        let g = m.binary("g");
        let n = m.integer("n", 0.0, 10.0);
        m.constrain("c", vec![(g, 3.0), (n, 2.0)], Cmp::Ge, 4.5);
        m.add_objective(g, 2.0);
        m.add_objective(n, 1.5);
        let r = m.lp_relaxation();
        assert_eq!(r.variables[0].kind, VarKind::Continuous);
        assert_eq!((r.variables[0].lower, r.variables[0].upper), (0.0, 1.0));
        assert_eq!(r.lp_relaxation(), r);
        let opt = SolverOptions::default();
        let milp = solve(&m, &opt).unwrap();
        let lp = solve(&r, &opt).unwrap();
        assert!(lp.objective <= milp.objective + 1e-9);
        assert!(m.max_violation(&milp.values) <= FEASIBILITY_TOL);
    }

    #[test]
    fn malformed_models_are_rejected() {
        let mut m = ModelSpec::new("t", Sense::Minimize);
        m.nonneg("x");
        m.nonneg("x");
        assert!(matches!(solve(&m, &SolverOptions::default()), Err(Error::Model(_))));
        let mut m = ModelSpec::new("t", Sense::Minimize);
        let x = m.nonneg("x");
        m.constrain("c", vec![(x, f64::NAN)], Cmp::Le, 1.0);
        assert!(m.validate().is_err());
        assert!(SolverOptions::default().with_gap(1.0).validate().is_err());
    }

    #[test]
    fn objective_constant_and_duplicates() {
        let mut m = ModelSpec::new("t", Sense::Maximize);
        let x = m.continuous("x", 0.0, 2.0);
        m.constrain("c", vec![(x, 1.0), (x, 1.0)], Cmp::Le, 3.0);
        m.add_objective(x, 1.0);
        m.add_objective_constant(10.0);
        let r = solve(&m, &SolverOptions::default()).unwrap();
        assert!((r.objective - 11.5).abs() < 1e-9);
        assert!((r.best_bound - 11.5).abs() < 1e-9);
    }

    #[test]
    fn lp_export_mentions_every_row() {
        let m = one_var(VarKind::Integer, Cmp::Ge, 3.0, Sense::Minimize);
        let text = m.to_lp_string();
        assert!(text.contains("Minimize"));
        assert!(text.contains(" c: + 1 x >= 3"));
        assert!(text.contains("General"));
    }
}
