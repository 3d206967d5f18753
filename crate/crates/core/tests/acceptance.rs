//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line
//! (written straight to stdout so it shows without `--nocapture`) and then
//! asserts.

use std::io::Write;
use std::time::Instant;

use hscp_core::dro_ea::{self, corner_eta, CellSupport};
use hscp_core::dro_fa::{self, CcgOptions, CcgStatus};
use hscp_core::evaluate::{evaluate_out_of_sample, make_eval_samples, SetKind, DEFAULT_EVAL_SAMPLES};
use hscp_core::instance::{generate_instance, HorizonKind, InstanceTemplate};
use hscp_core::mco::{run_mco, McoOptions, SpKind};
use hscp_core::milp::{self, Cmp, ModelSpec, Sense, SolveStatus, SolverOptions, Var};
use hscp_core::models::{solve_model, ModelKind, ModelOptions};
use hscp_core::scenario::{generate_spec, sample_scenarios, DemandRange, Family};
use hscp_core::sp;
use hscp_core::sweep::{axis_pairs, default_grid, monotonicity_violations, penalty_sweep, SweepAxis};
use hscp_core::{Instance, UncertaintySpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, title: &str, ok: bool, detail: &str) {
    let line = format!(
        "criterion {id:>2} [{}] {title}: {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn tight() -> SolverOptions {
    SolverOptions::default().with_gap(1e-9)
}

/// Small random instance with every service covered and the FA economic
/// condition enforced.
fn random_instance(rng: &mut ChaCha8Rng, nl: usize, nk: usize, nt: usize) -> Instance {
    let mut skills: Vec<Vec<usize>> = (0..nk)
        .map(|_| {
            let mut r: Vec<usize> = (0..nl).filter(|_| rng.random_bool(0.5)).collect();
            if r.is_empty() {
                r.push(rng.random_range(0..nl));
            }
            r
        })
        .collect();
    for l in 0..nl {
        if !skills.iter().any(|r| r.contains(&l)) {
            let k = rng.random_range(0..nk);
            skills[k].push(l);
            skills[k].sort_unstable();
        }
    }
    let grid_lt = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| -> Vec<Vec<f64>> {
        (0..nl).map(|_| (0..nt).map(|_| rng.random_range(lo..hi)).collect()).collect()
    };
    let under_cost = grid_lt(rng, 5.0, 25.0);
    let over_cost_lt = grid_lt(rng, 0.5, 5.0);
    let mut inst = Instance {
        schema_version: 1,
        id: "random".into(),
        n_services: nl,
        n_types: nk,
        n_days: nt,
        hire_cost: (0..nk).map(|_| rng.random_range(1000.0..6000.0)).collect(),
        alloc_cost: (0..nk)
            .map(|_| (0..nl).map(|_| (0..nt).map(|_| rng.random_range(0.5..1.5)).collect()).collect())
            .collect(),
        under_cost,
        over_cost_lt,
        over_cost_kt: (0..nk).map(|_| (0..nt).map(|_| rng.random_range(0.5..5.0)).collect()).collect(),
        capacity: vec![480.0; nk],
        staff_min: rng.random_range(0..2),
        staff_max: 12,
        skills,
    };
    inst.enforce_economic_condition();
    assert!(inst.validate().is_empty());
    inst
}

fn random_spec(rng: &mut ChaCha8Rng, nl: usize, nt: usize) -> UncertaintySpec {
    let mut spec = UncertaintySpec::uniform_cells(nl, nt, (0.0, 0.0), (1.0, 1.0), (0.0, 0.0), (0.0, 0.0), Family::Uniform);
    for l in 0..nl {
        for t in 0..nt {
            let dlo = rng.random_range(30.0f64..50.0).round();
            let dhi = dlo + rng.random_range(5.0f64..50.0).round();
            let slo = rng.random_range(15.0f64..35.0).round();
            let shi = slo + rng.random_range(5.0f64..50.0).round();
            spec.d_lo[l][t] = dlo;
            spec.d_hi[l][t] = dhi;
            spec.s_lo[l][t] = slo;
            spec.s_hi[l][t] = shi;
            spec.mean_d[l][t] = rng.random_range(dlo..dhi);
            spec.mean_s[l][t] = rng.random_range(slo..shi);
        }
    }
    spec
}

#[test]
fn c01_ea_recourse_primal_equals_dual_extreme_points() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let mut inst = random_instance(&mut rng, 1, 1, 1);
        inst.under_cost[0][0] = rng.random_range(0.0..30.0);
        inst.over_cost_lt[0][0] = rng.random_range(0.0..30.0);
        let y = vec![vec![vec![rng.random_range(0.0..6000.0)]]];
        let d = rng.random_range(0.0..120.0f64).round();
        let s = rng.random_range(0.0..90.0f64).round();
        let primal = sp::recourse_cost_ea(&inst, &y, &[d], &[s]);
        let gap = d * s - y[0][0][0];
        let dual = [inst.under_cost[0][0], -inst.over_cost_lt[0][0]]
            .iter()
            .map(|rho| rho * gap)
            .fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max(rel(primal, dual));
        worst = worst.max(rel(primal, sp::recourse_cost_ea_dual(&inst, &y, &[d], &[s])));
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-9 && secs < 1.0;
    report(1, "EA recourse duality", ok, &format!("max rel diff {worst:.2e} over 1000 tuples, {secs:.3}s"));
    assert!(ok);
}

#[test]
fn c02_corner_maximum_dominates_dense_grid() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_gap: f64 = 0.0;
    for _ in 0..200 {
        let d_lo = rng.random_range(0.0..60.0);
        let d_hi = d_lo + rng.random_range(0.0..60.0);
        let s_lo = rng.random_range(0.0..50.0);
        let s_hi = s_lo + rng.random_range(0.0..50.0);
        let cell = CellSupport { d_lo, d_hi, s_lo, s_hi };
        let y_sum = rng.random_range(0.0..8000.0);
        let alpha = rng.random_range(-2000.0..2000.0);
        let beta = rng.random_range(-2000.0..2000.0);
        let cu = rng.random_range(0.0..30.0);
        let co = rng.random_range(0.0..30.0);
        let eta = corner_eta(y_sum, alpha, beta, cell, cu, co);
        let mut grid_max = f64::NEG_INFINITY;
        for i in 0..50 {
            let d = d_lo + (d_hi - d_lo) * i as f64 / 49.0;
            for j in 0..50 {
                let s = s_lo + (s_hi - s_lo) * j as f64 / 49.0;
                let q = (cu * (d * s - y_sum)).max(co * (y_sum - d * s));
                grid_max = grid_max.max(q - d * alpha - s * beta);
            }
        }
        worst_excess = worst_excess.max(grid_max - eta);
        worst_gap = worst_gap.max(rel(grid_max, eta));
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = worst_excess <= 1e-6 && worst_gap <= 1e-9 && secs < 5.0;
    report(
        2,
        "corner optimality vs 50x50 grid",
        ok,
        &format!("max(grid - corner) {worst_excess:.2e}, max rel diff {worst_gap:.2e}, {secs:.2}s"),
    );
    assert!(ok);
}

/// Worst-case expectation over distributions on the four corners with the
/// given means, by enumerating the vertices of the probability polytope.
fn corner_distribution_sup(cell: CellSupport, mu_d: f64, mu_s: f64, q: impl Fn(f64, f64) -> f64) -> f64 {
    let corners = cell.corners();
    let mut best = f64::NEG_INFINITY;
    for skip in 0..4 {
        let idx: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
        let a = [
            [1.0, 1.0, 1.0],
            [corners[idx[0]].0, corners[idx[1]].0, corners[idx[2]].0],
            [corners[idx[0]].1, corners[idx[1]].1, corners[idx[2]].1],
        ];
        let b = [1.0, mu_d, mu_s];
        let det = |m: [[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let da = det(a);
        if da.abs() < 1e-12 {
            continue;
        }
        let mut p = [0.0; 3];
        for (c, pc) in p.iter_mut().enumerate() {
            let mut m = a;
            for r in 0..3 {
                m[r][c] = b[r];
            }
            *pc = det(m) / da;
        }
        if p.iter().all(|&v| v >= -1e-12) {
            let v: f64 = (0..3).map(|i| p[i] * q(corners[idx[i]].0, corners[idx[i]].1)).sum();
            best = best.max(v);
        }
    }
    best
}

#[test]
fn c03_ea_dro_matches_corner_distribution_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let nk = rng.random_range(1..=2);
        let inst = random_instance(&mut rng, 1, nk, 1);
        let spec = random_spec(&mut rng, 1, 1);
        let cell = CellSupport::of(&spec, 0, 0);
        let (cu, co) = (inst.under_cost[0][0], inst.over_cost_lt[0][0]);
        let wc = |y: f64| {
            corner_distribution_sup(cell, spec.mean_d[0][0], spec.mean_s[0][0], |d, s| {
                (cu * (d * s - y)).max(co * (y - d * s))
            })
        };
        let mut order: Vec<usize> = (0..nk).collect();
        order.sort_by(|&a, &b| inst.alloc_cost[a][0][0].total_cmp(&inst.alloc_cost[b][0][0]));
        let mut best = f64::INFINITY;
        let w_max = inst.staff_max as usize;
        let combos: Vec<Vec<u32>> = if nk == 1 {
            (0..=w_max as u32).map(|a| vec![a]).collect()
        } else {
            (0..=w_max as u32).flat_map(|a| (0..=w_max as u32).map(move |b| vec![a, b])).collect()
        };
        for x in combos {
            let total: u32 = x.iter().sum();
            if total < inst.staff_min || total > inst.staff_max {
                continue;
            }
            let cap: f64 = x.iter().enumerate().map(|(k, &n)| f64::from(n) * inst.capacity[k]).sum();
            let alloc = |y: f64| {
                let mut left = y;
                let mut cost = 0.0;
                for &k in &order {
                    let take = left.min(f64::from(x[k]) * inst.capacity[k]);
                    cost += take * inst.alloc_cost[k][0][0];
                    left -= take;
                }
                cost
            };
            let f = |y: f64| alloc(y) + wc(y);
            // Coarse grid, then ternary refinement of the convex function.
            let steps: usize = 200;
            let mut arg: usize = 0;
            let mut val = f64::INFINITY;
            for i in 0..=steps {
                let v = f(cap * i as f64 / steps as f64);
                if v < val {
                    val = v;
                    arg = i;
                }
            }
            let mut lo = cap * (arg.saturating_sub(1)) as f64 / steps as f64;
            let mut hi = cap * ((arg + 1).min(steps)) as f64 / steps as f64;
            for _ in 0..200 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if f(m1) <= f(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            val = val.min(f(0.5 * (lo + hi)));
            best = best.min(inst.hire_cost_of(&x) + val);
        }
        let model = dro_ea::solve_edhscp(&inst, &spec, &tight()).unwrap();
        worst = worst.max(rel(model.solution.objective(), best));
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-4 && secs < 60.0;
    report(3, "E-DHSCP vs corner-distribution oracle", ok, &format!("max rel diff {worst:.2e} over 20 toys, {secs:.1}s"));
    assert!(ok);
}

/// Exact per-corner value of one day's worst-case problem: the recourse
/// dual LP in `(ρ, λ)` at a fixed corner, minus the moment terms.
fn corner_dual_lp(inst: &Instance, x: &[u32], d: &[f64], s: &[f64], alpha: &[f64], beta: &[f64]) -> f64 {
    let t = 0;
    let mut m = ModelSpec::new("oracle", Sense::Maximize);
    let rho: Vec<Var> = (0..inst.n_services)
        .map(|l| m.continuous(format!("rho{l}"), f64::NEG_INFINITY, inst.under_cost[l][t]))
        .collect();
    let lambda: Vec<Var> = (0..inst.n_types)
        .map(|k| m.continuous(format!("lam{k}"), f64::NEG_INFINITY, inst.over_cost_kt[k][t]))
        .collect();
    for l in 0..inst.n_services {
        m.add_objective(rho[l], d[l] * s[l]);
        m.add_objective_constant(-(d[l] * alpha[l] + s[l] * beta[l]));
    }
    for k in 0..inst.n_types {
        m.add_objective(lambda[k], f64::from(x[k]) * inst.capacity[k]);
        for &l in &inst.skills[k] {
            m.constrain(format!("f{k}_{l}"), vec![(rho[l], 1.0), (lambda[k], 1.0)], Cmp::Le, inst.alloc_cost[k][l][t]);
        }
    }
    let r = milp::solve(&m, &tight()).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    r.objective
}

fn random_day_point(rng: &mut ChaCha8Rng, inst: &Instance) -> (Vec<u32>, Vec<f64>, Vec<f64>) {
    let x = (0..inst.n_types).map(|_| rng.random_range(0..4)).collect();
    let alpha = (0..inst.n_services).map(|_| rng.random_range(-600.0..600.0)).collect();
    let beta = (0..inst.n_services).map(|_| rng.random_range(-600.0..600.0)).collect();
    (x, alpha, beta)
}

#[test]
fn c04_fa_subproblem_matches_corner_enumeration() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let nl = rng.random_range(1..=2);
        let nk = rng.random_range(1..=3);
        let inst = random_instance(&mut rng, nl, nk, 1);
        let spec = random_spec(&mut rng, nl, 1);
        let (x, alpha, beta) = random_day_point(&mut rng, &inst);
        let rho_lo: Vec<f64> = dro_fa::rho_lower_bounds(&inst).unwrap().iter().map(|r| r[0]).collect();
        let sub = dro_fa::solve_subproblem_t(&inst, &spec, 0, &x, &alpha, &beta, &rho_lo, &tight()).unwrap();
        let mut best = f64::NEG_INFINITY;
        for code in 0..4usize.pow(nl as u32) {
            let d: Vec<f64> = (0..nl).map(|l| if code >> (2 * l) & 1 == 1 { spec.d_hi[l][0] } else { spec.d_lo[l][0] }).collect();
            let s: Vec<f64> = (0..nl).map(|l| if code >> (2 * l + 1) & 1 == 1 { spec.s_hi[l][0] } else { spec.s_lo[l][0] }).collect();
            best = best.max(corner_dual_lp(&inst, &x, &d, &s, &alpha, &beta));
        }
        worst = worst.max((sub.objective - best).abs() / best.abs().max(1.0));
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-6 && secs < 60.0;
    report(4, "F-DHSCP subproblem vs corner enumeration", ok, &format!("max rel diff {worst:.2e} over 20 toys, {secs:.1}s"));
    assert!(ok);
}

#[test]
fn c05_rho_lower_bound_is_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut worst: f64 = 0.0;
    let mut below = 0usize;
    for _ in 0..50 {
        let nl = rng.random_range(1..=3);
        let nk = rng.random_range(1..=3);
        let inst = random_instance(&mut rng, nl, nk, 1);
        let spec = random_spec(&mut rng, nl, 1);
        let (x, alpha, beta) = random_day_point(&mut rng, &inst);
        let rho_lo: Vec<f64> = dro_fa::rho_lower_bounds(&inst).unwrap().iter().map(|r| r[0]).collect();
        let bounded = dro_fa::solve_subproblem_t(&inst, &spec, 0, &x, &alpha, &beta, &rho_lo, &tight()).unwrap();
        let loose = vec![-1e6; nl];
        let free = dro_fa::solve_subproblem_t(&inst, &spec, 0, &x, &alpha, &beta, &loose, &tight()).unwrap();
        worst = worst.max((bounded.objective - free.objective).abs() / free.objective.abs().max(1.0));
        below += free.rho.iter().zip(&rho_lo).filter(|(r, lo)| **r < **lo - 1e-6).count();
    }
    let ok = worst <= 1e-6 && below == 0;
    report(
        5,
        "rho lower bound validity",
        ok,
        &format!("max rel diff {worst:.2e}, {below} entries below the bound over 50 toys"),
    );
    assert!(ok);
}

/// Master problem with every support corner of every day, built directly.
fn full_enumeration_master(inst: &Instance, spec: &UncertaintySpec) -> f64 {
    let (nl, nk, nt) = (inst.n_services, inst.n_types, inst.n_days);
    let mut m = ModelSpec::new("enum", Sense::Minimize);
    let x: Vec<Var> = (0..nk).map(|k| m.integer(format!("x{k}"), 0.0, f64::from(inst.staff_max))).collect();
    for k in 0..nk {
        m.add_objective(x[k], inst.hire_cost[k]);
    }
    m.constrain("lo", x.iter().map(|&v| (v, 1.0)).collect(), Cmp::Ge, f64::from(inst.staff_min));
    m.constrain("hi", x.iter().map(|&v| (v, 1.0)).collect(), Cmp::Le, f64::from(inst.staff_max));
    for t in 0..nt {
        let a: Vec<Var> = (0..nl).map(|l| m.free(format!("a{l}_{t}"))).collect();
        let b: Vec<Var> = (0..nl).map(|l| m.free(format!("b{l}_{t}"))).collect();
        let delta = m.free(format!("delta{t}"));
        m.add_objective(delta, 1.0);
        for l in 0..nl {
            m.add_objective(a[l], spec.mean_d[l][t]);
            m.add_objective(b[l], spec.mean_s[l][t]);
        }
        for code in 0..4usize.pow(nl as u32) {
            let mut cut = vec![(delta, 1.0)];
            let mut serve: Vec<Vec<(Var, f64)>> = vec![Vec::new(); nl];
            for k in 0..nk {
                let o = m.nonneg(format!("o{t}_{code}_{k}"));
                cut.push((o, -inst.over_cost_kt[k][t]));
                let mut row = vec![(o, 1.0), (x[k], -inst.capacity[k])];
                for &l in &inst.skills[k] {
                    let y = m.nonneg(format!("y{t}_{code}_{k}_{l}"));
                    cut.push((y, -inst.alloc_cost[k][l][t]));
                    row.push((y, 1.0));
                    serve[l].push((y, 1.0));
                }
                m.constrain(format!("cap{t}_{code}_{k}"), row, Cmp::Eq, 0.0);
            }
            for l in 0..nl {
                let d = if code >> (2 * l) & 1 == 1 { spec.d_hi[l][t] } else { spec.d_lo[l][t] };
                let s = if code >> (2 * l + 1) & 1 == 1 { spec.s_hi[l][t] } else { spec.s_lo[l][t] };
                let u = m.nonneg(format!("u{t}_{code}_{l}"));
                cut.push((u, -inst.under_cost[l][t]));
                cut.push((a[l], d));
                cut.push((b[l], s));
                let mut row = serve[l].clone();
                row.push((u, 1.0));
                m.constrain(format!("dem{t}_{code}_{l}"), row, Cmp::Eq, d * s);
            }
            m.constrain(format!("cut{t}_{code}"), cut, Cmp::Ge, 0.0);
        }
    }
    let r = milp::solve(&m, &tight()).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    r.objective
}

#[test]
fn c06_ccg_matches_full_enumeration() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let shapes = [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)];
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    let mut within_bound = true;
    let mut converged = true;
    for i in 0..10 {
        let (nl, nt) = shapes[i % shapes.len()];
        let nk = rng.random_range(1..=3);
        let inst = random_instance(&mut rng, nl, nk, nt);
        let spec = random_spec(&mut rng, nl, nt);
        let r = dro_fa::solve_fdhscp_ccg(&inst, &spec, &CcgOptions { epsilon: 1e-3, ..Default::default() }).unwrap();
        let oracle = full_enumeration_master(&inst, &spec);
        worst = worst.max(rel(r.objective(), oracle));
        converged &= r.status == CcgStatus::Converged;
        monotone &= r.iterations.windows(2).all(|w| w[1].lb >= w[0].lb - 1e-9 && w[1].ub <= w[0].ub + 1e-9);
        monotone &= r.iterations.iter().all(|it| it.lb <= it.ub + 1e-6);
        within_bound &= r.n_iterations() <= 4usize.pow((nl * nt) as u32);
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = worst <= 1e-3 && monotone && within_bound && converged && secs < 300.0;
    report(
        6,
        "C&CG vs full corner enumeration",
        ok,
        &format!("max rel diff {worst:.2e}, monotone={monotone}, within 4^(LT)={within_bound}, converged={converged}, {secs:.1}s"),
    );
    assert!(ok);
}

#[test]
fn c07_mean_seed_and_boxes_accelerate_ccg() {
    let template = InstanceTemplate::benchmark(13).unwrap();
    let inst = generate_instance(&template, HorizonKind::Monthly, 7);
    let spec = generate_spec(&inst, DemandRange::Base, 7);
    let base = CcgOptions { epsilon: 0.02, time_limit: 1500.0, ..Default::default() };
    let fast = dro_fa::solve_fdhscp_ccg(&inst, &spec, &CcgOptions { valid_inequalities: true, ..base.clone() }).unwrap();
    let slow = dro_fa::solve_fdhscp_ccg(&inst, &spec, &CcgOptions { valid_inequalities: false, ..base }).unwrap();
    let (a, b) = (fast.n_iterations(), slow.n_iterations());
    let fast_ok = fast.status == CcgStatus::Converged;
    let ratio_ok = 2 * a <= b;
    // A run that never converged is compared through its bound interval.
    let same = if slow.status == CcgStatus::Converged {
        rel(fast.objective(), slow.objective()) <= 0.02
    } else {
        fast.objective() >= slow.lb * (1.0 - 0.02) && fast.objective() <= slow.ub * (1.0 + 0.02)
    };
    let ok = fast_ok && ratio_ok && same;
    report(
        7,
        "valid-inequality acceleration",
        ok,
        &format!(
            "accelerated {a} it / {:.1}s ({:?}, obj {:.1}); plain {b} it / {:.1}s ({:?}, LB {:.1} UB {:.1})",
            fast.wall_time,
            fast.status,
            fast.objective(),
            slow.wall_time,
            slow.status,
            slow.lb,
            slow.ub
        ),
    );
    assert!(ok);
}

#[test]
fn c08_mco_sample_size_magnitude() {
    let start = Instant::now();
    let template = InstanceTemplate::benchmark(1).unwrap();
    let inst = generate_instance(&template, HorizonKind::Monthly, 8);
    let spec = generate_spec(&inst, DemandRange::Base, 8);
    let ea = run_mco(&inst, &spec, SpKind::ESp, &McoOptions { seed: 8, ..Default::default() }).unwrap();
    let fa = run_mco(&inst, &spec, SpKind::FSp, &McoOptions { seed: 8, ..Default::default() }).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ea_ok = ea.converged && ea.n_final <= 640 && ea.final_aoi.abs() <= 0.01;
    let fa_ok = fa.converged && fa.n_final <= 200 && fa.final_aoi.abs() <= 0.01;
    let ok = ea_ok && fa_ok && secs < 900.0;
    report(
        8,
        "MCO convergence magnitude",
        ok,
        &format!(
            "EA N={} AOI={:.4}; FA N={} AOI={:.4}; {secs:.0}s",
            ea.n_final, ea.final_aoi, fa.n_final, fa.final_aoi
        ),
    );
    assert!(ok);
}

fn template10() -> (Instance, UncertaintySpec) {
    let template = InstanceTemplate::benchmark(10).unwrap();
    let inst = generate_instance(&template, HorizonKind::Monthly, 10);
    let spec = generate_spec(&inst, DemandRange::Base, 10);
    (inst, spec)
}

#[test]
fn c09_headcount_moves_with_penalties() {
    let start = Instant::now();
    let (inst, spec) = template10();
    let opts = ModelOptions { seed: 9, ..Default::default() };
    let mut ok = true;
    let mut details = Vec::new();
    for kind in ModelKind::ALL {
        for axis in [SweepAxis::Under, SweepAxis::Over] {
            let (values, fixed) = default_grid(kind, axis);
            let rows = penalty_sweep(&inst, &spec, kind, &axis_pairs(&values, fixed, axis), &opts).unwrap();
            let counts: Vec<u32> = rows.iter().map(|r| r.headcount).collect();
            let (n, worst) = monotonicity_violations(&counts, axis == SweepAxis::Under);
            let good = n <= 1 && worst <= 1;
            ok &= good;
            details.push(format!("{kind}/{axis:?}:{counts:?}{}", if good { "" } else { "!" }));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(9, "staffing monotone in penalties", ok, &format!("{} ({secs:.0}s)", details.join(" ")));
    assert!(ok);
}

#[test]
fn c10_dro_disappoints_less_out_of_sample() {
    let (inst, spec) = template10();
    let opts = ModelOptions { seed: 10, ..Default::default() };
    let samples = make_eval_samples(&spec, SetKind::Set2, 0.5, DEFAULT_EVAL_SAMPLES, 1010).unwrap();
    let mut mean = std::collections::HashMap::new();
    for kind in ModelKind::ALL {
        let out = solve_model(&inst, &spec, kind, &opts).unwrap();
        let rep = evaluate_out_of_sample(&inst, &out.plan, &samples, out.objective, kind.name(), 0.5).unwrap();
        mean.insert(kind, rep.mean_disappointment());
    }
    let (esp, edro, fsp, fdro) = (mean[&ModelKind::ESp], mean[&ModelKind::EDro], mean[&ModelKind::FSp], mean[&ModelKind::FDro]);
    let ok = edro < esp && esp > 50.0 && fdro < fsp;
    report(
        10,
        "out-of-sample disappointment direction",
        ok,
        &format!("E-SP {esp:.1}% vs E-DRO {edro:.1}%; F-SP {fsp:.1}% vs F-DRO {fdro:.1}%"),
    );
    assert!(ok);
}

#[test]
fn c11_desk_solve_times() {
    let template = InstanceTemplate::benchmark(1).unwrap();
    let inst = generate_instance(&template, HorizonKind::Monthly, 11);
    let spec = generate_spec(&inst, DemandRange::Base, 11);
    let t0 = Instant::now();
    dro_ea::solve_edhscp(&inst, &spec, &SolverOptions::sp_default()).unwrap();
    let dro = t0.elapsed().as_secs_f64();
    let scen = sample_scenarios(&spec, 320, 11).unwrap();
    let t1 = Instant::now();
    sp::solve_esp(&inst, &scen, &SolverOptions::sp_default()).unwrap();
    let saa = t1.elapsed().as_secs_f64();
    let ok = dro < 5.0 && saa < 60.0;
    report(11, "desk CPU sanity", ok, &format!("E-DHSCP {dro:.2}s, E-SP N=320 {saa:.2}s"));
    assert!(ok);
}
