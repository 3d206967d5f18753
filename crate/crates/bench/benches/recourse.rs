use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hscp_core::dro_ea::{self, corner_eta, CellSupport};
use hscp_core::instance::{generate_instance, HorizonKind, InstanceTemplate};
use hscp_core::milp::SolverOptions;
use hscp_core::scenario::{generate_spec, sample_scenarios, DemandRange};
use hscp_core::sp;

fn recourse(c: &mut Criterion) {
    let template = InstanceTemplate::benchmark(10).unwrap();
    let inst = generate_instance(&template, HorizonKind::Monthly, 1);
    let spec = generate_spec(&inst, DemandRange::Base, 1);
    let scen = sample_scenarios(&spec, 200, 2).unwrap();
    let plan = dro_ea::solve_edhscp(&inst, &spec, &SolverOptions::sp_default()).unwrap().solution;

    let mut g = c.benchmark_group("recourse");
    g.bench_function("ea_closed_form_one_scenario", |b| {
        b.iter(|| sp::recourse_cost_ea(&inst, black_box(&plan.y), scen.scenario_d(0), scen.scenario_s(0)))
    });
    g.bench_function("fa_flow_one_scenario", |b| {
        b.iter(|| sp::recourse_cost_fa(&inst, black_box(&plan.x), scen.scenario_d(0), scen.scenario_s(0)).cost)
    });
    g.sample_size(20);
    g.bench_function("fa_mean_200_scenarios", |b| b.iter(|| sp::mean_recourse_fa(&inst, black_box(&plan.x), &scen).unwrap()));
    g.finish();
}

fn corners(c: &mut Criterion) {
    let cell = CellSupport { d_lo: 30.0, d_hi: 70.0, s_lo: 20.0, s_hi: 80.0 };
    c.bench_function("corner_eta", |b| {
        b.iter(|| corner_eta(black_box(2500.0), black_box(3.0), black_box(-1.5), cell, 10.0, 1.0))
    });
}

fn small_solves(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    g.sample_size(10);
    for id in [1u32, 4] {
        let template = InstanceTemplate::benchmark(id).unwrap();
        let inst = generate_instance(&template, HorizonKind::Monthly, 3);
        let spec = generate_spec(&inst, DemandRange::Base, 3);
        g.bench_with_input(BenchmarkId::new("edhscp", id), &id, |b, _| {
            b.iter(|| dro_ea::solve_edhscp(&inst, &spec, &SolverOptions::sp_default()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, recourse, corners, small_solves);
criterion_main!(benches);
