//! Home-care staffing and capacity planning (HSCP).
//!
//! Two decision-makers are modelled. The *everything-in-advance* (EA) planner
//! fixes headcount and daily capacity allocation before demand is known; the
//! *flexible-adjustment* (FA) planner fixes headcount only and allocates once
//! demand and service times are realized. Each has a stochastic program solved
//! by sample average approximation and a distributionally robust counterpart
//! over a mean-support ambiguity set:
//!
//! | model   | module        | method                                    |
//! |---------|---------------|-------------------------------------------|
//! | E-SP    | [`sp`]        | extensive-form SAA MILP                   |
//! | F-SP    | [`sp`]        | extensive-form SAA MILP                   |
//! | E-DHSCP | [`dro_ea`]    | single MILP via corner dualization        |
//! | F-DHSCP | [`dro_fa`]    | column-and-constraint generation          |
//!
//! [`models::solve_model`] dispatches on [`ModelKind`]. [`mco`] sizes the SAA sample by Monte Carlo optimization and [`evaluate`]
//! simulates fixed first-stage decisions out of sample. All models are built
//! as solver-agnostic [`milp::ModelSpec`]s and handed to HiGHS.

pub mod dro_ea;
pub mod dro_fa;
pub mod error;
pub mod evaluate;
pub mod flow;
pub mod instance;
pub mod mco;
pub mod milp;
pub mod models;
pub mod scenario;
pub mod seed;
pub mod sp;
pub mod stats;
pub mod sweep;

pub use error::{Error, Result};
pub use instance::{HorizonKind, Instance, InstanceTemplate, SkillMix};
pub use milp::{ModelSpec, SolveResult, SolveStatus, SolverOptions};
pub use models::{ModelKind, ModelOptions, ModelOutcome, Plan};
pub use scenario::{DemandRange, Family, ScenarioSet, UncertaintySpec};
pub use sp::{EaSolution, FaSolution};
