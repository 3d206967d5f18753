//! Deterministic problem data, the benchmark instance table and the random
//! instance generator.

use std::fmt;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::SeedStream;

pub const SCHEMA_VERSION: u32 = 1;

/// Margin used when clipping allocation costs below `c^u + c^o_k`.
pub const ECONOMIC_EPS: f64 = 1e-6;

/// Deterministic data of one staffing problem.
///
/// Service, caregiver-type and day indices are zero-based everywhere,
/// including the JSON file format. Multi-dimensional arrays are nested
/// row-major: `alloc_cost[k][l][t]`, `under_cost[l][t]`, `over_cost_kt[k][t]`.
/// `alloc_cost[k][l]` is ignored when `l` is not in `skills[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub schema_version: u32,
    pub id: String,
    #[serde(rename = "L")]
    pub n_services: usize,
    #[serde(rename = "K")]
    pub n_types: usize,
    #[serde(rename = "T")]
    pub n_days: usize,
    pub skills: Vec<Vec<usize>>,
    pub hire_cost: Vec<f64>,
    pub alloc_cost: Vec<Vec<Vec<f64>>>,
    pub under_cost: Vec<Vec<f64>>,
    /// EA over-staffing penalty per service and day.
    pub over_cost_lt: Vec<Vec<f64>>,
    /// FA idle-capacity penalty per caregiver type and day.
    pub over_cost_kt: Vec<Vec<f64>>,
    pub capacity: Vec<f64>,
    pub staff_min: u32,
    pub staff_max: u32,
}

/// One broken invariant, with the offending indices (1-based in messages).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.detail.is_empty() {
            write!(f, "{}", self.invariant)
        } else {
            write!(f, "{} {}", self.invariant, self.detail)
        }
    }
}

fn violation(invariant: &'static str, detail: impl Into<String>) -> Violation {
    Violation {
        invariant,
        detail: detail.into(),
    }
}

impl Instance {
    /// `(k, l)` pairs with `l ∈ R_k`, ordered by `k` then by position in `R_k`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.skills
            .iter()
            .enumerate()
            .flat_map(|(k, r)| r.iter().map(move |&l| (k, l)))
            .collect()
    }

    /// Caregiver types able to serve `l`.
    pub fn covering(&self, l: usize) -> Vec<usize> {
        (0..self.n_types)
            .filter(|&k| self.skills[k].contains(&l))
            .collect()
    }

    pub fn hire_cost_of(&self, x: &[u32]) -> f64 {
        x.iter()
            .zip(&self.hire_cost)
            .map(|(&n, &c)| f64::from(n) * c)
            .sum()
    }

    /// All invariant violations; empty iff the instance is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let (nl, nk, nt) = (self.n_services, self.n_types, self.n_days);
        if nl == 0 {
            out.push(violation("dimension", "L must be at least 1"));
        }
        if nk == 0 {
            out.push(violation("dimension", "K must be at least 1"));
        }
        if nt == 0 {
            out.push(violation("dimension", "T must be at least 1"));
        }
        if !out.is_empty() {
            return out;
        }

        let shape_ok = self.skills.len() == nk
            && self.hire_cost.len() == nk
            && self.capacity.len() == nk
            && self.alloc_cost.len() == nk
            && self
                .alloc_cost
                .iter()
                .all(|a| a.len() == nl && a.iter().all(|b| b.len() == nt))
            && self.under_cost.len() == nl
            && self.under_cost.iter().all(|a| a.len() == nt)
            && self.over_cost_lt.len() == nl
            && self.over_cost_lt.iter().all(|a| a.len() == nt)
            && self.over_cost_kt.len() == nk
            && self.over_cost_kt.iter().all(|a| a.len() == nt);
        if !shape_ok {
            out.push(violation("array shape", "does not match (L, K, T)"));
            return out;
        }

        for (k, r) in self.skills.iter().enumerate() {
            if r.is_empty() {
                out.push(violation("empty skill set", format!("k={}", k + 1)));
            }
            for &l in r {
                if l >= nl {
                    out.push(violation(
                        "skill out of range",
                        format!("k={} l={}", k + 1, l + 1),
                    ));
                }
            }
            let mut sorted = r.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != r.len() {
                out.push(violation("duplicate skill", format!("k={}", k + 1)));
            }
        }
        for l in 0..nl {
            if self.covering(l).is_empty() {
                out.push(violation("uncovered service", format!("l={}", l + 1)));
            }
        }
        if self.staff_min > self.staff_max {
            out.push(violation(
                "staffing bounds",
                format!("w_min={} > w_max={}", self.staff_min, self.staff_max),
            ));
        }

        let bad = |v: f64| !v.is_finite() || v < 0.0;
        for k in 0..nk {
            if bad(self.hire_cost[k]) {
                out.push(violation("negative cost", format!("hire k={}", k + 1)));
            }
            if !(self.capacity[k].is_finite() && self.capacity[k] > 0.0) {
                out.push(violation("capacity", format!("k={}", k + 1)));
            }
            for t in 0..nt {
                if bad(self.over_cost_kt[k][t]) {
                    out.push(violation(
                        "negative cost",
                        format!("over_kt k={} t={}", k + 1, t + 1),
                    ));
                }
            }
            for l in 0..nl {
                for t in 0..nt {
                    if bad(self.alloc_cost[k][l][t]) {
                        out.push(violation(
                            "negative cost",
                            format!("alloc k={} l={} t={}", k + 1, l + 1, t + 1),
                        ));
                    }
                }
            }
        }
        for l in 0..nl {
            for t in 0..nt {
                if bad(self.under_cost[l][t]) || bad(self.over_cost_lt[l][t]) {
                    out.push(violation(
                        "negative cost",
                        format!("penalty l={} t={}", l + 1, t + 1),
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }

        for (k, r) in self.skills.iter().enumerate() {
            for &l in r {
                for t in 0..nt {
                    if self.under_cost[l][t] + self.over_cost_kt[k][t] <= self.alloc_cost[k][l][t] {
                        out.push(violation(
                            "FA economic condition",
                            format!("k={} l={} t={}", k + 1, l + 1, t + 1),
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(v.iter().map(|x| x.to_string()).collect()))
        }
    }

    /// Replace every penalty with flat values (`c^o` applies to both the EA
    /// and FA over-staffing penalties) and re-clip allocation costs so the FA
    /// economic condition keeps holding.
    pub fn with_penalties(&self, under: f64, over: f64) -> Instance {
        let mut inst = self.clone();
        for row in inst.under_cost.iter_mut() {
            row.iter_mut().for_each(|c| *c = under);
        }
        for row in inst.over_cost_lt.iter_mut() {
            row.iter_mut().for_each(|c| *c = over);
        }
        for row in inst.over_cost_kt.iter_mut() {
            row.iter_mut().for_each(|c| *c = over);
        }
        inst.enforce_economic_condition();
        inst
    }

    /// Clip `c_{k,l,t}` to `c^u_{l,t} + c^o_{k,t} - ε` wherever it is larger.
    pub fn enforce_economic_condition(&mut self) {
        for k in 0..self.n_types {
            for &l in &self.skills[k] {
                for t in 0..self.n_days {
                    let cap = self.under_cost[l][t] + self.over_cost_kt[k][t] - ECONOMIC_EPS;
                    let c = &mut self.alloc_cost[k][l][t];
                    if *c > cap {
                        *c = cap.max(0.0);
                    }
                }
            }
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Schema(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let raw: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        match raw.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == u64::from(SCHEMA_VERSION) => {}
            Some(v) => {
                return Err(Error::Schema(format!(
                    "schema_version {v} not supported (expected {SCHEMA_VERSION})"
                )))
            }
            None => return Err(Error::Schema("missing schema_version".into())),
        }
        let inst: Instance =
            serde_json::from_value(raw).map_err(|e| Error::Schema(e.to_string()))?;
        inst.ensure_valid()?;
        Ok(inst)
    }
}

/// Length of the planning horizon, which scales the hiring cost ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HorizonKind {
    Monthly,
    Quarterly,
    Semiannual,
}

impl HorizonKind {
    /// 30, 90 and 180 days map to monthly, quarterly and semiannual.
    pub fn from_days(days: usize) -> HorizonKind {
        match days {
            0..=45 => HorizonKind::Monthly,
            46..=135 => HorizonKind::Quarterly,
            _ => HorizonKind::Semiannual,
        }
    }

    pub fn multiplier(self) -> f64 {
        match self {
            HorizonKind::Monthly => 1.0,
            HorizonKind::Quarterly => 3.0,
            HorizonKind::Semiannual => 6.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HorizonKind::Monthly => "monthly",
            HorizonKind::Quarterly => "quarterly",
            HorizonKind::Semiannual => "semiannual",
        }
    }
}

/// How skill sets are assigned to caregiver types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkillMix {
    /// Type `k` serves `{k mod L, (k+1) mod L}`.
    AllCrossTrained,
    /// The first `K/2` types serve one service each (`k mod L`); type
    /// `K/2 + j` serves `{j mod L, (j+1) mod L}`.
    HalfSpecialized,
}

impl SkillMix {
    pub fn assign(self, n_services: usize, n_types: usize) -> Vec<Vec<usize>> {
        let pair = |j: usize| {
            let a = j % n_services;
            let b = (j + 1) % n_services;
            if a == b {
                vec![a]
            } else {
                vec![a, b]
            }
        };
        match self {
            SkillMix::AllCrossTrained => (0..n_types).map(pair).collect(),
            SkillMix::HalfSpecialized => {
                let half = n_types / 2;
                (0..n_types)
                    .map(|k| {
                        if k < half {
                            vec![k % n_services]
                        } else {
                            pair(k - half)
                        }
                    })
                    .collect()
            }
        }
    }
}

/// A row of the benchmark table plus the cost-sampling parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceTemplate {
    pub id: u32,
    pub n_services: usize,
    pub n_types: usize,
    pub n_days: usize,
    pub skill_mix: SkillMix,
    /// Monthly hiring cost range; scaled by the horizon multiplier.
    pub hire_range: (f64, f64),
    /// Monthly cross-training surcharge range; scaled by the horizon multiplier.
    pub surcharge_range: (f64, f64),
    /// Allocation cost per capacity-minute, constant over days.
    pub alloc_range: (f64, f64),
    pub under_cost: f64,
    pub over_cost: f64,
    pub capacity: f64,
    pub staff_min: u32,
    /// `None` derives a non-binding upper bound.
    pub staff_max: Option<u32>,
}

/// `(id, L, K, T)` rows of the benchmark table.
pub const BENCHMARK_TABLE: [(u32, usize, usize, usize); 15] = [
    (1, 4, 4, 30),
    (2, 4, 4, 90),
    (3, 4, 4, 180),
    (4, 4, 6, 30),
    (5, 4, 6, 90),
    (6, 4, 6, 180),
    (7, 4, 8, 30),
    (8, 4, 8, 90),
    (9, 4, 8, 180),
    (10, 6, 6, 30),
    (11, 6, 6, 90),
    (12, 6, 6, 180),
    (13, 6, 8, 30),
    (14, 6, 8, 90),
    (15, 6, 8, 180),
];

/// Widest demand and service-time upper bounds used by the instance protocol;
/// they size the default staffing ceiling.
const NOMINAL_DEMAND_MAX: f64 = 100.0;
const NOMINAL_SERVICE_MAX: f64 = 80.0;

impl InstanceTemplate {
    pub fn benchmark(id: u32) -> Result<InstanceTemplate> {
        let &(_, l, k, t) = BENCHMARK_TABLE
            .iter()
            .find(|row| row.0 == id)
            .ok_or_else(|| Error::InvalidInput(format!("no benchmark template {id} (1..=15)")))?;
        // Instance 7 mixes specialists with cross-trained caregivers.
        let skill_mix = if id == 7 {
            SkillMix::HalfSpecialized
        } else {
            SkillMix::AllCrossTrained
        };
        Ok(InstanceTemplate {
            id,
            n_services: l,
            n_types: k,
            n_days: t,
            skill_mix,
            hire_range: (3000.0, 6000.0),
            surcharge_range: (500.0, 1000.0),
            alloc_range: (0.5, 1.5),
            under_cost: 20.0,
            over_cost: 2.0,
            capacity: 480.0,
            staff_min: 3,
            staff_max: None,
        })
    }

    /// Same sampling parameters with different dimensions (desk-scale toys).
    pub fn with_dims(mut self, n_services: usize, n_types: usize, n_days: usize) -> Self {
        self.n_services = n_services;
        self.n_types = n_types;
        self.n_days = n_days;
        self
    }

    pub fn is_benchmark_row(&self) -> bool {
        BENCHMARK_TABLE
            .iter()
            .any(|&(id, l, k, t)| id == self.id && (l, k, t) == (self.n_services, self.n_types, self.n_days))
    }

    pub fn default_staff_max(&self) -> u32 {
        let per_day: f64 = self.n_services as f64 * NOMINAL_DEMAND_MAX * NOMINAL_SERVICE_MAX;
        let days = self.n_days as f64;
        let ceiling = (per_day * days / (self.capacity * days)).ceil() as u32;
        ceiling + self.n_types as u32
    }
}

/// Sample a random instance. Pure function of its arguments.
pub fn generate_instance(template: &InstanceTemplate, horizon: HorizonKind, seed: u64) -> Instance {
    let mut rng = SeedStream::new(seed).child("instance").rng();
    let (nl, nk, nt) = (template.n_services, template.n_types, template.n_days);
    let skills = template.skill_mix.assign(nl, nk);
    let mult = horizon.multiplier();

    let hire_cost: Vec<f64> = skills
        .iter()
        .map(|r| {
            let (lo, hi) = template.hire_range;
            let base = rng.random_range(lo * mult..=hi * mult);
            if r.len() > 1 {
                let (slo, shi) = template.surcharge_range;
                base + rng.random_range(slo * mult..=shi * mult)
            } else {
                base
            }
        })
        .collect();

    let (alo, ahi) = template.alloc_range;
    let alloc_cost: Vec<Vec<Vec<f64>>> = skills
        .iter()
        .map(|r| {
            (0..nl)
                .map(|l| {
                    let c = if r.contains(&l) {
                        rng.random_range(alo..=ahi)
                    } else {
                        0.0
                    };
                    vec![c; nt]
                })
                .collect()
        })
        .collect();

    let mut inst = Instance {
        schema_version: SCHEMA_VERSION,
        id: format!("tpl{}-{}-s{}", template.id, horizon.name(), seed),
        n_services: nl,
        n_types: nk,
        n_days: nt,
        skills,
        hire_cost,
        alloc_cost,
        under_cost: vec![vec![template.under_cost; nt]; nl],
        over_cost_lt: vec![vec![template.over_cost; nt]; nl],
        over_cost_kt: vec![vec![template.over_cost; nt]; nk],
        capacity: vec![template.capacity; nk],
        staff_min: template.staff_min,
        staff_max: template.staff_max.unwrap_or_else(|| template.default_staff_max()),
    };
    inst.enforce_economic_condition();
    inst
}
