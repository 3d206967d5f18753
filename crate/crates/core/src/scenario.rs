//! Mean-support uncertainty data and truncated, integer-rounded scenario
//! sampling for demand (`d`, customers) and service time (`s`, minutes).

use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::seed::SeedStream;

/// Redraws allowed per entry before falling back to clamping.
pub const MAX_REDRAWS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Lognormal whose untruncated mean and standard deviation are `(μ, σ)`.
    /// Truncation shifts the realized mean; no correction is applied.
    Lognormal,
    Normal,
    /// Uniform on the support; `(μ, σ)` are ignored when sampling.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DemandRange {
    /// Demand support `[40, 60]`.
    Base,
    /// Demand support `[40, 100]`.
    Wide,
}

impl DemandRange {
    pub fn bounds(self) -> (f64, f64) {
        match self {
            DemandRange::Base => (40.0, 60.0),
            DemandRange::Wide => (40.0, 100.0),
        }
    }
}

pub const SERVICE_SUPPORT: (f64, f64) = (20.0, 80.0);

/// Distributional data per `(l, t)`; all grids are `[l][t]`.
///
/// The `(mean, support)` pairs define the ambiguity set of the robust models;
/// the standard deviations and family are only used for sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintySpec {
    pub n_services: usize,
    pub n_days: usize,
    pub mean_d: Vec<Vec<f64>>,
    pub mean_s: Vec<Vec<f64>>,
    pub sd_d: Vec<Vec<f64>>,
    pub sd_s: Vec<Vec<f64>>,
    pub d_lo: Vec<Vec<f64>>,
    pub d_hi: Vec<Vec<f64>>,
    pub s_lo: Vec<Vec<f64>>,
    pub s_hi: Vec<Vec<f64>>,
    pub family: Family,
}

impl UncertaintySpec {
    /// A spec with identical values in every cell.
    #[allow(clippy::too_many_arguments)]
    pub fn uniform_cells(
        n_services: usize,
        n_days: usize,
        mean: (f64, f64),
        sd: (f64, f64),
        d_support: (f64, f64),
        s_support: (f64, f64),
        family: Family,
    ) -> UncertaintySpec {
        let g = |v: f64| vec![vec![v; n_days]; n_services];
        UncertaintySpec {
            n_services,
            n_days,
            mean_d: g(mean.0),
            mean_s: g(mean.1),
            sd_d: g(sd.0),
            sd_s: g(sd.1),
            d_lo: g(d_support.0),
            d_hi: g(d_support.1),
            s_lo: g(s_support.0),
            s_hi: g(s_support.1),
            family,
        }
    }

    /// Violations of the spec invariants (mean inside support, non-negative).
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let grids = [
            &self.mean_d, &self.mean_s, &self.sd_d, &self.sd_s, &self.d_lo, &self.d_hi, &self.s_lo,
            &self.s_hi,
        ];
        if grids
            .iter()
            .any(|g| g.len() != self.n_services || g.iter().any(|r| r.len() != self.n_days))
        {
            out.push("array shape does not match (L, T)".to_string());
            return out;
        }
        for l in 0..self.n_services {
            for t in 0..self.n_days {
                let cell = format!("l={} t={}", l + 1, t + 1);
                let vals = [
                    self.mean_d[l][t],
                    self.mean_s[l][t],
                    self.sd_d[l][t],
                    self.sd_s[l][t],
                    self.d_lo[l][t],
                    self.d_hi[l][t],
                    self.s_lo[l][t],
                    self.s_hi[l][t],
                ];
                if vals.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    out.push(format!("negative or non-finite parameter {cell}"));
                    continue;
                }
                if !(self.d_lo[l][t] <= self.mean_d[l][t] && self.mean_d[l][t] <= self.d_hi[l][t]) {
                    out.push(format!("demand mean outside support {cell}"));
                }
                if !(self.s_lo[l][t] <= self.mean_s[l][t] && self.mean_s[l][t] <= self.s_hi[l][t]) {
                    out.push(format!("service-time mean outside support {cell}"));
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
            Err(Error::InvalidInput(v.join("; ")))
        }
    }

    pub fn check_dims(&self, inst: &Instance) -> Result<()> {
        if (self.n_services, self.n_days) != (inst.n_services, inst.n_days) {
            return Err(Error::Dimension(format!(
                "uncertainty spec is {}x{}, instance is {}x{}",
                self.n_services, self.n_days, inst.n_services, inst.n_days
            )));
        }
        Ok(())
    }

    /// FNV-1a hash of the JSON encoding; recorded in sampled scenario sets.
    pub fn fingerprint(&self) -> u64 {
        let text = serde_json::to_string(self).expect("spec serializes");
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in text.as_bytes() {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h
    }

    /// The single scenario `ξ = μ` (not rounded).
    pub fn mean_scenario(&self) -> ScenarioSet {
        let mut set = ScenarioSet::zeros(1, self.n_services, self.n_days);
        for l in 0..self.n_services {
            for t in 0..self.n_days {
                set.set(0, l, t, self.mean_d[l][t], self.mean_s[l][t]);
            }
        }
        set.spec_fingerprint = self.fingerprint();
        set
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = serde_json::to_string_pretty(self).map_err(|e| Error::Schema(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<UncertaintySpec> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let spec: UncertaintySpec =
            serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
        spec.ensure_valid()?;
        Ok(spec)
    }
}

/// Sample `(μ, σ, support)` for every `(l, t)` of `inst`.
pub fn generate_spec(inst: &Instance, range: DemandRange, seed: u64) -> UncertaintySpec {
    let mut rng = SeedStream::new(seed).child("uncertainty").rng();
    let (nl, nt) = (inst.n_services, inst.n_days);
    let (dlo, dhi) = range.bounds();
    let (slo, shi) = SERVICE_SUPPORT;
    let mut spec = UncertaintySpec::uniform_cells(
        nl,
        nt,
        (0.0, 0.0),
        (0.0, 0.0),
        (dlo, dhi),
        (slo, shi),
        Family::Lognormal,
    );
    for l in 0..nl {
        for t in 0..nt {
            let md: f64 = rng.random_range(40.0..=60.0);
            let gd: f64 = rng.random_range(0.5..=1.0);
            let ms: f64 = rng.random_range(40.0..=60.0);
            let gs: f64 = rng.random_range(0.5..=1.0);
            spec.mean_d[l][t] = md.clamp(dlo, dhi);
            spec.sd_d[l][t] = gd * md;
            spec.mean_s[l][t] = ms.clamp(slo, shi);
            spec.sd_s[l][t] = gs * ms;
        }
    }
    spec
}

/// Uniform distribution on the supports widened to
/// `[(1-Δ)·lower, (1+Δ)·upper]`, for misspecification tests.
pub fn perturbed_spec(spec: &UncertaintySpec, delta: f64) -> Result<UncertaintySpec> {
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidInput(format!("perturbation Δ={delta} must lie in [0, 1)")));
    }
    let mut out = spec.clone();
    out.family = Family::Uniform;
    let widen = |lo: &mut Vec<Vec<f64>>, hi: &mut Vec<Vec<f64>>, mean: &mut Vec<Vec<f64>>, sd: &mut Vec<Vec<f64>>| {
        for l in 0..lo.len() {
            for t in 0..lo[l].len() {
                lo[l][t] *= 1.0 - delta;
                hi[l][t] *= 1.0 + delta;
                mean[l][t] = 0.5 * (lo[l][t] + hi[l][t]);
                sd[l][t] = (hi[l][t] - lo[l][t]) / 12f64.sqrt();
            }
        }
    };
    widen(&mut out.d_lo, &mut out.d_hi, &mut out.mean_d, &mut out.sd_d);
    widen(&mut out.s_lo, &mut out.s_hi, &mut out.mean_s, &mut out.sd_s);
    Ok(out)
}

/// Joint realizations of `(d, s)`; values are stored flat as `[n][l][t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSet {
    pub n_scenarios: usize,
    pub n_services: usize,
    pub n_days: usize,
    pub d: Vec<f64>,
    pub s: Vec<f64>,
    pub seed: u64,
    pub spec_fingerprint: u64,
}

impl ScenarioSet {
    pub fn zeros(n: usize, n_services: usize, n_days: usize) -> ScenarioSet {
        let len = n * n_services * n_days;
        ScenarioSet {
            n_scenarios: n,
            n_services,
            n_days,
            d: vec![0.0; len],
            s: vec![0.0; len],
            seed: 0,
            spec_fingerprint: 0,
        }
    }

    /// Build from per-scenario `[l][t]` grids.
    pub fn from_grids(scenarios: &[(Vec<Vec<f64>>, Vec<Vec<f64>>)]) -> ScenarioSet {
        let nl = scenarios.first().map_or(0, |s| s.0.len());
        let nt = scenarios.first().and_then(|s| s.0.first()).map_or(0, |r| r.len());
        let mut set = ScenarioSet::zeros(scenarios.len(), nl, nt);
        for (n, (d, s)) in scenarios.iter().enumerate() {
            for l in 0..nl {
                for t in 0..nt {
                    set.set(n, l, t, d[l][t], s[l][t]);
                }
            }
        }
        set
    }

    #[inline]
    pub fn idx(&self, n: usize, l: usize, t: usize) -> usize {
        (n * self.n_services + l) * self.n_days + t
    }

    #[inline]
    pub fn d(&self, n: usize, l: usize, t: usize) -> f64 {
        self.d[self.idx(n, l, t)]
    }

    #[inline]
    pub fn s(&self, n: usize, l: usize, t: usize) -> f64 {
        self.s[self.idx(n, l, t)]
    }

    /// Demand in minutes, `d · s`.
    #[inline]
    pub fn minutes(&self, n: usize, l: usize, t: usize) -> f64 {
        let i = self.idx(n, l, t);
        self.d[i] * self.s[i]
    }

    pub fn set(&mut self, n: usize, l: usize, t: usize, d: f64, s: f64) {
        let i = self.idx(n, l, t);
        self.d[i] = d;
        self.s[i] = s;
    }

    /// Slice of one scenario's demands, `[l][t]` flattened.
    pub fn scenario_d(&self, n: usize) -> &[f64] {
        let w = self.n_services * self.n_days;
        &self.d[n * w..(n + 1) * w]
    }

    pub fn scenario_s(&self, n: usize) -> &[f64] {
        let w = self.n_services * self.n_days;
        &self.s[n * w..(n + 1) * w]
    }

    pub fn check_dims(&self, inst: &Instance) -> Result<()> {
        if self.n_scenarios == 0 {
            return Err(Error::InvalidInput("scenario set is empty".into()));
        }
        if (self.n_services, self.n_days) != (inst.n_services, inst.n_days) {
            return Err(Error::Dimension(format!(
                "scenarios are {}x{}, instance is {}x{}",
                self.n_services, self.n_days, inst.n_services, inst.n_days
            )));
        }
        Ok(())
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["n", "l", "t", "d", "s"])?;
        for n in 0..self.n_scenarios {
            for l in 0..self.n_services {
                for t in 0..self.n_days {
                    w.write_record(&[
                        n.to_string(),
                        l.to_string(),
                        t.to_string(),
                        self.d(n, l, t).to_string(),
                        self.s(n, l, t).to_string(),
                    ])?;
                }
            }
        }
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<ScenarioSet> {
        let mut r = csv::Reader::from_path(path.as_ref())?;
        let mut rows: Vec<(usize, usize, usize, f64, f64)> = Vec::new();
        for rec in r.deserialize() {
            rows.push(rec?);
        }
        let n = rows.iter().map(|r| r.0 + 1).max().unwrap_or(0);
        let nl = rows.iter().map(|r| r.1 + 1).max().unwrap_or(0);
        let nt = rows.iter().map(|r| r.2 + 1).max().unwrap_or(0);
        if rows.len() != n * nl * nt {
            return Err(Error::Schema(format!(
                "scenario csv has {} rows, expected {}",
                rows.len(),
                n * nl * nt
            )));
        }
        let mut set = ScenarioSet::zeros(n, nl, nt);
        for (a, l, t, d, s) in rows {
            set.set(a, l, t, d, s);
        }
        Ok(set)
    }
}

/// One truncated draw. Rejection-resamples up to [`MAX_REDRAWS`] times.
fn draw_truncated<R: Rng + ?Sized>(family: Family, mean: f64, sd: f64, lo: f64, hi: f64, rng: &mut R) -> f64 {
    if hi <= lo {
        return lo;
    }
    match family {
        Family::Uniform => return rng.random_range(lo..=hi),
        _ if sd == 0.0 => return mean.clamp(lo, hi),
        _ => {}
    }
    let sample = |rng: &mut R| -> f64 {
        match family {
            Family::Normal => Normal::new(mean, sd).expect("finite normal").sample(rng),
            Family::Lognormal => {
                let var_ratio = (sd * sd) / (mean * mean);
                let sigma = (1.0 + var_ratio).ln().sqrt();
                let mu = mean.ln() - 0.5 * sigma * sigma;
                LogNormal::new(mu, sigma).expect("finite lognormal").sample(rng)
            }
            Family::Uniform => unreachable!(),
        }
    };
    let mut last = mean;
    for _ in 0..MAX_REDRAWS {
        last = sample(rng);
        if (lo..=hi).contains(&last) {
            return last;
        }
    }
    log::warn!("truncation fell back to clamping after {MAX_REDRAWS} redraws (support [{lo}, {hi}])");
    last.clamp(lo, hi)
}

/// Round half-to-even, then keep the result inside the support.
fn round_into(v: f64, lo: f64, hi: f64) -> f64 {
    let (ilo, ihi) = (lo.ceil(), hi.floor());
    if ilo > ihi {
        return v.clamp(lo, hi);
    }
    v.round_ties_even().clamp(ilo, ihi)
}

/// Draw `n` i.i.d. integer scenarios. Scenario `i` uses its own stream
/// derived from `(seed, i)`, so results do not depend on thread count.
pub fn sample_scenarios(spec: &UncertaintySpec, n: usize, seed: u64) -> Result<ScenarioSet> {
    if n == 0 {
        return Err(Error::InvalidInput("number of scenarios must be at least 1".into()));
    }
    let finite = [&spec.mean_d, &spec.mean_s, &spec.sd_d, &spec.sd_s, &spec.d_lo, &spec.d_hi, &spec.s_lo, &spec.s_hi]
        .iter()
        .all(|g| g.iter().flatten().all(|v| v.is_finite()));
    if !finite {
        return Err(Error::InvalidInput("non-finite distribution parameter".into()));
    }
    let (nl, nt) = (spec.n_services, spec.n_days);
    let root = SeedStream::new(seed).child("scenarios");
    let width = nl * nt;
    let blocks: Vec<(Vec<f64>, Vec<f64>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = root.index(i as u64).rng();
            let mut d = Vec::with_capacity(width);
            let mut s = Vec::with_capacity(width);
            for l in 0..nl {
                for t in 0..nt {
                    let (dlo, dhi) = (spec.d_lo[l][t], spec.d_hi[l][t]);
                    let (slo, shi) = (spec.s_lo[l][t], spec.s_hi[l][t]);
                    let dv = draw_truncated(spec.family, spec.mean_d[l][t], spec.sd_d[l][t], dlo, dhi, &mut rng);
                    let sv = draw_truncated(spec.family, spec.mean_s[l][t], spec.sd_s[l][t], slo, shi, &mut rng);
                    d.push(round_into(dv, dlo, dhi));
                    s.push(round_into(sv, slo, shi));
                }
            }
            (d, s)
        })
        .collect();
    let mut set = ScenarioSet::zeros(n, nl, nt);
    for (i, (d, s)) in blocks.into_iter().enumerate() {
        set.d[i * width..(i + 1) * width].copy_from_slice(&d);
        set.s[i * width..(i + 1) * width].copy_from_slice(&s);
    }
    set.seed = seed;
    set.spec_fingerprint = spec.fingerprint();
    Ok(set)
}
