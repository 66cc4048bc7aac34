//! Parameter-sweep campaign, accuracy statistics, and the built-in
//! benchmark cases with published reference results.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::SweepError;
use crate::search::{search, Algorithm, SearchConfig, SearchOutcome};
use crate::slope::{Material, SlopeCase, SoilProfile};

/// Cartesian sweep over inclinations, cohesions and friction angles at a
/// fixed height and unit weight. Angles in degrees, as they appear in
/// configuration files.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub height: f64,
    pub unit_weight: f64,
    pub betas_deg: Vec<f64>,
    pub cohesions: Vec<f64>,
    pub phis_deg: Vec<f64>,
}

impl SweepTable {
    /// The standard 9 x 5 x 5 campaign: H = 5 m, gamma = 18 kN/m3,
    /// inclinations 10..90 deg, cohesions 0.5..20 kPa, frictions 20..40 deg.
    pub fn standard_campaign() -> Self {
        Self {
            height: 5.0,
            unit_weight: 18.0,
            betas_deg: (1..=9).map(|i| 10.0 * i as f64).collect(),
            cohesions: vec![0.5, 5.0, 10.0, 15.0, 20.0],
            phis_deg: vec![20.0, 25.0, 30.0, 35.0, 40.0],
        }
    }

    pub fn len(&self) -> usize {
        self.betas_deg.len() * self.cohesions.len() * self.phis_deg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Outcome of one algorithm on one sweep case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgoResult {
    pub factor: f64,
    pub evaluations: u64,
    pub grid_evaluations: u64,
    pub refine_evaluations: u64,
    pub wall_time_s: f64,
}

impl From<&SearchOutcome> for AlgoResult {
    fn from(o: &SearchOutcome) -> Self {
        Self {
            factor: o.factor(),
            evaluations: o.evaluations,
            grid_evaluations: o.grid_evaluations,
            refine_evaluations: o.refine_evaluations,
            wall_time_s: o.wall_time.as_secs_f64(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgoRun {
    Ok(AlgoResult),
    Failed(String),
}

impl AlgoRun {
    pub fn ok(&self) -> Option<&AlgoResult> {
        match self {
            AlgoRun::Ok(r) => Some(r),
            AlgoRun::Failed(_) => None,
        }
    }
}

/// One sweep case with the outcome of every requested algorithm. A failed
/// algorithm is recorded, never propagated.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub beta_deg: f64,
    pub cohesion: f64,
    pub phi_deg: f64,
    pub height: f64,
    pub unit_weight: f64,
    pub hi: Option<AlgoRun>,
    pub fi: Option<AlgoRun>,
    pub fs: Option<AlgoRun>,
}

impl SweepRecord {
    pub fn run(&self, algorithm: Algorithm) -> Option<&AlgoRun> {
        match algorithm {
            Algorithm::Hi => self.hi.as_ref(),
            Algorithm::Fi => self.fi.as_ref(),
            Algorithm::Fs => self.fs.as_ref(),
        }
    }

    pub fn factor(&self, algorithm: Algorithm) -> Option<f64> {
        self.run(algorithm).and_then(AlgoRun::ok).map(|r| r.factor)
    }
}

/// Run the sweep in deterministic case order (beta outer, then cohesion,
/// then friction). With `jobs > 1` the cases run on a worker pool, one
/// search session each; results are merged back in case order.
pub fn run_sweep(
    table: &SweepTable,
    algorithms: &[Algorithm],
    config: &SearchConfig,
    jobs: usize,
) -> Result<Vec<SweepRecord>, SweepError> {
    if table.is_empty() {
        return Err(SweepError::EmptyTable);
    }
    let mut cases = Vec::with_capacity(table.len());
    for &beta_deg in &table.betas_deg {
        for &c in &table.cohesions {
            for &phi_deg in &table.phis_deg {
                cases.push((beta_deg, c, phi_deg));
            }
        }
    }
    let run_case = |&(beta_deg, c, phi_deg): &(f64, f64, f64)| -> SweepRecord {
        let mut record = SweepRecord {
            beta_deg,
            cohesion: c,
            phi_deg,
            height: table.height,
            unit_weight: table.unit_weight,
            hi: None,
            fi: None,
            fs: None,
        };
        let slope = Material::new(c, phi_deg.to_radians(), table.unit_weight)
            .and_then(|m| SlopeCase::homogeneous(table.height, beta_deg.to_radians(), m));
        for &algorithm in algorithms {
            let run = match &slope {
                Ok(slope) => match search(algorithm, slope, config) {
                    Ok(outcome) => AlgoRun::Ok(AlgoResult::from(&outcome)),
                    Err(e) => AlgoRun::Failed(e.to_string()),
                },
                Err(e) => AlgoRun::Failed(e.to_string()),
            };
            match algorithm {
                Algorithm::Hi => record.hi = Some(run),
                Algorithm::Fi => record.fi = Some(run),
                Algorithm::Fs => record.fs = Some(run),
            }
        }
        record
    };
    let records = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool construction");
        pool.install(|| cases.par_iter().map(run_case).collect())
    } else {
        cases.iter().map(run_case).collect()
    };
    Ok(records)
}

/// Fixed-header CSV of a sweep: one row per case with each algorithm's
/// factor and evaluation counts, including the simplex share of the hybrid
/// count (the per-case refinement-cost surface). Wall times are deliberately
/// not emitted so that repeated runs are byte-identical; evaluation counts
/// carry the efficiency story.
pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(
        "beta_deg,cohesion_kpa,phi_deg,height_m,gamma_kn_m3,f_hi,evals_hi,refine_evals_hi,f_fi,evals_fi,f_fs,evals_fs\n",
    );
    for r in records {
        let cell = |run: &Option<AlgoRun>| -> (String, String) {
            match run.as_ref().and_then(AlgoRun::ok) {
                Some(res) => (format!("{}", res.factor), format!("{}", res.evaluations)),
                None => (String::new(), String::new()),
            }
        };
        let (f_hi, e_hi) = cell(&r.hi);
        let refine_hi = r
            .hi
            .as_ref()
            .and_then(AlgoRun::ok)
            .map(|res| format!("{}", res.refine_evaluations))
            .unwrap_or_default();
        let (f_fi, e_fi) = cell(&r.fi);
        let (f_fs, e_fs) = cell(&r.fs);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.beta_deg,
            r.cohesion,
            r.phi_deg,
            r.height,
            r.unit_weight,
            f_hi,
            e_hi,
            refine_hi,
            f_fi,
            e_fi,
            f_fs,
            e_fs
        ));
    }
    out
}

/// Runtime reduction against a reference, in percent. Negative when the
/// candidate is slower than the reference.
pub fn efficiency_gain(t_ref: f64, t: f64) -> Result<f64, SweepError> {
    if t_ref <= 0.0 {
        return Err(SweepError::NonPositiveReferenceTime(t_ref));
    }
    Ok((t_ref - t) / t_ref * 100.0)
}

/// Distribution summary of a set of factor ratios, in percent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioStats {
    pub ratios_percent: Vec<f64>,
    pub mean: f64,
    pub median: f64,
    /// Lower edge of the fullest 1-percentage-point histogram bin.
    pub modal_bin: i64,
    pub histogram: BTreeMap<i64, usize>,
}

impl RatioStats {
    fn from_ratios(ratios_percent: Vec<f64>) -> Self {
        let n = ratios_percent.len();
        let mean = ratios_percent.iter().sum::<f64>() / n as f64;
        let mut sorted = ratios_percent.clone();
        sorted.sort_by(f64::total_cmp);
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        };
        let mut histogram: BTreeMap<i64, usize> = BTreeMap::new();
        for &r in &ratios_percent {
            *histogram.entry(r.floor() as i64).or_insert(0) += 1;
        }
        let modal_bin = histogram
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(bin, _)| *bin)
            .unwrap_or(0);
        Self { ratios_percent, mean, median, modal_bin, histogram }
    }
}

/// Accuracy of the improved-parametrisation algorithms relative to the
/// conventional grid, as ratio distributions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyStats {
    pub fi_over_fs: RatioStats,
    pub hi_over_fs: RatioStats,
}

pub fn accuracy_stats(records: &[SweepRecord]) -> Result<AccuracyStats, SweepError> {
    let mut fi_ratios = Vec::with_capacity(records.len());
    let mut hi_ratios = Vec::with_capacity(records.len());
    for (index, r) in records.iter().enumerate() {
        let factor = |algorithm: Algorithm| {
            r.factor(algorithm).ok_or_else(|| SweepError::MissingAlgorithm {
                index,
                algorithm: algorithm.as_str().to_string(),
            })
        };
        let (hi, fi, fs) = (factor(Algorithm::Hi)?, factor(Algorithm::Fi)?, factor(Algorithm::Fs)?);
        fi_ratios.push(fi / fs * 100.0);
        hi_ratios.push(hi / fs * 100.0);
    }
    Ok(AccuracyStats {
        fi_over_fs: RatioStats::from_ratios(fi_ratios),
        hi_over_fs: RatioStats::from_ratios(hi_ratios),
    })
}

/// Per-inclination efficiency summary over a sweep: cumulative wall-time
/// gains (hardware-dependent) and mean evaluation counts (deterministic).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaEfficiency {
    pub beta_deg: f64,
    pub hi_time_gain_percent: f64,
    pub fi_time_gain_percent: f64,
    pub hi_mean_evaluations: f64,
    pub fi_mean_evaluations: f64,
    pub fs_mean_evaluations: f64,
}

pub fn efficiency_by_beta(records: &[SweepRecord]) -> Result<Vec<BetaEfficiency>, SweepError> {
    let mut betas: Vec<f64> = Vec::new();
    for r in records {
        if !betas.contains(&r.beta_deg) {
            betas.push(r.beta_deg);
        }
    }
    let mut out = Vec::with_capacity(betas.len());
    for beta in betas {
        let group: Vec<&SweepRecord> = records.iter().filter(|r| r.beta_deg == beta).collect();
        let total = |algorithm: Algorithm, f: fn(&AlgoResult) -> f64| -> Result<f64, SweepError> {
            let mut sum = 0.0;
            for (index, r) in group.iter().enumerate() {
                let run = r.run(algorithm).and_then(AlgoRun::ok).ok_or_else(|| {
                    SweepError::MissingAlgorithm { index, algorithm: algorithm.as_str().to_string() }
                })?;
                sum += f(run);
            }
            Ok(sum)
        };
        let t_hi = total(Algorithm::Hi, |r| r.wall_time_s)?;
        let t_fi = total(Algorithm::Fi, |r| r.wall_time_s)?;
        let t_fs = total(Algorithm::Fs, |r| r.wall_time_s)?;
        let n = group.len() as f64;
        out.push(BetaEfficiency {
            beta_deg: beta,
            hi_time_gain_percent: efficiency_gain(t_fs, t_hi)?,
            fi_time_gain_percent: efficiency_gain(t_fs, t_fi)?,
            hi_mean_evaluations: total(Algorithm::Hi, |r| r.evaluations as f64)? / n,
            fi_mean_evaluations: total(Algorithm::Fi, |r| r.evaluations as f64)? / n,
            fs_mean_evaluations: total(Algorithm::Fs, |r| r.evaluations as f64)? / n,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Built-in benchmark cases and published reference results
// ---------------------------------------------------------------------------

/// Interface elevations for the two layered benchmark cases. The published
/// studies do not fix them, so they are inputs; a case without its interface
/// is skipped.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LayerInterfaces {
    pub case3_interface: Option<f64>,
    pub case4_interface: Option<f64>,
}

/// A published result the benchmark report lines up against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceResult {
    pub source: &'static str,
    pub n_slices: u32,
    pub evaluations: u32,
    pub factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerDescription {
    pub top_elevation: f64,
    pub cohesion_kpa: f64,
    pub phi_deg: f64,
    pub gamma_kn_m3: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryDescription {
    pub height_m: f64,
    pub width_m: f64,
    pub beta_deg: f64,
    pub layers: Vec<LayerDescription>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkRun {
    pub n_slices: usize,
    pub factor_of_safety: f64,
    pub evaluations: u64,
    pub grid_evaluations: u64,
    pub refine_evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkCaseReport {
    pub case: u8,
    pub description: String,
    pub geometry: GeometryDescription,
    pub runs: Vec<BenchmarkRun>,
    pub published: Vec<ReferenceResult>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkReport {
    pub algorithm: Algorithm,
    pub cases: Vec<BenchmarkCaseReport>,
}

struct BenchmarkCase {
    id: u8,
    description: &'static str,
    slope: SlopeCase,
    slice_counts: Vec<usize>,
    published: Vec<ReferenceResult>,
}

fn homogeneous_case(height: f64, width: f64, c: f64, phi_deg: f64, gamma: f64) -> SlopeCase {
    let material = Material::new(c, phi_deg.to_radians(), gamma).expect("benchmark material");
    SlopeCase::from_height_width(height, width, SoilProfile::homogeneous(height, material))
        .expect("benchmark geometry")
}

fn layered_case(interface: f64) -> SlopeCase {
    let upper = Material::new(14.71, 20f64.to_radians(), 18.63).expect("benchmark material");
    let lower = Material::new(9.8, 10f64.to_radians(), 17.64).expect("benchmark material");
    let profile = SoilProfile::new(vec![(5.0, upper), (interface, lower)]).expect("benchmark profile");
    SlopeCase::from_height_width(5.0, 10.0, profile).expect("benchmark geometry")
}

fn builtin_cases(interfaces: &LayerInterfaces) -> Vec<BenchmarkCase> {
    let mut cases = vec![
        BenchmarkCase {
            id: 1,
            description: "homogeneous, H = 5 m, B = 10 m, c = 9.8 kPa, phi = 10 deg, gamma = 17.64 kN/m3",
            slope: homogeneous_case(5.0, 10.0, 9.8, 10.0, 17.64),
            slice_counts: vec![25, 50],
            published: vec![
                ReferenceResult { source: "pso_kalatehjari_2012", n_slices: 24, evaluations: 3500, factor: 1.3128 },
                ReferenceResult { source: "pso_himanshu_burman_2019", n_slices: 27, evaluations: 10000, factor: 1.3136 },
                ReferenceResult { source: "hybrid_grid_simplex_published", n_slices: 25, evaluations: 294, factor: 1.3429 },
                ReferenceResult { source: "hybrid_grid_simplex_published", n_slices: 50, evaluations: 255, factor: 1.3426 },
            ],
        },
        BenchmarkCase {
            id: 2,
            description: "homogeneous, H = 8.5 m, B = 17 m, c = 14.71 kPa, phi = 20 deg, gamma = 18.63 kN/m3",
            slope: homogeneous_case(8.5, 17.0, 14.71, 20.0, 18.63),
            slice_counts: vec![25, 50],
            published: vec![
                ReferenceResult { source: "ga_zolfaghari_2005", n_slices: 150, evaluations: 3000, factor: 1.74 },
                ReferenceResult { source: "pso_kalatehjari_2012", n_slices: 40, evaluations: 3500, factor: 1.7197 },
                ReferenceResult { source: "pso_himanshu_burman_2019", n_slices: 42, evaluations: 10000, factor: 1.7195 },
                ReferenceResult { source: "hybrid_grid_simplex_published", n_slices: 25, evaluations: 286, factor: 1.7336 },
                ReferenceResult { source: "hybrid_grid_simplex_published", n_slices: 50, evaluations: 258, factor: 1.7363 },
            ],
        },
    ];
    if let Some(interface) = interfaces.case3_interface {
        cases.push(BenchmarkCase {
            id: 3,
            description: "two layers, H = 5 m, B = 10 m; reference factors depend on the interface depth",
            slope: layered_case(interface),
            slice_counts: vec![25],
            published: vec![
                ReferenceResult { source: "pso_himanshu_burman_2019", n_slices: 42, evaluations: 10000, factor: 1.3395 },
                ReferenceResult { source: "hybrid_grid_simplex_published", n_slices: 25, evaluations: 322, factor: 1.3645 },
            ],
        });
    }
    if let Some(interface) = interfaces.case4_interface {
        cases.push(BenchmarkCase {
            id: 4,
            description: "two layers, H = 5 m, B = 10 m; reference factors depend on the interface depth",
            slope: layered_case(interface),
            slice_counts: vec![25],
            published: vec![
                ReferenceResult { source: "pso_himanshu_burman_2019", n_slices: 42, evaluations: 10000, factor: 1.3183 },
                ReferenceResult { source: "hybrid_grid_simplex_published", n_slices: 25, evaluations: 272, factor: 1.3438 },
            ],
        });
    }
    cases
}

fn describe(slope: &SlopeCase) -> GeometryDescription {
    GeometryDescription {
        height_m: slope.height(),
        width_m: slope.width(),
        beta_deg: slope.beta().to_degrees(),
        layers: slope
            .profile()
            .layers()
            .iter()
            .map(|(top, m)| LayerDescription {
                top_elevation: *top,
                cohesion_kpa: m.cohesion,
                phi_deg: m.friction_angle.to_degrees(),
                gamma_kn_m3: m.unit_weight,
            })
            .collect(),
    }
}

/// Run the hybrid algorithm over the built-in benchmark cases (at 25 and 50
/// slices where the published studies did) and line the outcomes up with the
/// published factors and evaluation counts.
pub fn run_reference_benchmarks(interfaces: &LayerInterfaces, config: &SearchConfig) -> BenchmarkReport {
    let mut cases = Vec::new();
    for case in builtin_cases(interfaces) {
        let mut runs = Vec::new();
        let mut error = None;
        for &n_slices in &case.slice_counts {
            let mut cfg = *config;
            cfg.n_slices = n_slices;
            match search(Algorithm::Hi, &case.slope, &cfg) {
                Ok(outcome) => runs.push(BenchmarkRun {
                    n_slices,
                    factor_of_safety: outcome.factor(),
                    evaluations: outcome.evaluations,
                    grid_evaluations: outcome.grid_evaluations,
                    refine_evaluations: outcome.refine_evaluations,
                }),
                Err(e) => error = Some(e.to_string()),
            }
        }
        cases.push(BenchmarkCaseReport {
            case: case.id,
            description: case.description.to_string(),
            geometry: describe(&case.slope),
            runs,
            published: case.published,
            error,
        });
    }
    BenchmarkReport { algorithm: Algorithm::Hi, cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn efficiency_gain_arithmetic() {
        assert_eq!(efficiency_gain(100.0, 8.0).unwrap(), 92.0);
        assert_eq!(efficiency_gain(3.5, 3.5).unwrap(), 0.0);
        assert!(efficiency_gain(0.0, 1.0).is_err());
        // may be negative when the candidate is slower
        assert_eq!(efficiency_gain(10.0, 14.0).unwrap(), -40.0);
    }

    fn record_with_factors(hi: f64, fi: f64, fs: f64) -> SweepRecord {
        let run = |factor: f64| {
            Some(AlgoRun::Ok(AlgoResult {
                factor,
                evaluations: 1,
                grid_evaluations: 1,
                refine_evaluations: 0,
                wall_time_s: 0.001,
            }))
        };
        SweepRecord {
            beta_deg: 30.0,
            cohesion: 5.0,
            phi_deg: 20.0,
            height: 5.0,
            unit_weight: 18.0,
            hi: run(hi),
            fi: run(fi),
            fs: run(fs),
        }
    }

    #[test]
    fn accuracy_stats_all_equal() {
        let records = vec![record_with_factors(1.2, 1.2, 1.2); 4];
        let stats = accuracy_stats(&records).unwrap();
        assert_eq!(stats.hi_over_fs.median, 100.0);
        assert_eq!(stats.fi_over_fs.median, 100.0);
        assert_eq!(stats.hi_over_fs.modal_bin, 100);
    }

    #[test]
    fn accuracy_stats_even_median_averages() {
        let records = vec![record_with_factors(0.95, 1.0, 1.0), record_with_factors(0.97, 1.0, 1.0)];
        let stats = accuracy_stats(&records).unwrap();
        assert!((stats.hi_over_fs.median - 96.0).abs() < 1e-12);
    }

    #[test]
    fn accuracy_stats_requires_all_algorithms() {
        let mut record = record_with_factors(1.0, 1.0, 1.0);
        record.fs = None;
        assert!(matches!(
            accuracy_stats(&[record]),
            Err(SweepError::MissingAlgorithm { .. })
        ));
    }

    #[test]
    fn single_cell_sweep_produces_one_record() {
        let table = SweepTable {
            height: 5.0,
            unit_weight: 18.0,
            betas_deg: vec![30.0],
            cohesions: vec![10.0],
            phis_deg: vec![30.0],
        };
        let records =
            run_sweep(&table, &[Algorithm::Hi], &SearchConfig::default(), 1).unwrap();
        assert_eq!(records.len(), 1);
        assert!(records[0].hi.is_some());
        assert!(records[0].fi.is_none());
        let f = records[0].factor(Algorithm::Hi).unwrap();
        assert!(f > 0.5 && f < 10.0, "factor {f}");
    }

    #[test]
    fn sweep_records_survive_individual_failures() {
        // the steep low-cohesion corner of the campaign: the record must
        // exist whether or not each algorithm managed to produce a factor
        let table = SweepTable {
            height: 5.0,
            unit_weight: 18.0,
            betas_deg: vec![90.0],
            cohesions: vec![0.5],
            phis_deg: vec![20.0],
        };
        let records = run_sweep(
            &table,
            &[Algorithm::Hi, Algorithm::Fi, Algorithm::Fs],
            &SearchConfig::default(),
            1,
        )
        .unwrap();
        assert_eq!(records.len(), 1);
        assert!(records[0].hi.is_some());
        assert!(records[0].fi.is_some());
        assert!(records[0].fs.is_some());
    }

    #[test]
    fn empty_table_is_rejected() {
        let table = SweepTable {
            height: 5.0,
            unit_weight: 18.0,
            betas_deg: vec![],
            cohesions: vec![1.0],
            phis_deg: vec![20.0],
        };
        assert!(matches!(
            run_sweep(&table, &[Algorithm::Hi], &SearchConfig::default(), 1),
            Err(SweepError::EmptyTable)
        ));
    }

    #[test]
    fn csv_has_fixed_header_and_reruns_identically() {
        let table = SweepTable {
            height: 5.0,
            unit_weight: 18.0,
            betas_deg: vec![40.0],
            cohesions: vec![10.0],
            phis_deg: vec![25.0],
        };
        let algorithms = [Algorithm::Hi, Algorithm::Fi, Algorithm::Fs];
        let a = sweep_csv(&run_sweep(&table, &algorithms, &SearchConfig::default(), 1).unwrap());
        let b = sweep_csv(&run_sweep(&table, &algorithms, &SearchConfig::default(), 1).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(
            "beta_deg,cohesion_kpa,phi_deg,height_m,gamma_kn_m3,f_hi,evals_hi,refine_evals_hi,f_fi,evals_fi,f_fs,evals_fs\n"
        ));
        assert_eq!(a.lines().count(), 2);
    }

    #[test]
    fn efficiency_summary_groups_by_inclination() {
        let mut r1 = record_with_factors(1.0, 1.1, 1.2);
        let mut r2 = record_with_factors(1.0, 1.1, 1.2);
        r2.beta_deg = 50.0;
        let patch = |r: &mut SweepRecord, t_hi: f64, t_fs: f64| {
            if let Some(AlgoRun::Ok(res)) = r.hi.as_mut() {
                res.wall_time_s = t_hi;
            }
            if let Some(AlgoRun::Ok(res)) = r.fs.as_mut() {
                res.wall_time_s = t_fs;
            }
        };
        patch(&mut r1, 0.2, 1.0);
        patch(&mut r2, 0.1, 1.0);
        let summary = efficiency_by_beta(&[r1, r2]).unwrap();
        assert_eq!(summary.len(), 2);
        assert!((summary[0].hi_time_gain_percent - 80.0).abs() < 1e-9);
        assert!((summary[1].hi_time_gain_percent - 90.0).abs() < 1e-9);
        assert_eq!(summary[0].fs_mean_evaluations, 1.0);
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let table = SweepTable {
            height: 5.0,
            unit_weight: 18.0,
            betas_deg: vec![30.0, 60.0],
            cohesions: vec![5.0, 10.0],
            phis_deg: vec![25.0],
        };
        let serial = run_sweep(&table, &[Algorithm::Hi], &SearchConfig::default(), 1).unwrap();
        let parallel = run_sweep(&table, &[Algorithm::Hi], &SearchConfig::default(), 3).unwrap();
        assert_eq!(serial.len(), parallel.len());
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!(a.beta_deg, b.beta_deg);
            assert_eq!(a.factor(Algorithm::Hi), b.factor(Algorithm::Hi));
        }
    }

    #[test]
    fn benchmark_report_carries_published_references() {
        let report =
            run_reference_benchmarks(&LayerInterfaces::default(), &SearchConfig::default());
        assert_eq!(report.cases.len(), 2);
        assert_eq!(report.cases[0].case, 1);
        assert!(report.cases[0].published.iter().any(|r| r.factor == 1.3429));
        assert!(report.cases[1].published.iter().any(|r| r.factor == 1.74));
        assert_eq!(report.cases[0].runs.len(), 2);
        // layered cases appear once their interfaces are configured
        let layered = run_reference_benchmarks(
            &LayerInterfaces { case3_interface: Some(2.5), case4_interface: None },
            &SearchConfig::default(),
        );
        assert_eq!(layered.cases.len(), 3);
        assert_eq!(layered.cases[2].case, 3);
    }
}
