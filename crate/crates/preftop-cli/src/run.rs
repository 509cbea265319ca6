//! Run orchestration: a validated config fans out over (claim, size)
//! tasks, reports come back sorted by (claim id, n), and all randomness
//! flows from the single seed through per-claim ChaCha8 streams.

use anyhow::{anyhow, bail};
use preftop::econ::{check_ces_compensation, check_ces_limits};
use preftop::exogenous::{check_lemma_locally_strict, check_prop3_finite, theorem4_sweep};
use preftop::order::DEFAULT_ENUM_CAP;
use preftop::paths::{check_flatten_global, check_flatten_middle};
use preftop::quotient::{
    check_basis_intersection, check_box_image, check_homotopy, check_lemma_opensets,
    check_prop1, check_theorem1, check_theorem2, check_theorem3, CheckConfig,
};
use preftop::report::{catalog, ClaimReport, ClaimSpec};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Run configuration; a TOML file with these fields is accepted by
/// `preftop run --config`, and flags override individual fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n_range: Vec<usize>,
    /// Claim ids from the catalog.
    pub claims: Vec<String>,
    pub seed: u64,
    /// Random realizers per oracle base point and random subsets for the
    /// sampled scans.
    pub samples: usize,
    pub epsilons: Vec<f64>,
    pub random_subsets: usize,
    pub sample_pairs: usize,
    pub boxes: usize,
    /// Sample cap for the topology sweep when not sweeping fully.
    pub sweep_sample: usize,
    pub full_sweep: bool,
    pub timings: bool,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_range: vec![3],
            claims: vec!["all".to_string()],
            seed: 42,
            samples: 2,
            epsilons: vec![0.25, 0.05, 0.01],
            random_subsets: 500,
            sample_pairs: 200,
            boxes: 500,
            sweep_sample: 64,
            full_sweep: false,
            timings: false,
            jobs: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.n_range.is_empty() {
            bail!("n_range is empty");
        }
        for &n in &self.n_range {
            if n == 0 || n > DEFAULT_ENUM_CAP {
                bail!("size {n} outside supported range 1..={DEFAULT_ENUM_CAP}");
            }
        }
        if self.claims.is_empty() {
            bail!("no claims requested");
        }
        let ids: Vec<&str> = catalog().iter().map(|c| c.id).collect();
        for c in &self.claims {
            if c != "all" && !ids.contains(&c.as_str()) {
                bail!("unknown claim {c:?}; see `preftop list-claims`");
            }
        }
        for w in self.epsilons.windows(2) {
            if w[1] >= w[0] {
                bail!("epsilon schedule must be strictly decreasing");
            }
        }
        if self.epsilons.is_empty() || *self.epsilons.last().unwrap() <= 0.0 {
            bail!("epsilon schedule must be nonempty and positive");
        }
        Ok(())
    }

    fn check_config(&self) -> CheckConfig {
        let mut cfg = CheckConfig::with_seed(self.seed);
        cfg.oracle.epsilons = self.epsilons.clone();
        cfg.oracle.samples = self.samples;
        cfg.random_subsets = self.random_subsets;
        cfg.sample_pairs = self.sample_pairs;
        cfg.boxes = self.boxes;
        cfg
    }

    fn requested(&self) -> Vec<ClaimSpec> {
        let all = self.claims.iter().any(|c| c == "all");
        catalog()
            .into_iter()
            .filter(|c| all || self.claims.iter().any(|id| id == c.id))
            .collect()
    }
}

pub fn parse_sizes(text: &str) -> anyhow::Result<Vec<usize>> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let lo: usize = a.trim().parse()?;
        let hi: usize = b.trim().parse()?;
        if lo > hi {
            bail!("empty size range {text:?}");
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|tok| tok.trim().parse::<usize>().map_err(|e| anyhow!("bad size {tok:?}: {e}")))
        .collect()
}

pub fn parse_claims(text: &str) -> anyhow::Result<Vec<String>> {
    let claims: Vec<String> = text
        .split(',')
        .map(|tok| tok.trim().to_string())
        .filter(|tok| !tok.is_empty())
        .collect();
    if claims.is_empty() {
        bail!("no claims given");
    }
    Ok(claims)
}

/// The manifest written as `manifest.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: RunConfig,
    pub reports: Vec<ClaimReport>,
    /// (claim, n) pairs skipped because the size is outside the claim's
    /// supported range.
    pub skipped: Vec<(String, usize)>,
    pub total_runtime_ms: u64,
}

pub struct RunOutcome {
    pub manifest: RunManifest,
    /// `(file name, contents)` side artifacts: per-claim JSON, sweep
    /// JSON, CSV traces.
    pub artifacts: Vec<(String, String)>,
    pub summary_lines: Vec<String>,
    pub integrity_failures: Vec<String>,
}

type TaskResult = anyhow::Result<(ClaimReport, Vec<(String, String)>)>;

fn run_one(spec: &ClaimSpec, n: usize, config: &RunConfig) -> TaskResult {
    let cfg = config.check_config();
    let out = match spec.id {
        "theorem1" => (check_theorem1(n, &cfg)?, Vec::new()),
        "theorem2" => (check_theorem2(n, &cfg)?, Vec::new()),
        "theorem3" => (check_theorem3(n, &cfg)?, Vec::new()),
        "prop1" => (check_prop1(n, &cfg)?, Vec::new()),
        "prop3_finite" => (check_prop3_finite(n, &cfg)?, Vec::new()),
        "theorem4_sweep" => {
            let (rows, report) =
                theorem4_sweep(n, config.full_sweep, config.sweep_sample, &cfg)?;
            let artifact = (
                format!("theorem4_sweep_n{n}.json"),
                serde_json::to_string_pretty(&rows)? + "\n",
            );
            (report, vec![artifact])
        }
        "lemma_opensets" => (check_lemma_opensets(n, &cfg)?, Vec::new()),
        "lemma_locally_strict" => (check_lemma_locally_strict(n, &cfg)?, Vec::new()),
        "box_image" => (check_box_image(n, &cfg)?, Vec::new()),
        "basis_intersection" => (check_basis_intersection(n, &cfg)?, Vec::new()),
        "homotopy" => (check_homotopy(n, &cfg)?, Vec::new()),
        "flatten_global" => (check_flatten_global(n, cfg.seed)?, Vec::new()),
        "flatten_middle" => (check_flatten_middle(n, cfg.seed)?, Vec::new()),
        "ces_limits" => (check_ces_limits(0.5, cfg.seed)?, Vec::new()),
        "ces_compensation" => (check_ces_compensation(0.5, cfg.seed)?, Vec::new()),
        other => bail!("no runner for claim {other:?}"),
    };
    Ok(out)
}

/// Executes every requested (claim, n) task, sequentially or on a small
/// worker pool; the report order is deterministic either way.
pub fn execute(config: &RunConfig) -> anyhow::Result<RunOutcome> {
    let started = Instant::now();
    let specs = config.requested();

    let mut tasks: Vec<(ClaimSpec, usize)> = Vec::new();
    let mut skipped: Vec<(String, usize)> = Vec::new();
    for spec in &specs {
        let mut sizes: Vec<usize> = config
            .n_range
            .iter()
            .copied()
            .filter(|&n| n >= spec.n_min && n <= spec.n_max)
            .collect();
        sizes.dedup();
        // Size-independent claims run once.
        if spec.n_min == spec.n_max {
            sizes = vec![spec.n_min];
        }
        if sizes.is_empty() {
            for &n in &config.n_range {
                skipped.push((spec.id.to_string(), n));
            }
        }
        for n in sizes {
            tasks.push((spec.clone(), n));
        }
    }
    tasks.sort_by(|a, b| (a.0.id, a.1).cmp(&(b.0.id, b.1)));
    tasks.dedup_by(|a, b| a.0.id == b.0.id && a.1 == b.1);

    let mut slots: Vec<Option<(ClaimReport, Vec<(String, String)>, u64)>> =
        Vec::with_capacity(tasks.len());
    slots.resize_with(tasks.len(), || None);

    if config.jobs <= 1 {
        for (i, (spec, n)) in tasks.iter().enumerate() {
            let t0 = Instant::now();
            let (report, artifacts) = run_one(spec, *n, config)?;
            slots[i] = Some((report, artifacts, t0.elapsed().as_millis() as u64));
        }
    } else {
        let errors = std::sync::Mutex::new(Vec::<String>::new());
        let slot_refs: Vec<std::sync::Mutex<&mut Option<_>>> =
            slots.iter_mut().map(std::sync::Mutex::new).collect();
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..config.jobs.min(tasks.len()) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if i >= tasks.len() {
                        break;
                    }
                    let (spec, n) = &tasks[i];
                    let t0 = Instant::now();
                    match run_one(spec, *n, config) {
                        Ok((report, artifacts)) => {
                            **slot_refs[i].lock().unwrap() =
                                Some((report, artifacts, t0.elapsed().as_millis() as u64));
                        }
                        Err(e) => errors
                            .lock()
                            .unwrap()
                            .push(format!("{} n={}: {e}", spec.id, n)),
                    }
                });
            }
        });
        let errors = errors.into_inner().unwrap();
        if let Some(e) = errors.first() {
            bail!("claim execution failed: {e}");
        }
    }

    let mut reports = Vec::with_capacity(tasks.len());
    let mut artifacts = Vec::new();
    let mut summary_lines = Vec::new();
    let mut integrity_failures = Vec::new();
    for slot in slots {
        let (mut report, mut arts, elapsed) = slot.expect("every task ran");
        report.runtime_ms = if config.timings { elapsed } else { 0 };
        summary_lines.push(format!(
            "{} n={} family={} verdict={} integrity={}",
            report.claim,
            report.n,
            report.family,
            report.verdict,
            if report.integrity_ok() { "ok" } else { "FAILED" }
        ));
        for f in report.integrity_failures() {
            integrity_failures.push(format!("{} n={}: {f}", report.claim, report.n));
        }
        artifacts.push((
            format!("{}_n{}.json", report.claim, report.n),
            serde_json::to_string_pretty(&report)? + "\n",
        ));
        artifacts.append(&mut arts);
        reports.push(report);
    }
    skipped.sort();

    let total = if config.timings {
        started.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(RunOutcome {
        manifest: RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            reports,
            skipped,
            total_runtime_ms: total,
        },
        artifacts,
        summary_lines,
        integrity_failures,
    })
}
