//! Batch job runner behind the `ss` binary: validate a configuration, run
//! the page computation and verdict, run the enabled self-checks, and emit a
//! report.
//!
//! Exit codes: 0 ok, 1 check failure, 2 usage error, 3 resource truncation.

use crate::connectivity::convergence_verdict;
use crate::graph::Family;
use crate::linalg::{Field, FieldSpec, PrimeField, Rationals};
use crate::models::{CohomologyOps, Model, ModelSpec};
use crate::report::{self, CheckOutcome, ChecksSummary};
use crate::simplex::check_identities;
use crate::specseq::{e2_page, PageOptions, PageReport};
use crate::{Error, Result};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

/// Which self-checks to run after the page computation.
#[derive(Debug, Clone, Copy)]
pub struct CheckFlags {
    pub d1sq: bool,
    pub euler: bool,
    pub vanishing: bool,
    pub identities: bool,
}

impl Default for CheckFlags {
    fn default() -> Self {
        // Identities are opt-in: they re-run every operator pair on the full
        // (unnormalized) bases.
        CheckFlags {
            d1sq: true,
            euler: true,
            vanishing: true,
            identities: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobConfig {
    pub family: Family,
    pub strands: u32,
    pub ambient: u32,
    pub q_max: u32,
    pub field: FieldSpec,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub checks: CheckFlags,
    pub max_basis: Option<usize>,
    pub threads: Option<usize>,
}

impl JobConfig {
    pub fn model_spec(&self) -> Result<ModelSpec> {
        ModelSpec::new(self.family, self.strands, self.ambient, self.field)
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: PageReport,
    pub checks: ChecksSummary,
    /// Rendered report in the requested format (also written to the output
    /// path when one is configured).
    pub rendered: String,
}

/// Run a job end to end.  Deterministic output for a fixed config.
pub fn run(cfg: &JobConfig) -> Result<RunOutcome> {
    let spec = cfg.model_spec()?;
    match cfg.threads {
        Some(t) if t > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidJob(format!("thread pool: {e}")))?
            .install(|| run_inner(cfg, spec)),
        _ => run_inner(cfg, spec),
    }
}

fn run_inner(cfg: &JobConfig, spec: ModelSpec) -> Result<RunOutcome> {
    match spec.field {
        FieldSpec::Rationals => run_with_field(cfg, spec, &Rationals),
        FieldSpec::Prime(p) => {
            let f = PrimeField::new(p)?;
            run_with_field(cfg, spec, &f)
        }
    }
}

fn run_with_field<F: Field>(cfg: &JobConfig, spec: ModelSpec, field: &F) -> Result<RunOutcome> {
    let model = Model::new(spec)?;
    let opts = PageOptions {
        check_d1sq: cfg.checks.d1sq,
        max_basis: cfg.max_basis,
    };
    let report = e2_page(&model, field, cfg.q_max, &opts);
    let verdict = convergence_verdict(cfg.family, cfg.ambient);

    let outcome = |enabled: bool, pass: bool| {
        if !enabled {
            CheckOutcome::Skipped
        } else if pass {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        }
    };
    let identities_pass = if cfg.checks.identities {
        let deg = spec.generator_degree();
        let q_cap = cfg.q_max.min(2 * deg);
        (0..=q_cap)
            .step_by(deg as usize)
            .all(|q| check_identities(&CohomologyOps::new(&model, q), 3).is_ok())
    } else {
        true
    };
    let checks = ChecksSummary {
        d1sq: outcome(cfg.checks.d1sq, report.d1sq_all_ok()),
        euler: outcome(cfg.checks.euler, report.euler_conserved()),
        vanishing: outcome(cfg.checks.vanishing, report.vanishing_all_ok()),
        identities: outcome(cfg.checks.identities, identities_pass),
    };

    let rendered = match cfg.format {
        OutputFormat::Json => report::to_json(&report, &verdict, &checks),
        OutputFormat::Csv => report::to_csv(&report),
        OutputFormat::Table => report::to_table(&report, &verdict),
    };
    if let Some(path) = &cfg.output {
        std::fs::write(path, &rendered)
            .map_err(|e| Error::InvalidJob(format!("writing {}: {e}", path.display())))?;
    }

    let exit_code = if report.any_truncated() {
        EXIT_TRUNCATION
    } else if checks.any_failed() {
        EXIT_CHECK_FAILURE
    } else {
        EXIT_OK
    };
    Ok(RunOutcome {
        exit_code,
        report,
        checks,
        rendered,
    })
}
