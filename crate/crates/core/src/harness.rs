//! Check registry, run configuration and report rendering.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backend::{Exact, Numeric, Verdict};
use crate::coeff::{Aux, EvalPoint};
use crate::dynrmat;
use crate::error::{Error, Result};
use crate::rmat;
use crate::uq::{self, Rep};

/// Stored canonical text of `det_q` over the free algebra at `n = 2`.
pub const QDET_FREE_N2_GOLDEN: &str = include_str!("../golden/qdet_free_n2.txt");

/// Stored canonical text of `Ř` at `n = 2`.
pub const RHAT_N2_GOLDEN: &str = include_str!("../golden/rhat_n2.txt");

/// Report of the default configuration.
pub const REPORT_DEFAULT_GOLDEN: &str = include_str!("../golden/report_default.json");

/// Prefix of failures in checks built on the extended `M_±` tables.
pub const PATTERN_EXTENSION: &str = "pattern-extension failure: ";

/// Every identity tag a check may carry.
pub const CATALOGUE: &[&str] = &[
    "QYBE",
    "R",
    "exM",
    "exMpm",
    "Hopf-FRT",
    "factorM",
    "CRq",
    "Sq",
    "Sq-alt",
    "coalg",
    "RM",
    "MpmD1",
    "dMpm",
    "DeltaMpm",
    "MpmFE",
    "dkk",
    "dk",
    "xiyi",
    "M+i2",
    "MpmMpmq",
    "MpmNpmD",
    "Hh",
    "hH",
    "cartan-det",
    "Uqvac",
    "MD2",
    "MD3",
    "MD3inv",
    "Mpa=aM",
    "aMp",
    "RpHIOPT",
    "RpMpn2",
    "diagM-q2s",
    "qpan",
    "detM",
    "q-eps",
    "detMpmvar1",
    "MMMpm",
    "RMn2",
    "DqMn2",
    "Mab2",
    "detqMn=2",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Exact,
    Numeric,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Exact => "exact",
            BackendKind::Numeric => "numeric",
        })
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(BackendKind::Exact),
            "numeric" => Ok(BackendKind::Numeric),
            _ => Err(Error::InvalidConfig(format!("unknown backend `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckConfig {
    pub n_values: BTreeSet<usize>,
    pub checks: BTreeSet<String>,
    pub backend: BackendKind,
    pub rep_degree: usize,
    pub numeric_h: u32,
    pub numeric_seed: u64,
    pub timings: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            n_values: [2, 3].into_iter().collect(),
            checks: registry().iter().map(|c| c.name.to_string()).collect(),
            backend: BackendKind::Exact,
            rep_degree: 3,
            numeric_h: 5,
            numeric_seed: 0,
            timings: false,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        let unknown: Vec<String> = self
            .checks
            .iter()
            .filter(|c| find_check(c).is_none())
            .cloned()
            .collect();
        if !unknown.is_empty() {
            return Err(Error::UnknownChecks(unknown));
        }
        if self.n_values.is_empty() || !self.n_values.iter().all(|n| (2..=4).contains(n)) {
            return Err(Error::InvalidConfig(format!(
                "n values must lie in {{2, 3, 4}}, got {:?}",
                self.n_values
            )));
        }
        if !(1..=4).contains(&self.rep_degree) {
            return Err(Error::InvalidConfig(format!(
                "rep degree must lie in 1..=4, got {}",
                self.rep_degree
            )));
        }
        let max_n = *self.n_values.iter().max().expect("nonempty");
        if (self.numeric_h as usize) < max_n + 1 {
            return Err(Error::InvalidConfig(format!(
                "h = {} must be at least {}",
                self.numeric_h,
                max_n + 1
            )));
        }
        Ok(())
    }

    /// The numeric specialization: `w = 2`, `u = 1`, and seeded unimodular
    /// values for the `t_i`.
    pub fn eval_point(&self) -> EvalPoint {
        let mut rng = ChaCha8Rng::seed_from_u64(self.numeric_seed);
        let mut p = dynrmat::default_point(self.numeric_h);
        for i in 1..=3 {
            let theta: f64 = rng.random_range(0.1..1.4);
            p = p.with_aux(Aux::t(i), Complex64::from_polar(1.0, theta));
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check: String,
    pub n: usize,
    pub backend: BackendKind,
    pub representation: String,
    pub status: Status,
    pub equation: String,
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

enum AnyBackend {
    Exact(Exact),
    Numeric(Numeric),
}

/// Everything a check sees for one `(check, n)` task.
pub struct Ctx<'a> {
    pub n: usize,
    backend: &'a AnyBackend,
    pub reps: &'a [Rep],
}

macro_rules! dispatch {
    ($ctx:expr, $b:ident => $body:expr) => {
        match $ctx.backend {
            AnyBackend::Exact($b) => $body,
            AnyBackend::Numeric($b) => $body,
        }
    };
}

type RunFn = fn(&Ctx) -> Result<Vec<Verdict>>;

pub struct CheckSpec {
    pub name: &'static str,
    /// Identity tags covered; the first is reported.
    pub tags: &'static [&'static str],
    pub ranks: RangeInclusive<usize>,
    /// Built on the `M_±` tables, which extend a pattern beyond `n = 3`.
    pub uses_tables: bool,
    run: RunFn,
}

impl CheckSpec {
    pub fn equation(&self) -> &'static str {
        self.tags[0]
    }
}

fn one(v: Result<Verdict>) -> Result<Vec<Verdict>> {
    v.map(|v| vec![v])
}

fn cartan_det(c: &Ctx) -> Result<Vec<Verdict>> {
    let cd = uq::cartan(c.n)?;
    let det = cd.det();
    let ok = det == num_rational::Rational64::from_integer(c.n as i64)
        && uq::det_by_recursion(c.n) == c.n as i64;
    Ok(vec![Verdict::from_bool("cartan", ok, || {
        format!("det c = {det}")
    })])
}

fn cartan_inverse(c: &Ctx) -> Result<Vec<Verdict>> {
    let m = uq::cartan_matrix(c.n);
    let rat: Vec<Vec<_>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x.into()).collect())
        .collect();
    let direct = uq::invert(&rat);
    let closed = uq::closed_form_inverse(c.n);
    Ok(vec![Verdict::from_bool(
        "cartan",
        direct.as_ref() == Some(&closed),
        || format!("closed form {closed:?} vs direct {direct:?}"),
    )])
}

macro_rules! spec {
    ($name:literal, [$($tag:literal),+], $ranks:expr, $tables:literal, $run:expr) => {
        CheckSpec { name: $name, tags: &[$($tag),+], ranks: $ranks, uses_tables: $tables, run: $run }
    };
}

/// The registry in report order.
pub fn registry() -> &'static [CheckSpec] {
    static REGISTRY: std::sync::OnceLock<Vec<CheckSpec>> = std::sync::OnceLock::new();
    REGISTRY.get_or_init(|| {
        vec![
            spec!(
                "qybe",
                ["QYBE", "R"],
                2..=4,
                false,
                |c| dispatch!(c, b => one(rmat::check_qybe(c.n, b)))
            ),
            spec!(
                "braid",
                ["QYBE"],
                2..=4,
                false,
                |c| dispatch!(c, b => one(rmat::check_braid(c.n, b)))
            ),
            spec!(
                "far_commute",
                ["QYBE"],
                2..=4,
                false,
                |c| dispatch!(c, b => one(rmat::check_far_commute(c.n, b)))
            ),
            spec!(
                "eps_contract",
                ["q-eps"],
                2..=4,
                false,
                |c| dispatch!(c, b => Ok(vec![rmat::check_eps(c.n, b)]))
            ),
            spec!(
                "serre",
                ["Sq", "Sq-alt", "CRq", "dk"],
                2..=4,
                false,
                |c| dispatch!(c, b => uq::check_serre(c.n, b, c.reps))
            ),
            spec!(
                "hopf_axioms",
                ["coalg", "dk"],
                2..=4,
                false,
                |c| dispatch!(c, b => uq::check_hopf_axioms(c.n, b, c.reps))
            ),
            spec!(
                "matrix_coproduct",
                ["Hopf-FRT", "DeltaMpm"],
                2..=4,
                true,
                |c| dispatch!(c, b => uq::check_matrix_coproduct(c.n, b, c.reps))
            ),
            spec!(
                "counit_vacuum",
                ["Uqvac"],
                2..=4,
                true,
                |c| dispatch!(c, b => uq::check_counit_vacuum(c.n, b))
            ),
            spec!(
                "exchange_mpm",
                ["exMpm", "MpmNpmD", "MpmFE", "M+i2", "xiyi", "MD2", "MD3", "dkk"],
                2..=4,
                true,
                |c| dispatch!(c, b => rmat::check_exchange_mpm(c.n, b, c.reps))
            ),
            spec!(
                "reflection",
                ["exM", "factorM", "Mab2"],
                2..=4,
                true,
                |c| dispatch!(c, b => rmat::check_reflection(c.n, b, c.reps))
            ),
            spec!(
                "rm_relations",
                ["RM"],
                2..=4,
                true,
                |c| dispatch!(c, b => uq::check_rm_relations(c.n, b, c.reps))
            ),
            spec!(
                "dmpm_relations",
                ["dMpm"],
                2..=4,
                true,
                |c| dispatch!(c, b => uq::check_dmpm_relations(c.n, b, c.reps))
            ),
            spec!(
                "mpm_qcomm",
                ["MpmMpmq"],
                3..=4,
                true,
                |c| dispatch!(c, b => uq::check_mpm_qcomm(c.n, b, c.reps))
            ),
            spec!(
                "unipotent_inverse",
                ["MD3inv"],
                2..=4,
                true,
                |c| dispatch!(c, b => uq::check_unipotent_inverse(c.n, b, c.reps))
            ),
            spec!(
                "detq_mpm",
                ["detMpmvar1", "detM", "MpmD1"],
                2..=4,
                true,
                |c| dispatch!(c, b => rmat::check_qdet_mpm(c.n, b, c.reps))
            ),
            spec!(
                "detq_free_golden",
                ["DqMn2", "RMn2"],
                2..=2,
                false,
                |_| one(rmat::check_qdet_free_golden(QDET_FREE_N2_GOLDEN))
            ),
            spec!(
                "detq_m",
                ["MMMpm", "detqMn=2"],
                2..=3,
                true,
                |c| dispatch!(c, b => rmat::check_qdet_m(c.n, b, c.reps))
            ),
            spec!("cartan_det", ["cartan-det", "Hh"], 2..=4, false, cartan_det),
            spec!("cartan_inverse", ["hH"], 2..=4, false, cartan_inverse),
            spec!(
                "dyn_identity",
                ["RpHIOPT", "Mpa=aM", "aMp"],
                2..=2,
                false,
                |c| dispatch!(c, b => one(dynrmat::check_dynamical_identity(b)))
            ),
            spec!(
                "dyn_rp_inverse",
                ["RpMpn2"],
                2..=2,
                false,
                |c| dispatch!(c, b => one(dynrmat::check_rp_inverse(b)))
            ),
            spec!(
                "mp_spec",
                ["RpMpn2", "diagM-q2s"],
                2..=4,
                false,
                |c| dispatch!(c, b => {
                    let mut v = dynrmat::check_mp_spec(c.n, b)?;
                    if c.n == 2 {
                        v = Verdict::merge(dynrmat::DYN, vec![v, check_q2sigma_n2()]);
                    }
                    Ok(vec![v])
                })
            ),
            spec!("vacuum_weights", ["qpan"], 2..=4, false, |c| Ok(vec![
                dynrmat::check_vacuum_weights(c.n)
            ])),
        ]
    })
}

fn check_q2sigma_n2() -> Verdict {
    use crate::coeff::QExpr;
    let want = [1, -1, -1, 1].map(|e| QExpr::q_pow(e, 1));
    let s = dynrmat::build_q2sigma(2);
    let ok = (0..4).all(|i| s.mat().get(i, i) == want[i]) && s.mat().nnz() == 4;
    Verdict::from_bool(dynrmat::DYN, ok, || format!("q^2σ = {s}"))
}

pub fn find_check(name: &str) -> Option<&'static CheckSpec> {
    registry().iter().find(|c| c.name == name)
}

/// Tags in the catalogue that no registered check covers.
pub fn uncovered_tags() -> Vec<&'static str> {
    let covered: BTreeSet<&str> = registry()
        .iter()
        .flat_map(|c| c.tags.iter().copied())
        .collect();
    CATALOGUE
        .iter()
        .copied()
        .filter(|t| !covered.contains(t))
        .collect()
}

fn run_task(
    spec: &CheckSpec,
    n: usize,
    cfg: &CheckConfig,
    backend: &AnyBackend,
    reps: &[Rep],
) -> Vec<ReportEntry> {
    let entry = |rep: &str, status, witness, residual| ReportEntry {
        check: spec.name.to_string(),
        n,
        backend: cfg.backend,
        representation: rep.to_string(),
        status,
        equation: spec.equation().to_string(),
        witness,
        residual,
        wall_time_ms: None,
    };
    if !spec.ranks.contains(&n) {
        return vec![entry(
            "-",
            Status::Skipped,
            Some(format!("not defined at n = {n}")),
            None,
        )];
    }
    let start = Instant::now();
    let ctx = Ctx { n, backend, reps };
    let outcome = (spec.run)(&ctx);
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let tag = |w: String| {
        if spec.uses_tables && n > 3 {
            format!("{PATTERN_EXTENSION}{w}")
        } else {
            w
        }
    };
    let mut out: Vec<ReportEntry> = match outcome {
        Ok(vs) if vs.is_empty() => vec![entry(
            "-",
            Status::Skipped,
            Some("no relations at this rank".into()),
            None,
        )],
        Ok(vs) => vs
            .into_iter()
            .map(|v| {
                let status = if v.pass { Status::Pass } else { Status::Fail };
                let witness = if v.pass {
                    None
                } else {
                    Some(tag(v.witness.unwrap_or_else(|| "failed".into())))
                };
                entry(&v.rep, status, witness, v.residual)
            })
            .collect(),
        Err(e) => vec![entry("-", Status::Fail, Some(tag(e.to_string())), None)],
    };
    if cfg.timings {
        for e in &mut out {
            e.wall_time_ms = Some(ms);
        }
    }
    out
}

/// Runs every configured `(check, n)` pair on the current rayon pool.
/// Output is ordered by registry position, then `n`, then the order in
/// which the check reports representations.
pub fn run_checks(cfg: &CheckConfig) -> Result<Vec<ReportEntry>> {
    cfg.validate()?;
    let backend = match cfg.backend {
        BackendKind::Exact => AnyBackend::Exact(Exact),
        BackendKind::Numeric => AnyBackend::Numeric(Numeric::new(cfg.eval_point())),
    };
    let families: Vec<(usize, Vec<Rep>)> = cfg
        .n_values
        .iter()
        .map(|&n| uq::rep_family(n, cfg.rep_degree).map(|f| (n, f)))
        .collect::<Result<_>>()?;
    let tasks: Vec<(&CheckSpec, usize, &[Rep])> = registry()
        .iter()
        .filter(|s| cfg.checks.contains(s.name))
        .flat_map(|s| families.iter().map(move |(n, f)| (s, *n, f.as_slice())))
        .collect();
    let per_task: Vec<Vec<ReportEntry>> = tasks
        .par_iter()
        .map(|(s, n, reps)| run_task(s, *n, cfg, &backend, reps))
        .collect();
    Ok(per_task.into_iter().flatten().collect())
}

/// [`run_checks`] on a dedicated pool of `jobs` workers.
pub fn run_checks_with_jobs(cfg: &CheckConfig, jobs: usize) -> Result<Vec<ReportEntry>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    pool.install(|| run_checks(cfg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidConfig(format!("unknown format `{s}`"))),
        }
    }
}

pub fn render_report(entries: &[ReportEntry], format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(entries).expect("serializable report");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => render_text(entries).into_bytes(),
    }
}

fn render_text(entries: &[ReportEntry]) -> String {
    let header = [
        "check",
        "n",
        "backend",
        "representation",
        "status",
        "equation",
        "witness",
    ];
    let rows: Vec<[String; 7]> = entries
        .iter()
        .map(|e| {
            [
                e.check.clone(),
                e.n.to_string(),
                e.backend.to_string(),
                e.representation.clone(),
                e.status.to_string(),
                e.equation.clone(),
                e.witness.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r.iter()) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[&str]| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&" ".repeat(widths[i] - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for r in &rows {
        out.push_str(&line(&r.iter().map(String::as_str).collect::<Vec<_>>()));
    }
    out
}

pub fn any_failed(entries: &[ReportEntry]) -> bool {
    entries.iter().any(|e| e.status == Status::Fail)
}
