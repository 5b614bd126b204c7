//! Cross-validation suites behind `verify`.

use std::collections::HashSet;
use std::str::FromStr;

use serde_json::{json, Value};

use super::documents::{CheckEntry, ConfigDocument};
use super::forests;
use crate::config::{binomial, SubsetMask, VectorConfiguration};
use crate::engines::{self, Engine};
use crate::error::{Error, Result};
use crate::ideal;
use crate::matroid::{self, CircuitIndex, GradedCount};
use crate::random::{self, VanishingSampler};
use crate::roots::{self, Family, RootSystemData};
use crate::squarefree::{self, Limits};

/// Largest configuration whose independent subsets are listed one by one.
const SUBSET_SCAN_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorems,
    Recursions,
    Forests,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorems => "theorems",
            Suite::Recursions => "recursions",
            Suite::Forests => "forests",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorems" => Ok(Suite::Theorems),
            "recursions" => Ok(Suite::Recursions),
            "forests" => Ok(Suite::Forests),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

pub struct VerifyInput<'a> {
    pub cfg: &'a VectorConfiguration,
    pub root_system: Option<&'a RootSystemData>,
    pub limits: Limits,
    pub seed: u64,
    pub trials: usize,
}

pub struct Outcome {
    pub checks: Vec<CheckEntry>,
    pub counterexample: Option<Value>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Default)]
struct Report {
    checks: Vec<CheckEntry>,
    counterexample: Option<Value>,
}

impl Report {
    fn record(&mut self, name: &str, passed: bool, detail: String) {
        self.record_with(name, passed, detail, None);
    }

    fn record_with(&mut self, name: &str, passed: bool, detail: String, witness: Option<Value>) {
        if !passed && self.counterexample.is_none() {
            self.counterexample =
                Some(json!({ "check": name, "detail": detail, "witness": witness }));
        }
        self.checks.push(CheckEntry {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    fn finish(self, cfg: &VectorConfiguration) -> Outcome {
        let counterexample = self.counterexample.map(|mut c| {
            c["input"] =
                serde_json::to_value(ConfigDocument::from_config(cfg)).expect("serializable");
            c
        });
        Outcome {
            checks: self.checks,
            counterexample,
        }
    }
}

pub fn run(suite: Suite, input: &VerifyInput<'_>) -> Result<Outcome> {
    match suite {
        Suite::Theorems => theorems(input),
        Suite::Recursions => recursions(input),
        Suite::Forests => forests_suite(input),
    }
}

fn theorems(input: &VerifyInput<'_>) -> Result<Outcome> {
    let cfg = input.cfg;
    let mut report = Report::default();
    let spans = cfg.spans();
    let graded = matroid::graded_counts(cfg);

    let engines: &[Engine] = if spans {
        &Engine::ALL
    } else {
        &Engine::ALL[..2]
    };
    match engines::run_and_compare(cfg, engines, input.limits) {
        Ok(_) => report.record("engines_agree", true, format!("{:?}", graded.counts())),
        Err(Error::EngineDisagreement(msg)) => report.record("engines_agree", false, msg),
        Err(e) => return Err(e),
    }

    let dual = squarefree::dual_graded_dims(cfg, input.limits)?;
    report.record(
        "dual_dimensions",
        dual == graded,
        format!("{:?}", dual.counts()),
    );

    let independent = matroid::independent_count(cfg);
    report.record(
        "total_is_independent_count",
        independent == graded.total(),
        format!(
            "total {}, independent subsets {independent}",
            graded.total()
        ),
    );

    let robust = squarefree::robust_basis_report(cfg);
    report.record(
        "robust_basis",
        robust.passed(),
        format!(
            "{} robust subsets, span rank {}, {} independent subsets",
            robust.robust_count, robust.span_rank, robust.independent_count
        ),
    );

    if cfg.len() <= SUBSET_SCAN_LIMIT {
        let (ok, detail, witness) = nbc_check(cfg, &graded);
        report.record_with("nbc_bijection", ok, detail, witness);
    }

    if spans {
        report.record(
            "ideal_generators_vanish",
            ideal::generators_vanish(cfg)?,
            format!("{} generators", ideal::ideal_generators(cfg)?.len()),
        );
        if cfg.len() <= ideal::COORDINATE_PLANE_MAX_VECTORS {
            let r = ideal::coordinate_plane_report(cfg)?;
            report.record(
                "coordinate_planes",
                r.passed(),
                format!("{} essential index sets", r.essential.len()),
            );
        }
    }

    if let Some(rs) = input.root_system {
        if rs.rank() <= roots::WEYL_ORDER_MAX_RANK {
            let order = roots::weyl_group_order(rs)?;
            report.record(
                "weyl_group_bound",
                graded.total() >= order,
                format!("total {} against |W| = {order}", graded.total()),
            );
        }
        let orbit = roots::orbit_generators(rs)?;
        let essential = ideal::ideal_generators(cfg)?;
        report.record(
            "orbit_generators",
            orbit == essential,
            format!(
                "{} orbit lines, {} essential hyperplanes",
                orbit.len(),
                essential.len()
            ),
        );
    }
    Ok(report.finish(cfg))
}

/// The bijection must land in robust subsets, be injective, send degree to
/// size, and reach every robust subset.
fn nbc_check(cfg: &VectorConfiguration, graded: &GradedCount) -> (bool, String, Option<Value>) {
    let index = CircuitIndex::new(cfg);
    let n = cfg.len();
    let mut images = HashSet::new();
    for bits in 0u128..1 << n {
        let s = SubsetMask::from_bits(bits);
        if !matroid::is_independent(cfg, s) {
            continue;
        }
        let active = index.active_set(s);
        let image = s.union(active).complement(n);
        let degree = n - s.len() - active.len();
        if !index.is_robust(image) || image.len() != degree || !images.insert(image) {
            return (
                false,
                format!("independent subset {s} maps to {image}"),
                Some(json!({ "subset": s.one_based(), "image": image.one_based() })),
            );
        }
    }
    let robust = matroid::robust_subsets(cfg);
    let mut by_size = vec![0u64; n + 1];
    for r in &robust {
        by_size[r.len()] += 1;
    }
    let ok = images.len() == robust.len() && by_size == graded.counts();
    (ok, format!("robust sizes {by_size:?}"), None)
}

fn recursions(input: &VerifyInput<'_>) -> Result<Outcome> {
    let cfg = input.cfg;
    if cfg.is_empty() || cfg.is_zero_vector(cfg.len() - 1) {
        return Err(Error::Precondition(
            "recursions need a nonzero last vector".into(),
        ));
    }
    let mut report = Report::default();

    let direct = matroid::graded_counts(cfg);
    let recursive = matroid::recursive_graded_counts(cfg)?;
    report.record(
        "graded_deletion_contraction",
        direct == recursive,
        format!(
            "direct {:?}, recursive {:?}",
            direct.counts(),
            recursive.counts()
        ),
    );

    if cfg.spans() {
        report.record(
            "essential_deletion_contraction",
            ideal::essential_deletion_contraction_check(cfg)?,
            format!(
                "{} essential hyperplanes",
                ideal::essential_hyperplanes(cfg)?.len()
            ),
        );
    }

    let (adapted, shifted) = ideal::adapted_generators(cfg)?;
    let in_v = VanishingSampler::new(&adapted, 4);
    let in_deletion = VanishingSampler::new(&shifted, 4);
    let mut rng = random::rng(input.seed);
    let n = cfg.ambient_dim();
    let mut failure = None;
    for trial in 0..input.trials {
        let f = match trial % 3 {
            0 => random::polynomial(&mut rng, n, 4, 6),
            1 => in_v.sample(&mut rng),
            _ => in_deletion.sample(&mut rng),
        };
        if !ideal::derivative_membership_with(&adapted, &shifted, &f)? {
            failure = Some(f);
            break;
        }
    }
    match failure {
        None => report.record(
            "derivative_lemma",
            true,
            format!("{} polynomials", input.trials),
        ),
        Some(f) => report.record_with(
            "derivative_lemma",
            false,
            format!("fails for {f}"),
            Some(json!({ "polynomial": f.to_string() })),
        ),
    }
    Ok(report.finish(cfg))
}

fn forests_suite(input: &VerifyInput<'_>) -> Result<Outcome> {
    let rs = match input.root_system {
        Some(rs) if rs.type_label.family == Family::A && rs.rank() <= 4 => rs,
        _ => {
            return Err(Error::Precondition(
                "the forests suite needs --type A with rank at most 4".into(),
            ))
        }
    };
    let vertices = rs.rank() + 1;
    let top = binomial(vertices, 2) as usize;
    let distribution = forests::inversion_distribution(vertices);
    let graded = matroid::graded_counts(input.cfg);
    let mut report = Report::default();
    let forest_total: u64 = distribution.iter().sum();
    report.record(
        "forest_count",
        forest_total == graded.total(),
        format!(
            "{forest_total} forests on {vertices} vertices, total {}",
            graded.total()
        ),
    );
    let reversed: Vec<u64> = (0..=top).map(|k| distribution[top - k]).collect();
    report.record(
        "inversion_grading",
        reversed == graded.counts(),
        format!(
            "inversions reversed {reversed:?}, graded {:?}",
            graded.counts()
        ),
    );
    Ok(report.finish(input.cfg))
}
