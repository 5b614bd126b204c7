//! Three independent routes to the graded dimensions of the curvature algebra.

use std::fmt;
use std::str::FromStr;

use crate::config::VectorConfiguration;
use crate::error::{Error, Result};
use crate::ideal;
use crate::matroid::{self, GradedCount};
use crate::squarefree::{self, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Engine {
    /// Independent subsets graded by external activity.
    Combinatorial,
    /// Ranks of the coefficient matrices `A_k`.
    Algebraic,
    /// Hilbert function of the quotient by the power ideal.
    Presentation,
}

impl Engine {
    pub const ALL: [Engine; 3] = [
        Engine::Combinatorial,
        Engine::Algebraic,
        Engine::Presentation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Combinatorial => "combinatorial",
            Engine::Algebraic => "algebraic",
            Engine::Presentation => "presentation",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown engine {s:?}")))
    }
}

/// Graded dimensions in degrees `0..=N` from the chosen engine.
pub fn graded_dims(
    cfg: &VectorConfiguration,
    engine: Engine,
    limits: Limits,
) -> Result<GradedCount> {
    match engine {
        Engine::Combinatorial => Ok(matroid::graded_counts(cfg)),
        Engine::Algebraic => squarefree::algebra_graded_dims(cfg, limits),
        Engine::Presentation => presentation_graded_dims(cfg, limits),
    }
}

/// Quotient Hilbert function through degree `N + 1`. The value in degree
/// `N + 1` must vanish; the result is truncated to `0..=N`.
pub fn presentation_graded_dims(cfg: &VectorConfiguration, limits: Limits) -> Result<GradedCount> {
    let n = cfg.len();
    let full = ideal::quotient_hilbert(cfg, n + 1, limits)?;
    if full.degree(n + 1) != 0 {
        return Err(Error::EngineDisagreement(format!(
            "quotient has dimension {} in degree {}, above the top degree",
            full.degree(n + 1),
            n + 1
        )));
    }
    Ok(full.resized(n + 1))
}

/// Runs several engines and fails if any two disagree.
pub fn run_and_compare(
    cfg: &VectorConfiguration,
    engines: &[Engine],
    limits: Limits,
) -> Result<Vec<(Engine, GradedCount)>> {
    let results = engines
        .iter()
        .map(|&e| graded_dims(cfg, e, limits).map(|g| (e, g)))
        .collect::<Result<Vec<_>>>()?;
    if let Some((first, reference)) = results.first() {
        for (engine, graded) in &results[1..] {
            if graded != reference {
                return Err(Error::EngineDisagreement(format!(
                    "{first} gives {:?}, {engine} gives {:?}",
                    reference.counts(),
                    graded.counts()
                )));
            }
        }
    }
    Ok(results)
}
