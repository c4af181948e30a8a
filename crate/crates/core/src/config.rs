//! Family configuration files.
//!
//! ```toml
//! version = 1
//!
//! [family]
//! variant = "ce-degree"
//! machine = "double.tm"   # relative to the config file
//! monotone = true
//! truncation = 4
//!
//! [limits]
//! step_ceiling = 100000000
//! ```
//!
//! Unknown keys are rejected. `SCGROUPS_STEP_CEILING` in the environment
//! overrides the step ceiling.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::machines::{BudgetFn, FamilyFunctionSpec, FamilyKind, Limits, MachineSpec};
use crate::relators::{RelatorFamily, SatBounds};

pub const CONFIG_VERSION: u32 = 1;
pub const STEP_CEILING_ENV: &str = "SCGROUPS_STEP_CEILING";

/// The bundled machine computing `f(n) = 2n`.
pub const DOUBLING_MACHINE: &str = include_str!("../data/double.tm");

/// The c.e.-degree family of the bundled doubling machine.
pub fn doubling_family(truncation: Option<u64>) -> Result<RelatorFamily> {
    let kind = FamilyKind::CeBijection {
        machine: MachineSpec::parse(DOUBLING_MACHINE)?,
        monotone: true,
    };
    RelatorFamily::machine(FamilyFunctionSpec::new(kind, Limits::default()), truncation)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    CeDegree,
    TimeHierarchy,
    HalfConjugacy,
    Sat,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySection {
    pub variant: Variant,
    /// Machine file for the c.e.-degree family.
    pub machine: Option<PathBuf>,
    #[serde(default)]
    pub monotone: bool,
    /// Time bound `coef * n^power` for the diagonal families.
    pub budget: Option<BudgetFn>,
    /// Largest relator index kept by a machine family.
    pub truncation: Option<u64>,
    /// Enumeration prefix kept by the 3-SAT family.
    pub sat: Option<SatBounds>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSection {
    pub step_ceiling: Option<u64>,
    pub index_search_limit: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub version: u32,
    pub family: FamilySection,
    pub limits: Option<LimitsSection>,
    /// Directory machine paths are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl FamilyConfig {
    pub fn parse(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let mut cfg: FamilyConfig = toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_col(text, s.start))
                .unwrap_or((0, 0));
            Error::parse(line, column, e.message().to_string())
        })?;
        if cfg.version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "version {} is not supported, expected {CONFIG_VERSION}",
                cfg.version
            )));
        }
        cfg.base_dir = base_dir.into();
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, dir)
    }

    fn check(&self) -> Result<()> {
        let f = &self.family;
        let bad = |m: &str| Err(Error::Config(m.into()));
        match f.variant {
            Variant::CeDegree if f.machine.is_none() => bad("the ce-degree variant needs a machine file"),
            Variant::TimeHierarchy | Variant::HalfConjugacy if f.machine.is_some() => {
                bad("diagonal variants use the built-in universal machine")
            }
            Variant::Sat if f.truncation.is_some() || f.machine.is_some() || f.budget.is_some() => {
                bad("the sat variant takes only [family.sat] bounds")
            }
            v if v != Variant::Sat && f.sat.is_some() => bad("[family.sat] applies only to the sat variant"),
            _ => Ok(()),
        }
    }

    /// Limits after applying the file and then the environment.
    pub fn limits(&self) -> Result<Limits> {
        let mut l = Limits::default();
        if let Some(s) = self.limits {
            l.step_ceiling = s.step_ceiling.unwrap_or(l.step_ceiling);
            l.index_search_limit = s.index_search_limit.unwrap_or(l.index_search_limit);
        }
        if let Ok(v) = std::env::var(STEP_CEILING_ENV) {
            l.step_ceiling = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{STEP_CEILING_ENV} is not a number: {v:?}")))?;
        }
        Ok(l)
    }

    pub fn build(&self) -> Result<RelatorFamily> {
        let f = &self.family;
        let limits = self.limits()?;
        let budget = f.budget.unwrap_or_default();
        let kind = match f.variant {
            Variant::Sat => return Ok(RelatorFamily::sat(f.sat)),
            Variant::CeDegree => {
                let path = self.base_dir.join(f.machine.as_ref().expect("checked on parse"));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                FamilyKind::CeBijection {
                    machine: MachineSpec::parse(&text)?,
                    monotone: f.monotone,
                }
            }
            Variant::TimeHierarchy => FamilyKind::TimeHierarchy { f: budget },
            Variant::HalfConjugacy => FamilyKind::HalfConjugacy { f: budget },
        };
        RelatorFamily::machine(FamilyFunctionSpec::new(kind, limits), f.truncation)
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}
