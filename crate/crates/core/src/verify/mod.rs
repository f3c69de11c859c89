//! Named checks with machine-readable reports, and the suites that sweep them.

mod checks;
mod suite;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::Prime;

pub use suite::{render_markdown, suite, suite_plan, SuiteLevel};

/// Every check the runner knows by name.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Idempotent,
    SteinbergLemma,
    ProductIdentity,
    Retraction,
    AssocComm,
    FlagHomology,
    Cycles,
    JoinProduct,
    Prop10,
    Bruhat,
    UnipotentFixed,
    HomPartition,
    Lemma17,
    Theorem15,
    FixedPointIndex,
    ProductCompat,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::Idempotent,
        Check::SteinbergLemma,
        Check::ProductIdentity,
        Check::Retraction,
        Check::AssocComm,
        Check::FlagHomology,
        Check::Cycles,
        Check::JoinProduct,
        Check::Prop10,
        Check::Bruhat,
        Check::UnipotentFixed,
        Check::HomPartition,
        Check::Lemma17,
        Check::Theorem15,
        Check::FixedPointIndex,
        Check::ProductCompat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Idempotent => "idempotent",
            Check::SteinbergLemma => "steinberg-lemma",
            Check::ProductIdentity => "product-identity",
            Check::Retraction => "retraction",
            Check::AssocComm => "assoc-comm",
            Check::FlagHomology => "flag-homology",
            Check::Cycles => "cycles",
            Check::JoinProduct => "join-product",
            Check::Prop10 => "prop10",
            Check::Bruhat => "bruhat",
            Check::UnipotentFixed => "unipotent-fixed",
            Check::HomPartition => "hom-partition",
            Check::Lemma17 => "lemma17",
            Check::Theorem15 => "theorem15",
            Check::FixedPointIndex => "fixed-point-index",
            Check::ProductCompat => "product-compat",
        }
    }

    /// The conventions a report of this check depends on.
    pub fn convention_notes(self) -> Vec<String> {
        let mut notes = vec![PERMUTATIONS];
        match self {
            Check::Idempotent
            | Check::SteinbergLemma
            | Check::ProductIdentity
            | Check::Retraction => {
                notes.push(LEFT_MODULES);
            }
            Check::AssocComm => notes.extend([LEFT_MODULES, COMMUTATIVITY]),
            Check::Cycles | Check::JoinProduct | Check::Prop10 => {
                notes.extend([ORIENTATION, JOIN_SIGN])
            }
            Check::FlagHomology | Check::UnipotentFixed => notes.push(REDUCED),
            Check::Lemma17 | Check::Theorem15 => notes.extend([DUALITY, GRADED_SHADOW]),
            Check::HomPartition | Check::ProductCompat => notes.push(QUOTIENT_BASIS),
            Check::FixedPointIndex | Check::Bruhat => {}
        }
        notes.into_iter().map(String::from).collect()
    }
}

const PERMUTATIONS: &str = "permutation matrices send e_k to e_σ(k)";
const LEFT_MODULES: &str = "idempotents act on left modules through Σ x_g ρ(g)";
const COMMUTATIVITY: &str =
    "commutativity is tested literally; the witness also records agreement up to (-1)^(ij) on the retraction image";
const ORIENTATION: &str = "simplices are flags oriented by increasing dimension";
const JOIN_SIGN: &str = "join product sign (-1)^inversions with constant +1";
const REDUCED: &str = "reduced homology with augmentation in degree -1";
const DUALITY: &str =
    "torus homology acts as the dual of substitution; plain substitution reported alongside";
const GRADED_SHADOW: &str = "verifies graded mod-p homology dimensions, not maps of spectra";
const QUOTIENT_BASIS: &str = "quotient bases are the greedy least-element bases";

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Parameters shared by all checks; each check reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

macro_rules! setter {
    ($name:ident, $ty:ty) => {
        pub fn $name(mut self, v: $ty) -> Self {
            self.$name = Some(v);
            self
        }
    };
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    setter!(p, u32);
    setter!(n, usize);
    setter!(d, usize);
    setter!(i, usize);
    setter!(j, usize);
    setter!(k, usize);
    setter!(max_degree, usize);

    pub fn group(mut self, g: impl Into<String>) -> Self {
        self.group = Some(g.into());
        self
    }

    fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| Error::InvalidParameters(format!("missing parameter `{name}`")))
    }

    pub(crate) fn prime(&self) -> Result<Prime> {
        Prime::new(Self::need(self.p, "p")?)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The outcome of one check. `witness` holds key ranks on a pass and the first
/// counterexample on a failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: Check,
    pub params: Params,
    pub status: Status,
    pub witness: Value,
    /// Wall time, recorded only when asked for so that reports stay byte-stable.
    pub elapsed_ms: Option<u64>,
    pub convention_notes: Vec<String>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub timings: bool,
}

pub(crate) enum Outcome {
    Pass(Value),
    Skip(String),
}

/// Runs one check. Verification failures become `fail` reports; bad parameters are errors.
pub fn run(check: Check, params: &Params, options: RunOptions) -> Result<CheckReport> {
    let start = Instant::now();
    let (status, witness) = match checks::dispatch(check, params) {
        Ok(Outcome::Pass(w)) => (Status::Pass, w),
        Ok(Outcome::Skip(reason)) => (Status::Skipped, serde_json::json!({ "reason": reason })),
        Err(Error::Verification { witness, .. }) => (Status::Fail, witness),
        Err(e) => return Err(e),
    };
    Ok(CheckReport {
        check,
        params: params.clone(),
        status,
        witness,
        elapsed_ms: options.timings.then(|| start.elapsed().as_millis() as u64),
        convention_notes: check.convention_notes(),
    })
}

/// `run` by name.
pub fn run_named(name: &str, params: &Params, options: RunOptions) -> Result<CheckReport> {
    run(name.parse()?, params, options)
}
