use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{run, Check, CheckReport, Params, RunOptions, Status};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteLevel {
    /// `p ∈ {2, 3}` and `n ≤ 2`, plus the cheapest three-block associativity case.
    Quick,
    /// Adds `n = 3` at `p = 2, 3` and homology of the four-dimensional building at `p = 2`.
    Full,
}

impl FromStr for SuiteLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(SuiteLevel::Quick),
            "full" => Ok(SuiteLevel::Full),
            _ => Err(Error::InvalidParameters(format!("unknown suite `{s}`"))),
        }
    }
}

fn np(n: usize, p: u32) -> Params {
    Params::new().n(n).p(p)
}

fn ij(i: usize, j: usize, p: u32) -> Params {
    Params::new().i(i).j(j).p(p)
}

/// The checks a suite runs, in report order.
pub fn suite_plan(level: SuiteLevel) -> Vec<(Check, Params)> {
    use Check::*;
    let mut plan = Vec::new();
    for p in [2, 3] {
        for n in 1..=2 {
            plan.push((Idempotent, np(n, p)));
            plan.push((SteinbergLemma, np(n, p)));
            plan.push((FlagHomology, np(n, p)));
            plan.push((Bruhat, np(n, p)));
        }
        plan.push((ProductIdentity, ij(1, 1, p)));
        plan.push((Retraction, ij(1, 1, p)));
        plan.push((Cycles, np(2, p)));
        plan.push((JoinProduct, ij(1, 1, p)));
        plan.push((Prop10, np(2, p).i(1)));
        plan.push((UnipotentFixed, np(2, p)));
        plan.push((Lemma17, np(1, p).d(1).max_degree(4)));
        plan.push((Lemma17, np(2, p).d(1).max_degree(4)));
        plan.push((Lemma17, np(2, p).d(2).max_degree(4)));
    }
    plan.push((AssocComm, ij(1, 1, 2).k(1)));
    for (g, p) in [
        ("C2", 2),
        ("C4", 2),
        ("C2^2", 2),
        ("C3", 3),
        ("C9", 3),
        ("C3^2", 3),
    ] {
        for n in 1..=2 {
            plan.push((HomPartition, np(n, p).group(g)));
        }
    }
    for g in ["C2", "C4", "C2^2"] {
        plan.push((Theorem15, np(2, 2).group(g).max_degree(4)));
    }
    plan.push((Theorem15, np(1, 3).group("C3").max_degree(4)));
    plan.push((FixedPointIndex, np(2, 2).group("C2")));
    plan.push((FixedPointIndex, np(2, 3).group("C3")));
    plan.push((ProductCompat, ij(1, 1, 2).group("C2^2")));
    plan.push((ProductCompat, ij(1, 1, 3).group("C3^2")));

    if level == SuiteLevel::Full {
        for p in [2, 3] {
            plan.push((Idempotent, np(3, p)));
            plan.push((SteinbergLemma, np(3, p)));
            plan.push((FlagHomology, np(3, p)));
            plan.push((Bruhat, np(3, p)));
            plan.push((ProductIdentity, ij(1, 2, p)));
            plan.push((ProductIdentity, ij(2, 1, p)));
            plan.push((Lemma17, np(3, p).d(1).max_degree(3)));
        }
        plan.push((FlagHomology, np(4, 2)));
        plan.push((AssocComm, ij(1, 1, 3).k(1)));
        plan.push((Retraction, ij(1, 2, 2)));
        plan.push((Retraction, ij(2, 1, 2)));
        plan.push((Cycles, np(3, 2)));
        plan.push((JoinProduct, ij(1, 2, 2)));
        plan.push((JoinProduct, ij(2, 1, 2)));
        plan.push((Prop10, np(3, 2).i(1)));
        plan.push((Prop10, np(3, 2).i(2)));
        plan.push((UnipotentFixed, np(3, 2)));
        plan.push((Lemma17, np(3, 2).d(2).max_degree(3)));
        for g in ["C2xC4", "Q8", "D8"] {
            for n in 1..=3 {
                plan.push((HomPartition, np(n, 2).group(g)));
            }
        }
        for g in ["C4", "C2^2"] {
            plan.push((HomPartition, np(3, 2).group(g)));
        }
        for n in 1..=2 {
            plan.push((HomPartition, np(n, 3).group("Heis3")));
        }
        for g in ["Q8", "D8", "C2xC4"] {
            plan.push((Theorem15, np(2, 2).group(g).max_degree(4)));
        }
        plan.push((Theorem15, np(2, 3).group("C3").max_degree(3)));
        plan.push((FixedPointIndex, np(3, 2).group("C2^2")));
        plan.push((ProductCompat, ij(1, 2, 2).group("C2^3")));
    }
    plan
}

/// Runs a suite on a pool of `threads` workers (all cores when `None`); reports keep plan order.
pub fn suite(
    level: SuiteLevel,
    threads: Option<usize>,
    options: RunOptions,
) -> Result<Vec<CheckReport>> {
    let plan = suite_plan(level);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    pool.install(|| {
        plan.par_iter()
            .map(|(check, params)| run(*check, params, options))
            .collect()
    })
}

fn params_text(p: &Params) -> String {
    let v = serde_json::to_value(p).unwrap_or_default();
    v.as_object()
        .map(|m| {
            m.iter()
                .map(|(k, v)| {
                    format!(
                        "{k}={}",
                        v.as_str().map_or_else(|| v.to_string(), str::to_string)
                    )
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

/// A markdown table of statuses followed by the witness of every failure.
pub fn render_markdown(reports: &[CheckReport]) -> String {
    let mut out = String::from("| check | parameters | status |\n|---|---|---|\n");
    for r in reports {
        let status = serde_json::to_value(r.status).unwrap_or_default();
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            r.check,
            params_text(&r.params),
            status.as_str().unwrap_or("")
        );
    }
    let failures: Vec<&CheckReport> = reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .collect();
    if !failures.is_empty() {
        out.push_str("\n## Failures\n");
        for r in failures {
            let witness = serde_json::to_string_pretty(&r.witness).unwrap_or_default();
            let _ = write!(
                out,
                "\n### {} ({})\n\n```json\n{witness}\n```\n",
                r.check,
                params_text(&r.params)
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_plan_respects_its_range() {
        for (check, params) in suite_plan(SuiteLevel::Quick) {
            assert!(matches!(params.p, Some(2 | 3)), "{check}");
            if check != Check::AssocComm {
                assert!(
                    params.n.unwrap_or(0) <= 2
                        && params.i.unwrap_or(0) + params.j.unwrap_or(0) <= 2,
                    "{check}"
                );
            }
        }
        let full = suite_plan(SuiteLevel::Full);
        assert!(full
            .iter()
            .any(|(c, p)| *c == Check::FlagHomology && p.n == Some(4)));
        let covered: std::collections::BTreeSet<Check> = full.iter().map(|(c, _)| *c).collect();
        assert_eq!(covered.len(), Check::ALL.len());
    }
}
