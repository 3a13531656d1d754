//! Regression corpora: one inequality per line with the checks it must pass.
//!
//! ```text
//! # signature | inequality | checks
//! bi-intuitionistic | (q >- p) -> bot <= p -> q | verdict=sahlqvist sahlqvist@p=1,q=d inductive@p=d,q=d/q<p
//! positive-modal | box p <= p | fo@4
//! ```
//!
//! Checks: `verdict=sahlqvist|inductive|negative`; `sahlqvist@EPS` and
//! `inductive@EPS[/OMEGA]`, negated with a leading `!`; `fo@N[:EPS]` runs the
//! correspondence pipeline and the oracle up to N worlds; `transfer@N` compares
//! validity of the inequality and of its translation for every witnessing
//! order-type on every frame up to N worlds.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::correspond::{correspondent, frames_for, oracle_equivalence, OracleVerdict};
use crate::error::Error;
use crate::formula::{Inequality, VarOrderType};
use crate::gentree::{find_witnesses, is_inductive, is_sahlqvist, DependencyOrder, Mode, Verdict, DEFAULT_VAR_BOUND};
use crate::semantics::transfer_check;
use crate::signature::Signature;

#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    Verdict(Verdict),
    Sahlqvist { eps: VarOrderType, expect: bool },
    Inductive { eps: VarOrderType, omega: DependencyOrder, expect: bool },
    Correspond { worlds: usize, eps: Option<VarOrderType> },
    Transfer { worlds: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub line: usize,
    pub sig: String,
    pub inequality: String,
    pub checks: Vec<Check>,
}

fn bad(line: usize, msg: String) -> Error {
    Error::Parse { line, pos: 1, msg }
}

fn parse_check(line: usize, item: &str) -> Result<Check, Error> {
    let (expect, item) = match item.strip_prefix('!') {
        Some(rest) => (false, rest),
        None => (true, item),
    };
    let relocate = |e: Error| match e {
        Error::Parse { msg, .. } => bad(line, msg),
        e => e,
    };
    if let Some(v) = item.strip_prefix("verdict=") {
        let v = match v {
            "sahlqvist" => Verdict::Sahlqvist,
            "inductive" => Verdict::Inductive,
            "negative" => Verdict::Negative,
            _ => return Err(bad(line, format!("unknown verdict `{v}`"))),
        };
        return Ok(Check::Verdict(v));
    }
    if let Some(e) = item.strip_prefix("sahlqvist@") {
        return Ok(Check::Sahlqvist { eps: VarOrderType::parse(e).map_err(relocate)?, expect });
    }
    if let Some(rest) = item.strip_prefix("inductive@") {
        let (e, o) = rest.split_once('/').unwrap_or((rest, ""));
        return Ok(Check::Inductive {
            eps: VarOrderType::parse(e).map_err(relocate)?,
            omega: DependencyOrder::parse(o).map_err(relocate)?,
            expect,
        });
    }
    let worlds = |s: &str| s.parse::<usize>().map_err(|_| bad(line, format!("bad world count `{s}`")));
    if let Some(rest) = item.strip_prefix("fo@") {
        let (n, e) = match rest.split_once(':') {
            Some((n, e)) => (n, Some(VarOrderType::parse(e).map_err(relocate)?)),
            None => (rest, None),
        };
        return Ok(Check::Correspond { worlds: worlds(n)?, eps: e });
    }
    if let Some(n) = item.strip_prefix("transfer@") {
        return Ok(Check::Transfer { worlds: worlds(n)? });
    }
    Err(bad(line, format!("unknown check `{item}`")))
}

pub fn parse(text: &str) -> Result<Vec<Entry>, Error> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let parts: Vec<&str> = body.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad(line, "expected `signature | inequality | checks`".into()));
        }
        let checks = parts[2]
            .split_whitespace()
            .map(|c| parse_check(line, c))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Entry { line, sig: parts[0].to_string(), inequality: parts[1].to_string(), checks });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub line: usize,
    pub sig: String,
    pub inequality: String,
    pub results: Vec<CheckResult>,
}

impl EntryResult {
    pub fn pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps_text = |e: &VarOrderType| e.0.iter().map(|(k, p)| format!("{k}={p}")).collect::<Vec<_>>().join(",");
        let bang = |b: bool| if b { "" } else { "!" };
        match self {
            Check::Verdict(v) => write!(f, "verdict={}", format!("{v:?}").to_lowercase()),
            Check::Sahlqvist { eps, expect } => write!(f, "{}sahlqvist@{}", bang(*expect), eps_text(eps)),
            Check::Inductive { eps, omega, expect } => {
                write!(f, "{}inductive@{}/{}", bang(*expect), eps_text(eps), omega)
            }
            Check::Correspond { worlds, eps: None } => write!(f, "fo@{worlds}"),
            Check::Correspond { worlds, eps: Some(e) } => write!(f, "fo@{worlds}:{}", eps_text(e)),
            Check::Transfer { worlds } => write!(f, "transfer@{worlds}"),
        }
    }
}

fn run_check(ineq: &Inequality, sig: &Signature, check: &Check) -> Result<(bool, String), Error> {
    Ok(match check {
        Check::Verdict(v) => {
            let rep = find_witnesses(ineq, sig, Mode::Both, DEFAULT_VAR_BOUND)?;
            let got = rep.verdict;
            (got == *v, format!("{got:?}").to_lowercase())
        }
        Check::Sahlqvist { eps, expect } => {
            let (ok, diags) = is_sahlqvist(ineq, eps, sig)?;
            (ok == *expect, if ok { "sahlqvist".into() } else { diags.join("; ") })
        }
        Check::Inductive { eps, omega, expect } => {
            let (ok, diags) = is_inductive(ineq, eps, omega, sig)?;
            (ok == *expect, if ok { "inductive".into() } else { diags.join("; ") })
        }
        Check::Correspond { worlds, eps } => {
            let c = correspondent(ineq, sig, eps.as_ref())?;
            match oracle_equivalence(ineq, sig, &c.fo, *worlds)? {
                OracleVerdict::Verified { frames } => (true, format!("{} ({frames} frames)", c.fo)),
                OracleVerdict::Refuted { frame, inequality_valid } => (
                    false,
                    format!("{} disagrees on {frame} (inequality valid: {inequality_valid})", c.fo),
                ),
            }
        }
        Check::Transfer { worlds } => {
            let rep = find_witnesses(ineq, sig, Mode::Both, DEFAULT_VAR_BOUND)?;
            let (frames, _) = frames_for(ineq, sig, *worlds)?;
            let mut checked = 0;
            for w in &rep.witnesses {
                for fr in &frames {
                    let t = transfer_check(ineq, &w.eps, sig, fr)?;
                    checked += 1;
                    if !t.agree {
                        return Ok((false, format!("disagreement at {} on {fr}", w.eps)));
                    }
                }
            }
            (true, format!("{checked} frame/order-type pairs agree"))
        }
    })
}

pub fn run_entry(e: &Entry) -> EntryResult {
    let mut results = Vec::new();
    let parsed = Signature::resolve(&e.sig).and_then(|s| Inequality::parse(&e.inequality, &s).map(|i| (s, i)));
    match parsed {
        Err(err) => results.push(CheckResult { check: "parse".into(), pass: false, detail: err.to_string() }),
        Ok((sig, ineq)) => {
            for c in &e.checks {
                let (pass, detail) = run_check(&ineq, &sig, c).unwrap_or_else(|err| (false, err.to_string()));
                results.push(CheckResult { check: c.to_string(), pass, detail });
            }
        }
    }
    EntryResult { line: e.line, sig: e.sig.clone(), inequality: e.inequality.clone(), results }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryResult>,
    pub passed: usize,
    pub failed: usize,
}

impl CorpusReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Run every entry, in parallel; results keep file order.
pub fn run(entries: &[Entry]) -> CorpusReport {
    let entries: Vec<EntryResult> = entries.par_iter().map(run_entry).collect();
    let checks = entries.iter().flat_map(|e| &e.results);
    let passed = checks.clone().filter(|r| r.pass).count();
    let failed = checks.filter(|r| !r.pass).count();
    CorpusReport { entries, passed, failed }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{:>4} [{}] {}", e.line, e.sig, e.inequality)?;
            for r in &e.results {
                writeln!(f, "       {} {}: {}", if r.pass { "ok  " } else { "FAIL" }, r.check, r.detail)?;
            }
        }
        write!(f, "{} checks passed, {} failed", self.passed, self.failed)
    }
}
