//! Randomized checks of the library's lemmas, and the transcript type the
//! command line reports them in.

pub mod gen;
mod lemmas;

use serde::Serialize;

use crate::error::Result;
use crate::label::Label;
use crate::matrix::{Matrix, RatMatrix};
use crate::pivot::{short_tableau_pivot, PivotSpec, ShortPivotFn};

pub use lemmas::{check_sum3_instance, lemmas, Lemma, Sum3Check};

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: u64,
    /// Largest row or column count of generated matrices.
    pub max_size: usize,
    /// Short pivot under test.
    pub short_pivot: ShortPivotFn,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 1, trials: 20, max_size: 4, short_pivot: short_tableau_pivot }
    }
}

/// Short pivot whose off-pivot update adds the rank-one term instead of
/// subtracting it.
pub fn mutant_short_pivot(a: &RatMatrix, p: &PivotSpec) -> Result<RatMatrix> {
    let good = short_tableau_pivot(a, p)?;
    let x = a.row_index(&p.row).expect("checked by the real pivot");
    let y = a.col_index(&p.col).expect("checked by the real pivot");
    let piv = a.get(x, y);
    let mut data = good.data().to_vec();
    let n = a.ncols();
    for i in (0..a.nrows()).filter(|&i| i != x) {
        for j in (0..n).filter(|&j| j != y) {
            data[i * n + j] = a.get(i, j) + a.get(i, y) * a.entry(x, j) / &piv;
        }
    }
    Matrix::new(good.row_labels().to_vec(), good.col_labels().to_vec(), data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    /// Trials run, including a failing one.
    pub trials: u64,
    /// Minor, counterexample or error text when the check did not pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, trials: u64) -> Self {
        CheckRecord { name: name.into(), status: CheckStatus::Pass, trials, witness: None, note: None }
    }

    pub fn fail(name: impl Into<String>, trials: u64, witness: impl Into<String>) -> Self {
        CheckRecord { name: name.into(), status: CheckStatus::Fail, trials, witness: Some(witness.into()), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn to_line(&self) -> String {
        let status = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
        };
        let plural = if self.trials == 1 { "" } else { "s" };
        let mut s = format!("{status} {} ({} trial{plural})", self.name, self.trials);
        if let Some(n) = &self.note {
            s.push_str(&format!(" [{n}]"));
        }
        if let Some(w) = &self.witness {
            let indented = w.trim_end().replace('\n', "\n    ");
            s.push_str(&format!("\n    counterexample: {indented}"));
        }
        s
    }
}

/// Named piece of command output, e.g. a printed matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Output {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub outputs: Vec<Output>,
    pub checks: Vec<CheckRecord>,
    pub exit_code: i32,
}

impl Transcript {
    pub fn new(command: impl Into<String>) -> Self {
        Transcript { command: command.into(), seed: None, outputs: vec![], checks: vec![], exit_code: 0 }
    }

    pub fn output(&mut self, name: impl Into<String>, text: impl Into<String>) {
        self.outputs.push(Output { name: name.into(), text: text.into() });
    }

    pub fn check(&mut self, rec: CheckRecord) {
        self.checks.push(rec);
    }

    /// Exit code 0 when every check passed and 1 otherwise.
    pub fn finish(mut self) -> Self {
        self.exit_code = if self.checks.iter().all(CheckRecord::passed) { 0 } else { 1 };
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# {}\n", self.command);
        if let Some(seed) = self.seed {
            s.push_str(&format!("# seed {seed}\n"));
        }
        for o in &self.outputs {
            s.push_str(&format!("## {}\n{}", o.name, o.text));
            if !o.text.ends_with('\n') {
                s.push('\n');
            }
        }
        for c in &self.checks {
            s.push_str(&c.to_line());
            s.push('\n');
        }
        s.push_str(&format!("exit {}\n", self.exit_code));
        s
    }
}

/// Runs one lemma for `cfg.trials` trials on its own random stream, stopping
/// at the first failure.
pub fn run_lemma(lemma: &Lemma, index: u64, cfg: &VerifyConfig) -> CheckRecord {
    let mut rng = gen::stream(cfg.seed, index);
    if cfg.trials == 0 {
        return CheckRecord::pass(lemma.name, 0).with_note("0 trials, vacuous");
    }
    for t in 1..=cfg.trials {
        match (lemma.trial)(&mut rng, cfg) {
            Ok(None) => {}
            Ok(Some(w)) => return CheckRecord::fail(lemma.name, t, w),
            Err(e) => return CheckRecord::fail(lemma.name, t, format!("error: {e}")),
        }
    }
    CheckRecord::pass(lemma.name, cfg.trials)
}

/// Every lemma in [`lemmas`] order.
pub fn run_blueprint(cfg: &VerifyConfig) -> Vec<CheckRecord> {
    lemmas().iter().enumerate().map(|(k, l)| run_lemma(l, k as u64, cfg)).collect()
}

/// Labels `a` carries, for witness text.
pub(crate) fn show_labels(ls: &[Label]) -> String {
    ls.iter().map(Label::as_str).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_blueprint_passes() {
        let recs = run_blueprint(&VerifyConfig::default());
        let failed: Vec<String> = recs.iter().filter(|r| !r.passed()).map(CheckRecord::to_line).collect();
        assert!(failed.is_empty(), "{}", failed.join("\n"));
        assert_eq!(recs.len(), lemmas().len());
    }

    #[test]
    fn zero_trials_is_vacuous() {
        let cfg = VerifyConfig { trials: 0, ..Default::default() };
        let recs = run_blueprint(&cfg);
        assert!(recs.iter().all(|r| r.passed() && r.note.as_deref() == Some("0 trials, vacuous")));
    }

    #[test]
    fn mutant_breaks_det_ratio() {
        let cfg = VerifyConfig { short_pivot: mutant_short_pivot, ..Default::default() };
        let recs = run_blueprint(&cfg);
        let det = recs.iter().find(|r| r.name == "pivot_det_ratio").unwrap();
        assert!(!det.passed());
        assert!(det.witness.as_deref().unwrap().contains("|det A''|"));
    }

    #[test]
    fn deterministic() {
        let cfg = VerifyConfig { trials: 3, ..Default::default() };
        assert_eq!(run_blueprint(&cfg), run_blueprint(&cfg));
    }
}
