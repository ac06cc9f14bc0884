//! Configuration-driven batch runs over a catalog of cases.
//!
//! Each (case, task) pair yields a TSV table and a verdict; a run also
//! produces a JSON summary. Output is a pure function of the catalog and the
//! task filter.

mod config;
pub mod tasks;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use config::{
    parse_point, side_labels, Case, CaseConfig, Catalog, CatalogConfig, Coefficients, DatumConfig, DualBlock,
    DualGroupConfig, LabelVariant, OrbitData, ParameterConfig, PointConfig, DEFAULT_CATALOG,
};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Task {
    VerifyPresentation,
    Labels,
    CompareSides,
    GenericTest,
    Rank1Classify,
    Graded,
    Lparam,
    Match,
}

impl Task {
    pub const ALL: [Task; 8] = [
        Task::VerifyPresentation,
        Task::Labels,
        Task::CompareSides,
        Task::GenericTest,
        Task::Rank1Classify,
        Task::Graded,
        Task::Lparam,
        Task::Match,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::VerifyPresentation => "verify-presentation",
            Task::Labels => "labels",
            Task::CompareSides => "compare-sides",
            Task::GenericTest => "generic-test",
            Task::Rank1Classify => "rank1-classify",
            Task::Graded => "graded",
            Task::Lparam => "lparam",
            Task::Match => "match",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Task> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown task {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The task does not apply to the case.
    Skip,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        })
    }
}

/// One table for one (case, task).
#[derive(Clone, Debug)]
pub struct TaskReport {
    pub case: String,
    pub task: Task,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub verdict: Verdict,
    pub note: String,
}

fn cell(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

impl TaskReport {
    pub(crate) fn new(case: &str, task: Task, header: &[&str]) -> Self {
        TaskReport {
            case: case.to_string(),
            task,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            verdict: Verdict::Pass,
            note: String::new(),
        }
    }

    pub(crate) fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub(crate) fn fail(&mut self, note: impl Into<String>) {
        self.verdict = Verdict::Fail;
        if self.note.is_empty() {
            self.note = note.into();
        }
    }

    pub(crate) fn skip(mut self, note: impl Into<String>) -> Self {
        self.verdict = Verdict::Skip;
        self.note = note.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// Relative path `<case>/<task>.tsv`.
    pub fn file_name(&self) -> String {
        format!("{}/{}.tsv", self.case, self.task)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# case\t{}\n# task\t{}\n", self.case, self.task);
        out.push_str(&self.header.iter().map(|h| cell(h)).collect::<Vec<_>>().join("\t"));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|c| cell(c)).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        out.push_str(&format!("# verdict\t{}\n", self.verdict));
        if !self.note.is_empty() {
            out.push_str(&format!("# note\t{}\n", cell(&self.note)));
        }
        out
    }
}

#[derive(Serialize)]
struct SummaryTask<'a> {
    task: &'a str,
    verdict: Verdict,
    rows: usize,
    #[serde(skip_serializing_if = "str::is_empty")]
    note: &'a str,
}

#[derive(Serialize)]
struct SummaryCase<'a> {
    name: &'a str,
    tasks: Vec<SummaryTask<'a>>,
}

#[derive(Serialize)]
struct Summary<'a> {
    verdict: Verdict,
    cases: Vec<SummaryCase<'a>>,
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub reports: Vec<TaskReport>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(TaskReport::passed)
    }

    /// 0 when every verdict passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn get(&self, case: &str, task: Task) -> Option<&TaskReport> {
        self.reports.iter().find(|r| r.case == case && r.task == task)
    }

    pub fn summary_json(&self) -> String {
        let mut cases: Vec<SummaryCase> = Vec::new();
        for r in &self.reports {
            let t = SummaryTask { task: r.task.name(), verdict: r.verdict, rows: r.rows.len(), note: &r.note };
            match cases.last_mut() {
                Some(c) if c.name == r.case => c.tasks.push(t),
                _ => cases.push(SummaryCase { name: &r.case, tasks: vec![t] }),
            }
        }
        let s = Summary { verdict: if self.passed() { Verdict::Pass } else { Verdict::Fail }, cases };
        let mut out = serde_json::to_string_pretty(&s).expect("summary serializes");
        out.push('\n');
        out
    }
}

/// Runs the selected tasks (all configured ones when `filter` is empty) on
/// every case. Cases run on separate threads; report order follows the catalog.
pub fn run(catalog: &Catalog, filter: &[Task]) -> RunReport {
    let per_case: Vec<Vec<TaskReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = catalog
            .cases
            .iter()
            .map(|case| {
                scope.spawn(move || {
                    case.tasks
                        .iter()
                        .filter(|t| filter.is_empty() || filter.contains(t))
                        .map(|&t| tasks::run_task(case, t))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("task thread panicked")).collect()
    });
    RunReport { reports: per_case.into_iter().flatten().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_case(extra: &str) -> String {
        format!(
            r#"{{"cases": [{{"name": "a1", "datum": {{"rank": 1, "roots": [[1], [-1]], "coroots": [[2], [-2]], "simple": [0]}},
                "arithmetic": [{{"root": 0, "data": {{"f": 1, "case": "nonexceptional"{extra}}}}}]}}]}}"#
        )
    }

    #[test]
    fn bundled_catalog_has_eight_cases() {
        let cat = Catalog::default_catalog();
        let names: Vec<_> = cat.cases.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["a1_sl2", "a1_pgl2", "a1xa1_swap", "a2", "c2", "bc1_u3", "gl2", "gl3"]);
        assert_eq!((cat.ctx.order, cat.ctx.denom), (12, 2));
    }

    #[test]
    fn task_names_round_trip() {
        for t in Task::ALL {
            assert_eq!(t.name().parse::<Task>().unwrap(), t);
        }
        assert!(matches!("verify".parse::<Task>(), Err(Error::Config(_))));
    }

    #[test]
    fn invalid_configs_are_config_errors() {
        let bad = [
            r#"{"cases": []"#.to_string(),
            one_case(r#", "colour": 1"#),
            one_case("").replace("[[2], [-2]]", "[[3], [-3]]"),
            one_case("").replace(r#""simple": [0]"#, r#""simple": [5]"#),
            one_case("").replace(r#""root": 0"#, r#""root": 9"#),
            one_case("").replace(r#"]}]}"#, r#"], "tasks": ["bogus"]}]}"#),
            one_case("").replace(r#"]}]}"#, r#"], "basepoint": [["1/5", "0"]]}]}"#),
            one_case("").replace(r#"]}]}"#, r#"], "epsilon": [0, 0]}]}"#),
        ];
        for text in &bad {
            let err = Catalog::from_json(text).expect_err(text);
            assert!(matches!(err, Error::Config(_)), "{text}: {err:?}");
        }
        assert!(Catalog::from_json(&one_case("")).is_ok());
    }

    #[test]
    fn duplicate_case_names_rejected() {
        let mut c: CatalogConfig = serde_json::from_str(&one_case("")).unwrap();
        c.cases.push(c.cases[0].clone());
        assert!(Catalog::from_config(&c).is_err());
    }

    #[test]
    fn corrupted_galois_labels_fail_and_name_the_orbit() {
        let cat = Catalog::from_json(&one_case(r#", "halved_galois": true"#)).unwrap();
        let rep = run(&cat, &[Task::CompareSides]);
        assert_eq!(rep.exit_code(), 1);
        let r = rep.get("a1", Task::CompareSides).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.to_tsv().contains("orbit{[1] [-1]}\t(1, 1)\t(1, 0)\tno"), "{}", r.to_tsv());
    }

    #[test]
    fn reports_are_deterministic_tsv() {
        let cat = Catalog::from_json(&one_case("")).unwrap();
        let a = run(&cat, &[Task::VerifyPresentation, Task::Rank1Classify]);
        let b = run(&cat, &[Task::Rank1Classify, Task::VerifyPresentation]);
        assert!(a.passed());
        assert_eq!(a.reports.len(), 2);
        for (x, y) in a.reports.iter().zip(&b.reports) {
            assert_eq!(x.to_tsv(), y.to_tsv());
            assert!(x.to_tsv().ends_with("# verdict\tPASS\n"));
            let width = x.header.len();
            assert!(x.rows.iter().all(|r| r.len() == width));
        }
        assert_eq!(a.summary_json(), b.summary_json());
        let s: serde_json::Value = serde_json::from_str(&a.summary_json()).unwrap();
        assert_eq!(s["verdict"], "PASS");
        assert_eq!(s["cases"][0]["tasks"][0]["task"], "verify-presentation");
    }

    #[test]
    fn inapplicable_tasks_are_skipped() {
        let cat = Catalog::from_json(&one_case("")).unwrap();
        let rep = run(&cat, &[Task::Lparam, Task::Match]);
        assert!(rep.reports.iter().all(|r| r.verdict == Verdict::Skip));
        assert_eq!(rep.exit_code(), 0);
    }
}
