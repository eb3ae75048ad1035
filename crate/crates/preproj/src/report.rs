//! JSON run reports and ASCII radical-layer diagrams.

use crate::algebra::GradedAlgebra;
use crate::field::Field;
use crate::quiver::{Quiver, Word};
use crate::verify::{CheckResult, Verdict, WordRun};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const SCHEMA: &str = "ppw-report/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    /// quiver in the text file format
    pub quiver: String,
    pub word: Vec<u32>,
    pub field: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(checks: &[CheckResult]) -> Self {
        let mut s = Summary::default();
        for c in checks {
            s.add(c.verdict);
        }
        s
    }

    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Skip => self.skip += 1,
        }
    }

    fn merge(&mut self, o: &Summary) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.skip += o.skip;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub engine_version: String,
    pub input: InputEcho,
    /// c-sorting word the checks ran on (absent when not c-sortable)
    pub sorting_word: Option<Vec<u32>>,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    /// wall clock; the only field that is not reproducible
    pub timing_ms: u64,
}

impl RunReport {
    pub fn new(q: &Quiver, w: &Word, field: &str, seed: u64, run: WordRun, timing_ms: u64) -> Self {
        RunReport {
            schema: SCHEMA.into(),
            engine_version: ENGINE_VERSION.into(),
            input: InputEcho { quiver: q.to_text(), word: w.0.clone(), field: field.into() },
            sorting_word: run.sorting_word.map(|w| w.0),
            seed,
            summary: Summary::of(&run.checks),
            checks: run.checks,
            timing_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Copy with timing zeroed, for reproducibility comparisons.
    pub fn canonical(&self) -> Self {
        RunReport { timing_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = write!(s, "{:<22} {}", c.name, c.verdict);
            if !c.reason.is_empty() {
                let _ = write!(s, "  ({})", c.reason);
            }
            s.push('\n');
        }
        let _ = writeln!(s, "pass {} fail {} skip {}", self.summary.pass, self.summary.fail, self.summary.skip);
        s
    }
}

/// A word that could not be verified at all.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusError {
    pub word: Vec<u32>,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema: String,
    pub engine_version: String,
    pub quiver_type: String,
    pub max_len: usize,
    pub field: String,
    pub seed: u64,
    /// number of nonempty c-sortable words enumerated
    pub words: usize,
    /// c-sortable element count (identity included) from the brute-force scan
    pub brute_force_count: Option<usize>,
    pub runs: Vec<RunReport>,
    pub errors: Vec<CorpusError>,
    pub summary: Summary,
    pub timing_ms: u64,
}

impl CorpusReport {
    pub fn new(quiver_type: &str, max_len: usize, field: &str, seed: u64, runs: Vec<RunReport>, errors: Vec<CorpusError>, brute_force_count: Option<usize>, timing_ms: u64) -> Self {
        let mut summary = Summary::default();
        for r in &runs {
            summary.merge(&r.summary);
        }
        CorpusReport {
            schema: SCHEMA.into(),
            engine_version: ENGINE_VERSION.into(),
            quiver_type: quiver_type.into(),
            max_len,
            field: field.into(),
            seed,
            words: runs.len() + errors.len(),
            brute_force_count,
            runs,
            errors,
            summary,
            timing_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.errors.is_empty()
    }

    pub fn canonical(&self) -> Self {
        CorpusReport { timing_ms: 0, runs: self.runs.iter().map(|r| r.canonical()).collect(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

// ---------------------------------------------------------------------------
// diagrams

/// Composition factors of A e_u by radical layer: for each path length, the
/// (degree, vertex id) of every basis path ending at u. Valid for quotients
/// of Π by ideals homogeneous in path length.
pub fn radical_layers<F: Field>(a: &GradedAlgebra<F>, q: &Quiver, u: usize) -> Vec<Vec<(i32, u32)>> {
    let mut layers: BTreeMap<usize, Vec<(i32, u32)>> = BTreeMap::new();
    for b in &a.basis {
        if b.target == u {
            layers.entry(b.length).or_default().push((b.degree, q.id(b.source)));
        }
    }
    let top = layers.keys().max().map_or(0, |m| m + 1);
    (0..top)
        .map(|l| {
            let mut v = layers.remove(&l).unwrap_or_default();
            v.sort_unstable();
            v
        })
        .collect()
}

/// One line per layer; degree-0 factors are starred, the others carry
/// their degree, and factors of equal degree are joined by '-'.
pub fn render_layers(title: &str, layers: &[Vec<(i32, u32)>]) -> String {
    let mut s = format!("{title}\n");
    for (l, row) in layers.iter().enumerate() {
        let mut groups: Vec<String> = Vec::new();
        let mut i = 0;
        while i < row.len() {
            let d = row[i].0;
            let mut names = Vec::new();
            while i < row.len() && row[i].0 == d {
                names.push(if d == 0 { format!("*{}*", row[i].1) } else { format!("{}^{d}", row[i].1) });
                i += 1;
            }
            groups.push(names.join("-"));
        }
        let _ = writeln!(s, "  {l}: {}", groups.join("  "));
    }
    s
}

/// Diagrams of A e_u for every vertex u of q.
pub fn diagrams<F: Field>(a: &GradedAlgebra<F>, q: &Quiver, name: &str) -> String {
    (0..q.n()).map(|u| render_layers(&format!("{name} e_{}", q.id(u)), &radical_layers(a, q, u))).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::WordContext;
    use crate::field::Rat;
    use crate::quiver::examples;
    use crate::verify::{verify, Suite};

    #[test]
    fn layer_rendering() {
        let s = render_layers("x", &[vec![(0, 1)], vec![(0, 1), (1, 2), (1, 3)]]);
        assert_eq!(s, "x\n  0: *1*\n  1: *1*  2^1-3^1\n");
    }

    #[test]
    fn coxeter_word_is_all_degree_zero() {
        let q = examples::triangle();
        let c = WordContext::<Rat>::new(&q, &Word(vec![1, 2, 3])).unwrap();
        for u in 0..3 {
            assert!(radical_layers(&c.piw, &q, u).iter().flatten().all(|(d, _)| *d == 0));
        }
    }

    #[test]
    fn report_round_trip() {
        let q = examples::a2();
        let w = Word(vec![1, 2, 1]);
        let run = verify::<Rat>(&q, &w, Suite::All, 9).unwrap();
        let r = RunReport::new(&q, &w, "rat", 9, run, 12);
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.passed());
        let again = RunReport::new(&q, &w, "rat", 9, verify::<Rat>(&q, &w, Suite::All, 9).unwrap(), 40);
        assert_eq!(again.canonical().to_json(), r.canonical().to_json());
    }
}
