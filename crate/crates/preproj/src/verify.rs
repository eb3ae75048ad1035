//! Invariant suites run against one word, and the corpus driver.

use crate::context::WordContext;
use crate::coxeter::{Coxeter, Sortability};
use crate::endo::{build_qw, compare_f, negative_arrow_audit, phi_report};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hereditary::{double_reflection_iso, layer_identification, reduction_check, tilting_check_hereditary};
use crate::oracle::preprojective_dim;
use crate::par;
use crate::quiver::{Quiver, Word};
use crate::table::Presentation;
use crate::thick::{thick_certificate, vanishing_check};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Global dimension search stops here.
pub const GLDIM_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
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

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    /// empty on PASS
    pub reason: String,
    pub data: Value,
}

impl CheckResult {
    fn new(name: &str, pass: bool, reason: &str, data: Value) -> Self {
        let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
        let reason = if pass { String::new() } else { reason.to_string() };
        CheckResult { name: name.into(), verdict, reason, data }
    }

    fn skip(name: &str, reason: &str) -> Self {
        CheckResult { name: name.into(), verdict: Verdict::Skip, reason: reason.into(), data: Value::Null }
    }

    fn error(name: &str, e: &Error) -> Self {
        CheckResult { name: name.into(), verdict: Verdict::Fail, reason: format!("error: {e}"), data: Value::Null }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tilting,
    Endalg,
    Gldim,
    All,
}

impl Suite {
    fn has(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tilting" => Ok(Suite::Tilting),
            "endalg" => Ok(Suite::Endalg),
            "gldim" => Ok(Suite::Gldim),
            "all" => Ok(Suite::All),
            _ => Err(Error::Invalid(format!("unknown suite {s}"))),
        }
    }
}

const TILTING: &[&str] =
    &["dimension-oracle", "prefix-truncation", "layer-columns", "tilting-t", "layer-identification", "hom-vanishing", "thick-generation"];
const ENDALG: &[&str] = &["qw-degrees", "negative-arrows", "phi-surjection", "f-bijection", "reduction", "rho"];
const GLDIM: &[&str] = &["gldim-a", "gldim-b"];

/// Outcome of one word: the c-sorting word actually used and the checks.
#[derive(Clone, Debug)]
pub struct WordRun {
    pub sorting_word: Option<Word>,
    pub checks: Vec<CheckResult>,
}

/// Presentation as JSON with coefficients split into numerator/denominator.
pub fn presentation_json(p: &Presentation) -> Value {
    let arrows: Vec<Value> =
        p.arrows.iter().map(|(n, s, t, d)| json!({"name": n, "source": s + 1, "target": t + 1, "degree": d})).collect();
    let rels: Vec<Value> = p
        .relations
        .iter()
        .map(|r| {
            Value::Array(
                r.iter()
                    .map(|(c, path)| {
                        let (num, den) = c.split_once('/').unwrap_or((c.as_str(), "1"));
                        let names: Vec<&str> = path.iter().map(|&a| p.arrows[a].0.as_str()).collect();
                        json!({"coeff": {"num": num, "den": den}, "path": names})
                    })
                    .collect(),
            )
        })
        .collect();
    json!({"text": p.to_text(), "vertices": p.num_vertices(), "arrows": arrows, "relations": rels})
}

/// w = c^k on the Kronecker quiver, returning k.
pub fn kronecker_power<F: Field>(ctx: &WordContext<F>) -> Option<usize> {
    let q = &ctx.quiver;
    if q.n() != 2 || q.arrows.len() != 2 || q.edges_between(0, 1) != 2 || ctx.c.len() != 2 {
        return None;
    }
    let w = &ctx.word.0;
    (w.len() % 2 == 0 && w.chunks(2).all(|b| b == ctx.c.0.as_slice())).then_some(w.len() / 2)
}

/// (Π/I_{c^i})e_1 = (Π/J^{2i−1})e_1 and (Π/I_{c^i})e_2 = (Π/J^{2i})e_2.
pub fn radical_power_check<F: Field>(ctx: &WordContext<F>, k: usize) -> Result<(bool, Value)> {
    let (s, t) = (ctx.quiver.arrows[0].source, ctx.quiver.arrows[0].target);
    let mut rows = Vec::new();
    let mut pass = true;
    for i in 1..=k {
        let ideal = &ctx.prefixes[2 * i];
        let (a1, b1, e1) = ctx.pi.compare_columns(ideal, &ctx.pi.path_length_ideal(2 * i - 1)?, s);
        let (a2, b2, e2) = ctx.pi.compare_columns(ideal, &ctx.pi.path_length_ideal(2 * i)?, t);
        pass &= e1 && e2 && a1 == b1 && a2 == b2;
        rows.push(json!({"i": i, "e1": [a1, b1, e1], "e2": [a2, b2, e2]}));
    }
    Ok((pass, Value::Array(rows)))
}

/// 2n vertices in a chain of doubled arrows with one commutativity relation
/// per inner vertex (n = k − 1).
pub fn kronecker_presentation_ok(p: &Presentation, k: usize) -> bool {
    let n = k.saturating_sub(1);
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (_, s, t, _) in &p.arrows {
        *mult.entry((*s, *t)).or_default() += 1;
    }
    let chain = mult.len() == (2 * n).saturating_sub(1) && mult.values().all(|&c| c == 2) && {
        let mut outs = vec![0; p.num_vertices()];
        let mut ins = vec![0; p.num_vertices()];
        for (s, t) in mult.keys() {
            outs[*s] += 1;
            ins[*t] += 1;
        }
        outs.iter().all(|&o| o <= 1) && ins.iter().all(|&i| i <= 1)
    };
    p.num_vertices() == 2 * n && chain && p.relations.len() == (2 * n).saturating_sub(2) && p.commutativity_shape()
}

fn run<T>(name: &str, out: &mut Vec<CheckResult>, f: impl FnOnce() -> Result<T>, judge: impl FnOnce(T) -> (bool, &'static str, Value)) {
    match f() {
        Ok(v) => {
            let (pass, reason, data) = judge(v);
            out.push(CheckResult::new(name, pass, reason, data));
        }
        Err(e) => out.push(CheckResult::error(name, &e)),
    }
}

/// Run the selected suites on (q, w). Errors only for unusable input
/// (unknown letters, non-reduced words); every check outcome is a verdict.
pub fn verify<F: Field>(q: &Quiver, w: &Word, suite: Suite, seed: u64) -> Result<WordRun> {
    let input = WordContext::<F>::new(q, w)?;
    let names: Vec<&str> = [(Suite::Tilting, TILTING), (Suite::Endalg, ENDALG), (Suite::Gldim, GLDIM)]
        .iter()
        .filter(|(s, _)| suite.has(*s))
        .flat_map(|(_, n)| n.iter().copied())
        .collect();
    let sw = match &input.sorting {
        Sortability::Sortable(f) => f.word(),
        Sortability::Failure { .. } => {
            let checks = names.iter().map(|n| CheckResult::skip(n, "not c-sortable")).collect();
            return Ok(WordRun { sorting_word: None, checks });
        }
    };
    // the c-sorting word has the same Π_w and is the one the theory is about
    let ctx = if sw == *w { input } else { WordContext::<F>::new(q, &sw)? };
    let mut out = Vec::new();
    if suite.has(Suite::Tilting) {
        tilting_suite(&ctx, seed, &mut out);
    }
    if suite.has(Suite::Endalg) || suite.has(Suite::Gldim) {
        endalg_and_gldim(&ctx, suite, seed, &mut out);
    }
    Ok(WordRun { sorting_word: Some(sw), checks: out })
}

fn tilting_suite<F: Field>(ctx: &WordContext<F>, seed: u64, out: &mut Vec<CheckResult>) {
    run(
        "dimension-oracle",
        out,
        || {
            let mut rows = Vec::new();
            for d in 0..=ctx.bound.max(0) + 1 {
                for u in 0..ctx.quiver.n() {
                    rows.push((u, d, ctx.pi.dim_column_degree(u, d), preprojective_dim(&ctx.quiver, d as usize, u)));
                }
            }
            Ok(rows)
        },
        |rows| {
            let pass = rows.iter().all(|r| r.2 == r.3);
            (pass, "dim Π_d e_u differs from the Coxeter oracle", json!(rows))
        },
    );
    run("prefix-truncation", out, || ctx.truncate_prefix_check(), |r| (r.pass, "(Π_w)_{≤i} differs from the prefix truncation", json!(r.rows)));
    run(
        "layer-columns",
        out,
        || (1..=ctx.len()).map(|i| ctx.layer_column_identity(i)).collect::<Result<Vec<bool>>>(),
        |v| (v.iter().all(|b| *b), "L^i e_v ≠ 0 for some v ≠ u_i", json!(v)),
    );
    run(
        "tilting-t",
        out,
        || tilting_check_hereditary(&ctx.t_summands(), ctx.quiver.n(), seed),
        |r| {
            let data = json!({"dims": ctx.t_summands().iter().map(|t| t.dim()).collect::<Vec<_>>(), "report": r});
            (r.pass, "T is not a tilting kQ-module", data)
        },
    );
    run("layer-identification", out, || layer_identification(ctx, seed), |v| (v.iter().all(|b| *b), "no isomorphism (Π_w e_u)_{m_{p_u}} ≅ L^{p_u}", json!(v)));
    run("hom-vanishing", out, || vanishing_check(ctx), |r| (r.pass, "nonzero stable Hom between M and a syzygy of M", json!(r)));
    run(
        "thick-generation",
        out,
        || thick_certificate(ctx, seed),
        |r| {
            let data = json!({"window": r.window, "reached": r.reached, "steps": r.steps.len(), "hereditary_resolutions": r.hereditary_resolutions, "tilting_coresolution": r.tilting_coresolution});
            (r.pass, "some shift of kQ not reached by the filtration", data)
        },
    );
    if let Some(k) = kronecker_power(ctx) {
        run("radical-powers", out, || radical_power_check(ctx, k), |(p, d)| (p, "(Π/I_{c^i}) is not a radical-power quotient", d));
    }
}

fn endalg_and_gldim<F: Field>(ctx: &WordContext<F>, suite: Suite, seed: u64, out: &mut Vec<CheckResult>) {
    if suite.has(Suite::Endalg) {
        run(
            "qw-degrees",
            out,
            || build_qw(&ctx.quiver, &ctx.word),
            |g| (g.degrees_consistent(), "stored arrow degree differs from the rule", json!({"arrows": g.len(), "text": g.to_text(&ctx.quiver)})),
        );
        run("negative-arrows", out, || build_qw(&ctx.quiver, &ctx.word).map(|g| negative_arrow_audit(&g)), |a| (a.pass, "negative arrow away from last occurrences", json!(a)));
        run("phi-surjection", out, || phi_report(ctx), |r| (r.pass, "arrow images do not generate End(M)", json!(r)));
    }
    let needs_f = suite.has(Suite::Endalg) || suite.has(Suite::Gldim);
    if !needs_f {
        return;
    }
    match compare_f(ctx) {
        Err(e) => {
            for n in if suite == Suite::Gldim { &["gldim-a", "gldim-b"][..] } else { &["f-bijection"][..] } {
                out.push(CheckResult::error(n, &e));
            }
        }
        Ok((rep, a, b)) => {
            let (pa, pb) = (a.presentation(), b.presentation());
            if suite.has(Suite::Endalg) {
                let mut pass = rep.pass && rep.dim_a == rep.dim_b;
                let mut data = json!({"report": rep, "a_w": presentation_json(&pa), "b_w": presentation_json(&pb)});
                if let Some(k) = kronecker_power(ctx) {
                    let shape = kronecker_presentation_ok(&pa, k);
                    pass &= shape;
                    data["kronecker_shape"] = json!(shape);
                }
                out.push(CheckResult::new("f-bijection", pass, "F̱ is not an isomorphism A_w → B_w", data));
            }
            if suite.has(Suite::Gldim) {
                let ga = a.global_dimension(GLDIM_CAP);
                let gb = b.global_dimension(GLDIM_CAP);
                out.push(CheckResult::new("gldim-a", ga.is_some_and(|g| g <= 2), "gl.dim A_w exceeds 2", json!({"gldim": ga, "cap": GLDIM_CAP})));
                out.push(CheckResult::new("gldim-b", ga.is_some() && ga == gb, "gl.dim B_w differs from gl.dim A_w", json!({"gldim": gb})));
            }
        }
    }
    if suite.has(Suite::Endalg) {
        if ctx.len() < 2 {
            out.push(CheckResult::skip("reduction", "single letter"));
        } else {
            run("reduction", out, || reduction_check(ctx, seed), |r| (r.pass, "reduction to the reflected word fails", json!(r)));
        }
        let v = ctx.letters[0];
        run("rho", out, || double_reflection_iso::<F>(&ctx.quiver, v, ctx.bound.max(0)), |r| (r.pass, "ρ is not an algebra isomorphism", json!(r)));
    }
}

/// One corpus entry.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub word: Word,
    pub run: std::result::Result<WordRun, Error>,
}

/// Every c-sortable element of length ≤ max_len, verified in parallel.
pub fn corpus<F: Field>(q: &Quiver, max_len: usize, suite: Suite, seed: u64) -> Vec<CorpusEntry> {
    let c = q.admissible_word();
    let words: Vec<Word> = Coxeter::new(q).sortable_words(&c, max_len).into_iter().map(|f| f.word()).filter(|w| !w.is_empty()).collect();
    par::map(&words, |w| CorpusEntry { word: w.clone(), run: verify::<F>(q, w, suite, seed) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::quiver::examples;

    fn verdicts(r: &WordRun) -> BTreeMap<String, Verdict> {
        r.checks.iter().map(|c| (c.name.clone(), c.verdict)).collect()
    }

    #[test]
    fn a3_word_passes_everything() {
        let r = verify::<Rat>(&examples::triangle(), &Word(vec![1, 2, 3, 1, 2, 1]), Suite::All, 7).unwrap();
        for c in &r.checks {
            assert_eq!(c.verdict, Verdict::Pass, "{}: {}", c.name, c.reason);
        }
        assert_eq!(r.checks.len(), TILTING.len() + ENDALG.len() + GLDIM.len());
        let f = r.checks.iter().find(|c| c.name == "f-bijection").unwrap();
        assert_eq!(f.data["a_w"]["text"], "quiver { v1 v2 v3; a: v1 -> v2 deg 0; b: v2 -> v3 deg 0; } relations { a*b; }");
    }

    #[test]
    fn other_expression_uses_sorting_word() {
        let r = verify::<Rat>(&examples::triangle(), &Word(vec![1, 2, 3, 2, 1, 2]), Suite::Tilting, 7).unwrap();
        assert_eq!(r.sorting_word, Some(Word(vec![1, 2, 3, 1, 2, 1])));
        assert!(r.checks.iter().all(|c| c.verdict == Verdict::Pass));
    }

    #[test]
    fn non_sortable_skips() {
        let r = verify::<Rat>(&examples::a2(), &Word(vec![2, 1]), Suite::Tilting, 1).unwrap();
        assert_eq!(r.checks.len(), TILTING.len());
        assert!(r.checks.iter().all(|c| c.verdict == Verdict::Skip && c.reason == "not c-sortable"));
        assert!(verify::<Rat>(&examples::a2(), &Word(vec![1, 1]), Suite::All, 1).is_err());
    }

    #[test]
    fn kronecker_family() {
        for k in 2..=4usize {
            let w = Word((0..k).flat_map(|_| [1, 2]).collect());
            let r = verify::<Rat>(&examples::kronecker(), &w, Suite::All, 3).unwrap();
            let v = verdicts(&r);
            assert_eq!(v["radical-powers"], Verdict::Pass);
            for c in &r.checks {
                assert_eq!(c.verdict, Verdict::Pass, "k={k} {}: {}", c.name, c.reason);
            }
            let g = r.checks.iter().find(|c| c.name == "gldim-a").unwrap();
            assert_eq!(g.data["gldim"], if k == 2 { 1 } else { 2 });
        }
    }

    #[test]
    fn a2_corpus() {
        let runs = corpus::<Rat>(&examples::a2(), 3, Suite::All, 1);
        assert_eq!(runs.len(), 4);
        for e in &runs {
            let r = e.run.as_ref().unwrap();
            assert!(r.checks.iter().all(|c| c.verdict != Verdict::Fail), "{:?} {:?}", e.word, r.checks);
        }
    }
}
