//! Acceptance run: one PASS/FAIL line per criterion, exact equality
//! throughout. A criterion that fails for a known, explained reason is
//! printed as FAIL and the test pins down exactly that failure.

use preproj::algebra::GradedAlgebra;
use preproj::context::{ideal_for_word, WordContext};
use preproj::coxeter::Coxeter;
use preproj::endo::compare_f;
use preproj::hereditary::{layer_identification, gldim_harness, tilting_check_hereditary};
use preproj::oracle::{preprojective_dim, sortable_count_brute};
use preproj::quiver::{examples, Quiver, Word};
use preproj::report::diagrams;
use preproj::verify::{corpus, kronecker_presentation_ok, radical_power_check, CorpusEntry, Suite, Verdict, GLDIM_CAP};
use preproj::Rat;
use std::collections::BTreeMap;
use std::time::Instant;

const SEED: u64 = 20240611;
const PATH_ALGEBRA_AB: &str = "quiver { v1 v2 v3; a: v1 -> v2 deg 0; b: v2 -> v3 deg 0; } relations { a*b; }";

fn line(n: usize, pass: bool, detail: &str, t: Instant) {
    println!("criterion {n}: {} ({detail}) [{:.1}s]", if pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
}

fn kron_word(k: usize) -> Word {
    Word((0..k).flat_map(|_| [1, 2]).collect())
}

fn criterion_1() -> bool {
    let t = Instant::now();
    let q = examples::triangle();
    let w = Word(vec![1, 2, 3, 1, 2, 1]);
    let ctx = WordContext::<Rat>::new(&q, &w).unwrap();
    let fact = ctx.factorization().unwrap().display();
    let blocks_ok = fact == "c0=1 2 3 | c1=1 2 | c2=1";
    let golden = include_str!("data/a3_piw_diagrams.txt");
    let diagrams_ok = format!("{}\n", diagrams(&ctx.piw, &ctx.quiver, "Pi_w")) == golden;
    // T = L^3 ⊕ L^5 ⊕ L^6
    let mut p: Vec<usize> = ctx.p_positions();
    p.sort_unstable();
    let tilt = tilting_check_hereditary(&ctx.t_summands(), 3, SEED).unwrap();
    let layers = layer_identification(&ctx, SEED).unwrap();
    let (f, a, b) = compare_f(&ctx).unwrap();
    let (pa, pb) = (a.presentation().to_text(), b.presentation().to_text());
    let gl = a.global_dimension(GLDIM_CAP);
    let pass = blocks_ok
        && diagrams_ok
        && p == vec![3, 5, 6]
        && tilt.pass
        && layers.iter().all(|x| *x)
        && f.dim_a == 5
        && f.dim_b == 5
        && f.pass
        && pa == PATH_ALGEBRA_AB
        && pb == PATH_ALGEBRA_AB
        && gl == Some(2);
    line(1, pass, &format!("{fact}; T at positions {p:?}; dim A_w = {} = dim B_w = {}; gl.dim {gl:?}", f.dim_a, f.dim_b), t);
    pass
}

/// (radical powers ok, presentation shape ok, gl.dim) for w = c^{n+1}.
fn kronecker_case(n: usize) -> (bool, bool, Option<usize>) {
    let ctx = WordContext::<Rat>::new(&examples::kronecker(), &kron_word(n + 1)).unwrap();
    let (rad, _) = radical_power_check(&ctx, n + 1).unwrap();
    let (f, a, _) = compare_f(&ctx).unwrap();
    let shape = f.pass && kronecker_presentation_ok(&a.presentation(), n + 1);
    (rad, shape, a.global_dimension(GLDIM_CAP))
}

fn criterion_2() -> bool {
    let t = Instant::now();
    let rows: Vec<(bool, bool, Option<usize>)> = (1..=3).map(kronecker_case).collect();
    let pass = rows.iter().all(|r| r.0 && r.1 && r.2 == Some(2));
    line(2, pass, &format!("(radical powers, presentation, gl.dim) for n = 1..3: {rows:?}"), t);
    // At n = 1 the presentation is the Kronecker quiver with no relations,
    // which is hereditary: gl.dim 1, not 2. Everything else holds.
    assert_eq!(rows, vec![(true, true, Some(1)), (true, true, Some(2)), (true, true, Some(2))]);
    pass
}

fn corpus_runs() -> Vec<(&'static str, Vec<CorpusEntry>)> {
    [("a2", 6), ("a3", 6), ("kronecker", 8)]
        .into_iter()
        .map(|(name, l)| {
            let q = examples::by_name(name).unwrap();
            (name, corpus::<Rat>(&q, l, Suite::All, SEED))
        })
        .collect()
}

fn verdicts(runs: &[(&str, Vec<CorpusEntry>)], names: &[&str]) -> (usize, Vec<String>) {
    let mut seen = 0;
    let mut bad = Vec::new();
    for (q, entries) in runs {
        for e in entries {
            let Ok(r) = &e.run else {
                bad.push(format!("{q} {}: error", e.word));
                continue;
            };
            for c in r.checks.iter().filter(|c| names.contains(&c.name.as_str())) {
                match c.verdict {
                    Verdict::Pass => seen += 1,
                    Verdict::Skip if c.name == "reduction" && e.word.len() == 1 => {}
                    _ => bad.push(format!("{q} {} {}: {} {}", e.word, c.name, c.verdict, c.reason)),
                }
            }
        }
    }
    (seen, bad)
}

fn criterion_3(runs: &[(&str, Vec<CorpusEntry>)], t: Instant) -> bool {
    let counts: BTreeMap<&str, usize> = runs.iter().map(|(q, e)| (*q, e.len())).collect();
    // the enumerated words are exactly the c-sortable elements
    let brute_ok = runs.iter().all(|(name, e)| {
        let q = examples::by_name(name).unwrap();
        let l = if *name == "kronecker" { 8 } else { 6 };
        sortable_count_brute(&q, &q.admissible_word(), l).unwrap() == e.len() + 1
    });
    let (seen, bad) = verdicts(runs, &["hom-vanishing", "thick-generation"]);
    let pass = brute_ok && bad.is_empty() && seen == 2 * counts.values().sum::<usize>();
    line(3, pass, &format!("words per quiver {counts:?}; {seen} checks; failures {bad:?}"), t);
    pass
}

fn criterion_4() -> bool {
    let t = Instant::now();
    let pairs: Vec<(Quiver, Vec<u32>, Vec<u32>)> = vec![
        (examples::triangle(), vec![1, 2, 3, 1, 2, 1], vec![1, 2, 3, 2, 1, 2]),
        (examples::a2(), vec![1, 2, 1], vec![2, 1, 2]),
        (examples::a3_linear(), vec![1, 3], vec![3, 1]),
        (examples::a3_linear(), vec![1, 2, 1, 3], vec![2, 1, 2, 3]),
        (examples::a4(), vec![1, 3, 2, 4], vec![3, 1, 4, 2]),
        (examples::d4(), vec![1, 2, 1, 3], vec![2, 1, 2, 3]),
        (examples::a3_linear(), vec![1, 2, 3, 1, 2, 1], vec![3, 2, 3, 1, 2, 3]),
    ];
    let mut ok = 0;
    for (q, a, b) in &pairs {
        let cox = Coxeter::new(q);
        assert!(a != b && cox.element_of(&Word(a.clone())).unwrap() == cox.element_of(&Word(b.clone())).unwrap());
        let alg = GradedAlgebra::<Rat>::preprojective(q, a.len() as i32).unwrap();
        let idx = |w: &[u32]| w.iter().map(|&u| q.index_of(u).unwrap()).collect::<Vec<_>>();
        let ia = ideal_for_word(&alg, &idx(a), None).unwrap();
        let ib = ideal_for_word(&alg, &idx(b), None).unwrap();
        if ia.canonical() == ib.canonical() {
            ok += 1;
        }
    }
    let pass = ok == pairs.len() && ok >= 5;
    line(4, pass, &format!("{ok}/{} pairs give identical per-degree subspaces", pairs.len()), t);
    pass
}

fn criterion_5() -> bool {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut dynkin_ok = true;
    for name in ["a2", "a3", "a3lin", "a4", "d4", "kronecker"] {
        let q = examples::by_name(name).unwrap();
        let alg = GradedAlgebra::<Rat>::preprojective(&q, 8).unwrap();
        for u in 0..q.n() {
            let seq: Vec<usize> = (0..=8).map(|d| alg.dim_column_degree(u, d)).collect();
            let oracle: Vec<usize> = (0..=8).map(|d| preprojective_dim(&q, d, u)).collect();
            if seq != oracle {
                bad.push(format!("{name} e{u}: {seq:?} vs {oracle:?}"));
            }
            if q.is_dynkin() {
                let first = seq.iter().position(|&x| x == 0);
                dynkin_ok &= first.is_some_and(|f| seq[f..].iter().all(|&x| x == 0));
            }
        }
    }
    let pass = bad.is_empty() && dynkin_ok;
    line(5, pass, &format!("mismatches {bad:?}; Dynkin sequences vanish: {dynkin_ok}"), t);
    pass
}

fn criterion_6(runs: &[(&str, Vec<CorpusEntry>)], t: Instant) -> bool {
    let (seen, bad) = verdicts(runs, &["tilting-t", "layer-identification"]);
    let pass = bad.is_empty() && seen > 0;
    line(6, pass, &format!("{seen} checks; failures {bad:?}"), t);
    pass
}

fn criterion_7(runs: &[(&str, Vec<CorpusEntry>)], t: Instant) -> bool {
    let (seen, bad) = verdicts(runs, &["reduction"]);
    let multi: usize = runs.iter().map(|(_, e)| e.iter().filter(|x| x.word.len() >= 2).count()).sum();
    let pass = bad.is_empty() && seen == multi;
    line(7, pass, &format!("{seen}/{multi} words with at least two letters; failures {bad:?}"), t);
    pass
}

fn criterion_8() -> bool {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for name in ["a2", "a3lin"] {
        let r = gldim_harness::<Rat>(&examples::by_name(name).unwrap(), 20, SEED).unwrap();
        let worst = r.rows.iter().filter_map(|row| row.gldim.gldim).max();
        pass &= r.pass && r.rows.iter().all(|row| row.samples == 20);
        parts.push(format!("{name}: {} tilting modules, max gl.dim {worst:?}", r.tilting_count));
    }
    line(8, pass, &parts.join("; "), t);
    pass
}

fn main() {
    let mut results = vec![criterion_1(), criterion_2()];
    let t = Instant::now();
    let runs = corpus_runs();
    results.push(criterion_3(&runs, t));
    results.push(criterion_4());
    results.push(criterion_5());
    results.push(criterion_6(&runs, t));
    results.push(criterion_7(&runs, t));
    results.push(criterion_8());
    // criterion 2 is the one known failure (gl.dim 1 at n = 1)
    assert_eq!(results, vec![true, false, true, true, true, true, true, true]);
    println!("acceptance: 7 of 8 criteria pass; criterion 2 fails as expected");
}
