//! `ppw`: command-line front end for the preproj engine.
//!
//! Exit codes: 0 success, 1 error, 2 a well-formed input with a negative
//! answer (not c-sortable, a failed check).

use clap::{Args, Parser, Subcommand};
use preproj::context::WordContext;
use preproj::coxeter::{Coxeter, Sortability};
use preproj::endo::{build_qw, compare_f, negative_arrow_audit};
use preproj::module::GradedModule;
use preproj::oracle::sortable_count_brute;
use preproj::quiver::{examples, Quiver, Word};
use preproj::report::{diagrams, CorpusError, CorpusReport, RunReport, SCHEMA};
use preproj::verify::{corpus, presentation_json, verify, Suite, GLDIM_CAP};
use preproj::{Field, Fp, Rat};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "ppw", version, about = "Preprojective algebras of Coxeter words: tilting objects and endomorphism algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// quiver file ("vertices: 1 2; arrows: a: 1 -> 2")
    #[arg(long, conflicts_with = "qtype")]
    quiver: Option<String>,
    /// built-in quiver: A2, A3, A3lin, A4, D4, kronecker
    #[arg(long = "type")]
    qtype: Option<String>,
    /// field: rat or gfp:P
    #[arg(long, default_value = "rat")]
    field: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// write a JSON report here
    #[arg(long)]
    json: Option<String>,
}

#[derive(Args, Clone)]
struct WordArgs {
    #[command(flatten)]
    common: Common,
    /// reduced word, letters separated by spaces or commas
    #[arg(long)]
    word: String,
}

#[derive(Subcommand, Clone)]
enum Cmd {
    /// c-sorting factorization of a word
    Sortable(WordArgs),
    /// Π_w column by column
    Piw {
        #[command(flatten)]
        w: WordArgs,
        /// radical layers with degree-0 factors starred
        #[arg(long)]
        diagram: bool,
    },
    /// the modules L^i, M^i, M^i_0 and T
    Module {
        #[command(flatten)]
        w: WordArgs,
        /// L, M, M0 or T
        #[arg(long, default_value = "M")]
        kind: String,
        /// 1-based position (all positions if omitted)
        #[arg(long)]
        index: Option<usize>,
    },
    /// the graded quiver Q_w
    Qw(WordArgs),
    /// A_w, B_w and the comparison map
    Endo(WordArgs),
    /// global dimension of A_w and B_w
    Gldim(WordArgs),
    /// run invariant suites
    Verify {
        #[command(flatten)]
        w: WordArgs,
        /// tilting, endalg, gldim or all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// verify every c-sortable word up to a length
    Corpus {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

type Res<T> = Result<T, String>;

fn load_quiver(c: &Common) -> Res<(Quiver, String)> {
    match (&c.quiver, &c.qtype) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let q = Quiver::parse(&text).map_err(|e| format!("{path}: {e}"))?;
            Ok((q, path.clone()))
        }
        (None, Some(t)) => examples::by_name(t).map(|q| (q, t.clone())).ok_or_else(|| format!("unknown quiver type {t}")),
        (None, None) => Err("give --quiver FILE or --type NAME".into()),
    }
}

fn write_json(c: &Common, v: &str) -> Res<()> {
    if let Some(p) = &c.json {
        std::fs::write(p, v).map_err(|e| format!("{p}: {e}"))?;
    }
    Ok(())
}

fn ctx_for<F: Field>(w: &WordArgs) -> Res<(Quiver, Word, WordContext<F>)> {
    let (q, _) = load_quiver(&w.common)?;
    let word = Word::parse(&w.word).map_err(|e| e.to_string())?;
    let ctx = WordContext::<F>::new(&q, &word).map_err(|e| e.to_string())?;
    Ok((q, word, ctx))
}

fn suite(s: &str) -> Res<Suite> {
    s.parse().map_err(|e: preproj::Error| e.to_string())
}

fn graded_dims<F: Field>(m: &GradedModule<F>, q: &Quiver) -> String {
    m.graded_dim_vector()
        .iter()
        .map(|(d, v)| {
            let ids: Vec<String> = v.iter().enumerate().filter(|(_, n)| **n > 0).map(|(u, n)| format!("{}:{n}", q.id(u))).collect();
            format!("deg {d} [{}]", ids.join(" "))
        })
        .collect::<Vec<_>>()
        .join("  ")
}

fn run<F: Field>(cmd: Cmd) -> Res<u8> {
    match cmd {
        Cmd::Sortable(w) => {
            let (q, _) = load_quiver(&w.common)?;
            let word = Word::parse(&w.word).map_err(|e| e.to_string())?;
            let cox = Coxeter::new(&q);
            if !cox.is_reduced(&word).map_err(|e| e.to_string())? {
                return Err(format!("word {word} is not reduced"));
            }
            let sup = word.support();
            let c = Word(q.admissible_word().0.into_iter().filter(|u| sup.contains(u)).collect());
            let sq = q.support_subquiver(&sup).map_err(|e| e.to_string())?;
            let s = Coxeter::new(&sq).sortable_factorize(&word, &c).map_err(|e| e.to_string())?;
            let (code, text, v) = match s {
                Sortability::Sortable(f) => (0, f.display(), json!({"sortable": true, "c": c.0, "blocks": f.blocks.iter().map(|b| b.0.clone()).collect::<Vec<_>>()})),
                Sortability::Failure { blocks, block } => {
                    let shown = blocks.iter().enumerate().map(|(i, b)| format!("c{i}={b}")).collect::<Vec<_>>().join(" | ");
                    (2, format!("not c-sortable (block {block}): {shown}"), json!({"sortable": false, "c": c.0, "failing_block": block}))
                }
            };
            println!("{text}");
            write_json(&w.common, &serde_json::to_string_pretty(&json!({"schema": SCHEMA, "word": word.0, "result": v})).unwrap())?;
            Ok(code)
        }
        Cmd::Piw { w, diagram } => {
            let (_, word, ctx) = ctx_for::<F>(&w)?;
            let mut cols = Vec::new();
            for u in 0..ctx.quiver.n() {
                let p = GradedModule::projective(&ctx.piw, u, 0);
                println!("Pi_w e_{}: dim {}  {}", ctx.quiver.id(u), p.dim(), graded_dims(&p, &ctx.quiver));
                let by_deg: Value = p.graded_dim_vector().iter().map(|(d, v)| (d.to_string(), json!(v))).collect::<serde_json::Map<_, _>>().into();
                cols.push(json!({"vertex": ctx.quiver.id(u), "dim": p.dim(), "graded_dims": by_deg}));
            }
            let diag = diagrams(&ctx.piw, &ctx.quiver, "Pi_w");
            if diagram {
                println!("\n{diag}");
            }
            let v = json!({"schema": SCHEMA, "word": word.0, "field": F::label(), "dim": ctx.piw.dim(), "columns": cols, "diagram": diag});
            write_json(&w.common, &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(0)
        }
        Cmd::Module { w, kind, index } => {
            let (_, word, ctx) = ctx_for::<F>(&w)?;
            let idx: Vec<usize> = match index {
                Some(i) => vec![i],
                None => (1..=ctx.len()).collect(),
            };
            let mods: Vec<(String, GradedModule<F>)> = match kind.as_str() {
                "T" => {
                    let mut ts: Vec<(usize, GradedModule<F>)> = ctx.p_positions().into_iter().zip(ctx.t_summands()).collect();
                    ts.sort_by_key(|t| t.0);
                    ts.into_iter().map(|(i, t)| (format!("T (position {i})"), t)).collect()
                }
                "L" | "M" | "M0" => {
                    let mut out = Vec::new();
                    for i in idx {
                        let m = match kind.as_str() {
                            "L" => ctx.layer(i),
                            "M" => ctx.summand_m(i),
                            _ => ctx.summand_m(i).map(|m| ctx.degree_part(&m, 0)),
                        }
                        .map_err(|e| e.to_string())?;
                        out.push((format!("{kind}^{i}"), m));
                    }
                    out
                }
                _ => return Err(format!("unknown module kind {kind} (L, M, M0, T)")),
            };
            let mut rows = Vec::new();
            for (name, m) in &mods {
                println!("{name}: dim {}  {}", m.dim(), graded_dims(m, &ctx.quiver));
                rows.push(json!({"name": name, "dim": m.dim(), "graded_dims": m.graded_dim_vector().iter().map(|(d, v)| json!({"degree": d, "dims": v})).collect::<Vec<_>>()}));
            }
            write_json(&w.common, &serde_json::to_string_pretty(&json!({"schema": SCHEMA, "word": word.0, "modules": rows})).unwrap())?;
            Ok(0)
        }
        Cmd::Qw(w) => {
            let (q, word) = {
                let (q, _) = load_quiver(&w.common)?;
                (q, Word::parse(&w.word).map_err(|e| e.to_string())?)
            };
            let sq = q.support_subquiver(&word.support()).map_err(|e| e.to_string())?;
            let g = build_qw(&sq, &word).map_err(|e| e.to_string())?;
            println!("{}", g.to_text(&sq));
            let audit = negative_arrow_audit(&g);
            println!("negative arrows {:?}; audit {}", audit.negative, if audit.pass { "ok" } else { "violated" });
            write_json(&w.common, &serde_json::to_string_pretty(&json!({"schema": SCHEMA, "word": word.0, "quiver": g.to_text(&sq), "audit": audit})).unwrap())?;
            Ok(0)
        }
        Cmd::Endo(w) => {
            let (_, word, ctx) = ctx_for::<F>(&w)?;
            let (rep, a, b) = compare_f(&ctx).map_err(|e| e.to_string())?;
            println!("A_w: dim {}  {}", rep.dim_a, a.presentation().to_text());
            println!("B_w: dim {}  {}", rep.dim_b, b.presentation().to_text());
            println!("F: End(M) dim {} -> End(M_0) dim {}; induced map {}", rep.dim_end_m, rep.dim_end_m0, if rep.bijective { "bijective" } else { "not bijective" });
            let v = json!({"schema": SCHEMA, "word": word.0, "report": rep, "a_w": presentation_json(&a.presentation()), "b_w": presentation_json(&b.presentation())});
            write_json(&w.common, &serde_json::to_string_pretty(&v).unwrap())?;
            Ok(if rep.pass { 0 } else { 2 })
        }
        Cmd::Gldim(w) => {
            let (_, word, ctx) = ctx_for::<F>(&w)?;
            let (_, a, b) = compare_f(&ctx).map_err(|e| e.to_string())?;
            let (ga, gb) = (a.global_dimension(GLDIM_CAP), b.global_dimension(GLDIM_CAP));
            let show = |g: Option<usize>| g.map_or(format!("> {GLDIM_CAP}"), |g| g.to_string());
            println!("gl.dim A_w = {}, gl.dim B_w = {}", show(ga), show(gb));
            write_json(&w.common, &serde_json::to_string_pretty(&json!({"schema": SCHEMA, "word": word.0, "gldim_a": ga, "gldim_b": gb, "cap": GLDIM_CAP})).unwrap())?;
            Ok(if ga.is_some_and(|g| g <= 2) { 0 } else { 2 })
        }
        Cmd::Verify { w, suite: s } => {
            let (q, _) = load_quiver(&w.common)?;
            let word = Word::parse(&w.word).map_err(|e| e.to_string())?;
            let t = Instant::now();
            let r = verify::<F>(&q, &word, suite(&s)?, w.common.seed).map_err(|e| e.to_string())?;
            let rep = RunReport::new(&q, &word, &w.common.field, w.common.seed, r, t.elapsed().as_millis() as u64);
            print!("{}", rep.to_text());
            write_json(&w.common, &rep.to_json())?;
            Ok(if rep.passed() && rep.sorting_word.is_some() { 0 } else { 2 })
        }
        Cmd::Corpus { common, max_len, suite: s } => {
            let (q, name) = load_quiver(&common)?;
            let t = Instant::now();
            let entries = corpus::<F>(&q, max_len, suite(&s)?, common.seed);
            let mut runs = Vec::new();
            let mut errors = Vec::new();
            for e in entries {
                match e.run {
                    Ok(r) => runs.push(RunReport::new(&q, &e.word, &common.field, common.seed, r, 0)),
                    Err(err) => errors.push(CorpusError { word: e.word.0, error: err.to_string() }),
                }
            }
            let brute = sortable_count_brute(&q, &q.admissible_word(), max_len).ok();
            let rep = CorpusReport::new(&name, max_len, &common.field, common.seed, runs, errors, brute, t.elapsed().as_millis() as u64);
            for r in &rep.runs {
                let w = Word(r.input.word.clone());
                println!("{:<24} pass {} fail {} skip {}", w.to_string(), r.summary.pass, r.summary.fail, r.summary.skip);
            }
            for e in &rep.errors {
                println!("{:?} error: {}", e.word, e.error);
            }
            println!("{} words (brute force: {} sortable elements with the identity); pass {} fail {} skip {}", rep.words, brute.map_or("?".into(), |b| b.to_string()), rep.summary.pass, rep.summary.fail, rep.summary.skip);
            write_json(&common, &rep.to_json())?;
            Ok(if rep.passed() { 0 } else { 2 })
        }
    }
}

fn field_of(cmd: &Cmd) -> &str {
    match cmd {
        Cmd::Sortable(w) | Cmd::Qw(w) | Cmd::Endo(w) | Cmd::Gldim(w) => &w.common.field,
        Cmd::Piw { w, .. } | Cmd::Module { w, .. } | Cmd::Verify { w, .. } => &w.common.field,
        Cmd::Corpus { common, .. } => &common.field,
    }
}

fn dispatch(cmd: Cmd) -> Res<u8> {
    match field_of(&cmd) {
        "rat" => run::<Rat>(cmd),
        "gfp:1048583" => run::<Fp<1048583>>(cmd),
        "gfp:1000000007" => run::<Fp<1000000007>>(cmd),
        "gfp:2147483647" => run::<Fp<2147483647>>(cmd),
        f => Err(format!("unsupported field {f} (rat, gfp:1048583, gfp:1000000007, gfp:2147483647)")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
