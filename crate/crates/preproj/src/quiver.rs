//! Finite acyclic quivers, double quivers and paths.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg::Mat;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    /// vertex indices (positions in `Quiver::vertices`)
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<u32>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// Build and validate. Arrow endpoints are vertex ids.
    pub fn new(vertices: Vec<u32>, arrows: Vec<(String, u32, u32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(*v) {
                return Err(Error::Duplicate(format!("vertex {v}")));
            }
        }
        let mut names = BTreeSet::new();
        let mut arr = Vec::new();
        for (name, s, t) in arrows {
            if !names.insert(name.clone()) {
                return Err(Error::Duplicate(format!("arrow {name}")));
            }
            let si = vertices.iter().position(|x| *x == s).ok_or(Error::UnknownVertex(s))?;
            let ti = vertices.iter().position(|x| *x == t).ok_or(Error::UnknownVertex(t))?;
            if si == ti {
                return Err(Error::LoopArrow(name));
            }
            arr.push(Arrow { name, source: si, target: ti });
        }
        let q = Quiver { vertices, arrows: arr };
        q.topological_order()?;
        Ok(q)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_quiver(text)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, id: u32) -> Result<usize> {
        self.vertices.iter().position(|x| *x == id).ok_or(Error::UnknownVertex(id))
    }

    pub fn id(&self, idx: usize) -> u32 {
        self.vertices[idx]
    }

    /// Topological order of vertex indices, ties broken by ascending id.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut done = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n).filter(|&v| !done[v] && indeg[v] == 0).min_by_key(|&v| self.vertices[v]);
            let Some(v) = next else {
                return Err(Error::Cycle(self.find_cycle(&done)));
            };
            done[v] = true;
            order.push(v);
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                }
            }
        }
        Ok(order)
    }

    fn find_cycle(&self, done: &[bool]) -> Vec<u32> {
        // every remaining vertex has an incoming arrow from a remaining vertex;
        // walk backwards until a repeat
        let start = (0..self.n()).find(|&v| !done[v]).unwrap();
        let mut path = vec![start];
        loop {
            let cur = *path.last().unwrap();
            let prev = self.arrows.iter().find(|a| a.target == cur && !done[a.source]).unwrap().source;
            if let Some(pos) = path.iter().position(|&x| x == prev) {
                let mut cyc: Vec<u32> = path[pos..].iter().map(|&i| self.vertices[i]).collect();
                cyc.reverse();
                return cyc;
            }
            path.push(prev);
        }
    }

    /// The admissible Coxeter word: vertices in topological order.
    pub fn admissible_word(&self) -> Word {
        Word(self.topological_order().expect("acyclic").into_iter().map(|i| self.vertices[i]).collect())
    }

    /// Full subquiver on the given vertex ids (kept in the original order).
    pub fn support_subquiver(&self, ids: &BTreeSet<u32>) -> Result<Quiver> {
        for id in ids {
            self.index_of(*id)?;
        }
        let vertices: Vec<u32> = self.vertices.iter().copied().filter(|v| ids.contains(v)).collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| ids.contains(&self.vertices[a.source]) && ids.contains(&self.vertices[a.target]))
            .map(|a| (a.name.clone(), self.vertices[a.source], self.vertices[a.target]))
            .collect();
        Quiver::new(vertices, arrows)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    /// Reverse every arrow incident to v.
    pub fn mutate(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.source == v || a.target == v {
                    Arrow { name: a.name.clone(), source: a.target, target: a.source }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    /// Number of edges between u and v in the underlying graph.
    pub fn edges_between(&self, u: usize, v: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.source == u && a.target == v) || (a.source == v && a.target == u))
            .count()
    }

    /// Symmetric Cartan form: 2 on the diagonal, minus the edge count elsewhere.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n)
            .map(|u| (0..n).map(|v| if u == v { 2 } else { -(self.edges_between(u, v) as i64) }).collect())
            .collect()
    }

    /// Dynkin iff the symmetric form is positive definite.
    pub fn is_dynkin(&self) -> bool {
        let g = self.gram();
        let n = self.n();
        for k in 1..=n {
            let m = Mat::from_rows(k, k, (0..k).map(|i| (0..k).map(|j| Rat::from_i64(g[i][j])).collect()).collect());
            if determinant(&m).signum() <= 0 {
                return false;
            }
        }
        true
    }

    /// Number of paths from u to v (indices), including the trivial path.
    pub fn path_counts(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        let order = self.topological_order().expect("acyclic");
        let mut c = vec![vec![0u64; n]; n];
        for u in 0..n {
            c[u][u] = 1;
        }
        // process targets in topological order
        for &t in &order {
            for a in &self.arrows {
                if a.target == t {
                    for u in 0..n {
                        c[u][t] += c[u][a.source];
                    }
                }
            }
        }
        c
    }

    pub fn to_text(&self) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let arrs: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, self.vertices[a.source], self.vertices[a.target]))
            .collect();
        format!("vertices: {};\narrows: {}\n", vs.join(" "), arrs.join("; "))
    }
}

fn determinant(m: &Mat<Rat>) -> Rat {
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else { return Rat::zero() };
        if p != c {
            for j in 0..n {
                let x = a.get(p, j).clone();
                let y = a.get(c, j).clone();
                a.set(p, j, y);
                a.set(c, j, x);
            }
            det = -det;
        }
        let piv = a.get(c, c).clone();
        det = det * piv.clone();
        let inv = piv.inv();
        for r in c + 1..n {
            let f = a.get(r, c).mul_ref(&inv);
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(c, j).clone();
                a.get_mut(r, j).sub_mul_assign(&f, &v);
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i32,
    /// index of the underlying base arrow
    pub base: usize,
    pub starred: bool,
}

/// Base arrows first (indices 0..k), then their stars (k..2k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleQuiver {
    pub base: Quiver,
    pub arrows: Vec<DArrow>,
}

impl DoubleQuiver {
    pub fn new(base: &Quiver) -> Self {
        let mut arrows: Vec<DArrow> = base
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| DArrow { name: a.name.clone(), source: a.source, target: a.target, degree: 0, base: i, starred: false })
            .collect();
        arrows.extend(base.arrows.iter().enumerate().map(|(i, a)| DArrow {
            name: format!("{}*", a.name),
            source: a.target,
            target: a.source,
            degree: 1,
            base: i,
            starred: true,
        }));
        DoubleQuiver { base: base.clone(), arrows }
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn num_base(&self) -> usize {
        self.base.arrows.len()
    }

    /// The partner arrow (α ↔ α*).
    pub fn star(&self, a: usize) -> usize {
        let k = self.num_base();
        if a < k {
            a + k
        } else {
            a - k
        }
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn path_from_arrows(&self, arrows: &[usize], vertex_if_empty: usize) -> Option<Path> {
        if arrows.is_empty() {
            return Some(Path::trivial(vertex_if_empty));
        }
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return None;
            }
        }
        Some(Path {
            arrows: arrows.to_vec(),
            source: self.arrows[arrows[0]].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            degree: arrows.iter().map(|&a| self.arrows[a].degree).sum(),
        })
    }

    /// All paths from `from` to `to` of degree ≤ max_degree, ordered by
    /// length then lexicographically by arrow index.
    pub fn enumerate_paths(&self, from: usize, to: usize, max_degree: i32) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<usize>, usize, i32)> = vec![(Vec::new(), from, 0)];
        while let Some((p, v, d)) = stack.pop() {
            if v == to {
                out.push(Path {
                    source: from,
                    target: to,
                    degree: d,
                    arrows: p.clone(),
                });
            }
            for (i, a) in self.arrows.iter().enumerate() {
                if a.source == v && d + a.degree <= max_degree {
                    let mut q = p.clone();
                    q.push(i);
                    stack.push((q, a.target, d + a.degree));
                }
            }
        }
        out.sort_by(|a, b| a.arrows.len().cmp(&b.arrows.len()).then_with(|| a.arrows.cmp(&b.arrows)));
        out
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.base.vertices[p.source]);
        }
        p.arrows.iter().map(|&a| self.arrows[a].name.clone()).collect::<Vec<_>>().join(".")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
    pub degree: i32,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { arrows: Vec::new(), source: v, target: v, degree: 0 }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// self followed by o; None when not composable.
    pub fn compose(&self, o: &Path) -> Option<Path> {
        if self.target != o.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(&o.arrows);
        Some(Path { arrows, source: self.source, target: o.target, degree: self.degree + o.degree })
    }
}

// ---------------------------------------------------------------------------
// Words

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn parse(s: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: u32 = tok
                .trim_matches(|c| c == '(' || c == ')')
                .parse()
                .map_err(|_| Error::Invalid(format!("bad letter '{tok}' in word")))?;
            out.push(v);
        }
        Ok(Word(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.0.iter().copied().collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

// ---------------------------------------------------------------------------
// Parser

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Colon,
    Semi,
    Comma,
    ArrowTok,
    Eof,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().collect(), pos: 0, line: 1, col: 1, _src: src }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn next(&mut self) -> Result<(Tok, usize, usize)> {
        loop {
            match self.chars.get(self.pos) {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let Some(c) = self.chars.get(self.pos).copied() else { return Ok((Tok::Eof, line, col)) };
        match c {
            ':' => {
                self.bump();
                Ok((Tok::Colon, line, col))
            }
            ';' => {
                self.bump();
                Ok((Tok::Semi, line, col))
            }
            ',' => {
                self.bump();
                Ok((Tok::Comma, line, col))
            }
            '-' if self.chars.get(self.pos + 1) == Some(&'>') => {
                self.bump();
                self.bump();
                Ok((Tok::ArrowTok, line, col))
            }
            '→' => {
                self.bump();
                Ok((Tok::ArrowTok, line, col))
            }
            c if c.is_alphanumeric() || c == '_' || c == '\'' => {
                let mut s = String::new();
                while let Some(&c) = self.chars.get(self.pos) {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Ok((Tok::Word(s), line, col))
            }
            other => Err(Error::Parse { line, col, msg: format!("unexpected character '{other}'") }),
        }
    }
}

fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut lx = Lexer::new(text);
    let mut toks = Vec::new();
    loop {
        let t = lx.next()?;
        let eof = t.0 == Tok::Eof;
        toks.push(t);
        if eof {
            break;
        }
    }
    let mut i = 0;
    let err = |t: &(Tok, usize, usize), msg: &str| Error::Parse { line: t.1, col: t.2, msg: msg.to_string() };
    match &toks[i].0 {
        Tok::Word(w) if w == "vertices" => i += 1,
        _ => return Err(err(&toks[i], "expected 'vertices:'")),
    }
    if toks[i].0 != Tok::Colon {
        return Err(err(&toks[i], "expected ':' after 'vertices'"));
    }
    i += 1;
    let mut vertices = Vec::new();
    loop {
        match &toks[i].0 {
            Tok::Word(w) if w == "arrows" => break,
            Tok::Word(w) => {
                let v: u32 = w.parse().map_err(|_| err(&toks[i], "vertex ids must be positive integers"))?;
                if v == 0 {
                    return Err(err(&toks[i], "vertex ids must be positive integers"));
                }
                vertices.push(v);
                i += 1;
            }
            Tok::Semi | Tok::Comma => i += 1,
            Tok::Eof => break,
            _ => return Err(err(&toks[i], "unexpected token in vertex list")),
        }
    }
    let mut arrows = Vec::new();
    if toks[i].0 != Tok::Eof {
        i += 1; // 'arrows'
        if toks[i].0 != Tok::Colon {
            return Err(err(&toks[i], "expected ':' after 'arrows'"));
        }
        i += 1;
        loop {
            while matches!(toks[i].0, Tok::Semi | Tok::Comma) {
                i += 1;
            }
            if toks[i].0 == Tok::Eof {
                break;
            }
            let Tok::Word(name) = toks[i].0.clone() else { return Err(err(&toks[i], "expected arrow name")) };
            i += 1;
            if toks[i].0 != Tok::Colon {
                return Err(err(&toks[i], "expected ':' after arrow name"));
            }
            i += 1;
            let parse_v = |t: &(Tok, usize, usize)| -> Result<u32> {
                match &t.0 {
                    Tok::Word(w) => w.parse().map_err(|_| err(t, "expected vertex id")),
                    _ => Err(err(t, "expected vertex id")),
                }
            };
            let s = parse_v(&toks[i])?;
            i += 1;
            if toks[i].0 != Tok::ArrowTok {
                return Err(err(&toks[i], "expected '->'"));
            }
            i += 1;
            let t = parse_v(&toks[i])?;
            i += 1;
            arrows.push((name, s, t));
        }
    }
    Quiver::new(vertices, arrows)
}

// Some standard quivers.
pub mod examples {
    use super::Quiver;

    pub fn a2() -> Quiver {
        Quiver::parse("vertices: 1 2; arrows: a: 1 -> 2").unwrap()
    }
    pub fn a3_linear() -> Quiver {
        Quiver::parse("vertices: 1 2 3; arrows: a: 1 -> 2; b: 2 -> 3").unwrap()
    }
    /// The three-vertex quiver 1→2, 2→3, 1→3 used as the running example.
    pub fn triangle() -> Quiver {
        Quiver::parse("vertices: 1 2 3; arrows: a: 1 -> 2; b: 2 -> 3; c: 1 -> 3").unwrap()
    }
    pub fn a4() -> Quiver {
        Quiver::parse("vertices: 1 2 3 4; arrows: a: 1 -> 2; b: 2 -> 3; c: 3 -> 4").unwrap()
    }
    pub fn d4() -> Quiver {
        Quiver::parse("vertices: 1 2 3 4; arrows: a: 1 -> 2; b: 3 -> 2; c: 4 -> 2").unwrap()
    }
    pub fn kronecker() -> Quiver {
        Quiver::parse("vertices: 1 2; arrows: a: 1 -> 2; b: 1 -> 2").unwrap()
    }
    pub fn single() -> Quiver {
        Quiver::parse("vertices: 1").unwrap()
    }
    pub fn by_name(name: &str) -> Option<Quiver> {
        Some(match name.to_ascii_lowercase().as_str() {
            "a2" => a2(),
            "a3" | "triangle" => triangle(),
            "a3lin" | "a3linear" => a3_linear(),
            "a4" => a4(),
            "d4" => d4(),
            "kronecker" | "k2" => kronecker(),
            "a1" | "single" => single(),
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal() {
        let q = Quiver::parse("vertices: 1 2; arrows: a: 1 -> 2").unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.arrows.len(), 1);
    }

    #[test]
    fn parse_rejects_loop_and_cycle() {
        assert_eq!(Quiver::parse("vertices: 1; arrows: a: 1 -> 1"), Err(Error::LoopArrow("a".into())));
        let e = Quiver::parse("vertices: 1 2 3; arrows: a: 1->2; b: 2->3; c: 3->1").unwrap_err();
        match e {
            Error::Cycle(c) => assert_eq!(c.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        let e = Quiver::parse("vertices: 1 2\narrows: a 1 -> 2").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn admissible_words() {
        assert_eq!(examples::triangle().admissible_word(), Word(vec![1, 2, 3]));
        assert_eq!(examples::kronecker().admissible_word(), Word(vec![1, 2]));
        assert_eq!(examples::single().admissible_word(), Word(vec![1]));
        let q = Quiver::parse("vertices: 5 3 9; arrows: x: 9 -> 3").unwrap();
        assert_eq!(q.admissible_word(), Word(vec![5, 9, 3]));
    }

    #[test]
    fn paths_small() {
        let dq = DoubleQuiver::new(&examples::a2());
        let p = dq.enumerate_paths(0, 0, 1);
        let names: Vec<String> = p.iter().map(|p| dq.path_name(p)).collect();
        assert_eq!(names, vec!["e1", "a.a*"]);
        let p = dq.enumerate_paths(0, 1, 0);
        assert_eq!(p.len(), 1);
        let dq = DoubleQuiver::new(&examples::kronecker());
        let names: Vec<String> = dq.enumerate_paths(0, 0, 1).iter().map(|p| dq.path_name(p)).collect();
        assert_eq!(names, vec!["e1", "a.a*", "a.b*", "b.a*", "b.b*"]);
    }

    #[test]
    fn subquivers() {
        let q = examples::triangle();
        let s = q.support_subquiver(&[1, 3].into_iter().collect()).unwrap();
        assert_eq!(s.arrows.len(), 1);
        assert_eq!(s.arrows[0].name, "c");
        assert!(q.support_subquiver(&[7].into_iter().collect()).is_err());
    }

    #[test]
    fn dynkin_detection() {
        assert!(examples::a3_linear().is_dynkin());
        assert!(examples::d4().is_dynkin());
        assert!(!examples::triangle().is_dynkin());
        assert!(!examples::kronecker().is_dynkin());
    }
}
