//! Finite-dimensional algebras given by structure constants.
//!
//! Products read left to right: `x * y` is "x then y", so an element of
//! e_i A e_j is an arrow-like element from i to j.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy_sparse, svec_from_dense, Mat, SVec, Subspace};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct AlgebraTable<F: Field> {
    pub dim: usize,
    pub labels: Vec<String>,
    /// mult[i][j] = x_i * x_j
    pub mult: Vec<Vec<SVec<F>>>,
    /// Complete set of orthogonal idempotents (some may be zero).
    pub idempotents: Vec<Vec<F>>,
    pub degrees: Option<Vec<i32>>,
}

/// Quiver with relations read off an algebra table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// indices into the table's idempotent list
    pub vertices: Vec<usize>,
    /// (name, source, target, degree) with endpoints as positions in `vertices`
    pub arrows: Vec<(String, usize, usize, i32)>,
    /// each relation as (coefficient text, path of arrow indices)
    pub relations: Vec<Vec<(String, Vec<usize>)>>,
}

impl<F: Field> AlgebraTable<F> {
    pub fn zero() -> Self {
        AlgebraTable { dim: 0, labels: Vec::new(), mult: Vec::new(), idempotents: Vec::new(), degrees: None }
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                axpy_sparse(&mut out, &a.mul_ref(b), &self.mult[i][j]);
            }
        }
        out
    }

    pub fn unit_vec(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[i] = F::one();
        v
    }

    pub fn one(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        for e in &self.idempotents {
            for (a, b) in v.iter_mut().zip(e) {
                *a = a.add_ref(b);
            }
        }
        v
    }

    pub fn is_associative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let xy = self.mul(&self.unit_vec(i), &self.unit_vec(j));
                for k in 0..self.dim {
                    let z = self.unit_vec(k);
                    let l = self.mul(&xy, &z);
                    let r = self.mul(&self.unit_vec(i), &self.mul(&self.unit_vec(j), &z));
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Idempotents orthogonal, summing to a two-sided unit.
    pub fn idempotents_ok(&self) -> bool {
        for (a, e) in self.idempotents.iter().enumerate() {
            for (b, f) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let want = if a == b { e.clone() } else { vec![F::zero(); self.dim] };
                if p != want {
                    return false;
                }
            }
        }
        let one = self.one();
        (0..self.dim).all(|i| {
            let x = self.unit_vec(i);
            self.mul(&one, &x) == x && self.mul(&x, &one) == x
        })
    }

    /// Tr of left multiplication by each basis element.
    fn traces(&self) -> Vec<F> {
        (0..self.dim)
            .map(|z| {
                let mut t = F::zero();
                for j in 0..self.dim {
                    for (k, c) in &self.mult[z][j] {
                        if *k == j {
                            t = t.add_ref(c);
                        }
                    }
                }
                t
            })
            .collect()
    }

    /// Jacobson radical as the radical of the trace form (valid in
    /// characteristic 0 and in characteristic larger than the dimension).
    pub fn radical(&self) -> Subspace<F> {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        let tau = self.traces();
        let rows: Vec<Vec<F>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.mult[i][j].iter().fold(F::zero(), |acc, (k, c)| acc.add_ref(&c.mul_ref(&tau[*k]))))
                    .collect()
            })
            .collect();
        Subspace::from_vectors(self.dim, Mat::from_rows(self.dim, self.dim, rows).kernel())
    }

    /// dim A / rad A.
    pub fn semisimple_dim(&self) -> usize {
        self.dim - self.radical().dim()
    }

    pub fn is_local(&self) -> bool {
        self.dim > 0 && self.semisimple_dim() == 1
    }

    /// Products of spanning sets.
    pub fn product_span(&self, a: &[Vec<F>], b: &[Vec<F>]) -> Subspace<F> {
        let mut s = Subspace::zero(self.dim);
        for x in a {
            for y in b {
                s.insert(self.mul(x, y));
            }
        }
        s
    }

    /// Quotient by a two-sided ideal given as a subspace.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Self {
        let keep = ideal.non_pivots();
        let project = |v: &[F]| -> Vec<F> {
            let r = ideal.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let mut mult = Vec::with_capacity(keep.len());
        for &i in &keep {
            let mut row = Vec::with_capacity(keep.len());
            for &j in &keep {
                let mut full = vec![F::zero(); self.dim];
                axpy_sparse(&mut full, &F::one(), &self.mult[i][j]);
                row.push(svec_from_dense(&project(&full)));
            }
            mult.push(row);
        }
        AlgebraTable {
            dim: keep.len(),
            labels: keep.iter().map(|&k| self.labels[k].clone()).collect(),
            mult,
            idempotents: self.idempotents.iter().map(|e| project(e)).collect(),
            degrees: self.degrees.as_ref().map(|d| keep.iter().map(|&k| d[k]).collect()),
        }
    }

    fn is_zero_vec(v: &[F]) -> bool {
        v.iter().all(|x| x.is_zero())
    }

    /// Indices of nonzero idempotents.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.idempotents.len()).filter(|&i| !Self::is_zero_vec(&self.idempotents[i])).collect()
    }

    fn block(&self, i: usize, x: &[F], j: usize) -> Vec<F> {
        self.mul(&self.mul(&self.idempotents[i], x), &self.idempotents[j])
    }

    fn degree_of(&self, v: &[F]) -> i32 {
        match &self.degrees {
            None => 0,
            Some(d) => v.iter().enumerate().find(|(_, x)| !x.is_zero()).map(|(k, _)| d[k]).unwrap_or(0),
        }
    }

    /// Cartan-style block dimensions dim e_i A e_j.
    pub fn block_dims(&self) -> BTreeMap<(usize, usize), usize> {
        let vs = self.vertices();
        let mut out = BTreeMap::new();
        for &i in &vs {
            for &j in &vs {
                let s = Subspace::from_vectors(self.dim, (0..self.dim).map(|k| self.block(i, &self.unit_vec(k), j)));
                if s.dim() > 0 {
                    out.insert((i, j), s.dim());
                }
            }
        }
        out
    }

    /// Loewy length: least L with rad^L = 0.
    pub fn loewy_length(&self) -> usize {
        let rad = self.radical();
        if self.dim == 0 {
            return 0;
        }
        let mut cur = rad.clone();
        let mut l = 1;
        while cur.dim() > 0 {
            cur = self.product_span(cur.basis(), rad.basis());
            l += 1;
        }
        l
    }

    /// Arrows as elements: a complement of rad² in each e_i rad e_j.
    pub fn arrow_elements(&self) -> Vec<(usize, usize, Vec<F>)> {
        let vs = self.vertices();
        let rad = self.radical();
        let rad2 = self.product_span(rad.basis(), rad.basis());
        let mut out = Vec::new();
        for &i in &vs {
            for &j in &vs {
                let mut span = Subspace::zero(self.dim);
                for r in rad2.basis() {
                    span.insert(self.block(i, r, j));
                }
                let mut cands: Vec<Vec<F>> = rad.basis().iter().map(|r| self.block(i, r, j)).collect();
                cands.retain(|v| !Self::is_zero_vec(v));
                let blk = Subspace::from_vectors(self.dim, cands);
                for v in blk.basis() {
                    if span.insert(v.clone()) {
                        out.push((i, j, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Gabriel quiver and a minimal set of relations.
    pub fn presentation(&self) -> Presentation {
        let arrows = self.arrow_elements();
        let arrows = normalize_double_chain(self, arrows);
        self.presentation_with(&arrows)
    }

    pub fn presentation_with(&self, arrows: &[(usize, usize, Vec<F>)]) -> Presentation {
        let vs = self.vertices();
        let vpos: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let names = arrow_names(arrows.iter().map(|(i, j, _)| (vpos[i], vpos[j])).collect());
        let pres_arrows: Vec<(String, usize, usize, i32)> = arrows
            .iter()
            .zip(&names)
            .map(|((i, j, v), n)| (n.clone(), vpos[i], vpos[j], self.degree_of(v)))
            .collect();
        let lmax = self.loewy_length();
        // paths of length 2..=lmax, with their values
        let mut paths: Vec<(Vec<usize>, Vec<F>)> = Vec::new();
        let mut frontier: Vec<(Vec<usize>, Vec<F>)> = arrows.iter().enumerate().map(|(k, a)| (vec![k], a.2.clone())).collect();
        for _ in 2..=lmax.max(1) {
            let mut next = Vec::new();
            for (p, v) in &frontier {
                let end = arrows[*p.last().unwrap()].1;
                for (k, a) in arrows.iter().enumerate() {
                    if a.0 != end {
                        continue;
                    }
                    let mut q = p.clone();
                    q.push(k);
                    next.push((q, self.mul(v, &a.2)));
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let mut relations = Vec::new();
        let mut by_block: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, (p, _)) in paths.iter().enumerate() {
            by_block.entry((arrows[p[0]].0, arrows[*p.last().unwrap()].1)).or_default().push(k);
        }
        for idx in by_block.values() {
            let mut idx = idx.clone();
            idx.sort_by(|a, b| paths[*a].0.len().cmp(&paths[*b].0.len()).then(paths[*a].0.cmp(&paths[*b].0)));
            let pos: BTreeMap<&Vec<usize>, usize> = idx.iter().enumerate().map(|(c, &k)| (&paths[k].0, c)).collect();
            let ev = Mat::from_cols(self.dim, &idx.iter().map(|&k| paths[k].1.clone()).collect::<Vec<_>>());
            let kernel = Subspace::from_vectors(idx.len(), ev.kernel());
            if kernel.dim() == 0 {
                continue;
            }
            // consequences p·r·q of relations in this block coming from shorter ones
            let mut cons = Subspace::zero(idx.len());
            for oidx in by_block.values() {
                let okernel = {
                    let ev = Mat::from_cols(self.dim, &oidx.iter().map(|&k| paths[k].1.clone()).collect::<Vec<_>>());
                    ev.kernel()
                };
                for r in okernel {
                    let terms: Vec<(&Vec<usize>, &F)> =
                        r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(c, x)| (&paths[oidx[c]].0, x)).collect();
                    for pre in prefixes_suffixes(arrows, lmax) {
                        let (left, right) = (&pre.0, &pre.1);
                        if left.is_empty() && right.is_empty() {
                            continue;
                        }
                        let mut v = vec![F::zero(); idx.len()];
                        let mut any = false;
                        for (p, x) in &terms {
                            let mut w = left.clone();
                            w.extend(p.iter());
                            w.extend(right.iter());
                            if !composable(arrows, &w) {
                                continue;
                            }
                            if let Some(&c) = pos.get(&w) {
                                v[c] = v[c].add_ref(x);
                                any = true;
                            }
                        }
                        if any {
                            cons.insert(v);
                        }
                    }
                }
            }
            for r in kernel.basis() {
                if cons.insert(r.clone()) {
                    relations.push(format_relation(r, &idx, &paths));
                }
            }
        }
        Presentation { vertices: vs, arrows: pres_arrows, relations }
    }

    /// Global dimension via minimal projective resolutions of the simple
    /// right modules; None if some simple needs more than `cap` steps.
    pub fn global_dimension(&self, cap: usize) -> Option<usize> {
        let vs = self.vertices();
        if vs.is_empty() {
            return Some(0);
        }
        let rad = self.radical();
        let mut best = 0;
        for &i in &vs {
            // Ω S_i = e_i J
            let start = Subspace::from_vectors(self.dim, rad.basis().iter().map(|r| self.mul(&self.idempotents[i], r)));
            let mut n = RightModule { rank: 1, space: start };
            let mut pd = 0;
            while n.space.dim() > 0 {
                pd += 1;
                if pd > cap {
                    return None;
                }
                n = self.syzygy_right(&n, &rad, &vs);
            }
            best = best.max(pd);
        }
        Some(best)
    }

    fn right_act(&self, v: &[F], rank: usize, x: &[F]) -> Vec<F> {
        let mut out = Vec::with_capacity(v.len());
        for s in 0..rank {
            out.extend(self.mul(&v[s * self.dim..(s + 1) * self.dim], x));
        }
        out
    }

    fn syzygy_right(&self, n: &RightModule<F>, rad: &Subspace<F>, vs: &[usize]) -> RightModule<F> {
        let amb = n.rank * self.dim;
        let mut top = Subspace::zero(amb);
        for b in n.space.basis() {
            for r in rad.basis() {
                top.insert(self.right_act(b, n.rank, r));
            }
        }
        let mut gens: Vec<(usize, Vec<F>)> = Vec::new();
        for &j in vs {
            for b in n.space.basis() {
                let v = self.right_act(b, n.rank, &self.idempotents[j]);
                if top.insert(v.clone()) {
                    gens.push((j, v));
                }
            }
        }
        let eb: BTreeMap<usize, Vec<Vec<F>>> = vs
            .iter()
            .map(|&j| {
                let s = Subspace::from_vectors(self.dim, (0..self.dim).map(|k| self.mul(&self.idempotents[j], &self.unit_vec(k))));
                (j, s.basis().to_vec())
            })
            .collect();
        let mut cols = Vec::new();
        let mut slots = Vec::new();
        for (g, (j, v)) in gens.iter().enumerate() {
            for b in &eb[j] {
                cols.push(self.right_act(v, n.rank, b));
                slots.push((g, b));
            }
        }
        let r = gens.len();
        if cols.is_empty() {
            return RightModule { rank: r, space: Subspace::zero(r * self.dim) };
        }
        let m = Mat::from_cols(amb, &cols);
        let ker = m.kernel();
        let space = Subspace::from_vectors(
            r * self.dim,
            ker.into_iter().map(|k| {
                let mut v = vec![F::zero(); r * self.dim];
                for (c, (g, b)) in k.iter().zip(&slots) {
                    if c.is_zero() {
                        continue;
                    }
                    for (t, x) in b.iter().enumerate() {
                        v[g * self.dim + t] = v[g * self.dim + t].add_ref(&c.mul_ref(x));
                    }
                }
                v
            }),
        );
        RightModule { rank: r, space }
    }

    /// Dimension vectors of the indecomposable projectives e_i A.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let vs = self.vertices();
        let b = self.block_dims();
        vs.iter().map(|&i| vs.iter().map(|&j| b.get(&(i, j)).copied().unwrap_or(0)).collect()).collect()
    }
}

struct RightModule<F> {
    rank: usize,
    space: Subspace<F>,
}

fn composable<F: Field>(arrows: &[(usize, usize, Vec<F>)], w: &[usize]) -> bool {
    w.windows(2).all(|p| arrows[p[0]].1 == arrows[p[1]].0)
}

/// Pairs (left path, right path) of total length < lmax (including empty).
fn prefixes_suffixes<F: Field>(arrows: &[(usize, usize, Vec<F>)], lmax: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut all: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..lmax {
        let mut next = Vec::new();
        for p in &frontier {
            for k in 0..arrows.len() {
                if let Some(&last) = p.last() {
                    if arrows[last].1 != arrows[k].0 {
                        continue;
                    }
                }
                let mut q = p.clone();
                q.push(k);
                next.push(q);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::new();
    for l in &all {
        for r in &all {
            if l.len() + r.len() < lmax {
                out.push((l.clone(), r.clone()));
            }
        }
    }
    out
}

fn arrow_names(ends: Vec<(usize, usize)>) -> Vec<String> {
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut index = Vec::new();
    for e in &ends {
        let c = count.entry(*e).or_insert(0);
        index.push(*c);
        *c += 1;
    }
    let multiple = count.values().any(|&c| c > 1);
    if !multiple && ends.len() <= 26 {
        return (0..ends.len()).map(|k| ((b'a' + k as u8) as char).to_string()).collect();
    }
    // parallel arrows: letter by parallel index, suffix by source
    ends.iter()
        .zip(index)
        .map(|((s, _), k)| {
            let letter = if k < 26 { ((b'a' + k as u8) as char).to_string() } else { format!("x{k}_") };
            format!("{letter}{}", s + 1)
        })
        .collect()
}

fn format_relation<F: Field>(r: &[F], idx: &[usize], paths: &[(Vec<usize>, Vec<F>)]) -> Vec<(String, Vec<usize>)> {
    let lead = r.iter().find(|x| !x.is_zero()).cloned().unwrap();
    let inv = lead.inv();
    r.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (coeff_text(&x.mul_ref(&inv)), paths[idx[c]].0.clone()))
        .collect()
}

fn coeff_text<F: Field>(x: &F) -> String {
    let (n, d) = x.to_parts();
    if d == "1" {
        n
    } else {
        format!("{n}/{d}")
    }
}

/// Rebase the arrows of a chain v0 ⇉ v1 ⇉ ⋯ with one quadratic relation per
/// consecutive pair so that every relation reads a·a − b·b.
fn normalize_double_chain<F: Field>(t: &AlgebraTable<F>, arrows: Vec<(usize, usize, Vec<F>)>) -> Vec<(usize, usize, Vec<F>)> {
    let vs = t.vertices();
    if vs.len() < 3 || arrows.len() != 2 * (vs.len() - 1) {
        return arrows;
    }
    // order vertices along the chain
    let mut out_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut indeg: BTreeMap<usize, usize> = vs.iter().map(|&v| (v, 0)).collect();
    for (k, a) in arrows.iter().enumerate() {
        out_of.entry(a.0).or_default().push(k);
        *indeg.get_mut(&a.1).unwrap() += 1;
    }
    let Some(&start) = vs.iter().find(|v| indeg[v] == 0) else { return arrows };
    let mut chain = vec![start];
    let mut segs: Vec<[usize; 2]> = Vec::new();
    let mut cur = start;
    while let Some(ks) = out_of.get(&cur) {
        if ks.len() != 2 || arrows[ks[0]].1 != arrows[ks[1]].1 {
            return arrows;
        }
        segs.push([ks[0], ks[1]]);
        cur = arrows[ks[0]].1;
        chain.push(cur);
    }
    if chain.len() != vs.len() {
        return arrows;
    }
    let mut new = arrows.clone();
    for s in 0..segs.len().saturating_sub(1) {
        let [a, b] = segs[s];
        let [a2, b2] = segs[s + 1];
        // coefficients of the relation in (a,b) ⊗ (a2,b2)
        let prods = [
            t.mul(&new[a].2, &new[a2].2),
            t.mul(&new[a].2, &new[b2].2),
            t.mul(&new[b].2, &new[a2].2),
            t.mul(&new[b].2, &new[b2].2),
        ];
        let ker = Mat::from_cols(t.dim, &prods).kernel();
        if ker.len() != 1 {
            return arrows;
        }
        let c = &ker[0];
        let lin = |x: &F, y: &F| -> Vec<F> {
            let mut v = new[a2].2.iter().map(|e| e.mul_ref(x)).collect::<Vec<_>>();
            for (vi, e) in v.iter_mut().zip(&new[b2].2) {
                *vi = vi.add_ref(&e.mul_ref(y));
            }
            v
        };
        let na = lin(&c[0], &c[1]);
        let nb: Vec<F> = lin(&c[2], &c[3]).iter().map(|x| x.neg_ref()).collect();
        let m = Mat::from_cols(t.dim, &[na.clone(), nb.clone()]);
        if m.rank() != 2 {
            return arrows;
        }
        new[a2].2 = na;
        new[b2].2 = nb;
    }
    new
}

impl Presentation {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn relation_text(&self, r: &[(String, Vec<usize>)]) -> String {
        let mut s = String::new();
        for (k, (c, p)) in r.iter().enumerate() {
            let path = p.iter().map(|&a| self.arrows[a].0.as_str()).collect::<Vec<_>>().join("*");
            let (neg, mag) = match c.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                let _ = write!(s, "{mag}*");
            }
            s.push_str(&path);
        }
        s
    }

    /// `quiver { v1 v2; a: v1 -> v2 deg 0; } relations { a*b; }`
    pub fn to_text(&self) -> String {
        let mut s = String::from("quiver { ");
        let vs: Vec<String> = (1..=self.vertices.len()).map(|i| format!("v{i}")).collect();
        s.push_str(&vs.join(" "));
        s.push(';');
        for (n, a, b, d) in &self.arrows {
            let _ = write!(s, " {n}: v{} -> v{} deg {d};", a + 1, b + 1);
        }
        s.push_str(" } relations {");
        for r in &self.relations {
            let _ = write!(s, " {};", self.relation_text(r));
        }
        s.push_str(" }");
        s
    }

    /// Every relation is a single path (monomial).
    pub fn monomial_relations(&self) -> bool {
        self.relations.iter().all(|r| r.len() == 1)
    }

    /// Every relation has the shape x·y − z·w with distinct arrows.
    pub fn commutativity_shape(&self) -> bool {
        self.relations.iter().all(|r| {
            r.len() == 2 && r[0].0 == "1" && r[1].0 == "-1" && r[0].1.len() == 2 && r[1].1.len() == 2 && r[0].1 != r[1].1
        })
    }
}

/// Parse the text form back (arrows and relation paths only).
pub fn parse_presentation(text: &str) -> Result<(usize, Vec<(String, usize, usize, i32)>, Vec<String>)> {
    let bad = |m: &str| Error::Parse { line: 1, col: 1, msg: m.to_string() };
    let q = text.find("quiver {").ok_or_else(|| bad("missing quiver block"))?;
    let rel = text.find("relations {").ok_or_else(|| bad("missing relations block"))?;
    let qbody = &text[q + 8..rel];
    let qbody = qbody.trim().trim_end_matches('}').trim();
    let mut parts = qbody.split(';').map(str::trim).filter(|p| !p.is_empty());
    let nv = parts.next().map(|v| v.split_whitespace().count()).unwrap_or(0);
    let mut arrows = Vec::new();
    for p in parts {
        let (name, rest) = p.split_once(':').ok_or_else(|| bad("arrow without name"))?;
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.len() != 5 || toks[1] != "->" || toks[3] != "deg" {
            return Err(bad("malformed arrow"));
        }
        let v = |t: &str| -> Result<usize> {
            t.strip_prefix('v').and_then(|x| x.parse::<usize>().ok()).filter(|&x| x >= 1).map(|x| x - 1).ok_or_else(|| bad("bad vertex"))
        };
        let d: i32 = toks[4].parse().map_err(|_| bad("bad degree"))?;
        arrows.push((name.trim().to_string(), v(toks[0])?, v(toks[2])?, d));
    }
    let rbody = text[rel + 11..].trim().trim_end_matches('}');
    let rels = rbody.split(';').map(str::trim).filter(|r| !r.is_empty()).map(String::from).collect();
    Ok((nv, arrows, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    /// Path algebra of a quiver given by arrows, modulo paths of length ≥ cut,
    /// with optional extra monomial zero relations.
    pub(crate) fn path_table(n: usize, arrows: &[(usize, usize)], zero: &[Vec<usize>], cut: usize) -> AlgebraTable<Rat> {
        let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|v| (v, v, vec![])).collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        for _ in 1..cut {
            let mut next = Vec::new();
            for &p in &frontier {
                for (k, a) in arrows.iter().enumerate() {
                    if a.0 != paths[p].1 {
                        continue;
                    }
                    let mut w = paths[p].2.clone();
                    w.push(k);
                    if zero.iter().any(|z| w.windows(z.len()).any(|x| x == z.as_slice())) {
                        continue;
                    }
                    paths.push((paths[p].0, a.1, w));
                    next.push(paths.len() - 1);
                }
            }
            frontier = next;
        }
        let index: BTreeMap<(usize, Vec<usize>), usize> = paths.iter().enumerate().map(|(i, p)| ((p.0, p.2.clone()), i)).collect();
        let dim = paths.len();
        let mult = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if paths[i].1 != paths[j].0 {
                            return vec![];
                        }
                        let mut w = paths[i].2.clone();
                        w.extend(&paths[j].2);
                        match index.get(&(paths[i].0, w)) {
                            Some(&k) => vec![(k, Rat::one())],
                            None => vec![],
                        }
                    })
                    .collect()
            })
            .collect();
        let idempotents = (0..n)
            .map(|v| {
                let mut e = vec![Rat::zero(); dim];
                e[v] = Rat::one();
                e
            })
            .collect();
        AlgebraTable { dim, labels: (0..dim).map(|i| format!("p{i}")).collect(), mult, idempotents, degrees: None }
    }

    #[test]
    fn a3_with_zero_relation() {
        let t = path_table(3, &[(0, 1), (1, 2)], &[vec![0, 1]], 5);
        assert_eq!(t.dim, 5);
        assert!(t.is_associative());
        assert!(t.idempotents_ok());
        assert_eq!(t.radical().dim(), 2);
        assert_eq!(t.global_dimension(5), Some(2));
        let p = t.presentation();
        assert_eq!(p.arrows.len(), 2);
        assert_eq!(p.relations.len(), 1);
        assert!(p.monomial_relations());
        assert_eq!(p.to_text(), "quiver { v1 v2 v3; a: v1 -> v2 deg 0; b: v2 -> v3 deg 0; } relations { a*b; }");
        let (nv, arrows, rels) = parse_presentation(&p.to_text()).unwrap();
        assert_eq!((nv, arrows.len(), rels), (3, 2, vec!["a*b".to_string()]));
    }

    #[test]
    fn hereditary_and_semisimple() {
        let t = path_table(3, &[(0, 1), (1, 2)], &[], 5);
        assert_eq!(t.dim, 6);
        assert_eq!(t.global_dimension(5), Some(1));
        assert!(t.presentation().relations.is_empty());
        let s = path_table(2, &[], &[], 3);
        assert_eq!(s.global_dimension(5), Some(0));
        let p = s.presentation();
        assert!(p.arrows.is_empty() && p.relations.is_empty());
    }

    #[test]
    fn local_algebra() {
        // k[x]/(x^3)
        let t = path_table(1, &[(0, 0)], &[], 3);
        assert_eq!(t.dim, 3);
        assert!(t.is_local());
        assert_eq!(t.global_dimension(4), None);
        let p = t.presentation();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0][0].1.len(), 3);
    }
}
