//! Degree-truncated preprojective algebras, homogeneous ideals and quotients.
//!
//! Π is built one path length at a time: level L is spanned by products b·a
//! with b in level L-1 and a an arrow, modulo the products b'·ρ_v with b' in
//! level L-2. Surviving products are genuine paths, so every basis element
//! carries a path representative.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{svec_normalize, SVec, Subspace};
use crate::quiver::{DoubleQuiver, Path, Quiver};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub const DEFAULT_PATH_CAP: usize = 2_000_000;

/// (source, target, degree)
pub type CompKey = (usize, usize, i32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub source: usize,
    pub target: usize,
    pub degree: i32,
    pub length: usize,
    /// arrow sequence (left to right)
    pub path: Vec<usize>,
    /// index of the prefix element in the algebra it was built in
    pub parent: Option<usize>,
}

#[derive(Debug)]
pub struct Parent<F: Field> {
    pub algebra: Arc<GradedAlgebra<F>>,
    pub ideal: GradedIdeal<F>,
    /// basis index here -> basis index in the parent
    pub lift: Vec<usize>,
}

#[derive(Debug)]
pub struct GradedAlgebra<F: Field> {
    pub id: u64,
    pub label: String,
    pub dq: DoubleQuiver,
    pub max_degree: i32,
    pub basis: Vec<BasisElem>,
    comps: BTreeMap<CompKey, Vec<usize>>,
    local: Vec<usize>,
    right: Vec<Vec<SVec<F>>>,
    left: Vec<Vec<SVec<F>>>,
    vertex_elem: Vec<Option<usize>>,
    pub parent: Option<Parent<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal<F: Field> {
    pub owner: u64,
    /// missing components are zero
    pub comps: BTreeMap<CompKey, Subspace<F>>,
}

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

impl<F: Field> GradedAlgebra<F> {
    /// Π truncated to degrees ≤ n.
    pub fn preprojective(q: &Quiver, n: i32) -> Result<Self> {
        Self::preprojective_with_cap(q, n, DEFAULT_PATH_CAP)
    }

    pub fn preprojective_with_cap(q: &Quiver, n: i32, cap: usize) -> Result<Self> {
        if n < 0 {
            return Err(Error::Precondition("truncation degree must be non-negative".into()));
        }
        let dq = DoubleQuiver::new(q);
        let na = dq.arrows.len();
        let nv = q.n();
        let mut basis: Vec<BasisElem> = (0..nv)
            .map(|v| BasisElem { source: v, target: v, degree: 0, length: 0, path: Vec::new(), parent: None })
            .collect();
        let mut right: Vec<Vec<SVec<F>>> = vec![Vec::new(); na];
        let mut levels: Vec<Vec<usize>> = vec![(0..nv).collect()];
        let mut total_cands = 0usize;
        loop {
            let len = levels.len();
            let prev = &levels[len - 1];
            // candidates grouped by component, in (parent, arrow) order
            let mut groups: BTreeMap<CompKey, Vec<(usize, usize)>> = BTreeMap::new();
            for &b in prev {
                for a in 0..na {
                    let arr = &dq.arrows[a];
                    if arr.source == basis[b].target && basis[b].degree + arr.degree <= n {
                        groups
                            .entry((basis[b].source, arr.target, basis[b].degree + arr.degree))
                            .or_default()
                            .push((b, a));
                    }
                }
            }
            total_cands += groups.values().map(|g| g.len()).sum::<usize>();
            if total_cands > cap {
                return Err(Error::ResourceLimit(format!("path count exceeds cap {cap}")));
            }
            let pos: BTreeMap<(usize, usize), (CompKey, usize)> = groups
                .iter()
                .flat_map(|(k, g)| g.iter().enumerate().map(move |(i, ba)| (*ba, (*k, i))))
                .collect();
            let mut rels: BTreeMap<CompKey, Subspace<F>> =
                groups.iter().map(|(k, g)| (*k, Subspace::zero(g.len()))).collect();
            if len >= 2 {
                for &b in &levels[len - 2] {
                    if basis[b].degree + 1 > n {
                        continue;
                    }
                    let v = basis[b].target;
                    let key = (basis[b].source, v, basis[b].degree + 1);
                    let Some(sub) = rels.get_mut(&key) else { continue };
                    let mut vec = vec![F::zero(); sub.ambient];
                    let mut any = false;
                    for al in 0..dq.num_base() {
                        let arr = &dq.arrows[al];
                        let st = dq.star(al);
                        if arr.source == v {
                            for (b2, c) in &right[al][b] {
                                let (_, i) = pos[&(*b2, st)];
                                vec[i] = vec[i].add_ref(c);
                                any = true;
                            }
                        }
                        if arr.target == v {
                            for (b2, c) in &right[st][b] {
                                let (_, i) = pos[&(*b2, al)];
                                vec[i] = vec[i].sub_ref(c);
                                any = true;
                            }
                        }
                    }
                    if any {
                        sub.insert(vec);
                    }
                }
            }
            // new basis elements and right multiplication on the previous level
            for r in right.iter_mut() {
                r.resize(basis.len(), Vec::new());
            }
            let mut new_level = Vec::new();
            for (key, g) in &groups {
                let sub = &rels[key];
                let mut idx_of = vec![usize::MAX; g.len()];
                for (i, &(b, a)) in g.iter().enumerate() {
                    if !sub.is_pivot(i) {
                        idx_of[i] = basis.len();
                        let mut path = basis[b].path.clone();
                        path.push(a);
                        basis.push(BasisElem {
                            source: key.0,
                            target: key.1,
                            degree: key.2,
                            length: len,
                            path,
                            parent: Some(b),
                        });
                        new_level.push(idx_of[i]);
                    }
                }
                for (i, &(b, a)) in g.iter().enumerate() {
                    right[a][b] = if idx_of[i] != usize::MAX {
                        vec![(idx_of[i], F::one())]
                    } else {
                        let row = sub.basis().iter().find(|r| r.iter().rposition(|x| !x.is_zero()) == Some(i)).unwrap();
                        svec_normalize(
                            row.iter()
                                .enumerate()
                                .filter(|(j, x)| *j != i && !x.is_zero())
                                .map(|(j, x)| (idx_of[j], x.neg_ref()))
                                .collect(),
                        )
                    };
                }
            }
            if new_level.is_empty() {
                break;
            }
            levels.push(new_level);
        }
        for r in right.iter_mut() {
            r.resize(basis.len(), Vec::new());
        }
        let mut alg = GradedAlgebra {
            id: fresh_id(),
            label: format!("Pi<={n}"),
            dq,
            max_degree: n,
            basis,
            comps: BTreeMap::new(),
            local: Vec::new(),
            right,
            left: Vec::new(),
            vertex_elem: (0..nv).map(Some).collect(),
            parent: None,
        };
        alg.index_components();
        alg.compute_left();
        Ok(alg)
    }

    fn index_components(&mut self) {
        self.comps.clear();
        self.local = vec![0; self.basis.len()];
        for (i, b) in self.basis.iter().enumerate() {
            let e = self.comps.entry((b.source, b.target, b.degree)).or_default();
            self.local[i] = e.len();
            e.push(i);
        }
    }

    fn compute_left(&mut self) {
        let na = self.dq.arrows.len();
        let mut left: Vec<Vec<SVec<F>>> = vec![vec![Vec::new(); self.basis.len()]; na];
        for x in 0..self.basis.len() {
            for a in 0..na {
                left[a][x] = match self.basis[x].parent {
                    None => {
                        let v = self.basis[x].source;
                        if self.dq.arrows[a].target == v {
                            match self.vertex_elem[self.dq.arrows[a].source] {
                                Some(e) => self.right[a][e].clone(),
                                None => Vec::new(),
                            }
                        } else {
                            Vec::new()
                        }
                    }
                    Some(p) => {
                        let last = *self.basis[x].path.last().unwrap();
                        let ap = left[a][p].clone();
                        self.right_mul_arrow(&ap, last)
                    }
                };
            }
        }
        self.left = left;
    }

    pub fn n_vertices(&self) -> usize {
        self.dq.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn comp(&self, key: &CompKey) -> &[usize] {
        self.comps.get(key).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn comp_keys(&self) -> impl Iterator<Item = &CompKey> {
        self.comps.keys()
    }

    pub fn local_index(&self, b: usize) -> usize {
        self.local[b]
    }

    pub fn key_of(&self, b: usize) -> CompKey {
        let e = &self.basis[b];
        (e.source, e.target, e.degree)
    }

    pub fn vertex_elem(&self, v: usize) -> Option<usize> {
        self.vertex_elem[v]
    }

    pub fn dim_degree(&self, d: i32) -> usize {
        self.basis.iter().filter(|b| b.degree == d).count()
    }

    /// dim e_v A_d e_u summed over v.
    pub fn dim_column_degree(&self, u: usize, d: i32) -> usize {
        self.basis.iter().filter(|b| b.degree == d && b.target == u).count()
    }

    pub fn max_present_degree(&self) -> i32 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn path_of(&self, b: usize) -> Path {
        let e = &self.basis[b];
        Path { arrows: e.path.clone(), source: e.source, target: e.target, degree: e.degree }
    }

    pub fn name_of(&self, b: usize) -> String {
        self.dq.path_name(&self.path_of(b))
    }

    pub fn right_arrow(&self, a: usize, b: usize) -> &SVec<F> {
        &self.right[a][b]
    }

    pub fn left_arrow(&self, a: usize, b: usize) -> &SVec<F> {
        &self.left[a][b]
    }

    pub fn right_mul_arrow(&self, x: &SVec<F>, a: usize) -> SVec<F> {
        let mut acc = Vec::new();
        for (i, c) in x {
            for (j, d) in &self.right[a][*i] {
                acc.push((*j, c.mul_ref(d)));
            }
        }
        svec_normalize(acc)
    }

    pub fn left_mul_arrow(&self, a: usize, x: &SVec<F>) -> SVec<F> {
        let mut acc = Vec::new();
        for (i, c) in x {
            for (j, d) in &self.left[a][*i] {
                acc.push((*j, c.mul_ref(d)));
            }
        }
        svec_normalize(acc)
    }

    pub fn right_mul_path(&self, x: &SVec<F>, path: &[usize]) -> SVec<F> {
        let mut cur = x.clone();
        for &a in path {
            if cur.is_empty() {
                break;
            }
            cur = self.right_mul_arrow(&cur, a);
        }
        cur
    }

    /// x · y for arbitrary elements.
    pub fn mul(&self, x: &SVec<F>, y: &SVec<F>) -> SVec<F> {
        let mut acc = Vec::new();
        for (j, c) in y {
            let e = &self.basis[*j];
            let xs: SVec<F> = x.iter().filter(|(i, _)| self.basis[*i].target == e.source).cloned().collect();
            if xs.is_empty() {
                continue;
            }
            for (k, d) in self.right_mul_path(&xs, &e.path) {
                acc.push((k, d.mul_ref(c)));
            }
        }
        svec_normalize(acc)
    }

    pub fn unit_vec(&self, b: usize) -> SVec<F> {
        vec![(b, F::one())]
    }

    /// The element represented by a path of the double quiver.
    pub fn path_element(&self, p: &Path) -> SVec<F> {
        match self.vertex_elem[p.source] {
            Some(e) => self.right_mul_path(&self.unit_vec(e), &p.arrows),
            None => Vec::new(),
        }
    }

    /// Chain of ancestors up to the root algebra (self first).
    pub fn ancestry(&self) -> Vec<u64> {
        let mut out = vec![self.id];
        let mut cur = self.parent.as_ref();
        while let Some(p) = cur {
            out.push(p.algebra.id);
            cur = p.algebra.parent.as_ref();
        }
        out
    }

    /// True if self is `other` or a (repeated) quotient of it.
    pub fn descends_from(&self, other: u64) -> bool {
        self.ancestry().contains(&other)
    }

    /// Express an element of an ancestor algebra in this algebra's basis.
    pub fn reduce_from_ancestor(&self, ancestor: u64, x: &SVec<F>) -> Option<SVec<F>> {
        if ancestor == self.id {
            return Some(x.clone());
        }
        let p = self.parent.as_ref()?;
        let y = p.algebra.reduce_from_ancestor(ancestor, x)?;
        Some(self.reduce_from_parent(&y))
    }

    fn reduce_from_parent(&self, x: &SVec<F>) -> SVec<F> {
        let p = self.parent.as_ref().expect("not a quotient");
        let pa = &p.algebra;
        let mut by_comp: BTreeMap<CompKey, Vec<F>> = BTreeMap::new();
        for (i, c) in x {
            let key = pa.key_of(*i);
            let n = pa.comp(&key).len();
            let v = by_comp.entry(key).or_insert_with(|| vec![F::zero(); n]);
            let l = pa.local_index(*i);
            v[l] = v[l].add_ref(c);
        }
        let mut out = Vec::new();
        for (key, mut v) in by_comp {
            if let Some(sub) = p.ideal.comps.get(&key) {
                sub.reduce_in_place(&mut v);
            }
            let here = self.comp(&key);
            // kept parent elements are exactly the non-pivots, in order
            let kept: Vec<usize> = match p.ideal.comps.get(&key) {
                Some(sub) => sub.non_pivots(),
                None => (0..v.len()).collect(),
            };
            for (k, &l) in kept.iter().enumerate() {
                if !v[l].is_zero() {
                    out.push((here[k], v[l].clone()));
                }
            }
        }
        svec_normalize(out)
    }

    // ------------------------------------------------------------------
    // ideals

    pub fn zero_ideal(&self) -> GradedIdeal<F> {
        GradedIdeal { owner: self.id, comps: BTreeMap::new() }
    }

    pub fn unit_ideal(&self) -> GradedIdeal<F> {
        GradedIdeal { owner: self.id, comps: self.comps.iter().map(|(k, v)| (*k, Subspace::full(v.len()))).collect() }
    }

    /// Π(1 − e_u)Π: everything except the idempotent e_u (valid in Π
    /// itself, where no loops means every nontrivial path leaves u).
    pub fn ideal_vertex(&self, u: usize) -> Result<GradedIdeal<F>> {
        if u >= self.n_vertices() {
            return Err(Error::UnknownVertex(u as u32));
        }
        if self.parent.is_some() {
            let gens: Vec<SVec<F>> =
                (0..self.n_vertices()).filter(|&v| v != u).filter_map(|v| self.vertex_elem[v]).map(|e| self.unit_vec(e)).collect();
            return Ok(self.two_sided_closure(gens));
        }
        let mut comps = BTreeMap::new();
        for (k, v) in &self.comps {
            let mut s = Subspace::full(v.len());
            if *k == (u, u, 0) {
                s = Subspace::from_vectors(
                    v.len(),
                    v.iter().enumerate().filter(|(_, &b)| !self.basis[b].path.is_empty()).map(|(i, _)| {
                        let mut x = vec![F::zero(); v.len()];
                        x[i] = F::one();
                        x
                    }),
                );
            }
            if s.dim() > 0 {
                comps.insert(*k, s);
            }
        }
        Ok(GradedIdeal { owner: self.id, comps })
    }

    pub fn to_local(&self, x: &SVec<F>) -> Option<(CompKey, Vec<F>)> {
        let (first, _) = x.first()?;
        let key = self.key_of(*first);
        let n = self.comp(&key).len();
        let mut v = vec![F::zero(); n];
        for (i, c) in x {
            assert_eq!(self.key_of(*i), key, "inhomogeneous element");
            v[self.local[*i]] = c.clone();
        }
        Some((key, v))
    }

    pub fn from_local(&self, key: &CompKey, v: &[F]) -> SVec<F> {
        let idx = self.comp(key);
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (idx[i], c.clone())).collect()
    }

    fn ideal_insert(&self, comps: &mut BTreeMap<CompKey, Subspace<F>>, x: &SVec<F>) -> bool {
        let Some((key, v)) = self.to_local(x) else { return false };
        let n = v.len();
        comps.entry(key).or_insert_with(|| Subspace::zero(n)).insert(v)
    }

    /// Smallest right ideal containing the (homogeneous) generators.
    pub fn right_closure(&self, gens: Vec<SVec<F>>) -> GradedIdeal<F> {
        self.closure(gens, false)
    }

    pub fn two_sided_closure(&self, gens: Vec<SVec<F>>) -> GradedIdeal<F> {
        self.closure(gens, true)
    }

    fn closure(&self, gens: Vec<SVec<F>>, two_sided: bool) -> GradedIdeal<F> {
        let mut comps = BTreeMap::new();
        let mut queue = Vec::new();
        for g in gens {
            if self.ideal_insert(&mut comps, &g) {
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for a in 0..self.dq.arrows.len() {
                let y = self.right_mul_arrow(&x, a);
                if !y.is_empty() && self.ideal_insert(&mut comps, &y) {
                    queue.push(y);
                }
                if two_sided {
                    let z = self.left_mul_arrow(a, &x);
                    if !z.is_empty() && self.ideal_insert(&mut comps, &z) {
                        queue.push(z);
                    }
                }
            }
        }
        comps.retain(|_, s: &mut Subspace<F>| s.dim() > 0);
        GradedIdeal { owner: self.id, comps }
    }

    pub fn ideal_vectors(&self, i: &GradedIdeal<F>) -> Vec<SVec<F>> {
        i.comps.iter().flat_map(|(k, s)| s.basis().iter().map(move |r| self.from_local(k, r))).collect()
    }

    fn check_owner(&self, i: &GradedIdeal<F>) -> Result<()> {
        if i.owner != self.id {
            return Err(Error::OwnerMismatch("ideal belongs to another algebra".into()));
        }
        Ok(())
    }

    /// I · J, spanned by products of basis vectors.
    pub fn ideal_product(&self, i: &GradedIdeal<F>, j: &GradedIdeal<F>) -> Result<GradedIdeal<F>> {
        self.check_owner(i)?;
        self.check_owner(j)?;
        let jv = self.ideal_vectors(j);
        let mut comps = BTreeMap::new();
        for x in self.ideal_vectors(i) {
            let t = self.basis[x[0].0].target;
            // x·b for every basis element b starting at t, via parents
            let mut xb: BTreeMap<usize, SVec<F>> = BTreeMap::new();
            for (b, e) in self.basis.iter().enumerate() {
                if e.source != t {
                    continue;
                }
                let v = match e.parent {
                    None => x.clone(),
                    Some(p) => match xb.get(&p) {
                        Some(px) => self.right_mul_arrow(px, *e.path.last().unwrap()),
                        None => self.right_mul_path(&x, &e.path),
                    },
                };
                xb.insert(b, v);
            }
            for y in &jv {
                if self.basis[y[0].0].source != t {
                    continue;
                }
                let mut acc = Vec::new();
                for (b, c) in y {
                    for (k, d) in &xb[b] {
                        acc.push((*k, d.mul_ref(c)));
                    }
                }
                let p = svec_normalize(acc);
                if !p.is_empty() {
                    self.ideal_insert(&mut comps, &p);
                }
            }
        }
        comps.retain(|_, s: &mut Subspace<F>| s.dim() > 0);
        Ok(GradedIdeal { owner: self.id, comps })
    }

    /// I · I_u, computed as the right ideal generated by I(1 − e_u).
    pub fn ideal_times_vertex(&self, i: &GradedIdeal<F>, u: usize) -> Result<GradedIdeal<F>> {
        self.check_owner(i)?;
        let gens: Vec<SVec<F>> =
            i.comps.iter().filter(|(k, _)| k.1 != u).flat_map(|(k, s)| s.basis().iter().map(move |r| self.from_local(k, r))).collect();
        Ok(self.right_closure(gens))
    }

    /// I_{u_1} ⋯ I_{u_k} for every prefix (k = 0 gives the unit ideal).
    pub fn prefix_ideals(&self, word: &[usize]) -> Result<Vec<GradedIdeal<F>>> {
        let mut out = vec![self.unit_ideal()];
        for &u in word {
            let next = self.ideal_times_vertex(out.last().unwrap(), u)?;
            out.push(next);
        }
        Ok(out)
    }

    /// J^k: span of basis paths of length ≥ k. Only meaningful for Π_{≤n}
    /// itself, where relations are homogeneous in path length.
    pub fn path_length_ideal(&self, k: usize) -> Result<GradedIdeal<F>> {
        if self.parent.is_some() {
            return Err(Error::Invalid("path length ideal needs a path basis".into()));
        }
        let mut comps = BTreeMap::new();
        for (key, v) in &self.comps {
            let s = Subspace::from_vectors(
                v.len(),
                v.iter().enumerate().filter(|(_, &b)| self.basis[b].length >= k).map(|(i, _)| {
                    let mut x = vec![F::zero(); v.len()];
                    x[i] = F::one();
                    x
                }),
            );
            if s.dim() > 0 {
                comps.insert(*key, s);
            }
        }
        Ok(GradedIdeal { owner: self.id, comps })
    }

    /// Compare I e_u and J e_u (paths ending at u) component by component;
    /// returns (dim Π e_u / I e_u, dim Π e_u / J e_u, equal).
    pub fn compare_columns(&self, i: &GradedIdeal<F>, j: &GradedIdeal<F>, u: usize) -> (usize, usize, bool) {
        let mut qi = 0;
        let mut qj = 0;
        let mut eq = true;
        for (key, v) in &self.comps {
            if key.1 != u {
                continue;
            }
            let zero = Subspace::zero(v.len());
            let a = i.comps.get(key).unwrap_or(&zero);
            let b = j.comps.get(key).unwrap_or(&zero);
            qi += v.len() - a.dim();
            qj += v.len() - b.dim();
            eq &= a.same_as(b);
        }
        (qi, qj, eq)
    }

    pub fn ideal_contains(&self, i: &GradedIdeal<F>, x: &SVec<F>) -> bool {
        match self.to_local(x) {
            None => true,
            Some((k, v)) => i.comps.get(&k).is_some_and(|s| s.contains(&v)),
        }
    }

    /// Check closure under left and right multiplication by arrows.
    pub fn is_two_sided(&self, i: &GradedIdeal<F>) -> bool {
        for x in self.ideal_vectors(i) {
            for a in 0..self.dq.arrows.len() {
                if !self.ideal_contains(i, &self.right_mul_arrow(&x, a)) || !self.ideal_contains(i, &self.left_mul_arrow(a, &x)) {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient by a homogeneous two-sided ideal.
    pub fn quotient(self: &Arc<Self>, i: &GradedIdeal<F>) -> Result<GradedAlgebra<F>> {
        self.check_owner(i)?;
        let mut keep = vec![false; self.dim()];
        for (key, idx) in &self.comps {
            match i.comps.get(key) {
                Some(sub) => {
                    for l in sub.non_pivots() {
                        keep[idx[l]] = true;
                    }
                }
                None => idx.iter().for_each(|&b| keep[b] = true),
            }
        }
        let lift: Vec<usize> = (0..self.dim()).filter(|&b| keep[b]).collect();
        let mut new_of = vec![None; self.dim()];
        for (k, &b) in lift.iter().enumerate() {
            new_of[b] = Some(k);
        }
        let basis: Vec<BasisElem> = lift
            .iter()
            .map(|&b| {
                let mut e = self.basis[b].clone();
                e.parent = e.parent.and_then(|p| new_of[p]);
                e
            })
            .collect();
        let mut q = GradedAlgebra {
            id: fresh_id(),
            label: format!("{}/I", self.label),
            dq: self.dq.clone(),
            max_degree: self.max_degree,
            basis,
            comps: BTreeMap::new(),
            local: Vec::new(),
            right: Vec::new(),
            left: Vec::new(),
            vertex_elem: self.vertex_elem.iter().map(|e| e.and_then(|b| new_of[b])).collect(),
            parent: Some(Parent { algebra: self.clone(), ideal: i.clone(), lift: lift.clone() }),
        };
        q.index_components();
        let na = self.dq.arrows.len();
        let mut right = vec![Vec::with_capacity(lift.len()); na];
        let mut left = vec![Vec::with_capacity(lift.len()); na];
        for a in 0..na {
            for &b in &lift {
                right[a].push(q.reduce_from_parent(&self.right[a][b]));
                left[a].push(q.reduce_from_parent(&self.left[a][b]));
            }
        }
        q.right = right;
        q.left = left;
        Ok(q)
    }

    pub fn parent_algebra(&self) -> Option<&Arc<GradedAlgebra<F>>> {
        self.parent.as_ref().map(|p| &p.algebra)
    }

    /// Per-degree dimensions of an ideal.
    pub fn ideal_dims(&self, i: &GradedIdeal<F>) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (k, s) in &i.comps {
            *out.entry(k.2).or_insert(0) += s.dim();
        }
        out
    }

    /// Does the ideal contain everything of degree d?
    pub fn ideal_full_in_degree(&self, i: &GradedIdeal<F>, d: i32) -> bool {
        self.comps
            .iter()
            .filter(|(k, _)| k.2 == d)
            .all(|(k, v)| i.comps.get(k).map(|s| s.dim()).unwrap_or(0) == v.len())
    }
}

impl<F: Field> GradedIdeal<F> {
    pub fn dim(&self) -> usize {
        self.comps.values().map(|s| s.dim()).sum()
    }

    /// Component-wise subspace equality.
    pub fn same_as(&self, o: &Self) -> bool {
        let keys: std::collections::BTreeSet<&CompKey> = self.comps.keys().chain(o.comps.keys()).collect();
        keys.into_iter().all(|k| match (self.comps.get(k), o.comps.get(k)) {
            (Some(a), Some(b)) => a.same_as(b),
            (Some(a), None) | (None, Some(a)) => a.dim() == 0,
            (None, None) => true,
        })
    }

    pub fn is_subideal_of(&self, o: &Self) -> bool {
        self.comps.iter().all(|(k, s)| s.dim() == 0 || o.comps.get(k).is_some_and(|t| s.is_subspace_of(t)))
    }

    /// Canonical per-component rows, for bitwise comparison.
    pub fn canonical(&self) -> BTreeMap<CompKey, Vec<Vec<F>>> {
        self.comps.iter().filter(|(_, s)| s.dim() > 0).map(|(k, s)| (*k, s.canonical_rows())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::quiver::examples;

    type A = GradedAlgebra<Rat>;

    #[test]
    fn a2_dims() {
        let a = A::preprojective(&examples::a2(), 1).unwrap();
        assert_eq!(a.dim_degree(0), 3);
        assert_eq!(a.dim_degree(1), 1);
        let a = A::preprojective(&examples::a2(), 5).unwrap();
        assert_eq!(a.dim(), 4);
    }

    #[test]
    fn a3_degree_zero_is_path_algebra() {
        let a = A::preprojective(&examples::triangle(), 0).unwrap();
        assert_eq!(a.dim(), 7);
        assert_eq!(a.comp(&(0, 2, 0)).len(), 2);
    }

    #[test]
    fn vertex_ideal_a2() {
        let a = A::preprojective(&examples::a2(), 1).unwrap();
        let i = a.ideal_vertex(0).unwrap();
        assert_eq!(i.dim(), 3);
        let s = A::preprojective(&examples::single(), 3).unwrap();
        assert_eq!(s.ideal_vertex(0).unwrap().dim(), 0);
    }

    #[test]
    fn product_with_unit() {
        let a = A::preprojective(&examples::triangle(), 2).unwrap();
        let i = a.ideal_vertex(1).unwrap();
        let p = a.ideal_product(&i, &a.unit_ideal()).unwrap();
        assert!(p.same_as(&i));
        let fast = a.ideal_times_vertex(&i, 0).unwrap();
        let slow = a.ideal_product(&i, &a.ideal_vertex(0).unwrap()).unwrap();
        assert!(fast.same_as(&slow));
        assert!(a.is_two_sided(&fast));
    }

    #[test]
    fn associativity_spot() {
        let a = A::preprojective(&examples::kronecker(), 3).unwrap();
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let xy = a.mul(&a.unit_vec(x), &a.unit_vec(y));
                for z in (0..a.dim()).step_by(3) {
                    let l = a.mul(&xy, &a.unit_vec(z));
                    let r = a.mul(&a.unit_vec(x), &a.mul(&a.unit_vec(y), &a.unit_vec(z)));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
