//! Finite-dimensional graded left modules over a `GradedAlgebra`.
//!
//! An arrow a acts X_{t(a),d} → X_{s(a),d+deg a}, so a path a_1⋯a_k acts
//! by applying a_k first. Shift: X(j)_d = X_{d+j}.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// (vertex, degree)
pub type Vd = (usize, i32);

type PathKey = (Vec<usize>, i32);

pub struct GradedModule<F: Field> {
    pub owner: Arc<GradedAlgebra<F>>,
    dims: BTreeMap<Vd, usize>,
    /// (arrow, source degree) → matrix X_{t(a),d} → X_{s(a),d+deg a}
    acts: BTreeMap<(usize, i32), Mat<F>>,
    pres: OnceLock<Arc<Presentation<F>>>,
    paths: Mutex<HashMap<PathKey, Option<Arc<Mat<F>>>>>,
}

impl<F: Field> Clone for GradedModule<F> {
    fn clone(&self) -> Self {
        GradedModule {
            owner: self.owner.clone(),
            dims: self.dims.clone(),
            acts: self.acts.clone(),
            pres: self.pres.clone(),
            paths: Mutex::new(HashMap::new()),
        }
    }
}

impl<F: Field> std::fmt::Debug for GradedModule<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule{:?}", self.dims)
    }
}

/// Degree-`shift` morphism: blocks keyed by source component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F: Field> {
    pub shift: i32,
    pub blocks: BTreeMap<Vd, Mat<F>>,
}

#[derive(Debug)]
pub struct Generator<F> {
    pub vertex: usize,
    pub degree: i32,
    pub vec: Vec<F>,
}

/// Projective presentation data: P = ⊕_g A e_{v_g} with e_{v_g} in degree d_g.
#[derive(Debug)]
pub struct Presentation<F: Field> {
    pub gens: Vec<Generator<F>>,
    /// P component → its basis as (generator, owner basis element)
    pub pcomp: BTreeMap<Vd, Vec<(usize, usize)>>,
    pub pi: BTreeMap<Vd, Mat<F>>,
    pub section: BTreeMap<Vd, Mat<F>>,
    pub kernel: BTreeMap<Vd, Subspace<F>>,
}

/// A Hom space, represented by values on the source generators.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub shift: i32,
    pub space: Subspace<F>,
    pub maps: Vec<ModuleMap<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }
}

impl<F: Field> GradedModule<F> {
    pub fn new(owner: Arc<GradedAlgebra<F>>, dims: BTreeMap<Vd, usize>, acts: BTreeMap<(usize, i32), Mat<F>>) -> Self {
        let dims: BTreeMap<Vd, usize> = dims.into_iter().filter(|(_, n)| *n > 0).collect();
        let dq = &owner.dq;
        let acts = acts
            .into_iter()
            .filter(|((a, d), m)| {
                let arr = &dq.arrows[*a];
                let src = dims.get(&(arr.target, *d)).copied().unwrap_or(0);
                let tgt = dims.get(&(arr.source, *d + arr.degree)).copied().unwrap_or(0);
                assert_eq!((m.rows, m.cols), (tgt, src), "action shape for arrow {a} at degree {d}");
                src > 0 && tgt > 0 && !m.is_zero()
            })
            .collect();
        GradedModule { owner, dims, acts, pres: OnceLock::new(), paths: Mutex::new(HashMap::new()) }
    }

    pub fn zero(owner: Arc<GradedAlgebra<F>>) -> Self {
        Self::new(owner, BTreeMap::new(), BTreeMap::new())
    }

    /// The left module A e_u(j).
    pub fn projective(owner: &Arc<GradedAlgebra<F>>, u: usize, j: i32) -> Self {
        let a = owner.as_ref();
        let col: Vec<usize> = (0..a.dim()).filter(|&b| a.basis[b].target == u).collect();
        let mut comp: BTreeMap<Vd, Vec<usize>> = BTreeMap::new();
        for &b in &col {
            comp.entry((a.basis[b].source, a.basis[b].degree - j)).or_default().push(b);
        }
        let pos: HashMap<usize, usize> =
            comp.values().flat_map(|v| v.iter().enumerate().map(|(i, &b)| (b, i))).collect();
        let dims = comp.iter().map(|(k, v)| (*k, v.len())).collect();
        let mut acts = BTreeMap::new();
        for (ai, arr) in a.dq.arrows.iter().enumerate() {
            for ((v, d), elems) in &comp {
                if *v != arr.target {
                    continue;
                }
                let Some(tgt) = comp.get(&(arr.source, d + arr.degree)) else { continue };
                let mut m = Mat::zeros(tgt.len(), elems.len());
                for (c, &b) in elems.iter().enumerate() {
                    for (k, x) in a.left_arrow(ai, b) {
                        m.set(pos[k], c, x.clone());
                    }
                }
                acts.insert((ai, *d), m);
            }
        }
        Self::new(owner.clone(), dims, acts)
    }

    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &BTreeMap<Vd, usize> {
        &self.dims
    }

    pub fn dim_at(&self, v: usize, d: i32) -> usize {
        self.dims.get(&(v, d)).copied().unwrap_or(0)
    }

    pub fn acts(&self) -> &BTreeMap<(usize, i32), Mat<F>> {
        &self.acts
    }

    pub fn act(&self, a: usize, d: i32) -> Option<&Mat<F>> {
        self.acts.get(&(a, d))
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.dims.keys().map(|k| k.1).min()?;
        let hi = self.dims.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    pub fn dim_in_degree(&self, d: i32) -> usize {
        self.dims.iter().filter(|(k, _)| k.1 == d).map(|(_, n)| n).sum()
    }

    /// Dimension vector (indexed by vertex) of the whole module.
    pub fn dim_vector(&self) -> Vec<usize> {
        let mut v = vec![0; self.owner.n_vertices()];
        for ((u, _), n) in &self.dims {
            v[*u] += n;
        }
        v
    }

    pub fn graded_dim_vector(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut out: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let n = self.owner.n_vertices();
        for ((u, d), k) in &self.dims {
            out.entry(*d).or_insert_with(|| vec![0; n])[*u] += k;
        }
        out
    }

    /// Matrix of a path acting from degree d at its target; None means zero.
    pub fn path_matrix(&self, path: &[usize], target_vertex: usize, d: i32) -> Option<Arc<Mat<F>>> {
        if path.is_empty() {
            let n = self.dim_at(target_vertex, d);
            return if n == 0 { None } else { Some(Arc::new(Mat::identity(n))) };
        }
        let key = (path.to_vec(), d);
        if let Some(m) = self.paths.lock().unwrap().get(&key) {
            return m.clone();
        }
        let last = *path.last().unwrap();
        let res = match self.acts.get(&(last, d)) {
            None => None,
            Some(a) => {
                let arr = &self.owner.dq.arrows[last];
                if path.len() == 1 {
                    Some(Arc::new(a.clone()))
                } else {
                    self.path_matrix(&path[..path.len() - 1], arr.source, d + arr.degree)
                        .map(|p| p.mul(a))
                        .filter(|m| !m.is_zero())
                        .map(Arc::new)
                }
            }
        };
        self.paths.lock().unwrap().insert(key, res.clone());
        res
    }

    /// Action of the owner basis element b on X_{t(b),d}.
    pub fn basis_action(&self, b: usize, d: i32) -> Option<Arc<Mat<F>>> {
        let e = &self.owner.basis[b];
        self.path_matrix(&e.path, e.target, d)
    }

    pub fn shift(&self, j: i32) -> Self {
        let dims = self.dims.iter().map(|((v, d), n)| ((*v, d - j), *n)).collect();
        let acts = self.acts.iter().map(|((a, d), m)| ((*a, d - j), m.clone())).collect();
        Self::new(self.owner.clone(), dims, acts)
    }

    fn restrict_degrees(&self, keep: impl Fn(i32) -> bool) -> Self {
        let dims = self.dims.iter().filter(|(k, _)| keep(k.1)).map(|(k, n)| (*k, *n)).collect();
        let dq = &self.owner.dq;
        let acts = self
            .acts
            .iter()
            .filter(|((a, d), _)| keep(*d) && keep(d + dq.arrows[*a].degree))
            .map(|(k, m)| (*k, m.clone()))
            .collect();
        Self::new(self.owner.clone(), dims, acts)
    }

    /// X_{≤i} (quotient).
    pub fn truncate_above(&self, i: i32) -> Self {
        self.restrict_degrees(|d| d <= i)
    }

    /// X_{≥i} (submodule).
    pub fn truncate_below(&self, i: i32) -> Self {
        self.restrict_degrees(|d| d >= i)
    }

    /// X_{[i,j]}
    pub fn slice(&self, i: i32, j: i32) -> Self {
        self.restrict_degrees(|d| d >= i && d <= j)
    }

    /// Inclusion X_{≥i} → X.
    pub fn truncate_below_inclusion(&self, i: i32) -> ModuleMap<F> {
        ModuleMap {
            shift: 0,
            blocks: self.dims.iter().filter(|(k, _)| k.1 >= i).map(|(k, n)| (*k, Mat::identity(*n))).collect(),
        }
    }

    /// Projection X → X_{≤i}.
    pub fn truncate_above_projection(&self, i: i32) -> ModuleMap<F> {
        ModuleMap {
            shift: 0,
            blocks: self.dims.iter().filter(|(k, _)| k.1 <= i).map(|(k, n)| (*k, Mat::identity(*n))).collect(),
        }
    }

    /// Same data over another algebra with the same double quiver, unchecked.
    pub fn retarget(&self, owner: Arc<GradedAlgebra<F>>) -> Self {
        debug_assert!(owner.dq == self.owner.dq);
        Self::new(owner, self.dims.clone(), self.acts.clone())
    }

    /// Same spaces and matrices over another algebra with the same double
    /// quiver (arrows that vanish there must act as zero).
    pub fn with_owner(&self, owner: Arc<GradedAlgebra<F>>) -> Result<Self> {
        if owner.dq != self.owner.dq {
            return Err(Error::OwnerMismatch("different double quivers".into()));
        }
        let m = Self::new(owner, self.dims.clone(), self.acts.clone());
        if !m.check_module() {
            return Err(Error::OwnerMismatch("module is not annihilated by the new owner's ideal".into()));
        }
        Ok(m)
    }

    /// Preprojective relations and annihilation by every ideal in the owner
    /// chain, plus vanishing above the truncation degree.
    pub fn check_module(&self) -> bool {
        let dq = &self.owner.dq;
        // relations ρ_v
        for &(v, d) in self.dims.keys() {
            let mut acc = Mat::zeros(0, 0);
            let mut first = true;
            for (al, arr) in dq.arrows.iter().enumerate().take(dq.num_base()) {
                let st = dq.star(al);
                // path α α* acts: apply α* first, then α; lands in degree d+1 at v
                let mut add = |p: [usize; 2], sign: i64| {
                    if let Some(m) = self.path_matrix(&p, v, d) {
                        let m = m.scale(&F::from_i64(sign));
                        if first {
                            acc = m;
                            first = false;
                        } else {
                            acc = acc.add(&m);
                        }
                    }
                };
                if arr.source == v {
                    add([al, st], 1);
                }
                if arr.target == v {
                    add([st, al], -1);
                }
            }
            if !first && !acc.is_zero() {
                return false;
            }
        }
        // truncation and ideals
        let mut alg: &GradedAlgebra<F> = self.owner.as_ref();
        loop {
            match &alg.parent {
                None => {
                    // Π_{≤N}: paths of degree N+1 act as zero
                    let n = alg.max_degree;
                    if let Some((lo, hi)) = self.degree_range() {
                        if hi - lo > n && !self.high_paths_vanish(n + 1) {
                            return false;
                        }
                    }
                    break;
                }
                Some(p) => {
                    let pa = p.algebra.as_ref();
                    for x in pa.ideal_vectors(&p.ideal) {
                        for (&(v, d), _) in &self.dims {
                            let t = pa.basis[x[0].0].target;
                            if t != v {
                                continue;
                            }
                            let mut acc: Option<Mat<F>> = None;
                            for (b, c) in &x {
                                let e = &pa.basis[*b];
                                if let Some(m) = self.path_matrix(&e.path, e.target, d) {
                                    let m = m.scale(c);
                                    acc = Some(match acc {
                                        None => m,
                                        Some(a) => a.add(&m),
                                    });
                                }
                            }
                            if acc.is_some_and(|m| !m.is_zero()) {
                                return false;
                            }
                        }
                    }
                    alg = pa;
                }
            }
        }
        true
    }

    fn high_paths_vanish(&self, deg: i32) -> bool {
        // every path of degree `deg` between existing components acts as zero
        let dq = &self.owner.dq;
        for &(v, d) in self.dims.keys() {
            for w in 0..dq.n() {
                if self.dim_at(w, d + deg) == 0 {
                    continue;
                }
                for p in dq.enumerate_paths(w, v, deg) {
                    if p.degree == deg && self.path_matrix(&p.arrows, v, d).is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }

    // ------------------------------------------------------------------
    // sub and quotient modules

    /// Submodule on the given per-component subspaces (must be closed).
    pub fn submodule(&self, subs: &BTreeMap<Vd, Subspace<F>>) -> (Self, ModuleMap<F>) {
        let dims = subs.iter().map(|(k, s)| (*k, s.dim())).collect();
        let dq = &self.owner.dq;
        let mut acts = BTreeMap::new();
        for ((a, d), m) in &self.acts {
            let arr = &dq.arrows[*a];
            let (Some(src), Some(tgt)) = (subs.get(&(arr.target, *d)), subs.get(&(arr.source, d + arr.degree))) else {
                continue;
            };
            if src.dim() == 0 || tgt.dim() == 0 {
                continue;
            }
            let cols: Vec<Vec<F>> = src
                .basis()
                .iter()
                .map(|v| {
                    let img = m.mul_vec(v);
                    debug_assert!(tgt.contains(&img), "subspaces not closed under arrow {a}");
                    tgt.coords_unchecked(&img)
                })
                .collect();
            acts.insert((*a, *d), Mat::from_cols(tgt.dim(), &cols));
        }
        let incl = ModuleMap {
            shift: 0,
            blocks: subs.iter().filter(|(_, s)| s.dim() > 0).map(|(k, s)| (*k, s.as_columns())).collect(),
        };
        (Self::new(self.owner.clone(), dims, acts), incl)
    }

    /// Quotient by per-component subspaces (must be closed).
    pub fn quotient(&self, subs: &BTreeMap<Vd, Subspace<F>>) -> (Self, ModuleMap<F>) {
        let mut dims = BTreeMap::new();
        let mut proj = BTreeMap::new();
        let mut keep: BTreeMap<Vd, Vec<usize>> = BTreeMap::new();
        for (&k, &n) in &self.dims {
            let np = match subs.get(&k) {
                Some(s) => s.non_pivots(),
                None => (0..n).collect(),
            };
            if np.is_empty() {
                continue;
            }
            dims.insert(k, np.len());
            let mut p = Mat::zeros(np.len(), n);
            for c in 0..n {
                let mut e = vec![F::zero(); n];
                e[c] = F::one();
                let r = match subs.get(&k) {
                    Some(s) => s.reduce(&e),
                    None => e,
                };
                for (i, &j) in np.iter().enumerate() {
                    if !r[j].is_zero() {
                        p.set(i, c, r[j].clone());
                    }
                }
            }
            proj.insert(k, p);
            keep.insert(k, np);
        }
        let dq = &self.owner.dq;
        let mut acts = BTreeMap::new();
        for ((a, d), m) in &self.acts {
            let arr = &dq.arrows[*a];
            let (Some(src), Some(tp)) = (keep.get(&(arr.target, *d)), proj.get(&(arr.source, d + arr.degree))) else {
                continue;
            };
            let sel = m.select(&(0..m.rows).collect::<Vec<_>>(), src);
            acts.insert((*a, *d), tp.mul(&sel));
        }
        (Self::new(self.owner.clone(), dims, acts), ModuleMap { shift: 0, blocks: proj })
    }

    // ------------------------------------------------------------------
    // presentation

    pub fn presentation(&self) -> Arc<Presentation<F>> {
        self.pres.get_or_init(|| Arc::new(self.build_presentation())).clone()
    }

    /// Per-component radical rad X = Σ_a a·X.
    pub fn radical(&self) -> BTreeMap<Vd, Subspace<F>> {
        let dq = &self.owner.dq;
        let mut rad: BTreeMap<Vd, Subspace<F>> = BTreeMap::new();
        for ((a, d), m) in &self.acts {
            let arr = &dq.arrows[*a];
            let key = (arr.source, d + arr.degree);
            let s = rad.entry(key).or_insert_with(|| Subspace::zero(m.rows));
            for c in m.col_vecs() {
                s.insert(c);
            }
        }
        rad
    }

    fn build_presentation(&self) -> Presentation<F> {
        let a = self.owner.as_ref();
        let rad = self.radical();
        let mut gens = Vec::new();
        for (&(v, d), &n) in &self.dims {
            let np = match rad.get(&(v, d)) {
                Some(s) => s.non_pivots(),
                None => (0..n).collect(),
            };
            for j in np {
                let mut e = vec![F::zero(); n];
                e[j] = F::one();
                gens.push(Generator { vertex: v, degree: d, vec: e });
            }
        }
        let mut pcomp: BTreeMap<Vd, Vec<(usize, usize)>> = BTreeMap::new();
        for (g, gen) in gens.iter().enumerate() {
            for (b, e) in a.basis.iter().enumerate() {
                if e.target == gen.vertex {
                    pcomp.entry((e.source, gen.degree + e.degree)).or_default().push((g, b));
                }
            }
        }
        let mut pi = BTreeMap::new();
        let mut section = BTreeMap::new();
        let mut kernel = BTreeMap::new();
        for (&(w, e), elems) in &pcomp {
            let rows = self.dim_at(w, e);
            let cols: Vec<Vec<F>> = elems
                .iter()
                .map(|&(g, b)| match self.basis_action(b, gens[g].degree) {
                    Some(m) => m.mul_vec(&gens[g].vec),
                    None => vec![F::zero(); rows],
                })
                .collect();
            let m = Mat::from_cols(rows, &cols);
            if rows > 0 {
                let s = m.solve_mat(&Mat::identity(rows)).expect("generators span the module");
                section.insert((w, e), s);
            }
            kernel.insert((w, e), Subspace::from_vectors(elems.len(), m.kernel()));
            pi.insert((w, e), m);
        }
        Presentation { gens, pcomp, pi, section, kernel }
    }

    /// Projective cover P(X) → X.
    pub fn projective_cover(&self) -> (Self, ModuleMap<F>) {
        let pres = self.presentation();
        let p = self.free_on(&pres);
        let pi = ModuleMap {
            shift: 0,
            blocks: pres.pi.iter().filter(|(k, m)| m.rows > 0 && m.cols > 0 && p.dim_at(k.0, k.1) > 0).map(|(k, m)| (*k, m.clone())).collect(),
        };
        (p, pi)
    }

    fn free_on(&self, pres: &Presentation<F>) -> Self {
        let a = self.owner.as_ref();
        let dims = pres.pcomp.iter().map(|(k, v)| (*k, v.len())).collect();
        let pos: BTreeMap<Vd, HashMap<(usize, usize), usize>> = pres
            .pcomp
            .iter()
            .map(|(k, v)| (*k, v.iter().enumerate().map(|(i, gb)| (*gb, i)).collect()))
            .collect();
        let mut acts = BTreeMap::new();
        for (ai, arr) in a.dq.arrows.iter().enumerate() {
            for (&(w, e), elems) in &pres.pcomp {
                if w != arr.target {
                    continue;
                }
                let tk = (arr.source, e + arr.degree);
                let Some(tpos) = pos.get(&tk) else { continue };
                let mut m = Mat::zeros(tpos.len(), elems.len());
                for (c, &(g, b)) in elems.iter().enumerate() {
                    for (k, x) in a.left_arrow(ai, b) {
                        m.set(tpos[&(g, *k)], c, x.clone());
                    }
                }
                acts.insert((ai, e), m);
            }
        }
        Self::new(self.owner.clone(), dims, acts)
    }

    /// Ω X = ker(P(X) → X), with its inclusion into P(X).
    pub fn syzygy_with_inclusion(&self) -> (Self, Self, ModuleMap<F>) {
        let pres = self.presentation();
        let p = self.free_on(&pres);
        let (k, incl) = p.submodule(&pres.kernel);
        (k, p, incl)
    }

    pub fn syzygy(&self) -> Self {
        self.syzygy_with_inclusion().0
    }

    pub fn is_projective(&self) -> bool {
        self.dim() == self.presentation().pcomp.values().map(|v| v.len()).sum::<usize>()
    }

    // ------------------------------------------------------------------
    // Hom

    fn check_hom_owner(&self, y: &Self) -> Result<()> {
        if !y.owner.descends_from(self.owner.id) {
            return Err(Error::OwnerMismatch(format!("{} vs {}", self.owner.label, y.owner.label)));
        }
        Ok(())
    }

    /// Layout of generator values in Y(s): offset per generator.
    fn gen_layout(&self, y: &Self, s: i32) -> (Vec<usize>, usize) {
        let pres = self.presentation();
        let mut off = Vec::with_capacity(pres.gens.len());
        let mut total = 0;
        for g in &pres.gens {
            off.push(total);
            total += y.dim_at(g.vertex, g.degree + s);
        }
        (off, total)
    }

    /// Hom^Z(X, Y(s)).
    pub fn hom(&self, y: &Self, s: i32) -> Result<HomSpace<F>> {
        self.check_hom_owner(y)?;
        let pres = self.presentation();
        let (off, total) = self.gen_layout(y, s);
        if total == 0 {
            return Ok(HomSpace { shift: s, space: Subspace::zero(0), maps: Vec::new() });
        }
        let mut rows: Vec<Vec<F>> = Vec::new();
        for (&(w, e), elems) in &pres.pcomp {
            let ydim = y.dim_at(w, e + s);
            if ydim == 0 {
                continue;
            }
            let ker = &pres.kernel[&(w, e)];
            if ker.dim() == 0 {
                continue;
            }
            // action matrices for each (g,b)
            let mats: Vec<Option<Arc<Mat<F>>>> =
                elems.iter().map(|&(g, b)| y.basis_action(b, pres.gens[g].degree + s)).collect();
            for k in ker.basis() {
                let mut block = vec![vec![F::zero(); total]; ydim];
                for (j, c) in k.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let Some(m) = &mats[j] else { continue };
                    let g = elems[j].0;
                    for r in 0..ydim {
                        for col in 0..m.cols {
                            let x = m.get(r, col);
                            if !x.is_zero() {
                                block[r][off[g] + col].add_mul_assign(c, x);
                            }
                        }
                    }
                }
                rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
            }
        }
        let sols = if rows.is_empty() {
            (0..total)
                .map(|i| {
                    let mut v = vec![F::zero(); total];
                    v[i] = F::one();
                    v
                })
                .collect()
        } else {
            Mat::from_rows(rows.len(), total, rows).kernel()
        };
        let space = Subspace::from_vectors(total, sols);
        let maps = space.basis().iter().map(|v| self.map_from_gen_values(y, s, v)).collect();
        Ok(HomSpace { shift: s, space, maps })
    }

    /// The homomorphism X → Y(s) with the given values on generators
    /// (no consistency check).
    pub fn map_from_gen_values(&self, y: &Self, s: i32, vals: &[F]) -> ModuleMap<F> {
        let pres = self.presentation();
        let (off, _) = self.gen_layout(y, s);
        let mut blocks = BTreeMap::new();
        for (&(w, e), elems) in &pres.pcomp {
            let ydim = y.dim_at(w, e + s);
            let xdim = self.dim_at(w, e);
            if ydim == 0 || xdim == 0 {
                continue;
            }
            let mut fm = Mat::zeros(ydim, elems.len());
            for (j, &(g, b)) in elems.iter().enumerate() {
                let gd = pres.gens[g].degree;
                let gv = y.dim_at(pres.gens[g].vertex, gd + s);
                if gv == 0 {
                    continue;
                }
                if let Some(m) = y.basis_action(b, gd + s) {
                    let col = m.mul_vec(&vals[off[g]..off[g] + gv]);
                    for (r, x) in col.into_iter().enumerate() {
                        fm.set(r, j, x);
                    }
                }
            }
            let f = fm.mul(&pres.section[&(w, e)]);
            if !f.is_zero() {
                blocks.insert((w, e), f);
            }
        }
        ModuleMap { shift: s, blocks }
    }

    /// Values of a map on the generators (coordinates used by HomSpace).
    pub fn gen_values(&self, y: &Self, f: &ModuleMap<F>) -> Vec<F> {
        let pres = self.presentation();
        let (off, total) = self.gen_layout(y, f.shift);
        let mut out = vec![F::zero(); total];
        for (g, gen) in pres.gens.iter().enumerate() {
            if let Some(m) = f.blocks.get(&(gen.vertex, gen.degree)) {
                for (i, x) in m.mul_vec(&gen.vec).into_iter().enumerate() {
                    out[off[g] + i] = x;
                }
            }
        }
        out
    }

    /// Coordinates of f in a HomSpace basis.
    pub fn hom_coords(&self, y: &Self, h: &HomSpace<F>, f: &ModuleMap<F>) -> Option<Vec<F>> {
        h.space.coords(&self.gen_values(y, f))
    }

    pub fn is_homomorphism(&self, y: &Self, f: &ModuleMap<F>) -> bool {
        let dq = &self.owner.dq;
        let s = f.shift;
        for (a, arr) in dq.arrows.iter().enumerate() {
            for &(v, d) in self.dims.keys() {
                if v != arr.target {
                    continue;
                }
                let tx = (arr.source, d + arr.degree);
                // f ∘ X_a  vs  Y_a ∘ f
                let lhs = match (self.act(a, d), f.blocks.get(&tx)) {
                    (Some(xa), Some(ft)) => Some(ft.mul(xa)),
                    _ => None,
                };
                let rhs = match (f.blocks.get(&(v, d)), y.act(a, d + s)) {
                    (Some(fv), Some(ya)) => Some(ya.mul(fv)),
                    _ => None,
                };
                let ok = match (lhs, rhs) {
                    (None, None) => true,
                    (Some(l), None) | (None, Some(l)) => l.is_zero(),
                    (Some(l), Some(r)) => l == r,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Hom^Z(X, Y(s)) modulo maps factoring through projectives over Y's owner.
    pub fn stable_hom_dim(&self, y: &Self, s: i32) -> Result<usize> {
        let h = self.hom(y, s)?;
        if h.dim() == 0 {
            return Ok(0);
        }
        let r = self.projective_factoring_span(y, s)?;
        Ok(h.dim() - r.dim())
    }

    /// Span (in generator-value coordinates) of maps X → Y(s) that factor
    /// through a projective.
    pub fn projective_factoring_span(&self, y: &Self, s: i32) -> Result<Subspace<F>> {
        let (py, piy) = y.projective_cover();
        let hp = self.hom(&py, s)?;
        let (_, total) = self.gen_layout(y, s);
        let mut sp = Subspace::zero(total);
        for f in &hp.maps {
            let g = compose(&piy, f);
            sp.insert(self.gen_values(y, &g));
        }
        Ok(sp)
    }

    /// dim Ext¹(X, Y(s)).
    pub fn ext1_dim(&self, y: &Self, s: i32) -> Result<usize> {
        self.check_hom_owner(y)?;
        let pres = self.presentation();
        let (omega, _, incl) = self.syzygy_with_inclusion();
        if omega.is_zero() {
            return Ok(0);
        }
        let h = omega.hom(y, s)?;
        if h.dim() == 0 {
            return Ok(0);
        }
        // restrictions of Hom(P(X), Y(s)), P free on the generators
        let mut sp = Subspace::zero(h.space.ambient);
        for (g, gen) in pres.gens.iter().enumerate() {
            let n = y.dim_at(gen.vertex, gen.degree + s);
            for i in 0..n {
                // map P → Y(s) sending generator g to basis vector i
                let mut blocks = BTreeMap::new();
                for (&(w, e), elems) in &pres.pcomp {
                    let ydim = y.dim_at(w, e + s);
                    if ydim == 0 {
                        continue;
                    }
                    let mut m = Mat::zeros(ydim, elems.len());
                    for (j, &(gg, b)) in elems.iter().enumerate() {
                        if gg != g {
                            continue;
                        }
                        if let Some(a) = y.basis_action(b, gen.degree + s) {
                            for r in 0..ydim {
                                m.set(r, j, a.get(r, i).clone());
                            }
                        }
                    }
                    if !m.is_zero() {
                        blocks.insert((w, e), m);
                    }
                }
                let hmap = ModuleMap { shift: s, blocks };
                let r = compose(&hmap, &incl);
                sp.insert(omega.gen_values(y, &r));
            }
        }
        Ok(h.dim() - sp.dim())
    }

    /// Shift window of Hom(X, A e_u(s)) that can be nonzero.
    pub fn free_shift_window(&self) -> Option<(i32, i32)> {
        let (lo, hi) = self.degree_range()?;
        let top = self.owner.max_present_degree();
        Some((-hi, top - lo))
    }

    /// X embeds in a graded free module over its owner: the common kernel of
    /// all maps to shifted indecomposable projectives is zero.
    pub fn in_sub(&self) -> Result<bool> {
        let Some((slo, shi)) = self.free_shift_window() else { return Ok(true) };
        let mut stacks: BTreeMap<Vd, Vec<Vec<F>>> = BTreeMap::new();
        for u in 0..self.owner.n_vertices() {
            let p = Self::projective(&self.owner, u, 0);
            for s in slo..=shi {
                let h = self.hom(&p, s)?;
                for f in &h.maps {
                    for (k, m) in &f.blocks {
                        stacks.entry(*k).or_default().extend(m.row_vecs());
                    }
                }
            }
        }
        for (&k, &n) in &self.dims {
            let rows = stacks.remove(&k).unwrap_or_default();
            if rows.is_empty() {
                return Ok(false);
            }
            if Mat::from_rows(rows.len(), n, rows).rank() < n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ω⁻X: cokernel of the left approximation by shifted projectives.
    pub fn cosyzygy(&self) -> Result<(Self, Self, ModuleMap<F>)> {
        let Some((slo, shi)) = self.free_shift_window() else {
            return Ok((self.clone(), self.clone(), ModuleMap { shift: 0, blocks: BTreeMap::new() }));
        };
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for u in 0..self.owner.n_vertices() {
            for s in slo..=shi {
                let p = Self::projective(&self.owner, u, 0);
                let h = self.hom(&p, s)?;
                for f in h.maps {
                    parts.push(p.shift(s));
                    maps.push(ModuleMap { shift: 0, blocks: f.blocks });
                }
            }
        }
        let (free, incls, _) = direct_sum(&self.owner, &parts);
        let mut total: ModuleMap<F> = ModuleMap { shift: 0, blocks: BTreeMap::new() };
        for (f, i) in maps.iter().zip(&incls) {
            total = add_maps(&total, &compose(i, f), self, &free);
        }
        if !is_injective(self, &total) {
            return Err(Error::NotInSub("left approximation is not injective".into()));
        }
        let (c, _) = cokernel(&free, self, &total);
        Ok((c, free, total))
    }

    // ------------------------------------------------------------------

    /// Radical layers: for each k, the (vertex, degree) multiplicities of
    /// rad^k X / rad^{k+1} X.
    pub fn radical_layers(&self) -> Vec<BTreeMap<Vd, usize>> {
        let mut layers = Vec::new();
        let mut cur: BTreeMap<Vd, Subspace<F>> = self.dims.iter().map(|(k, n)| (*k, Subspace::full(*n))).collect();
        let dq = &self.owner.dq;
        loop {
            if cur.values().all(|s| s.dim() == 0) {
                break;
            }
            let mut next: BTreeMap<Vd, Subspace<F>> =
                self.dims.iter().map(|(k, n)| (*k, Subspace::zero(*n))).collect();
            for ((a, d), m) in &self.acts {
                let arr = &dq.arrows[*a];
                let Some(src) = cur.get(&(arr.target, *d)) else { continue };
                let tgt = next.get_mut(&(arr.source, d + arr.degree)).unwrap();
                for v in src.basis() {
                    tgt.insert(m.mul_vec(v));
                }
            }
            let layer: BTreeMap<Vd, usize> =
                cur.iter().map(|(k, s)| (*k, s.dim() - next[k].dim())).filter(|(_, n)| *n > 0).collect();
            layers.push(layer);
            cur = next;
        }
        layers
    }

    /// Some isomorphism X → Y, found from random combinations of a Hom basis.
    pub fn find_isomorphism(&self, y: &Self, seed: u64) -> Result<Option<ModuleMap<F>>> {
        if self.dims != y.dims {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(ModuleMap { shift: 0, blocks: BTreeMap::new() }));
        }
        let h = self.hom(y, 0)?;
        if h.dim() == 0 {
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tries: Vec<Vec<F>> = Vec::new();
        if h.dim() == 1 {
            tries.push(vec![F::one()]);
        } else {
            for _ in 0..12 {
                tries.push((0..h.dim()).map(|_| F::from_i64(rng.gen_range(-40..=40))).collect());
            }
        }
        for coeffs in tries {
            let f = combine(&h.maps, &coeffs);
            if is_bijective(self, y, &f) {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }

    pub fn support_vertices(&self) -> BTreeSet<usize> {
        self.dims.keys().map(|k| k.0).collect()
    }
}

// ----------------------------------------------------------------------
// maps

/// g ∘ f
pub fn compose<F: Field>(g: &ModuleMap<F>, f: &ModuleMap<F>) -> ModuleMap<F> {
    let mut blocks = BTreeMap::new();
    for (&(v, d), fm) in &f.blocks {
        if let Some(gm) = g.blocks.get(&(v, d + f.shift)) {
            let m = gm.mul(fm);
            if !m.is_zero() {
                blocks.insert((v, d), m);
            }
        }
    }
    ModuleMap { shift: f.shift + g.shift, blocks }
}

pub fn add_maps<F: Field>(f: &ModuleMap<F>, g: &ModuleMap<F>, _x: &GradedModule<F>, _y: &GradedModule<F>) -> ModuleMap<F> {
    if f.blocks.is_empty() {
        return g.clone();
    }
    if g.blocks.is_empty() {
        return f.clone();
    }
    assert_eq!(f.shift, g.shift);
    let mut blocks = f.blocks.clone();
    for (k, m) in &g.blocks {
        match blocks.get_mut(k) {
            Some(b) => *b = b.add(m),
            None => {
                blocks.insert(*k, m.clone());
            }
        }
    }
    blocks.retain(|_, m| !m.is_zero());
    ModuleMap { shift: f.shift, blocks }
}

pub fn scale_map<F: Field>(f: &ModuleMap<F>, c: &F) -> ModuleMap<F> {
    if c.is_zero() {
        return ModuleMap { shift: f.shift, blocks: BTreeMap::new() };
    }
    ModuleMap { shift: f.shift, blocks: f.blocks.iter().map(|(k, m)| (*k, m.scale(c))).collect() }
}

pub fn combine<F: Field>(maps: &[ModuleMap<F>], coeffs: &[F]) -> ModuleMap<F> {
    let shift = maps.first().map(|m| m.shift).unwrap_or(0);
    let mut blocks: BTreeMap<Vd, Mat<F>> = BTreeMap::new();
    for (f, c) in maps.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (k, m) in &f.blocks {
            match blocks.get_mut(k) {
                Some(b) => b.add_scaled_assign(m, c),
                None => {
                    blocks.insert(*k, m.scale(c));
                }
            }
        }
    }
    blocks.retain(|_, m| !m.is_zero());
    ModuleMap { shift, blocks }
}

pub fn identity_map<F: Field>(x: &GradedModule<F>) -> ModuleMap<F> {
    ModuleMap { shift: 0, blocks: x.dims().iter().map(|(k, n)| (*k, Mat::identity(*n))).collect() }
}

pub fn is_zero_map<F: Field>(f: &ModuleMap<F>) -> bool {
    f.blocks.values().all(|m| m.is_zero())
}

pub fn is_injective<F: Field>(x: &GradedModule<F>, f: &ModuleMap<F>) -> bool {
    x.dims().iter().all(|(k, n)| f.blocks.get(k).is_some_and(|m| m.rank() == *n))
}

pub fn is_surjective<F: Field>(x: &GradedModule<F>, y: &GradedModule<F>, f: &ModuleMap<F>) -> bool {
    y.dims().iter().all(|(&(v, d), &n)| {
        let src = (v, d - f.shift);
        x.dim_at(src.0, src.1) > 0 && f.blocks.get(&src).is_some_and(|m| m.rank() == n)
    })
}

pub fn is_bijective<F: Field>(x: &GradedModule<F>, y: &GradedModule<F>, f: &ModuleMap<F>) -> bool {
    if x.dim() != y.dim() {
        return false;
    }
    is_injective(x, f) && is_surjective(x, y, f)
}

/// Per-component kernel of f: X → Y(s), as a submodule of X.
pub fn kernel<F: Field>(x: &GradedModule<F>, f: &ModuleMap<F>) -> (GradedModule<F>, ModuleMap<F>) {
    let subs = x
        .dims()
        .iter()
        .map(|(k, n)| {
            let s = match f.blocks.get(k) {
                Some(m) => Subspace::from_vectors(*n, m.kernel()),
                None => Subspace::full(*n),
            };
            (*k, s)
        })
        .collect();
    x.submodule(&subs)
}

/// Image of f: X → Y(s) as a submodule of Y (in Y's own grading).
pub fn image_subspaces<F: Field>(x: &GradedModule<F>, y: &GradedModule<F>, f: &ModuleMap<F>) -> BTreeMap<Vd, Subspace<F>> {
    let mut subs: BTreeMap<Vd, Subspace<F>> = y.dims().iter().map(|(k, n)| (*k, Subspace::zero(*n))).collect();
    for (&(v, d), m) in &f.blocks {
        if x.dim_at(v, d) == 0 {
            continue;
        }
        let s = subs.get_mut(&(v, d + f.shift)).unwrap();
        for c in m.col_vecs() {
            s.insert(c);
        }
    }
    subs
}

/// Cokernel of f: X → Y(s); returns Y/im f (in Y's grading) and the projection.
pub fn cokernel<F: Field>(y: &GradedModule<F>, x: &GradedModule<F>, f: &ModuleMap<F>) -> (GradedModule<F>, ModuleMap<F>) {
    y.quotient(&image_subspaces(x, y, f))
}

/// Direct sum with inclusions and projections.
pub fn direct_sum<F: Field>(
    owner: &Arc<GradedAlgebra<F>>,
    parts: &[GradedModule<F>],
) -> (GradedModule<F>, Vec<ModuleMap<F>>, Vec<ModuleMap<F>>) {
    let mut dims: BTreeMap<Vd, usize> = BTreeMap::new();
    let mut offs: Vec<BTreeMap<Vd, usize>> = Vec::new();
    for p in parts {
        let mut o = BTreeMap::new();
        for (k, n) in p.dims() {
            let e = dims.entry(*k).or_insert(0);
            o.insert(*k, *e);
            *e += n;
        }
        offs.push(o);
    }
    let dq = &owner.dq;
    let mut acts: BTreeMap<(usize, i32), Mat<F>> = BTreeMap::new();
    for (pi, p) in parts.iter().enumerate() {
        for ((a, d), m) in p.acts() {
            let arr = &dq.arrows[*a];
            let sk = (arr.target, *d);
            let tk = (arr.source, d + arr.degree);
            let e = acts.entry((*a, *d)).or_insert_with(|| Mat::zeros(dims[&tk], dims[&sk]));
            e.put(offs[pi][&tk], offs[pi][&sk], m);
        }
    }
    let sum = GradedModule::new(owner.clone(), dims.clone(), acts);
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    for (pi, p) in parts.iter().enumerate() {
        let mut ib = BTreeMap::new();
        let mut pb = BTreeMap::new();
        for (k, n) in p.dims() {
            let mut i = Mat::zeros(dims[k], *n);
            i.put(offs[pi][k], 0, &Mat::identity(*n));
            pb.insert(*k, i.transpose());
            ib.insert(*k, i);
        }
        incls.push(ModuleMap { shift: 0, blocks: ib });
        projs.push(ModuleMap { shift: 0, blocks: pb });
    }
    (sum, incls, projs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::quiver::examples;

    fn pi(q: &crate::quiver::Quiver, n: i32) -> Arc<GradedAlgebra<Rat>> {
        Arc::new(GradedAlgebra::preprojective(q, n).unwrap())
    }

    #[test]
    fn projective_yoneda() {
        let a = pi(&examples::triangle(), 2);
        let y = GradedModule::projective(&a, 0, 0);
        for u in 0..3 {
            let p = GradedModule::projective(&a, u, 0);
            assert!(p.check_module());
            assert!(p.is_projective());
            for s in -1..=2 {
                let h = p.hom(&y, s).unwrap();
                assert_eq!(h.dim(), y.dim_at(u, s));
                for f in &h.maps {
                    assert!(p.is_homomorphism(&y, f));
                }
            }
        }
    }

    #[test]
    fn syzygy_of_projective_is_zero_and_stable_hom_vanishes() {
        let a = pi(&examples::kronecker(), 2);
        let p = GradedModule::projective(&a, 1, 0);
        assert!(p.syzygy().is_zero());
        let x = p.truncate_above(0);
        assert_eq!(p.stable_hom_dim(&x, 0).unwrap(), 0);
        assert_eq!(p.ext1_dim(&x, 0).unwrap(), 0);
    }

    #[test]
    fn shift_truncation_commute() {
        let a = pi(&examples::triangle(), 2);
        let p = GradedModule::projective(&a, 0, 0);
        let l = p.shift(1).truncate_above(0);
        let r = p.truncate_above(1).shift(1);
        assert_eq!(l.dims(), r.dims());
        assert_eq!(l.acts(), r.acts());
    }

    #[test]
    fn ext_between_simples_a2() {
        let a = pi(&examples::a2(), 0);
        let p1 = GradedModule::projective(&a, 0, 0);
        let p2 = GradedModule::projective(&a, 1, 0);
        // left modules: P_2 has top S_2 and socle S_1
        let s2 = p2.quotient(&p2.radical()).0;
        assert_eq!(s2.ext1_dim(&p1, 0).unwrap(), 1);
        assert_eq!(p1.ext1_dim(&s2, 0).unwrap(), 0);
        assert!(p2.find_isomorphism(&p2, 1).unwrap().is_some());
        assert!(p1.find_isomorphism(&s2, 1).unwrap().is_none());
    }
}
