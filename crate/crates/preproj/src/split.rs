//! Endomorphism algebras of finite families of modules, and splitting a
//! module into indecomposable summands by Fitting decompositions.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{svec_from_dense, Mat, Subspace};
use crate::module::{compose, GradedModule, HomSpace, ModuleMap, Vd};
use crate::par;
use crate::table::AlgebraTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// End(⊕ X_i) restricted to the given shifts, block by block.
pub struct EndAlgebra<F: Field> {
    pub objects: Vec<GradedModule<F>>,
    /// (source, target, shift, Hom space, offset into the table basis)
    pub blocks: Vec<(usize, usize, i32, HomSpace<F>, usize)>,
    pub index: BTreeMap<(usize, usize, i32), usize>,
    pub table: AlgebraTable<F>,
}

impl<F: Field> EndAlgebra<F> {
    /// Products outside the shift window must vanish, otherwise the window
    /// was too small and an error is returned.
    pub fn build(objects: Vec<GradedModule<F>>, shifts: &[i32]) -> Result<Self> {
        let n = objects.len();
        let keys: Vec<(usize, usize, i32)> =
            (0..n).flat_map(|i| (0..n).flat_map(move |j| shifts.iter().map(move |&s| (i, j, s)))).collect();
        let homs = par::map(&keys, |&(i, j, s)| objects[i].hom(&objects[j], s));
        let mut blocks = Vec::new();
        let mut index = BTreeMap::new();
        let mut off = 0;
        for (k, h) in keys.into_iter().zip(homs) {
            let h = h?;
            if h.dim() == 0 {
                continue;
            }
            index.insert(k, blocks.len());
            let d = h.dim();
            blocks.push((k.0, k.1, k.2, h, off));
            off += d;
        }
        let dim = off;
        let mut e = EndAlgebra { objects, blocks, index, table: AlgebraTable::zero() };
        let basis: Vec<(usize, usize)> = (0..e.blocks.len()).flat_map(|b| (0..e.blocks[b].3.dim()).map(move |k| (b, k))).collect();
        let rows = par::map(&basis, |&(b, k)| -> Result<Vec<_>> {
            let (i, j, s, h, _) = &e.blocks[b];
            let f = &h.maps[k];
            let mut row = Vec::with_capacity(basis.len());
            for &(b2, k2) in &basis {
                let (j2, l, t, h2, _) = &e.blocks[b2];
                if j2 != j {
                    row.push(Vec::new());
                    continue;
                }
                let g = compose(&h2.maps[k2], f);
                if g.blocks.is_empty() {
                    row.push(Vec::new());
                    continue;
                }
                match e.coords(*i, *l, s + t, &g) {
                    Some(v) => row.push(svec_from_dense(&v)),
                    None => return Err(Error::ResourceLimit(format!("shift window too small: product lands in shift {}", s + t))),
                }
            }
            Ok(row)
        });
        let mult = rows.into_iter().collect::<Result<Vec<_>>>()?;
        let idempotents = (0..n)
            .map(|i| {
                let mut v = vec![F::zero(); dim];
                if let Some(&b) = e.index.get(&(i, i, 0)) {
                    let id = crate::module::identity_map(&e.objects[i]);
                    let c = e.blocks[b].3.space.coords(&e.objects[i].gen_values(&e.objects[i], &id)).expect("identity is a map");
                    let o = e.blocks[b].4;
                    for (t, x) in c.into_iter().enumerate() {
                        v[o + t] = x;
                    }
                }
                v
            })
            .collect();
        let labels = basis.iter().map(|&(b, k)| format!("f{}_{}[{}]#{k}", e.blocks[b].0 + 1, e.blocks[b].1 + 1, e.blocks[b].2)).collect();
        let degrees = Some(basis.iter().map(|&(b, _)| e.blocks[b].2).collect());
        e.table = AlgebraTable { dim, labels, mult, idempotents, degrees };
        Ok(e)
    }

    /// Coordinates of a map X_i → X_j(s) in the table basis; None if (i,j,s)
    /// is outside the window but the map is nonzero.
    pub fn coords(&self, i: usize, j: usize, s: i32, f: &ModuleMap<F>) -> Option<Vec<F>> {
        let dim: usize = self.blocks.iter().map(|b| b.3.dim()).sum();
        let mut v = vec![F::zero(); dim];
        match self.index.get(&(i, j, s)) {
            None => {
                if f.blocks.values().all(|m| m.is_zero()) {
                    Some(v)
                } else {
                    None
                }
            }
            Some(&b) => {
                let (_, _, _, h, o) = &self.blocks[b];
                let c = h.space.coords(&self.objects[i].gen_values(&self.objects[j], f))?;
                for (t, x) in c.into_iter().enumerate() {
                    v[o + t] = x;
                }
                Some(v)
            }
        }
    }

    /// The map for a vector supported in a single block.
    pub fn map_of(&self, b: usize, c: &[F]) -> ModuleMap<F> {
        let (_, _, _, h, o) = &self.blocks[b];
        crate::module::combine(&h.maps, &c[*o..*o + h.dim()])
    }

    /// Embed a subspace of one block's Hom coordinates into the table.
    pub fn block_subspace(&self, b: usize, sub: &Subspace<F>) -> Vec<Vec<F>> {
        let dim = self.table.dim;
        let (_, _, _, h, o) = &self.blocks[b];
        sub.basis()
            .iter()
            .map(|g| {
                let c = h.space.coords(g).expect("subspace of the Hom space");
                let mut v = vec![F::zero(); dim];
                for (t, x) in c.into_iter().enumerate() {
                    v[o + t] = x;
                }
                v
            })
            .collect()
    }
}

pub struct Summand<F: Field> {
    pub module: GradedModule<F>,
    pub incl: ModuleMap<F>,
    pub proj: ModuleMap<F>,
}

pub struct Splitting<F: Field> {
    pub summands: Vec<Summand<F>>,
    /// false if some summand has a non-local End that could not be split
    pub complete: bool,
    pub seed: u64,
}

fn endo_block<F: Field>(x: &GradedModule<F>, f: &ModuleMap<F>, k: &Vd) -> Mat<F> {
    let n = x.dims()[k];
    f.blocks.get(k).cloned().unwrap_or_else(|| Mat::zeros(n, n))
}

/// Rational eigenvalues of a degree-0 endomorphism (via Krylov minimal
/// polynomials of each component block).
fn eigenvalues<F: Field>(x: &GradedModule<F>, f: &ModuleMap<F>, rng: &mut ChaCha8Rng) -> Vec<F> {
    let mut out: Vec<F> = Vec::new();
    for k in x.dims().keys() {
        let m = endo_block(x, f, k);
        let n = m.rows;
        let v: Vec<F> = (0..n).map(|_| F::from_i64(rng.gen_range(-5..=5))).collect();
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut seq = vec![v];
        let mut sp = Subspace::from_vectors(n, seq.clone());
        loop {
            let next = m.mul_vec(seq.last().unwrap());
            if sp.contains(&next) {
                // next = Σ c_i seq_i
                let a = Mat::from_cols(n, &seq);
                let c = a.solve(&next).expect("in span");
                let mut p: Vec<F> = c.iter().map(|x| x.neg_ref()).collect();
                p.push(F::one());
                for r in F::roots(&p) {
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
                break;
            }
            sp.insert(next.clone());
            seq.push(next);
        }
    }
    out
}

/// Per-component Fitting decomposition X = ker g^N ⊕ im g^N.
fn fitting<F: Field>(x: &GradedModule<F>, g: &ModuleMap<F>) -> (BTreeMap<Vd, Subspace<F>>, BTreeMap<Vd, Subspace<F>>) {
    let mut ker = BTreeMap::new();
    let mut img = BTreeMap::new();
    for (k, &n) in x.dims() {
        let m = endo_block(x, g, k).pow(n as u32);
        ker.insert(*k, Subspace::from_vectors(n, m.kernel()));
        img.insert(*k, Subspace::from_vectors(n, m.col_vecs()));
    }
    (ker, img)
}

fn shift_endo<F: Field>(x: &GradedModule<F>, f: &ModuleMap<F>, lambda: &F) -> ModuleMap<F> {
    let blocks = x
        .dims()
        .iter()
        .map(|(k, &n)| {
            let m = endo_block(x, f, k).sub(&Mat::identity(n).scale(lambda));
            (*k, m)
        })
        .collect();
    ModuleMap { shift: 0, blocks }
}

/// Projections X → K and X → I for a complementary pair of submodules.
fn complementary_projections<F: Field>(
    x: &GradedModule<F>,
    k: &BTreeMap<Vd, Subspace<F>>,
    i: &BTreeMap<Vd, Subspace<F>>,
) -> (ModuleMap<F>, ModuleMap<F>) {
    let mut pk = BTreeMap::new();
    let mut pi = BTreeMap::new();
    for (key, &n) in x.dims() {
        let (a, b) = (&k[key], &i[key]);
        let mut cols: Vec<Vec<F>> = a.basis().to_vec();
        cols.extend(b.basis().iter().cloned());
        let inv = Mat::from_cols(n, &cols).inverse().expect("complementary");
        let (da, db) = (a.dim(), b.dim());
        if da > 0 {
            pk.insert(*key, inv.select(&(0..da).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>()));
        }
        if db > 0 {
            pi.insert(*key, inv.select(&(da..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>()));
        }
    }
    (ModuleMap { shift: 0, blocks: pk }, ModuleMap { shift: 0, blocks: pi })
}

pub fn is_indecomposable<F: Field>(x: &GradedModule<F>) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let e = EndAlgebra::build(vec![x.clone()], &[0])?;
    Ok(e.table.is_local())
}

/// Split X into indecomposables. Summands are ordered by (dimension vector
/// by degree, then order of discovery).
pub fn split_indecomposables<F: Field>(x: &GradedModule<F>, seed: u64) -> Result<Splitting<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done: Vec<Summand<F>> = Vec::new();
    let mut complete = true;
    let mut todo = vec![Summand { module: x.clone(), incl: crate::module::identity_map(x), proj: crate::module::identity_map(x) }];
    while let Some(s) = todo.pop() {
        if s.module.is_zero() {
            continue;
        }
        let e = EndAlgebra::build(vec![s.module.clone()], &[0])?;
        if e.table.dim == 1 || e.table.is_local() {
            done.push(s);
            continue;
        }
        let h = &e.blocks[0].3;
        let mut cands: Vec<ModuleMap<F>> = h.maps.clone();
        for _ in 0..(h.dim() + 16) {
            let c: Vec<F> = (0..h.dim()).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
            cands.push(crate::module::combine(&h.maps, &c));
        }
        let mut found = None;
        'outer: for f in &cands {
            for lambda in eigenvalues(&s.module, f, &mut rng) {
                let g = shift_endo(&s.module, f, &lambda);
                let (k, i) = fitting(&s.module, &g);
                let dk: usize = k.values().map(|v| v.dim()).sum();
                if dk > 0 && dk < s.module.dim() {
                    found = Some((k, i));
                    break 'outer;
                }
            }
        }
        match found {
            None => {
                complete = false;
                done.push(s);
            }
            Some((k, i)) => {
                let (pk, pi) = complementary_projections(&s.module, &k, &i);
                let (mk, ik) = s.module.submodule(&k);
                let (mi, ii) = s.module.submodule(&i);
                let pk = restrict_codomain(&pk, &k);
                let pi = restrict_codomain(&pi, &i);
                todo.push(Summand { module: mk, incl: compose(&s.incl, &ik), proj: compose(&pk, &s.proj) });
                todo.push(Summand { module: mi, incl: compose(&s.incl, &ii), proj: compose(&pi, &s.proj) });
            }
        }
    }
    done.sort_by_key(|s| s.module.graded_dim_vector());
    Ok(Splitting { summands: done, complete, seed })
}

/// Projection rows are already in the submodule's basis coordinates, since
/// `submodule` uses the subspace basis as its basis.
fn restrict_codomain<F: Field>(p: &ModuleMap<F>, _sub: &BTreeMap<Vd, Subspace<F>>) -> ModuleMap<F> {
    p.clone()
}

/// Class index per module (first occurrence order) under isomorphism.
pub fn iso_classes<F: Field>(mods: &[GradedModule<F>], seed: u64) -> Result<Vec<usize>> {
    let mut reps: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(mods.len());
    for (k, m) in mods.iter().enumerate() {
        let mut cls = None;
        for (c, &r) in reps.iter().enumerate() {
            if mods[r].find_isomorphism(m, seed)?.is_some() {
                cls = Some(c);
                break;
            }
        }
        match cls {
            Some(c) => out.push(c),
            None => {
                reps.push(k);
                out.push(reps.len() - 1);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::field::Rat;
    use crate::module::direct_sum;
    use crate::quiver::examples;
    use std::sync::Arc;

    #[test]
    fn projectives_of_path_algebra() {
        let kq = Arc::new(GradedAlgebra::<Rat>::preprojective(&examples::triangle(), 0).unwrap());
        let parts: Vec<_> = (0..3).map(|u| GradedModule::projective(&kq, u, 0)).collect();
        let (sum, _, _) = direct_sum(&kq, &parts);
        let sp = split_indecomposables(&sum, 7).unwrap();
        assert!(sp.complete);
        assert_eq!(sp.summands.len(), 3);
        let mut dims: Vec<usize> = sp.summands.iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 4]);
        for s in &sp.summands {
            assert!(sum.is_homomorphism(&s.module, &s.proj));
            assert!(s.module.is_homomorphism(&sum, &s.incl));
            let id = compose(&s.proj, &s.incl);
            assert_eq!(id, crate::module::identity_map(&s.module));
        }
    }

    #[test]
    fn doubled_module_splits_into_isomorphic_pair() {
        let kq = Arc::new(GradedAlgebra::<Rat>::preprojective(&examples::a2(), 0).unwrap());
        let p = GradedModule::projective(&kq, 1, 0);
        let (sum, _, _) = direct_sum(&kq, &[p.clone(), p.clone()]);
        let sp = split_indecomposables(&sum, 1).unwrap();
        assert_eq!(sp.summands.len(), 2);
        let mods: Vec<_> = sp.summands.iter().map(|s| s.module.clone()).collect();
        assert_eq!(iso_classes(&mods, 1).unwrap(), vec![0, 0]);
        assert!(is_indecomposable(&p).unwrap());
        assert!(!is_indecomposable(&sum).unwrap());
    }
}
