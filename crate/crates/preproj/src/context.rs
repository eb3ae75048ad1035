//! Everything attached to a reduced word: the support quiver, the truncated
//! preprojective algebra, prefix ideals, Π_w and the modules L^i, M^i, T.

use crate::algebra::{CompKey, GradedAlgebra, GradedIdeal};
use crate::coxeter::{word_stats, Coxeter, Sortability, SortableFactorization};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Mat, SVec, Subspace};
use crate::module::{GradedModule, ModuleMap, Vd};
use crate::quiver::{Quiver, Word};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

pub struct WordContext<F: Field> {
    pub full: Quiver,
    /// Full subquiver on the support of the word.
    pub quiver: Quiver,
    pub word: Word,
    /// Letters as vertex indices of `quiver`.
    pub letters: Vec<usize>,
    pub c: Word,
    pub sorting: Sortability,
    /// Π_w vanishes above this degree.
    pub bound: i32,
    /// Π_{≤ bound+1} on the support quiver.
    pub pi: Arc<GradedAlgebra<F>>,
    /// I_{u_1⋯u_i} for i = 0..=l.
    pub prefixes: Vec<GradedIdeal<F>>,
    pub piw: Arc<GradedAlgebra<F>>,
    /// kQ^(1) = Π_0 on the support quiver.
    pub kq: Arc<GradedAlgebra<F>>,
    /// last position (1-based) of each support index
    pub p: BTreeMap<usize, usize>,
    /// m_i for i = 1..=l (stored 0-based)
    pub m: Vec<usize>,
}

/// Per-degree comparison of (I_w)_d with (I_{c^(0)⋯c^(i)})_d for d ≤ i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixCheck {
    /// (i, d, dim (Π_w)_d, dim (Π_{c^(0)⋯c^(i)})_d, subspaces equal)
    pub rows: Vec<(usize, i32, usize, usize, bool)>,
    pub pass: bool,
}

impl<F: Field> WordContext<F> {
    pub fn new(full: &Quiver, word: &Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Invalid("empty word".into()));
        }
        for &u in &word.0 {
            full.index_of(u)?;
        }
        if !Coxeter::new(full).is_reduced(word)? {
            return Err(Error::NotReduced(word.0.clone()));
        }
        let supp = word.support();
        let quiver = full.support_subquiver(&supp)?;
        let c = Word(full.admissible_word().0.into_iter().filter(|u| supp.contains(u)).collect());
        Self::build(full, quiver, word, c)
    }

    /// Like `new` but keeps every vertex of `q` (letters need not cover it)
    /// and uses the given Coxeter word c.
    pub fn with_quiver(q: &Quiver, word: &Word, c: &Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Invalid("empty word".into()));
        }
        for &u in &word.0 {
            q.index_of(u)?;
        }
        if !Coxeter::new(q).is_reduced(word)? {
            return Err(Error::NotReduced(word.0.clone()));
        }
        Self::build(q, q.clone(), word, c.clone())
    }

    fn build(full: &Quiver, quiver: Quiver, word: &Word, c: Word) -> Result<Self> {
        let sorting = Coxeter::new(&quiver).sortable_factorize(word, &c)?;
        let bound = match &sorting {
            Sortability::Sortable(f) => f.m() as i32,
            Sortability::Failure { .. } => word.len() as i32 - 1,
        };
        let pi = Arc::new(GradedAlgebra::preprojective(&quiver, bound + 1)?);
        let letters: Vec<usize> = word.0.iter().map(|&u| quiver.index_of(u)).collect::<Result<_>>()?;
        let prefixes = pi.prefix_ideals(&letters)?;
        let iw = prefixes.last().unwrap();
        if !pi.ideal_full_in_degree(iw, bound + 1) {
            return Err(Error::TruncationTooSmall { required: bound + 1, got: bound });
        }
        let piw = Arc::new(pi.quotient(iw)?);
        let kq = Arc::new(GradedAlgebra::preprojective(&quiver, 0)?);
        let (pid, m) = word_stats(word);
        let p = pid.into_iter().map(|(u, i)| (quiver.index_of(u).unwrap(), i)).collect();
        Ok(WordContext { full: full.clone(), quiver, word: word.clone(), letters, c, sorting, bound, pi, prefixes, piw, kq, p, m })
    }

    /// Context of w' = s_{u_2}⋯s_{u_l} on μ_v(Q), v = u_1, with c' = c with
    /// its first letter moved to the end.
    pub fn reflected(&self) -> Result<Self> {
        self.require_sortable()?;
        if self.len() < 2 {
            return Err(Error::Precondition("reflection needs at least two letters".into()));
        }
        let v = self.letters[0];
        if !self.quiver.is_source(v) {
            return Err(Error::NotSource(self.quiver.id(v)));
        }
        let q2 = self.quiver.mutate(v);
        let mut c2: Vec<u32> = self.c.0.iter().copied().filter(|&u| u != self.quiver.id(v)).collect();
        c2.push(self.quiver.id(v));
        Self::with_quiver(&q2, &Word(self.word.0[1..].to_vec()), &Word(c2))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn factorization(&self) -> Option<&SortableFactorization> {
        match &self.sorting {
            Sortability::Sortable(f) => Some(f),
            Sortability::Failure { .. } => None,
        }
    }

    pub fn require_sortable(&self) -> Result<&SortableFactorization> {
        match &self.sorting {
            Sortability::Sortable(f) => Ok(f),
            Sortability::Failure { block, .. } => Err(Error::NotSortable { block: *block }),
        }
    }

    pub fn iw(&self) -> &GradedIdeal<F> {
        self.prefixes.last().unwrap()
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.word.support()
    }

    /// Complement representatives of inner inside outer, per component of
    /// the column e_u, together with the inner subspace.
    fn subquotient_spaces(&self, outer: &GradedIdeal<F>, inner: &GradedIdeal<F>, u: usize) -> BTreeMap<CompKey, (Subspace<F>, Subspace<F>)> {
        let a = self.pi.as_ref();
        let mut spaces: BTreeMap<CompKey, (Subspace<F>, Subspace<F>)> = BTreeMap::new();
        for key in a.comp_keys() {
            if key.1 != u {
                continue;
            }
            let n = a.comp(key).len();
            let Some(o) = outer.comps.get(key) else { continue };
            let inn = inner.comps.get(key).cloned().unwrap_or_else(|| Subspace::zero(n));
            let mut reps = Subspace::zero(n);
            for v in o.basis() {
                reps.insert(inn.reduce(v));
            }
            if reps.dim() > 0 {
                spaces.insert(*key, (reps, inn));
            }
        }
        spaces
    }

    /// Class of an element x·e_{u_i} of Π in M^i: its (vertex, degree) slot
    /// and coordinates there. None if x is homogeneous of a slot M^i lacks.
    pub fn class_in_m(&self, i: usize, x: &SVec<F>) -> Result<Option<(Vd, Vec<F>)>> {
        self.check_index(i)?;
        let u = self.letters[i - 1];
        let a = self.pi.as_ref();
        let Some((key, v)) = a.to_local(x) else { return Ok(None) };
        if key.1 != u {
            return Err(Error::Precondition("element does not end at the column vertex".into()));
        }
        let spaces = self.subquotient_spaces(&self.pi.unit_ideal(), &self.prefixes[i], u);
        Ok(spaces.get(&key).map(|(reps, inn)| ((key.0, key.2 - self.m[i - 1] as i32), reps.coords_unchecked(&inn.reduce(&v)))))
    }

    /// Left module (outer/inner)·e_u with grading shifted by j, built over the
    /// truncated Π and then read as a Π_w-module.
    pub fn cyclic_subquotient(&self, outer: &GradedIdeal<F>, inner: &GradedIdeal<F>, u: usize, j: i32) -> GradedModule<F> {
        self.cyclic_subquotient_over(self.piw.clone(), outer, inner, u, j)
    }

    /// Same module with a chosen owner (Π_{≤ bound+1} or Π_w).
    pub fn cyclic_subquotient_over(
        &self,
        owner: Arc<GradedAlgebra<F>>,
        outer: &GradedIdeal<F>,
        inner: &GradedIdeal<F>,
        u: usize,
        j: i32,
    ) -> GradedModule<F> {
        let a = self.pi.as_ref();
        let spaces = self.subquotient_spaces(outer, inner, u);
        let vd = |k: &CompKey| -> Vd { (k.0, k.2 - j) };
        let dims = spaces.iter().map(|(k, (r, _))| (vd(k), r.dim())).collect();
        let mut acts = BTreeMap::new();
        for (ai, arr) in a.dq.arrows.iter().enumerate() {
            for (key, (reps, _)) in &spaces {
                if key.0 != arr.target {
                    continue;
                }
                let tk = (arr.source, u, key.2 + arr.degree);
                let Some((treps, tinn)) = spaces.get(&tk) else { continue };
                let cols: Vec<Vec<F>> = reps
                    .basis()
                    .iter()
                    .map(|v| {
                        let img = a.left_mul_arrow(ai, &a.from_local(key, v));
                        match a.to_local(&img) {
                            None => vec![F::zero(); treps.dim()],
                            Some((k2, w)) => {
                                debug_assert_eq!(k2, tk);
                                treps.coords_unchecked(&tinn.reduce(&w))
                            }
                        }
                    })
                    .collect();
                acts.insert((ai, key.2 - j), Mat::from_cols(treps.dim(), &cols));
            }
        }
        GradedModule::new(owner, dims, acts)
    }

    /// The map x ↦ x·r from (o1/i1)e_{u1}(j1) to (o2/i2)e_{u2}(j2), for a
    /// homogeneous r ∈ e_{u1} Π e_{u2}. Well defined only if o1·r ⊆ o2 and
    /// i1·r ⊆ i2; the caller is responsible for that.
    pub fn right_mul_map(&self, src: (&GradedIdeal<F>, &GradedIdeal<F>, usize, i32), tgt: (&GradedIdeal<F>, &GradedIdeal<F>, usize, i32), r: &SVec<F>) -> Result<ModuleMap<F>> {
        let a = self.pi.as_ref();
        let Some((rk, _)) = a.to_local(r) else { return Ok(ModuleMap { shift: 0, blocks: BTreeMap::new() }) };
        if rk.0 != src.2 || rk.1 != tgt.2 {
            return Err(Error::Precondition("multiplier has the wrong endpoints".into()));
        }
        let shift = rk.2 - tgt.3 + src.3;
        let s1 = self.subquotient_spaces(src.0, src.1, src.2);
        let s2 = self.subquotient_spaces(tgt.0, tgt.1, tgt.2);
        let mut blocks = BTreeMap::new();
        for (key, (reps, _)) in &s1 {
            let tk = (key.0, tgt.2, key.2 + rk.2);
            let Some((treps, tinn)) = s2.get(&tk) else { continue };
            let cols: Vec<Vec<F>> = reps
                .basis()
                .iter()
                .map(|v| match a.to_local(&a.mul(&a.from_local(key, v), r)) {
                    None => vec![F::zero(); treps.dim()],
                    Some((_, w)) => treps.coords_unchecked(&tinn.reduce(&w)),
                })
                .collect();
            let m = Mat::from_cols(treps.dim(), &cols);
            if !m.is_zero() {
                blocks.insert((key.0, key.2 - src.3), m);
            }
        }
        Ok(ModuleMap { shift, blocks })
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange(i));
        }
        Ok(())
    }

    /// L_w^i = I_{u_1⋯u_{i−1}} / I_{u_1⋯u_i}, read off the column e_{u_i}.
    pub fn layer(&self, i: usize) -> Result<GradedModule<F>> {
        self.check_index(i)?;
        Ok(self.cyclic_subquotient(&self.prefixes[i - 1], &self.prefixes[i], self.letters[i - 1], 0))
    }

    /// L_w^i e_v = 0 for v ≠ u_i.
    pub fn layer_column_identity(&self, i: usize) -> Result<bool> {
        self.check_index(i)?;
        let (outer, inner) = (&self.prefixes[i - 1], &self.prefixes[i]);
        let u = self.letters[i - 1];
        Ok(outer.comps.iter().filter(|(k, _)| k.1 != u).all(|(k, s)| inner.comps.get(k).map_or(0, |t| t.dim()) == s.dim()))
    }

    /// M^i = (Π/I_{u_1⋯u_i}) e_{u_i} (m_i).
    pub fn summand_m(&self, i: usize) -> Result<GradedModule<F>> {
        self.check_index(i)?;
        Ok(self.cyclic_subquotient(&self.pi.unit_ideal(), &self.prefixes[i], self.letters[i - 1], self.m[i - 1] as i32))
    }

    /// M^1, …, M^l.
    pub fn m_summands(&self) -> Vec<GradedModule<F>> {
        (1..=self.len()).map(|i| self.summand_m(i).unwrap()).collect()
    }

    /// Positions p_u in vertex order.
    pub fn p_positions(&self) -> Vec<usize> {
        self.p.values().copied().collect()
    }

    /// The graded projective summands M^{p_u} of P.
    pub fn p_summands(&self) -> Vec<GradedModule<F>> {
        self.p_positions().into_iter().map(|i| self.summand_m(i).unwrap()).collect()
    }

    /// Degree-d slice moved to degree 0 and read over kQ^(1).
    pub fn degree_part(&self, x: &GradedModule<F>, d: i32) -> GradedModule<F> {
        x.slice(d, d).shift(d).retarget(self.kq.clone())
    }

    /// T = P_0, summand by summand (one per support vertex).
    pub fn t_summands(&self) -> Vec<GradedModule<F>> {
        self.p_summands().iter().map(|x| self.degree_part(x, 0)).collect()
    }

    /// M_0 summand by summand.
    pub fn m0_summands(&self) -> Vec<GradedModule<F>> {
        self.m_summands().iter().map(|x| self.degree_part(x, 0)).collect()
    }

    /// Π_{c^(0)⋯c^(i)}(i) for i = 0..=m, split by columns (zero columns dropped).
    pub fn tilting_object(&self) -> Result<Vec<GradedModule<F>>> {
        let f = self.require_sortable()?;
        let unit = self.pi.unit_ideal();
        let mut out = Vec::new();
        for (i, len) in f.prefix_lengths().into_iter().enumerate() {
            for u in 0..self.quiver.n() {
                let x = self.cyclic_subquotient(&unit, &self.prefixes[len], u, i as i32);
                if !x.is_zero() {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }

    /// (Π_w)_{≤i} against Π_{c^(0)⋯c^(i)} in every degree d ≤ i.
    pub fn truncate_prefix_check(&self) -> Result<PrefixCheck> {
        let f = self.require_sortable()?;
        let iw = self.iw();
        let mut rows = Vec::new();
        let mut pass = true;
        for (i, len) in f.prefix_lengths().into_iter().enumerate() {
            let ip = &self.prefixes[len];
            for d in 0..=i as i32 {
                let mut eq = true;
                let (mut dw, mut dp) = (0, 0);
                for key in self.pi.comp_keys().filter(|k| k.2 == d) {
                    let n = self.pi.comp(key).len();
                    let a = iw.comps.get(key).cloned().unwrap_or_else(|| Subspace::zero(n));
                    let b = ip.comps.get(key).cloned().unwrap_or_else(|| Subspace::zero(n));
                    dw += n - a.dim();
                    dp += n - b.dim();
                    eq &= a.same_as(&b);
                }
                pass &= eq;
                rows.push((i, d, dw, dp, eq));
            }
        }
        Ok(PrefixCheck { rows, pass })
    }
}

/// I_w for a word of vertex indices, refusing truncations that are too small
/// to contain Π_{≥ bound+1}.
pub fn ideal_for_word<F: Field>(a: &GradedAlgebra<F>, letters: &[usize], sortable_m: Option<usize>) -> Result<GradedIdeal<F>> {
    let required = match sortable_m {
        Some(m) => m as i32,
        None => letters.len() as i32 - 1,
    };
    if a.max_degree < required {
        return Err(Error::TruncationTooSmall { required, got: a.max_degree });
    }
    Ok(a.prefix_ideals(letters)?.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::quiver::examples;

    fn ctx(q: &Quiver, w: &[u32]) -> WordContext<Rat> {
        WordContext::new(q, &Word(w.to_vec())).unwrap()
    }

    #[test]
    fn a3_word_columns() {
        let c = ctx(&examples::triangle(), &[1, 2, 3, 1, 2, 1]);
        assert_eq!(c.bound, 2);
        let dims: Vec<usize> = (0..3).map(|u| GradedModule::projective(&c.piw, u, 0).dim()).collect();
        assert_eq!(dims, vec![8, 9, 4]);
        let p3 = GradedModule::projective(&c.piw, 2, 0);
        assert_eq!(p3.dim_in_degree(0), 4);
        assert_eq!(c.piw.dim_degree(0), 7);
        assert!(c.truncate_prefix_check().unwrap().pass);
        let l1 = c.layer(1).unwrap();
        assert_eq!(l1.dim(), 1);
        let l6 = c.layer(6).unwrap();
        assert_eq!(l6.dim_vector(), vec![1, 0, 1]);
        for i in 1..=6 {
            assert!(c.layer_column_identity(i).unwrap());
            assert!(c.layer(i).unwrap().check_module());
            assert!(c.summand_m(i).unwrap().check_module());
        }
        let t: Vec<usize> = c.t_summands().iter().map(|x| x.dim()).collect();
        assert_eq!(t, vec![2, 7, 4]);
    }

    #[test]
    fn braid_pair_same_ideal() {
        let q = examples::triangle();
        let a = ctx(&q, &[1, 2, 3, 1, 2, 1]);
        let b = ctx(&q, &[1, 2, 3, 2, 1, 2]);
        assert_eq!(a.iw().canonical(), b.iw().canonical());
    }

    #[test]
    fn kronecker_c2_is_truncation() {
        let c = ctx(&examples::kronecker(), &[1, 2, 1, 2]);
        assert_eq!(c.bound, 1);
        assert_eq!(c.iw().dim(), c.pi.dim_degree(2));
    }

    #[test]
    fn kronecker_prefixes_are_radical_powers() {
        for n in 1..=3usize {
            let w: Vec<u32> = (0..=n).flat_map(|_| [1, 2]).collect();
            let c = ctx(&examples::kronecker(), &w);
            for i in 1..=n + 1 {
                let j1 = c.pi.path_length_ideal(2 * i - 1).unwrap();
                let j2 = c.pi.path_length_ideal(2 * i).unwrap();
                let (a, b, eq) = c.pi.compare_columns(&c.prefixes[2 * i], &j1, 0);
                assert!(eq && a == b, "n={n} i={i} e1 {a} {b}");
                let (a, b, eq) = c.pi.compare_columns(&c.prefixes[2 * i], &j2, 1);
                assert!(eq && a == b, "n={n} i={i} e2 {a} {b}");
            }
        }
    }

    #[test]
    fn non_sortable_uses_length_bound() {
        let c = ctx(&examples::kronecker(), &[2, 1]);
        assert_eq!(c.bound, 1);
        assert!(c.require_sortable().is_err());
        assert!(WordContext::<Rat>::new(&examples::a2(), &Word(vec![1, 1])).is_err());
    }

    #[test]
    fn subword_of_c_gives_path_algebra() {
        let c = ctx(&examples::triangle(), &[1, 3]);
        assert_eq!(c.quiver.n(), 2);
        assert_eq!(c.piw.dim(), 3);
        assert_eq!(c.piw.max_present_degree(), 0);
    }
}
