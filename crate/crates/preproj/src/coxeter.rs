//! Coxeter group elements in the geometric representation, reduced words and
//! c-sortable factorizations.

use crate::error::{Error, Result};
use crate::field::{Field, Rat};
use crate::linalg::Mat;
use crate::quiver::{Quiver, Word};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Geometric representation on the simple roots (integer entries; stored as
/// exact rationals which stay integral).
#[derive(Clone, Debug)]
pub struct Coxeter {
    pub ids: Vec<u32>,
    gram: Vec<Vec<i64>>,
    refl: Vec<Mat<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeometricElement(pub Mat<Rat>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortableFactorization {
    pub c: Word,
    pub blocks: Vec<Word>,
}

impl SortableFactorization {
    pub fn m(&self) -> usize {
        self.blocks.len().saturating_sub(1)
    }

    pub fn word(&self) -> Word {
        Word(self.blocks.iter().flat_map(|b| b.0.iter().copied()).collect())
    }

    /// Lengths of the prefixes c^(0)…c^(i).
    pub fn prefix_lengths(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                acc += b.len();
                acc
            })
            .collect()
    }

    pub fn display(&self) -> String {
        self.blocks.iter().enumerate().map(|(i, b)| format!("c{i}={b}")).collect::<Vec<_>>().join(" | ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sortability {
    Sortable(SortableFactorization),
    /// The greedy blocks, and the first block whose support is not contained
    /// in the previous one.
    Failure { blocks: Vec<Word>, block: usize },
}

impl Coxeter {
    pub fn new(q: &Quiver) -> Self {
        let gram = q.gram();
        let n = q.n();
        let refl = (0..n)
            .map(|u| {
                let mut m = Mat::identity(n);
                for v in 0..n {
                    // s_u(α_v) = α_v − B(α_u, α_v) α_u
                    m.set(u, v, Rat::from_i64(i64::from(u == v) - gram[u][v]));
                }
                m
            })
            .collect();
        Coxeter { ids: q.vertices.clone(), gram, refl }
    }

    pub fn rank(&self) -> usize {
        self.ids.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn idx(&self, id: u32) -> Result<usize> {
        self.ids.iter().position(|x| *x == id).ok_or(Error::UnknownVertex(id))
    }

    fn indices(&self, w: &Word) -> Result<Vec<usize>> {
        w.0.iter().map(|&u| self.idx(u)).collect()
    }

    pub fn reflection(&self, u: usize) -> &Mat<Rat> {
        &self.refl[u]
    }

    pub fn element_of(&self, w: &Word) -> Result<GeometricElement> {
        let mut m = Mat::identity(self.rank());
        for u in self.indices(w)? {
            m = m.mul(&self.refl[u]);
        }
        Ok(GeometricElement(m))
    }

    pub fn is_reduced(&self, w: &Word) -> Result<bool> {
        let mut m: Mat<Rat> = Mat::identity(self.rank());
        for u in self.indices(w)? {
            if !is_positive(&m.col(u)) {
                return Ok(false);
            }
            m = m.mul(&self.refl[u]);
        }
        Ok(true)
    }

    pub fn preserves_form(&self, g: &GeometricElement) -> bool {
        let n = self.rank();
        let b = Mat::from_rows(n, n, self.gram.iter().map(|r| r.iter().map(|&x| Rat::from_i64(x)).collect()).collect());
        g.0.transpose().mul(&b).mul(&g.0) == b
    }

    /// Greedy c-sorting word and support check.
    pub fn sortable_factorize(&self, w: &Word, c: &Word) -> Result<Sortability> {
        if !self.is_reduced(w)? {
            return Err(Error::NotReduced(w.0.clone()));
        }
        let cidx = self.indices(c)?;
        let n = self.rank();
        // inverse of the remaining element
        let mut inv = Mat::identity(n);
        for u in self.indices(w)?.into_iter().rev() {
            inv = inv.mul(&self.refl[u]);
        }
        let id = Mat::identity(n);
        let mut blocks: Vec<Word> = Vec::new();
        while inv != id {
            let mut block = Vec::new();
            for &s in &cidx {
                // s is a left descent of u iff u^{-1}(α_s) < 0
                if is_negative(&inv.col(s)) {
                    inv = inv.mul(&self.refl[s]);
                    block.push(self.ids[s]);
                }
            }
            if block.is_empty() {
                return Err(Error::Invalid("c does not contain every generator".into()));
            }
            blocks.push(Word(block));
        }
        for i in 1..blocks.len() {
            if !blocks[i].support().is_subset(&blocks[i - 1].support()) {
                return Ok(Sortability::Failure { blocks, block: i });
            }
        }
        Ok(Sortability::Sortable(SortableFactorization { c: c.clone(), blocks }))
    }

    /// One reduced word per element of length ≤ max_len (breadth-first,
    /// generators tried in index order).
    pub fn elements_up_to(&self, max_len: usize) -> Vec<Word> {
        let n = self.rank();
        let mut seen: HashSet<Mat<Rat>> = HashSet::new();
        let id = Mat::identity(n);
        seen.insert(id.clone());
        let mut out = vec![Word::default()];
        let mut frontier = vec![(id, Vec::<u32>::new())];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (m, w) in &frontier {
                for s in 0..n {
                    if !is_positive(&m.col(s)) {
                        continue;
                    }
                    let m2 = m.mul(&self.refl[s]);
                    if seen.insert(m2.clone()) {
                        let mut w2 = w.clone();
                        w2.push(self.ids[s]);
                        out.push(Word(w2.clone()));
                        next.push((m2, w2));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// c-sorting words of all c-sortable elements of length ≤ max_len.
    pub fn sortable_words(&self, c: &Word, max_len: usize) -> Vec<SortableFactorization> {
        let mut out: Vec<SortableFactorization> = self
            .elements_up_to(max_len)
            .into_iter()
            .filter_map(|w| match self.sortable_factorize(&w, c) {
                Ok(Sortability::Sortable(f)) => Some(f),
                _ => None,
            })
            .collect();
        out.sort_by(|a, b| a.word().len().cmp(&b.word().len()).then_with(|| a.word().cmp(&b.word())));
        out
    }
}

fn is_positive(v: &[Rat]) -> bool {
    v.iter().all(|x| x.signum() >= 0) && v.iter().any(|x| !x.is_zero())
}

fn is_negative(v: &[Rat]) -> bool {
    v.iter().all(|x| x.signum() <= 0) && v.iter().any(|x| !x.is_zero())
}

/// p_u (1-based last position of u) and m_i (earlier occurrences of u_i).
pub fn word_stats(w: &Word) -> (BTreeMap<u32, usize>, Vec<usize>) {
    let mut p = BTreeMap::new();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    let mut m = Vec::with_capacity(w.len());
    for (i, &u) in w.0.iter().enumerate() {
        p.insert(u, i + 1);
        let c = counts.entry(u).or_insert(0);
        m.push(*c);
        *c += 1;
    }
    (p, m)
}

pub fn support(w: &Word) -> BTreeSet<u32> {
    w.support()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples;

    fn w(v: &[u32]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn reducedness() {
        let a3 = Coxeter::new(&examples::triangle());
        assert!(!a3.is_reduced(&w(&[1, 1])).unwrap());
        assert!(a3.is_reduced(&w(&[1, 2, 3, 1, 2, 1])).unwrap());
        let a2 = Coxeter::new(&examples::a2());
        assert!(!a2.is_reduced(&w(&[1, 2, 1, 2])).unwrap());
        assert!(a2.is_reduced(&w(&[1, 2, 1])).unwrap());
    }

    #[test]
    fn elements() {
        let a3 = Coxeter::new(&examples::triangle());
        let x = a3.element_of(&w(&[1, 2, 3, 1, 2, 1])).unwrap();
        let y = a3.element_of(&w(&[1, 2, 3, 2, 1, 2])).unwrap();
        assert_eq!(x, y);
        assert!(a3.preserves_form(&x));
        let a2 = Coxeter::new(&examples::a2());
        assert_ne!(a2.element_of(&w(&[1, 2])).unwrap(), a2.element_of(&w(&[2, 1])).unwrap());
        assert_eq!(a2.element_of(&w(&[])).unwrap().0, Mat::identity(2));
        assert_eq!(a2.elements_up_to(10).len(), 6);
    }

    #[test]
    fn factorizations() {
        let a3 = Coxeter::new(&examples::triangle());
        let c = w(&[1, 2, 3]);
        match a3.sortable_factorize(&w(&[1, 2, 3, 1, 2, 1]), &c).unwrap() {
            Sortability::Sortable(f) => {
                assert_eq!(f.blocks, vec![w(&[1, 2, 3]), w(&[1, 2]), w(&[1])]);
                assert_eq!(f.display(), "c0=1 2 3 | c1=1 2 | c2=1");
            }
            other => panic!("{other:?}"),
        }
        match a3.sortable_factorize(&w(&[2, 3]), &c).unwrap() {
            Sortability::Sortable(f) => assert_eq!(f.blocks, vec![w(&[2, 3])]),
            other => panic!("{other:?}"),
        }
        let k = Coxeter::new(&examples::kronecker());
        match k.sortable_factorize(&w(&[2, 1]), &w(&[1, 2])).unwrap() {
            Sortability::Failure { block, .. } => assert_eq!(block, 1),
            other => panic!("{other:?}"),
        }
        assert!(a3.sortable_factorize(&w(&[1, 1]), &c).is_err());
    }

    #[test]
    fn stats() {
        let (p, m) = word_stats(&w(&[1, 2, 3, 1, 2, 1]));
        assert_eq!(p, [(1, 6), (2, 5), (3, 3)].into_iter().collect());
        assert_eq!(m, vec![0, 0, 0, 1, 1, 2]);
        let (p, m) = word_stats(&w(&[1, 2, 1, 2, 1, 2]));
        assert_eq!(p, [(1, 5), (2, 6)].into_iter().collect());
        assert_eq!(m, vec![0, 0, 1, 1, 2, 2]);
    }
}
