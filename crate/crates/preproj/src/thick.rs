//! Tilting axioms for M in the stable category: Hom-vanishing against
//! syzygies, and a finite certificate that every kQ(i) in the shift window
//! is built from M and graded projectives by explicit short exact sequences.

use crate::context::WordContext;
use crate::error::Result;
use crate::field::Field;
use crate::hereditary::CotiltingContext;
use crate::module::{cokernel, compose, is_injective, is_surjective, is_zero_map, GradedModule, ModuleMap};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub max_j: usize,
    /// nonzero stable Hom witnesses: (a, b, j, dim, direction) with
    /// direction 0 for (M^a, Ω^j M^b) and 1 for (Ω^j M^a, M^b)
    pub witnesses: Vec<(usize, usize, usize, usize, u8)>,
    pub pass: bool,
}

/// stable Hom^Z(M, Ω^j M) = 0 = stable Hom^Z(Ω^j M, M) for 1 ≤ j ≤ 2(m+1).
///
/// M sits in degrees [−m, 0] and graded projectives in degrees ≤ m, so both
/// stable Hom spaces only see Ω^j M in degrees ≤ max(m, 1); syzygies are
/// truncated there (Ω(X)_{≤K} = Ω(X_{≤K})_{≤K}) to keep them small.
pub fn vanishing_check<F: Field>(ctx: &WordContext<F>) -> Result<VanishingReport> {
    vanishing_with_cutoff(ctx, Some(ctx.bound.max(1)))
}

fn vanishing_with_cutoff<F: Field>(ctx: &WordContext<F>, top: Option<i32>) -> Result<VanishingReport> {
    let ms = ctx.m_summands();
    let max_j = 2 * (ctx.bound.max(0) as usize + 1);
    let mut omegas: Vec<Vec<GradedModule<F>>> = Vec::with_capacity(ms.len());
    for x in &ms {
        let mut row = Vec::with_capacity(max_j);
        let mut cur = x.clone();
        for _ in 0..max_j {
            cur = cur.syzygy();
            if let Some(k) = top {
                cur = cur.truncate_above(k);
            }
            row.push(cur.clone());
        }
        omegas.push(row);
    }
    let mut witnesses = Vec::new();
    for (a, x) in ms.iter().enumerate() {
        for (b, row) in omegas.iter().enumerate() {
            for (j, om) in row.iter().enumerate() {
                if om.is_zero() {
                    continue;
                }
                let d = x.stable_hom_dim(om, 0)?;
                if d > 0 {
                    witnesses.push((a + 1, b + 1, j + 1, d, 0));
                }
                let d = om.stable_hom_dim(&ms[a], 0)?;
                if d > 0 {
                    witnesses.push((b + 1, a + 1, j + 1, d, 1));
                }
            }
        }
    }
    let pass = witnesses.is_empty();
    Ok(VanishingReport { max_j, witnesses, pass })
}

/// One explicit short exact sequence 0 → A → B → C → 0.
#[derive(Clone, Debug, Serialize)]
pub struct SesCheck {
    pub label: String,
    pub dims: (usize, usize, usize),
    pub injective: bool,
    pub surjective: bool,
    pub composite_zero: bool,
    /// B is a summand of M or graded projective
    pub middle_ok: bool,
    /// the outer term is already known to be reached
    pub outer_ok: bool,
}

impl SesCheck {
    pub fn ok(&self) -> bool {
        self.injective && self.surjective && self.composite_zero && self.middle_ok && self.outer_ok && self.dims.0 + self.dims.2 == self.dims.1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThickCertificate {
    pub window: (i32, i32),
    pub steps: Vec<SesCheck>,
    /// kQ-modules in play have projective dimension ≤ 1 over kQ
    pub hereditary_resolutions: bool,
    /// 0 → kQ → T_0 → T_1 → 0 with T_0, T_1 ∈ add T
    pub tilting_coresolution: bool,
    /// shifts i with kQ(i) certified
    pub reached: Vec<i32>,
    pub pass: bool,
}

fn ses<F: Field>(label: String, a: &GradedModule<F>, b: &GradedModule<F>, c: &GradedModule<F>, f: &ModuleMap<F>, g: &ModuleMap<F>) -> SesCheck {
    SesCheck {
        label,
        dims: (a.dim(), b.dim(), c.dim()),
        injective: is_injective(a, f),
        surjective: is_surjective(b, c, g),
        composite_zero: is_zero_map(&compose(g, f)),
        middle_ok: false,
        outer_ok: false,
    }
}

/// Filtration steps certifying kQ(i) ∈ thick(M ⊕ graded projectives) for
/// every i in [−(m+1), m+1].
pub fn thick_certificate<F: Field>(ctx: &WordContext<F>, seed: u64) -> Result<ThickCertificate> {
    let f = ctx.require_sortable()?;
    let m = ctx.bound.max(0);
    let window = (-(m + 1), m + 1);
    let lens = f.prefix_lengths();
    let tilt = ctx.tilting_object()?;
    let mut steps = Vec::new();
    let mut reached: Vec<i32> = Vec::new();
    let mut hereditary_resolutions = true;
    let n = ctx.quiver.n();

    // kQ = (Π_w)_0 is the degree-0 layer of the i = 0 summands of M
    let zero_ok = (0..n).all(|u| {
        let col = GradedModule::projective(&ctx.piw, u, 0).truncate_above(0);
        tilt.iter().any(|t| t.find_isomorphism(&col, seed).ok().flatten().is_some())
    });
    if zero_ok {
        reached.push(0);
    }

    for i in 1..=window.1 {
        let mut all = reached.contains(&(i - 1));
        for u in 0..n {
            let mid = GradedModule::projective(&ctx.piw, u, 0).truncate_above(i).shift(i);
            let sub = mid.truncate_below(1 - i);
            let quo = mid.slice(-i, -i);
            let incl = mid.truncate_below_inclusion(1 - i);
            let proj = mid.truncate_above_projection(-i);
            let mut s = ses(format!("(Pi_w e{u})_[1,{i}]({i}) -> (Pi_w e{u})_<={i}({i}) -> (Pi_w e{u})_0({i})"), &sub, &mid, &quo, &incl, &proj);
            s.middle_ok = if (i as usize) < lens.len() {
                tilt.iter().any(|t| t.find_isomorphism(&mid, seed).ok().flatten().is_some()) || mid.is_zero()
            } else {
                mid.is_projective()
            };
            // the graded pieces of the kernel sit at shifts 0..i−1
            let (lo, hi) = sub.degree_range().unwrap_or((0, -1));
            let mut outer = lo > -i || sub.is_zero();
            for d in lo..=hi {
                let piece = ctx.degree_part(&sub, d);
                hereditary_resolutions &= piece.syzygy().is_projective();
                outer &= reached.contains(&(-d));
            }
            s.outer_ok = outer;
            all &= s.ok();
            steps.push(s);
        }
        if all {
            reached.push(i);
        }
    }

    // 0 → kQ → T_0 → T_1 → 0
    let t = ctx.t_summands();
    let cot = CotiltingContext::new(ctx.kq.clone(), t.clone(), seed)?;
    let mut tilting_coresolution = true;
    for u in 0..n {
        let p = GradedModule::projective(&ctx.kq, u, 0);
        let (t0, a) = cot.left_addt_approximation(&p)?;
        let (t1, _) = cokernel(&t0, &p, &a);
        tilting_coresolution &= cot.in_add_t(&t1)?;
    }

    for i in 1..=-window.0 {
        let mut all = tilting_coresolution && reached.contains(&(1 - i));
        for (&u, &pu) in &ctx.p {
            let mid0 = ctx.summand_m(pu)?;
            let sub = mid0.truncate_below(0).shift(-i);
            let mid = mid0.shift(-i);
            let quo = mid0.truncate_above(-1).shift(-i);
            let incl = ModuleMap { shift: 0, blocks: sub.dims().keys().map(|k| (*k, crate::linalg::Mat::identity(sub.dim_at(k.0, k.1)))).collect() };
            let proj = ModuleMap {
                shift: 0,
                blocks: quo.dims().keys().map(|k| (*k, crate::linalg::Mat::identity(quo.dim_at(k.0, k.1)))).collect(),
            };
            let mut s = ses(format!("T e{u}(-{i}) -> M^{pu}(-{i}) -> (M^{pu})_<=-1(-{i})"), &sub, &mid, &quo, &incl, &proj);
            s.middle_ok = mid.is_projective();
            // the quotient lives in degrees ≤ i − 1, already covered
            let top = quo.degree_range().map_or(i32::MIN, |r| r.1);
            s.outer_ok = quo.is_zero() || top <= i - 1;
            all &= s.ok();
            steps.push(s);
        }
        if all {
            reached.push(-i);
        }
    }
    reached.sort_unstable();
    let pass = reached.len() as i32 == window.1 - window.0 + 1 && hereditary_resolutions && tilting_coresolution;
    Ok(ThickCertificate { window, steps, hereditary_resolutions, tilting_coresolution, reached, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::quiver::{examples, Word};

    #[test]
    fn a3_word_axioms() {
        let c = WordContext::<Rat>::new(&examples::triangle(), &Word(vec![1, 2, 3, 1, 2, 1])).unwrap();
        let v = vanishing_check(&c).unwrap();
        assert!(v.pass, "{v:?}");
        assert_eq!(v.max_j, 6);
        let t = thick_certificate(&c, 5).unwrap();
        assert!(t.pass, "{t:?}");
        assert_eq!(t.reached, (-3..=3).collect::<Vec<_>>());
    }

    #[test]
    fn truncated_syzygies_give_same_witnesses() {
        let q = examples::triangle();
        for w in [vec![1, 2, 1], vec![1, 2, 3, 1, 2, 1], vec![1, 2, 3, 1]] {
            let c = WordContext::<Rat>::new(&q, &Word(w)).unwrap();
            // the stable Hom dimensions themselves, not just the verdict
            for (a, x) in c.m_summands().iter().enumerate() {
                let mut full = x.clone();
                let mut cut = x.clone();
                for _ in 0..4 {
                    full = full.syzygy();
                    cut = cut.syzygy().truncate_above(c.bound.max(1));
                    for y in c.m_summands() {
                        assert_eq!(y.stable_hom_dim(&full, 0).unwrap(), y.stable_hom_dim(&cut, 0).unwrap(), "{a}");
                        assert_eq!(full.stable_hom_dim(&y, 0).unwrap(), cut.stable_hom_dim(&y, 0).unwrap(), "{a}");
                    }
                }
            }
            assert_eq!(vanishing_with_cutoff(&c, None).unwrap().witnesses, vanishing_check(&c).unwrap().witnesses);
        }
    }

    #[test]
    fn kronecker_axioms() {
        let c = WordContext::<Rat>::new(&examples::kronecker(), &Word(vec![1, 2, 1, 2, 1, 2])).unwrap();
        assert!(vanishing_check(&c).unwrap().pass);
        assert!(thick_certificate(&c, 5).unwrap().pass);
    }
}
