use preproj::algebra::GradedAlgebra;
use preproj::context::WordContext;
use preproj::coxeter::{Coxeter, Sortability};
use preproj::endo::build_qw;
use preproj::quiver::{examples, Quiver, Word};
use preproj::{Fp, Rat};
use proptest::prelude::*;

fn quiver(i: usize) -> Quiver {
    [examples::a2(), examples::triangle(), examples::a3_linear(), examples::kronecker()][i % 4].clone()
}

/// Random letters reduced greedily: a letter is kept only if the word stays reduced.
fn reduced(q: &Quiver, raw: &[usize]) -> Word {
    let cox = Coxeter::new(q);
    let mut w = Vec::new();
    for &r in raw {
        w.push(q.id(r % q.n()));
        if !cox.is_reduced(&Word(w.clone())).unwrap() {
            w.pop();
        }
    }
    Word(w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sorting_word_is_an_expression_of_the_element(qi in 0usize..4, raw in prop::collection::vec(0usize..4, 1..7)) {
        let q = quiver(qi);
        let w = reduced(&q, &raw);
        let cox = Coxeter::new(&q);
        if let Sortability::Sortable(f) = cox.sortable_factorize(&w, &q.admissible_word()).unwrap() {
            prop_assert_eq!(cox.element_of(&f.word()).unwrap(), cox.element_of(&w).unwrap());
            prop_assert_eq!(f.word().len(), w.len());
            // nested supports
            for b in f.blocks.windows(2) {
                prop_assert!(b[1].support().is_subset(&b[0].support()));
            }
        }
    }

    #[test]
    fn qw_degrees_follow_the_rule(qi in 0usize..4, raw in prop::collection::vec(0usize..4, 1..8)) {
        let q = quiver(qi);
        let w = reduced(&q, &raw);
        let g = build_qw(&q.support_subquiver(&w.support()).unwrap(), &w).unwrap();
        prop_assert!(g.degrees_consistent());
    }

    #[test]
    fn piw_columns_are_modules_and_bounded(qi in 0usize..4, raw in prop::collection::vec(0usize..4, 1..6)) {
        let q = quiver(qi);
        let w = reduced(&q, &raw);
        let c = WordContext::<Rat>::new(&q, &w).unwrap();
        prop_assert!(c.piw.max_present_degree() <= c.bound.max(0));
        for i in 1..=c.len() {
            prop_assert!(c.layer_column_identity(i).unwrap());
            prop_assert!(c.layer(i).unwrap().check_module());
        }
        // Π_w = ⊕_u M^{p_u}(−m_{p_u}) as graded vector spaces
        let total: usize = c.p_summands().iter().map(|m| m.dim()).sum();
        prop_assert_eq!(total, c.piw.dim());
    }

    #[test]
    fn prime_field_dims_agree(qi in 0usize..4, d in 0i32..4) {
        let q = quiver(qi);
        let a = GradedAlgebra::<Rat>::preprojective(&q, d).unwrap();
        let b = GradedAlgebra::<Fp<1000000007>>::preprojective(&q, d).unwrap();
        for u in 0..q.n() {
            prop_assert_eq!(a.dim_column_degree(u, d), b.dim_column_degree(u, d));
        }
    }

    #[test]
    fn syzygy_dims_add_up(qi in 0usize..4, raw in prop::collection::vec(0usize..4, 1..6)) {
        let q = quiver(qi);
        let w = reduced(&q, &raw);
        let c = WordContext::<Rat>::new(&q, &w).unwrap();
        for m in c.m_summands() {
            let (p, _) = m.projective_cover();
            let o = m.syzygy();
            prop_assert_eq!(p.dim(), m.dim() + o.dim());
            prop_assert!(o.check_module());
        }
    }
}
