use preproj::context::WordContext;
use preproj::quiver::{examples, Word};
use preproj::report::{diagrams, radical_layers};
use preproj::Rat;

const GOLDEN: &str = include_str!("data/a3_piw_diagrams.txt");

fn ctx(name: &str, w: &[u32]) -> WordContext<Rat> {
    WordContext::new(&examples::by_name(name).unwrap(), &Word(w.to_vec())).unwrap()
}

#[test]
fn a3_word_matches_golden() {
    let c = ctx("a3", &[1, 2, 3, 1, 2, 1]);
    assert_eq!(format!("{}\n", diagrams(&c.piw, &c.quiver, "Pi_w")), GOLDEN);
}

// Composition factors per layer as (vertex, in degree zero), computed by hand.
#[test]
fn a3_word_matches_hand_computation() {
    let expected: [Vec<Vec<(u32, bool)>>; 3] = [
        vec![vec![(1, true)], vec![(2, false), (3, false)], vec![(1, false), (2, false), (3, false)], vec![(1, false), (1, false)]],
        vec![vec![(2, true)], vec![(1, true), (3, false)], vec![(1, false), (2, false), (3, false)], vec![(1, false), (2, false)], vec![(1, false)]],
        vec![vec![(3, true)], vec![(1, true), (2, true)], vec![(1, true)]],
    ];
    let c = ctx("a3", &[1, 2, 3, 1, 2, 1]);
    for (u, fig) in expected.iter().enumerate() {
        let got: Vec<Vec<(u32, bool)>> = radical_layers(&c.piw, &c.quiver, u)
            .into_iter()
            .map(|row| {
                let mut r: Vec<(u32, bool)> = row.into_iter().map(|(d, v)| (v, d == 0)).collect();
                r.sort_unstable();
                r
            })
            .collect();
        let mut want = fig.clone();
        for r in &mut want {
            r.sort_unstable();
        }
        assert_eq!(got, want, "column e_{}", u + 1);
    }
}

#[test]
fn kronecker_layers_grow_by_one() {
    let c = ctx("kronecker", &[1, 2, 1, 2, 1, 2]);
    let sizes: Vec<usize> = radical_layers(&c.piw, &c.quiver, 0).iter().map(|r| r.len()).collect();
    assert_eq!(sizes, vec![1, 2, 3, 4, 5]);
    let sizes: Vec<usize> = radical_layers(&c.piw, &c.quiver, 1).iter().map(|r| r.len()).collect();
    assert_eq!(sizes, vec![1, 2, 3, 4, 5, 6]);
}
