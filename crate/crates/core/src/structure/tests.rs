use proptest::prelude::*;

use super::*;
use crate::grasseq::rank1_ideal;
use crate::grobner::ideal_intersect_all;

fn spec(blocks: &[(&str, usize, usize)]) -> JordanSpec {
    JordanSpec::parse(&["x"], blocks).unwrap()
}

fn displayed(spec: &JordanSpec, gens: &[&str]) -> Ideal {
    Ideal::parse(&spec.ring(), gens).unwrap()
}

#[test]
fn worked_index_sets() {
    let s = spec(&[("0", 3, 2), ("0", 2, 2), ("0", 1, 2)]);
    let f = jordan_spec_sets(&s).unwrap();
    assert_eq!(
        f.global.a,
        vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8], vec![9, 10], vec![11], vec![12]]
    );
    assert_eq!(f.global.b, [2, 3, 5, 6, 8, 10]);
    assert_eq!(f.global.c, [3, 6, 8, 10, 11, 12]);
    let l1 = f.level(1).unwrap();
    assert_eq!(l1.a, vec![vec![1, 2, 3], vec![4, 5, 6]]);
    assert_eq!(l1.l, [7, 8, 9, 10, 11, 12]);
    assert_eq!(l1.b, [2, 3, 5, 6]);
    assert_eq!(l1.c, [3, 6]);
    let l2 = f.level(2).unwrap();
    assert_eq!(l2.a, vec![vec![1, 2], vec![4, 5], vec![7, 8], vec![9, 10]]);
    assert_eq!(l2.l, [3, 6, 11, 12]);
    assert_eq!(l2.b, [2, 5, 8, 10]);
    assert_eq!(l2.c, [2, 5, 8, 10]);
    let l3 = f.level(3).unwrap();
    assert_eq!(l3.a, vec![vec![1], vec![4], vec![7], vec![9], vec![11], vec![12]]);
    assert_eq!(l3.l, [2, 3, 5, 6, 8, 10]);
    assert!(l3.b.is_empty());
    assert_eq!(l3.c, [1, 4, 7, 9, 11, 12]);

    let f = jordan_spec_sets(&spec(&[("0", 1, 1)])).unwrap();
    assert_eq!(f.global.a, vec![vec![1]]);
    assert!(f.global.b.is_empty());
    assert_eq!(f.global.c, [1]);

    assert!(jordan_spec_sets(&spec(&[("0", 1, 1), ("0", 2, 1)])).is_err());
}

#[test]
fn segre_veronese_minors() {
    let i = sv_ideal(&[vec![1, 2], vec![3, 4]], 4).unwrap();
    let shown: Vec<String> = i.gens().iter().map(|g| g.to_string()).collect();
    assert_eq!(shown, ["-z2*z3 + z1*z4"]);
    let i = sv_ideal(&[vec![1, 2, 3, 4]], 4).unwrap();
    let want = Ideal::parse(i.vars(), &["z1*z3 - z2^2", "z1*z4 - z2*z3", "z2*z4 - z3^2"]).unwrap();
    assert!(i.equals(&want).unwrap());
    assert!(sv_ideal(&[vec![1], vec![2], vec![3]], 3).unwrap().is_zero());
    assert_eq!(sv_ideal(&[vec![1, 2], vec![2, 3]], 3).unwrap_err(), Error::Overlap(2));
}

#[test]
fn parametrizations_vanish() {
    assert!(sv_parametrization_check(&[vec![1, 2], vec![3, 4]], 4).unwrap());
    for r in 1..=6 {
        assert!(sv_parametrization_check(&[(1..=r).collect()], r).unwrap());
    }
    assert!(sv_parametrization_check(&[vec![1], vec![3]], 3).unwrap());
    assert!(sv_parametrization_check(&[vec![1, 2, 3], vec![4, 5, 6], vec![8, 9, 10]], 10).unwrap());
    assert_eq!(
        sv_parametrization_check(&[vec![1, 2], vec![3]], 3).unwrap_err(),
        Error::UnequalBlockSizes
    );
}

#[test]
fn displayed_components() {
    let s = spec(&[("0", 4, 1), ("0", 2, 1)]);
    let v1 = predicted_component(&s, 1).unwrap();
    let want = displayed(
        &s,
        &["z5", "z6", "z4^2", "z2*z4", "z3*z4", "z1*z3 - z2^2", "z1*z4 - z2*z3", "z2*z4 - z3^2"],
    );
    assert!(v1.ideal.equals(&want).unwrap());
    assert_eq!((v1.dimension, v1.fiber_degree), (0, 4));
    let v2 = predicted_component(&s, 2).unwrap();
    let want = displayed(&s, &["z3", "z4", "z2^2", "z2*z6", "z6^2", "z1*z6 - z2*z5"]);
    assert!(v2.ideal.equals(&want).unwrap());
    assert_eq!((v2.dimension, v2.fiber_degree), (1, 2));

    let s = spec(&[("0", 2, 2)]);
    let full = predicted_full(&s).unwrap();
    assert!(full.equals(&displayed(&s, &["z2^2", "z2*z4", "z4^2", "z2*z3 - z1*z4"])).unwrap());
    assert!(predicted_component(&s, 2).is_err());
    assert!(predicted_full(&spec(&[("0", 1, 1), ("1", 1, 1)])).is_err());
}

#[test]
fn single_block_lemma() {
    for r in 2..=6 {
        let s = spec(&[("x^2 - 1", r, 1)]);
        let single = predicted_single(&s).unwrap();
        assert!(single.equals(&predicted_full(&s).unwrap()).unwrap(), "r = {r}");
        let g = rank1_ideal(&s.to_higgs().unwrap()).unwrap();
        assert!(g.ideal.equals(&single).unwrap(), "r = {r}");
    }
    assert!(predicted_single(&spec(&[("0", 2, 2)])).is_err());
}

/// Specs of one eigenvalue with strictly decreasing sizes and r ≤ 6.
fn small_corpus() -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    fn rec(max_size: usize, left: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for size in (1..max_size).rev() {
            for mult in 1..=left / size {
                cur.push((size, mult));
                rec(size, left - size * mult, cur, out);
                cur.pop();
            }
        }
    }
    rec(7, 6, &mut Vec::new(), &mut out);
    out
}

fn of_pairs(pairs: &[(usize, usize)], lambda: &str) -> JordanSpec {
    let blocks: Vec<(&str, usize, usize)> = pairs.iter().map(|&(s, m)| (lambda, s, m)).collect();
    spec(&blocks)
}

#[test]
fn components_intersect_to_full() {
    let corpus = small_corpus();
    assert!(corpus.len() > 20);
    for pairs in &corpus {
        let s = of_pairs(pairs, "0");
        let comps = predicted_components(&s).unwrap();
        for c in &comps {
            let m: usize = s.blocks()[..c.v].iter().map(|b| b.mult).sum();
            assert_eq!(c.dimension + 1, m);
        }
        let ideals: Vec<Ideal> = comps.into_iter().map(|c| c.ideal).collect();
        let meet = ideal_intersect_all(&ideals).unwrap();
        assert!(meet.equals(&predicted_full(&s).unwrap()).unwrap(), "{pairs:?}");
    }
}

#[test]
fn full_prediction_matches_equations() {
    for (k, pairs) in small_corpus().iter().enumerate().step_by(3) {
        let lambda = ["0", "x", "3*x^2 - 1/2"][k % 3];
        let s = of_pairs(pairs, lambda);
        let g = rank1_ideal(&s.to_higgs().unwrap()).unwrap();
        assert!(g.ideal.equals(&predicted_full(&s).unwrap()).unwrap(), "{pairs:?}");
    }
}

#[test]
fn eigenvalue_decomposition() {
    let s = spec(&[("x", 1, 1), ("-x", 1, 1)]);
    let parts = decompose_by_eigenvalue(&s).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts[0].1.equals(&displayed(&s, &["z2"])).unwrap());
    assert!(parts[1].1.equals(&displayed(&s, &["z1"])).unwrap());

    let s = spec(&[("0", 2, 1), ("1", 1, 1)]);
    let parts = decompose_by_eigenvalue(&s).unwrap();
    assert!(parts[0].1.equals(&displayed(&s, &["z3", "z2^2"])).unwrap());
    assert!(parts[1].1.equals(&displayed(&s, &["z1", "z2"])).unwrap());
    // away from the irrelevant ideal the equations cut out the disjoint union
    let g = rank1_ideal(&s.to_higgs().unwrap()).unwrap().ideal;
    let meet = ideal_intersect_all(&parts.iter().map(|p| p.1.clone()).collect::<Vec<_>>()).unwrap();
    assert!(meet.contains_ideal(&g).unwrap());
    let vars = s.ring();
    let sat: Vec<Ideal> = (1..4)
        .map(|k| g.saturate(&Poly::var_at(&vars, k)).unwrap())
        .collect();
    assert!(ideal_intersect_all(&sat).unwrap().equals(&meet).unwrap());

    let s = spec(&[("2", 1, 3)]);
    let parts = decompose_by_eigenvalue(&s).unwrap();
    assert_eq!(parts.len(), 1);
    assert!(parts[0].1.is_zero());

    assert!(matches!(
        decompose_by_eigenvalue(&spec(&[("0", 2, 1), ("0", 1, 1)])),
        Err(Error::RepeatedEigenvalue(_))
    ));
}

#[test]
fn morphism_classes() {
    let c = |b: &[(&str, usize, usize)]| classify_morphism(&spec(b));
    assert_eq!(c(&[("0", 1, 1), ("1", 1, 1)]), MorphismClass { finite: true, reduced: true });
    assert_eq!(c(&[("0", 2, 1)]), MorphismClass { finite: true, reduced: false });
    assert_eq!(c(&[("0", 1, 2)]), MorphismClass { finite: false, reduced: true });
    assert_eq!(c(&[("0", 2, 1), ("0", 1, 1)]), MorphismClass { finite: false, reduced: false });
}

#[test]
fn spec_validation_and_json() {
    assert!(JordanSpec::parse(&["x"], &[("0", 2, 1), ("0", 2, 1)]).is_err());
    assert!(JordanSpec::parse(&["x"], &[("0", 0, 1)]).is_err());
    assert!(JordanSpec::parse(&["x"], &[]).is_err());
    let j: JordanSpecJson =
        serde_json::from_str(r#"{"blocks":[{"lambda":"x","size":1,"mult":1},{"lambda":"0","size":2,"mult":1}]}"#)
            .unwrap();
    let s = JordanSpec::from_json(&j).unwrap();
    assert_eq!(s.r(), 3);
    assert_eq!(s.base_vars().names(), ["x"]);
    assert_eq!(JordanSpec::from_json(&s.to_json()).unwrap(), s);
    let n = spec(&[("0", 1, 1), ("x", 1, 1), ("0", 3, 1)]).normalized();
    let shape: Vec<(String, usize)> = n.blocks().iter().map(|b| (b.lambda.to_string(), b.size)).collect();
    assert_eq!(shape, [("0".into(), 3), ("0".into(), 1), ("x".into(), 1)]);
}

/// A family whose blocks are consecutive runs, and a coarsening that
/// extends each block to the right by up to `grow` free indices.
fn nested_families() -> impl Strategy<Value = (Vec<Vec<usize>>, Vec<Vec<usize>>, usize)> {
    prop::collection::vec((1usize..4, 0usize..3, 0usize..2), 1..4).prop_map(|spec| {
        let mut small = Vec::new();
        let mut big = Vec::new();
        let mut next = 1;
        for (len, grow, gap) in spec {
            let run: Vec<usize> = (next..next + len).collect();
            let ext: Vec<usize> = (next..next + len + grow).collect();
            small.push(run);
            big.push(ext);
            next += len + grow + gap;
        }
        (small, big, next - 1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn refinement_reverses_inclusion((small, big, r) in nested_families()) {
        let i = sv_ideal(&small, r).unwrap();
        let j = sv_ideal(&big, r).unwrap();
        for g in i.gens() {
            prop_assert!(j.contains(g).unwrap());
        }
    }
}
