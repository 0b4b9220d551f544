use dlvar_core::rootcore::{self, build_root_system, cartan_by_label, parse_word, CartanMatrix, WeylGroup};
use dlvar_core::Error;
use proptest::prelude::*;
use std::collections::{BTreeSet, VecDeque};

/// Roots by breadth-first closure of the simple roots under
/// `s_i(x) = x − ⟨x, α_i^∨⟩ α_i`, with `⟨x, α_i^∨⟩ = Σ_j x_j C_{j,i}`.
fn closure_roots(c: &CartanMatrix) -> BTreeSet<Vec<i64>> {
    let n = c.rank();
    let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    let mut seen: BTreeSet<Vec<i64>> = (0..n).map(unit).collect();
    let mut queue: VecDeque<Vec<i64>> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| x[j] * c.entry(j, i)).sum();
            let mut y = x.clone();
            y[i] -= pair;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Group order by closing the generator matrices under multiplication.
fn closure_order(g: &WeylGroup) -> usize {
    let n = g.rank();
    let id: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for i in 0..n {
            let s = g.generator_matrix(i);
            let mut out = vec![0i64; n * n];
            for r in 0..n {
                for k in 0..n {
                    for c in 0..n {
                        out[r * n + c] += m[r * n + k] * s[k * n + c];
                    }
                }
            }
            if seen.insert(out.clone()) {
                queue.push_back(out);
            }
        }
    }
    seen.len()
}

fn group(label: &str) -> std::sync::Arc<WeylGroup> {
    WeylGroup::from_cartan(cartan_by_label(label).unwrap()).unwrap()
}

#[test]
fn root_counts_match_reflection_closure() {
    for (label, total) in [("A1", 2), ("A2", 6), ("A3", 12), ("A4", 20), ("C2", 8), ("G2", 12), ("D4", 24), ("F4", 48)] {
        let c = cartan_by_label(label).unwrap();
        let rs = build_root_system(c.clone());
        assert_eq!(rs.roots().len(), total, "{label}");
        let ours: BTreeSet<Vec<i64>> = rs.roots().iter().cloned().collect();
        assert_eq!(ours, closure_roots(&c), "{label}");
        assert_eq!(rs.num_positive() * 2, total);
        for r in rs.roots() {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            assert!(ours.contains(&neg), "{label}: Φ ≠ −Φ");
            assert!(r.iter().all(|&x| x >= 0) || r.iter().all(|&x| x <= 0));
            let double: Vec<i64> = r.iter().map(|x| 2 * x).collect();
            assert!(!ours.contains(&double), "{label}: not reduced");
        }
    }
}

#[test]
fn c2_has_four_positive_roots() {
    let rs = build_root_system(CartanMatrix::new(vec![vec![2, -1], vec![-2, 2]], "C2").unwrap());
    assert_eq!(rs.roots().len(), 8);
    assert_eq!(rs.positive_roots().len(), 4);
}

#[test]
fn rank_one_roots() {
    let rs = build_root_system(CartanMatrix::new(vec![vec![2]], "A1").unwrap());
    let roots: BTreeSet<Vec<i64>> = rs.roots().iter().cloned().collect();
    assert_eq!(roots, BTreeSet::from([vec![1], vec![-1]]));
}

#[test]
fn invalid_cartan_matrices_are_rejected() {
    for bad in [
        vec![vec![2, 1], vec![-1, 2]],
        vec![vec![2, 0], vec![-1, 2]],
        vec![vec![3, -1], vec![-1, 2]],
    ] {
        assert!(matches!(CartanMatrix::new(bad, "bad"), Err(Error::InvalidCartan(_))));
    }
}

#[test]
fn weyl_group_orders() {
    for (label, order, longest) in
        [("A1", 2, 1), ("A2", 6, 3), ("C2", 8, 4), ("G2", 12, 6), ("A4", 120, 10), ("D4", 192, 12), ("F4", 1152, 24)]
    {
        let g = group(label);
        assert_eq!(g.order(), order, "{label}");
        assert_eq!(closure_order(&g), order, "{label}");
        assert_eq!(g.longest().length(), longest, "{label}");
    }
}

#[test]
fn length_equals_inversions_and_word_length() {
    for label in ["A2", "C2", "G2", "A3", "D4"] {
        let g = group(label);
        let rs = g.root_system();
        for w in g.elements() {
            // w acts on coroots; count positive coroots sent to negative ones
            let inversions = rs
                .positive_coroots()
                .iter()
                .filter(|y| w.apply_coroot(y).iter().any(|&c| c < 0))
                .count();
            assert_eq!(inversions, w.length(), "{label} {}", w.word_string());
            assert_eq!(w.word().len(), w.length());
            assert_eq!(g.length_of_matrix(w.matrix()), w.length());
            for y in rs.coroots() {
                assert!(rs.contains_coroot(&w.apply_coroot(y)));
            }
        }
        assert!(g.identity().is_identity());
        assert_eq!(g.identity().word(), &[] as &[usize]);
    }
}

#[test]
fn canonical_word_is_lexicographically_least() {
    for label in ["A2", "C2", "G2", "A3"] {
        let g = group(label);
        for w in g.elements() {
            let words = g.reduced_words(w).unwrap();
            assert_eq!(words.first().map(Vec::as_slice), Some(w.word()));
            let mut sorted = words.clone();
            sorted.sort();
            assert_eq!(sorted, words);
            let supports: BTreeSet<BTreeSet<usize>> = words.iter().map(|v| v.iter().copied().collect()).collect();
            assert_eq!(supports.len(), 1, "support not well defined for {}", w.word_string());
        }
    }
}

#[test]
fn reduced_words_of_longest_elements() {
    let c2 = group("C2");
    assert_eq!(c2.reduced_words(c2.longest()).unwrap(), vec![vec![1, 2, 1, 2], vec![2, 1, 2, 1]]);
    let a2 = group("A2");
    assert_eq!(a2.reduced_words(a2.longest()).unwrap(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
    assert_eq!(a2.reduced_words(a2.simple_reflection(1).unwrap()).unwrap(), vec![vec![1]]);
}

/// Subword criterion evaluated by brute force over all subsets of the
/// canonical word of `w`.
fn subword_leq(g: &WeylGroup, v: &[usize], w: &[usize]) -> bool {
    (0u32..1 << w.len()).any(|mask| {
        let sub: Vec<usize> = (0..w.len()).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).collect();
        let e = g.evaluate(&sub).unwrap();
        e.length() == sub.len() && e.word() == v
    })
}

#[test]
fn bruhat_order_matches_subwords() {
    for label in ["A2", "C2", "G2", "A3"] {
        let g = group(label);
        for v in g.elements() {
            for w in g.elements() {
                assert_eq!(g.bruhat_leq(v, w).unwrap(), subword_leq(&g, v.word(), w.word()), "{label}");
            }
        }
    }
}

#[test]
fn bruhat_examples() {
    let c2 = group("C2");
    let el = |g: &WeylGroup, w: &[usize]| g.element(w).unwrap().clone();
    assert!(c2.bruhat_leq(&el(&c2, &[1]), &el(&c2, &[2, 1])).unwrap());
    assert!(!c2.bruhat_leq(&el(&c2, &[2]), &el(&c2, &[1])).unwrap());
    let a2 = group("A2");
    assert!(!a2.bruhat_leq(&el(&a2, &[1, 2]), &el(&a2, &[2, 1])).unwrap());
    for w in a2.elements() {
        assert!(a2.bruhat_leq(a2.identity(), w).unwrap());
    }
    let g2 = group("G2");
    let mixed = c2.bruhat_leq(c2.identity(), g2.simple_reflection(2).unwrap());
    assert_eq!(mixed, Err(Error::MismatchedGroups));
}

#[test]
fn non_reduced_words_are_rejected() {
    let a2 = group("A2");
    assert!(matches!(a2.element(&[1, 1]), Err(Error::NotReduced(_))));
    assert!(a2.evaluate(&[1, 1]).unwrap().is_identity());
}

#[test]
fn word_parsing() {
    assert_eq!(parse_word("21").unwrap(), vec![2, 1]);
    assert_eq!(parse_word("2,1").unwrap(), vec![2, 1]);
    assert_eq!(parse_word("e").unwrap(), Vec::<usize>::new());
    assert!(matches!(parse_word("2x"), Err(Error::Parse(_))));
    assert_eq!(rootcore::word_to_string(&[2, 1]), "21");
}

proptest! {
    #[test]
    fn multiplication_is_associative_and_inverse_works(a in 0usize..12, b in 0usize..12, c in 0usize..12) {
        let g = group("G2");
        let e = g.elements();
        let (x, y, z) = (&e[a], &e[b], &e[c]);
        let left = g.mul(g.mul(x, y).unwrap(), z).unwrap();
        let right = g.mul(x, g.mul(y, z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = g.inverse(x).unwrap();
        prop_assert!(g.mul(x, inv).unwrap().is_identity());
        prop_assert_eq!(inv.length(), x.length());
    }

    #[test]
    fn evaluating_a_canonical_word_returns_the_element(i in 0usize..1152) {
        let g = dlvar_core::dldatum::weyl_group_cached("F4").unwrap();
        let w = &g.elements()[i];
        prop_assert_eq!(g.evaluate(w.word()).unwrap(), w);
    }
}
