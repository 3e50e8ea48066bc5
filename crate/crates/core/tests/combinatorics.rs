use std::collections::HashMap;

use proptest::prelude::*;
use qprojective::combinatorics::*;

fn delta(a: usize, b: usize) -> i32 {
    (a == b) as i32
}

fn up(i: &MultiIndex, j: usize) -> Option<MultiIndex> {
    shift(i, j, ShiftDir::Up).ok()
}

fn down(i: &MultiIndex, j: usize) -> Option<MultiIndex> {
    shift(i, j, ShiftDir::Down).ok()
}

fn all_indices(ell: usize) -> Vec<MultiIndex> {
    (0..=ell).flat_map(|k| enumerate_multiindices(ell, k).unwrap()).collect()
}

// bubble sort swap count
fn swaps_to_sort(v: &[usize]) -> usize {
    let mut v = v.to_vec();
    let mut n = 0;
    for a in 0..v.len() {
        for b in 0..v.len() - 1 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                n += 1;
            }
        }
    }
    n
}

#[test]
fn sharp_after_raising() {
    for ell in 1..=6 {
        for i in all_indices(ell) {
            for j in 1..ell {
                let Some(ij) = up(&i, j) else { continue };
                for l in 1..ell {
                    let expect = sharp(l, &i) - 2 * delta(j, l) + delta(j, l + 1) + delta(j + 1, l);
                    assert_eq!(sharp(l, &ij), expect, "ell={ell} i={i} j={j} l={l}");
                }
            }
        }
    }
}

#[test]
fn raising_lowering_commutator_delta() {
    for ell in 1..=6 {
        for i in all_indices(ell) {
            for j in 1..ell {
                for l in 1..ell {
                    let a = up(&i, j).map_or(0, |ij| (sharp(l, &ij) == -1) as i32);
                    let b = down(&i, l).map_or(0, |il| (sharp(j, &il) == 1) as i32);
                    assert_eq!(a - b, delta(j, l) * sharp(j, &i), "ell={ell} i={i} j={j} l={l}");
                }
            }
        }
    }
}

#[test]
fn complement_of_raised_is_lowered_complement() {
    for ell in 1..=6 {
        for i in all_indices(ell) {
            for j in 1..ell {
                if sharp(j, &i) != 1 {
                    continue;
                }
                let lhs = complement(&up(&i, j).unwrap());
                let rhs = down(&complement(&i), j).expect("complement lowers");
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn unique_coset_factorization_with_additive_length() {
    for n in 1..=6 {
        let all = all_permutations(n);
        for k in 0..=n {
            let parabolic: Vec<Permutation> = all_permutations(k)
                .iter()
                .flat_map(|a| all_permutations(n - k).into_iter().map(move |b| Permutation::block(a, &b)))
                .collect();
            let mut seen: HashMap<Permutation, usize> = HashMap::new();
            for s in enumerate_shuffles(k, n - k) {
                for h in &parabolic {
                    let p = s.compose(h);
                    assert_eq!(inversion_count(&p), inversion_count(&s) + inversion_count(h));
                    *seen.entry(p).or_default() += 1;
                }
            }
            assert_eq!(seen.len(), all.len(), "n={n} k={k}");
            assert!(seen.values().all(|&c| c == 1));
        }
    }
}

#[test]
fn inversions_of_inverse() {
    for n in 0..=7 {
        for p in all_permutations(n) {
            let c = inversion_count(&p);
            assert_eq!(c, inversion_count(&p.inverse()));
            assert_eq!(c, swaps_to_sort(p.images()));
        }
    }
}

#[test]
fn shuffle_count_is_binomial() {
    for n in 0..=7usize {
        for h in 0..=n {
            let s = enumerate_shuffles(h, n - h);
            let binom = (0..h).fold(1usize, |acc, t| acc * (n - t) / (t + 1));
            assert_eq!(s.len(), binom);
            assert!(s.iter().all(|p| p.is_shuffle(h)));
            assert!(s.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

fn perm_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..12).prop_flat_map(|n| {
        let one = || Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap());
        (one(), one(), one())
    })
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in perm_triple()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&a.inverse()), Permutation::identity(a.len()));
    }

    #[test]
    fn complement_is_an_involution(ell in 1usize..10, mask in any::<u16>()) {
        let e: Vec<usize> = (1..=ell).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let i = MultiIndex::new(ell, e).unwrap();
        let c = complement(&i);
        prop_assert_eq!(complement(&c), i.clone());
        prop_assert_eq!(i.weight() + c.weight(), ell * (ell + 1) / 2);
        for j in 1..ell {
            prop_assert_eq!(sharp(j, &i) + sharp(j, &c), 0);
        }
    }
}
