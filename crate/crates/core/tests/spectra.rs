use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use qprojective::qscalar::QScalar;
use qprojective::spectra::*;

fn qn(x: f64, q: f64) -> f64 {
    (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
}

fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

// D^2 multiset at q = 1 straight from the classical eigenvalue and multiplicity formulas.
fn classical_oracle(l: i64, n: i64, m_max: i64) -> BTreeMap<BigRational, u64> {
    let mut out = BTreeMap::new();
    let mut add = |label: i64, k: i64, m: i64| {
        let lam = (m + label) * (m + k);
        let mu = (k * (2 * m + k + label)) as u128 * binom(m + l, l) * binom(m + k + label - 1, l) * binom(l, k)
            / lam as u128;
        *out.entry(BigRational::from_integer(lam.into())).or_insert(0) += 2 * mu as u64;
    };
    for m in 0..=m_max {
        for k in 1..=l {
            if n <= 0 {
                add(l + 1 - n, k, m);
            } else if n > l {
                add(n, k, m);
            } else if k < n {
                add(n, l + 1 - k, m);
            } else {
                add(l + 1 - n, k, m);
            }
        }
    }
    let kernel = if n <= 0 { binom(l - n, l) } else if n > l { binom(n - 1, l) } else { 0 };
    if kernel > 0 {
        out.insert(BigRational::from_integer(0.into()), kernel as u64);
    }
    out
}

fn below(m: &BTreeMap<BigRational, u64>, bound: i64) -> BTreeMap<BigRational, u64> {
    let b = BigRational::from_integer(bound.into());
    m.iter().filter(|(v, _)| **v < b).map(|(v, c)| (v.clone(), *c)).collect()
}

#[test]
fn projective_line_even_charge() {
    let sp = full_spectrum(1, 0, 8).unwrap();
    assert_eq!(sp.kernel_dim(), 1);
    let q = 0.43;
    for line in sp.lines.iter().filter(|l| l.degree == 0 && l.sign != 0) {
        let j = line.weight.0[0] as f64 / 2.0;
        let block = IrrepBlock::new(line.weight.clone(), line.level, "");
        let cp1 = q * q * laplacian_eigenvalue(1, 0, 0, &block).eval_at(q).unwrap();
        assert!((cp1 - qn(j, q) * qn(j + 1.0, q)).abs() < 1e-9 * cp1);
        assert_eq!(line.multiplicity as f64, 2.0 * j + 1.0);
    }
}

#[test]
fn projective_line_odd_charge() {
    let sp = full_spectrum(1, 1, 8).unwrap();
    assert_eq!(sp.kernel_dim(), 0);
    let q = 0.43;
    for line in sp.lines.iter().filter(|l| l.degree == 0) {
        let j = (line.weight.0[0] + 1) as f64 / 2.0;
        let block = IrrepBlock::new(line.weight.clone(), line.level, "");
        let cp1 = q * q * laplacian_eigenvalue(1, 1, 0, &block).eval_at(q).unwrap();
        assert!((cp1 - q * qn(j, q).powi(2)).abs() < 1e-9 * cp1);
        assert_eq!(line.multiplicity as f64, 2.0 * j);
    }
}

#[test]
fn casimir_offset_against_projective_line() {
    let half = QScalar::qnum(qprojective::qscalar::RootOrder::new(4).unwrap(), qprojective::qscalar::Rat::new(1, 2)).unwrap();
    let offset = -(&half * &half);
    for n in 0..8u32 {
        let x = QScalar::qnum(qprojective::qscalar::RootOrder::new(4).unwrap(), qprojective::qscalar::Rat::new(n as i64 + 1, 2)).unwrap();
        assert_eq!(casimir_eigenvalue(&HighestWeight::new(vec![n])) - &x * &x, offset);
    }
}

#[test]
fn classical_limit_matches_formulas() {
    for l in 1..=4i64 {
        for n in -2..=l + 2 {
            let sp = full_spectrum(l as usize, n, 4).unwrap();
            let ours = sp.d2_multiset_at_one().unwrap();
            // every classical value at m >= 5 is at least 6 * 6
            let oracle = classical_oracle(l, n, 12);
            assert_eq!(below(&ours, 36), below(&oracle, 36), "l={l} N={n}");
        }
    }
}

#[test]
fn kernel_blocks() {
    for l in 1..=4usize {
        for n in -2..=(l as i64 + 2) {
            let sp = full_spectrum(l, n, 2).unwrap();
            let k: Vec<_> = sp.kernel().collect();
            if n <= 0 {
                assert_eq!(k.len(), 1);
                assert_eq!(k[0].degree, 0);
                assert_eq!(k[0].weight.0[l - 1] as i64, -n);
                assert_eq!(k[0].multiplicity as u128, binom(l as i64 - n, l as i64));
            } else if n > l as i64 {
                assert_eq!(k.len(), 1);
                assert_eq!(k[0].degree, l);
                assert_eq!(k[0].multiplicity as u128, binom(n - 1, l as i64));
            } else {
                assert!(k.is_empty());
            }
        }
    }
}

#[test]
fn charge_reflection_symmetry_at_one() {
    for l in 1..=3i64 {
        for n in -2..=0 {
            let a = full_spectrum(l as usize, n, 4).unwrap().d2_multiset_at_one().unwrap();
            let b = full_spectrum(l as usize, l + 1 - n, 4).unwrap().d2_multiset_at_one().unwrap();
            assert_eq!(a, b, "l={l} N={n}");
        }
    }
}

#[test]
fn rank_two_neutral_laplacian_is_scaled_casimir() {
    let t = harmonic_decomposition(2, 0, 0, 6).unwrap();
    for b in &t.blocks {
        assert_eq!(laplacian_eigenvalue(2, 0, 0, b), QScalar::q_int(-3) * &b.casimir);
    }
    for k in 1..=2 {
        for b in &harmonic_decomposition(2, 0, k, 4).unwrap().blocks {
            assert_eq!(laplacian_eigenvalue(2, 0, k, b), QScalar::q_int(-3) * &b.casimir, "k={k} {}", b.weight);
        }
    }
}

#[test]
fn closed_su_l_constant_differs_only_beyond_rank_two() {
    for l in 1..=2 {
        for k in 0..=l {
            for n in -2..=4 {
                assert_eq!(casimir_shift(l, k, n), casimir_shift_closed(l, k, n));
            }
        }
    }
    assert_ne!(casimir_shift(3, 1, 0), casimir_shift_closed(3, 1, 0));
}

#[test]
fn casimir_shift_regular_at_one() {
    for l in 1..=4 {
        for k in 0..=l {
            for n in -2..=5 {
                assert!(casimir_shift(l, k, n).at_one_real().is_ok());
            }
        }
    }
}

#[test]
fn growth_rate() {
    let r = growth_diagnostics(2, 1, 0.6, 12).unwrap();
    assert!(r.relative_error < 0.05, "{r:?}");
    for p in &r.probes {
        assert!(p.geometric_ratio < 1.0);
        assert!((p.geometric_ratio - 0.6f64.powf(p.s)).abs() < 0.05);
    }
}

#[test]
fn suite_passes() {
    let checks = verify_suite(3);
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    assert!(checks.iter().all(|c| c.passed));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reversal_is_an_involution(w in prop::collection::vec(0u32..5, 1..5)) {
        let n = HighestWeight::new(w);
        prop_assert_eq!(n.reversed().reversed(), n.clone());
        prop_assert_eq!(weyl_dim(&n.reversed()), weyl_dim(&n));
        let mean = (casimir_eigenvalue(&n) + casimir_eigenvalue(&n.reversed())) * QScalar::from_ratio(qprojective::qscalar::Rat::new(1, 2));
        prop_assert_eq!(mean, casimir_closed_form(&n));
    }

    #[test]
    fn classical_casimir_is_nonnegative(w in prop::collection::vec(0u32..6, 1..5)) {
        let c = classical_casimir(&HighestWeight::new(w));
        prop_assert!(c >= BigRational::from_integer(0.into()));
    }

    #[test]
    fn block_values_nonnegative(l in 1usize..4, n in -3i64..6, k in 0usize..4, m in 0u32..5, q in 0.2f64..0.95) {
        prop_assume!(k <= l);
        for b in harmonic_decomposition(l, n, k, m).unwrap().blocks {
            let v = dirac_squared_value(l, n, k, &b).eval_at(q).unwrap();
            prop_assert!(v >= -1e-9 * b.casimir.eval_at(q).unwrap().abs().max(1.0));
        }
    }
}
