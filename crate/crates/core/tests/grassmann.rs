use proptest::prelude::*;
use qprojective::combinatorics::MultiIndex;
use qprojective::grassmann::*;
use qprojective::qscalar::QScalar;

fn neg_q(n: i64) -> QScalar {
    let s = QScalar::q_int(n);
    if n.rem_euclid(2) == 1 {
        -s
    } else {
        s
    }
}

// integer-coefficient vector from a seed list
fn vector(ell: usize, k: usize, seed: &[i64]) -> GrVector {
    let n = basis(ell, k).len();
    let coeffs = (0..n).map(|t| QScalar::from_int(seed[t % seed.len()]) * QScalar::q_int(t as i64 % 3 - 1)).collect();
    GrVector::from_coeffs(ell, k, coeffs).unwrap()
}

#[test]
fn suite_passes() {
    let checks = verify_suite(5);
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    assert!(checks.iter().all(|c| c.passed));
}

#[test]
fn degree_one_product_formulas() {
    for ell in 1..=5 {
        for k in 0..ell {
            let v = vector(ell, 1, &[2, -1, 3, 1, 5]);
            let w = vector(ell, k, &[1, 4, -2, 7]);
            let vw = wedge(&v, &w).unwrap();
            let wv = wedge(&w, &v).unwrap();
            for i in basis(ell, k + 1) {
                let mut left = QScalar::zero();
                let mut right = QScalar::zero();
                for (r0, &ir) in i.entries().iter().enumerate() {
                    let r = r0 as i64 + 1;
                    let rest = i.without(ir).unwrap();
                    let vi = v.get(&MultiIndex::new(ell, vec![ir]).unwrap());
                    left += neg_q(1 - r) * &vi * w.get(&rest);
                    right += neg_q(r - k as i64 - 1) * w.get(&rest) * &vi;
                }
                assert_eq!(vw.get(&i), left, "ell={ell} k={k} i={i}");
                assert_eq!(wv.get(&i), right, "ell={ell} k={k} i={i}");
            }
        }
    }
}

#[test]
fn total_dimension_is_power_of_two() {
    for ell in 0..=8 {
        let total: usize = (0..=ell).map(|k| basis(ell, k).len()).sum();
        assert_eq!(total, 1 << ell);
    }
}

#[test]
fn left_contraction_is_adjoint_of_left_exterior() {
    for ell in 1..=4 {
        for k in 0..ell {
            let x = vector(ell, 1, &[1, -2, 3, 1]);
            let e = exterior(&x, Side::Left, k).unwrap();
            let i = contraction(&x, Side::Left, k).unwrap();
            for a in basis(ell, k) {
                for b in basis(ell, k + 1) {
                    let ea = e.apply(&GrVector::basis_vector(&a)).unwrap().get(&b);
                    let ib = i.apply(&GrVector::basis_vector(&b)).unwrap().get(&a);
                    assert_eq!(ea.conj(), ib);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn j_is_antilinear_and_squares_to_sign(ell in 1usize..6, k0 in 0usize..6, re in -5i64..5, im in -5i64..5) {
        let k = k0 % (ell + 1);
        let v = vector(ell, k, &[3, -1, 2]);
        let c = QScalar::from_int(re) + QScalar::i() * QScalar::from_int(im);
        prop_assert_eq!(jmap(&v.scale(&c)), jmap(&v).scale(&c.conj()));
        let jj = jmap(&jmap(&v));
        prop_assert_eq!(jj, v.scale(&QScalar::from_int(j_square_sign(ell))));
    }

    #[test]
    fn wedge_is_bilinear(ell in 2usize..5, a in -4i64..4, b in -4i64..4) {
        let u = vector(ell, 1, &[1, 2]);
        let v = vector(ell, 1, &[-3, 1]);
        let w = vector(ell, 1, &[2, 0, 1]);
        let (sa, sb) = (QScalar::from_int(a), QScalar::from_int(b));
        let lhs = wedge(&u.scale(&sa).add(&v.scale(&sb)), &w).unwrap();
        let rhs = wedge(&u, &w).unwrap().scale(&sa).add(&wedge(&v, &w).unwrap().scale(&sb));
        prop_assert_eq!(lhs, rhs);
    }
}
