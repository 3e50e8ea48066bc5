use qprojective::uqsl::*;

#[test]
fn suite_passes() {
    let checks = verify_suite(4);
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    assert!(checks.iter().all(|c| c.passed));
}

use qprojective::matrix::QMatrix;
use qprojective::qscalar::QScalar;
use qprojective::spectra::{casimir_eigenvalue, HighestWeight};

// Highest-weight value (sum_i q^(l+2-2i-2a_i/(l+1)) - [l+1])/(q-q^-1)^2 at q = 0.6.
fn casimir_oracle(n: &[i64], q: f64) -> f64 {
    let l = n.len() as i64;
    let qnum = |x: f64| (q.powf(x) - q.powf(-x)) / (q - 1.0 / q);
    let mut s = 0.0;
    for i in 1..=l + 1 {
        let a: i64 = (1..i).map(|j| j * n[j as usize - 1]).sum::<i64>()
            - (i..=l).map(|j| (l + 1 - j) * n[j as usize - 1]).sum::<i64>();
        s += q.powf((l + 2 - 2 * i) as f64 - 2.0 * a as f64 / (l + 1) as f64);
    }
    (s - qnum((l + 1) as f64)) / (q - 1.0 / q).powi(2)
}

fn unit(l: usize, at: usize, x: u32) -> Vec<u32> {
    let mut v = vec![0; l];
    v[at] = x;
    v
}

#[test]
fn casimir_on_fundamental_is_the_highest_weight_value() {
    for l in 1..=4 {
        let c = casimir_matrix(&fundamental_rep(l), CasimirKind::Full);
        let lambda = c.as_scalar().expect("Casimir acts as a scalar");
        let n = HighestWeight::new(unit(l, l - 1, 1));
        assert_eq!(lambda, casimir_eigenvalue(&n));
        let oracle = casimir_oracle(&n.0.iter().map(|&x| x as i64).collect::<Vec<_>>(), 0.6);
        assert!((lambda.eval_at(0.6).unwrap() - oracle).abs() < 1e-10 * oracle.abs().max(1.0));
    }
}

#[test]
fn casimir_on_tensor_square_has_two_eigenvalues() {
    for l in 1..=3 {
        let p = fundamental_rep(l);
        let pp = tensor_rep(&p, &p);
        let c = casimir_matrix(&pp, CasimirKind::Full);
        let sym = casimir_eigenvalue(&HighestWeight::new(unit(l, l - 1, 2)));
        let mut vals = vec![sym];
        let anti = if l >= 2 { HighestWeight::new(unit(l, l - 2, 1)) } else { HighestWeight::zero(1) };
        vals.push(casimir_eigenvalue(&anti));
        let d = pp.dim();
        let mut prod = QMatrix::identity(d);
        for v in &vals {
            prod = prod.mul(&c.sub(&QMatrix::scalar(d, v)));
        }
        assert!(prod.is_zero(), "l={l}");
    }
}

#[test]
fn primed_casimir_on_fundamental() {
    for l in 2..=4 {
        let c = casimir_matrix(&fundamental_rep(l), CasimirKind::Prime);
        let d = l + 1;
        let candidates = [
            casimir_eigenvalue(&HighestWeight::new(unit(l - 1, l - 2, 1))),
            casimir_eigenvalue(&HighestWeight::new(unit(l - 1, 0, 1))),
        ];
        let ok = candidates.iter().any(|v| {
            c.mul(&c.sub(&QMatrix::scalar(d, v))).is_zero() && !c.is_zero()
        });
        assert!(ok, "l={l}");
        assert_eq!(casimir_eigenvalue(&HighestWeight::zero(l - 1)), QScalar::zero());
    }
}
