use num_complex::Complex;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{coeff_int, LaurentPoly, QScalar, Rat, RootOrder};
use crate::check::{summarize, Check};

fn random_poly(rng: &mut StdRng, terms: usize, span: i64) -> LaurentPoly {
    LaurentPoly::from_terms((0..terms).map(|_| {
        let re = BigRational::from_integer(rng.gen_range(-4i64..=4).into());
        let im = if rng.gen_bool(0.25) { rng.gen_range(-2i64..=2) } else { 0 };
        (rng.gen_range(-span..=span), Complex::new(re, BigRational::from_integer(im.into())))
    }))
}

/// Random nonzero quotient of small Laurent polynomials in t = q^(1/4).
pub fn random_scalar(rng: &mut StdRng) -> QScalar {
    let r = RootOrder::new(4).expect("even");
    loop {
        let (nt, dt) = (rng.gen_range(1..4), rng.gen_range(1..3));
        let num = random_poly(rng, nt, 4);
        let den = random_poly(rng, dt, 3);
        if num.is_zero() || den.is_zero() {
            continue;
        }
        return QScalar::from_fraction(r, num, den).expect("nonzero denominator");
    }
}

fn composition_list(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|a| {
            composition_list(n - a, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

fn rel_close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
}

pub fn verify_suite() -> Vec<Check> {
    let s = "scalar";
    let mut rng = StdRng::seed_from_u64(0x5ca1a);
    let mut checks = Vec::new();

    let mut field = Vec::new();
    for i in 0..60 {
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        field.push((format!("#{i} additive associativity"), (&a + &b) + &c == &a + (&b + &c)));
        field.push((format!("#{i} multiplicative associativity"), (&a * &b) * &c == &a * (&b * &c)));
        field.push((format!("#{i} commutativity"), &a * &b == &b * &a && &a + &b == &b + &a));
        field.push((format!("#{i} distributivity"), &a * (&b + &c) == &a * &b + &a * &c));
        field.push((format!("#{i} inverse"), (&a * a.inv().expect("nonzero")).is_one()));
        field.push((format!("#{i} negation"), (&a - &a).is_zero()));
    }
    checks.push(summarize(s, "field axioms on random elements", field));

    let r = RootOrder::new(12).expect("even");
    let xs: Vec<Rat> = (-18..=18).map(|n| Rat::new(n, 6)).collect();
    let mut squares = Vec::new();
    for &x in xs.iter().step_by(2) {
        for &y in xs.iter().step_by(3) {
            let qx = QScalar::qnum(r, x).unwrap();
            let qy = QScalar::qnum(r, y).unwrap();
            let lhs = &qx * &qx - &qy * &qy;
            let rhs = QScalar::qnum(r, x - y).unwrap() * QScalar::qnum(r, x + y).unwrap();
            squares.push((format!("x={x} y={y}"), lhs == rhs));
        }
    }
    checks.push(summarize(s, "difference of squared q-numbers", squares));

    let mut binom = Vec::new();
    for n in 0..=12u32 {
        for k in 0..=n as i64 {
            let b = QScalar::qbinom(n, k);
            binom.push((format!("n={n} k={k}"), b == QScalar::qbinom(n, n as i64 - k) && b.substitute_q_inverse() == b));
        }
    }
    checks.push(summarize(s, "q-binomial symmetries", binom));

    let mut multi = Vec::new();
    for n in 1..=8u32 {
        for parts in 1..=5 {
            for j in composition_list(n, parts) {
                let mut rhs = QScalar::zero();
                for i in 0..parts {
                    if j[i] == 0 {
                        continue;
                    }
                    let mut lower = j.clone();
                    lower[i] -= 1;
                    let right: u32 = j[i + 1..].iter().sum();
                    rhs += QScalar::qmultinom(&lower) * QScalar::q_int(-2 * right as i64);
                }
                multi.push((format!("{j:?}"), QScalar::qmultinom(&j) == rhs));
            }
        }
    }
    checks.push(summarize(s, "q-multinomial recurrence", multi));

    let mut hom = Vec::new();
    let base = RootOrder::BASE;
    for i in 0..40 {
        let poly = |rng: &mut StdRng| {
            let deg = rng.gen_range(0..=100i64);
            QScalar::from_poly(
                base,
                LaurentPoly::from_terms((0..=deg).map(|e| (2 * e, coeff_int(rng.gen_range(0..5))))),
            )
        };
        let (a, b) = (poly(&mut rng), poly(&mut rng));
        let q = rng.gen_range(0.05..1.0);
        let (ea, eb) = (a.eval_at(q).unwrap(), b.eval_at(q).unwrap());
        let sum = (&a + &b).eval_at(q).unwrap();
        let prod = (&a * &b).eval_at(q).unwrap();
        hom.push((format!("#{i} sum q={q:.3}"), rel_close(sum, ea + eb, ea.abs() + eb.abs())));
        hom.push((format!("#{i} product q={q:.3}"), rel_close(prod, ea * eb, (ea * eb).abs())));
    }
    checks.push(summarize(s, "evaluation is a ring homomorphism", hom));

    let mut inv = Vec::new();
    for i in 0..30 {
        let a = random_scalar(&mut rng);
        inv.push((format!("#{i}"), a.substitute_q_inverse().substitute_q_inverse() == a));
    }
    let sym = QScalar::q_int(1) + QScalar::q_int(-1);
    inv.push(("q + 1/q".into(), sym.substitute_q_inverse() == sym));
    checks.push(summarize(s, "q -> 1/q is an involution", inv));

    checks
}
