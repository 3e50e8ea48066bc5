use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use qprojective::check::Check;
use qprojective::grassmann;
use qprojective::qscalar::{QScalar, Rat};
use qprojective::spectra::*;
use qprojective::sphere_algebra::{self as sphere, Grading, RedexOrder, SpherePoly};
use qprojective::uqsl::{self, casimir_matrix, fundamental_rep, CasimirKind, Sym};
use rand::rngs::StdRng;
use rayon::prelude::*;
use rand::SeedableRng;

const PROJECTIVE_LINE_BUDGET: Duration = Duration::from_secs(5);
const RANK_TWO_BUDGET: Duration = Duration::from_secs(30);
const GROWTH_BUDGET: Duration = Duration::from_secs(60);
const SLOPE_REL_TOL: f64 = 0.05;
const TAIL_RATIO_BOUND: f64 = 1.0;

/// Criteria whose literal statement is known not to hold; see the README.
const EXPECTED_FAILURES: [u32; 2] = [3, 7];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn from_checks(checks: &[Check], names: &[&str]) -> Outcome {
    let mut detail = Vec::new();
    let mut passed = true;
    for name in names {
        match checks.iter().find(|c| c.name == *name) {
            Some(c) => {
                passed &= c.passed;
                detail.push(format!("{}: {}", c.name, c.detail));
            }
            None => {
                passed = false;
                detail.push(format!("{name}: missing"));
            }
        }
    }
    outcome(passed, detail.join("; "))
}

// [n] = q^(n-1) + q^(n-3) + ... + q^(1-n), summed term by term
fn qint_sum(n: i64) -> QScalar {
    (0..n).map(|j| QScalar::q_int(n - 1 - 2 * j)).sum()
}

fn budget(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

/// Pair-normalized values q^(l+1+N-k) D^2 with k the lower degree, keyed by pair level and sign.
fn laplacian_normalized(sp: &Spectrum) -> Vec<(u32, i8, QScalar, u64)> {
    sp.lines
        .iter()
        .filter(|l| l.sign != 0)
        .map(|l| {
            let lower = if l.sign < 0 { l.degree as i64 - 1 } else { l.degree as i64 };
            let v = QScalar::q_int(sp.ell as i64 + 1 + sp.n - lower) * &l.eigenvalue_sq;
            (l.pair_level, l.sign, v, l.multiplicity)
        })
        .collect()
}

fn projective_line(n: i64, expect: impl Fn(i64) -> QScalar, mult: impl Fn(i64) -> u64, kernel: u64) -> Outcome {
    let t = Instant::now();
    let sp = match full_spectrum(1, n, 19) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let lines = laplacian_normalized(&sp);
    let mut bad = Vec::new();
    let mut seen = BTreeMap::new();
    for (level, sign, v, mu) in &lines {
        let k = *level as i64 + 1;
        if *v != expect(k) || *mu != mult(k) {
            bad.push(format!("k={k}"));
        }
        *seen.entry((k, *sign)).or_insert(0) += 1;
    }
    let complete = (1..=20).all(|k| seen.get(&(k, 1)) == Some(&1) && seen.get(&(k, -1)) == Some(&1)) && seen.len() == 40;
    let (fast, time) = budget(t.elapsed(), PROJECTIVE_LINE_BUDGET);
    let ok = bad.is_empty() && complete && sp.kernel_dim() == kernel && fast;
    outcome(ok, format!("kernel {}, {} signed levels, mismatches {:?}, {time}", sp.kernel_dim(), seen.len(), bad))
}

fn criterion_1() -> Outcome {
    projective_line(0, |k| qint_sum(k) * qint_sum(k + 1), |k| 2 * k as u64 + 1, 1)
}

fn criterion_2() -> Outcome {
    projective_line(1, |k| QScalar::q_int(1) * qint_sum(k) * qint_sum(k), |k| 2 * k as u64, 0)
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let sp = match full_spectrum(2, 0, 9) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut lines: Vec<&SpectralLine> = sp.lines.iter().collect();
    lines.sort_by_key(|l| (l.pair_level, l.degree, l.branch));
    let scale = QScalar::q_int(-3);
    let (mut closed, mut exact) = (0, 0);
    let mut first_bad = None;
    for l in lines.iter().take(30) {
        let block = IrrepBlock::new(l.weight.clone(), l.level, "");
        let engine = laplacian_eigenvalue(2, 0, l.degree, &block);
        if engine == &scale * casimir_closed_form(&l.weight) {
            closed += 1;
        } else if first_bad.is_none() {
            first_bad = Some(l.weight.to_string());
        }
        if engine == &scale * casimir_eigenvalue(&l.weight) {
            exact += 1;
        }
    }
    let (fast, time) = budget(t.elapsed(), RANK_TWO_BUDGET);
    outcome(
        closed == 30 && fast,
        format!(
            "{closed}/30 blocks equal q^-3 times the closed Casimir form (first mismatch {}); \
             {exact}/30 equal q^-3 times the Casimir eigenvalue; {time}",
            first_bad.unwrap_or_else(|| "none".into())
        ),
    )
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

// D^2 multiset with both signs from lambda^2 = (m+a)(m+k) and its multiplicity formula
fn classical_oracle(l: i64, n: i64, m_max: i64) -> BTreeMap<BigRational, u64> {
    let mut out = BTreeMap::new();
    let mut add = |a: i64, k: i64, m: i64| {
        let lam = (m + a) * (m + k);
        let mu = BigInt::from(k * (2 * m + k + a)) * binom(m + l, l) * binom(m + k + a - 1, l) * binom(l, k)
            / BigInt::from(lam);
        let mu: u64 = mu.try_into().expect("small multiplicity");
        *out.entry(BigRational::from_integer(lam.into())).or_insert(0) += 2 * mu;
    };
    for m in 0..=m_max {
        for k in 1..=l {
            match n {
                n if n <= 0 => add(l + 1 - n, k, m),
                n if n > l => add(n, k, m),
                n if k < n => add(n, l + 1 - k, m),
                n => add(l + 1 - n, k, m),
            }
        }
    }
    let kernel = if n <= 0 { binom(l - n, l) } else if n > l { binom(n - 1, l) } else { BigInt::from(0) };
    if kernel > BigInt::from(0) {
        out.insert(BigRational::from_integer(0.into()), kernel.try_into().expect("small kernel"));
    }
    out
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for l in 1..=4i64 {
        for n in -2..=l + 2 {
            cases += 1;
            let sp = match full_spectrum(l as usize, n, 10) {
                Ok(s) => s,
                Err(e) => {
                    bad.push(format!("l={l} N={n}: {e}"));
                    continue;
                }
            };
            let cl = classical_spectrum(l as usize, n, 10);
            let ours = sp.d2_multiset_at_one();
            let oracle = classical_oracle(l, n, 10);
            let kernel: u64 = if n <= 0 {
                binom(l - n, l).try_into().unwrap()
            } else if n > l {
                binom(n - 1, l).try_into().unwrap()
            } else {
                0
            };
            let ok = ours.as_ref().is_ok_and(|o| *o == cl.d2_multiset() && *o == oracle)
                && sp.kernel_dim() == kernel
                && cl.kernel_dim == kernel;
            if !ok {
                bad.push(format!("l={l} N={n}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} of {cases} (l, N) cases agree exactly through m = 10; failures {:?}", cases - bad.len(), bad))
}

fn criterion_5(gr: &[Check]) -> Outcome {
    from_checks(gr, &["sigma_k satisfies the defining relations"])
}

fn criterion_6(gr: &[Check]) -> Outcome {
    from_checks(
        gr,
        &[
            "wedge is associative on basis triples",
            "wedge is a module map",
            "J squared is (-1)^floor((l+1)/2)",
            "J e^L J^-1 = -q i^R",
            "quantum dimension sum equals q-binomial and is q-symmetric",
        ],
    )
}

fn criterion_7() -> Outcome {
    let mut closed_ok = Vec::new();
    let mut exact_ok = Vec::new();
    for l in 1..=4 {
        let mut w = vec![0; l];
        w[l - 1] = 1;
        let w = HighestWeight::new(w);
        let c = casimir_matrix(&fundamental_rep(l), CasimirKind::Full).as_scalar();
        closed_ok.push(c.as_ref() == Some(&casimir_closed_form(&w)));
        exact_ok.push(c.as_ref() == Some(&casimir_eigenvalue(&w)));
    }
    let checks = uqsl::casimir_checks(4, 3);
    let rest = from_checks(
        &checks,
        &[
            "Casimir is central",
            "commutators [F_i, M_jk]",
            "commutators [E_i, N_jk^2 M_jk]",
            "Casimir relation between C_q and C'_q",
        ],
    );
    let scalar = closed_ok.iter().all(|&b| b);
    outcome(
        scalar && rest.passed,
        format!(
            "fundamental Casimir equals the closed form for l = 1..4: {closed_ok:?}; \
             equals the highest-weight eigenvalue: {exact_ok:?}; {}",
            rest.detail
        ),
    )
}

fn criterion_8() -> Outcome {
    from_checks(
        &uqsl::x_checks(4),
        &[
            "X_i X_j = q^-1 X_j X_i for i<j",
            "coproduct of X_i on pi x pi",
            "[X_i^*, S^-1(X_j)] closed forms",
            "adjoint action on X_i",
            "conjugation of E_i by N_jk^2",
        ],
    )
}

// prod_{i<j} (sum_{i<=r<j} (n_r + 1)) / (j - i)
fn weyl_oracle(n: &[u32]) -> BigRational {
    let l = n.len() + 1;
    let mut d = BigRational::from_integer(1.into());
    for i in 0..l {
        for j in i + 1..l {
            let s: u64 = (i..j).map(|r| n[r] as u64 + 1).sum();
            d *= BigRational::new(s.into(), ((j - i) as u64).into());
        }
    }
    d
}

fn criterion_9() -> Outcome {
    let cases: Vec<(usize, usize, u32, u32)> = (1..=5usize)
        .flat_map(|l| (1..=l).flat_map(move |k| (0..=4u32).flat_map(move |a| (0..=4u32).map(move |b| (l, k, a, b)))))
        .collect();
    let results: Vec<(bool, bool)> = cases
        .par_iter()
        .map(|&(l, k, a, b)| {
            let w = HighestWeight::hook(l, a, b, k);
            let d = hook_dim(l, a, b, k);
            let dim_ok = BigRational::from_integer(d.into()) == weyl_oracle(w.entries()) && weyl_dim(&w) == d;
            (dim_ok, eig_lambda(l, a, b, k) == casimir_closed_form(&w))
        })
        .collect();
    let total = cases.len();
    let dims = results.iter().filter(|r| r.0).count();
    let eig = results.iter().filter(|r| r.1).count();
    outcome(dims == total && eig == total, format!("dimensions {dims}/{total}, eigenvalues {eig}/{total}"))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let r = match growth_diagnostics(3, 2, 0.5, 20) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let (fast, time) = budget(t.elapsed(), GROWTH_BUDGET);
    let ratios: Vec<String> = r
        .probes
        .iter()
        .map(|p| format!("s={} ratio {:.4} (unnormalized {:.4})", p.s, p.geometric_ratio, p.raw_ratio))
        .collect();
    let tails = r.probes.len() == 3 && r.probes.iter().all(|p| p.geometric_ratio < TAIL_RATIO_BOUND);
    outcome(
        r.relative_error < SLOPE_REL_TOL && tails && fast,
        format!(
            "slope {:.5} vs {:.5} (relative error {:.4}); {}; {time}",
            r.slope,
            r.expected_slope,
            r.relative_error,
            ratios.join(", ")
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut pou = 0;
    let mut pou_total = 0;
    for l in 1..=3 {
        for n in 0..=4 {
            pou_total += 1;
            if sphere::partition_of_unity_check(l, n).holds {
                pou += 1;
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(20);
    let mut stable = 0;
    let corpus = 300;
    for t in 0..corpus {
        let p = sphere::random_poly(&mut rng, 1 + t % 3, 4, 6);
        let a = sphere::normal_form_with(&p, RedexOrder::Leftmost);
        let b = sphere::normal_form_with(&p, RedexOrder::Rightmost);
        if a == b && sphere::normal_form(&a) == a {
            stable += 1;
        }
    }

    let mut graded = 0;
    let mut graded_total = 0;
    for l in 1..=3usize {
        let khat = fundamental_rep(l).gen(Sym::KHat(Rat::from_integer(1))).get(l, l);
        for n in 0..=4usize {
            let target = QScalar::q_pow(qprojective::qscalar::RootOrder::for_rank(l), Rat::new((l * n) as i64, l as i64 + 1))
                .expect("exponent fits");
            for j in sphere::compositions(l + 1, n) {
                graded_total += 1;
                let psi = SpherePoly::word(l, sphere::monomial(&j)).star();
                let nf = sphere::normal_form(&psi);
                let ok = match sphere::khat_grading(&nf) {
                    Grading::Pure(c) => c == n as i64 && khat.pow(c) == target,
                    Grading::Mixed => false,
                };
                if ok {
                    graded += 1;
                }
            }
        }
    }
    outcome(
        pou == pou_total && stable == corpus && graded == graded_total,
        format!(
            "partition of unity {pou}/{pou_total}, rewriting stable {stable}/{corpus}, grading {graded}/{graded_total}"
        ),
    )
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
    })
}

fn main() -> ExitCode {
    let gr = grassmann::verify_suite(5);
    let criteria: Vec<(u32, &str, Box<dyn FnOnce() -> Outcome + '_>)> = vec![
        (1, "projective line, even charge", Box::new(criterion_1)),
        (2, "projective line, odd charge", Box::new(criterion_2)),
        (3, "rank two neutral spectrum against the closed Casimir form", Box::new(criterion_3)),
        (4, "classical limit", Box::new(criterion_4)),
        (5, "defining relations on exterior powers", Box::new(|| criterion_5(&gr))),
        (6, "exterior algebra", Box::new(|| criterion_6(&gr))),
        (7, "Casimir", Box::new(criterion_7)),
        (8, "X vectors", Box::new(criterion_8)),
        (9, "dimension and eigenvalue formulas", Box::new(criterion_9)),
        (10, "growth and summability", Box::new(criterion_10)),
        (11, "sphere algebra", Box::new(criterion_11)),
    ];
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        let t = Instant::now();
        let o = guarded(f);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:>2} {name} [{:.2}s]: {}", t.elapsed().as_secs_f64(), o.detail);
        if !o.passed {
            failed.push(id);
        }
    }
    let unexpected: Vec<u32> = failed.iter().copied().filter(|id| !EXPECTED_FAILURES.contains(id)).collect();
    let fixed: Vec<u32> = EXPECTED_FAILURES.iter().copied().filter(|id| !failed.contains(id)).collect();
    println!("failing criteria {failed:?}, expected {EXPECTED_FAILURES:?}");
    if unexpected.is_empty() && fixed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures {unexpected:?}, unexpected passes {fixed:?}");
        ExitCode::FAILURE
    }
}
