//! Casimir eigenvalues, harmonic decomposition of the form modules and the
//! spectrum of the Dirac operators D_N on quantum projective spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::{summarize, Check};
use crate::qscalar::{Coeff, LaurentPoly, QError, QExpr, QScalar, Rat, RootOrder};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("pairing error: {0}")]
    Pairing(String),
    #[error("negative D^2 value {value} for weight {weight} in degree {degree}")]
    Negative { weight: String, degree: usize, value: f64 },
    #[error(transparent)]
    Scalar(#[from] QError),
}

/// Highest weight (n_1, ..., n_l) of an irreducible representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HighestWeight(pub Vec<u32>);

impl HighestWeight {
    pub fn new(n: Vec<u32>) -> Self {
        HighestWeight(n)
    }

    pub fn zero(ell: usize) -> Self {
        HighestWeight(vec![0; ell])
    }

    /// (a, 0, ..., 0, b) + e_k; for l = 1 both ends are the same entry.
    pub fn hook(ell: usize, a: u32, b: u32, k: usize) -> Self {
        let mut w = vec![0; ell];
        w[0] += a;
        w[ell - 1] += b;
        if k >= 1 {
            w[k - 1] += 1;
        }
        HighestWeight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn reversed(&self) -> Self {
        HighestWeight(self.0.iter().rev().copied().collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Parses "1,0,2" or "(1,0,2)".
    pub fn parse(s: &str) -> Result<Self, SpectraError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(HighestWeight(Vec::new()));
        }
        t.split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| SpectraError::InvalidInput(format!("bad weight entry '{x}'"))))
            .collect::<Result<Vec<_>, _>>()
            .map(HighestWeight)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn qp(ell: usize, x: Rat) -> QScalar {
    QScalar::q_pow(RootOrder::for_rank_refined(ell), x).expect("exponent fits the refined root order")
}

fn qn(ell: usize, x: Rat) -> QScalar {
    QScalar::qnum(RootOrder::for_rank_refined(ell), x).expect("exponent fits the refined root order")
}

fn gap_inv_sq() -> QScalar {
    crate::uqsl::gap_inv_sq()
}

/// The exponents x_i with a_i = sum_{j<i} j n_j - sum_{j>=i} (l+1-j) n_j, x_i = a_i/(l+1).
fn weight_shifts(n: &[u32]) -> Vec<Rat> {
    let l = n.len() as i64;
    (1..=l + 1)
        .map(|i| {
            let lo: i64 = (1..i).map(|j| j * n[j as usize - 1] as i64).sum();
            let hi: i64 = (i..=l).map(|j| (l + 1 - j) * n[j as usize - 1] as i64).sum();
            rat(lo - hi, l + 1)
        })
        .collect()
}

/// Eigenvalue of the Casimir C_q on the irreducible representation with highest weight n:
/// (sum_i q^(l+2-2i-2x_i) - [l+1]) / (q - q^-1)^2. The rank is n.len().
pub fn casimir_eigenvalue(n: &HighestWeight) -> QScalar {
    let l = n.rank();
    if l == 0 {
        return QScalar::zero();
    }
    let r = RootOrder::for_rank(l);
    let rr = r.get() as i64;
    let mut num = LaurentPoly::zero();
    for (i, x) in weight_shifts(&n.0).into_iter().enumerate() {
        let e = Rat::from_integer(l as i64 - 2 * i as i64) - x * 2;
        num.add_term(r.exponent(e).expect("weight exponent"), Coeff::one());
    }
    for j in 0..=l as i64 {
        num.add_term((l as i64 - 2 * j) * rr, -Coeff::one());
    }
    gap_fraction(r, num, false)
}

/// num / ((q - q^-1)^2 (1 + q)^e), cancelling cyclotomic factors of the denominator.
fn gap_fraction(r: RootOrder, num: LaurentPoly, one_plus_q: bool) -> QScalar {
    // (q - q^-1)^2 = t^(-2R) (t^(2R) - 1)^2 and 1 + q = (t^(2R) - 1)/(t^R - 1)
    let rr = r.get();
    let factors: Vec<(u32, u32)> = (1..=2 * rr)
        .filter(|d| (2 * rr) % d == 0)
        .map(|d| (d, if one_plus_q && rr % d != 0 { 3 } else { 2 }))
        .collect();
    QScalar::from_cyclotomic_fraction(r, num.shift(2 * rr as i64), &factors)
}

/// Squared q-number form 1/2 sum_i [x_i + i - (l+2)/2]^2 + (l+1-[l+1])/(q-q^-1)^2.
/// It is the average of the Casimir over n and its reversal, so it agrees with
/// `casimir_eigenvalue` when l = 1 or n is a palindrome.
pub fn casimir_closed_form_expr(n: &HighestWeight) -> QExpr {
    let l = n.rank() as i64;
    let mut squares = Vec::new();
    for (i, x) in weight_shifts(&n.0).into_iter().enumerate() {
        let arg = x + Rat::from_integer(i as i64 + 1) - rat(l + 2, 2);
        squares.push(QExpr::qnum(arg).square());
    }
    let constant = QExpr::div(
        QExpr::add(vec![QExpr::int(l + 1), QExpr::qnum(Rat::from_integer(l + 1)).neg()]),
        QExpr::q_gap_squared(),
    );
    QExpr::add(vec![QExpr::mul(vec![QExpr::ratio(rat(1, 2)), QExpr::add(squares)]), constant])
}

pub fn casimir_closed_form(n: &HighestWeight) -> QScalar {
    let e = casimir_closed_form_expr(n);
    e.to_qscalar(RootOrder::for_rank_refined(n.rank())).expect("closed form is representable")
}

/// Classical Casimir at q = 1, via the exact specialization of `casimir_eigenvalue`.
pub fn classical_casimir(n: &HighestWeight) -> BigRational {
    casimir_eigenvalue(n).at_one_real().expect("Casimir is regular at q = 1")
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64))
}

fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("dimension fits in u64")
}

/// Weyl dimension prod_{r<=s} (s-r+1+n_r+...+n_s) / prod_r r!.
pub fn weyl_dim(n: &HighestWeight) -> u64 {
    let l = n.rank();
    let mut num = BigInt::one();
    for r in 0..l {
        let mut acc = 0i64;
        for s in r..l {
            acc += n.0[s] as i64;
            num *= BigInt::from((s - r + 1) as i64 + acc);
        }
    }
    let den = (1..=l as u64).fold(BigInt::one(), |a, r| a * factorial(r));
    assert!((&num % &den).is_zero(), "non-integral Weyl dimension for {n}");
    to_u64(&(num / den))
}

/// Dimension of the representation with weight (n1,0,...,0,nl) + e_k.
pub fn hook_dim(ell: usize, n1: u32, nl: u32, k: usize) -> u64 {
    assert!((1..=ell).contains(&k), "hook_dim needs 1 <= k <= l");
    let (l, a, b, k) = (ell as i64, n1 as i64, nl as i64, k as i64);
    let num = BigInt::from(k * (a + b + l + 1)) * binom(a + l, l) * binom(b + l, l) * binom(l, k);
    let den = BigInt::from((a + k) * (b + l + 1 - k));
    assert!((&num % &den).is_zero(), "non-integral hook dimension");
    to_u64(&(num / den))
}

/// 2 lambda = [n1+k][n1 - 2N/(l+1) + l+2-k] + [nl][nl + 2N/(l+1) + l] + [l+1][N/(l+1)]^2, N = n1 - nl + k.
pub fn eig_lambda_expr(ell: usize, n1: u32, nl: u32, k: usize) -> QExpr {
    let (l, a, b, k) = (ell as i64, n1 as i64, nl as i64, k as i64);
    let nn = a - b + k;
    let x = rat(2 * nn, l + 1);
    let i = Rat::from_integer;
    let t1 = QExpr::mul(vec![QExpr::qnum(i(a + k)), QExpr::qnum(i(a + l + 2 - k) - x)]);
    let t2 = QExpr::mul(vec![QExpr::qnum(i(b)), QExpr::qnum(i(b + l) + x)]);
    let t3 = QExpr::mul(vec![QExpr::qnum(i(l + 1)), QExpr::qnum(rat(nn, l + 1)).square()]);
    QExpr::mul(vec![QExpr::ratio(rat(1, 2)), QExpr::add(vec![t1, t2, t3])])
}

pub fn eig_lambda(ell: usize, n1: u32, nl: u32, k: usize) -> QScalar {
    eig_lambda_expr(ell, n1, nl, k).to_qscalar(RootOrder::for_rank_refined(ell)).expect("representable")
}

/// One irreducible summand of a form module.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrepBlock {
    pub weight: HighestWeight,
    pub level: u32,
    pub case: &'static str,
    pub dim: u64,
    #[serde(skip)]
    pub casimir: QScalar,
    #[serde(skip)]
    pub casimir_reversed: QScalar,
}

impl IrrepBlock {
    pub fn new(weight: HighestWeight, level: u32, case: &'static str) -> Self {
        let dim = weyl_dim(&weight);
        let casimir = casimir_eigenvalue(&weight);
        let casimir_reversed = casimir_eigenvalue(&weight.reversed());
        IrrepBlock { weight, level, case, dim, casimir, casimir_reversed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionTable {
    pub ell: usize,
    pub n: i64,
    pub k: usize,
    pub m_max: u32,
    pub blocks: Vec<IrrepBlock>,
}

/// Weights of the summands of the degree-k forms of charge N at level m, in branch order.
pub fn decomposition_weights(ell: usize, n: i64, k: usize, m: u32) -> Vec<(HighestWeight, &'static str)> {
    let m = m as i64;
    let h = |a: i64, b: i64, e: usize| -> Option<HighestWeight> {
        (a >= 0 && b >= 0).then(|| HighestWeight::hook(ell, a as u32, b as u32, e))
    };
    let l = ell as i64;
    let kk = k as i64;
    let mut out = Vec::new();
    if k == 0 {
        if n >= 0 {
            out.push((h(m + n, m, 0), "k=0, N>=0"));
        } else {
            out.push((h(m, m - n, 0), "k=0, N<0"));
        }
    } else if k < ell {
        if kk < n {
            out.push((h(m + n - kk, m, k), "0<k<min(N,l)"));
            out.push((h(m + n - kk - 1, m, k + 1), "0<k<min(N,l)"));
        } else {
            out.push((h(m, m - n + kk, k), "max(1,N)<=k<l"));
            out.push((h(m, m - n + kk + 1, k + 1), "max(1,N)<=k<l"));
        }
    } else if n <= l {
        out.push((h(m, m - n + l + 1, 0), "k=l, N<=l"));
    } else {
        out.push((h(m + n - l - 1, m, 0), "k=l, N>l"));
    }
    out.into_iter().filter_map(|(w, c)| w.map(|w| (w, c))).collect()
}

pub fn harmonic_decomposition(ell: usize, n: i64, k: usize, m_max: u32) -> Result<DecompositionTable, SpectraError> {
    if ell == 0 || k > ell {
        return Err(SpectraError::InvalidInput(format!("need l >= 1 and 0 <= k <= l, got l={ell}, k={k}")));
    }
    let blocks = (0..=m_max)
        .into_par_iter()
        .flat_map_iter(|m| decomposition_weights(ell, n, k, m).into_iter().map(move |(w, c)| IrrepBlock::new(w, m, c)))
        .collect();
    Ok(DecompositionTable { ell, n, k, m_max, blocks })
}

fn casimir_prime_on_form(ell: usize, k: usize) -> QScalar {
    if ell == 1 || k == 0 || k == ell {
        return QScalar::zero();
    }
    casimir_eigenvalue(&HighestWeight::hook(ell - 1, 0, 0, k))
}

/// s(k,N) with the su(l) Casimir on the degree-k forms taken at its true highest-weight value.
pub fn casimir_shift(ell: usize, k: usize, n: i64) -> QScalar {
    let (l, kk) = (ell as i64, k as i64);
    let c = gap_inv_sq();
    let lead = qp(ell, Rat::from_integer(1) + rat(2 * kk, l) - rat(2 * n, l + 1));
    let tail = qp(ell, Rat::from_integer(-2 * kk) + rat(2 * n * l, l + 1) - Rat::from_integer(l));
    lead * (casimir_prime_on_form(ell, k) + QScalar::qint(l) * &c) + tail * &c - QScalar::qint(l + 1) * &c
}

/// s(k,N) with the su(l) Casimir written as 1/2 [k][l+1-(l+2)k/l] + 1/2 [l][k/l]^2.
pub fn casimir_shift_closed(ell: usize, k: usize, n: i64) -> QScalar {
    let (l, kk) = (ell as i64, k as i64);
    let c = gap_inv_sq();
    let half = QScalar::from_ratio(rat(1, 2));
    let cprime = &half * qn(ell, Rat::from_integer(kk)) * qn(ell, Rat::from_integer(l + 1) - rat((l + 2) * kk, l))
        + &half * QScalar::qint(l) * qn(ell, rat(kk, l)).pow(2);
    let lead = qp(ell, Rat::from_integer(1) + rat(2 * kk, l) - rat(2 * n, l + 1));
    let tail = qp(ell, Rat::from_integer(-2 * kk) + rat(2 * n * l, l + 1) - Rat::from_integer(l));
    lead * (cprime + QScalar::qint(l) * &c) + tail * &c - QScalar::qint(l + 1) * &c
}

/// Additive constant q^(N-l-k)[k][l+1-N] of the Laplacian on degree-k forms.
pub fn laplacian_scalar(ell: usize, n: i64, k: usize) -> QScalar {
    let (l, kk) = (ell as i64, k as i64);
    QScalar::q_int(n - l - kk) * QScalar::qint(kk) * QScalar::qint(l + 1 - n)
}

/// Numerators over the common denominator (q - q^-1)^2 at the refined root order of rank l.
struct OverGap {
    ell: usize,
    r: RootOrder,
}

impl OverGap {
    fn new(ell: usize) -> Self {
        OverGap { ell, r: RootOrder::for_rank_refined(ell) }
    }

    fn mono(&self, x: Rat) -> LaurentPoly {
        LaurentPoly::monomial(self.r.exponent(x).expect("exponent fits the refined root order"), Coeff::one())
    }

    fn qint(&self, n: i64) -> LaurentPoly {
        let rr = self.r.get() as i64;
        let mut p = LaurentPoly::zero();
        for j in 0..n.abs() {
            p.add_term((n.abs() - 1 - 2 * j) * rr, if n < 0 { -Coeff::one() } else { Coeff::one() });
        }
        p
    }

    fn gap(&self) -> LaurentPoly {
        let rr = self.r.get() as i64;
        LaurentPoly::from_terms([(2 * rr, Coeff::one()), (0, -crate::qscalar::coeff_int(2)), (-2 * rr, Coeff::one())])
    }

    fn casimir(&self, n: &HighestWeight) -> LaurentPoly {
        let l = n.rank() as i64;
        if l == 0 {
            return LaurentPoly::zero();
        }
        let mut p = LaurentPoly::zero();
        for (i, x) in weight_shifts(&n.0).into_iter().enumerate() {
            p = p.add(&self.mono(Rat::from_integer(l - 2 * i as i64) - x * 2));
        }
        p.sub(&self.qint(l + 1))
    }

    fn shift(&self, k: usize, n: i64) -> LaurentPoly {
        let (l, kk) = (self.ell as i64, k as i64);
        let cprime = if self.ell == 1 || k == 0 || k == self.ell {
            LaurentPoly::zero()
        } else {
            self.casimir(&HighestWeight::hook(self.ell - 1, 0, 0, k))
        };
        let lead = self.mono(Rat::from_integer(1) + rat(2 * kk, l) - rat(2 * n, l + 1));
        let tail = self.mono(Rat::from_integer(-2 * kk) + rat(2 * n * l, l + 1) - Rat::from_integer(l));
        lead.mul(&cprime.add(&self.qint(l))).add(&tail).sub(&self.qint(l + 1))
    }

    /// num / ((q - q^-1)^2 (1 + q)^e) with e = 0 or 1.
    fn finish(&self, num: LaurentPoly, one_plus_q: bool) -> QScalar {
        gap_fraction(self.r, num, one_plus_q)
    }
}

/// Eigenvalue of the Laplacian on the block: q^(2N/(l+1)-l-1)(C - s(k,N)) + q^(N-l-k)[k][l+1-N].
pub fn laplacian_eigenvalue(ell: usize, n: i64, k: usize, block: &IrrepBlock) -> QScalar {
    let (l, kk) = (ell as i64, k as i64);
    let g = OverGap::new(ell);
    let diff = g.casimir(&block.weight).sub(&g.shift(k, n));
    let num = g
        .mono(rat(2 * n, l + 1) - Rat::from_integer(l + 1))
        .mul(&diff)
        .add(&g.mono(Rat::from_integer(n - l - kk)).mul(&g.qint(kk)).mul(&g.qint(l + 1 - n)).mul(&g.gap()));
    g.finish(num, false)
}

/// Value of D_N^2 on the block, from the Laplacian piece A and its mirror B obtained by
/// k -> l-k, N -> l+1-N and weight reversal.
pub fn dirac_squared_value(ell: usize, n: i64, k: usize, block: &IrrepBlock) -> QScalar {
    let (l, kk) = (ell as i64, k as i64);
    let g = OverGap::new(ell);
    let shift = rat(n * (l - 1), l + 1);
    let a = g.casimir(&block.weight).sub(&g.shift(k, n));
    let b = g.casimir(&block.weight.reversed()).sub(&g.shift(ell - k, l + 1 - n));
    let constants = g.qint(kk).mul(&g.qint(l + 1 - n)).add(&g.qint(l - kk).mul(&g.qint(n)));
    let num = g
        .mono(Rat::from_integer(kk - l - 1) - shift)
        .mul(&a)
        .add(&g.mono(shift - Rat::from_integer(kk + l)).mul(&b))
        .add(&g.mono(Rat::from_integer(-l)).mul(&constants).mul(&g.gap()));
    g.finish(num, true)
}

/// `dirac_squared_value` with a positivity probe at q = 1/2.
pub fn dirac_squared_eigenvalue(ell: usize, n: i64, k: usize, block: &IrrepBlock) -> Result<QScalar, SpectraError> {
    let v = dirac_squared_value(ell, n, k, block);
    let x = v.eval_at(0.5)?;
    let scale = block.casimir.eval_at(0.5)?.abs().max(1.0);
    if x < -1e-9 * scale {
        return Err(SpectraError::Negative { weight: block.weight.to_string(), degree: k, value: x });
    }
    Ok(v)
}

/// One summand of the form module together with its D_N^2 value.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLine {
    pub degree: usize,
    /// Decomposition level of this block.
    pub level: u32,
    /// Level of the pair, the smaller of the two blocks' levels; truncation uses it.
    pub pair_level: u32,
    pub branch: usize,
    pub weight: HighestWeight,
    pub eigenvalue_sq: QScalar,
    /// +1 on the lower degree of a pair, -1 on the upper, 0 in the kernel.
    pub sign: i8,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub ell: usize,
    pub n: i64,
    pub m_max: u32,
    pub lines: Vec<SpectralLine>,
}

/// A spectral line evaluated at a real q.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericLine {
    pub degree: usize,
    pub level: u32,
    pub weight: String,
    pub eigenvalue_sq: f64,
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

impl Spectrum {
    pub fn kernel_dim(&self) -> u64 {
        self.lines.iter().filter(|l| l.sign == 0).map(|l| l.multiplicity).sum()
    }

    pub fn kernel(&self) -> impl Iterator<Item = &SpectralLine> {
        self.lines.iter().filter(|l| l.sign == 0)
    }

    /// D^2 values at q = 1 with multiplicities summed over degrees.
    pub fn d2_multiset_at_one(&self) -> Result<BTreeMap<BigRational, u64>, SpectraError> {
        let mut out = BTreeMap::new();
        for l in &self.lines {
            *out.entry(l.eigenvalue_sq.at_one_real()?).or_insert(0) += l.multiplicity;
        }
        Ok(out)
    }

    /// D eigenvalues at q = 1: signed lambda^2 with multiplicity, kernel under zero.
    pub fn dirac_multiset_at_one(&self) -> Result<BTreeMap<(i8, BigRational), u64>, SpectraError> {
        let mut out = BTreeMap::new();
        for l in &self.lines {
            *out.entry((l.sign, l.eigenvalue_sq.at_one_real()?)).or_insert(0) += l.multiplicity;
        }
        Ok(out)
    }

    pub fn evaluate(&self, q: f64) -> Result<Vec<NumericLine>, SpectraError> {
        self.lines
            .par_iter()
            .map(|l| {
                let v = if q == 1.0 {
                    l.eigenvalue_sq.at_one_real()?.to_f64().unwrap_or(f64::NAN)
                } else {
                    l.eigenvalue_sq.eval_at(q)?
                };
                let v = if l.sign == 0 { 0.0 } else { v };
                Ok(NumericLine {
                    degree: l.degree,
                    level: l.level,
                    weight: l.weight.to_string(),
                    eigenvalue_sq: v,
                    eigenvalue: l.sign as f64 * v.max(0.0).sqrt(),
                    multiplicity: l.multiplicity,
                })
            })
            .collect()
    }
}

/// Full D_N spectrum through pair level m_max.
///
/// Each weight occurs in at most two neighboring degrees. Blocks sharing a weight carry the
/// same D^2 value and form the +/- pair; a weight occurring once is a zero mode.
pub fn full_spectrum(ell: usize, n: i64, m_max: u32) -> Result<Spectrum, SpectraError> {
    if ell == 0 {
        return Err(SpectraError::InvalidInput("rank must be at least 1".into()));
    }
    let depth = m_max + 2;
    let jobs: Vec<(usize, u32, usize, HighestWeight, &'static str)> = (0..=ell)
        .flat_map(|k| {
            (0..=depth).flat_map(move |m| {
                decomposition_weights(ell, n, k, m).into_iter().enumerate().map(move |(b, (w, c))| (k, m, b, w, c))
            })
        })
        .collect();
    let values: Vec<(usize, u32, usize, IrrepBlock, QScalar)> = jobs
        .into_par_iter()
        .map(|(k, m, b, w, c)| {
            let block = IrrepBlock::new(w, m, c);
            let v = dirac_squared_eigenvalue(ell, n, k, &block)?;
            Ok((k, m, b, block, v))
        })
        .collect::<Result<_, SpectraError>>()?;

    let mut by_weight: BTreeMap<&HighestWeight, Vec<usize>> = BTreeMap::new();
    for (i, v) in values.iter().enumerate() {
        by_weight.entry(&v.3.weight).or_default().push(i);
    }
    let mut lines = Vec::new();
    for (w, idx) in by_weight {
        let pair_level = idx.iter().map(|&i| values[i].1).min().unwrap();
        if pair_level > m_max {
            continue;
        }
        match idx.as_slice() {
            [i] => {
                let (k, m, b, block, v) = &values[*i];
                if !v.is_zero() {
                    return Err(SpectraError::Pairing(format!("unpaired weight {w} in degree {k} with non-zero D^2")));
                }
                lines.push(SpectralLine {
                    degree: *k,
                    level: *m,
                    pair_level,
                    branch: *b,
                    weight: w.clone(),
                    eigenvalue_sq: v.clone(),
                    sign: 0,
                    multiplicity: block.dim,
                });
            }
            [i, j] => {
                let (lo, hi) = if values[*i].0 < values[*j].0 { (*i, *j) } else { (*j, *i) };
                if values[hi].0 != values[lo].0 + 1 {
                    return Err(SpectraError::Pairing(format!("weight {w} in non-adjacent degrees")));
                }
                if values[lo].4 != values[hi].4 {
                    return Err(SpectraError::Pairing(format!("weight {w} has different D^2 in degrees {} and {}", values[lo].0, values[hi].0)));
                }
                if values[lo].4.is_zero() {
                    return Err(SpectraError::Pairing(format!("paired weight {w} has zero D^2")));
                }
                for (t, sign) in [(lo, 1i8), (hi, -1i8)] {
                    let (k, m, b, block, v) = &values[t];
                    lines.push(SpectralLine {
                        degree: *k,
                        level: *m,
                        pair_level,
                        branch: *b,
                        weight: w.clone(),
                        eigenvalue_sq: v.clone(),
                        sign,
                        multiplicity: block.dim,
                    });
                }
            }
            _ => return Err(SpectraError::Pairing(format!("weight {w} occurs {} times", idx.len()))),
        }
    }
    lines.sort_by(|a, b| (a.degree, a.level, a.branch).cmp(&(b.degree, b.level, b.branch)));

    let mut totals: BTreeMap<String, u64> = BTreeMap::new();
    for l in lines.iter().filter(|l| l.sign != 0) {
        *totals.entry(l.eigenvalue_sq.canonical_string()).or_insert(0) += l.multiplicity;
    }
    if let Some((v, t)) = totals.iter().find(|(_, t)| *t % 2 == 1) {
        return Err(SpectraError::Pairing(format!("odd total multiplicity {t} for D^2 = {v}")));
    }
    Ok(Spectrum { ell, n, m_max, lines })
}

/// Eigenvalue pair +/- sqrt(lambda_sq) of the q = 1 operator, each sign with this multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalLine {
    pub m: u32,
    pub k: u32,
    pub lambda_sq: u64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalSpectrum {
    pub ell: usize,
    pub n: i64,
    pub kernel_dim: u64,
    pub lines: Vec<ClassicalLine>,
}

impl ClassicalSpectrum {
    /// D^2 values with the multiplicity of both signs, kernel included.
    pub fn d2_multiset(&self) -> BTreeMap<BigRational, u64> {
        let mut out = BTreeMap::new();
        if self.kernel_dim > 0 {
            out.insert(BigRational::zero(), self.kernel_dim);
        }
        for l in &self.lines {
            *out.entry(BigRational::from_integer(l.lambda_sq.into())).or_insert(0) += 2 * l.multiplicity;
        }
        out
    }
}

fn classical_line(ell: usize, label: i64, m: u32, k: i64) -> ClassicalLine {
    let (l, mm) = (ell as i64, m as i64);
    let lambda_sq = (mm + label) * (mm + k);
    let num = BigInt::from(k * (2 * mm + k + label)) * binom(mm + l, l) * binom(mm + k + label - 1, l) * binom(l, k);
    let den = BigInt::from(lambda_sq);
    assert!((&num % &den).is_zero(), "non-integral classical multiplicity");
    ClassicalLine { m, k: k as u32, lambda_sq: lambda_sq as u64, multiplicity: to_u64(&(num / den)) }
}

/// Spectrum of D_N at q = 1 for m = 0..=m_max in the three charge regimes.
pub fn classical_spectrum(ell: usize, n: i64, m_max: u32) -> ClassicalSpectrum {
    let l = ell as i64;
    let mut lines = Vec::new();
    let kernel_dim;
    if n <= 0 || n > l {
        let label = if n <= 0 { l + 1 - n } else { n };
        kernel_dim = if n <= 0 { to_u64(&binom(l - n, l)) } else { to_u64(&binom(n - 1, l)) };
        for k in 1..=l {
            for m in 0..=m_max {
                lines.push(classical_line(ell, label, m, k));
            }
        }
    } else {
        kernel_dim = 0;
        for k in 1..=l {
            for m in 0..=m_max {
                lines.push(if k < n { classical_line(ell, n, m, l + 1 - k) } else { classical_line(ell, l + 1 - n, m, k) });
            }
        }
    }
    ClassicalSpectrum { ell, n, kernel_dim, lines }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummabilityProbe {
    pub s: f64,
    /// Partial sums of multiplicity * |lambda|^(-s) up to each pair level.
    pub partial_sums: Vec<f64>,
    /// Ratio of successive level contributions at the top level.
    pub raw_ratio: f64,
    /// The same ratio divided by the growth of the level multiplicity.
    pub geometric_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub ell: usize,
    pub n: i64,
    pub q: f64,
    pub m_max: u32,
    pub level_minima: Vec<f64>,
    pub slope: f64,
    pub expected_slope: f64,
    pub relative_error: f64,
    pub probes: Vec<SummabilityProbe>,
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Growth of the D^2 eigenvalues with the level and summability of |D|^(-s).
pub fn growth_diagnostics(ell: usize, n: i64, q: f64, m_max: u32) -> Result<GrowthReport, SpectraError> {
    if !(q > 0.0 && q < 1.0) || m_max < 5 {
        return Err(SpectraError::InvalidInput("growth diagnostics need 0 < q < 1 and m_max >= 5".into()));
    }
    let spec = full_spectrum(ell, n, m_max)?;
    let nl = spec.evaluate(q)?;
    let levels = m_max as usize + 1;
    let mut minima = vec![f64::INFINITY; levels];
    let mut by_level: Vec<Vec<(f64, u64)>> = vec![Vec::new(); levels];
    for (sym, num) in spec.lines.iter().zip(&nl) {
        if sym.sign == 0 {
            continue;
        }
        let p = sym.pair_level as usize;
        minima[p] = minima[p].min(num.eigenvalue_sq);
        by_level[p].push((num.eigenvalue_sq, num.multiplicity));
    }
    let pts: Vec<(f64, f64)> =
        minima.iter().enumerate().filter(|(_, v)| v.is_finite() && **v > 0.0).map(|(m, v)| (m as f64, v.ln())).collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let slope = least_squares_slope(&xs, &ys);
    let expected = 2.0 * (1.0 / q).ln();
    let mut probes = Vec::new();
    for s in [0.5, 0.1, 0.01] {
        let contrib: Vec<f64> =
            by_level.iter().map(|v| v.iter().map(|(d2, mu)| *mu as f64 * d2.powf(-s / 2.0)).sum()).collect();
        let mult: Vec<f64> = by_level.iter().map(|v| v.iter().map(|(_, mu)| *mu as f64).sum()).collect();
        let partial_sums: Vec<f64> = contrib
            .iter()
            .scan(0.0, |acc, c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        let top = levels - 1;
        let raw_ratio = contrib[top] / contrib[top - 1];
        let geometric_ratio = raw_ratio / (mult[top] / mult[top - 1]);
        probes.push(SummabilityProbe { s, partial_sums, raw_ratio, geometric_ratio });
    }
    Ok(GrowthReport {
        ell,
        n,
        q,
        m_max,
        level_minima: minima,
        slope,
        expected_slope: expected,
        relative_error: (slope - expected).abs() / expected,
        probes,
    })
}

/// Checks of the spectral engine for ranks up to `ell_max`.
pub fn verify_suite(ell_max: usize) -> Vec<Check> {
    let s = "spectra";
    let mut checks = Vec::new();

    let mut dims = Vec::new();
    let mut eig = Vec::new();
    for l in 1..=ell_max.min(5) {
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                for k in 1..=l {
                    let w = HighestWeight::hook(l, a, b, k);
                    dims.push((format!("l={l} {w}"), hook_dim(l, a, b, k) == weyl_dim(&w)));
                    eig.push((format!("l={l} {w}"), eig_lambda(l, a, b, k) == casimir_closed_form(&w)));
                }
            }
        }
    }
    checks.push(summarize(s, "hook dimension equals Weyl dimension", dims));
    checks.push(summarize(s, "hook eigenvalue equals closed Casimir form", eig));

    let mut avg = Vec::new();
    for l in 1..=ell_max.min(4) {
        for w in small_weights(l, 3) {
            let mean = (casimir_eigenvalue(&w) + casimir_eigenvalue(&w.reversed())) * QScalar::from_ratio(rat(1, 2));
            avg.push((format!("{w}"), mean == casimir_closed_form(&w)));
        }
    }
    checks.push(summarize(s, "closed Casimir form is the reversal average", avg));

    let mut kernel = Vec::new();
    let mut classical = Vec::new();
    let mut pos = Vec::new();
    for l in 1..=ell_max.min(3) {
        for n in -2..=(l as i64 + 2) {
            let label = format!("l={l} N={n}");
            match full_spectrum(l, n, 4) {
                Ok(sp) => {
                    let cl = classical_spectrum(l, n, 6);
                    kernel.push((label.clone(), sp.kernel_dim() == cl.kernel_dim));
                    classical.push((label.clone(), matches_classical(&sp, &cl)));
                    let ok = sp.lines.iter().all(|line| {
                        [0.3, 0.5, 0.9].iter().all(|&q| line.eigenvalue_sq.eval_at(q).map_or(false, |v| v >= -1e-9))
                    });
                    pos.push((label, ok));
                }
                Err(e) => {
                    kernel.push((format!("{label}: {e}"), false));
                    classical.push((label.clone(), false));
                    pos.push((label, false));
                }
            }
        }
    }
    checks.push(summarize(s, "q=1 kernel dimension matches the binomial law", kernel));
    checks.push(summarize(s, "q=1 spectrum matches the classical spectrum", classical));
    checks.push(summarize(s, "D^2 is non-negative at sampled q", pos));

    let mut lap = Vec::new();
    for l in 1..=ell_max.min(3) {
        for n in -1..=(l as i64 + 1) {
            if let Ok(sp) = full_spectrum(l, n, 3) {
                for line in sp.lines.iter().filter(|x| x.sign == 1) {
                    let block = IrrepBlock::new(line.weight.clone(), line.level, "");
                    let d = laplacian_eigenvalue(l, n, line.degree, &block) * QScalar::q_int(line.degree as i64 - n);
                    lap.push((format!("l={l} N={n} {}", line.weight), d == line.eigenvalue_sq));
                }
            }
        }
    }
    checks.push(summarize(s, "D^2 equals q^(k-N) times the Laplacian on the lower degree", lap));

    let mut cp1 = Vec::new();
    for m in 0..=6u32 {
        let w = HighestWeight::new(vec![2 * m]);
        let block = IrrepBlock::new(w, m, "");
        let target = QScalar::qint(m as i64) * QScalar::qint(m as i64 + 1);
        cp1.push((format!("N=0 m={m}"), laplacian_eigenvalue(1, 0, 0, &block) * QScalar::q_int(2) == target));
        let w = HighestWeight::new(vec![2 * m + 1]);
        let block = IrrepBlock::new(w, m, "");
        let target = QScalar::q_int(1) * QScalar::qint(m as i64 + 1).pow(2);
        cp1.push((format!("N=1 m={m}"), laplacian_eigenvalue(1, 1, 0, &block) * QScalar::q_int(2) == target));
    }
    checks.push(summarize(s, "projective line spectrum", cp1));

    checks
}

/// All weights of rank l with entries at most `max`.
pub fn small_weights(l: usize, max: u32) -> Vec<HighestWeight> {
    let mut out = vec![Vec::new()];
    for _ in 0..l {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(HighestWeight).collect()
}

/// Compares the q = 1 specialization with the classical spectrum below the first value
/// the classical truncation might miss.
pub fn matches_classical(sp: &Spectrum, cl: &ClassicalSpectrum) -> bool {
    let Ok(ours) = sp.d2_multiset_at_one() else { return false };
    let theirs = cl.d2_multiset();
    let top_ours = sp.lines.iter().filter(|l| l.pair_level == sp.m_max).filter_map(|l| l.eigenvalue_sq.at_one_real().ok()).min();
    let top_cl = cl.lines.iter().filter(|l| l.m == cl.lines.iter().map(|x| x.m).max().unwrap_or(0)).map(|l| l.lambda_sq).min();
    let (Some(a), Some(b)) = (top_ours, top_cl) else { return false };
    let bound = a.min(BigRational::from_integer(b.into()));
    let cut = |m: &BTreeMap<BigRational, u64>| -> BTreeMap<BigRational, u64> {
        m.iter().filter(|(v, _)| **v < bound).map(|(v, c)| (v.clone(), *c)).collect()
    };
    let (x, y) = (cut(&ours), cut(&theirs));
    !x.is_empty() && x == y
}

#[cfg(test)]
mod tests {
    use super::*;


    fn reference_d2(ell: usize, n: i64, k: usize, block: &IrrepBlock) -> QScalar {
        let (l, kk) = (ell as i64, k as i64);
        let shift = rat(n * (l - 1), l + 1);
        let down = QScalar::q_int(-(l + 1));
        let a = &down * (&block.casimir - casimir_shift(ell, k, n));
        let b = &down * (&block.casimir_reversed - casimir_shift(ell, ell - k, l + 1 - n));
        let total = qp(ell, Rat::from_integer(kk) - shift) * a
            + qp(ell, shift - Rat::from_integer(kk - 1)) * b
            + QScalar::q_int(-l) * QScalar::qint(kk) * QScalar::qint(l + 1 - n)
            + QScalar::q_int(-l) * QScalar::qint(l - kk) * QScalar::qint(n);
        total / (QScalar::one() + QScalar::q_int(1))
    }

    #[test]
    fn common_denominator_route_agrees() {
        for l in 1..=3 {
            for n in -1..=(l as i64 + 1) {
                for k in 0..=l {
                    for b in harmonic_decomposition(l, n, k, 1).unwrap().blocks {
                        assert_eq!(dirac_squared_value(l, n, k, &b), reference_d2(l, n, k, &b));
                        let lap = qp(l, rat(2 * n, l as i64 + 1) - Rat::from_integer(l as i64 + 1))
                            * (&b.casimir - casimir_shift(l, k, n))
                            + laplacian_scalar(l, n, k);
                        assert_eq!(laplacian_eigenvalue(l, n, k, &b), lap);
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&HighestWeight::zero(3)), 1);
        assert_eq!(weyl_dim(&HighestWeight::new(vec![5])), 6);
        assert_eq!(weyl_dim(&HighestWeight::new(vec![1, 0, 0])), 4);
        assert_eq!(weyl_dim(&HighestWeight::new(vec![1, 1])), 8);
        assert_eq!(hook_dim(3, 0, 0, 2), 6);
    }

    #[test]
    fn trivial_casimir_vanishes() {
        assert!(casimir_eigenvalue(&HighestWeight::zero(3)).is_zero());
        assert!(casimir_closed_form(&HighestWeight::zero(3)).is_zero());
    }

    #[test]
    fn decomposition_contains_trivial_once() {
        let t = harmonic_decomposition(2, 0, 0, 3).unwrap();
        assert_eq!(t.blocks.iter().filter(|b| b.weight.is_trivial()).count(), 1);
        let t = harmonic_decomposition(3, 4, 3, 2).unwrap();
        let w: Vec<_> = t.blocks.iter().map(|b| b.weight.clone()).collect();
        assert_eq!(w, vec![HighestWeight::new(vec![0, 0, 0]), HighestWeight::new(vec![1, 0, 1]), HighestWeight::new(vec![2, 0, 2])]);
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(HighestWeight::parse("(1, 0,2)").unwrap(), HighestWeight::new(vec![1, 0, 2]));
        assert!(HighestWeight::parse("1,x").is_err());
    }
}
