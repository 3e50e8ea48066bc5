//! Exact arithmetic in the field of rational functions of `t = q^(1/r)`
//! with Gaussian-rational coefficients.

mod expr;
mod laurent;
mod suite;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

pub use expr::QExpr;
pub use laurent::{coeff_int, coeff_real, cyclotomic, Coeff, LaurentPoly};
pub use suite::{random_scalar, verify_suite};

pub type Rat = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {x} is not representable with root order {r}")]
    NotRepresentable { x: String, r: u32 },
    #[error("singular evaluation at q = {0}")]
    SingularEvaluation(f64),
    #[error("root order must be even and at least 2, got {0}")]
    InvalidRootOrder(u32),
    #[error("value has a non-real coefficient")]
    NonReal,
}

/// Even root order r: every exponent is an integer power of t = q^(1/r).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOrder(u32);

impl RootOrder {
    pub const BASE: RootOrder = RootOrder(2);

    pub fn new(r: u32) -> Result<Self, QError> {
        if r >= 2 && r % 2 == 0 {
            Ok(RootOrder(r))
        } else {
            Err(QError::InvalidRootOrder(r))
        }
    }

    /// r = 2(l+1), enough for q^(1/2), q^(N/(l+1)) and q^(l(l+1)/4).
    pub fn for_rank(ell: usize) -> Self {
        RootOrder(2 * (ell as u32 + 1))
    }

    /// r = 2l(l+1), needed once K^(2/l) appears.
    pub fn for_rank_refined(ell: usize) -> Self {
        let l = ell as u32;
        RootOrder((2 * l * (l + 1)).max(2))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn lcm(self, o: RootOrder) -> RootOrder {
        RootOrder(self.0.lcm(&o.0))
    }

    /// Exponent of t representing q^x, if integral.
    pub fn exponent(self, x: Rat) -> Result<i64, QError> {
        let v = x * Rat::from_integer(self.0 as i64);
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(QError::NotRepresentable { x: x.to_string(), r: self.0 })
        }
    }

    /// Smallest even root order representing every given exponent.
    pub fn covering<I: IntoIterator<Item = Rat>>(xs: I) -> RootOrder {
        let mut r: i64 = 2;
        for x in xs {
            r = r.lcm(x.denom());
        }
        if r % 2 == 1 {
            r *= 2;
        }
        RootOrder(r as u32)
    }
}

/// Reduced rational function num/den in t = q^(1/r).
#[derive(Clone, Debug, Hash)]
pub struct QScalar {
    r: RootOrder,
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    fn from_parts_unchecked(r: RootOrder, num: LaurentPoly, den: LaurentPoly) -> Self {
        QScalar { r, num, den }
    }

    /// Builds num/den and brings it to canonical form.
    pub fn from_fraction(r: RootOrder, num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(Self::canonical(r, num, den))
    }

    fn canonical(r: RootOrder, num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero_r(r);
        }
        let (num, den) = if den.is_monomial() {
            (num, den)
        } else if let Some(q) = num.exact_div(&den) {
            (q, LaurentPoly::one())
        } else {
            let g = num.gcd(&den);
            if g.max_exp() == Some(0) {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        Self::normalized(r, num, den)
    }

    /// Coprime num/den scaled so that den has lowest term 1 * t^0.
    fn normalized(r: RootOrder, num: LaurentPoly, den: LaurentPoly) -> Self {
        let (e, c) = den.lowest().map(|(e, c)| (e, c.clone())).unwrap();
        let inv = Coeff::one() / c;
        QScalar { r, num: num.shift(-e).scale(&inv), den: den.shift(-e).scale(&inv) }
    }

    /// Dense integer version of `from_cyclotomic_fraction`; None if a coefficient is not a
    /// machine integer or an intermediate overflows.
    fn cyclotomic_fraction_int(r: RootOrder, num: &LaurentPoly, factors: &[(u32, u32)]) -> Option<Self> {
        let (shifted, lo) = num.normalized_shift();
        let mut a = shifted.to_dense_i128()?;
        let mut den: Vec<i128> = vec![1];
        for &(d, m) in factors {
            let phi = cyclotomic(d).to_dense_i128()?;
            let mut left = m;
            while left > 0 {
                match laurent::dense_exact_div(&a, &phi)? {
                    Some(q) => {
                        a = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            for _ in 0..left {
                den = laurent::dense_mul(&den, &phi)?;
            }
        }
        let num = LaurentPoly::from_dense_i128(&a).shift(lo);
        Some(Self::normalized(r, num, LaurentPoly::from_dense_i128(&den)))
    }

    /// num / prod Phi_d(t)^m over `factors` = [(d, m)], reduced by trial division instead of a gcd.
    pub fn from_cyclotomic_fraction(r: RootOrder, num: LaurentPoly, factors: &[(u32, u32)]) -> Self {
        if num.is_zero() {
            return Self::zero_r(r);
        }
        if let Some(out) = Self::cyclotomic_fraction_int(r, &num, factors) {
            return out;
        }
        let mut num = num;
        let mut den = LaurentPoly::one();
        for &(d, m) in factors {
            let phi = laurent::cyclotomic(d);
            let mut left = m;
            while left > 0 {
                match num.exact_div(&phi) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            for _ in 0..left {
                den = den.mul(&phi);
            }
        }
        Self::normalized(r, num, den)
    }

    pub fn zero_r(r: RootOrder) -> Self {
        Self::from_parts_unchecked(r, LaurentPoly::zero(), LaurentPoly::one())
    }

    pub fn zero() -> Self {
        Self::zero_r(RootOrder::BASE)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_coeff(coeff_int(n))
    }

    pub fn from_rational(x: BigRational) -> Self {
        Self::from_coeff(coeff_real(x))
    }

    pub fn from_ratio(x: Rat) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom())))
    }

    pub fn from_coeff(c: Coeff) -> Self {
        Self::from_parts_unchecked(RootOrder::BASE, LaurentPoly::monomial(0, c), LaurentPoly::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_coeff(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_poly(r: RootOrder, p: LaurentPoly) -> Self {
        Self::from_parts_unchecked(r, p, LaurentPoly::one())
    }

    /// t^e with t = q^(1/r).
    pub fn t_pow(r: RootOrder, e: i64) -> Self {
        Self::from_poly(r, LaurentPoly::monomial(e, Coeff::one()))
    }

    /// q^x.
    pub fn q_pow(r: RootOrder, x: Rat) -> Result<Self, QError> {
        Ok(Self::t_pow(r, r.exponent(x)?))
    }

    /// q^n for integer n, at the smallest root order.
    pub fn q_int(n: i64) -> Self {
        Self::t_pow(RootOrder::BASE, 2 * n)
    }

    /// q-number [x] = (q^x - q^-x)/(q - q^-1).
    pub fn qnum(r: RootOrder, x: Rat) -> Result<Self, QError> {
        let e = r.exponent(x)?;
        let rr = r.get() as i64;
        if x.is_integer() {
            // geometric sum q^(x-1) + q^(x-3) + ... + q^(1-x)
            let n = x.to_integer();
            let mut p = LaurentPoly::zero();
            for j in 0..n.abs() {
                p.add_term((n.abs() - 1 - 2 * j) * rr, Coeff::one());
            }
            let s = Self::from_poly(r, p);
            return Ok(if n < 0 { -s } else { s });
        }
        let num = LaurentPoly::from_terms([(e, Coeff::one()), (-e, -Coeff::one())]);
        let den = LaurentPoly::from_terms([(rr, Coeff::one()), (-rr, -Coeff::one())]);
        Ok(Self::canonical(r, num, den))
    }

    /// Integer q-number [n] at the smallest root order.
    pub fn qint(n: i64) -> Self {
        Self::qnum(RootOrder::BASE, Rat::from_integer(n)).expect("integer q-number")
    }

    /// [n]! = [n][n-1]...[1].
    pub fn qfact(n: u32) -> Self {
        (1..=n as i64).fold(Self::one(), |acc, k| acc * Self::qint(k))
    }

    /// Gaussian binomial [n]!/([k]![n-k]!), zero outside 0 <= k <= n.
    pub fn qbinom(n: u32, k: i64) -> Self {
        if k < 0 || k > n as i64 {
            return Self::zero();
        }
        let k = k as u32;
        Self::qfact(n) / (Self::qfact(k) * Self::qfact(n - k))
    }

    /// [j1,...,jm]! = [sum j]!/prod [j_i]! * q^(-sum_{r<s} j_r j_s).
    pub fn qmultinom(j: &[u32]) -> Self {
        let total: u32 = j.iter().sum();
        let mut den = Self::one();
        for &x in j {
            den = den * Self::qfact(x);
        }
        let mut cross: i64 = 0;
        for a in 0..j.len() {
            for b in a + 1..j.len() {
                cross += j[a] as i64 * j[b] as i64;
            }
        }
        Self::qfact(total) / den * Self::q_int(-cross)
    }

    pub fn root_order(&self) -> RootOrder {
        self.r
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den == LaurentPoly::one() && self.num == LaurentPoly::one()
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real() && self.den.is_real()
    }

    /// Is a Laurent polynomial in t (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den == LaurentPoly::one()
    }

    /// Re-expresses the value with a finer root order.
    pub fn lift(&self, to: RootOrder) -> Self {
        let m = to.get() / self.r.get();
        assert_eq!(m * self.r.get(), to.get(), "root order {} does not refine {}", to.get(), self.r.get());
        if m == 1 {
            return self.clone();
        }
        Self::from_parts_unchecked(to, self.num.lift(m as i64), self.den.lift(m as i64))
    }

    fn aligned(&self, o: &Self) -> (Self, Self) {
        if self.r == o.r {
            return (self.clone(), o.clone());
        }
        let r = self.r.lcm(o.r);
        (self.lift(r), o.lift(r))
    }

    pub fn conj(&self) -> Self {
        Self::canonical(self.r, self.num.conj(), self.den.conj())
    }

    /// q -> q^-1.
    pub fn substitute_q_inverse(&self) -> Self {
        Self::canonical(self.r, self.num.invert_variable(), self.den.invert_variable())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, QError> {
        if o.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let (a, b) = self.aligned(o);
        Ok(Self::canonical(a.r, a.num.mul(&b.den), a.den.mul(&b.num)))
    }

    pub fn inv(&self) -> Result<Self, QError> {
        Self::one().checked_div(self)
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().expect("inverse of zero").pow(-n);
        }
        let mut acc = Self::one().lift(self.r);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at q = 1; a pole there is an error.
    pub fn at_one(&self) -> Result<Coeff, QError> {
        let d = self.den.at_one();
        if d.is_zero() {
            return Err(QError::SingularEvaluation(1.0));
        }
        Ok(self.num.at_one() / d)
    }

    /// Exact real value at q = 1.
    pub fn at_one_real(&self) -> Result<BigRational, QError> {
        let v = self.at_one()?;
        if !v.im.is_zero() {
            return Err(QError::NonReal);
        }
        Ok(v.re)
    }

    /// Floating-point value at q in (0, 1]; q = 1 is evaluated exactly.
    pub fn eval_at(&self, q: f64) -> Result<f64, QError> {
        if !self.is_real() {
            return Err(QError::NonReal);
        }
        if q == 1.0 {
            return Ok(self.at_one_real()?.to_f64().unwrap_or(f64::NAN));
        }
        let t = q.powf(1.0 / self.r.get() as f64);
        let d = self.den.eval_f64(t).re;
        if d == 0.0 || !d.is_finite() {
            return Err(QError::SingularEvaluation(q));
        }
        Ok(self.num.eval_f64(t).re / d)
    }

    pub fn eval_complex(&self, q: f64) -> Result<Complex<f64>, QError> {
        let t = q.powf(1.0 / self.r.get() as f64);
        let d = self.den.eval_f64(t);
        if d.norm() == 0.0 {
            return Err(QError::SingularEvaluation(q));
        }
        Ok(self.num.eval_f64(t) / d)
    }

    /// Canonical string "num" or "(num)/(den)".
    pub fn canonical_string(&self) -> String {
        if self.den == LaurentPoly::one() {
            format!("{}", self.num)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

impl PartialEq for QScalar {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = self.aligned(o);
        a.num == b.num && a.den == b.den
    }
}

impl Eq for QScalar {}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

fn add_impl(a: &QScalar, b: &QScalar, negate_b: bool) -> QScalar {
    let (a, b) = a.aligned(b);
    let bn = if negate_b { b.num.neg() } else { b.num.clone() };
    if a.is_zero() {
        return QScalar::from_parts_unchecked(a.r, bn, b.den);
    }
    if bn.is_zero() {
        return a;
    }
    let r = a.r;
    if a.den == b.den {
        let num = a.num.add(&bn);
        if a.den == LaurentPoly::one() {
            return if num.is_zero() { QScalar::zero_r(r) } else { QScalar::from_parts_unchecked(r, num, a.den) };
        }
        return QScalar::canonical(r, num, a.den);
    }
    if a.den.is_monomial() || b.den.is_monomial() {
        let num = a.num.mul(&b.den).add(&bn.mul(&a.den));
        let den = a.den.mul(&b.den);
        return QScalar::canonical(r, num, den);
    }
    let g = a.den.gcd(&b.den);
    let ad = a.den.exact_div(&g).expect("gcd divides");
    let bd = b.den.exact_div(&g).expect("gcd divides");
    let num = a.num.mul(&bd).add(&bn.mul(&ad));
    let den = a.den.mul(&bd);
    QScalar::canonical(r, num, den)
}

fn mul_impl(a: &QScalar, b: &QScalar) -> QScalar {
    let (a, b) = a.aligned(b);
    if a.is_zero() || b.is_zero() {
        return QScalar::zero_r(a.r);
    }
    if a.den == LaurentPoly::one() && b.den == LaurentPoly::one() {
        return QScalar::from_parts_unchecked(a.r, a.num.mul(&b.num), a.den);
    }
    // cross-cancel before multiplying
    let g1 = a.num.gcd(&b.den);
    let g2 = b.num.gcd(&a.den);
    let an = a.num.exact_div(&g1).unwrap();
    let bd = b.den.exact_div(&g1).unwrap();
    let bn = b.num.exact_div(&g2).unwrap();
    let ad = a.den.exact_div(&g2).unwrap();
    QScalar::canonical(a.r, an.mul(&bn), ad.mul(&bd))
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                $f(self, o)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                $f(&self, &o)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                $f(&self, o)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                $f(self, &o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, |a: &QScalar, b: &QScalar| a.checked_div(b).expect("QScalar division by zero"));

use std::ops::Div;

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::from_parts_unchecked(self.r, self.num.neg(), self.den)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::from_parts_unchecked(self.r, self.num.neg(), self.den.clone())
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        *self = add_impl(self, o, false);
    }
}

impl AddAssign<QScalar> for QScalar {
    fn add_assign(&mut self, o: QScalar) {
        *self = add_impl(self, &o, false);
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        *self = add_impl(self, o, true);
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, o: &QScalar) {
        *self = mul_impl(self, o);
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(it: I) -> QScalar {
        it.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}
