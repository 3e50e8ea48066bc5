use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Gaussian rational coefficient.
pub type Coeff = Complex<BigRational>;

pub fn coeff_int(n: i64) -> Coeff {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

pub fn coeff_real(x: BigRational) -> Coeff {
    Complex::new(x, BigRational::zero())
}

/// Generalized binomial coefficient C(e, j) for integer e and j >= 0.
fn gen_binom(e: i64, j: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j as i64 {
        acc = acc * BigRational::from_integer(BigInt::from(e - i))
            / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Cyclotomic polynomial Phi_d(t), from t^d - 1 = prod_{e | d} Phi_e(t).
pub fn cyclotomic(d: u32) -> LaurentPoly {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<u32, LaurentPoly>>> = OnceLock::new();
    assert!(d >= 1, "cyclotomic index must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut p = LaurentPoly::from_terms([(d as i64, Coeff::one()), (0, -Coeff::one())]);
    for e in 1..d {
        if d % e == 0 {
            p = p.exact_div(&cyclotomic(e)).expect("cyclotomic factor divides");
        }
    }
    cache.lock().unwrap().insert(d, p.clone());
    p
}

/// Exact quotient a / b for dense integer polynomials with b monic; Some(None) when b does
/// not divide a, None on overflow.
pub(crate) fn dense_exact_div(a: &[i128], b: &[i128]) -> Option<Option<Vec<i128>>> {
    let db = b.len() - 1;
    if b[db] != 1 {
        return None;
    }
    if a.len() < b.len() {
        return Some(None);
    }
    let mut rem = a.to_vec();
    let mut quo = vec![0i128; a.len() - db];
    for i in (0..quo.len()).rev() {
        let f = rem[i + db];
        if f == 0 {
            continue;
        }
        quo[i] = f;
        for (j, bj) in b.iter().enumerate() {
            if *bj != 0 {
                rem[i + j] = rem[i + j].checked_sub(f.checked_mul(*bj)?)?;
            }
        }
    }
    Some(rem.iter().all(|x| *x == 0).then_some(quo))
}

pub(crate) fn dense_mul(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(x.checked_mul(*y)?)?;
        }
    }
    Some(out)
}

/// Sparse Laurent polynomial in a formal variable t.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, Coeff::one())
    }

    pub fn monomial(e: i64, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Coeff)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn lowest(&self) -> Option<(i64, &Coeff)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    pub fn leading(&self) -> Option<(i64, &Coeff)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Coeff {
        self.terms.get(&e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect() }
    }

    /// Substitutes t -> t^m.
    pub fn lift(&self, m: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect() }
    }

    /// Substitutes t -> 1/t.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    /// Shifts so the lowest exponent is zero.
    pub fn normalized_shift(&self) -> (Self, i64) {
        match self.min_exp() {
            Some(m) => (self.shift(-m), m),
            None => (Self::zero(), 0),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = Coeff::one() / c.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Polynomial division of shift-normalized operands: returns (quotient, remainder)
    /// with deg(remainder) < deg(divisor). Both inputs must have non-negative exponents.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let (dl, dc) = d.leading().map(|(e, c)| (e, c.clone())).unwrap();
        let inv = Coeff::one() / dc;
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e, c.clone())) {
            if re < dl {
                break;
            }
            let f = rc * &inv;
            let sh = re - dl;
            for (e, c) in &d.terms {
                rem.add_term(e + sh, -(c * &f));
            }
            rem.terms.remove(&re);
            quo.add_term(sh, f);
        }
        (quo, rem)
    }

    /// Exact Laurent division, or None when the divisor does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, sa) = self.normalized_shift();
        let (b, sb) = d.normalized_shift();
        if b.is_monomial() {
            let c = Coeff::one() / b.lowest().unwrap().1.clone();
            return Some(self.shift(-sb).scale(&c));
        }
        if a.max_exp() < b.max_exp() {
            return None;
        }
        let (q, r) = a.div_rem(&b);
        if r.is_zero() {
            Some(q.shift(sa - sb))
        } else {
            None
        }
    }

    /// Monic gcd with lowest exponent zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, _) = self.normalized_shift();
        let (mut b, _) = o.normalized_shift();
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        // gcd(p(t^d), r(t^d)) = gcd(p, r)(t^d)
        let d = a.terms.keys().chain(b.terms.keys()).fold(0i64, |g, e| num_integer::gcd(g, *e));
        if d > 1 {
            return a.deflate(d).gcd(&b.deflate(d)).lift(d);
        }
        if a.max_exp() < b.max_exp() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.max_exp() == Some(0) {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b);
            let (r, _) = r.normalized_shift();
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Coefficients of t^0..t^deg for a polynomial with integer coefficients and no negative powers.
    pub(crate) fn to_dense_i128(&self) -> Option<Vec<i128>> {
        let hi = self.max_exp().unwrap_or(0);
        if self.min_exp().unwrap_or(0) < 0 {
            return None;
        }
        let mut v = vec![0i128; hi as usize + 1];
        for (e, c) in &self.terms {
            if !c.im.is_zero() || !c.re.is_integer() {
                return None;
            }
            v[*e as usize] = c.re.to_integer().to_i128()?;
        }
        Some(v)
    }

    pub(crate) fn from_dense_i128(v: &[i128]) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(e, c)| (e as i64, coeff_real(BigRational::from_integer(BigInt::from(*c))))),
        )
    }

    fn deflate(&self, d: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e / d, c.clone())).collect() }
    }

    /// Exact value at t = 1.
    pub fn at_one(&self) -> Coeff {
        self.terms.values().fold(Coeff::zero(), |acc, c| acc + c)
    }

    /// j-th Taylor coefficient of p(1 + u).
    pub fn taylor_at_one(&self, j: usize) -> Coeff {
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            let b = gen_binom(*e, j);
            if !b.is_zero() {
                acc += c * coeff_real(b);
            }
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> Complex<f64> {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let p = t.powi(*e as i32);
            re += c.re.to_f64().unwrap_or(f64::NAN) * p;
            im += c.im.to_f64().unwrap_or(f64::NAN) * p;
        }
        Complex::new(re, im)
    }
}

pub(crate) fn fmt_coeff(c: &Coeff) -> String {
    let re = &c.re;
    let im = &c.im;
    if im.is_zero() {
        return re.to_string();
    }
    let ims = if im.is_one() {
        "i".to_string()
    } else if (-im.clone()).is_one() {
        "-i".to_string()
    } else {
        format!("{}i", im)
    };
    if re.is_zero() {
        ims
    } else if im.is_positive() {
        format!("({}+{})", re, ims)
    } else {
        format!("({}{})", re, ims)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.im.is_zero() && c.re.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = if *e == 0 {
                fmt_coeff(&mag)
            } else if mag.is_one() {
                format!("t^{}", e)
            } else {
                format!("{}*t^{}", fmt_coeff(&mag), e)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{}", body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}
