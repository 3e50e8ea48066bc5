use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Coeff, LaurentPoly, QError, QScalar, Rat, RootOrder};

/// Expression tree over q-numbers, evaluated node-wise so that q = 1 is exact.
#[derive(Clone, Debug)]
pub enum QExpr {
    /// [x]
    QNum(Rat),
    /// q^x
    QPow(Rat),
    Const(Coeff),
    Scalar(QScalar),
    Add(Vec<QExpr>),
    Mul(Vec<QExpr>),
    Neg(Box<QExpr>),
    Div(Box<QExpr>, Box<QExpr>),
}

impl QExpr {
    pub fn qnum(x: Rat) -> Self {
        QExpr::QNum(x)
    }

    pub fn qpow(x: Rat) -> Self {
        QExpr::QPow(x)
    }

    pub fn int(n: i64) -> Self {
        QExpr::Const(super::coeff_int(n))
    }

    pub fn ratio(x: Rat) -> Self {
        QExpr::Const(super::coeff_real(BigRational::new((*x.numer()).into(), (*x.denom()).into())))
    }

    pub fn add(v: Vec<QExpr>) -> Self {
        QExpr::Add(v)
    }

    pub fn mul(v: Vec<QExpr>) -> Self {
        QExpr::Mul(v)
    }

    pub fn neg(self) -> Self {
        QExpr::Neg(Box::new(self))
    }

    pub fn div(a: QExpr, b: QExpr) -> Self {
        QExpr::Div(Box::new(a), Box::new(b))
    }

    pub fn square(self) -> Self {
        QExpr::Mul(vec![self.clone(), self])
    }

    /// (q - q^-1)^2
    pub fn q_gap_squared() -> Self {
        QExpr::add(vec![QExpr::qpow(Rat::from_integer(1)), QExpr::qpow(Rat::from_integer(-1)).neg()]).square()
    }

    fn collect_exponents(&self, out: &mut Vec<Rat>) {
        match self {
            QExpr::QNum(x) | QExpr::QPow(x) => out.push(*x),
            QExpr::Const(_) => {}
            QExpr::Scalar(s) => out.push(Rat::new(1, s.root_order().get() as i64)),
            QExpr::Add(v) | QExpr::Mul(v) => v.iter().for_each(|e| e.collect_exponents(out)),
            QExpr::Neg(a) => a.collect_exponents(out),
            QExpr::Div(a, b) => {
                a.collect_exponents(out);
                b.collect_exponents(out);
            }
        }
    }

    /// Smallest root order representing every exponent in the tree.
    pub fn min_root_order(&self) -> RootOrder {
        let mut v = Vec::new();
        self.collect_exponents(&mut v);
        RootOrder::covering(v)
    }

    pub fn to_qscalar(&self, r: RootOrder) -> Result<QScalar, QError> {
        Ok(match self {
            QExpr::QNum(x) => QScalar::qnum(r, *x)?,
            QExpr::QPow(x) => QScalar::q_pow(r, *x)?,
            QExpr::Const(c) => QScalar::from_coeff(c.clone()),
            QExpr::Scalar(s) => s.clone(),
            QExpr::Add(v) => {
                let mut acc = QScalar::zero_r(r);
                for e in v {
                    acc += e.to_qscalar(r)?;
                }
                acc
            }
            QExpr::Mul(v) => {
                let mut acc = QScalar::one();
                for e in v {
                    acc *= &e.to_qscalar(r)?;
                }
                acc
            }
            QExpr::Neg(a) => -a.to_qscalar(r)?,
            QExpr::Div(a, b) => a.to_qscalar(r)?.checked_div(&b.to_qscalar(r)?)?,
        })
    }

    /// Unreduced num/den pair at root order r.
    fn raw_fraction(&self, r: RootOrder) -> Result<(LaurentPoly, LaurentPoly), QError> {
        let rr = r.get() as i64;
        Ok(match self {
            QExpr::QNum(x) => {
                let e = r.exponent(*x)?;
                (
                    LaurentPoly::from_terms([(e, Coeff::one()), (-e, -Coeff::one())]),
                    LaurentPoly::from_terms([(rr, Coeff::one()), (-rr, -Coeff::one())]),
                )
            }
            QExpr::QPow(x) => (LaurentPoly::monomial(r.exponent(*x)?, Coeff::one()), LaurentPoly::one()),
            QExpr::Const(c) => (LaurentPoly::monomial(0, c.clone()), LaurentPoly::one()),
            QExpr::Scalar(s) => {
                let s = s.lift(r);
                (s.numerator().clone(), s.denominator().clone())
            }
            QExpr::Add(v) => {
                let mut n = LaurentPoly::zero();
                let mut d = LaurentPoly::one();
                for e in v {
                    let (en, ed) = e.raw_fraction(r)?;
                    if ed == d {
                        n = n.add(&en);
                    } else {
                        n = n.mul(&ed).add(&en.mul(&d));
                        d = d.mul(&ed);
                    }
                }
                (n, d)
            }
            QExpr::Mul(v) => {
                let mut n = LaurentPoly::one();
                let mut d = LaurentPoly::one();
                for e in v {
                    let (en, ed) = e.raw_fraction(r)?;
                    n = n.mul(&en);
                    d = d.mul(&ed);
                }
                (n, d)
            }
            QExpr::Neg(a) => {
                let (n, d) = a.raw_fraction(r)?;
                (n.neg(), d)
            }
            QExpr::Div(a, b) => {
                let (an, ad) = a.raw_fraction(r)?;
                let (bn, bd) = b.raw_fraction(r)?;
                if bn.is_zero() {
                    return Err(QError::DivisionByZero);
                }
                (an.mul(&bd), ad.mul(&bn))
            }
        })
    }

    /// Limit at q = 1 of the whole subtree, by Taylor expansion around t = 1.
    fn limit_at_one(&self) -> Result<Coeff, QError> {
        let r = self.min_root_order();
        let (n, d) = self.raw_fraction(r)?;
        if d.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let mut j = 0usize;
        loop {
            let dj = d.taylor_at_one(j);
            let nj = n.taylor_at_one(j);
            if !dj.is_zero() {
                return Ok(nj / dj);
            }
            if !nj.is_zero() {
                return Err(QError::SingularEvaluation(1.0));
            }
            j += 1;
        }
    }

    /// Exact value at q = 1: [x] -> x node-wise, falling back to a subtree limit.
    pub fn at_one(&self) -> Result<Coeff, QError> {
        let direct = match self {
            QExpr::QNum(x) => Ok(super::coeff_real(BigRational::new((*x.numer()).into(), (*x.denom()).into()))),
            QExpr::QPow(_) => Ok(Coeff::one()),
            QExpr::Const(c) => Ok(c.clone()),
            QExpr::Scalar(s) => s.at_one(),
            QExpr::Add(v) => v.iter().map(|e| e.at_one()).sum::<Result<Coeff, QError>>(),
            QExpr::Mul(v) => v.iter().map(|e| e.at_one()).product::<Result<Coeff, QError>>(),
            QExpr::Neg(a) => a.at_one().map(|x| -x),
            QExpr::Div(a, b) => match (a.at_one(), b.at_one()) {
                (Ok(x), Ok(y)) if !y.is_zero() => Ok(x / y),
                _ => Err(QError::SingularEvaluation(1.0)),
            },
        };
        match direct {
            Err(QError::SingularEvaluation(_)) => self.limit_at_one(),
            other => other,
        }
    }

    /// Floating-point value at q in (0, 1].
    pub fn eval(&self, q: f64) -> Result<f64, QError> {
        if q == 1.0 {
            let v = self.at_one()?;
            if !v.im.is_zero() {
                return Err(QError::NonReal);
            }
            return Ok(v.re.to_f64().unwrap_or(f64::NAN));
        }
        Ok(match self {
            QExpr::QNum(x) => {
                let x = *x.numer() as f64 / *x.denom() as f64;
                (q.powf(x) - q.powf(-x)) / (q - 1.0 / q)
            }
            QExpr::QPow(x) => q.powf(*x.numer() as f64 / *x.denom() as f64),
            QExpr::Const(c) => {
                if !c.im.is_zero() {
                    return Err(QError::NonReal);
                }
                c.re.to_f64().unwrap_or(f64::NAN)
            }
            QExpr::Scalar(s) => s.eval_at(q)?,
            QExpr::Add(v) => v.iter().map(|e| e.eval(q)).sum::<Result<f64, QError>>()?,
            QExpr::Mul(v) => v.iter().map(|e| e.eval(q)).product::<Result<f64, QError>>()?,
            QExpr::Neg(a) => -a.eval(q)?,
            QExpr::Div(a, b) => {
                let d = b.eval(q)?;
                if d == 0.0 {
                    return Err(QError::SingularEvaluation(q));
                }
                a.eval(q)? / d
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn node_wise_specialization() {
        // [3]!/[2]! at q = 1 is 3
        let e = QExpr::div(
            QExpr::mul(vec![QExpr::qnum(Rat::from(3)), QExpr::qnum(Rat::from(2)), QExpr::qnum(Rat::from(1))]),
            QExpr::mul(vec![QExpr::qnum(Rat::from(2)), QExpr::qnum(Rat::from(1))]),
        );
        assert_eq!(e.at_one().unwrap(), crate::qscalar::coeff_int(3));
        assert_eq!(e.to_qscalar(RootOrder::BASE).unwrap(), QScalar::qint(3));
    }

    #[test]
    fn removable_singularity_resolved_by_limit() {
        // ([x]^2 - [y]^2)/(q - q^-1)^0 vs ([2]-2)/(q-q^-1)^2 -> 1/4 * 1 at q = 1
        let e = QExpr::div(
            QExpr::add(vec![QExpr::qnum(Rat::from(2)), QExpr::int(-2)]),
            QExpr::q_gap_squared(),
        );
        let v = e.at_one().unwrap();
        assert_eq!(v.re, BigRational::new(BigInt::from(1), BigInt::from(4)));
        let s = e.to_qscalar(RootOrder::BASE).unwrap();
        assert_eq!(s.at_one_real().unwrap(), v.re);
    }

    #[test]
    fn float_eval_agrees_with_exact() {
        let e = QExpr::add(vec![
            QExpr::mul(vec![QExpr::qnum(Rat::new(3, 2)), QExpr::qpow(Rat::new(-1, 3))]),
            QExpr::int(2),
        ]);
        let r = e.min_root_order();
        assert_eq!(r.get(), 6);
        let s = e.to_qscalar(r).unwrap();
        for q in [0.3, 0.5, 0.9] {
            assert!((s.eval_at(q).unwrap() - e.eval(q).unwrap()).abs() < 1e-12);
        }
    }
}
