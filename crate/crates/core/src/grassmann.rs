//! The q-Grassmann algebra: the spaces W_k, the representations sigma_k of
//! `U_q(su(l))`, the q-wedge product, the antilinear map J, exterior
//! products, contractions and quantum dimensions.

use std::fmt;

use rayon::prelude::*;

use crate::check::{summarize, Check};
use crate::combinatorics::{
    complement, enumerate_multiindices, enumerate_shuffles, inversion_count, position, sharp, shift, CombError,
    MultiIndex, ShiftDir,
};
use crate::matrix::QMatrix;
use crate::qscalar::{QScalar, Rat, RootOrder};
use crate::uqsl::{relation_results, NCElement, Sym, TensorElement};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GrError {
    #[error("generator index {j} out of range 1..{ell}")]
    GeneratorOutOfRange { j: usize, ell: usize },
    #[error("generator {0} does not belong to U_q(su(l))")]
    UnsupportedGenerator(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Comb(#[from] CombError),
}

/// Lexicographic basis of W_k; empty when k > l.
pub fn basis(ell: usize, k: usize) -> Vec<MultiIndex> {
    enumerate_multiindices(ell, k).unwrap_or_default()
}

fn index_of(basis: &[MultiIndex], i: &MultiIndex) -> usize {
    basis.binary_search(i).expect("multi-index belongs to the basis")
}

fn q(x: Rat) -> QScalar {
    QScalar::q_pow(RootOrder::covering([x]), x).expect("covering root order")
}

/// (-q)^n.
fn neg_q_pow(n: i64) -> QScalar {
    let s = QScalar::q_int(n);
    if n % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Vector in W_k with coefficients in the lexicographic basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GrVector {
    ell: usize,
    degree: usize,
    coeffs: Vec<QScalar>,
}

impl GrVector {
    pub fn zero(ell: usize, degree: usize) -> Self {
        let n = basis(ell, degree).len();
        GrVector { ell, degree, coeffs: vec![QScalar::zero(); n] }
    }

    /// The basis vector e^i.
    pub fn basis_vector(i: &MultiIndex) -> Self {
        let mut v = Self::zero(i.ell(), i.len());
        let b = basis(i.ell(), i.len());
        v.coeffs[index_of(&b, i)] = QScalar::one();
        v
    }

    /// e^j in W_1.
    pub fn unit(ell: usize, j: usize) -> Self {
        Self::basis_vector(&MultiIndex::new(ell, vec![j]).expect("valid index"))
    }

    pub fn from_coeffs(ell: usize, degree: usize, coeffs: Vec<QScalar>) -> Result<Self, GrError> {
        let n = basis(ell, degree).len();
        if coeffs.len() != n {
            return Err(GrError::DegreeMismatch { expected: n, got: coeffs.len() });
        }
        Ok(GrVector { ell, degree, coeffs })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[QScalar] {
        &self.coeffs
    }

    /// Component w_i; zero when i is not a basis label of this degree.
    pub fn get(&self, i: &MultiIndex) -> QScalar {
        if i.len() != self.degree {
            return QScalar::zero();
        }
        let b = basis(self.ell, self.degree);
        b.binary_search(i).map(|p| self.coeffs[p].clone()).unwrap_or_else(|_| QScalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.ell, self.degree), (o.ell, o.degree), "adding vectors of different degree");
        GrVector { ell: self.ell, degree: self.degree, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        GrVector { ell: self.ell, degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    pub fn conj(&self) -> Self {
        GrVector { ell: self.ell, degree: self.degree, coeffs: self.coeffs.iter().map(|a| a.conj()).collect() }
    }
}

impl fmt::Display for GrVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = basis(self.ell, self.degree);
        let parts: Vec<String> =
            b.iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("({c}) e{i}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Linear or antilinear map W_dom -> W_cod, as a matrix in lexicographic bases.
/// An antilinear operator acts as w -> M conj(w).
#[derive(Clone, Debug, PartialEq)]
pub struct GrOperator {
    ell: usize,
    dom: usize,
    cod: usize,
    matrix: QMatrix,
    antilinear: bool,
}

impl GrOperator {
    pub fn new(ell: usize, dom: usize, cod: usize, matrix: QMatrix, antilinear: bool) -> Self {
        assert_eq!(matrix.rows(), basis(ell, cod).len(), "codomain dimension");
        assert_eq!(matrix.cols(), basis(ell, dom).len(), "domain dimension");
        GrOperator { ell, dom, cod, matrix, antilinear }
    }

    pub fn identity(ell: usize, k: usize) -> Self {
        Self::new(ell, k, k, QMatrix::identity(basis(ell, k).len()), false)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn domain(&self) -> usize {
        self.dom
    }

    pub fn codomain(&self) -> usize {
        self.cod
    }

    pub fn is_antilinear(&self) -> bool {
        self.antilinear
    }

    pub fn apply(&self, v: &GrVector) -> Result<GrVector, GrError> {
        if v.degree != self.dom {
            return Err(GrError::DegreeMismatch { expected: self.dom, got: v.degree });
        }
        let input = if self.antilinear { v.conj() } else { v.clone() };
        Ok(GrVector { ell: self.ell, degree: self.cod, coeffs: self.matrix.apply(&input.coeffs) })
    }

    /// self o other.
    pub fn compose(&self, other: &Self) -> Result<Self, GrError> {
        if other.cod != self.dom {
            return Err(GrError::DegreeMismatch { expected: self.dom, got: other.cod });
        }
        let inner = if self.antilinear { other.matrix.conj() } else { other.matrix.clone() };
        Ok(GrOperator {
            ell: self.ell,
            dom: other.dom,
            cod: self.cod,
            matrix: self.matrix.mul(&inner),
            antilinear: self.antilinear != other.antilinear,
        })
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        GrOperator { matrix: self.matrix.scale(s), ..self.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.dom, self.cod, self.antilinear), (o.dom, o.cod, o.antilinear), "incompatible operators");
        GrOperator { matrix: self.matrix.add(&o.matrix), ..self.clone() }
    }

    /// Adjoint of a linear operator for the standard inner product.
    pub fn adjoint(&self) -> Self {
        assert!(!self.antilinear, "adjoint of an antilinear operator");
        GrOperator { ell: self.ell, dom: self.cod, cod: self.dom, matrix: self.matrix.adjoint(), antilinear: false }
    }
}

/// sigma_k on a generator of `U_q(su(l))` (indices 1..l-1).
pub fn sigma(ell: usize, k: usize, g: Sym) -> Result<GrOperator, GrError> {
    let j = match g {
        Sym::K(j) | Sym::KInv(j) | Sym::E(j) | Sym::F(j) => j,
        Sym::KHat(_) => return Err(GrError::UnsupportedGenerator(g.to_string())),
    };
    if j == 0 || j >= ell {
        return Err(GrError::GeneratorOutOfRange { j, ell });
    }
    if k > ell {
        return Err(CombError::DegreeOutOfRange { ell, k }.into());
    }
    let b = basis(ell, k);
    let mut m = QMatrix::zeros(b.len(), b.len());
    for (r, i) in b.iter().enumerate() {
        let s = sharp(j, i);
        match g {
            Sym::K(_) => m.set(r, r, q(Rat::new(s as i64, 2))),
            Sym::KInv(_) => m.set(r, r, q(Rat::new(-s as i64, 2))),
            Sym::E(_) if s == 1 => m.set(r, index_of(&b, &shift(i, j, ShiftDir::Up)?), QScalar::one()),
            Sym::F(_) if s == -1 => m.set(r, index_of(&b, &shift(i, j, ShiftDir::Down)?), QScalar::one()),
            _ => {}
        }
    }
    Ok(GrOperator::new(ell, k, k, m, false))
}

/// sigma_k extended to elements of `U_q(su(l))`.
pub fn sigma_element(ell: usize, k: usize, x: &NCElement) -> Result<QMatrix, GrError> {
    for (w, _) in x.terms() {
        for s in w {
            sigma(ell, 0, *s)?;
        }
    }
    let dim = basis(ell, k).len();
    Ok(x.eval_with(dim, &|s| sigma(ell, k, s).expect("validated generator").matrix))
}

/// q-wedge product W_h x W_k -> W_{h+k}; zero when h+k > l.
pub fn wedge(v: &GrVector, w: &GrVector) -> Result<GrVector, GrError> {
    if v.ell != w.ell {
        return Err(GrError::RankMismatch(v.ell, w.ell));
    }
    let (ell, h, k) = (v.ell, v.degree, w.degree);
    let out_basis = basis(ell, h + k);
    if out_basis.is_empty() {
        return Ok(GrVector { ell, degree: h + k, coeffs: Vec::new() });
    }
    let bv = basis(ell, h);
    let bw = basis(ell, k);
    let shuffles: Vec<(Vec<usize>, Vec<usize>, QScalar)> = enumerate_shuffles(h, k)
        .into_iter()
        .map(|p| {
            let img = p.images().to_vec();
            (img[..h].to_vec(), img[h..].to_vec(), neg_q_pow(-(inversion_count(&p) as i64)))
        })
        .collect();
    let coeffs = out_basis
        .iter()
        .map(|i| {
            let mut acc = QScalar::zero();
            for (first, second, c) in &shuffles {
                let a = MultiIndex::new(ell, i.pick(first)).expect("sorted");
                let b = MultiIndex::new(ell, i.pick(second)).expect("sorted");
                let x = &v.coeffs[index_of(&bv, &a)];
                let y = &w.coeffs[index_of(&bw, &b)];
                if !x.is_zero() && !y.is_zero() {
                    acc += c * x * y;
                }
            }
            acc
        })
        .collect();
    Ok(GrVector { ell, degree: h + k, coeffs })
}

/// J: W_k -> W_{l-k}, antilinear.
pub fn j_operator(ell: usize, k: usize) -> GrOperator {
    let dom = basis(ell, k);
    let cod = basis(ell, ell - k);
    let mut m = QMatrix::zeros(cod.len(), dom.len());
    let base = q(Rat::new((ell * (ell + 1)) as i64, 4));
    for (r, i) in cod.iter().enumerate() {
        let c = neg_q_pow(-(i.weight() as i64)) * &base;
        m.set(r, index_of(&dom, &complement(i)), c);
    }
    GrOperator::new(ell, k, ell - k, m, true)
}

pub fn jmap(w: &GrVector) -> GrVector {
    j_operator(w.ell, w.degree).apply(w).expect("matching degree")
}

/// (-1)^floor((l+1)/2).
pub fn j_square_sign(ell: usize) -> i64 {
    if ((ell + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// J^-1: W_{l-k} -> W_k, equal to J^2 J.
pub fn j_inverse_operator(ell: usize, k: usize) -> GrOperator {
    j_operator(ell, ell - k).scale(&QScalar::from_int(j_square_sign(ell)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Exterior product by x in W_1, as a map W_k -> W_{k+1}.
pub fn exterior(x: &GrVector, side: Side, k: usize) -> Result<GrOperator, GrError> {
    if x.degree != 1 {
        return Err(GrError::DegreeMismatch { expected: 1, got: x.degree });
    }
    let ell = x.ell;
    let dom = basis(ell, k);
    let cod_dim = basis(ell, k + 1).len();
    let cols: Vec<Vec<QScalar>> = dom
        .par_iter()
        .map(|i| {
            let b = GrVector::basis_vector(i);
            let r = match side {
                Side::Left => wedge(x, &b),
                Side::Right => wedge(&b, x).map(|v| v.scale(&neg_q_pow(k as i64))),
            };
            r.expect("same rank").coeffs
        })
        .collect();
    let mut m = QMatrix::zeros(cod_dim, dom.len());
    for (c, col) in cols.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    Ok(GrOperator::new(ell, k, k + 1, m, false))
}

/// All exterior-product matrices W_k -> W_{k+1}, k = 0..l-1.
pub fn exterior_family(x: &GrVector, side: Side) -> Result<Vec<GrOperator>, GrError> {
    (0..x.ell).map(|k| exterior(x, side, k)).collect()
}

/// Contraction by x in W_1, as a map W_{k+1} -> W_k. The right contraction uses
/// the closed formula; the left one is the adjoint of the left exterior product.
pub fn contraction(x: &GrVector, side: Side, k: usize) -> Result<GrOperator, GrError> {
    if x.degree != 1 {
        return Err(GrError::DegreeMismatch { expected: 1, got: x.degree });
    }
    let ell = x.ell;
    match side {
        Side::Left => Ok(exterior(x, Side::Left, k)?.adjoint()),
        Side::Right => {
            let cod = basis(ell, k);
            let dom = basis(ell, k + 1);
            let mut m = QMatrix::zeros(cod.len(), dom.len());
            for (r, i) in cod.iter().enumerate() {
                for j in 1..=ell {
                    let Some(ij) = i.with(j) else { continue };
                    let xj = &x.coeffs[j - 1];
                    if xj.is_zero() {
                        continue;
                    }
                    let c = neg_q_pow(position(j, &ij)? as i64 - 1) * xj.conj();
                    m.add_at(r, index_of(&dom, &ij), &c);
                }
            }
            Ok(GrOperator::new(ell, k + 1, k, m, false))
        }
    }
}

/// Quantum dimension as the sum over Lambda_k of q^(k(l+1) - 2|i|).
pub fn qdim_w(ell: usize, k: usize) -> QScalar {
    basis(ell, k)
        .iter()
        .map(|i| QScalar::q_int((k * (ell + 1)) as i64 - 2 * i.weight() as i64))
        .sum()
}

/// Closed form [l]!/([k]![l-k]!).
pub fn qdim_closed(ell: usize, k: usize) -> QScalar {
    QScalar::qbinom(ell as u32, k as i64)
}

fn gens(ell: usize) -> Vec<Sym> {
    (1..ell).flat_map(|j| [Sym::K(j), Sym::E(j), Sym::F(j)]).collect()
}

/// sigma_{h+k}(g)(v ^ w) minus sum sigma_h(g_(1)) v ^ sigma_k(g_(2)) w.
pub fn wedge_covariance_holds(ell: usize, g: Sym, v: &GrVector, w: &GrVector) -> bool {
    let lhs = match wedge(v, w) {
        Ok(p) if p.coeffs.is_empty() => return true,
        Ok(p) => GrOperator::new(ell, p.degree, p.degree, sigma(ell, p.degree, g).unwrap().matrix, false).apply(&p).unwrap(),
        Err(_) => return false,
    };
    let t: TensorElement = TensorElement::coproduct_gen(g);
    let mut rhs = GrVector::zero(ell, v.degree + w.degree);
    for ((a, b), c) in t.terms() {
        let ma = sigma_element(ell, v.degree, &NCElement::word(a.clone())).unwrap();
        let mb = sigma_element(ell, w.degree, &NCElement::word(b.clone())).unwrap();
        let va = GrVector { coeffs: ma.apply(&v.coeffs), ..v.clone() };
        let wb = GrVector { coeffs: mb.apply(&w.coeffs), ..w.clone() };
        rhs = rhs.add(&wedge(&va, &wb).unwrap().scale(c));
    }
    lhs == rhs
}

/// Verification suite for the Grassmann side.
pub fn verify_suite(ell_max: usize) -> Vec<Check> {
    let s = "grassmann";
    let rel_max = ell_max.min(5);
    let small = ell_max.min(4);
    let mut checks = Vec::new();

    checks.push(summarize(
        s,
        "sigma_k satisfies the defining relations",
        (2..=rel_max).flat_map(|l| {
            (0..=l).flat_map(move |k| {
                let dim = basis(l, k).len();
                relation_results(l - 1, dim, &|g| sigma(l, k, g).unwrap().matrix)
                    .into_iter()
                    .map(move |(n, ok)| (format!("l={l} k={k} {n}"), ok))
            })
        }),
    ));

    let mut assoc = Vec::new();
    let mut cov = Vec::new();
    for l in 1..=small {
        let all: Vec<GrVector> = (0..=l).flat_map(|k| basis(l, k)).map(|i| GrVector::basis_vector(&i)).collect();
        for u in &all {
            for v in &all {
                let uv = wedge(u, v).unwrap();
                for g in gens(l) {
                    cov.push((format!("l={l} {g} on {u} ^ {v}"), wedge_covariance_holds(l, g, u, v)));
                }
                for w in &all {
                    if u.degree + v.degree + w.degree > l {
                        continue;
                    }
                    let lhs = wedge(&uv, w).unwrap();
                    let rhs = wedge(u, &wedge(v, w).unwrap()).unwrap();
                    assoc.push((format!("l={l} {u},{v},{w}"), lhs == rhs));
                }
            }
        }
    }
    checks.push(summarize(s, "wedge is associative on basis triples", assoc));
    checks.push(summarize(s, "wedge is a module map", cov));

    checks.push(summarize(
        s,
        "J squared is (-1)^floor((l+1)/2)",
        (1..=ell_max.max(6)).flat_map(|l| {
            (0..=l).map(move |k| {
                let j2 = j_operator(l, l - k).compose(&j_operator(l, k)).unwrap();
                let expect = QMatrix::scalar(basis(l, k).len(), &QScalar::from_int(j_square_sign(l)));
                (format!("l={l} k={k}"), !j2.is_antilinear() && *j2.matrix() == expect)
            })
        }),
    ));

    let mut jx = Vec::new();
    let mut p312 = Vec::new();
    for l in 1..=small {
        for k in 0..=l {
            let j = j_operator(l, k);
            for g in gens(l) {
                let x = NCElement::gen(g);
                let lhs = GrOperator::new(l, l - k, l - k, sigma_element(l, l - k, &x.star()).unwrap(), false).compose(&j).unwrap();
                let rhs = j.compose(&GrOperator::new(l, k, k, sigma_element(l, k, &x.antipode()).unwrap(), false)).unwrap();
                jx.push((format!("l={l} k={k} {g}"), lhs == rhs));
            }
        }
        for k in 0..l {
            for jj in 1..=l {
                let x = GrVector::unit(l, jj);
                // J e^L_x J^-1 on W_{k+1} -> W_k
                let jinv = j_inverse_operator(l, l - k - 1);
                let e = exterior(&x, Side::Left, l - k - 1).unwrap();
                let lhs = j_operator(l, l - k).compose(&e).unwrap().compose(&jinv).unwrap();
                let rhs = contraction(&x, Side::Right, k).unwrap().scale(&-QScalar::q_int(1));
                p312.push((format!("l={l} k={k} x=e{jj}"), lhs == rhs));
            }
        }
    }
    checks.push(summarize(s, "J is equivariant", jx));
    checks.push(summarize(s, "J e^L J^-1 = -q i^R", p312));

    let mut adj = Vec::new();
    for l in 1..=small {
        for k in 0..l {
            for jj in 1..=l {
                let x = GrVector::unit(l, jj);
                let by_adjoint = exterior(&x, Side::Right, k).unwrap().adjoint();
                adj.push((format!("l={l} k={k} x=e{jj}"), by_adjoint == contraction(&x, Side::Right, k).unwrap()));
            }
        }
    }
    checks.push(summarize(s, "right contraction is the adjoint of right exterior product", adj));

    checks.push(summarize(
        s,
        "quantum dimension sum equals q-binomial and is q-symmetric",
        (1..=ell_max.max(8)).flat_map(|l| {
            (0..=l).map(move |k| {
                let d = qdim_w(l, k);
                (format!("l={l} k={k}"), d == qdim_closed(l, k) && d.substitute_q_inverse() == d)
            })
        }),
    ));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(ell: usize, e: &[usize]) -> MultiIndex {
        MultiIndex::new(ell, e.to_vec()).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let k1 = sigma(2, 1, Sym::K(1)).unwrap();
        assert_eq!(*k1.matrix(), QMatrix::diag(vec![q(Rat::new(1, 2)), q(Rat::new(-1, 2))]));
        let e1 = sigma(2, 1, Sym::E(1)).unwrap();
        assert_eq!(e1.matrix().get(0, 1), QScalar::one());
        assert_eq!(e1.matrix().nnz(), 1);
        assert!(e1.matrix().mul(e1.matrix()).is_zero());
        assert!(sigma(3, 0, Sym::E(1)).unwrap().matrix().is_zero());
        assert!(sigma(3, 0, Sym::K(2)).unwrap().matrix().as_scalar().unwrap().is_one());
        assert!(matches!(sigma(3, 1, Sym::E(3)), Err(GrError::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn wedge_examples() {
        let v = GrVector::unit(2, 1);
        let w = GrVector::unit(2, 2);
        let vw = wedge(&v, &w).unwrap();
        assert!(vw.get(&mi(2, &[1, 2])).is_one());
        let wv = wedge(&w, &v).unwrap();
        assert_eq!(wv.get(&mi(2, &[1, 2])), -QScalar::q_int(-1));
        assert!(wedge(&v, &v).unwrap().is_zero());
        let top = GrVector::basis_vector(&mi(2, &[1, 2]));
        assert!(wedge(&top, &v).unwrap().coeffs().is_empty());
        // x ^ x need not vanish
        let x = v.add(&w);
        assert!(!wedge(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn j_examples() {
        let one = GrVector::from_coeffs(1, 0, vec![QScalar::one()]).unwrap();
        let j = jmap(&one);
        assert_eq!(j.get(&mi(1, &[1])), -q(Rat::new(-1, 2)));
        assert_eq!(j_square_sign(1), -1);
        assert_eq!(j_square_sign(4), 1);
        let iv = GrVector::from_coeffs(1, 0, vec![QScalar::i()]).unwrap();
        assert_eq!(jmap(&iv), j.scale(&-QScalar::i()));
    }

    #[test]
    fn exterior_contraction_examples() {
        let e1 = GrVector::unit(3, 1);
        let one = GrVector::from_coeffs(3, 0, vec![QScalar::one()]).unwrap();
        assert_eq!(exterior(&e1, Side::Left, 0).unwrap().apply(&one).unwrap(), e1);
        assert_eq!(exterior(&e1, Side::Right, 0).unwrap().apply(&one).unwrap(), e1);
        assert!(contraction(&e1, Side::Right, 0).unwrap().apply(&e1).unwrap().coeffs()[0].is_one());
        let x = GrVector::unit(3, 1).add(&GrVector::unit(3, 2));
        let xx = wedge(&x, &x).unwrap();
        for k in 0..2 {
            let sq = exterior(&x, Side::Left, k + 1).unwrap().compose(&exterior(&x, Side::Left, k).unwrap()).unwrap();
            let mut m = QMatrix::zeros(basis(3, k + 2).len(), basis(3, k).len());
            for (c, i) in basis(3, k).iter().enumerate() {
                let col = wedge(&xx, &GrVector::basis_vector(i)).unwrap();
                for (r, v) in col.coeffs().iter().enumerate() {
                    m.set(r, c, v.clone());
                }
            }
            assert_eq!(*sq.matrix(), m);
        }
    }

    #[test]
    fn qdim_examples() {
        assert!(qdim_w(3, 0).is_one());
        assert_eq!(qdim_w(2, 1), QScalar::q_int(1) + QScalar::q_int(-1));
    }
}
