//! Word-level calculus over the generators of `U_q(su(l+1))` extended by powers of
//! `K^ = (K_1 K_2^2 ... K_l^l)^(2/(l+1))`, evaluated in the fundamental
//! representation and its tensor powers.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::check::{summarize, Check};
use crate::matrix::QMatrix;
use crate::qscalar::{QScalar, Rat, RootOrder};

/// Generator symbol. `KHat(x)` is the group-like `K^^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    K(usize),
    KInv(usize),
    E(usize),
    F(usize),
    KHat(Rat),
}

impl Sym {
    pub fn star(self) -> Sym {
        match self {
            Sym::E(i) => Sym::F(i),
            Sym::F(i) => Sym::E(i),
            s => s,
        }
    }

    fn index(self) -> Option<usize> {
        match self {
            Sym::K(i) | Sym::KInv(i) | Sym::E(i) | Sym::F(i) => Some(i),
            Sym::KHat(_) => None,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::K(i) => write!(f, "K{i}"),
            Sym::KInv(i) => write!(f, "K{i}^-1"),
            Sym::E(i) => write!(f, "E{i}"),
            Sym::F(i) => write!(f, "F{i}"),
            Sym::KHat(x) if *x == Rat::from_integer(1) => write!(f, "Kh"),
            Sym::KHat(x) => write!(f, "Kh^({x})"),
        }
    }
}

pub type Word = Vec<Sym>;

fn q(x: Rat) -> QScalar {
    QScalar::q_pow(RootOrder::covering([x]), x).expect("covering root order")
}

fn qi(n: i64) -> QScalar {
    QScalar::q_int(n)
}

fn rat(a: i64, b: i64) -> Rat {
    Rat::new(a, b)
}

/// 1/(q - q^-1)^2.
pub fn gap_inv_sq() -> QScalar {
    let g = qi(1) - qi(-1);
    QScalar::one() / (&g * &g)
}

/// Formal linear combination of free words.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NCElement {
    terms: BTreeMap<Word, QScalar>,
}

impl NCElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::one().scale(&c)
    }

    pub fn gen(s: Sym) -> Self {
        Self::word(vec![s])
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, QScalar::one());
        NCElement { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (QScalar, Word)>) -> Self {
        let mut e = Self::zero();
        for (c, w) in it {
            e.add_term(c, w);
        }
        e
    }

    fn add_term(&mut self, c: QScalar, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(c.clone(), w.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-QScalar::one()))
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, v)| (v * c, w.clone())))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                r.add_term(c1 * c2, w);
            }
        }
        r
    }

    pub fn product(factors: &[&NCElement]) -> Self {
        factors.iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// [a,b]_q = ab - q^-1 ba.
    pub fn q_commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self).scale(&qi(-1)))
    }

    /// Anti-linear anti-automorphism: E <-> F, K and K^ self-adjoint.
    pub fn star(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.conj(), w.iter().rev().map(|s| s.star()).collect())))
    }

    fn anti_map(&self, f: impl Fn(Sym) -> NCElement) -> Self {
        let mut r = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::scalar(c.clone());
            for s in w.iter().rev() {
                acc = acc.mul(&f(*s));
            }
            r = r.add(&acc);
        }
        r
    }

    /// Antipode: S(K)=K^-1, S(E)=-qE, S(F)=-q^-1 F, S(K^x)=K^-x.
    pub fn antipode(&self) -> Self {
        self.anti_map(|s| match s {
            Sym::K(i) => Self::gen(Sym::KInv(i)),
            Sym::KInv(i) => Self::gen(Sym::K(i)),
            Sym::E(i) => Self::gen(Sym::E(i)).scale(&-qi(1)),
            Sym::F(i) => Self::gen(Sym::F(i)).scale(&-qi(-1)),
            Sym::KHat(x) => Self::gen(Sym::KHat(-x)),
        })
    }

    /// Inverse antipode: S^-1(E)=-q^-1 E, S^-1(F)=-qF.
    pub fn antipode_inverse(&self) -> Self {
        self.anti_map(|s| match s {
            Sym::K(i) => Self::gen(Sym::KInv(i)),
            Sym::KInv(i) => Self::gen(Sym::K(i)),
            Sym::E(i) => Self::gen(Sym::E(i)).scale(&-qi(-1)),
            Sym::F(i) => Self::gen(Sym::F(i)).scale(&-qi(1)),
            Sym::KHat(x) => Self::gen(Sym::KHat(-x)),
        })
    }

    /// Counit.
    pub fn counit(&self) -> QScalar {
        self.terms
            .iter()
            .filter(|(w, _)| w.iter().all(|s| !matches!(s, Sym::E(_) | Sym::F(_))))
            .map(|(_, c)| c.clone())
            .sum()
    }

    pub fn coproduct(&self) -> TensorElement {
        let mut r = TensorElement::zero();
        for (w, c) in &self.terms {
            let mut acc = TensorElement::scalar(c.clone());
            for s in w {
                acc = acc.mul(&TensorElement::coproduct_gen(*s));
            }
            r = r.add(&acc);
        }
        r
    }

    /// Evaluates with a generator-to-matrix map on a space of dimension `dim`.
    pub fn eval_with(&self, dim: usize, g: &dyn Fn(Sym) -> QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(dim, dim);
        for (w, c) in &self.terms {
            let m = eval_word(dim, w, g);
            out = out.add(&m.scale(c));
        }
        out
    }

    pub fn eval(&self, rep: &MatrixRep) -> QMatrix {
        self.eval_with(rep.dim(), &|s| rep.gen(s))
    }
}

fn eval_word(dim: usize, w: &[Sym], g: &dyn Fn(Sym) -> QMatrix) -> QMatrix {
    match w.split_first() {
        None => QMatrix::identity(dim),
        Some((s, rest)) => rest.iter().fold(g(*s), |acc, s| acc.mul(&g(*s))),
    }
}

impl fmt::Display for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let ws: Vec<String> = w.iter().map(|s| s.to_string()).collect();
                let ws = if ws.is_empty() { "1".to_string() } else { ws.join(" ") };
                format!("({c}) {ws}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Linear combination of pairs of words in A (x) A.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), QScalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: QScalar) -> Self {
        let mut t = Self::zero();
        t.add_term(c, Vec::new(), Vec::new());
        t
    }

    pub fn simple(a: &NCElement, b: &NCElement) -> Self {
        let mut t = Self::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                t.add_term(ca * cb, wa.clone(), wb.clone());
            }
        }
        t
    }

    fn add_term(&mut self, c: QScalar, a: Word, b: Word) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &QScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(c.clone(), a.clone(), b.clone());
        }
        r
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut r = Self::zero();
        for ((a, b), v) in &self.terms {
            r.add_term(v * c, a.clone(), b.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                let mut a = a1.clone();
                a.extend(a2.iter().copied());
                let mut b = b1.clone();
                b.extend(b2.iter().copied());
                r.add_term(c1 * c2, a, b);
            }
        }
        r
    }

    /// Coproduct of a generator.
    pub fn coproduct_gen(s: Sym) -> Self {
        let g = NCElement::gen;
        match s {
            Sym::E(i) | Sym::F(i) => Self::simple(&g(s), &g(Sym::K(i))).add(&Self::simple(&g(Sym::KInv(i)), &g(s))),
            _ => Self::simple(&g(s), &g(s)),
        }
    }

    /// Multiplication map after applying `fa` to the first leg: sum fa(a) b.
    pub fn contract(&self, fa: impl Fn(&NCElement) -> NCElement) -> NCElement {
        let mut r = NCElement::zero();
        for ((a, b), c) in &self.terms {
            r = r.add(&fa(&NCElement::word(a.clone())).mul(&NCElement::word(b.clone())).scale(c));
        }
        r
    }

    /// Evaluates on the Kronecker product of two representations.
    pub fn eval(&self, ra: &MatrixRep, rb: &MatrixRep) -> QMatrix {
        let mut out = QMatrix::zeros(ra.dim() * rb.dim(), ra.dim() * rb.dim());
        for ((a, b), c) in &self.terms {
            let ma = NCElement::word(a.clone()).eval(ra);
            let mb = NCElement::word(b.clone()).eval(rb);
            out = out.add(&ma.kron(&mb).scale(c));
        }
        out
    }
}

/// Representation given by E_i, F_i matrices and diagonal K-weights:
/// basis vector v has K_i v = q^(h_i(v)) v.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    ell: usize,
    label: String,
    weights: Vec<Vec<Rat>>,
    e: Vec<QMatrix>,
    f: Vec<QMatrix>,
}

impl MatrixRep {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// K-weights of each basis vector.
    pub fn weights(&self) -> &[Vec<Rat>] {
        &self.weights
    }

    /// Diagonal group-like with K_i exponents scaled by `coef`: prod K_i^(coef_i).
    pub fn group_like(&self, coef: &[Rat]) -> QMatrix {
        QMatrix::diag(
            self.weights
                .iter()
                .map(|h| q(h.iter().zip(coef).map(|(a, b)| *a * *b).sum()))
                .collect(),
        )
    }

    /// K^^x.
    pub fn khat_pow(&self, x: Rat) -> QMatrix {
        let l = self.ell as i64;
        let coef: Vec<Rat> = (1..=l).map(|i| rat(2 * i, l + 1) * x).collect();
        self.group_like(&coef)
    }

    pub fn gen(&self, s: Sym) -> QMatrix {
        if let Some(i) = s.index() {
            assert!(i >= 1 && i <= self.ell, "generator index {i} out of range 1..={}", self.ell);
        }
        let unit = |i: usize, x: i64| {
            let mut c = vec![Rat::from_integer(0); self.ell];
            c[i - 1] = Rat::from_integer(x);
            c
        };
        match s {
            Sym::K(i) => self.group_like(&unit(i, 1)),
            Sym::KInv(i) => self.group_like(&unit(i, -1)),
            Sym::E(i) => self.e[i - 1].clone(),
            Sym::F(i) => self.f[i - 1].clone(),
            Sym::KHat(x) => self.khat_pow(x),
        }
    }
}

/// The (l+1)-dimensional representation: E_i has a 1 in row i+1, column i.
pub fn fundamental_rep(ell: usize) -> MatrixRep {
    assert!(ell >= 1, "rank must be at least 1");
    let n = ell + 1;
    let weights = (1..=n)
        .map(|j| {
            (1..=ell)
                .map(|i| rat((j == i + 1) as i64 - (j == i) as i64, 2))
                .collect()
        })
        .collect();
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 1..=ell {
        let mut m = QMatrix::zeros(n, n);
        m.set(i, i - 1, QScalar::one());
        f.push(m.transpose());
        e.push(m);
    }
    MatrixRep { ell, label: "fundamental".into(), weights, e, f }
}

/// Tensor product through the coproduct.
pub fn tensor_rep(a: &MatrixRep, b: &MatrixRep) -> MatrixRep {
    assert_eq!(a.ell, b.ell, "tensor factors must share the rank");
    let mut weights = Vec::new();
    for ha in &a.weights {
        for hb in &b.weights {
            weights.push(ha.iter().zip(hb).map(|(x, y)| *x + *y).collect());
        }
    }
    let mut e = Vec::new();
    let mut f = Vec::new();
    for i in 1..=a.ell {
        let (kb, kia) = (b.gen(Sym::K(i)), a.gen(Sym::KInv(i)));
        e.push(a.e[i - 1].kron(&kb).add(&kia.kron(&b.e[i - 1])));
        f.push(a.f[i - 1].kron(&kb).add(&kia.kron(&b.f[i - 1])));
    }
    MatrixRep { ell: a.ell, label: format!("({})x({})", a.label, b.label), weights, e, f }
}

/// Root vectors, the elements N_jk and X_i, and the Casimirs for a fixed rank.
#[derive(Clone, Debug)]
pub struct RootVectors {
    ell: usize,
}

impl RootVectors {
    pub fn new(ell: usize) -> Self {
        RootVectors { ell }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// M_jj = E_j, M_jk = [E_j, M_{j+1,k}]_q; zero out of range.
    pub fn m(&self, j: usize, k: usize) -> NCElement {
        if j == 0 || j > k || k > self.ell {
            return NCElement::zero();
        }
        if j == k {
            return NCElement::gen(Sym::E(j));
        }
        NCElement::gen(Sym::E(j)).q_commutator(&self.m(j + 1, k))
    }

    pub fn m_star(&self, j: usize, k: usize) -> NCElement {
        self.m(j, k).star()
    }

    /// Word of N_jk = (K_j...K_l)(K_{k+1}...K_l) K^^-1.
    pub fn n_word(&self, j: usize, k: usize) -> Word {
        let mut w: Word = (j.max(1)..=self.ell).map(Sym::K).collect();
        w.extend((k + 1..=self.ell).map(Sym::K));
        w.push(Sym::KHat(Rat::from_integer(-1)));
        w
    }

    pub fn n(&self, j: usize, k: usize) -> NCElement {
        NCElement::word(self.n_word(j, k))
    }

    pub fn n_sq(&self, j: usize, k: usize) -> NCElement {
        let mut w = self.n_word(j, k);
        w.extend(self.n_word(j, k));
        NCElement::word(w)
    }

    pub fn n_inv(&self, j: usize, k: usize) -> NCElement {
        let w: Word = self
            .n_word(j, k)
            .into_iter()
            .rev()
            .map(|s| match s {
                Sym::K(i) => Sym::KInv(i),
                Sym::KHat(x) => Sym::KHat(-x),
                s => s,
            })
            .collect();
        NCElement::word(w)
    }

    /// X_i = N_{il} M_{il}^*.
    pub fn x(&self, i: usize) -> NCElement {
        self.n(i, self.ell).mul(&self.m_star(i, self.ell))
    }

    /// K_2rho = (prod_j K_j^(j(l-j+1)))^2.
    pub fn k2rho(&self) -> NCElement {
        let mut w = Word::new();
        for j in 1..=self.ell {
            for _ in 0..2 * j * (self.ell - j + 1) {
                w.push(Sym::K(j));
            }
        }
        NCElement::word(w)
    }

    pub fn k2rho_inv(&self) -> NCElement {
        let w = self
            .k2rho()
            .terms()
            .next()
            .map(|(w, _)| w.iter().map(|s| if let Sym::K(i) = s { Sym::KInv(*i) } else { *s }).collect())
            .unwrap_or_default();
        NCElement::word(w)
    }

    /// Product K_a ... K_b (empty when a > b), raised to the power `p` (+1 or -1).
    pub fn k_run(&self, a: usize, b: usize, p: i64) -> NCElement {
        let w: Word = (a..=b).map(|i| if p > 0 { Sym::K(i) } else { Sym::KInv(i) }).collect();
        let mut full = Word::new();
        for _ in 0..p.unsigned_abs() {
            full.extend(w.iter().copied());
        }
        NCElement::word(full)
    }

    /// The Casimir element C_q.
    pub fn casimir(&self) -> NCElement {
        let l = self.ell as i64;
        let c = gap_inv_sq();
        let mut out = NCElement::zero();
        for i in 1..=self.ell {
            out = out.add(&self.n_sq(i, i - 1).scale(&(qi(l + 2 - 2 * i as i64) * &c)));
        }
        out = out.add(&NCElement::gen(Sym::KHat(Rat::from_integer(-2))).scale(&(qi(-l) * &c)));
        for j in 1..=self.ell {
            for k in j..=self.ell {
                let t = NCElement::product(&[&self.m_star(j, k), &self.n_sq(j, k), &self.m(j, k)]);
                out = out.add(&t.scale(&qi(l + 1 - 2 * j as i64)));
            }
        }
        out.sub(&NCElement::scalar(QScalar::qint(l + 1) * &c))
    }

    /// Right-hand side of the defining relation of C'_q, i.e. K^^(2/l) C'_q.
    pub fn casimir_prime_scaled(&self) -> NCElement {
        let l = self.ell as i64;
        let c = gap_inv_sq();
        let mut out = NCElement::zero();
        for i in 1..=self.ell {
            out = out.add(&self.n_sq(i, i - 1).scale(&(qi(l + 1 - 2 * i as i64) * &c)));
        }
        for j in 1..self.ell {
            for k in j..self.ell {
                let t = NCElement::product(&[&self.m_star(j, k), &self.n_sq(j, k), &self.m(j, k)]);
                out = out.add(&t.scale(&qi(l - 2 * j as i64)));
            }
        }
        let kh = NCElement::gen(Sym::KHat(rat(2, l)));
        out.sub(&kh.scale(&(QScalar::qint(l) * &c)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CasimirKind {
    Full,
    Prime,
}

pub fn casimir_matrix(rep: &MatrixRep, which: CasimirKind) -> QMatrix {
    let rv = RootVectors::new(rep.ell());
    match which {
        CasimirKind::Full => rv.casimir().eval(rep),
        CasimirKind::Prime => {
            let kh = rep.khat_pow(rat(2, rep.ell() as i64));
            let inv = kh.diag_inverse().expect("K^ is invertible");
            inv.mul(&rv.casimir_prime_scaled().eval(rep))
        }
    }
}

/// Right adjoint action x <| h = S(h_(1)) x h_(2).
pub fn adjoint_action(x: &NCElement, h: &NCElement) -> NCElement {
    h.coproduct().contract(|a| a.antipode().mul(x))
}

/// The defining relations of U_q(su(rank+1)) as elements that must vanish,
/// each paired with its star (the conjugated relation).
pub fn defining_relations(rank: usize) -> Vec<(String, NCElement)> {
    let g = NCElement::gen;
    let mut out = Vec::new();
    let gap = qi(1) - qi(-1);
    for i in 1..=rank {
        out.push((
            format!("K{i} K{i}^-1 = 1"),
            g(Sym::K(i)).mul(&g(Sym::KInv(i))).sub(&NCElement::one()),
        ));
        for j in 1..=rank {
            out.push((format!("[K{i},K{j}] = 0"), g(Sym::K(i)).commutator(&g(Sym::K(j)))));
            let a = if i == j {
                Rat::from_integer(1)
            } else if i.abs_diff(j) == 1 {
                rat(-1, 2)
            } else {
                Rat::from_integer(0)
            };
            let conj = |x: Sym| NCElement::product(&[&g(Sym::K(i)), &g(x), &g(Sym::KInv(i))]);
            out.push((format!("K{i} E{j} K{i}^-1 = q^({a}) E{j}"), conj(Sym::E(j)).sub(&g(Sym::E(j)).scale(&q(a)))));
            let ef = g(Sym::E(i)).commutator(&g(Sym::F(j)));
            let rhs = if i == j {
                g(Sym::K(i))
                    .mul(&g(Sym::K(i)))
                    .sub(&g(Sym::KInv(i)).mul(&g(Sym::KInv(i))))
                    .scale(&(QScalar::one() / &gap))
            } else {
                NCElement::zero()
            };
            out.push((format!("[E{i},F{j}]"), ef.sub(&rhs)));
            let (ei, ej) = (g(Sym::E(i)), g(Sym::E(j)));
            if i.abs_diff(j) == 1 {
                let serre = NCElement::product(&[&ei, &ei, &ej])
                    .sub(&NCElement::product(&[&ei, &ej, &ei]).scale(&QScalar::qint(2)))
                    .add(&NCElement::product(&[&ej, &ei, &ei]));
                out.push((format!("Serre E{i}E{i}E{j}"), serre));
                out.push((format!("[E{i},[E{j},E{i}]_q]_q = 0"), ei.q_commutator(&ej.q_commutator(&ei))));
                out.push((format!("[[E{i},E{j}]_q,E{i}]_q = 0"), ei.q_commutator(&ej).q_commutator(&ei)));
            } else if i.abs_diff(j) > 1 {
                out.push((format!("[E{i},E{j}] = 0"), ei.commutator(&ej)));
            }
        }
    }
    let starred: Vec<(String, NCElement)> = out.iter().map(|(n, e)| (format!("({n})*"), e.star())).collect();
    out.extend(starred);
    out
}

/// Evaluates every defining relation (and its conjugate) with a generator map.
pub fn relation_results(rank: usize, dim: usize, g: &(dyn Fn(Sym) -> QMatrix + Sync)) -> Vec<(String, bool)> {
    let mut res: Vec<(String, bool)> =
        defining_relations(rank).into_par_iter().map(|(n, e)| (n, e.eval_with(dim, g).is_zero())).collect();
    for i in 1..=rank {
        res.push((format!("E{i}^dagger = F{i}"), g(Sym::E(i)).adjoint() == g(Sym::F(i))));
        res.push((format!("K{i}^dagger = K{i}"), g(Sym::K(i)).adjoint() == g(Sym::K(i))));
    }
    res
}

fn delta(a: usize, b: usize) -> bool {
    a == b
}

/// Residual of [F_i, M_jk] = d_ij M_{j+1,k} K_i^-2 - d_ik K_i^2 M_{j,k-1} - d_ij d_ik (K_i^2-K_i^-2)/(q-q^-1).
pub fn f_root_commutator_residual(rv: &RootVectors, i: usize, j: usize, k: usize) -> NCElement {
    let g = NCElement::gen;
    let ki2 = g(Sym::K(i)).mul(&g(Sym::K(i)));
    let kim2 = g(Sym::KInv(i)).mul(&g(Sym::KInv(i)));
    let mut rhs = NCElement::zero();
    if delta(i, j) {
        rhs = rhs.add(&rv.m(j + 1, k).mul(&kim2));
    }
    if delta(i, k) {
        rhs = rhs.sub(&ki2.mul(&rv.m(j, k - 1)));
    }
    if delta(i, j) && delta(i, k) {
        rhs = rhs.sub(&ki2.sub(&kim2).scale(&(QScalar::one() / (qi(1) - qi(-1)))));
    }
    g(Sym::F(i)).commutator(&rv.m(j, k)).sub(&rhs)
}

/// Residual of [E_i, N_jk^2 M_jk] = d_{i,j-1} q N_jk^2 M_ik - d_{i,k+1} N_jk^2 M_ji.
pub fn e_root_commutator_residual(rv: &RootVectors, i: usize, j: usize, k: usize) -> NCElement {
    let n2 = rv.n_sq(j, k);
    let lhs = NCElement::gen(Sym::E(i)).commutator(&n2.mul(&rv.m(j, k)));
    let mut rhs = NCElement::zero();
    if i + 1 == j {
        rhs = rhs.add(&n2.mul(&rv.m(i, k)).scale(&qi(1)));
    }
    if i == k + 1 {
        rhs = rhs.sub(&n2.mul(&rv.m(j, i)));
    }
    lhs.sub(&rhs)
}

/// Relation between C_q and C'_q, as an element that must vanish.
pub fn casimir_relation_residual(rv: &RootVectors, rep: &MatrixRep) -> QMatrix {
    let l = rv.ell() as i64;
    let c = gap_inv_sq();
    let cfull = casimir_matrix(rep, CasimirKind::Full);
    let cp = casimir_matrix(rep, CasimirKind::Prime);
    let dim = rep.dim();
    let kh = rep.khat_pow(rat(2, l));
    let mut rhs = kh.mul(&cp.add(&QMatrix::scalar(dim, &(QScalar::qint(l) * &c)))).scale(&qi(1));
    rhs = rhs.add(&rep.khat_pow(Rat::from_integer(-2)).scale(&(qi(-l) * &c)));
    for i in 1..=rv.ell() {
        let t = NCElement::product(&[&rv.m_star(i, rv.ell()), &rv.n_sq(i, rv.ell()), &rv.m(i, rv.ell())]);
        rhs = rhs.add(&t.eval(rep).scale(&qi(l + 1 - 2 * i as i64)));
    }
    rhs = rhs.sub(&QMatrix::scalar(dim, &(QScalar::qint(l + 1) * &c)));
    cfull.sub(&rhs)
}

/// Right-hand side of the coproduct formula for X_i.
pub fn x_coproduct_formula(rv: &RootVectors, i: usize) -> TensorElement {
    let l = rv.ell();
    let mut t = TensorElement::simple(&rv.x(i), &rv.n(i, i - 1));
    t = t.add(&TensorElement::simple(&NCElement::gen(Sym::KHat(Rat::from_integer(-1))), &rv.x(i)));
    let c = q(rat(-1, 2)) * (qi(1) - qi(-1));
    for j in i..l {
        t = t.add(&TensorElement::simple(&rv.x(j + 1), &rv.n(i, j).mul(&rv.m_star(i, j))).scale(&c));
    }
    t
}

/// [X_i^*, S^-1(X_j)] minus its closed form, for i >= j.
pub fn sxx_residual(rv: &RootVectors, i: usize, j: usize) -> NCElement {
    let lhs = rv.x(i).star().commutator(&rv.x(j).antipode_inverse());
    let rhs = if i > j {
        let kn = NCElement::gen(Sym::KHat(Rat::from_integer(-1)));
        let ninv = rv.n_inv(j, i - 1);
        NCElement::product(&[&ninv, &kn, &rv.m_star(j, i - 1).antipode_inverse()]).scale(&q(rat(1, 2)))
    } else {
        let up = rv.k_run(i, rv.ell(), 2);
        let down = rv.k_run(i, rv.ell(), -2);
        up.sub(&down).scale(&(-qi(1) / (qi(1) - qi(-1))))
    };
    lhs.sub(&rhs)
}

/// Evaluates `e` in rep and reports whether it vanishes.
fn vanishes(e: &NCElement, rep: &MatrixRep) -> bool {
    e.eval(rep).is_zero()
}

/// Verification suite for the algebra side.
pub fn verify_suite(ell_max: usize) -> Vec<Check> {
    let s = "uqsl";
    let mut checks = Vec::new();
    let reps = |l: usize, tensor_max: usize| {
        let p = fundamental_rep(l);
        let mut v = vec![p.clone()];
        if l <= tensor_max {
            v.push(tensor_rep(&p, &p));
        }
        if l <= 2 {
            v.push(tensor_rep(&v[v.len() - 1], &p));
        }
        v
    };
    checks.push(summarize(
        s,
        "defining relations in tensor powers of pi",
        (1..=ell_max).flat_map(|l| {
            reps(l, 3).into_iter().flat_map(move |r| {
                relation_results(l, r.dim(), &|x| r.gen(x)).into_iter().map(move |(n, ok)| (format!("l={l} {} {n}", r.label()), ok))
            })
        }),
    ));
    checks.push(summarize(
        s,
        "antipode squared is conjugation by K_2rho",
        (1..=ell_max).flat_map(|l| {
            let rv = RootVectors::new(l);
            let p = fundamental_rep(l);
            let gens: Vec<Sym> = (1..=l).flat_map(|i| [Sym::K(i), Sym::E(i), Sym::F(i)]).collect();
            gens.into_iter()
                .map(|h| {
                    let hh = NCElement::gen(h);
                    let lhs = hh.antipode().antipode();
                    let rhs = NCElement::product(&[&rv.k2rho(), &hh, &rv.k2rho_inv()]);
                    (format!("l={l} {h}"), vanishes(&lhs.sub(&rhs), &p))
                })
                .collect::<Vec<_>>()
        }),
    ));
    checks.push(summarize(
        s,
        "Hopf antipode axiom",
        (1..=ell_max).flat_map(|l| {
            let p = fundamental_rep(l);
            (1..=l)
                .flat_map(|i| [Sym::K(i), Sym::E(i), Sym::F(i), Sym::KHat(Rat::from_integer(1))])
                .map(|h| {
                    let hh = NCElement::gen(h);
                    let lhs = hh.coproduct().contract(|a| a.antipode());
                    let ok = lhs.eval(&p) == QMatrix::scalar(p.dim(), &hh.counit());
                    (format!("l={l} {h}"), ok)
                })
                .collect::<Vec<_>>()
        }),
    ));
    checks.extend(casimir_checks(ell_max.min(4), ell_max.min(3)));
    checks.extend(x_checks(ell_max.min(4)));
    checks
}

/// Casimir suite: scalar in pi, centrality, root vector commutators and the C/C' relation.
pub fn casimir_checks(ell_max: usize, tensor_max: usize) -> Vec<Check> {
    let s = "uqsl";
    let mut checks = Vec::new();
    let mut central = Vec::new();
    let mut f_comm = Vec::new();
    let mut e_comm = Vec::new();
    let mut relation = Vec::new();
    for l in 1..=ell_max {
        let rv = RootVectors::new(l);
        let p = fundamental_rep(l);
        let mut reps = vec![p.clone()];
        if l <= tensor_max {
            reps.push(tensor_rep(&p, &p));
        }
        if l <= tensor_max.min(2) {
            reps.push(tensor_rep(&reps[reps.len() - 1], &p));
        }
        let c = rv.casimir();
        for r in &reps {
            let cm = c.eval(r);
            for i in 1..=l {
                for g in [Sym::E(i), Sym::F(i), Sym::K(i)] {
                    central.push((format!("l={l} {} {g}", r.label()), cm.commutator(&r.gen(g)).is_zero()));
                }
            }
            let triples: Vec<(usize, usize, usize)> =
                (1..=l).flat_map(|i| (1..=l).flat_map(move |j| (j..=l).map(move |k| (i, j, k)))).collect();
            f_comm.extend(triples.par_iter().map(|&(i, j, k)| {
                (format!("l={l} {} i={i} j={j} k={k}", r.label()), vanishes(&f_root_commutator_residual(&rv, i, j, k), r))
            }).collect::<Vec<_>>());
            e_comm.extend(triples.par_iter().map(|&(i, j, k)| {
                (format!("l={l} {} i={i} j={j} k={k}", r.label()), vanishes(&e_root_commutator_residual(&rv, i, j, k), r))
            }).collect::<Vec<_>>());
            relation.push((format!("l={l} {}", r.label()), casimir_relation_residual(&rv, r).is_zero()));
        }
    }
    checks.push(summarize(s, "Casimir is central", central));
    checks.push(summarize(s, "commutators [F_i, M_jk]", f_comm));
    checks.push(summarize(s, "commutators [E_i, N_jk^2 M_jk]", e_comm));
    checks.push(summarize(s, "Casimir relation between C_q and C'_q", relation));
    checks
}

/// X-vector suite in pi.
pub fn x_checks(ell_max: usize) -> Vec<Check> {
    let s = "uqsl";
    let mut deb = Vec::new();
    let mut cop = Vec::new();
    let mut sxx = Vec::new();
    let mut adj = Vec::new();
    let mut nen = Vec::new();
    for l in 1..=ell_max {
        let rv = RootVectors::new(l);
        let p = fundamental_rep(l);
        let xs: Vec<QMatrix> = (1..=l).map(|i| rv.x(i).eval(&p)).collect();
        for i in 1..=l {
            for j in i + 1..=l {
                let r = xs[i - 1].mul(&xs[j - 1]).sub(&xs[j - 1].mul(&xs[i - 1]).scale(&qi(-1)));
                deb.push((format!("l={l} i={i} j={j}"), r.is_zero()));
            }
            let lhs = rv.x(i).coproduct().eval(&p, &p);
            let rhs = x_coproduct_formula(&rv, i).eval(&p, &p);
            cop.push((format!("l={l} i={i}"), lhs == rhs));
            for j in 1..=i {
                sxx.push((format!("l={l} i={i} j={j}"), vanishes(&sxx_residual(&rv, i, j), &p)));
            }
            let x = rv.x(i);
            let kh = adjoint_action(&x, &NCElement::gen(Sym::KHat(Rat::from_integer(1))));
            adj.push((format!("l={l} X{i} <| Kh"), vanishes(&kh.sub(&x.scale(&qi(1))), &p)));
            for j in 1..l {
                let e = adjoint_action(&x, &NCElement::gen(Sym::E(j)));
                let e_rhs = if i == j { rv.x(i + 1) } else { NCElement::zero() };
                adj.push((format!("l={l} X{i} <| E{j}"), vanishes(&e.sub(&e_rhs), &p)));
                let f = adjoint_action(&x, &NCElement::gen(Sym::F(j)));
                let f_rhs = if i == j + 1 { rv.x(i - 1) } else { NCElement::zero() };
                adj.push((format!("l={l} X{i} <| F{j}"), vanishes(&f.sub(&f_rhs), &p)));
                let k = adjoint_action(&x, &NCElement::gen(Sym::K(j)));
                let expo = rat(delta(i, j) as i64 - delta(i, j + 1) as i64, 2);
                adj.push((format!("l={l} X{i} <| K{j}"), vanishes(&k.sub(&x.scale(&q(expo))), &p)));
            }
        }
        for j in 1..=l {
            for k in 1..=l {
                let n2 = rv.n_sq(j, k).eval(&p);
                let n2inv = n2.diag_inverse().expect("N_jk invertible");
                for i in 1..=l {
                    let e = p.gen(Sym::E(i));
                    let ex = -(delta(i + 1, j) as i64) + delta(i, j) as i64 - delta(i, k) as i64 + delta(i, k + 1) as i64;
                    let ok = n2.mul(&e).mul(&n2inv) == e.scale(&qi(ex));
                    nen.push((format!("l={l} i={i} j={j} k={k}"), ok));
                }
            }
        }
    }
    vec![
        summarize(s, "X_i X_j = q^-1 X_j X_i for i<j", deb),
        summarize(s, "coproduct of X_i on pi x pi", cop),
        summarize(s, "[X_i^*, S^-1(X_j)] closed forms", sxx),
        summarize(s, "adjoint action on X_i", adj),
        summarize(s, "conjugation of E_i by N_jk^2", nen),
    ]
}
