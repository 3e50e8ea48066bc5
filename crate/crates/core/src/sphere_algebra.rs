//! Normal forms in the coordinate algebra of the quantum odd sphere, generated by
//! z_1..z_{l+1} and their adjoints.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::check::{summarize, Check};
use crate::qscalar::QScalar;

/// z_index, or its adjoint when `star` is set; indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub star: bool,
}

impl Letter {
    pub fn z(index: usize) -> Self {
        Letter { index, star: false }
    }

    pub fn zs(index: usize) -> Self {
        Letter { index, star: true }
    }

    /// Position in the normal order: unstarred ascending, then starred descending.
    fn key(self) -> (u8, i64) {
        if self.star {
            (1, -(self.index as i64))
        } else {
            (0, self.index as i64)
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}{}", self.index, if self.star { "*" } else { "" })
    }
}

pub type Word = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedexOrder {
    Leftmost,
    Rightmost,
}

/// Formal sum of words with `QScalar` coefficients over the sphere of rank l.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpherePoly {
    ell: usize,
    terms: BTreeMap<Word, QScalar>,
}

impl SpherePoly {
    pub fn zero(ell: usize) -> Self {
        SpherePoly { ell, terms: BTreeMap::new() }
    }

    pub fn scalar(ell: usize, c: QScalar) -> Self {
        Self::term(ell, Vec::new(), c)
    }

    pub fn one(ell: usize) -> Self {
        Self::scalar(ell, QScalar::one())
    }

    pub fn term(ell: usize, w: Word, c: QScalar) -> Self {
        let mut p = Self::zero(ell);
        p.add_term(w, c);
        p
    }

    pub fn word(ell: usize, w: Word) -> Self {
        Self::term(ell, w, QScalar::one())
    }

    pub fn gen(ell: usize, l: Letter) -> Self {
        assert!((1..=ell + 1).contains(&l.index), "generator index out of range");
        Self::word(ell, vec![l])
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn terms(&self) -> &BTreeMap<Word, QScalar> {
        &self.terms
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

    /// Some(c) when the polynomial is the scalar c.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-QScalar::one()))
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        let mut out = Self::zero(self.ell);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// Concatenation product, without reduction.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.ell);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// Adjoint: reverses words, stars letters and conjugates coefficients.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.ell);
        for (w, c) in &self.terms {
            let sw = w.iter().rev().map(|l| Letter { index: l.index, star: !l.star }).collect();
            out.add_term(sw, c.conj());
        }
        out
    }

    /// (deg_z, deg_z*) of every term.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        self.terms
            .keys()
            .map(|w| {
                let s = w.iter().filter(|l| l.star).count();
                (w.len() - s, s)
            })
            .collect()
    }
}

impl fmt::Display for SpherePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let ws: Vec<String> = w.iter().map(|l| l.to_string()).collect();
                if ws.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", ws.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Replacement for an out-of-order adjacent pair (a, b), as (coefficient, word) terms.
fn swap_rule(a: Letter, b: Letter) -> Vec<(QScalar, Word)> {
    let q = QScalar::q_int;
    match (a.star, b.star) {
        // z_j z_i = q^-1 z_i z_j, i < j
        (false, false) => vec![(q(-1), vec![b, a])],
        // z_i* z_j* = q^-1 z_j* z_i*, i < j
        (true, true) => vec![(q(-1), vec![b, a])],
        (true, false) if a.index != b.index => vec![(q(1), vec![b, a])],
        (true, false) => {
            let i = a.index;
            let mut out = vec![(QScalar::one(), vec![b, a])];
            let c = QScalar::one() - q(2);
            for j in 1..i {
                out.push((c.clone(), vec![Letter::z(j), Letter::zs(j)]));
            }
            out
        }
        (false, true) => unreachable!("z z* pairs are already ordered"),
    }
}

fn redex(w: &[Letter], strategy: RedexOrder) -> Option<usize> {
    let mut it = (0..w.len().saturating_sub(1)).filter(|&p| w[p].key() > w[p + 1].key());
    match strategy {
        RedexOrder::Leftmost => it.next(),
        RedexOrder::Rightmost => it.last(),
    }
}

/// Rewrites a word until it is normal ordered, optionally eliminating z_{l+1} z_{l+1}*.
struct Reducer {
    ell: usize,
    sphere: bool,
    strategy: RedexOrder,
    memo: HashMap<Word, Vec<(Word, QScalar)>>,
}

impl Reducer {
    fn new(ell: usize, sphere: bool, strategy: RedexOrder) -> Self {
        Reducer { ell, sphere, strategy, memo: HashMap::new() }
    }

    fn reduce_word(&mut self, w: &Word) -> Vec<(Word, QScalar)> {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let mut acc: BTreeMap<Word, QScalar> = BTreeMap::new();
        let push = |acc: &mut BTreeMap<Word, QScalar>, w: Word, c: QScalar| {
            let e = acc.entry(w).or_insert_with(QScalar::zero);
            *e += c;
        };
        if let Some(p) = redex(w, self.strategy) {
            for (c, mid) in swap_rule(w[p], w[p + 1]) {
                let mut nw = w[..p].to_vec();
                nw.extend(mid);
                nw.extend_from_slice(&w[p + 2..]);
                for (rw, rc) in self.reduce_word(&nw) {
                    push(&mut acc, rw, &c * &rc);
                }
            }
        } else if let Some(p) = self.sphere_position(w) {
            // z_L z_L* = 1 - sum_{j<L} z_j z_j*
            let top = self.ell + 1;
            let mut rest = w[..p].to_vec();
            rest.extend_from_slice(&w[p + 2..]);
            for (rw, rc) in self.reduce_word(&rest) {
                push(&mut acc, rw, rc);
            }
            for j in 1..top {
                let mut nw = w[..p].to_vec();
                nw.push(Letter::z(j));
                nw.push(Letter::zs(j));
                nw.extend_from_slice(&w[p + 2..]);
                for (rw, rc) in self.reduce_word(&nw) {
                    push(&mut acc, rw, -rc);
                }
            }
        } else {
            push(&mut acc, w.clone(), QScalar::one());
        }
        let out: Vec<(Word, QScalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.memo.insert(w.clone(), out.clone());
        out
    }

    fn sphere_position(&self, w: &[Letter]) -> Option<usize> {
        if !self.sphere {
            return None;
        }
        let top = self.ell + 1;
        (0..w.len().saturating_sub(1)).find(|&p| w[p] == Letter::z(top) && w[p + 1] == Letter::zs(top))
    }

    fn reduce(&mut self, p: &SpherePoly) -> SpherePoly {
        let mut out = SpherePoly::zero(p.ell);
        for (w, c) in &p.terms {
            for (rw, rc) in self.reduce_word(w) {
                out.add_term(rw, c * &rc);
            }
        }
        out
    }
}

/// Normal ordering by the commutation relations only.
pub fn normal_order(p: &SpherePoly) -> SpherePoly {
    Reducer::new(p.ell, false, RedexOrder::Leftmost).reduce(p)
}

/// Normal form: normal order with z_{l+1} z_{l+1}* eliminated by the sphere relation.
pub fn normal_form(p: &SpherePoly) -> SpherePoly {
    normal_form_with(p, RedexOrder::Leftmost)
}

pub fn normal_form_with(p: &SpherePoly, strategy: RedexOrder) -> SpherePoly {
    Reducer::new(p.ell, true, strategy).reduce(p)
}

pub fn is_normal(p: &SpherePoly) -> bool {
    let top = p.ell + 1;
    p.terms.keys().all(|w| {
        redex(w, RedexOrder::Leftmost).is_none() && !(w.contains(&Letter::z(top)) && w.contains(&Letter::zs(top)))
    })
}

/// z^j = z_1^{j_1} ... z_{l+1}^{j_{l+1}}.
pub fn monomial(j: &[usize]) -> Word {
    j.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(Letter::z(i + 1)).take(e)).collect()
}

/// All (j_1, ..., j_parts) with non-negative entries summing to n.
pub fn compositions(parts: usize, n: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(parts - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// c_N = sum_{|j| = N} [j]! z^j (z^j)*.
pub fn partition_sum(ell: usize, n: usize) -> SpherePoly {
    let mut out = SpherePoly::zero(ell);
    for j in compositions(ell + 1, n) {
        let jj: Vec<u32> = j.iter().map(|&x| x as u32).collect();
        let m = SpherePoly::word(ell, monomial(&j));
        out = out.add(&m.mul(&m.star()).scale(&QScalar::qmultinom(&jj)));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionCheck {
    pub holds: bool,
    pub summands: usize,
    pub residual: SpherePoly,
}

/// Reduces c_N and compares it with 1.
pub fn partition_of_unity_check(ell: usize, n: usize) -> PartitionCheck {
    let c = partition_sum(ell, n);
    let summands = c.len();
    let residual = normal_form(&c).sub(&SpherePoly::one(ell));
    PartitionCheck { holds: residual.is_zero(), summands, residual }
}

/// Inserts sum_i z_i z_i* between z^j and (z^j)* in every summand of c_N.
pub fn partition_sum_inserted(ell: usize, n: usize) -> SpherePoly {
    let mut out = SpherePoly::zero(ell);
    let mut unit = SpherePoly::zero(ell);
    for i in 1..=ell + 1 {
        unit.add_term(vec![Letter::z(i), Letter::zs(i)], QScalar::one());
    }
    for j in compositions(ell + 1, n) {
        let jj: Vec<u32> = j.iter().map(|&x| x as u32).collect();
        let m = SpherePoly::word(ell, monomial(&j));
        out = out.add(&m.mul(&unit).mul(&m.star()).scale(&QScalar::qmultinom(&jj)));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// Every term has deg_z* - deg_z = N.
    Pure(i64),
    Mixed,
}

/// Charge N with K-hat eigenvalue q^(lN/(l+1)), read off as deg_z* - deg_z.
pub fn khat_grading(p: &SpherePoly) -> Grading {
    let mut ns = p.degrees().into_iter().map(|(z, s)| s as i64 - z as i64);
    match ns.next() {
        None => Grading::Pure(0),
        Some(first) => {
            if ns.all(|x| x == first) {
                Grading::Pure(first)
            } else {
                Grading::Mixed
            }
        }
    }
}

/// Random polynomial with up to `terms` words of length at most `max_len`.
pub fn random_poly(rng: &mut StdRng, ell: usize, terms: usize, max_len: usize) -> SpherePoly {
    let mut p = SpherePoly::zero(ell);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let w: Word =
            (0..len).map(|_| Letter { index: rng.gen_range(1..=ell + 1), star: rng.gen_bool(0.5) }).collect();
        p.add_term(w, QScalar::from_int(rng.gen_range(1..4)) * QScalar::q_int(rng.gen_range(-2..3)));
    }
    p
}

pub fn verify_suite(ell_max: usize) -> Vec<Check> {
    let s = "sphere";
    let mut checks = Vec::new();
    let l = 1;
    let z = |i| SpherePoly::gen(l, Letter::z(i));
    let zs = |i| SpherePoly::gen(l, Letter::zs(i));
    let ex = vec![
        ("z2 z1 = q^-1 z1 z2".to_string(), normal_form(&z(2).mul(&z(1))) == z(1).mul(&z(2)).scale(&QScalar::q_int(-1))),
        ("z1* z1 = z1 z1*".to_string(), normal_form(&zs(1).mul(&z(1))) == z(1).mul(&zs(1))),
        ("sum z_i z_i* = 1".to_string(), normal_form(&z(1).mul(&zs(1)).add(&z(2).mul(&zs(2)))) == SpherePoly::one(l)),
    ];
    checks.push(summarize(s, "rewriting examples", ex));

    let cases: Vec<(usize, usize)> = (1..=ell_max.min(3)).flat_map(|l| (0..=4usize).map(move |n| (l, n))).collect();
    let pou: Vec<(String, bool)> = cases
        .par_iter()
        .filter(|(l, n)| l * n <= 8)
        .map(|&(l, n)| {
            let r = partition_of_unity_check(l, n);
            let count = compositions(l + 1, n).len();
            let expected = binom(n + l, l);
            (format!("l={l} N={n}"), r.holds && r.summands == expected && count == expected)
        })
        .collect();
    checks.push(summarize(s, "partition of unity", pou));

    let mut rec = Vec::new();
    for l in 1..=ell_max.min(2) {
        for n in 0..=3 {
            let a = normal_order(&partition_sum_inserted(l, n));
            let b = normal_order(&partition_sum(l, n + 1));
            rec.push((format!("l={l} N={n}"), a == b));
        }
    }
    checks.push(summarize(s, "inserting the sphere relation steps c_N to c_N+1", rec));

    let mut rng = StdRng::seed_from_u64(7);
    let mut conf = Vec::new();
    for t in 0..200 {
        let l = 1 + t % ell_max.clamp(1, 3);
        let p = random_poly(&mut rng, l, 3, 6);
        let a = normal_form_with(&p, RedexOrder::Leftmost);
        let b = normal_form_with(&p, RedexOrder::Rightmost);
        conf.push((format!("sample {t}"), a == b && normal_form(&a) == a && is_normal(&a)));
    }
    checks.push(summarize(s, "strategy independence and idempotence", conf));

    let gr = vec![
        ("z1* has charge 1".to_string(), khat_grading(&zs(1)) == Grading::Pure(1)),
        ("z1 z2* has charge 0".to_string(), khat_grading(&z(1).mul(&zs(2))) == Grading::Pure(0)),
        ("1 has charge 0".to_string(), khat_grading(&SpherePoly::one(l)) == Grading::Pure(0)),
        ("z1 + z1* is mixed".to_string(), khat_grading(&z(1).add(&zs(1))) == Grading::Mixed),
    ];
    checks.push(summarize(s, "charge grading", gr));
    checks
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
