//! Multi-indices, shifts, complements, shuffles and inversion counts.

use std::fmt;

use crate::check::{summarize, Check};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombError {
    #[error("degree {k} out of range for rank {ell}")]
    DegreeOutOfRange { ell: usize, k: usize },
    #[error("invalid multi-index {0:?}")]
    InvalidIndex(Vec<usize>),
    #[error("cannot shift {index:?} at {j} in direction {dir}")]
    InvalidShift { index: Vec<usize>, j: usize, dir: char },
    #[error("{j} does not occur in {index:?}")]
    NotPresent { j: usize, index: Vec<usize> },
    #[error("not a permutation: {0:?}")]
    NotBijection(Vec<usize>),
}

/// Strictly increasing tuple 1 <= i_1 < ... < i_k <= ell.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex {
    ell: usize,
    entries: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShiftDir {
    Up,
    Down,
}

impl MultiIndex {
    pub fn new(ell: usize, entries: Vec<usize>) -> Result<Self, CombError> {
        let ok = entries.iter().all(|&e| e >= 1 && e <= ell) && entries.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(MultiIndex { ell, entries })
        } else {
            Err(CombError::InvalidIndex(entries))
        }
    }

    pub fn empty(ell: usize) -> Self {
        MultiIndex { ell, entries: Vec::new() }
    }

    pub fn full(ell: usize) -> Self {
        MultiIndex { ell, entries: (1..=ell).collect() }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// |i|, the sum of the entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.entries.binary_search(&j).is_ok()
    }

    /// i with j inserted; None when j is already present or out of range.
    pub fn with(&self, j: usize) -> Option<Self> {
        if j == 0 || j > self.ell {
            return None;
        }
        match self.entries.binary_search(&j) {
            Ok(_) => None,
            Err(p) => {
                let mut e = self.entries.clone();
                e.insert(p, j);
                Some(MultiIndex { ell: self.ell, entries: e })
            }
        }
    }

    /// i with j removed; None when j is absent.
    pub fn without(&self, j: usize) -> Option<Self> {
        let p = self.entries.binary_search(&j).ok()?;
        let mut e = self.entries.clone();
        e.remove(p);
        Some(MultiIndex { ell: self.ell, entries: e })
    }

    /// Sub-tuple picked by 1-based positions (in the given order).
    pub fn pick(&self, positions: &[usize]) -> Vec<usize> {
        positions.iter().map(|&p| self.entries[p - 1]).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, e) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

fn subsets(ell: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for v in start..=ell {
        if ell - v + 1 < k - cur.len() {
            break;
        }
        cur.push(v);
        subsets(ell, k, v + 1, cur, out);
        cur.pop();
    }
}

/// All k-subsets of {1..ell} in lexicographic order.
pub fn enumerate_multiindices(ell: usize, k: usize) -> Result<Vec<MultiIndex>, CombError> {
    if k > ell {
        return Err(CombError::DegreeOutOfRange { ell, k });
    }
    let mut out = Vec::new();
    subsets(ell, k, 1, &mut Vec::new(), &mut out);
    Ok(out.into_iter().map(|entries| MultiIndex { ell, entries }).collect())
}

/// j#i: occurrences of j minus occurrences of j+1.
pub fn sharp(j: usize, i: &MultiIndex) -> i32 {
    i.contains(j) as i32 - i.contains(j + 1) as i32
}

/// i^{j,+} replaces j by j+1; i^{j,-} replaces j+1 by j.
pub fn shift(i: &MultiIndex, j: usize, dir: ShiftDir) -> Result<MultiIndex, CombError> {
    let s = sharp(j, i);
    let (need, from, to, c) = match dir {
        ShiftDir::Up => (1, j, j + 1, '+'),
        ShiftDir::Down => (-1, j + 1, j, '-'),
    };
    if s != need {
        return Err(CombError::InvalidShift { index: i.entries.clone(), j, dir: c });
    }
    let entries = i.entries.iter().map(|&e| if e == from { to } else { e }).collect();
    Ok(MultiIndex { ell: i.ell, entries })
}

/// {1..ell} minus i, ordered.
pub fn complement(i: &MultiIndex) -> MultiIndex {
    MultiIndex { ell: i.ell, entries: (1..=i.ell).filter(|v| !i.contains(*v)).collect() }
}

/// 1-based position of j inside i.
pub fn position(j: usize, i: &MultiIndex) -> Result<usize, CombError> {
    i.entries
        .binary_search(&j)
        .map(|p| p + 1)
        .map_err(|_| CombError::NotPresent { j, index: i.entries.clone() })
}

/// Bijection of {1..n}, stored as the image sequence (p(1), ..., p(n)).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, CombError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(CombError::NotBijection(images));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// p(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// (self o other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        Permutation { images: other.images.iter().map(|&i| self.images[i - 1]).collect() }
    }

    /// Block permutation a x b acting on {1..a.len()} and the rest.
    pub fn block(a: &Self, b: &Self) -> Self {
        let k = a.len();
        let mut images = a.images.clone();
        images.extend(b.images.iter().map(|v| v + k));
        Permutation { images }
    }

    /// Ascending on positions 1..=h and on h+1..=n.
    pub fn is_shuffle(&self, h: usize) -> bool {
        self.images[..h].windows(2).all(|w| w[0] < w[1]) && self.images[h..].windows(2).all(|w| w[0] < w[1])
    }
}

/// ||p||, the number of inversions.
pub fn inversion_count(p: &Permutation) -> usize {
    let v = &p.images;
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                c += 1;
            }
        }
    }
    c
}

/// S^{(h)}_{h+k}: permutations ascending on the first h and on the last k positions.
pub fn enumerate_shuffles(h: usize, k: usize) -> Vec<Permutation> {
    let n = h + k;
    let mut firsts = Vec::new();
    subsets(n, h, 1, &mut Vec::new(), &mut firsts);
    firsts
        .into_iter()
        .map(|a| {
            let mut images = a.clone();
            images.extend((1..=n).filter(|v| !a.contains(v)));
            Permutation { images }
        })
        .collect()
}

fn perms_rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
    if rest.is_empty() {
        out.push(Permutation { images: cur.clone() });
        return;
    }
    for idx in 0..rest.len() {
        let v = rest.remove(idx);
        cur.push(v);
        perms_rec(rest, cur, out);
        cur.pop();
        rest.insert(idx, v);
    }
}

/// All of S_n in lexicographic order of image sequences.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    perms_rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

fn delta(a: usize, b: usize) -> i32 {
    (a == b) as i32
}

pub fn verify_suite() -> Vec<Check> {
    let s = "combinatorics";
    let all = |ell: usize| -> Vec<MultiIndex> {
        (0..=ell).flat_map(|k| enumerate_multiindices(ell, k).expect("k <= ell")).collect()
    };
    let mut raise = Vec::new();
    let mut comm = Vec::new();
    let mut compl = Vec::new();
    let mut claim = Vec::new();
    for ell in 1..=6 {
        for i in all(ell) {
            for j in 1..ell {
                let up = shift(&i, j, ShiftDir::Up).ok();
                for l in 1..ell {
                    if let Some(ij) = &up {
                        let expect = sharp(l, &i) - 2 * delta(j, l) + delta(j, l + 1) + delta(j + 1, l);
                        raise.push((format!("l={ell} i={i} j={j} l={l}"), sharp(l, ij) == expect));
                    }
                    let a = up.as_ref().map_or(0, |ij| (sharp(l, ij) == -1) as i32);
                    let b = shift(&i, l, ShiftDir::Down).map_or(0, |il| (sharp(j, &il) == 1) as i32);
                    comm.push((format!("l={ell} i={i} j={j} l={l}"), a - b == delta(j, l) * sharp(j, &i)));
                }
                if let Some(ij) = &up {
                    let ok = shift(&complement(&i), j, ShiftDir::Down).is_ok_and(|c| c == complement(ij));
                    compl.push((format!("l={ell} i={i} j={j}"), ok));
                }
            }
            for j in (1..=ell).filter(|&j| !i.contains(j)) {
                let ij = i.with(j).expect("j not in i");
                let lhs = position(j, &complement(&i)).expect("j in complement") + position(j, &ij).expect("j added");
                claim.push((format!("l={ell} i={i} j={j}"), lhs == j + 1));
            }
        }
    }
    let mut checks = vec![
        summarize(s, "sharp after raising", raise),
        summarize(s, "raising and lowering delta identity", comm),
        summarize(s, "complement of raised index", compl),
        summarize(s, "positions in complement and union", claim),
    ];

    let mut fact = Vec::new();
    for n in 1..=6 {
        let total = all_permutations(n).len();
        for k in 0..=n {
            let parabolic: Vec<Permutation> = all_permutations(k)
                .iter()
                .flat_map(|a| all_permutations(n - k).into_iter().map(move |b| Permutation::block(a, &b)))
                .collect();
            let mut seen = std::collections::HashSet::new();
            let mut additive = true;
            for sh in enumerate_shuffles(k, n - k) {
                for h in &parabolic {
                    let p = sh.compose(h);
                    additive &= inversion_count(&p) == inversion_count(&sh) + inversion_count(h);
                    seen.insert(p);
                }
            }
            let unique = seen.len() == total && total == parabolic.len() * enumerate_shuffles(k, n - k).len();
            fact.push((format!("n={n} k={k}"), additive && unique));
        }
    }
    checks.push(summarize(s, "unique shuffle factorization with additive length", fact));

    let inv = (0..=7).flat_map(|n| {
        all_permutations(n)
            .into_iter()
            .map(move |p| (format!("n={n} {:?}", p.images()), inversion_count(&p) == inversion_count(&p.inverse())))
    });
    checks.push(summarize(s, "inversions of the inverse", inv));
    checks
}
