//! Lyndon words, their standard bracketing and decomposition of Lie
//! polynomials in the resulting basis of the free Lie algebra.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;

/// A word over the alphabet `0..n`.
pub type Word = Vec<usize>;

/// Homogeneous noncommutative polynomial, keyed by word.
pub type WordPoly = BTreeMap<Word, Q>;

/// Lie polynomial in Lyndon coordinates, keyed by Lyndon word.
pub type LyndonPoly = BTreeMap<Word, Q>;

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of length exactly `m` over `0..n`, in lexicographic order.
pub fn lyndon_words(n: usize, m: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || m == 0 {
        return out;
    }
    // Duval's generation of all Lyndon words of length <= m in lexicographic order.
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == m {
            out.push(w.clone());
        }
        let base = w.clone();
        while w.len() < m {
            w.push(base[w.len() % base.len()]);
        }
        while w.last() == Some(&(n - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => return out,
        }
    }
}

/// Lyndon words of each length `1..=c`.
pub fn hall_basis(n: usize, c: usize) -> Vec<Vec<Word>> {
    (1..=c).map(|m| lyndon_words(n, m)).collect()
}

fn mobius(mut n: usize) -> i128 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of degree `m` of the free Lie algebra on `n` generators.
pub fn witt(n: usize, m: usize) -> usize {
    if m == 0 {
        return 0;
    }
    let total: i128 = (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| mobius(d) * (n as i128).saturating_pow((m / d) as u32))
        .sum();
    usize::try_from(total / m as i128).unwrap_or(usize::MAX)
}

/// `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[usize]) -> (&[usize], &[usize]) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("length >= 2");
    (&w[..i], &w[i..])
}

/// Renders the standard bracketing, e.g. `[x,[y,z]]`.
pub fn bracket_label(w: &[usize], names: &[String]) -> String {
    if w.len() == 1 {
        return names[w[0]].clone();
    }
    let (u, v) = standard_factorization(w);
    format!("[{},{}]", bracket_label(u, names), bracket_label(v, names))
}

/// Leaves of a bracket label such as `[x,[y,z]]`, resolved through `lookup`.
pub fn parse_label(label: &str, lookup: &HashMap<String, usize>) -> Result<Word> {
    let mut leaves = Vec::new();
    for tok in label.split(['[', ']', ',']).filter(|t| !t.is_empty()) {
        let t = tok.trim();
        leaves.push(*lookup.get(t).ok_or_else(|| Error::UnknownVertex(t.to_string()))?);
    }
    if leaves.is_empty() {
        return Err(Error::InvalidDocument(format!("empty basis label `{label}`")));
    }
    Ok(leaves)
}

pub fn poly_add_scaled(acc: &mut WordPoly, a: &Q, p: &WordPoly) {
    if a.is_zero() {
        return;
    }
    for (w, x) in p {
        let e = acc.entry(w.clone()).or_insert_with(Q::zero);
        *e += a * x;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

/// `pq - qp` in the free associative algebra.
pub fn commutator(p: &WordPoly, q: &WordPoly) -> WordPoly {
    let mut out = WordPoly::new();
    for (u, a) in p {
        for (v, b) in q {
            let ab = a * b;
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            let mut vu = v.clone();
            vu.extend_from_slice(u);
            for (w, s) in [(uv, ab.clone()), (vu, -ab)] {
                let e = out.entry(w.clone()).or_insert_with(Q::zero);
                *e += s;
                if e.is_zero() {
                    out.remove(&w);
                }
            }
        }
    }
    out
}

/// Caches word expansions of standard bracketings.
#[derive(Debug, Default)]
pub struct Expander {
    cache: HashMap<Word, WordPoly>,
}

impl Expander {
    pub fn new() -> Self {
        Self::default()
    }

    /// Word expansion of the standard bracketing of a Lyndon word.
    pub fn expansion(&mut self, w: &[usize]) -> WordPoly {
        if let Some(p) = self.cache.get(w) {
            return p.clone();
        }
        let p = if w.len() == 1 {
            WordPoly::from([(w.to_vec(), Q::one())])
        } else {
            let (u, v) = standard_factorization(w);
            let (pu, pv) = (self.expansion(u), self.expansion(v));
            commutator(&pu, &pv)
        };
        self.cache.insert(w.to_vec(), p.clone());
        p
    }

    /// Word expansion of a Lie polynomial given in Lyndon coordinates.
    pub fn expand(&mut self, p: &LyndonPoly) -> WordPoly {
        let mut out = WordPoly::new();
        for (w, x) in p {
            let e = self.expansion(w);
            poly_add_scaled(&mut out, x, &e);
        }
        out
    }

    /// Writes a Lie polynomial in the Lyndon basis. The standard bracketing
    /// of `w` is `w` plus lexicographically larger words, so peeling off
    /// the least word terminates.
    pub fn decompose(&mut self, mut p: WordPoly) -> Result<LyndonPoly> {
        let mut out = LyndonPoly::new();
        while let Some((w, x)) = p.first_key_value().map(|(w, x)| (w.clone(), x.clone())) {
            if !is_lyndon(&w) {
                return Err(Error::Internal(format!("word {w:?} leads a non-Lie polynomial")));
            }
            let e = self.expansion(&w);
            poly_add_scaled(&mut p, &-x.clone(), &e);
            out.insert(w, x);
        }
        Ok(out)
    }

    /// Bracket of two Lie polynomials in Lyndon coordinates.
    pub fn bracket(&mut self, a: &LyndonPoly, b: &LyndonPoly) -> Result<LyndonPoly> {
        let (pa, pb) = (self.expand(a), self.expand(b));
        self.decompose(commutator(&pa, &pb))
    }

    /// Image of a Lyndon basis element under the letter substitution `theta`.
    pub fn relabel(&mut self, w: &[usize], theta: &[usize]) -> Result<LyndonPoly> {
        let e = self.expansion(w);
        let mapped: WordPoly = e.into_iter().map(|(u, x)| (u.iter().map(|&i| theta[i]).collect(), x)).collect();
        self.decompose(mapped)
    }
}
