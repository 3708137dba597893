//! Multi-quadratic number fields `Q(√d1, ..., √dk)` with exact arithmetic.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{fmt_q, parse_q, q, Q};

fn is_squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// `√a √b = coeff √c` for signed squarefree `a`, `b`.
fn sqrt_product(a: i64, b: i64) -> (i64, i64) {
    let g = a.abs().gcd(&b.abs());
    let c = (a / g) * (b / g);
    let coeff = if a < 0 && b < 0 { -g } else { g };
    (coeff, c)
}

/// `Q(√d1, ..., √dk)` with basis `√m_T` over subsets `T` of the generators,
/// where `m_T` is the signed squarefree part of the product of `d_j`, `j ∈ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiQuadraticField {
    radicands: Vec<i64>,
    basis: Vec<i64>,
}

impl MultiQuadraticField {
    /// Validates radicands (squarefree, not 0 or 1, multiplicatively independent).
    pub fn new(radicands: &[i64]) -> Result<Self> {
        for &d in radicands {
            if d == 0 || d == 1 {
                return Err(Error::InvalidField(format!("radicand {d} is not allowed")));
            }
            if d.unsigned_abs() > 1 << 40 {
                return Err(Error::InvalidField(format!("radicand {d} is too large")));
            }
            if !is_squarefree(d) {
                return Err(Error::InvalidField(format!("radicand {d} is not squarefree")));
            }
        }
        let k = radicands.len();
        if k > 16 {
            return Err(Error::InvalidField(format!("{k} radicands exceed the supported 16")));
        }
        let mut basis = vec![1i64; 1 << k];
        for t in 1..basis.len() {
            let j = t.trailing_zeros() as usize;
            basis[t] = sqrt_product(basis[t & (t - 1)], radicands[j]).1;
            if basis[t] == 1 {
                let subset: Vec<String> = (0..k).filter(|i| t >> i & 1 == 1).map(|i| radicands[i].to_string()).collect();
                return Err(Error::InvalidField(format!(
                    "radicands are dependent: the product of {} is a square",
                    subset.join(", ")
                )));
            }
        }
        Ok(Self { radicands: radicands.to_vec(), basis })
    }

    /// `Q` itself.
    pub fn rationals() -> Self {
        Self { radicands: vec![], basis: vec![1] }
    }

    pub fn radicands(&self) -> &[i64] {
        &self.radicands
    }

    /// Number of generators `k`.
    pub fn rank(&self) -> usize {
        self.radicands.len()
    }

    /// Degree `2^k` over `Q`.
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// `m_T` for each subset `T` (bitmask).
    pub fn basis_radicands(&self) -> &[i64] {
        &self.basis
    }

    pub fn is_real(&self) -> bool {
        self.radicands.iter().all(|&d| d > 0)
    }

    /// Same field: equal sets of basis radicands.
    pub fn same_field(&self, other: &Self) -> bool {
        let mut a = self.basis.clone();
        let mut b = other.basis.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// The subset `T` with `m_T = m`, if any.
    pub fn subset_of(&self, m: i64) -> Option<usize> {
        self.basis.iter().position(|&x| x == m)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![Q::zero(); self.degree()])
    }

    pub fn from_rational(&self, x: Q) -> FieldElement {
        let mut v = vec![Q::zero(); self.degree()];
        v[0] = x;
        FieldElement(v)
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Q::one())
    }

    /// `√m_T`.
    pub fn sqrt_basis(&self, t: usize) -> FieldElement {
        let mut v = vec![Q::zero(); self.degree()];
        v[t] = Q::one();
        FieldElement(v)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = vec![Q::zero(); self.degree()];
        for (s, x) in a.0.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (t, y) in b.0.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let (coeff, _) = sqrt_product(self.basis[s], self.basis[t]);
                out[s ^ t] += x * y * q(coeff);
            }
        }
        FieldElement(out)
    }

    /// The generator `σ_j`: negates `√m_T` for every `T` containing `j`.
    pub fn conjugate(&self, j: usize, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().enumerate().map(|(t, x)| if t >> j & 1 == 1 { -x.clone() } else { x.clone() }).collect())
    }

    pub fn format(&self, a: &FieldElement) -> String {
        let mut out = String::new();
        for (t, x) in a.0.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let neg = x.is_negative();
            let abs = x.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (t, abs.is_one()) {
                (0, _) => out.push_str(&fmt_q(&abs)),
                (_, true) => out.push_str(&format!("sqrt({})", self.basis[t])),
                (_, false) => out.push_str(&format!("{}*sqrt({})", fmt_q(&abs), self.basis[t])),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Inverse of [`format`](Self::format).
    pub fn parse(&self, text: &str) -> Result<FieldElement> {
        let bad = || Error::InvalidDocument(format!("bad field element `{text}`"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'(' | b'*' | b'/') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut out = self.zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-Q::one(), b),
                None => (Q::one(), term.strip_prefix('+').unwrap_or(term)),
            };
            let (coeff, t) = match body.find("sqrt(") {
                None => (parse_q(body).ok_or_else(bad)?, 0),
                Some(pos) => {
                    let inner = body[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
                    let m: i64 = inner.parse().map_err(|_| bad())?;
                    let t = self.subset_of(m).ok_or_else(bad)?;
                    let c = match &body[..pos] {
                        "" => Q::one(),
                        pre => parse_q(pre.strip_suffix('*').ok_or_else(bad)?).ok_or_else(bad)?,
                    };
                    (c, t)
                }
            };
            out.0[t] += sign * coeff;
        }
        Ok(out)
    }
}

/// Rational coordinates over the basis `√m_T` of a [`MultiQuadraticField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(pub Vec<Q>);

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().skip(1).all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, x: &Q) -> Self {
        Self(self.0.iter().map(|a| a * x).collect())
    }
}

impl fmt::Display for MultiQuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicands.is_empty() {
            return f.write_str("Q");
        }
        let parts: Vec<String> = self.radicands.iter().map(|d| format!("sqrt({d})")).collect();
        write!(f, "Q({})", parts.join(", "))
    }
}
