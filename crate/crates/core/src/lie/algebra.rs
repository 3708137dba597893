//! The c-step nilpotent Lie algebra of a graph over the rationals.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hall::{bracket_label, lyndon_words, parse_label, witt, Expander, LyndonPoly, Word};
use super::table::BracketTable;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDoc};
use crate::linalg::{fmt_q, kernel, parse_q, rref, sparse_axpy, zeros, SparseVec, TrailingEchelon, Q};
use crate::perm::Permutation;

/// Default cap on the free Lie algebra dimension of any degree that is built.
pub const DEFAULT_BUDGET: usize = 5000;

/// Reduction of one degree of the free Lie algebra onto the quotient basis.
#[derive(Clone, Debug, Default)]
struct DegreeQuotient {
    index: HashMap<Word, usize>,
    image: Vec<SparseVec>,
}

/// `n_{Γ,c}` with a graded basis of Lyndon words and exact structure constants.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    graph: Graph,
    class: usize,
    words: Vec<Word>,
    offsets: Vec<usize>,
    table: BracketTable,
    quotients: Vec<DegreeQuotient>,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.class == other.class && self.words == other.words && self.table == other.table
    }
}

impl Eq for GradedAlgebra {}

pub fn build_algebra(g: &Graph, c: usize) -> Result<GradedAlgebra> {
    build_algebra_with_budget(g, c, DEFAULT_BUDGET)
}

/// Builds `n_{Γ,c}`: per degree, the relation span `W^{m-1}` is reduced in
/// Lyndon coordinates and the non-pivot Lyndon words survive as basis.
pub fn build_algebra_with_budget(g: &Graph, c: usize, budget: usize) -> Result<GradedAlgebra> {
    if c == 0 {
        return Err(Error::InvalidClass);
    }
    let n = g.vertex_count();
    let mut exp = Expander::new();
    let mut words: Vec<Word> = (0..n).map(|v| vec![v]).collect();
    let mut offsets = vec![0, n];
    let mut quotients = vec![DegreeQuotient {
        index: (0..n).map(|v| (vec![v], v)).collect(),
        image: (0..n).map(|v| SparseVec::from([(v, Q::one())])).collect(),
    }];
    let mut relations: Vec<LyndonPoly> = Vec::new();
    let mut dead = false;
    for m in 2..=c {
        if dead {
            offsets.push(words.len());
            quotients.push(DegreeQuotient::default());
            continue;
        }
        let free_dim = witt(n, m);
        if free_dim > budget {
            return Err(Error::BudgetExceeded { degree: m, dim: free_dim, cap: budget });
        }
        let lyndon = lyndon_words(n, m);
        let index: HashMap<Word, usize> = lyndon.iter().cloned().zip(0..).collect();
        let spanning: Vec<LyndonPoly> = if m == 2 {
            g.complement().edges().iter().map(|&(a, b)| LyndonPoly::from([(vec![a, b], Q::one())])).collect()
        } else {
            let mut out = Vec::new();
            for v in 0..n {
                let x = LyndonPoly::from([(vec![v], Q::one())]);
                for r in &relations {
                    out.push(exp.bracket(&x, r)?);
                }
            }
            out
        };
        let mut echelon = TrailingEchelon::new();
        for r in spanning {
            echelon.insert(r.into_iter().map(|(w, x)| (index[&w], x)).collect());
            if echelon.rank() == lyndon.len() {
                break;
            }
        }
        if echelon.rank() == lyndon.len() {
            dead = true;
            offsets.push(words.len());
            quotients.push(DegreeQuotient::default());
            continue;
        }
        echelon.fully_reduce();
        let offset = words.len();
        let mut global = vec![usize::MAX; lyndon.len()];
        for (h, w) in lyndon.iter().enumerate() {
            if echelon.row(h).is_none() {
                global[h] = words.len();
                words.push(w.clone());
            }
        }
        let image: Vec<SparseVec> = (0..lyndon.len())
            .map(|h| match echelon.row(h) {
                None => SparseVec::from([(global[h], Q::one())]),
                Some(row) => row.iter().filter(|(j, _)| **j != h).map(|(j, x)| (global[*j], -x.clone())).collect(),
            })
            .collect();
        debug_assert!(words.len() > offset);
        offsets.push(words.len());
        quotients.push(DegreeQuotient { index, image });
        relations = echelon.rows().map(|r| r.iter().map(|(h, x)| (lyndon[*h].clone(), x.clone())).collect()).collect();
    }
    let mut alg = GradedAlgebra {
        graph: g.clone(),
        class: c,
        words,
        offsets,
        table: BracketTable::default(),
        quotients,
    };
    alg.table = alg.compute_table(&mut exp)?;
    Ok(alg)
}

impl GradedAlgebra {
    fn compute_table(&self, exp: &mut Expander) -> Result<BracketTable> {
        let degrees: Vec<usize> = self.words.iter().map(Vec::len).collect();
        let mut table = BracketTable::new(degrees.clone());
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if degrees[i] + degrees[j] > self.class {
                    continue;
                }
                let a = LyndonPoly::from([(self.words[i].clone(), Q::one())]);
                let b = LyndonPoly::from([(self.words[j].clone(), Q::one())]);
                let v = self.reduce(&exp.bracket(&a, &b)?);
                table.set(i, j, v);
            }
        }
        Ok(table)
    }

    /// Image in the quotient basis of a homogeneous free Lie polynomial.
    pub fn reduce(&self, p: &LyndonPoly) -> SparseVec {
        let mut out = SparseVec::new();
        for (w, x) in p {
            let m = w.len();
            if m == 0 || m > self.class {
                continue;
            }
            if let Some(&h) = self.quotients[m - 1].index.get(w) {
                sparse_axpy(&mut out, x, &self.quotients[m - 1].image[h]);
            }
        }
        out
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    /// Lyndon word of each basis vector.
    pub fn basis_words(&self) -> &[Word] {
        &self.words
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.words[i].len()
    }

    /// Basis indices of degree `m` (1-based degree).
    pub fn degree_range(&self, m: usize) -> std::ops::Range<usize> {
        if m == 0 || m > self.class {
            return 0..0;
        }
        self.offsets[m - 1]..self.offsets[m]
    }

    /// Bracket labels such as `[a,[b,c]]`; degree-one labels are vertex names.
    pub fn labels(&self) -> Vec<String> {
        self.words.iter().map(|w| bracket_label(w, self.graph.vertices())).collect()
    }

    /// Vertex names in degree one, `z1, z2, ...` above.
    pub fn short_names(&self) -> Vec<String> {
        let n = self.graph.vertex_count();
        (0..self.dim()).map(|i| if i < n { self.graph.label(i).to_string() } else { format!("z{}", i - n + 1) }).collect()
    }

    pub fn bracket(&self, v: &SparseVec, w: &SparseVec) -> SparseVec {
        self.table.bracket(v, w)
    }

    /// Per-degree dimensions `1..=c`.
    pub fn graded_dimensions(&self) -> Vec<usize> {
        (1..=self.class).map(|m| self.degree_range(m).len()).collect()
    }

    /// `dim γ_i` for `i = 1..=c+1`, read off the grading.
    pub fn lower_central_dims(&self) -> Vec<usize> {
        let dims = self.graded_dimensions();
        (0..=self.class).map(|i| dims[i..].iter().sum()).collect()
    }

    /// The graded automorphism extending the graph automorphism `theta`.
    pub fn induced_automorphism(&self, theta: &Permutation) -> Result<LinearMap> {
        if theta.degree() != self.graph.vertex_count() || !self.graph.is_automorphism(theta.images()) {
            return Err(Error::NotAutomorphism);
        }
        let mut exp = Expander::new();
        let cols = self
            .words
            .iter()
            .map(|w| Ok(self.reduce(&exp.relabel(w, theta.images())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap { cols, is_lie_automorphism: true })
    }

    /// Diagonal automorphism scaling each vertex `v` by `psi[v]`.
    pub fn vertex_diagonal(&self, psi: &[Q]) -> Result<LinearMap> {
        if psi.len() != self.graph.vertex_count() {
            return Err(Error::InvalidDocument(format!(
                "{} scales for {} vertices",
                psi.len(),
                self.graph.vertex_count()
            )));
        }
        if let Some(v) = psi.iter().position(Zero::is_zero) {
            return Err(Error::ZeroScale(self.graph.label(v).to_string()));
        }
        let cols = self
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| SparseVec::from([(i, w.iter().fold(Q::one(), |acc, &v| acc * &psi[v]))]))
            .collect();
        Ok(LinearMap { cols, is_lie_automorphism: true })
    }

    /// Vertices spanning the degree-one projection of the center.
    pub fn center_projection(&self) -> Result<Vec<usize>> {
        let dim = self.dim();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for i in 0..dim {
            // coordinate k of [v, e_i] = sum_j v_j c_{j,i}^k
            let mut block = vec![zeros(dim); dim];
            let mut any = false;
            for j in 0..dim {
                for (k, x) in self.table.basis_bracket(j, i) {
                    block[k][j] = x;
                    any = true;
                }
            }
            if any {
                rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
            }
        }
        let center = kernel(&rows, dim);
        let n = self.graph.vertex_count();
        let mut proj: Vec<Vec<Q>> = center.into_iter().map(|v| v[..n].to_vec()).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        if proj.is_empty() {
            return Ok(Vec::new());
        }
        let pivots = rref(&mut proj);
        for row in &proj {
            if row.iter().filter(|x| !x.is_zero()).count() != 1 {
                return Err(Error::Internal("center projection is not spanned by vertices".into()));
            }
        }
        Ok(pivots)
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        let labels = self.labels();
        AlgebraDoc {
            graph: self.graph.to_doc(),
            class: self.class,
            basis: (1..=self.class).map(|m| self.degree_range(m).map(|i| labels[i].clone()).collect()).collect(),
            brackets: table_to_docs(&self.table),
        }
    }

    /// Reads a document back. The basis must be the graph's own adapted
    /// basis; the bracket table is taken as written so that it can be audited.
    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self> {
        let graph = Graph::from_doc(&doc.graph)?;
        let mut alg = build_algebra(&graph, doc.class)?;
        if doc.basis.len() != doc.class {
            return Err(Error::InvalidDocument(format!("{} degrees listed for class {}", doc.basis.len(), doc.class)));
        }
        let lookup: HashMap<String, usize> = graph.vertices().iter().cloned().zip(0..).collect();
        let mut words = Vec::new();
        for (m, labels) in doc.basis.iter().enumerate() {
            for l in labels {
                let w = parse_label(l, &lookup)?;
                if w.len() != m + 1 {
                    return Err(Error::InvalidDocument(format!("label `{l}` listed in degree {}", m + 1)));
                }
                words.push(w);
            }
        }
        if words != alg.words {
            return Err(Error::InvalidDocument("basis differs from the graph's adapted basis".into()));
        }
        alg.table = table_from_docs(alg.table.degrees().to_vec(), &doc.brackets)?;
        Ok(alg)
    }

    /// Aligned text report: dimensions, basis legend and nonzero brackets.
    pub fn render_text(&self) -> String {
        let names = self.short_names();
        let labels = self.labels();
        let mut out = String::new();
        let dims: Vec<String> = self.graded_dimensions().iter().map(usize::to_string).collect();
        let _ = writeln!(out, "graded dimensions: {}", dims.join(" "));
        let _ = writeln!(out, "dimension: {}", self.dim());
        let _ = writeln!(out, "basis:");
        for m in 1..=self.class {
            let r = self.degree_range(m);
            if m == 1 {
                let _ = writeln!(out, "  degree 1: {}", r.map(|i| names[i].clone()).collect::<Vec<_>>().join(" "));
            } else {
                let items: Vec<String> = r.map(|i| format!("{} = {}", names[i], labels[i])).collect();
                let _ = writeln!(out, "  degree {m}: {}", items.join(", "));
            }
        }
        let _ = writeln!(out, "brackets:");
        out.push_str(&render_table(&self.table, &names));
        out
    }
}

/// Renders nonzero brackets as aligned `[x,y] = ...` lines.
pub fn render_table(table: &BracketTable, names: &[String]) -> String {
    let lines: Vec<(String, String)> = table
        .entries()
        .iter()
        .map(|((i, j), v)| (format!("[{},{}]", names[*i], names[*j]), render_combination(v, names)))
        .collect();
    let width = lines.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (l, r) in lines {
        let pad = width - l.chars().count();
        let _ = writeln!(out, "  {l}{} = {r}", " ".repeat(pad));
    }
    out
}

/// `2 z1 - 1/3 z2`, `z1`, `-z3`.
pub fn render_combination(v: &SparseVec, names: &[String]) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (k, x)) in v.iter().enumerate() {
        let neg = x < &Q::zero();
        let abs = if neg { -x.clone() } else { x.clone() };
        let coeff = if abs.is_one() { String::new() } else { format!("{} ", fmt_q(&abs)) };
        match (n, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&coeff);
        out.push_str(&names[*k]);
    }
    out
}

/// A linear map given by the images of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    cols: Vec<SparseVec>,
    pub is_lie_automorphism: bool,
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        Self { cols: (0..dim).map(|i| SparseVec::from([(i, Q::one())])).collect(), is_lie_automorphism: true }
    }

    pub fn from_columns(cols: Vec<SparseVec>) -> Self {
        Self { cols, is_lie_automorphism: false }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v {
            sparse_axpy(&mut out, x, &self.cols[*j]);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
            is_lie_automorphism: self.is_lie_automorphism && other.is_lie_automorphism,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.len() == 1 && c.get(&j).is_some_and(One::is_one))
    }

    /// Row-major dense matrix.
    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        let mut m = vec![zeros(n); n];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                m[*i][j] = x.clone();
            }
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        crate::linalg::rank(&self.to_dense()) == self.dim()
    }

    /// `f[e_i, e_j] = [f e_i, f e_j]` for all basis pairs.
    pub fn preserves_brackets(&self, table: &BracketTable) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.apply(&table.basis_bracket(i, j)) == table.bracket(&self.cols[i], &self.cols[j]))
        })
    }
}

/// One nonzero bracket `[e_i, e_j] = sum coeffs`, indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub graph: GraphDoc,
    pub class: usize,
    pub basis: Vec<Vec<String>>,
    pub brackets: Vec<BracketDoc>,
}

pub fn table_to_docs(table: &BracketTable) -> Vec<BracketDoc> {
    table
        .entries()
        .iter()
        .map(|((i, j), v)| BracketDoc { i: i + 1, j: j + 1, coeffs: v.iter().map(|(k, x)| (k + 1, fmt_q(x))).collect() })
        .collect()
}

pub fn table_from_docs(degrees: Vec<usize>, docs: &[BracketDoc]) -> Result<BracketTable> {
    let dim = degrees.len();
    let mut table = BracketTable::new(degrees);
    let in_range = |k: usize| k >= 1 && k <= dim;
    for d in docs {
        if !in_range(d.i) || !in_range(d.j) || d.i >= d.j {
            return Err(Error::InvalidDocument(format!("bracket index pair ({}, {}) out of order or range", d.i, d.j)));
        }
        let mut v = SparseVec::new();
        for (k, s) in &d.coeffs {
            if !in_range(*k) {
                return Err(Error::InvalidDocument(format!("coefficient index {k} out of range")));
            }
            let x = parse_q(s).ok_or_else(|| Error::InvalidDocument(format!("bad rational `{s}`")))?;
            if !x.is_zero() {
                v.insert(k - 1, x);
            }
        }
        table.set(d.i - 1, d.j - 1, v);
    }
    Ok(table)
}
