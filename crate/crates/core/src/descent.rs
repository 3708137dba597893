//! Rational and real forms of graph Lie algebras: descent data over
//! multi-quadratic fields, fixed-point forms, real-form enumeration,
//! classification and indecomposability.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::automorphisms::{
    chi_action, conjugate_data, involution_classes, quotient_automorphisms, splitting_r, FiniteGroup,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, MultiQuadraticField};
use crate::graph::{Graph, GraphDoc, QuotientGraph};
use crate::lie::algebra::{render_table, table_from_docs, table_to_docs, BracketDoc};
use crate::lie::{build_algebra, BracketTable, GradedAlgebra, LinearMap};
use crate::linalg::{kernel, solve_columns, to_sparse, zeros, SparseVec, TrailingEchelon, Q};
use crate::perm::Permutation;

/// A field `L = Q(√d1..√dk)` and the images `φ_j ∈ Aut(Γ̄)` of its sign-flip generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentDatum {
    field: MultiQuadraticField,
    images: Vec<Permutation>,
}

impl DescentDatum {
    /// The datum of the standard form: `L = Q`, no generators.
    pub fn trivial() -> Self {
        Self { field: MultiQuadraticField::rationals(), images: Vec::new() }
    }

    /// Validates that the images are commuting involutive quotient
    /// automorphisms generating a group of order `2^k`.
    pub fn new(q: &QuotientGraph, field: MultiQuadraticField, images: Vec<Permutation>) -> Result<Self> {
        let k = field.rank();
        if images.len() != k {
            return Err(Error::InvalidDatum(format!("{k} radicand(s) but {} image(s)", images.len())));
        }
        for phi in &images {
            if phi.degree() != q.len() || !q.is_automorphism(phi.images()) {
                return Err(Error::InvalidDatum(format!("{phi} is not an automorphism of the quotient graph")));
            }
            if !phi.is_involution() {
                return Err(Error::InvalidDatum(format!("{phi} is not an involution")));
            }
        }
        for (i, a) in images.iter().enumerate() {
            for b in &images[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return Err(Error::InvalidDatum(format!("{a} and {b} do not commute")));
                }
            }
        }
        let order = FiniteGroup::generated_by(q.len(), &images).order();
        if order != 1 << k {
            return Err(Error::InvalidDatum(format!(
                "images generate a group of order {order}, not {}; the morphism is not injective, \
                 so shrink the field to the fixed field of its kernel",
                1usize << k
            )));
        }
        Ok(Self { field, images })
    }

    /// Radicands and 1-based cycle-notation images.
    pub fn parse(q: &QuotientGraph, radicands: &[i64], images: &[&str]) -> Result<Self> {
        let field = MultiQuadraticField::new(radicands)?;
        let images = images.iter().map(|s| Permutation::parse_cycles(s, q.len())).collect::<Result<Vec<_>>>()?;
        Self::new(q, field, images)
    }

    pub fn field(&self) -> &MultiQuadraticField {
        &self.field
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.field.rank()
    }

    pub fn is_trivial(&self) -> bool {
        self.images.is_empty()
    }
}

/// JSON form of a datum, as used in classification spec files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDoc {
    pub field: Vec<i64>,
    pub images: Vec<String>,
}

impl DatumDoc {
    pub fn to_datum(&self, q: &QuotientGraph) -> Result<DescentDatum> {
        let images: Vec<&str> = self.images.iter().map(String::as_str).collect();
        DescentDatum::parse(q, &self.field, &images)
    }

    pub fn of(datum: &DescentDatum) -> Self {
        Self {
            field: datum.field.radicands().to_vec(),
            images: datum.images.iter().map(Permutation::to_cycle_string).collect(),
        }
    }
}

/// Vectors of `n^L`: one field element per algebra basis vector.
pub type LVector = Vec<FieldElement>;

fn induced_maps(a: &GradedAlgebra, datum: &DescentDatum) -> Result<Vec<LinearMap>> {
    let q = a.graph().quotient_graph();
    datum.images.iter().map(|phi| a.induced_automorphism(&splitting_r(&q, phi))).collect()
}

fn apply_to_lvector(f: &MultiQuadraticField, m: &LinearMap, v: &[FieldElement]) -> LVector {
    let mut out = vec![f.zero(); v.len()];
    for (b, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, c) in m.column(b) {
            out[*k] = out[*k].add(&x.scale(c));
        }
    }
    out
}

/// `v ↦ M_j(σ_j v)`: conjugate coefficients by `σ_j`, then apply the
/// automorphism induced by `r(φ_j)`.
pub fn semilinear_apply(a: &GradedAlgebra, datum: &DescentDatum, j: usize, v: &[FieldElement]) -> Result<LVector> {
    let f = &datum.field;
    let conj: LVector = v.iter().map(|x| f.conjugate(j, x)).collect();
    let maps = induced_maps(a, datum)?;
    Ok(apply_to_lvector(f, &maps[j], &conj))
}

fn flatten(v: &[FieldElement], d: usize) -> Vec<Q> {
    let mut out = zeros(v.len() * d);
    for (b, x) in v.iter().enumerate() {
        for (t, c) in x.0.iter().enumerate() {
            out[b * d + t] = c.clone();
        }
    }
    out
}

fn unflatten(v: &[Q], d: usize) -> LVector {
    v.chunks(d).map(|c| FieldElement(c.to_vec())).collect()
}

fn lie_bracket(table: &BracketTable, f: &MultiQuadraticField, u: &[FieldElement], v: &[FieldElement]) -> LVector {
    let mut out = vec![f.zero(); u.len()];
    for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            if a == b {
                continue;
            }
            let e = table.basis_bracket(a, b);
            if e.is_empty() {
                continue;
            }
            let xy = f.mul(x, y);
            for (k, c) in e {
                out[k] = out[k].add(&xy.scale(&c));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormMode {
    /// Kernel of the stacked fixed-point system, degree by degree.
    Echelon,
    /// Orbit sums and `√d`-scaled orbit differences in degree one and
    /// brackets of those above; requires one radicand.
    PaperBasis,
}

/// A `Q`-basis of the fixed subalgebra `n_ρ` and its bracket table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormPresentation {
    graph: Graph,
    class: usize,
    field: MultiQuadraticField,
    images: Vec<Permutation>,
    names: Vec<String>,
    vectors: Vec<LVector>,
    table: BracketTable,
}

/// Computes `n_ρ = {v : M_j(σ_j v) = v for all j}` and its structure constants.
pub fn compute_fixed_form(a: &GradedAlgebra, datum: &DescentDatum, mode: FormMode) -> Result<FormPresentation> {
    let q = a.graph().quotient_graph();
    let datum = DescentDatum::new(&q, datum.field.clone(), datum.images.clone())?;
    let maps = induced_maps(a, &datum)?;
    let (names, vectors) = match mode {
        FormMode::Echelon => echelon_basis(a, &datum, &maps)?,
        FormMode::PaperBasis => paper_basis(a, &datum, &q, &maps)?,
    };
    let degrees: Vec<usize> = vectors.iter().map(|v| lvector_degree(a, v)).collect();
    let table = form_table(a, &datum.field, &vectors, &degrees)?;
    Ok(FormPresentation {
        graph: a.graph().clone(),
        class: a.class(),
        field: datum.field,
        images: datum.images,
        names,
        vectors,
        table,
    })
}

fn lvector_degree(a: &GradedAlgebra, v: &[FieldElement]) -> usize {
    v.iter().position(|x| !x.is_zero()).map_or(0, |b| a.degree_of(b))
}

fn echelon_basis(a: &GradedAlgebra, datum: &DescentDatum, maps: &[LinearMap]) -> Result<(Vec<String>, Vec<LVector>)> {
    let f = &datum.field;
    let d = f.degree();
    let mut vectors = Vec::new();
    for m in 1..=a.class() {
        let range = a.degree_range(m);
        let nm = range.len();
        if nm == 0 {
            continue;
        }
        let unknowns = nm * d;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (j, map) in maps.iter().enumerate() {
            // row (b', t): s_j(t) sum_b M[b', b] x[b, t] - x[b', t]
            let mut block = vec![zeros(unknowns); unknowns];
            for (bl, b) in range.clone().enumerate() {
                for (k, c) in map.column(b) {
                    let kl = k - range.start;
                    for t in 0..d {
                        let s = if t >> j & 1 == 1 { -c.clone() } else { c.clone() };
                        block[kl * d + t][bl * d + t] += s;
                    }
                }
            }
            for (i, row) in block.iter_mut().enumerate() {
                row[i] -= Q::one();
            }
            rows.extend(block);
        }
        let ker = kernel(&rows, unknowns);
        if ker.len() != nm {
            return Err(Error::Internal(format!(
                "fixed space in degree {m} has dimension {}, expected {nm}",
                ker.len()
            )));
        }
        for v in ker {
            let mut full = vec![f.zero(); a.dim()];
            for (bl, chunk) in unflatten(&v, d).into_iter().enumerate() {
                full[range.start + bl] = chunk;
            }
            vectors.push(full);
        }
    }
    let names = if datum.is_trivial() {
        a.short_names()
    } else {
        (1..=vectors.len()).map(|i| format!("F{i}")).collect()
    };
    Ok((names, vectors))
}

const LETTERS: [&str; 10] = ["X", "Y", "U", "V", "W", "P", "Q", "R", "S", "T"];

fn letter(i: usize) -> String {
    LETTERS.get(i).map_or_else(|| format!("L{}_", i + 1), |s| s.to_string())
}

fn paper_basis(
    a: &GradedAlgebra,
    datum: &DescentDatum,
    q: &QuotientGraph,
    maps: &[LinearMap],
) -> Result<(Vec<String>, Vec<LVector>)> {
    if datum.rank() != 1 {
        return Err(Error::InvalidDatum(format!(
            "paper-basis mode needs exactly one radicand, got {}",
            datum.rank()
        )));
    }
    let f = &datum.field;
    let d = f.degree();
    let theta = splitting_r(q, &datum.images[0]);
    let n = a.graph().vertex_count();
    let one = f.one();
    let root = f.sqrt_basis(1);
    let mut names = Vec::new();
    let mut vectors: Vec<LVector> = Vec::new();
    let mut letters: Vec<usize> = Vec::new();
    let mut covered = vec![false; n];
    let mut next_letter = 0;
    for v in 0..n {
        if covered[v] {
            continue;
        }
        let u = theta.apply(v);
        let l = letter(next_letter);
        let mut sum = vec![f.zero(); a.dim()];
        sum[v] = one.clone();
        covered[v] = true;
        if u != v {
            sum[u] = one.clone();
            let mut diff = vec![f.zero(); a.dim()];
            diff[v] = root.clone();
            diff[u] = root.neg();
            covered[u] = true;
            names.push(format!("{l}1"));
            vectors.push(sum);
            letters.push(next_letter);
            names.push(format!("{l}2"));
            vectors.push(diff);
            letters.push(next_letter);
        } else {
            names.push(format!("{l}1"));
            vectors.push(sum);
            letters.push(next_letter);
        }
        next_letter += 1;
    }
    let degree_one = vectors.len();
    let mut z = 0;
    let mut previous: Vec<usize> = (0..degree_one).collect();
    for m in 2..=a.class() {
        let target = a.degree_range(m).len();
        if target == 0 {
            break;
        }
        let candidates: Vec<(usize, usize)> = if m == 2 {
            let pairs: Vec<(usize, usize)> =
                (0..degree_one).flat_map(|i| (i + 1..degree_one).map(move |j| (i, j))).collect();
            let (mixed, same): (Vec<_>, Vec<_>) = pairs.into_iter().partition(|&(i, j)| letters[i] != letters[j]);
            mixed.into_iter().chain(same).collect()
        } else {
            (0..degree_one).flat_map(|i| previous.iter().map(move |&j| (i, j))).collect()
        };
        let mut echelon = TrailingEchelon::new();
        let mut chosen = Vec::new();
        for (i, j) in candidates {
            let br = lie_bracket(a.table(), f, &vectors[i], &vectors[j]);
            if echelon.insert(to_sparse(&flatten(&br, d))) {
                z += 1;
                names.push(format!("Z{z}"));
                chosen.push(vectors.len());
                vectors.push(br);
                if chosen.len() == target {
                    break;
                }
            }
        }
        if chosen.len() != target {
            return Err(Error::Internal(format!("degree {m} brackets span {} of {target} dimensions", chosen.len())));
        }
        previous = chosen;
    }
    debug_assert!(vectors.iter().all(|v| maps.iter().enumerate().all(|(j, m)| {
        let conj: LVector = v.iter().map(|x| f.conjugate(j, x)).collect();
        apply_to_lvector(f, m, &conj) == *v
    })));
    Ok((names, vectors))
}

fn form_table(a: &GradedAlgebra, f: &MultiQuadraticField, vectors: &[LVector], degrees: &[usize]) -> Result<BracketTable> {
    let d = f.degree();
    let flat: Vec<Vec<Q>> = vectors.iter().map(|v| flatten(v, d)).collect();
    let mut table = BracketTable::new(degrees.to_vec());
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let br = lie_bracket(a.table(), f, &vectors[i], &vectors[j]);
            if br.iter().all(FieldElement::is_zero) {
                continue;
            }
            let target = degrees[i] + degrees[j];
            let idx: Vec<usize> = (0..vectors.len()).filter(|&k| degrees[k] == target).collect();
            let cols: Vec<Vec<Q>> = idx.iter().map(|&k| flat[k].clone()).collect();
            let coeffs = solve_columns(&cols, &flatten(&br, d)).ok_or_else(|| {
                Error::Internal(format!("bracket of form vectors {} and {} leaves the form", i + 1, j + 1))
            })?;
            let v: SparseVec = idx.into_iter().zip(coeffs).filter(|(_, x)| !x.is_zero()).collect();
            table.set(i, j, v);
        }
    }
    Ok(table)
}

impl FormPresentation {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vectors(&self) -> &[LVector] {
        &self.vectors
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn field(&self) -> &MultiQuadraticField {
        &self.field
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn degrees(&self) -> &[usize] {
        self.table.degrees()
    }

    /// Forms over a real field are forms of the real algebra.
    pub fn is_real(&self) -> bool {
        self.field.is_real()
    }

    pub fn graded_dimensions(&self) -> Vec<usize> {
        (1..=self.class).map(|m| self.degrees().iter().filter(|&&x| x == m).count()).collect()
    }

    /// Vectors flattened to rational coordinates, basis vector major.
    pub fn rational_coordinates(&self) -> Vec<Vec<Q>> {
        self.vectors.iter().map(|v| flatten(v, self.field.degree())).collect()
    }

    /// `[name_i, name_j]` in the form basis, or `None` for unknown names.
    pub fn bracket_by_name(&self, x: &str, y: &str) -> Option<SparseVec> {
        let i = self.names.iter().position(|n| n == x)?;
        let j = self.names.iter().position(|n| n == y)?;
        Some(self.table.basis_bracket(i, j))
    }

    fn render_vector(&self, v: &[FieldElement], labels: &[String]) -> String {
        let mut out = String::new();
        for (b, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let s = self.field.format(x);
            let nonzero = x.0.iter().filter(|c| !c.is_zero()).count();
            let term = match s.as_str() {
                "1" => labels[b].clone(),
                "-1" => format!("-{}", labels[b]),
                _ if nonzero > 1 => format!("({s})*{}", labels[b]),
                _ => format!("{s}*{}", labels[b]),
            };
            match (out.is_empty(), term.strip_prefix('-')) {
                (true, _) => out.push_str(&term),
                (false, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (false, None) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn render_text(&self, a: &GradedAlgebra) -> String {
        let labels = a.labels();
        let mut out = String::new();
        let _ = writeln!(out, "field: {}", self.field);
        let imgs: Vec<String> = self.images.iter().map(Permutation::to_cycle_string).collect();
        let _ = writeln!(out, "images: {}", if imgs.is_empty() { "none".to_string() } else { imgs.join(", ") });
        let dims: Vec<String> = self.graded_dimensions().iter().map(usize::to_string).collect();
        let _ = writeln!(out, "graded dimensions: {}", dims.join(" "));
        let _ = writeln!(out, "basis:");
        let width = self.names.iter().map(String::len).max().unwrap_or(0);
        for (name, v) in self.names.iter().zip(&self.vectors) {
            let _ = writeln!(out, "  {name:<width$} = {}", self.render_vector(v, &labels));
        }
        let _ = writeln!(out, "brackets:");
        out.push_str(&render_table(&self.table, &self.names));
        out
    }

    pub fn to_doc(&self) -> FormDoc {
        let a_labels = match build_algebra(&self.graph, self.class) {
            Ok(a) => a.labels(),
            Err(_) => Vec::new(),
        };
        FormDoc {
            graph: self.graph.to_doc(),
            class: self.class,
            field: self.field.radicands().to_vec(),
            images: self.images.iter().map(Permutation::to_cycle_string).collect(),
            basis: self
                .names
                .iter()
                .zip(&self.vectors)
                .zip(self.degrees())
                .map(|((name, v), deg)| FormVectorDoc {
                    name: name.clone(),
                    degree: *deg,
                    coords: v
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(b, x)| (a_labels[b].clone(), self.field.format(x)))
                        .collect(),
                })
                .collect(),
            brackets: table_to_docs(&self.table),
        }
    }

    pub fn from_doc(doc: &FormDoc) -> Result<Self> {
        let graph = Graph::from_doc(&doc.graph)?;
        let a = build_algebra(&graph, doc.class)?;
        let q = graph.quotient_graph();
        let images: Vec<&str> = doc.images.iter().map(String::as_str).collect();
        let datum = DescentDatum::parse(&q, &doc.field, &images)?;
        let labels = a.labels();
        let mut names = Vec::new();
        let mut vectors = Vec::new();
        let mut degrees = Vec::new();
        for v in &doc.basis {
            let mut lv = vec![datum.field.zero(); a.dim()];
            for (label, value) in &v.coords {
                let b = labels
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::InvalidDocument(format!("unknown basis label `{label}`")))?;
                lv[b] = datum.field.parse(value)?;
            }
            names.push(v.name.clone());
            vectors.push(lv);
            degrees.push(v.degree);
        }
        let table = table_from_docs(degrees, &doc.brackets)?;
        Ok(Self { graph, class: doc.class, field: datum.field, images: datum.images, names, vectors, table })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormVectorDoc {
    pub name: String,
    pub degree: usize,
    pub coords: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub graph: GraphDoc,
    pub class: usize,
    pub field: Vec<i64>,
    pub images: Vec<String>,
    pub basis: Vec<FormVectorDoc>,
    pub brackets: Vec<BracketDoc>,
}

/// Whether an `L`-vector is fixed by every twisted generator.
pub fn is_fixed(a: &GradedAlgebra, datum: &DescentDatum, v: &[FieldElement]) -> Result<bool> {
    for j in 0..datum.rank() {
        if semilinear_apply(a, datum, j, v)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rational matrix `C` with `to_i = sum_k C[i][k] from_k`, if the bases span
/// the same rational subspace.
pub fn change_of_basis(from: &FormPresentation, to: &FormPresentation) -> Option<Vec<Vec<Q>>> {
    if from.dim() != to.dim() || from.field.degree() != to.field.degree() {
        return None;
    }
    let cols = from.rational_coordinates();
    let out: Option<Vec<Vec<Q>>> = to.rational_coordinates().iter().map(|t| solve_columns(&cols, t)).collect();
    out.filter(|m| crate::linalg::invert(m).is_some())
}

/// A real form: an involution class representative and its presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealForm {
    pub involution: Permutation,
    pub form: FormPresentation,
}

/// One real form per involution class of `Aut(Γ̄)`: the trivial datum for the
/// identity and `Q(√-1)` with the involution otherwise.
pub fn enumerate_real_forms(a: &GradedAlgebra, bound: usize) -> Result<Vec<RealForm>> {
    let q = a.graph().quotient_graph();
    let group = quotient_automorphisms(&q, bound)?;
    involution_classes(&group)
        .into_iter()
        .map(|phi| {
            let form = if phi.is_identity() {
                compute_fixed_form(a, &DescentDatum::trivial(), FormMode::Echelon)?
            } else {
                let datum = DescentDatum::new(&q, MultiQuadraticField::new(&[-1])?, vec![phi.clone()])?;
                compute_fixed_form(a, &datum, FormMode::PaperBasis)?
            };
            Ok(RealForm { involution: phi, form })
        })
        .collect()
}

/// Number of real forms without building them.
pub fn real_form_count(g: &Graph, bound: usize) -> Result<usize> {
    let q = g.quotient_graph();
    Ok(involution_classes(&quotient_automorphisms(&q, bound)?).len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormCount {
    One,
    Infinite,
}

/// Exactly one rational form iff `Aut(Γ̄)` is trivial.
pub fn rational_form_count(g: &Graph, bound: usize) -> Result<FormCount> {
    let group = quotient_automorphisms(&g.quotient_graph(), bound)?;
    Ok(if group.is_trivial() { FormCount::One } else { FormCount::Infinite })
}

/// Isomorphism classes of rational forms among `data`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// Indices into the input, grouped; classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
    /// Whether each class consists of forms of the real algebra.
    pub real: Vec<bool>,
}

/// `ρ_a` rewritten on the generators of `b`'s field, when both fields agree.
fn aligned_images(a: &DescentDatum, b: &DescentDatum, degree: usize) -> Option<Vec<Permutation>> {
    if a.rank() != b.rank() || !a.field.same_field(&b.field) {
        return None;
    }
    let subsets: Vec<usize> = a.field.radicands().iter().map(|&d| b.field.subset_of(d)).collect::<Option<_>>()?;
    Some(
        (0..b.rank())
            .map(|i| {
                (0..a.rank())
                    .filter(|&j| subsets[j] >> i & 1 == 1)
                    .fold(Permutation::identity(degree), |acc, j| acc.compose(&a.images[j]))
            })
            .collect(),
    )
}

/// Equivalent data: same field, and one quotient automorphism conjugates
/// the images once the Galois generators are matched.
pub fn equivalent_data(group: &FiniteGroup, a: &DescentDatum, b: &DescentDatum) -> bool {
    match aligned_images(a, b, group.degree()) {
        Some(rho) => conjugate_data(group, &rho, &b.images),
        None => false,
    }
}

pub fn classify_rational_data(g: &Graph, data: &[DescentDatum], bound: usize) -> Result<Classification> {
    let q = g.quotient_graph();
    let group = quotient_automorphisms(&q, bound)?;
    let mut checked = Vec::with_capacity(data.len());
    for d in data {
        checked.push(DescentDatum::new(&q, d.field.clone(), d.images.clone())?);
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, d) in checked.iter().enumerate() {
        match classes.iter_mut().find(|c| equivalent_data(&group, &checked[c[0]], d)) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let real = classes.iter().map(|c| checked[c[0]].field.is_real()).collect();
    Ok(Classification { classes, real })
}

/// Indecomposable iff the images act transitively on connected components.
pub fn is_indecomposable(g: &Graph, datum: &DescentDatum) -> Result<bool> {
    let cc = g.connected_components();
    if cc.len() <= 1 {
        return Ok(true);
    }
    let q = g.quotient_graph();
    let gens = datum.images.iter().map(|phi| chi_action(&q, &cc, phi)).collect::<Result<Vec<_>>>()?;
    let group = FiniteGroup::generated_by(cc.len(), &gens);
    let mut orbit: Vec<usize> = group.elements().iter().map(|p| p.apply(0)).collect();
    orbit.sort_unstable();
    orbit.dedup();
    Ok(orbit.len() == cc.len())
}
