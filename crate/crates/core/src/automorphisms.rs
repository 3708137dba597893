//! Automorphism groups of a graph and of its quotient graph, the splitting
//! morphism, involution classes and the action on connected components.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, QuotientGraph};
use crate::perm::Permutation;

/// Default search bound on vertices (for `Aut(Γ)`) and components (for `Aut(Γ̄)`).
pub const DEFAULT_BOUND: usize = 10;

/// A permutation group stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

/// Serialized group: elements in 1-based cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub degree: usize,
    pub order: usize,
    pub elements: Vec<String>,
}

impl FiniteGroup {
    pub fn trivial(degree: usize) -> Self {
        Self { degree, elements: vec![Permutation::identity(degree)] }
    }

    /// Checks closure and sorts; the identity comes first.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        if elements.iter().any(|p| p.degree() != degree) {
            return Err(Error::InvalidPermutation("mixed degrees in group".into()));
        }
        let set: HashSet<&Permutation> = elements.iter().collect();
        if !set.contains(&Permutation::identity(degree)) {
            return Err(Error::InvalidPermutation("element list lacks the identity".into()));
        }
        for a in &elements {
            if !set.contains(&a.inverse()) || elements.iter().any(|b| !set.contains(&a.compose(b))) {
                return Err(Error::InvalidPermutation("element list is not closed".into()));
            }
        }
        Ok(Self { degree, elements })
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(degree: usize, gens: &[Permutation]) -> Self {
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Self { degree, elements }
    }

    /// `Sym(n)` as an explicit carrier.
    pub fn symmetric(n: usize) -> Self {
        let mut p = Permutation::identity(n);
        let mut elements = vec![p.clone()];
        while p.next_lex() {
            elements.push(p.clone());
        }
        Self { degree: n, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn to_doc(&self) -> GroupDoc {
        GroupDoc {
            degree: self.degree,
            order: self.order(),
            elements: self.elements.iter().map(Permutation::to_cycle_string).collect(),
        }
    }

    pub fn from_doc(doc: &GroupDoc) -> Result<Self> {
        let elements = doc
            .elements
            .iter()
            .map(|s| Permutation::parse_cycles(s, doc.degree))
            .collect::<Result<Vec<_>>>()?;
        let g = Self::from_elements(doc.degree, elements)?;
        if g.order() != doc.order {
            return Err(Error::InvalidDocument(format!("order {} != {} listed", doc.order, g.order())));
        }
        Ok(g)
    }
}

/// Vertex-coloured symmetric relation with loops, searched by backtracking.
struct SearchProblem {
    adj: Vec<Vec<bool>>,
    colour: Vec<Vec<usize>>,
}

impl SearchProblem {
    fn new(adj: Vec<Vec<bool>>, base: Vec<usize>) -> Self {
        let n = adj.len();
        let degree: Vec<usize> = (0..n).map(|a| (0..n).filter(|&b| b != a && adj[a][b]).count()).collect();
        let colour = (0..n)
            .map(|a| {
                let mut nbr: Vec<usize> = (0..n).filter(|&b| b != a && adj[a][b]).map(|b| degree[b]).collect();
                nbr.sort_unstable();
                let mut c = vec![base[a], usize::from(adj[a][a]), degree[a]];
                c.extend(nbr);
                c
            })
            .collect();
        Self { adj, colour }
    }

    fn solve(&self) -> Vec<Permutation> {
        let n = self.adj.len();
        let mut out = Vec::new();
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(0, &mut images, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend(&self, a: usize, images: &mut [usize], used: &mut [bool], out: &mut Vec<Permutation>) {
        let n = self.adj.len();
        if a == n {
            out.push(Permutation::from_images(images.to_vec()).expect("bijective by construction"));
            return;
        }
        for b in 0..n {
            if used[b] || self.colour[a] != self.colour[b] || self.adj[a][a] != self.adj[b][b] {
                continue;
            }
            if (0..a).any(|x| self.adj[a][x] != self.adj[b][images[x]]) {
                continue;
            }
            images[a] = b;
            used[b] = true;
            self.extend(a + 1, images, used, out);
            used[b] = false;
        }
        images[a] = usize::MAX;
    }
}

fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::SizeBound { what, size, bound })
    } else {
        Ok(())
    }
}

/// `Aut(Γ)` by exhaustive backtracking; refuses graphs above `bound` vertices.
pub fn graph_automorphisms(g: &Graph, bound: usize) -> Result<FiniteGroup> {
    let n = g.vertex_count();
    check_bound("graph", n, bound)?;
    let adj = (0..n).map(|a| (0..n).map(|b| g.adjacent(a, b)).collect()).collect();
    let elements = SearchProblem::new(adj, vec![0; n]).solve();
    Ok(FiniteGroup { degree: n, elements })
}

/// `Aut(Γ̄)`: permutations of components preserving edges, loops and weights.
pub fn quotient_automorphisms(q: &QuotientGraph, bound: usize) -> Result<FiniteGroup> {
    let k = q.len();
    check_bound("quotient graph", k, bound)?;
    let adj = (0..k).map(|a| (0..k).map(|b| q.adjacent(a, b)).collect()).collect();
    let elements = SearchProblem::new(adj, q.weights()).solve();
    Ok(FiniteGroup { degree: k, elements })
}

/// The order of `Aut(Γ)` from the product formula, without enumerating it.
pub fn graph_automorphism_count(g: &Graph, bound: usize) -> Result<u128> {
    let q = g.quotient_graph();
    let quotient = quotient_automorphisms(&q, bound)?.order() as u128;
    Ok(q.weights().iter().map(|&w| (1..=w as u128).product::<u128>()).product::<u128>() * quotient)
}

/// `r(φ)`: sends the `i`-th vertex of component `λ` to the `i`-th vertex of `φ(λ)`.
pub fn splitting_r(q: &QuotientGraph, phi: &Permutation) -> Permutation {
    let n = q.vertex_count();
    let mut images = vec![0; n];
    for (c, members) in q.components().iter().enumerate() {
        let target = &q.components()[phi.apply(c)];
        for (i, &v) in members.iter().enumerate() {
            images[v] = target[i];
        }
    }
    Permutation::from_images(images).expect("weight-preserving permutation lifts to a bijection")
}

/// `θ̄`: the permutation a graph automorphism induces on coherent components.
pub fn project_automorphism(q: &QuotientGraph, theta: &Permutation) -> Permutation {
    let images = q.components().iter().map(|c| q.component_of(theta.apply(c[0]))).collect();
    Permutation::from_images(images).expect("automorphisms permute coherent components")
}

/// Conjugacy-class representatives of the involutions (identity included),
/// each the lexicographically least member of its class, sorted.
pub fn involution_classes(group: &FiniteGroup) -> Vec<Permutation> {
    let mut assigned: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for x in group.elements().iter().filter(|p| p.is_involution()) {
        if assigned.contains(x) {
            continue;
        }
        reps.push(x.clone());
        for g in group.elements() {
            assigned.insert(g.conjugate(x));
        }
    }
    reps
}

/// Whether one `φ` in the group conjugates every `rho[i]` to `eta[i]`.
pub fn conjugate_data(group: &FiniteGroup, rho: &[Permutation], eta: &[Permutation]) -> bool {
    rho.len() == eta.len()
        && group.elements().iter().any(|phi| rho.iter().zip(eta).all(|(r, e)| phi.conjugate(r) == *e))
}

/// `χ(φ)`: the induced permutation of connected components. Singleton
/// components are fixed.
pub fn chi_action(q: &QuotientGraph, connected: &[Vec<usize>], phi: &Permutation) -> Result<Permutation> {
    let n = q.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (i, c) in connected.iter().enumerate() {
        for &v in c {
            owner[v] = i;
        }
    }
    let mut images = Vec::with_capacity(connected.len());
    for (i, c) in connected.iter().enumerate() {
        if c.len() == 1 {
            images.push(i);
            continue;
        }
        let targets: BTreeSet<usize> =
            c.iter().map(|&v| owner[q.components()[phi.apply(q.component_of(v))][0]]).collect();
        if targets.len() != 1 {
            return Err(Error::Internal(format!("component permutation {phi} splits a connected component")));
        }
        images.push(*targets.first().expect("nonempty"));
    }
    Permutation::from_images(images)
        .map_err(|_| Error::Internal(format!("component permutation {phi} does not permute connected components")))
}

/// Generator data for the linear automorphism group of the graph algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutDescription {
    pub m_generator_pairs: Vec<(usize, usize)>,
    pub gl_block_sizes: Vec<usize>,
    pub component_group: FiniteGroup,
    pub dim_reductive_part: usize,
    pub dim_unipotent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutDescriptionDoc {
    pub m_generator_pairs: Vec<[String; 2]>,
    pub gl_block_sizes: Vec<usize>,
    pub component_group: GroupDoc,
    pub dim_reductive_part: usize,
    pub dim_unipotent: usize,
}

impl AutDescription {
    pub fn to_doc(&self, g: &Graph) -> AutDescriptionDoc {
        AutDescriptionDoc {
            m_generator_pairs: self
                .m_generator_pairs
                .iter()
                .map(|&(a, b)| [g.label(a).to_string(), g.label(b).to_string()])
                .collect(),
            gl_block_sizes: self.gl_block_sizes.clone(),
            component_group: self.component_group.to_doc(),
            dim_reductive_part: self.dim_reductive_part,
            dim_unipotent: self.dim_unipotent,
        }
    }
}

pub fn describe_g(g: &Graph, bound: usize) -> Result<AutDescription> {
    let n = g.vertex_count();
    let m_generator_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && g.precedes(a, b) && !g.precedes(b, a))
        .collect();
    let q = g.quotient_graph();
    let gl_block_sizes = q.weights();
    Ok(AutDescription {
        dim_reductive_part: gl_block_sizes.iter().map(|w| w * w).sum(),
        dim_unipotent: m_generator_pairs.len(),
        component_group: quotient_automorphisms(&q, bound)?,
        m_generator_pairs,
        gl_block_sizes,
    })
}

/// Whether `Aut(Γ)` is generated by transpositions, i.e. `Aut(Γ̄)` is trivial.
pub fn transpositions_generate(g: &Graph, bound: usize) -> Result<bool> {
    Ok(quotient_automorphisms(&g.quotient_graph(), bound)?.is_trivial())
}
