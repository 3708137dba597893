//! Simple undirected graphs, the vertex preorder, coherent components and the
//! vertex-weighted quotient graph.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph with an ordered vertex list.
///
/// The vertex order is fixed at construction (first appearance when parsed)
/// and every basis built downstream follows it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
    edges: Vec<(usize, usize)>,
}

/// Serialized form: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl Graph {
    /// Builds a graph from labels and index pairs. Duplicate edges collapse.
    pub fn from_indices(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut adj = vec![vec![false; n]; n];
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::SelfLoop { line: 0, vertex: vertices[a].clone() });
            }
            adj[a][b] = true;
            adj[b][a] = true;
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { vertices, index, adj, edges: set.into_iter().collect() })
    }

    pub fn new(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let idx = |v: &str| lookup.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_string()));
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(labels, &pairs)
    }

    /// Parses the edge-list format: one `u v` edge or `vertex u` declaration
    /// per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut intern = |v: &str, vertices: &mut Vec<String>| -> usize {
            *index.entry(v.to_string()).or_insert_with(|| {
                vertices.push(v.to_string());
                vertices.len() - 1
            })
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["vertex", v] => {
                    intern(v, &mut vertices);
                }
                [a, b] => {
                    if a == b {
                        return Err(Error::SelfLoop { line: lineno + 1, vertex: a.to_string() });
                    }
                    let ia = intern(a, &mut vertices);
                    let ib = intern(b, &mut vertices);
                    edges.push((ia, ib));
                }
                other => return Err(Error::MalformedLine { line: lineno + 1, found: other.len() }),
            }
        }
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        Self::from_indices(vertices, &edges)
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self> {
        let labels: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
        let edges: Vec<(&str, &str)> = doc.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Self::new(&labels, &edges)
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.vertices[a].clone(), self.vertices[b].clone()])
                .collect(),
        }
    }

    /// Renders the graph back into the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let _ = writeln!(out, "vertex {v}");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "{} {}", self.vertices[a], self.vertices[b]);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn label(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    /// Index pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&b| self.adj[a][b]).collect()
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].iter().filter(|x| **x).count()
    }

    /// Open and closed neighbourhoods of a vertex, as labels in vertex order.
    pub fn neighborhoods(&self, label: &str) -> Result<(Vec<String>, Vec<String>)> {
        let a = self.index_of(label)?;
        let open: Vec<String> = self.neighbors(a).into_iter().map(|b| self.vertices[b].clone()).collect();
        let closed: Vec<String> = (0..self.vertex_count())
            .filter(|&b| b == a || self.adj[a][b])
            .map(|b| self.vertices[b].clone())
            .collect();
        Ok((open, closed))
    }

    /// `a ≺ b`: the open neighbourhood of `a` lies in the closed neighbourhood of `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        (0..self.vertex_count()).all(|x| !self.adj[a][x] || x == b || self.adj[b][x])
    }

    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.precedes(a, b) && self.precedes(b, a)
    }

    /// `(a ≺ b, a ∼ b)` by label.
    pub fn vertex_relation(&self, a: &str, b: &str) -> Result<(bool, bool)> {
        let (ia, ib) = (self.index_of(a)?, self.index_of(b)?);
        Ok((self.precedes(ia, ib), self.equivalent(ia, ib)))
    }

    /// Whether a vertex permutation preserves adjacency.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        images.len() == self.vertex_count()
            && self.edges.iter().all(|&(a, b)| self.adj[images[a]][images[b]])
    }

    /// Equivalence classes of `∼`, each in vertex order, ordered by least vertex.
    pub fn coherent_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut assigned = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if assigned[a] {
                continue;
            }
            let class: Vec<usize> = (a..n).filter(|&b| !assigned[b] && self.equivalent(a, b)).collect();
            for &b in &class {
                assigned[b] = true;
            }
            out.push(class);
        }
        out
    }

    /// Connected components ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![];
            let mut queue = VecDeque::from([s]);
            comp[s] = id;
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    pub fn quotient_graph(&self) -> QuotientGraph {
        QuotientGraph::of(self)
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.adj[a][b])
            .collect();
        Self::from_indices(self.vertices.clone(), &edges).expect("complement of a simple graph")
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.vertices[a], self.vertices[b]);
        }
        out.push_str("}\n");
        out
    }
}

/// Vertex-weighted graph with loops on the coherent components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    components: Vec<Vec<usize>>,
    labels: Vec<Vec<String>>,
    adj: Vec<Vec<bool>>,
    component_of: Vec<usize>,
}

/// Serialized form; component indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDoc {
    pub components: Vec<Vec<String>>,
    pub edges: Vec<[usize; 2]>,
    pub weights: Vec<usize>,
    pub loops: Vec<usize>,
}

impl QuotientGraph {
    fn of(g: &Graph) -> Self {
        let components = g.coherent_components();
        let mut component_of = vec![0; g.vertex_count()];
        for (ci, c) in components.iter().enumerate() {
            for &v in c {
                component_of[v] = ci;
            }
        }
        let k = components.len();
        let mut adj = vec![vec![false; k]; k];
        for &(a, b) in g.edges() {
            let (ca, cb) = (component_of[a], component_of[b]);
            adj[ca][cb] = true;
            adj[cb][ca] = true;
        }
        let labels = components
            .iter()
            .map(|c| c.iter().map(|&v| g.label(v).to_string()).collect())
            .collect();
        Self { components, labels, adj, component_of }
    }

    /// Builds a quotient-style graph directly; used for abstract carriers.
    pub fn from_parts(weights: &[usize], edges: &[(usize, usize)]) -> Self {
        let mut components = Vec::new();
        let mut next = 0;
        for &w in weights {
            components.push((next..next + w).collect::<Vec<_>>());
            next += w;
        }
        let mut component_of = vec![0; next];
        for (ci, c) in components.iter().enumerate() {
            for &v in c {
                component_of[v] = ci;
            }
        }
        let k = weights.len();
        let mut adj = vec![vec![false; k]; k];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let labels = components.iter().map(|c| c.iter().map(|v| format!("v{}", v + 1)).collect()).collect();
        Self { components, labels, adj, component_of }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// Number of vertices of the source graph.
    pub fn vertex_count(&self) -> usize {
        self.component_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Components as vertex-index lists in vertex order; this is the
    /// per-component vertex ordering used by the splitting morphism.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn component_of(&self, vertex: usize) -> usize {
        self.component_of[vertex]
    }

    pub fn weight(&self, c: usize) -> usize {
        self.components[c].len()
    }

    pub fn weights(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn has_loop(&self, c: usize) -> bool {
        self.adj[c][c]
    }

    pub fn degree(&self, c: usize) -> usize {
        (0..self.len()).filter(|&d| d != c && self.adj[c][d]).count()
    }

    /// Non-loop edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).filter(|&(a, b)| self.adj[a][b]).collect()
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.adj[c][c]).collect()
    }

    /// Whether a component permutation preserves edges, loops and weights.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        let k = self.len();
        images.len() == k
            && (0..k).all(|a| self.weight(a) == self.weight(images[a]))
            && (0..k).all(|a| (0..k).all(|b| self.adj[a][b] == self.adj[images[a]][images[b]]))
    }

    pub fn to_doc(&self) -> QuotientDoc {
        QuotientDoc {
            components: self.labels.clone(),
            edges: self.edges().into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
            weights: self.weights(),
            loops: self.loops().into_iter().map(|c| c + 1).collect(),
        }
    }

    /// Graphviz rendering with weight labels and loops.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for (i, labels) in self.labels.iter().enumerate() {
            let _ = writeln!(
                out,
                "  c{} [label=\"{}\\n{{{}}}\" xlabel=\"{}\"];",
                i + 1,
                i + 1,
                labels.join(","),
                self.weight(i)
            );
        }
        for c in self.loops() {
            let _ = writeln!(out, "  c{} -- c{};", c + 1, c + 1);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  c{} -- c{};", a + 1, b + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// Standard graph families.
pub mod families {
    use super::Graph;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn build(vertices: Vec<String>, edges: &[(usize, usize)]) -> Graph {
        Graph::from_indices(vertices, edges).expect("family graph is simple")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        build(labels("v", n), &edges)
    }

    pub fn edgeless(n: usize) -> Graph {
        build(labels("v", n), &[])
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build(labels("v", n), &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        build(labels("v", n), &edges)
    }

    /// `K_{1,leaves}` with the leaves listed first and the centre last.
    pub fn star(leaves: usize) -> Graph {
        let mut vs = labels("l", leaves);
        vs.push("c".to_string());
        let edges: Vec<_> = (0..leaves).map(|i| (i, leaves)).collect();
        build(vs, &edges)
    }

    /// Complete core of size `p` joined to an independent set of size `q`.
    pub fn magnet(p: usize, q: usize) -> Graph {
        let mut vs = labels("p", p);
        vs.extend(labels("q", q));
        let mut edges = Vec::new();
        for a in 0..p {
            for b in a + 1..p {
                edges.push((a, b));
            }
            for b in 0..q {
                edges.push((a, p + b));
            }
        }
        build(vs, &edges)
    }

    /// `n` disjoint edges `{2i-1, 2i}` on vertices `1..=2n`.
    pub fn heisenberg_sum(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
        build((1..=2 * n).map(|i| i.to_string()).collect(), &edges)
    }

    /// Hub `1` joined to `2i`, each `2i` joined to `2i+1`, on `1..=2n+1`.
    pub fn spider(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 1..=n {
            edges.push((0, 2 * i - 1));
            edges.push((2 * i - 1, 2 * i));
        }
        build((1..=2 * n + 1).map(|i| i.to_string()).collect(), &edges)
    }

    /// Two disjoint edges `a1-b1`, `a2-b2`.
    pub fn two_k2() -> Graph {
        Graph::new(&["a1", "b1", "a2", "b2"], &[("a1", "b1"), ("a2", "b2")]).expect("valid")
    }

    /// The complement of [`two_k2`] with vertex order `a1, a2, b1, b2`.
    pub fn two_k2_complement() -> Graph {
        Graph::new(
            &["a1", "a2", "b1", "b2"],
            &[("a1", "b2"), ("a2", "b1"), ("a1", "a2"), ("b1", "b2")],
        )
        .expect("valid")
    }
}
