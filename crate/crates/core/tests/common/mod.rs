#![allow(dead_code)]

use liegraph::{Graph, Permutation};
use proptest::prelude::*;

/// Edges of `K_n` in a fixed order, one bit each.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    Graph::from_indices((1..=n).map(|i| format!("v{i}")).collect(), &edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (Just(n), 0..(1u64 << m))
    })
    .prop_map(|(n, mask)| graph_from_mask(n, mask))
}

/// Every permutation of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    let mut p = Permutation::identity(n);
    let mut out = vec![p.clone()];
    while p.next_lex() {
        out.push(p.clone());
    }
    out
}

/// Automorphisms by checking every vertex permutation.
pub fn brute_automorphisms(g: &Graph) -> Vec<Permutation> {
    all_perms(g.vertex_count())
        .into_iter()
        .filter(|p| g.edges().iter().all(|&(a, b)| g.adjacent(p.apply(a), p.apply(b))))
        .collect()
}

use liegraph::automorphisms::{quotient_automorphisms, DEFAULT_BOUND};
use liegraph::descent::DescentDatum;
use liegraph::field::MultiQuadraticField;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    (2..=n).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
}

/// A uniformly chosen valid datum with `k <= max_k`, radicands in `[-30, 30]`,
/// or `None` when the quotient has no suitable involutions.
pub fn random_datum<R: Rng>(g: &Graph, max_k: usize, rng: &mut R) -> Option<DescentDatum> {
    let q = g.quotient_graph();
    let group = quotient_automorphisms(&q, DEFAULT_BOUND).ok()?;
    let invs: Vec<Permutation> = group.elements().iter().filter(|p| p.is_involution() && !p.is_identity()).cloned().collect();
    let mut options: Vec<Vec<Permutation>> = invs.iter().map(|p| vec![p.clone()]).collect();
    if max_k >= 2 {
        for (i, a) in invs.iter().enumerate() {
            for b in &invs[i + 1..] {
                if a.compose(b) == b.compose(a) {
                    options.push(vec![a.clone(), b.clone()]);
                }
            }
        }
    }
    let images = options.choose(rng)?.clone();
    let radicands: Vec<i64> = (-30..=30).filter(|&d| d != 0 && d != 1 && squarefree(d)).collect();
    loop {
        let d: Vec<i64> = (0..images.len()).map(|_| *radicands.choose(rng).unwrap()).collect();
        if let Ok(field) = MultiQuadraticField::new(&d) {
            return Some(DescentDatum::new(&q, field, images.clone()).expect("valid by construction"));
        }
    }
}
