//! Greedy edge coloring of uniform hypergraphs whose edges pairwise meet in
//! at most `y` vertices. Two edges meeting in exactly `y` vertices must get
//! different colors; with edges taken in order and each given the smallest
//! free color, at most `k^y·n / y!` colors are used.

use serde::Serialize;

use crate::combinatorics::{factorial, saturating_pow};
use crate::error::{Error, Result};

/// A `k`-uniform hypergraph on vertices `1..=vertex_count`. Edges are kept
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    vertex_count: usize,
    k: usize,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, k: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for (index, mut edge) in edges.into_iter().enumerate() {
            edge.sort_unstable();
            edge.dedup();
            if edge.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "edge {index} has {} distinct vertices, expected {k}",
                    edge.len()
                )));
            }
            if edge.iter().any(|&v| v == 0 || v as usize > vertex_count) {
                return Err(Error::InvalidParameter(format!(
                    "edge {index} has a vertex outside 1..={vertex_count}"
                )));
            }
            sorted.push(edge);
        }
        Ok(Hypergraph {
            vertex_count,
            k,
            edges: sorted,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn intersection(&self, e: usize, f: usize) -> usize {
        sorted_intersection(&self.edges[e], &self.edges[f])
    }

    /// Largest intersection between two distinct edges (0 with < 2 edges).
    pub fn max_pairwise_intersection(&self) -> usize {
        let mut best = 0;
        for e in 0..self.edges.len() {
            for f in e + 1..self.edges.len() {
                best = best.max(self.intersection(e, f));
            }
        }
        best
    }

    /// The color budget `k^y·n / y!`.
    pub fn color_budget(&self, y: usize) -> f64 {
        let numerator = saturating_pow(self.k as u128, y as u32) as f64 * self.vertex_count as f64;
        numerator / factorial(y as u64) as f64
    }
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Colors `1..=color_count`, one per edge in edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    pub y: usize,
    pub colors: Vec<u32>,
    pub color_count: usize,
}

impl EdgeColoring {
    /// Pairs of edges meeting in exactly `y` vertices that share a color.
    pub fn conflicts(&self, h: &Hypergraph) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in 0..h.edges().len() {
            for f in e + 1..h.edges().len() {
                if self.colors[e] == self.colors[f] && h.intersection(e, f) == self.y {
                    out.push((e, f));
                }
            }
        }
        out
    }
}

/// Colors edges in input order, each with the smallest color not used by an
/// earlier edge that meets it in exactly `y` vertices.
///
/// Requires `1 <= y < k` and every pair of edges to meet in at most `y`
/// vertices.
pub fn greedy_edge_coloring(h: &Hypergraph, y: usize) -> Result<EdgeColoring> {
    if y == 0 || y >= h.k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= y < k, got y = {y}, k = {}",
            h.k
        )));
    }
    let edges = h.edges();
    for e in 0..edges.len() {
        for f in e + 1..edges.len() {
            let size = h.intersection(e, f);
            if size > y {
                return Err(Error::IntersectionTooLarge {
                    first: e,
                    second: f,
                    size,
                    limit: y,
                });
            }
        }
    }

    let mut colors: Vec<u32> = Vec::with_capacity(edges.len());
    let mut taken: Vec<bool> = Vec::new();
    for e in 0..edges.len() {
        taken.clear();
        taken.resize(e + 2, false);
        for (f, &c) in colors.iter().enumerate() {
            if h.intersection(e, f) == y && (c as usize) < taken.len() {
                taken[c as usize] = true;
            }
        }
        let color = (1..taken.len()).find(|&c| !taken[c]).expect("e + 1 candidates") as u32;
        colors.push(color);
    }
    let color_count = colors.iter().copied().max().unwrap_or(0) as usize;
    Ok(EdgeColoring { y, colors, color_count })
}
