use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::CayleyGraph;
use crate::error::{Error, Result};
use crate::group::Element;

/// Default vertex budget for ball extraction.
pub const DEFAULT_BALL_LIMIT: usize = 10_000_000;

/// The ball `B(r)` around the root, as a finite rooted graph.
///
/// Vertex 0 is the root; vertices are numbered in BFS order, expanding
/// neighbors in sorted normal-form order. All edges between ball vertices
/// are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBall {
    pub radius: usize,
    pub vertices: Vec<Element>,
    pub distances: Vec<u32>,
    /// Sorted neighbor lists.
    pub adjacency: Vec<Vec<u32>>,
    /// Labeled arcs `v -> v s`, as `(label index, target)`, kept for the
    /// labeled fast path only.
    pub arcs: Vec<Vec<(u16, u32)>>,
    pub label_names: Vec<String>,
}

impl RootedBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (u, adj) in self.adjacency.iter().enumerate() {
            for &v in adj {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// Builds a ball from an explicit edge list (labels are left empty).
    /// Distances are recomputed from vertex 0.
    pub fn from_edges(radius: usize, vertices: Vec<Element>, edges: &[(u32, u32)]) -> Result<Self> {
        let n = vertices.len();
        let mut adjacency = alloc::vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v || u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(alloc::format!(
                    "bad edge ({u}, {v})"
                )));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        let mut distances = alloc::vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        if n > 0 {
            distances[0] = 0;
            queue.push_back(0usize);
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if distances[v as usize] == u32::MAX {
                    distances[v as usize] = distances[u] + 1;
                    queue.push_back(v as usize);
                }
            }
        }
        if distances.iter().any(|&d| d as usize > radius) {
            return Err(Error::InvalidParameter(alloc::format!(
                "edge list is not a ball of radius {radius}"
            )));
        }
        Ok(RootedBall {
            radius,
            vertices,
            distances,
            adjacency,
            arcs: alloc::vec![Vec::new(); n],
            label_names: Vec::new(),
        })
    }
}

/// `B(r)` with the default vertex budget.
pub fn ball(g: &CayleyGraph, r: usize) -> Result<RootedBall> {
    ball_with_limit(g, r, DEFAULT_BALL_LIMIT)
}

/// BFS-exact ball of radius `r`, failing once more than `limit` vertices
/// would be needed.
pub fn ball_with_limit(g: &CayleyGraph, r: usize, limit: usize) -> Result<RootedBall> {
    let layout = g.group.layout();
    let closure = &g.gens.closure;
    let mut index: HashMap<Element, u32> = HashMap::new();
    let mut vertices = Vec::new();
    let mut distances = Vec::new();
    index.insert(g.root.clone(), 0);
    vertices.push(g.root.clone());
    distances.push(0u32);
    let mut head = 0;
    let mut scratch: Vec<Element> = Vec::with_capacity(closure.len());
    while head < vertices.len() {
        let d = distances[head];
        if d as usize == r {
            break;
        }
        scratch.clear();
        scratch.extend(closure.iter().map(|s| layout.mul(&vertices[head], s)));
        scratch.sort_unstable();
        for w in scratch.drain(..) {
            if !index.contains_key(&w) {
                if vertices.len() >= limit {
                    return Err(Error::BallBudget { radius: r, limit });
                }
                index.insert(w.clone(), vertices.len() as u32);
                vertices.push(w);
                distances.push(d + 1);
            }
        }
        head += 1;
    }
    let mut adjacency = Vec::with_capacity(vertices.len());
    let mut arcs = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let mut out: Vec<(u16, u32)> = Vec::with_capacity(closure.len());
        for (li, s) in closure.iter().enumerate() {
            if let Some(&t) = index.get(&layout.mul(v, s)) {
                out.push((li as u16, t));
            }
        }
        let mut adj: Vec<u32> = out.iter().map(|&(_, t)| t).collect();
        adj.sort_unstable();
        adj.dedup();
        adjacency.push(adj);
        arcs.push(out);
    }
    Ok(RootedBall {
        radius: r,
        vertices,
        distances,
        adjacency,
        arcs,
        label_names: g.gens.labels.clone(),
    })
}
