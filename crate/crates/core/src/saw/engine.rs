//! Depth-first SAW enumeration split into independent prefix subtrees.
//!
//! When the ball of radius `n_max` fits the arena budget, vertices get dense
//! ids and the visited set is a bitset; otherwise walks run directly on
//! normal forms with a hashed visited set.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use hashbrown::{HashMap, HashSet};

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::group::{Element, Layout};

/// Resource limits for one enumeration.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Maximum number of walk extensions over all subtrees.
    pub max_steps: Option<u64>,
    /// Largest ball used for the dense-id arena.
    pub arena_vertices: usize,
    /// Depth at which walks are split into independent tasks.
    pub prefix_depth: usize,
    /// External interruption (e.g. a wall-clock deadline).
    pub stop: Option<Arc<AtomicBool>>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: None,
            arena_vertices: 1 << 20,
            prefix_depth: 4,
            stop: None,
        }
    }
}

impl Budget {
    pub(crate) fn stopped(&self) -> bool {
        self.stop
            .as_ref()
            .is_some_and(|s| s.load(Ordering::Relaxed))
    }
}

enum Space {
    Arena {
        offsets: Vec<u32>,
        targets: Vec<u32>,
    },
    Implicit {
        layout: Layout,
        closure: Vec<Element>,
        root: Element,
    },
}

/// A SAW prefix whose extensions form one task.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prefix {
    Arena(Vec<u32>),
    Implicit(Vec<Element>),
}

/// Counts of walks no longer than the split depth, plus the subtrees left.
#[derive(Debug, Clone)]
pub struct Plan {
    pub head_counts: Vec<u64>,
    pub tasks: Vec<Prefix>,
}

/// Enumerator for one graph and one maximal length.
pub struct Engine {
    space: Space,
    n_max: usize,
    max_steps: Option<u64>,
    stop: Option<Arc<AtomicBool>>,
    spent: AtomicU64,
}

const CHUNK: u64 = 1 << 14;

impl Engine {
    pub fn new(g: &CayleyGraph, n_max: usize, budget: &Budget) -> Self {
        let space = arena(g, n_max, budget.arena_vertices).unwrap_or_else(|| Space::Implicit {
            layout: g.group.layout().clone(),
            closure: g.gens.closure.clone(),
            root: g.root.clone(),
        });
        Engine {
            space,
            n_max,
            max_steps: budget.max_steps,
            stop: budget.stop.clone(),
            spent: AtomicU64::new(0),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn uses_arena(&self) -> bool {
        matches!(self.space, Space::Arena { .. })
    }

    /// Enumerates every SAW of length `min(depth, n_max)`. Walks of length
    /// `n_max` are counted directly and produce no task.
    pub fn plan(&self, depth: usize) -> Plan {
        let depth = depth.min(self.n_max);
        let mut head_counts = vec![0u64; depth + 1];
        let mut tasks = Vec::new();
        match &self.space {
            Space::Arena { offsets, targets } => {
                let mut path = vec![0u32];
                fn rec(
                    offsets: &[u32],
                    targets: &[u32],
                    path: &mut Vec<u32>,
                    depth: usize,
                    counts: &mut [u64],
                    out: &mut Vec<Prefix>,
                    emit: bool,
                ) {
                    let len = path.len() - 1;
                    counts[len] += 1;
                    if len == depth {
                        if emit {
                            out.push(Prefix::Arena(path.clone()));
                        }
                        return;
                    }
                    let v = *path.last().unwrap() as usize;
                    for &w in &targets[offsets[v] as usize..offsets[v + 1] as usize] {
                        if !path.contains(&w) {
                            path.push(w);
                            rec(offsets, targets, path, depth, counts, out, emit);
                            path.pop();
                        }
                    }
                }
                let emit = depth < self.n_max;
                rec(
                    offsets,
                    targets,
                    &mut path,
                    depth,
                    &mut head_counts,
                    &mut tasks,
                    emit,
                );
            }
            Space::Implicit {
                layout,
                closure,
                root,
            } => {
                let mut path = vec![root.clone()];
                fn rec(
                    layout: &Layout,
                    closure: &[Element],
                    path: &mut Vec<Element>,
                    depth: usize,
                    counts: &mut [u64],
                    out: &mut Vec<Prefix>,
                    emit: bool,
                ) {
                    let len = path.len() - 1;
                    counts[len] += 1;
                    if len == depth {
                        if emit {
                            out.push(Prefix::Implicit(path.clone()));
                        }
                        return;
                    }
                    for s in closure {
                        let w = layout.mul(path.last().unwrap(), s);
                        if !path.contains(&w) {
                            path.push(w);
                            rec(layout, closure, path, depth, counts, out, emit);
                            path.pop();
                        }
                    }
                }
                let emit = depth < self.n_max;
                rec(
                    layout,
                    closure,
                    &mut path,
                    depth,
                    &mut head_counts,
                    &mut tasks,
                    emit,
                );
            }
        }
        Plan { head_counts, tasks }
    }

    /// Counts the extensions of `prefix` by length; entry `n` is the number
    /// of SAWs of length `n` starting with `prefix` and strictly longer than it.
    pub fn run(&self, prefix: &Prefix) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; self.n_max + 1];
        let mut local = 0u64;
        match (&self.space, prefix) {
            (Space::Arena { offsets, targets }, Prefix::Arena(path)) => {
                let mut visited = vec![0u64; offsets.len() / 64 + 1];
                for &v in path {
                    visited[v as usize / 64] |= 1 << (v % 64);
                }
                let mut walk = ArenaWalk {
                    offsets,
                    targets,
                    visited,
                    counts: &mut counts,
                    n_max: self.n_max,
                    local: &mut local,
                    engine: self,
                };
                walk.dfs(*path.last().unwrap(), path.len() - 1)?;
            }
            (
                Space::Implicit {
                    layout, closure, ..
                },
                Prefix::Implicit(path),
            ) => {
                let visited: HashSet<Element> = path.iter().cloned().collect();
                let mut walk = ImplicitWalk {
                    layout,
                    closure,
                    visited,
                    counts: &mut counts,
                    n_max: self.n_max,
                    local: &mut local,
                    engine: self,
                };
                walk.dfs(path.last().unwrap().clone(), path.len() - 1)?;
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "prefix does not belong to this engine".into(),
                ))
            }
        }
        self.charge(local)?;
        Ok(counts)
    }

    fn charge(&self, steps: u64) -> Result<()> {
        let total = self.spent.fetch_add(steps, Ordering::Relaxed) + steps;
        if self.max_steps.is_some_and(|m| total > m)
            || self
                .stop
                .as_ref()
                .is_some_and(|s| s.load(Ordering::Relaxed))
        {
            return Err(Error::Interrupted);
        }
        Ok(())
    }

    fn tick(&self, local: &mut u64) -> Result<()> {
        *local += 1;
        if *local >= CHUNK {
            let spent = core::mem::take(local);
            self.charge(spent)?;
        }
        Ok(())
    }
}

struct ArenaWalk<'a> {
    offsets: &'a [u32],
    targets: &'a [u32],
    visited: Vec<u64>,
    counts: &'a mut [u64],
    n_max: usize,
    local: &'a mut u64,
    engine: &'a Engine,
}

impl ArenaWalk<'_> {
    #[inline]
    fn seen(&self, w: u32) -> bool {
        self.visited[w as usize / 64] >> (w % 64) & 1 == 1
    }

    fn dfs(&mut self, v: u32, len: usize) -> Result<()> {
        let (lo, hi) = (
            self.offsets[v as usize] as usize,
            self.offsets[v as usize + 1] as usize,
        );
        if len + 1 == self.n_max {
            let free = self.targets[lo..hi]
                .iter()
                .filter(|&&w| !self.seen(w))
                .count();
            self.counts[self.n_max] += free as u64;
            return Ok(());
        }
        for i in lo..hi {
            let w = self.targets[i];
            if self.seen(w) {
                continue;
            }
            self.engine.tick(self.local)?;
            self.counts[len + 1] += 1;
            self.visited[w as usize / 64] |= 1 << (w % 64);
            let r = self.dfs(w, len + 1);
            self.visited[w as usize / 64] &= !(1 << (w % 64));
            r?;
        }
        Ok(())
    }
}

struct ImplicitWalk<'a> {
    layout: &'a Layout,
    closure: &'a [Element],
    visited: HashSet<Element>,
    counts: &'a mut [u64],
    n_max: usize,
    local: &'a mut u64,
    engine: &'a Engine,
}

impl ImplicitWalk<'_> {
    fn dfs(&mut self, v: Element, len: usize) -> Result<()> {
        for s in self.closure {
            let w = self.layout.mul(&v, s);
            if self.visited.contains(&w) {
                continue;
            }
            self.engine.tick(self.local)?;
            self.counts[len + 1] += 1;
            if len + 1 < self.n_max {
                self.visited.insert(w.clone());
                let r = self.dfs(w.clone(), len + 1);
                self.visited.remove(&w);
                r?;
            }
        }
        Ok(())
    }
}

/// Dense ids for the ball of radius `n_max`; only vertices strictly inside
/// get adjacency, which is all a walk of length `<= n_max` ever reads.
fn arena(g: &CayleyGraph, n_max: usize, limit: usize) -> Option<Space> {
    let layout = g.group.layout();
    let mut index: HashMap<Element, u32> = HashMap::new();
    let mut vertices = vec![g.root.clone()];
    let mut dist = vec![0usize];
    index.insert(g.root.clone(), 0);
    let mut offsets = vec![0u32];
    let mut targets = Vec::new();
    let mut head = 0;
    while head < vertices.len() {
        if dist[head] < n_max {
            for s in &g.gens.closure {
                let w = layout.mul(&vertices[head], s);
                let id = match index.get(&w) {
                    Some(&id) => id,
                    None => {
                        if vertices.len() >= limit {
                            return None;
                        }
                        let id = vertices.len() as u32;
                        index.insert(w.clone(), id);
                        vertices.push(w);
                        dist.push(dist[head] + 1);
                        id
                    }
                };
                targets.push(id);
            }
        }
        offsets.push(targets.len() as u32);
        head += 1;
    }
    Some(Space::Arena { offsets, targets })
}
