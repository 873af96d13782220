//! Root-preserving isomorphism of finite rooted graphs.
//!
//! `labeled_canonical_form` is a sufficient test: equal forms give a
//! label-preserving, hence plain, isomorphism. `rooted_isomorphic_exact`
//! decides the unlabeled question by backtracking, pruned with colour
//! refinement seeded by (distance to root, degree).

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::RootedBall;

/// BFS relabelling that follows arcs in label-name order.
///
/// Two balls with equal forms are isomorphic through a map preserving root
/// and generator labels.
pub fn labeled_canonical_form(b: &RootedBall) -> Option<Vec<Vec<(&str, u32)>>> {
    if b.is_empty() || b.arcs.iter().all(Vec::is_empty) && b.len() > 1 {
        return None;
    }
    let n = b.len();
    let mut order: Vec<Vec<(u16, u32)>> = b.arcs.clone();
    for arcs in &mut order {
        arcs.sort_by(|x, y| b.label_names[x.0 as usize].cmp(&b.label_names[y.0 as usize]));
    }
    let mut new_index = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    new_index[0] = 0;
    queue.push_back(0usize);
    let mut next = 1u32;
    let mut visit_order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        visit_order.push(v);
        for &(_, t) in &order[v] {
            if new_index[t as usize] == u32::MAX {
                new_index[t as usize] = next;
                next += 1;
                queue.push_back(t as usize);
            }
        }
    }
    if visit_order.len() != n {
        return None;
    }
    Some(
        visit_order
            .iter()
            .map(|&v| {
                order[v]
                    .iter()
                    .map(|&(l, t)| (b.label_names[l as usize].as_str(), new_index[t as usize]))
                    .collect()
            })
            .collect(),
    )
}

/// Whether some graph isomorphism maps root to root.
pub fn rooted_isomorphic(b1: &RootedBall, b2: &RootedBall) -> bool {
    if let (Some(f1), Some(f2)) = (labeled_canonical_form(b1), labeled_canonical_form(b2)) {
        if f1 == f2 {
            return true;
        }
    }
    rooted_isomorphic_exact(b1, b2)
}

/// Complete decision procedure, ignoring labels.
pub fn rooted_isomorphic_exact(b1: &RootedBall, b2: &RootedBall) -> bool {
    let n = b1.len();
    if n != b2.len() || n == 0 {
        return n == b2.len();
    }
    let edges = |b: &RootedBall| b.adjacency.iter().map(Vec::len).sum::<usize>();
    if edges(b1) != edges(b2) {
        return false;
    }
    let Some((c1, c2)) = refine(b1, b2) else {
        return false;
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (b1.distances[v], v));
    if order[0] != 0 || c1[0] != c2[0] {
        return false;
    }
    let mut position = vec![0usize; n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let mut search = Search {
        b1,
        b2,
        c1: &c1,
        c2: &c2,
        order: &order,
        position: &position,
        map: vec![u32::MAX; n],
        used: vec![false; n],
    };
    search.map[0] = 0;
    search.used[0] = true;
    search.extend(1)
}

/// Joint colour refinement. Returns `None` if colour histograms diverge.
fn refine(b1: &RootedBall, b2: &RootedBall) -> Option<(Vec<u32>, Vec<u32>)> {
    let init = |b: &RootedBall| -> Vec<(u32, u32)> {
        (0..b.len())
            .map(|v| (b.distances[v], b.adjacency[v].len() as u32))
            .collect()
    };
    let (mut c1, mut c2) = relabel(init(b1), init(b2))?;
    let mut classes = distinct(&c1);
    loop {
        let sig = |b: &RootedBall, c: &[u32]| -> Vec<(u32, Vec<u32>)> {
            (0..b.len())
                .map(|v| {
                    let mut ns: Vec<u32> = b.adjacency[v].iter().map(|&w| c[w as usize]).collect();
                    ns.sort_unstable();
                    (c[v], ns)
                })
                .collect()
        };
        let (n1, n2) = relabel(sig(b1, &c1), sig(b2, &c2))?;
        let k = distinct(&n1);
        c1 = n1;
        c2 = n2;
        if k == classes {
            return Some((c1, c2));
        }
        classes = k;
    }
}

fn relabel<K: Ord + Clone>(a: Vec<K>, b: Vec<K>) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut ids: BTreeMap<K, (u32, i64)> = BTreeMap::new();
    for k in &a {
        ids.entry(k.clone()).or_insert((0, 0)).1 += 1;
    }
    for k in &b {
        ids.entry(k.clone()).or_insert((0, 0)).1 -= 1;
    }
    if ids.values().any(|&(_, balance)| balance != 0) {
        return None;
    }
    for (i, v) in ids.values_mut().enumerate() {
        v.0 = i as u32;
    }
    let map = |xs: Vec<K>| xs.iter().map(|k| ids[k].0).collect();
    Some((map(a), map(b)))
}

fn distinct(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search<'a> {
    b1: &'a RootedBall,
    b2: &'a RootedBall,
    c1: &'a [u32],
    c2: &'a [u32],
    order: &'a [usize],
    position: &'a [usize],
    map: Vec<u32>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let mapped: Vec<u32> = self.b1.adjacency[v]
            .iter()
            .filter(|&&w| self.position[w as usize] < k)
            .map(|&w| self.map[w as usize])
            .collect();
        // Every non-root vertex has an earlier neighbour (one step closer to the root).
        let Some(&anchor) = mapped.first() else {
            return false;
        };
        let candidates = self.b2.adjacency[anchor as usize].clone();
        for u in candidates {
            let ui = u as usize;
            if self.used[ui] || self.c2[ui] != self.c1[v] {
                continue;
            }
            let adj_u = &self.b2.adjacency[ui];
            if !mapped.iter().all(|m| adj_u.binary_search(m).is_ok()) {
                continue;
            }
            if adj_u.iter().filter(|&&w| self.used[w as usize]).count() != mapped.len() {
                continue;
            }
            self.map[v] = u;
            self.used[ui] = true;
            if self.extend(k + 1) {
                return true;
            }
            self.used[ui] = false;
            self.map[v] = u32::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{ball, CayleyGraph};
    use crate::group::Element;
    use crate::quotient::ModuliMask;

    fn shuffled(b: &RootedBall, seed: u64) -> RootedBall {
        // keep the root at 0, permute the rest deterministically
        let n = b.len();
        let mut perm: Vec<usize> = (1..n).collect();
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let mut new_of = vec![0u32; n];
        for (k, &old) in perm.iter().enumerate() {
            new_of[old] = k as u32 + 1;
        }
        let mut vertices = vec![Element::ints(&[]); n];
        for (old, v) in b.vertices.iter().enumerate() {
            vertices[new_of[old] as usize] = v.clone();
        }
        let edges: Vec<(u32, u32)> = b
            .edges()
            .iter()
            .map(|&(u, v)| (new_of[u as usize], new_of[v as usize]))
            .collect();
        RootedBall::from_edges(b.radius, vertices, &edges).unwrap()
    }

    #[test]
    fn reflexive_under_reindexing() {
        let z2 = CayleyGraph::parse("Z^2").unwrap();
        let b = ball(&z2, 2).unwrap();
        let s = shuffled(&b, 7);
        assert!(labeled_canonical_form(&s).is_none());
        assert!(rooted_isomorphic(&b, &s));
        assert!(rooted_isomorphic_exact(&b, &s));
    }

    #[test]
    fn degree_mismatch() {
        let z2 = ball(&CayleyGraph::parse("Z^2").unwrap(), 1).unwrap();
        let cyl = ball(&CayleyGraph::parse("Z/2 x Z").unwrap(), 1).unwrap();
        assert!(!rooted_isomorphic(&z2, &cyl));
    }

    #[test]
    fn no_wraparound_inside_the_ball() {
        let z3 = CayleyGraph::parse("Z^3").unwrap();
        let q = z3.quotient(&ModuliMask::single(0, 7).unwrap()).unwrap();
        let (a, b) = (ball(&z3, 2).unwrap(), ball(&q, 2).unwrap());
        assert_eq!(labeled_canonical_form(&a), labeled_canonical_form(&b));
        assert!(rooted_isomorphic_exact(&a, &b));
    }

    #[test]
    fn root_matters() {
        // a path of three vertices rooted at an end vs rooted in the middle
        let e = |v| Element::ints(&[v]);
        let end = RootedBall::from_edges(2, vec![e(0), e(1), e(2)], &[(0, 1), (1, 2)]).unwrap();
        let mid = RootedBall::from_edges(1, vec![e(0), e(1), e(2)], &[(0, 1), (0, 2)]).unwrap();
        assert!(!rooted_isomorphic_exact(&end, &mid));
    }

    #[test]
    fn unlabeled_isomorphism_beyond_labels() {
        // Z and Z/5 x ... : B(1) of Z^2 and of Z x Z/7 agree as graphs but
        // also with different generator labels, e.g. Z^2 with generators {e1, e1+e2}.
        let z2 = CayleyGraph::parse("Z^2").unwrap();
        let skew = CayleyGraph::new(
            z2.group.clone(),
            &[Element::ints(&[1, 0]), Element::ints(&[1, 1])],
        )
        .unwrap();
        let (a, b) = (ball(&z2, 3).unwrap(), ball(&skew, 3).unwrap());
        assert!(rooted_isomorphic(&a, &b));
    }

    #[test]
    fn fast_path_agrees_with_complete_path() {
        let terms = [
            "Z^2",
            "Z/2 x Z",
            "Z/3 x Z",
            "Z/4 x Z",
            "Z^3",
            "quot(Z^3; mask=1; m=[3])",
            "quot(Z^3; mask=1; m=[4])",
            "quot(Z^3; mask=1; m=[5])",
            "quot(Z^3; mask=1; m=[6])",
            "H3 x Z",
            "quot(H3 x Z; mask=1; m=[2])",
            "F_2",
            "Z x Z x Z",
        ];
        let graphs: Vec<CayleyGraph> = terms
            .iter()
            .map(|t| CayleyGraph::parse(t).unwrap())
            .collect();
        for r in 0..=2 {
            let balls: Vec<RootedBall> = graphs.iter().map(|g| ball(g, r).unwrap()).collect();
            for (i, a) in balls.iter().enumerate() {
                for (j, b) in balls.iter().enumerate() {
                    let exact = rooted_isomorphic_exact(a, b);
                    assert_eq!(
                        exact,
                        rooted_isomorphic_exact(b, a),
                        "symmetry {} {}",
                        terms[i],
                        terms[j]
                    );
                    if labeled_canonical_form(a).is_some()
                        && labeled_canonical_form(a) == labeled_canonical_form(b)
                    {
                        assert!(
                            exact,
                            "fast path contradicts complete path for {} {}",
                            terms[i], terms[j]
                        );
                    }
                    for c in &balls {
                        if exact && rooted_isomorphic_exact(b, c) {
                            assert!(rooted_isomorphic_exact(a, c));
                        }
                    }
                }
            }
        }
    }
}
