//! Enumeration of tropical leaky covers with psi-conditions.
//!
//! Covers are produced in three stages: unweighted combinatorial types up
//! to isomorphism, expansion factors solved from the leaky balancing
//! condition (with free cycle weights scanned in positive genus), and the
//! linear extensions of the resulting edge orientation as vertex orders.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{LinForm, Rational};
use crate::cover::{assemble_multiplicity, CoverGraph, Edge, Problem, ProblemError, Vertex, Weight, WeightedCover};
use crate::oracle::{MissingVertexData, VertexOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    MissingVertex(#[from] MissingVertexData),
    #[error("free edge weight reached the scan bound {bound}; the admissible region may be larger")]
    WeightBound { bound: i64 },
}

/// Unweighted decorated multigraph: vertex genera, attached ends, and an
/// edge multiset. `tree_edges` index a spanning tree; the remaining
/// `free_edges` carry the free cycle weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CombinatorialType {
    pub genera: Vec<u32>,
    pub ends: Vec<Vec<usize>>,
    /// Pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub tree_edges: Vec<usize>,
    pub free_edges: Vec<usize>,
}

impl CombinatorialType {
    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn h1(&self) -> usize {
        self.free_edges.len()
    }

    pub fn is_tree(&self) -> bool {
        self.free_edges.is_empty()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.ends[v].len() + self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Net outflow through bounded edges demanded at `v` by the balancing
    /// condition: `sum_{i in I_v} x_i - k(2g(v) - 2 + val(v))`.
    pub fn vertex_excess(&self, v: usize) -> LinForm {
        let mut f = LinForm::k_term(-(2 * self.genera[v] as i64 - 2 + self.valence(v) as i64));
        for &i in &self.ends[v] {
            f.add_var(i, 1);
        }
        f
    }

    /// Vertices on the side of `from` after deleting tree edge `edge`
    /// from the spanning tree.
    fn tree_side(&self, edge: usize) -> Vec<bool> {
        let n = self.num_vertices();
        let (start, _) = self.edges[edge];
        let mut side = vec![false; n];
        side[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &t in &self.tree_edges {
                if t == edge {
                    continue;
                }
                let (a, b) = self.edges[t];
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !side[other] {
                    side[other] = true;
                    stack.push(other);
                }
            }
        }
        side
    }

    /// Flow along every edge in its reference direction `u -> v`, as an
    /// affine form in `x, k` plus integer coefficients on the flows of the
    /// free edges (each free edge carries its own variable).
    pub fn edge_flows(&self) -> Vec<EdgeFlow> {
        let mut flows: Vec<EdgeFlow> = self
            .edges
            .iter()
            .map(|&(u, v)| EdgeFlow {
                from: u,
                to: v,
                form: LinForm::zero(),
                free: vec![0; self.free_edges.len()],
            })
            .collect();
        for (slot, &fe) in self.free_edges.iter().enumerate() {
            flows[fe].free[slot] = 1;
        }
        for &te in &self.tree_edges {
            let side = self.tree_side(te);
            let mut form = LinForm::zero();
            for (w, &inside) in side.iter().enumerate() {
                if inside {
                    form = form.add(&self.vertex_excess(w));
                }
            }
            let mut free = vec![0; self.free_edges.len()];
            for (slot, &fe) in self.free_edges.iter().enumerate() {
                let (a, b) = self.edges[fe];
                match (side[a], side[b]) {
                    (true, false) => free[slot] = -1,
                    (false, true) => free[slot] = 1,
                    _ => {}
                }
            }
            flows[te].form = form;
            flows[te].free = free;
        }
        flows
    }
}

/// Flow through one edge from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFlow {
    pub from: usize,
    pub to: usize,
    pub form: LinForm,
    pub free: Vec<i64>,
}

/// Result of propagating the balancing condition through a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeWeights {
    /// `(from, to, weight)` per edge, oriented so the weight is positive at
    /// the problem's profile (reference orientation kept where it vanishes).
    pub edges: Vec<(usize, usize, LinForm)>,
    /// Strict inequalities `form > 0` cutting out where this oriented tree
    /// is a cover.
    pub inequalities: Vec<LinForm>,
}

/// Leaf-to-root solution of the balancing condition on a tree type.
pub fn solve_weights_tree(p: &Problem, t: &CombinatorialType) -> TreeWeights {
    assert!(t.is_tree(), "solve_weights_tree needs a tree type");
    let mut edges = Vec::new();
    for flow in t.edge_flows() {
        let value = flow.form.eval(&p.x, p.k).expect("forms only use profile variables");
        if value < 0 {
            edges.push((flow.to, flow.from, flow.form.neg()));
        } else {
            edges.push((flow.from, flow.to, flow.form));
        }
    }
    let inequalities = edges.iter().map(|(_, _, f)| f.clone()).collect();
    TreeWeights { edges, inequalities }
}

/// All loopless multigraphs on `degrees.len()` vertices with the given
/// degree sequence, as sorted edge lists.
fn multigraphs_with_degrees(degrees: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn rec(v: usize, remaining: &mut Vec<usize>, current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let n = remaining.len();
        if v == n {
            if remaining.iter().all(|&r| r == 0) {
                out.push(current.clone());
            }
            return;
        }
        if remaining[v] == 0 {
            rec(v + 1, remaining, current, out);
            return;
        }
        distribute(v, v + 1, remaining, current, out);
    }

    // Spread the remaining degree of `v` over partners `j >= next`.
    fn distribute(
        v: usize,
        next: usize,
        remaining: &mut Vec<usize>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let n = remaining.len();
        if remaining[v] == 0 {
            rec(v + 1, remaining, current, out);
            return;
        }
        if next >= n {
            return;
        }
        let capacity: usize = remaining[next..].iter().sum();
        if capacity < remaining[v] {
            return;
        }
        let max = remaining[v].min(remaining[next]);
        for m in (0..=max).rev() {
            remaining[v] -= m;
            remaining[next] -= m;
            for _ in 0..m {
                current.push((v, next));
            }
            distribute(v, next + 1, remaining, current, out);
            for _ in 0..m {
                current.pop();
            }
            remaining[v] += m;
            remaining[next] += m;
        }
    }

    let mut out = Vec::new();
    rec(0, &mut degrees.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Set partitions of `0..n` into exactly `blocks` blocks, blocks ordered
/// by their smallest element.
fn set_partitions(n: usize, blocks: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, blocks: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            if cur.len() == blocks {
                out.push(cur.clone());
            }
            return;
        }
        // not enough elements left to open the missing blocks
        if cur.len() + (n - i) < blocks {
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, blocks, cur, out);
            cur[b].pop();
        }
        if cur.len() < blocks {
            cur.push(vec![i]);
            rec(i + 1, n, blocks, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, blocks, &mut Vec::new(), &mut out);
    out
}

/// Nondecreasing sequences of length `len` with entries in `0..=max` and
/// sum at most `budget`.
fn nondecreasing(len: usize, max: u32, budget: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, lo: u32, max: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            if v > budget {
                break;
            }
            cur.push(v);
            rec(len, v, max, budget - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, max, budget, &mut Vec::new(), &mut out);
    out
}

/// All sequences of length `len` with entries in `0..=max` and sum at most
/// `budget`.
fn bounded_sequences(len: usize, max: u32, budget: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for seq in &out {
            let used: u32 = seq.iter().sum();
            for v in 0..=max.min(budget - used) {
                let mut s = seq.clone();
                s.push(v);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

type Certificate = (Vec<u32>, Vec<Vec<usize>>, Vec<(usize, usize)>);

/// Minimal relabelling over permutations of the endless vertices.
/// Vertices carrying ends are pinned by their (labelled) ends.
fn canonical_certificate(genera: &[u32], ends: &[Vec<usize>], edges: &[(usize, usize)], first_endless: usize) -> Certificate {
    let n = genera.len();
    let endless: Vec<usize> = (first_endless..n).collect();
    let mut best: Option<Certificate> = None;
    for perm in permutations(&endless) {
        // perm[j] is the new label of old vertex first_endless + j
        let mut relabel: Vec<usize> = (0..n).collect();
        for (j, &new) in perm.iter().enumerate() {
            relabel[first_endless + j] = new;
        }
        let mut g2 = vec![0; n];
        let mut e2 = vec![Vec::new(); n];
        for v in 0..n {
            g2[relabel[v]] = genera[v];
            e2[relabel[v]] = ends[v].clone();
        }
        let mut ed: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (relabel[a], relabel[b]);
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        ed.sort_unstable();
        let cert = (g2, e2, ed);
        if best.as_ref().is_none_or(|b| cert < *b) {
            best = Some(cert);
        }
    }
    best.expect("at least the identity permutation")
}

fn with_spanning_tree(genera: Vec<u32>, ends: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> CombinatorialType {
    let n = genera.len();
    let mut seen = vec![false; n];
    let mut tree_edges = Vec::new();
    if n > 0 {
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (idx, &(a, b)) in edges.iter().enumerate() {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    tree_edges.push(idx);
                    queue.push_back(other);
                }
            }
        }
    }
    tree_edges.sort_unstable();
    let free_edges = (0..edges.len()).filter(|i| !tree_edges.contains(i)).collect();
    CombinatorialType {
        genera,
        ends,
        edges,
        tree_edges,
        free_edges,
    }
}

/// Every isomorphism class of connected decorated multigraph with `c + 1`
/// vertices, genus `g` and the psi-valencies, each exactly once, sorted by
/// canonical certificate. Only `g`, `n` and `e` of the problem matter.
pub fn enumerate_types(p: &Problem) -> Vec<CombinatorialType> {
    let n = p.n();
    let nv = p.num_vertices();
    let g = p.g;
    let mut certs: BTreeSet<Certificate> = BTreeSet::new();
    if nv == 0 {
        return Vec::new();
    }
    for blocks in 1..=n.min(nv) {
        let endless = nv - blocks;
        for partition in set_partitions(n, blocks) {
            for head in bounded_sequences(blocks, g, g) {
                let used: u32 = head.iter().sum();
                for tail in nondecreasing(endless, g, g - used) {
                    let genera: Vec<u32> = head.iter().chain(&tail).copied().collect();
                    let genus_sum: u32 = genera.iter().sum();
                    let h1 = (g - genus_sum) as usize;
                    let mut ends = partition.clone();
                    ends.resize(nv, Vec::new());
                    let mut degrees = Vec::with_capacity(nv);
                    let mut ok = true;
                    for v in 0..nv {
                        let psi: i64 = ends[v].iter().map(|&i| p.e[i] as i64).sum();
                        let val = psi + 3 - 2 * genera[v] as i64;
                        let d = val - ends[v].len() as i64;
                        if d < 0 || (nv > 1 && d == 0) {
                            ok = false;
                            break;
                        }
                        degrees.push(d as usize);
                    }
                    if !ok {
                        continue;
                    }
                    let edge_count = nv - 1 + h1;
                    if degrees.iter().sum::<usize>() != 2 * edge_count {
                        continue;
                    }
                    for edges in multigraphs_with_degrees(&degrees) {
                        if !is_connected(nv, &edges) {
                            continue;
                        }
                        certs.insert(canonical_certificate(&genera, &ends, &edges, blocks));
                    }
                }
            }
        }
    }
    certs
        .into_iter()
        .map(|(genera, ends, edges)| with_spanning_tree(genera, ends, edges))
        .collect()
}

/// Number of total orders of `0..n` compatible with `edges` (`a` before
/// `b` for every `(a, b)`), by dynamic programming over downsets. Zero if
/// the relation has a cycle.
pub fn count_linear_extensions(n: usize, edges: &[(usize, usize)]) -> u64 {
    assert!(n <= 24, "linear extension count limited to 24 elements");
    let mut preds = vec![0u32; n];
    for &(a, b) in edges {
        preds[b] |= 1 << a;
    }
    let full = (1u32 << n) - 1;
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for mask in 0..=full {
        let w = ways[mask as usize];
        if w == 0 {
            continue;
        }
        for v in 0..n {
            let bit = 1 << v;
            if mask & bit == 0 && preds[v] & !mask == 0 {
                ways[(mask | bit) as usize] += w;
            }
        }
    }
    ways[full as usize]
}

/// The linear extensions themselves, each listing vertices left to right.
pub fn linear_extensions(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn rec(n: usize, preds: &[Vec<usize>], placed: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !placed[v] && preds[v].iter().all(|&u| placed[u]) {
                placed[v] = true;
                cur.push(v);
                rec(n, preds, placed, cur, out);
                cur.pop();
                placed[v] = false;
            }
        }
    }
    let mut preds = vec![Vec::new(); n];
    for &(a, b) in edges {
        preds[b].push(a);
    }
    let mut out = Vec::new();
    rec(n, &preds, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

/// Scan bound for free cycle weights.
pub fn free_weight_bound(p: &Problem, t: &CombinatorialType) -> i64 {
    let abs_sum: i64 = p.x.iter().map(|v| v.abs()).sum();
    abs_sum + p.k.abs() * p.euler() * (p.codim() + t.h1() as i64)
}

struct TypeCovers {
    covers: Vec<CoverGraph>,
    touched_bound: bool,
}

fn covers_of_type(p: &Problem, t: &CombinatorialType) -> TypeCovers {
    let flows = t.edge_flows();
    let base: Vec<i64> = flows
        .iter()
        .map(|f| f.form.eval(&p.x, p.k).expect("forms only use profile variables"))
        .collect();
    let vertices: Vec<Vertex> = t
        .genera
        .iter()
        .zip(&t.ends)
        .map(|(&genus, ends)| Vertex { genus, ends: ends.clone() })
        .collect();
    let bound = free_weight_bound(p, t);
    let slots = t.h1();
    let mut free = vec![0i64; slots];
    let mut out = TypeCovers {
        covers: Vec::new(),
        touched_bound: false,
    };
    // odometer over free flows in [-bound, -1] U [1, bound]
    let range: Vec<i64> = (-bound..=-1).chain(1..=bound).collect();
    let mut idx = vec![0usize; slots];
    loop {
        for s in 0..slots {
            free[s] = range[idx[s]];
        }
        let mut oriented = Vec::with_capacity(flows.len());
        let mut admissible = true;
        for (f, b) in flows.iter().zip(&base) {
            let value = b + f.free.iter().zip(&free).map(|(c, v)| c * v).sum::<i64>();
            if value == 0 {
                admissible = false;
                break;
            }
            if value > 0 {
                oriented.push((f.from, f.to, value));
            } else {
                oriented.push((f.to, f.from, -value));
            }
        }
        if admissible {
            let pairs: Vec<(usize, usize)> = oriented.iter().map(|&(a, b, _)| (a, b)).collect();
            let orders = linear_extensions(t.num_vertices(), &pairs);
            if !orders.is_empty() && free.iter().any(|v| v.abs() == bound) {
                out.touched_bound = true;
            }
            let edges: Vec<Edge> = oriented
                .iter()
                .map(|&(from, to, w)| Edge {
                    from,
                    to,
                    weight: Weight::Int(w),
                })
                .collect();
            for order in orders {
                let cover = CoverGraph {
                    vertices: vertices.clone(),
                    edges: edges.clone(),
                    order,
                };
                out.covers.push(cover.normalized());
            }
        }
        // advance
        let mut s = 0;
        loop {
            if s == slots {
                return out;
            }
            idx[s] += 1;
            if idx[s] < range.len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

/// All covers of `p` up to isomorphism, in normal form and sorted, with
/// their multiplicities.
pub fn enumerate_covers(p: &Problem, oracle: &dyn VertexOracle) -> Result<Vec<WeightedCover>, EnumerationError> {
    p.validate()?;
    let types = enumerate_types(p);
    let per_type: Vec<(TypeCovers, i64)> = types
        .par_iter()
        .map(|t| (covers_of_type(p, t), free_weight_bound(p, t)))
        .collect();
    let mut unique: BTreeSet<CoverGraph> = BTreeSet::new();
    for (tc, bound) in per_type {
        if tc.touched_bound {
            return Err(EnumerationError::WeightBound { bound });
        }
        unique.extend(tc.covers);
    }
    let covers: Vec<CoverGraph> = unique.into_iter().collect();
    covers
        .par_iter()
        .map(|c| assemble_multiplicity(p, c, oracle).map_err(EnumerationError::from))
        .collect()
}

/// `H_g(x, e)` as the weighted count of covers.
pub fn compute_h(p: &Problem, oracle: &dyn VertexOracle) -> Result<Rational, EnumerationError> {
    Ok(enumerate_covers(p, oracle)?.into_iter().map(|w| w.multiplicity).sum())
}

/// Genus-0 covers of the line with one vertex over each of two points,
/// without psi-conditions: every split of the markings into a left block
/// and a right block of size at least two joined by one edge of positive
/// weight. Used by the psi-kappa recursion.
pub fn two_vertex_covers(p: &Problem) -> Vec<CoverGraph> {
    assert_eq!(p.g, 0, "two-vertex splittings are only implemented in genus 0");
    let n = p.n();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let left: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let right: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        if left.len() < 2 || right.len() < 2 {
            continue;
        }
        let w = LinForm::wall_form(&left).eval(&p.x, p.k).expect("subset indexes the profile");
        if w <= 0 {
            continue;
        }
        out.push(CoverGraph {
            vertices: vec![Vertex { genus: 0, ends: left }, Vertex { genus: 0, ends: right }],
            edges: vec![Edge {
                from: 0,
                to: 1,
                weight: Weight::Int(w),
            }],
            order: vec![0, 1],
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::cover::check_cover;
    use crate::oracle::FixtureOracle;

    #[test]
    fn example_trees_with_psi_condition() {
        let p = Problem::new(0, 1, vec![6, -1, -1, 1, -2], vec![1, 0, 0, 0, 0]);
        let types = enumerate_types(&p);
        assert_eq!(types.len(), 6);
        for t in &types {
            assert!(t.is_tree());
            assert_eq!(t.num_vertices(), 2);
            let with_one = t.ends.iter().position(|e| e.contains(&0)).unwrap();
            assert_eq!(t.ends[with_one].len(), 3);
            assert_eq!(t.valence(with_one), 4);
        }
    }

    #[test]
    fn single_trivalent_type() {
        let p = Problem::plain(0, 1, vec![3, -1, -1]);
        let types = enumerate_types(&p);
        assert_eq!(types.len(), 1);
        assert!(types[0].edges.is_empty());
        let tw = solve_weights_tree(&p, &types[0]);
        assert!(tw.edges.is_empty() && tw.inequalities.is_empty());
    }

    #[test]
    fn genus_one_example_types() {
        let p = Problem::new(1, 1, vec![7, -3, -1], vec![1, 0, 0]);
        let types = enumerate_types(&p);
        // double edge with {1,2}|{3} or {1,3}|{2}; genus-1 vertex carrying
        // end 1 or carrying nothing
        assert_eq!(types.len(), 4);
        assert_eq!(types.iter().filter(|t| t.h1() == 1).count(), 2);
    }

    #[test]
    fn tree_edge_forms() {
        let p = Problem::new(0, 1, vec![6, -1, -1, 1, -2], vec![1, 0, 0, 0, 0]);
        let t = enumerate_types(&p)
            .into_iter()
            .find(|t| t.ends.contains(&vec![0, 1, 2]))
            .unwrap();
        let tw = solve_weights_tree(&p, &t);
        assert_eq!(tw.edges.len(), 1);
        assert_eq!(tw.edges[0].2.to_string(), "x1+x2+x3-2k");

        let q = Problem::plain(0, 1, vec![3, 1, -1, -1]);
        let t = enumerate_types(&q)
            .into_iter()
            .find(|t| t.ends.contains(&vec![0, 1]))
            .unwrap();
        assert_eq!(solve_weights_tree(&q, &t).edges[0].2.to_string(), "x1+x2-k");
    }

    #[test]
    fn orientation_follows_sign() {
        // x1 + x2 - k < 0 here, so the edge flows into the {1,2} vertex
        let p = Problem::plain(0, 1, vec![-3, 1, 4, 0]);
        let t = enumerate_types(&p)
            .into_iter()
            .find(|t| t.ends.contains(&vec![0, 1]))
            .unwrap();
        let tw = solve_weights_tree(&p, &t);
        let (from, _, f) = &tw.edges[0];
        assert_eq!(t.ends[*from], vec![2, 3]);
        assert_eq!(f.eval(&p.x, p.k).unwrap(), 3);
    }

    #[test]
    fn linear_extension_counts() {
        assert_eq!(count_linear_extensions(2, &[(0, 1)]), 1);
        assert_eq!(count_linear_extensions(4, &[]), 24);
        assert_eq!(count_linear_extensions(3, &[(0, 1), (1, 2), (2, 0)]), 0);
        // two chains of length one interlaced after regluing
        assert_eq!(count_linear_extensions(2, &[]), 2);
        assert_eq!(linear_extensions(3, &[(0, 2), (1, 2)]), vec![vec![0, 1, 2], vec![1, 0, 2]]);
    }

    #[test]
    fn multigraph_degree_sequences() {
        assert_eq!(multigraphs_with_degrees(&[2, 2]), vec![vec![(0, 1), (0, 1)]]);
        assert_eq!(multigraphs_with_degrees(&[1, 1, 1, 1]).len(), 3);
        assert!(multigraphs_with_degrees(&[3, 1]).is_empty());
    }

    #[test]
    fn genus_one_worked_example() {
        let p = Problem::new(1, 1, vec![7, -3, -1], vec![1, 0, 0]);
        let covers = enumerate_covers(&p, &FixtureOracle::builtin()).unwrap();
        let mut mults: Vec<Rational> = covers.iter().map(|w| w.multiplicity.clone()).collect();
        mults.sort();
        let mut expected = [rat(2, 1), rat(3, 1), rat(175, 24), rat(1, 2), rat(-1, 24)].map(Result::unwrap).to_vec();
        expected.sort();
        assert_eq!(mults, expected);
        for w in &covers {
            check_cover(&p, &w.cover).unwrap();
        }
        assert_eq!(compute_h(&p, &FixtureOracle::builtin()).unwrap(), rat(51, 4).unwrap());
    }

    #[test]
    fn genus_zero_chamber_point() {
        let p = Problem::new(0, 1, vec![6, -1, -1, 1, -2], vec![1, 0, 0, 0, 0]);
        let covers = enumerate_covers(&p, &FixtureOracle::builtin()).unwrap();
        let mut mults: Vec<i64> = covers.iter().map(|w| w.multiplicity.to_i64().unwrap()).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 1, 2, 3, 4, 4]);
    }

    #[test]
    fn vanishing_example() {
        let p = Problem::plain(0, 2, vec![1, 1, 1, 1]);
        assert!(enumerate_covers(&p, &FixtureOracle::builtin()).unwrap().is_empty());
    }

    #[test]
    fn genus_one_family_at_d5() {
        let p = Problem::plain(1, 1, vec![5, -3]);
        assert_eq!(compute_h(&p, &FixtureOracle::builtin()).unwrap(), rat(119, 24).unwrap());
    }

    #[test]
    fn missing_fixture_is_an_error() {
        let p = Problem::plain(1, 3, vec![10, -4]);
        let err = enumerate_covers(&p, &FixtureOracle::builtin()).unwrap_err();
        assert!(matches!(err, EnumerationError::MissingVertex(_)));
    }

    #[test]
    fn invalid_problem_is_an_error() {
        let p = Problem::plain(0, 1, vec![7, -3, -1]);
        assert!(matches!(
            enumerate_covers(&p, &FixtureOracle::builtin()),
            Err(EnumerationError::Problem(ProblemError::DegreeMismatch { .. }))
        ));
    }

    #[test]
    fn two_vertex_splittings_have_positive_weight() {
        let p = Problem::plain(0, 1, vec![2, 2, -1, 0]);
        let covers = two_vertex_covers(&p);
        assert_eq!(covers.len(), 3);
        for c in covers {
            assert!(c.edges[0].weight.value_at(&p) > 0);
        }
    }
}
