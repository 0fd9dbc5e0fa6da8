//! Independent brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use leaky::arith::multinomial;
use leaky::cover::{CoverGraph, Problem};
use leaky::Rational;
use rand::Rng;

/// `H_0(x, e)` by placing vertices at labelled positions `0..r`, trying
/// every assignment of ends to positions and every labelled tree (Pruefer
/// codes), and keeping the trees whose flows all point to the right.
/// Distinct positions rule out automorphisms, so each cover is counted once.
pub fn brute_force_h0(p: &Problem) -> Rational {
    let n = p.n();
    let r = p.num_vertices();
    let mut total = Rational::zero();
    for assignment in tuples(n, r) {
        let mut ends = vec![Vec::new(); r];
        for (i, &v) in assignment.iter().enumerate() {
            ends[v].push(i);
        }
        for tree in labelled_trees(r) {
            if let Some(m) = tree_contribution(p, &ends, &tree) {
                total += m;
            }
        }
    }
    total
}

fn tree_contribution(p: &Problem, ends: &[Vec<usize>], tree: &[(usize, usize)]) -> Option<Rational> {
    let r = ends.len();
    let val: Vec<usize> = (0..r)
        .map(|v| ends[v].len() + tree.iter().filter(|&&(a, b)| a == v || b == v).count())
        .collect();
    let mut mult = Rational::one();
    for v in 0..r {
        let psi: Vec<u32> = ends[v].iter().map(|&i| p.e[i]).collect();
        let need = psi.iter().sum::<u32>() as usize + 3;
        if val[v] != need {
            return None;
        }
        mult *= multinomial(&psi);
    }
    for &(a, b) in tree {
        let lo = a.min(b);
        // flow from lo to hi is the excess of lo's side
        let side = component_without(r, tree, (a, b), lo);
        let mut flow = 0i64;
        for v in 0..r {
            if side[v] {
                flow += ends[v].iter().map(|&i| p.x[i]).sum::<i64>() - p.k * (val[v] as i64 - 2);
            }
        }
        if flow <= 0 {
            return None;
        }
        mult *= Rational::from(flow);
    }
    Some(mult)
}

fn component_without(r: usize, tree: &[(usize, usize)], cut: (usize, usize), start: usize) -> Vec<bool> {
    let mut seen = vec![false; r];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in tree {
            if (a, b) == cut {
                continue;
            }
            let o = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[o] {
                seen[o] = true;
                stack.push(o);
            }
        }
    }
    seen
}

/// All maps `0..len -> 0..base`.
pub fn tuples(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |v| {
                    let mut s = t.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

/// All labelled trees on `r` vertices via Pruefer codes.
pub fn labelled_trees(r: usize) -> Vec<Vec<(usize, usize)>> {
    match r {
        0 => return Vec::new(),
        1 => return vec![Vec::new()],
        2 => return vec![vec![(0, 1)]],
        _ => {}
    }
    tuples(r - 2, r)
        .into_iter()
        .map(|code| {
            let mut degree = vec![1; r];
            for &c in &code {
                degree[c] += 1;
            }
            let mut edges = Vec::new();
            for &c in &code {
                let leaf = (0..r).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, c));
                degree[leaf] -= 1;
                degree[c] -= 1;
            }
            let rest: Vec<usize> = (0..r).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            edges
        })
        .collect()
}

/// Set partitions of `0..m`.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for i in 0..m {
        let mut next = Vec::new();
        for part in out {
            for b in 0..part.len() {
                let mut p = part.clone();
                p[b].push(i);
                next.push(p);
            }
            let mut p = part.clone();
            p.push(vec![i]);
            next.push(p);
        }
        out = next;
    }
    out
}

/// `int psi^e kappa_1^f` by writing `kappa_1^f` as a signed sum over set
/// partitions `Q` of `f` points of pushforwards of `prod_B psi_B^{|B|+1}`,
/// which turns the integral into multinomials on `M_{0, n + |Q|}`.
pub fn kappa_by_partitions(e: &[u32], f: usize) -> Rational {
    let n = e.len();
    let mut total = Rational::zero();
    for q in set_partitions(f) {
        let mut ext = e.to_vec();
        for block in &q {
            ext.push(block.len() as u32 + 1);
        }
        let m = n + q.len();
        let sum: usize = ext.iter().map(|&v| v as usize).sum();
        if m < 3 || sum + 3 != m {
            continue;
        }
        let term = multinomial(&ext);
        if (f - q.len()).is_multiple_of(2) {
            total += term;
        } else {
            total -= &term;
        }
    }
    total
}

/// Linear extensions by trying every permutation.
pub fn linear_extensions_brute(n: usize, edges: &[(usize, usize)]) -> u64 {
    permutations(n)
        .into_iter()
        .filter(|perm| {
            let mut pos = vec![0; n];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            edges.iter().all(|&(a, b)| pos[a] < pos[b])
        })
        .count() as u64
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for p in out {
            for slot in 0..=p.len() {
                let mut q = p.clone();
                q.insert(slot, i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Automorphisms counted as pairs (vertex permutation, edge bijection)
/// preserving genera, ends, positions, endpoints and weights.
pub fn automorphisms_brute(c: &CoverGraph) -> u64 {
    let nv = c.vertices.len();
    let ne = c.edges.len();
    let pos = c.positions();
    let mut count = 0;
    for sigma in permutations(nv) {
        let ok = (0..nv).all(|v| {
            c.vertices[sigma[v]] == c.vertices[v] && pos[sigma[v]] == pos[v]
        });
        if !ok {
            continue;
        }
        for tau in permutations(ne) {
            let ok = (0..ne).all(|i| {
                let (e, f) = (&c.edges[i], &c.edges[tau[i]]);
                f.from == sigma[e.from] && f.to == sigma[e.to] && f.weight == e.weight
            });
            if ok {
                count += 1;
            }
        }
    }
    count
}

/// Random integer profile with `sum x = k(2g - 2 + n)`.
pub fn random_profile(rng: &mut impl Rng, n: usize, g: u32, k: i64, range: i64) -> Vec<i64> {
    let mut x: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-range..=range)).collect();
    let total = k * (2 * g as i64 - 2 + n as i64);
    x.push(total - x.iter().sum::<i64>());
    x
}

/// Every psi-vector of length `n` with total at most `max`.
pub fn psi_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in out {
            let used: u32 = v.iter().sum();
            for a in 0..=(max - used) {
                let mut w: Vec<u32> = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
