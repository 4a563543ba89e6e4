//! Seeded generators and brute-force oracles shared by the integration
//! tests. Nothing here calls into the algorithms it is used to check.

#![allow(dead_code)]

use std::path::PathBuf;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structctl::{is_structurally_controllable, ProblemInstance, SetCoverInstance, StructMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn load_instance(name: &str) -> ProblemInstance {
    let text = std::fs::read_to_string(data_file(name)).expect("data file");
    ProblemInstance::parse(&text).expect("valid instance")
}

pub fn random_pattern(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> StructMatrix {
    let stars = (0..rows)
        .cartesian_product(0..cols)
        .filter(|_| rng.random_bool(density))
        .collect::<Vec<_>>();
    StructMatrix::new(rows, cols, stars).unwrap()
}

/// A state pattern whose bipartite graph has a perfect matching: a random
/// permutation (or the full diagonal, a third of the time) plus noise.
pub fn random_assumption1(rng: &mut ChaCha8Rng, n: usize, density: f64) -> StructMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    if rng.random_range(0..3) != 0 {
        perm.shuffle(rng);
    }
    let mut stars: Vec<(usize, usize)> = perm.iter().enumerate().map(|(c, &r)| (r, c)).collect();
    for (r, c) in (0..n).cartesian_product(0..n) {
        if rng.random_bool(density) {
            stars.push((r, c));
        }
    }
    StructMatrix::new(n, n, stars.into_iter().unique()).unwrap()
}

pub fn random_setcover(rng: &mut ChaCha8Rng, max_universe: usize, max_sets: usize) -> SetCoverInstance {
    let m = rng.random_range(1..=max_universe);
    let count = rng.random_range(1..=max_sets);
    let density = rng.random_range(0.15..0.6);
    let mut sets: Vec<Vec<usize>> = (0..count)
        .map(|_| (0..m).filter(|_| rng.random_bool(density)).collect())
        .collect();
    for e in 0..m {
        if !sets.iter().any(|s| s.contains(&e)) {
            let j = rng.random_range(0..count);
            sets[j].push(e);
        }
    }
    SetCoverInstance::new(m, sets).unwrap()
}

/// Edges `x_i -> x_j` of the state digraph, read straight off the pattern.
pub fn state_edges(a: &StructMatrix) -> Vec<(usize, usize)> {
    a.stars().map(|(r, c)| (c, r)).collect()
}

/// Reflexive-transitive closure by repeated boolean squaring.
pub fn reachability(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(u, v) in edges {
        r[u][v] = true;
    }
    loop {
        let mut next = r.clone();
        for (i, row) in r.iter().enumerate() {
            for (k, _) in row.iter().enumerate().filter(|(_, &hit)| hit) {
                for (j, _) in r[k].iter().enumerate().filter(|(_, &hit)| hit) {
                    next[i][j] = true;
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

/// Vertex classes under mutual reachability, each sorted, listed by lowest
/// member.
pub fn reachability_classes(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let r = reachability(n, edges);
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&j| r[i][j] && r[j][i]).collect();
        for &j in &class {
            seen[j] = true;
        }
        classes.push(class);
    }
    classes
}

/// Largest matching found by enumerating every valid matching.
pub fn brute_max_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> usize {
    fn go(l: usize, left: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        if l == left {
            return 0;
        }
        let mut best = go(l + 1, left, adj, used);
        for &r in &adj[l] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + go(l + 1, left, adj, used));
                used[r] = false;
            }
        }
        best
    }
    let mut adj = vec![Vec::new(); left];
    for &(l, r) in edges {
        adj[l].push(r);
    }
    go(0, left, &adj, &mut vec![false; right])
}

/// Whether the digraph is spanned by vertex-disjoint cycles (self-loops
/// count as cycles), searched by growing elementary cycles from the lowest
/// uncovered vertex.
pub fn has_cycle_cover(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    fn cover(adj: &[Vec<usize>], covered: &mut Vec<bool>) -> bool {
        let Some(start) = covered.iter().position(|&c| !c) else {
            return true;
        };
        covered[start] = true;
        let ok = extend(adj, covered, start, start);
        covered[start] = false;
        ok
    }
    // Path from `start` currently ends at `tail`; all path vertices are marked.
    fn extend(adj: &[Vec<usize>], covered: &mut Vec<bool>, start: usize, tail: usize) -> bool {
        for &w in &adj[tail] {
            if w == start {
                if cover(adj, covered) {
                    return true;
                }
            } else if !covered[w] {
                covered[w] = true;
                let ok = extend(adj, covered, start, w);
                covered[w] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    cover(&adj, &mut vec![false; n])
}

/// Size of the smallest cover over all `2^n` subsets of sets.
pub fn brute_min_cover(inst: &SetCoverInstance) -> usize {
    let n = inst.set_count();
    (0u32..1 << n)
        .filter(|mask| {
            let mut covered = vec![false; inst.universe_size()];
            for j in (0..n).filter(|j| mask >> j & 1 == 1) {
                for &e in inst.set(j) {
                    covered[e] = true;
                }
            }
            covered.iter().all(|&c| c)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("full family covers")
}

/// Fewest dedicated inputs, by checking every subset of states in order of size.
pub fn brute_dedicated_minimum(a: &StructMatrix) -> usize {
    let n = a.rows();
    let inst = ProblemInstance::new(a.clone(), StructMatrix::identity(n)).unwrap();
    for k in 0..=n {
        for j_set in (0..n).combinations(k) {
            if is_structurally_controllable(&inst, &j_set).unwrap() {
                return k;
            }
        }
    }
    unreachable!("actuating every state is always controllable")
}

/// Every subset of `0..p` as a sorted index list.
pub fn all_subsets(p: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << p).map(move |mask| (0..p).filter(|j| mask >> j & 1 == 1).collect())
}

pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}
