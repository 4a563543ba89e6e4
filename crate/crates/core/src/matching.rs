//! Bipartite graphs, Hopcroft-Karp maximum matching, and the perfect
//! matching test on the state bipartite graph.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::structmat::StructMatrix;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds the graph; adjacency lists are sorted so matching output is
    /// deterministic. Duplicate edges collapse.
    pub fn new<I>(left_count: usize, right_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); left_count];
        for (l, r) in edges {
            if l >= left_count || r >= right_count {
                return Err(Error::EdgeOutOfRange {
                    from: l,
                    to: r,
                    vertices: left_count.max(right_count),
                });
            }
            adj[l].push(r);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Self {
            left_count,
            right_count,
            adj,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adj[left]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left_mate: Vec<Option<usize>>,
    right_mate: Vec<Option<usize>>,
    right_unmatched: Vec<usize>,
}

impl Matching {
    fn from_mates(left: Vec<usize>, right: Vec<usize>) -> Self {
        let right_unmatched = (0..right.len()).filter(|&r| right[r] == NIL).collect();
        let wrap = |v: Vec<usize>| v.into_iter().map(|m| (m != NIL).then_some(m)).collect();
        Self {
            left_mate: wrap(left),
            right_mate: wrap(right),
            right_unmatched,
        }
    }

    pub fn size(&self) -> usize {
        self.left_mate.iter().flatten().count()
    }

    /// Matched `(left, right)` pairs, sorted by left vertex.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_mate
            .iter()
            .enumerate()
            .filter_map(|(l, m)| m.map(|r| (l, r)))
            .collect()
    }

    pub fn mate_of_left(&self, l: usize) -> Option<usize> {
        self.left_mate[l]
    }

    pub fn mate_of_right(&self, r: usize) -> Option<usize> {
        self.right_mate[r]
    }

    pub fn right_unmatched(&self) -> &[usize] {
        &self.right_unmatched
    }
}

/// The state bipartite graph: left and right copies of the states, edge
/// `(i, j)` iff the pattern has a star at `(j, i)`.
pub fn state_bipartite(a: &StructMatrix) -> Result<BipartiteGraph> {
    a.require_square()?;
    BipartiteGraph::new(a.cols(), a.rows(), a.stars().map(|(r, c)| (c, r)))
}

/// Hopcroft-Karp maximum cardinality matching.
pub fn maximum_matching(g: &BipartiteGraph) -> Matching {
    let mut hk = HopcroftKarp {
        g,
        left: vec![NIL; g.left_count],
        right: vec![NIL; g.right_count],
        dist: vec![0; g.left_count],
        next: vec![0; g.left_count],
    };
    while hk.bfs() {
        hk.next.iter_mut().for_each(|p| *p = 0);
        for l in 0..g.left_count {
            if hk.left[l] == NIL {
                hk.dfs(l);
            }
        }
    }
    Matching::from_mates(hk.left, hk.right)
}

struct HopcroftKarp<'a> {
    g: &'a BipartiteGraph,
    left: Vec<usize>,
    right: Vec<usize>,
    dist: Vec<usize>,
    next: Vec<usize>,
}

impl HopcroftKarp<'_> {
    /// Layers free left vertices; true if some augmenting path exists.
    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for l in 0..self.g.left_count {
            if self.left[l] == NIL {
                self.dist[l] = 0;
                queue.push_back(l);
            } else {
                self.dist[l] = NIL;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in self.g.neighbors(l) {
                match self.right[r] {
                    NIL => found = true,
                    m if self.dist[m] == NIL => {
                        self.dist[m] = self.dist[l] + 1;
                        queue.push_back(m);
                    }
                    _ => {}
                }
            }
        }
        found
    }

    fn dfs(&mut self, l: usize) -> bool {
        while self.next[l] < self.g.adj[l].len() {
            let r = self.g.adj[l][self.next[l]];
            self.next[l] += 1;
            let m = self.right[r];
            if m == NIL || (self.dist[m] == self.dist[l] + 1 && self.dfs(m)) {
                self.left[l] = r;
                self.right[r] = l;
                return true;
            }
        }
        self.dist[l] = NIL;
        false
    }
}

/// True iff the state bipartite graph of `a` has a perfect matching.
pub fn has_perfect_matching(a: &StructMatrix) -> Result<bool> {
    let g = state_bipartite(a)?;
    Ok(maximum_matching(&g).right_unmatched().is_empty())
}

/// Minimum-cost assignment of every row to a distinct column, `rows <= cols`.
/// Shortest augmenting paths with potentials; `O(rows^2 * cols)`.
pub(crate) fn min_cost_assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let rows = cost.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = cost[0].len();
    assert!(rows <= cols, "assignment needs rows <= cols");
    const INF: i64 = i64::MAX / 4;

    // 1-based internally; column 0 is a virtual root.
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![INF; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = INF;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; rows];
    for j in 1..=cols {
        if owner[j] != 0 {
            assignment[owner[j] - 1] = j - 1;
        }
    }
    assignment
}
