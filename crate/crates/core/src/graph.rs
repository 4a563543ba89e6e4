//! State and system digraphs, SCC decomposition, and condensation.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::structmat::{normalize_index_set, ProblemInstance, StructMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    State,
    Input,
}

/// A directed graph whose state vertices occupy indices `0..state_count`
/// and whose input vertices (if any) follow them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    kinds: Vec<VertexKind>,
    out: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Digraph {
    /// Builds a digraph; duplicate edges collapse to one.
    pub fn new<I>(kinds: Vec<VertexKind>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = kinds.len();
        let states = kinds.iter().take_while(|&&k| k == VertexKind::State).count();
        if kinds[states..].contains(&VertexKind::State) {
            return Err(Error::StatesNotPrefix);
        }
        let mut out = vec![Vec::new(); n];
        for (from, to) in edges {
            if from >= n || to >= n {
                return Err(Error::EdgeOutOfRange {
                    from,
                    to,
                    vertices: n,
                });
            }
            if kinds[to] == VertexKind::Input {
                return Err(Error::InputHasIncoming { vertex: to });
            }
            out[from].push(to);
        }
        let mut edge_count = 0;
        for adj in &mut out {
            adj.sort_unstable();
            adj.dedup();
            edge_count += adj.len();
        }
        Ok(Self {
            kinds,
            out,
            edge_count,
        })
    }

    /// A digraph with state vertices only.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(vec![VertexKind::State; vertex_count], edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn state_count(&self) -> usize {
        self.kinds
            .iter()
            .take_while(|&&k| k == VertexKind::State)
            .count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out[from].binary_search(&to).is_ok()
    }

    /// All edges, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u, v)))
    }
}

/// The state digraph: edge `i -> j` iff the pattern has a star at `(j, i)`.
pub fn state_digraph(a: &StructMatrix) -> Result<Digraph> {
    a.require_square()?;
    Digraph::from_edges(a.rows(), a.stars().map(|(r, c)| (c, r)))
}

/// The system digraph: states `0..n`, inputs `n..n+p`, edge `n+j -> i` iff
/// the input matrix has a star at `(i, j)`.
pub fn system_digraph(inst: &ProblemInstance) -> Digraph {
    let n = inst.n();
    let mut kinds = vec![VertexKind::State; n];
    kinds.extend(std::iter::repeat_n(VertexKind::Input, inst.p()));
    let edges = inst
        .a_bar()
        .stars()
        .map(|(r, c)| (c, r))
        .chain(inst.b_bar().stars().map(|(i, j)| (n + j, i)));
    Digraph::new(kinds, edges).expect("instance invariants guarantee a valid system digraph")
}

/// SCC decomposition of the state part of a digraph and its DAG.
///
/// SCC indices follow reverse topological order: every DAG edge `(s, t)`
/// satisfies `s > t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    scc_id: Vec<usize>,
    members: Vec<Vec<usize>>,
    dag_edges: BTreeSet<(usize, usize)>,
    non_top_linked: BTreeSet<usize>,
}

impl Condensation {
    pub fn scc_count(&self) -> usize {
        self.members.len()
    }

    pub fn scc_of(&self, v: usize) -> usize {
        self.scc_id[v]
    }

    pub fn scc_ids(&self) -> &[usize] {
        &self.scc_id
    }

    /// Member vertices of SCC `s`, ascending.
    pub fn members(&self, s: usize) -> &[usize] {
        &self.members[s]
    }

    pub fn dag_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.dag_edges
    }

    pub fn non_top_linked(&self) -> &BTreeSet<usize> {
        &self.non_top_linked
    }

    pub fn is_non_top_linked(&self, s: usize) -> bool {
        self.non_top_linked.contains(&s)
    }

    /// Non-top-linked SCCs ordered by their lowest member vertex. Position
    /// in this list is the universe element used by the set-cover reduction.
    pub fn non_top_linked_ordered(&self) -> Vec<usize> {
        let mut ntl: Vec<usize> = self.non_top_linked.iter().copied().collect();
        ntl.sort_by_key(|&s| self.members[s][0]);
        ntl
    }

    /// One line per SCC with 1-based state labels; non-top-linked SCCs are
    /// marked `NON-TOP`.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (s, members) in self.members.iter().enumerate() {
            let _ = write!(out, "SCC {}:", s + 1);
            for v in members {
                let _ = write!(out, " x{}", v + 1);
            }
            if self.is_non_top_linked(s) {
                out.push_str(" NON-TOP");
            }
            out.push('\n');
        }
        out
    }
}

/// Iterative Tarjan over the state vertices; input vertices are skipped.
pub fn condense(g: &Digraph) -> Condensation {
    const UNVISITED: usize = usize::MAX;
    let n = g.state_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut scc_id = vec![UNVISITED; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    // (vertex, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = g.successors(v);
            if let Some(&w) = succ.get(*pos) {
                *pos += 1;
                if w >= n {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = members.len();
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    scc_id[w] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                members.push(comp);
            }
        }
    }

    let mut dag_edges = BTreeSet::new();
    for (u, v) in g.edges() {
        if u < n && v < n && scc_id[u] != scc_id[v] {
            dag_edges.insert((scc_id[u], scc_id[v]));
        }
    }
    let mut has_incoming = vec![false; members.len()];
    for &(_, t) in &dag_edges {
        has_incoming[t] = true;
    }
    let non_top_linked = (0..members.len()).filter(|&s| !has_incoming[s]).collect();

    Condensation {
        scc_id,
        members,
        dag_edges,
        non_top_linked,
    }
}

/// Non-top-linked SCCs holding at least one state actuated by an input in
/// `j_set`.
pub fn input_coverage(
    cond: &Condensation,
    inst: &ProblemInstance,
    j_set: &[usize],
) -> Result<BTreeSet<usize>> {
    let chosen = normalize_index_set(j_set, inst.p())?;
    let mut selected = vec![false; inst.p()];
    for j in chosen {
        selected[j] = true;
    }
    Ok(inst
        .b_bar()
        .stars()
        .filter(|&(_, j)| selected[j])
        .map(|(r, _)| cond.scc_of(r))
        .filter(|&s| cond.is_non_top_linked(s))
        .collect())
}
