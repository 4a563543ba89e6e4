//! Minimum set covering: greedy and branch-and-bound solvers, the
//! set-cover file format, and the construction that turns a set-cover
//! instance into an input selection problem with a diagonal state matrix.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::structmat::{ProblemInstance, StructMatrix};

/// Universe `{0, .., m-1}` and an ordered family of subsets whose union is
/// the universe. Empty sets are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe_size: usize,
    sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    /// Sorts and dedups each set. Rejects an empty universe, elements out of
    /// range, and families that leave some element uncovered.
    pub fn new(universe_size: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if universe_size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut covered = vec![false; universe_size];
        let mut sets = sets;
        for (j, set) in sets.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            for &e in set.iter() {
                if e >= universe_size {
                    return Err(Error::ElementOutOfRange {
                        set: j,
                        element: e,
                        universe: universe_size,
                    });
                }
                covered[e] = true;
            }
        }
        if let Some(element) = covered.iter().position(|&c| !c) {
            return Err(Error::Uncoverable { element });
        }
        Ok(Self {
            universe_size,
            sets,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, j: usize) -> &[usize] {
        &self.sets[j]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Parses `M N` followed by exactly `N` set lines (an empty line is an
    /// empty set).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (line, header) = lines.next().ok_or(Error::MissingHeader)?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_field = |s: &str| {
            s.parse::<usize>().map_err(|e| Error::MalformedHeader {
                line,
                reason: format!("{s:?}: {e}"),
            })
        };
        let (m, count) = match fields.as_slice() {
            [m, n] => (parse_field(m)?, parse_field(n)?),
            _ => {
                return Err(Error::MalformedHeader {
                    line,
                    reason: "expected \"M N\"".into(),
                })
            }
        };
        let mut sets = Vec::with_capacity(count);
        for (line, text) in lines.by_ref().take(count) {
            let set = text
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|e| Error::MalformedEntry {
                        line,
                        reason: format!("{tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            sets.push(set);
        }
        if sets.len() != count {
            return Err(Error::MalformedEntry {
                line: line + sets.len() + 1,
                reason: format!("expected {count} set lines, found {}", sets.len()),
            });
        }
        if let Some((line, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::MalformedEntry {
                line,
                reason: "unexpected content after the last set".into(),
            });
        }
        Self::new(m, sets)
    }
}

impl fmt::Display for SetCoverInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.universe_size, self.sets.len())?;
        for set in &self.sets {
            let line: Vec<String> = set.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SetCoverInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// True iff the sets indexed by `k_set` cover the universe.
pub fn is_cover(inst: &SetCoverInstance, k_set: &[usize]) -> Result<bool> {
    let mut covered = vec![false; inst.universe_size];
    for &j in k_set {
        let set = inst.sets.get(j).ok_or(Error::SetOutOfRange {
            index: j,
            sets: inst.sets.len(),
        })?;
        for &e in set {
            covered[e] = true;
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Repeatedly takes the set covering the most uncovered elements, lowest
/// index on ties. Returned indices are sorted.
pub fn greedy_cover(inst: &SetCoverInstance) -> Vec<usize> {
    let mut covered = vec![false; inst.universe_size];
    let mut remaining = inst.universe_size;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (best, gain) = inst
            .sets
            .iter()
            .enumerate()
            .map(|(j, s)| (j, s.iter().filter(|&&e| !covered[e]).count()))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        debug_assert!(gain > 0, "instance invariant guarantees progress");
        for &e in &inst.sets[best] {
            if !covered[e] {
                covered[e] = true;
                remaining -= 1;
            }
        }
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen
}

/// Minimum-cardinality cover by branch and bound. Among minimum covers the
/// lexicographically smallest sorted index list is returned.
pub fn exact_min_cover(inst: &SetCoverInstance) -> Vec<usize> {
    let mut containing = vec![Vec::new(); inst.universe_size];
    for (j, set) in inst.sets.iter().enumerate() {
        for &e in set {
            containing[e].push(j);
        }
    }
    let mut search = BranchAndBound {
        inst,
        containing,
        max_set: inst.sets.iter().map(Vec::len).max().unwrap_or(0),
        cover_count: vec![0; inst.universe_size],
        uncovered: inst.universe_size,
        picked: Vec::new(),
        best: greedy_cover(inst),
    };
    search.run();
    search.best
}

struct BranchAndBound<'a> {
    inst: &'a SetCoverInstance,
    containing: Vec<Vec<usize>>,
    max_set: usize,
    cover_count: Vec<usize>,
    uncovered: usize,
    picked: Vec<usize>,
    best: Vec<usize>,
}

impl BranchAndBound<'_> {
    fn lower_bound(&self) -> usize {
        self.picked.len() + self.uncovered.div_ceil(self.max_set)
    }

    fn add(&mut self, j: usize) {
        for &e in &self.inst.sets[j] {
            if self.cover_count[e] == 0 {
                self.uncovered -= 1;
            }
            self.cover_count[e] += 1;
        }
        self.picked.push(j);
    }

    fn remove(&mut self, j: usize) {
        self.picked.pop();
        for &e in &self.inst.sets[j] {
            self.cover_count[e] -= 1;
            if self.cover_count[e] == 0 {
                self.uncovered += 1;
            }
        }
    }

    fn gain(&self, j: usize) -> usize {
        self.inst.sets[j]
            .iter()
            .filter(|&&e| self.cover_count[e] == 0)
            .count()
    }

    fn run(&mut self) {
        if self.uncovered == 0 {
            let mut cand = self.picked.clone();
            cand.sort_unstable();
            if cand.len() < self.best.len() || (cand.len() == self.best.len() && cand < self.best) {
                self.best = cand;
            }
            return;
        }
        // Prune only on strict excess so every minimum cover stays reachable
        // for the lexicographic tie-break.
        if self.lower_bound() > self.best.len() {
            return;
        }
        let element = self
            .cover_count
            .iter()
            .position(|&c| c == 0)
            .expect("uncovered element exists");
        let mut options = self.containing[element].clone();
        options.sort_by_key(|&j| (std::cmp::Reverse(self.gain(j)), j));
        for j in options {
            self.add(j);
            self.run();
            self.remove(j);
        }
    }
}

/// Diagonal state pattern over the universe, and an input matrix with a
/// star at `(i, j)` iff element `i` belongs to set `j`.
pub fn setcover_to_mincis(inst: &SetCoverInstance) -> ProblemInstance {
    let m = inst.universe_size;
    let stars = inst
        .sets
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.iter().map(move |&i| (i, j)));
    let b = StructMatrix::new(m, inst.sets.len(), stars).expect("elements lie in the universe");
    ProblemInstance::new(StructMatrix::identity(m), b).expect("shapes agree by construction")
}

/// `H(k) = 1 + 1/2 + ... + 1/k`.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}
