//! Minimum constrained input selection solvers.
//!
//! Under a perfect matching of the state bipartite graph the problem maps
//! onto minimum set covering: one universe element per non-top-linked SCC,
//! one set per input. With dedicated inputs (one per state) the problem is
//! polynomial and is solved with a biased maximum matching. A brute-force
//! enumerator handles arbitrary instances of modest input count.

use std::fmt;

use itertools::Itertools;

use crate::ctrl::is_structurally_controllable;
use crate::error::{Error, Result};
use crate::graph::{condense, state_digraph, Condensation};
use crate::matching::{has_perfect_matching, min_cost_assignment};
use crate::setcover::{exact_min_cover, greedy_cover, SetCoverInstance};
use crate::structmat::{ProblemInstance, StructMatrix};

pub const DEFAULT_BRUTE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    Exact,
    Greedy,
    BruteForce,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::Exact => "exact",
            Certificate::Greedy => "greedy",
            Certificate::BruteForce => "brute-force",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveMode {
    Exact,
    Greedy,
}

/// A chosen input set together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionResult {
    pub chosen: Vec<usize>,
    pub feasible: bool,
    pub certificate: Certificate,
}

impl SelectionResult {
    fn feasible(chosen: Vec<usize>, certificate: Certificate) -> Self {
        Self {
            chosen,
            feasible: true,
            certificate,
        }
    }

    fn infeasible(certificate: Certificate) -> Self {
        Self {
            chosen: Vec::new(),
            feasible: false,
            certificate,
        }
    }

    /// `|J|` when feasible.
    pub fn objective(&self) -> Option<usize> {
        self.feasible.then_some(self.chosen.len())
    }
}

/// `FEASIBLE k: j1 .. jk [certificate]` with 1-based indices, or `INFEASIBLE`.
impl fmt::Display for SelectionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.feasible {
            return f.write_str("INFEASIBLE");
        }
        write!(f, "FEASIBLE {}:", self.chosen.len())?;
        for j in &self.chosen {
            write!(f, " {}", j + 1)?;
        }
        write!(f, " [{}]", self.certificate)
    }
}

/// Set-cover sets per input without the coverability check: element `i`
/// is the `i`-th non-top-linked SCC ordered by lowest member state.
fn reduction_sets(cond: &Condensation, inst: &ProblemInstance) -> (Vec<usize>, Vec<Vec<usize>>) {
    let ntl = cond.non_top_linked_ordered();
    let mut element = vec![None; cond.scc_count()];
    for (i, &s) in ntl.iter().enumerate() {
        element[s] = Some(i);
    }
    let mut sets = vec![Vec::new(); inst.p()];
    for (r, j) in inst.b_bar().stars() {
        if let Some(i) = element[cond.scc_of(r)] {
            sets[j].push(i);
        }
    }
    (ntl, sets)
}

/// Builds the set-cover instance whose covers are exactly the selections
/// making the system structurally controllable.
pub fn mincis_reduce(inst: &ProblemInstance) -> Result<SetCoverInstance> {
    if !has_perfect_matching(inst.a_bar())? {
        return Err(Error::AssumptionViolated);
    }
    let cond = condense(&state_digraph(inst.a_bar())?);
    let (ntl, sets) = reduction_sets(&cond, inst);
    SetCoverInstance::new(ntl.len(), sets).map_err(|e| match e {
        Error::Uncoverable { element } => Error::Infeasible { scc: ntl[element] },
        other => other,
    })
}

/// Solves through the set-cover reduction. Set indices are input indices.
pub fn solve_mincis(inst: &ProblemInstance, mode: SolveMode) -> Result<SelectionResult> {
    let (cover, certificate) = match mincis_reduce(inst) {
        Ok(cover) => match mode {
            SolveMode::Exact => (exact_min_cover(&cover), Certificate::Exact),
            SolveMode::Greedy => (greedy_cover(&cover), Certificate::Greedy),
        },
        Err(Error::Infeasible { .. }) => {
            let certificate = match mode {
                SolveMode::Exact => Certificate::Exact,
                SolveMode::Greedy => Certificate::Greedy,
            };
            return Ok(SelectionResult::infeasible(certificate));
        }
        Err(e) => return Err(e),
    };
    postchecked(inst, cover, certificate)
}

fn postchecked(inst: &ProblemInstance, chosen: Vec<usize>, certificate: Certificate) -> Result<SelectionResult> {
    if !is_structurally_controllable(inst, &chosen)? {
        return Err(Error::PostcheckFailed { chosen });
    }
    Ok(SelectionResult::feasible(chosen, certificate))
}

/// Enumerates selections by increasing size, lexicographically within a
/// size, returning the first controllable one. Refuses when `p > cap`.
pub fn brute_force_mincis(inst: &ProblemInstance, cap: usize) -> Result<SelectionResult> {
    let p = inst.p();
    if p > cap {
        return Err(Error::BruteCapExceeded { inputs: p, cap });
    }
    let all: Vec<usize> = (0..p).collect();
    // controllability is monotone in the selection
    if !is_structurally_controllable(inst, &all)? {
        return Ok(SelectionResult::infeasible(Certificate::BruteForce));
    }
    for k in 1..=p {
        for j_set in (0..p).combinations(k) {
            if is_structurally_controllable(inst, &j_set)? {
                return Ok(SelectionResult::feasible(j_set, Certificate::BruteForce));
            }
        }
    }
    unreachable!("the full selection is controllable")
}

/// Minimum dedicated-input selection: the fewest states to actuate
/// directly so that `(A, I_n(J))` is structurally controllable.
///
/// A maximum matching of the state bipartite graph is chosen so that as
/// many non-top-linked SCCs as possible contain a right-unmatched state.
/// The answer is every right-unmatched state plus the lowest state of each
/// non-top-linked SCC left without one. Runs in `O(n^3)`.
pub fn dedicated_input_selection(a: &StructMatrix) -> Result<SelectionResult> {
    let cond = condense(&state_digraph(a)?);
    let n = a.rows();
    let ntl = cond.non_top_linked_ordered();
    let beta = ntl.len();

    // Rows are right vertices (states). Columns 0..n are left states with
    // weight `heavy` on edges; columns n.. are one slack vertex per
    // non-top-linked SCC that may absorb one unmatched state inside it.
    // `heavy > beta` makes matching size dominate SCC coverage.
    let heavy = beta as i64 + 1;
    let mut slack_of = vec![None; cond.scc_count()];
    for (t, &s) in ntl.iter().enumerate() {
        slack_of[s] = Some(n + t);
    }
    let mut cost = vec![vec![0i64; n + beta]; n];
    for (r, c) in a.stars() {
        cost[r][c] = -heavy;
    }
    for (r, row) in cost.iter_mut().enumerate() {
        if let Some(col) = slack_of[cond.scc_of(r)] {
            row[col] = -1;
        }
    }
    let assignment = min_cost_assignment(&cost);

    let mut unmatched: Vec<usize> = (0..n)
        .filter(|&r| {
            let c = assignment[r];
            !(c < n && a.is_star(r, c))
        })
        .collect();
    let mut has_unmatched = vec![false; cond.scc_count()];
    for &r in &unmatched {
        has_unmatched[cond.scc_of(r)] = true;
    }
    let reps = ntl
        .iter()
        .filter(|&&s| !has_unmatched[s])
        .map(|&s| cond.members(s)[0]);
    unmatched.extend(reps);
    unmatched.sort_unstable();

    let inst = ProblemInstance::new(a.clone(), StructMatrix::identity(n))?;
    postchecked(&inst, unmatched, Certificate::Exact)
}

/// Dedicated-input leader selection; every agent must have a self-loop.
pub fn leader_selection_unconstrained(w: &StructMatrix) -> Result<SelectionResult> {
    require_full_diagonal(w)?;
    dedicated_input_selection(w)
}

/// Leader selection over candidate leaders `b`; every agent must have a
/// self-loop, which guarantees the set-cover reduction applies.
pub fn leader_selection_constrained(w: &StructMatrix, b: &StructMatrix) -> Result<SelectionResult> {
    require_full_diagonal(w)?;
    let inst = ProblemInstance::new(w.clone(), b.clone())?;
    solve_mincis(&inst, SolveMode::Exact)
}

fn require_full_diagonal(w: &StructMatrix) -> Result<()> {
    w.require_square()?;
    match w.first_missing_diagonal() {
        Some(index) => Err(Error::MissingDiagonal { index }),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pattern from `x_i -> x_j` edges (1-based) plus self-loops everywhere.
    fn coupling(n: usize, edges: &[(usize, usize)]) -> StructMatrix {
        let stars = edges
            .iter()
            .map(|&(i, j)| (j - 1, i - 1))
            .chain((0..n).map(|i| (i, i)));
        StructMatrix::new(n, n, stars.unique()).unwrap()
    }

    fn constrained_example() -> ProblemInstance {
        let w = coupling(
            9,
            &[(1, 2), (2, 1), (3, 4), (4, 3), (2, 5), (5, 6), (6, 5), (4, 7), (7, 8), (8, 9), (9, 7), (6, 9)],
        );
        let b = StructMatrix::new(
            9,
            4,
            [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3), (7, 4), (8, 4)]
                .map(|(r, c)| (r - 1, c - 1)),
        )
        .unwrap();
        ProblemInstance::new(w, b).unwrap()
    }

    #[test]
    fn reduction_on_constrained_example() {
        let cover = mincis_reduce(&constrained_example()).unwrap();
        assert_eq!(cover.universe_size(), 2);
        assert_eq!(cover.sets(), &[vec![0], vec![0, 1], vec![1], vec![]]);
    }

    #[test]
    fn solve_on_constrained_example() {
        let inst = constrained_example();
        let res = solve_mincis(&inst, SolveMode::Exact).unwrap();
        assert_eq!(res.chosen, vec![1]);
        assert_eq!(res.to_string(), "FEASIBLE 1: 2 [exact]");
        let lead = leader_selection_constrained(inst.a_bar(), inst.b_bar()).unwrap();
        assert_eq!(lead, res);
    }

    #[test]
    fn reduction_on_identity_inputs() {
        let inst = ProblemInstance::new(StructMatrix::identity(4), StructMatrix::identity(4)).unwrap();
        let cover = mincis_reduce(&inst).unwrap();
        assert_eq!(cover.universe_size(), 4);
        assert!(cover.sets().iter().all(|s| s.len() == 1));
    }

    #[test]
    fn reduction_errors() {
        let no_pm = ProblemInstance::new(StructMatrix::zeros(2, 2), StructMatrix::identity(2)).unwrap();
        assert_eq!(mincis_reduce(&no_pm).unwrap_err(), Error::AssumptionViolated);
        assert_eq!(solve_mincis(&no_pm, SolveMode::Exact).unwrap_err(), Error::AssumptionViolated);

        let uncovered = ProblemInstance::new(
            StructMatrix::identity(2),
            StructMatrix::new(2, 1, [(0, 0)]).unwrap(),
        )
        .unwrap();
        assert!(matches!(mincis_reduce(&uncovered), Err(Error::Infeasible { .. })));
        let res = solve_mincis(&uncovered, SolveMode::Greedy).unwrap();
        assert!(!res.feasible && res.chosen.is_empty());
        assert_eq!(res.to_string(), "INFEASIBLE");
    }

    #[test]
    fn single_column_covering_everything() {
        let b = StructMatrix::new(3, 3, [(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)]).unwrap();
        let inst = ProblemInstance::new(StructMatrix::identity(3), b).unwrap();
        assert_eq!(solve_mincis(&inst, SolveMode::Exact).unwrap().chosen, vec![1]);
        assert_eq!(solve_mincis(&inst, SolveMode::Greedy).unwrap().chosen, vec![1]);
    }

    #[test]
    fn brute_force_examples() {
        let empty = ProblemInstance::new(StructMatrix::identity(3), StructMatrix::zeros(3, 0)).unwrap();
        let res = brute_force_mincis(&empty, DEFAULT_BRUTE_CAP).unwrap();
        assert!(!res.feasible);
        assert_eq!(res.objective(), None);

        let res = brute_force_mincis(&constrained_example(), DEFAULT_BRUTE_CAP).unwrap();
        assert_eq!(res.chosen, vec![1]);
        assert_eq!(res.to_string(), "FEASIBLE 1: 2 [brute-force]");

        assert_eq!(
            brute_force_mincis(&constrained_example(), 3).unwrap_err(),
            Error::BruteCapExceeded { inputs: 4, cap: 3 }
        );
    }

    #[test]
    fn brute_force_without_perfect_matching() {
        // star graph x1 -> x2, x1 -> x3: needs two inputs
        let a = StructMatrix::new(3, 3, [(1, 0), (2, 0)]).unwrap();
        let inst = ProblemInstance::new(a, StructMatrix::identity(3)).unwrap();
        assert_eq!(brute_force_mincis(&inst, DEFAULT_BRUTE_CAP).unwrap().chosen, vec![0, 1]);
    }

    #[test]
    fn dedicated_examples() {
        // strongly connected with perfect matching
        let cyc = StructMatrix::new(4, 4, (0..4).map(|i| ((i + 1) % 4, i))).unwrap();
        let res = dedicated_input_selection(&cyc).unwrap();
        assert_eq!(res.chosen, vec![0]);

        // star without self-loops: one root SCC, two leaves sharing it
        let a = StructMatrix::new(3, 3, [(1, 0), (2, 0)]).unwrap();
        assert_eq!(dedicated_input_selection(&a).unwrap().objective(), Some(2));

        // all-zero: every state needs its own input
        let z = StructMatrix::zeros(3, 3);
        assert_eq!(dedicated_input_selection(&z).unwrap().chosen, vec![0, 1, 2]);

        assert!(dedicated_input_selection(&StructMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn dedicated_prefers_unmatched_inside_top_sccs() {
        // x1 -> x2, x1 -> x3, no self-loops. SCCs are singletons; only {x1}
        // is non-top-linked. A matching can leave x1 unmatched on the right
        // plus one of x2/x3, so two inputs suffice.
        let a = StructMatrix::new(3, 3, [(1, 0), (2, 0)]).unwrap();
        let res = dedicated_input_selection(&a).unwrap();
        assert!(res.chosen.contains(&0));
        assert_eq!(res.chosen.len(), 2);
    }

    #[test]
    fn leader_selection_requires_diagonal() {
        let w = StructMatrix::new(2, 2, [(0, 0)]).unwrap();
        assert_eq!(
            leader_selection_unconstrained(&w).unwrap_err(),
            Error::MissingDiagonal { index: 1 }
        );
        assert!(leader_selection_constrained(&w, &StructMatrix::identity(2)).is_err());
    }

    #[test]
    fn constrained_with_identity_matches_unconstrained() {
        let w = constrained_example().a_bar().clone();
        let unconstrained = leader_selection_unconstrained(&w).unwrap();
        let constrained = leader_selection_constrained(&w, &StructMatrix::identity(9)).unwrap();
        assert_eq!(unconstrained.chosen, constrained.chosen);
        assert_eq!(unconstrained.chosen, vec![0, 2]);
    }
}
