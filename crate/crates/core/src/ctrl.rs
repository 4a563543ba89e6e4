//! Structural controllability checks.
//!
//! The general test combines input accessibility (every state reachable
//! from a selected input) with generic full rank of `[A B_J]` (a matching
//! saturating every state row). The specialised test assumes a perfect
//! matching of the state bipartite graph and only checks that every
//! non-top-linked SCC is actuated. A randomized numeric probe draws real
//! realizations of the pattern and computes the rank of the Kalman
//! controllability matrix.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{condense, input_coverage, state_digraph};
use crate::matching::{has_perfect_matching, maximum_matching, BipartiteGraph};
use crate::structmat::{normalize_index_set, ProblemInstance};

/// True iff `(A, B_J)` is structurally controllable.
pub fn is_structurally_controllable(inst: &ProblemInstance, j_set: &[usize]) -> Result<bool> {
    let chosen = normalize_index_set(j_set, inst.p())?;
    if chosen.is_empty() {
        return Ok(false);
    }
    let columns = inst.b_bar().columns();
    Ok(all_states_accessible(inst, &chosen, &columns) && has_full_generic_rank(inst, &chosen, &columns))
}

fn all_states_accessible(inst: &ProblemInstance, chosen: &[usize], columns: &[Vec<usize>]) -> bool {
    let n = inst.n();
    let a_cols = inst.a_bar().columns();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &j in chosen {
        for &r in &columns[j] {
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
    }
    let mut reached = queue.len();
    // x_c -> x_r for every star (r, c)
    while let Some(c) = queue.pop_front() {
        for &r in &a_cols[c] {
            if !seen[r] {
                seen[r] = true;
                reached += 1;
                queue.push_back(r);
            }
        }
    }
    reached == n
}

/// Bipartite graph of `[A B_J]`: columns on the left, rows on the right.
fn has_full_generic_rank(inst: &ProblemInstance, chosen: &[usize], columns: &[Vec<usize>]) -> bool {
    let n = inst.n();
    let edges = inst
        .a_bar()
        .stars()
        .map(|(r, c)| (c, r))
        .chain(
            chosen
                .iter()
                .enumerate()
                .flat_map(|(k, &j)| columns[j].iter().map(move |&r| (n + k, r))),
        );
    let g = BipartiteGraph::new(n + chosen.len(), n, edges).expect("indices within pattern bounds");
    maximum_matching(&g).right_unmatched().is_empty()
}

/// Controllability through non-top-linked SCC coverage. Requires the state
/// bipartite graph to have a perfect matching and refuses otherwise.
pub fn is_structurally_controllable_pm(inst: &ProblemInstance, j_set: &[usize]) -> Result<bool> {
    if !has_perfect_matching(inst.a_bar())? {
        return Err(Error::AssumptionViolated);
    }
    let cond = condense(&state_digraph(inst.a_bar())?);
    let covered = input_coverage(&cond, inst, j_set)?;
    Ok(&covered == cond.non_top_linked())
}

/// Draws `trials` realizations with entries uniform on `[-1, 1]` at star
/// positions and returns true iff any of them yields a controllability
/// matrix of rank `n`. Singular values below `tol * sigma_max` count as zero.
pub fn numeric_probe(
    inst: &ProblemInstance,
    j_set: &[usize],
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<bool> {
    let chosen = normalize_index_set(j_set, inst.p())?;
    if chosen.is_empty() {
        return Ok(false);
    }
    let b_sub = inst.b_bar().column_submatrix(&chosen)?;
    let n = inst.n();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut draw = |rows: usize, cols: usize, stars: &mut dyn Iterator<Item = (usize, usize)>| {
            let mut m = DMatrix::<f64>::zeros(rows, cols);
            for (r, c) in stars {
                m[(r, c)] = rng.random_range(-1.0..=1.0);
            }
            m
        };
        let a = draw(n, n, &mut inst.a_bar().stars());
        let b = draw(n, b_sub.cols(), &mut b_sub.stars());
        if numeric_rank(&controllability_matrix(&a, &b), tol) == n {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `[B, AB, ..., A^{n-1} B]`.
pub fn controllability_matrix(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let p = b.ncols();
    let mut k = DMatrix::<f64>::zeros(n, n * p);
    let mut block = b.clone();
    for step in 0..n {
        k.columns_mut(step * p, p).copy_from(&block);
        block = a * &block;
    }
    k
}

/// Number of singular values above `tol` times the largest one.
pub fn numeric_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * largest).count()
}
