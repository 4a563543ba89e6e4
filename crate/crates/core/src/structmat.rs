//! Zero/star patterns and problem instances.
//!
//! Pattern files are line oriented: a `ROWS COLS` header, then one `R C`
//! line per star (0-based). Blank lines and lines starting with `#` are
//! ignored. An instance file holds two pattern blocks, the state matrix
//! followed by the input matrix, separated by a line containing `---`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A structural matrix: dimensions plus the set of nonzero (star) positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructMatrix {
    rows: usize,
    cols: usize,
    stars: BTreeSet<(usize, usize)>,
}

impl StructMatrix {
    pub fn new<I>(rows: usize, cols: usize, stars: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (row, col) in stars {
            if row >= rows || col >= cols {
                return Err(Error::StarOutOfRange {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            if !set.insert((row, col)) {
                return Err(Error::DuplicateStar { row, col });
            }
        }
        Ok(Self {
            rows,
            cols,
            stars: set,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            stars: BTreeSet::new(),
        }
    }

    /// The `n x n` pattern with stars exactly on the diagonal.
    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            stars: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn star_count(&self) -> usize {
        self.stars.len()
    }

    pub fn is_star(&self, row: usize, col: usize) -> bool {
        self.stars.contains(&(row, col))
    }

    /// Star positions in row-major order.
    pub fn stars(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.stars.iter().copied()
    }

    /// Rows holding a star in column `col`, ascending.
    pub fn column(&self, col: usize) -> Vec<usize> {
        self.stars
            .iter()
            .filter(|&&(_, c)| c == col)
            .map(|&(r, _)| r)
            .collect()
    }

    /// Row indices per column, built in one pass over the stars.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.cols];
        for &(r, c) in &self.stars {
            cols[c].push(r);
        }
        cols
    }

    pub fn has_full_diagonal(&self) -> bool {
        self.first_missing_diagonal().is_none()
    }

    pub(crate) fn first_missing_diagonal(&self) -> Option<usize> {
        (0..self.rows.min(self.cols)).find(|&i| !self.is_star(i, i))
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            stars: self.stars.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }

    /// Keeps the columns listed in `j_set`, in ascending index order.
    /// Duplicate indices are collapsed.
    pub fn column_submatrix(&self, j_set: &[usize]) -> Result<Self> {
        let kept = normalize_index_set(j_set, self.cols)?;
        let mut position = vec![None; self.cols];
        for (k, &j) in kept.iter().enumerate() {
            position[j] = Some(k);
        }
        let stars = self
            .stars
            .iter()
            .filter_map(|&(r, c)| position[c].map(|k| (r, k)))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: kept.len(),
            stars,
        })
    }

    /// Parses a single pattern block. Line numbers in errors are 1-based.
    pub fn parse(text: &str) -> Result<Self> {
        parse_block(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
    }

    /// Serializes into the pattern file format; inverse of [`StructMatrix::parse`].
    pub fn to_pattern_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StructMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for (r, c) in &self.stars {
            writeln!(f, "{r} {c}")?;
        }
        Ok(())
    }
}

impl FromStr for StructMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Convenience alias matching the operation name used throughout the crate.
pub fn identity_pattern(n: usize) -> StructMatrix {
    StructMatrix::identity(n)
}

pub fn parse_struct_matrix(text: &str) -> Result<StructMatrix> {
    StructMatrix::parse(text)
}

/// Sorts and dedups an index set, rejecting indices `>= bound`.
pub(crate) fn normalize_index_set(j_set: &[usize], bound: usize) -> Result<Vec<usize>> {
    let mut kept = j_set.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&index) = kept.last() {
        if index >= bound {
            return Err(Error::ColumnOutOfRange { index, cols: bound });
        }
    }
    Ok(kept)
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let a = it.next().ok_or("expected two integers")?;
    let b = it.next().ok_or("expected two integers")?;
    if it.next().is_some() {
        return Err("trailing tokens".into());
    }
    let a = a.parse::<usize>().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.parse::<usize>().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

fn parse_block<'a, I>(lines: I) -> Result<StructMatrix>
where
    I: IntoIterator<Item = (usize, &'a str)>,
{
    let mut lines = lines.into_iter().filter(|(_, l)| !is_skippable(l));
    let (line, header) = lines.next().ok_or(Error::MissingHeader)?;
    let (rows, cols) =
        parse_pair(header).map_err(|reason| Error::MalformedHeader { line, reason })?;

    let mut stars = BTreeSet::new();
    for (line, text) in lines {
        let (row, col) =
            parse_pair(text).map_err(|reason| Error::MalformedEntry { line, reason })?;
        if row >= rows || col >= cols {
            return Err(Error::EntryOutOfRange {
                line,
                row,
                col,
                rows,
                cols,
            });
        }
        if !stars.insert((row, col)) {
            return Err(Error::DuplicateEntry { line });
        }
    }
    Ok(StructMatrix { rows, cols, stars })
}

/// Splits an instance file into its two pattern blocks without checking
/// shapes. Callers that reinterpret the blocks (the dual problem) validate
/// afterwards through [`ProblemInstance::new`].
pub fn parse_pattern_pair(text: &str) -> Result<(StructMatrix, StructMatrix)> {
    let mut blocks: Vec<Vec<(usize, &str)>> = vec![Vec::new()];
    for (i, l) in text.lines().enumerate() {
        if l.trim() == "---" {
            blocks.push(Vec::new());
        } else {
            blocks.last_mut().expect("non-empty").push((i + 1, l));
        }
    }
    if blocks.len() != 2 {
        return Err(Error::InstanceBlocks {
            blocks: blocks.len(),
        });
    }
    let b = parse_block(blocks.pop().expect("two blocks"))?;
    let a = parse_block(blocks.pop().expect("two blocks"))?;
    Ok((a, b))
}

/// The pair (state matrix, input matrix) of a constrained input selection problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    a_bar: StructMatrix,
    b_bar: StructMatrix,
    label: Option<String>,
}

impl ProblemInstance {
    pub fn new(a_bar: StructMatrix, b_bar: StructMatrix) -> Result<Self> {
        a_bar.require_square()?;
        if a_bar.rows() == 0 {
            return Err(Error::NoStates);
        }
        if b_bar.rows() != a_bar.rows() {
            return Err(Error::ShapeMismatch {
                n: a_bar.rows(),
                rows: b_bar.rows(),
            });
        }
        Ok(Self {
            a_bar,
            b_bar,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn a_bar(&self) -> &StructMatrix {
        &self.a_bar
    }

    pub fn b_bar(&self) -> &StructMatrix {
        &self.b_bar
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Number of states.
    pub fn n(&self) -> usize {
        self.a_bar.rows()
    }

    /// Number of candidate inputs.
    pub fn p(&self) -> usize {
        self.b_bar.cols()
    }

    /// The output-selection dual: both patterns transposed. The second
    /// matrix is read as an output matrix with one row per output.
    pub fn dual_of(a_bar: &StructMatrix, c_bar: &StructMatrix) -> Result<Self> {
        Self::new(a_bar.transpose(), c_bar.transpose())
    }

    /// Parses an instance file. A `# label: ...` comment sets the label.
    pub fn parse(text: &str) -> Result<Self> {
        let (a, b) = parse_pattern_pair(text)?;
        let inst = Self::new(a, b)?;
        Ok(match find_label(text) {
            Some(label) => inst.with_label(label),
            None => inst,
        })
    }

    pub fn to_instance_string(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn find_label(text: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|l| l.trim().strip_prefix("label:"))
        .map(|l| l.trim().to_string())
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            writeln!(f, "# label: {label}")?;
        }
        write!(f, "{}", self.a_bar)?;
        writeln!(f, "---")?;
        write!(f, "{}", self.b_bar)
    }
}

impl FromStr for ProblemInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
