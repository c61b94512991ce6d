//! Multiset collections built from lattice points, the sortedness test, and
//! decorated matrices.
//!
//! A lattice point `a` with coordinate sum `k` is read as the `k`-multiset
//! holding `a_i` copies of `i`. A collection of such multisets is *sorted*
//! when its rows can be ordered so that the column-major reading of the row
//! matrix is weakly increasing. Decorating the matrix marks every place where
//! that reading strictly increases.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// A point of `N^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<u32>);

impl LatticePoint {
    pub fn new(coords: Vec<u32>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }
}

impl From<Vec<u32>> for LatticePoint {
    fn from(v: Vec<u32>) -> Self {
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A weakly increasing list of values in `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct MultisetRow(Vec<u32>);

impl MultisetRow {
    pub fn new(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable();
        MultisetRow(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Multiplicity vector in `N^n`.
    pub fn to_point(&self, n: usize) -> LatticePoint {
        let mut coords = vec![0; n];
        for &e in &self.0 {
            coords[e as usize - 1] += 1;
        }
        LatticePoint(coords)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetCollection {
    rows: Vec<MultisetRow>,
    alphabet: u32,
}

impl MultisetCollection {
    pub fn new(rows: Vec<MultisetRow>, alphabet: u32) -> Result<Self> {
        if let Some(first) = rows.first() {
            let len = first.0.len();
            ensure!(
                rows.iter().all(|r| r.0.len() == len),
                InconsistentInput,
                "rows of a multiset collection must have equal length"
            );
        }
        ensure!(
            rows.iter().flat_map(|r| &r.0).all(|&e| e >= 1 && e <= alphabet),
            InconsistentInput,
            "entries must lie in [1, {alphabet}]"
        );
        Ok(MultisetCollection { rows, alphabet })
    }

    pub fn rows(&self) -> &[MultisetRow] {
        &self.rows
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn to_points(&self) -> Vec<LatticePoint> {
        self.rows.iter().map(|r| r.to_point(self.alphabet as usize)).collect()
    }

    pub fn reordered(&self, order: &[usize]) -> Self {
        MultisetCollection {
            rows: order.iter().map(|&k| self.rows[k].clone()).collect(),
            alphabet: self.alphabet,
        }
    }

    /// Column-major reading of the row matrix in the current row order.
    pub fn column_major(&self) -> Vec<u32> {
        let width = self.rows.first().map_or(0, |r| r.0.len());
        (0..width)
            .flat_map(|b| self.rows.iter().map(move |row| row.0[b]))
            .collect()
    }
}

/// Reads each point as a multiset. All points must share dimension and
/// coordinate sum.
pub fn multisets_from_points(points: &[LatticePoint]) -> Result<MultisetCollection> {
    let Some(first) = points.first() else {
        return MultisetCollection::new(Vec::new(), 0);
    };
    let (n, k) = (first.dim(), first.sum());
    for p in points {
        ensure!(p.dim() == n, InconsistentInput, "point {p} does not have dimension {n}");
        ensure!(p.sum() == k, InconsistentInput, "point {p} does not have coordinate sum {k}");
    }
    let rows = points
        .iter()
        .map(|p| {
            let entries = p
                .coords()
                .iter()
                .enumerate()
                .flat_map(|(i, &m)| std::iter::repeat_n(i as u32 + 1, m as usize))
                .collect();
            MultisetRow(entries)
        })
        .collect();
    MultisetCollection::new(rows, n as u32)
}

/// If the collection is sorted, returns a witness row order (indices into
/// the original rows). Duplicate rows are allowed and end up adjacent.
pub fn is_sorted(c: &MultisetCollection) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..c.rows.len()).collect();
    // column-major significance: compare first entries, then second, ...
    order.sort_by(|&a, &b| c.rows[a].0.cmp(&c.rows[b].0));
    let reading = c.reordered(&order).column_major();
    reading.windows(2).all(|w| w[0] <= w[1]).then_some(order)
}

/// A row matrix with marks between vertically adjacent cells that differ and
/// below columns whose bottom entry is smaller than the top of the next.
///
/// Marks are 1-indexed: a row mark `(a, b)` sits between rows `a` and `a + 1`
/// in column `b`; a bottom mark `b` sits under the last row of column `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecoratedMatrix {
    grid: Vec<Vec<u32>>,
    row_marks: BTreeSet<(usize, usize)>,
    bottom_marks: BTreeSet<usize>,
}

impl DecoratedMatrix {
    pub fn grid(&self) -> &[Vec<u32>] {
        &self.grid
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    pub fn row_marks(&self) -> &BTreeSet<(usize, usize)> {
        &self.row_marks
    }

    pub fn bottom_marks(&self) -> &BTreeSet<usize> {
        &self.bottom_marks
    }

    pub fn column_major(&self) -> Vec<u32> {
        (0..self.cols())
            .flat_map(|b| self.grid.iter().map(move |row| row[b]))
            .collect()
    }

    pub fn max_entry(&self) -> u32 {
        self.grid.iter().flatten().copied().max().unwrap_or(0)
    }

    /// When every row boundary carries exactly one mark, the column of the
    /// mark under row `a` for `a = 1..rows-1`.
    pub fn mark_columns(&self) -> Option<Vec<usize>> {
        let mut cols = vec![0usize; self.rows().saturating_sub(1)];
        for &(a, b) in &self.row_marks {
            if cols[a - 1] != 0 {
                return None;
            }
            cols[a - 1] = b;
        }
        cols.iter().all(|&c| c != 0).then_some(cols)
    }

    /// The multiset rows as lattice points of `N^n`.
    pub fn points(&self, n: usize) -> Vec<LatticePoint> {
        self.grid
            .iter()
            .map(|row| MultisetRow(row.clone()).to_point(n))
            .collect()
    }

    /// Plain-text rendering: `-` under a cell marks a row mark, `=` a bottom
    /// mark.
    pub fn render_text(&self) -> String {
        let width = self.max_entry().to_string().len().max(1);
        let mut out = String::new();
        for (a, row) in self.grid.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if b > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{v:>width$}");
            }
            out.push('\n');
            let (glyph, marked): (char, Vec<bool>) = if a + 1 < self.rows() {
                ('-', (1..=row.len()).map(|b| self.row_marks.contains(&(a + 1, b))).collect())
            } else {
                ('=', (1..=row.len()).map(|b| self.bottom_marks.contains(&b)).collect())
            };
            if marked.iter().any(|&m| m) {
                let line: Vec<String> = marked
                    .iter()
                    .map(|&m| if m { glyph.to_string().repeat(width) } else { " ".repeat(width) })
                    .collect();
                out.push_str(line.join(" ").trim_end());
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for DecoratedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// Builds the decorated matrix of a collection whose rows are already in
/// sorted order and pairwise distinct.
pub fn decorate(c: &MultisetCollection) -> Result<DecoratedMatrix> {
    let reading = c.column_major();
    ensure!(
        reading.windows(2).all(|w| w[0] <= w[1]),
        Precondition,
        "collection rows are not in sorted order"
    );
    ensure!(
        c.rows.windows(2).all(|w| w[0] != w[1]),
        Precondition,
        "collection rows must be pairwise distinct"
    );
    let grid: Vec<Vec<u32>> = c.rows.iter().map(|r| r.0.clone()).collect();
    Ok(decorate_grid(grid))
}

#[allow(clippy::needless_range_loop)]
fn decorate_grid(grid: Vec<Vec<u32>>) -> DecoratedMatrix {
    let k = grid.len();
    let m = grid.first().map_or(0, Vec::len);
    let mut row_marks = BTreeSet::new();
    for a in 0..k.saturating_sub(1) {
        for b in 0..m {
            if grid[a][b] < grid[a + 1][b] {
                row_marks.insert((a + 1, b + 1));
            }
        }
    }
    let mut bottom_marks = BTreeSet::new();
    if k > 0 {
        for b in 0..m.saturating_sub(1) {
            if grid[k - 1][b] < grid[0][b + 1] {
                bottom_marks.insert(b + 1);
            }
        }
    }
    DecoratedMatrix { grid, row_marks, bottom_marks }
}

/// Result of filling a `k x m` grid from one mark per row boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fill {
    pub matrix: DecoratedMatrix,
    /// Largest entry of the grid.
    pub max_entry: u32,
    /// Largest number of repeats of one value inside a single row.
    pub max_multiplicity: u32,
}

/// Fills a `rows x cols` grid starting from `1` in the top-left corner: the
/// cell under a mark is one larger than the cell above it, every other cell
/// copies the one above, and the top of each column copies the bottom of the
/// previous column. `marks[a - 1]` is the column of the mark between rows `a`
/// and `a + 1`.
#[allow(clippy::needless_range_loop)]
pub fn fill_from_marks(rows: usize, cols: usize, marks: &[usize]) -> Result<Fill> {
    ensure!(rows >= 1 && cols >= 1, InvalidParameter, "grid must be at least 1x1");
    ensure!(
        marks.len() + 1 == rows,
        InvalidParameter,
        "expected {} marks for {rows} rows, got {}",
        rows - 1,
        marks.len()
    );
    if let Some(bad) = marks.iter().find(|&&b| b == 0 || b > cols) {
        return Err(Error::InvalidParameter(format!("mark column {bad} outside [1, {cols}]")));
    }
    let mut grid = vec![vec![0u32; cols]; rows];
    let mut carry = 1;
    for b in 0..cols {
        grid[0][b] = carry;
        for a in 1..rows {
            grid[a][b] = grid[a - 1][b] + u32::from(marks[a - 1] == b + 1);
        }
        carry = grid[rows - 1][b];
    }
    let max_entry = carry;
    let max_multiplicity = grid
        .iter()
        .map(|row| {
            row.chunk_by(|x, y| x == y)
                .map(|run| run.len() as u32)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    let row_marks = marks.iter().enumerate().map(|(a, &b)| (a + 1, b)).collect();
    Ok(Fill {
        matrix: DecoratedMatrix { grid, row_marks, bottom_marks: BTreeSet::new() },
        max_entry,
        max_multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[u32]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint::new(p.to_vec())).collect()
    }

    fn rows(v: &[&[u32]], n: u32) -> MultisetCollection {
        MultisetCollection::new(v.iter().map(|r| MultisetRow::new(r.to_vec())).collect(), n).unwrap()
    }

    #[test]
    fn points_become_multisets() {
        let c = multisets_from_points(&pts(&[&[3, 2, 0]])).unwrap();
        assert_eq!(c.rows()[0].entries(), &[1, 1, 1, 2, 2]);
        let c = multisets_from_points(&pts(&[&[2, 1, 0, 1, 1, 0, 0, 1]])).unwrap();
        assert_eq!(c.rows()[0].entries(), &[1, 1, 2, 4, 5, 8]);
        let c = multisets_from_points(&pts(&[&[0, 0, 1, 0]])).unwrap();
        assert_eq!(c.rows()[0].entries(), &[3]);
        assert_eq!(c.to_points(), pts(&[&[0, 0, 1, 0]]));
    }

    #[test]
    fn unequal_points_are_rejected() {
        assert!(matches!(
            multisets_from_points(&pts(&[&[1, 0], &[1, 1]])),
            Err(Error::InconsistentInput(_))
        ));
        assert!(matches!(
            multisets_from_points(&pts(&[&[1, 0], &[1, 0, 0]])),
            Err(Error::InconsistentInput(_))
        ));
    }

    #[test]
    fn sortedness_of_small_examples() {
        let a = multisets_from_points(&pts(&[&[3, 2, 0], &[4, 1, 0], &[3, 1, 1]])).unwrap();
        let order = is_sorted(&a).unwrap();
        assert_eq!(order, vec![1, 0, 2]);
        let b = multisets_from_points(&pts(&[&[2, 1, 2], &[3, 0, 2], &[2, 2, 1]])).unwrap();
        assert!(is_sorted(&b).is_none());
        assert_eq!(is_sorted(&rows(&[&[2, 2, 5]], 5)), Some(vec![0]));
    }

    #[test]
    fn decorated_matrix_of_eight_letter_collection() {
        let a = pts(&[
            &[2, 1, 0, 1, 1, 0, 0, 1],
            &[2, 0, 1, 1, 1, 0, 0, 1],
            &[1, 1, 0, 2, 0, 1, 0, 1],
            &[1, 1, 0, 1, 1, 1, 0, 1],
            &[1, 1, 0, 1, 1, 0, 1, 1],
        ]);
        let c = multisets_from_points(&a).unwrap();
        let order = is_sorted(&c).unwrap();
        assert_eq!(order, vec![0, 1, 2, 3, 4]);
        let m = decorate(&c.reordered(&order)).unwrap();
        let expected: BTreeSet<_> = [(1, 3), (2, 2), (2, 3), (2, 5), (3, 4), (4, 5)].into();
        assert_eq!(m.row_marks(), &expected);
        assert_eq!(m.bottom_marks(), &BTreeSet::from([5]));
        assert_eq!(m.grid()[4], vec![1, 2, 4, 5, 7, 8]);
    }

    #[test]
    fn smallest_decoration() {
        let m = decorate(&rows(&[&[1], &[2]], 2)).unwrap();
        assert_eq!(m.row_marks(), &BTreeSet::from([(1, 1)]));
        assert!(m.bottom_marks().is_empty());
    }

    #[test]
    fn decorate_rejects_unsorted() {
        let c = rows(&[&[2], &[1]], 2);
        assert!(matches!(decorate(&c), Err(Error::Precondition(_))));
        let dup = rows(&[&[1], &[1]], 2);
        assert!(matches!(decorate(&dup), Err(Error::Precondition(_))));
    }

    #[test]
    fn minimal_fill() {
        let f = fill_from_marks(2, 1, &[1]).unwrap();
        assert_eq!(f.matrix.grid(), &[vec![1], vec![2]]);
        assert_eq!(f.max_entry, 2);
    }

    #[test]
    fn fill_reproduces_word_example() {
        let f = fill_from_marks(5, 6, &[3, 5, 4, 5]).unwrap();
        let expected = pts(&[
            &[3, 1, 1, 0, 1],
            &[2, 2, 1, 0, 1],
            &[2, 2, 0, 1, 1],
            &[2, 1, 1, 1, 1],
            &[2, 1, 1, 0, 2],
        ]);
        assert_eq!(f.matrix.points(5), expected);
        assert_eq!(f.max_entry, 5);
        assert_eq!(f.max_multiplicity, 3);
        let c = multisets_from_points(&expected).unwrap();
        assert_eq!(decorate(&c).unwrap(), f.matrix);
        assert_eq!(f.matrix.mark_columns(), Some(vec![3, 5, 4, 5]));
    }

    #[test]
    fn fill_reproduces_hypersimplex_example() {
        // marks follow 1 4 2 6 3 5, moving one column right at each descent
        let mut marks = vec![0; 6];
        for (row, col) in [(1, 1), (4, 1), (2, 2), (6, 2), (3, 3), (5, 3)] {
            marks[row - 1] = col;
        }
        let f = fill_from_marks(7, 3, &marks).unwrap();
        let expected = pts(&[
            &[1, 0, 1, 0, 1, 0, 0],
            &[0, 1, 1, 0, 1, 0, 0],
            &[0, 1, 0, 1, 1, 0, 0],
            &[0, 1, 0, 1, 0, 1, 0],
            &[0, 0, 1, 1, 0, 1, 0],
            &[0, 0, 1, 1, 0, 0, 1],
            &[0, 0, 1, 0, 1, 0, 1],
        ]);
        assert_eq!(f.matrix.points(7), expected);
        assert_eq!(f.max_multiplicity, 1);
    }

    #[test]
    fn fill_validates_marks() {
        assert!(fill_from_marks(3, 2, &[1]).is_err());
        assert!(fill_from_marks(3, 2, &[1, 3]).is_err());
        assert!(fill_from_marks(3, 2, &[0, 1]).is_err());
    }

    #[test]
    fn render_shows_marks() {
        let f = fill_from_marks(2, 2, &[2]).unwrap();
        assert_eq!(f.matrix.render_text(), "1 1\n  -\n1 2\n");
    }
}
