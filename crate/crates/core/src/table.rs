//! Betti tables stored densely over a window of rows and columns.
//!
//! Entry `(i, j)` is the graded Betti number `β_{i,j}`: column `i` is the
//! homological degree and it sits in row `j - i`. Storage is column-major, so
//! the flat index of `(i, j)` is `i * (N - M + 1) + (j - i - M)`.

use std::fmt::{self, Write as _};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub min_row: i64,
    pub max_row: i64,
    pub max_col: usize,
}

impl Window {
    pub fn new(min_row: i64, max_row: i64, max_col: usize) -> Result<Self, TableError> {
        if min_row > max_row {
            return Err(TableError::EmptyWindow { min_row, max_row });
        }
        Ok(Window { min_row, max_row, max_col })
    }

    pub fn rows(&self) -> usize {
        (self.max_row - self.min_row + 1) as usize
    }

    pub fn cols(&self) -> usize {
        self.max_col + 1
    }

    /// Number of positions, `(N - M + 1)(c + 1)`.
    pub fn size(&self) -> usize {
        self.rows() * self.cols()
    }

    pub fn contains(&self, col: usize, degree: i64) -> bool {
        let row = degree - col as i64;
        col <= self.max_col && row >= self.min_row && row <= self.max_row
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        other.min_row >= self.min_row && other.max_row <= self.max_row && other.max_col <= self.max_col
    }

    pub fn union(&self, other: &Window) -> Window {
        Window {
            min_row: self.min_row.min(other.min_row),
            max_row: self.max_row.max(other.max_row),
            max_col: self.max_col.max(other.max_col),
        }
    }

    /// Flat column-major index of `(col, degree)`, if inside the window.
    pub fn index(&self, col: usize, degree: i64) -> Option<usize> {
        self.contains(col, degree).then(|| col * self.rows() + (degree - col as i64 - self.min_row) as usize)
    }

    /// Inverse of [`Window::index`]: `(col, degree)`.
    pub fn position(&self, index: usize) -> (usize, i64) {
        let col = index / self.rows();
        let row = (index % self.rows()) as i64 + self.min_row;
        (col, row + col as i64)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows {}..{}, columns 0..{}", self.min_row, self.max_row, self.max_col)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("empty window: min row {min_row} exceeds max row {max_row}")]
    EmptyWindow { min_row: i64, max_row: i64 },
    #[error("position (column {col}, degree {degree}) lies outside the window ({window})")]
    OutsideWindow { col: usize, degree: i64, window: Window },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BettiTable {
    window: Window,
    entries: Vec<Rational>,
}

impl BettiTable {
    pub fn zeros(window: Window) -> Self {
        BettiTable { window, entries: vec![Rational::zero(); window.size()] }
    }

    /// Builds a table from a column-major flat vector of length `window.size()`.
    pub fn from_flat(window: Window, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), window.size(), "flat vector does not match window");
        BettiTable { window, entries }
    }

    /// Builds the smallest table holding the given `(col, degree, value)` triples.
    /// Repeated positions are summed; `None` when every value is zero.
    pub fn from_entries<I>(entries: I) -> Option<Self>
    where
        I: IntoIterator<Item = (usize, i64, Rational)>,
    {
        let entries: Vec<_> = entries.into_iter().filter(|(_, _, v)| !v.is_zero()).collect();
        let first = entries.first()?;
        let mut window =
            Window { min_row: first.1 - first.0 as i64, max_row: first.1 - first.0 as i64, max_col: first.0 };
        for (col, degree, _) in &entries {
            let row = degree - *col as i64;
            window.min_row = window.min_row.min(row);
            window.max_row = window.max_row.max(row);
            window.max_col = window.max_col.max(*col);
        }
        let mut table = BettiTable::zeros(window);
        for (col, degree, value) in entries {
            let idx = window.index(col, degree).unwrap();
            table.entries[idx] += value;
        }
        Some(table)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn flat(&self) -> &[Rational] {
        &self.entries
    }

    /// `β_{col, degree}`; zero outside the window.
    pub fn get(&self, col: usize, degree: i64) -> Rational {
        self.window.index(col, degree).map_or_else(Rational::zero, |i| self.entries[i].clone())
    }

    pub fn get_ref(&self, col: usize, degree: i64) -> Option<&Rational> {
        self.window.index(col, degree).map(|i| &self.entries[i])
    }

    pub fn set(&mut self, col: usize, degree: i64, value: Rational) -> Result<(), TableError> {
        match self.window.index(col, degree) {
            Some(i) => {
                self.entries[i] = value;
                Ok(())
            }
            None if value.is_zero() => Ok(()),
            None => Err(TableError::OutsideWindow { col, degree, window: self.window }),
        }
    }

    /// Nonzero entries as `(col, degree, value)` in column-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, i64, &Rational)> + '_ {
        self.entries.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| {
            let (col, degree) = self.window.position(i);
            (col, degree, v)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }

    pub fn count_zeros(&self) -> usize {
        self.entries.iter().filter(|v| v.is_zero()).count()
    }

    /// Largest column holding a nonzero entry.
    pub fn last_nonzero_col(&self) -> Option<usize> {
        self.nonzero().map(|(c, _, _)| c).max()
    }

    /// Smallest degree `j` with `β_{col, j} != 0`.
    pub fn top_degree(&self, col: usize) -> Option<i64> {
        if col > self.window.max_col {
            return None;
        }
        (self.window.min_row..=self.window.max_row)
            .map(|row| row + col as i64)
            .find(|&d| !self.get_ref(col, d).is_none_or(Zero::is_zero))
    }

    /// The smallest window containing every nonzero entry, or `None` for the zero table.
    pub fn support_window(&self) -> Option<Window> {
        let mut it = self.nonzero().map(|(c, d, _)| (c, d - c as i64));
        let (c0, r0) = it.next()?;
        let mut w = Window { min_row: r0, max_row: r0, max_col: c0 };
        for (c, r) in it {
            w.min_row = w.min_row.min(r);
            w.max_row = w.max_row.max(r);
            w.max_col = w.max_col.max(c);
        }
        Some(w)
    }

    /// Re-stores the table over `window`, which must contain every nonzero entry.
    pub fn embed(&self, window: Window) -> Result<BettiTable, TableError> {
        let mut out = BettiTable::zeros(window);
        for (col, degree, v) in self.nonzero() {
            out.set(col, degree, v.clone())?;
        }
        Ok(out)
    }

    /// Entrywise equality treating positions outside either window as zero.
    pub fn same_entries(&self, other: &BettiTable) -> bool {
        self.first_difference(other).is_none()
    }

    /// First `(col, degree)` (column-major over the union window) where the tables differ.
    pub fn first_difference(&self, other: &BettiTable) -> Option<(usize, i64)> {
        let union = self.window.union(&other.window);
        (0..union.size()).map(|i| union.position(i)).find(|&(c, d)| self.get(c, d) != other.get(c, d))
    }

    /// `self += scale * other` over the union window.
    pub fn add_scaled(&self, other: &BettiTable, scale: &Rational) -> BettiTable {
        let union = self.window.union(&other.window);
        let mut out = self.embed(union).expect("union contains self");
        for (col, degree, v) in other.nonzero() {
            let idx = union.index(col, degree).unwrap();
            out.entries[idx] += scale * v;
        }
        out
    }

    /// `.btt` text: header `M N C`, then one line per row `t` listing `β_{i,i+t}`.
    pub fn to_btt(&self) -> String {
        let w = self.window;
        let mut out = format!("{} {} {}\n", w.min_row, w.max_row, w.max_col);
        for row in w.min_row..=w.max_row {
            let line: Vec<String> =
                (0..=w.max_col).map(|col| rational::format(&self.get(col, row + col as i64))).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_btt(text: &str) -> Result<BettiTable, TableError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) =
            lines.next().ok_or(TableError::Parse { line: 0, message: "missing header `M N C`".into() })?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 3 {
            return Err(TableError::Parse { line: hline, message: "header must be `M N C`".into() });
        }
        let parse_i = |s: &str| {
            s.parse::<i64>().map_err(|_| TableError::Parse { line: hline, message: format!("bad integer `{s}`") })
        };
        let (m, n, c) = (parse_i(nums[0])?, parse_i(nums[1])?, parse_i(nums[2])?);
        if c < 0 {
            return Err(TableError::Parse { line: hline, message: "column count must be >= 0".into() });
        }
        let window =
            Window::new(m, n, c as usize).map_err(|e| TableError::Parse { line: hline, message: e.to_string() })?;
        let mut table = BettiTable::zeros(window);
        for row in m..=n {
            let (ln, line) = lines.next().ok_or(TableError::Parse {
                line: hline,
                message: format!("expected {} rows, found fewer", window.rows()),
            })?;
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != window.cols() {
                return Err(TableError::Parse {
                    line: ln,
                    message: format!("expected {} entries, found {}", window.cols(), cells.len()),
                });
            }
            for (col, cell) in cells.into_iter().enumerate() {
                let v = rational::parse(cell).map_err(|message| TableError::Parse { line: ln, message })?;
                table.set(col, row + col as i64, v).expect("inside window");
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(TableError::Parse { line: ln, message: "unexpected extra row".into() });
        }
        Ok(table)
    }

    /// Human layout: rows labelled by `j - i`, zeros shown as `-`.
    pub fn pretty(&self) -> String {
        let w = self.window;
        let cells: Vec<Vec<String>> = (w.min_row..=w.max_row)
            .map(|row| {
                (0..=w.max_col)
                    .map(|col| {
                        let v = self.get(col, row + col as i64);
                        if v.is_zero() {
                            "-".to_string()
                        } else {
                            rational::format(&v)
                        }
                    })
                    .collect()
            })
            .collect();
        let label_width = (w.min_row..=w.max_row).map(|r| r.to_string().len()).max().unwrap_or(1);
        let col_width = cells
            .iter()
            .flatten()
            .map(String::len)
            .chain((0..=w.max_col).map(|c| c.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let _ = write!(out, "{:>label_width$} |", "");
        for col in 0..=w.max_col {
            let _ = write!(out, " {col:>col_width$}");
        }
        out.push('\n');
        out.push_str(&"-".repeat(label_width + 2 + (col_width + 1) * w.cols()));
        out.push('\n');
        for (row, line) in (w.min_row..=w.max_row).zip(cells) {
            let _ = write!(out, "{row:>label_width$} |");
            for cell in line {
                let _ = write!(out, " {cell:>col_width$}");
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// JSON view of a table: window plus rows of lowest-terms strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub window: [i64; 3],
    pub rows: Vec<Vec<String>>,
}

impl From<&BettiTable> for TableJson {
    fn from(t: &BettiTable) -> Self {
        let w = t.window;
        TableJson {
            window: [w.min_row, w.max_row, w.max_col as i64],
            rows: (w.min_row..=w.max_row)
                .map(|row| (0..=w.max_col).map(|c| rational::format(&t.get(c, row + c as i64))).collect())
                .collect(),
        }
    }
}
