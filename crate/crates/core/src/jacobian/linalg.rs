//! Exact linear algebra over any `num-traits` scalar.

use num_traits::Num;

/// Rank by fraction-free (Bareiss) elimination.
///
/// Every division performed is exact, so this is correct over any integral
/// domain (e.g. `BigInt`) as well as over fields.
pub fn fraction_free_rank<T: Clone + Num>(rows: &[Vec<T>]) -> usize {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    for row in &mut m {
        row.resize(ncols, T::zero());
    }
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let value = pivot_row[col].clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                row[j] = value / prev.clone();
            }
            row[col] = T::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Reduced row echelon form of a row space. `T` must be a field.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<T> {
    ncols: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Clone + Num> Echelon<T> {
    pub fn new(rows: Vec<Vec<T>>, ncols: usize) -> Self {
        let mut m = rows;
        for row in &mut m {
            row.resize(ncols, T::zero());
        }
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let lead = m[rank][col].clone();
            for x in &mut m[rank] {
                *x = x.clone() / lead.clone();
            }
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - factor.clone() * y.clone();
                }
            }
            pivots.push(col);
            rank += 1;
        }
        m.truncate(rank);
        Self { ncols, rows: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot; their unit vectors span a complement of the
    /// row space.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivots.iter().peekable();
        (0..self.ncols)
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Normal form of `v` modulo the row space: afterwards every pivot
    /// coordinate of `v` is zero.
    pub fn reduce(&self, v: &mut [T]) {
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if v[col].is_zero() {
                continue;
            }
            let factor = v[col].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.clone() - factor.clone() * y.clone();
            }
        }
    }
}
