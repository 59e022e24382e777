use crate::error::{Error, Result};
use crate::ring::{Modulus, Residue};

/// Column-major sparse matrix over `Z_n`.
///
/// Each column holds `(row, value)` pairs with strictly increasing rows and
/// nonzero values below `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseModMatrix {
    modulus: Modulus,
    rows: usize,
    columns: Vec<Vec<(usize, Residue)>>,
}

impl SparseModMatrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        SparseModMatrix {
            modulus,
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from arbitrary column entries: values are reduced, zeros dropped
    /// and rows sorted. Duplicate rows within a column are an error.
    pub fn from_columns(modulus: Modulus, rows: usize, columns: Vec<Vec<(usize, u64)>>) -> Result<Self> {
        let mut cleaned = Vec::with_capacity(columns.len());
        for (c, mut col) in columns.into_iter().enumerate() {
            col.sort_unstable_by_key(|&(r, _)| r);
            if col.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Domain(format!("duplicate row in column {c}")));
            }
            if let Some(&(r, _)) = col.iter().find(|&&(r, _)| r >= rows) {
                return Err(Error::Domain(format!("row {r} out of range in column {c}")));
            }
            col.retain_mut(|(_, v)| {
                *v = modulus.reduce(*v);
                *v != 0
            });
            cleaned.push(col);
        }
        Ok(SparseModMatrix {
            modulus,
            rows,
            columns: cleaned,
        })
    }

    pub(crate) fn from_sorted_columns(modulus: Modulus, rows: usize, columns: Vec<Vec<(usize, Residue)>>) -> Self {
        debug_assert!(columns.iter().all(|c| {
            c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|&(r, v)| r < rows && v != 0 && v < modulus.get())
        }));
        SparseModMatrix { modulus, rows, columns }
    }

    /// Builds from row-major dense data.
    pub fn from_dense(modulus: Modulus, data: &[Vec<u64>]) -> Result<Self> {
        let cols = data.first().map_or(0, Vec::len);
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        let mut columns = vec![Vec::new(); cols];
        for (r, row) in data.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let v = modulus.reduce(v);
                if v != 0 {
                    columns[c].push((r, v));
                }
            }
        }
        Ok(SparseModMatrix {
            modulus,
            rows: data.len(),
            columns,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, Residue)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Residue {
        let col = &self.columns[c];
        col.binary_search_by_key(&r, |&(row, _)| row).map_or(0, |i| col[i].1)
    }

    /// Nonzero count of every row.
    pub fn row_nnz(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rows];
        for col in &self.columns {
            for &(r, _) in col {
                counts[r] += 1;
            }
        }
        counts
    }

    pub fn to_dense(&self) -> Vec<Vec<Residue>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    /// Row-major sparse copy: `(col, value)` pairs per row, columns increasing.
    pub(crate) fn to_sparse_rows(&self) -> Vec<Vec<(usize, Residue)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r].push((c, v));
            }
        }
        out
    }

    pub fn mul_vec(&self, y: &[Residue]) -> Result<Vec<Residue>> {
        if y.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                actual: y.len(),
            });
        }
        let m = self.modulus;
        let mut out = vec![0; self.rows];
        for (col, &yc) in self.columns.iter().zip(y) {
            let yc = m.reduce(yc);
            if yc == 0 {
                continue;
            }
            for &(r, v) in col {
                out[r] = m.add(out[r], m.mul(v, yc));
            }
        }
        Ok(out)
    }

    /// The leading `rows` rows.
    pub fn truncated(&self, rows: usize) -> Self {
        let rows = rows.min(self.rows);
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let end = col.partition_point(|&(r, _)| r < rows);
                col[..end].to_vec()
            })
            .collect();
        SparseModMatrix {
            modulus: self.modulus,
            rows,
            columns,
        }
    }

    /// The rows listed in `rows` (strictly increasing), renumbered `0..rows.len()`.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] >= w[1]) || rows.last().is_some_and(|&r| r >= self.rows) {
            return Err(Error::Domain("row selection must be increasing and in range".into()));
        }
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|&(r, v)| rows.binary_search(&r).ok().map(|i| (i, v)))
                    .collect()
            })
            .collect();
        Ok(SparseModMatrix {
            modulus: self.modulus,
            rows: rows.len(),
            columns,
        })
    }

    /// The same matrix with entries reduced modulo `q`, where `q | n`.
    pub fn reduced(&self, q: Modulus) -> Self {
        debug_assert_eq!(self.modulus.get() % q.get(), 0);
        let columns = self
            .columns
            .iter()
            .map(|col| {
                col.iter()
                    .map(|&(r, v)| (r, q.reduce(v)))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            })
            .collect();
        SparseModMatrix {
            modulus: q,
            rows: self.rows,
            columns,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn dense_round_trip_and_access() {
        let data = vec![vec![1, 0, 13], vec![0, 0, 0], vec![5, 12, 2]];
        let a = SparseModMatrix::from_dense(m(12), &data).unwrap();
        assert_eq!(a.to_dense(), vec![vec![1, 0, 1], vec![0, 0, 0], vec![5, 0, 2]]);
        assert_eq!(a.nnz(), 4);
        assert_eq!(a.get(2, 0), 5);
        assert_eq!(a.get(1, 1), 0);
        assert_eq!(a.row_nnz(), vec![2, 0, 2]);
        assert_eq!(a.mul_vec(&[1, 1, 1]).unwrap(), vec![2, 0, 7]);
        assert!(a.mul_vec(&[1]).is_err());
    }

    #[test]
    fn column_validation() {
        assert!(SparseModMatrix::from_columns(m(5), 2, vec![vec![(0, 1), (0, 2)]]).is_err());
        assert!(SparseModMatrix::from_columns(m(5), 2, vec![vec![(2, 1)]]).is_err());
        let a = SparseModMatrix::from_columns(m(5), 3, vec![vec![(2, 6), (0, 5)]]).unwrap();
        assert_eq!(a.column(0), &[(2, 1)]);
    }

    #[test]
    fn truncation_selection_reduction() {
        let data = vec![vec![6, 1], vec![2, 3], vec![4, 0]];
        let a = SparseModMatrix::from_dense(m(12), &data).unwrap();
        assert_eq!(a.truncated(2).to_dense(), vec![vec![6, 1], vec![2, 3]]);
        assert_eq!(a.truncated(9), a);
        assert_eq!(a.select_rows(&[0, 2]).unwrap().to_dense(), vec![vec![6, 1], vec![4, 0]]);
        assert!(a.select_rows(&[2, 0]).is_err());
        assert_eq!(a.reduced(m(4)).to_dense(), vec![vec![2, 1], vec![2, 3], vec![0, 0]]);
        assert_eq!(a.reduced(m(3)).to_dense(), vec![vec![0, 1], vec![2, 0], vec![1, 0]]);
    }
}
