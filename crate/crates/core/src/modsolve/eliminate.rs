//! Valuation-pivoted elimination over `Z_{p^e}`.
//!
//! Each step takes the entry of least `p`-adic valuation in the whole remaining
//! submatrix (ties: lowest original row, then lowest original column), scales
//! its row so the pivot becomes exactly `p^v`, and clears the pivot column
//! below it with exact integer quotients. Because every later entry of a pivot
//! row has valuation at least `v`, back-substitution succeeds for any choice of
//! lift of the later unknowns, which makes the procedure complete.

use crate::ring::{Modulus, PrimePower, Residue, StageCounts, Tally};

pub(crate) struct LocalRing {
    q: Modulus,
    p: u64,
    e: u32,
    powers: Vec<u64>,
}

impl LocalRing {
    pub(crate) fn new(pp: PrimePower) -> Self {
        let q = Modulus::new(pp.value()).expect("prime power is at least 2");
        let mut powers = Vec::with_capacity(pp.e as usize + 1);
        let mut x = 1u64;
        for _ in 0..=pp.e {
            powers.push(x);
            x = x.saturating_mul(pp.p);
        }
        LocalRing {
            q,
            p: pp.p,
            e: pp.e,
            powers,
        }
    }

    /// `p`-adic valuation of a residue; `e` for zero.
    pub(crate) fn valuation(&self, mut a: Residue) -> u32 {
        if a == 0 {
            return self.e;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    fn unit_inverse(&self, pivot: Residue, v: u32) -> Residue {
        let unit = pivot / self.powers[v as usize];
        self.q.inverse(unit).expect("unit part is prime to p")
    }
}

pub(crate) fn solve_dense(
    ring: &LocalRing,
    mut a: Vec<Vec<Residue>>,
    mut b: Vec<Residue>,
    cols: usize,
    counts: &mut StageCounts,
) -> Option<Vec<Residue>> {
    let nrows = a.len();
    let mut t = Tally::new(ring.q, counts);
    let mut row_ids: Vec<usize> = (0..nrows).collect();
    let mut col_ids: Vec<usize> = (0..cols).collect();
    let mut rank = 0;

    while rank < nrows && rank < cols {
        let mut best: Option<((u32, usize, usize), usize, usize)> = None;
        for i in rank..nrows {
            for c in rank..cols {
                let x = a[i][c];
                if x == 0 {
                    continue;
                }
                let key = (ring.valuation(x), row_ids[i], col_ids[c]);
                if best.is_none_or(|(k, _, _)| key < k) {
                    best = Some((key, i, c));
                }
            }
        }
        let Some(((v, _, _), pi, pc)) = best else {
            break;
        };
        t.pivot();
        a.swap(rank, pi);
        b.swap(rank, pi);
        row_ids.swap(rank, pi);
        if pc != rank {
            for row in a.iter_mut() {
                row.swap(rank, pc);
            }
            col_ids.swap(rank, pc);
        }

        let pv = ring.powers[v as usize];
        if a[rank][rank] != pv {
            let inv = ring.unit_inverse(a[rank][rank], v);
            for x in a[rank][rank..cols].iter_mut() {
                if *x != 0 {
                    *x = t.mul(*x, inv);
                }
            }
            b[rank] = t.mul(b[rank], inv);
        }
        debug_assert_eq!(a[rank][rank], pv);

        let (upper, lower) = a.split_at_mut(rank + 1);
        let pivot_row = &upper[rank];
        for (offset, row) in lower.iter_mut().enumerate() {
            let x = row[rank];
            if x == 0 {
                continue;
            }
            let factor = x / pv;
            for c in rank..cols {
                if pivot_row[c] != 0 {
                    let prod = t.mul(factor, pivot_row[c]);
                    row[c] = t.sub(row[c], prod);
                }
            }
            let i = rank + 1 + offset;
            let prod = t.mul(factor, b[rank]);
            b[i] = t.sub(b[i], prod);
        }
        rank += 1;
    }

    if b[rank..].iter().any(|&x| x != 0) {
        return None;
    }

    let mut y = vec![0; cols];
    for r in (0..rank).rev() {
        let mut acc = b[r];
        for c in r + 1..cols {
            if a[r][c] != 0 && y[c] != 0 {
                let prod = t.mul(a[r][c], y[c]);
                acc = t.sub(acc, prod);
            }
        }
        let pv = a[r][r];
        if !acc.is_multiple_of(pv) {
            return None;
        }
        y[r] = acc / pv;
    }
    let mut out = vec![0; cols];
    for (pos, &orig) in col_ids.iter().enumerate() {
        out[orig] = y[pos];
    }
    Some(out)
}

pub(crate) fn solve_sparse(
    ring: &LocalRing,
    mut rows: Vec<Vec<(usize, Residue)>>,
    mut b: Vec<Residue>,
    cols: usize,
    counts: &mut StageCounts,
) -> Option<Vec<Residue>> {
    let nrows = rows.len();
    let mut t = Tally::new(ring.q, counts);
    let mut active = vec![true; nrows];
    let mut pivots: Vec<(usize, usize, u32)> = Vec::new();
    // Rows that may hold a nonzero in each column; stale entries are
    // filtered when used.
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].push(i);
        }
    }
    let mut first_active = 0;

    loop {
        while first_active < nrows && !active[first_active] {
            first_active += 1;
        }
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for i in first_active..nrows {
            if !active[i] {
                continue;
            }
            for &(c, x) in &rows[i] {
                let key = (ring.valuation(x), i, c);
                if best.is_none_or(|k| key < k) {
                    best = Some(key);
                    if key.0 == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((v, pr, pc)) = best else {
            break;
        };
        t.pivot();
        active[pr] = false;
        pivots.push((pr, pc, v));

        let pv = ring.powers[v as usize];
        let lead = rows[pr]
            .iter()
            .find(|&&(c, _)| c == pc)
            .map(|&(_, x)| x)
            .expect("pivot entry present");
        if lead != pv {
            let inv = ring.unit_inverse(lead, v);
            for entry in rows[pr].iter_mut() {
                entry.1 = t.mul(entry.1, inv);
            }
            b[pr] = t.mul(b[pr], inv);
        }

        let pivot_row = std::mem::take(&mut rows[pr]);
        let mut touched = std::mem::take(&mut col_rows[pc]);
        touched.sort_unstable();
        touched.dedup();
        for i in touched {
            if !active[i] {
                continue;
            }
            let Ok(pos) = rows[i].binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let factor = rows[i][pos].1 / pv;
            rows[i] = sub_scaled(&mut t, &rows[i], factor, &pivot_row);
            let prod = t.mul(factor, b[pr]);
            b[i] = t.sub(b[i], prod);
            for &(c, _) in &pivot_row {
                if c != pc {
                    col_rows[c].push(i);
                }
            }
        }
        rows[pr] = pivot_row;
    }

    if (0..nrows).any(|i| active[i] && b[i] != 0) {
        return None;
    }

    let mut y = vec![0; cols];
    for &(r, c, v) in pivots.iter().rev() {
        let mut acc = b[r];
        for &(c2, x) in &rows[r] {
            if c2 != c && y[c2] != 0 {
                let prod = t.mul(x, y[c2]);
                acc = t.sub(acc, prod);
            }
        }
        let pv = ring.powers[v as usize];
        if !acc.is_multiple_of(pv) {
            return None;
        }
        y[c] = acc / pv;
    }
    Some(y)
}

/// `row - factor * pivot`, both sorted by column.
fn sub_scaled(
    t: &mut Tally<'_>,
    row: &[(usize, Residue)],
    factor: Residue,
    pivot: &[(usize, Residue)],
) -> Vec<(usize, Residue)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (c, x) = if take_row {
            i += 1;
            row[i - 1]
        } else if take_pivot {
            j += 1;
            let prod = t.mul(factor, pivot[j - 1].1);
            (pivot[j - 1].0, t.sub(0, prod))
        } else {
            i += 1;
            j += 1;
            let prod = t.mul(factor, pivot[j - 1].1);
            (row[i - 1].0, t.sub(row[i - 1].1, prod))
        };
        if x != 0 {
            out.push((c, x));
        }
    }
    out
}
