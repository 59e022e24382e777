use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Modulus, Residue};

/// Largest function table (entries) the library will materialize.
pub const MAX_TABLE_LEN: u64 = 10_000_000;

pub(crate) fn check_table_len(len: u128, what: &str) -> Result<usize> {
    if len > MAX_TABLE_LEN as u128 {
        return Err(Error::Resource(format!(
            "{what} needs {len} entries, limit is {MAX_TABLE_LEN}"
        )));
    }
    Ok(len as usize)
}

/// A function `Z_n -> Z_n` stored as its table of values `(f(0), ..., f(n-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModVector {
    modulus: Modulus,
    values: Vec<Residue>,
}

impl ModVector {
    pub fn new(modulus: Modulus, values: Vec<Residue>) -> Result<Self> {
        let n = modulus.get();
        if values.len() as u64 != n {
            return Err(Error::DimensionMismatch {
                expected: n as usize,
                actual: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|&&v| v >= n) {
            return Err(Error::Domain(format!("residue {bad} is not below {n}")));
        }
        Ok(ModVector { modulus, values })
    }

    pub(crate) fn from_raw(modulus: Modulus, values: Vec<Residue>) -> Self {
        debug_assert_eq!(values.len() as u64, modulus.get());
        debug_assert!(values.iter().all(|&v| v < modulus.get()));
        ModVector { modulus, values }
    }

    /// Tabulates `f` at `0..n`, reducing each value.
    ///
    /// Panics if `n` exceeds [`MAX_TABLE_LEN`].
    pub fn from_fn(modulus: Modulus, mut f: impl FnMut(u64) -> u64) -> Self {
        assert!(modulus.get() <= MAX_TABLE_LEN, "table too large");
        let values = (0..modulus.get()).map(|a| modulus.reduce(f(a))).collect();
        ModVector { modulus, values }
    }

    pub fn zeros(modulus: Modulus) -> Self {
        Self::constant(modulus, 0)
    }

    pub fn constant(modulus: Modulus, c: Residue) -> Self {
        Self::from_fn(modulus, |_| c)
    }

    /// The function induced by `X`.
    pub fn identity(modulus: Modulus) -> Self {
        Self::from_fn(modulus, |a| a)
    }

    /// Parses residues separated by commas or whitespace; `#` starts a comment.
    pub fn parse(modulus: Modulus, text: &str) -> Result<Self> {
        let values = parse_residues(modulus, text)?;
        Self::new(modulus, values)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Residue] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Residue> {
        self.values
    }

    pub fn get(&self, i: usize) -> Residue {
        self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `v^{<k>}(i) = v(i - k mod n)`. `k` is reduced mod `n`.
    pub fn cyclic_shift(&self, k: u64) -> Self {
        let n = self.values.len();
        let k = (k % n as u64) as usize;
        let mut values = Vec::with_capacity(n);
        values.extend_from_slice(&self.values[n - k..]);
        values.extend_from_slice(&self.values[..n - k]);
        ModVector {
            modulus: self.modulus,
            values,
        }
    }

    fn check_same(&self, other: &ModVector) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ModVector) -> Result<Self> {
        self.check_same(other)?;
        let m = self.modulus;
        Ok(self.zip_with(other, |a, b| m.add(a, b)))
    }

    pub fn sub(&self, other: &ModVector) -> Result<Self> {
        self.check_same(other)?;
        let m = self.modulus;
        Ok(self.zip_with(other, |a, b| m.sub(a, b)))
    }

    /// Componentwise product.
    pub fn hadamard(&self, other: &ModVector) -> Result<Self> {
        self.check_same(other)?;
        let m = self.modulus;
        Ok(self.zip_with(other, |a, b| m.mul(a, b)))
    }

    pub fn scale(&self, c: Residue) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        ModVector {
            modulus: m,
            values: self.values.iter().map(|&a| m.mul(a, c)).collect(),
        }
    }

    fn zip_with(&self, other: &ModVector, f: impl Fn(u64, u64) -> u64) -> Self {
        ModVector {
            modulus: self.modulus,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Display for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.values)
    }
}

fn write_csv(f: &mut fmt::Formatter<'_>, values: &[Residue]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// A function `Z_n^m -> Z_n` as a table of `n^m` values.
///
/// The point `(a_1, ..., a_m)` sits at index `a_1*n^(m-1) + ... + a_m`, so the
/// first variable is the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiModVector {
    modulus: Modulus,
    arity: u32,
    values: Vec<Residue>,
}

impl MultiModVector {
    /// Number of table entries `n^m`, or a resource error if over [`MAX_TABLE_LEN`].
    pub fn table_len(modulus: Modulus, arity: u32) -> Result<usize> {
        if arity == 0 {
            return Err(Error::Domain("arity must be at least 1".into()));
        }
        let len = (modulus.get() as u128).checked_pow(arity).unwrap_or(u128::MAX);
        check_table_len(len, &format!("a table over Z_{modulus}^{arity}"))
    }

    pub fn new(modulus: Modulus, arity: u32, values: Vec<Residue>) -> Result<Self> {
        let len = Self::table_len(modulus, arity)?;
        if values.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                actual: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|&&v| v >= modulus.get()) {
            return Err(Error::Domain(format!("residue {bad} is not below {modulus}")));
        }
        Ok(MultiModVector { modulus, arity, values })
    }

    pub(crate) fn from_raw(modulus: Modulus, arity: u32, values: Vec<Residue>) -> Self {
        MultiModVector { modulus, arity, values }
    }

    pub fn from_fn(modulus: Modulus, arity: u32, mut f: impl FnMut(&[u64]) -> u64) -> Result<Self> {
        let len = Self::table_len(modulus, arity)?;
        let mut point = vec![0u64; arity as usize];
        let mut values = Vec::with_capacity(len);
        for idx in 0..len {
            if idx > 0 {
                advance(&mut point, modulus.get());
            }
            values.push(modulus.reduce(f(&point)));
        }
        Ok(MultiModVector { modulus, arity, values })
    }

    pub fn zeros(modulus: Modulus, arity: u32) -> Result<Self> {
        let len = Self::table_len(modulus, arity)?;
        Ok(Self::from_raw(modulus, arity, vec![0; len]))
    }

    pub fn parse(modulus: Modulus, arity: u32, text: &str) -> Result<Self> {
        let values = parse_residues(modulus, text)?;
        Self::new(modulus, arity, values)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn values(&self) -> &[Residue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, point: &[u64]) -> Residue {
        self.values[self.index_of(point)]
    }

    pub fn index_of(&self, point: &[u64]) -> usize {
        debug_assert_eq!(point.len(), self.arity as usize);
        let n = self.modulus.get();
        point.iter().fold(0u64, |acc, &a| acc * n + a) as usize
    }

    pub fn point_of(&self, mut index: usize) -> Vec<u64> {
        let n = self.modulus.get() as usize;
        let mut point = vec![0u64; self.arity as usize];
        for slot in point.iter_mut().rev() {
            *slot = (index % n) as u64;
            index /= n;
        }
        point
    }

    pub fn add(&self, other: &MultiModVector) -> Result<Self> {
        if self.modulus != other.modulus || self.arity != other.arity {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        let m = self.modulus;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| m.add(a, b))
            .collect();
        Ok(Self::from_raw(m, self.arity, values))
    }

    pub fn scale(&self, c: Residue) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        Self::from_raw(m, self.arity, self.values.iter().map(|&a| m.mul(a, c)).collect())
    }
}

impl From<ModVector> for MultiModVector {
    fn from(v: ModVector) -> Self {
        MultiModVector {
            modulus: v.modulus,
            arity: 1,
            values: v.values,
        }
    }
}

impl fmt::Display for MultiModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.values)
    }
}

/// Odometer increment, last coordinate fastest.
pub(crate) fn advance(point: &mut [u64], n: u64) {
    for slot in point.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return;
        }
        *slot = 0;
    }
}

/// Residues separated by commas and/or whitespace, `#` to end of line is a comment.
pub(crate) fn parse_residues(modulus: Modulus, text: &str) -> Result<Vec<Residue>> {
    let mut out = Vec::new();
    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let has_comma = line.contains(',');
        let mut offset = 0;
        for field in line.split(',') {
            let mut seen = false;
            for (start, token) in whitespace_tokens(field) {
                seen = true;
                out.push(parse_token(modulus, token, line_idx + 1, offset + start + 1)?);
            }
            if !seen && has_comma {
                return Err(Error::Parse {
                    line: line_idx + 1,
                    column: offset + 1,
                    message: "empty field".into(),
                });
            }
            offset += field.len() + 1;
        }
    }
    Ok(out)
}

fn whitespace_tokens(field: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = 0;
    std::iter::from_fn(move || {
        let tail = &field[rest..];
        let skip = tail.len() - tail.trim_start().len();
        let start = rest + skip;
        if start >= field.len() {
            return None;
        }
        let len = field[start..]
            .find(|c: char| c.is_ascii_whitespace())
            .unwrap_or(field.len() - start);
        rest = start + len;
        Some((start, &field[start..start + len]))
    })
}

fn parse_token(modulus: Modulus, token: &str, line: usize, column: usize) -> Result<Residue> {
    let value: u64 = token.parse().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("'{token}' is not a non-negative integer"),
    })?;
    if value >= modulus.get() {
        return Err(Error::Parse {
            line,
            column,
            message: format!("{value} is not a residue mod {modulus}"),
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn shift_examples() {
        let v = ModVector::new(m(3), vec![1, 2, 0]).unwrap();
        assert_eq!(v.cyclic_shift(1).values(), &[0, 1, 2]);
        let v = ModVector::new(m(4), vec![1, 2, 3, 0]).unwrap();
        assert_eq!(v.cyclic_shift(1).values(), &[0, 1, 2, 3]);
        assert_eq!(v.cyclic_shift(0), v);
        assert_eq!(v.cyclic_shift(4), v);
        assert_eq!(v.cyclic_shift(5), v.cyclic_shift(1));
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            ModVector::new(m(4), vec![0, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ModVector::new(m(4), vec![0, 1, 2, 4]).is_err());
        let a = ModVector::zeros(m(4));
        let b = ModVector::zeros(m(5));
        assert!(matches!(a.add(&b), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn parse_reports_positions() {
        let v = ModVector::parse(m(12), "0,1,4,9,4,1,0,1,4,9,4,1").unwrap();
        assert_eq!(v.to_string(), "0,1,4,9,4,1,0,1,4,9,4,1");
        let err = ModVector::parse(m(12), "0,1,x").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 5,
                message: "'x' is not a non-negative integer".into()
            }
        );
        let err = ModVector::parse(m(4), "# header\n0\n1\n 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, column: 2, .. }));
        assert!(matches!(
            ModVector::parse(m(4), "0,,1,2"),
            Err(Error::Parse { column: 3, .. })
        ));
        let v = ModVector::parse(m(4), "0 # zero\n1\n2\n3").unwrap();
        assert_eq!(v, ModVector::identity(m(4)));
    }

    #[test]
    fn multi_indexing() {
        let t = MultiModVector::from_fn(m(6), 2, |p| p[0] * 10 + p[1]).unwrap();
        assert_eq!(t.len(), 36);
        assert_eq!(t.index_of(&[2, 3]), 15);
        assert_eq!(t.point_of(15), vec![2, 3]);
        assert_eq!(t.get(&[2, 3]), 23 % 6);
        assert!(matches!(MultiModVector::zeros(m(1000), 3), Err(Error::Resource(_))));
    }

    proptest! {
        #[test]
        fn shifts_compose(vals in proptest::collection::vec(0u64..9, 9), k1 in 0u64..20, k2 in 0u64..20) {
            let v = ModVector::new(m(9), vals).unwrap();
            prop_assert_eq!(v.cyclic_shift(k1).cyclic_shift(k2), v.cyclic_shift((k1 + k2) % 9));
            let mut w = v.clone();
            for _ in 0..9 { w = w.cyclic_shift(1); }
            prop_assert_eq!(w, v);
        }
    }
}
