//! Elliptic-genus coefficient tables `c(m, l)`.
//!
//! Text format, one entry per line:
//!
//! ```text
//! # comment
//! dim 2
//! 0 -1 2
//! 0 0 20
//! 0 1 2
//! ```
//!
//! Fields are whitespace separated; `m` and `l` may be written `a/b`.
//! `m` must be a nonnegative integer, `l` a half-integer. Without a `dim`
//! header the dimension is `2 * max |l|` over the `m = 0` row.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::series::{Exponent, IntSeries, Rational, SeriesError, Truncation};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: negative q exponent m = {m}")]
    NegativeM { line: usize, m: Rational },
    #[error("line {line}: duplicate entry for (m, l) = ({m}, {l})")]
    Duplicate { line: usize, m: i64, l: Rational },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Key `(m, l)` of a table entry.
pub type TableKey = (i64, Rational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusTable {
    pub dim: u32,
    entries: BTreeMap<TableKey, BigInt>,
}

impl GenusTable {
    pub fn new(dim: u32) -> Self {
        GenusTable {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// The point: `c(0, 0) = 1`, dimension 0.
    pub fn point() -> Self {
        let mut t = GenusTable::new(0);
        t.entries
            .insert((0, Rational::from_integer(0)), BigInt::from(1));
        t
    }

    /// Builds a table from `(m, l, c)` triples, dropping zeros. Panics on
    /// negative `m` or a non-half-integral `l`.
    pub fn from_entries(dim: u32, entries: impl IntoIterator<Item = (i64, Rational, i64)>) -> Self {
        let mut t = GenusTable::new(dim);
        for (m, l, c) in entries {
            assert!(m >= 0, "negative m in table entry");
            assert!(
                *l.denom() == 1 || *l.denom() == 2,
                "l must be a half-integer"
            );
            if c != 0 {
                t.entries.insert((m, l), BigInt::from(c));
            }
        }
        t
    }

    pub fn get(&self, m: i64, l: Rational) -> BigInt {
        self.entries.get(&(m, l)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TableKey, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_m(&self) -> i64 {
        self.entries.keys().map(|(m, _)| *m).max().unwrap_or(0)
    }

    /// Sorted distinct `l` values in the support.
    pub fn l_support(&self) -> Vec<Rational> {
        let mut ls: Vec<Rational> = self.entries.keys().map(|(_, l)| *l).collect();
        ls.sort();
        ls.dedup();
        ls
    }

    /// Jacobi index `d/2` the table's dimension claims.
    pub fn claimed_index(&self) -> Rational {
        Rational::new(self.dim as i64, 2)
    }

    /// `Σ_l c(0, l)`, the `q -> 0, y -> 1` specialization.
    pub fn euler_number(&self) -> BigInt {
        self.entries
            .iter()
            .filter(|((m, _), _)| *m == 0)
            .map(|(_, c)| c)
            .sum()
    }

    /// `Σ c(m, l) q^m y^l` as a series.
    pub fn to_series(&self, trunc: Truncation) -> Result<IntSeries, SeriesError> {
        IntSeries::from_terms(
            self.entries
                .iter()
                .map(|((m, l), c)| {
                    Ok((Exponent::new(0, Rational::from_integer(*m), *l)?, c.clone()))
                })
                .collect::<Result<Vec<_>, SeriesError>>()?,
            trunc,
        )
    }

    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut dim: Option<u32> = None;
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields[0] == "dim" {
                if fields.len() != 2 || dim.is_some() {
                    return Err(malformed(line, "expected a single `dim d` header"));
                }
                dim = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| malformed(line, "dimension must be a nonnegative integer"))?,
                );
                continue;
            }
            if fields.len() != 3 {
                return Err(malformed(line, "expected three fields `m l c`"));
            }
            let m = parse_fraction(fields[0]).ok_or_else(|| malformed(line, "bad m"))?;
            let l = parse_fraction(fields[1]).ok_or_else(|| malformed(line, "bad l"))?;
            let c: BigInt = fields[2]
                .parse()
                .map_err(|_| malformed(line, "coefficient must be an integer"))?;
            if m.is_negative() {
                return Err(TableError::NegativeM { line, m });
            }
            if !m.is_integer() {
                return Err(malformed(line, "m must be an integer"));
            }
            if *l.denom() != 1 && *l.denom() != 2 {
                return Err(malformed(line, "l must have denominator 1 or 2"));
            }
            let key = (m.to_integer(), l);
            if entries.contains_key(&key) {
                return Err(TableError::Duplicate {
                    line,
                    m: key.0,
                    l: key.1,
                });
            }
            entries.insert(key, c);
        }
        let entries: BTreeMap<TableKey, BigInt> =
            entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let dim = dim.unwrap_or_else(|| {
            entries
                .keys()
                .filter(|(m, _)| *m == 0)
                .map(|(_, l)| (l.abs() * Rational::from_integer(2)).to_integer() as u32)
                .max()
                .unwrap_or(0)
        });
        Ok(GenusTable { dim, entries })
    }

    pub fn load(path: &Path) -> Result<Self, TableError> {
        let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Canonical text form; `parse(store(t)) == t`.
    pub fn store(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for ((m, l), c) in &self.entries {
            writeln!(out, "{m} {l} {c}").unwrap();
        }
        out
    }

    /// Deterministic table with integer entries in `[-c_bound, c_bound]`
    /// on `0 <= m <= m_max`, `|l| <= l_max`.
    pub fn random(seed: u64, m_max: u32, l_max: u32, c_bound: u32, dim: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = GenusTable::new(dim);
        let bound = c_bound as i64;
        for m in 0..=m_max as i64 {
            for l in -(l_max as i64)..=l_max as i64 {
                let c = rng.gen_range(-bound..=bound);
                if c != 0 {
                    t.entries
                        .insert((m, Rational::from_integer(l)), BigInt::from(c));
                }
            }
        }
        t
    }
}

fn malformed(line: usize, reason: &str) -> TableError {
    TableError::Malformed {
        line,
        reason: reason.to_string(),
    }
}

fn parse_fraction(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.parse().ok()?;
            let d: i64 = d.parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn parses_point() {
        let t = GenusTable::parse("0 0 1").unwrap();
        assert_eq!(t, GenusTable::point());
        assert_eq!(t.dim, 0);
    }

    #[test]
    fn parses_three_entry_row_with_inferred_dim() {
        let t = GenusTable::parse("0 -1 2\n0 0 20\n0 1 2").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.dim, 2);
        assert_eq!(t.get(0, rat(-1, 1)), BigInt::from(2));
        assert_eq!(t.get(0, rat(0, 1)), BigInt::from(20));
    }

    #[test]
    fn header_comments_and_fractions() {
        let text = "# sample\ndim 3\n0 -3/2 1  # edge\n2/1 1/2 -4\n";
        let t = GenusTable::parse(text).unwrap();
        assert_eq!(t.dim, 3);
        assert_eq!(t.get(0, rat(-3, 2)), BigInt::from(1));
        assert_eq!(t.get(2, rat(1, 2)), BigInt::from(-4));
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(
            GenusTable::parse("0 0 1\n0 0 2"),
            Err(TableError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            GenusTable::parse("-1 0 1"),
            Err(TableError::NegativeM { line: 1, .. })
        ));
        assert!(matches!(
            GenusTable::parse("0 0"),
            Err(TableError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            GenusTable::parse("1/2 0 1"),
            Err(TableError::Malformed { .. })
        ));
        assert!(matches!(
            GenusTable::parse("0 1/3 1"),
            Err(TableError::Malformed { .. })
        ));
        assert!(matches!(
            GenusTable::parse("0 x 1"),
            Err(TableError::Malformed { .. })
        ));
        assert!(matches!(
            GenusTable::parse("0 1/0 1"),
            Err(TableError::Malformed { .. })
        ));
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(GenusTable::point().euler_number(), BigInt::from(1));
        let t = GenusTable::parse("0 -1 2\n0 0 20\n0 1 2").unwrap();
        assert_eq!(t.euler_number(), BigInt::from(24));
        assert_eq!(GenusTable::new(0).euler_number(), BigInt::from(0));
    }

    #[test]
    fn random_tables() {
        let a = GenusTable::random(11, 2, 2, 3, 2);
        assert_eq!(a, GenusTable::random(11, 2, 2, 3, 2));
        assert!(a.entries().all(|((m, l), c)| {
            (0..=2).contains(m) && l.abs() <= rat(2, 1) && c.abs() <= BigInt::from(3)
        }));
        let flat = GenusTable::random(5, 0, 3, 4, 0);
        assert!(flat.entries().all(|((m, _), _)| *m == 0));
        assert!(GenusTable::random(5, 3, 3, 0, 0).is_empty());
    }

    #[test]
    fn store_round_trips() {
        let t = GenusTable::parse("dim 3\n0 -3/2 1\n2 1/2 -4\n1 0 7").unwrap();
        assert_eq!(GenusTable::parse(&t.store()).unwrap(), t);
    }

    #[test]
    fn euler_number_ignores_positive_m() {
        let mut t = GenusTable::random(3, 0, 2, 5, 0);
        let e = t.euler_number();
        t.entries.insert((1, rat(0, 1)), BigInt::from(9));
        t.entries.insert((2, rat(-1, 1)), BigInt::from(-3));
        assert_eq!(t.euler_number(), e);
    }
}
