//! Payoff matrices, mixed strategies and pure best responses.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Row player's payoff matrix `A` (n rows, m columns), stored row-major.
///
/// Column `c_i` is what Player 2's action `i` yields against each row; row
/// `r_j` is what Player 1's action `j` yields against each column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PayoffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl PayoffMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        let m = rows[0].len();
        if m == 0 {
            return Err(Error::InvalidMatrix("matrix has no columns".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::InvalidMatrix(format!(
                "row {} has {} entries, expected {m}",
                i + 1,
                r.len()
            )));
        }
        Ok(Self {
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from rational literals such as `"1/8"`.
    pub fn parse(rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|t| rational::parse(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn from_columns(cols: Vec<Vec<Rational>>) -> Result<Self> {
        let m = cols.len();
        if m == 0 {
            return Err(Error::InvalidMatrix("matrix has no columns".into()));
        }
        let n = cols[0].len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidMatrix("columns have different lengths".into()));
        }
        let rows = (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self::new(rows)
    }

    pub fn n(&self) -> usize {
        self.rows
    }

    pub fn m(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    /// Column `c_j`.
    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    /// Row `r_i`.
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> PayoffMatrix {
        PayoffMatrix::new(self.columns()).expect("transpose of a valid matrix")
    }

    pub fn negate(&self) -> PayoffMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// `A y`.
    pub fn times_col_vector(&self, y: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|i| rational::dot(self.row(i), y)).collect()
    }

    /// `A^T x`, i.e. `c_j^T x` for every column.
    pub fn times_row_vector(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &x[i] * self.entry(i, j)).sum())
            .collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Parses the `{"rows": [["1/8", "1"], ...]}` literal. Entries may be
    /// rational strings or JSON integers.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s)?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidMatrix("expected an object with a `rows` array".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::InvalidMatrix("every row must be an array".into()))?
                    .iter()
                    .map(parse_entry)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| Value::from(rational::format_vec(self.row(i))))
            .collect();
        serde_json::json!({ "rows": rows })
    }
}

fn parse_entry(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(num) if num.is_i64() => Ok(rational::int(num.as_i64().unwrap())),
        other => Err(Error::ParseRational(other.to_string())),
    }
}

impl fmt::Display for PayoffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = rational::format_vec(self.row(i));
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A point of the probability simplex `S_n`.
///
/// The "no prior" zero vector is not a `MixedStrategy`; APIs that accept it
/// take `Option<&MixedStrategy>` with `None` standing for `0_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedStrategy {
    weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidStrategy("no weights".into()));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidStrategy("negative weight".into()));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidStrategy(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self { weights })
    }

    pub fn parse(list: &str) -> Result<Self> {
        Self::new(rational::parse_list(list)?)
    }

    pub fn pure(n: usize, i: usize) -> Self {
        assert!(i < n, "pure strategy index out of range");
        let weights = (0..n)
            .map(|k| if k == i { Rational::one() } else { Rational::zero() })
            .collect();
        Self { weights }
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0);
        let w = rational::frac(1, n as i64);
        Self {
            weights: vec![w; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<Rational> {
        self.weights
    }

    pub fn is_fully_mixed(&self) -> bool {
        self.weights.iter().all(Signed::is_positive)
    }
}

/// Nonempty sorted set of 0-based action indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionSet {
    indices: Vec<usize>,
}

impl ActionSet {
    pub fn new(mut indices: Vec<usize>, range: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyActionSet);
        }
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i >= range) {
            return Err(Error::ActionOutOfRange {
                index: bad + 1,
                len: range,
            });
        }
        Ok(Self { indices })
    }

    /// From 1-based labels, as written in reports and on the command line.
    pub fn from_one_based(labels: &[usize], range: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l == 0 || l > range) {
            return Err(Error::ActionOutOfRange {
                index: bad,
                len: range,
            });
        }
        Self::new(labels.iter().map(|l| l - 1).collect(), range)
    }

    pub fn full(n: usize) -> Self {
        assert!(n > 0);
        Self {
            indices: (0..n).collect(),
        }
    }

    pub fn singleton(i: usize) -> Self {
        Self { indices: vec![i] }
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(!indices.is_empty());
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self { indices }
    }

    pub fn from_mask(mask: u64) -> Self {
        let indices = (0..64).filter(|b| mask >> b & 1 == 1).collect();
        Self::from_sorted_unchecked(indices)
    }

    pub fn to_mask(&self) -> u64 {
        self.indices.iter().fold(0u64, |acc, &i| acc | 1 << i)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> usize {
        self.indices[0]
    }

    pub fn last(&self) -> usize {
        *self.indices.last().unwrap()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    pub fn is_subset(&self, other: &ActionSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }
}

impl fmt::Display for ActionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Indices attaining the maximum.
pub fn argmax_set<T: Ord>(values: &[T]) -> ActionSet {
    let best = values.iter().max().expect("argmax of an empty slice");
    ActionSet::from_sorted_unchecked(
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v == best)
            .map(|(i, _)| i)
            .collect(),
    )
}

/// Indices attaining the minimum.
pub fn argmin_set<T: Ord>(values: &[T]) -> ActionSet {
    let best = values.iter().min().expect("argmin of an empty slice");
    ActionSet::from_sorted_unchecked(
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| *v == best)
            .map(|(i, _)| i)
            .collect(),
    )
}

/// Player 1's payoff `x^T A y`.
pub fn payoff(a: &PayoffMatrix, x: &MixedStrategy, y: &MixedStrategy) -> Result<Rational> {
    check_dim(a.n(), x.dim())?;
    check_dim(a.m(), y.dim())?;
    Ok(rational::dot(x.weights(), &a.times_col_vector(y.weights())))
}

/// `argmax_i r_i^T y`; every row when `y` is the zero vector.
pub fn best_response_row(a: &PayoffMatrix, y: Option<&MixedStrategy>) -> Result<ActionSet> {
    match y {
        None => Ok(ActionSet::full(a.n())),
        Some(y) => {
            check_dim(a.m(), y.dim())?;
            Ok(argmax_set(&a.times_col_vector(y.weights())))
        }
    }
}

/// `argmin_j c_j^T x`; every column when `x` is the zero vector.
pub fn best_response_col(a: &PayoffMatrix, x: Option<&MixedStrategy>) -> Result<ActionSet> {
    match x {
        None => Ok(ActionSet::full(a.m())),
        Some(x) => {
            check_dim(a.n(), x.dim())?;
            Ok(argmin_set(&a.times_row_vector(x.weights())))
        }
    }
}

/// Columns of `A` selected by `columns`, in ascending original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubMatrix {
    pub matrix: PayoffMatrix,
    /// `original[k]` is the 0-based column of the parent matrix that became column `k`.
    pub original: Vec<usize>,
}

pub fn submatrix(a: &PayoffMatrix, columns: &ActionSet) -> Result<SubMatrix> {
    if columns.last() >= a.m() {
        return Err(Error::ActionOutOfRange {
            index: columns.last() + 1,
            len: a.m(),
        });
    }
    let cols = columns.iter().map(|j| a.column(j)).collect();
    Ok(SubMatrix {
        matrix: PayoffMatrix::from_columns(cols)?,
        original: columns.as_slice().to_vec(),
    })
}

/// The common value when every entry of `c` is equal.
pub fn is_constant_column(c: &[Rational]) -> Option<Rational> {
    let first = c.first()?;
    c.iter().all(|e| e == first).then(|| first.clone())
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::rational::frac;

    fn strat(s: &str) -> MixedStrategy {
        MixedStrategy::parse(s).unwrap()
    }

    #[test]
    fn payoff_examples() {
        let id = PayoffMatrix::parse(&[&["1", "0"], &["0", "1"]]).unwrap();
        let half = strat("1/2,1/2");
        assert_eq!(payoff(&id, &half, &half).unwrap(), frac(1, 2));

        let mult = library::matrix("2by2_mult_ne").unwrap();
        let v = payoff(&mult, &strat("1/4,3/4"), &MixedStrategy::pure(3, 2)).unwrap();
        assert_eq!(v, frac(1, 4));

        let nce = library::matrix("non_converge_example").unwrap();
        let v = payoff(&nce, &strat("1/3,1/3,1/3"), &MixedStrategy::pure(4, 0)).unwrap();
        assert_eq!(v, frac(1, 8));
    }

    #[test]
    fn payoff_rejects_dimension_mismatch() {
        let id = PayoffMatrix::parse(&[&["1", "0"], &["0", "1"]]).unwrap();
        let err = payoff(&id, &strat("1/3,1/3,1/3"), &strat("1/2,1/2")).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn row_best_responses() {
        let zz = library::matrix("zz_mat").unwrap();
        let br = best_response_row(&zz, Some(&MixedStrategy::pure(1, 0))).unwrap();
        assert_eq!(br.to_one_based(), vec![1, 2]);

        let nce = library::matrix("non_converge_example").unwrap();
        let br = best_response_row(&nce, Some(&MixedStrategy::pure(4, 0))).unwrap();
        assert_eq!(br.to_one_based(), vec![1, 2, 3]);
        let br = best_response_row(&nce, Some(&MixedStrategy::pure(4, 1))).unwrap();
        assert_eq!(br.to_one_based(), vec![1]);
        assert_eq!(best_response_row(&nce, None).unwrap(), ActionSet::full(3));
    }

    #[test]
    fn column_best_responses() {
        let nce = library::matrix("non_converge_example").unwrap();
        let br = best_response_col(&nce, Some(&strat("1/3,1/3,1/3"))).unwrap();
        assert_eq!(br.to_one_based(), vec![1]);
        // vertex (3/4,1/8,1/8): column values (1/8, 3/4, 1/8, 1/8)
        let br = best_response_col(&nce, Some(&strat("3/4,1/8,1/8"))).unwrap();
        assert_eq!(br.to_one_based(), vec![1, 3, 4]);

        let basic = library::matrix("2by2_basic").unwrap();
        let br = best_response_col(&basic, Some(&MixedStrategy::pure(2, 0))).unwrap();
        assert_eq!(br.to_one_based(), vec![2]);
        assert_eq!(best_response_col(&basic, None).unwrap(), ActionSet::full(2));
    }

    #[test]
    fn submatrix_examples() {
        let mult = PayoffMatrix::parse(&[&["1/4", "1", "0"], &["1/4", "0", "1"]]).unwrap();
        let sub = submatrix(&mult, &ActionSet::from_one_based(&[2, 3], 3).unwrap()).unwrap();
        assert_eq!(sub.matrix, PayoffMatrix::parse(&[&["1", "0"], &["0", "1"]]).unwrap());
        assert_eq!(sub.original, vec![1, 2]);

        let conj = library::matrix("conj_exp").unwrap();
        let sub = submatrix(&conj, &ActionSet::from_one_based(&[1, 3, 4], 4).unwrap()).unwrap();
        assert_eq!(sub.matrix.column(1), conj.column(2));
        assert_eq!(sub.matrix.column(2), conj.column(3));

        let nce = library::matrix("non_converge_example").unwrap();
        let sub = submatrix(&nce, &ActionSet::from_one_based(&[2, 3, 4], 4).unwrap()).unwrap();
        let id3 = PayoffMatrix::parse(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]])
            .unwrap();
        assert_eq!(sub.matrix, id3);
    }

    #[test]
    fn submatrix_errors() {
        assert!(matches!(ActionSet::new(vec![], 3), Err(Error::EmptyActionSet)));
        assert!(ActionSet::from_one_based(&[4], 3).is_err());
        let id = PayoffMatrix::parse(&[&["1", "0"], &["0", "1"]]).unwrap();
        let wide = ActionSet::new(vec![0, 2], 3).unwrap();
        assert!(submatrix(&id, &wide).is_err());
    }

    #[test]
    fn constant_columns() {
        assert_eq!(
            is_constant_column(&[frac(1, 8), frac(1, 8), frac(1, 8)]),
            Some(frac(1, 8))
        );
        assert_eq!(is_constant_column(&[frac(1, 1), frac(0, 1), frac(0, 1)]), None);
        assert_eq!(
            is_constant_column(&[frac(3, 10), frac(3, 10), frac(3, 10)]),
            Some(frac(3, 10))
        );
    }

    #[test]
    fn json_literal_roundtrip_and_rejection() {
        let a = PayoffMatrix::from_json_str(r#"{"rows": [["1/8", "1", 0, "0"], ["1/8", "0", "1", "0"]]}"#)
            .unwrap();
        assert_eq!(a.n(), 2);
        assert_eq!(a.m(), 4);
        assert_eq!(PayoffMatrix::from_json(&a.to_json()).unwrap(), a);

        assert!(PayoffMatrix::from_json_str(r#"{"rows": [["0.5"]]}"#).is_err());
        assert!(PayoffMatrix::from_json_str(r#"{"rows": [[0.5]]}"#).is_err());
        assert!(PayoffMatrix::from_json_str(r#"{"rows": [["1","2"],["3"]]}"#).is_err());
        assert!(PayoffMatrix::from_json_str(r#"{"rows": []}"#).is_err());
    }

    #[test]
    fn mixed_strategy_invariants() {
        assert!(MixedStrategy::parse("1/2,1/3").is_err());
        assert!(MixedStrategy::parse("3/2,-1/2").is_err());
        assert!(MixedStrategy::parse("1/4,3/4").unwrap().is_fully_mixed());
        assert!(!MixedStrategy::pure(3, 1).is_fully_mixed());
    }

    #[test]
    fn action_set_display_and_mask() {
        let s = ActionSet::new(vec![3, 0, 2, 0], 4).unwrap();
        assert_eq!(s.to_string(), "{1,3,4}");
        assert_eq!(ActionSet::from_mask(s.to_mask()), s);
    }
}
