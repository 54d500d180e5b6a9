//! Monotone maps between finite ordinals `[n] = {0 < 1 < ... < n}`.
//!
//! An [`Operator`] `α: [n] → [m]` acts contravariantly on simplices: it sends
//! an `m`-simplex `x` to the `n`-simplex `α*(x)`. Faces `∂_i` and degeneracies
//! `σ_i` are the generating operators; every operator factors uniquely as a
//! surjection followed by an injection.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::SimplicialError;

/// A weakly monotone map `[src_dim] → [dst_dim]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Operator {
    dst_dim: usize,
    values: Vec<usize>,
}

impl Operator {
    /// Builds an operator from its value list, validating monotonicity and range.
    pub fn new(dst_dim: usize, values: Vec<usize>) -> Result<Self, SimplicialError> {
        if values.is_empty() {
            return Err(SimplicialError::InvalidOperator("empty value list".into()));
        }
        if let Some(w) = values.windows(2).find(|w| w[0] > w[1]) {
            return Err(SimplicialError::InvalidOperator(format!(
                "values {values:?} are not monotone ({} > {})",
                w[0], w[1]
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v > dst_dim) {
            return Err(SimplicialError::InvalidOperator(format!(
                "value {v} exceeds target dimension {dst_dim}"
            )));
        }
        Ok(Self { dst_dim, values })
    }

    pub(crate) fn from_raw(dst_dim: usize, values: Vec<usize>) -> Self {
        debug_assert!(Self::new(dst_dim, values.clone()).is_ok());
        Self { dst_dim, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw(n, (0..=n).collect())
    }

    /// The coface `∂_i: [n-1] → [n]` skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self, SimplicialError> {
        if n == 0 || i > n {
            return Err(SimplicialError::IndexOutOfRange { what: "face", index: i, dim: n });
        }
        Ok(Self::from_raw(n, (0..n).map(|v| if v < i { v } else { v + 1 }).collect()))
    }

    /// The codegeneracy `σ_i: [n+1] → [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Result<Self, SimplicialError> {
        if i > n {
            return Err(SimplicialError::IndexOutOfRange { what: "degeneracy", index: i, dim: n });
        }
        Ok(Self::from_raw(n, (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect()))
    }

    /// The vertex inclusion `[0] → [n]` at `v`.
    pub fn vertex(n: usize, v: usize) -> Result<Self, SimplicialError> {
        if v > n {
            return Err(SimplicialError::IndexOutOfRange { what: "vertex", index: v, dim: n });
        }
        Ok(Self::from_raw(n, vec![v]))
    }

    pub fn src_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn dst_dim(&self) -> usize {
        self.dst_dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Image of `i ∈ [src_dim]`.
    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_identity(&self) -> bool {
        self.src_dim() == self.dst_dim && self.is_injective()
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.dst_dim
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Unique factorization `self = mono ∘ epi` with `epi` surjective and `mono` injective.
    pub fn epi_mono_factor(&self) -> (Surjection, Operator) {
        let mut image: Vec<usize> = Vec::with_capacity(self.values.len());
        let mut epi = Vec::with_capacity(self.values.len());
        for &v in &self.values {
            if image.last() != Some(&v) {
                image.push(v);
            }
            epi.push(image.len() - 1);
        }
        let q = image.len() - 1;
        (Surjection(Operator::from_raw(q, epi)), Operator::from_raw(self.dst_dim, image))
    }
}

/// `outer ∘ inner`, defined when `inner.dst_dim == outer.src_dim`.
pub fn compose_operators(outer: &Operator, inner: &Operator) -> Result<Operator, SimplicialError> {
    if inner.dst_dim != outer.src_dim() {
        return Err(SimplicialError::DimensionMismatch {
            expected: outer.src_dim(),
            found: inner.dst_dim,
        });
    }
    Ok(Operator::from_raw(
        outer.dst_dim,
        inner.values.iter().map(|&v| outer.values[v]).collect(),
    ))
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}](", self.src_dim(), self.dst_dim)?;
        for (idx, v) in self.values.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A monotone surjection; the degeneracy part of an Eilenberg–Zilber normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surjection(Operator);

impl Surjection {
    pub fn new(op: Operator) -> Result<Self, SimplicialError> {
        if !op.is_surjective() {
            return Err(SimplicialError::InvalidOperator(format!("{op} is not surjective")));
        }
        Ok(Self(op))
    }

    pub fn identity(n: usize) -> Self {
        Self(Operator::identity(n))
    }

    /// Surjection `[dst_dim + word.len()] ↠ [dst_dim]` whose repeated positions
    /// (indices `i` with `σ(i) = σ(i+1)`) are exactly `word`.
    ///
    /// A simplex written `(word, g)` is `s_{i_t} ⋯ s_{i_1} g` for `word = [i_1 < ⋯ < i_t]`.
    pub fn from_word(dst_dim: usize, word: &[usize]) -> Result<Self, SimplicialError> {
        if word.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SimplicialError::InvalidOperator(format!(
                "degeneracy word {word:?} is not strictly increasing"
            )));
        }
        let n = dst_dim + word.len();
        if let Some(&i) = word.iter().find(|&&i| i >= n) {
            return Err(SimplicialError::InvalidOperator(format!(
                "degeneracy index {i} out of range for source dimension {n}"
            )));
        }
        let mut values = Vec::with_capacity(n + 1);
        let mut current = 0;
        values.push(0);
        for pos in 0..n {
            if word.binary_search(&pos).is_err() {
                current += 1;
            }
            values.push(current);
        }
        Ok(Self(Operator::from_raw(dst_dim, values)))
    }

    /// Repeated positions, ascending.
    pub fn word(&self) -> Vec<usize> {
        self.0.values.windows(2).enumerate().filter(|(_, w)| w[0] == w[1]).map(|(i, _)| i).collect()
    }

    pub fn as_operator(&self) -> &Operator {
        &self.0
    }

    pub fn into_operator(self) -> Operator {
        self.0
    }

    pub fn src_dim(&self) -> usize {
        self.0.src_dim()
    }

    pub fn dst_dim(&self) -> usize {
        self.0.dst_dim()
    }

    pub fn is_identity(&self) -> bool {
        self.0.src_dim() == self.0.dst_dim()
    }

    /// Whether `σ(i) = σ(i+1)`, i.e. the simplex it carries is in the image of `s_i`.
    pub fn repeats_at(&self, i: usize) -> bool {
        i < self.src_dim() && self.0.values[i] == self.0.values[i + 1]
    }

    /// All surjections `[n] ↠ [m]` in lexicographic order of their values.
    pub fn all(n: usize, m: usize) -> Vec<Surjection> {
        let mut out = Vec::new();
        if m > n {
            return out;
        }
        let mut values = vec![0usize; n + 1];
        fn rec(pos: usize, n: usize, m: usize, values: &mut Vec<usize>, out: &mut Vec<Surjection>) {
            if pos > n {
                if values[n] == m {
                    out.push(Surjection(Operator::from_raw(m, values.clone())));
                }
                return;
            }
            let prev = values[pos - 1];
            // remaining positions after this one must be able to reach m
            let remaining = n - pos;
            for v in [prev, prev + 1] {
                if v <= m && m - v <= remaining {
                    values[pos] = v;
                    rec(pos + 1, n, m, values, out);
                }
            }
        }
        if n == 0 {
            out.push(Surjection::identity(0));
            return out;
        }
        rec(1, n, m, &mut values, &mut out);
        out
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.word())
    }
}
