//! Exit shuffles `Δ[k] → Δ[1] × Δ[k-1]`, their collapses, and the index
//! arithmetic (`♭`, `♯`, face classes) that drives faces and degeneracies of
//! exit paths.
//!
//! Points of the prism `[1] × [k-1]` are [`PrismPoint`]s; level `0` is the
//! copy of the link side, level `1` the upper stratum. For `k = 1` the prism
//! `[1] × [0]` is identified with `[1]`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::simplicial::{compose_operators, Operator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShuffleError {
    #[error("exit index {j} out of range 1..={k}")]
    ExitIndexOutOfRange { k: usize, j: usize },
    #[error("face index {i} out of range 0..={k}")]
    FaceIndexOutOfRange { k: usize, i: usize },
    #[error("dimension k = {k} too small (need k >= {min})")]
    DimensionTooSmall { k: usize, min: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the exit index of face {k} of an exit path of index {k} is undefined (the face is low)")]
    FlatUndefined { k: usize },
}

/// An element `(level, position)` of `[1] × [k-1]`, ordered componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrismPoint {
    pub level: usize,
    pub position: usize,
}

impl PrismPoint {
    pub fn new(level: usize, position: usize) -> Self {
        debug_assert!(level <= 1);
        Self { level, position }
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.level <= other.level && self.position <= other.position
    }
}

impl fmt::Display for PrismPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.position)
    }
}

/// Which part of the prism a face of an exit path lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FaceClass {
    /// Meets both levels; stays an exit path.
    Vertical,
    /// Factors through `{0} × Δ[k-1]`; descends to the lower stratum.
    Low,
    /// Factors through `{1} × Δ[k-1]`; lands in the upper stratum.
    Upper,
}

impl fmt::Display for FaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaceClass::Vertical => "vertical",
            FaceClass::Low => "low",
            FaceClass::Upper => "upper",
        })
    }
}

/// A map `[n] → [1] × [m]`, stored as its level and position components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrismMap {
    levels: Operator,
    positions: Operator,
}

impl PrismMap {
    fn from_points(points: &[PrismPoint], m: usize) -> Self {
        let levels = Operator::new(1, points.iter().map(|p| p.level).collect()).expect("monotone levels");
        let positions =
            Operator::new(m, points.iter().map(|p| p.position).collect()).expect("monotone positions");
        Self { levels, positions }
    }

    pub fn src_dim(&self) -> usize {
        self.levels.src_dim()
    }

    /// `m` for a map into `[1] × [m]`.
    pub fn prism_dim(&self) -> usize {
        self.positions.dst_dim()
    }

    pub fn point(&self, i: usize) -> PrismPoint {
        PrismPoint::new(self.levels.apply(i), self.positions.apply(i))
    }

    pub fn points(&self) -> Vec<PrismPoint> {
        (0..=self.src_dim()).map(|i| self.point(i)).collect()
    }

    pub fn levels(&self) -> &Operator {
        &self.levels
    }

    pub fn positions(&self) -> &Operator {
        &self.positions
    }

    /// `self ∘ alpha` for `alpha: [p] → [n]`.
    pub fn after(&self, alpha: &Operator) -> Result<PrismMap, ShuffleError> {
        let levels = compose_operators(&self.levels, alpha).map_err(|_| ShuffleError::DimensionMismatch {
            expected: self.src_dim(),
            found: alpha.dst_dim(),
        })?;
        let positions = compose_operators(&self.positions, alpha).expect("same source as levels");
        Ok(Self { levels, positions })
    }

    /// Whether the image lies in a single level, and which.
    pub fn constant_level(&self) -> Option<usize> {
        let values = self.levels.values();
        values.iter().all(|&l| l == values[0]).then_some(values[0])
    }
}

/// The collapse `C^k_j: [1] × [k-1] → [k]`, a left inverse of `S^k_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Collapse {
    k: usize,
    j: usize,
    lower: Operator,
    upper: Operator,
}

impl Collapse {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn exit_index(&self) -> usize {
        self.j
    }

    pub fn apply(&self, p: PrismPoint) -> usize {
        match p.level {
            0 => self.lower.apply(p.position),
            _ => self.upper.apply(p.position),
        }
    }

    /// The restriction to `{0} × [k-1]`.
    pub fn lower(&self) -> &Operator {
        &self.lower
    }

    /// The restriction to `{1} × [k-1]`.
    pub fn upper(&self) -> &Operator {
        &self.upper
    }

    /// `self ∘ prism` as an operator `[n] → [k]`.
    pub fn after(&self, prism: &PrismMap) -> Result<Operator, ShuffleError> {
        if prism.prism_dim() + 1 != self.k {
            return Err(ShuffleError::DimensionMismatch { expected: self.k - 1, found: prism.prism_dim() });
        }
        Ok(Operator::new(self.k, prism.points().into_iter().map(|p| self.apply(p)).collect())
            .expect("collapse is monotone"))
    }
}

fn check_exit_index(k: usize, j: usize) -> Result<(), ShuffleError> {
    if k == 0 {
        return Err(ShuffleError::DimensionTooSmall { k, min: 1 });
    }
    if j == 0 || j > k {
        return Err(ShuffleError::ExitIndexOutOfRange { k, j });
    }
    Ok(())
}

/// `S^k_j: i ↦ (0, i)` for `i < j`, `(1, i - 1)` for `i ≥ j`.
pub fn exit_shuffle(k: usize, j: usize) -> Result<PrismMap, ShuffleError> {
    check_exit_index(k, j)?;
    let points: Vec<PrismPoint> = (0..=k)
        .map(|i| if i < j { PrismPoint::new(0, i) } else { PrismPoint::new(1, i - 1) })
        .collect();
    Ok(PrismMap::from_points(&points, k - 1))
}

/// `C^k_j`: `(0, i) ↦ i` if `i < j` else `j - 1`; `(1, i) ↦ j` if `i < j` else `i + 1`.
pub fn collapse(k: usize, j: usize) -> Result<Collapse, ShuffleError> {
    check_exit_index(k, j)?;
    let lower = (0..k).map(|i| if i < j { i } else { j - 1 }).collect();
    let upper = (0..k).map(|i| if i < j { j } else { i + 1 }).collect();
    Ok(Collapse {
        k,
        j,
        lower: Operator::new(k, lower).expect("monotone"),
        upper: Operator::new(k, upper).expect("monotone"),
    })
}

/// The composite `{0} × Δ[k-1] ↪ Δ[1] × Δ[k-1] → Δ[k]` of `C^k_j`; restricting
/// an exit path along it gives the simplex that must come from the link.
pub fn restriction_operator(k: usize, j: usize) -> Result<Operator, ShuffleError> {
    Ok(collapse(k, j)?.lower)
}

/// `♭^k_{j,i}`: exit index of the `i`-th face of an exit path of index `j`.
pub fn flat(k: usize, j: usize, i: usize) -> Result<usize, ShuffleError> {
    if k < 2 {
        return Err(ShuffleError::DimensionTooSmall { k, min: 2 });
    }
    check_exit_index(k, j)?;
    if i > k {
        return Err(ShuffleError::FaceIndexOutOfRange { k, i });
    }
    if j == k && i == k {
        return Err(ShuffleError::FlatUndefined { k });
    }
    Ok(if i >= j { j } else { j - 1 })
}

/// `♯^k_{j,i}`: exit index of the `i`-th degeneracy of an exit path of index `j`.
pub fn sharp(k: usize, j: usize, i: usize) -> Result<usize, ShuffleError> {
    check_exit_index(k, j)?;
    if i > k {
        return Err(ShuffleError::FaceIndexOutOfRange { k, i });
    }
    Ok(if i >= j { j } else { j + 1 })
}

/// Classifies the `i`-th face of an exit path of index `j` by where `S_j ∘ ∂_i` lands.
pub fn classify_face(k: usize, j: usize, i: usize) -> Result<FaceClass, ShuffleError> {
    if i > k {
        return Err(ShuffleError::FaceIndexOutOfRange { k, i });
    }
    let face = Operator::face(k, i).map_err(|_| ShuffleError::DimensionTooSmall { k, min: 1 })?;
    let composite = exit_shuffle(k, j)?.after(&face)?;
    Ok(match composite.constant_level() {
        Some(0) => FaceClass::Low,
        Some(_) => FaceClass::Upper,
        None => FaceClass::Vertical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(m: &PrismMap) -> Vec<(usize, usize)> {
        m.points().iter().map(|p| (p.level, p.position)).collect()
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(pts(&exit_shuffle(1, 1).unwrap()), vec![(0, 0), (1, 0)]);
        assert_eq!(pts(&exit_shuffle(3, 1).unwrap()), vec![(0, 0), (1, 0), (1, 1), (1, 2)]);
        assert_eq!(pts(&exit_shuffle(3, 3).unwrap()), vec![(0, 0), (0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn shuffle_rejects_boundary_indices() {
        assert_eq!(exit_shuffle(3, 0), Err(ShuffleError::ExitIndexOutOfRange { k: 3, j: 0 }));
        assert_eq!(exit_shuffle(3, 4), Err(ShuffleError::ExitIndexOutOfRange { k: 3, j: 4 }));
        assert!(exit_shuffle(0, 0).is_err());
        assert!(collapse(2, 3).is_err());
    }

    #[test]
    fn shuffles_are_injective_and_monotone() {
        for k in 1..=8 {
            for j in 1..=k {
                let p = exit_shuffle(k, j).unwrap().points();
                assert!(p.windows(2).all(|w| w[0].leq(&w[1]) && w[0] != w[1]));
            }
        }
    }

    #[test]
    fn collapse_examples() {
        let c = collapse(1, 1).unwrap();
        assert_eq!(c.apply(PrismPoint::new(0, 0)), 0);
        assert_eq!(c.apply(PrismPoint::new(1, 0)), 1);
        let c = collapse(2, 2).unwrap();
        let got: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(l, p)| c.apply(PrismPoint::new(l, p)))
            .collect();
        assert_eq!(got, vec![0, 1, 2, 2]);
    }

    #[test]
    fn collapse_is_monotone_on_prism() {
        for k in 1..=6 {
            for j in 1..=k {
                let c = collapse(k, j).unwrap();
                for a in 0..=1 {
                    for b in 0..=1 {
                        for p in 0..k {
                            for q in 0..k {
                                let (x, y) = (PrismPoint::new(a, p), PrismPoint::new(b, q));
                                if x.leq(&y) {
                                    assert!(c.apply(x) <= c.apply(y));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restriction_operator(1, 1).unwrap().values(), &[0]);
        assert_eq!(restriction_operator(2, 2).unwrap().values(), &[0, 1]);
        assert_eq!(restriction_operator(3, 1).unwrap().values(), &[0, 0, 0]);
    }

    #[test]
    fn flat_examples() {
        assert_eq!(flat(5, 2, 3), Ok(2));
        assert_eq!(flat(5, 2, 2), Ok(2));
        assert_eq!(flat(5, 2, 0), Ok(1));
        assert_eq!(flat(5, 2, 1), Ok(1));
        assert_eq!(flat(4, 4, 4), Err(ShuffleError::FlatUndefined { k: 4 }));
        assert!(flat(1, 1, 0).is_err());
        assert!(flat(3, 1, 4).is_err());
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp(1, 1, 0), Ok(2));
        assert_eq!(sharp(1, 1, 1), Ok(1));
        assert_eq!(sharp(2, 1, 1), Ok(1));
        assert!(sharp(2, 1, 3).is_err());
        assert!(sharp(2, 3, 0).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_face(2, 1, 0), Ok(FaceClass::Upper));
        assert_eq!(classify_face(2, 2, 2), Ok(FaceClass::Low));
        assert_eq!(classify_face(2, 2, 0), Ok(FaceClass::Vertical));
        assert_eq!(classify_face(2, 1, 2), Ok(FaceClass::Vertical));
        assert_eq!(classify_face(1, 1, 1), Ok(FaceClass::Low));
        assert_eq!(classify_face(1, 1, 0), Ok(FaceClass::Upper));
    }

    #[test]
    fn classification_closed_form() {
        for k in 1..=10 {
            for j in 1..=k {
                for i in 0..=k {
                    let expected = if (i, j) == (k, k) {
                        FaceClass::Low
                    } else if (i, j) == (0, 1) {
                        FaceClass::Upper
                    } else {
                        FaceClass::Vertical
                    };
                    assert_eq!(classify_face(k, j, i).unwrap(), expected, "k={k} j={j} i={i}");
                }
            }
        }
    }
}
