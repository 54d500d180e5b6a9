//! The exit path simplicial set of a linked span `M ←π− L −ι→ N`.
//!
//! In degree `k` the simplices are `M_k ⨿ P̂_{k-1} ⨿ N_k`, where an exit path
//! `(γ, j) ∈ P̂_{k-1}` is a `k`-simplex `γ` of `N` together with an exit index
//! `1 ≤ j ≤ k` such that restricting `γ` along the lower half of the collapse
//! `C^k_j` lands in `ι(L)`. Faces of exit paths are vertical (another exit
//! path, index `♭`), low (pushed to `M` through the unique `ι`-preimage and
//! `π`) or upper (the face of `γ` itself); degeneracies use index `♯`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::shuffle::{classify_face, flat, restriction_operator, sharp, FaceClass, ShuffleError};
use crate::simplicial::{
    compose_operators, FormalSimplex, GenId, MonoInverse, Operator, SimplicialError, SimplicialMap,
    SimplicialSet, SimplicialSetBuilder, SourceTag, Surjection,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExitError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
    #[error("span `{span}`: ι is verified injective only up to degree {verified:?}, degree {needed} required")]
    Unverified { span: String, needed: usize, verified: Option<usize> },
    #[error("span `{span}` is malformed: {reason}")]
    InvalidSpan { span: String, reason: String },
    #[error("span integrity violated: {0}")]
    SpanIntegrity(String),
    #[error("({gamma}, {index}) is not an exit path")]
    NotAnExitPath { gamma: String, index: usize },
    #[error("degree {degree} exceeds the construction bound {bound}")]
    BeyondBound { degree: usize, bound: usize },
}

/// Tri-state record of a hypothesis check on the span's legs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub enum CheckState {
    #[default]
    Unchecked,
    Verified { bound: usize },
    Failed { bound: usize, detail: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpanStatus {
    pub iota_mono: CheckState,
    pub pi_right_fibration: CheckState,
}

/// `M ←π− L −ι→ N` together with the verification status of its legs.
#[derive(Clone, Debug)]
pub struct LinkedSpan {
    name: String,
    pi: SimplicialMap,
    iota: SimplicialMap,
    status: SpanStatus,
    iota_inverse: Option<MonoInverse>,
}

/// An element `(γ, j)` of `P̂_{k-1}`; equal iff both coordinates agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExitPath {
    pub gamma: FormalSimplex,
    pub index: usize,
}

impl ExitPath {
    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }
}

/// A simplex of the exit path simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExitSimplex {
    Low(FormalSimplex),
    Exit(ExitPath),
    Upper(FormalSimplex),
}

impl ExitSimplex {
    pub fn dim(&self) -> usize {
        match self {
            ExitSimplex::Low(s) | ExitSimplex::Upper(s) => s.dim(),
            ExitSimplex::Exit(p) => p.dim(),
        }
    }
}

impl LinkedSpan {
    /// Pairs the legs `π: L → M` and `ι: L → N`; they must share their domain.
    pub fn new(name: impl Into<String>, pi: SimplicialMap, iota: SimplicialMap) -> Result<Self, ExitError> {
        let name = name.into();
        if pi.domain() != iota.domain() {
            return Err(ExitError::InvalidSpan {
                span: name,
                reason: format!(
                    "π has domain `{}` but ι has domain `{}`",
                    pi.domain().name(),
                    iota.domain().name()
                ),
            });
        }
        Ok(Self { name, pi, iota, status: SpanStatus::default(), iota_inverse: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lower(&self) -> &Arc<SimplicialSet> {
        self.pi.codomain()
    }

    pub fn link(&self) -> &Arc<SimplicialSet> {
        self.pi.domain()
    }

    pub fn upper(&self) -> &Arc<SimplicialSet> {
        self.iota.codomain()
    }

    pub fn pi(&self) -> &SimplicialMap {
        &self.pi
    }

    pub fn iota(&self) -> &SimplicialMap {
        &self.iota
    }

    pub fn status(&self) -> &SpanStatus {
        &self.status
    }

    /// Checks degreewise injectivity of `ι` up to `bound` and records the result.
    pub fn verify_iota_mono(&mut self, bound: usize) -> bool {
        match self.iota.mono_inverse(bound) {
            Ok(inverse) => {
                self.iota_inverse = Some(inverse);
                self.status.iota_mono = CheckState::Verified { bound };
                true
            }
            Err(err) => {
                self.iota_inverse = None;
                self.status.iota_mono = CheckState::Failed { bound, detail: err.to_string() };
                false
            }
        }
    }

    /// Consuming form of [`verify_iota_mono`](Self::verify_iota_mono) that fails on a non-injective `ι`.
    pub fn with_verified_iota(mut self, bound: usize) -> Result<Self, ExitError> {
        if self.verify_iota_mono(bound) {
            Ok(self)
        } else {
            Err(self.iota.mono_inverse(bound).unwrap_err().into())
        }
    }

    pub fn record_right_fibration(&mut self, state: CheckState) {
        self.status.pi_right_fibration = state;
    }

    fn inverse(&self, needed: usize) -> Result<&MonoInverse, ExitError> {
        match &self.iota_inverse {
            Some(inv) if inv.bound() >= needed => Ok(inv),
            other => Err(ExitError::Unverified {
                span: self.name.clone(),
                needed,
                verified: other.as_ref().map(MonoInverse::bound),
            }),
        }
    }

    /// Whether `(gamma, j)` is an exit path: `gamma` restricted along the lower
    /// half of `C^k_j` has a preimage under `ι`.
    pub fn is_exit_path(&self, gamma: &FormalSimplex, j: usize) -> Result<bool, ExitError> {
        let k = gamma.dim();
        if k == 0 {
            return Err(SimplicialError::DimensionMismatch { expected: 1, found: 0 }.into());
        }
        let restriction = restriction_operator(k, j)?;
        let inverse = self.inverse(k - 1)?;
        let restricted = self.upper().act(gamma, &restriction)?;
        Ok(inverse.preimage_under_mono(&restricted)?.is_some())
    }

    /// Validated constructor for an [`ExitPath`].
    pub fn exit_path(&self, gamma: FormalSimplex, j: usize) -> Result<ExitPath, ExitError> {
        if self.is_exit_path(&gamma, j)? {
            Ok(ExitPath { gamma, index: j })
        } else {
            Err(ExitError::NotAnExitPath { gamma: self.upper().describe(&gamma), index: j })
        }
    }

    /// `P̂_{k-1}` in order of `γ`, then ascending `j`.
    pub fn exit_simplices(&self, k: usize) -> Result<Vec<ExitPath>, ExitError> {
        if k == 0 {
            return Ok(Vec::new());
        }
        self.inverse(k - 1)?;
        let mut out = Vec::new();
        for gamma in self.upper().simplices_at(k) {
            for j in 1..=k {
                if self.is_exit_path(&gamma, j)? {
                    out.push(ExitPath { gamma: gamma.clone(), index: j });
                }
            }
        }
        Ok(out)
    }

    /// All `k`-simplices: `M_k`, then `P̂_{k-1}`, then `N_k`.
    pub fn simplices(&self, k: usize) -> Result<Vec<ExitSimplex>, ExitError> {
        let mut out: Vec<ExitSimplex> = self.lower().simplices_at(k).into_iter().map(ExitSimplex::Low).collect();
        out.extend(self.exit_simplices(k)?.into_iter().map(ExitSimplex::Exit));
        out.extend(self.upper().simplices_at(k).into_iter().map(ExitSimplex::Upper));
        Ok(out)
    }

    /// `π` of the unique `ι`-preimage of an `N`-simplex known to lie in `ι(L)`.
    fn descend(&self, s: &FormalSimplex) -> Result<FormalSimplex, ExitError> {
        let preimage = self.inverse(s.dim())?.preimage_under_mono(s)?.ok_or_else(|| {
            ExitError::SpanIntegrity(format!(
                "low face {} of an exit path is not in the image of ι (generator `{}`)",
                self.upper().describe(s),
                self.upper().label(s.generator)
            ))
        })?;
        Ok(self.pi.apply_map(&preimage)?)
    }

    pub fn exit_face(&self, s: &ExitSimplex, i: usize) -> Result<ExitSimplex, ExitError> {
        match s {
            ExitSimplex::Low(m) => Ok(ExitSimplex::Low(self.lower().face(m, i)?)),
            ExitSimplex::Upper(n) => Ok(ExitSimplex::Upper(self.upper().face(n, i)?)),
            ExitSimplex::Exit(p) => {
                let k = p.dim();
                let face = self.upper().face(&p.gamma, i)?;
                match classify_face(k, p.index, i)? {
                    FaceClass::Vertical => {
                        Ok(ExitSimplex::Exit(ExitPath { gamma: face, index: flat(k, p.index, i)? }))
                    }
                    FaceClass::Low => Ok(ExitSimplex::Low(self.descend(&face)?)),
                    FaceClass::Upper => Ok(ExitSimplex::Upper(face)),
                }
            }
        }
    }

    pub fn exit_degeneracy(&self, s: &ExitSimplex, i: usize) -> Result<ExitSimplex, ExitError> {
        match s {
            ExitSimplex::Low(m) => Ok(ExitSimplex::Low(self.lower().degeneracy(m, i)?)),
            ExitSimplex::Upper(n) => Ok(ExitSimplex::Upper(self.upper().degeneracy(n, i)?)),
            ExitSimplex::Exit(p) => Ok(ExitSimplex::Exit(ExitPath {
                gamma: self.upper().degeneracy(&p.gamma, i)?,
                index: sharp(p.dim(), p.index, i)?,
            })),
        }
    }

    /// A witness `(p', i)` with `s_i(p') = p`, smallest `i` first; `None` iff
    /// `p` is nondegenerate in the exit path simplicial set.
    pub fn detect_degenerate_exit(&self, p: &ExitPath) -> Result<Option<(ExitPath, usize)>, ExitError> {
        let k = p.dim();
        if k < 2 {
            return Ok(None);
        }
        let j = p.index;
        for i in 0..k {
            if !p.gamma.degeneracy.repeats_at(i) {
                continue;
            }
            // sharp(k-1, e, i) = j has e = j when i >= j and e = j - 1 when i < j - 1
            let candidate = if i >= j && j < k {
                Some(j)
            } else if i + 1 < j {
                Some(j - 1)
            } else {
                None
            };
            if let Some(e) = candidate {
                let gamma = self.upper().face(&p.gamma, i)?;
                if self.is_exit_path(&gamma, e)? {
                    return Ok(Some((ExitPath { gamma, index: e }, i)));
                }
            }
        }
        Ok(None)
    }

    pub fn describe(&self, s: &ExitSimplex) -> String {
        match s {
            ExitSimplex::Low(m) => format!("low {}", self.lower().describe(m)),
            ExitSimplex::Upper(n) => format!("upper {}", self.upper().describe(n)),
            ExitSimplex::Exit(p) => format!("exit {} j={}", self.upper().describe(&p.gamma), p.index),
        }
    }

    /// Materializes the exit path simplicial set through degree `bound`, with
    /// nondegenerate exit paths as generators.
    pub fn build_exit(&self, bound: usize) -> Result<ExitComplex, ExitError> {
        self.inverse(bound)?;
        let mut builder = SimplicialSetBuilder::new(format!("Ex({})", self.name));
        let mut complex = ExitComplex {
            set: Arc::new(SimplicialSetBuilder::new("").build_unaudited()),
            bound,
            low: HashMap::new(),
            upper: HashMap::new(),
            exits: HashMap::new(),
            origins: Vec::new(),
        };
        for k in 0..=bound {
            let mut origins = Vec::new();
            for (index, g) in self.lower().generators(k).iter().enumerate() {
                let source = GenId { dim: k, index };
                let faces = g.faces.iter().map(|f| complex.relabel(&complex.low, f)).collect();
                let id = builder.add_tagged(
                    format!("low.{}", g.label),
                    faces,
                    Some(SourceTag::Low { source: g.label.clone() }),
                )?;
                complex.low.insert(source, id);
                origins.push(Origin::Low(source));
            }
            for p in self.exit_simplices(k)? {
                if self.detect_degenerate_exit(&p)?.is_some() {
                    continue;
                }
                let s = ExitSimplex::Exit(p.clone());
                let faces = (0..=k)
                    .map(|i| complex.normalize(self, &self.exit_face(&s, i)?))
                    .collect::<Result<Vec<_>, _>>()?;
                let source = self.upper().label(p.gamma.generator).to_string();
                let word = p.gamma.degeneracy.word();
                let label = exit_label(p.index, &word, &source);
                let id = builder.add_tagged(label, faces, Some(SourceTag::Exit { index: p.index, word, source }))?;
                complex.exits.insert(p.clone(), id);
                origins.push(Origin::Exit(p));
            }
            for (index, g) in self.upper().generators(k).iter().enumerate() {
                let source = GenId { dim: k, index };
                let faces = g.faces.iter().map(|f| complex.relabel(&complex.upper, f)).collect();
                let id = builder.add_tagged(
                    format!("upper.{}", g.label),
                    faces,
                    Some(SourceTag::Upper { source: g.label.clone() }),
                )?;
                complex.upper.insert(source, id);
                origins.push(Origin::Upper(source));
            }
            complex.origins.push(origins);
        }
        complex.set = Arc::new(builder.build()?);
        Ok(complex)
    }
}

fn exit_label(index: usize, word: &[usize], source: &str) -> String {
    if word.is_empty() {
        format!("exit{index}.{source}")
    } else {
        let word: String = word.iter().map(|i| format!("s{i}")).collect();
        format!("exit{index}.{word}.{source}")
    }
}

impl fmt::Display for ExitSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExitSimplex::Low(s) => write!(f, "Low({:?}{})", s.generator, s.degeneracy),
            ExitSimplex::Exit(p) => write!(f, "Exit({:?}{}, {})", p.gamma.generator, p.gamma.degeneracy, p.index),
            ExitSimplex::Upper(s) => write!(f, "Upper({:?}{})", s.generator, s.degeneracy),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Origin {
    Low(GenId),
    Exit(ExitPath),
    Upper(GenId),
}

/// The exit path simplicial set through a degree bound, with the bijection
/// between its normal forms and the tagged simplices of the span.
#[derive(Clone, Debug)]
pub struct ExitComplex {
    set: Arc<SimplicialSet>,
    bound: usize,
    low: HashMap<GenId, GenId>,
    upper: HashMap<GenId, GenId>,
    exits: HashMap<ExitPath, GenId>,
    origins: Vec<Vec<Origin>>,
}

impl ExitComplex {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.set
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check_degree(&self, degree: usize) -> Result<(), ExitError> {
        if degree > self.bound {
            return Err(ExitError::BeyondBound { degree, bound: self.bound });
        }
        Ok(())
    }

    /// `|Ex_k|` for `k ≤ bound`.
    pub fn count_at(&self, k: usize) -> Result<usize, ExitError> {
        self.check_degree(k)?;
        Ok(self.set.count_at(k))
    }

    pub fn simplices_at(&self, k: usize) -> Result<Vec<FormalSimplex>, ExitError> {
        self.check_degree(k)?;
        Ok(self.set.simplices_at(k))
    }

    fn relabel(&self, table: &HashMap<GenId, GenId>, s: &FormalSimplex) -> FormalSimplex {
        FormalSimplex { generator: table[&s.generator], degeneracy: s.degeneracy.clone() }
    }

    fn normalize(&self, span: &LinkedSpan, s: &ExitSimplex) -> Result<FormalSimplex, ExitError> {
        match s {
            ExitSimplex::Low(m) => Ok(self.relabel(&self.low, m)),
            ExitSimplex::Upper(n) => Ok(self.relabel(&self.upper, n)),
            ExitSimplex::Exit(p) => {
                let mut indices = Vec::new();
                let mut current = p.clone();
                while let Some((below, i)) = span.detect_degenerate_exit(&current)? {
                    indices.push(i);
                    current = below;
                }
                let generator = *self.exits.get(&current).ok_or_else(|| {
                    ExitError::SpanIntegrity(format!(
                        "exit path {} has no generator below degree {}",
                        span.describe(&ExitSimplex::Exit(current.clone())),
                        self.bound + 1
                    ))
                })?;
                // p = s_{i_1} s_{i_2} ⋯ s_{i_r} g with indices = [i_1, ..., i_r]
                let mut op = Operator::identity(generator.dim);
                for &i in indices.iter().rev() {
                    op = compose_operators(&op, &Operator::degeneracy(op.src_dim(), i)?)?;
                }
                Ok(FormalSimplex { generator, degeneracy: Surjection::new(op)? })
            }
        }
    }

    /// The tagged simplex represented by a normal form of the built set.
    pub fn to_model(&self, span: &LinkedSpan, s: &FormalSimplex) -> Result<ExitSimplex, ExitError> {
        self.check_degree(s.dim())?;
        self.set.check(s)?;
        let origin = &self.origins[s.generator.dim][s.generator.index];
        match origin {
            Origin::Low(g) => Ok(ExitSimplex::Low(FormalSimplex { generator: *g, degeneracy: s.degeneracy.clone() })),
            Origin::Upper(g) => {
                Ok(ExitSimplex::Upper(FormalSimplex { generator: *g, degeneracy: s.degeneracy.clone() }))
            }
            Origin::Exit(p) => {
                let mut current = ExitSimplex::Exit(p.clone());
                for i in s.degeneracy.word() {
                    current = span.exit_degeneracy(&current, i)?;
                }
                Ok(current)
            }
        }
    }

    /// Normal form of a tagged simplex of degree `≤ bound`.
    pub fn from_model(&self, span: &LinkedSpan, s: &ExitSimplex) -> Result<FormalSimplex, ExitError> {
        self.check_degree(s.dim())?;
        self.normalize(span, s)
    }

    /// Number of nondegenerate exit paths per degree `0..=bound`.
    pub fn exit_generator_counts(&self) -> Vec<usize> {
        self.origins.iter().map(|o| o.iter().filter(|x| matches!(x, Origin::Exit(_))).count()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{discrete, point, standard_simplex};

    fn point_cone() -> LinkedSpan {
        let pt = Arc::new(point());
        let pi = SimplicialMap::identity(pt.clone()).with_name("pi");
        let iota = SimplicialMap::identity(pt).with_name("iota");
        LinkedSpan::new("point-cone", pi, iota).unwrap().with_verified_iota(6).unwrap()
    }

    fn interval_span(vertex: &str) -> LinkedSpan {
        let pt = Arc::new(point());
        let n = Arc::new(standard_simplex(1));
        let pi = SimplicialMap::identity(pt.clone()).with_name("pi");
        let iota =
            SimplicialMap::from_labels("iota", pt, n.clone(), &[("pt", n.nondegenerate(vertex).unwrap())]).unwrap();
        LinkedSpan::new("interval", pi, iota).unwrap().with_verified_iota(4).unwrap()
    }

    fn s0_defect() -> LinkedSpan {
        let l = Arc::new(discrete("L", ["a", "b"]));
        let m = Arc::new(point());
        let n = Arc::new(discrete("N", ["n-", "n+"]));
        let pi = SimplicialMap::constant("pi", l.clone(), m, "pt").unwrap();
        let iota = SimplicialMap::from_labels(
            "iota",
            l,
            n.clone(),
            &[("a", n.nondegenerate("n-").unwrap()), ("b", n.nondegenerate("n+").unwrap())],
        )
        .unwrap();
        LinkedSpan::new("s0", pi, iota).unwrap().with_verified_iota(4).unwrap()
    }

    fn total_degeneracy(x: &SimplicialSet, label: &str, k: usize) -> FormalSimplex {
        let mut s = x.nondegenerate(label).unwrap();
        for _ in 0..k {
            s = x.degeneracy(&s, 0).unwrap();
        }
        s
    }

    #[test]
    fn point_cone_membership() {
        let span = point_cone();
        for k in 1..=4 {
            let gamma = total_degeneracy(span.upper(), "pt", k);
            for j in 1..=k {
                assert!(span.is_exit_path(&gamma, j).unwrap());
            }
        }
        assert_eq!(span.exit_simplices(2).unwrap().len(), 2);
    }

    #[test]
    fn vertex_inclusions_decide_membership() {
        let edge = standard_simplex(1).nondegenerate("0<1").unwrap();
        assert!(!interval_span("1").is_exit_path(&edge, 1).unwrap());
        assert!(interval_span("0").is_exit_path(&edge, 1).unwrap());
    }

    #[test]
    fn unverified_span_is_rejected() {
        let pt = Arc::new(point());
        let span = LinkedSpan::new(
            "raw",
            SimplicialMap::identity(pt.clone()),
            SimplicialMap::identity(pt.clone()),
        )
        .unwrap();
        let gamma = total_degeneracy(&pt, "pt", 1);
        assert!(matches!(span.is_exit_path(&gamma, 1), Err(ExitError::Unverified { .. })));
        assert!(matches!(span.build_exit(2), Err(ExitError::Unverified { .. })));
        assert!(matches!(point_cone().build_exit(7), Err(ExitError::Unverified { .. })));
    }

    #[test]
    fn membership_errors() {
        let span = point_cone();
        let vertex = span.upper().nondegenerate("pt").unwrap();
        assert!(span.is_exit_path(&vertex, 1).is_err());
        let gamma = total_degeneracy(span.upper(), "pt", 2);
        assert!(matches!(span.is_exit_path(&gamma, 3), Err(ExitError::Shuffle(_))));
        assert!(span.exit_path(total_degeneracy(&standard_simplex(1), "1", 1), 1).is_err());
    }

    #[test]
    fn trivial_span_has_no_exit_paths() {
        let x = Arc::new(standard_simplex(2));
        let empty = Arc::new(crate::simplicial::empty());
        let pi = SimplicialMap::identity(empty.clone());
        let iota = SimplicialMap::new("iota", empty.clone(), x, vec![vec![]]).unwrap();
        let span = LinkedSpan::new("trivial", pi, iota).unwrap().with_verified_iota(3).unwrap();
        for k in 0..=3 {
            assert!(span.exit_simplices(k).unwrap().is_empty());
        }
    }

    #[test]
    fn s0_defect_exit_edges() {
        let span = s0_defect();
        let paths = span.exit_simplices(1).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.index == 1 && p.gamma.is_degenerate()));
    }

    #[test]
    fn point_cone_faces() {
        let span = point_cone();
        let edge = ExitSimplex::Exit(ExitPath { gamma: total_degeneracy(span.upper(), "pt", 1), index: 1 });
        let pt = span.upper().nondegenerate("pt").unwrap();
        assert_eq!(span.exit_face(&edge, 1).unwrap(), ExitSimplex::Low(pt.clone()));
        assert_eq!(span.exit_face(&edge, 0).unwrap(), ExitSimplex::Upper(pt));
    }

    #[test]
    fn two_simplex_face_classes() {
        let span = point_cone();
        let h = total_degeneracy(span.upper(), "pt", 2);
        let e1 = total_degeneracy(span.upper(), "pt", 1);
        let top2 = ExitSimplex::Exit(ExitPath { gamma: h.clone(), index: 2 });
        assert!(matches!(span.exit_face(&top2, 2).unwrap(), ExitSimplex::Low(_)));
        assert_eq!(
            span.exit_face(&top2, 0).unwrap(),
            ExitSimplex::Exit(ExitPath { gamma: e1.clone(), index: 1 })
        );
        let top1 = ExitSimplex::Exit(ExitPath { gamma: h, index: 1 });
        assert!(matches!(span.exit_face(&top1, 0).unwrap(), ExitSimplex::Upper(_)));
        assert_eq!(span.exit_face(&top1, 2).unwrap(), ExitSimplex::Exit(ExitPath { gamma: e1, index: 1 }));
    }

    #[test]
    fn degeneracies_of_exit_edge() {
        let span = point_cone();
        let e1 = total_degeneracy(span.upper(), "pt", 1);
        let h = total_degeneracy(span.upper(), "pt", 2);
        let edge = ExitSimplex::Exit(ExitPath { gamma: e1, index: 1 });
        assert_eq!(
            span.exit_degeneracy(&edge, 0).unwrap(),
            ExitSimplex::Exit(ExitPath { gamma: h.clone(), index: 2 })
        );
        assert_eq!(span.exit_degeneracy(&edge, 1).unwrap(), ExitSimplex::Exit(ExitPath { gamma: h, index: 1 }));
        let pt = span.lower().nondegenerate("pt").unwrap();
        assert_eq!(
            span.exit_degeneracy(&ExitSimplex::Low(pt.clone()), 0).unwrap(),
            ExitSimplex::Low(span.lower().degeneracy(&pt, 0).unwrap())
        );
    }

    #[test]
    fn degeneracy_detection() {
        let span = point_cone();
        let e1 = total_degeneracy(span.upper(), "pt", 1);
        let h = total_degeneracy(span.upper(), "pt", 2);
        let witness = span.detect_degenerate_exit(&ExitPath { gamma: h, index: 2 }).unwrap();
        assert_eq!(witness, Some((ExitPath { gamma: e1.clone(), index: 1 }, 0)));
        assert_eq!(span.detect_degenerate_exit(&ExitPath { gamma: e1, index: 1 }).unwrap(), None);

        let defect = s0_defect();
        let e = total_degeneracy(defect.upper(), "n-", 1);
        let t = total_degeneracy(defect.upper(), "n-", 2);
        let witness = defect.detect_degenerate_exit(&ExitPath { gamma: t, index: 1 }).unwrap();
        assert_eq!(witness, Some((ExitPath { gamma: e, index: 1 }, 1)));

        let collar = interval_span("0");
        let edge = collar.upper().nondegenerate("0<1").unwrap();
        for j in 1..=1 {
            assert_eq!(collar.detect_degenerate_exit(&ExitPath { gamma: edge.clone(), index: j }).unwrap(), None);
        }
    }

    #[test]
    fn point_cone_is_an_interval() {
        let span = point_cone();
        let ex = span.build_exit(6).unwrap();
        for k in 0..=6 {
            assert_eq!(ex.count_at(k).unwrap(), k + 2);
        }
        assert_eq!(ex.set().max_gen_dim(), Some(1));
        assert_eq!(ex.exit_generator_counts(), vec![0, 1, 0, 0, 0, 0, 0]);
        assert!(matches!(ex.count_at(7), Err(ExitError::BeyondBound { .. })));
    }

    #[test]
    fn model_round_trip() {
        for span in [point_cone(), s0_defect(), interval_span("0")] {
            let ex = span.build_exit(3).unwrap();
            for k in 0..=3 {
                let tagged = span.simplices(k).unwrap();
                assert_eq!(tagged.len(), ex.count_at(k).unwrap());
                for s in tagged {
                    let normal = ex.from_model(&span, &s).unwrap();
                    assert_eq!(ex.to_model(&span, &normal).unwrap(), s);
                }
            }
        }
    }
}
