use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::operator::{compose_operators, Operator, Surjection};
use super::SimplicialError;

/// Position of a generator: `(dimension, insertion index within that dimension)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenId {
    pub dim: usize,
    pub index: usize,
}

/// A simplex in Eilenberg–Zilber normal form: `degeneracy*(generator)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormalSimplex {
    pub generator: GenId,
    pub degeneracy: Surjection,
}

impl FormalSimplex {
    pub fn new(generator: GenId, degeneracy: Surjection) -> Result<Self, SimplicialError> {
        if degeneracy.dst_dim() != generator.dim {
            return Err(SimplicialError::DimensionMismatch {
                expected: generator.dim,
                found: degeneracy.dst_dim(),
            });
        }
        Ok(Self { generator, degeneracy })
    }

    pub fn nondegenerate(generator: GenId) -> Self {
        Self { generator, degeneracy: Surjection::identity(generator.dim) }
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.src_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracy.is_identity()
    }
}

/// Provenance attached to generators of a constructed exit path simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SourceTag {
    /// A generator of the lower stratum `M`, by label.
    Low { source: String },
    /// An exit path `(γ, j)`; `γ` is `word` applied to the `N`-generator `source`.
    Exit { index: usize, word: Vec<usize>, source: String },
    /// A generator of the upper stratum `N`, by label.
    Upper { source: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub faces: Vec<FormalSimplex>,
    pub tag: Option<SourceTag>,
}

/// A finitely generated simplicial set, stored as nondegenerate generators and
/// their face tables. Every simplex is a [`FormalSimplex`] over a generator.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    name: String,
    generators: Vec<Vec<Generator>>,
    by_label: HashMap<String, GenId>,
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.generators == other.generators
    }
}

impl Eq for SimplicialSet {}

impl SimplicialSet {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Largest dimension holding a generator, `None` for the empty simplicial set.
    pub fn max_gen_dim(&self) -> Option<usize> {
        self.generators.iter().rposition(|g| !g.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.max_gen_dim().is_none()
    }

    pub fn generators(&self, dim: usize) -> &[Generator] {
        self.generators.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn generator_count(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    /// All generator ids in `(dimension, index)` order.
    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> + '_ {
        self.generators
            .iter()
            .enumerate()
            .flat_map(|(dim, gens)| (0..gens.len()).map(move |index| GenId { dim, index }))
    }

    pub fn generator(&self, id: GenId) -> Result<&Generator, SimplicialError> {
        self.generators
            .get(id.dim)
            .and_then(|g| g.get(id.index))
            .ok_or(SimplicialError::UnknownGenerator(id))
    }

    pub fn label(&self, id: GenId) -> &str {
        &self.generators[id.dim][id.index].label
    }

    pub fn find(&self, label: &str) -> Option<GenId> {
        self.by_label.get(label).copied()
    }

    pub fn nondegenerate(&self, label: &str) -> Result<FormalSimplex, SimplicialError> {
        self.find(label)
            .map(FormalSimplex::nondegenerate)
            .ok_or_else(|| SimplicialError::UnknownLabel(label.to_string()))
    }

    pub fn check(&self, s: &FormalSimplex) -> Result<(), SimplicialError> {
        self.generator(s.generator).map(|_| ())
    }

    /// Normal form of `α*(s)`.
    pub fn act(&self, s: &FormalSimplex, alpha: &Operator) -> Result<FormalSimplex, SimplicialError> {
        if alpha.dst_dim() != s.dim() {
            return Err(SimplicialError::DimensionMismatch { expected: s.dim(), found: alpha.dst_dim() });
        }
        self.check(s)?;
        let composite = compose_operators(s.degeneracy.as_operator(), alpha)?;
        Ok(self.pull_back(s.generator, composite))
    }

    /// Rewrites `op*(g)` into normal form by peeling off one coface at a time.
    fn pull_back(&self, mut generator: GenId, mut op: Operator) -> FormalSimplex {
        loop {
            let (epi, mono) = op.epi_mono_factor();
            if mono.is_identity() {
                return FormalSimplex { generator, degeneracy: epi };
            }
            let image = mono.values();
            let omitted = (0..=generator.dim)
                .find(|v| image.binary_search(v).is_err())
                .expect("non-identity injection omits a value");
            // mono = ∂_omitted ∘ rest
            let rest = Operator::from_raw(
                generator.dim - 1,
                image.iter().map(|&v| if v > omitted { v - 1 } else { v }).collect(),
            );
            let rest = compose_operators(&rest, epi.as_operator()).expect("dimensions agree");
            let face = &self.generators[generator.dim][generator.index].faces[omitted];
            op = compose_operators(face.degeneracy.as_operator(), &rest).expect("dimensions agree");
            generator = face.generator;
        }
    }

    pub fn face(&self, s: &FormalSimplex, i: usize) -> Result<FormalSimplex, SimplicialError> {
        self.act(s, &Operator::face(s.dim(), i)?)
    }

    pub fn degeneracy(&self, s: &FormalSimplex, i: usize) -> Result<FormalSimplex, SimplicialError> {
        self.act(s, &Operator::degeneracy(s.dim(), i)?)
    }

    /// Vertex `v` of `s`.
    pub fn vertex(&self, s: &FormalSimplex, v: usize) -> Result<FormalSimplex, SimplicialError> {
        self.act(s, &Operator::vertex(s.dim(), v)?)
    }

    /// Labels of the vertices of `s`, in order.
    pub fn vertex_labels(&self, s: &FormalSimplex) -> Result<Vec<&str>, SimplicialError> {
        (0..=s.dim()).map(|v| self.vertex(s, v).map(|x| self.label(x.generator))).collect()
    }

    /// All `n`-simplices, ordered by generator then by degeneracy values.
    pub fn simplices_at(&self, n: usize) -> Vec<FormalSimplex> {
        let mut out = Vec::new();
        for (dim, gens) in self.generators.iter().enumerate().take(n + 1) {
            if gens.is_empty() {
                continue;
            }
            let surjections = Surjection::all(n, dim);
            for index in 0..gens.len() {
                for s in &surjections {
                    out.push(FormalSimplex { generator: GenId { dim, index }, degeneracy: s.clone() });
                }
            }
        }
        out
    }

    /// `|X_n|` without materializing the simplices.
    pub fn count_at(&self, n: usize) -> usize {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
        }
        self.generators.iter().enumerate().take(n + 1).map(|(dim, gens)| gens.len() * binom(n, dim)).sum()
    }

    /// `s[word](label)` for degenerate simplices, bare label otherwise.
    pub fn describe(&self, s: &FormalSimplex) -> String {
        let label = self
            .generator(s.generator)
            .map(|g| g.label.as_str())
            .unwrap_or("<unknown>");
        if s.is_degenerate() {
            format!("s{}({label})", s.degeneracy)
        } else {
            label.to_string()
        }
    }

    /// Checks `d_i d_j g = d_{j-1} d_i g` for every generator and all `i < j`.
    pub fn audit(&self) -> Result<(), SimplicialError> {
        for id in self.gen_ids().filter(|g| g.dim >= 2) {
            let g = FormalSimplex::nondegenerate(id);
            for j in 0..=id.dim {
                let dj = self.face(&g, j)?;
                for i in 0..j {
                    let left = self.face(&dj, i)?;
                    let right = self.face(&self.face(&g, i)?, j - 1)?;
                    if left != right {
                        return Err(SimplicialError::IdentityViolation {
                            generator: self.label(id).to_string(),
                            i,
                            j,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::print_set(self))
    }
}

/// Incremental constructor; generators must be added after the generators their faces use.
#[derive(Clone, Debug)]
pub struct SimplicialSetBuilder {
    name: String,
    generators: Vec<Vec<Generator>>,
    by_label: HashMap<String, GenId>,
}

impl SimplicialSetBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), generators: Vec::new(), by_label: HashMap::new() }
    }

    pub fn find(&self, label: &str) -> Option<GenId> {
        self.by_label.get(label).copied()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<GenId, SimplicialError> {
        self.add_generator(label, Vec::new())
    }

    /// Adds a generator of dimension `faces.len() - 1` (or a vertex when `faces` is empty).
    pub fn add_generator(
        &mut self,
        label: impl Into<String>,
        faces: Vec<FormalSimplex>,
    ) -> Result<GenId, SimplicialError> {
        self.add_tagged(label, faces, None)
    }

    pub fn add_tagged(
        &mut self,
        label: impl Into<String>,
        faces: Vec<FormalSimplex>,
        tag: Option<SourceTag>,
    ) -> Result<GenId, SimplicialError> {
        let label = label.into();
        if self.by_label.contains_key(&label) {
            return Err(SimplicialError::DuplicateLabel(label));
        }
        let dim = faces.len().saturating_sub(1);
        if faces.len() == 1 {
            return Err(SimplicialError::InvalidFaces {
                generator: label,
                reason: "a generator of dimension n >= 1 needs n + 1 faces".into(),
            });
        }
        for (i, face) in faces.iter().enumerate() {
            if face.dim() != dim - 1 {
                return Err(SimplicialError::InvalidFaces {
                    generator: label,
                    reason: format!("face {i} has dimension {}, expected {}", face.dim(), dim - 1),
                });
            }
            let exists = self
                .generators
                .get(face.generator.dim)
                .is_some_and(|g| face.generator.index < g.len());
            if !exists || face.degeneracy.dst_dim() != face.generator.dim {
                return Err(SimplicialError::InvalidFaces {
                    generator: label,
                    reason: format!("face {i} references an unknown generator {:?}", face.generator),
                });
            }
        }
        if self.generators.len() <= dim {
            self.generators.resize_with(dim + 1, Vec::new);
        }
        let id = GenId { dim, index: self.generators[dim].len() };
        self.by_label.insert(label.clone(), id);
        self.generators[dim].push(Generator { label, faces, tag });
        Ok(id)
    }

    /// Finishes construction after auditing the simplicial identities on every generator.
    pub fn build(self) -> Result<SimplicialSet, SimplicialError> {
        let set = self.build_unaudited();
        set.audit()?;
        Ok(set)
    }

    /// Finishes construction without the identity audit (negative controls, diagnostics).
    pub fn build_unaudited(mut self) -> SimplicialSet {
        while self.generators.last().is_some_and(Vec::is_empty) {
            self.generators.pop();
        }
        SimplicialSet { name: self.name, generators: self.generators, by_label: self.by_label }
    }
}
