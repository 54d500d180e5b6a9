use std::collections::HashMap;
use std::sync::Arc;

use super::operator::Surjection;
use super::set::{FormalSimplex, GenId, SimplicialSet};
use super::SimplicialError;

/// A simplicial map, determined by the images of the domain's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    name: String,
    domain: Arc<SimplicialSet>,
    codomain: Arc<SimplicialSet>,
    images: Vec<Vec<FormalSimplex>>,
}

impl SimplicialMap {
    /// `images[d][i]` is the image of generator `(d, i)` of the domain. Checks
    /// dimensions, references and naturality with respect to faces.
    pub fn new(
        name: impl Into<String>,
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        images: Vec<Vec<FormalSimplex>>,
    ) -> Result<Self, SimplicialError> {
        let name = name.into();
        for id in domain.gen_ids() {
            let image = images
                .get(id.dim)
                .and_then(|row| row.get(id.index))
                .ok_or_else(|| SimplicialError::InvalidMap {
                    map: name.clone(),
                    reason: format!("generator {} has no image", domain.label(id)),
                })?;
            if image.dim() != id.dim {
                return Err(SimplicialError::InvalidMap {
                    map: name.clone(),
                    reason: format!(
                        "generator {} of dimension {} sent to a simplex of dimension {}",
                        domain.label(id),
                        id.dim,
                        image.dim()
                    ),
                });
            }
            codomain.check(image).map_err(|_| SimplicialError::InvalidMap {
                map: name.clone(),
                reason: format!("image of {} references an unknown generator", domain.label(id)),
            })?;
        }
        let extra = images.iter().enumerate().any(|(d, row)| row.len() != domain.generators(d).len());
        if extra {
            return Err(SimplicialError::InvalidMap {
                map: name,
                reason: "image table does not match the domain's generators".into(),
            });
        }
        let map = Self { name, domain, codomain, images };
        map.check_naturality()?;
        Ok(map)
    }

    /// Builds a map from `(domain label, image)` pairs.
    pub fn from_labels(
        name: impl Into<String>,
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        assignment: &[(&str, FormalSimplex)],
    ) -> Result<Self, SimplicialError> {
        let name = name.into();
        let mut images: Vec<Vec<Option<FormalSimplex>>> = (0..=domain.max_gen_dim().map_or(0, |d| d))
            .map(|d| vec![None; domain.generators(d).len()])
            .collect();
        if domain.is_empty() {
            images.clear();
        }
        for (label, image) in assignment {
            let id = domain.find(label).ok_or_else(|| SimplicialError::UnknownLabel(label.to_string()))?;
            images[id.dim][id.index] = Some(image.clone());
        }
        let mut complete = Vec::with_capacity(images.len());
        for (d, row) in images.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (index, image) in row.into_iter().enumerate() {
                out.push(image.ok_or_else(|| SimplicialError::InvalidMap {
                    map: name.clone(),
                    reason: format!("generator {} has no image", domain.label(GenId { dim: d, index })),
                })?);
            }
            complete.push(out);
        }
        Self::new(name, domain, codomain, complete)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let images = (0..x.max_gen_dim().map_or(0, |d| d + 1))
            .map(|d| {
                (0..x.generators(d).len())
                    .map(|index| FormalSimplex::nondegenerate(GenId { dim: d, index }))
                    .collect()
            })
            .collect();
        Self { name: "id".into(), domain: x.clone(), codomain: x, images }
    }

    /// The map sending everything to the degeneracies of one vertex of `codomain`.
    pub fn constant(
        name: impl Into<String>,
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        vertex_label: &str,
    ) -> Result<Self, SimplicialError> {
        let v = codomain.find(vertex_label).ok_or_else(|| SimplicialError::UnknownLabel(vertex_label.into()))?;
        if v.dim != 0 {
            return Err(SimplicialError::InvalidMap {
                map: name.into(),
                reason: format!("{vertex_label} is not a vertex"),
            });
        }
        let images = (0..domain.max_gen_dim().map_or(0, |d| d + 1))
            .map(|d| {
                let image = FormalSimplex {
                    generator: v,
                    degeneracy: Surjection::new(super::Operator::from_raw(0, vec![0; d + 1]))
                        .expect("constant maps are surjective onto [0]"),
                };
                vec![image; domain.generators(d).len()]
            })
            .collect();
        Self::new(name, domain, codomain, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn domain(&self) -> &Arc<SimplicialSet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialSet> {
        &self.codomain
    }

    pub fn image_of_generator(&self, id: GenId) -> &FormalSimplex {
        &self.images[id.dim][id.index]
    }

    fn check_naturality(&self) -> Result<(), SimplicialError> {
        for id in self.domain.gen_ids().filter(|g| g.dim >= 1) {
            let g = FormalSimplex::nondegenerate(id);
            let image = self.image_of_generator(id);
            for i in 0..=id.dim {
                let left = self.apply_map(&self.domain.face(&g, i)?)?;
                let right = self.codomain.face(image, i)?;
                if left != right {
                    return Err(SimplicialError::NaturalityViolation {
                        map: self.name.clone(),
                        generator: self.domain.label(id).to_string(),
                        face: i,
                    });
                }
            }
        }
        Ok(())
    }

    /// Normal form of `f(s)`; `f(σ*(g)) = σ*(f(g))`.
    pub fn apply_map(&self, s: &FormalSimplex) -> Result<FormalSimplex, SimplicialError> {
        self.domain.check(s)?;
        let image = self.image_of_generator(s.generator);
        self.codomain.act(image, s.degeneracy.as_operator())
    }

    /// First pair of distinct simplices of degree `≤ bound` with equal images.
    pub fn mono_violation(&self, bound: usize) -> Option<(FormalSimplex, FormalSimplex)> {
        for n in 0..=bound {
            let mut seen: HashMap<FormalSimplex, FormalSimplex> = HashMap::new();
            for s in self.domain.simplices_at(n) {
                let image = self.apply_map(&s).expect("simplices of the domain map");
                if let Some(prev) = seen.insert(image, s.clone()) {
                    return Some((prev, s));
                }
            }
        }
        None
    }

    /// Degreewise injectivity on the full simplex sets of degree `≤ bound`.
    pub fn is_mono(&self, bound: usize) -> bool {
        self.mono_violation(bound).is_none()
    }

    /// Certifies injectivity up to `bound` and indexes the image for preimage lookups.
    pub fn mono_inverse(&self, bound: usize) -> Result<MonoInverse, SimplicialError> {
        if let Some((a, b)) = self.mono_violation(bound) {
            return Err(SimplicialError::NotMono {
                map: self.name.clone(),
                degree: a.dim(),
                first: self.domain.describe(&a),
                second: self.domain.describe(&b),
            });
        }
        // an injective map sends generators to nondegenerate simplices
        let mut table = HashMap::new();
        for id in self.domain.gen_ids().filter(|g| g.dim <= bound) {
            let image = self.image_of_generator(id);
            debug_assert!(!image.is_degenerate());
            table.insert(image.generator, id);
        }
        Ok(MonoInverse { map: self.name.clone(), bound, table })
    }
}

/// Inverse of a map verified injective up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoInverse {
    map: String,
    bound: usize,
    table: HashMap<GenId, GenId>,
}

impl MonoInverse {
    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The unique preimage of `s`, or `None` when `s` is outside the image.
    pub fn preimage_under_mono(&self, s: &FormalSimplex) -> Result<Option<FormalSimplex>, SimplicialError> {
        if s.dim() > self.bound {
            return Err(SimplicialError::BeyondVerifiedBound {
                map: self.map.clone(),
                degree: s.dim(),
                bound: self.bound,
            });
        }
        Ok(self
            .table
            .get(&s.generator)
            .map(|&g| FormalSimplex { generator: g, degeneracy: s.degeneracy.clone() }))
    }
}
