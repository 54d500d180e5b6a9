use std::collections::HashMap;

use super::set::{FormalSimplex, GenId, SimplicialSet, SimplicialSetBuilder};
use super::SimplicialError;

/// A finite partial order on labelled elements `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Takes the pairs `(a, b)` meaning `a ≤ b`; reflexivity is implied. The
    /// relation must already be transitive and antisymmetric.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        relation: &[(usize, usize)],
    ) -> Result<Self, SimplicialError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(SimplicialError::InvalidPoset(format!("pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(SimplicialError::InvalidPoset(format!(
                        "not antisymmetric: {} and {} are mutually related",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(SimplicialError::InvalidPoset(format!(
                            "not transitive: {} ≤ {} ≤ {} but not {} ≤ {}",
                            labels[a], labels[b], labels[c], labels[a], labels[c]
                        )));
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(*l)) {
            return Err(SimplicialError::InvalidPoset(format!("duplicate element {dup}")));
        }
        Ok(Self { labels, leq })
    }

    /// Reflexive-transitive closure of the given covering pairs.
    pub fn from_covers<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        covers: &[(usize, usize)],
    ) -> Result<Self, SimplicialError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut reach = vec![vec![false; n]; n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(SimplicialError::InvalidPoset(format!("pair ({a}, {b}) out of range")));
            }
            reach[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if reach[a][k] {
                    for b in 0..n {
                        if reach[k][b] {
                            reach[a][b] = true;
                        }
                    }
                }
            }
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| reach[a][b])
            .collect();
        Self::new(labels, &pairs)
    }

    /// The total order `labels[0] < labels[1] < ...`.
    pub fn chain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let leq = (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect();
        Self { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Label of the nerve generator for a strictly increasing chain.
    pub fn chain_label(&self, chain: &[usize]) -> String {
        chain.iter().map(|&a| self.labels[a].as_str()).collect::<Vec<_>>().join("<")
    }
}

/// Nerve of a finite poset: `n`-generators are strictly increasing chains of
/// length `n + 1`, and the `i`-th face deletes the `i`-th entry.
pub fn nerve_of_poset(name: impl Into<String>, poset: &Poset) -> SimplicialSet {
    let mut builder = SimplicialSetBuilder::new(name);
    let mut ids: HashMap<Vec<usize>, GenId> = HashMap::new();
    let mut layer: Vec<Vec<usize>> = (0..poset.len()).map(|a| vec![a]).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for chain in &layer {
            let faces = if chain.len() == 1 {
                Vec::new()
            } else {
                (0..chain.len())
                    .map(|i| {
                        let mut face = chain.clone();
                        face.remove(i);
                        FormalSimplex::nondegenerate(ids[&face])
                    })
                    .collect()
            };
            let id = builder
                .add_generator(poset.chain_label(chain), faces)
                .expect("chains of a valid poset give a valid nerve");
            ids.insert(chain.clone(), id);
            let last = *chain.last().unwrap();
            next.extend((0..poset.len()).filter(|&b| poset.lt(last, b)).map(|b| {
                let mut longer = chain.clone();
                longer.push(b);
                longer
            }));
        }
        layer = next;
    }
    builder.build_unaudited()
}

/// The standard simplex `Δ[n]` as the nerve of `0 < 1 < ... < n`.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    nerve_of_poset(format!("Delta[{n}]"), &Poset::chain((0..=n).map(|i| i.to_string())))
}

/// `Δ[0]` with its vertex labelled `pt`.
pub fn point() -> SimplicialSet {
    named_point("pt")
}

pub fn named_point(label: &str) -> SimplicialSet {
    discrete("point", [label])
}

/// A simplicial set with only the given vertices.
pub fn discrete<S: Into<String>>(name: &str, labels: impl IntoIterator<Item = S>) -> SimplicialSet {
    let mut builder = SimplicialSetBuilder::new(name);
    for label in labels {
        builder.add_vertex(label).expect("distinct vertex labels");
    }
    builder.build_unaudited()
}

pub fn empty() -> SimplicialSet {
    SimplicialSetBuilder::new("empty").build_unaudited()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chains_counted(x: &SimplicialSet) -> Vec<usize> {
        (0..=x.max_gen_dim().unwrap_or(0)).map(|d| x.generators(d).len()).collect()
    }

    #[test]
    fn one_element_poset_is_point() {
        let x = nerve_of_poset("p", &Poset::chain(["a"]));
        assert_eq!(chains_counted(&x), vec![1]);
    }

    #[test]
    fn two_chain_is_interval() {
        let x = standard_simplex(1);
        assert_eq!(chains_counted(&x), vec![2, 1]);
    }

    #[test]
    fn v_shaped_poset() {
        let p = Poset::new(["m", "n-", "n+"], &[(0, 1), (0, 2)]).unwrap();
        let x = nerve_of_poset("v", &p);
        assert_eq!(chains_counted(&x), vec![3, 2]);
        assert_eq!(x.label(GenId { dim: 1, index: 0 }), "m<n-");
        x.audit().unwrap();
    }

    #[test]
    fn invalid_relations_are_rejected() {
        assert!(Poset::new(["a", "b"], &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::new(["a", "b", "c"], &[(0, 1), (1, 2)]).is_err());
        assert!(Poset::new(["a", "a"], &[]).is_err());
        assert!(Poset::from_covers(["a", "b", "c"], &[(0, 1), (1, 2)]).is_ok());
    }

    #[test]
    fn simplex_faces_delete_entries() {
        let x = standard_simplex(3);
        x.audit().unwrap();
        let top = x.nondegenerate("0<1<2<3").unwrap();
        let d1 = x.face(&top, 1).unwrap();
        assert_eq!(x.describe(&d1), "0<2<3");
        assert_eq!(x.vertex_labels(&top).unwrap(), vec!["0", "1", "2", "3"]);
    }
}
