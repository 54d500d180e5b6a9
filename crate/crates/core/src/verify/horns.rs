use std::collections::HashMap;

use rayon::prelude::*;

use super::{Budget, CheckOutcome, SimplicialObject, VerificationReport, VerifyError, Witness};

/// A horn Λ^n_i in X: faces for every position of [n] except `omitted`,
/// listed in ascending position order and pairwise compatible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornProblem<S> {
    pub dim: usize,
    pub omitted: usize,
    pub faces: Vec<(usize, S)>,
}

impl<S> HornProblem<S> {
    pub fn positions(dim: usize, omitted: usize) -> Vec<usize> {
        (0..=dim).filter(|&a| a != omitted).collect()
    }
}

pub(super) struct Exhausted;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FillerSearch<S> {
    Filler(S),
    NoFiller,
    BudgetExhausted,
}

/// One degree of X with face tables into the degree below and, per face
/// position, a bucket index from face value to simplices (ascending).
pub(super) struct Level<S> {
    pub simplices: Vec<S>,
    pub index: HashMap<S, usize>,
    pub faces: Vec<Vec<usize>>,
    pub by_face: Vec<HashMap<usize, Vec<usize>>>,
}

pub(super) struct SearchIndex<'a, X: SimplicialObject> {
    pub x: &'a X,
    pub levels: Vec<Level<X::Simplex>>,
}

impl<'a, X: SimplicialObject> SearchIndex<'a, X> {
    pub fn build(x: &'a X, top: usize) -> Result<Self, VerifyError> {
        let mut levels: Vec<Level<X::Simplex>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let simplices = x.simplices(n)?;
            let index: HashMap<_, _> = simplices.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
            let mut faces = Vec::with_capacity(simplices.len());
            let mut by_face: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new(); if n == 0 { 0 } else { n + 1 }];
            if n > 0 {
                let below = &levels[n - 1].index;
                let rows = simplices
                    .par_iter()
                    .map(|s| {
                        (0..=n)
                            .map(|i| {
                                let f = x.face(s, i)?;
                                below.get(&f).copied().ok_or_else(|| {
                                    VerifyError::Simplicial(crate::simplicial::SimplicialError::InvalidFaces {
                                        generator: x.describe(s),
                                        reason: format!("face {i} is not listed among the simplices of degree {}", n - 1),
                                    })
                                })
                            })
                            .collect::<Result<Vec<usize>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                for (k, row) in rows.iter().enumerate() {
                    for (i, &f) in row.iter().enumerate() {
                        by_face[i].entry(f).or_default().push(k);
                    }
                }
                faces = rows;
            } else {
                faces.resize(simplices.len(), Vec::new());
            }
            levels.push(Level { simplices, index, faces, by_face });
        }
        Ok(Self { x, levels })
    }

    /// All horns Λ^n_i as face index lists, in lexicographic order of
    /// (face at the first position, face at the next position, ...).
    pub fn horns(&self, n: usize, omitted: usize, budget: Budget) -> Result<Vec<Vec<usize>>, Exhausted> {
        let positions = HornProblem::<()>::positions(n, omitted);
        let below = &self.levels[n - 1];
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::with_capacity(positions.len());
        let mut nodes = 0u64;
        self.extend_horn(below, &positions, &mut chosen, &mut out, &mut nodes, budget)?;
        Ok(out)
    }

    fn extend_horn(
        &self,
        below: &Level<X::Simplex>,
        positions: &[usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        budget: Budget,
    ) -> Result<(), Exhausted> {
        let depth = chosen.len();
        if depth == positions.len() {
            out.push(chosen.clone());
            return Ok(());
        }
        let a = positions[depth];
        // Compatibility with an earlier face f_b (b < a): d_b f_a = d_{a-1} f_b.
        let all: Vec<usize>;
        let candidates: &[usize] = if depth == 0 {
            all = (0..below.simplices.len()).collect();
            &all
        } else {
            let b = positions[0];
            let want = below.faces[chosen[0]][a - 1];
            match below.by_face[b].get(&want) {
                Some(v) => v,
                None => return Ok(()),
            }
        };
        for &c in candidates {
            *nodes += 1;
            if *nodes > budget.max_nodes {
                return Err(Exhausted);
            }
            let ok = chosen.iter().enumerate().skip(1).all(|(d, &fb)| {
                let b = positions[d];
                below.faces[c][b] == below.faces[fb][a - 1]
            });
            if ok {
                chosen.push(c);
                self.extend_horn(below, positions, chosen, out, nodes, budget)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    /// Every simplex of degree n whose faces at the horn positions are the
    /// given ones, in enumeration order.
    pub fn fillers(
        &self,
        n: usize,
        positions: &[usize],
        faces: &[usize],
        nodes: &mut u64,
        budget: Budget,
    ) -> Result<Vec<usize>, Exhausted> {
        let level = &self.levels[n];
        let Some(bucket) = level.by_face[positions[0]].get(&faces[0]) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for &c in bucket {
            *nodes += 1;
            if *nodes > budget.max_nodes {
                return Err(Exhausted);
            }
            if positions.iter().zip(faces).all(|(&p, &f)| level.faces[c][p] == f) {
                out.push(c);
            }
        }
        Ok(out)
    }

    pub fn describe_horn(&self, n: usize, positions: &[usize], faces: &[usize]) -> Vec<String> {
        positions
            .iter()
            .zip(faces)
            .map(|(p, &f)| format!("d_{p} = {}", self.x.describe(&self.levels[n - 1].simplices[f])))
            .collect()
    }
}

/// All horns Λ^n_i in X, in deterministic enumeration order; `None` when
/// the enumeration exceeds the budget.
pub fn enumerate_horns<X: SimplicialObject>(
    x: &X,
    n: usize,
    omitted: usize,
    budget: Budget,
) -> Result<Option<Vec<HornProblem<X::Simplex>>>, VerifyError> {
    assert!(n >= 1 && omitted <= n, "horn Λ^{n}_{omitted} does not exist");
    let index = SearchIndex::build(x, n - 1)?;
    let positions = HornProblem::<()>::positions(n, omitted);
    Ok(index.horns(n, omitted, budget).ok().map(|horns| {
        horns
            .into_iter()
            .map(|h| HornProblem {
                dim: n,
                omitted,
                faces: positions.iter().zip(h).map(|(&p, f)| (p, index.levels[n - 1].simplices[f].clone())).collect(),
            })
            .collect()
    }))
}

/// The first filler of `horn` in enumeration order of X_n.
pub fn find_filler<X: SimplicialObject>(
    x: &X,
    horn: &HornProblem<X::Simplex>,
    budget: Budget,
) -> Result<FillerSearch<X::Simplex>, VerifyError> {
    let index = SearchIndex::build(x, horn.dim)?;
    let below = &index.levels[horn.dim - 1];
    let positions: Vec<usize> = horn.faces.iter().map(|(p, _)| *p).collect();
    let mut faces = Vec::with_capacity(positions.len());
    for (_, f) in &horn.faces {
        match below.index.get(f) {
            Some(&k) => faces.push(k),
            None => return Ok(FillerSearch::NoFiller),
        }
    }
    let mut nodes = 0;
    Ok(match index.fillers(horn.dim, &positions, &faces, &mut nodes, budget) {
        Ok(found) => match found.first() {
            Some(&k) => FillerSearch::Filler(index.levels[horn.dim].simplices[k].clone()),
            None => FillerSearch::NoFiller,
        },
        Err(Exhausted) => FillerSearch::BudgetExhausted,
    })
}

pub(super) fn horn_name(n: usize, i: usize) -> String {
    format!("Λ^{n}_{i}")
}

/// Fills every inner horn Λ^n_i (0 < i < n, 2 <= n <= bound) of X.
pub fn verify_quasicategory<X: SimplicialObject>(
    x: &X,
    bound: usize,
    budget: Budget,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(format!("{}: inner horn filling", x.subject()), bound);
    if bound < 2 {
        return Ok(report);
    }
    let index = SearchIndex::build(x, bound)?;
    for n in 2..=bound {
        for i in 1..n {
            report.push(fill_all(&index, n, i, budget));
        }
    }
    Ok(report)
}

fn fill_all<X: SimplicialObject>(index: &SearchIndex<'_, X>, n: usize, i: usize, budget: Budget) -> CheckOutcome {
    let name = format!("inner horns {}", horn_name(n, i));
    let Ok(horns) = index.horns(n, i, budget) else {
        return CheckOutcome::inconclusive(name, 0, format!("horn enumeration exceeded {} nodes", budget.max_nodes));
    };
    let positions = HornProblem::<()>::positions(n, i);
    let results: Vec<Result<bool, Exhausted>> = horns
        .par_iter()
        .map(|h| {
            let mut nodes = 0;
            index.fillers(n, &positions, h, &mut nodes, budget).map(|f| !f.is_empty())
        })
        .collect();
    let cases = horns.len() as u64;
    let mut exhausted = 0;
    for (h, r) in horns.iter().zip(&results) {
        match r {
            Ok(true) => {}
            Ok(false) => {
                return CheckOutcome::fail(
                    name,
                    cases,
                    Witness::new(format!("horn {} has no filler", horn_name(n, i)), index.describe_horn(n, &positions, h)),
                )
            }
            Err(Exhausted) => exhausted += 1,
        }
    }
    if exhausted > 0 {
        CheckOutcome::inconclusive(name, cases, format!("{exhausted} filler searches exceeded {} nodes", budget.max_nodes))
    } else {
        CheckOutcome::pass(name, cases)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{standard_simplex, FormalSimplex, SimplicialSetBuilder};
    use crate::verify::Status;

    fn boundary_of_triangle() -> crate::simplicial::SimplicialSet {
        let mut b = SimplicialSetBuilder::new("dDelta[2]");
        let v: Vec<_> = ["0", "1", "2"].iter().map(|l| FormalSimplex::nondegenerate(b.add_vertex(*l).unwrap())).collect();
        b.add_generator("01", vec![v[1].clone(), v[0].clone()]).unwrap();
        b.add_generator("12", vec![v[2].clone(), v[1].clone()]).unwrap();
        b.add_generator("02", vec![v[2].clone(), v[0].clone()]).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn horn_counts_in_simplex() {
        // In the nerve of [2], a Λ^2_1 horn is a composable pair of (possibly
        // degenerate) arrows: chains a<=b<=c, of which there are 10.
        let x = standard_simplex(2);
        let horns = enumerate_horns(&x, 2, 1, Budget::default()).unwrap().unwrap();
        assert_eq!(horns.len(), 10);
        for h in &horns {
            assert_eq!(h.faces.iter().map(|(p, _)| *p).collect::<Vec<_>>(), vec![0, 2]);
        }
    }

    #[test]
    fn simplex_is_a_quasicategory() {
        let report = verify_quasicategory(&standard_simplex(2), 4, Budget::default()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 1 + 2 + 3);
    }

    #[test]
    fn boundary_fails_inner_horn() {
        let x = boundary_of_triangle();
        let report = verify_quasicategory(&x, 2, Budget::default()).unwrap();
        assert_eq!(report.status(), Status::Fail);
        let w = report.first_failure().unwrap().witness.as_ref().unwrap();
        assert_eq!(w.simplices, vec!["d_0 = 12".to_string(), "d_2 = 01".to_string()]);
        let horn = HornProblem {
            dim: 2,
            omitted: 1,
            faces: vec![(0, x.nondegenerate("12").unwrap()), (2, x.nondegenerate("01").unwrap())],
        };
        assert_eq!(find_filler(&x, &horn, Budget::default()).unwrap(), FillerSearch::NoFiller);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let report = verify_quasicategory(&standard_simplex(3), 3, Budget::new(3)).unwrap();
        assert_eq!(report.status(), Status::Inconclusive);
    }
}
