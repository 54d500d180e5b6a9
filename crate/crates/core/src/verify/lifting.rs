use rayon::prelude::*;

use super::horns::{horn_name, Exhausted, HornProblem, SearchIndex};
use super::{Budget, CheckOutcome, VerificationReport, VerifyError, Witness};
use crate::simplicial::{SimplicialError, SimplicialMap};

/// A class of horn inclusions Λ^n_i ⊂ Δ[n] to lift against.
pub trait LiftingClass: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// The omitted vertices i for which Λ^n_i belongs to the class.
    fn horn_indices(&self, n: usize) -> Vec<usize>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct InnerFibration;
#[derive(Clone, Copy, Debug, Default)]
pub struct RightFibration;
#[derive(Clone, Copy, Debug, Default)]
pub struct LeftFibration;
#[derive(Clone, Copy, Debug, Default)]
pub struct KanFibration;

impl LiftingClass for InnerFibration {
    fn name(&self) -> &'static str {
        "inner"
    }
    fn description(&self) -> &'static str {
        "horns Λ^n_i with 0 < i < n"
    }
    fn horn_indices(&self, n: usize) -> Vec<usize> {
        (1..n).collect()
    }
}

impl LiftingClass for RightFibration {
    fn name(&self) -> &'static str {
        "right"
    }
    fn description(&self) -> &'static str {
        "horns Λ^n_i with 0 < i <= n, n >= 1"
    }
    fn horn_indices(&self, n: usize) -> Vec<usize> {
        if n == 0 {
            Vec::new()
        } else {
            (1..=n).collect()
        }
    }
}

impl LiftingClass for LeftFibration {
    fn name(&self) -> &'static str {
        "left"
    }
    fn description(&self) -> &'static str {
        "horns Λ^n_i with 0 <= i < n, n >= 1"
    }
    fn horn_indices(&self, n: usize) -> Vec<usize> {
        (0..n).collect()
    }
}

impl LiftingClass for KanFibration {
    fn name(&self) -> &'static str {
        "kan"
    }
    fn description(&self) -> &'static str {
        "all horns Λ^n_i, n >= 1"
    }
    fn horn_indices(&self, n: usize) -> Vec<usize> {
        if n == 0 {
            Vec::new()
        } else {
            (0..=n).collect()
        }
    }
}

/// Every registered lifting class, in a fixed order.
pub fn lifting_classes() -> Vec<Box<dyn LiftingClass>> {
    vec![Box::new(InnerFibration), Box::new(RightFibration), Box::new(LeftFibration), Box::new(KanFibration)]
}

pub fn lifting_class(name: &str) -> Option<Box<dyn LiftingClass>> {
    lifting_classes().into_iter().find(|c| c.name() == name)
}

/// Solves every lifting problem of `f` against the horns of `class` up to
/// dimension `bound`: for each horn h in the domain and each y in the
/// codomain with d_a y = f(h_a), some x in the domain has d_a x = h_a and
/// f(x) = y.
pub fn check_fibration(
    f: &SimplicialMap,
    bound: usize,
    class: &dyn LiftingClass,
    budget: Budget,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(format!("{}: {} fibration", f.name(), class.name()), bound);
    let dom = SearchIndex::build(f.domain().as_ref(), bound)?;
    let cod = SearchIndex::build(f.codomain().as_ref(), bound)?;
    let image = |n: usize| -> Result<Vec<usize>, VerifyError> {
        dom.levels[n]
            .simplices
            .par_iter()
            .map(|s| {
                let y = f.apply_map(s)?;
                cod.levels[n].index.get(&y).copied().ok_or_else(|| {
                    VerifyError::Simplicial(SimplicialError::InvalidMap {
                        map: f.name().to_string(),
                        reason: format!("image of {} is outside the codomain", dom.x.describe(s)),
                    })
                })
            })
            .collect()
    };
    let mut images = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        images.push(image(n)?);
    }
    for n in 1..=bound {
        for i in class.horn_indices(n) {
            report.push(lift_all(&dom, &cod, &images, n, i, budget));
        }
    }
    Ok(report)
}

pub fn check_right_fibration(f: &SimplicialMap, bound: usize, budget: Budget) -> Result<VerificationReport, VerifyError> {
    check_fibration(f, bound, &RightFibration, budget)
}

enum Lift {
    Solved(u64),
    Unsolved(usize),
}

fn lift_all(
    dom: &SearchIndex<'_, crate::simplicial::SimplicialSet>,
    cod: &SearchIndex<'_, crate::simplicial::SimplicialSet>,
    images: &[Vec<usize>],
    n: usize,
    i: usize,
    budget: Budget,
) -> CheckOutcome {
    let name = format!("lifts against {}", horn_name(n, i));
    let Ok(horns) = dom.horns(n, i, budget) else {
        return CheckOutcome::inconclusive(name, 0, format!("horn enumeration exceeded {} nodes", budget.max_nodes));
    };
    let positions = HornProblem::<()>::positions(n, i);
    let results: Vec<Result<Lift, Exhausted>> = horns
        .par_iter()
        .map(|h| {
            let mut nodes = 0;
            let pushed: Vec<usize> = h.iter().map(|&k| images[n - 1][k]).collect();
            let targets = cod.fillers(n, &positions, &pushed, &mut nodes, budget)?;
            let lifts = dom.fillers(n, &positions, h, &mut nodes, budget)?;
            for &y in &targets {
                if !lifts.iter().any(|&x| images[n][x] == y) {
                    return Ok(Lift::Unsolved(y));
                }
            }
            Ok(Lift::Solved(targets.len() as u64))
        })
        .collect();
    let mut cases = 0;
    let mut exhausted = 0;
    for (h, r) in horns.iter().zip(results) {
        match r {
            Ok(Lift::Solved(c)) => cases += c,
            Ok(Lift::Unsolved(y)) => {
                let mut simplices = dom.describe_horn(n, &positions, h);
                simplices.push(format!("target = {}", cod.x.describe(&cod.levels[n].simplices[y])));
                return CheckOutcome::fail(
                    name,
                    cases + 1,
                    Witness::new(format!("no lift of horn {} over the target simplex", horn_name(n, i)), simplices),
                );
            }
            Err(Exhausted) => exhausted += 1,
        }
    }
    if exhausted > 0 {
        CheckOutcome::inconclusive(name, cases, format!("{exhausted} lift searches exceeded {} nodes", budget.max_nodes))
    } else {
        CheckOutcome::pass(name, cases)
    }
}
