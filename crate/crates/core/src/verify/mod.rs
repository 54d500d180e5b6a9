//! Exhaustive, degree-bounded checkers. Every positive result holds "up to
//! dimension D" only; every failure carries a concrete counterexample.

mod horns;
mod identities;
mod iso;
mod lifting;
mod mono;
mod report;

pub use horns::{enumerate_horns, find_filler, verify_quasicategory, FillerSearch, HornProblem};
pub use identities::verify_simplicial_identities;
pub use iso::check_isomorphism;
pub use lifting::{
    check_fibration, check_right_fibration, lifting_class, lifting_classes, InnerFibration, KanFibration,
    LeftFibration, LiftingClass, RightFibration,
};
pub use mono::check_mono;
pub use report::{CheckOutcome, Status, VerificationReport, Witness};

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::exit::{ExitError, ExitSimplex, LinkedSpan};
use crate::simplicial::{FormalSimplex, SimplicialError, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Exit(#[from] ExitError),
}

/// Search budget: the largest number of candidate nodes a single search
/// (one horn enumeration, one filler or lift search) may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const DEFAULT_NODES: u64 = 5_000_000;

    pub fn new(max_nodes: u64) -> Self {
        Self { max_nodes }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_nodes: Self::DEFAULT_NODES }
    }
}

/// Anything with simplices, faces and degeneracies in each degree.
pub trait SimplicialObject: Sync {
    type Simplex: Clone + Eq + Hash + Debug + Send + Sync;

    fn subject(&self) -> String;
    fn simplices(&self, n: usize) -> Result<Vec<Self::Simplex>, VerifyError>;
    fn dim(&self, x: &Self::Simplex) -> usize;
    fn face(&self, x: &Self::Simplex, i: usize) -> Result<Self::Simplex, VerifyError>;
    fn degeneracy(&self, x: &Self::Simplex, i: usize) -> Result<Self::Simplex, VerifyError>;
    fn describe(&self, x: &Self::Simplex) -> String;
}

impl SimplicialObject for SimplicialSet {
    type Simplex = FormalSimplex;

    fn subject(&self) -> String {
        self.name().to_string()
    }

    fn simplices(&self, n: usize) -> Result<Vec<FormalSimplex>, VerifyError> {
        Ok(self.simplices_at(n))
    }

    fn dim(&self, x: &FormalSimplex) -> usize {
        x.dim()
    }

    fn face(&self, x: &FormalSimplex, i: usize) -> Result<FormalSimplex, VerifyError> {
        Ok(SimplicialSet::face(self, x, i)?)
    }

    fn degeneracy(&self, x: &FormalSimplex, i: usize) -> Result<FormalSimplex, VerifyError> {
        Ok(SimplicialSet::degeneracy(self, x, i)?)
    }

    fn describe(&self, x: &FormalSimplex) -> String {
        SimplicialSet::describe(self, x)
    }
}

/// The exit path simplicial set of a span, evaluated directly from the face
/// and degeneracy rules on tagged simplices rather than from a materialized
/// generator table.
#[derive(Clone, Copy, Debug)]
pub struct ExitModel<'a>(pub &'a LinkedSpan);

impl SimplicialObject for ExitModel<'_> {
    type Simplex = ExitSimplex;

    fn subject(&self) -> String {
        format!("Ex({}) [tagged model]", self.0.name())
    }

    fn simplices(&self, n: usize) -> Result<Vec<ExitSimplex>, VerifyError> {
        Ok(self.0.simplices(n)?)
    }

    fn dim(&self, x: &ExitSimplex) -> usize {
        x.dim()
    }

    fn face(&self, x: &ExitSimplex, i: usize) -> Result<ExitSimplex, VerifyError> {
        Ok(self.0.exit_face(x, i)?)
    }

    fn degeneracy(&self, x: &ExitSimplex, i: usize) -> Result<ExitSimplex, VerifyError> {
        Ok(self.0.exit_degeneracy(x, i)?)
    }

    fn describe(&self, x: &ExitSimplex) -> String {
        self.0.describe(x)
    }
}
