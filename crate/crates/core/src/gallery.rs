//! Named example spans, registered behind [`GalleryExample`] and looked up by
//! name at runtime. Each entry declares what should hold for it; [`load`]
//! and [`verify_expectations`] re-check those declarations.
//!
//! The geometric situations the examples stand in for (a point with its
//! open cone, a point defect in a line, a manifold boundary point with its
//! collar) only inform the choice of span; nothing here models geometry.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exit::{CheckState, ExitError, ExitSimplex, LinkedSpan};
use crate::simplicial::{
    discrete, empty, named_point, nerve_of_poset, point, standard_simplex, FormalSimplex, Operator, Poset,
    SimplicialError, SimplicialMap, SimplicialSet,
};
use crate::verify::{
    check_isomorphism, check_right_fibration, verify_quasicategory, verify_simplicial_identities, Budget,
    CheckOutcome, ExitModel, SimplicialObject, Status, VerificationReport, VerifyError, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("no gallery example named `{0}`")]
    Unknown(String),
    #[error("gallery example `{example}`: expected {expected}, found {found}")]
    ExpectationViolated { example: String, expected: String, found: String },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Exit(#[from] ExitError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// What an example claims about itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectations {
    /// ι is injective in every degree up to this bound.
    pub iota_mono_bound: usize,
    /// Verdict of the right-fibration check on π.
    pub pi_right_fibration: bool,
    /// Verdict of inner horn filling on Ex up to dimension 3.
    pub quasicategory: bool,
}

/// Ex is isomorphic to the nerve of `poset`; each vertex of `M` and `N` is
/// matched with a poset element by label. A simplex of Ex goes to the chain
/// of images of its vertices.
#[derive(Clone, Debug)]
pub struct PosetOracle {
    pub poset: Poset,
    pub lower: HashMap<String, String>,
    pub upper: HashMap<String, String>,
}

impl PosetOracle {
    pub fn new<'a>(
        poset: Poset,
        lower: impl IntoIterator<Item = (&'a str, &'a str)>,
        upper: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Self {
        let own = |pairs: Vec<(&str, &str)>| pairs.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Self { poset, lower: own(lower.into_iter().collect()), upper: own(upper.into_iter().collect()) }
    }

    pub fn target(&self, name: &str) -> SimplicialSet {
        nerve_of_poset(format!("nerve({name})"), &self.poset)
    }

    fn element(&self, span: &LinkedSpan, v: &ExitSimplex) -> Result<usize, VerifyError> {
        let (table, set, s) = match v {
            ExitSimplex::Low(m) => (&self.lower, span.lower(), m),
            ExitSimplex::Upper(n) => (&self.upper, span.upper(), n),
            ExitSimplex::Exit(_) => unreachable!("vertices of Ex are low or upper"),
        };
        let label = set.label(s.generator);
        table
            .get(label)
            .and_then(|e| self.poset.index_of(e))
            .ok_or_else(|| SimplicialError::UnknownLabel(label.to_string()).into())
    }

    /// The image of a simplex of Ex in the nerve `target`.
    pub fn image(&self, span: &LinkedSpan, target: &SimplicialSet, s: &ExitSimplex) -> Result<FormalSimplex, VerifyError> {
        let model = ExitModel(span);
        let elements =
            vertices(&model, s)?.iter().map(|v| self.element(span, v)).collect::<Result<Vec<usize>, _>>()?;
        chain_simplex(&self.poset, target, &elements)
    }

    /// Compares the tagged model of Ex with the nerve through degree `bound`.
    pub fn check(&self, span: &LinkedSpan, bound: usize) -> Result<VerificationReport, VerifyError> {
        let target = self.target(span.name());
        check_isomorphism(&ExitModel(span), &target, bound, |s| self.image(span, &target, s))
    }
}

/// Vertex `v` of a simplex is the composite of faces deleting every other
/// index; listed in order.
pub fn vertices<X: SimplicialObject>(x: &X, s: &X::Simplex) -> Result<Vec<X::Simplex>, VerifyError> {
    let k = x.dim(s);
    (0..=k)
        .map(|v| {
            let mut t = s.clone();
            for top in (v + 1..=k).rev() {
                t = x.face(&t, top)?;
            }
            for _ in 0..v {
                t = x.face(&t, 0)?;
            }
            Ok(t)
        })
        .collect()
}

/// The simplex of a poset nerve with the given weakly increasing vertex chain.
pub fn chain_simplex(poset: &Poset, nerve: &SimplicialSet, chain: &[usize]) -> Result<FormalSimplex, VerifyError> {
    let mut distinct = chain.to_vec();
    distinct.dedup();
    let label = poset.chain_label(&distinct);
    let top = nerve.nondegenerate(&label)?;
    let mut values = Vec::with_capacity(chain.len());
    let mut pos = 0;
    for (k, c) in chain.iter().enumerate() {
        if k > 0 && *c != chain[k - 1] {
            pos += 1;
        }
        values.push(pos);
    }
    let op = Operator::new(distinct.len() - 1, values)?;
    Ok(nerve.act(&top, &op)?)
}

pub trait GalleryExample: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// The span with no verification status recorded.
    fn span(&self) -> LinkedSpan;
    fn expectations(&self) -> Expectations;
    fn oracle(&self) -> Option<PosetOracle> {
        None
    }
}

/// `∅ ← ∅ → X`: no exit paths, so Ex is X itself.
pub fn trivial_inclusion_span(x: SimplicialSet) -> LinkedSpan {
    let nothing = Arc::new(empty());
    let x = Arc::new(x);
    let pi = SimplicialMap::identity(nothing.clone()).with_name("pi");
    let iota = SimplicialMap::from_labels("iota", nothing, x, &[]).expect("the empty map is a map");
    LinkedSpan::new("trivial-inclusion", pi, iota).expect("legs share the empty domain")
}

/// `∗ ← X = X`: the cone on X with the cone point below.
pub fn cone_span(x: SimplicialSet) -> LinkedSpan {
    let x = Arc::new(x);
    let apex = Arc::new(named_point("m"));
    let pi = SimplicialMap::constant("pi", x.clone(), apex, "m").expect("the cone point is a vertex");
    let iota = SimplicialMap::identity(x).with_name("iota");
    LinkedSpan::new("cone", pi, iota).expect("legs share the domain")
}

/// A point defect in a line: M a point, L and N two points each, ι a
/// bijection and π constant.
pub fn defect_span_s0() -> LinkedSpan {
    let link = Arc::new(discrete("link", ["a", "b"]));
    let lower = Arc::new(named_point("m"));
    let upper = Arc::new(discrete("upper", ["n-", "n+"]));
    let pi = SimplicialMap::constant("pi", link.clone(), lower, "m").expect("m is a vertex");
    let iota = SimplicialMap::from_labels(
        "iota",
        link,
        upper.clone(),
        &[("a", upper.nondegenerate("n-").unwrap()), ("b", upper.nondegenerate("n+").unwrap())],
    )
    .expect("vertex assignment");
    LinkedSpan::new("s0-defect", pi, iota).expect("legs share the domain")
}

/// A boundary point of a 1-manifold: M = L = point, N = Δ[1] entered at 0.
pub fn boundary_collar_span() -> LinkedSpan {
    let pt = Arc::new(point());
    let upper = Arc::new(standard_simplex(1));
    let pi = SimplicialMap::identity(pt.clone()).with_name("pi");
    let iota = SimplicialMap::constant("iota", pt, upper, "0").expect("0 is a vertex");
    LinkedSpan::new("boundary-collar", pi, iota).expect("legs share the domain")
}

/// Negative control: π picks the end of the lower edge, so it is not a
/// right fibration, and Ex has an unfillable Λ²₁.
pub fn broken_span() -> LinkedSpan {
    let pt = Arc::new(point());
    let lower = Arc::new(standard_simplex(1).with_name("lower"));
    let upper = Arc::new(standard_simplex(1).with_name("upper"));
    let pi = SimplicialMap::constant("pi", pt.clone(), lower, "1").expect("1 is a vertex");
    let iota = SimplicialMap::constant("iota", pt, upper, "0").expect("0 is a vertex");
    LinkedSpan::new("broken", pi, iota).expect("legs share the domain")
}

struct TrivialInclusion;
struct PointCone;
struct EmptyCone;
struct S0Defect;
struct BoundaryCollar;
struct Broken;

const MONO_BOUND: usize = 6;

fn holds(quasicategory: bool, pi_right_fibration: bool) -> Expectations {
    Expectations { iota_mono_bound: MONO_BOUND, pi_right_fibration, quasicategory }
}

impl GalleryExample for TrivialInclusion {
    fn name(&self) -> &'static str {
        "trivial-inclusion"
    }
    fn description(&self) -> &'static str {
        "∅ ← ∅ → X with X the nerve of a<b<c; Ex is X"
    }
    fn span(&self) -> LinkedSpan {
        trivial_inclusion_span(nerve_of_poset("abc", &Poset::chain(["a", "b", "c"])))
    }
    fn expectations(&self) -> Expectations {
        holds(true, true)
    }
    fn oracle(&self) -> Option<PosetOracle> {
        Some(PosetOracle::new(Poset::chain(["a", "b", "c"]), [], [("a", "a"), ("b", "b"), ("c", "c")]))
    }
}

impl GalleryExample for PointCone {
    fn name(&self) -> &'static str {
        "point-cone"
    }
    fn description(&self) -> &'static str {
        "∗ ← ∗ = ∗, the cone on a point; Ex is Δ[1]"
    }
    fn span(&self) -> LinkedSpan {
        let span = cone_span(point());
        LinkedSpan::new("point-cone", span.pi().clone(), span.iota().clone()).unwrap()
    }
    fn expectations(&self) -> Expectations {
        holds(true, true)
    }
    fn oracle(&self) -> Option<PosetOracle> {
        Some(PosetOracle::new(Poset::chain(["0", "1"]), [("m", "0")], [("pt", "1")]))
    }
}

impl GalleryExample for EmptyCone {
    fn name(&self) -> &'static str {
        "empty-cone"
    }
    fn description(&self) -> &'static str {
        "∗ ← ∅ → ∅, the cone on nothing; Ex is a point"
    }
    fn span(&self) -> LinkedSpan {
        let span = cone_span(empty());
        LinkedSpan::new("empty-cone", span.pi().clone(), span.iota().clone()).unwrap()
    }
    fn expectations(&self) -> Expectations {
        holds(true, true)
    }
    fn oracle(&self) -> Option<PosetOracle> {
        Some(PosetOracle::new(Poset::chain(["m"]), [("m", "m")], []))
    }
}

impl GalleryExample for S0Defect {
    fn name(&self) -> &'static str {
        "s0-defect"
    }
    fn description(&self) -> &'static str {
        "a point defect in a line: link S⁰, Ex the nerve of {m < n-, m < n+}"
    }
    fn span(&self) -> LinkedSpan {
        defect_span_s0()
    }
    fn expectations(&self) -> Expectations {
        holds(true, true)
    }
    fn oracle(&self) -> Option<PosetOracle> {
        let poset = Poset::new(["m", "n-", "n+"], &[(0, 1), (0, 2)]).expect("a poset");
        Some(PosetOracle::new(poset, [("m", "m")], [("n-", "n-"), ("n+", "n+")]))
    }
}

impl GalleryExample for BoundaryCollar {
    fn name(&self) -> &'static str {
        "boundary-collar"
    }
    fn description(&self) -> &'static str {
        "a boundary point with its collar: M = L = ∗, N = Δ[1] entered at 0; Ex is Δ[2]"
    }
    fn span(&self) -> LinkedSpan {
        boundary_collar_span()
    }
    fn expectations(&self) -> Expectations {
        holds(true, true)
    }
    fn oracle(&self) -> Option<PosetOracle> {
        Some(PosetOracle::new(Poset::chain(["m", "0", "1"]), [("pt", "m")], [("0", "0"), ("1", "1")]))
    }
}

impl GalleryExample for Broken {
    fn name(&self) -> &'static str {
        "broken"
    }
    fn description(&self) -> &'static str {
        "negative control: π: ∗ → Δ[1] at vertex 1 is not a right fibration, Ex is not a quasicategory"
    }
    fn span(&self) -> LinkedSpan {
        broken_span()
    }
    fn expectations(&self) -> Expectations {
        holds(false, false)
    }
}

/// Every registered example, in a fixed order.
pub fn gallery() -> Vec<Box<dyn GalleryExample>> {
    vec![
        Box::new(TrivialInclusion),
        Box::new(PointCone),
        Box::new(EmptyCone),
        Box::new(S0Defect),
        Box::new(BoundaryCollar),
        Box::new(Broken),
    ]
}

pub fn example(name: &str) -> Result<Box<dyn GalleryExample>, GalleryError> {
    gallery().into_iter().find(|e| e.name() == name).ok_or_else(|| GalleryError::Unknown(name.to_string()))
}

/// The example's span with ι verified mono and π's right-fibration verdict
/// recorded, both through `bound`. Fails if either contradicts the
/// example's declared expectations.
pub fn load(example: &dyn GalleryExample, bound: usize, budget: Budget) -> Result<LinkedSpan, GalleryError> {
    let expect = example.expectations();
    let mut span = example.span();
    let mono_bound = bound.max(expect.iota_mono_bound);
    if !span.verify_iota_mono(mono_bound) {
        return Err(GalleryError::ExpectationViolated {
            example: example.name().into(),
            expected: format!("ι mono up to dimension {mono_bound}"),
            found: "a collision".into(),
        });
    }
    let fib_bound = bound.max(1);
    let report = check_right_fibration(span.pi(), fib_bound, budget)?;
    let state = match report.status() {
        Status::Pass => CheckState::Verified { bound: fib_bound },
        Status::Fail => CheckState::Failed {
            bound: fib_bound,
            detail: report.first_failure().map(|c| c.name.clone()).unwrap_or_default(),
        },
        Status::Inconclusive => CheckState::Unchecked,
    };
    let verdict = match &state {
        CheckState::Verified { .. } => Some(true),
        CheckState::Failed { .. } => Some(false),
        CheckState::Unchecked => None,
    };
    if verdict.is_some_and(|v| v != expect.pi_right_fibration) {
        return Err(GalleryError::ExpectationViolated {
            example: example.name().into(),
            expected: format!("π right fibration = {}", expect.pi_right_fibration),
            found: format!("{}", !expect.pi_right_fibration),
        });
    }
    span.record_right_fibration(state);
    Ok(span)
}

/// Re-checks every declared expectation through `bound`: ι mono, the
/// fibration verdict, the simplicial identities and horn filling of Ex, and
/// the oracle isomorphism when there is one.
pub fn verify_expectations(
    example: &dyn GalleryExample,
    bound: usize,
    budget: Budget,
) -> Result<VerificationReport, GalleryError> {
    let expect = example.expectations();
    let mut report = VerificationReport::new(format!("gallery example {}", example.name()), bound);
    let span = load(example, bound, budget)?;
    report.push(CheckOutcome::pass(format!("ι mono up to dimension {}", bound.max(expect.iota_mono_bound)), 1));
    report.push(CheckOutcome::pass(format!("π right fibration = {}", expect.pi_right_fibration), 1));

    let ex = span.build_exit(bound)?;
    let identities = verify_simplicial_identities(ex.set().as_ref(), bound)?;
    report.push(summarize("Ex satisfies the simplicial identities", &identities));

    let qcat = verify_quasicategory(ex.set().as_ref(), bound.min(3), budget)?;
    let found = qcat.status();
    let name = format!("Ex inner horn filling = {}", expect.quasicategory);
    report.push(match (found, expect.quasicategory) {
        (Status::Inconclusive, _) => CheckOutcome::inconclusive(name, 1, "budget exhausted"),
        (Status::Pass, true) | (Status::Fail, false) => CheckOutcome::pass(name, 1),
        (Status::Pass, false) => CheckOutcome::fail(name, 1, Witness::new("every inner horn was filled", Vec::new())),
        (Status::Fail, true) => {
            let w = qcat.first_failure().and_then(|c| c.witness.clone()).expect("failures carry witnesses");
            CheckOutcome::fail(name, 1, w)
        }
    });

    if let Some(oracle) = example.oracle() {
        let iso = oracle.check(&span, bound)?;
        report.push(summarize(&format!("Ex ≅ nerve of the oracle poset through dimension {bound}"), &iso));
    }
    Ok(report)
}

fn summarize(name: &str, inner: &VerificationReport) -> CheckOutcome {
    let cases = inner.checks.iter().map(|c| c.cases).sum();
    match inner.status() {
        Status::Pass => CheckOutcome::pass(name, cases),
        Status::Inconclusive => CheckOutcome::inconclusive(name, cases, "budget exhausted"),
        Status::Fail => {
            let failed = inner.first_failure().expect("a failing report has a failing check");
            let mut w = failed.witness.clone().expect("failures carry witnesses");
            w.summary = format!("{}: {}", failed.name, w.summary);
            CheckOutcome::fail(name, cases, w)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_resolvable() {
        let names: Vec<_> = gallery().iter().map(|e| e.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        for n in names {
            assert_eq!(example(n).unwrap().name(), n);
        }
        assert!(matches!(example("torus"), Err(GalleryError::Unknown(_))));
    }

    #[test]
    fn every_example_meets_its_expectations() {
        for e in gallery() {
            let report = verify_expectations(e.as_ref(), 3, Budget::default()).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn vertices_of_an_exit_edge() {
        let span = example("boundary-collar").unwrap();
        let span = load(span.as_ref(), 2, Budget::default()).unwrap();
        let edges = span.exit_simplices(1).unwrap();
        let model = ExitModel(&span);
        let v = vertices(&model, &ExitSimplex::Exit(edges[1].clone())).unwrap();
        assert_eq!(v.iter().map(|s| span.describe(s)).collect::<Vec<_>>(), vec!["low pt", "upper 1"]);
    }

    #[test]
    fn wrong_expectation_is_caught() {
        struct Liar;
        impl GalleryExample for Liar {
            fn name(&self) -> &'static str {
                "liar"
            }
            fn description(&self) -> &'static str {
                "the broken span, claimed to be fine"
            }
            fn span(&self) -> LinkedSpan {
                broken_span()
            }
            fn expectations(&self) -> Expectations {
                holds(true, true)
            }
        }
        assert!(matches!(load(&Liar, 2, Budget::default()), Err(GalleryError::ExpectationViolated { .. })));
    }
}
