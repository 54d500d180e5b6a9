//! Acceptance criteria, one line each. Index-calculus oracles below are
//! written from the defining rules of the exit shuffles and collapses and do
//! not call into the closed forms they check.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use exit_path::exit::ExitSimplex;
use exit_path::gallery;
use exit_path::shuffle::{collapse, exit_shuffle, flat, sharp};
use exit_path::simplicial::{discrete, point, standard_simplex, FormalSimplex, SimplicialMap, SimplicialSet};
use exit_path::verify::{
    check_fibration, check_right_fibration, find_filler, verify_quasicategory, verify_simplicial_identities, Budget,
    FillerSearch, HornProblem, InnerFibration, Status,
};
use exit_path::LinkedSpan;

// ---- index oracles ----------------------------------------------------------

/// `S^k_j(m)` as (level, position).
fn shuffle(k: usize, j: usize, m: usize) -> (usize, usize) {
    assert!(m <= k);
    if m < j {
        (0, m)
    } else {
        (1, m - 1)
    }
}

/// `C^k_j(level, position)`.
fn collapse_at(j: usize, level: usize, p: usize) -> usize {
    match (level, p < j) {
        (0, true) => p,
        (0, false) => j - 1,
        (_, true) => j,
        (_, false) => p + 1,
    }
}

fn coface(i: usize, m: usize) -> usize {
    if m < i {
        m
    } else {
        m + 1
    }
}

fn codegeneracy(i: usize, m: usize) -> usize {
    if m <= i {
        m
    } else {
        m - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Low,
    Upper,
    Exit(usize),
}

/// Face `i` of an exit path of dimension `k` and index `j`: the levels of
/// `S_j ∘ ∂_i` decide the class, and the smallest level-1 point is the new
/// index.
fn face_oracle(k: usize, j: usize, i: usize) -> Outcome {
    let levels: Vec<usize> = (0..k).map(|m| shuffle(k, j, coface(i, m)).0).collect();
    match levels.iter().position(|&l| l == 1) {
        None => Outcome::Low,
        Some(0) => Outcome::Upper,
        Some(m) => Outcome::Exit(m),
    }
}

/// Degeneracy `i` of an exit path of dimension `k` and index `j`.
fn degeneracy_oracle(k: usize, j: usize, i: usize) -> usize {
    (0..=k + 1).find(|&m| shuffle(k, j, codegeneracy(i, m)).0 == 1).expect("the top vertex has level 1")
}

/// Continues an outcome at dimension `k` by face `i`.
fn then_face(k: usize, o: Outcome, i: usize) -> Outcome {
    match o {
        Outcome::Exit(e) => face_oracle(k, e, i),
        other => other,
    }
}

fn then_degeneracy(k: usize, o: Outcome, i: usize) -> Outcome {
    match o {
        Outcome::Exit(e) => Outcome::Exit(degeneracy_oracle(k, e, i)),
        other => other,
    }
}

// ---- criteria ---------------------------------------------------------------

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{took:.2?}"))
}

fn c1_left_inverse() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    for k in 1..=10 {
        for j in 1..=k {
            let s = exit_shuffle(k, j).map_err(|e| e.to_string())?;
            let c = collapse(k, j).map_err(|e| e.to_string())?;
            for m in 0..=k {
                ensure(c.apply(s.point(m)) == m, || format!("C∘S({m}) != {m} at k={k}, j={j}"))?;
                let (level, p) = shuffle(k, j, m);
                ensure(s.point(m).level == level && s.point(m).position == p, || format!("S^{k}_{j}({m})"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} points, {}", within(Duration::from_secs(1), start)?))
}

fn c2_closed_forms() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    for k in 1..=10 {
        for j in 1..=k {
            for i in 0..=k {
                // ♭: smallest m in [k-1] whose image under S_j ∘ ∂_i has level 1.
                if k >= 2 {
                    let smallest = (0..k).find(|&m| shuffle(k, j, coface(i, m)).0 == 1);
                    match (smallest, flat(k, j, i)) {
                        (None, Err(_)) => ensure((j, i) == (k, k), || format!("♭ undefined at ({k},{j},{i})"))?,
                        (Some(m), Ok(f)) => ensure(m == f, || format!("♭({k},{j},{i}) = {f}, oracle {m}"))?,
                        (o, f) => return Err(format!("♭({k},{j},{i}): oracle {o:?}, closed form {f:?}")),
                    }
                    cases += 1;
                }
                let s = sharp(k, j, i).map_err(|e| e.to_string())?;
                ensure(s == degeneracy_oracle(k, j, i), || format!("♯({k},{j},{i}) = {s}"))?;
                cases += 1;
            }
        }
        if k >= 2 {
            ensure(flat(k, k, k).is_err(), || format!("♭({k},{k},{k}) accepted"))?;
        }
    }
    Ok(format!("{cases} index values, {}", within(Duration::from_secs(1), start)?))
}

fn c3_level_preservation() -> Verdict {
    let mut cases = 0;
    for k in 2..=8 {
        for j in 1..=k {
            for i in 0..=k {
                // Only vertical faces have an exit index; low and upper
                // faces leave the prism level altogether.
                if let Outcome::Exit(_) = face_oracle(k, j, i) {
                    let e = flat(k, j, i).map_err(|x| x.to_string())?;
                    for level in 0..=1 {
                        for p in 0..k - 1 {
                            let image = shuffle(k, j, coface(i, collapse_at(e, level, p)));
                            ensure(image.0 == level, || format!("S_{j}∂_{i}C_{e} moves ({level},{p}) at k={k}"))?;
                            cases += 1;
                        }
                    }
                }
                let e = sharp(k, j, i).map_err(|x| x.to_string())?;
                for level in 0..=1 {
                    for p in 0..=k {
                        let image = shuffle(k, j, codegeneracy(i, collapse_at(e, level, p)));
                        ensure(image.0 == level, || format!("S_{j}σ_{i}C_{e} moves ({level},{p}) at k={k}"))?;
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} prism points"))
}

fn c4_index_identities() -> Verdict {
    // For each identity, both composites are evaluated on outcomes (low,
    // upper, or exit with index) via the oracles; where an exit index
    // results, the closed forms must reproduce it.
    let mut counts = [0usize; 5];
    let closed_face = |k: usize, e: usize, i: usize| -> Result<Outcome, String> {
        match face_oracle(k, e, i) {
            Outcome::Exit(x) => {
                let f = flat(k, e, i).map_err(|err| err.to_string())?;
                ensure(f == x, || format!("♭({k},{e},{i})"))?;
                Ok(Outcome::Exit(f))
            }
            other => Ok(other),
        }
    };
    let closed_degeneracy = |k: usize, o: Outcome, i: usize| -> Result<Outcome, String> {
        match o {
            Outcome::Exit(e) => Ok(Outcome::Exit(sharp(k, e, i).map_err(|err| err.to_string())?)),
            other => Ok(other),
        }
    };
    let closed_then_face = |k: usize, o: Outcome, i: usize| -> Result<Outcome, String> {
        match o {
            Outcome::Exit(e) => closed_face(k, e, i),
            other => Ok(other),
        }
    };
    for k in 1..=8 {
        for e in 1..=k {
            let x = Outcome::Exit(e);
            for j in 0..=k {
                for i in 0..=k + 1 {
                    // (a) d_i d_j = d_{j-1} d_i, i < j.
                    if i < j && k >= 2 {
                        let left = then_face(k - 1, face_oracle(k, e, j), i);
                        let right = then_face(k - 1, face_oracle(k, e, i), j - 1);
                        ensure(left == right, || format!("(a) k={k} e={e} i={i} j={j}: {left:?} vs {right:?}"))?;
                        let cl = closed_then_face(k - 1, closed_face(k, e, j)?, i)?;
                        let cr = closed_then_face(k - 1, closed_face(k, e, i)?, j - 1)?;
                        ensure(cl == left && cr == right, || format!("(a) closed forms at k={k} e={e} i={i} j={j}"))?;
                        counts[0] += 1;
                    }
                    let sj = then_degeneracy(k, x, j);
                    let csj = closed_degeneracy(k, x, j)?;
                    ensure(sj == csj, || format!("♯({k},{e},{j})"))?;
                    // (b) d_i s_j = s_{j-1} d_i, i < j.
                    if i < j {
                        let left = then_face(k + 1, sj, i);
                        let right = then_degeneracy(k - 1, face_oracle(k, e, i), j - 1);
                        ensure(left == right, || format!("(b) k={k} e={e} i={i} j={j}: {left:?} vs {right:?}"))?;
                        let cl = closed_then_face(k + 1, csj, i)?;
                        let cr = closed_degeneracy(k - 1, closed_face(k, e, i)?, j - 1)?;
                        ensure(cl == left && cr == right, || format!("(b) closed forms at k={k} e={e} i={i} j={j}"))?;
                        counts[1] += 1;
                    }
                    // (c) d_i s_j = id, i ∈ {j, j+1}.
                    if i == j || i == j + 1 {
                        let back = then_face(k + 1, sj, i);
                        ensure(back == x, || format!("(c) k={k} e={e} i={i} j={j}: {back:?}"))?;
                        ensure(closed_then_face(k + 1, csj, i)? == x, || format!("(c) closed forms at k={k} e={e}"))?;
                        counts[2] += 1;
                    }
                    // (d) d_i s_j = s_j d_{i-1}, i > j + 1.
                    if i > j + 1 {
                        let left = then_face(k + 1, sj, i);
                        let right = then_degeneracy(k - 1, face_oracle(k, e, i - 1), j);
                        ensure(left == right, || format!("(d) k={k} e={e} i={i} j={j}: {left:?} vs {right:?}"))?;
                        let cl = closed_then_face(k + 1, csj, i)?;
                        let cr = closed_degeneracy(k - 1, closed_face(k, e, i - 1)?, j)?;
                        ensure(cl == left && cr == right, || format!("(d) closed forms at k={k} e={e} i={i} j={j}"))?;
                        counts[3] += 1;
                    }
                    // (e) s_i s_j = s_{j+1} s_i, i <= j.
                    if i <= j {
                        let left = then_degeneracy(k + 1, sj, i);
                        let right = then_degeneracy(k + 1, then_degeneracy(k, x, i), j + 1);
                        ensure(left == right, || format!("(e) k={k} e={e} i={i} j={j}: {left:?} vs {right:?}"))?;
                        let cl = closed_degeneracy(k + 1, csj, i)?;
                        let cr = closed_degeneracy(k + 1, closed_degeneracy(k, x, i)?, j + 1)?;
                        ensure(cl == left && cr == right, || format!("(e) closed forms at k={k} e={e} i={i} j={j}"))?;
                        counts[4] += 1;
                    }
                }
            }
        }
    }
    Ok(format!("cases (a) {} (b) {} (c) {} (d) {} (e) {}", counts[0], counts[1], counts[2], counts[3], counts[4]))
}

fn loaded(name: &str, bound: usize) -> Result<LinkedSpan, String> {
    let e = gallery::example(name).map_err(|e| e.to_string())?;
    gallery::load(e.as_ref(), bound, Budget::default()).map_err(|e| e.to_string())
}

fn c5_identities_of_ex() -> Verdict {
    let start = Instant::now();
    let mut cases = 0;
    for name in ["point-cone", "s0-defect", "boundary-collar", "trivial-inclusion"] {
        let span = loaded(name, 4)?;
        let ex = span.build_exit(4).map_err(|e| e.to_string())?;
        let report = verify_simplicial_identities(ex.set().as_ref(), 4).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{name}:\n{report}"))?;
        ensure(report.checks.len() == 5, || format!("{name}: {} families", report.checks.len()))?;
        cases += report.checks.iter().map(|c| c.cases).sum::<u64>();
    }
    Ok(format!("{cases} identity instances, {}", within(Duration::from_secs(10), start)?))
}

/// A poset nerve, modelled directly: a simplex is its weakly increasing
/// vertex sequence, faces delete an entry, degeneracies repeat one.
fn check_against_sequences(
    ex: &SimplicialSet,
    bound: usize,
    to_seq: impl Fn(&FormalSimplex) -> Result<Vec<usize>, String>,
    expected_count: impl Fn(usize) -> usize,
) -> Result<Vec<usize>, String> {
    let mut counts = Vec::new();
    for k in 0..=bound {
        let simplices = ex.simplices_at(k);
        let mut seen = HashSet::new();
        for s in &simplices {
            let seq = to_seq(s)?;
            ensure(seq.len() == k + 1 && seq.windows(2).all(|w| w[0] <= w[1]), || format!("{seq:?} is not a chain"))?;
            ensure(seen.insert(seq.clone()), || format!("{seq:?} hit twice in degree {k}"))?;
            for i in 0..=k {
                if k > 0 {
                    let mut deleted = seq.clone();
                    deleted.remove(i);
                    let face = ex.face(s, i).map_err(|e| e.to_string())?;
                    ensure(to_seq(&face)? == deleted, || format!("d_{i} of {}", ex.describe(s)))?;
                }
                if k < bound {
                    let mut repeated = seq.clone();
                    repeated.insert(i, seq[i]);
                    let degen = ex.degeneracy(s, i).map_err(|e| e.to_string())?;
                    ensure(to_seq(&degen)? == repeated, || format!("s_{i} of {}", ex.describe(s)))?;
                }
            }
        }
        ensure(simplices.len() == expected_count(k), || {
            format!("degree {k}: {} simplices, expected {}", simplices.len(), expected_count(k))
        })?;
        counts.push(simplices.len());
    }
    Ok(counts)
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

fn c6_trivial_inclusion() -> Verdict {
    let span = loaded("trivial-inclusion", 5)?;
    let ex = span.build_exit(5).map_err(|e| e.to_string())?;
    let order = ["upper.a", "upper.b", "upper.c"];
    let to_seq = |s: &FormalSimplex| -> Result<Vec<usize>, String> {
        ex.set()
            .vertex_labels(s)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|l| order.iter().position(|o| o == l).ok_or_else(|| format!("vertex {l}")))
            .collect()
    };
    // Monotone maps [k] → [2].
    let counts = check_against_sequences(ex.set(), 5, to_seq, |k| binomial(k + 3, 2))?;
    Ok(format!("counts {counts:?} through D = 5"))
}

fn c7_point_cone() -> Verdict {
    let span = loaded("point-cone", 6)?;
    let ex = span.build_exit(6).map_err(|e| e.to_string())?;
    let to_seq = |s: &FormalSimplex| -> Result<Vec<usize>, String> {
        let seq: Vec<usize> = ex
            .set()
            .vertex_labels(s)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|l| usize::from(l.starts_with("upper.")))
            .collect();
        // The exit index is where the path leaves the cone point.
        match ex.to_model(&span, s).map_err(|e| e.to_string())? {
            ExitSimplex::Exit(p) => {
                let first = seq.iter().position(|&v| v == 1);
                ensure(first == Some(p.index) && seq[0] == 0, || format!("exit index {} vs {seq:?}", p.index))?
            }
            ExitSimplex::Low(_) => ensure(seq.iter().all(|&v| v == 0), || format!("low {seq:?}"))?,
            ExitSimplex::Upper(_) => ensure(seq.iter().all(|&v| v == 1), || format!("upper {seq:?}"))?,
        }
        Ok(seq)
    };
    let counts = check_against_sequences(ex.set(), 6, to_seq, |k| k + 2)?;
    Ok(format!("counts {counts:?} through D = 6"))
}

fn c8_theorem_instances() -> Verdict {
    let start = Instant::now();
    let mut done = Vec::new();
    for e in gallery::gallery() {
        let span = gallery::load(e.as_ref(), 3, Budget::default()).map_err(|err| err.to_string())?;
        let status = span.status();
        let hypotheses = matches!(status.iota_mono, exit_path::exit::CheckState::Verified { .. })
            && matches!(status.pi_right_fibration, exit_path::exit::CheckState::Verified { .. });
        if !hypotheses {
            continue;
        }
        let ex = span.build_exit(3).map_err(|err| err.to_string())?;
        let report = verify_quasicategory(ex.set().as_ref(), 3, Budget::default()).map_err(|err| err.to_string())?;
        ensure(report.passed(), || format!("{}:\n{report}", e.name()))?;
        let names: Vec<_> = report.checks.iter().map(|c| c.name.as_str()).collect();
        ensure(names == ["inner horns Λ^2_1", "inner horns Λ^3_1", "inner horns Λ^3_2"], || format!("{names:?}"))?;
        done.push(e.name());
    }
    ensure(done.len() >= 4, || format!("only {done:?} satisfy the hypotheses"))?;
    Ok(format!("{} ({})", done.join(", "), within(Duration::from_secs(300), start)?))
}

fn c9_broken_span() -> Verdict {
    let example = gallery::example("broken").map_err(|e| e.to_string())?;
    let mut span = example.span();
    ensure(span.verify_iota_mono(4), || "ι not mono".into())?;
    let fib = check_right_fibration(span.pi(), 2, Budget::default()).map_err(|e| e.to_string())?;
    let failure = fib.first_failure().ok_or("π passed the right-fibration check")?;
    ensure(failure.name == "lifts against Λ^1_1", || format!("first failure at {}", failure.name))?;
    let fib_witness = failure.witness.as_ref().ok_or("no witness")?;
    ensure(fib_witness.simplices.last().map(String::as_str) == Some("target = 0<1"), || format!("{fib_witness:?}"))?;

    let ex = span.build_exit(2).map_err(|e| e.to_string())?;
    let set = ex.set();
    let horn = HornProblem {
        dim: 2,
        omitted: 1,
        faces: vec![
            (0, set.nondegenerate("exit1.0<1").map_err(|e| e.to_string())?),
            (2, set.nondegenerate("low.0<1").map_err(|e| e.to_string())?),
        ],
    };
    let search = find_filler(set.as_ref(), &horn, Budget::default()).map_err(|e| e.to_string())?;
    ensure(search == FillerSearch::NoFiller, || format!("{search:?}"))?;
    let qcat = verify_quasicategory(set.as_ref(), 2, Budget::default()).map_err(|e| e.to_string())?;
    ensure(qcat.status() == Status::Fail, || "Ex(broken) filled every inner horn".into())?;
    let witness = qcat.first_failure().and_then(|c| c.witness.as_ref()).ok_or("no witness")?;
    Ok(format!("Λ^1_1 over 0<1; Λ^2_1 unfillable ({})", witness.simplices.join(", ")))
}

fn c10_calibration() -> Verdict {
    let b = Budget::default();
    let err = |e: exit_path::verify::VerifyError| e.to_string();
    let interval = Arc::new(standard_simplex(1));
    let pt = Arc::new(point());

    let id = SimplicialMap::identity(interval.clone());
    ensure(check_right_fibration(&id, 3, b).map_err(err)?.passed(), || "identity failed".into())?;

    let at1 = SimplicialMap::constant("at1", pt.clone(), interval, "1").map_err(|e| e.to_string())?;
    let right = check_right_fibration(&at1, 2, b).map_err(err)?;
    let first = right.first_failure().ok_or("vertex-1 inclusion passed as a right fibration")?;
    ensure(first.name == "lifts against Λ^1_1", || first.name.clone())?;
    ensure(check_fibration(&at1, 2, &InnerFibration, b).map_err(err)?.passed(), || "inner check failed".into())?;

    let s0 = Arc::new(discrete("S0", ["-", "+"]));
    let collapse = SimplicialMap::constant("S0->pt", s0, pt, "pt").map_err(|e| e.to_string())?;
    ensure(check_right_fibration(&collapse, 3, b).map_err(err)?.passed(), || "S⁰ → ∗ failed".into())?;
    Ok("identity pass; {1} ⊂ Δ[1] right fail at Λ^1_1, inner pass; S⁰ → ∗ pass".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exit shuffle left inverse, k ≤ 10", c1_left_inverse),
        ("♭/♯ closed forms against the smallest-index definition, k ≤ 10", c2_closed_forms),
        ("level preservation of S∂C♭ and SσC♯, k ≤ 8", c3_level_preservation),
        ("five index identities, k ≤ 8", c4_index_identities),
        ("simplicial identities of Ex for four gallery spans, D = 4", c5_identities_of_ex),
        ("Ex(∅ ← ∅ → N{a<b<c}) ≅ N{a<b<c}, D = 5", c6_trivial_inclusion),
        ("Ex(∗ ← ∗ = ∗) ≅ Δ[1] with counts k+2, D = 6", c7_point_cone),
        ("inner horn filling of Ex for hypothesis-satisfying spans, D = 3", c8_theorem_instances),
        ("broken span: Λ^1_1 lifting failure and unfillable Λ^2_1", c9_broken_span),
        ("fibration checker calibration", c10_calibration),
    ];
    let mut failed = 0;
    for (n, (what, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {what}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {what}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
