use std::collections::HashMap;

use super::{CheckOutcome, SimplicialObject, VerificationReport, VerifyError, Witness};

/// Checks that `bijection` is an isomorphism A ≅ B through degree `bound`:
/// degreewise a bijection, commuting with every face and degeneracy whose
/// target degree stays within the bound.
pub fn check_isomorphism<A, B, F>(a: &A, b: &B, bound: usize, bijection: F) -> Result<VerificationReport, VerifyError>
where
    A: SimplicialObject,
    B: SimplicialObject,
    F: Fn(&A::Simplex) -> Result<B::Simplex, VerifyError>,
{
    let mut report = VerificationReport::new(format!("{} ≅ {}", a.subject(), b.subject()), bound);
    let mut maps: Vec<HashMap<A::Simplex, B::Simplex>> = Vec::with_capacity(bound + 1);
    let mut bijective = true;
    for n in 0..=bound {
        let xs = a.simplices(n)?;
        let ys = b.simplices(n)?;
        let name = format!("bijection in degree {n}");
        let mut map = HashMap::with_capacity(xs.len());
        let mut seen: HashMap<B::Simplex, A::Simplex> = HashMap::with_capacity(xs.len());
        let ys_set: std::collections::HashSet<&B::Simplex> = ys.iter().collect();
        let mut witness = None;
        for x in &xs {
            let y = bijection(x)?;
            if !ys_set.contains(&y) {
                witness = Some(Witness::new(
                    "image is not a simplex of the target in this degree",
                    vec![a.describe(x), b.describe(&y)],
                ));
                break;
            }
            if let Some(prev) = seen.insert(y.clone(), x.clone()) {
                witness = Some(Witness::new("two simplices share an image", vec![a.describe(&prev), a.describe(x), b.describe(&y)]));
                break;
            }
            map.insert(x.clone(), y);
        }
        if witness.is_none() && xs.len() != ys.len() {
            let missed = ys.iter().find(|y| !seen.contains_key(*y)).map(|y| b.describe(y));
            witness = Some(Witness::new(
                format!("{} simplices against {}", xs.len(), ys.len()),
                missed.into_iter().map(|m| format!("not hit: {m}")).collect(),
            ));
        }
        match witness {
            Some(w) => {
                bijective = false;
                report.push(CheckOutcome::fail(name, xs.len() as u64, w));
            }
            None => report.push(CheckOutcome::pass(name, xs.len() as u64)),
        }
        maps.push(map);
    }
    if !bijective {
        return Ok(report);
    }

    let mut cases = 0u64;
    let mut witness = None;
    'faces: for n in 1..=bound {
        for (x, y) in &maps[n] {
            for i in 0..=n {
                cases += 1;
                let fx = &maps[n - 1][&a.face(x, i)?];
                let fy = b.face(y, i)?;
                if *fx != fy {
                    witness = Some(Witness::new(
                        format!("d_{i} does not commute"),
                        vec![a.describe(x), b.describe(fx), b.describe(&fy)],
                    ));
                    break 'faces;
                }
            }
        }
    }
    report.push(match witness {
        Some(w) => CheckOutcome::fail("faces commute", cases, w),
        None => CheckOutcome::pass("faces commute", cases),
    });

    let mut cases = 0u64;
    let mut witness = None;
    'degens: for n in 0..bound {
        for (x, y) in &maps[n] {
            for i in 0..=n {
                cases += 1;
                let sx = &maps[n + 1][&a.degeneracy(x, i)?];
                let sy = b.degeneracy(y, i)?;
                if *sx != sy {
                    witness = Some(Witness::new(
                        format!("s_{i} does not commute"),
                        vec![a.describe(x), b.describe(sx), b.describe(&sy)],
                    ));
                    break 'degens;
                }
            }
        }
    }
    report.push(match witness {
        Some(w) => CheckOutcome::fail("degeneracies commute", cases, w),
        None => CheckOutcome::pass("degeneracies commute", cases),
    });
    Ok(report)
}
