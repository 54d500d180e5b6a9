use rayon::prelude::*;

use super::{CheckOutcome, SimplicialObject, VerificationReport, VerifyError, Witness};

type Probe<'a, X> =
    dyn Fn(&X, &<X as SimplicialObject>::Simplex) -> Result<Option<Witness>, VerifyError> + Sync + 'a;

struct Family<'a, X: SimplicialObject> {
    name: &'static str,
    /// Smallest degree of the simplex the identity is applied to, and how many
    /// degrees above it the identity reaches.
    min_dim: usize,
    reach: usize,
    cases: fn(usize) -> u64,
    probe: Box<Probe<'a, X>>,
}

fn mismatch<X: SimplicialObject>(
    x: &X,
    subject: &X::Simplex,
    what: String,
    left: &X::Simplex,
    right: &X::Simplex,
) -> Option<Witness> {
    (left != right).then(|| {
        Witness::new(
            what,
            vec![
                format!("simplex: {}", x.describe(subject)),
                format!("left:    {}", x.describe(left)),
                format!("right:   {}", x.describe(right)),
            ],
        )
    })
}

fn families<'a, X: SimplicialObject>() -> Vec<Family<'a, X>> {
    vec![
        Family {
            name: "d_i d_j = d_{j-1} d_i (i < j)",
            min_dim: 2,
            reach: 0,
            cases: |n| ((n + 1) * n / 2) as u64,
            probe: Box::new(|x: &X, s: &X::Simplex| {
                let n = x.dim(s);
                for j in 0..=n {
                    let dj = x.face(s, j)?;
                    for i in 0..j {
                        let left = x.face(&dj, i)?;
                        let right = x.face(&x.face(s, i)?, j - 1)?;
                        if let Some(w) = mismatch(x, s, format!("i={i}, j={j}"), &left, &right) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }),
        },
        Family {
            name: "d_i s_j = s_{j-1} d_i (i < j)",
            min_dim: 1,
            reach: 1,
            cases: |n| ((n + 1) * (n + 2) / 2) as u64,
            probe: Box::new(|x: &X, s: &X::Simplex| {
                let n = x.dim(s);
                for j in 0..=n {
                    let sj = x.degeneracy(s, j)?;
                    for i in 0..j {
                        let left = x.face(&sj, i)?;
                        let right = x.degeneracy(&x.face(s, i)?, j - 1)?;
                        if let Some(w) = mismatch(x, s, format!("i={i}, j={j}"), &left, &right) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }),
        },
        Family {
            name: "d_i s_j = id (i = j, j+1)",
            min_dim: 0,
            reach: 1,
            cases: |n| (2 * (n + 1)) as u64,
            probe: Box::new(|x: &X, s: &X::Simplex| {
                let n = x.dim(s);
                for j in 0..=n {
                    let sj = x.degeneracy(s, j)?;
                    for i in [j, j + 1] {
                        let left = x.face(&sj, i)?;
                        if let Some(w) = mismatch(x, s, format!("i={i}, j={j}"), &left, s) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }),
        },
        Family {
            name: "d_i s_j = s_j d_{i-1} (i > j+1)",
            min_dim: 1,
            reach: 1,
            cases: |n| (n * (n + 1) / 2) as u64,
            probe: Box::new(|x: &X, s: &X::Simplex| {
                let n = x.dim(s);
                for j in 0..=n {
                    let sj = x.degeneracy(s, j)?;
                    for i in j + 2..=n + 1 {
                        let left = x.face(&sj, i)?;
                        let right = x.degeneracy(&x.face(s, i - 1)?, j)?;
                        if let Some(w) = mismatch(x, s, format!("i={i}, j={j}"), &left, &right) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }),
        },
        Family {
            name: "s_i s_j = s_{j+1} s_i (i <= j)",
            min_dim: 0,
            reach: 2,
            cases: |n| ((n + 1) * (n + 2) / 2) as u64,
            probe: Box::new(|x: &X, s: &X::Simplex| {
                let n = x.dim(s);
                for j in 0..=n {
                    let sj = x.degeneracy(s, j)?;
                    for i in 0..=j {
                        let left = x.degeneracy(&sj, i)?;
                        let right = x.degeneracy(&x.degeneracy(s, i)?, j + 1)?;
                        if let Some(w) = mismatch(x, s, format!("i={i}, j={j}"), &left, &right) {
                            return Ok(Some(w));
                        }
                    }
                }
                Ok(None)
            }),
        },
    ]
}

/// Checks all five families of simplicial identities on every simplex whose
/// identities stay within degree `bound`.
pub fn verify_simplicial_identities<X: SimplicialObject>(
    x: &X,
    bound: usize,
) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(x.subject(), bound);
    let simplices: Vec<Vec<X::Simplex>> = (0..=bound).map(|n| x.simplices(n)).collect::<Result<_, _>>()?;
    for family in families::<X>() {
        let mut cases = 0u64;
        let mut witness = None;
        for n in family.min_dim..=bound {
            if n + family.reach > bound {
                break;
            }
            let found = simplices[n]
                .par_iter()
                .map(|s| (family.probe)(x, s))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .next();
            cases += (family.cases)(n) * simplices[n].len() as u64;
            if found.is_some() {
                witness = found;
                break;
            }
        }
        report.push(match witness {
            Some(w) => CheckOutcome::fail(family.name, cases, w),
            None => CheckOutcome::pass(family.name, cases),
        });
    }
    Ok(report)
}
