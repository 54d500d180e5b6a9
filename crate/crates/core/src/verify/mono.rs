use std::collections::HashMap;

use super::{CheckOutcome, VerificationReport, VerifyError, Witness};
use crate::simplicial::{FormalSimplex, SimplicialMap};

/// Degreewise injectivity of `f` on all simplices of degree `<= bound`, one
/// check per degree.
pub fn check_mono(f: &SimplicialMap, bound: usize) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new(format!("{}: monomorphism", f.name()), bound);
    for n in 0..=bound {
        let simplices = f.domain().simplices_at(n);
        let mut seen: HashMap<FormalSimplex, FormalSimplex> = HashMap::with_capacity(simplices.len());
        let mut witness = None;
        for s in &simplices {
            let image = f.apply_map(s)?;
            if let Some(prev) = seen.get(&image) {
                witness = Some(Witness::new(
                    "two simplices share an image",
                    vec![
                        f.domain().describe(prev),
                        f.domain().describe(s),
                        format!("image: {}", f.codomain().describe(&image)),
                    ],
                ));
                break;
            }
            seen.insert(image, s.clone());
        }
        let name = format!("injective in degree {n}");
        report.push(match witness {
            Some(w) => CheckOutcome::fail(name, simplices.len() as u64, w),
            None => CheckOutcome::pass(name, simplices.len() as u64),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::simplicial::{point, standard_simplex};
    use crate::verify::Status;

    #[test]
    fn collapse_of_interval_is_not_mono() {
        let f = SimplicialMap::constant("c", Arc::new(standard_simplex(1)), Arc::new(point()), "pt").unwrap();
        let report = check_mono(&f, 0).unwrap();
        assert_eq!(report.status(), Status::Fail);
        assert_eq!(report.first_failure().unwrap().witness.as_ref().unwrap().simplices[..2], ["0", "1"]);
    }

    #[test]
    fn vertex_inclusion_is_mono() {
        let f = SimplicialMap::constant("v", Arc::new(point()), Arc::new(standard_simplex(1)), "0").unwrap();
        assert!(check_mono(&f, 5).unwrap().passed());
    }
}
