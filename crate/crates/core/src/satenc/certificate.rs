use crate::conjugacy::ConjugacyDiagram;
use crate::error::{Error, Result};
use crate::relators::RelatorParams;
use crate::words::{Syllable, Word};

use super::coding::{decode_assignment, SatGenerators};
use super::instance::Assignment;

/// Reads a satisfying assignment off the interior edges of a diagram for a
/// hard pair: each edge label carries the `δ_1` coding of the assignment the
/// region was built from.
pub fn extract_certificate(d: &ConjugacyDiagram, gens: &SatGenerators) -> Result<Assignment> {
    let delta = gens.delta[0];
    for r in d.regions() {
        let RelatorParams::Sat { instance, .. } = &r.relator.params else {
            return Err(Error::Extraction("region is not a 3-SAT relator".into()));
        };
        for edge in [&r.edge_in, &r.edge_out] {
            for e in [edge.clone(), edge.inverse()] {
                let coding: Vec<Syllable> = e
                    .syllables()
                    .iter()
                    .copied()
                    .filter(|s| delta.contains(&s.gen))
                    .collect();
                let Some(a) = decode_assignment(instance, &Word::from_syllables(coding), delta) else {
                    continue;
                };
                if instance.satisfied_by(&a) {
                    return Ok(a);
                }
            }
        }
    }
    Err(Error::Extraction(
        "no interior edge carries an intact assignment coding".into(),
    ))
}
