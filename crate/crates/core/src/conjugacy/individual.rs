use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::relators::{Candidates, Pin, RelatorFamily, StructuredRelator, VariantKind};
use crate::smallcancel::{reduce, Reduction};
use crate::words::{Syllable, Word};

use super::{diagram_stage, trivial_cases, ConjugacyAnswer, DecideOptions};

/// What the family says about one syllable of the fixed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyllableFact {
    pub syllable: Syllable,
    /// Relator indices containing this full power; empty when there are none.
    pub relators: Vec<u64>,
}

/// Conjugacy to one fixed word. Everything the family has to say about that
/// word is gathered at construction; queries never evaluate the family again.
pub struct IndividualSolver<'a> {
    live: &'a RelatorFamily,
    frozen: Option<RelatorFamily>,
    u0: Word,
    reduced: Reduction,
    invariants: Vec<i64>,
    relators: Vec<Arc<StructuredRelator>>,
    facts: Vec<SyllableFact>,
}

impl<'a> IndividualSolver<'a> {
    pub fn new(u0: &Word, family: &'a RelatorFamily) -> Result<Self> {
        let reduced = reduce(u0, family)?;
        let mut facts = Vec::new();
        let mut seen = BTreeSet::new();
        for s in reduced.word.syllables() {
            if !seen.insert(*s) {
                continue;
            }
            match family.pin_syllable(*s)? {
                Some(Pin::Indices(v)) => facts.push(SyllableFact {
                    syllable: *s,
                    relators: v,
                }),
                Some(Pin::Undetermined(msg)) => return Err(Error::FamilyEvaluation(msg)),
                None => {}
            }
        }
        // every region of a diagram with this word on its outer boundary
        // contains one of its full syllables
        let relators = match family.candidates(&[&reduced.word])? {
            Candidates::Relators(r) => r,
            Candidates::Undetermined(msg) => return Err(Error::FamilyEvaluation(msg)),
        };
        let frozen = if family.kind() == VariantKind::Sat {
            None
        } else {
            let upto = relators.iter().filter_map(|r| r.index).max().unwrap_or(1);
            Some(family.freeze(upto)?)
        };
        Ok(IndividualSolver {
            live: family,
            frozen,
            invariants: family.abelian_invariants(u0),
            u0: u0.clone(),
            reduced,
            relators,
            facts,
        })
    }

    /// The family view used at query time.
    pub fn family(&self) -> &RelatorFamily {
        self.frozen.as_ref().unwrap_or(self.live)
    }

    /// Unary length of the reduced word, the constant of the algorithm.
    pub fn constant(&self) -> u64 {
        self.reduced.word.len()
    }

    pub fn word(&self) -> &Word {
        &self.u0
    }

    pub fn reduced(&self) -> &Word {
        &self.reduced.word
    }

    pub fn facts(&self) -> &[SyllableFact] {
        &self.facts
    }

    pub fn relators(&self) -> &[Arc<StructuredRelator>] {
        &self.relators
    }
}

/// Decides conjugacy of `v0` to the solver's word from the stored facts.
pub fn decide_individual(s: &IndividualSolver<'_>, v0: &Word) -> Result<ConjugacyAnswer> {
    let fam = s.family();
    if fam.abelian_invariants(v0) != s.invariants {
        return Ok(ConjugacyAnswer::NotConjugate);
    }
    let undetermined = |e: Error| match e {
        Error::FamilyEvaluation(msg) => Ok(ConjugacyAnswer::Unknown(msg)),
        e => Err(e),
    };
    let rv = match reduce(v0, fam) {
        Ok(r) => r,
        Err(e) => return undetermined(e),
    };
    if let Some(d) = trivial_cases(&s.reduced, &rv) {
        return Ok(d.answer);
    }
    match diagram_stage(&s.u0, v0, &s.reduced, &rv, &s.relators, fam, DecideOptions::default()) {
        Ok(d) => Ok(d.answer),
        Err(e) => undetermined(e),
    }
}
