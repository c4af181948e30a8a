//! Deciding conjugacy by filling in annular diagrams, the individual solver
//! for a fixed word, the abelian filter, and the dovetailing partial algorithm.

mod diagram;
mod generic;
mod individual;

pub use diagram::{Cell, ConjugacyDiagram, OppositeEdgeSeed, Region, SeedCondition};
pub use generic::{
    density_experiment, dovetail_partial, generic_filter, random_reduced_word, DensityRow,
    FilterAnswer,
};
pub use individual::{decide_individual, IndividualSolver};

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::relators::{Candidates, RelatorFamily, StructuredRelator};
use crate::smallcancel::{reduce, Reduction};
use crate::words::{free_conjugate, Word};

use diagram::{fill_from, separated_edges, FillBudget, RegionLibrary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Conjugate,
    NotConjugate,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyAnswer {
    /// `witness · u · witness^-1 = v` in the group.
    Conjugate {
        witness: Word,
        diagram: Option<Box<ConjugacyDiagram>>,
    },
    NotConjugate,
    Unknown(String),
}

impl ConjugacyAnswer {
    pub fn verdict(&self) -> Verdict {
        match self {
            ConjugacyAnswer::Conjugate { .. } => Verdict::Conjugate,
            ConjugacyAnswer::NotConjugate => Verdict::NotConjugate,
            ConjugacyAnswer::Unknown(_) => Verdict::Unknown,
        }
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            ConjugacyAnswer::Conjugate { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Where a decision was settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Abelian,
    Identity,
    FreeConjugacy,
    NoCandidates,
    Diagram,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub answer: ConjugacyAnswer,
    pub stage: Stage,
    /// Number of seeds handed to the fill-in.
    pub fill_calls: u64,
    pub seed: Option<OppositeEdgeSeed>,
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// States one fill-in may visit before giving up on that seed.
    pub fill_states: usize,
    /// Words up to this many letters get a seed at every letter; longer words
    /// only at syllable boundaries and at run lengths found in the relators.
    pub position_limit: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            fill_states: 100_000,
            position_limit: 2048,
        }
    }
}

/// Decides whether `u0` and `v0` are conjugate in the group.
pub fn decide(u0: &Word, v0: &Word, family: &RelatorFamily) -> Result<ConjugacyAnswer> {
    Ok(decide_with(u0, v0, family, DecideOptions::default())?.answer)
}

pub fn decide_with(u0: &Word, v0: &Word, family: &RelatorFamily, opts: DecideOptions) -> Result<Decision> {
    if family.abelian_invariants(u0) != family.abelian_invariants(v0) {
        return Ok(settled(ConjugacyAnswer::NotConjugate, Stage::Abelian));
    }
    let ru = reduce(u0, family)?;
    let rv = reduce(v0, family)?;
    if let Some(d) = trivial_cases(&ru, &rv) {
        return Ok(d);
    }
    let rels = match family.candidates(&[&ru.word, &rv.word])? {
        Candidates::Relators(r) => r,
        Candidates::Undetermined(msg) => {
            return Ok(settled(ConjugacyAnswer::Unknown(msg), Stage::Undetermined));
        }
    };
    diagram_stage(u0, v0, &ru, &rv, &rels, family, opts)
}

fn settled(answer: ConjugacyAnswer, stage: Stage) -> Decision {
    Decision {
        answer,
        stage,
        fill_calls: 0,
        seed: None,
    }
}

/// Identity words and free conjugates, after reduction.
pub(crate) fn trivial_cases(ru: &Reduction, rv: &Reduction) -> Option<Decision> {
    let (u, v) = (&ru.word, &rv.word);
    // the conjugacy class of 1 is {1}
    if u.is_identity() || v.is_identity() {
        let answer = if u.is_identity() && v.is_identity() {
            ConjugacyAnswer::Conjugate {
                witness: Word::identity(),
                diagram: None,
            }
        } else {
            ConjugacyAnswer::NotConjugate
        };
        return Some(settled(answer, Stage::Identity));
    }
    let t = free_conjugate(u, v)?;
    let witness = Word::product([&rv.conjugator.inverse(), &t, &ru.conjugator]);
    Some(settled(
        ConjugacyAnswer::Conjugate {
            witness,
            diagram: None,
        },
        Stage::FreeConjugacy,
    ))
}

/// Seed enumeration over reduced words `ru`, `rv` with the given region labels.
pub(crate) fn diagram_stage(
    u0: &Word,
    v0: &Word,
    ru: &Reduction,
    rv: &Reduction,
    rels: &[Arc<StructuredRelator>],
    family: &RelatorFamily,
    opts: DecideOptions,
) -> Result<Decision> {
    if rels.is_empty() {
        return Ok(settled(ConjugacyAnswer::NotConjugate, Stage::NoCandidates));
    }
    let lib = RegionLibrary::new(rels);
    let (u, v) = (&ru.word, &rv.word);
    let pos_u = seed_positions(u, rels, opts.position_limit);
    let pos_v = seed_positions(v, rels, opts.position_limit);
    let rot_v: Vec<Word> = pos_v.iter().map(|&p| v.rotate(p)).collect();
    let budget = FillBudget {
        states: opts.fill_states,
    };
    let mut calls = 0u64;
    let mut exhausted = 0u64;
    let mut replay_failures = 0u64;
    for &pu in &pos_u {
        let uu = u.rotate(pu);
        for (iv, &pv) in pos_v.iter().enumerate() {
            let vv = &rot_v[iv];
            let same = uu.letter_at(0) == vv.letter_at(0);
            for condition in [SeedCondition::Coincident, SeedCondition::IslandStart, SeedCondition::Separated] {
                let edges = match condition {
                    SeedCondition::Coincident if same => vec![Word::identity()],
                    SeedCondition::IslandStart if !same => vec![Word::identity()],
                    SeedCondition::Separated => separated_edges(&lib, &uu, vv),
                    _ => continue,
                };
                calls += 1;
                for h0 in edges {
                    let cells = match fill_from(&uu, vv, &h0, &lib, budget) {
                        Ok(Some(c)) => c,
                        Ok(None) => continue,
                        Err(()) => {
                            exhausted += 1;
                            continue;
                        }
                    };
                    let diagram = ConjugacyDiagram {
                        outer: uu.clone(),
                        inner: vv.clone(),
                        outer_rotation: pu,
                        inner_rotation: pv,
                        base: h0,
                        cells,
                    };
                    let w = diagram.witness(u, v);
                    let witness = Word::product([&rv.conjugator.inverse(), &w, &ru.conjugator]);
                    if !replays(&witness, u0, v0, family)? {
                        replay_failures += 1;
                        continue;
                    }
                    return Ok(Decision {
                        answer: ConjugacyAnswer::Conjugate {
                            witness,
                            diagram: Some(Box::new(diagram)),
                        },
                        stage: Stage::Diagram,
                        fill_calls: calls,
                        seed: Some(OppositeEdgeSeed {
                            outer: pu,
                            inner: pv,
                            condition,
                        }),
                    });
                }
            }
        }
    }
    let answer = if exhausted > 0 || replay_failures > 0 {
        ConjugacyAnswer::Unknown(format!(
            "no diagram found; {exhausted} fill-ins ran out of states, {replay_failures} witnesses failed replay"
        ))
    } else {
        ConjugacyAnswer::NotConjugate
    };
    Ok(Decision {
        stage: if exhausted > 0 { Stage::Undetermined } else { Stage::Diagram },
        answer,
        fill_calls: calls,
        seed: None,
    })
}

/// `witness · u0 · witness^-1 · v0^-1` reduces to the empty word.
pub fn replays(witness: &Word, u0: &Word, v0: &Word, family: &RelatorFamily) -> Result<bool> {
    let w = Word::product([witness, u0, &witness.inverse(), &v0.inverse()]);
    Ok(reduce(&w, family)?.word.is_identity())
}

fn seed_positions(w: &Word, rels: &[Arc<StructuredRelator>], limit: u64) -> Vec<u64> {
    if w.len() <= limit {
        return (0..w.len()).collect();
    }
    let mut runs: BTreeSet<(u32, u64)> = BTreeSet::new();
    for r in rels {
        for s in r.word.syllables() {
            runs.insert((s.gen, s.len()));
        }
    }
    let mut out = BTreeSet::new();
    let starts = w.syllable_starts();
    for (k, s) in w.syllables().iter().enumerate() {
        let (st, en) = (starts[k], starts[k] + s.len());
        out.insert(st);
        for &(_, l) in runs.range((s.gen, 0)..=(s.gen, u64::MAX)) {
            if l < s.len() {
                out.insert(st + l);
                out.insert(en - l);
            }
        }
    }
    out.into_iter().collect()
}

/// One seed, with candidate regions taken from the family.
pub fn fill_diagram(
    u: &Word,
    v: &Word,
    seed: OppositeEdgeSeed,
    family: &RelatorFamily,
) -> Result<Option<ConjugacyDiagram>> {
    if u.is_identity() || v.is_identity() {
        return Ok(None);
    }
    let rels = match family.candidates(&[u, v])? {
        Candidates::Relators(r) => r,
        Candidates::Undetermined(_) => return Ok(None),
    };
    let lib = RegionLibrary::new(&rels);
    let uu = u.rotate(seed.outer);
    let vv = v.rotate(seed.inner);
    let same = uu.letter_at(0) == vv.letter_at(0);
    let edges = match seed.condition {
        SeedCondition::Coincident if same => vec![Word::identity()],
        SeedCondition::IslandStart if !same => vec![Word::identity()],
        SeedCondition::Separated => separated_edges(&lib, &uu, &vv),
        _ => vec![],
    };
    let budget = FillBudget {
        states: DecideOptions::default().fill_states,
    };
    for h0 in edges {
        if let Ok(Some(cells)) = fill_from(&uu, &vv, &h0, &lib, budget) {
            return Ok(Some(ConjugacyDiagram {
                outer: uu.clone(),
                inner: vv.clone(),
                outer_rotation: seed.outer,
                inner_rotation: seed.inner,
                base: h0,
                cells,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests;
