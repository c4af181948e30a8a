use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relators::{RelatorFamily, StructuredRelator};
use crate::words::{Letter, Syllable};

/// `C(p)` on letters, or the free-product `C'(num/den)` on syllables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PieceCondition {
    Small(u64),
    Metric { num: u64, den: u64 },
}

/// One closure element `r^{±1}` read from `offset` (letters for `C(p)`,
/// syllables for `C'`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureElement {
    pub relator: Option<u64>,
    pub inverse: bool,
    pub offset: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceWitness {
    pub element: ClosureElement,
    /// Fewest pieces covering the element, for `C(p)`.
    pub pieces: Option<u64>,
    /// Longest piece starting at the element and its length in units, for `C'`.
    pub longest_piece: Option<u64>,
    pub relator_len: u64,
    /// An element sharing the longest piece.
    pub partner: Option<ClosureElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceConditionReport {
    pub condition: PieceCondition,
    pub holds: bool,
    pub relators: usize,
    pub elements: u64,
    /// The extreme element: fewest pieces, or largest piece-to-length ratio.
    pub extreme: Option<PieceWitness>,
    /// Violating elements, worst first, at most `MAX_WITNESSES`.
    pub witnesses: Vec<PieceWitness>,
}

pub const MAX_WITNESSES: usize = 16;

/// Default cap on closure elements examined by [`verify_piece_condition`].
pub const DEFAULT_ELEMENT_LIMIT: u64 = 60_000_000;

/// Brute force over every pair of distinct closure elements of a truncated
/// family: the longest common prefix with any other element bounds the piece
/// starting there. Sorting the elements brings that partner next to each one.
pub fn verify_piece_condition(
    family: &RelatorFamily,
    condition: PieceCondition,
    element_limit: u64,
) -> Result<PieceConditionReport> {
    let relators = family.relators()?;
    match condition {
        PieceCondition::Small(p) => verify_small(&relators, p, element_limit),
        PieceCondition::Metric { num, den } => {
            if den == 0 || num == 0 {
                return Err(Error::InvalidArgument("λ must be a positive fraction".into()));
            }
            verify_metric(&relators, num, den, element_limit)
        }
    }
}

/// Letter-level data for one relator: letters of `r` and of `r^-1`.
struct Letters {
    fwd: Vec<Letter>,
    inv: Vec<Letter>,
}

impl Letters {
    fn at(&self, inverse: bool, k: usize) -> Letter {
        let v = if inverse { &self.inv } else { &self.fwd };
        v[k % v.len()]
    }
}

#[derive(Clone, Copy)]
struct Elem {
    rel: u32,
    inverse: bool,
    offset: u32,
}

fn element(rels: &[Arc<StructuredRelator>], e: Elem) -> ClosureElement {
    ClosureElement {
        relator: rels[e.rel as usize].index,
        inverse: e.inverse,
        offset: e.offset as u64,
    }
}

fn verify_small(rels: &[Arc<StructuredRelator>], p: u64, limit: u64) -> Result<PieceConditionReport> {
    let total: u64 = rels.iter().map(|r| 2 * r.word.len()).sum();
    if total > limit {
        return Err(Error::ResourceLimit(format!(
            "{total} closure elements exceed the limit of {limit}"
        )));
    }
    let data: Vec<Letters> = rels
        .iter()
        .map(|r| Letters {
            fwd: r.word.letters().collect(),
            inv: r.word.inverse().letters().collect(),
        })
        .collect();
    let len = |e: &Elem| data[e.rel as usize].fwd.len();
    let lcp = |a: &Elem, b: &Elem| -> usize {
        let cap = len(a).min(len(b));
        let (da, db) = (&data[a.rel as usize], &data[b.rel as usize]);
        (0..cap)
            .find(|&k| da.at(a.inverse, a.offset as usize + k) != db.at(b.inverse, b.offset as usize + k))
            .unwrap_or(cap)
    };
    let mut elems = Vec::with_capacity(total as usize);
    for (ri, r) in rels.iter().enumerate() {
        for inverse in [false, true] {
            for o in 0..r.word.len() {
                elems.push(Elem {
                    rel: ri as u32,
                    inverse,
                    offset: o as u32,
                });
            }
        }
    }
    let cmp = |a: &Elem, b: &Elem| -> Ordering {
        let k = lcp(a, b);
        let (da, db) = (&data[a.rel as usize], &data[b.rel as usize]);
        if k == len(a).min(len(b)) {
            return len(a).cmp(&len(b));
        }
        let (x, y) = (da.at(a.inverse, a.offset as usize + k), db.at(b.inverse, b.offset as usize + k));
        x.cmp(&y)
    };
    elems.sort_by(cmp);
    // longest piece at each element, with its partner
    let mut best: Vec<Vec<(usize, Option<Elem>)>> = rels
        .iter()
        .map(|r| vec![(1, None); 2 * r.word.len() as usize])
        .collect();
    for x in 0..elems.len() {
        for y in [x.wrapping_sub(1), x + 1] {
            if y >= elems.len() {
                continue;
            }
            let l = lcp(&elems[x], &elems[y]);
            let e = elems[x];
            let slot = &mut best[e.rel as usize][e.inverse as usize * len(&e) + e.offset as usize];
            if l > slot.0 || slot.1.is_none() && l >= 1 {
                *slot = (l.max(1), Some(elems[y]));
            }
        }
    }
    let mut witnesses: Vec<PieceWitness> = Vec::new();
    let mut extreme: Option<PieceWitness> = None;
    for (ri, r) in rels.iter().enumerate() {
        let n = r.word.len() as usize;
        for inverse in [false, true] {
            let mp = |o: usize| best[ri][inverse as usize * n + o % n].0;
            for s in 0..n {
                let (mut covered, mut count) = (0usize, 0u64);
                while covered < n {
                    covered += mp(s + covered).min(n - covered);
                    count += 1;
                }
                let w = PieceWitness {
                    element: element(rels, Elem { rel: ri as u32, inverse, offset: s as u32 }),
                    pieces: Some(count),
                    longest_piece: None,
                    relator_len: n as u64,
                    partner: None,
                };
                if extreme.as_ref().is_none_or(|e| count < e.pieces.unwrap_or(u64::MAX)) {
                    extreme = Some(w.clone());
                }
                if count < p {
                    witnesses.push(w);
                }
            }
        }
    }
    witnesses.sort_by_key(|w| w.pieces);
    witnesses.truncate(MAX_WITNESSES);
    Ok(PieceConditionReport {
        condition: PieceCondition::Small(p),
        holds: witnesses.is_empty(),
        relators: rels.len(),
        elements: total,
        extreme,
        witnesses,
    })
}

fn verify_metric(rels: &[Arc<StructuredRelator>], num: u64, den: u64, limit: u64) -> Result<PieceConditionReport> {
    let total: u64 = rels.iter().map(|r| 2 * r.word.num_syllables() as u64).sum();
    if total > limit {
        return Err(Error::ResourceLimit(format!(
            "{total} closure elements exceed the limit of {limit}"
        )));
    }
    let syl = |e: &Elem, k: usize| -> Syllable {
        let s = rels[e.rel as usize].word.syllables();
        let n = s.len();
        let k = (e.offset as usize + k) % n;
        if e.inverse {
            s[n - 1 - k].inverse()
        } else {
            s[k]
        }
    };
    let len = |e: &Elem| rels[e.rel as usize].word.num_syllables();
    // exact agreement after a shared first generator
    let tail_lcp = |a: &Elem, b: &Elem| -> usize {
        let cap = len(a).min(len(b));
        (1..cap).find(|&k| syl(a, k) != syl(b, k)).unwrap_or(cap) - 1
    };
    let piece = |a: &Elem, b: &Elem| -> usize {
        if syl(a, 0).gen != syl(b, 0).gen {
            return 0;
        }
        let cap = len(a).min(len(b));
        let t = tail_lcp(a, b);
        let bonus = (1 + t < cap && syl(a, 1 + t).gen == syl(b, 1 + t).gen) as usize;
        (1 + t + bonus).min(cap)
    };
    let mut elems = Vec::with_capacity(total as usize);
    for (ri, r) in rels.iter().enumerate() {
        for inverse in [false, true] {
            for o in 0..r.word.num_syllables() {
                elems.push(Elem {
                    rel: ri as u32,
                    inverse,
                    offset: o as u32,
                });
            }
        }
    }
    let key = |s: Syllable| (s.gen, s.exp);
    elems.sort_unstable_by(|a, b| {
        syl(a, 0).gen.cmp(&syl(b, 0).gen).then_with(|| {
            let t = tail_lcp(a, b);
            let cap = len(a).min(len(b));
            if 1 + t >= cap {
                len(a).cmp(&len(b))
            } else {
                key(syl(a, 1 + t)).cmp(&key(syl(b, 1 + t)))
            }
        })
    });
    let mut witnesses: Vec<PieceWitness> = Vec::new();
    let mut extreme: Option<(u64, u64, PieceWitness)> = None;
    for x in 0..elems.len() {
        let e = elems[x];
        let mut top = (1usize, None);
        for y in [x.wrapping_sub(1), x + 1] {
            if let Some(o) = elems.get(y) {
                let l = piece(&e, o);
                if l > top.0 || top.1.is_none() && l >= 1 {
                    top = (l.max(1), Some(*o));
                }
            }
        }
        let n = len(&e) as u64;
        let l = top.0 as u64;
        let w = || PieceWitness {
            element: element(rels, e),
            pieces: None,
            longest_piece: Some(l),
            relator_len: n,
            partner: top.1.map(|o| element(rels, o)),
        };
        // compare l/n against the running maximum
        if extreme.as_ref().is_none_or(|(bl, bn, _)| l * bn > bl * n) {
            extreme = Some((l, n, w()));
        }
        if l * den >= num * n {
            witnesses.push(w());
        }
    }
    witnesses.sort_by(|a, b| {
        let (la, na) = (a.longest_piece.unwrap_or(0), a.relator_len);
        let (lb, nb) = (b.longest_piece.unwrap_or(0), b.relator_len);
        (lb * na).cmp(&(la * nb))
    });
    witnesses.truncate(MAX_WITNESSES);
    Ok(PieceConditionReport {
        condition: PieceCondition::Metric { num, den },
        holds: witnesses.is_empty(),
        relators: rels.len(),
        elements: total,
        extreme: extreme.map(|t| t.2),
        witnesses,
    })
}
