use serde::Serialize;

use crate::error::{Error, Result};
use crate::relators::{CriticalMatch, RelatorFamily, VariantKind};
use crate::words::{cyclically_reduce, lcp, Alphabet, Word};

use super::pieces::{cyclic_piece_length, is_piece};

/// Largest piece length of the missing part `t` for which `s` is replaced.
pub const MAX_MISSING_PIECES: u64 = 7;

/// One replacement `s -> t^-1` inside the cyclic word, where `s t` is a
/// rotation of `r^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// The word was rotated to start at this letter before replacing its prefix `s`.
    pub rotation: u64,
    pub relator: Option<u64>,
    pub inverse: bool,
    /// Letter offset of `s` in `r^{±1}`.
    pub relator_offset: u64,
    pub replaced: Word,
    pub inserted: Word,
    /// Piece length of `t` (machine families) or its syllable count (3-SAT).
    pub missing: u64,
    pub piece_length_before: Option<u64>,
    pub piece_length_after: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

/// `word = conjugator · input · conjugator^-1` in the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub word: Word,
    pub conjugator: Word,
    pub trace: ReductionTrace,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Record cyclic piece lengths around every step (costly on long words).
    pub piece_lengths: bool,
    /// Step cap; exceeding it is a resource-limit error.
    pub max_steps: Option<u64>,
}

#[derive(Serialize)]
struct StepRecord<'a> {
    step: usize,
    rotation: u64,
    relator: Option<u64>,
    inverse: bool,
    relator_offset: u64,
    replaced: &'a str,
    inserted: &'a str,
    missing: u64,
    piece_length_before: Option<u64>,
    piece_length_after: Option<u64>,
}

impl ReductionTrace {
    /// One JSON object per step.
    pub fn to_records(&self, al: &Alphabet) -> Vec<String> {
        self.steps
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let (rep, ins) = (al.format(&s.replaced), al.format(&s.inserted));
                serde_json::to_string(&StepRecord {
                    step: k + 1,
                    rotation: s.rotation,
                    relator: s.relator,
                    inverse: s.inverse,
                    relator_offset: s.relator_offset,
                    replaced: &rep,
                    inserted: &ins,
                    missing: s.missing,
                    piece_length_before: s.piece_length_before,
                    piece_length_after: s.piece_length_after,
                })
                .expect("plain record")
            })
            .collect()
    }
}

/// A fragment `s` of the cyclic word `w` aligned with `r^{±1}`, grown as far
/// as the two agree in both directions.
struct Extension {
    start: u64,
    len: u64,
    rho: Word,
    rho_start: u64,
}

fn extend(w: &Word, m: &CriticalMatch) -> Extension {
    let rho = m.relator.oriented(m.inverse);
    let (nw, nr) = (w.len(), rho.len());
    let pw = w.syllable_starts()[m.syllable];
    let cap = nw.min(nr);
    let fwd = lcp(w.runs_from(pw, cap, true), rho.runs_from(m.offset, cap, true));
    let back = lcp(w.runs_before(pw, cap, true), rho.runs_before(m.offset, cap, true));
    let back = back.min(cap);
    Extension {
        start: (pw + nw - back % nw) % nw,
        len: (back + fwd).min(cap),
        rho_start: (m.offset + nr - back % nr) % nr,
        rho,
    }
}

/// `(s, t)` with `s t` the closure element starting at the extension.
fn split(e: &Extension, w: &Word) -> (Word, Word) {
    let s = w.cyclic_slice(e.start, e.len);
    let nr = e.rho.len();
    let t = e.rho.cyclic_slice((e.rho_start + e.len) % nr, nr - e.len);
    (s, t)
}

/// Greedy piece count of `t`, stopping once it exceeds `bound`.
fn pieces_up_to(t: &Word, family: &RelatorFamily, bound: u64) -> Result<Option<u64>> {
    let n = t.len();
    let (mut p, mut count) = (0u64, 0u64);
    while p < n {
        if count == bound {
            return Ok(None);
        }
        let (mut lo, mut hi) = (1u64, n - p);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if is_piece(&t.slice(p, p + mid), family)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        p += lo;
        count += 1;
    }
    Ok(Some(count))
}

struct Candidate {
    ext: Extension,
    s: Word,
    t: Word,
    missing: u64,
    next: Word,
    next_conj: Word,
}

/// The replacement prescribed by `m`, if it applies: `t` has at most seven
/// pieces (machine families), or `t` is shorter than `s` in syllables and the
/// cyclic word gets shorter (3-SAT, free-product Dehn rule).
fn candidate(w: &Word, m: &CriticalMatch, family: &RelatorFamily) -> Result<Option<Candidate>> {
    let ext = extend(w, m);
    let (s, t) = split(&ext, w);
    let missing = if family.kind() == VariantKind::Sat {
        let m = t.num_syllables() as u64;
        if m >= s.num_syllables() as u64 {
            return Ok(None);
        }
        m
    } else {
        match pieces_up_to(&t, family, MAX_MISSING_PIECES)? {
            Some(m) => m,
            None => return Ok(None),
        }
    };
    let rotated = w.rotate(ext.start);
    let rest = rotated.slice(ext.len, w.len());
    let (c, core) = cyclically_reduce(&t.inverse().mul(&rest));
    let next = core.into_word();
    if family.kind() == VariantKind::Sat
        && (next.num_syllables(), next.len()) >= (w.num_syllables(), w.len())
    {
        return Ok(None);
    }
    // rotated = A^-1 w A with A the first `start` letters of w
    let a = w.slice(0, ext.start);
    let next_conj = c.inverse().mul(&a.inverse());
    Ok(Some(Candidate {
        ext,
        s,
        t,
        missing,
        next,
        next_conj,
    }))
}

fn first_candidate(w: &Word, family: &RelatorFamily) -> Result<Option<(CriticalMatch, Candidate)>> {
    if w.num_syllables() <= 1 {
        return Ok(None);
    }
    for m in family.critical_subword_scan(w, true) {
        if let Some(c) = candidate(w, &m, family)? {
            return Ok(Some((m, c)));
        }
    }
    Ok(None)
}

/// A weakly cyclically reduced conjugate of `w`, replacing relator fragments
/// `s` with at most seven pieces missing by the inverse of the missing part.
pub fn reduce(w: &Word, family: &RelatorFamily) -> Result<Reduction> {
    reduce_with(w, family, ReduceOptions::default())
}

pub fn reduce_with(w: &Word, family: &RelatorFamily, opts: ReduceOptions) -> Result<Reduction> {
    let (c, core) = cyclically_reduce(w);
    let mut cur = core.into_word();
    let mut conj = c.inverse();
    let mut trace = ReductionTrace::default();
    let cap = opts.max_steps.unwrap_or(u64::MAX);
    let mut before = None;
    while let Some((m, cand)) = first_candidate(&cur, family)? {
        if trace.steps.len() as u64 >= cap {
            return Err(Error::ResourceLimit(format!("reduction exceeded {cap} steps")));
        }
        if opts.piece_lengths && before.is_none() {
            before = Some(cyclic_piece_length(&cur, family)?);
        }
        let after = if opts.piece_lengths {
            Some(cyclic_piece_length(&cand.next, family)?)
        } else {
            None
        };
        trace.steps.push(ReductionStep {
            rotation: cand.ext.start,
            relator: m.relator.index,
            inverse: m.inverse,
            relator_offset: cand.ext.rho_start,
            replaced: cand.s,
            inserted: cand.t.inverse(),
            missing: cand.missing,
            piece_length_before: before,
            piece_length_after: after,
        });
        before = after;
        conj = cand.next_conj.mul(&conj);
        cur = cand.next;
    }
    Ok(Reduction {
        word: cur,
        conjugator: conj,
        trace,
    })
}

/// Cyclically reduced, wrap-around merged, and no rotation contains a relator
/// with at most seven pieces missing (for 3-SAT: more than half a relator
/// whose replacement shortens the word). Generator powers always qualify.
pub fn is_weakly_reduced(w: &Word, family: &RelatorFamily) -> Result<bool> {
    let (c, core) = cyclically_reduce(w);
    if !c.is_identity() || core.word() != w {
        return Ok(false);
    }
    Ok(first_candidate(w, family)?.is_none())
}
