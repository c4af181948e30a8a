use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relators::{Pin, RelatorFamily, StructuredRelator, VariantKind};
use crate::words::{cyclic_occurrences, Syllable, Word};

/// Greedy left-to-right factorization into maximal pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceFactorization {
    #[serde(skip)]
    pub word: Word,
    /// Letter spans `[start, end)`; they tile the word.
    pub spans: Vec<(u64, u64)>,
}

impl PieceFactorization {
    pub fn piece_length(&self) -> u64 {
        self.spans.len() as u64
    }

    pub fn pieces(&self) -> Vec<Word> {
        self.spans.iter().map(|&(a, b)| self.word.slice(a, b)).collect()
    }
}

/// Free-product occurrences: the first and last syllables only need the right
/// generator, the interior ones must agree exactly. Returns syllable positions
/// in the cyclic word `text`.
pub(crate) fn fp_occurrences(pattern: &[Syllable], text: &[Syllable]) -> Vec<usize> {
    let (k, n) = (pattern.len(), text.len());
    if k == 0 || k > n {
        return vec![];
    }
    (0..n)
        .filter(|&s| {
            let at = |i: usize| text[(s + i) % n];
            at(0).gen == pattern[0].gen
                && at(k - 1).gen == pattern[k - 1].gen
                && (1..k.saturating_sub(1)).all(|i| at(i) == pattern[i])
        })
        .collect()
}

fn letter_count(sub: &Word, relators: &[Arc<StructuredRelator>]) -> usize {
    relators
        .iter()
        .map(|r| {
            [false, true]
                .iter()
                .map(|&inv| cyclic_occurrences(sub, &r.oriented(inv)).len())
                .sum::<usize>()
        })
        .sum()
}

fn syllable_count(sub: &Word, relators: &[Arc<StructuredRelator>]) -> usize {
    relators
        .iter()
        .map(|r| {
            fp_occurrences(sub.syllables(), r.word.syllables()).len()
                + fp_occurrences(sub.syllables(), r.word.inverse().syllables()).len()
        })
        .sum()
}

fn adjacent_chain(sub: &Word, family: &RelatorFamily) -> bool {
    sub.syllables()
        .windows(2)
        .all(|p| family.template_adjacent(p[0], p[1]))
}

fn pinned(pin: Pin) -> Result<Vec<u64>> {
    match pin {
        Pin::Indices(v) => Ok(v),
        Pin::Undetermined(msg) => Err(Error::FamilyEvaluation(msg)),
    }
}

/// True iff `sub` is a common initial segment of two distinct elements of the
/// symmetrized closure.
///
/// Machine families work letter by letter. A word of at most two syllables is
/// a piece exactly when its syllables are neighbours in the relator template,
/// since the family has relators with arbitrarily large exponents. A longer
/// word has full interior syllables, which pin the few relators it can lie in;
/// occurrences there are counted.
///
/// The 3-SAT family works syllable by syllable with free-product pieces, and
/// full coding blocks play the role of the pinning syllables.
pub fn is_piece(sub: &Word, family: &RelatorFamily) -> Result<bool> {
    let k = sub.num_syllables();
    if k <= 1 {
        return Ok(true);
    }
    if family.kind() == VariantKind::Sat {
        return is_sat_piece(sub, family);
    }
    if k == 2 {
        return Ok(adjacent_chain(sub, family));
    }
    let interior = &sub.syllables()[1..k - 1];
    let mut cand: Option<BTreeSet<u64>> = None;
    for s in interior {
        let pin = match family.pin_syllable(*s)? {
            Some(p) => pinned(p)?,
            None => pinned(family.pin_steps(s.exp.unsigned_abs())?)?,
        };
        let set: BTreeSet<u64> = pin.into_iter().collect();
        cand = Some(match cand {
            None => set,
            Some(c) => c.intersection(&set).copied().collect(),
        });
        if cand.as_ref().is_some_and(|c| c.is_empty()) {
            return Ok(false);
        }
    }
    let mut rels = Vec::new();
    for i in cand.unwrap_or_default() {
        if let Some(r) = family.relator(i)? {
            rels.push(r);
        }
    }
    Ok(letter_count(sub, &rels) >= 2)
}

fn is_sat_piece(sub: &Word, family: &RelatorFamily) -> Result<bool> {
    let etas = family.full_block_instances(sub, false);
    if !etas.is_empty() {
        let mut rels = Vec::new();
        for eta in &etas {
            if let Some(r) = family.sat_relator(eta)? {
                if !rels.iter().any(|x: &Arc<StructuredRelator>| x.word == r.word) {
                    rels.push(r);
                }
            }
        }
        return Ok(syllable_count(sub, &rels) >= 2);
    }
    if sub.num_syllables() > 2 && family.sat_bounds().is_some() {
        return Ok(syllable_count(sub, &family.relators()?) >= 2);
    }
    Ok(adjacent_chain(sub, family))
}

/// Brute-force piece test against an explicit relator list: at least two
/// distinct closure elements start with `sub`.
pub fn is_piece_bruteforce(sub: &Word, relators: &[Arc<StructuredRelator>], syllable_metric: bool) -> bool {
    if sub.num_syllables() <= 1 {
        return true;
    }
    let n = if syllable_metric {
        syllable_count(sub, relators)
    } else {
        letter_count(sub, relators)
    };
    n >= 2
}

/// Position units for a family: letters, or syllables for the free-product metric.
fn syllable_metric(family: &RelatorFamily) -> bool {
    family.kind() == VariantKind::Sat
}

/// Largest `L <= cap` with `sub(L)` a piece; relies on pieces being closed under prefixes.
fn longest<F>(cap: u64, mut test: F) -> Result<u64>
where
    F: FnMut(u64) -> Result<bool>,
{
    let (mut lo, mut hi) = (1u64, cap);
    if cap == 0 {
        return Ok(0);
    }
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if test(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// Syllable-boundary letter offsets of `w`, plus its length.
fn boundaries(w: &Word) -> Vec<u64> {
    let mut b = w.syllable_starts();
    b.push(w.len());
    b
}

/// Greedy factorization of the linear word `w` into maximal pieces.
pub fn piece_length(w: &Word, family: &RelatorFamily) -> Result<PieceFactorization> {
    let mut spans = Vec::new();
    if syllable_metric(family) {
        let b = boundaries(w);
        let n = w.num_syllables() as u64;
        let mut p = 0u64;
        while p < n {
            let l = longest(n - p, |l| {
                is_piece(&w.slice(b[p as usize], b[(p + l) as usize]), family)
            })?;
            spans.push((b[p as usize], b[(p + l) as usize]));
            p += l;
        }
    } else {
        let n = w.len();
        let mut p = 0u64;
        while p < n {
            let l = longest(n - p, |l| is_piece(&w.slice(p, p + l), family))?;
            spans.push((p, p + l));
            p += l;
        }
    }
    Ok(PieceFactorization {
        word: w.clone(),
        spans,
    })
}

/// Piece length of a cyclic word: the least greedy piece length over its
/// rotations. Letter rotations are all tried for words of at most
/// `FULL_ROTATION_LIMIT` letters, syllable-start rotations otherwise.
pub fn cyclic_piece_length(w: &Word, family: &RelatorFamily) -> Result<u64> {
    let n = w.len();
    if n == 0 {
        return Ok(0);
    }
    let sylm = syllable_metric(family);
    let starts = w.syllable_starts();
    let units = if sylm { starts.len() as u64 } else { n };
    // unit index -> letter offset, cyclically
    let b = boundaries(w);
    let offset = |u: u64| if sylm { b[u as usize] } else { u };
    let span_len = |u: u64, l: u64| -> u64 {
        if sylm {
            (0..l).map(|k| w.syllables()[((u + k) % units) as usize].len()).sum()
        } else {
            l
        }
    };
    let mut memo: HashMap<u64, u64> = HashMap::new();
    let mut best = u64::MAX;
    let tried: Vec<u64> = if sylm || n > FULL_ROTATION_LIMIT {
        if sylm {
            (0..units).collect()
        } else {
            starts.clone()
        }
    } else {
        (0..n).collect()
    };
    for s in tried {
        let mut covered = 0u64;
        let mut pos = s;
        let mut count = 0u64;
        while covered < units && count < best {
            let mp = match memo.get(&pos) {
                Some(&m) => m,
                None => {
                    let m = longest(units, |l| {
                        is_piece(&w.cyclic_slice(offset(pos), span_len(pos, l)), family)
                    })?;
                    memo.insert(pos, m);
                    m
                }
            };
            let l = mp.min(units - covered);
            covered += l;
            pos = (pos + l) % units;
            count += 1;
        }
        best = best.min(count);
    }
    Ok(best)
}

pub const FULL_ROTATION_LIMIT: u64 = 4096;
