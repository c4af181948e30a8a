use std::collections::{HashMap, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::relators::RelatorFamily;
use crate::words::{cyclically_reduce, Syllable, Word};

use super::ConjugacyAnswer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterAnswer {
    NotConjugate,
    Unknown,
}

/// Compares images in the abelianization of the group; conjugates always
/// agree there, so a difference settles non-conjugacy. Linear time.
pub fn generic_filter(family: &RelatorFamily, u: &Word, v: &Word) -> FilterAnswer {
    if family.abelian_invariants(u) != family.abelian_invariants(v) {
        FilterAnswer::NotConjugate
    } else {
        FilterAnswer::Unknown
    }
}

/// Uniform freely reduced word with `len` letters over `gens` generators.
pub fn random_reduced_word<R: Rng>(rng: &mut R, gens: usize, len: u64) -> Word {
    let mut syl: Vec<Syllable> = Vec::new();
    let mut prev: Option<(u32, bool)> = None;
    for _ in 0..len {
        let (g, neg) = loop {
            let x = rng.gen_range(0..2 * gens);
            let cand = ((x / 2) as u32, x % 2 == 1);
            if prev != Some((cand.0, !cand.1)) {
                break cand;
            }
        };
        prev = Some((g, neg));
        syl.push(Syllable::new(g, if neg { -1 } else { 1 }));
    }
    Word::from_syllables(syl)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub length: u64,
    pub samples: u64,
    pub answered: u64,
    pub fraction: f64,
}

/// Fraction of uniform random pairs of reduced words of each length on which
/// [`generic_filter`] answers.
pub fn density_experiment(
    family: &RelatorFamily,
    lengths: &[u64],
    samples: u64,
    seed: u64,
) -> Result<Vec<DensityRow>> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let gens = family.alphabet().len();
    let mut rows = Vec::with_capacity(lengths.len());
    for &length in lengths {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ length.rotate_left(32));
        let mut answered = 0;
        for _ in 0..samples {
            let u = random_reduced_word(&mut rng, gens, length);
            let v = random_reduced_word(&mut rng, gens, length);
            if generic_filter(family, &u, &v) == FilterAnswer::NotConjugate {
                answered += 1;
            }
        }
        rows.push(DensityRow {
            length,
            samples,
            answered,
            fraction: answered as f64 / samples as f64,
        })
    }
    Ok(rows)
}

/// `(canon, c)` with `canon = c w c^-1` freely and `canon` the least
/// syllable rotation of the cyclic reduction.
fn canonical(w: &Word) -> (Word, Word) {
    let (c1, core) = cyclically_reduce(w);
    let core = core.into_word();
    if core.is_identity() {
        return (core, c1.inverse());
    }
    let starts = core.syllable_starts();
    let (best, at) = starts
        .iter()
        .map(|&p| (core.rotate(p), p))
        .min()
        .expect("nonempty word");
    let a = core.slice(0, at);
    (best, a.inverse().mul(&c1.inverse()))
}

/// Enumerates, class by class in turn, words equal in the group to conjugates
/// of each `ws[i]` (breadth first in the number of inserted relators) until
/// both `u` and `v` have turned up or `budget` words have been generated.
///
/// The caller asserts the `ws` are pairwise non-conjugate; then `u` and `v`
/// found in different classes are not conjugate.
pub fn dovetail_partial(
    ws: &[Word],
    u: &Word,
    v: &Word,
    family: &RelatorFamily,
    budget: u64,
) -> Result<ConjugacyAnswer> {
    let rels = match family.relators() {
        Ok(r) => r,
        Err(Error::Untruncated) => {
            return Ok(ConjugacyAnswer::Unknown("enumeration needs a truncated family".into()))
        }
        Err(e) => return Err(e),
    };
    let elements: Vec<Word> = rels
        .iter()
        .flat_map(|r| {
            [false, true].into_iter().flat_map(move |inv| {
                let w = r.oriented(inv);
                (0..w.len()).map(move |o| w.rotate(o))
            })
        })
        .collect();
    let (cu, ku) = canonical(u);
    let (cv, kv) = canonical(v);
    // per class: canonical word -> g with word = g w_i g^-1 in the group
    let mut seen: Vec<HashMap<Word, Word>> = vec![HashMap::new(); ws.len()];
    let mut queues: Vec<VecDeque<Word>> = vec![VecDeque::new(); ws.len()];
    let mut found_u: Option<(usize, Word)> = None;
    let mut found_v: Option<(usize, Word)> = None;
    let mut generated = 0u64;
    let note = |i: usize, canon: &Word, g: &Word, fu: &mut Option<(usize, Word)>, fv: &mut Option<(usize, Word)>| {
        if fu.is_none() && *canon == cu {
            *fu = Some((i, g.clone()));
        }
        if fv.is_none() && *canon == cv {
            *fv = Some((i, g.clone()));
        }
    };
    for (i, w) in ws.iter().enumerate() {
        let (c, k) = canonical(w);
        note(i, &c, &k, &mut found_u, &mut found_v);
        seen[i].insert(c.clone(), k);
        queues[i].push_back(c);
        generated += 1;
    }
    loop {
        if let (Some((i, gu)), Some((j, gv))) = (&found_u, &found_v) {
            if i != j {
                return Ok(ConjugacyAnswer::NotConjugate);
            }
            // u = ku^-1 gu w gu^-1 ku and likewise for v
            let witness = Word::product([&kv.inverse(), gv, &gu.inverse(), &ku]);
            return Ok(ConjugacyAnswer::Conjugate {
                witness,
                diagram: None,
            });
        }
        if generated >= budget || queues.iter().all(|q| q.is_empty()) {
            return Ok(ConjugacyAnswer::Unknown(format!(
                "enumeration budget of {budget} words exhausted"
            )));
        }
        for i in 0..ws.len() {
            let Some(w) = queues[i].pop_front() else {
                continue;
            };
            let g = seen[i][&w].clone();
            'expand: for p in 0..=w.len() {
                let (pre, post) = (w.slice(0, p), w.slice(p, w.len()));
                for e in &elements {
                    if generated >= budget {
                        break 'expand;
                    }
                    let (c, k) = canonical(&Word::product([&pre, e, &post]));
                    if seen[i].contains_key(&c) {
                        continue;
                    }
                    generated += 1;
                    let gk = k.mul(&g);
                    note(i, &c, &gk, &mut found_u, &mut found_v);
                    seen[i].insert(c.clone(), gk);
                    queues[i].push_back(c);
                }
            }
        }
    }
}
