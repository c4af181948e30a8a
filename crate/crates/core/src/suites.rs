//! Verification suites shared by the command line and the acceptance tests.
//! Each returns a [`SuiteReport`]; a run that hits a resource limit returns
//! the error instead of a failed report.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::conjugacy::{decide, decide_with, replays, ConjugacyAnswer, DecideOptions, Verdict};
use crate::error::{Error, Result};
use crate::oracle::{bfs_class, sat_bruteforce, BfsBounds};
use crate::relators::{RelatorFamily, SatBounds};
use crate::satenc::{extract_certificate, reduce_to_conjugacy};
use crate::smallcancel::{
    is_weakly_reduced, reduce_with, verify_piece_condition, PieceCondition, ReduceOptions,
    DEFAULT_ELEMENT_LIMIT,
};
use crate::words::{GenId, Letter, Word};

/// Failures kept in a report; the count is always exact.
pub const MAX_FAILURES: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checked: u64,
    pub failed: u64,
    pub summary: BTreeMap<String, Value>,
    pub failures: Vec<Value>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: true,
            checked: 0,
            failed: 0,
            summary: BTreeMap::new(),
            failures: vec![],
        }
    }

    fn fail(&mut self, v: Value) {
        self.passed = false;
        self.failed += 1;
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(v);
        }
    }

    fn note(&mut self, key: &str, v: impl Serialize) {
        self.summary.insert(key.into(), json!(v));
    }
}

/// Runs `f` over `items` on all cores, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// The piece condition over the whole truncation, with witnesses on failure.
pub fn pieces_suite(family: &RelatorFamily, condition: PieceCondition) -> Result<SuiteReport> {
    let rep = verify_piece_condition(family, condition, DEFAULT_ELEMENT_LIMIT)?;
    let mut out = SuiteReport::new("pieces");
    out.checked = rep.elements;
    out.note("condition", rep.condition);
    out.note("relators", rep.relators);
    out.note("extreme", &rep.extreme);
    for w in &rep.witnesses {
        out.fail(json!(w));
    }
    out.passed = rep.holds;
    Ok(out)
}

/// A random word of at most `max_len` letters made of relator fragments and
/// short runs of random letters, so that reductions actually happen.
pub fn reduction_workload<R: Rng>(rng: &mut R, family: &RelatorFamily, max_len: u64) -> Result<Word> {
    let rels = family.relators()?;
    let gens = family.alphabet().len() as u32;
    let mut w = Word::identity();
    let mut stalls = 0;
    while w.len() < max_len && stalls < 8 {
        let part = if rng.gen_bool(0.5) {
            let r = rels.choose(rng).expect("truncation is nonempty");
            let e = r.element(rng.gen_bool(0.5), rng.gen_range(0..r.word.len()));
            let keep = rng.gen_range(e.len() / 2..=e.len());
            e.slice(0, keep)
        } else {
            let n = rng.gen_range(1..=8);
            Word::from_letters((0..n).map(|_| Letter {
                gen: rng.gen_range(0..gens),
                inv: rng.gen_bool(0.5),
            }))
        };
        let next = w.mul(&part);
        if next.len() > max_len {
            stalls += 1;
            continue;
        }
        w = next;
    }
    Ok(w)
}

/// Reduces `count` workload words and checks each output and each step.
pub fn reduction_suite(family: &RelatorFamily, count: u64, max_len: u64, seed: u64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = (0..count)
        .map(|_| reduction_workload(&mut rng, family, max_len))
        .collect::<Result<Vec<_>>>()?;
    let opts = ReduceOptions {
        piece_lengths: true,
        max_steps: Some(max_len + 1),
    };
    let results = par_map(&words, |w| reduce_with(w, family, opts));
    let mut out = SuiteReport::new("reduction-traces");
    let (mut steps, mut min_drop) = (0u64, i64::MAX);
    for (k, (w, red)) in words.iter().zip(results).enumerate() {
        let red = red?;
        out.checked += 1;
        if !is_weakly_reduced(&red.word, family)? {
            out.fail(json!({"word": k, "problem": "output not weakly reduced"}));
        }
        if red.word.len() > w.len() {
            out.fail(json!({"word": k, "problem": "output longer than input"}));
        }
        for (n, s) in red.trace.steps.iter().enumerate() {
            steps += 1;
            let r = match s.relator {
                Some(i) => family.relator(i)?,
                None => None,
            };
            let whole = Word::product([&s.replaced, &s.inserted.inverse()]);
            if r.map(|r| r.element(s.inverse, s.relator_offset)) != Some(whole) {
                out.fail(json!({"word": k, "step": n + 1, "problem": "s t is not a relator"}));
            }
            if let (Some(b), Some(a)) = (s.piece_length_before, s.piece_length_after) {
                let drop = b as i64 - a as i64;
                min_drop = min_drop.min(drop);
                if drop < 12 {
                    out.fail(json!({"word": k, "step": n + 1, "before": b, "after": a}));
                }
            }
        }
    }
    out.note("steps", steps);
    out.note("min_piece_length_drop", (steps > 0).then_some(min_drop));
    Ok(out)
}

/// All freely reduced words over `gens` with at most `max_len` letters, shortlex.
pub fn short_words(gens: &[GenId], max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = gens
        .iter()
        .flat_map(|&gen| [false, true].map(|inv| Letter { gen, inv }))
        .collect();
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &x in &letters {
                if w.last() != Some(&x.inverse()) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.into_iter().map(Word::from_letters).collect()
}

/// For every short word `u`, every `v` the oracle reaches from `u` must not
/// be declared non-conjugate by the decider, and the oracle's witness must
/// replay. Pairs the oracle does not connect are inconclusive and skipped.
pub fn oracle_suite(family: &RelatorFamily, gens: &[GenId], max_len: usize) -> Result<SuiteReport> {
    let words = short_words(gens, max_len);
    let bounds = BfsBounds {
        max_len,
        max_depth: u32::MAX,
        node_budget: 1_000_000,
        relator_bound: family.truncation().ok_or(Error::Untruncated)?,
        generators: Some(gens.to_vec()),
    };
    let per_word = par_map(&words, |u| -> Result<[u64; 5]> {
        // pairs, conjugate, unknown, contradictions, replay failures
        let mut c = [0u64; 5];
        let class = bfs_class(u, family, &bounds)?;
        for v in class.words() {
            c[0] += 1;
            let (witness, _) = class.path_to(&v).expect("member of its class");
            if !replays(&witness, u, &v, family)? {
                c[4] += 1;
            }
            match decide(u, &v, family)?.verdict() {
                Verdict::Conjugate => c[1] += 1,
                Verdict::Unknown => c[2] += 1,
                Verdict::NotConjugate => c[3] += 1,
            }
        }
        Ok(c)
    });
    let mut out = SuiteReport::new("oracle-equivalence");
    let mut tot = [0u64; 5];
    for (u, c) in words.iter().zip(per_word) {
        let c = c?;
        if c[3] > 0 || c[4] > 0 {
            out.fail(json!({
                "word": family.alphabet().format(u),
                "contradictions": c[3],
                "replay_failures": c[4],
            }));
        }
        for k in 0..5 {
            tot[k] += c[k];
        }
    }
    out.checked = tot[0];
    out.note("words", words.len());
    out.note("oracle_yes_pairs", tot[0]);
    out.note("decided_conjugate", tot[1]);
    out.note("decided_unknown", tot[2]);
    out.note("contradictions", tot[3]);
    out.note("replay_failures", tot[4]);
    Ok(out)
}

/// Every instance within `bounds`: the hard pair is conjugate exactly when
/// the truth table finds a row, and the certificate is that first row.
pub fn sat_suite(bounds: SatBounds) -> Result<SuiteReport> {
    let family = RelatorFamily::sat(None);
    let gens = family.sat_generators().expect("sat family").clone();
    let instances = bounds.instances();
    let results = par_map(&instances, |eta| -> Result<(bool, Option<Value>)> {
        let (u, v) = reduce_to_conjugacy(&gens, eta);
        let expect = sat_bruteforce(eta)?;
        let d = decide_with(&u, &v, &family, DecideOptions::default())?;
        let text = eta.to_inline();
        let failure = match (&d.answer, &expect) {
            (ConjugacyAnswer::Conjugate { witness, diagram }, Some(a)) => {
                let cert = diagram.as_ref().map(|d| extract_certificate(d, &gens));
                if !replays(witness, &u, &v, &family)? {
                    Some(json!({"instance": text, "problem": "witness does not replay"}))
                } else if cert.as_ref().and_then(|c| c.as_ref().ok()) != Some(a) {
                    Some(json!({"instance": text, "problem": "certificate differs", "certificate": format!("{cert:?}")}))
                } else {
                    None
                }
            }
            (ConjugacyAnswer::NotConjugate, None) => None,
            (ans, _) => Some(json!({
                "instance": text,
                "verdict": ans.verdict(),
                "satisfiable": expect.is_some(),
            })),
        };
        Ok((expect.is_some(), failure))
    });
    let mut out = SuiteReport::new("sat-reduction");
    let mut sat = 0;
    for r in results {
        let (satisfiable, failure) = r?;
        out.checked += 1;
        sat += satisfiable as u64;
        if let Some(f) = failure {
            out.fail(f);
        }
    }
    out.note("instances", instances.len());
    out.note("satisfiable", sat);
    Ok(out)
}
