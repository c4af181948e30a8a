//! Brute-force ground truth for small cases: bounded breadth-first search for
//! conjugators, truth-table 3-SAT and fully expanded relators.
//!
//! Everything here works on plain letter strings and shares no code with the
//! deciders it is used to check.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::relators::{RelatorFamily, StructuredRelator, VariantKind};
use crate::satenc::{Assignment, SatInstance, MAX_VARIABLES};
use crate::words::{GenId, Letter, Word};

/// A word spelled out one letter at a time.
pub type Unary = Vec<Letter>;

pub fn unary(w: &Word) -> Unary {
    w.letters().collect()
}

/// Cancels adjacent inverse pairs.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Unary {
    let mut out: Unary = Vec::new();
    for x in letters {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn invert(w: &[Letter]) -> Unary {
    w.iter().rev().map(|x| x.inverse()).collect()
}

fn base_relators(family: &RelatorFamily, bound: u64) -> Result<Vec<std::sync::Arc<StructuredRelator>>> {
    if family.kind() == VariantKind::Sat {
        return Ok(family
            .relators()?
            .into_iter()
            .filter(|r| r.index.is_some_and(|i| i <= bound))
            .collect());
    }
    let mut out = Vec::new();
    for i in 1..=bound {
        if let Some(r) = family.relator(i)? {
            out.push(r);
        }
    }
    Ok(out)
}

/// Every rotation of every `r` and `r^-1` with index at most `bound`, spelled
/// out. Fails once more than `letter_budget` letters would be written.
pub fn expand_relators(family: &RelatorFamily, bound: u64, letter_budget: u64) -> Result<Vec<Unary>> {
    let rels = base_relators(family, bound)?;
    let total: u128 = rels.iter().map(|r| 2 * r.word.unary_len() * r.word.unary_len()).sum();
    if total > letter_budget as u128 {
        return Err(Error::ResourceLimit(format!(
            "expansion needs {total} letters, budget is {letter_budget}"
        )));
    }
    let mut out = Vec::new();
    for r in &rels {
        let fwd = unary(&r.word);
        for w in [invert(&fwd), fwd] {
            for k in 0..w.len() {
                let mut rot = w[k..].to_vec();
                rot.extend_from_slice(&w[..k]);
                out.push(rot);
            }
        }
    }
    Ok(out)
}

/// Piece test by scanning for common prefixes: at least two of the expanded
/// strings begin with `sub`.
pub fn prefix_piece(sub: &[Letter], expanded: &[Unary]) -> bool {
    expanded.iter().filter(|e| e.starts_with(sub)).take(2).count() >= 2
}

/// First satisfying row of the truth table, found by counting through the
/// rows with a bit vector. Variables are taken in increasing order with the
/// smallest one as the most significant bit, so row 0 is all false.
pub fn sat_bruteforce(eta: &SatInstance) -> Result<Option<Assignment>> {
    let vars: Vec<u64> = eta
        .clauses()
        .iter()
        .flatten()
        .map(|z| z.unsigned_abs())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if vars.len() > MAX_VARIABLES {
        return Err(Error::TooManyVariables(vars.len()));
    }
    let slot: HashMap<u64, usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut bits = vec![false; vars.len()];
    loop {
        let holds = eta
            .clauses()
            .iter()
            .all(|c| c.iter().any(|&z| bits[slot[&z.unsigned_abs()]] == (z > 0)));
        if holds {
            return Ok(Some(vars.iter().copied().zip(bits).collect()));
        }
        // binary increment, least significant bit last
        match bits.iter().rposition(|b| !b) {
            None => return Ok(None),
            Some(p) => {
                bits[p] = true;
                bits[p + 1..].iter_mut().for_each(|b| *b = false);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BfsBounds {
    /// Words longer than this are never visited.
    pub max_len: usize,
    /// Moves from the start word.
    pub max_depth: u32,
    /// Visited words before the search is abandoned with an error.
    pub node_budget: usize,
    /// Relators with index up to this are inserted and deleted.
    pub relator_bound: u64,
    /// Conjugating letters; `None` means the generators of the start word,
    /// the target and the relators.
    pub generators: Option<Vec<GenId>>,
}

impl Default for BfsBounds {
    fn default() -> Self {
        BfsBounds {
            max_len: 12,
            max_depth: 6,
            node_budget: 1_000_000,
            relator_bound: 1,
            generators: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfsMove {
    /// `w -> x w x^-1`
    Conjugate(Letter),
    /// Relator `r^{±1}` inserted before letter `at`.
    Insert { relator: usize, inverse: bool, at: usize },
    /// Occurrence of `r^{±1}` starting at letter `at` deleted.
    Delete { relator: usize, inverse: bool, at: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BfsAnswer {
    /// `witness · u · witness^-1 = v` in the group.
    Yes { witness: Word, path: Vec<BfsMove> },
    Inconclusive,
}

struct Node {
    parent: Option<(usize, BfsMove)>,
    depth: u32,
}

/// The words reachable from one start word within the bounds.
pub struct BfsClass {
    words: Vec<Unary>,
    nodes: Vec<Node>,
    index: HashMap<Unary, usize>,
}

impl BfsClass {
    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(&unary(w))
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.words.iter().map(|w| Word::from_letters(w.iter().copied()))
    }

    /// Moves leading from the start word to `w`, with the accumulated conjugator.
    pub fn path_to(&self, w: &Word) -> Option<(Word, Vec<BfsMove>)> {
        let mut k = *self.index.get(&unary(w))?;
        let mut path = Vec::new();
        while let Some((p, m)) = self.nodes[k].parent {
            path.push(m);
            k = p;
        }
        path.reverse();
        let conj: Unary = free_reduce(path.iter().rev().filter_map(|m| match m {
            BfsMove::Conjugate(x) => Some(*x),
            _ => None,
        }));
        Some((Word::from_letters(conj), path))
    }
}

struct Search {
    relators: Vec<Unary>,
    letters: Vec<Letter>,
    bounds: BfsBounds,
}

impl Search {
    fn new(family: &RelatorFamily, words: &[&Word], bounds: &BfsBounds) -> Result<Self> {
        if !family.is_truncated() {
            return Err(Error::Untruncated);
        }
        let relators: Vec<Unary> = base_relators(family, bounds.relator_bound)?
            .iter()
            .map(|r| unary(&r.word))
            .collect();
        let gens: BTreeSet<GenId> = match &bounds.generators {
            Some(g) => g.iter().copied().collect(),
            None => words
                .iter()
                .flat_map(|w| w.syllables().iter().map(|s| s.gen))
                .chain(relators.iter().flatten().map(|x| x.gen))
                .collect(),
        };
        let letters = gens
            .into_iter()
            .flat_map(|gen| [false, true].map(|inv| Letter { gen, inv }))
            .collect();
        Ok(Search {
            relators,
            letters,
            bounds: bounds.clone(),
        })
    }

    fn neighbours(&self, w: &[Letter], out: &mut Vec<(Unary, BfsMove)>) {
        out.clear();
        let max = self.bounds.max_len;
        for &x in &self.letters {
            let c = free_reduce(std::iter::once(x).chain(w.iter().copied()).chain([x.inverse()]));
            if c.len() <= max {
                out.push((c, BfsMove::Conjugate(x)));
            }
        }
        for (ri, r) in self.relators.iter().enumerate() {
            for inverse in [false, true] {
                let r = if inverse { invert(r) } else { r.clone() };
                // inserting can cancel at most |w| letters on each side
                if r.len() <= max + 2 * w.len() {
                    for at in 0..=w.len() {
                        let c = free_reduce(w[..at].iter().chain(&r).chain(&w[at..]).copied());
                        if c.len() <= max {
                            out.push((c, BfsMove::Insert { relator: ri, inverse, at }));
                        }
                    }
                }
                if r.len() <= w.len() {
                    for at in 0..=w.len() - r.len() {
                        if w[at..at + r.len()] == r[..] {
                            let c = free_reduce(w[..at].iter().chain(&w[at + r.len()..]).copied());
                            out.push((c, BfsMove::Delete { relator: ri, inverse, at }));
                        }
                    }
                }
            }
        }
    }

    /// Breadth-first search from `start`, stopping early once `target` is seen.
    fn run(&self, start: &Word, target: Option<&Unary>) -> Result<BfsClass> {
        let s = free_reduce(start.letters());
        let mut class = BfsClass {
            words: vec![],
            nodes: vec![],
            index: HashMap::new(),
        };
        if s.len() > self.bounds.max_len {
            return Ok(class);
        }
        class.index.insert(s.clone(), 0);
        class.words.push(s);
        class.nodes.push(Node { parent: None, depth: 0 });
        let mut queue = VecDeque::from([0usize]);
        let mut nbrs = Vec::new();
        while let Some(k) = queue.pop_front() {
            if target.is_some_and(|t| class.words[k] == *t) {
                break;
            }
            let depth = class.nodes[k].depth;
            if depth >= self.bounds.max_depth {
                continue;
            }
            let w = class.words[k].clone();
            self.neighbours(&w, &mut nbrs);
            for (c, m) in nbrs.drain(..) {
                if class.index.contains_key(&c) {
                    continue;
                }
                if class.words.len() >= self.bounds.node_budget {
                    return Err(Error::ResourceLimit(format!(
                        "search visited {} words",
                        self.bounds.node_budget
                    )));
                }
                let id = class.words.len();
                class.index.insert(c.clone(), id);
                class.words.push(c);
                class.nodes.push(Node {
                    parent: Some((k, m)),
                    depth: depth + 1,
                });
                queue.push_back(id);
            }
        }
        Ok(class)
    }
}

/// Searches for `v` among the words reachable from `u` by conjugating with
/// single letters and inserting or deleting base relators.
///
/// Rotating a relator is conjugation, so base relators together with
/// conjugation moves reach everything the symmetrized closure would.
pub fn bfs_conjugate(u: &Word, v: &Word, family: &RelatorFamily, bounds: &BfsBounds) -> Result<BfsAnswer> {
    let search = Search::new(family, &[u, v], bounds)?;
    let target = free_reduce(v.letters());
    let class = search.run(u, Some(&target))?;
    Ok(match class.path_to(v) {
        Some((witness, path)) => BfsAnswer::Yes { witness, path },
        None => BfsAnswer::Inconclusive,
    })
}

/// The full reachable set from `u` within the bounds; every word in it is
/// conjugate to `u`.
pub fn bfs_class(u: &Word, family: &RelatorFamily, bounds: &BfsBounds) -> Result<BfsClass> {
    Search::new(family, &[u], bounds)?.run(u, None)
}
