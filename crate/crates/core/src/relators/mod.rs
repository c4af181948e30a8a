//! The four relator families, their symmetrized closures and the scans that
//! locate relator fragments inside arbitrary words.

mod structured;

pub use structured::{
    machine_relator, BShape, RelatorParams, Segment, SegmentKind, StructuredRelator,
};

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machines::{Eval, FamilyFunctionSpec, FamilyKind, Preimage};
use crate::satenc::{
    assemble, enumerate_instances, first_satisfying_assignment, SatGenerators, SatInstance,
};
use crate::words::{cyclic_occurrences, Alphabet, GenId, Syllable, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantKind {
    CeDegree,
    TimeHierarchy,
    HalfConjugacy,
    Sat,
}

/// Which 3-SAT instances a truncated family keeps: the enumeration prefix over
/// pairs `(m, n)` with `m <= max_clauses`, `n <= max_clause_index`, optionally
/// restricted to instances whose variables are all at most `max_variable`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatBounds {
    pub max_clauses: u64,
    pub max_clause_index: u64,
    pub max_variable: Option<u64>,
}

impl SatBounds {
    /// Bounds holding exactly the instances with at most `clauses` clauses over
    /// variables `1..=var`.
    pub fn by_variable(clauses: u64, var: u64) -> Self {
        SatBounds {
            max_clauses: clauses,
            max_clause_index: 3 * var,
            max_variable: Some(var),
        }
    }

    pub fn admits(&self, eta: &SatInstance) -> bool {
        eta.clauses().len() as u64 <= self.max_clauses
            && eta.max_clause_index() <= self.max_clause_index
            && self.max_variable.is_none_or(|v| eta.max_variable() <= v)
    }

    pub fn instances(&self) -> Vec<SatInstance> {
        let mut all = enumerate_instances(self.max_clauses, self.max_clause_index);
        if let Some(v) = self.max_variable {
            all.retain(|e| e.max_variable() <= v);
        }
        all
    }
}

/// Outcome of asking which relators a syllable or word can come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pin {
    Indices(Vec<u64>),
    Undetermined(String),
}

#[derive(Clone, Debug)]
pub enum Candidates {
    Relators(Vec<Arc<StructuredRelator>>),
    Undetermined(String),
}

/// A relator fragment found by [`RelatorFamily::critical_subword_scan`].
#[derive(Clone, Debug)]
pub struct CriticalMatch {
    /// First syllable of the fragment in the scanned word.
    pub syllable: usize,
    /// Number of syllables in the fragment.
    pub len: usize,
    pub relator: Arc<StructuredRelator>,
    /// The fragment lies in `r^-1` rather than `r`.
    pub inverse: bool,
    /// Letter offset of the fragment in the cyclic word `r` or `r^-1`.
    pub offset: u64,
}

struct SatTable {
    relators: Vec<Arc<StructuredRelator>>,
    by_instance: HashMap<SatInstance, u64>,
    instances: usize,
}

struct SatState {
    gens: SatGenerators,
    bounds: Option<SatBounds>,
    table: OnceLock<SatTable>,
    memo: RwLock<HashMap<SatInstance, Option<Arc<StructuredRelator>>>>,
}

/// One of the indexed relator families, with memoized relator construction.
pub struct RelatorFamily {
    kind: VariantKind,
    func: Option<FamilyFunctionSpec>,
    alphabet: Alphabet,
    truncation: Option<u64>,
    sat: Option<SatState>,
    frozen: Option<Arc<HashMap<u64, Eval>>>,
    memo: RwLock<HashMap<u64, Option<Arc<StructuredRelator>>>>,
    adjacency: OnceLock<HashSet<(GenId, bool, GenId, bool)>>,
}

impl std::fmt::Debug for RelatorFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RelatorFamily")
            .field("kind", &self.kind)
            .field("truncation", &self.truncation)
            .field("frozen", &self.frozen.as_ref().map(|t| t.len()))
            .finish()
    }
}

impl RelatorFamily {
    /// A machine-driven family. The kind of `func` selects the variant:
    /// bijection machines give the c.e.-degree family.
    pub fn machine(func: FamilyFunctionSpec, truncation: Option<u64>) -> Result<Self> {
        let kind = match func.kind() {
            FamilyKind::CeBijection { .. } => VariantKind::CeDegree,
            FamilyKind::TimeHierarchy { .. } => VariantKind::TimeHierarchy,
            FamilyKind::HalfConjugacy { .. } => VariantKind::HalfConjugacy,
        };
        if truncation == Some(0) {
            return Err(Error::InvalidArgument("truncation must be at least 1".into()));
        }
        Ok(RelatorFamily {
            kind,
            func: Some(func),
            alphabet: Alphabet::machine_family(),
            truncation,
            sat: None,
            frozen: None,
            memo: RwLock::new(HashMap::new()),
            adjacency: OnceLock::new(),
        })
    }

    /// The 3-SAT family, truncated to an enumeration prefix when `bounds` is set.
    pub fn sat(bounds: Option<SatBounds>) -> Self {
        let alphabet = Alphabet::sat_family();
        RelatorFamily {
            kind: VariantKind::Sat,
            func: None,
            truncation: None,
            sat: Some(SatState {
                gens: SatGenerators::new(&alphabet),
                bounds,
                table: OnceLock::new(),
                memo: RwLock::new(HashMap::new()),
            }),
            alphabet,
            frozen: None,
            memo: RwLock::new(HashMap::new()),
            adjacency: OnceLock::new(),
        }
    }

    pub fn kind(&self) -> VariantKind {
        self.kind
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn func(&self) -> Option<&FamilyFunctionSpec> {
        self.func.as_ref()
    }

    pub fn sat_generators(&self) -> Option<&SatGenerators> {
        self.sat.as_ref().map(|s| &s.gens)
    }

    pub fn sat_bounds(&self) -> Option<SatBounds> {
        self.sat.as_ref().and_then(|s| s.bounds)
    }

    /// Largest relator index, when the family is truncated.
    pub fn truncation(&self) -> Option<u64> {
        match &self.sat {
            Some(s) => s.bounds.map(|_| self.sat_table().relators.len() as u64),
            None => self.truncation,
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation().is_some()
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen.is_some()
    }

    /// Number of instances in the SAT enumeration prefix, satisfiable or not.
    pub fn sat_instance_count(&self) -> Option<usize> {
        self.sat
            .as_ref()
            .and_then(|s| s.bounds)
            .map(|_| self.sat_table().instances)
    }

    fn sat_table(&self) -> &SatTable {
        let st = self.sat.as_ref().expect("sat family");
        st.table.get_or_init(|| {
            let bounds = st.bounds.expect("bounded sat family");
            let instances = bounds.instances();
            let mut relators = Vec::new();
            let mut by_instance = HashMap::new();
            for eta in &instances {
                // the bounds keep instances far below the variable cap
                if let Ok(Some(a)) = first_satisfying_assignment(eta) {
                    let idx = relators.len() as u64 + 1;
                    by_instance.insert(eta.clone(), idx);
                    relators.push(Arc::new(assemble(&st.gens, eta, a, Some(idx))));
                }
            }
            SatTable {
                relators,
                by_instance,
                instances: instances.len(),
            }
        })
    }

    /// A copy whose machine evaluations come from a table of indices `1..=upto`,
    /// filled now. The copy never runs membership evaluations afterwards.
    pub fn freeze(&self, upto: u64) -> Result<RelatorFamily> {
        let func = self
            .func
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("only machine families can be frozen".into()))?;
        let upto = self.truncation.map_or(upto, |t| t.min(upto));
        let mut table = HashMap::new();
        for i in 1..=upto {
            table.insert(i, self.eval(i)?);
        }
        Ok(RelatorFamily {
            kind: self.kind,
            func: Some(func.clone()),
            alphabet: self.alphabet.clone(),
            truncation: self.truncation,
            sat: None,
            frozen: Some(Arc::new(table)),
            memo: RwLock::new(self.memo.read().expect("memo lock").clone()),
            adjacency: OnceLock::new(),
        })
    }

    /// Evaluation of index `i`: from the frozen table if present, otherwise a
    /// (counted) membership evaluation.
    pub fn eval(&self, i: u64) -> Result<Eval> {
        if let Some(t) = &self.frozen {
            return t.get(&i).copied().or_else(|| self.replayed_eval(i)).ok_or_else(|| {
                Error::FamilyEvaluation(format!("index {i} lies outside the precomputed table"))
            });
        }
        self.func
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("the 3-SAT family has no machine".into()))?
            .evaluate(i)
    }

    /// Evaluation recovered from a relator already validated by replay.
    fn replayed_eval(&self, i: u64) -> Option<Eval> {
        let memo = self.memo.read().expect("memo lock");
        let r = memo.get(&i)?.as_ref()?;
        match (self.kind, &r.params) {
            (VariantKind::CeDegree, RelatorParams::Machine { a, t, .. }) => Some(Eval { value: *a, steps: *t }),
            (VariantKind::HalfConjugacy, RelatorParams::Machine { t, shape, .. }) => Some(Eval {
                value: (*shape == BShape::Descending) as u64,
                steps: *t,
            }),
            (_, RelatorParams::Machine { t, .. }) => Some(Eval { value: 1, steps: *t }),
            _ => None,
        }
    }

    fn replayed(&self) -> Vec<(u64, Eval)> {
        let keys: Vec<u64> = self.memo.read().expect("memo lock").keys().copied().collect();
        keys.into_iter().filter_map(|i| self.replayed_eval(i).map(|e| (i, e))).collect()
    }

    fn check_index(&self, i: u64) -> Result<()> {
        if i == 0 {
            return Err(Error::InvalidArgument("relator indices start at 1".into()));
        }
        if let Some(t) = self.truncation() {
            if i > t {
                return Err(Error::InvalidArgument(format!(
                    "index {i} is beyond the truncation {t}"
                )));
            }
        }
        Ok(())
    }

    fn within(&self, i: u64) -> bool {
        i >= 1 && self.truncation.is_none_or(|t| i <= t)
    }

    /// Base relator for index `i`, or `None` when the family has none there.
    pub fn relator(&self, i: u64) -> Result<Option<Arc<StructuredRelator>>> {
        self.check_index(i)?;
        if self.kind == VariantKind::Sat {
            if self.sat_bounds().is_none() {
                return Err(Error::Untruncated);
            }
            return Ok(Some(self.sat_table().relators[i as usize - 1].clone()));
        }
        if let Some(r) = self.memo.read().expect("memo lock").get(&i) {
            return Ok(r.clone());
        }
        let e = self.eval(i)?;
        let r = self.machine_relator_for(i, e.value, e.steps);
        self.memo
            .write()
            .expect("memo lock")
            .insert(i, r.clone());
        Ok(r)
    }

    /// Builds the relator for index `i` from an evaluation `(value, steps)`.
    fn machine_relator_for(&self, i: u64, value: u64, steps: u64) -> Option<Arc<StructuredRelator>> {
        let al = &self.alphabet;
        let r = match self.kind {
            VariantKind::CeDegree => machine_relator(al, i, value, i, steps, BShape::Descending),
            VariantKind::TimeHierarchy if value == 1 => {
                machine_relator(al, i, i, i, steps, BShape::Descending)
            }
            VariantKind::TimeHierarchy => return None,
            VariantKind::HalfConjugacy => {
                let shape = if value == 1 {
                    BShape::Descending
                } else {
                    BShape::Ascending
                };
                machine_relator(al, i, i, i, steps, shape)
            }
            VariantKind::Sat => return None,
        };
        Some(Arc::new(r))
    }

    /// Relator for a 3-SAT instance, if the instance is satisfiable and admitted.
    pub fn sat_relator(&self, eta: &SatInstance) -> Result<Option<Arc<StructuredRelator>>> {
        let st = self
            .sat
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("not the 3-SAT family".into()))?;
        if let Some(b) = st.bounds {
            if !b.admits(eta) {
                return Ok(None);
            }
            let t = self.sat_table();
            return Ok(t
                .by_instance
                .get(eta)
                .map(|&i| t.relators[i as usize - 1].clone()));
        }
        if let Some(r) = st.memo.read().expect("memo lock").get(eta) {
            return Ok(r.clone());
        }
        let r = first_satisfying_assignment(eta)?
            .map(|a| Arc::new(assemble(&st.gens, eta, a, None)));
        st.memo
            .write()
            .expect("memo lock")
            .insert(eta.clone(), r.clone());
        Ok(r)
    }

    /// All base relators of a truncated family.
    pub fn relators(&self) -> Result<Vec<Arc<StructuredRelator>>> {
        if self.kind == VariantKind::Sat {
            if self.sat_bounds().is_none() {
                return Err(Error::Untruncated);
            }
            return Ok(self.sat_table().relators.clone());
        }
        let t = self.truncation.ok_or(Error::Untruncated)?;
        let mut out = Vec::new();
        for i in 1..=t {
            if let Some(r) = self.relator(i)? {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Indices of relators containing a full power `g^e` of the generator `g`
    /// with `|e| = magnitude`, or `None` when the generator carries no index
    /// information (the d generators).
    pub fn pin_syllable(&self, s: Syllable) -> Result<Option<Pin>> {
        let cls = self.alphabet.class(s.gen);
        let m = s.exp.unsigned_abs();
        let pin = match (self.kind, cls.letter) {
            (VariantKind::Sat, _) | (_, 'd') => return Ok(None),
            (VariantKind::CeDegree, 'a' | 'b') => self.preimage_pin(m)?,
            (_, 'a' | 'b' | 'c') => self.index_pin(m)?,
            _ => return Ok(None),
        };
        Ok(Some(pin))
    }

    fn index_pin(&self, i: u64) -> Result<Pin> {
        if !self.within(i) {
            return Ok(Pin::Indices(vec![]));
        }
        match self.eval(i) {
            Ok(_) => {}
            Err(Error::FamilyEvaluation(msg)) => return Ok(Pin::Undetermined(msg)),
            Err(e) => return Err(e),
        }
        Ok(Pin::Indices(match self.relator(i)? {
            Some(_) => vec![i],
            None => vec![],
        }))
    }

    fn preimage_pin(&self, j: u64) -> Result<Pin> {
        if let Some(table) = &self.frozen {
            if let Some((&i, _)) = table.iter().find(|(_, e)| e.value == j) {
                return Ok(Pin::Indices(vec![i]));
            }
            if let Some((i, _)) = self.replayed().into_iter().find(|(_, e)| e.value == j) {
                return Ok(Pin::Indices(vec![i]));
            }
            let complete = self.truncation.is_some_and(|t| (1..=t).all(|i| table.contains_key(&i)));
            let monotone = matches!(
                self.func.as_ref().map(|f| f.kind()),
                Some(FamilyKind::CeBijection { monotone: true, .. })
            );
            if complete || (monotone && table.values().any(|e| e.value > j)) {
                return Ok(Pin::Indices(vec![]));
            }
            return Ok(Pin::Undetermined(format!(
                "preimage of {j} lies outside the precomputed table"
            )));
        }
        if let Some(t) = self.truncation {
            for i in 1..=t {
                match self.eval(i) {
                    Ok(e) if e.value == j => return Ok(Pin::Indices(vec![i])),
                    Ok(_) => {}
                    Err(Error::FamilyEvaluation(msg)) => return Ok(Pin::Undetermined(msg)),
                    Err(e) => return Err(e),
                }
            }
            return Ok(Pin::Indices(vec![]));
        }
        let func = self.func.as_ref().expect("machine family");
        match func.preimage(j) {
            Ok(Preimage::Found(i)) => Ok(Pin::Indices(vec![i])),
            Ok(Preimage::Absent) => Ok(Pin::Indices(vec![])),
            Ok(Preimage::Undetermined) => Ok(Pin::Undetermined(format!(
                "no preimage of {j} among the first {} indices",
                func.limits().index_search_limit
            ))),
            Err(Error::FamilyEvaluation(msg)) => Ok(Pin::Undetermined(msg)),
            Err(e) => Err(e),
        }
    }

    /// Indices whose evaluation takes exactly `t` steps: exact on truncations
    /// and frozen tables, otherwise searched up to the index search limit.
    pub fn pin_steps(&self, t: u64) -> Result<Pin> {
        let upto = match (&self.frozen, self.truncation, self.func.as_ref()) {
            (Some(table), _, _) => {
                let mut v: Vec<u64> = table.iter().filter(|(_, e)| e.steps == t).map(|(&i, _)| i).collect();
                v.extend(self.replayed().into_iter().filter(|(_, e)| e.steps == t).map(|(i, _)| i));
                v.sort_unstable();
                v.dedup();
                return Ok(Pin::Indices(v));
            }
            (None, Some(tr), _) => tr,
            (None, None, Some(f)) => f.limits().index_search_limit,
            (None, None, None) => return Ok(Pin::Indices(vec![])),
        };
        let mut out = Vec::new();
        for i in 1..=upto {
            match self.eval(i) {
                Ok(e) if e.steps == t => out.push(i),
                Ok(_) => {}
                Err(Error::FamilyEvaluation(msg)) => return Ok(Pin::Undetermined(msg)),
                Err(e) => return Err(e),
            }
        }
        Ok(Pin::Indices(out))
    }

    /// True when `a` is immediately followed by `b` somewhere in a relator of
    /// the family or its inverse, up to exponents. For 3-SAT, signs are ignored too.
    pub fn template_adjacent(&self, a: Syllable, b: Syllable) -> bool {
        let sat = self.kind == VariantKind::Sat;
        let table = self.adjacency.get_or_init(|| {
            let al = &self.alphabet;
            let samples: Vec<Word> = match self.kind {
                VariantKind::Sat => {
                    let st = self.sat.as_ref().expect("sat family");
                    let eta = SatInstance::new(vec![[1, 2, 3], [-1, -2, -3]]).expect("valid instance");
                    let a = first_satisfying_assignment(&eta).ok().flatten().expect("satisfiable");
                    vec![assemble(&st.gens, &eta, a, None).word]
                }
                VariantKind::HalfConjugacy => [BShape::Descending, BShape::Ascending]
                    .map(|sh| machine_relator(al, 1, 1, 1, 1, sh).word)
                    .to_vec(),
                _ => vec![machine_relator(al, 1, 1, 1, 1, BShape::Descending).word],
            };
            let mut set = HashSet::new();
            for r in samples {
                for w in [r.inverse(), r] {
                    let s = w.syllables();
                    for k in 0..s.len() {
                        let (x, y) = (s[k], s[(k + 1) % s.len()]);
                        set.insert((x.gen, !sat && x.exp > 0, y.gen, !sat && y.exp > 0));
                    }
                }
            }
            set
        });
        table.contains(&(a.gen, !sat && a.exp > 0, b.gen, !sat && b.exp > 0))
    }

    /// Relators that can label a region of a conjugacy diagram between cyclic
    /// words from `words`: every such region meets some full syllable (or full
    /// coding block) of one of them.
    pub fn candidates(&self, words: &[&Word]) -> Result<Candidates> {
        if self.kind == VariantKind::Sat {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for w in words {
                for eta in self.full_block_instances(w, true) {
                    if let Some(r) = self.sat_relator(&eta)? {
                        if seen.insert(eta) {
                            out.push(r);
                        }
                    }
                }
            }
            return Ok(Candidates::Relators(out));
        }
        let mut idx = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for w in words {
            for s in w.syllables() {
                let key = (self.alphabet.class(s.gen).letter, s.exp.unsigned_abs());
                if !seen.insert(key) {
                    continue;
                }
                match self.pin_syllable(*s)? {
                    None => {}
                    Some(Pin::Indices(v)) => idx.extend(v),
                    Some(Pin::Undetermined(msg)) => return Ok(Candidates::Undetermined(msg)),
                }
            }
        }
        let mut out = Vec::new();
        for i in idx {
            if let Some(r) = self.relator(i)? {
                out.push(r);
            }
        }
        Ok(Candidates::Relators(out))
    }

    /// `(kind, l, position)` for generators of the 3-SAT alphabet: kind 0..4
    /// for the a/b/c, d/e/f, u/v/w and x/y/z groups.
    pub fn sat_block_key(&self, g: GenId) -> (u8, u32, u8) {
        let c = self.alphabet.class(g);
        let (kind, pos) = match c.letter {
            'a' => (0, 0),
            'b' => (0, 1),
            'c' => (0, 2),
            'd' => (1, 0),
            'e' => (1, 1),
            'f' => (1, 2),
            'u' => (2, 0),
            'v' => (2, 1),
            'w' => (2, 2),
            'x' => (3, 0),
            'y' => (3, 1),
            _ => (3, 2),
        };
        (kind, c.sub, pos)
    }

    /// Maximal runs of syllables sharing a block key, as `(start, len)` syllable
    /// spans. In cyclic mode a run may wrap; a word that is one run yields nothing.
    pub(crate) fn sat_blocks(&self, w: &Word, cyclic: bool) -> Vec<(usize, usize, bool)> {
        let s = w.syllables();
        let n = s.len();
        if n == 0 {
            return vec![];
        }
        let key = |k: usize| {
            let (a, b, _) = self.sat_block_key(s[k].gen);
            (a, b)
        };
        let boundaries: Vec<usize> = (0..n)
            .filter(|&k| {
                if k == 0 {
                    cyclic && key(n - 1) != key(0)
                } else {
                    key(k - 1) != key(k)
                }
            })
            .collect();
        let mut out = Vec::new();
        if cyclic {
            if boundaries.is_empty() {
                return out;
            }
            for (x, &b) in boundaries.iter().enumerate() {
                let next = boundaries[(x + 1) % boundaries.len()];
                let len = if next > b { next - b } else { n - b + next };
                out.push((b, len, true));
            }
        } else {
            let mut starts = vec![0];
            starts.extend(boundaries.iter().copied().filter(|&b| b > 0));
            for (x, &b) in starts.iter().enumerate() {
                let end = starts.get(x + 1).copied().unwrap_or(n);
                // a block touching either end of a linear word is partial
                out.push((b, end - b, b > 0 && end < n));
            }
        }
        out
    }

    /// Instances spelled out by full a/b/c, d/e/f or u/v/w blocks of `w`,
    /// read forwards or inverted.
    pub(crate) fn full_block_instances(&self, w: &Word, cyclic: bool) -> Vec<SatInstance> {
        let s = w.syllables();
        let n = s.len();
        let mut out = Vec::new();
        for (start, len, full) in self.sat_blocks(w, cyclic) {
            if !full || len % 3 != 0 {
                continue;
            }
            let block: Vec<Syllable> = (0..len).map(|k| s[(start + k) % n]).collect();
            if self.sat_block_key(block[0].gen).0 == 3 {
                continue;
            }
            for inverted in [false, true] {
                let b: Vec<Syllable> = if inverted {
                    block.iter().rev().map(|x| x.inverse()).collect()
                } else {
                    block.clone()
                };
                if !b
                    .iter()
                    .enumerate()
                    .all(|(k, x)| self.sat_block_key(x.gen).2 as usize == k % 3)
                {
                    continue;
                }
                let clauses: Vec<[i64; 3]> = b.chunks(3).map(|c| [c[0].exp, c[1].exp, c[2].exp]).collect();
                if let Ok(eta) = SatInstance::new(clauses.clone()) {
                    if eta.clauses() == clauses.as_slice() {
                        out.push(eta);
                    }
                }
            }
        }
        out
    }

    /// Linear functionals on the abelianization of the free group that vanish
    /// on every relator. Unequal values on `u` and `v` rule out conjugacy.
    pub fn abelian_functionals(&self) -> Vec<Vec<(GenId, i64)>> {
        let al = &self.alphabet;
        let mut out: Vec<Vec<(GenId, i64)>> = Vec::new();
        let diffs = |out: &mut Vec<Vec<(GenId, i64)>>, letter: char, n: u32| {
            for k in 2..=n {
                out.push(vec![(al.gen(letter, k), 1), (al.gen(letter, 1), -1)]);
            }
        };
        match self.kind {
            VariantKind::Sat => {
                for (letters, n) in [(['u', 'v', 'w'], 3), (['x', 'y', 'z'], 2)] {
                    for l in 1..=n {
                        for c in letters {
                            out.push(vec![(al.gen(c, l), 1)]);
                        }
                    }
                }
                for c in ['a', 'b', 'c', 'd', 'e', 'f'] {
                    diffs(&mut out, c, 20);
                }
                for (x, y) in [('a', 'd'), ('b', 'e'), ('c', 'f')] {
                    out.push(vec![(al.gen(x, 1), 1), (al.gen(y, 1), 1)]);
                }
            }
            _ => {
                for c in ['c', 'd'] {
                    for l in 1..=3 {
                        out.push(vec![(al.gen(c, l), 1)]);
                    }
                }
                diffs(&mut out, 'a', 20);
                diffs(&mut out, 'b', 20);
                if self.kind != VariantKind::HalfConjugacy {
                    out.push(vec![(al.gen('a', 1), 1), (al.gen('b', 1), 1)]);
                }
            }
        }
        out
    }

    /// Values of [`Self::abelian_functionals`] on `w`.
    pub fn abelian_invariants(&self, w: &Word) -> Vec<i64> {
        let img = w.abelian_image(self.alphabet.len());
        self.abelian_functionals()
            .iter()
            .map(|f| f.iter().map(|&(g, c)| c * img[g as usize]).sum())
            .collect()
    }

    /// Relator fragments of `w`, located in their relator. For machine families
    /// a fragment is a full conjugating part (or its inverse) with a flanking
    /// syllable on each side, validated by a bounded machine replay. For 3-SAT
    /// it is any full a/b/c, d/e/f or u/v/w coding block.
    pub fn critical_subword_scan(&self, w: &Word, cyclic: bool) -> Vec<CriticalMatch> {
        let mut out = self.scan_forward(w, cyclic);
        let n = w.num_syllables();
        for m in self.scan_forward(&w.inverse(), cyclic) {
            let r_len = m.relator.word.len();
            let plen = fragment_len(&w.inverse(), m.syllable, m.len);
            let start = (2 * n - m.syllable - m.len) % n.max(1);
            out.push(CriticalMatch {
                syllable: start,
                len: m.len,
                relator: m.relator,
                inverse: !m.inverse,
                offset: (2 * r_len - m.offset - plen) % r_len,
            });
        }
        out.sort_by_key(|m| (m.syllable, m.inverse, m.relator.index, m.offset));
        out.dedup_by(|a, b| {
            a.syllable == b.syllable
                && a.inverse == b.inverse
                && a.offset == b.offset
                && a.relator.word == b.relator.word
        });
        out
    }

    fn scan_forward(&self, w: &Word, cyclic: bool) -> Vec<CriticalMatch> {
        match self.kind {
            VariantKind::Sat => self.scan_sat(w, cyclic),
            _ => self.scan_machine(w, cyclic),
        }
    }

    fn scan_machine(&self, w: &Word, cyclic: bool) -> Vec<CriticalMatch> {
        let s = w.syllables();
        let n = s.len();
        let mut out = Vec::new();
        if n < 8 {
            return out;
        }
        let al = &self.alphabet;
        let conj: [GenId; 6] = [
            al.gen('c', 1),
            al.gen('d', 1),
            al.gen('c', 2),
            al.gen('d', 2),
            al.gen('c', 3),
            al.gen('d', 3),
        ];
        let Some(func) = self.func.as_ref() else {
            return out;
        };
        let last = if cyclic { n } else { n - 7 };
        for k in 0..last {
            let at = |x: usize| s[(k + x) % n];
            let p: Vec<Syllable> = (1..=6).map(at).collect();
            let (c, t) = (p[0].exp, p[1].exp);
            if c <= 0 || t <= 0 {
                continue;
            }
            let shape_ok = p
                .iter()
                .enumerate()
                .all(|(x, y)| y.gen == conj[x] && y.exp == if x % 2 == 0 { c } else { t });
            if !shape_ok {
                continue;
            }
            let i = c as u64;
            if !self.within(i) {
                continue;
            }
            let Some(value) = func.replay(i, t as u64) else {
                continue;
            };
            let Some(r) = self.machine_relator_for(i, value, t as u64) else {
                continue;
            };
            // a replayed relator is as good as an evaluated one
            self.memo.write().expect("memo lock").entry(i).or_insert_with(|| Some(r.clone()));
            let pattern = Word::from_syllables((0..8).map(at));
            self.locate(&pattern, r, k, 8, &mut out);
        }
        out
    }

    fn scan_sat(&self, w: &Word, cyclic: bool) -> Vec<CriticalMatch> {
        let s = w.syllables();
        let n = s.len();
        let mut out = Vec::new();
        for (start, len, full) in self.sat_blocks(w, cyclic) {
            // every full coding block occurs exactly once in r and once in r^-1
            if !full || len % 3 != 0 || self.sat_block_key(s[start].gen).0 == 3 {
                continue;
            }
            let block: Vec<Syllable> = (0..len).map(|k| s[(start + k) % n]).collect();
            if !block
                .iter()
                .enumerate()
                .all(|(k, x)| self.sat_block_key(x.gen).2 as usize == k % 3)
            {
                continue;
            }
            let clauses: Vec<[i64; 3]> = block.chunks(3).map(|c| [c[0].exp, c[1].exp, c[2].exp]).collect();
            let Some(eta) = SatInstance::new(clauses.clone())
                .ok()
                .filter(|e| e.clauses() == clauses.as_slice())
            else {
                continue;
            };
            let Ok(Some(r)) = self.sat_relator(&eta) else {
                continue;
            };
            self.locate(&Word::from_syllables(block), r, start, len, &mut out);
        }
        out
    }

    fn locate(
        &self,
        pattern: &Word,
        r: Arc<StructuredRelator>,
        syllable: usize,
        len: usize,
        out: &mut Vec<CriticalMatch>,
    ) {
        for inverse in [false, true] {
            for offset in cyclic_occurrences(pattern, &r.oriented(inverse)) {
                out.push(CriticalMatch {
                    syllable,
                    len,
                    relator: r.clone(),
                    inverse,
                    offset,
                });
            }
        }
    }

    /// True iff `sub` is a subword of some element of the symmetrized closure
    /// of relators with index at most `bound`.
    pub fn occurs_in_some_relator(&self, sub: &Word, bound: u64) -> Result<bool> {
        for i in 1..=bound {
            if let Some(r) = self.relator(i)? {
                if [false, true]
                    .iter()
                    .any(|&inv| !cyclic_occurrences(sub, &r.oriented(inv)).is_empty())
                {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Letter length of `len` syllables of `w` starting at syllable `start`, cyclically.
fn fragment_len(w: &Word, start: usize, len: usize) -> u64 {
    let s = w.syllables();
    (0..len).map(|k| s[(start + k) % s.len()].len()).sum()
}

#[cfg(test)]
pub(crate) mod tests;
