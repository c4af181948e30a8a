use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};

pub type Clause = [i64; 3];

/// Truth values for exactly the variables of an instance.
pub type Assignment = BTreeMap<u64, bool>;

/// Largest number of distinct variables the truth-table scan accepts.
pub const MAX_VARIABLES: usize = 20;

fn literal_key(z: i64) -> (bool, u64) {
    (z < 0, z.unsigned_abs())
}

/// `|z1| + |z2| + |z3|`
pub fn triple_index(t: &Clause) -> u64 {
    t.iter().map(|z| z.unsigned_abs()).sum()
}

/// Short-lex order on triples of nonzero integers: smaller index first, then
/// lexicographic with every positive value before every negative one
/// (positives ascending, then negatives by ascending magnitude).
pub fn shortlex_cmp(t1: &Clause, t2: &Clause) -> Result<Ordering> {
    if t1.contains(&0) || t2.contains(&0) {
        return Err(Error::ZeroInTriple);
    }
    Ok(cmp_unchecked(t1, t2))
}

fn cmp_unchecked(t1: &Clause, t2: &Clause) -> Ordering {
    triple_index(t1).cmp(&triple_index(t2)).then_with(|| {
        t1.iter()
            .map(|&z| literal_key(z))
            .cmp(t2.iter().map(|&z| literal_key(z)))
    })
}

fn cmp_instances(a: &[Clause], b: &[Clause]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match cmp_unchecked(x, y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// A 3-CNF instance with clauses kept in short-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SatInstance {
    clauses: Vec<Clause>,
}

impl PartialOrd for SatInstance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SatInstance {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_instances(&self.clauses, &other.clauses)
    }
}

impl SatInstance {
    /// Validates and sorts `clauses`. Repeated clauses are kept.
    pub fn new(mut clauses: Vec<Clause>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::InvalidArgument("an instance needs at least one clause".into()));
        }
        for c in &clauses {
            if c.contains(&0) {
                return Err(Error::ZeroInTriple);
            }
            for x in c {
                if c.contains(&-x) {
                    return Err(Error::InvalidArgument(format!(
                        "clause {c:?} contains a variable and its negation"
                    )));
                }
            }
        }
        clauses.sort_by(cmp_unchecked);
        Ok(SatInstance { clauses })
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn max_clause_index(&self) -> u64 {
        self.clauses.iter().map(triple_index).max().unwrap_or(0)
    }

    pub fn max_variable(&self) -> u64 {
        self.variables().last().copied().unwrap_or(0)
    }

    /// Distinct variable indices in increasing order.
    pub fn variables(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self
            .clauses
            .iter()
            .flat_map(|c| c.iter().map(|z| z.unsigned_abs()))
            .collect();
        set.into_iter().collect()
    }

    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&z| a.get(&z.unsigned_abs()).copied() == Some(z > 0))
        })
    }

    /// Inline notation, e.g. `(x1 | x3 | -x7) & (-x4 | x7 | x11)`.
    pub fn to_inline(&self) -> String {
        let lit = |z: i64| {
            if z < 0 {
                format!("-x{}", -z)
            } else {
                format!("x{z}")
            }
        };
        self.clauses
            .iter()
            .map(|c| format!("({} | {} | {})", lit(c[0]), lit(c[1]), lit(c[2])))
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

/// Every valid clause with index at most `n`, in short-lex order.
pub fn clauses_up_to(n: u64) -> Vec<Clause> {
    let mut out = Vec::new();
    let n = n as i64;
    for x in 1..=n {
        for y in 1..=n - x {
            for z in 1..=n - x - y {
                for signs in 0..8u8 {
                    let s = |bit: u8, v: i64| if signs >> bit & 1 == 1 { -v } else { v };
                    let c = [s(2, x), s(1, y), s(0, z)];
                    if c.iter().all(|v| !c.contains(&-v)) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out.sort_by(cmp_unchecked);
    out
}

/// Pairs `(m, n)` in Cantor diagonal order: by `m + n`, then by `m`.
pub fn diagonal_pairs(m_max: u64, n_max: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 2..=m_max + n_max {
        for m in 1..s {
            let n = s - m;
            if m <= m_max && n <= n_max {
                out.push((m, n));
            }
        }
    }
    out
}

fn multisets(pool: &[Clause], max_len: usize, from: usize, cur: &mut Vec<Clause>, out: &mut Vec<Vec<Clause>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    if cur.len() == max_len {
        return;
    }
    for k in from..pool.len() {
        cur.push(pool[k]);
        multisets(pool, max_len, k, cur, out);
        cur.pop();
    }
}

/// The enumeration prefix for pairs `(m, n)` with `m <= m_max`, `n <= n_max`.
///
/// Each pair contributes, in lexicographic order, the instances with at most
/// `m` clauses of index at most `n` that no earlier pair produced.
pub fn enumerate_instances(m_max: u64, n_max: u64) -> Vec<SatInstance> {
    let mut seen: HashSet<Vec<Clause>> = HashSet::new();
    let mut out = Vec::new();
    for (m, n) in diagonal_pairs(m_max, n_max) {
        let pool = clauses_up_to(n);
        let mut batch = Vec::new();
        multisets(&pool, m as usize, 0, &mut Vec::new(), &mut batch);
        batch.retain(|inst| !seen.contains(inst));
        batch.sort_by(|a, b| cmp_instances(a, b));
        for inst in batch {
            seen.insert(inst.clone());
            out.push(SatInstance { clauses: inst });
        }
    }
    out
}

/// First satisfying row of the truth table over the instance's variables.
/// Row 0 sets every variable false; the smallest variable is the most significant bit.
pub fn first_satisfying_assignment(eta: &SatInstance) -> Result<Option<Assignment>> {
    let vars = eta.variables();
    if vars.len() > MAX_VARIABLES {
        return Err(Error::TooManyVariables(vars.len()));
    }
    let k = vars.len();
    for row in 0u64..1 << k {
        let a: Assignment = vars
            .iter()
            .enumerate()
            .map(|(p, &v)| (v, row >> (k - 1 - p) & 1 == 1))
            .collect();
        if eta.satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
