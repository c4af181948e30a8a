use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::code::{bit_len, decode};
use super::sim::{run, RunStatus};
use super::spec::MachineSpec;
use crate::error::{Error, Result};

/// `f(n) = coef * n^power`, the time-constructible bound driving the diagonal families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetFn {
    pub coef: u64,
    pub power: u32,
}

impl Default for BudgetFn {
    fn default() -> Self {
        BudgetFn { coef: 1, power: 1 }
    }
}

impl BudgetFn {
    pub fn eval(&self, n: u64) -> u128 {
        (n as u128)
            .checked_pow(self.power)
            .and_then(|p| p.checked_mul(self.coef as u128))
            .unwrap_or(u128::MAX)
    }

    /// `floor(f(n)^1.5)`, saturating.
    pub fn eval_three_halves(&self, n: u64) -> u128 {
        let f = self.eval(n);
        match f.checked_mul(f).and_then(|s| s.checked_mul(f)) {
            Some(cube) => cube.isqrt(),
            None => u128::MAX,
        }
    }
}

#[derive(Clone, Debug)]
pub enum FamilyKind {
    /// A machine computing an injective `f` in unary. With `monotone` set, `f`
    /// is assumed strictly increasing, which lets a preimage search stop early.
    CeBijection { machine: MachineSpec, monotone: bool },
    /// Diagonal machine over codes `x`, simulating for `floor(f(x)^1.5)` steps.
    TimeHierarchy { f: BudgetFn },
    /// Diagonal machine over codes `i`, simulating for `f(40 i)` steps.
    HalfConjugacy { f: BudgetFn },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest number of simulated steps any single evaluation may use.
    pub step_ceiling: u64,
    /// Largest index visited by searches over the family.
    pub index_search_limit: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            step_ceiling: 100_000_000,
            index_search_limit: 64,
        }
    }
}

/// Cached result for one index. `value` is `f(i)` for a bijection family and
/// 1/0 for membership in the diagonal families. `steps` is the step count `t_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Eval {
    pub value: u64,
    pub steps: u64,
}

/// Outcome of searching for `i` with `f(i) = j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preimage {
    Found(u64),
    Absent,
    Undetermined,
}

/// Family function with memoized evaluations and call counters.
///
/// `evaluate` and the typed wrappers are membership evaluations. `validate`
/// is a bounded replay of a claimed `(value, steps)` pair and is counted separately.
#[derive(Debug)]
pub struct FamilyFunctionSpec {
    kind: FamilyKind,
    limits: Limits,
    cache: RwLock<HashMap<u64, Eval>>,
    image: RwLock<HashMap<u64, u64>>,
    evaluations: AtomicU64,
    validations: AtomicU64,
}

impl Clone for FamilyFunctionSpec {
    fn clone(&self) -> Self {
        FamilyFunctionSpec {
            kind: self.kind.clone(),
            limits: self.limits,
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
            image: RwLock::new(self.image.read().expect("image lock").clone()),
            evaluations: AtomicU64::new(0),
            validations: AtomicU64::new(0),
        }
    }
}

struct DiagRun {
    member: bool,
    steps: u64,
}

impl FamilyFunctionSpec {
    pub fn new(kind: FamilyKind, limits: Limits) -> Self {
        FamilyFunctionSpec {
            kind,
            limits,
            cache: RwLock::new(HashMap::new()),
            image: RwLock::new(HashMap::new()),
            evaluations: AtomicU64::new(0),
            validations: AtomicU64::new(0),
        }
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn membership_evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn bounded_validations(&self) -> u64 {
        self.validations.load(Ordering::Relaxed)
    }

    pub fn reset_counters(&self) {
        self.evaluations.store(0, Ordering::Relaxed);
        self.validations.store(0, Ordering::Relaxed);
    }

    /// Evaluates index `i`, consulting and filling the cache.
    pub fn evaluate(&self, i: u64) -> Result<Eval> {
        if i == 0 {
            return Err(Error::InvalidArgument("family indices start at 1".into()));
        }
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        if let Some(e) = self.cache.read().expect("cache lock").get(&i) {
            return Ok(*e);
        }
        let e = self.compute(i)?;
        if let FamilyKind::CeBijection { .. } = self.kind {
            let mut image = self.image.write().expect("image lock");
            match image.get(&e.value) {
                Some(&other) if other != i => {
                    return Err(Error::FamilyEvaluation(format!(
                        "f is not injective: f({other}) = f({i}) = {}",
                        e.value
                    )))
                }
                _ => {
                    image.insert(e.value, i);
                }
            }
        }
        self.cache.write().expect("cache lock").insert(i, e);
        Ok(e)
    }

    fn compute(&self, i: u64) -> Result<Eval> {
        let ceiling = self.limits.step_ceiling;
        match &self.kind {
            FamilyKind::CeBijection { machine, .. } => {
                let out = run(machine, i, ceiling);
                match (out.status, out.output) {
                    (RunStatus::Halted, Some(j)) if j >= 1 && out.steps >= 1 => Ok(Eval {
                        value: j,
                        steps: out.steps,
                    }),
                    (RunStatus::Halted, _) => Err(Error::FamilyEvaluation(format!(
                        "machine produced no positive output on input {i}"
                    ))),
                    (RunStatus::StepBudgetExceeded, _) => Err(Error::FamilyEvaluation(format!(
                        "machine did not halt within {ceiling} steps on input {i}"
                    ))),
                }
            }
            FamilyKind::TimeHierarchy { f } => {
                let budget = f.eval_three_halves(i);
                self.diag_checked(i, budget)
            }
            FamilyKind::HalfConjugacy { f } => {
                let budget = f.eval(i.saturating_mul(40));
                self.diag_checked(i, budget)
            }
        }
    }

    fn diag_checked(&self, x: u64, budget: u128) -> Result<Eval> {
        let ceiling = self.limits.step_ceiling;
        let cap = budget.min(ceiling as u128) as u64;
        let r = diag_run(x, cap);
        if r.is_none() && budget > ceiling as u128 {
            return Err(Error::FamilyEvaluation(format!(
                "diagonal simulation of {x} reached the step ceiling {ceiling}"
            )));
        }
        let r = r.unwrap_or_else(|| diag_exhausted(x, cap));
        Ok(Eval {
            value: r.member as u64,
            steps: r.steps,
        })
    }

    /// `(f(i), t_i)` for a bijection family.
    pub fn bijection_eval(&self, i: u64) -> Result<(u64, u64)> {
        match self.kind {
            FamilyKind::CeBijection { .. } => self.evaluate(i).map(|e| (e.value, e.steps)),
            _ => Err(Error::InvalidArgument("not a bijection family".into())),
        }
    }

    /// `(x in L_f, t_x)` for the time-hierarchy family.
    pub fn diagonal_membership(&self, x: u64) -> Result<(bool, u64)> {
        match self.kind {
            FamilyKind::TimeHierarchy { .. } => self.evaluate(x).map(|e| (e.value == 1, e.steps)),
            _ => Err(Error::InvalidArgument("not a time-hierarchy family".into())),
        }
    }

    /// `(i in L_g, t_i)` for the half-conjugacy family.
    pub fn halfconj_membership(&self, i: u64) -> Result<(bool, u64)> {
        match self.kind {
            FamilyKind::HalfConjugacy { .. } => self.evaluate(i).map(|e| (e.value == 1, e.steps)),
            _ => Err(Error::InvalidArgument("not a half-conjugacy family".into())),
        }
    }

    /// Replays index `i` for exactly `steps` steps and checks that the run
    /// yields `value` in exactly that many steps. Never consults the cache.
    pub fn validate(&self, i: u64, value: u64, steps: u64) -> bool {
        self.validations.fetch_add(1, Ordering::Relaxed);
        if i == 0 || steps > self.limits.step_ceiling.saturating_mul(4) {
            return false;
        }
        match &self.kind {
            FamilyKind::CeBijection { machine, .. } => {
                let out = run(machine, i, steps);
                out.status == RunStatus::Halted && out.steps == steps && out.output == Some(value)
            }
            FamilyKind::TimeHierarchy { f } => {
                validate_diag(i, value, steps, f.eval_three_halves(i))
            }
            FamilyKind::HalfConjugacy { f } => {
                validate_diag(i, value, steps, f.eval(i.saturating_mul(40)))
            }
        }
    }

    /// Runs index `i` for at most `steps` steps and returns the value it
    /// produces in exactly that many steps, if any. Counted as a validation.
    pub fn replay(&self, i: u64, steps: u64) -> Option<u64> {
        self.validations.fetch_add(1, Ordering::Relaxed);
        if i == 0 || steps > self.limits.step_ceiling.saturating_mul(4) {
            return None;
        }
        match &self.kind {
            FamilyKind::CeBijection { machine, .. } => {
                let out = run(machine, i, steps);
                (out.status == RunStatus::Halted && out.steps == steps)
                    .then_some(out.output)
                    .flatten()
            }
            FamilyKind::TimeHierarchy { f } => {
                let b = f.eval_three_halves(i);
                [1, 0].into_iter().find(|&v| validate_diag(i, v, steps, b))
            }
            FamilyKind::HalfConjugacy { f } => {
                let b = f.eval(i.saturating_mul(40));
                [1, 0].into_iter().find(|&v| validate_diag(i, v, steps, b))
            }
        }
    }

    /// Searches `1..=index_search_limit` for `i` with `f(i) = j`.
    pub fn preimage(&self, j: u64) -> Result<Preimage> {
        let monotone = match self.kind {
            FamilyKind::CeBijection { monotone, .. } => monotone,
            _ => return Err(Error::InvalidArgument("not a bijection family".into())),
        };
        if let Some(&i) = self.image.read().expect("image lock").get(&j) {
            self.evaluations.fetch_add(1, Ordering::Relaxed);
            return Ok(Preimage::Found(i));
        }
        for i in 1..=self.limits.index_search_limit {
            let e = self.evaluate(i)?;
            if e.value == j {
                return Ok(Preimage::Found(i));
            }
            if monotone && e.value > j {
                return Ok(Preimage::Absent);
            }
        }
        Ok(Preimage::Undetermined)
    }

    /// Indices `i <= index_search_limit` whose evaluation takes exactly `t` steps.
    pub fn indices_with_time(&self, t: u64) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        for i in 1..=self.limits.index_search_limit {
            if self.evaluate(i)?.steps == t {
                out.push(i);
            }
        }
        Ok(out)
    }
}

/// Runs the diagonal machine on `x`, simulating the decoded machine for at
/// most `budget` steps. Total cost: code length, plus each simulated step,
/// plus one budget check before every attempted step. `None` means the
/// simulation was cut off at `budget`; callers decide what that means.
fn diag_run(x: u64, budget: u64) -> Option<DiagRun> {
    let bits = bit_len(x) as u64;
    let Some(m) = decode(x) else {
        return Some(DiagRun {
            member: true,
            steps: bits,
        });
    };
    let out = run(&m, x, budget);
    match out.status {
        RunStatus::Halted => Some(DiagRun {
            member: out.output != Some(1),
            steps: bits + 2 * out.steps + 1,
        }),
        RunStatus::StepBudgetExceeded => None,
    }
}

fn diag_exhausted(x: u64, budget: u64) -> DiagRun {
    DiagRun {
        member: true,
        steps: bit_len(x) as u64 + 2 * budget + 1,
    }
}

fn validate_diag(x: u64, value: u64, steps: u64, budget: u128) -> bool {
    let bits = bit_len(x) as u64;
    let Some(m) = decode(x) else {
        return value == 1 && steps == bits;
    };
    if steps < bits + 1 || !(steps - bits - 1).is_multiple_of(2) {
        return false;
    }
    let s = (steps - bits - 1) / 2;
    if s as u128 > budget {
        return false;
    }
    let out = run(&m, x, s);
    match out.status {
        RunStatus::Halted => out.steps == s && value == (out.output != Some(1)) as u64,
        RunStatus::StepBudgetExceeded => s as u128 == budget && value == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::code::{encode, CodeRow};
    use crate::machines::spec::Move;

    const DOUBLER: &str = "tapes 2\nstart q0\nq0 1 -> q1 1 R 0\nq1 _ -> q2 1 R 1\nq2 _ -> q0 1 R 1\n";

    fn doubling() -> FamilyFunctionSpec {
        FamilyFunctionSpec::new(
            FamilyKind::CeBijection {
                machine: MachineSpec::parse(DOUBLER).unwrap(),
                monotone: true,
            },
            Limits::default(),
        )
    }

    fn outputs_one() -> u64 {
        encode(
            1,
            &[CodeRow {
                from: 0,
                read: false,
                to: 1,
                write: true,
                mv: Move::Stay,
                tape: 1,
            }],
        )
        .unwrap()
    }

    fn loops() -> u64 {
        encode(
            1,
            &[CodeRow {
                from: 0,
                read: false,
                to: 0,
                write: false,
                mv: Move::Stay,
                tape: 1,
            }],
        )
        .unwrap()
    }

    #[test]
    fn bijection_values() {
        let f = doubling();
        assert_eq!(f.bijection_eval(1).unwrap(), (2, 3));
        assert_eq!(f.bijection_eval(5).unwrap(), (10, 15));
        assert_eq!(f.bijection_eval(5).unwrap(), (10, 15));
        assert!(f.validate(5, 10, 15));
        assert!(!f.validate(5, 10, 16));
        assert!(!f.validate(5, 11, 15));
    }

    #[test]
    fn preimage_search() {
        let f = doubling();
        assert_eq!(f.preimage(8).unwrap(), Preimage::Found(4));
        assert_eq!(f.preimage(7).unwrap(), Preimage::Absent);
    }

    #[test]
    fn diagonal_branches() {
        let f = FamilyFunctionSpec::new(FamilyKind::TimeHierarchy { f: BudgetFn::default() }, Limits::default());
        assert!(f.diagonal_membership(5).unwrap().0);
        assert!(!f.diagonal_membership(outputs_one()).unwrap().0);
        assert!(f.diagonal_membership(loops()).unwrap().0);
        for x in [5, outputs_one(), loops(), 1000] {
            let (m, t) = f.diagonal_membership(x).unwrap();
            assert!(f.validate(x, m as u64, t), "{x}");
            assert!(!f.validate(x, m as u64, t + 2), "{x}");
        }
    }

    #[test]
    fn halfconj_branches() {
        let f = FamilyFunctionSpec::new(FamilyKind::HalfConjugacy { f: BudgetFn::default() }, Limits::default());
        assert!(f.halfconj_membership(6).unwrap().0);
        assert!(!f.halfconj_membership(outputs_one()).unwrap().0);
        assert_eq!(f.halfconj_membership(loops()).unwrap(), f.halfconj_membership(loops()).unwrap());
    }

    #[test]
    fn ceiling_is_an_error() {
        let f = FamilyFunctionSpec::new(
            FamilyKind::TimeHierarchy { f: BudgetFn { coef: 1, power: 3 } },
            Limits {
                step_ceiling: 50,
                index_search_limit: 4,
            },
        );
        assert!(f.diagonal_membership(loops()).is_err());
    }

    #[test]
    fn non_injective_rejected() {
        // erases the input and writes a single 1
        let m = MachineSpec::parse("start q0\nq0 1 -> q0 _ R\nq0 _ -> q1 1 S\n").unwrap();
        let f = FamilyFunctionSpec::new(
            FamilyKind::CeBijection {
                machine: m,
                monotone: false,
            },
            Limits::default(),
        );
        assert_eq!(f.bijection_eval(1).unwrap().0, 1);
        assert!(matches!(f.bijection_eval(2), Err(Error::FamilyEvaluation(_))));
    }
}
