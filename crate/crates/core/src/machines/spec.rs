use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub type State = u32;

pub const BLANK: char = '_';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Right,
    Stay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub next: State,
    pub write: char,
    pub mv: Move,
    pub tape: usize,
}

/// Deterministic multi-tape Turing machine.
///
/// Tape 0 holds the unary input; the last tape is the output tape (tape 0 when
/// there is only one). Every transition reads and writes a single tape, and all
/// transitions leaving a state use the same tape. A state halts when it is a
/// declared halting state or has no transition for the scanned symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    tapes: usize,
    start: State,
    halting: BTreeSet<State>,
    names: Vec<String>,
    table: HashMap<(State, char), Transition>,
    reads: HashMap<State, usize>,
}

impl MachineSpec {
    pub fn new(tapes: usize, start: State, halting: BTreeSet<State>) -> Result<Self> {
        if tapes == 0 {
            return Err(Error::MachineValidation("at least one tape required".into()));
        }
        Ok(MachineSpec {
            tapes,
            start,
            halting,
            names: Vec::new(),
            table: HashMap::new(),
            reads: HashMap::new(),
        })
    }

    pub fn add_transition(&mut self, state: State, read: char, t: Transition) -> Result<()> {
        if t.tape >= self.tapes {
            return Err(Error::MachineValidation(format!(
                "tape {} out of range (machine has {})",
                t.tape, self.tapes
            )));
        }
        match self.reads.get(&state) {
            Some(&tape) if tape != t.tape => {
                return Err(Error::MachineValidation(format!(
                    "state {state} reads both tape {tape} and tape {}",
                    t.tape
                )))
            }
            _ => {}
        }
        if self.table.insert((state, read), t).is_some() {
            return Err(Error::MachineValidation(format!(
                "duplicate transition for state {state} on `{read}`"
            )));
        }
        self.reads.insert(state, t.tape);
        Ok(())
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn start(&self) -> State {
        self.start
    }

    pub fn output_tape(&self) -> usize {
        self.tapes - 1
    }

    pub fn is_halting(&self, s: State) -> bool {
        self.halting.contains(&s)
    }

    pub fn tape_read_by(&self, s: State) -> Option<usize> {
        self.reads.get(&s).copied()
    }

    pub fn transition(&self, s: State, sym: char) -> Option<&Transition> {
        self.table.get(&(s, sym))
    }

    pub fn transitions(&self) -> impl Iterator<Item = (&(State, char), &Transition)> {
        self.table.iter()
    }

    pub fn state_name(&self, s: State) -> String {
        self.names
            .get(s as usize)
            .cloned()
            .unwrap_or_else(|| format!("q{s}"))
    }

    /// Parses the plain-text table format:
    ///
    /// ```text
    /// # comment
    /// tapes 2
    /// start q0
    /// halt qh
    /// q0 1 -> q1 1 R 0
    /// ```
    ///
    /// The trailing tape id is optional and defaults to 0.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tapes = 1usize;
        let mut start: Option<String> = None;
        let mut halts: Vec<String> = Vec::new();
        let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "tapes" => {
                    tapes = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(line_no, 1, "expected `tapes <n>`"))?;
                }
                "start" => {
                    start = Some(
                        toks.get(1)
                            .ok_or_else(|| Error::parse(line_no, 1, "expected `start <state>`"))?
                            .to_string(),
                    )
                }
                "halt" | "accept" => halts.extend(toks[1..].iter().map(|s| s.to_string())),
                _ => rows.push((line_no, toks)),
            }
        }
        let start = start.ok_or_else(|| Error::MachineValidation("missing `start` line".into()))?;
        let mut names: Vec<String> = vec![start.clone()];
        let id = |name: &str, names: &mut Vec<String>| -> State {
            match names.iter().position(|n| n == name) {
                Some(p) => p as State,
                None => {
                    names.push(name.to_string());
                    (names.len() - 1) as State
                }
            }
        };
        let halting: BTreeSet<State> = halts.iter().map(|h| id(h, &mut names)).collect();
        let mut m = MachineSpec::new(tapes, 0, halting)?;
        for (line_no, toks) in rows {
            if !(toks.len() == 6 || toks.len() == 7) || toks[2] != "->" {
                return Err(Error::parse(
                    line_no,
                    1,
                    "expected `state symbol -> state' symbol' L|R|S [tape]`",
                ));
            }
            let sym = |s: &str, col: usize| -> Result<char> {
                let mut cs = s.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(Error::parse(line_no, col, format!("symbol `{s}` must be one character"))),
                }
            };
            let from = id(toks[0], &mut names);
            let read = sym(toks[1], 2)?;
            let next = id(toks[3], &mut names);
            let write = sym(toks[4], 5)?;
            let mv = match toks[5] {
                "L" => Move::Left,
                "R" => Move::Right,
                "S" => Move::Stay,
                other => return Err(Error::parse(line_no, 6, format!("bad move `{other}`"))),
            };
            let tape = match toks.get(6) {
                Some(t) => t
                    .parse()
                    .map_err(|_| Error::parse(line_no, 7, format!("bad tape id `{t}`")))?,
                None => 0,
            };
            m.add_transition(from, read, Transition { next, write, mv, tape })?;
        }
        m.names = names;
        Ok(m)
    }
}
