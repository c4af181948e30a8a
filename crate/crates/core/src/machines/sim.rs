use super::spec::{MachineSpec, Move, BLANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RunStatus {
    Halted,
    StepBudgetExceeded,
}

/// Result of a step-counted run. `output` is present only when the machine halted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub output: Option<u64>,
    pub steps: u64,
}

struct Tape {
    cells: Vec<char>,
    origin: usize,
    head: i64,
}

impl Tape {
    fn new(init: impl IntoIterator<Item = char>) -> Self {
        Tape {
            cells: init.into_iter().collect(),
            origin: 0,
            head: 0,
        }
    }

    fn index(&mut self) -> usize {
        let mut idx = self.head + self.origin as i64;
        if idx < 0 {
            let grow = (-idx) as usize + 16;
            let mut cells = vec![BLANK; grow];
            cells.append(&mut self.cells);
            self.cells = cells;
            self.origin += grow;
            idx += grow as i64;
        }
        let idx = idx as usize;
        if idx >= self.cells.len() {
            self.cells.resize(idx + 16, BLANK);
        }
        idx
    }

    fn read(&mut self) -> char {
        let i = self.index();
        self.cells[i]
    }

    fn write(&mut self, c: char) {
        let i = self.index();
        self.cells[i] = c;
    }

    fn count(&self, c: char) -> u64 {
        self.cells.iter().filter(|&&x| x == c).count() as u64
    }
}

/// Simulates `m` on unary `input` for at most `budget` transitions.
pub fn run(m: &MachineSpec, input: u64, budget: u64) -> RunOutcome {
    let mut tapes: Vec<Tape> = (0..m.tapes())
        .map(|k| {
            if k == 0 {
                Tape::new(std::iter::repeat_n('1', input as usize))
            } else {
                Tape::new(std::iter::empty())
            }
        })
        .collect();
    let mut state = m.start();
    let mut steps = 0u64;
    loop {
        if m.is_halting(state) {
            break;
        }
        let Some(k) = m.tape_read_by(state) else { break };
        let sym = tapes[k].read();
        let Some(t) = m.transition(state, sym) else { break };
        if steps == budget {
            return RunOutcome {
                status: RunStatus::StepBudgetExceeded,
                output: None,
                steps,
            };
        }
        let tape = &mut tapes[t.tape];
        tape.write(t.write);
        match t.mv {
            Move::Left => tape.head -= 1,
            Move::Right => tape.head += 1,
            Move::Stay => {}
        }
        state = t.next;
        steps += 1;
    }
    RunOutcome {
        status: RunStatus::Halted,
        output: Some(tapes[m.output_tape()].count('1')),
        steps,
    }
}
