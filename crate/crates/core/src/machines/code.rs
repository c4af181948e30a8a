//! Canonical binary encoding of small two-tape machines.
//!
//! A code is a positive integer read most significant bit first. The leading
//! bit is always 1. The next two bits hold `w - 1`, the width of a state field
//! (`w` in 1..=4). The rest is a sequence of `2w + 5`-bit records:
//!
//! | field | bits | meaning |
//! |-------|------|---------|
//! | from  | `w`  | source state |
//! | read  | 1    | `0` blank, `1` the symbol `1` |
//! | to    | `w`  | target state |
//! | write | 1    | as `read` |
//! | move  | 2    | `00` L, `01` R, `10` S |
//! | tape  | 1    | `0` input tape, `1` output tape |
//!
//! State 0 starts. Decoding fails on a truncated record, an empty table, move
//! `11`, a repeated `(from, read)` pair or a state that reads two tapes.

use std::collections::BTreeSet;

use super::spec::{MachineSpec, Move, Transition, BLANK};

/// Number of bits in the binary expansion of `x` (0 for `x = 0`).
pub fn bit_len(x: u64) -> u32 {
    64 - x.leading_zeros()
}

fn bits_of(x: u64) -> Vec<bool> {
    let n = bit_len(x);
    (0..n).rev().map(|k| (x >> k) & 1 == 1).collect()
}

fn take(bits: &[bool], at: &mut usize, n: usize) -> u32 {
    let mut v = 0u32;
    for &b in &bits[*at..*at + n] {
        v = (v << 1) | b as u32;
    }
    *at += n;
    v
}

fn sym(bit: u32) -> char {
    if bit == 1 {
        '1'
    } else {
        BLANK
    }
}

/// Decodes `x`, or returns `None` when `x` is not a valid code.
pub fn decode(x: u64) -> Option<MachineSpec> {
    let bits = bits_of(x);
    if bits.len() < 3 {
        return None;
    }
    let mut at = 1;
    let w = take(&bits, &mut at, 2) as usize + 1;
    let rec = 2 * w + 5;
    let rest = bits.len() - at;
    if rest == 0 || !rest.is_multiple_of(rec) {
        return None;
    }
    let mut m = MachineSpec::new(2, 0, BTreeSet::new()).ok()?;
    while at < bits.len() {
        let from = take(&bits, &mut at, w);
        let read = sym(take(&bits, &mut at, 1));
        let next = take(&bits, &mut at, w);
        let write = sym(take(&bits, &mut at, 1));
        let mv = match take(&bits, &mut at, 2) {
            0 => Move::Left,
            1 => Move::Right,
            2 => Move::Stay,
            _ => return None,
        };
        let tape = take(&bits, &mut at, 1) as usize;
        m.add_transition(from, read, Transition { next, write, mv, tape })
            .ok()?;
    }
    Some(m)
}

/// One row of a machine table in code form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeRow {
    pub from: u32,
    pub read: bool,
    pub to: u32,
    pub write: bool,
    pub mv: Move,
    pub tape: u8,
}

/// Encodes `rows` with state width `w`. Returns `None` if a field overflows,
/// `w` is outside 1..=4 or the code does not fit in 63 bits.
pub fn encode(w: u32, rows: &[CodeRow]) -> Option<u64> {
    if !(1..=4).contains(&w) || rows.is_empty() {
        return None;
    }
    let total = 3 + rows.len() as u32 * (2 * w + 5);
    if total > 63 {
        return None;
    }
    let mut x: u64 = 1;
    let mut push = |v: u64, n: u32| {
        x = (x << n) | v;
    };
    push((w - 1) as u64, 2);
    for r in rows {
        if r.from >= 1 << w || r.to >= 1 << w || r.tape > 1 {
            return None;
        }
        push(r.from as u64, w);
        push(r.read as u64, 1);
        push(r.to as u64, w);
        push(r.write as u64, 1);
        push(
            match r.mv {
                Move::Left => 0,
                Move::Right => 1,
                Move::Stay => 2,
            },
            2,
        );
        push(r.tape as u64, 1);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::sim::{run, RunStatus};

    #[test]
    fn short_and_ragged_codes_are_invalid() {
        for x in 1..8 {
            assert!(decode(x).is_none(), "{x}");
        }
        assert!(decode(0b100_0000).is_none());
    }

    #[test]
    fn round_trip() {
        let row = CodeRow {
            from: 0,
            read: false,
            to: 1,
            write: true,
            mv: Move::Stay,
            tape: 1,
        };
        let x = encode(1, &[row]).unwrap();
        assert_eq!(x, 0b100_0011101);
        let m = decode(x).unwrap();
        let out = run(&m, x, 100);
        assert_eq!(out.status, RunStatus::Halted);
        assert_eq!(out.output, Some(1));
    }

    #[test]
    fn move_11_is_invalid() {
        // from 0, read 0, to 0, write 0, move 11, tape 0
        assert!(decode(0b100_0000110).is_none());
    }
}
