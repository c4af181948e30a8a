use serde::Serialize;

use crate::satenc::{Assignment, SatInstance};
use crate::words::{Alphabet, Syllable, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SegmentKind {
    ABlock,
    Conjugating,
    BBlock,
    InverseConjugating,
}

/// A labeled syllable range `[start, end)` of a relator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start: usize,
    pub end: usize,
}

/// Order and sign of the b-block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BShape {
    /// `b20^-a ... b1^-a`
    Descending,
    /// `b1^a ... b20^a`
    Ascending,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelatorParams {
    /// `a`: exponent of the a- and b-blocks, `c`: exponent of the c syllables,
    /// `t`: exponent of the d syllables.
    Machine { a: u64, c: u64, t: u64, shape: BShape },
    Sat {
        instance: SatInstance,
        assignment: Assignment,
    },
}

/// A base relator together with its block structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructuredRelator {
    /// Family index. For the 3-SAT family this is the position among the
    /// satisfiable instances of the enumeration, when known.
    pub index: Option<u64>,
    pub word: Word,
    pub segments: Vec<Segment>,
    pub params: RelatorParams,
}

impl StructuredRelator {
    pub fn segment(&self, kind: SegmentKind) -> Option<Segment> {
        self.segments.iter().copied().find(|s| s.kind == kind)
    }

    pub fn segment_word(&self, seg: Segment) -> Word {
        Word::from_syllables(self.word.syllables()[seg.start..seg.end].iter().copied())
    }

    /// The conjugating part (`c1^c d1^t c2^c d2^t c3^c d3^t` or `γ1 δ1 γ2 δ2 γ3`).
    pub fn conjugating_part(&self) -> Word {
        self.segment_word(self.segment(SegmentKind::Conjugating).expect("every relator has one"))
    }

    /// `r` or `r^-1`.
    pub fn oriented(&self, inverse: bool) -> Word {
        if inverse {
            self.word.inverse()
        } else {
            self.word.clone()
        }
    }

    /// The symmetrized-closure element starting `offset` letters into `r` or `r^-1`.
    pub fn element(&self, inverse: bool, offset: u64) -> Word {
        self.oriented(inverse).rotate(offset)
    }

    /// Number of distinct elements contributed to the symmetrized closure.
    pub fn closure_size(&self) -> u64 {
        2 * self.word.len()
    }
}

/// Assembles `a1^a..a20^a · c1^c d1^t c2^c d2^t c3^c d3^t · B · (conjugating part)^-1`.
pub fn machine_relator(
    alphabet: &Alphabet,
    index: u64,
    a: u64,
    c: u64,
    t: u64,
    shape: BShape,
) -> StructuredRelator {
    let (a, c, t) = (a as i64, c as i64, t as i64);
    let mut syl = Vec::with_capacity(52);
    for k in 1..=20 {
        syl.push(Syllable::new(alphabet.gen('a', k), a));
    }
    let conj: Vec<Syllable> = (1..=3)
        .flat_map(|l| {
            [
                Syllable::new(alphabet.gen('c', l), c),
                Syllable::new(alphabet.gen('d', l), t),
            ]
        })
        .collect();
    syl.extend(conj.iter().copied());
    match shape {
        BShape::Descending => {
            for k in (1..=20).rev() {
                syl.push(Syllable::new(alphabet.gen('b', k), -a));
            }
        }
        BShape::Ascending => {
            for k in 1..=20 {
                syl.push(Syllable::new(alphabet.gen('b', k), a));
            }
        }
    }
    syl.extend(conj.iter().rev().map(|s| s.inverse()));
    let word = Word::from_syllables(syl);
    debug_assert_eq!(word.num_syllables(), 52);
    StructuredRelator {
        index: Some(index),
        word,
        segments: vec![
            Segment { kind: SegmentKind::ABlock, start: 0, end: 20 },
            Segment { kind: SegmentKind::Conjugating, start: 20, end: 26 },
            Segment { kind: SegmentKind::BBlock, start: 26, end: 46 },
            Segment { kind: SegmentKind::InverseConjugating, start: 46, end: 52 },
        ],
        params: RelatorParams::Machine {
            a: a as u64,
            c: c as u64,
            t: t as u64,
            shape,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::cyclically_reduce;

    #[test]
    fn template_by_hand() {
        let al = Alphabet::machine_family();
        let r = machine_relator(&al, 1, 2, 1, 3, BShape::Descending);
        let mut text: Vec<String> = (1..=20).map(|k| format!("a{k}^2")).collect();
        text.extend(["c1", "d1^3", "c2", "d2^3", "c3", "d3^3"].map(String::from));
        text.extend((1..=20).rev().map(|k| format!("b{k}^-2")));
        text.extend(["d3^-3", "c3^-1", "d2^-3", "c2^-1", "d1^-3", "c1^-1"].map(String::from));
        assert_eq!(r.word, al.parse_word(&text.join(" ")).unwrap());
        assert_eq!(r.word.len(), 104);
        let (c, core) = cyclically_reduce(&r.word);
        assert!(c.is_identity());
        assert_eq!(core.word(), &r.word);
    }

    #[test]
    fn segments_tile() {
        let al = Alphabet::machine_family();
        let r = machine_relator(&al, 3, 6, 3, 9, BShape::Ascending);
        let mut at = 0;
        for s in &r.segments {
            assert_eq!(s.start, at);
            at = s.end;
        }
        assert_eq!(at, r.word.num_syllables());
        assert_eq!(r.segment_word(r.segments[3]), r.conjugating_part().inverse());
    }
}
