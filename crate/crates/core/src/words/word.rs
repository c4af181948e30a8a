use std::fmt;

use super::alphabet::GenId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: GenId,
    pub exp: i64,
}

impl Syllable {
    pub fn new(gen: GenId, exp: i64) -> Self {
        Syllable { gen, exp }
    }

    pub fn letter(&self) -> Letter {
        Letter {
            gen: self.gen,
            inv: self.exp < 0,
        }
    }

    // exponents are nonzero, so a syllable is never empty
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.exp.unsigned_abs()
    }

    pub fn inverse(self) -> Self {
        Syllable {
            gen: self.gen,
            exp: -self.exp,
        }
    }
}

/// A single generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    fn signed(self, n: u64) -> i64 {
        if self.inv {
            -(n as i64)
        } else {
            n as i64
        }
    }
}

/// Freely reduced word in syllable (exponent normal) form.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syl: Vec<Syllable>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syl.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syl
            .iter()
            .map(|s| format!("g{}^{}", s.gen, s.exp))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word { syl: Vec::new() }
    }

    pub fn gen_power(gen: GenId, exp: i64) -> Self {
        Word::from_syllables([Syllable::new(gen, exp)])
    }

    /// Stack-based free reduction with syllable merging.
    pub fn from_syllables(raw: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            if s.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == s.gen => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s),
            }
        }
        Word { syl: out }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word::from_syllables(letters.into_iter().map(|l| Syllable::new(l.gen, l.signed(1))))
    }

    pub(crate) fn from_runs(runs: impl IntoIterator<Item = (Letter, u64)>) -> Self {
        Word::from_syllables(runs.into_iter().map(|(l, n)| Syllable::new(l.gen, l.signed(n))))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syl
    }

    pub fn num_syllables(&self) -> usize {
        self.syl.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syl.is_empty()
    }

    /// Number of letters in the fully written-out word.
    pub fn len(&self) -> u64 {
        self.syl.iter().map(Syllable::len).sum()
    }

    /// Exact unary length, wide enough for any syllable list.
    pub fn unary_len(&self) -> u128 {
        self.syl.iter().map(|s| s.len() as u128).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syl.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syl: self
                .syl
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_syllables(self.syl.iter().chain(other.syl.iter()).copied())
    }

    pub fn product<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word::from_syllables(parts.into_iter().flat_map(|w| w.syl.iter().copied()))
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        Word::from_syllables(
            std::iter::repeat_n(base.syl.iter().copied(), n.unsigned_abs() as usize)
                .flatten(),
        )
    }

    /// `t w t^-1`
    pub fn conjugate_by(&self, t: &Word) -> Word {
        Word::product([t, self, &t.inverse()])
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.syl
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.letter(), s.len() as usize))
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.syl.first().map(Syllable::letter)
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.syl.last().map(Syllable::letter)
    }

    /// Symbol count of the decimal exponent normal form: one symbol per generator,
    /// one per digit, one per minus sign.
    pub fn exponent_length(&self) -> u64 {
        self.syl
            .iter()
            .map(|s| {
                let digits = s.exp.unsigned_abs().to_string().len() as u64;
                1 + digits + u64::from(s.exp < 0)
            })
            .sum()
    }

    /// Exponent-sum vector over `n` generators.
    pub fn abelian_image(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for s in &self.syl {
            v[s.gen as usize] += s.exp;
        }
        v
    }

    /// True when the word is a single syllable.
    pub fn is_generator_power(&self) -> bool {
        self.syl.len() == 1
    }

    /// Letters `[from, to)` of the linear word.
    pub fn slice(&self, from: u64, to: u64) -> Word {
        let to = to.min(self.len());
        if from >= to {
            return Word::identity();
        }
        Word::from_runs(self.runs_from(from, to - from, false))
    }

    /// Letters `[from, from+len)` read cyclically.
    pub fn cyclic_slice(&self, from: u64, len: u64) -> Word {
        if self.is_identity() || len == 0 {
            return Word::identity();
        }
        let n = self.len();
        Word::from_runs(self.runs_from(from % n, len, true))
    }

    /// Cyclic permutation starting at letter `k`.
    pub fn rotate(&self, k: u64) -> Word {
        if self.is_identity() {
            return Word::identity();
        }
        let n = self.len();
        self.cyclic_slice(k % n, n)
    }

    pub fn letter_at(&self, pos: u64) -> Letter {
        let mut p = pos;
        for s in &self.syl {
            if p < s.len() {
                return s.letter();
            }
            p -= s.len();
        }
        panic!("letter position {pos} out of range");
    }

    /// Syllable index and offset inside it for letter position `pos` (`pos < len`).
    pub fn locate(&self, pos: u64) -> (usize, u64) {
        let mut p = pos;
        for (i, s) in self.syl.iter().enumerate() {
            if p < s.len() {
                return (i, p);
            }
            p -= s.len();
        }
        panic!("letter position {pos} out of range");
    }

    /// Runs of equal letters reading forward from `pos`, at most `limit` letters.
    pub fn runs_from(&self, pos: u64, limit: u64, cyclic: bool) -> Runs<'_> {
        Runs::new(self, pos, limit, cyclic, false)
    }

    /// Runs of equal letters reading backward from just before `pos`.
    pub fn runs_before(&self, pos: u64, limit: u64, cyclic: bool) -> Runs<'_> {
        Runs::new(self, pos, limit, cyclic, true)
    }

    /// Letter positions where syllables start.
    pub fn syllable_starts(&self) -> Vec<u64> {
        let mut acc = 0;
        self.syl
            .iter()
            .map(|s| {
                let p = acc;
                acc += s.len();
                p
            })
            .collect()
    }
}

/// Iterator of maximal letter runs over a syllable word, optionally cyclic and/or backward.
pub struct Runs<'a> {
    syl: &'a [Syllable],
    idx: usize,
    avail: u64,
    remaining: u64,
    cyclic: bool,
    backward: bool,
}

impl<'a> Runs<'a> {
    fn new(w: &'a Word, pos: u64, limit: u64, cyclic: bool, backward: bool) -> Self {
        let n = w.len();
        let syl = w.syllables();
        if syl.is_empty() {
            return Runs {
                syl,
                idx: 0,
                avail: 0,
                remaining: 0,
                cyclic,
                backward,
            };
        }
        let remaining = if cyclic {
            limit
        } else if backward {
            limit.min(pos)
        } else {
            limit.min(n.saturating_sub(pos))
        };
        if remaining == 0 {
            return Runs {
                syl,
                idx: 0,
                avail: 0,
                remaining: 0,
                cyclic,
                backward,
            };
        }
        let (idx, avail) = if backward {
            // letter pos-1 (cyclically)
            let p = if pos == 0 { n - 1 } else { (pos - 1) % n };
            let (i, off) = w.locate(p);
            (i, off + 1)
        } else {
            let (i, off) = w.locate(pos % n);
            (i, syl[i].len() - off)
        };
        Runs {
            syl,
            idx,
            avail,
            remaining,
            cyclic,
            backward,
        }
    }

    fn advance(&mut self) -> bool {
        if self.backward {
            if self.idx == 0 {
                if !self.cyclic {
                    return false;
                }
                self.idx = self.syl.len() - 1;
            } else {
                self.idx -= 1;
            }
        } else {
            self.idx += 1;
            if self.idx == self.syl.len() {
                if !self.cyclic {
                    return false;
                }
                self.idx = 0;
            }
        }
        self.avail = self.syl[self.idx].len();
        true
    }
}

impl Iterator for Runs<'_> {
    type Item = (Letter, u64);

    fn next(&mut self) -> Option<(Letter, u64)> {
        if self.remaining == 0 || self.avail == 0 {
            return None;
        }
        let letter = self.syl[self.idx].letter();
        let mut count = 0u64;
        loop {
            let take = self.avail.min(self.remaining - count);
            count += take;
            self.avail -= take;
            if count == self.remaining {
                break;
            }
            if self.avail == 0 {
                if !self.advance() {
                    break;
                }
                if self.syl[self.idx].letter() != letter {
                    break;
                }
            }
        }
        self.remaining -= count;
        Some((letter, count))
    }
}

/// Length of the longest common prefix of two run streams.
pub fn lcp<'a, 'b>(a: impl Iterator<Item = (Letter, u64)> + 'a, b: impl Iterator<Item = (Letter, u64)> + 'b) -> u64 {
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut total = 0;
    loop {
        let (Some(&(la, na)), Some(&(lb, nb))) = (a.peek(), b.peek()) else {
            return total;
        };
        if la != lb {
            return total;
        }
        let m = na.min(nb);
        total += m;
        a.next();
        b.next();
        if na != nb {
            // runs are maximal, so the longer run's next letter cannot match
            return total;
        }
    }
}
