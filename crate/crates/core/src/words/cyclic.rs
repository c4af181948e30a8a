use super::word::{Syllable, Word};

/// A cyclically reduced word whose first and last syllables are powers of
/// different generators (unless it is a single syllable).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    rep: Word,
}

impl CyclicWord {
    /// Wraps `w` after cyclic reduction, discarding the conjugator.
    pub fn new(w: &Word) -> Self {
        cyclically_reduce(w).1
    }

    pub fn word(&self) -> &Word {
        &self.rep
    }

    pub fn into_word(self) -> Word {
        self.rep
    }

    pub fn len(&self) -> u64 {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_identity()
    }

    /// Every letter-level cyclic permutation, one per starting letter.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.rep.len()).map(move |k| self.rep.rotate(k))
    }

    /// Rotation class identity: the least syllable rotation.
    pub fn canonical(&self) -> Word {
        let s = self.rep.syllables();
        (0..s.len().max(1))
            .map(|k| Word::from_syllables(s[k..].iter().chain(s[..k].iter()).copied()))
            .min()
            .unwrap_or_default()
    }
}

/// Returns `(c, core)` with `w = c · core · c^-1` freely and `core` cyclically
/// reduced with wrap-around syllables merged.
pub fn cyclically_reduce(w: &Word) -> (Word, CyclicWord) {
    let mut syl: std::collections::VecDeque<Syllable> = w.syllables().iter().copied().collect();
    let mut conj = Vec::new();
    while syl.len() >= 2 && syl.front().map(|s| s.gen) == syl.back().map(|s| s.gen) {
        let first = syl.pop_front().expect("nonempty");
        conj.push(first);
        let last = syl.back_mut().expect("nonempty");
        last.exp += first.exp;
        if last.exp == 0 {
            syl.pop_back();
        }
    }
    (
        Word::from_syllables(conj),
        CyclicWord {
            rep: Word::from_syllables(syl),
        },
    )
}

/// Rotations of `c`'s representative, one per letter.
pub fn rotations(c: &CyclicWord) -> Vec<Word> {
    c.rotations().collect()
}

/// A witness `t` with `t u t^-1 = v` in the free group, if one exists.
pub fn free_conjugate(u: &Word, v: &Word) -> Option<Word> {
    let (cu, cu_core) = cyclically_reduce(u);
    let (cv, cv_core) = cyclically_reduce(v);
    let (uu, vv) = (cu_core.word(), cv_core.word());
    if uu.len() != vv.len() || uu.num_syllables() != vv.num_syllables() {
        return None;
    }
    if uu.is_identity() {
        // t = cv cu^-1
        return Some(cv.mul(&cu.inverse()));
    }
    let s = uu.syllables();
    let n = s.len();
    for k in 0..n {
        if (0..n).all(|i| s[(k + i) % n] == vv.syllables()[i]) {
            // uu = P Q and vv = Q P = Q uu Q^-1
            let q = Word::from_syllables(s[k..].iter().copied());
            return Some(Word::product([&cv, &q, &cu.inverse()]));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(parts: &[(u32, i64)]) -> Word {
        Word::from_syllables(parts.iter().map(|&(g, e)| Syllable::new(g, e)))
    }

    #[test]
    fn single_conjugation_layer() {
        let (c, core) = cyclically_reduce(&w(&[(1, 1), (0, 3), (1, -1)]));
        assert_eq!(c, w(&[(1, 1)]));
        assert_eq!(core.word(), &w(&[(0, 3)]));
    }

    #[test]
    fn wrap_around_merge() {
        let x = w(&[(0, 2), (1, 1), (0, 3)]);
        let (c, core) = cyclically_reduce(&x);
        assert_eq!(c, w(&[(0, 2)]));
        assert_eq!(core.word(), &w(&[(1, 1), (0, 5)]));
        assert_eq!(core.word().conjugate_by(&c), x);
    }

    #[test]
    fn rotation_counts() {
        let ab = CyclicWord::new(&w(&[(0, 1), (1, 1)]));
        assert_eq!(rotations(&ab), vec![w(&[(0, 1), (1, 1)]), w(&[(1, 1), (0, 1)])]);
        let a2 = CyclicWord::new(&w(&[(0, 2)]));
        let r = rotations(&a2);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], r[1]);
    }

    #[test]
    fn free_conjugacy_examples() {
        let t = free_conjugate(&w(&[(0, 1), (1, 1)]), &w(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(w(&[(0, 1), (1, 1)]).conjugate_by(&t), w(&[(1, 1), (0, 1)]));
        assert_eq!(t, w(&[(1, 1)]));
        assert!(free_conjugate(&w(&[(0, 1)]), &w(&[(0, -1)])).is_none());
    }
}
