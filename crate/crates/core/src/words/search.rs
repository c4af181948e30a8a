use super::word::Word;

/// Letter offsets `o` such that `pattern` equals the `|pattern|` letters of the
/// cyclic word `text` starting at `o`. Patterns longer than `text` never match.
pub fn cyclic_occurrences(pattern: &Word, text: &Word) -> Vec<u64> {
    occurrences(pattern, text, true)
}

/// Letter offsets at which `pattern` occurs in the linear word `text`.
pub fn linear_occurrences(pattern: &Word, text: &Word) -> Vec<u64> {
    occurrences(pattern, text, false)
}

fn occurrences(pattern: &Word, text: &Word, cyclic: bool) -> Vec<u64> {
    let p = pattern.syllables();
    let t = text.syllables();
    let mut out = Vec::new();
    if p.is_empty() || pattern.len() > text.len() {
        return out;
    }
    let n = t.len();
    let same = |a: &super::Syllable, b: &super::Syllable| a.gen == b.gen && (a.exp > 0) == (b.exp > 0);
    if cyclic && n > 1 && same(&t[0], &t[n - 1]) {
        // move the seam off the split run, then shift offsets back
        let shift = t[0].len();
        let total = text.len();
        let mut v: Vec<u64> = occurrences(pattern, &text.rotate(shift), true)
            .into_iter()
            .map(|o| (o + shift) % total)
            .collect();
        v.sort_unstable();
        return v;
    }
    let mut starts = Vec::with_capacity(n + 1);
    let mut acc = 0u64;
    for s in t {
        starts.push(acc);
        acc += s.len();
    }
    if p.len() == 1 {
        for (k, s) in t.iter().enumerate() {
            if same(s, &p[0]) && s.len() >= p[0].len() {
                out.extend((0..=s.len() - p[0].len()).map(|d| starts[k] + d));
            }
        }
        out.sort_unstable();
        return out;
    }
    let k = p.len();
    let last = k - 1;
    let limit = if cyclic { n } else { n.saturating_sub(k - 1) };
    for s in 0..limit {
        let at = |i: usize| &t[(s + i) % n];
        if !cyclic && s + last >= n {
            break;
        }
        let first = at(0);
        if !same(first, &p[0]) || first.len() < p[0].len() {
            continue;
        }
        if (1..last).any(|i| *at(i) != p[i]) {
            continue;
        }
        let end = at(last);
        if !same(end, &p[last]) || end.len() < p[last].len() {
            continue;
        }
        let off = starts[s] + first.len() - p[0].len();
        out.push(off);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn brute(p: &Word, t: &Word, cyclic: bool) -> Vec<u64> {
        let pl: Vec<_> = p.letters().collect();
        let tl: Vec<_> = t.letters().collect();
        let n = tl.len();
        if pl.is_empty() || pl.len() > n {
            return vec![];
        }
        let range = if cyclic { n } else { n - pl.len() + 1 };
        (0..range)
            .filter(|&o| (0..pl.len()).all(|i| tl[(o + i) % n] == pl[i]))
            .map(|o| o as u64)
            .collect()
    }

    #[test]
    fn agrees_with_letters() {
        let al = Alphabet::machine_family();
        let texts = ["a1^3 b1 a1^-2 c1^2 a1", "a1^2 b1^2 a1^2 b1^2", "a1 b1 a1^4"];
        let pats = ["a1", "a1^2", "a1^3", "a1 b1", "b1 a1^-2 c1", "a1 a1 b1", "b1^2 a1^2 b1", "a1^2 b1^2 a1^2 b1^2", "c1 a1^4"];
        for t in texts {
            let t = al.parse_word(t).unwrap();
            for p in pats {
                let p = al.parse_word(p).unwrap();
                assert_eq!(cyclic_occurrences(&p, &t), brute(&p, &t, true), "{p:?} in {t:?}");
                assert_eq!(linear_occurrences(&p, &t), brute(&p, &t, false), "{p:?} in {t:?}");
            }
        }
    }
}
