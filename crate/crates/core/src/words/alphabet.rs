use std::collections::HashMap;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

use super::word::{Syllable, Word};

pub type GenId = u32;

/// A generator's family letter (`a`, `b`, ..., `z`) and subscript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenClass {
    pub letter: char,
    pub sub: u32,
}

/// A generator tagged with the alphabet it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenRef {
    pub alphabet: u64,
    pub index: GenId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    id: u64,
    names: Vec<String>,
    classes: Vec<GenClass>,
    by_name: HashMap<String, GenId>,
}

impl Alphabet {
    /// Builds an alphabet from `(letter, subscript)` pairs; names are `letter` followed by the subscript.
    pub fn from_classes(classes: impl IntoIterator<Item = GenClass>) -> Result<Self> {
        let classes: Vec<GenClass> = classes.into_iter().collect();
        let names: Vec<String> = classes
            .iter()
            .map(|c| format!("{}{}", c.letter, c.sub))
            .collect();
        let mut by_name = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if by_name.insert(n.clone(), i as GenId).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate generator {n}")));
            }
        }
        let mut h = DefaultHasher::new();
        names.hash(&mut h);
        Ok(Alphabet {
            id: h.finish(),
            names,
            classes,
            by_name,
        })
    }

    /// The 46 generators `a1..a20, b1..b20, c1..c3, d1..d3` used by the machine-driven families.
    pub fn machine_family() -> Self {
        let mut cls = Vec::with_capacity(46);
        for (letter, n) in [('a', 20), ('b', 20), ('c', 3), ('d', 3)] {
            cls.extend((1..=n).map(|sub| GenClass { letter, sub }));
        }
        Self::from_classes(cls).expect("static alphabet")
    }

    /// Generators for the 3-SAT family: `a,b,c` and `d,e,f` with subscripts 1..20,
    /// `u,v,w` with subscripts 1..3 and `x,y,z` with subscripts 1..2.
    pub fn sat_family() -> Self {
        let mut cls = Vec::new();
        for sub in 1..=20 {
            for letter in ['a', 'b', 'c'] {
                cls.push(GenClass { letter, sub });
            }
        }
        for sub in 1..=20 {
            for letter in ['d', 'e', 'f'] {
                cls.push(GenClass { letter, sub });
            }
        }
        for sub in 1..=3 {
            for letter in ['u', 'v', 'w'] {
                cls.push(GenClass { letter, sub });
            }
        }
        for sub in 1..=2 {
            for letter in ['x', 'y', 'z'] {
                cls.push(GenClass { letter, sub });
            }
        }
        Self::from_classes(cls).expect("static alphabet")
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.names[g as usize]
    }

    pub fn class(&self, g: GenId) -> GenClass {
        self.classes[g as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    /// Generator id for `letter` with subscript `sub`. Panics if absent.
    pub fn gen(&self, letter: char, sub: u32) -> GenId {
        self.lookup(&format!("{letter}{sub}"))
            .unwrap_or_else(|| panic!("no generator {letter}{sub}"))
    }

    pub fn gen_ref(&self, name: &str) -> Option<GenRef> {
        self.lookup(name).map(|index| GenRef {
            alphabet: self.id,
            index,
        })
    }

    /// Freely reduces a raw sequence of generator powers.
    pub fn free_reduce(&self, raw: &[(GenRef, i64)]) -> Result<Word> {
        let mut syl = Vec::with_capacity(raw.len());
        for &(g, exp) in raw {
            if g.alphabet != self.id || g.index as usize >= self.len() {
                return Err(Error::AlphabetMismatch);
            }
            syl.push(Syllable { gen: g.index, exp });
        }
        Ok(Word::from_syllables(syl))
    }

    /// Parses the whitespace-separated `name^exp` grammar. `1` or blank is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.parse_word_at(text, 1)
    }

    pub(crate) fn parse_word_at(&self, text: &str, line: usize) -> Result<Word> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(Word::identity());
        }
        let mut syl = Vec::new();
        let mut col = 0usize;
        for tok in text.split_inclusive(char::is_whitespace) {
            let start = col + 1;
            col += tok.chars().count();
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| {
                        Error::parse(line, start + n.len() + 1, format!("bad exponent in `{tok}`"))
                    })?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = self
                .lookup(name)
                .ok_or_else(|| Error::parse(line, start, format!("unknown generator `{name}`")))?;
            syl.push(Syllable { gen: g, exp });
        }
        Ok(Word::from_syllables(syl))
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        let parts: Vec<String> = w
            .syllables()
            .iter()
            .map(|s| {
                if s.exp == 1 {
                    self.name(s.gen).to_string()
                } else {
                    format!("{}^{}", self.name(s.gen), s.exp)
                }
            })
            .collect();
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_alphabet_has_46_generators() {
        let a = Alphabet::machine_family();
        assert_eq!(a.len(), 46);
        assert_eq!(a.name(a.gen('d', 3)), "d3");
    }

    #[test]
    fn sat_alphabet_size() {
        assert_eq!(Alphabet::sat_family().len(), 60 + 60 + 9 + 6);
    }

    #[test]
    fn parse_and_format() {
        let a = Alphabet::machine_family();
        let w = a.parse_word("a1^3 b2^-1 c1").unwrap();
        assert_eq!(a.format(&w), "a1^3 b2^-1 c1");
        assert!(a.parse_word("1").unwrap().is_identity());
        assert!(a.parse_word("").unwrap().is_identity());
    }

    #[test]
    fn parse_errors_carry_columns() {
        let a = Alphabet::machine_family();
        match a.parse_word("a1 q7") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(a.parse_word("a1^"), Err(Error::Parse { .. })));
    }

    #[test]
    fn mixed_alphabets_rejected() {
        let a = Alphabet::machine_family();
        let s = Alphabet::sat_family();
        let g = s.gen_ref("a1").unwrap();
        assert_eq!(a.free_reduce(&[(g, 1)]), Err(Error::AlphabetMismatch));
    }
}
