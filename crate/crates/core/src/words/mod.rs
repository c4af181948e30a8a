//! Free-group words over finite alphabets in run-length (syllable) form.

mod alphabet;
mod cyclic;
mod search;
mod word;

pub use alphabet::{Alphabet, GenClass, GenId, GenRef};
pub use cyclic::{cyclically_reduce, free_conjugate, rotations, CyclicWord};
pub use search::{cyclic_occurrences, linear_occurrences};
pub use word::{lcp, Letter, Runs, Syllable, Word};
