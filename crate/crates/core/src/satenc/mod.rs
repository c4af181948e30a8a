//! 3-SAT instances, their enumeration and their coding as conjugacy problems.

mod certificate;
mod coding;
mod format;
mod instance;

pub use certificate::extract_certificate;
pub use coding::{
    build_sat_relator, decode_assignment, encode_assignment, encode_instance, reduce_to_conjugacy,
    standard_coded_length, SatGenerators,
};
pub(crate) use coding::assemble;
pub use format::{parse_dimacs, parse_inline, parse_instance, to_dimacs};
pub use instance::{
    clauses_up_to, diagonal_pairs, enumerate_instances, first_satisfying_assignment, shortlex_cmp,
    triple_index, Assignment, Clause, SatInstance, MAX_VARIABLES,
};
