//! Pieces, piece length, piece conditions on truncations, and reduction to a
//! weakly cyclically reduced conjugate.

mod pieces;
mod reduce;
mod verify;

pub use pieces::{
    cyclic_piece_length, is_piece, is_piece_bruteforce, piece_length, PieceFactorization,
    FULL_ROTATION_LIMIT,
};
pub use reduce::{
    is_weakly_reduced, reduce, reduce_with, ReduceOptions, Reduction, ReductionStep,
    ReductionTrace, MAX_MISSING_PIECES,
};
pub use verify::{
    verify_piece_condition, ClosureElement, PieceCondition, PieceConditionReport, PieceWitness,
    DEFAULT_ELEMENT_LIMIT, MAX_WITNESSES,
};

#[cfg(test)]
mod tests;
