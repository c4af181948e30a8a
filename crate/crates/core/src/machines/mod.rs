//! Step-counted Turing machines and the family functions built on them.

mod code;
mod family;
mod sim;
mod spec;

pub use code::{bit_len, decode, encode, CodeRow};
pub use family::{BudgetFn, Eval, FamilyFunctionSpec, FamilyKind, Limits, Preimage};
pub use sim::{run, RunOutcome, RunStatus};
pub use spec::{MachineSpec, Move, State, Transition, BLANK};
