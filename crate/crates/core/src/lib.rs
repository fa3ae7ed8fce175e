//! AND-optimal XOR-AND graphs for the function whose `n` outputs are all the
//! monomials of degree `n - 1`, `f_i(x) = AND_{j != i} x_j`.
//!
//! * [`anf`]: GF(2) polynomials and truth tables (the symbolic oracle).
//! * [`xag`]: the gate DAG, its builder and bit-parallel evaluation.
//! * [`synth`]: the `2n - 3` construction and a `3n - 6` baseline.
//! * [`verify`]: reference evaluation and equivalence checks.
//! * [`io`]: Bristol Fashion, DOT and JSON.
//! * [`cli`]: the `xagmc` command line.

pub mod anf;
pub mod cli;
pub mod io;
pub mod synth;
pub mod verify;
pub mod xag;

pub use anf::{Anf, Monomial, TruthTable};
pub use synth::{synthesize, Construction};
pub use xag::{Circuit, CircuitBuilder, Gate, GateId};
