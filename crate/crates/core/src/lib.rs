//! Exact contextuality analysis for systems of contextually labeled
//! random variables.
//!
//! Random variables are identified by what they measure (their *content*)
//! and the conditions under which they are recorded (their *context*).
//! Variables sharing a context are jointly distributed; variables in
//! different contexts are stochastically unrelated, and any joint
//! distribution imposed on them is a *coupling*. This crate builds the
//! polytope of couplings of a finite system exactly — every probability is
//! a rational number — and decides by exact linear programming whether
//! couplings with prescribed pairwise-equality probabilities exist. That
//! yields tolerance-free verdicts on noncontextuality, both for
//! consistently connected systems (probability-1 identification of
//! content-sharing variables) and for inconsistently connected ones
//! (equality with the maximal probability each pair of marginals allows).
//!
//! Modules:
//!
//! * [`rational`] — exact rational probabilities and literals.
//! * [`system`] — contents, contexts, labels, bunches, systems,
//!   connections.
//! * [`format`] — the plain-text system file format.
//! * [`lp`] — exact rational linear programming (two-phase simplex and an
//!   independent brute-force route).
//! * [`coupling`] — the coupling polytope as a linear program.
//! * [`contextuality`] — connectedness checks, verdicts, and the degree.
//! * [`scenarios`] — reference systems and seeded random samplers.

pub mod contextuality;
pub mod coupling;
pub mod format;
pub mod lp;
pub mod rational;
pub mod scenarios;
pub mod system;

pub use contextuality::{
    contextuality_degree, decide_noncontextuality, feynman_residual, is_consistently_connected,
    max_pair_equality, ConnectednessReport, Mode, Verdict,
};
pub use coupling::{
    build_coupling_lp, Coupling, CouplingLp, GlobalAssignment, DEFAULT_MAX_ASSIGNMENTS,
};
pub use format::{parse_system, serialize_system, ParseError};
pub use lp::{brute_force_solve, simplex_solve, LinearProgram, LpOutcome, LpStatus};
pub use rational::{format_rational, parse_rational, Rational};
pub use system::{
    Bunch, Connection, Content, ContentId, Context, ContextId, Distribution, Label, System,
    SystemError,
};
