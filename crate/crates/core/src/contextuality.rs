//! Contextuality decision procedures.
//!
//! A system is *consistently connected* when content-sharing variables
//! have identical distributions in every context where they appear. For
//! such systems the strict question is whether a coupling exists in which
//! every content-sharing pair is equal with probability 1 (a *maximally
//! connected* coupling); if it exists the system is noncontextual,
//! otherwise contextual.
//!
//! For inconsistently connected systems probability-1 identification is
//! impossible outright, so the extended question asks for a coupling in
//! which each content-sharing pair is equal with the *maximal possible
//! probability* allowed by its two marginals, namely `Σ_v min(p(v), q(v))`.
//! On consistently connected systems every such maximum is 1, so the two
//! questions coincide there.
//!
//! Both questions reduce to exact LP feasibility over the coupling
//! polytope. The numeric *degree* reported alongside the verdict is the
//! smallest total shortfall of pair-equality probabilities below their
//! maxima, over all couplings; it is 0 exactly when the system is
//! noncontextual in the extended sense. It is one reasonable measure, not
//! a canonical one.

use crate::coupling::{build_coupling_lp, Coupling, CouplingError, CouplingLp, PairConstraint};
use crate::lp::{simplex_solve, LpError, LpStatus};
use crate::rational::Rational;
use crate::system::{ContentId, ContextId, Distribution, System, SystemError};
use num::{One, Signed, Zero};
use thiserror::Error;

/// Which noncontextuality question to decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Probability-1 identification of content-sharing pairs. Requires a
    /// consistently connected system.
    Strict,
    /// Each pair equal with its maximal possible probability given the
    /// marginals. Defined for every system.
    Extended,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Extended => "extended",
        }
    }
}

/// Pairwise marginal mismatch inside one connection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMismatch {
    pub contexts: (ContextId, ContextId),
    /// Total variation distance between the two marginals.
    pub mismatch: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionReport {
    pub content: ContentId,
    pub pairs: Vec<PairMismatch>,
}

/// Outcome of the consistent-connectedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectednessReport {
    pub consistent: bool,
    pub connections: Vec<ConnectionReport>,
}

/// A noncontextuality verdict with its supporting data.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub mode: Mode,
    pub noncontextual: bool,
    /// A coupling attaining every pair target; present iff noncontextual.
    pub witness: Option<Coupling>,
    /// The equality-probability targets imposed, one per content-sharing
    /// context pair.
    pub pair_targets: Vec<PairConstraint>,
    /// Minimal total equality-probability shortfall; 0 iff noncontextual
    /// in the extended sense.
    pub degree: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextualityError {
    #[error("strict mode requires a consistently connected system")]
    StrictModeInconsistent,
    #[error(transparent)]
    Coupling(#[from] CouplingError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Computes all pairwise marginal mismatches within each connection. The
/// system is consistently connected iff every mismatch is exactly zero.
pub fn is_consistently_connected(system: &System) -> ConnectednessReport {
    let mut consistent = true;
    let mut connections = Vec::new();
    for conn in system.connections() {
        let vars = conn.variables();
        let mut pairs = Vec::new();
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                let mismatch = vars[i]
                    .1
                    .total_variation(&vars[j].1)
                    .expect("one content, one outcome set");
                if !mismatch.is_zero() {
                    consistent = false;
                }
                pairs.push(PairMismatch {
                    contexts: (vars[i].0.clone(), vars[j].0.clone()),
                    mismatch,
                });
            }
        }
        connections.push(ConnectionReport {
            content: conn.content().clone(),
            pairs,
        });
    }
    ConnectednessReport {
        consistent,
        connections,
    }
}

/// The maximum of `Pr[X = Y]` over all couplings of two distributions on a
/// shared outcome set: `Σ_v min(p(v), q(v))`.
pub fn max_pair_equality(d1: &Distribution, d2: &Distribution) -> Result<Rational, SystemError> {
    d1.max_equality(d2)
}

/// Builds the coupling program together with one equality-probability
/// constraint per content-sharing context pair, at target 1 (strict) or at
/// the pair's maximal possible probability (extended).
pub fn decision_lp(
    system: &System,
    mode: Mode,
    max_assignments: usize,
) -> Result<CouplingLp, ContextualityError> {
    let mut clp = build_coupling_lp(system, max_assignments)?;
    for conn in system.connections() {
        let vars = conn.variables();
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                let target = match mode {
                    Mode::Strict => Rational::one(),
                    Mode::Extended => max_pair_equality(&vars[i].1, &vars[j].1)?,
                };
                clp.add_equality_probability_constraint(&conn, (&vars[i].0, &vars[j].0), target)?;
            }
        }
    }
    Ok(clp)
}

/// Builds the degree program: the coupling polytope, one slack-carrying
/// constraint `Pr[pair equal] + slack = target` per content-sharing pair
/// at its extended target, and the objective of maximizing `-Σ slack`.
/// The optimum value is the negated degree.
pub fn degree_lp(
    system: &System,
    max_assignments: usize,
) -> Result<CouplingLp, ContextualityError> {
    let mut clp = build_coupling_lp(system, max_assignments)?;
    let mut slacks = Vec::new();
    for conn in system.connections() {
        let vars = conn.variables();
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                let target = max_pair_equality(&vars[i].1, &vars[j].1)?;
                let slack =
                    clp.add_equality_shortfall_constraint(&conn, (&vars[i].0, &vars[j].0), target)?;
                slacks.push(slack);
            }
        }
    }
    let minus_one = -Rational::one();
    let objective: Vec<(usize, Rational)> =
        slacks.into_iter().map(|s| (s, minus_one.clone())).collect();
    clp.lp_mut().set_objective(&objective);
    Ok(clp)
}

/// Decides noncontextuality of a system.
///
/// Strict mode refuses inconsistently connected systems: probability-1
/// identification is infeasible whenever marginals differ, so an error is
/// more informative than a guaranteed "contextual". Connections with more
/// than two variables are constrained pairwise, every unordered pair at
/// its own maximum.
pub fn decide_noncontextuality(
    system: &System,
    mode: Mode,
    max_assignments: usize,
) -> Result<Verdict, ContextualityError> {
    if mode == Mode::Strict && !is_consistently_connected(system).consistent {
        return Err(ContextualityError::StrictModeInconsistent);
    }
    let clp = decision_lp(system, mode, max_assignments)?;
    let outcome = simplex_solve(clp.lp())?;
    let noncontextual = outcome.status != LpStatus::Infeasible;
    let witness = outcome
        .solution
        .as_deref()
        .map(|solution| clp.decode_witness(solution));
    let degree = contextuality_degree(system, max_assignments)?;
    debug_assert_eq!(noncontextual, degree.is_zero());
    Ok(Verdict {
        mode,
        noncontextual,
        witness,
        pair_targets: clp.pair_constraints().to_vec(),
        degree,
    })
}

/// The contextuality degree: minimize the total shortfall of pair-equality
/// probabilities below their extended targets, over all couplings. Zero
/// exactly for extended-noncontextual systems.
pub fn contextuality_degree(
    system: &System,
    max_assignments: usize,
) -> Result<Rational, ContextualityError> {
    let clp = degree_lp(system, max_assignments)?;
    let outcome = simplex_solve(clp.lp())?;
    match outcome.objective_value {
        Some(v) => {
            let degree = -v;
            debug_assert!(!degree.is_negative());
            Ok(degree)
        }
        None => Err(ContextualityError::Lp(LpError::Internal(
            "degree program returned no objective value".into(),
        ))),
    }
}

/// The additivity residual `p4 - (p2 + p3)` for detection probabilities in
/// the two-single-slit and both-slits contexts. A pure arithmetic report:
/// the three probabilities belong to variables in different contexts, so
/// no law of probability constrains the residual, and it is explicitly not
/// a contextuality criterion.
pub fn feynman_residual(p2: &Rational, p3: &Rational, p4: &Rational) -> Rational {
    p4 - (p2 + p3)
}
