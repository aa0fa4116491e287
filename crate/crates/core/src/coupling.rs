//! The coupling polytope of a system, as an exact linear program.
//!
//! A *coupling* of a system is a single joint distribution over every
//! variable of the system whose restriction to each context reproduces that
//! context's bunch. The set of all couplings is a polytope: one unknown per
//! global assignment (a choice of outcome for every label), one equality
//! constraint per bunch and outcome tuple, and nonnegativity. Questions
//! about couplings — does one exist in which content-sharing variables are
//! equal with given probabilities? — become linear programs over this
//! polytope.
//!
//! Product spaces grow exponentially, so construction refuses systems whose
//! assignment count exceeds a configurable cap rather than ever falling
//! back to inexact arithmetic.

use crate::lp::LinearProgram;
use crate::rational::{is_probability, Rational};
use crate::system::{Connection, ContentId, ContextId, Label, System, SystemError};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Default cap on the number of global assignments (2^20).
pub const DEFAULT_MAX_ASSIGNMENTS: usize = 1 << 20;

/// A choice of outcome for every label of a system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GlobalAssignment(BTreeMap<Label, String>);

impl GlobalAssignment {
    pub fn outcome(&self, label: &Label) -> Option<&str> {
        self.0.get(label).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &str)> {
        self.0.iter().map(|(l, v)| (l, v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GlobalAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (label, outcome) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{label}={outcome}")?;
            first = false;
        }
        Ok(())
    }
}

/// A coupling as an explicit distribution over global assignments
/// (nonzero entries only).
pub type Coupling = BTreeMap<GlobalAssignment, Rational>;

/// A pairwise equality-probability constraint that was imposed on a
/// coupling program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConstraint {
    pub content: ContentId,
    pub contexts: (ContextId, ContextId),
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CouplingError {
    #[error("system too large for exact method: {assignments} global assignments exceed the cap of {cap}")]
    TooLarge { assignments: u128, cap: usize },
    #[error("context `{context}` does not appear in the connection for content `{content}`")]
    ContextNotInConnection {
        content: ContentId,
        context: ContextId,
    },
    #[error("equality probability {0} is outside [0, 1]")]
    ValueOutOfRange(Rational),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// The coupling polytope of one system, with bookkeeping to translate
/// between LP unknowns and global assignments.
#[derive(Debug, Clone)]
pub struct CouplingLp {
    labels: Vec<Label>,
    outcome_sets: Vec<Vec<String>>,
    /// `strides[k]` is the index weight of label `k` in the mixed-radix
    /// encoding of assignments (first label most significant).
    strides: Vec<usize>,
    num_assignments: usize,
    lp: LinearProgram,
    pairs: Vec<PairConstraint>,
}

/// Builds the coupling program of a system: one unknown per global
/// assignment; for every bunch and every outcome tuple over that bunch's
/// members, the unknowns restricting to that tuple sum to the bunch's
/// probability for it. No connection constraints are imposed yet.
///
/// Fails with [`CouplingError::TooLarge`] when the product space exceeds
/// `max_assignments`.
pub fn build_coupling_lp(
    system: &System,
    max_assignments: usize,
) -> Result<CouplingLp, CouplingError> {
    let labels = system.labels();
    let outcome_sets: Vec<Vec<String>> = labels
        .iter()
        .map(|l| {
            system
                .content(&l.content)
                .expect("validated system")
                .outcomes()
                .to_vec()
        })
        .collect();

    let mut total: u128 = 1;
    for set in &outcome_sets {
        total = total.saturating_mul(set.len() as u128);
        if total > max_assignments as u128 {
            return Err(CouplingError::TooLarge {
                assignments: total,
                cap: max_assignments,
            });
        }
    }
    let num_assignments = total as usize;

    let mut strides = vec![1usize; labels.len()];
    for k in (0..labels.len()).rev() {
        if k + 1 < labels.len() {
            strides[k] = strides[k + 1] * outcome_sets[k + 1].len();
        }
    }

    let mut lp = LinearProgram::new(num_assignments);
    let mut label_pos: BTreeMap<Label, usize> = BTreeMap::new();
    for (k, l) in labels.iter().enumerate() {
        label_pos.insert(l.clone(), k);
    }

    for bunch in system.bunches() {
        let member_pos: Vec<usize> = bunch
            .members()
            .iter()
            .map(|m| label_pos[&Label::new(m.clone(), bunch.context().clone())])
            .collect();
        // Tuple index over the bunch members, mixed radix in member order.
        let mut tuple_strides = vec![1usize; member_pos.len()];
        for k in (0..member_pos.len()).rev() {
            if k + 1 < member_pos.len() {
                tuple_strides[k] = tuple_strides[k + 1] * outcome_sets[member_pos[k + 1]].len();
            }
        }
        let tuple_count: usize = member_pos.iter().map(|&p| outcome_sets[p].len()).product();

        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); tuple_count];
        for x in 0..num_assignments {
            let mut tuple_index = 0;
            for (k, &p) in member_pos.iter().enumerate() {
                let digit = (x / strides[p]) % outcome_sets[p].len();
                tuple_index += digit * tuple_strides[k];
            }
            rows[tuple_index].push((x, Rational::from_integer(1.into())));
        }

        for (tuple_index, coeffs) in rows.into_iter().enumerate() {
            let key: Vec<String> = member_pos
                .iter()
                .enumerate()
                .map(|(k, &p)| {
                    let digit = (tuple_index / tuple_strides[k]) % outcome_sets[p].len();
                    outcome_sets[p][digit].clone()
                })
                .collect();
            lp.add_constraint(&coeffs, bunch.probability(&key));
        }
    }

    Ok(CouplingLp {
        labels,
        outcome_sets,
        strides,
        num_assignments,
        lp,
        pairs: Vec::new(),
    })
}

impl CouplingLp {
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn num_assignments(&self) -> usize {
        self.num_assignments
    }

    pub fn lp(&self) -> &LinearProgram {
        &self.lp
    }

    /// Mutable access to the underlying program, e.g. to set an objective
    /// over assignment or slack unknowns.
    pub fn lp_mut(&mut self) -> &mut LinearProgram {
        &mut self.lp
    }

    /// Pairwise equality constraints imposed so far, in insertion order.
    pub fn pair_constraints(&self) -> &[PairConstraint] {
        &self.pairs
    }

    fn label_position(&self, content: &ContentId, context: &ContextId) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| &l.content == content && &l.context == context)
    }

    /// Indices of assignments on which the two labels of `content` in the
    /// given contexts take equal outcomes.
    fn equal_outcome_vars(&self, p1: usize, p2: usize) -> Vec<(usize, Rational)> {
        let one = Rational::from_integer(1.into());
        (0..self.num_assignments)
            .filter(|&x| {
                let d1 = (x / self.strides[p1]) % self.outcome_sets[p1].len();
                let d2 = (x / self.strides[p2]) % self.outcome_sets[p2].len();
                d1 == d2
            })
            .map(|x| (x, one.clone()))
            .collect()
    }

    /// Constrains `Pr[the two content-sharing variables are equal] = value`
    /// for one context pair of a connection.
    pub fn add_equality_probability_constraint(
        &mut self,
        connection: &Connection,
        pair: (&ContextId, &ContextId),
        value: Rational,
    ) -> Result<(), CouplingError> {
        if !is_probability(&value) {
            return Err(CouplingError::ValueOutOfRange(value));
        }
        for context in [pair.0, pair.1] {
            if connection.marginal(context).is_none() {
                return Err(CouplingError::ContextNotInConnection {
                    content: connection.content().clone(),
                    context: context.clone(),
                });
            }
        }
        let p1 = self
            .label_position(connection.content(), pair.0)
            .expect("connection context is in the system");
        let p2 = self
            .label_position(connection.content(), pair.1)
            .expect("connection context is in the system");
        let coeffs = self.equal_outcome_vars(p1, p2);
        self.lp.add_constraint(&coeffs, value.clone());
        self.pairs.push(PairConstraint {
            content: connection.content().clone(),
            contexts: (pair.0.clone(), pair.1.clone()),
            value,
        });
        Ok(())
    }

    /// Like [`Self::add_equality_probability_constraint`] but with a fresh
    /// slack unknown absorbing the shortfall: `Pr[equal] + slack = value`.
    /// Returns the slack's index.
    pub fn add_equality_shortfall_constraint(
        &mut self,
        connection: &Connection,
        pair: (&ContextId, &ContextId),
        value: Rational,
    ) -> Result<usize, CouplingError> {
        if !is_probability(&value) {
            return Err(CouplingError::ValueOutOfRange(value));
        }
        for context in [pair.0, pair.1] {
            if connection.marginal(context).is_none() {
                return Err(CouplingError::ContextNotInConnection {
                    content: connection.content().clone(),
                    context: context.clone(),
                });
            }
        }
        let p1 = self
            .label_position(connection.content(), pair.0)
            .expect("connection context is in the system");
        let p2 = self
            .label_position(connection.content(), pair.1)
            .expect("connection context is in the system");
        let slack = self.lp.add_variable();
        let mut coeffs = self.equal_outcome_vars(p1, p2);
        coeffs.push((slack, Rational::from_integer(1.into())));
        self.lp.add_constraint(&coeffs, value.clone());
        self.pairs.push(PairConstraint {
            content: connection.content().clone(),
            contexts: (pair.0.clone(), pair.1.clone()),
            value,
        });
        Ok(slack)
    }

    /// The global assignment encoded by unknown `index`.
    pub fn assignment(&self, index: usize) -> GlobalAssignment {
        let mut map = BTreeMap::new();
        for (k, label) in self.labels.iter().enumerate() {
            let digit = (index / self.strides[k]) % self.outcome_sets[k].len();
            map.insert(label.clone(), self.outcome_sets[k][digit].clone());
        }
        GlobalAssignment(map)
    }

    /// Reads a solver solution back as an explicit coupling (nonzero
    /// entries only). Slack unknowns beyond the assignment block are
    /// ignored.
    pub fn decode_witness(&self, solution: &[Rational]) -> Coupling {
        let mut coupling = BTreeMap::new();
        for (x, mass) in solution.iter().enumerate().take(self.num_assignments) {
            if !mass.is_zero() {
                coupling.insert(self.assignment(x), mass.clone());
            }
        }
        coupling
    }
}

/// Checks that a coupling reproduces every bunch of the system exactly:
/// for each bunch and outcome tuple, the mass of assignments restricting
/// to that tuple equals the bunch probability.
pub fn coupling_reproduces_system(system: &System, coupling: &Coupling) -> bool {
    let mut total = Rational::zero();
    for mass in coupling.values() {
        total += mass;
    }
    if total != Rational::from_integer(1.into()) {
        return false;
    }
    for bunch in system.bunches() {
        let mut seen: BTreeMap<Vec<String>, Rational> = BTreeMap::new();
        for (assignment, mass) in coupling {
            let key: Vec<String> = bunch
                .members()
                .iter()
                .map(|m| {
                    assignment
                        .outcome(&Label::new(m.clone(), bunch.context().clone()))
                        .expect("assignment covers every label")
                        .to_string()
                })
                .collect();
            *seen.entry(key).or_insert_with(Rational::zero) += mass;
        }
        let outcome_sets: Vec<&[String]> = bunch
            .members()
            .iter()
            .map(|m| system.content(m).expect("validated system").outcomes())
            .collect();
        for key in crate::format::product_keys(&outcome_sets) {
            let got = seen.get(&key).cloned().unwrap_or_else(Rational::zero);
            if got != bunch.probability(&key) {
                return false;
            }
        }
    }
    true
}

/// The probability, under a coupling, that the two labels take equal
/// outcomes.
pub fn coupling_pair_equality(coupling: &Coupling, first: &Label, second: &Label) -> Rational {
    let mut acc = Rational::zero();
    for (assignment, mass) in coupling {
        if assignment.outcome(first) == assignment.outcome(second) {
            acc += mass;
        }
    }
    acc
}
