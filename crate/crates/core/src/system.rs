//! Data model for systems of contextually labeled random variables.
//!
//! A random variable is identified by a *content* (what it measures or
//! responds to) and a *context* (the conditions under which it is recorded).
//! Variables sharing a context form a *bunch* and possess a joint
//! distribution; variables in different contexts are stochastically
//! unrelated, and nothing in these types can express a joint distribution
//! across contexts. Variables sharing a content across contexts form a
//! *connection*; their individual distributions are the marginals computed
//! from the bunches.
//!
//! All types are immutable after construction and validated on
//! construction, so a [`System`] in hand is always well-formed: one bunch
//! per context, distinct members per bunch, probability mass functions that
//! sum to exactly 1.

use crate::rational::Rational;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Identifier of a content (the subscript `q` in `R_q^c`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContentId(String);

/// Identifier of a context (the superscript `c` in `R_q^c`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContextId(String);

macro_rules! id_impls {
    ($ty:ident) => {
        impl $ty {
            pub fn new(id: impl Into<String>) -> Self {
                $ty(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $ty {
            fn from(id: &str) -> Self {
                $ty(id.to_string())
            }
        }

        impl From<String> for $ty {
            fn from(id: String) -> Self {
                $ty(id)
            }
        }
    };
}

id_impls!(ContentId);
id_impls!(ContextId);

/// A (content, context) pair identifying one random variable of a system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub content: ContentId,
    pub context: ContextId,
}

impl Label {
    pub fn new(content: impl Into<ContentId>, context: impl Into<ContextId>) -> Self {
        Label {
            content: content.into(),
            context: context.into(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.content, self.context)
    }
}

/// What a variable measures, together with its finite ordered outcome set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Content {
    id: ContentId,
    outcomes: Vec<String>,
}

/// Conditions under which variables are recorded, with an optional
/// free-text description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    id: ContextId,
    label: Option<String>,
}

/// The joint distribution of all variables recorded in one context.
///
/// Keys are outcome tuples, one outcome per member in member order. Tuples
/// absent from the map have probability zero; zero entries are dropped on
/// construction so equal distributions compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bunch {
    context: ContextId,
    members: Vec<ContentId>,
    pmf: BTreeMap<Vec<String>, Rational>,
}

/// A finite system of contextually labeled random variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    contents: Vec<Content>,
    contexts: Vec<Context>,
    bunches: Vec<Bunch>,
}

/// A distribution over one content's outcome set, in outcome-set order.
/// Zero-probability outcomes are kept so distributions over the same set
/// always have the same shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    entries: Vec<(String, Rational)>,
}

/// All variables sharing one content across contexts, with their marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    content: ContentId,
    variables: Vec<(ContextId, Distribution)>,
}

/// Validation failure while building a system or querying it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("invalid outcome symbol `{0}`")]
    InvalidOutcome(String),
    #[error("invalid context description {0:?}")]
    InvalidContextLabel(String),
    #[error("content `{0}` declared more than once")]
    DuplicateContent(ContentId),
    #[error("context `{0}` declared more than once")]
    DuplicateContext(ContextId),
    #[error("content `{0}` needs at least two distinct outcomes")]
    TooFewOutcomes(ContentId),
    #[error("content `{content}` lists outcome `{outcome}` more than once")]
    DuplicateOutcome { content: ContentId, outcome: String },
    #[error("bunch for context `{0}` has no members")]
    EmptyBunch(ContextId),
    #[error("content `{content}` repeats within bunch `{context}`")]
    RepeatedMember {
        context: ContextId,
        content: ContentId,
    },
    #[error("bunch `{context}` references undeclared content `{content}`")]
    UnknownContent {
        context: ContextId,
        content: ContentId,
    },
    #[error("bunch references undeclared context `{0}`")]
    UnknownContext(ContextId),
    #[error("context `{0}` has more than one bunch")]
    DuplicateBunch(ContextId),
    #[error("context `{0}` has no bunch")]
    MissingBunch(ContextId),
    #[error("system declares no bunches")]
    NoBunches,
    #[error("pmf entry in bunch `{context}` has {got} outcomes, expected {expected}")]
    WrongArity {
        context: ContextId,
        got: usize,
        expected: usize,
    },
    #[error("duplicate pmf entry in bunch `{context}`")]
    DuplicatePmfEntry { context: ContextId },
    #[error("negative probability {value} in bunch `{context}`")]
    NegativeProbability { context: ContextId, value: Rational },
    #[error("pmf of bunch `{context}` sums to {sum}, expected 1")]
    PmfSum { context: ContextId, sum: Rational },
    #[error("outcome `{outcome}` is not in the outcome set of content `{content}`")]
    UnknownOutcome { content: ContentId, outcome: String },
    #[error("content `{content}` is not a member of bunch `{context}`")]
    ContentNotInBunch {
        context: ContextId,
        content: ContentId,
    },
    #[error("distributions are over different outcome sets")]
    OutcomeSetMismatch,
    #[error("distribution sums to {0}, expected 1")]
    DistributionSum(Rational),
    #[error("negative probability {0} in distribution")]
    NegativeDistributionEntry(Rational),
}

/// Identifiers and outcome symbols: non-empty, no whitespace, and none of
/// the characters the file format reserves (`#`, `"`, `:`).
fn valid_symbol(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !"#\":".contains(c))
}

impl Content {
    pub fn new(
        id: impl Into<ContentId>,
        outcomes: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, SystemError> {
        let id = id.into();
        if !valid_symbol(id.as_str()) {
            return Err(SystemError::InvalidIdentifier(id.as_str().to_string()));
        }
        let outcomes: Vec<String> = outcomes.into_iter().map(Into::into).collect();
        if outcomes.len() < 2 {
            return Err(SystemError::TooFewOutcomes(id));
        }
        let mut seen = BTreeSet::new();
        for v in &outcomes {
            if !valid_symbol(v) {
                return Err(SystemError::InvalidOutcome(v.clone()));
            }
            if !seen.insert(v.clone()) {
                return Err(SystemError::DuplicateOutcome {
                    content: id,
                    outcome: v.clone(),
                });
            }
        }
        Ok(Content { id, outcomes })
    }

    /// Binary content with outcomes `+1`, `-1`.
    pub fn binary(id: impl Into<ContentId>) -> Result<Self, SystemError> {
        Content::new(id, ["+1", "-1"])
    }

    pub fn id(&self) -> &ContentId {
        &self.id
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn outcome_index(&self, outcome: &str) -> Option<usize> {
        self.outcomes.iter().position(|v| v == outcome)
    }
}

impl Context {
    pub fn new(id: impl Into<ContextId>, label: Option<String>) -> Result<Self, SystemError> {
        let id = id.into();
        if !valid_symbol(id.as_str()) {
            return Err(SystemError::InvalidIdentifier(id.as_str().to_string()));
        }
        if let Some(text) = &label {
            if text.contains('"') || text.contains('\n') || text.contains('\r') {
                return Err(SystemError::InvalidContextLabel(text.clone()));
            }
        }
        // An empty description and no description serialize identically,
        // so normalize at construction.
        let label = label.filter(|text| !text.is_empty());
        Ok(Context { id, label })
    }

    pub fn id(&self) -> &ContextId {
        &self.id
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

impl Bunch {
    /// Builds a bunch, checking member distinctness, key arity,
    /// nonnegativity and exact normalization. Outcome-symbol validity
    /// against the contents' outcome sets is checked by [`System::new`].
    pub fn new(
        context: impl Into<ContextId>,
        members: impl IntoIterator<Item = impl Into<ContentId>>,
        pmf: impl IntoIterator<Item = (Vec<String>, Rational)>,
    ) -> Result<Self, SystemError> {
        let context = context.into();
        if !valid_symbol(context.as_str()) {
            return Err(SystemError::InvalidIdentifier(context.as_str().to_string()));
        }
        let members: Vec<ContentId> = members.into_iter().map(Into::into).collect();
        if members.is_empty() {
            return Err(SystemError::EmptyBunch(context));
        }
        let mut seen = BTreeSet::new();
        for m in &members {
            if !seen.insert(m.clone()) {
                return Err(SystemError::RepeatedMember {
                    context,
                    content: m.clone(),
                });
            }
        }
        let mut map = BTreeMap::new();
        let mut sum = Rational::zero();
        for (key, p) in pmf {
            if key.len() != members.len() {
                return Err(SystemError::WrongArity {
                    context,
                    got: key.len(),
                    expected: members.len(),
                });
            }
            if p.is_negative() {
                return Err(SystemError::NegativeProbability { context, value: p });
            }
            sum += &p;
            if p.is_zero() {
                continue;
            }
            if map.insert(key, p).is_some() {
                return Err(SystemError::DuplicatePmfEntry { context });
            }
        }
        if !sum.is_one() {
            return Err(SystemError::PmfSum { context, sum });
        }
        Ok(Bunch {
            context,
            members,
            pmf: map,
        })
    }

    pub fn context(&self) -> &ContextId {
        &self.context
    }

    pub fn members(&self) -> &[ContentId] {
        &self.members
    }

    /// Nonzero entries of the joint pmf, keyed by outcome tuple.
    pub fn pmf(&self) -> &BTreeMap<Vec<String>, Rational> {
        &self.pmf
    }

    /// Probability of one outcome tuple (zero for tuples not stored).
    pub fn probability(&self, key: &[String]) -> Rational {
        self.pmf.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn member_index(&self, content: &ContentId) -> Option<usize> {
        self.members.iter().position(|m| m == content)
    }
}

impl System {
    /// Builds and validates a system, canonicalizing declaration order:
    /// contents and contexts are sorted by id and bunches by context id, so
    /// two systems that differ only in declaration order compare equal.
    pub fn new(
        contents: Vec<Content>,
        contexts: Vec<Context>,
        bunches: Vec<Bunch>,
    ) -> Result<Self, SystemError> {
        let mut contents = contents;
        contents.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in contents.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(SystemError::DuplicateContent(pair[0].id.clone()));
            }
        }
        let mut contexts = contexts;
        contexts.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in contexts.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(SystemError::DuplicateContext(pair[0].id.clone()));
            }
        }
        if bunches.is_empty() {
            return Err(SystemError::NoBunches);
        }
        let mut bunches = bunches;
        bunches.sort_by(|a, b| a.context.cmp(&b.context));
        for pair in bunches.windows(2) {
            if pair[0].context == pair[1].context {
                return Err(SystemError::DuplicateBunch(pair[0].context.clone()));
            }
        }

        let system = System {
            contents,
            contexts,
            bunches,
        };

        for bunch in &system.bunches {
            if system.context(&bunch.context).is_none() {
                return Err(SystemError::UnknownContext(bunch.context.clone()));
            }
            for member in &bunch.members {
                if system.content(member).is_none() {
                    return Err(SystemError::UnknownContent {
                        context: bunch.context.clone(),
                        content: member.clone(),
                    });
                }
            }
            for key in bunch.pmf.keys() {
                for (pos, outcome) in key.iter().enumerate() {
                    let content = system.content(&bunch.members[pos]).unwrap();
                    if content.outcome_index(outcome).is_none() {
                        return Err(SystemError::UnknownOutcome {
                            content: content.id.clone(),
                            outcome: outcome.clone(),
                        });
                    }
                }
            }
        }
        for context in &system.contexts {
            if system.bunch(&context.id).is_none() {
                return Err(SystemError::MissingBunch(context.id.clone()));
            }
        }
        Ok(system)
    }

    pub fn contents(&self) -> &[Content] {
        &self.contents
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn bunches(&self) -> &[Bunch] {
        &self.bunches
    }

    pub fn content(&self, id: &ContentId) -> Option<&Content> {
        self.contents.iter().find(|c| &c.id == id)
    }

    pub fn context(&self, id: &ContextId) -> Option<&Context> {
        self.contexts.iter().find(|c| &c.id == id)
    }

    pub fn bunch(&self, context: &ContextId) -> Option<&Bunch> {
        self.bunches.iter().find(|b| &b.context == context)
    }

    /// Every variable of the system, in canonical order: bunches by context
    /// id, members in declared member order. Each label appears exactly once.
    pub fn labels(&self) -> Vec<Label> {
        self.bunches
            .iter()
            .flat_map(|b| {
                b.members.iter().map(|m| Label {
                    content: m.clone(),
                    context: b.context.clone(),
                })
            })
            .collect()
    }

    /// The marginal distribution of one variable, computed by summing the
    /// bunch pmf over all coordinates except the chosen content's.
    pub fn marginal(
        &self,
        context: &ContextId,
        content: &ContentId,
    ) -> Result<Distribution, SystemError> {
        let bunch = self
            .bunch(context)
            .ok_or_else(|| SystemError::UnknownContext(context.clone()))?;
        let pos = bunch
            .member_index(content)
            .ok_or_else(|| SystemError::ContentNotInBunch {
                context: context.clone(),
                content: content.clone(),
            })?;
        let decl = self.content(content).unwrap();
        let mut mass = vec![Rational::zero(); decl.outcomes.len()];
        for (key, p) in &bunch.pmf {
            let idx = decl.outcome_index(&key[pos]).unwrap();
            mass[idx] += p;
        }
        Distribution::new(decl.outcomes.iter().cloned().zip(mass).collect::<Vec<_>>())
    }

    /// Partitions the system's labels by content: one connection per
    /// content appearing in at least one context. Contents recorded in a
    /// single context yield singleton connections, which impose no
    /// constraints on couplings.
    pub fn connections(&self) -> Vec<Connection> {
        let mut out = Vec::new();
        for content in &self.contents {
            let mut variables = Vec::new();
            for bunch in &self.bunches {
                if bunch.member_index(&content.id).is_some() {
                    let marginal = self
                        .marginal(&bunch.context, &content.id)
                        .expect("validated system");
                    variables.push((bunch.context.clone(), marginal));
                }
            }
            if !variables.is_empty() {
                out.push(Connection {
                    content: content.id.clone(),
                    variables,
                });
            }
        }
        out
    }
}

impl Distribution {
    /// Builds a distribution from `(outcome, probability)` entries in
    /// outcome-set order. Entries must be nonnegative and sum to exactly 1.
    pub fn new(entries: Vec<(String, Rational)>) -> Result<Self, SystemError> {
        let mut sum = Rational::zero();
        for (_, p) in &entries {
            if p.is_negative() {
                return Err(SystemError::NegativeDistributionEntry(p.clone()));
            }
            sum += p;
        }
        if !sum.is_one() {
            return Err(SystemError::DistributionSum(sum));
        }
        Ok(Distribution { entries })
    }

    pub fn entries(&self) -> &[(String, Rational)] {
        &self.entries
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(v, _)| v.as_str())
    }

    pub fn prob(&self, outcome: &str) -> Rational {
        self.entries
            .iter()
            .find(|(v, _)| v == outcome)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn same_outcome_set(&self, other: &Distribution) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((a, _), (b, _))| a == b)
    }

    /// Total variation distance `Σ_v |p(v) − q(v)| / 2`.
    pub fn total_variation(&self, other: &Distribution) -> Result<Rational, SystemError> {
        if !self.same_outcome_set(other) {
            return Err(SystemError::OutcomeSetMismatch);
        }
        let mut acc = Rational::zero();
        for ((_, p), (_, q)) in self.entries.iter().zip(&other.entries) {
            acc += (p - q).abs();
        }
        Ok(acc / (Rational::one() + Rational::one()))
    }

    /// `Σ_v min(p(v), q(v))`: the largest value `Pr[X = Y]` can take over
    /// all couplings of two variables with these distributions.
    pub fn max_equality(&self, other: &Distribution) -> Result<Rational, SystemError> {
        if !self.same_outcome_set(other) {
            return Err(SystemError::OutcomeSetMismatch);
        }
        let mut acc = Rational::zero();
        for ((_, p), (_, q)) in self.entries.iter().zip(&other.entries) {
            acc += p.min(q);
        }
        Ok(acc)
    }
}

impl Connection {
    pub fn content(&self) -> &ContentId {
        &self.content
    }

    /// The connection's variables as (context, marginal) pairs, in context
    /// order.
    pub fn variables(&self) -> &[(ContextId, Distribution)] {
        &self.variables
    }

    pub fn contexts(&self) -> impl Iterator<Item = &ContextId> {
        self.variables.iter().map(|(c, _)| c)
    }

    pub fn marginal(&self, context: &ContextId) -> Option<&Distribution> {
        self.variables
            .iter()
            .find(|(c, _)| c == context)
            .map(|(_, d)| d)
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn key(outcomes: &[&str]) -> Vec<String> {
        outcomes.iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn two_variable_bunch(
        context: &str,
        members: (&str, &str),
        cells: [Rational; 4],
    ) -> Bunch {
        let [pp, pm, mp, mm] = cells;
        Bunch::new(
            context,
            [ContentId::new(members.0), ContentId::new(members.1)],
            vec![
                (key(&["+1", "+1"]), pp),
                (key(&["+1", "-1"]), pm),
                (key(&["-1", "+1"]), mp),
                (key(&["-1", "-1"]), mm),
            ],
        )
        .unwrap()
    }

    fn griffiths_like() -> System {
        System::new(
            vec![
                Content::binary("q1").unwrap(),
                Content::binary("q2").unwrap(),
                Content::binary("q3").unwrap(),
            ],
            vec![
                Context::new("c1", None).unwrap(),
                Context::new("c2", None).unwrap(),
            ],
            vec![
                two_variable_bunch(
                    "c1",
                    ("q1", "q2"),
                    [ratio(1, 2), int(0), int(0), ratio(1, 2)],
                ),
                two_variable_bunch(
                    "c2",
                    ("q2", "q3"),
                    [ratio(1, 4), ratio(1, 4), ratio(1, 4), ratio(1, 4)],
                ),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pmf_must_sum_to_one() {
        let err = Bunch::new(
            "c1",
            [ContentId::new("q")],
            vec![(key(&["+1"]), ratio(1, 2)), (key(&["-1"]), ratio(2, 5))],
        )
        .unwrap_err();
        assert_eq!(
            err,
            SystemError::PmfSum {
                context: ContextId::new("c1"),
                sum: ratio(9, 10),
            }
        );
    }

    #[test]
    fn negative_probability_rejected() {
        let err = Bunch::new(
            "c1",
            [ContentId::new("q")],
            vec![(key(&["+1"]), ratio(3, 2)), (key(&["-1"]), ratio(-1, 2))],
        )
        .unwrap_err();
        assert!(matches!(err, SystemError::NegativeProbability { .. }));
    }

    #[test]
    fn zero_entries_are_normalized_away() {
        let a = Bunch::new(
            "c1",
            [ContentId::new("q")],
            vec![(key(&["+1"]), int(1)), (key(&["-1"]), int(0))],
        )
        .unwrap();
        let b = Bunch::new("c1", [ContentId::new("q")], vec![(key(&["+1"]), int(1))]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_outcome_symbol_rejected() {
        let err = System::new(
            vec![Content::binary("q").unwrap()],
            vec![Context::new("c1", None).unwrap()],
            vec![Bunch::new("c1", [ContentId::new("q")], vec![(key(&["up"]), int(1))]).unwrap()],
        )
        .unwrap_err();
        assert_eq!(
            err,
            SystemError::UnknownOutcome {
                content: ContentId::new("q"),
                outcome: "up".to_string(),
            }
        );
    }

    #[test]
    fn every_context_needs_exactly_one_bunch() {
        let missing = System::new(
            vec![Content::binary("q").unwrap()],
            vec![
                Context::new("c1", None).unwrap(),
                Context::new("c2", None).unwrap(),
            ],
            vec![Bunch::new("c1", [ContentId::new("q")], vec![(key(&["+1"]), int(1))]).unwrap()],
        )
        .unwrap_err();
        assert_eq!(missing, SystemError::MissingBunch(ContextId::new("c2")));
    }

    #[test]
    fn marginal_of_symmetric_pair_is_uniform() {
        let s = griffiths_like();
        let d = s
            .marginal(&ContextId::new("c1"), &ContentId::new("q1"))
            .unwrap();
        assert_eq!(d.prob("+1"), ratio(1, 2));
        assert_eq!(d.prob("-1"), ratio(1, 2));
    }

    #[test]
    fn marginal_of_point_mass_is_point_mass() {
        let s = System::new(
            vec![Content::binary("a").unwrap(), Content::binary("b").unwrap()],
            vec![Context::new("c1", None).unwrap()],
            vec![Bunch::new(
                "c1",
                [ContentId::new("a"), ContentId::new("b")],
                vec![(key(&["+1", "+1"]), int(1))],
            )
            .unwrap()],
        )
        .unwrap();
        let d = s
            .marginal(&ContextId::new("c1"), &ContentId::new("a"))
            .unwrap();
        assert_eq!(d.prob("+1"), int(1));
        assert_eq!(d.prob("-1"), int(0));
    }

    #[test]
    fn marginal_sums_matching_cells() {
        // second-member marginal of {(+,+):3/8, (+,-):1/8, (-,+):1/8, (-,-):3/8}
        let s = System::new(
            vec![Content::binary("a").unwrap(), Content::binary("b").unwrap()],
            vec![Context::new("c1", None).unwrap()],
            vec![two_variable_bunch(
                "c1",
                ("a", "b"),
                [ratio(3, 8), ratio(1, 8), ratio(1, 8), ratio(3, 8)],
            )],
        )
        .unwrap();
        let d = s
            .marginal(&ContextId::new("c1"), &ContentId::new("b"))
            .unwrap();
        assert_eq!(d.prob("+1"), ratio(1, 2));
        assert_eq!(d.prob("-1"), ratio(1, 2));
    }

    #[test]
    fn marginal_requires_membership() {
        let s = griffiths_like();
        let err = s
            .marginal(&ContextId::new("c1"), &ContentId::new("q3"))
            .unwrap_err();
        assert!(matches!(err, SystemError::ContentNotInBunch { .. }));
    }

    #[test]
    fn connections_partition_labels_by_content() {
        let s = griffiths_like();
        let conns = s.connections();
        assert_eq!(conns.len(), 3);
        let lens: Vec<usize> = conns.iter().map(Connection::len).collect();
        assert_eq!(lens, vec![1, 2, 1]);
        let total: usize = lens.iter().sum();
        assert_eq!(total, s.labels().len());
    }

    #[test]
    fn declaration_order_is_canonicalized() {
        let a = System::new(
            vec![
                Content::binary("q2").unwrap(),
                Content::binary("q1").unwrap(),
                Content::binary("q3").unwrap(),
            ],
            vec![
                Context::new("c2", None).unwrap(),
                Context::new("c1", None).unwrap(),
            ],
            vec![
                two_variable_bunch("c2", ("q2", "q3"), std::array::from_fn(|_| ratio(1, 4))),
                two_variable_bunch(
                    "c1",
                    ("q1", "q2"),
                    [ratio(1, 2), int(0), int(0), ratio(1, 2)],
                ),
            ],
        )
        .unwrap();
        assert_eq!(a, griffiths_like());
    }

    #[test]
    fn total_variation_and_max_equality() {
        let d1 = Distribution::new(vec![
            ("+1".to_string(), ratio(3, 5)),
            ("-1".to_string(), ratio(2, 5)),
        ])
        .unwrap();
        let d2 = Distribution::new(vec![
            ("+1".to_string(), ratio(4, 5)),
            ("-1".to_string(), ratio(1, 5)),
        ])
        .unwrap();
        assert_eq!(d1.total_variation(&d2).unwrap(), ratio(1, 5));
        assert_eq!(d1.max_equality(&d2).unwrap(), ratio(4, 5));
        assert_eq!(d2.max_equality(&d1).unwrap(), ratio(4, 5));
        assert_eq!(d1.max_equality(&d1).unwrap(), int(1));
    }
}
