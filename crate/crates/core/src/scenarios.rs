//! Generators for reference systems and seeded random samplers.
//!
//! Three named families: the four-context double-slit detection system
//! (one binary content recorded under four slit arrangements), the
//! cyclic-rank-4 system of eight binary variables in four two-variable
//! bunches, and the two-context three-content system in which the middle
//! content appears in both contexts. The samplers draw valid systems of
//! these shapes from rational grids, deterministically in the seed.

use crate::rational::{int, is_probability, ratio, Rational};
use crate::system::{Bunch, Content, ContentId, Context, System, SystemError};
use num::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("probability {0} is outside [0, 1]")]
    OutOfRangeProbability(Rational),
    #[error(
        "bunch `{context}` has no valid pmf for the requested moments (cell {cell} is negative)"
    )]
    InvalidMoments { context: String, cell: Rational },
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Moment parameterization of a cyclic-rank-4 system: one product
/// expectation per context, and the expectation of each member variable.
/// Contexts pair the contents as c1:(A1,B1), c2:(B1,A2), c3:(A2,B2),
/// c4:(B2,A1), so neighbouring contexts share one content.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclic4Params {
    /// Product expectations for contexts c1..c4, in [-1, 1].
    pub expectations: [Rational; 4],
    /// Per-context expectations of the (first, second) member, in [-1, 1].
    pub marginals: [(Rational, Rational); 4],
}

impl Cyclic4Params {
    /// Product expectations with all eight marginal expectations zero.
    pub fn with_zero_marginals(expectations: [Rational; 4]) -> Self {
        Cyclic4Params {
            expectations,
            marginals: std::array::from_fn(|_| (Rational::zero(), Rational::zero())),
        }
    }
}

/// Member layout of the cyclic-rank-4 contexts.
pub const CYCLIC4_LAYOUT: [(&str, &str); 4] =
    [("A1", "B1"), ("B1", "A2"), ("A2", "B2"), ("B2", "A1")];

/// One binary content `hit` recorded under four slit arrangements;
/// `p[c]` is the detection probability in context `c+1`.
pub fn make_double_slit(
    p1: Rational,
    p2: Rational,
    p3: Rational,
    p4: Rational,
) -> Result<System, ScenarioError> {
    let labels = [
        "both slits are closed",
        "only the left slit is open",
        "only the right slit is open",
        "both slits are open",
    ];
    let ps = [p1, p2, p3, p4];
    for p in &ps {
        if !is_probability(p) {
            return Err(ScenarioError::OutOfRangeProbability(p.clone()));
        }
    }
    let mut contexts = Vec::new();
    let mut bunches = Vec::new();
    for (i, (p, label)) in ps.into_iter().zip(labels).enumerate() {
        let id = format!("c{}", i + 1);
        contexts.push(Context::new(id.as_str(), Some(label.to_string()))?);
        bunches.push(binary_singleton_bunch(&id, "hit", p)?);
    }
    Ok(System::new(
        vec![Content::binary("hit")?],
        contexts,
        bunches,
    )?)
}

/// A cyclic-rank-4 system from moments. Each bunch cell is
/// `(1 + s1·m1 + s2·m2 + s1·s2·e) / 4` for signs `s ∈ {+1, -1}`; the
/// parameters are valid exactly when all four cells of every bunch are
/// nonnegative.
pub fn make_cyclic4(params: &Cyclic4Params) -> Result<System, ScenarioError> {
    let contents = vec![
        Content::binary("A1")?,
        Content::binary("A2")?,
        Content::binary("B1")?,
        Content::binary("B2")?,
    ];
    let mut contexts = Vec::new();
    let mut bunches = Vec::new();
    for (c, (first, second)) in CYCLIC4_LAYOUT.iter().enumerate() {
        let id = format!("c{}", c + 1);
        contexts.push(Context::new(id.as_str(), None)?);
        let e = &params.expectations[c];
        let (m1, m2) = &params.marginals[c];
        let mut pmf = Vec::new();
        for (s1, v1) in [(int(1), "+1"), (int(-1), "-1")] {
            for (s2, v2) in [(int(1), "+1"), (int(-1), "-1")] {
                let cell = (int(1) + &s1 * m1 + &s2 * m2 + &s1 * &s2 * e) / int(4);
                if cell.is_negative() {
                    return Err(ScenarioError::InvalidMoments {
                        context: id.clone(),
                        cell,
                    });
                }
                pmf.push((vec![v1.to_string(), v2.to_string()], cell));
            }
        }
        bunches.push(Bunch::new(
            id.as_str(),
            [ContentId::new(*first), ContentId::new(*second)],
            pmf,
        )?);
    }
    Ok(System::new(contents, contexts, bunches)?)
}

/// The two-context system over contents q1, q2, q3 where q2 appears in
/// both contexts: c1 holds (q1, q2) and c2 holds (q2, q3). Cells are given
/// in the order (+1,+1), (+1,-1), (-1,+1), (-1,-1).
pub fn make_griffiths(b1: &[Rational; 4], b2: &[Rational; 4]) -> Result<System, ScenarioError> {
    let contents = vec![
        Content::binary("q1")?,
        Content::binary("q2")?,
        Content::binary("q3")?,
    ];
    let contexts = vec![Context::new("c1", None)?, Context::new("c2", None)?];
    let bunches = vec![
        binary_pair_bunch("c1", ("q1", "q2"), b1)?,
        binary_pair_bunch("c2", ("q2", "q3"), b2)?,
    ];
    Ok(System::new(contents, contexts, bunches)?)
}

fn binary_singleton_bunch(
    context: &str,
    content: &str,
    p: Rational,
) -> Result<Bunch, ScenarioError> {
    Ok(Bunch::new(
        context,
        [ContentId::new(content)],
        vec![
            (vec!["+1".to_string()], p.clone()),
            (vec!["-1".to_string()], int(1) - p),
        ],
    )?)
}

fn binary_pair_bunch(
    context: &str,
    members: (&str, &str),
    cells: &[Rational; 4],
) -> Result<Bunch, ScenarioError> {
    let keys = [["+1", "+1"], ["+1", "-1"], ["-1", "+1"], ["-1", "-1"]];
    Ok(Bunch::new(
        context,
        [ContentId::new(members.0), ContentId::new(members.1)],
        keys.iter()
            .zip(cells)
            .map(|(k, p)| (k.iter().map(|s| s.to_string()).collect(), p.clone()))
            .collect::<Vec<_>>(),
    )?)
}

/// Shapes the random sampler can draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemShape {
    /// Cyclic rank 4. With `consistent_marginals` the four contents get
    /// one marginal each, shared by both contexts where they appear;
    /// otherwise all eight variables get independent marginals.
    Cyclic4 { consistent_marginals: bool },
    /// Two contexts over three contents with the middle one shared.
    Griffiths,
    /// One binary content in `contexts` singleton contexts.
    SingleContent { contexts: usize },
}

/// Draws a valid system of the given shape, with every probability a
/// fraction with denominator `denominator_bound`. Deterministic in the
/// seed: equal seeds give equal systems.
pub fn sample_random_system(shape: SystemShape, denominator_bound: u64, seed: u64) -> System {
    assert!(
        denominator_bound >= 2,
        "denominator bound must be at least 2"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = denominator_bound;
    match shape {
        SystemShape::SingleContent { contexts } => {
            assert!(contexts >= 1);
            let ps: Vec<Rational> = (0..contexts).map(|_| rand_prob(&mut rng, d)).collect();
            let ctxs: Vec<Context> = (1..=contexts)
                .map(|i| Context::new(format!("c{i}"), None).unwrap())
                .collect();
            let bunches: Vec<Bunch> = ps
                .into_iter()
                .enumerate()
                .map(|(i, p)| binary_singleton_bunch(&format!("c{}", i + 1), "q", p).unwrap())
                .collect();
            System::new(vec![Content::binary("q").unwrap()], ctxs, bunches).unwrap()
        }
        SystemShape::Griffiths => {
            let b1 = rand_pmf4(&mut rng, d);
            let b2 = rand_pmf4(&mut rng, d);
            make_griffiths(&b1, &b2).unwrap()
        }
        SystemShape::Cyclic4 {
            consistent_marginals,
        } => {
            // Draw a detection probability for each variable (shared per
            // content when consistency is requested), then a joint for
            // each bunch compatible with its two margins.
            let content_probs: Vec<Rational> = (0..4).map(|_| rand_prob(&mut rng, d)).collect();
            let content_index = |name: &str| match name {
                "A1" => 0,
                "B1" => 1,
                "A2" => 2,
                "B2" => 3,
                _ => unreachable!(),
            };
            let mut bunches = Vec::new();
            let mut contexts = Vec::new();
            for (c, (first, second)) in CYCLIC4_LAYOUT.iter().enumerate() {
                let id = format!("c{}", c + 1);
                contexts.push(Context::new(id.as_str(), None).unwrap());
                let p1 = if consistent_marginals {
                    content_probs[content_index(first)].clone()
                } else {
                    rand_prob(&mut rng, d)
                };
                let p2 = if consistent_marginals {
                    content_probs[content_index(second)].clone()
                } else {
                    rand_prob(&mut rng, d)
                };
                let cells = rand_joint_with_margins(&mut rng, d, &p1, &p2);
                bunches.push(binary_pair_bunch(&id, (first, second), &cells).unwrap());
            }
            let contents = vec![
                Content::binary("A1").unwrap(),
                Content::binary("A2").unwrap(),
                Content::binary("B1").unwrap(),
                Content::binary("B2").unwrap(),
            ];
            System::new(contents, contexts, bunches).unwrap()
        }
    }
}

fn rand_prob(rng: &mut ChaCha8Rng, d: u64) -> Rational {
    ratio(rng.gen_range(0..=d) as i64, d as i64)
}

/// Uniform pmf on four cells with denominator `d`, by rejection over the
/// integer grid.
fn rand_pmf4(rng: &mut ChaCha8Rng, d: u64) -> [Rational; 4] {
    loop {
        let a = rng.gen_range(0..=d);
        let b = rng.gen_range(0..=d);
        let c = rng.gen_range(0..=d);
        if a + b + c <= d {
            let rest = d - a - b - c;
            return [
                ratio(a as i64, d as i64),
                ratio(b as i64, d as i64),
                ratio(c as i64, d as i64),
                ratio(rest as i64, d as i64),
            ];
        }
    }
}

/// Uniform draw of a 2x2 joint with the two given margins, over the grid
/// of numerators with denominator `d`. The (+1,+1) cell ranges over the
/// integer interval [max(0, k1+k2-d), min(k1, k2)].
fn rand_joint_with_margins(
    rng: &mut ChaCha8Rng,
    d: u64,
    p1: &Rational,
    p2: &Rational,
) -> [Rational; 4] {
    let k1 = (p1 * int(d as i64)).to_integer().to_i64().unwrap() as u64;
    let k2 = (p2 * int(d as i64)).to_integer().to_i64().unwrap() as u64;
    let lo = (k1 + k2).saturating_sub(d);
    let hi = k1.min(k2);
    let t = rng.gen_range(lo..=hi);
    [
        ratio(t as i64, d as i64),
        ratio((k1 - t) as i64, d as i64),
        ratio((k2 - t) as i64, d as i64),
        ratio((d + t - k1 - k2) as i64, d as i64),
    ]
}
