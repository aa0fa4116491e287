//! Plain-text system files.
//!
//! The format is line-oriented UTF-8 with `#` comments:
//!
//! ```text
//! content <id> outcomes <v1> <v2> ...
//! context <id> ["description"]
//! bunch <context-id> members <q1> <q2> ...
//!   <v1> <v2> ... : <rational>
//! ```
//!
//! Indented lines are pmf entries of the most recent `bunch` directive; one
//! outcome per member, in member order, followed by `:` and the probability
//! as `p/q` or an exact decimal. Outcome tuples not listed have probability
//! zero. Directives may appear in any order; forward references are fine.
//!
//! [`serialize_system`] emits the canonical form: contents, then contexts,
//! then bunches, each sorted by id; pmf keys in outcome-set order; zero
//! entries and empty descriptions omitted; probabilities always as `p/q`.
//! Parsing a canonical file yields the system it was produced from.

use crate::rational::{format_rational, parse_rational, Rational};
use crate::system::{Bunch, Content, Context, System, SystemError};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] SystemError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug)]
struct Token {
    text: String,
    column: usize,
    quoted: bool,
}

/// Strips a `#` comment, ignoring `#` inside double quotes.
fn strip_comment(line: &str) -> &str {
    let mut in_quotes = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => return &line[..i],
            _ => {}
        }
    }
    line
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let column = i + 1;
        if chars[i] == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' {
                j += 1;
            }
            if j == chars.len() {
                return Err(syntax(lineno, column, "unterminated string"));
            }
            tokens.push(Token {
                text: chars[start..j].iter().collect(),
                column,
                quoted: true,
            });
            i = j + 1;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '"' {
                i += 1;
            }
            tokens.push(Token {
                text: chars[start..i].iter().collect(),
                column,
                quoted: false,
            });
        }
    }
    Ok(tokens)
}

fn expect_word(token: &Token, lineno: usize, what: &str) -> Result<String, ParseError> {
    if token.quoted {
        return Err(syntax(lineno, token.column, format!("expected {what}")));
    }
    Ok(token.text.clone())
}

struct RawBunch {
    context: String,
    members: Vec<String>,
    entries: Vec<(Vec<String>, Rational)>,
}

/// Parses a system file. Syntax errors carry line and column; validation
/// errors (bad pmf sums, duplicate labels, unknown outcome symbols) are the
/// same errors [`System::new`] reports.
pub fn parse_system(text: &str) -> Result<System, ParseError> {
    let mut contents: Vec<Content> = Vec::new();
    let mut contexts: Vec<Context> = Vec::new();
    let mut raw_bunches: Vec<RawBunch> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw_line);
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.chars().next().is_some_and(char::is_whitespace);
        let tokens = tokenize(line, lineno)?;

        if indented {
            let bunch = raw_bunches
                .last_mut()
                .ok_or_else(|| syntax(lineno, 1, "pmf entry outside of a bunch"))?;
            let sep = tokens
                .iter()
                .position(|t| !t.quoted && t.text == ":")
                .ok_or_else(|| syntax(lineno, 1, "pmf entry needs ` : ` before the probability"))?;
            if sep == 0 {
                return Err(syntax(
                    lineno,
                    tokens[0].column,
                    "pmf entry has no outcomes",
                ));
            }
            if sep + 1 != tokens.len() - 1 {
                return Err(syntax(
                    lineno,
                    tokens[sep].column,
                    "expected exactly one probability after `:`",
                ));
            }
            let mut key = Vec::new();
            for t in &tokens[..sep] {
                key.push(expect_word(t, lineno, "an outcome symbol")?);
            }
            let prob_token = &tokens[sep + 1];
            let p = parse_rational(&prob_token.text)
                .map_err(|e| syntax(lineno, prob_token.column, e.to_string()))?;
            bunch.entries.push((key, p));
            continue;
        }

        match tokens[0].text.as_str() {
            "content" => {
                if tokens.len() < 3 || tokens[1].quoted {
                    return Err(syntax(
                        lineno,
                        tokens[0].column,
                        "usage: content <id> outcomes <v1> <v2> ...",
                    ));
                }
                if tokens[2].text != "outcomes" || tokens[2].quoted {
                    return Err(syntax(lineno, tokens[2].column, "expected `outcomes`"));
                }
                let id = tokens[1].text.clone();
                let mut outcomes = Vec::new();
                for t in &tokens[3..] {
                    outcomes.push(expect_word(t, lineno, "an outcome symbol")?);
                }
                contents.push(Content::new(id, outcomes)?);
            }
            "context" => {
                if tokens.len() < 2 || tokens[1].quoted {
                    return Err(syntax(
                        lineno,
                        tokens[0].column,
                        "usage: context <id> [\"description\"]",
                    ));
                }
                let label = match tokens.len() {
                    2 => None,
                    3 if tokens[2].quoted => Some(tokens[2].text.clone()),
                    _ => {
                        return Err(syntax(
                            lineno,
                            tokens[2].column,
                            "context description must be a single quoted string",
                        ))
                    }
                };
                contexts.push(Context::new(tokens[1].text.as_str(), label)?);
            }
            "bunch" => {
                if tokens.len() < 4 || tokens[1].quoted {
                    return Err(syntax(
                        lineno,
                        tokens[0].column,
                        "usage: bunch <context-id> members <q1> <q2> ...",
                    ));
                }
                if tokens[2].text != "members" || tokens[2].quoted {
                    return Err(syntax(lineno, tokens[2].column, "expected `members`"));
                }
                let mut members = Vec::new();
                for t in &tokens[3..] {
                    members.push(expect_word(t, lineno, "a content id")?);
                }
                raw_bunches.push(RawBunch {
                    context: tokens[1].text.clone(),
                    members,
                    entries: Vec::new(),
                });
            }
            other => {
                return Err(syntax(
                    lineno,
                    tokens[0].column,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }

    let mut bunches = Vec::new();
    for raw in raw_bunches {
        bunches.push(Bunch::new(raw.context, raw.members, raw.entries)?);
    }
    Ok(System::new(contents, contexts, bunches)?)
}

/// Serializes a system in canonical form. Parsing the output reproduces the
/// system exactly.
pub fn serialize_system(system: &System) -> String {
    let mut out = String::new();
    for content in system.contents() {
        out.push_str("content ");
        out.push_str(content.id().as_str());
        out.push_str(" outcomes");
        for v in content.outcomes() {
            out.push(' ');
            out.push_str(v);
        }
        out.push('\n');
    }
    for context in system.contexts() {
        out.push_str("context ");
        out.push_str(context.id().as_str());
        if let Some(label) = context.label() {
            if !label.is_empty() {
                out.push_str(" \"");
                out.push_str(label);
                out.push('"');
            }
        }
        out.push('\n');
    }
    for bunch in system.bunches() {
        out.push_str("bunch ");
        out.push_str(bunch.context().as_str());
        out.push_str(" members");
        for m in bunch.members() {
            out.push(' ');
            out.push_str(m.as_str());
        }
        out.push('\n');
        let outcome_sets: Vec<&[String]> = bunch
            .members()
            .iter()
            .map(|m| system.content(m).expect("validated system").outcomes())
            .collect();
        for key in product_keys(&outcome_sets) {
            let p = bunch.probability(&key);
            if p.is_zero() {
                continue;
            }
            out.push_str("  ");
            for (i, v) in key.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(v);
            }
            out.push_str(" : ");
            out.push_str(&format_rational(&p));
            out.push('\n');
        }
    }
    out
}

/// All outcome tuples of a product space, in outcome-set order (first
/// coordinate most significant).
pub(crate) fn product_keys(outcome_sets: &[&[String]]) -> Vec<Vec<String>> {
    let total: usize = outcome_sets.iter().map(|s| s.len()).product();
    let mut keys = Vec::with_capacity(total);
    let mut digits = vec![0usize; outcome_sets.len()];
    for _ in 0..total {
        keys.push(
            digits
                .iter()
                .zip(outcome_sets)
                .map(|(&d, set)| set[d].clone())
                .collect(),
        );
        for pos in (0..digits.len()).rev() {
            digits[pos] += 1;
            if digits[pos] < outcome_sets[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
    keys
}
