//! Cell identifiers and composite-key helpers.
//!
//! Every cell of a presentation is named by a token, unique within its tier
//! (objects, 1-cells, 2-cells). Cell equality is token equality; this is what
//! makes every cell collection a set with decidable equality.

use serde::{Deserialize, Serialize};
use std::borrow::Borrow;
use std::fmt;

/// A cell token. Ordering is lexicographic, which fixes the deterministic
/// output order used by every enumeration in the kernel.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(pub String);

impl CellId {
    pub fn new(token: impl Into<String>) -> Self {
        CellId(token.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.0)
    }
}

impl From<&str> for CellId {
    fn from(s: &str) -> Self {
        CellId(s.to_string())
    }
}

impl From<String> for CellId {
    fn from(s: String) -> Self {
        CellId(s)
    }
}

impl Borrow<str> for CellId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Separator for composite keys in the JSON table encoding (`"f;g"`).
pub const KEY_SEP: char = ';';

/// Separator for pair tokens produced by the total-bicategory construction
/// (`"base|disp"`), chosen so totals stay re-parsable.
pub const PAIR_SEP: char = '|';

/// Joins tokens into a composite JSON key.
pub fn join_key<'a>(parts: impl IntoIterator<Item = &'a CellId>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 {
            out.push(KEY_SEP);
        }
        out.push_str(p.as_str());
    }
    out
}

/// Splits a composite JSON key into exactly `n` tokens.
pub fn split_key(key: &str, n: usize) -> Option<Vec<CellId>> {
    let parts: Vec<_> = key.split(KEY_SEP).collect();
    if parts.len() != n {
        return None;
    }
    Some(parts.into_iter().map(CellId::from).collect())
}

/// Separator for component tokens of product/sigma/trivial constructions.
pub const GLUE_SEP: char = '&';

fn escape_into(out: &mut String, part: &str, sep: char) {
    for ch in part.chars() {
        if ch == '\\' || ch == sep {
            out.push('\\');
        }
        out.push(ch);
    }
}

/// Joins component tokens with `sep`, escaping occurrences of `sep` and the
/// escape character inside components so the encoding stays injective even
/// for nested constructions.
pub fn compose_token<'a>(sep: char, parts: impl IntoIterator<Item = &'a CellId>) -> CellId {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 {
            out.push(sep);
        }
        escape_into(&mut out, p.as_str(), sep);
    }
    CellId(out)
}

/// Splits a composed token on unescaped occurrences of `sep`.
pub fn split_composed(sep: char, token: &str) -> Vec<CellId> {
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut chars = token.chars();
    while let Some(ch) = chars.next() {
        if ch == '\\' {
            if let Some(next) = chars.next() {
                cur.push(next);
            }
        } else if ch == sep {
            parts.push(CellId(std::mem::take(&mut cur)));
        } else {
            cur.push(ch);
        }
    }
    parts.push(CellId(cur));
    parts
}

/// Builds the pair token `base|disp` used for cells of a total bicategory.
pub fn pair_token(base: &CellId, disp: &CellId) -> CellId {
    compose_token(PAIR_SEP, [base, disp])
}

/// Glues component tokens for product/sigma/trivial fibers.
pub fn glue(parts: &[&CellId]) -> CellId {
    compose_token(GLUE_SEP, parts.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_round_trip() {
        let f = CellId::from("f");
        let g = CellId::from("g");
        let key = join_key([&f, &g]);
        assert_eq!(key, "f;g");
        assert_eq!(split_key(&key, 2), Some(vec![f, g]));
        assert_eq!(split_key("f;g", 3), None);
    }

    #[test]
    fn pair_tokens_are_ordered_like_components() {
        let p = pair_token(&CellId::from("a"), &CellId::from("x"));
        assert_eq!(p.as_str(), "a|x");
    }

    #[test]
    fn composed_tokens_are_injective_under_nesting() {
        let a = CellId::from("x");
        let bc = CellId::from("y&z");
        let ab = CellId::from("x&y");
        let c = CellId::from("z");
        let left = glue(&[&a, &bc]);
        let right = glue(&[&ab, &c]);
        assert_ne!(left, right);
        assert_eq!(split_composed(GLUE_SEP, left.as_str()), vec![a, bc]);
        assert_eq!(split_composed(GLUE_SEP, right.as_str()), vec![ab, c]);
    }
}
