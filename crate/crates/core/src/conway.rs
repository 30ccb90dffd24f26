//! Conway-form words, the fraction p/q they present, and Schubert equivalence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwayError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("entry {position} is zero; Conway entries must be non-zero")]
    ZeroEntry { position: usize },
    #[error("word has {len} entries; a Conway form needs an odd number")]
    EvenLength { len: usize },
    #[error("continued fraction degenerates (|p| = {p}); not a two-bridge link")]
    DegenerateFraction { p: String },
    #[error("{word} is not reduced alternating (entries must all be >= 2 or all <= -2)")]
    NotReducedAlternating { word: ConwayWord },
    #[error("no odd-length even-b Conway form equivalent to {p}/{q} within {bound}")]
    SearchExhausted { p: i64, q: i64, bound: SearchBound },
}

impl ConwayError {
    /// True when the input is well formed but falls outside the hypotheses of the construction.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            ConwayError::NotReducedAlternating { .. } | ConwayError::SearchExhausted { .. }
        )
    }
}

/// Twist counts `(a1, b1, a2, ..., bm, a_{m+1})` of a Conway form.
///
/// Even indices (0-based) hold the horizontal twists `a_i`, odd indices the
/// vertical twists `b_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ConwayWord(Vec<i64>);

impl ConwayWord {
    pub fn new(entries: Vec<i64>) -> Result<Self, ConwayError> {
        if entries.len().is_multiple_of(2) {
            return Err(ConwayError::EvenLength { len: entries.len() });
        }
        if let Some(position) = entries.iter().position(|&e| e == 0) {
            return Err(ConwayError::ZeroEntry { position });
        }
        Ok(ConwayWord(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of vertical twist regions.
    pub fn m(&self) -> usize {
        (self.0.len() - 1) / 2
    }

    /// The horizontal twist counts `a_1 .. a_{m+1}`.
    pub fn a(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied().step_by(2)
    }

    /// The vertical twist counts `b_1 .. b_m`.
    pub fn b(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied().skip(1).step_by(2)
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn sum_abs_a(&self) -> u64 {
        self.a().map(i64::unsigned_abs).sum()
    }

    pub fn sum_abs_b(&self) -> u64 {
        self.b().map(i64::unsigned_abs).sum()
    }

    pub fn all_b_even(&self) -> bool {
        self.b().all(|b| b % 2 == 0)
    }

    pub fn is_reduced_alternating(&self) -> bool {
        self.0.iter().all(|&e| e >= 2) || self.0.iter().all(|&e| e <= -2)
    }
}

impl TryFrom<Vec<i64>> for ConwayWord {
    type Error = ConwayError;

    fn try_from(entries: Vec<i64>) -> Result<Self, Self::Error> {
        ConwayWord::new(entries)
    }
}

impl From<ConwayWord> for Vec<i64> {
    fn from(w: ConwayWord) -> Self {
        w.0
    }
}

impl fmt::Display for ConwayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("C(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ConwayWord {
    type Err = ConwayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_conway(s)
    }
}

/// Parse `C(a1,b1,...)` or `[a1,b1,...]`; whitespace is ignored except
/// inside a number.
pub fn parse_conway(text: &str) -> Result<ConwayWord, ConwayError> {
    let toks: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let syntax = |offset: usize, message: &str| ConwayError::Syntax {
        offset,
        message: message.to_string(),
    };
    let end_offset = text.len();
    let mut i;
    let close = match toks.first() {
        Some((_, 'C')) => match toks.get(1) {
            Some((_, '(')) => {
                i = 2;
                ')'
            }
            Some(&(o, _)) => return Err(syntax(o, "expected '(' after 'C'")),
            None => return Err(syntax(end_offset, "expected '(' after 'C'")),
        },
        Some((_, '[')) => {
            i = 1;
            ']'
        }
        Some(&(o, _)) => return Err(syntax(o, "expected 'C(' or '['")),
        None => return Err(syntax(0, "empty input")),
    };

    let mut entries = Vec::new();
    loop {
        let start = i;
        if matches!(toks.get(i), Some((_, '-'))) {
            i += 1;
        }
        let digits_start = i;
        while matches!(toks.get(i), Some((_, c)) if c.is_ascii_digit())
            && (i == digits_start || toks[i].0 == toks[i - 1].0 + 1)
        {
            i += 1;
        }
        if i == digits_start {
            let o = toks.get(i).map_or(end_offset, |t| t.0);
            return Err(syntax(o, "expected an integer"));
        }
        let lit: String = toks[start..i].iter().map(|t| t.1).collect();
        let value = lit
            .parse::<i64>()
            .map_err(|_| syntax(toks[start].0, "integer out of range"))?;
        entries.push(value);
        match toks.get(i) {
            Some((_, ',')) => i += 1,
            Some(&(_, c)) if c == close => {
                i += 1;
                break;
            }
            Some(&(o, _)) => return Err(syntax(o, "expected ',' or closing bracket")),
            None => return Err(syntax(end_offset, "unterminated word")),
        }
    }
    if let Some(&(o, _)) = toks.get(i) {
        return Err(syntax(o, "trailing input"));
    }
    ConwayWord::new(entries)
}

/// Normalized two-bridge classifier `b(p, q)` with `0 < q < p`, `gcd(p, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchubertFraction<I> {
    p: I,
    q: I,
}

impl<I: ExactInt> SchubertFraction<I> {
    /// Build from an arbitrary signed pair `P/Q`, reducing `q` into `(0, p)`.
    pub fn from_pair(num: I, den: I) -> Result<Self, ConwayError> {
        let p = num.abs();
        let two = I::one() + I::one();
        if p < two || !num.gcd(&den).is_one() {
            return Err(ConwayError::DegenerateFraction { p: p.to_string() });
        }
        let signed = if num.is_negative() { -den } else { den };
        let q = signed.mod_floor(&p);
        Ok(SchubertFraction { p, q })
    }

    pub fn p(&self) -> &I {
        &self.p
    }

    pub fn q(&self) -> &I {
        &self.q
    }

    /// Inverse of `q` modulo `p`.
    pub fn q_inverse(&self) -> I {
        let e = self.q.extended_gcd(&self.p);
        e.x.mod_floor(&self.p)
    }

    /// Orbit of residues identified with `q` under the policy.
    pub fn orbit(&self, policy: EquivalencePolicy) -> Vec<I> {
        let qi = self.q_inverse();
        let mut out = vec![self.q.clone(), qi.clone()];
        if policy.allow_mirror {
            out.push((-self.q.clone()).mod_floor(&self.p));
            out.push((-qi).mod_floor(&self.p));
        }
        out
    }

    /// 1 for knots (`p` odd), 2 for two-component links (`p` even).
    pub fn component_count(&self) -> u8 {
        if self.p.is_even() {
            2
        } else {
            1
        }
    }
}

impl<I: fmt::Display> fmt::Display for SchubertFraction<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Numerator and denominator of `c1 + 1/(c2 + 1/(... + 1/cn))`, signs read
/// directly from the word. Evaluated as a product of `[[c,1],[1,0]]`, so no
/// intermediate division happens.
pub fn continued_fraction<I: ExactInt>(entries: &[i64]) -> (I, I) {
    let mut num = I::one();
    let mut den = I::zero();
    for &c in entries.iter().rev() {
        let c = I::from_i64(c).expect("entry fits scalar type");
        let next = c * num.clone() + den;
        den = num;
        num = next;
    }
    (num, den)
}

/// Classify the link presented by `word`, in an arbitrary exact integer type.
pub fn fraction_of_in<I: ExactInt>(word: &ConwayWord) -> Result<SchubertFraction<I>, ConwayError> {
    let (num, den) = continued_fraction::<I>(word.entries());
    SchubertFraction::from_pair(num, den)
}

/// Classify the link presented by `word` using `i64` arithmetic.
pub fn fraction_of(word: &ConwayWord) -> Result<SchubertFraction<i64>, ConwayError> {
    fraction_of_in::<i64>(word)
}

/// Parse `p/q` into a normalized fraction.
pub fn parse_fraction(text: &str) -> Result<SchubertFraction<i64>, ConwayError> {
    let t = text.trim();
    let bad = |offset: usize, message: &str| ConwayError::Syntax { offset, message: message.to_string() };
    let slash = t.find('/').ok_or_else(|| bad(t.len(), "expected p/q"))?;
    let num = t[..slash].trim().parse::<i64>().map_err(|_| bad(0, "bad numerator"))?;
    let den = t[slash + 1..].trim().parse::<i64>().map_err(|_| bad(slash + 1, "bad denominator"))?;
    SchubertFraction::from_pair(num, den)
}

/// Odd-length word with all entries positive presenting `f`, read off the
/// Euclidean algorithm on `p/q`.
pub fn word_for_fraction(f: &SchubertFraction<i64>) -> ConwayWord {
    let (mut a, mut b) = (f.p, f.q);
    let mut entries = Vec::new();
    while b != 0 {
        entries.push(a / b);
        (a, b) = (b, a % b);
    }
    if entries.len() % 2 == 0 {
        let last = entries.pop().expect("non-empty");
        entries.extend([last - 1, 1]);
    }
    ConwayWord::new(entries).expect("Euclid quotients are positive")
}

/// Whether `b(p, q)` and `b(p, p - q)` are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalencePolicy {
    pub allow_mirror: bool,
}

impl EquivalencePolicy {
    pub const STRICT: EquivalencePolicy = EquivalencePolicy { allow_mirror: false };
    pub const UP_TO_MIRROR: EquivalencePolicy = EquivalencePolicy { allow_mirror: true };
}

pub fn schubert_equivalent<I: ExactInt>(
    f1: &SchubertFraction<I>,
    f2: &SchubertFraction<I>,
    policy: EquivalencePolicy,
) -> bool {
    f1.p == f2.p && f1.orbit(policy).contains(&f2.q)
}

pub fn component_count<I: ExactInt>(f: &SchubertFraction<I>) -> u8 {
    f.component_count()
}

pub fn all_b_even(word: &ConwayWord) -> bool {
    word.all_b_even()
}

pub fn twist_number(word: &ConwayWord) -> Result<usize, ConwayError> {
    if !word.is_reduced_alternating() {
        return Err(ConwayError::NotReducedAlternating { word: word.clone() });
    }
    Ok(2 * word.m() + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Mirror,
    Reverse,
}

pub fn transform(word: &ConwayWord, kind: Transform) -> ConwayWord {
    let entries = match kind {
        Transform::Mirror => word.0.iter().map(|e| -e).collect(),
        Transform::Reverse => word.0.iter().rev().copied().collect(),
    };
    ConwayWord(entries)
}

/// Limits for [`even_b_normalize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBound {
    /// Largest `sum |entries|` explored.
    pub max_weight: u64,
    /// Longest word explored.
    pub max_length: usize,
}

impl Default for SearchBound {
    fn default() -> Self {
        SearchBound { max_weight: 40, max_length: 7 }
    }
}

impl fmt::Display for SearchBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight <= {}, length <= {}", self.max_weight, self.max_length)
    }
}

/// Find an odd-length word with every `b_j` even presenting the same link
/// (mirror images not identified).
///
/// Words already satisfying the parity condition come back unchanged.
/// Otherwise lengths are tried in increasing order; within the first length
/// that has solutions, the lightest one is returned, ties broken by the
/// lexicographic order of the entries.
pub fn even_b_normalize(word: &ConwayWord, bound: SearchBound) -> Result<ConwayWord, ConwayError> {
    if word.all_b_even() {
        return Ok(word.clone());
    }
    let target = fraction_of(word)?;
    let mut len = 1;
    while len <= bound.max_length {
        let found = search_length(&target, len, bound.max_weight);
        if let Some(best) = found.into_iter().min_by(|x, y| {
            let wx: u64 = x.iter().map(|e| e.unsigned_abs()).sum();
            let wy: u64 = y.iter().map(|e| e.unsigned_abs()).sum();
            wx.cmp(&wy).then_with(|| x.cmp(y))
        }) {
            return Ok(ConwayWord(best));
        }
        len += 2;
    }
    Err(ConwayError::SearchExhausted {
        p: *target.p(),
        q: *target.q(),
        bound,
    })
}

fn matches_target(target: &SchubertFraction<i64>, num: i128, den: i128) -> bool {
    let p = i128::from(*target.p());
    if num.abs() != p {
        return false;
    }
    let signed = if num < 0 { -den } else { den };
    let q = signed.rem_euclid(p);
    let qi = i128::from(target.q_inverse());
    q == i128::from(*target.q()) || q == qi
}

/// All even-b words of exactly `len` entries and weight `<= max_weight`
/// whose fraction lies in the target's class.
fn search_length(target: &SchubertFraction<i64>, len: usize, max_weight: u64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if len == 1 {
        let p = *target.p();
        for c in [p, -p] {
            if c.unsigned_abs() <= max_weight && matches_target(target, i128::from(c), 1) {
                out.push(vec![c]);
            }
        }
        return out;
    }
    // Enumerate the first len - 2 entries, then solve for the closing (b, a).
    let prefix_len = len - 2;
    let mut prefix = Vec::with_capacity(len);
    // Remaining two entries need weight >= 3 (|b| >= 2, |a| >= 1).
    let Some(prefix_budget) = max_weight.checked_sub(3) else {
        return out;
    };
    enumerate_prefix(
        target,
        &mut prefix,
        prefix_len,
        prefix_budget,
        max_weight,
        [[1, 0], [0, 1]],
        &mut out,
    );
    out
}

fn enumerate_prefix(
    target: &SchubertFraction<i64>,
    prefix: &mut Vec<i64>,
    prefix_len: usize,
    budget: u64,
    max_weight: u64,
    mat: [[i128; 2]; 2],
    out: &mut Vec<Vec<i64>>,
) {
    let pos = prefix.len();
    if pos == prefix_len {
        let used: u64 = prefix.iter().map(|e| e.unsigned_abs()).sum();
        close_word(target, prefix, max_weight - used, mat, out);
        return;
    }
    let is_b = pos % 2 == 1;
    // Reserve minimal weight for the rest of the prefix.
    let rest_min: u64 = (pos + 1..prefix_len).map(|i| if i % 2 == 1 { 2 } else { 1 }).sum();
    let Some(avail) = budget.checked_sub(rest_min) else {
        return;
    };
    let step = if is_b { 2 } else { 1 };
    let mut mag = step;
    while mag <= avail {
        for c in [mag as i64, -(mag as i64)] {
            let ci = i128::from(c);
            let next = [
                [mat[0][0] * ci + mat[0][1], mat[0][0]],
                [mat[1][0] * ci + mat[1][1], mat[1][0]],
            ];
            prefix.push(c);
            enumerate_prefix(target, prefix, prefix_len, budget - mag, max_weight, next, out);
            prefix.pop();
        }
        mag += step;
    }
}

/// Given the prefix matrix `[[al, be], [ga, de]]`, find every closing pair
/// `(x, y)` (x even, both non-zero) with `|x| + |y| <= budget` such that the
/// full word lands in the target class. The full numerator is
/// `y * (al * x + be) + al`.
fn close_word(
    target: &SchubertFraction<i64>,
    prefix: &[i64],
    budget: u64,
    mat: [[i128; 2]; 2],
    out: &mut Vec<Vec<i64>>,
) {
    let [[al, be], [ga, de]] = mat;
    let budget = budget as i128;
    let p = i128::from(*target.p());
    let mut push = |x: i128, y: i128| {
        if x == 0 || y == 0 || x % 2 != 0 || x.abs() + y.abs() > budget {
            return;
        }
        let num = y * (al * x + be) + al;
        let den = y * (ga * x + de) + ga;
        if matches_target(target, num, den) {
            let mut w = prefix.to_vec();
            w.push(x as i64);
            w.push(y as i64);
            if !out.contains(&w) {
                out.push(w);
            }
        }
    };
    let xs = || (2..=budget).step_by(2).flat_map(|x| [x, -x]);
    let ys = || (1..=budget).flat_map(|y| [y, -y]);
    for sign in [1i128, -1] {
        let t = sign * p - al;
        if al == 0 {
            // numerator is y * be
            if be != 0 && t % be == 0 {
                let y = t / be;
                for x in xs() {
                    push(x, y);
                }
            }
            continue;
        }
        if t == 0 {
            // need al * x + be == 0, y free
            if be % al == 0 {
                let x = -be / al;
                for y in ys() {
                    push(x, y);
                }
            }
            continue;
        }
        for d in 1..=t.abs().min(budget) {
            if t % d != 0 {
                continue;
            }
            for y in [d, -d] {
                let r = t / y - be;
                if r % al == 0 {
                    push(r / al, y);
                }
            }
        }
    }
}
