//! Zigzag words: index sequences that never pass "between" their neighbours.
//!
//! Three characterizations live here: the defining betweenness conditions
//! ([`is_zigzag`]), the equivalent sign/monotone-prefix test
//! ([`is_zigzag_via_signs`]) and the specialization to the types `[n]`
//! ([`is_bracket_zigzag`]). They are kept independent so tests can compare
//! them against each other.

use super::{enumerate_words, Word, WordType};
use crate::error::{Error, Result};

/// `m` is between `i, j` when `i >= m > j` or `i <= m < j`.
fn between(i: i64, j: i64, m: i64) -> bool {
    (i >= m && m > j) || (i <= m && m < j)
}

fn signed(w: &Word) -> Vec<i64> {
    w.indices().iter().map(|&i| i as i64).collect()
}

/// Direct evaluation of the betweenness definition.
pub fn is_zigzag(w: &Word) -> bool {
    let g = signed(w);
    let n = g.len();
    // 0-based: middle letters 1..=n-2
    for i in 1..n.saturating_sub(1) {
        if between(g[i - 1], g[i + 1], g[i]) {
            return false;
        }
    }
    for i in 2..n.saturating_sub(1) {
        if between(g[i - 2], g[i + 1], g[i - 1]) && between(g[i - 2], g[i + 1], g[i]) {
            return false;
        }
    }
    true
}

/// Consecutive index differences `g_j - g_{j+1}`.
fn differences(w: &Word) -> Vec<i64> {
    signed(w).windows(2).map(|p| p[0] - p[1]).collect()
}

/// Sign-based characterization: consecutive differences have opposite sign
/// (product <= 0), and any strict growth `|d_{i-1}| < |d_i|` forces the whole
/// prefix `0 < |d_1| < ... < |d_i|`.
pub fn is_zigzag_via_signs(w: &Word) -> bool {
    let diffs = differences(w);
    let abs: Vec<i64> = diffs.iter().map(|x| x.abs()).collect();
    for i in 1..diffs.len() {
        if diffs[i - 1] * diffs[i] > 0 {
            return false;
        }
        if abs[i - 1] < abs[i] {
            let prefix_ok = abs[0] > 0 && abs[..=i].windows(2).all(|p| p[0] < p[1]);
            if !prefix_ok {
                return false;
            }
        }
    }
    true
}

/// All `kappa` in `2..=n` (1-based letter positions) with a strictly
/// increasing positive run `|d_1| < ... < |d_{kappa-1}|` followed by a
/// nonincreasing tail from `|d_{kappa-1}|`.
pub fn kappa_candidates(w: &Word) -> Vec<usize> {
    let abs: Vec<i64> = differences(w).iter().map(|x| x.abs()).collect();
    let n = w.len();
    (2..=n)
        .filter(|&kappa| {
            let head = &abs[..kappa - 1];
            let tail = &abs[kappa - 2..];
            head[0] > 0
                && head.windows(2).all(|p| p[0] < p[1])
                && tail.windows(2).all(|p| p[0] >= p[1])
        })
        .collect()
}

/// The turning point of a nonconstant zigzag word.
pub fn kappa_of(w: &Word) -> Result<usize> {
    if w.is_constant() {
        return Err(Error::NotApplicable(
            "kappa is undefined for constant words",
        ));
    }
    if !is_zigzag(w) {
        return Err(Error::NotApplicable(
            "kappa is undefined for non-zigzag words",
        ));
    }
    match kappa_candidates(w).as_slice() {
        [k] => Ok(*k),
        _ => Err(Error::NotApplicable("no unique kappa")),
    }
}

/// Zigzag test for words of type `[n]`: every odd position (1-based) has
/// index 0 and the even positions are nonincreasing. `None` if `w` is not of
/// a bracket type.
pub fn is_bracket_zigzag(w: &Word) -> Option<bool> {
    w.word_type().as_bracket()?;
    let g = w.indices();
    let odd_zero = g.iter().step_by(2).all(|&x| x == 0);
    let evens: Vec<u8> = g.iter().skip(1).step_by(2).copied().collect();
    Some(odd_zero && evens.windows(2).all(|p| p[0] >= p[1]))
}

/// Zigzag words of type `lambda`, in [`enumerate_words`] order.
pub fn enumerate_zigzag(lambda: &WordType, d: usize) -> Result<Vec<Word>> {
    Ok(enumerate_words(lambda, d)?
        .into_iter()
        .filter(is_zigzag)
        .collect())
}
