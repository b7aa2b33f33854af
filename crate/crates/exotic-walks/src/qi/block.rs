//! The stretch block map on depth-C subtrees.
//!
//! On a relative word (letters over `{a,b,c}`, length ≤ C) the map acts on
//! the maximal leading b-run and the letter after it:
//!
//! - `b^i`           ↦ `b^i`
//! - `b^i a p`       ↦ `b^i a p`
//! - `b^i c p` (i≥1) ↦ `b^{i-1} c p`
//! - `c p`           ↦ `b^{C-1} c p`
//!
//! Everything below the first `a`/`c` is copied verbatim (the map restricts
//! to the identity on those subtrees). Full blocks therefore land at depths
//! C−1, C or 2C−1; averaged over the 3^C leaves this yields the positive
//! displacement `D_X` that drives the push-forward drift apart.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::QiError;
use crate::word::Letter;

/// Image of a non-empty relative word of length ≤ C under the stretch map.
pub fn apply_x(c: u32, rel: &[Letter]) -> Result<Vec<Letter>, QiError> {
    if rel.is_empty() {
        return Err(QiError::InvalidRelativeWord(
            "relative word must be non-empty".into(),
        ));
    }
    if rel.len() > c as usize {
        return Err(QiError::InvalidRelativeWord(format!(
            "relative word of length {} exceeds block depth {c}",
            rel.len()
        )));
    }
    if rel.contains(&Letter::D) {
        return Err(QiError::InvalidRelativeWord(
            "relative words live below the root: letters must be in {a,b,c}".into(),
        ));
    }
    Ok(apply_x_inner(c, rel))
}

/// Same as [`apply_x`] with the preconditions already established.
/// The empty word maps to the empty word (the block root is fixed).
pub(crate) fn apply_x_inner(c: u32, rel: &[Letter]) -> Vec<Letter> {
    let b_run = rel.iter().take_while(|&&l| l == Letter::B).count();
    if b_run == rel.len() {
        return rel.to_vec();
    }
    match rel[b_run] {
        Letter::A => rel.to_vec(),
        Letter::C if b_run >= 1 => rel[1..].to_vec(),
        Letter::C => {
            let mut out = Vec::with_capacity(c as usize - 1 + rel.len());
            out.extend(std::iter::repeat(Letter::B).take(c as usize - 1));
            out.extend_from_slice(rel);
            out
        }
        Letter::B => unreachable!("b-run is maximal"),
        Letter::D => unreachable!("validated above"),
    }
}

/// Counts of image distances over all 3^r relative words of length r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementDistribution {
    pub c: u32,
    pub r: u32,
    /// image distance ↦ number of relative words mapped to that distance.
    pub counts: BTreeMap<u64, u64>,
}

impl DisplacementDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Average image distance, exact.
    pub fn mean(&self) -> BigRational {
        let num: u64 = self.counts.iter().map(|(d, n)| d * n).sum();
        BigRational::new(BigInt::from(num), BigInt::from(self.total()))
    }
}

/// Enumerates all 3^r relative words of length r through the stretch map
/// and tallies their image distances. For r = C these are the leaf
/// displacements; smaller r gives the partial-block statistics used by the
/// exact sphere-average series.
pub fn displacement_distribution(c: u32, r: u32) -> Result<DisplacementDistribution, QiError> {
    if r < 1 || r > c {
        return Err(QiError::InvalidParameter(format!(
            "partial depth r = {r} must lie in [1, C = {c}]"
        )));
    }
    let mut counts = BTreeMap::new();
    let mut word = vec![Letter::A; r as usize];
    enumerate_rel_words(&mut word, 0, &mut |rel| {
        let img = apply_x_inner(c, rel);
        *counts.entry(img.len() as u64).or_insert(0) += 1;
    });
    Ok(DisplacementDistribution { c, r, counts })
}

fn enumerate_rel_words(word: &mut Vec<Letter>, pos: usize, f: &mut dyn FnMut(&[Letter])) {
    if pos == word.len() {
        f(word);
        return;
    }
    for l in [Letter::A, Letter::B, Letter::C] {
        word[pos] = l;
        enumerate_rel_words(word, pos + 1, f);
    }
}

/// Expected counts of the three leaf classes at full depth r = C:
/// distance C−1 for `b^i c …` (i ≥ 1), distance 2C−1 for `c …`, distance C
/// for the rest.
pub fn closed_form_full_counts(c: u32) -> BTreeMap<u64, u64> {
    let pow = |e: u32| 3u64.pow(e);
    let short = (pow(c - 1) - 1) / 2;
    let long = pow(c - 1);
    let same = pow(c) - short - long;
    debug_assert_eq!(same, (pow(c) + 1) / 2);
    let mut m = BTreeMap::new();
    m.insert((c - 1) as u64, short);
    m.insert(c as u64, same);
    m.insert((2 * c - 1) as u64, long);
    m
}

/// D_X = −C + 3^{-C} Σ_leaf d(image), exact, from the enumeration.
pub fn d_x(c: u32) -> Result<BigRational, QiError> {
    if c < 2 {
        return Err(QiError::InvalidParameter(format!(
            "displacement needs C >= 2, got {c}"
        )));
    }
    let dist = displacement_distribution(c, c)?;
    Ok(dist.mean() - BigRational::from_integer(BigInt::from(c)))
}

/// D_X from the algebraic class counts; must agree with [`d_x`].
pub fn d_x_closed_form(c: u32) -> Result<BigRational, QiError> {
    if c < 2 {
        return Err(QiError::InvalidParameter(format!(
            "displacement needs C >= 2, got {c}"
        )));
    }
    let counts = closed_form_full_counts(c);
    let num: u64 = counts.iter().map(|(d, n)| d * n).sum();
    let total = 3u64.pow(c);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(total))
        - BigRational::from_integer(BigInt::from(c)))
}
