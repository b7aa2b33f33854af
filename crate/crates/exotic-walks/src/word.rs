//! Rooted-tree model of F₂.
//!
//! The Cayley graph of F₂ is a 4-regular tree. We root it at the identity
//! and label the edges to the children of each vertex: the root has four
//! children `a, b, c, d`, every other vertex has three children `a, b, c`.
//! A vertex is identified with the word read along the edge path from the
//! root, so the distance to the identity is the word length and the distance
//! between two vertices is computed from their longest common prefix.

use thiserror::Error;

/// Edge label. Lexicographic order is `a < b < c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

impl Letter {
    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            'd' => Some(Letter::D),
            _ => None,
        }
    }
}

/// The three labels available below the root.
pub const CHILD_LETTERS: [Letter; 3] = [Letter::A, Letter::B, Letter::C];
/// The four labels available at the root.
pub const ROOT_LETTERS: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid address: {0}")]
    InvalidAddress(String),
    #[error("enumeration of {needed} elements exceeds cap {cap}")]
    CapacityExceeded { needed: u128, cap: u64 },
}

/// A vertex of the rooted tree: first letter in `{a,b,c,d}`, all later
/// letters in `{a,b,c}`. The empty word is the root (the identity).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordAddress {
    letters: Vec<Letter>,
}

impl WordAddress {
    /// The root vertex v₀.
    pub fn root() -> Self {
        WordAddress { letters: Vec::new() }
    }

    /// Checks the alphabet invariant and wraps the sequence.
    pub fn validate(letters: Vec<Letter>) -> Result<Self, WordError> {
        for (i, &l) in letters.iter().enumerate() {
            if i >= 1 && l == Letter::D {
                return Err(WordError::InvalidAddress(format!(
                    "letter 'd' at position {i}; 'd' is only valid at position 0"
                )));
            }
        }
        Ok(WordAddress { letters })
    }

    /// Wraps letters that are already known to satisfy the invariant.
    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().skip(1).all(|&l| l != Letter::D));
        WordAddress { letters }
    }

    /// Parses a string such as `"dab"`; the empty string is the root.
    pub fn parse(s: &str) -> Result<Self, WordError> {
        let letters = s
            .chars()
            .map(|c| {
                Letter::from_char(c)
                    .ok_or_else(|| WordError::InvalidAddress(format!("unknown letter '{c}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::validate(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Distance to the identity.
    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    pub fn is_root(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn parent(&self) -> Option<WordAddress> {
        if self.is_root() {
            None
        } else {
            WordAddress {
                letters: self.letters[..self.letters.len() - 1].to_vec(),
            }
            .into()
        }
    }

    /// The 4 tree neighbors: the parent (absent at the root) plus the
    /// children (`a,b,c,d` at the root, `a,b,c` elsewhere).
    pub fn neighbors(&self) -> Vec<WordAddress> {
        let mut out = Vec::with_capacity(4);
        if let Some(p) = self.parent() {
            out.push(p);
        }
        let labels: &[Letter] = if self.is_root() { &ROOT_LETTERS } else { &CHILD_LETTERS };
        for &l in labels {
            let mut letters = self.letters.clone();
            letters.push(l);
            out.push(WordAddress { letters });
        }
        out
    }

    /// Tree metric: `d(u,w) = depth(u) + depth(w) - 2·|lcp(u,w)|`.
    pub fn distance(&self, other: &WordAddress) -> usize {
        let lcp = self
            .letters
            .iter()
            .zip(other.letters.iter())
            .take_while(|(x, y)| x == y)
            .count();
        self.depth() + other.depth() - 2 * lcp
    }

    /// Splits into consecutive relative words of length `c` (the last one may
    /// be shorter); segment `q` starts at depth `q·c`.
    pub fn block_split(&self, c: usize) -> Vec<&[Letter]> {
        assert!(c >= 1, "block length must be positive");
        self.letters.chunks(c).collect()
    }
}

impl std::fmt::Display for WordAddress {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// `|S(i)|`: 1 for i = 0, `4·3^{i-1}` otherwise.
pub fn sphere_size(i: u32) -> u128 {
    if i == 0 {
        1
    } else {
        4 * 3u128.pow(i - 1)
    }
}

/// Number of vertices at distance ≤ r from the root.
pub fn ball_size(r: u32) -> u128 {
    (0..=r).map(sphere_size).sum()
}

/// All addresses of one depth, enumerated in lexicographic order.
#[derive(Debug, Clone)]
pub struct Sphere {
    pub radius: u32,
    pub elements: Vec<WordAddress>,
}

/// Enumerates `S(i)` in lexicographic order, refusing to materialize more
/// than `cap` elements.
pub fn sphere(i: u32, cap: u64) -> Result<Sphere, WordError> {
    let needed = sphere_size(i);
    if needed > cap as u128 {
        return Err(WordError::CapacityExceeded { needed, cap });
    }
    let mut elements = Vec::with_capacity(needed as usize);
    for_each_at_depth(i, &mut |letters| {
        elements.push(WordAddress::from_letters_unchecked(letters.to_vec()));
    });
    Ok(Sphere { radius: i, elements })
}

/// Visits every address of depth exactly `i` in lexicographic order without
/// materializing the sphere. The buffer passed to `f` is reused.
pub fn for_each_at_depth(i: u32, f: &mut dyn FnMut(&[Letter])) {
    let mut buf = Vec::with_capacity(i as usize);
    descend(&mut buf, i as usize, &mut |letters, depth| {
        if depth == i as usize {
            f(letters);
        }
    });
}

/// Visits every address of depth ≤ `r` (including the root) in depth-first
/// lexicographic order.
pub fn for_each_in_ball(r: u32, cap: u64, f: &mut dyn FnMut(&[Letter])) -> Result<(), WordError> {
    let needed = ball_size(r);
    if needed > cap as u128 {
        return Err(WordError::CapacityExceeded { needed, cap });
    }
    let mut buf = Vec::with_capacity(r as usize);
    descend(&mut buf, r as usize, &mut |letters, _| f(letters));
    Ok(())
}

fn descend(buf: &mut Vec<Letter>, max_depth: usize, f: &mut dyn FnMut(&[Letter], usize)) {
    f(buf, buf.len());
    if buf.len() == max_depth {
        return;
    }
    let labels: &[Letter] = if buf.is_empty() { &ROOT_LETTERS } else { &CHILD_LETTERS };
    for &l in labels {
        buf.push(l);
        descend(buf, max_depth, f);
        buf.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_accepts_root_and_depth3() {
        assert_eq!(WordAddress::validate(vec![]).unwrap(), WordAddress::root());
        let w = WordAddress::validate(vec![Letter::D, Letter::A, Letter::B]).unwrap();
        assert_eq!(w.depth(), 3);
        assert_eq!(w.to_string(), "dab");
    }

    #[test]
    fn validate_rejects_late_d() {
        assert!(matches!(
            WordAddress::validate(vec![Letter::A, Letter::D]),
            Err(WordError::InvalidAddress(_))
        ));
    }

    #[test]
    fn parse_round_trips() {
        let w = WordAddress::parse("dcba").unwrap();
        assert_eq!(w.to_string(), "dcba");
        assert!(WordAddress::parse("ax").is_err());
        assert!(WordAddress::parse("ad").is_err());
        assert_eq!(WordAddress::parse("").unwrap(), WordAddress::root());
    }

    #[test]
    fn sphere_sizes_and_order() {
        let cap = 1_000_000;
        assert_eq!(sphere(0, cap).unwrap().elements, vec![WordAddress::root()]);
        let s1 = sphere(1, cap).unwrap();
        assert_eq!(
            s1.elements.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            vec!["a", "b", "c", "d"]
        );
        let s3 = sphere(3, cap).unwrap();
        assert_eq!(s3.elements.len(), 36);
        let mut sorted = s3.elements.clone();
        sorted.sort();
        assert_eq!(sorted, s3.elements, "enumeration must be lexicographic");
    }

    #[test]
    fn sphere_respects_cap() {
        assert!(matches!(
            sphere(20, 100),
            Err(WordError::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn sphere_prefix_closure() {
        let cap = 1_000_000;
        let s4 = sphere(4, cap).unwrap();
        let s3: std::collections::HashSet<_> =
            sphere(3, cap).unwrap().elements.into_iter().collect();
        for w in &s4.elements {
            assert!(s3.contains(&w.parent().unwrap()));
        }
    }

    #[test]
    fn block_split_examples() {
        let w = WordAddress::parse("dabca").unwrap();
        let parts = w.block_split(4);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], WordAddress::parse("dabc").unwrap().letters());
        assert_eq!(parts[1], WordAddress::parse("a").unwrap().letters());

        assert!(WordAddress::root().block_split(3).is_empty());

        let w12 = WordAddress::parse("abcabcabcabc").unwrap();
        let parts = w12.block_split(4);
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.len() == 4));
    }

    #[test]
    fn block_split_concatenation_inverts() {
        for s in ["", "a", "dabcabc", "cbacbacba", "bb"] {
            let w = WordAddress::parse(s).unwrap();
            for c in 1..=5 {
                let joined: Vec<Letter> =
                    w.block_split(c).into_iter().flatten().copied().collect();
                assert_eq!(joined, w.letters());
            }
        }
    }

    #[test]
    fn distance_via_lcp() {
        let u = WordAddress::parse("abc").unwrap();
        let w = WordAddress::parse("abb").unwrap();
        assert_eq!(u.distance(&w), 2);
        assert_eq!(u.distance(&u), 0);
        assert_eq!(u.distance(&WordAddress::root()), 3);
        let x = WordAddress::parse("d").unwrap();
        assert_eq!(u.distance(&x), 4);
    }

    #[test]
    fn neighbors_have_expected_shapes() {
        assert_eq!(WordAddress::root().neighbors().len(), 4);
        let w = WordAddress::parse("ab").unwrap();
        let ns = w.neighbors();
        assert_eq!(ns.len(), 4);
        assert!(ns.contains(&WordAddress::parse("a").unwrap()));
        assert!(ns.iter().all(|n| w.distance(n) == 1));
    }

    #[test]
    fn ball_enumeration_counts() {
        let mut count = 0u64;
        for_each_in_ball(5, 1_000_000, &mut |_| count += 1).unwrap();
        assert_eq!(count as u128, ball_size(5));
        assert_eq!(ball_size(5), 1 + 4 + 12 + 36 + 108 + 324);
    }
}
