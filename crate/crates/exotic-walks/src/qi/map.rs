//! The global bijection `f` and its inverse.
//!
//! `f` threads block images: writing w = s₀s₁s₂… in depth-C segments, block
//! 0 is copied and block q is copied or stretched according to q ∈ 𝒳. A
//! word ending mid-block takes the image of the partial relative word — the
//! block maps are defined on every vertex of the block subtree, not only on
//! its leaves.
//!
//! The inverse is a greedy left-to-right parse. Stretched block images are
//! classified by their maximal leading b-run and the letter after it, which
//! pins down both the preimage segment and how many letters the image
//! consumed:
//!
//! - all b's (up to C of them): preimage = the same b-run;
//! - `b^j a …`: image length C (or the final partial block), preimage as-is;
//! - `b^j c …` with j ≤ C−2: image length C−1, preimage prepends one `b`;
//! - `b^{C-1} c …`: image length 2C−1, preimage drops the b-run.
//!
//! Every suffix falls in exactly one class, so the parse is total: this is
//! the computational face of `f` being a bijection.

use super::block::apply_x_inner;
use super::QiConfig;
use crate::word::{Letter, WordAddress};

/// Applies the quasi-isometry to one address.
pub fn apply_f(w: &WordAddress, cfg: &QiConfig) -> WordAddress {
    let c = cfg.c() as usize;
    let mut out = Vec::with_capacity(w.depth() + w.depth() / c + cfg.c() as usize);
    for (q, segment) in w.letters().chunks(c).enumerate() {
        if q > 0 && cfg.in_x(q as u64) {
            out.extend(apply_x_inner(cfg.c(), segment));
        } else {
            out.extend_from_slice(segment);
        }
    }
    WordAddress::from_letters_unchecked(out)
}

/// The unique preimage of an address under `f`. Total: every address is an
/// image, so there is no failure case.
pub fn invert_f(w: &WordAddress, cfg: &QiConfig) -> WordAddress {
    let c = cfg.c() as usize;
    let letters = w.letters();
    let mut out = Vec::with_capacity(letters.len() + letters.len() / c + 1);
    let mut pos = 0usize;
    let mut q = 0u64;
    while pos < letters.len() {
        let rem = &letters[pos..];
        if q == 0 || !cfg.in_x(q) {
            let take = rem.len().min(c);
            out.extend_from_slice(&rem[..take]);
            pos += take;
        } else {
            let b_run = rem.iter().take(c).take_while(|&&l| l == Letter::B).count();
            if b_run == rem.len().min(c) {
                // Pure b-run: either a full b^C block or the final partial one.
                let take = rem.len().min(c);
                out.extend_from_slice(&rem[..take]);
                pos += take;
            } else {
                match rem[b_run] {
                    Letter::A => {
                        let take = rem.len().min(c);
                        out.extend_from_slice(&rem[..take]);
                        pos += take;
                    }
                    Letter::C if b_run <= c - 2 => {
                        let take = rem.len().min(c - 1);
                        out.push(Letter::B);
                        out.extend_from_slice(&rem[..take]);
                        pos += take;
                    }
                    Letter::C => {
                        // b^{C-1} c …: image of `c p`, spanning up to 2C−1 letters.
                        let take = rem.len().min(2 * c - 1);
                        out.extend_from_slice(&rem[c - 1..take]);
                        pos += take;
                    }
                    Letter::B => unreachable!("b-run is maximal"),
                    Letter::D => unreachable!("'d' only occurs in block 0"),
                }
            }
        }
        q += 1;
    }
    WordAddress::from_letters_unchecked(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word;

    fn cfg4() -> QiConfig {
        QiConfig::with_literal_base(4).unwrap()
    }

    fn f(s: &str) -> String {
        apply_f(&WordAddress::parse(s).unwrap(), &cfg4()).to_string()
    }

    #[test]
    fn identity_on_root_block() {
        assert_eq!(f(""), "");
        assert_eq!(f("d"), "d");
        assert_eq!(f("dabc"), "dabc");
        assert_eq!(f("abc"), "abc");
    }

    #[test]
    fn block_one_is_stretched() {
        // Depth 8 word, second segment "cabb" inside block 1 ∈ [1, 8).
        assert_eq!(f("aaaacabb"), "aaaabbbcabb");
        // Partial block 1.
        assert_eq!(f("aaaac"), "aaaabbbc");
        assert_eq!(f("aaaabc"), "aaaac");
    }

    #[test]
    fn block_eight_is_identity() {
        // Blocks 1..7 stretched, block 8 ∉ [1,8) ∪ [64,512) copied.
        let w = "a".repeat(32) + "cabb";
        let img = f(&w);
        assert!(img.ends_with("cabb"));
        // Blocks 1..=7 are all-a segments: fixed by the stretch map.
        assert_eq!(img, w);
    }

    #[test]
    fn depth_bounds_hold() {
        let cfg = cfg4();
        word::for_each_in_ball(9, 1_000_000, &mut |letters| {
            let w = WordAddress::validate(letters.to_vec()).unwrap();
            let img = apply_f(&w, &cfg);
            let d = w.depth() as f64;
            let di = img.depth() as f64;
            assert!(di <= 4.0 * d && d <= 4.0 * di, "word {w}: image {img}");
        })
        .unwrap();
    }

    #[test]
    fn round_trip_on_ball() {
        let cfg = cfg4();
        word::for_each_in_ball(9, 1_000_000, &mut |letters| {
            let w = WordAddress::validate(letters.to_vec()).unwrap();
            let img = apply_f(&w, &cfg);
            assert_eq!(invert_f(&img, &cfg), w, "round trip failed for {w}");
        })
        .unwrap();
    }

    #[test]
    fn inverse_round_trip_other_direction() {
        // f(invert_f(m)) = m over a ball: surjectivity at desk scale.
        let cfg = cfg4();
        word::for_each_in_ball(9, 1_000_000, &mut |letters| {
            let m = WordAddress::validate(letters.to_vec()).unwrap();
            let pre = invert_f(&m, &cfg);
            assert_eq!(apply_f(&pre, &cfg), m, "no preimage recovered for {m}");
        })
        .unwrap();
    }

    #[test]
    fn round_trip_deep_random_words() {
        use rand::{Rng, SeedableRng};
        let cfg = cfg4();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(417);
        for _ in 0..50 {
            let depth = rng.gen_range(1_000..10_000);
            let mut letters = Vec::with_capacity(depth);
            letters.push(word::ROOT_LETTERS[rng.gen_range(0..4)]);
            for _ in 1..depth {
                letters.push(word::CHILD_LETTERS[rng.gen_range(0..3)]);
            }
            let w = WordAddress::validate(letters).unwrap();
            let img = apply_f(&w, &cfg);
            assert_eq!(invert_f(&img, &cfg), w);
        }
    }
}
