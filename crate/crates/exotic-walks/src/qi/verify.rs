//! Distortion and bijectivity verification.
//!
//! For any two vertices, the tree geodesic threads their block ancestors,
//! and both the original and the image distance split into sums over
//! single-block segments. A ratio of sums lies between the extreme ratios of
//! its terms, and every single-block pair is itself a pair of ball elements,
//! so the maximum distortion over *all* pairs of a ball equals the maximum
//! over same-block pairs. The ball verifier therefore evaluates the two
//! per-block-type pair tables (stretch and identity) instead of the
//! quadratically many raw pairs — same value, exact, in microseconds.
//! `verify_qi_bruteforce` is the literal all-pairs loop used to certify the
//! equality on small balls.

use rand::{Rng, SeedableRng};

use super::block::apply_x_inner;
use super::map::{apply_f, invert_f};
use super::{QiConfig, QiError};
use crate::budget::Budget;
use crate::word::{self, Letter, WordAddress, WordError};

/// Outcome of a distortion check.
#[derive(Debug, Clone)]
pub struct DistortionReport {
    /// max over tested pairs of max(d(fu,fw)/d(u,w), d(u,w)/d(fu,fw)).
    pub max_ratio: f64,
    /// Number of (unordered) pairs the bound covers.
    pub pairs_covered: u128,
    pub mode: String,
}

/// Outcome of the injectivity / round-trip sweep over a ball.
#[derive(Debug, Clone)]
pub struct BijectivityReport {
    pub radius: u32,
    pub elements: u64,
    pub injective: bool,
    pub round_trips_ok: bool,
}

fn tree_distance(a: &[Letter], b: &[Letter]) -> usize {
    let lcp = a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count();
    a.len() + b.len() - 2 * lcp
}

fn pair_ratio(d_orig: usize, d_img: usize) -> f64 {
    let a = d_img as f64 / d_orig as f64;
    let b = d_orig as f64 / d_img as f64;
    a.max(b)
}

/// All relative words over {a,b,c} of depth ≤ c, in DFS order.
fn rel_ball(c: u32) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    fn go(buf: &mut Vec<Letter>, depth_left: u32, out: &mut Vec<Vec<Letter>>) {
        out.push(buf.clone());
        if depth_left == 0 {
            return;
        }
        for l in [Letter::A, Letter::B, Letter::C] {
            buf.push(l);
            go(buf, depth_left - 1, out);
            buf.pop();
        }
    }
    go(&mut buf, c, &mut out);
    out
}

/// `table[d]` = max distortion ratio over pairs of stretch-block vertices
/// whose depths are both ≤ d.
fn stretch_pair_table(c: u32) -> Vec<f64> {
    let rels = rel_ball(c);
    let images: Vec<Vec<Letter>> = rels.iter().map(|r| apply_x_inner(c, r)).collect();
    let mut by_dmax = vec![1.0f64; c as usize + 1];
    for i in 0..rels.len() {
        for j in (i + 1)..rels.len() {
            let d = tree_distance(&rels[i], &rels[j]);
            let di = tree_distance(&images[i], &images[j]);
            let dm = rels[i].len().max(rels[j].len());
            let r = pair_ratio(d, di);
            if r > by_dmax[dm] {
                by_dmax[dm] = r;
            }
        }
    }
    for dm in 1..by_dmax.len() {
        by_dmax[dm] = by_dmax[dm].max(by_dmax[dm - 1]);
    }
    by_dmax
}

/// Exact maximum distortion over every pair of the ball of the given radius,
/// via the block decomposition described in the module docs.
pub fn verify_qi_ball(
    ball_radius: u32,
    cfg: &QiConfig,
    budget: &Budget,
) -> Result<DistortionReport, QiError> {
    let elements = word::ball_size(ball_radius);
    if elements > budget.enumeration_cap as u128 {
        return Err(QiError::Word(WordError::CapacityExceeded {
            needed: elements,
            cap: budget.enumeration_cap,
        }));
    }
    let c = cfg.c();
    let table = stretch_pair_table(c);
    let mut max_ratio = 1.0f64;
    if ball_radius > 0 {
        let max_q = (ball_radius - 1) / c;
        for q in 0..=max_q as u64 {
            if q > 0 && cfg.in_x(q) {
                let dm = (ball_radius - q as u32 * c).min(c) as usize;
                max_ratio = max_ratio.max(table[dm]);
            }
            // Identity blocks contribute ratio exactly 1.
        }
    }
    Ok(DistortionReport {
        max_ratio,
        pairs_covered: elements * (elements - 1) / 2,
        mode: format!("ball(radius={ball_radius}, exact block decomposition)"),
    })
}

/// Literal all-pairs maximum over the ball; quadratic, for small radii and
/// for certifying [`verify_qi_ball`].
pub fn verify_qi_bruteforce(
    ball_radius: u32,
    cfg: &QiConfig,
    budget: &Budget,
) -> Result<DistortionReport, QiError> {
    let elements = word::ball_size(ball_radius);
    if elements > budget.enumeration_cap as u128 || elements > 100_000 {
        return Err(QiError::Word(WordError::CapacityExceeded {
            needed: elements,
            cap: budget.enumeration_cap.min(100_000),
        }));
    }
    let mut words: Vec<Vec<Letter>> = Vec::with_capacity(elements as usize);
    word::for_each_in_ball(ball_radius, budget.enumeration_cap, &mut |letters| {
        words.push(letters.to_vec());
    })?;
    let images: Vec<Vec<Letter>> = words
        .iter()
        .map(|w| {
            apply_f(&WordAddress::from_letters_unchecked(w.clone()), cfg)
                .letters()
                .to_vec()
        })
        .collect();
    let mut max_ratio = 1.0f64;
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            let d = tree_distance(&words[i], &words[j]);
            let di = tree_distance(&images[i], &images[j]);
            max_ratio = max_ratio.max(pair_ratio(d, di));
        }
    }
    Ok(DistortionReport {
        max_ratio,
        pairs_covered: elements * (elements - 1) / 2,
        mode: format!("ball(radius={ball_radius}, brute force)"),
    })
}

/// Distortion over seeded random pairs of addresses of depth ≤ `max_depth`.
pub fn verify_qi_sampled(
    max_depth: u32,
    pairs: u64,
    seed: u64,
    cfg: &QiConfig,
) -> DistortionReport {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let random_word = |rng: &mut rand_chacha::ChaCha12Rng| {
        let depth = rng.gen_range(0..=max_depth) as usize;
        let mut letters = Vec::with_capacity(depth);
        if depth > 0 {
            letters.push(word::ROOT_LETTERS[rng.gen_range(0..4)]);
            for _ in 1..depth {
                letters.push(word::CHILD_LETTERS[rng.gen_range(0..3)]);
            }
        }
        WordAddress::from_letters_unchecked(letters)
    };
    let mut max_ratio = 1.0f64;
    for _ in 0..pairs {
        let u = random_word(&mut rng);
        let w = random_word(&mut rng);
        if u == w {
            continue; // ratio 1 by convention
        }
        let d = u.distance(&w);
        let di = apply_f(&u, cfg).distance(&apply_f(&w, cfg));
        max_ratio = max_ratio.max(pair_ratio(d, di));
    }
    DistortionReport {
        max_ratio,
        pairs_covered: pairs as u128,
        mode: format!("sampled(depth<={max_depth}, pairs={pairs}, seed={seed})"),
    }
}

/// Applies f to every element of the ball, checking injectivity and that
/// the inverse recovers each element.
pub fn check_ball_bijectivity(
    ball_radius: u32,
    cfg: &QiConfig,
    budget: &Budget,
) -> Result<BijectivityReport, QiError> {
    let mut images = std::collections::HashSet::new();
    let mut elements = 0u64;
    let mut injective = true;
    let mut round_trips_ok = true;
    word::for_each_in_ball(ball_radius, budget.enumeration_cap, &mut |letters| {
        elements += 1;
        let w = WordAddress::from_letters_unchecked(letters.to_vec());
        let img = apply_f(&w, cfg);
        if invert_f(&img, cfg) != w {
            round_trips_ok = false;
        }
        if !images.insert(img) {
            injective = false;
        }
    })?;
    Ok(BijectivityReport { radius: ball_radius, elements, injective, round_trips_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg4() -> QiConfig {
        QiConfig::with_literal_base(4).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn decomposition_equals_bruteforce() {
        let cfg = cfg4();
        for radius in [2u32, 4, 5, 6] {
            let exact = verify_qi_ball(radius, &cfg, &budget()).unwrap();
            let brute = verify_qi_bruteforce(radius, &cfg, &budget()).unwrap();
            assert_eq!(
                exact.max_ratio, brute.max_ratio,
                "radius {radius}: decomposition {} vs brute force {}",
                exact.max_ratio, brute.max_ratio
            );
        }
    }

    #[test]
    fn ball_distortion_within_c() {
        let report = verify_qi_ball(8, &cfg4(), &budget()).unwrap();
        assert!(report.max_ratio <= 4.0, "ratio {}", report.max_ratio);
        assert!(report.max_ratio > 1.0);
    }

    #[test]
    fn sampled_distortion_within_c() {
        let report = verify_qi_sampled(200, 5_000, 99, &cfg4());
        assert!(report.max_ratio <= 4.0, "ratio {}", report.max_ratio);
    }

    #[test]
    fn bijectivity_on_small_ball() {
        let report = check_ball_bijectivity(8, &cfg4(), &budget()).unwrap();
        assert!(report.injective);
        assert!(report.round_trips_ok);
        assert_eq!(report.elements as u128, word::ball_size(8));
    }

    #[test]
    fn ball_cap_is_enforced() {
        let tiny = Budget { enumeration_cap: 10, horizon_cap: 10 };
        assert!(matches!(
            verify_qi_ball(5, &cfg4(), &tiny),
            Err(QiError::Word(WordError::CapacityExceeded { .. }))
        ));
    }
}
