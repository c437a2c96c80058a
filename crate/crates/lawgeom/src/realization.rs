//! Exact dyadic realizations. A tree cuts [0,1] into a dyadic partition
//! by recursive halving; an order-preserving seed becomes the piecewise
//! linear homeomorphism that carries its source partition onto its
//! target partition, and an arbitrary seed becomes the bijection that
//! moves each leaf's interval affinely to the interval of the same leaf
//! in the target. Words compose left to right: the map of `w₁·w₂` is
//! the map of `w₁` followed by the map of `w₂`, and the property tests
//! here pin that direction down rather than trusting convention.

use crate::error::{Error, Result};
use crate::ops::{addresses_up_to, GWord, Gen};
use crate::seeds::{word_seed, Seed};
use crate::tree::Tree;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::cmp::Ordering;
use std::fmt;

/// An exact dyadic rational m·2^{−e}, stored in lowest terms (odd
/// numerator unless zero). Sums, differences, midpoints and comparisons
/// are closed and exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Dyadic {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Numerator of the lowest-terms form.
    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of the lowest-terms denominator 2^e.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && (&self.num % 2) == BigInt::zero() {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    /// Both numerators scaled to the common denominator 2^max(e₁,e₂).
    fn scaled(&self, other: &Dyadic) -> (BigInt, BigInt) {
        let e = self.exp.max(other.exp);
        (&self.num << (e - self.exp), &other.num << (e - other.exp))
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b) = self.scaled(other);
        Dyadic::new(a + b, self.exp.max(other.exp))
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b) = self.scaled(other);
        Dyadic::new(a - b, self.exp.max(other.exp))
    }

    /// The exact midpoint (a+b)/2.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let (x, y) = a.scaled(b);
        Dyadic::new(x + y, a.exp.max(b.exp) + 1)
    }

    /// The exact product with 2^k.
    pub fn mul_pow2(&self, k: i32) -> Dyadic {
        if k >= 0 {
            Dyadic::new(&self.num << k as u32, self.exp)
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let (a, b) = self.scaled(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

/// The exponent k with dy = 2^k·dx, for positive dyadics whose ratio is
/// a power of two. Every slope arising from dyadic partitions is of
/// this form; anything else is an internal invariant violation.
fn slope_exponent(dx: &Dyadic, dy: &Dyadic) -> i32 {
    assert!(dx.num.is_positive() && dy.num.is_positive(), "degenerate segment");
    assert_eq!(dx.num, dy.num, "slope {dy}/{dx} is not a power of two");
    dx.exp as i32 - dy.exp as i32
}

/// The full cut sequence 0 = r₀ < r₁ < … < rₙ = 1 of a tree with n
/// leaves: a leaf spans its whole interval and a node halves it.
pub fn partition<L>(t: &Tree<L>) -> Vec<Dyadic> {
    fn walk<L>(t: &Tree<L>, lo: Dyadic, hi: Dyadic, out: &mut Vec<Dyadic>) {
        match t {
            Tree::Leaf(_) => out.push(hi),
            Tree::Node(l, r) => {
                let mid = Dyadic::midpoint(&lo, &hi);
                walk(l, lo, mid.clone(), out);
                walk(r, mid, hi, out);
            }
        }
    }
    let mut out = vec![Dyadic::zero()];
    walk(t, Dyadic::zero(), Dyadic::one(), &mut out);
    out
}

/// The leaf intervals of a tree, left to right: consecutive pairs of
/// the cut sequence.
pub fn leaf_intervals<L>(t: &Tree<L>) -> Vec<(Dyadic, Dyadic)> {
    let cuts = partition(t);
    cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
}

/// An increasing piecewise-linear homeomorphism of [0,1] with dyadic
/// breakpoints and power-of-two slopes, in canonical form (no collinear
/// interior breakpoint). Identical maps compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMap {
    breakpoints: Vec<(Dyadic, Dyadic)>,
}

impl PLMap {
    pub fn identity() -> PLMap {
        PLMap {
            breakpoints: vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())],
        }
    }

    /// Builds a map from matched breakpoints, dropping collinear interior
    /// ones. The list must rise strictly from (0,0) to (1,1) in both
    /// coordinates with power-of-two slopes; violations are bugs in the
    /// caller, not data errors.
    fn from_breakpoints(breakpoints: Vec<(Dyadic, Dyadic)>) -> PLMap {
        assert!(breakpoints.len() >= 2, "a map needs both endpoints");
        assert_eq!(breakpoints.first().unwrap(), &(Dyadic::zero(), Dyadic::zero()));
        assert_eq!(breakpoints.last().unwrap(), &(Dyadic::one(), Dyadic::one()));
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(breakpoints.len());
        for (x, y) in breakpoints {
            if let Some((px, py)) = out.last() {
                assert!(*px < x && *py < y, "breakpoints must rise in both coordinates");
            }
            while out.len() >= 2 {
                let (bx, by) = &out[out.len() - 1];
                let (ax, ay) = &out[out.len() - 2];
                let before = slope_exponent(&bx.sub(ax), &by.sub(ay));
                let after = slope_exponent(&x.sub(bx), &y.sub(by));
                if before == after {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push((x, y));
        }
        PLMap { breakpoints: out }
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.breakpoints
    }

    /// Slope exponents of the affine pieces, left to right.
    pub fn slopes(&self) -> Vec<i32> {
        self.breakpoints
            .windows(2)
            .map(|w| slope_exponent(&w[1].0.sub(&w[0].0), &w[1].1.sub(&w[0].1)))
            .collect()
    }

    /// The exact image of a point of [0,1].
    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        assert!(*x >= Dyadic::zero() && *x <= Dyadic::one(), "point outside [0,1]");
        let mut seg = self.breakpoints.windows(2).rev().find(|w| w[0].0 <= *x);
        if seg.is_none() {
            seg = self.breakpoints.windows(2).next();
        }
        let w = seg.expect("a map has at least one segment");
        let k = slope_exponent(&w[1].0.sub(&w[0].0), &w[1].1.sub(&w[0].1));
        w[0].1.add(&x.sub(&w[0].0).mul_pow2(k))
    }

    pub fn inverse(&self) -> PLMap {
        PLMap::from_breakpoints(
            self.breakpoints.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        )
    }

    /// `self` followed by `then` — the composite x ↦ then(self(x)),
    /// matching left-to-right word order.
    pub fn compose(&self, then: &PLMap) -> PLMap {
        let back = self.inverse();
        let mut xs: Vec<Dyadic> = self.breakpoints.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(then.breakpoints.iter().map(|(x, _)| back.eval(x)));
        xs.sort();
        xs.dedup();
        PLMap::from_breakpoints(
            xs.into_iter().map(|x| (x.clone(), then.eval(&self.eval(&x)))).collect(),
        )
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, y) in &self.breakpoints {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "({x},{y})")?;
            first = false;
        }
        Ok(())
    }
}

/// One affine piece of an interval bijection: the half-open source
/// interval is carried onto the target interval with a power-of-two
/// slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub source: (Dyadic, Dyadic),
    pub target: (Dyadic, Dyadic),
}

impl Piece {
    fn slope(&self) -> i32 {
        slope_exponent(
            &self.source.1.sub(&self.source.0),
            &self.target.1.sub(&self.target.0),
        )
    }
}

/// A bijection of [0,1) built from finitely many affine pieces whose
/// sources partition [0,1) and whose targets partition [0,1); the point
/// map is generally discontinuous. Canonical form merges pieces that
/// continue one another, so identical bijections compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalBijection {
    pieces: Vec<Piece>,
}

impl IntervalBijection {
    pub fn identity() -> IntervalBijection {
        IntervalBijection {
            pieces: vec![Piece {
                source: (Dyadic::zero(), Dyadic::one()),
                target: (Dyadic::zero(), Dyadic::one()),
            }],
        }
    }

    /// Builds a bijection from pieces in any order; sorts by source,
    /// checks both partitions, and merges adjacent continuations.
    fn from_pieces(mut pieces: Vec<Piece>) -> IntervalBijection {
        assert!(!pieces.is_empty(), "a bijection needs at least one piece");
        pieces.sort_by(|a, b| a.source.0.cmp(&b.source.0));
        let covers = |ends: Vec<(&Dyadic, &Dyadic)>| {
            ends.first().map(|(lo, _)| (*lo).clone()) == Some(Dyadic::zero())
                && ends.last().map(|(_, hi)| (*hi).clone()) == Some(Dyadic::one())
                && ends.windows(2).all(|w| w[0].1 == w[1].0)
        };
        assert!(
            covers(pieces.iter().map(|p| (&p.source.0, &p.source.1)).collect()),
            "sources must partition [0,1)"
        );
        let mut by_target: Vec<(&Dyadic, &Dyadic)> =
            pieces.iter().map(|p| (&p.target.0, &p.target.1)).collect();
        by_target.sort_by(|a, b| a.0.cmp(b.0));
        assert!(covers(by_target), "targets must partition [0,1)");

        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match out.last_mut() {
                Some(prev)
                    if prev.source.1 == p.source.0
                        && prev.target.1 == p.target.0
                        && prev.slope() == p.slope() =>
                {
                    prev.source.1 = p.source.1;
                    prev.target.1 = p.target.1;
                }
                _ => out.push(p),
            }
        }
        IntervalBijection { pieces: out }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Slope exponents of the pieces, in source order.
    pub fn slopes(&self) -> Vec<i32> {
        self.pieces.iter().map(|p| p.slope()).collect()
    }

    /// The exact image of a point of [0,1).
    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        assert!(*x >= Dyadic::zero() && *x < Dyadic::one(), "point outside [0,1)");
        let p = self
            .pieces
            .iter()
            .rev()
            .find(|p| p.source.0 <= *x)
            .expect("sources cover [0,1)");
        p.target.0.add(&x.sub(&p.source.0).mul_pow2(p.slope()))
    }

    pub fn inverse(&self) -> IntervalBijection {
        IntervalBijection::from_pieces(
            self.pieces
                .iter()
                .map(|p| Piece { source: p.target.clone(), target: p.source.clone() })
                .collect(),
        )
    }

    /// `self` followed by `then`: the middle space is cut at every
    /// endpoint either map distinguishes, and each middle interval is
    /// pulled back through `self` and pushed forward through `then`.
    pub fn compose(&self, then: &IntervalBijection) -> IntervalBijection {
        let mut cuts: Vec<Dyadic> = Vec::new();
        for p in &self.pieces {
            cuts.push(p.target.0.clone());
            cuts.push(p.target.1.clone());
        }
        for p in &then.pieces {
            cuts.push(p.source.0.clone());
            cuts.push(p.source.1.clone());
        }
        cuts.sort();
        cuts.dedup();
        let back = self.inverse();
        let pieces = cuts
            .windows(2)
            .map(|w| {
                let (m0, m1) = (&w[0], &w[1]);
                let src_piece = back
                    .pieces
                    .iter()
                    .rev()
                    .find(|p| p.source.0 <= *m0)
                    .expect("middle cuts lie in [0,1)");
                let dst_piece = then
                    .pieces
                    .iter()
                    .rev()
                    .find(|p| p.source.0 <= *m0)
                    .expect("middle cuts lie in [0,1)");
                let pull = |m: &Dyadic| {
                    src_piece.target.0.add(&m.sub(&src_piece.source.0).mul_pow2(src_piece.slope()))
                };
                let push = |m: &Dyadic| {
                    dst_piece.target.0.add(&m.sub(&dst_piece.source.0).mul_pow2(dst_piece.slope()))
                };
                Piece { source: (pull(m0), pull(m1)), target: (push(m0), push(m1)) }
            })
            .collect();
        IntervalBijection::from_pieces(pieces)
    }
}

impl fmt::Display for IntervalBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.pieces {
            if !first {
                write!(f, " ")?;
            }
            write!(
                f,
                "[{},{})->[{},{})",
                p.source.0, p.source.1, p.target.0, p.target.1
            )?;
            first = false;
        }
        Ok(())
    }
}

/// The piecewise-linear homeomorphism of an order-preserving seed: the
/// source cut sequence is matched with the target cut sequence index by
/// index. Fails when the seed permutes its leaves.
pub fn pl_of_seed(s: &Seed) -> Result<PLMap> {
    if s.source.labels() != s.target.labels() {
        return Err(Error::NotAnFSeed);
    }
    let from = partition(&s.source);
    let to = partition(&s.target);
    Ok(PLMap::from_breakpoints(from.into_iter().zip(to).collect()))
}

/// The interval bijection of any seed: the interval of each leaf in the
/// source is carried affinely onto the interval of the same leaf in the
/// target.
pub fn vmap_of_seed(s: &Seed) -> IntervalBijection {
    let targets: std::collections::BTreeMap<u32, (Dyadic, Dyadic)> = s
        .target
        .labels()
        .into_iter()
        .copied()
        .zip(leaf_intervals(&s.target))
        .collect();
    let pieces = s
        .source
        .labels()
        .into_iter()
        .zip(leaf_intervals(&s.source))
        .map(|(label, source)| Piece {
            source,
            target: targets
                .get(label)
                .expect("source and target of a seed carry the same labels")
                .clone(),
        })
        .collect();
    IntervalBijection::from_pieces(pieces)
}

/// The interval-map form of a homeomorphism: one piece per affine
/// segment. Order-preserving seeds give the same answer through either
/// realization.
pub fn pl_as_interval_bijection(m: &PLMap) -> IntervalBijection {
    IntervalBijection::from_pieces(
        m.breakpoints()
            .windows(2)
            .map(|w| Piece {
                source: (w[0].0.clone(), w[1].0.clone()),
                target: (w[0].1.clone(), w[1].1.clone()),
            })
            .collect(),
    )
}

/// Outcome of a realization property test: either every sampled pair
/// satisfied the homomorphism law, or a failing pair with both maps.
#[derive(Debug, Clone)]
pub enum RealVerdict<M> {
    Holds { samples: usize },
    Fails { w1: GWord, w2: GWord, composed: M, direct: M },
}

impl<M> RealVerdict<M> {
    pub fn holds(&self) -> bool {
        matches!(self, RealVerdict::Holds { .. })
    }
}

/// A random word of rotation letters with addresses of length ≤ 2.
pub fn random_a_word<R: Rng>(rng: &mut R, max_len: usize) -> GWord {
    random_word(rng, max_len, false)
}

/// A random word mixing rotation and both permutation letters.
pub fn random_acs_word<R: Rng>(rng: &mut R, max_len: usize) -> GWord {
    random_word(rng, max_len, true)
}

fn random_word<R: Rng>(rng: &mut R, max_len: usize, permutations: bool) -> GWord {
    let addrs = addresses_up_to(2);
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            let addr = addrs[rng.gen_range(0..addrs.len())].clone();
            let g = match if permutations { rng.gen_range(0..3) } else { 0 } {
                0 => Gen::a_at(addr),
                1 => Gen::c_at(addr),
                _ => Gen::s_at(addr),
            };
            if rng.gen_bool(0.5) {
                g.inverse()
            } else {
                g
            }
        })
        .collect()
}

/// Property test in the homeomorphism realization: for random pairs of
/// rotation words, the map of the concatenation must equal the map of
/// the first followed by the map of the second.
pub fn check_pl_homomorphism<R: Rng>(rng: &mut R, pairs: usize) -> Result<RealVerdict<PLMap>> {
    for _ in 0..pairs {
        let (w1, w2) = (random_a_word(rng, 6), random_a_word(rng, 6));
        let m1 = pl_of_seed(&word_seed(&w1)?)?;
        let m2 = pl_of_seed(&word_seed(&w2)?)?;
        let whole: GWord = w1.iter().chain(&w2).cloned().collect();
        let direct = pl_of_seed(&word_seed(&whole)?)?;
        let composed = m1.compose(&m2);
        if composed != direct {
            return Ok(RealVerdict::Fails { w1, w2, composed, direct });
        }
    }
    Ok(RealVerdict::Holds { samples: pairs })
}

/// Property test in the interval-bijection realization, over words
/// mixing rotation and permutation letters.
pub fn check_vmap_homomorphism<R: Rng>(
    rng: &mut R,
    pairs: usize,
) -> Result<RealVerdict<IntervalBijection>> {
    for _ in 0..pairs {
        let (w1, w2) = (random_acs_word(rng, 6), random_acs_word(rng, 6));
        let m1 = vmap_of_seed(&word_seed(&w1)?);
        let m2 = vmap_of_seed(&word_seed(&w2)?);
        let whole: GWord = w1.iter().chain(&w2).cloned().collect();
        let direct = vmap_of_seed(&word_seed(&whole)?);
        let composed = m1.compose(&m2);
        if composed != direct {
            return Ok(RealVerdict::Fails { w1, w2, composed, direct });
        }
    }
    Ok(RealVerdict::Holds { samples: pairs })
}

/// Two classical interval bijections as operator words: the swap of the
/// first two intervals of the three-interval partition, and the cycle
/// moving each of its intervals one step.
pub fn permutation_fixtures() -> Vec<(&'static str, GWord)> {
    let parse = |s| crate::ops::parse_word(s).expect("fixture words are well formed");
    vec![("block-swap", parse("A[] C[0] A[]'")), ("block-cycle", parse("A[] C[0] A[]' C[1]"))]
}
