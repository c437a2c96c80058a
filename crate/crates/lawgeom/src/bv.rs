//! Braided words over the indexed letters `a_i`, `σ_i`: the shift
//! endomorphism, the bracket and circle operations, evaluators collapsing
//! a braided-word-labeled tree to one word, natural free-group-labeled
//! trees, the representation into automorphisms of a free group on
//! address-indexed generators, and the equality test it induces.

use crate::error::{Error, Result};
use crate::free::FreeWord;
use crate::ld::LdSystem;
use crate::ops::{apply_generator, apply_word, parse_word, print_word, AliasKind, GWord, Gen};
use crate::seeds::{common_domain, word_seed};
use crate::tree::{apply_substitution, Address, ITree, Substitution, Tree};
use std::fmt;

/// The two letter families a braided word is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BvKind {
    A,
    Sigma,
}

/// One unsigned braided letter; the sign lives in the word's run exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BvGen {
    pub kind: BvKind,
    pub index: u32,
}

/// A braided word: a freely reduced signed sequence of `a_i` / `σ_i`
/// letters. Free reduction never changes the represented group element;
/// equality of represented elements is decided by [`bv_equal`], not by
/// comparing sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BvWord(FreeWord<BvGen>);

impl BvWord {
    pub fn identity() -> Self {
        BvWord(FreeWord::identity())
    }

    /// The single letter `a_i` (index ≥ 1).
    pub fn a(i: u32) -> Self {
        assert!(i >= 1, "letter indices start at 1");
        BvWord(FreeWord::generator(BvGen { kind: BvKind::A, index: i }))
    }

    /// The single letter `σ_i` (index ≥ 1).
    pub fn sigma(i: u32) -> Self {
        assert!(i >= 1, "letter indices start at 1");
        BvWord(FreeWord::generator(BvGen { kind: BvKind::Sigma, index: i }))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Letter count of the reduced sequence.
    pub fn len(&self) -> usize {
        self.0.runs().iter().map(|(_, k)| k.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Largest letter index, or 0 for the empty word.
    pub fn max_index(&self) -> u32 {
        self.0.runs().iter().map(|(g, _)| g.index).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &BvWord) -> BvWord {
        BvWord(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> BvWord {
        BvWord(self.0.inverse())
    }

    /// The shift `∂`: every letter index incremented by one. An injective
    /// endomorphism on represented elements.
    pub fn shift(&self) -> BvWord {
        self.shift_by(1)
    }

    /// The k-fold shift `∂^k`.
    pub fn shift_by(&self, k: u32) -> BvWord {
        BvWord(FreeWord::from_runs(
            self.0
                .runs()
                .iter()
                .map(|(g, e)| (BvGen { kind: g.kind, index: g.index + k }, *e))
                .collect(),
        ))
    }

    /// Builds a braided word from generator letters; only indexed `a_i`
    /// and `σ_i` letters are braided.
    pub fn from_gens(gens: &[Gen]) -> Result<BvWord> {
        let mut out = FreeWord::identity();
        for g in gens {
            let Gen::Indexed { kind, index, inv } = g else {
                return Err(Error::Parse {
                    offset: 0,
                    message: format!("letter `{g}` is not a braided letter (expected a_i or σ_i)"),
                });
            };
            let kind = match kind {
                AliasKind::A => BvKind::A,
                AliasKind::Sigma => BvKind::Sigma,
                AliasKind::C | AliasKind::S => {
                    return Err(Error::Parse {
                        offset: 0,
                        message: format!(
                            "letter `{g}` is not a braided letter (expected a_i or σ_i)"
                        ),
                    })
                }
            };
            let e = if *inv { -1 } else { 1 };
            out = out.mul(&FreeWord::generator_pow(BvGen { kind, index: *index }, e));
        }
        Ok(BvWord(out))
    }

    /// Parses the indexed-letter token grammar (`a1 b2' …`, `b` = σ).
    pub fn parse(text: &str) -> Result<BvWord> {
        BvWord::from_gens(&parse_word(text)?)
    }

    /// The word as generator letters (σ as the twisted letter).
    pub fn to_gens(&self) -> GWord {
        self.expand(|kind| match kind {
            BvKind::A => AliasKind::A,
            BvKind::Sigma => AliasKind::Sigma,
        })
    }

    /// The image in the plain symmetric regime: `σ_i ↦ s_i`, `a_i ↦ a_i`.
    pub fn plain_gens(&self) -> GWord {
        self.expand(|kind| match kind {
            BvKind::A => AliasKind::A,
            BvKind::Sigma => AliasKind::S,
        })
    }

    fn expand(&self, kind_of: impl Fn(BvKind) -> AliasKind) -> GWord {
        let mut out = Vec::with_capacity(self.len());
        for (g, e) in self.0.runs() {
            let letter = Gen::Indexed {
                kind: kind_of(g.kind),
                index: g.index,
                inv: *e < 0,
            };
            for _ in 0..e.unsigned_abs() {
                out.push(letter.clone());
            }
        }
        out
    }

    /// The inverse shift, defined only when no letter has index 1.
    fn try_unshift(&self) -> Option<BvWord> {
        if self.0.runs().iter().any(|(g, _)| g.index == 1) {
            return None;
        }
        Some(BvWord(FreeWord::from_runs(
            self.0
                .runs()
                .iter()
                .map(|(g, e)| (BvGen { kind: g.kind, index: g.index - 1 }, *e))
                .collect(),
        )))
    }
}

impl fmt::Display for BvWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_word(&self.to_gens()))
    }
}

/// The bracket `x[y] = x·∂y·σ₁·∂x⁻¹`.
pub fn bv_bracket(x: &BvWord, y: &BvWord) -> BvWord {
    x.mul(&y.shift()).mul(&BvWord::sigma(1)).mul(&x.shift().inverse())
}

/// The circle product `x∘y = x·∂y·a₁`.
pub fn bv_circle(x: &BvWord, y: &BvWord) -> BvWord {
    x.mul(&y.shift()).mul(&BvWord::a(1))
}

/// Braided words acting on themselves through the bracket: a left
/// cancellative self-distributive system whose equality is the
/// representation-backed [`bv_equal`]. Left division is partial here: it
/// succeeds when the candidate quotient visibly avoids index 1, which is
/// exactly the case for values produced by the bracket itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct BvLd;

impl LdSystem for BvLd {
    type Elem = BvWord;

    fn bracket(&self, x: &BvWord, y: &BvWord) -> BvWord {
        bv_bracket(x, y)
    }

    fn unbracket(&self, x: &BvWord, z: &BvWord) -> Option<BvWord> {
        // x[y] = z  ⟺  ∂y = x⁻¹·z·∂x·σ₁⁻¹
        x.inverse()
            .mul(z)
            .mul(&x.shift())
            .mul(&BvWord::sigma(1).inverse())
            .try_unshift()
    }

    fn atom(&self, k: u32) -> BvWord {
        BvWord::a(k)
    }

    fn elem_eq(&self, a: &BvWord, b: &BvWord) -> bool {
        bv_equal(a, b)
    }

    fn name(&self) -> &'static str {
        "bv"
    }
}

/// The circle-evaluation of a braided-word-labeled tree: a leaf is its
/// label, a node is the circle product of its children's evaluations.
pub fn e_eval(t: &Tree<BvWord>) -> BvWord {
    match t {
        Tree::Leaf(x) => x.clone(),
        Tree::Node(l, r) => bv_circle(&e_eval(l), &e_eval(r)),
    }
}

/// The right-spine evaluation: `f(leaf) = ε` and
/// `f(t₁t₂) = e(t₁)·∂f(t₂)`. Collapses a labeled tree to the word that
/// rebuilds it, letter actions on the tree matching right multiplication
/// (see [`spine_product_step`]).
pub fn f_eval(t: &Tree<BvWord>) -> BvWord {
    match t {
        Tree::Leaf(_) => BvWord::identity(),
        Tree::Node(l, r) => e_eval(l).mul(&f_eval(r).shift()),
    }
}

/// The closed form of [`f_eval`]: with `t = ⟨t₁, …, tₙ, leaf⟩` along the
/// right branch, `f(t) = e(t₁)·∂e(t₂)·…·∂^{n−1}e(tₙ)`.
pub fn f_eval_explicit(t: &Tree<BvWord>) -> BvWord {
    let mut parts: Vec<&Tree<BvWord>> = Vec::new();
    let mut cur = t;
    while let Tree::Node(l, r) = cur {
        parts.push(l);
        cur = r;
    }
    let mut out = BvWord::identity();
    for (k, part) in parts.iter().enumerate() {
        out = out.mul(&e_eval(part).shift_by(k as u32));
    }
    out
}

/// Reduced words in the free group on address-indexed generators; the
/// label carrier of the representation.
pub type AddrWord = FreeWord<Address>;

/// A tree labeled by address-generator words.
pub type NaturalTree = Tree<AddrWord>;

/// Conjugation in the free group on address-indexed generators: the
/// label algebra the representation acts through.
#[derive(Debug, Clone, Copy, Default)]
pub struct AddrConj;

impl LdSystem for AddrConj {
    type Elem = AddrWord;

    fn bracket(&self, x: &AddrWord, y: &AddrWord) -> AddrWord {
        x.conjugate(y)
    }

    fn unbracket(&self, x: &AddrWord, z: &AddrWord) -> Option<AddrWord> {
        Some(x.inverse().mul(z).mul(x))
    }

    fn atom(&self, k: u32) -> AddrWord {
        FreeWord::generator(Address(vec![1u8; k as usize]))
    }

    fn name(&self) -> &'static str {
        "conj-addr"
    }
}

/// The shape-determined label of the leaf at `addr` in a natural tree:
/// writing `addr = ρ·1^k` with `ρ` empty or ending in 0, the label is
/// `x_{ρ1^{k−1}}⁻¹ ⋯ x_{ρ1}⁻¹ x_ρ⁻¹` followed by `x_α` when `ρ = α0`.
/// Products of the labels below a node telescope to the label the node
/// would carry as a leaf, so refining a natural tree keeps it natural.
pub fn natural_label(addr: &Address) -> AddrWord {
    let bits = &addr.0;
    let split = bits.iter().rposition(|&b| b == 0).map_or(0, |p| p + 1);
    let (rho, ones) = bits.split_at(split);
    let mut out = AddrWord::identity();
    for j in (0..ones.len()).rev() {
        let mut prefix = rho.to_vec();
        prefix.extend(std::iter::repeat(1u8).take(j));
        out = out.mul(&FreeWord::generator_pow(Address(prefix), -1));
    }
    if !rho.is_empty() {
        out = out.mul(&FreeWord::generator(Address(rho[..rho.len() - 1].to_vec())));
    }
    out
}

/// The natural tree of a shape: every leaf carries its shape-determined
/// label. All labels are pairwise distinct.
pub fn natural_tree<L>(shape: &Tree<L>) -> NaturalTree {
    fn walk<L>(t: &Tree<L>, at: &Address) -> NaturalTree {
        match t {
            Tree::Leaf(_) => Tree::Leaf(natural_label(at)),
            Tree::Node(l, r) => Tree::node(walk(l, &at.child(0)), walk(r, &at.child(1))),
        }
    }
    walk(shape, &Address::root())
}

/// The value of the represented automorphism on the generator `x_γ`:
/// builds a natural tree on which the word acts with `γ0` a leaf of the
/// result, acts, and reads the label there. Fails with `BudgetExhausted`
/// when `γ0` sits strictly inside the word's target pattern (no tree
/// makes it a leaf) or when the required tree depth exceeds the budget.
pub fn psi(w: &BvWord, gamma: &Address, depth_budget: usize) -> Result<AddrWord> {
    psi_with_margin(w, gamma, 0, depth_budget)
}

/// [`psi`] computed on a tree refined `margin` extra levels everywhere;
/// the answer must not depend on the choice of sufficient tree, so
/// disagreement between margins would expose an implementation fault.
fn psi_with_margin(
    w: &BvWord,
    gamma: &Address,
    margin: usize,
    depth_budget: usize,
) -> Result<AddrWord> {
    let seed = word_seed(&w.plain_gens()).expect("plain projections always have a seed");
    let gamma0 = gamma.child(0);

    // Walk the target pattern along γ0: landing on a variable leaf with
    // `delta` left to go means that variable must be refined so that
    // `delta` becomes a leaf inside it; running out of bits at an
    // internal node means γ0 is a node of every sufficient tree.
    let mut cur = &seed.target;
    let mut rest: &[u8] = &gamma0.0;
    let (var, delta) = loop {
        match cur {
            Tree::Leaf(v) => break (*v, Address(rest.to_vec())),
            Tree::Node(..) if rest.is_empty() => return Err(Error::BudgetExhausted),
            Tree::Node(l, r) => {
                cur = if rest[0] == 0 { l } else { r };
                rest = &rest[1..];
            }
        }
    };

    let mut fresh = 1_000_000u32;
    let mut sigma = Substitution::default();
    for &label in seed.source.labels() {
        let replacement = if label == var {
            spine_shape(&delta, &mut fresh)
        } else {
            Tree::Leaf(label)
        };
        sigma.0.insert(label, replacement);
    }
    let mut shape = apply_substitution(&seed.source, &sigma).expect("all labels bound");
    for _ in 0..margin {
        shape = refine_once(&shape, &mut fresh);
    }
    if tree_depth(&shape) > depth_budget {
        return Err(Error::BudgetExhausted);
    }

    let t = natural_tree(&shape);
    let acted = apply_word(&AddrConj, &t, &w.to_gens())
        .expect("the pattern source carries the whole action path");
    let probe = acted.subtree(&gamma0).expect("γ0 is an address of the result");
    Ok(label_product(probe))
}

/// The minimal shape in which `delta` is a leaf address: one node per bit.
fn spine_shape(delta: &Address, fresh: &mut u32) -> ITree {
    let mut leaf = || {
        *fresh += 1;
        Tree::Leaf(*fresh)
    };
    let mut shape = leaf();
    for &bit in delta.0.iter().rev() {
        shape = if bit == 0 {
            Tree::node(shape, leaf())
        } else {
            Tree::node(leaf(), shape)
        };
    }
    shape
}

fn refine_once(t: &ITree, fresh: &mut u32) -> ITree {
    match t {
        Tree::Leaf(_) => {
            *fresh += 2;
            Tree::node(Tree::Leaf(*fresh - 1), Tree::Leaf(*fresh))
        }
        Tree::Node(l, r) => Tree::node(refine_once(l, fresh), refine_once(r, fresh)),
    }
}

fn tree_depth<L>(t: &Tree<L>) -> usize {
    match t {
        Tree::Leaf(_) => 0,
        Tree::Node(l, r) => 1 + tree_depth(l).max(tree_depth(r)),
    }
}

/// Left-to-right product of all leaf labels; refining a block of a
/// natural tree never changes this product, so it reads the represented
/// automorphism's value even below a probe tree's granularity.
fn label_product(t: &NaturalTree) -> AddrWord {
    t.labels()
        .into_iter()
        .fold(AddrWord::identity(), |acc, l| acc.mul(l))
}

/// Outcome of a representation-backed equality query, with the size of
/// the probe tree that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityProbe {
    pub equal: bool,
    pub probe_leaves: usize,
    pub probe_depth: usize,
}

/// Decides equality of the represented elements and reports the probe
/// tree used. Both words act on one natural tree whose shape is the
/// common instance of their plain patterns, refined one extra level so
/// that every block's conjugator is pinned by a generator it cannot
/// contain; the labeled results agree exactly when the represented
/// automorphisms agree on every generator.
pub fn bv_equal_probed(w1: &BvWord, w2: &BvWord) -> EqualityProbe {
    if w1 == w2 {
        return EqualityProbe { equal: true, probe_leaves: 0, probe_depth: 0 };
    }
    let s1 = word_seed(&w1.plain_gens()).expect("plain projections always have a seed");
    let s2 = word_seed(&w2.plain_gens()).expect("plain projections always have a seed");
    let base = common_domain(&s1, &s2);
    let mut fresh = 1_000_000u32;
    let shape = refine_once(&base, &mut fresh);
    let t = natural_tree(&shape);
    let probe = EqualityProbe {
        equal: false,
        probe_leaves: shape.size(),
        probe_depth: tree_depth(&shape),
    };
    // The plain projections must already agree: a mismatch there shows up
    // as differing shapes or differing block positions below.
    let r1 = apply_word(&AddrConj, &t, &w1.to_gens())
        .expect("the common instance carries both action paths");
    let r2 = apply_word(&AddrConj, &t, &w2.to_gens())
        .expect("the common instance carries both action paths");
    EqualityProbe { equal: r1 == r2, ..probe }
}

/// Equality of the represented elements.
pub fn bv_equal(w1: &BvWord, w2: &BvWord) -> bool {
    bv_equal_probed(w1, w2).equal
}

/// One letter step of the spine-evaluation identity: whether
/// `f(t•g) = f(t)·g` under [`bv_equal`], for an indexed letter `g` acting
/// through the braided bracket. `None` when `t•g` is undefined.
pub fn spine_product_step(t: &Tree<BvWord>, g: &Gen) -> Result<Option<bool>> {
    let stepped = match apply_generator(&BvLd, t, g) {
        Ok(s) => s,
        Err(Error::UndefinedAction { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let lhs = f_eval(&stepped);
    let rhs = f_eval(t).mul(&BvWord::from_gens(std::slice::from_ref(g))?);
    Ok(Some(bv_equal(&lhs, &rhs)))
}

/// Labels a shape's leaves left to right by cycling through `palette`.
pub fn label_cyclically<L>(shape: &Tree<L>, palette: &[BvWord]) -> Tree<BvWord> {
    fn walk<L>(t: &Tree<L>, palette: &[BvWord], next: &mut usize) -> Tree<BvWord> {
        match t {
            Tree::Leaf(_) => {
                let label = palette[*next % palette.len()].clone();
                *next += 1;
                Tree::Leaf(label)
            }
            Tree::Node(l, r) => {
                let left = walk(l, palette, next);
                Tree::node(left, walk(r, palette, next))
            }
        }
    }
    walk(shape, palette, &mut 0)
}

/// Sweeps the spine-evaluation identity over every shape of up to
/// `max_size` leaves with single-letter labels and every positive letter
/// of index up to `max_index`; returns (defined cases, failures).
pub fn spine_identity_sweep(max_size: usize, max_index: u32) -> Result<(usize, usize)> {
    let palette = [BvWord::a(1), BvWord::sigma(1), BvWord::a(2), BvWord::sigma(2)];
    let mut defined = 0;
    let mut failures = 0;
    for n in 1..=max_size {
        for shape in crate::tree::all_shapes(n) {
            let t = label_cyclically(&shape, &palette);
            for i in 1..=max_index {
                for g in [Gen::a_i(i), Gen::sigma_i(i)] {
                    if let Some(ok) = spine_product_step(&t, &g)? {
                        defined += 1;
                        if !ok {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((defined, failures))
}

/// Verifies one braided relation exactly through the representation.
pub fn verify_braided(rel: &crate::presentations::Relation) -> Result<crate::presentations::RelationVerdict> {
    use crate::presentations::RelationVerdict;
    let lhs = BvWord::from_gens(&rel.lhs)?;
    let rhs = BvWord::from_gens(&rel.rhs)?;
    if bv_equal(&lhs, &rhs) {
        Ok(RelationVerdict::BvEqual)
    } else {
        Ok(RelationVerdict::Failed {
            witness: format!("{lhs} and {rhs} represent different automorphisms"),
        })
    }
}

/// Verifies a whole braided family (plus any torsion relations, which
/// must all fail: the braided group is torsion-free, so none exist).
pub fn verify_family_braided(
    family: crate::presentations::Family,
    bounds: crate::presentations::Bounds,
) -> Result<crate::presentations::VerificationReport> {
    let start = std::time::Instant::now();
    let mut entries = Vec::new();
    for rel in crate::presentations::relations(family, bounds)
        .iter()
        .chain(crate::presentations::torsion_relations(family, bounds).iter())
    {
        entries.push((rel.label(), verify_braided(rel)?));
    }
    Ok(crate::presentations::VerificationReport {
        family: family.name().to_string(),
        params: format!(
            "addr<={} idx<={} method=bv",
            bounds.max_addr_len, bounds.max_index
        ),
        entries,
        elapsed: start.elapsed(),
    })
}

/// Every positive word of length at most `max_len` over a₁, a₂, σ₁, σ₂ —
/// the standard sample grid for the bracket laws.
pub fn short_positive_words(max_len: usize) -> Vec<BvWord> {
    let letters = [BvWord::a(1), BvWord::a(2), BvWord::sigma(1), BvWord::sigma(2)];
    let mut out = vec![BvWord::identity()];
    let mut layer = vec![BvWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                let extended = w.mul(l);
                next.push(extended.clone());
                out.push(extended);
            }
        }
        layer = next;
    }
    out
}

/// Checks both mixed bracket/circle laws, `x[y[z]] = (x∘y)[z]` and
/// `x[y∘z] = x[y]∘x[z]`, on every triple from `samples` under
/// [`bv_equal`].
pub fn check_mixed_laws(samples: &[BvWord]) -> crate::ld::Verdict<BvWord> {
    let mut count = 0;
    for x in samples {
        for y in samples {
            for z in samples {
                let pairs = [
                    (bv_bracket(x, &bv_bracket(y, z)), bv_bracket(&bv_circle(x, y), z)),
                    (
                        bv_bracket(x, &bv_circle(y, z)),
                        bv_circle(&bv_bracket(x, y), &bv_bracket(x, z)),
                    ),
                ];
                for (lhs, rhs) in pairs {
                    count += 1;
                    if !bv_equal(&lhs, &rhs) {
                        return crate::ld::Verdict::Fails {
                            witness: vec![x.clone(), y.clone(), z.clone()],
                            lhs,
                            rhs,
                        };
                    }
                }
            }
        }
    }
    crate::ld::Verdict::Holds { samples: count }
}
