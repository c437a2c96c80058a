//! The seed calculus: canonical injective tree pairs representing
//! operators generated by the linear-law letters A, C, S, composed by
//! unification. Seeds decide word equality in the groups these letters
//! generate (F for A alone, V for A/C/S, 𝔖_• for A/S).

use crate::error::{Error, Result};
use crate::ops::{expand_aliases, Gen, OpKind};
use crate::tree::{
    apply_substitution, common_instance, unify_injective, Address, ITree, Substitution, Tree,
};

/// A pair of injective trees over the same label set; the operator it
/// represents is the set of all pairs `(source^σ, target^σ)`. Canonical
/// form labels the source 1..n in left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    pub source: ITree,
    pub target: ITree,
}

impl Seed {
    /// The seed of the identity: a single shared leaf.
    pub fn identity() -> Seed {
        Seed {
            source: Tree::Leaf(1),
            target: Tree::Leaf(1),
        }
    }

    /// Relabels so the source reads 1..n left to right, applying the same
    /// relabeling to the target.
    pub fn canonicalize(self) -> Seed {
        let (source, map) = self
            .source
            .relabel_canonical()
            .expect("seed source must be injective");
        let target = self.target.map_labels(&|x| map[x]);
        Seed { source, target }
    }

    /// A canonical seed represents the identity exactly when its two
    /// trees coincide.
    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    /// Swaps source and target (the seed of the inverse operator) and
    /// re-canonicalizes.
    pub fn inverse(self) -> Seed {
        Seed {
            source: self.target,
            target: self.source,
        }
        .canonicalize()
    }
}

/// The root-pattern seed of each operator kind.
fn base_pattern(kind: OpKind) -> (ITree, ITree) {
    let leaf = |x| Tree::Leaf(x);
    match kind {
        // 1(2·3) ↦ (1·2)3
        OpKind::A => (
            Tree::node(leaf(1), Tree::node(leaf(2), leaf(3))),
            Tree::node(Tree::node(leaf(1), leaf(2)), leaf(3)),
        ),
        // 1·2 ↦ 2·1
        OpKind::C => (
            Tree::node(leaf(1), leaf(2)),
            Tree::node(leaf(2), leaf(1)),
        ),
        // 1(2·3) ↦ 2(1·3)
        OpKind::S => (
            Tree::node(leaf(1), Tree::node(leaf(2), leaf(3))),
            Tree::node(leaf(2), Tree::node(leaf(1), leaf(3))),
        ),
    }
}

/// Embeds a pattern below `alpha` in the minimal ambient tree: each step
/// along `alpha` adds one fresh sibling leaf.
fn embed(alpha: &Address, pattern: &ITree, fresh_base: u32) -> ITree {
    fn walk(bits: &[u8], pattern: &ITree, next_fresh: &mut u32) -> ITree {
        match bits.split_first() {
            None => pattern.clone(),
            Some((&bit, rest)) => {
                let fresh = Tree::Leaf(*next_fresh);
                *next_fresh += 1;
                let inner = walk(rest, pattern, next_fresh);
                if bit == 0 {
                    Tree::node(inner, fresh)
                } else {
                    Tree::node(fresh, inner)
                }
            }
        }
    }
    let mut next = fresh_base;
    walk(&alpha.0, pattern, &mut next)
}

/// The canonical seed of a single generator letter. Indexed aliases are
/// expanded; twisted letters have no linear seed.
pub fn generator_seed(g: &Gen) -> Result<Seed> {
    if g.is_twisted() {
        return Err(Error::TwistedNotSupported);
    }
    let expanded = g.expand_alias();
    let Gen::Addr { kind, addr, inv } = &expanded else {
        unreachable!()
    };
    let (src_pat, tgt_pat) = base_pattern(*kind);
    // pattern labels 1..3 stay below 1000; ambient fresh labels start there
    let seed = Seed {
        source: embed(addr, &src_pat, 1000),
        target: embed(addr, &tgt_pat, 1000),
    }
    .canonicalize();
    Ok(if *inv { seed.inverse() } else { seed })
}

/// Composes two seeds (action order: `s1` then `s2`) by unifying the
/// target of `s1` with the source of `s2`.
pub fn compose(s1: &Seed, s2: &Seed) -> Seed {
    let (sigma1, sigma2) =
        unify_injective(&s1.target, &s2.source).expect("seed trees are injective");
    Seed {
        source: apply_substitution(&s1.source, &sigma1).unwrap(),
        target: apply_substitution(&s2.target, &sigma2).unwrap(),
    }
    .canonicalize()
}

/// The canonical seed of a word (left-to-right action order).
pub fn word_seed(w: &[Gen]) -> Result<Seed> {
    let mut seed = Seed::identity();
    for g in w {
        seed = compose(&seed, &generator_seed(g)?);
    }
    Ok(seed)
}

/// Near-equality of two canonical seeds: their sources always unify, and
/// the operators are equal exactly when the unified targets coincide.
pub fn seeds_near_equal(s1: &Seed, s2: &Seed) -> bool {
    let (sigma1, sigma2) =
        unify_injective(&s1.source, &s2.source).expect("seed trees are injective");
    apply_substitution(&s1.target, &sigma1).unwrap()
        == apply_substitution(&s2.target, &sigma2).unwrap()
}

/// Decides equality of two words in the geometry group of their letters.
pub fn equal_in_group(w1: &[Gen], w2: &[Gen]) -> Result<bool> {
    Ok(seeds_near_equal(&word_seed(w1)?, &word_seed(w2)?))
}

/// Decides whether a word represents the identity.
pub fn is_identity_word(w: &[Gen]) -> Result<bool> {
    Ok(word_seed(w)?.is_identity())
}

/// Matches an injective pattern `u` against a concrete tree `t`: the
/// substitution `τ` with `u^τ = t`, if one exists.
pub fn match_instance(u: &ITree, t: &ITree) -> Option<Substitution> {
    let mut sigma = Substitution::default();
    fn walk(u: &ITree, t: &ITree, sigma: &mut Substitution) -> bool {
        match u {
            Tree::Leaf(x) => {
                sigma.0.insert(*x, t.clone());
                true
            }
            Tree::Node(ul, ur) => match t {
                Tree::Leaf(_) => false,
                Tree::Node(tl, tr) => walk(ul, tl, sigma) && walk(ur, tr, sigma),
            },
        }
    }
    if walk(u, t, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

/// Whether the pair `(t, t2)` is a substitution instance of `seed`.
pub fn is_instance(seed: &Seed, t: &ITree, t2: &ITree) -> bool {
    match match_instance(&seed.source, t) {
        None => false,
        Some(sigma) => match apply_substitution(&seed.target, &sigma) {
            Ok(image) => &image == t2,
            Err(_) => false,
        },
    }
}

/// All trees on which both seeds' represented operators are defined and
/// which are minimal for that property: the common instance of the two
/// sources.
pub fn common_domain(s1: &Seed, s2: &Seed) -> ITree {
    common_instance(&s1.source, &s2.source).expect("seed trees are injective")
}

/// Rejects words containing twisted letters, then expands aliases.
pub fn expand_linear(w: &[Gen]) -> Result<Vec<Gen>> {
    if let Some(g) = w.iter().find(|g| g.is_twisted()) {
        let _ = g;
        return Err(Error::TwistedNotSupported);
    }
    Ok(expand_aliases(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{apply_word_plain, generators_up_to, parse_word, word_inverse, GWord};
    use crate::tree::{all_shapes, label_shape, parse_tree};

    fn t(s: &str) -> ITree {
        parse_tree(s).unwrap()
    }

    fn w(s: &str) -> GWord {
        parse_word(s).unwrap()
    }

    fn seed_of(s: &str) -> Seed {
        word_seed(&w(s)).unwrap()
    }

    #[test]
    fn generator_seeds() {
        assert_eq!(
            generator_seed(&w("A[]")[0]).unwrap(),
            Seed { source: t("(1 (2 3))"), target: t("((1 2) 3)") }
        );
        assert_eq!(
            generator_seed(&w("C[]")[0]).unwrap(),
            Seed { source: t("(1 2)"), target: t("(2 1)") }
        );
        assert_eq!(
            generator_seed(&w("S[]")[0]).unwrap(),
            Seed { source: t("(1 (2 3))"), target: t("(2 (1 3))") }
        );
        assert_eq!(
            generator_seed(&w("A[]'")[0]).unwrap(),
            Seed { source: t("((1 2) 3)"), target: t("(1 (2 3))") }
        );
        // shifted: the pattern sits below the address, one fresh sibling per step
        assert_eq!(
            generator_seed(&w("A[1]")[0]).unwrap(),
            Seed { source: t("(1 (2 (3 4)))"), target: t("(1 ((2 3) 4))") }
        );
        assert_eq!(
            generator_seed(&w("a2")[0]).unwrap(),
            generator_seed(&w("A[1]")[0]).unwrap()
        );
        assert_eq!(
            generator_seed(&w("C[0]")[0]).unwrap(),
            Seed { source: t("((1 2) 3)"), target: t("((2 1) 3)") }
        );
        assert!(matches!(
            generator_seed(&w("b1")[0]),
            Err(Error::TwistedNotSupported)
        ));
    }

    #[test]
    fn shifted_seeds_agree_with_action() {
        // applying the letter to its own seed source yields the seed target
        for kind in ["A", "C", "S"] {
            for addr in ["", "0", "1", "00", "01", "10", "11", "101"] {
                let letter = &w(&format!("{kind}[{addr}]"))[0];
                let seed = generator_seed(letter).unwrap();
                let image = apply_word_plain(&seed.source, std::slice::from_ref(letter))
                    .unwrap();
                assert_eq!(image, seed.target, "{kind}[{addr}]");
            }
        }
    }

    #[test]
    fn compose_examples() {
        let a = seed_of("A[]");
        let aa = compose(&a, &a);
        assert_eq!(
            aa,
            Seed { source: t("(1 (2 (3 4)))"), target: t("(((1 2) 3) 4)") }
        );
        assert_eq!(compose(&a, &Seed::identity()), a);
        assert_eq!(compose(&Seed::identity(), &a), a);
        let back = compose(&a, &seed_of("A[]'"));
        assert_eq!(
            back,
            Seed { source: t("(1 (2 3))"), target: t("(1 (2 3))") }
        );
        assert!(back.is_identity());
    }

    #[test]
    fn word_seed_examples() {
        assert_eq!(word_seed(&[]).unwrap(), Seed::identity());
        assert_eq!(seed_of("A[] A[]"), compose(&seed_of("A[]"), &seed_of("A[]")));
        // pentagon: AA = A₁AA₀
        assert_eq!(seed_of("A[] A[]"), seed_of("A[1] A[] A[0]"));
    }

    #[test]
    fn equality_examples() {
        // hexagon: ACA = C₁AC₀
        assert!(equal_in_group(&w("A[] C[] A[]"), &w("C[1] A[] C[0]")).unwrap());
        // C² is the identity
        assert!(equal_in_group(&w("C[] C[]"), &[]).unwrap());
        assert!(is_identity_word(&w("C[] C[]")).unwrap());
        // A is not
        assert!(!equal_in_group(&w("A[]"), &[]).unwrap());
        assert!(!is_identity_word(&w("A[]")).unwrap());
        // S² is the identity, S is not
        assert!(is_identity_word(&w("S[] S[]")).unwrap());
        assert!(!is_identity_word(&w("S[]")).unwrap());
        // aliases expand before seeding
        assert!(equal_in_group(&w("a1 a1"), &w("a2 a1 A[0]")).unwrap());
        assert!(matches!(
            equal_in_group(&w("b1"), &[]),
            Err(Error::TwistedNotSupported)
        ));
    }

    #[test]
    fn seed_soundness_vs_action() {
        // wherever the action of w is defined, (t, t•w) instantiates word_seed(w)
        let words: Vec<GWord> = vec![
            w("A[]"),
            w("A[]'"),
            w("C[]"),
            w("S[]"),
            w("A[] A[]"),
            w("A[1] A[] A[0]"),
            w("A[] C[] A[]"),
            w("C[1] A[] C[0]"),
            w("S[] A[]"),
            w("A[] C[0]"),
            w("S[1] S[] A[1]"),
            w("C[] A[]' C[1]'"),
            w("A[0]' C[00] A[0]"),
            w("s1 c2 a1 s2"),
        ];
        for word in &words {
            let seed = word_seed(word).unwrap();
            let mut hits = 0usize;
            for n in 1..=7 {
                for shape in all_shapes(n) {
                    let tree = label_shape(&shape, &(1..=n as u32).collect::<Vec<_>>());
                    if let Ok(image) = apply_word_plain(&tree, word) {
                        assert!(
                            is_instance(&seed, &tree, &image),
                            "action pair must instantiate the seed: {word:?} on {tree}"
                        );
                        hits += 1;
                    }
                }
            }
            assert!(hits > 0, "word {word:?} acted on no tree up to size 7");
            // the seed's own source is the minimal domain element
            let image = apply_word_plain(&seed.source, word).unwrap();
            assert_eq!(image, seed.target);
        }
    }

    #[test]
    fn discrimination_small() {
        // seed equality coincides with action agreement on all injective
        // trees where both words act
        let words: Vec<GWord> = vec![
            vec![],
            w("A[]"),
            w("C[]"),
            w("S[]"),
            w("C[] C[]"),
            w("A[] C[] A[]"),
            w("C[1] A[] C[0]"),
            w("S[] S[]"),
            w("A[] A[]'"),
            w("C[] S[]"),
        ];
        for w1 in &words {
            for w2 in &words {
                let by_seed = equal_in_group(w1, w2).unwrap();
                let s1 = word_seed(w1).unwrap();
                let s2 = word_seed(w2).unwrap();
                let max_size = s1.source.size().max(s2.source.size()) + 2;
                let mut agree = true;
                let mut both_defined_somewhere = false;
                for n in 1..=max_size {
                    for shape in all_shapes(n) {
                        let tree = label_shape(&shape, &(1..=n as u32).collect::<Vec<_>>());
                        if let (Ok(i1), Ok(i2)) =
                            (apply_word_plain(&tree, w1), apply_word_plain(&tree, w2))
                        {
                            both_defined_somewhere = true;
                            if i1 != i2 {
                                agree = false;
                            }
                        }
                    }
                }
                assert!(both_defined_somewhere, "domains always intersect");
                assert_eq!(by_seed, agree, "{w1:?} vs {w2:?}");
            }
        }
    }

    #[test]
    fn rotation_words_preserve_label_sequence() {
        // A-only words have seeds whose two trees read the same labels
        let gens = generators_up_to(&[OpKind::A], 2);
        for g1 in &gens {
            for g2 in &gens {
                for word in [
                    vec![g1.clone(), g2.clone()],
                    vec![g1.clone(), g2.inverse()],
                ] {
                    let seed = word_seed(&word).unwrap();
                    assert_eq!(seed.source.labels(), seed.target.labels());
                }
            }
        }
    }

    #[test]
    fn inverse_word_gives_inverse_seed() {
        for word in [w("A[] C[1]"), w("S[] A[0]'"), w("C[] C[0] A[]")] {
            let s = word_seed(&word).unwrap();
            let si = word_seed(&word_inverse(&word)).unwrap();
            assert_eq!(s.clone().inverse(), si);
            assert!(compose(&s, &si).is_identity());
        }
    }

    #[test]
    fn match_instance_basics() {
        let u = t("(1 (2 3))");
        let tree = t("((5 6) ((7 8) 9))");
        let sigma = match_instance(&u, &tree).unwrap();
        assert_eq!(apply_substitution(&u, &sigma).unwrap(), tree);
        assert!(match_instance(&t("(1 (2 3))"), &t("(1 2)")).is_none());
    }
}
