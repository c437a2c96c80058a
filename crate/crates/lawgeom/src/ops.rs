//! Operator letters (rotation A, commutation C, semi-commutation S, and
//! their indexed aliases), the prefix-strict partial action of words on
//! trees, heirs of addresses, and orbit enumeration.
//!
//! A single action engine drives both the plain and the twisted
//! operators: plain C and S are the twisted ones over the trivial
//! bracket. Letters act left to right, so `t • (w1 w2) = (t • w1) • w2`.

use crate::error::{Error, Result};
use crate::ld::{tree_bracket, tree_unbracket, LdSystem, TrivialLd};
use crate::tree::{Address, ITree, Tree};
use std::collections::HashMap;
use std::fmt;

/// Address-style operator names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    /// Rotation: `t₁(t₂t₃) ↦ (t₁t₂)t₃` at the address.
    A,
    /// Commutation: `t₁t₂ ↦ t₁[t₂]·t₁` (plain bracket: `t₂t₁`).
    C,
    /// Semi-commutation: `t₁(t₂t₃) ↦ t₁[t₂]·(t₁t₃)` (plain: `t₂(t₁t₃)`).
    S,
}

/// Indexed alias names: `a_i`, `c_i`, `s_i` stand for A/C/S at address
/// `1^{i−1}`; `σ_i` (token `b`) is the twisted `s_i` and only acts when a
/// label algebra is supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AliasKind {
    A,
    C,
    S,
    Sigma,
}

/// One signed generator letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Addr {
        kind: OpKind,
        addr: Address,
        inv: bool,
    },
    Indexed {
        kind: AliasKind,
        index: u32,
        inv: bool,
    },
}

impl Gen {
    pub fn a_at(addr: Address) -> Gen {
        Gen::Addr { kind: OpKind::A, addr, inv: false }
    }

    pub fn c_at(addr: Address) -> Gen {
        Gen::Addr { kind: OpKind::C, addr, inv: false }
    }

    pub fn s_at(addr: Address) -> Gen {
        Gen::Addr { kind: OpKind::S, addr, inv: false }
    }

    pub fn a_i(i: u32) -> Gen {
        Gen::Indexed { kind: AliasKind::A, index: i, inv: false }
    }

    pub fn c_i(i: u32) -> Gen {
        Gen::Indexed { kind: AliasKind::C, index: i, inv: false }
    }

    pub fn s_i(i: u32) -> Gen {
        Gen::Indexed { kind: AliasKind::S, index: i, inv: false }
    }

    pub fn sigma_i(i: u32) -> Gen {
        Gen::Indexed { kind: AliasKind::Sigma, index: i, inv: false }
    }

    pub fn inverse(&self) -> Gen {
        match self.clone() {
            Gen::Addr { kind, addr, inv } => Gen::Addr { kind, addr, inv: !inv },
            Gen::Indexed { kind, index, inv } => Gen::Indexed { kind, index, inv: !inv },
        }
    }

    pub fn is_inverse(&self) -> bool {
        match self {
            Gen::Addr { inv, .. } | Gen::Indexed { inv, .. } => *inv,
        }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, Gen::Indexed { kind: AliasKind::Sigma, .. })
    }

    /// Expands an indexed alias to its address-style letter: index `i`
    /// becomes address `1^{i−1}`. `σ_i` expands to S there; the twisted
    /// reading is carried by the label algebra the action is run with.
    pub fn expand_alias(&self) -> Gen {
        match self {
            Gen::Addr { .. } => self.clone(),
            Gen::Indexed { kind, index, inv } => {
                let addr = Address(vec![1u8; (*index - 1) as usize]);
                let kind = match kind {
                    AliasKind::A => OpKind::A,
                    AliasKind::C => OpKind::C,
                    AliasKind::S | AliasKind::Sigma => OpKind::S,
                };
                Gen::Addr { kind, addr, inv: *inv }
            }
        }
    }

    /// Parses one token of the grammar `NAME "[" bits "]"` (A/C/S) or
    /// `NAME index` (a/c/s/b where b is σ), with optional suffix `'`.
    pub fn parse(token: &str) -> Result<Gen> {
        let (body, inv) = match token.strip_suffix('\'') {
            Some(body) => (body, true),
            None => (token, false),
        };
        let err = |message: String| Error::Parse { offset: 0, message };
        let mut chars = body.chars();
        let name = chars
            .next()
            .ok_or_else(|| err("empty generator token".into()))?;
        let rest: &str = &body[name.len_utf8()..];
        match name {
            'A' | 'C' | 'S' => {
                let inner = rest
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| {
                        err(format!("expected `{name}[bits]`, got `{token}`"))
                    })?;
                let addr = if inner.is_empty() {
                    Address::root()
                } else {
                    Address::parse(inner)?
                };
                let kind = match name {
                    'A' => OpKind::A,
                    'C' => OpKind::C,
                    _ => OpKind::S,
                };
                Ok(Gen::Addr { kind, addr, inv })
            }
            'a' | 'c' | 's' | 'b' => {
                let index: u32 = rest
                    .parse()
                    .map_err(|_| err(format!("expected `{name}<index>`, got `{token}`")))?;
                if index == 0 {
                    return Err(err("generator indices start at 1".into()));
                }
                let kind = match name {
                    'a' => AliasKind::A,
                    'c' => AliasKind::C,
                    's' => AliasKind::S,
                    _ => AliasKind::Sigma,
                };
                Ok(Gen::Indexed { kind, index, inv })
            }
            _ => Err(err(format!("unknown generator name `{name}`"))),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Addr { kind, addr, inv } => {
                let name = match kind {
                    OpKind::A => 'A',
                    OpKind::C => 'C',
                    OpKind::S => 'S',
                };
                let bits = if addr.is_empty() {
                    String::new()
                } else {
                    addr.to_string()
                };
                write!(f, "{name}[{bits}]{}", if *inv { "'" } else { "" })
            }
            Gen::Indexed { kind, index, inv } => {
                let name = match kind {
                    AliasKind::A => 'a',
                    AliasKind::C => 'c',
                    AliasKind::S => 's',
                    AliasKind::Sigma => 'b',
                };
                write!(f, "{name}{index}{}", if *inv { "'" } else { "" })
            }
        }
    }
}

/// A word of generator letters, acting left to right.
pub type GWord = Vec<Gen>;

/// Parses a whitespace-separated word of generator tokens.
pub fn parse_word(text: &str) -> Result<GWord> {
    text.split_whitespace().map(Gen::parse).collect()
}

/// Prints a word in the token grammar; the empty word prints as `ε`.
pub fn print_word(w: &[Gen]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    w.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The formal inverse: reversed letters with flipped signs.
pub fn word_inverse(w: &[Gen]) -> GWord {
    w.iter().rev().map(Gen::inverse).collect()
}

/// Expands every indexed alias in `w` to its address-style letter.
pub fn expand_aliases(w: &[Gen]) -> GWord {
    w.iter().map(Gen::expand_alias).collect()
}

/// Prefixes `α` to the address of every letter; indexed aliases must have
/// been expanded first.
pub fn shift_word(w: &[Gen], alpha: &Address) -> Result<GWord> {
    w.iter()
        .map(|g| match g {
            Gen::Addr { kind, addr, inv } => Ok(Gen::Addr {
                kind: *kind,
                addr: alpha.concat(addr),
                inv: *inv,
            }),
            Gen::Indexed { .. } => Err(Error::UnexpandedAlias(g.to_string())),
        })
        .collect()
}

/// The shift ∂ = ∂₁ (prefix address 1).
pub fn shift(w: &[Gen]) -> Result<GWord> {
    shift_word(w, &Address(vec![1]))
}

/// Adds `k` to every index of an indexed word (the shift ∂^k in index
/// form); address-style letters are prefixed with `1^k`.
pub fn shift_indices(w: &[Gen], k: u32) -> GWord {
    w.iter()
        .map(|g| match g {
            Gen::Indexed { kind, index, inv } => Gen::Indexed {
                kind: *kind,
                index: index + k,
                inv: *inv,
            },
            Gen::Addr { kind, addr, inv } => Gen::Addr {
                kind: *kind,
                addr: Address(vec![1u8; k as usize]).concat(addr),
                inv: *inv,
            },
        })
        .collect()
}

/// Applies one generator to a tree over the given label algebra; plain
/// action is the trivial-bracket case.
pub fn apply_generator<S: LdSystem>(
    sys: &S,
    t: &Tree<S::Elem>,
    g: &Gen,
) -> Result<Tree<S::Elem>> {
    let g = g.expand_alias();
    let Gen::Addr { kind, addr, inv } = &g else {
        unreachable!()
    };
    let undefined = || Error::UndefinedAction {
        at: 1,
        letter: g.to_string(),
    };
    let sub = t
        .subtree(addr)
        .map_err(|_| undefined())?;
    let new_sub = match (kind, inv) {
        (OpKind::A, false) => match sub {
            // t₁(t₂t₃) ↦ (t₁t₂)t₃
            Tree::Node(t1, rest) => match &**rest {
                Tree::Node(t2, t3) => Tree::node(
                    Tree::node((**t1).clone(), (**t2).clone()),
                    (**t3).clone(),
                ),
                Tree::Leaf(_) => return Err(undefined()),
            },
            Tree::Leaf(_) => return Err(undefined()),
        },
        (OpKind::A, true) => match sub {
            // (t₁t₂)t₃ ↦ t₁(t₂t₃)
            Tree::Node(rest, t3) => match &**rest {
                Tree::Node(t1, t2) => Tree::node(
                    (**t1).clone(),
                    Tree::node((**t2).clone(), (**t3).clone()),
                ),
                Tree::Leaf(_) => return Err(undefined()),
            },
            Tree::Leaf(_) => return Err(undefined()),
        },
        (OpKind::C, false) => match sub {
            // t₁t₂ ↦ t₁[t₂]·t₁
            Tree::Node(t1, t2) => Tree::node(tree_bracket(sys, t1, t2), (**t1).clone()),
            Tree::Leaf(_) => return Err(undefined()),
        },
        (OpKind::C, true) => match sub {
            // v₁v₂ ↦ v₂·(v₂-divided v₁)
            Tree::Node(v1, v2) => {
                let t2 = tree_unbracket(sys, v2, v1).ok_or(Error::NonCancellativeBracket)?;
                Tree::node((**v2).clone(), t2)
            }
            Tree::Leaf(_) => return Err(undefined()),
        },
        (OpKind::S, false) => match sub {
            // t₁(t₂t₃) ↦ t₁[t₂]·(t₁t₃)
            Tree::Node(t1, rest) => match &**rest {
                Tree::Node(t2, t3) => Tree::node(
                    tree_bracket(sys, t1, t2),
                    Tree::node((**t1).clone(), (**t3).clone()),
                ),
                Tree::Leaf(_) => return Err(undefined()),
            },
            Tree::Leaf(_) => return Err(undefined()),
        },
        (OpKind::S, true) => match sub {
            // v₁(v₂v₃) ↦ v₂·((v₂-divided v₁)·v₃)
            Tree::Node(v1, rest) => match &**rest {
                Tree::Node(v2, v3) => {
                    let t2 =
                        tree_unbracket(sys, v2, v1).ok_or(Error::NonCancellativeBracket)?;
                    Tree::node((**v2).clone(), Tree::node(t2, (**v3).clone()))
                }
                Tree::Leaf(_) => return Err(undefined()),
            },
            Tree::Leaf(_) => return Err(undefined()),
        },
    };
    t.graft(addr, &new_sub)
}

/// Applies a word letter by letter; fails at the first undefined prefix,
/// reporting its length and the failing letter.
pub fn apply_word<S: LdSystem>(sys: &S, t: &Tree<S::Elem>, w: &[Gen]) -> Result<Tree<S::Elem>> {
    let mut cur = t.clone();
    for (i, g) in w.iter().enumerate() {
        cur = apply_generator(sys, &cur, g).map_err(|e| match e {
            Error::UndefinedAction { .. } => Error::UndefinedAction {
                at: i + 1,
                letter: g.to_string(),
            },
            other => other,
        })?;
    }
    Ok(cur)
}

/// Plain action on integer-labeled trees (trivial bracket).
pub fn apply_generator_plain(t: &ITree, g: &Gen) -> Result<ITree> {
    apply_generator(&TrivialLd, t, g)
}

/// Plain word action on integer-labeled trees.
pub fn apply_word_plain(t: &ITree, w: &[Gen]) -> Result<ITree> {
    apply_word(&TrivialLd, t, w)
}

/// Where a positive generator at `alpha` moves the subtree found at `gamma`:
/// `subtree(t • g, heir(gamma)) = subtree(t, gamma)` whenever both sides
/// are defined. Fails with `NoHeir` when the subtree at `gamma` is
/// consumed (split or rebuilt) rather than transported.
pub fn heir(kind: OpKind, alpha: &Address, gamma: &Address) -> Result<Address> {
    if gamma.orthogonal(alpha) {
        return Ok(gamma.clone());
    }
    let no_heir = || Error::NoHeir(gamma.clone());
    let Some(rest) = alpha.strip_prefix_of(gamma) else {
        // gamma is a strict prefix of alpha: the subtree is rebuilt
        return Err(no_heir());
    };
    let bits = &rest.0;
    let heir_rest: Vec<u8> = match kind {
        OpKind::A => {
            // α0β ↦ α00β, α10β ↦ α01β, α11β ↦ α1β
            if !bits.is_empty() && bits[0] == 0 {
                let mut v = vec![0, 0];
                v.extend(&bits[1..]);
                v
            } else if bits.len() >= 2 && bits[0] == 1 && bits[1] == 0 {
                let mut v = vec![0, 1];
                v.extend(&bits[2..]);
                v
            } else if bits.len() >= 2 && bits[0] == 1 && bits[1] == 1 {
                let mut v = vec![1];
                v.extend(&bits[2..]);
                v
            } else {
                return Err(no_heir());
            }
        }
        OpKind::C => {
            // α0β ↦ α1β, α1β ↦ α0β
            if bits.is_empty() {
                return Err(no_heir());
            }
            let mut v = vec![1 - bits[0]];
            v.extend(&bits[1..]);
            v
        }
        OpKind::S => {
            // α0β ↦ α10β, α10β ↦ α0β, α11β ↦ α11β
            if !bits.is_empty() && bits[0] == 0 {
                let mut v = vec![1, 0];
                v.extend(&bits[1..]);
                v
            } else if bits.len() >= 2 && bits[0] == 1 && bits[1] == 0 {
                let mut v = vec![0];
                v.extend(&bits[2..]);
                v
            } else if bits.len() >= 2 && bits[0] == 1 && bits[1] == 1 {
                bits.clone()
            } else {
                return Err(no_heir());
            }
        }
    };
    Ok(alpha.concat(&Address(heir_rest)))
}

/// An orbit: trees in BFS discovery order plus the generator edges that
/// were found between them.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub trees: Vec<ITree>,
    /// (from index, letter, to index); positive and inverse letters both appear.
    pub edges: Vec<(usize, Gen, usize)>,
}

/// BFS closure of `t` under the given generators and their inverses,
/// failing once more than `cap` trees are found.
pub fn orbit(t: &ITree, gens: &[Gen], cap: usize) -> Result<Orbit> {
    let mut index: HashMap<ITree, usize> = HashMap::new();
    let mut trees = vec![t.clone()];
    let mut edges = Vec::new();
    index.insert(t.clone(), 0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let signed: Vec<Gen> = gens
        .iter()
        .flat_map(|g| [g.clone(), g.inverse()])
        .collect();
    while let Some(i) = queue.pop_front() {
        let cur = trees[i].clone();
        for g in &signed {
            match apply_generator_plain(&cur, g) {
                Ok(next) => {
                    let j = match index.get(&next) {
                        Some(&j) => j,
                        None => {
                            let j = trees.len();
                            if j >= cap {
                                return Err(Error::CapExceeded { cap });
                            }
                            index.insert(next.clone(), j);
                            trees.push(next);
                            queue.push_back(j);
                            j
                        }
                    };
                    edges.push((i, g.clone(), j));
                }
                Err(Error::UndefinedAction { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Orbit { trees, edges })
}

/// All positive A/C/S generators from `kinds` at addresses of length at
/// most `max_len` — a convenient generating set for orbit computations.
pub fn generators_up_to(kinds: &[OpKind], max_len: usize) -> Vec<Gen> {
    let mut out = Vec::new();
    for kind in kinds {
        for a in addresses_up_to(max_len) {
            out.push(Gen::Addr {
                kind: *kind,
                addr: a,
                inv: false,
            });
        }
    }
    out
}

/// All addresses of length at most `max_len`, shortest first.
pub fn addresses_up_to(max_len: usize) -> Vec<Address> {
    let mut out = vec![Address::root()];
    let mut frontier = vec![Address::root()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|a| [a.child(0), a.child(1)])
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ld::ConjFree;
    use crate::free::FreeWord;
    use crate::tree::{all_shapes, label_shape, parse_tree, vine_labels, vine_n};

    fn t(s: &str) -> ITree {
        parse_tree(s).unwrap()
    }

    fn w(s: &str) -> GWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn token_grammar_round_trip() {
        let word = w("A[11] C[]' a3 b2' S[01] s1 c2'");
        assert_eq!(print_word(&word), "A[11] C[]' a3 b2' S[01] s1 c2'");
        assert_eq!(word.len(), 7);
        assert_eq!(word[0], Gen::a_at(Address::parse("11").unwrap()));
        assert_eq!(word[1], Gen::c_at(Address::root()).inverse());
        assert_eq!(word[2], Gen::a_i(3));
        assert_eq!(word[3], Gen::sigma_i(2).inverse());
        assert!(parse_word("").unwrap().is_empty());
        assert_eq!(print_word(&[]), "ε");
        assert!(Gen::parse("Q[1]").is_err());
        assert!(Gen::parse("a0").is_err());
        assert!(Gen::parse("A11").is_err());
    }

    #[test]
    fn alias_expansion() {
        assert_eq!(Gen::a_i(1).expand_alias(), Gen::a_at(Address::root()));
        assert_eq!(
            Gen::a_i(3).expand_alias(),
            Gen::a_at(Address::parse("11").unwrap())
        );
        assert_eq!(
            Gen::c_i(2).expand_alias(),
            Gen::c_at(Address::parse("1").unwrap())
        );
        assert_eq!(
            Gen::sigma_i(2).expand_alias(),
            Gen::s_at(Address::parse("1").unwrap())
        );
    }

    #[test]
    fn rotation_example() {
        // •(((••)•)(••)) • A = (•((••)•))(••)
        let before = t("(* (((* *) *) (* *)))");
        let after = apply_generator_plain(&before, &w("A[]")[0]).unwrap();
        assert_eq!(after, t("((* ((* *) *)) (* *))"));
        // A is undefined on a cherry
        assert_eq!(
            apply_generator_plain(&t("(* *)"), &w("A[]")[0]),
            Err(Error::UndefinedAction { at: 1, letter: "A[]".into() })
        );
    }

    #[test]
    fn semi_commutation_example() {
        // S sends 1(2·3) to 2(1·3)
        let before = t("(1 (2 3))");
        let after = apply_generator_plain(&before, &w("S[]")[0]).unwrap();
        assert_eq!(after, t("(2 (1 3))"));
        // and is an involution as a plain map
        let back = apply_generator_plain(&after, &w("S[]")[0]).unwrap();
        assert_eq!(back, before);
    }

    #[test]
    fn commutation_examples() {
        let before = t("(1 2)");
        let after = apply_generator_plain(&before, &w("C[]")[0]).unwrap();
        assert_eq!(after, t("(2 1)"));
        let before = t("((1 2) 3)");
        let after = apply_generator_plain(&before, &w("C[0]")[0]).unwrap();
        assert_eq!(after, t("((2 1) 3)"));
    }

    #[test]
    fn word_action_and_prefix_strictness() {
        // ⟨4⟩ • A_1 = •((••)•)
        assert_eq!(
            apply_word_plain(&vine_n(4), &w("A[1]")).unwrap(),
            t("(* ((* *) *))")
        );
        // (••) • A A' fails at prefix 1
        assert_eq!(
            apply_word_plain(&t("(* *)"), &w("A[] A[]'")),
            Err(Error::UndefinedAction { at: 1, letter: "A[]".into() })
        );
        // ⟨3⟩ • A A fails at prefix 2: the second A needs a deeper right spine
        assert_eq!(
            apply_word_plain(&vine_n(3), &w("A[] A[]")),
            Err(Error::UndefinedAction { at: 2, letter: "A[]".into() })
        );
        // empty word is the identity
        let any = t("(* ((* *) *))");
        assert_eq!(apply_word_plain(&any, &[]).unwrap(), any);
    }

    #[test]
    fn inverse_cancellation_sweep() {
        let words = [
            w("A[]"),
            w("A[1]"),
            w("C[]"),
            w("S[]"),
            w("A[] C[0]"),
            w("A[] A[]"),
            w("S[1] A[]"),
            w("a1 c2 s1"),
            w("A[]' C[1]"),
        ];
        for n in 1..=6 {
            for shape in all_shapes(n) {
                let labels: Vec<u32> = (1..=n as u32).collect();
                let tree = label_shape(&shape, &labels);
                for word in &words {
                    if let Ok(image) = apply_word_plain(&tree, word) {
                        let back = apply_word_plain(&image, &word_inverse(word)).unwrap();
                        assert_eq!(back, tree, "w then w⁻¹ restores the tree");
                        // label multiset is conserved
                        let mut a: Vec<u32> = image.labels().into_iter().copied().collect();
                        let mut b = labels.clone();
                        a.sort_unstable();
                        b.sort_unstable();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_preserves_label_order() {
        for n in 2..=6 {
            for shape in all_shapes(n) {
                let tree = label_shape(&shape, &(1..=n as u32).collect::<Vec<_>>());
                for g in generators_up_to(&[OpKind::A], 2) {
                    for g in [g.clone(), g.inverse()] {
                        if let Ok(image) = apply_generator_plain(&tree, &g) {
                            assert_eq!(image.labels(), tree.labels());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn s_fixes_rightmost_label() {
        for n in 2..=6 {
            for shape in all_shapes(n) {
                let tree = label_shape(&shape, &(1..=n as u32).collect::<Vec<_>>());
                for g in generators_up_to(&[OpKind::S], 2) {
                    for g in [g.clone(), g.inverse()] {
                        if let Ok(image) = apply_generator_plain(&tree, &g) {
                            assert_eq!(image.rightmost_label(), tree.rightmost_label());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shift_words() {
        assert_eq!(shift(&w("A[]")).unwrap(), w("A[1]"));
        assert_eq!(
            shift_word(&w("A[1] C[]"), &Address::parse("0").unwrap()).unwrap(),
            w("A[01] C[0]")
        );
        assert_eq!(shift_word(&[], &Address::parse("0").unwrap()).unwrap(), vec![]);
        assert_eq!(
            shift_word(&w("a2"), &Address::parse("0").unwrap()),
            Err(Error::UnexpandedAlias("a2".into()))
        );
        assert_eq!(shift_indices(&w("a1 c2 b1'"), 2), w("a3 c4 b3'"));
    }

    #[test]
    fn heir_examples() {
        let e = Address::root;
        let p = |s: &str| Address::parse(s).unwrap();
        assert_eq!(heir(OpKind::A, &e(), &p("11")).unwrap(), p("1"));
        assert_eq!(heir(OpKind::A, &e(), &p("0")).unwrap(), p("00"));
        assert_eq!(heir(OpKind::A, &e(), &p("10")).unwrap(), p("01"));
        assert_eq!(heir(OpKind::C, &e(), &p("01")).unwrap(), p("11"));
        assert_eq!(heir(OpKind::C, &e(), &p("1")).unwrap(), p("0"));
        assert_eq!(heir(OpKind::A, &p("1"), &p("0")).unwrap(), p("0"));
        assert_eq!(heir(OpKind::S, &e(), &p("0")).unwrap(), p("10"));
        assert_eq!(heir(OpKind::S, &e(), &p("01")).unwrap(), p("101"));
        assert_eq!(heir(OpKind::S, &e(), &p("10")).unwrap(), p("0"));
        assert_eq!(heir(OpKind::S, &e(), &p("11")).unwrap(), p("11"));
        assert_eq!(heir(OpKind::A, &e(), &e()), Err(Error::NoHeir(e())));
        assert_eq!(heir(OpKind::A, &e(), &p("1")), Err(Error::NoHeir(p("1"))));
        assert_eq!(heir(OpKind::A, &p("01"), &p("0")), Err(Error::NoHeir(p("0"))));
    }

    #[test]
    fn heir_soundness_sweep() {
        // subtree(t • g, heir(γ)) = subtree(t, γ) on every tree of size ≤ 6,
        // kinds A/C/S at addresses of length ≤ 2
        let mut checked = 0usize;
        for n in 1..=6 {
            for shape in all_shapes(n) {
                let tree = label_shape(&shape, &(1..=n as u32).collect::<Vec<_>>());
                for kind in [OpKind::A, OpKind::C, OpKind::S] {
                    for alpha in tree.skeleton() {
                        if alpha.len() > 2 {
                            continue;
                        }
                        let g = Gen::Addr { kind, addr: alpha.clone(), inv: false };
                        let Ok(image) = apply_generator_plain(&tree, &g) else {
                            continue;
                        };
                        for gamma in tree.skeleton() {
                            if let Ok(h) = heir(kind, &alpha, &gamma) {
                                if let (Ok(a), Ok(b)) =
                                    (image.subtree(&h), tree.subtree(&gamma))
                                {
                                    assert_eq!(a, b, "heir transports subtrees");
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 1000, "sweep exercised {checked} cases");
    }

    #[test]
    fn orbit_of_vine4_under_rotations() {
        let gens = generators_up_to(&[OpKind::A], 2);
        let orb = orbit(&vine_n(4), &gens, 10_000).unwrap();
        assert_eq!(orb.trees.len(), 5);
        let mut found = orb.trees.clone();
        found.sort();
        let mut expected = all_shapes(4);
        expected.sort();
        assert_eq!(found, expected, "orbit is every 4-leaf shape");
        assert!(!orb.edges.is_empty());
    }

    #[test]
    fn orbit_of_leaf_is_singleton() {
        let gens = generators_up_to(&[OpKind::A, OpKind::C, OpKind::S], 2);
        let orb = orbit(&ITree::Leaf(1), &gens, 10).unwrap();
        assert_eq!(orb.trees.len(), 1);
    }

    #[test]
    fn orbit_of_coloured_vine3_under_rotation_commutation() {
        let start = vine_labels(&[1, 2, 3]).unwrap();
        let gens = generators_up_to(&[OpKind::A, OpKind::C], 2);
        let orb = orbit(&start, &gens, 10_000).unwrap();
        assert_eq!(orb.trees.len(), 12, "2 shapes × 3! labelings");
    }

    #[test]
    fn orbit_cap() {
        let gens = generators_up_to(&[OpKind::A], 2);
        assert!(matches!(
            orbit(&vine_n(5), &gens, 3),
            Err(Error::CapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn s_equals_its_defining_composition() {
        // S_α acts exactly as C_α A_α⁻¹ C_{α1}⁻¹ (letters act left to right)
        for n in 1..=6 {
            for shape in all_shapes(n) {
                let tree = label_shape(&shape, &(1..=n as u32).collect::<Vec<_>>());
                for alpha in tree.skeleton() {
                    if alpha.len() > 2 {
                        continue;
                    }
                    let s = Gen::s_at(alpha.clone());
                    let composition = vec![
                        Gen::c_at(alpha.clone()),
                        Gen::a_at(alpha.clone()).inverse(),
                        Gen::c_at(alpha.child(1)).inverse(),
                    ];
                    let via_s = apply_generator_plain(&tree, &s);
                    let via_comp = apply_word_plain(&tree, &composition);
                    match (via_s, via_comp) {
                        (Ok(x), Ok(y)) => assert_eq!(x, y),
                        (Err(_), Err(_)) => {}
                        (a, b) => panic!("domain mismatch: {a:?} vs {b:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_commutation_over_conjugation() {
        // C over conj: (x, y) ↦ (xyx⁻¹, x), and C⁻¹ undoes it
        let x = FreeWord::generator(1);
        let y = FreeWord::generator(2);
        let tree = Tree::node(Tree::Leaf(x.clone()), Tree::Leaf(y.clone()));
        let image = apply_generator(&ConjFree, &tree, &Gen::c_at(Address::root())).unwrap();
        assert_eq!(
            image,
            Tree::node(Tree::Leaf(x.conjugate(&y)), Tree::Leaf(x.clone()))
        );
        let back =
            apply_generator(&ConjFree, &image, &Gen::c_at(Address::root()).inverse()).unwrap();
        assert_eq!(back, tree);
        // twisted C is NOT an involution: applying C twice moves labels
        let twice = apply_generator(&ConjFree, &image, &Gen::c_at(Address::root())).unwrap();
        assert_ne!(twice, tree);
    }

    #[test]
    fn twisted_semi_commutation_over_conjugation() {
        // σ₁ = S over conj on x(y·z): (x, (y, z)) ↦ (xyx⁻¹, (x, z))
        let x = FreeWord::generator(1);
        let y = FreeWord::generator(2);
        let z = FreeWord::generator(3);
        let tree = Tree::node(
            Tree::Leaf(x.clone()),
            Tree::node(Tree::Leaf(y.clone()), Tree::Leaf(z.clone())),
        );
        let image = apply_word(&ConjFree, &tree, &[Gen::sigma_i(1)]).unwrap();
        assert_eq!(
            image,
            Tree::node(
                Tree::Leaf(x.conjugate(&y)),
                Tree::node(Tree::Leaf(x.clone()), Tree::Leaf(z.clone()))
            )
        );
        let back = apply_word(&ConjFree, &image, &[Gen::sigma_i(1).inverse()]).unwrap();
        assert_eq!(back, tree);
    }
}
