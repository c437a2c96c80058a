//! Finite rooted binary trees with labeled leaves, addresses into them,
//! the Polish-notation codec, substitutions, and unification of
//! injectively labeled trees.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

/// A position in a tree: the sequence of 0 (left) / 1 (right) turns from
/// the root. The empty address is the root and prints as `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(pub Vec<u8>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "address bits must be 0 or 1");
        Address(bits.to_vec())
    }

    /// Parses a bare binary string; `e` (or the empty string) is the root.
    pub fn parse(text: &str) -> Result<Self> {
        if text == "e" || text.is_empty() {
            return Ok(Address::root());
        }
        let mut bits = Vec::with_capacity(text.len());
        for (i, c) in text.char_indices() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::Parse {
                        offset: i,
                        message: format!("invalid address character `{c}`"),
                    })
                }
            }
        }
        Ok(Address(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The address obtained by appending `bit`.
    pub fn child(&self, bit: u8) -> Self {
        let mut bits = self.0.clone();
        bits.push(bit);
        Address(bits)
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Address) -> Self {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Address(bits)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Strips `self` from the front of `other`, if `self` is a prefix.
    pub fn strip_prefix_of<'a>(&self, other: &'a Address) -> Option<Address> {
        if self.is_prefix_of(other) {
            Some(Address(other.0[self.0.len()..].to_vec()))
        } else {
            None
        }
    }

    /// Incompatibility: neither address is a prefix of the other.
    pub fn orthogonal(&self, other: &Address) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "e")
        } else {
            for b in &self.0 {
                write!(f, "{b}")?;
            }
            Ok(())
        }
    }
}

/// A finite rooted binary tree whose leaves carry labels of type `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree<L> {
    Leaf(L),
    Node(Box<Tree<L>>, Box<Tree<L>>),
}

/// Trees with positive-integer labels; label 1 everywhere encodes the
/// uncoloured case.
pub type ITree = Tree<u32>;

impl<L> Tree<L> {
    pub fn node(left: Tree<L>, right: Tree<L>) -> Self {
        Tree::Node(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.size() + r.size(),
        }
    }

    /// The subtree at `addr`, if `addr` is in the skeleton.
    pub fn subtree(&self, addr: &Address) -> Result<&Tree<L>> {
        let mut cur = self;
        for (depth, &bit) in addr.0.iter().enumerate() {
            match cur {
                Tree::Leaf(_) => {
                    let _ = depth;
                    return Err(Error::AddressOutsideSkeleton(addr.clone()));
                }
                Tree::Node(l, r) => cur = if bit == 0 { l } else { r },
            }
        }
        Ok(cur)
    }

    /// The set of all valid addresses in the tree.
    pub fn skeleton(&self) -> BTreeSet<Address> {
        let mut out = BTreeSet::new();
        self.walk_skeleton(&Address::root(), &mut out);
        out
    }

    fn walk_skeleton(&self, at: &Address, out: &mut BTreeSet<Address>) {
        out.insert(at.clone());
        if let Tree::Node(l, r) = self {
            l.walk_skeleton(&at.child(0), out);
            r.walk_skeleton(&at.child(1), out);
        }
    }

    /// Addresses of the leaves, left to right.
    pub fn leaf_addresses(&self) -> Vec<Address> {
        let mut out = Vec::new();
        self.walk_leaves(&Address::root(), &mut out);
        out
    }

    fn walk_leaves(&self, at: &Address, out: &mut Vec<Address>) {
        match self {
            Tree::Leaf(_) => out.push(at.clone()),
            Tree::Node(l, r) => {
                l.walk_leaves(&at.child(0), out);
                r.walk_leaves(&at.child(1), out);
            }
        }
    }

    /// Leaf labels, left to right.
    pub fn labels(&self) -> Vec<&L> {
        match self {
            Tree::Leaf(x) => vec![x],
            Tree::Node(l, r) => {
                let mut out = l.labels();
                out.extend(r.labels());
                out
            }
        }
    }

    /// The label of the rightmost leaf.
    pub fn rightmost_label(&self) -> &L {
        match self {
            Tree::Leaf(x) => x,
            Tree::Node(_, r) => r.rightmost_label(),
        }
    }

    pub fn map_labels<M>(&self, f: &impl Fn(&L) -> M) -> Tree<M> {
        match self {
            Tree::Leaf(x) => Tree::Leaf(f(x)),
            Tree::Node(l, r) => Tree::node(l.map_labels(f), r.map_labels(f)),
        }
    }

    /// The tree's unlabeled shape (all labels set to 1).
    pub fn shape(&self) -> ITree {
        self.map_labels(&|_| 1)
    }
}

impl<L: Clone> Tree<L> {
    /// Returns `self` with the subtree at `addr` replaced by `sub`.
    pub fn graft(&self, addr: &Address, sub: &Tree<L>) -> Result<Tree<L>> {
        self.graft_at(&addr.0, sub)
            .ok_or_else(|| Error::AddressOutsideSkeleton(addr.clone()))
    }

    fn graft_at(&self, bits: &[u8], sub: &Tree<L>) -> Option<Tree<L>> {
        match bits.split_first() {
            None => Some(sub.clone()),
            Some((&bit, rest)) => match self {
                Tree::Leaf(_) => None,
                Tree::Node(l, r) => {
                    if bit == 0 {
                        Some(Tree::node(l.graft_at(rest, sub)?, (**r).clone()))
                    } else {
                        Some(Tree::node((**l).clone(), r.graft_at(rest, sub)?))
                    }
                }
            },
        }
    }
}

impl ITree {
    /// True when the leaf labels are pairwise distinct.
    pub fn is_injective(&self) -> bool {
        let labels = self.labels();
        let set: BTreeSet<&u32> = labels.iter().copied().collect();
        set.len() == labels.len()
    }

    /// True when all labels equal 1 (the uncoloured convention).
    pub fn is_uncoloured(&self) -> bool {
        self.labels().iter().all(|&&x| x == 1)
    }

    /// Replaces labels by 1..n in left-to-right leaf order, returning the
    /// relabeled tree and the map from old to new labels. Requires an
    /// injective tree so that the map is well defined.
    pub fn relabel_canonical(&self) -> Result<(ITree, BTreeMap<u32, u32>)> {
        if !self.is_injective() {
            return Err(Error::NotInjective);
        }
        let mut map = BTreeMap::new();
        let mut next = 1u32;
        for &x in self.labels() {
            map.insert(x, next);
            next += 1;
        }
        Ok((self.map_labels(&|x| map[x]), map))
    }
}

/// Parses the grammar `tree := leaf | "(" tree WS tree ")"`,
/// `leaf := "*" | positive-integer`, with `*` meaning label 1.
pub fn parse_tree(text: &str) -> Result<ITree> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let tree = parse_tree_at(bytes, &mut pos)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(Error::Parse {
            offset: pos,
            message: "trailing input after tree".into(),
        });
    }
    Ok(tree)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_tree_at(bytes: &[u8], pos: &mut usize) -> Result<ITree> {
    skip_ws(bytes, pos);
    if *pos >= bytes.len() {
        return Err(Error::Parse {
            offset: *pos,
            message: "unexpected end of input".into(),
        });
    }
    match bytes[*pos] {
        b'(' => {
            *pos += 1;
            let left = parse_tree_at(bytes, pos)?;
            let right = parse_tree_at(bytes, pos)?;
            skip_ws(bytes, pos);
            if *pos >= bytes.len() || bytes[*pos] != b')' {
                return Err(Error::Parse {
                    offset: *pos,
                    message: "expected `)`".into(),
                });
            }
            *pos += 1;
            Ok(Tree::node(left, right))
        }
        b'*' => {
            *pos += 1;
            Ok(Tree::Leaf(1))
        }
        b'0'..=b'9' => {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let digits = std::str::from_utf8(&bytes[start..*pos]).unwrap();
            let n: u32 = digits.parse().map_err(|_| Error::Parse {
                offset: start,
                message: format!("label `{digits}` out of range"),
            })?;
            if n == 0 {
                return Err(Error::Parse {
                    offset: start,
                    message: "labels must be positive".into(),
                });
            }
            Ok(Tree::Leaf(n))
        }
        other => Err(Error::Parse {
            offset: *pos,
            message: format!("unexpected character `{}`", other as char),
        }),
    }
}

/// Prints a tree in the grammar accepted by [`parse_tree`]; an
/// all-labels-1 tree prints its leaves as `*`.
pub fn print_tree(t: &ITree) -> String {
    let starred = t.is_uncoloured();
    let mut out = String::new();
    print_tree_into(t, starred, &mut out);
    out
}

fn print_tree_into(t: &ITree, starred: bool, out: &mut String) {
    match t {
        Tree::Leaf(x) => {
            if starred {
                out.push('*');
            } else {
                out.push_str(&x.to_string());
            }
        }
        Tree::Node(l, r) => {
            out.push('(');
            print_tree_into(l, starred, out);
            out.push(' ');
            print_tree_into(r, starred, out);
            out.push(')');
        }
    }
}

impl fmt::Display for ITree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_tree(self))
    }
}

/// Builds the right vine `t₁(t₂(…(t_{n−1}tₙ)…))` from a nonempty sequence.
pub fn vine<L>(items: Vec<Tree<L>>) -> Result<Tree<L>> {
    let mut iter = items.into_iter().rev();
    let last = iter.next().ok_or(Error::EmptyInput)?;
    Ok(iter.fold(last, |acc, item| Tree::node(item, acc)))
}

/// The uncoloured right vine with `n` leaves.
pub fn vine_n(n: usize) -> ITree {
    assert!(n >= 1, "vine needs at least one leaf");
    vine(vec![Tree::Leaf(1); n]).unwrap()
}

/// The coloured right vine whose leaves carry `labels` in the given order.
/// Passing each block of a sequence of label sets in increasing order
/// yields the block vines ⟨I₁,…,I_k⟩.
pub fn vine_labels(labels: &[u32]) -> Result<ITree> {
    vine(labels.iter().map(|&x| Tree::Leaf(x)).collect())
}

/// The coloured vine ⟨I₁,…,I_k⟩: blocks of labels, each block enumerated
/// in increasing order.
pub fn vine_blocks(blocks: &[&[u32]]) -> Result<ITree> {
    let mut labels = Vec::new();
    for block in blocks {
        let mut sorted: Vec<u32> = block.to_vec();
        sorted.sort_unstable();
        labels.extend(sorted);
    }
    vine_labels(&labels)
}

/// Right Polish encoding: leaf ↦ `*`, node ↦ encode(left)·encode(right)·`o`.
pub fn polish_encode<L>(t: &Tree<L>) -> String {
    fn walk<L>(t: &Tree<L>, out: &mut String) {
        match t {
            Tree::Leaf(_) => out.push('*'),
            Tree::Node(l, r) => {
                walk(l, out);
                walk(r, out);
                out.push('o');
            }
        }
    }
    let mut out = String::new();
    walk(t, &mut out);
    out
}

/// Decodes a `*`/`o` symbol sequence back to an (uncoloured) tree.
/// Fails with the position of the first defect violation.
pub fn polish_decode(text: &str) -> Result<ITree> {
    let mut stack: Vec<ITree> = Vec::new();
    for (i, c) in text.char_indices() {
        match c {
            '*' => stack.push(Tree::Leaf(1)),
            'o' => {
                if stack.len() < 2 {
                    return Err(Error::MalformedPolish { position: i });
                }
                let right = stack.pop().unwrap();
                let left = stack.pop().unwrap();
                stack.push(Tree::node(left, right));
            }
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("invalid Polish symbol `{c}`"),
                })
            }
        }
    }
    if stack.len() != 1 {
        return Err(Error::MalformedPolish {
            position: text.len(),
        });
    }
    Ok(stack.pop().unwrap())
}

/// A finite map from positive-integer labels to trees.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Substitution(pub BTreeMap<u32, ITree>);

impl Substitution {
    pub fn identity_on(t: &ITree) -> Self {
        let mut map = BTreeMap::new();
        for &x in t.labels() {
            map.insert(x, Tree::Leaf(x));
        }
        Substitution(map)
    }

    pub fn get(&self, x: u32) -> Option<&ITree> {
        self.0.get(&x)
    }
}

/// Replaces every leaf labeled `x` by `σ(x)`.
pub fn apply_substitution(t: &ITree, sigma: &Substitution) -> Result<ITree> {
    match t {
        Tree::Leaf(x) => sigma.0.get(x).cloned().ok_or(Error::UnboundLabel(*x)),
        Tree::Node(l, r) => Ok(Tree::node(
            apply_substitution(l, sigma)?,
            apply_substitution(r, sigma)?,
        )),
    }
}

/// Unifies two injectively labeled trees: returns substitutions
/// `(σ1, σ2)` with `t1^σ1 = t2^σ2`, the common instance being the union
/// of the two skeletons with fresh labels 1..n assigned left to right.
pub fn unify_injective(t1: &ITree, t2: &ITree) -> Result<(Substitution, Substitution)> {
    if !t1.is_injective() || !t2.is_injective() {
        return Err(Error::NotInjective);
    }
    let common = relabel_fresh(&union_shape(t1, t2));
    let sigma1 = project(t1, &common);
    let sigma2 = project(t2, &common);
    Ok((sigma1, sigma2))
}

/// The common instance of a unification: the union-skeleton tree with
/// canonical fresh labels.
pub fn common_instance(t1: &ITree, t2: &ITree) -> Result<ITree> {
    if !t1.is_injective() || !t2.is_injective() {
        return Err(Error::NotInjective);
    }
    Ok(relabel_fresh(&union_shape(t1, t2)))
}

fn union_shape(t1: &ITree, t2: &ITree) -> ITree {
    match (t1, t2) {
        (Tree::Leaf(_), _) => t2.shape(),
        (_, Tree::Leaf(_)) => t1.shape(),
        (Tree::Node(l1, r1), Tree::Node(l2, r2)) => {
            Tree::node(union_shape(l1, l2), union_shape(r1, r2))
        }
    }
}

fn relabel_fresh(shape: &ITree) -> ITree {
    fn walk(t: &ITree, next: &mut u32) -> ITree {
        match t {
            Tree::Leaf(_) => {
                let x = *next;
                *next += 1;
                Tree::Leaf(x)
            }
            Tree::Node(l, r) => {
                let left = walk(l, next);
                let right = walk(r, next);
                Tree::node(left, right)
            }
        }
    }
    let mut next = 1u32;
    walk(shape, &mut next)
}

fn project(t: &ITree, common: &ITree) -> Substitution {
    let mut map = BTreeMap::new();
    for addr in t.leaf_addresses() {
        let Tree::Leaf(x) = t.subtree(&addr).unwrap() else {
            unreachable!()
        };
        map.insert(*x, common.subtree(&addr).unwrap().clone());
    }
    Substitution(map)
}

/// All binary tree shapes with `n` leaves, as all-labels-1 trees.
pub fn all_shapes(n: usize) -> Vec<ITree> {
    assert!(n >= 1);
    if n == 1 {
        return vec![Tree::Leaf(1)];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in all_shapes(k) {
            for r in all_shapes(n - k) {
                out.push(Tree::node(l.clone(), r));
            }
        }
    }
    out
}

/// All permutations of `1..=n`, in a deterministic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, rest: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            extend(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// Relabels the leaves of `shape` left to right with `labels`.
pub fn label_shape(shape: &ITree, labels: &[u32]) -> ITree {
    fn walk(t: &ITree, labels: &[u32], next: &mut usize) -> ITree {
        match t {
            Tree::Leaf(_) => {
                let x = labels[*next];
                *next += 1;
                Tree::Leaf(x)
            }
            Tree::Node(l, r) => {
                let left = walk(l, labels, next);
                let right = walk(r, labels, next);
                Tree::node(left, right)
            }
        }
    }
    assert_eq!(shape.size(), labels.len());
    let mut next = 0usize;
    walk(shape, labels, &mut next)
}
