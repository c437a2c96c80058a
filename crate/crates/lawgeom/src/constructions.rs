//! Distinguished words that build a given tree out of the base vine:
//! the uncoloured construction words `w_t` / `w_t*` (with a Polish-defect
//! shortcut), their coloured refinements, and the label-sorting words
//! `c_{I,J}` / `s_{I,J}` together with the contiguous-block words
//! `c_{p,q}` / `s_{p,q}`.

use crate::error::{Error, Result};
use crate::ops::{shift, shift_indices, GWord, Gen};
use crate::tree::{polish_encode, Address, ITree, Tree};
use std::collections::BTreeSet;

/// Number of right turns from the root to the rightmost leaf.
pub fn rightmost_branch_len<L>(t: &Tree<L>) -> usize {
    match t {
        Tree::Leaf(_) => 0,
        Tree::Node(_, right) => 1 + rightmost_branch_len(right),
    }
}

fn shift_addr(w: &[Gen]) -> GWord {
    shift(w).expect("construction words in address form contain no indexed letters")
}

/// The uncoloured construction word `w_t`: applying it to the right vine
/// with `t.size()` leaves yields the shape of `t`.
///
/// Letters are address-form associativity moves along the right branch
/// (`A`, `A_1`, `A_11`, …).
pub fn wt<L>(t: &Tree<L>) -> GWord {
    match t {
        Tree::Leaf(_) => Vec::new(),
        Tree::Node(t1, t2) => {
            let mut w = wt_star(t1);
            w.extend(shift_addr(&wt(t2)));
            w
        }
    }
}

/// The uncoloured appended-carrier word `w_t*`: applying it to
/// `⟨•,…,•,t′⟩` (vine of `t.size()` leaves plus a carrier) yields `(t)t′`.
pub fn wt_star<L>(t: &Tree<L>) -> GWord {
    match t {
        Tree::Leaf(_) => Vec::new(),
        Tree::Node(t1, t2) => {
            let mut w = wt_star(t1);
            w.extend(shift_addr(&wt_star(t2)));
            w.push(Gen::a_at(Address::root()));
            w
        }
    }
}

/// The defect profile of a Polish `*`/`o` word: the running value that
/// starts at −1, gains 1 per `*`, and loses 1 per `o`. A word encodes a
/// tree exactly when every partial value after the first symbol is ≥ 0
/// and the final value is 0; the first violating position is reported.
pub fn defect_profile(text: &str) -> Result<Vec<i32>> {
    let mut profile = Vec::with_capacity(text.len() + 1);
    let mut delta = -1i32;
    profile.push(delta);
    for (i, c) in text.char_indices() {
        match c {
            '*' => delta += 1,
            'o' => delta -= 1,
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("invalid Polish symbol `{c}`"),
                })
            }
        }
        if delta < 0 {
            return Err(Error::MalformedPolish { position: i });
        }
        profile.push(delta);
    }
    if delta != 0 {
        return Err(Error::MalformedPolish {
            position: text.len(),
        });
    }
    Ok(profile)
}

/// Computes `(w_t, w_t*)` straight from the Polish encoding of `t`:
/// each `o` of defect `i` becomes the letter `A_{1^i}`, and `w_t` drops
/// the letters coming from the trailing run of `o` symbols. Byte-equal
/// to the inductive definitions.
pub fn wt_via_polish<L>(t: &Tree<L>) -> (GWord, GWord) {
    let polish = polish_encode(t);
    let mut star = Vec::new();
    let mut delta = -1i32;
    for c in polish.chars() {
        match c {
            '*' => delta += 1,
            'o' => {
                delta -= 1;
                let ones = vec![1u8; delta as usize];
                star.push(Gen::a_at(Address(ones)));
            }
            _ => unreachable!("polish_encode emits only * and o"),
        }
    }
    let trailing = polish.chars().rev().take_while(|&c| c == 'o').count();
    let word = star[..star.len() - trailing].to_vec();
    (word, star)
}

/// Checks the syntactic identity `w_t* = w_t · A_{1^{h−1}} ⋯ A_1 A`,
/// where `h` is the length of the rightmost branch of `t` (empty suffix
/// for a leaf).
pub fn wt_star_suffix_identity<L>(t: &Tree<L>) -> bool {
    let h = rightmost_branch_len(t);
    let mut rebuilt = wt(t);
    for k in (0..h).rev() {
        rebuilt.push(Gen::a_at(Address(vec![1u8; k])));
    }
    rebuilt == wt_star(t)
}

/// Which letter closes a sorting word: a cycling `c_k` or a swap `s_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortKind {
    C,
    S,
}

fn sort_rec(i: &BTreeSet<u32>, j: &BTreeSet<u32>, kind: SortKind) -> GWord {
    if i.is_empty() || j.is_empty() {
        return Vec::new();
    }
    let l = (*i.first().unwrap()).min(*j.first().unwrap());
    let p = i.len() as u32;
    if i.contains(&l) {
        let mut i2 = i.clone();
        i2.remove(&l);
        shift_indices(&sort_rec(&i2, j, kind), 1)
    } else {
        let mut j2 = j.clone();
        j2.remove(&l);
        if j2.is_empty() {
            let mut w: GWord = (1..p).map(Gen::s_i).collect();
            w.push(match kind {
                SortKind::C => Gen::c_i(p),
                SortKind::S => Gen::s_i(p),
            });
            w
        } else {
            let mut w = shift_indices(&sort_rec(i, &j2, kind), 1);
            w.extend((1..=p).map(Gen::s_i));
            w
        }
    }
}

/// The sorting word that regroups the increasing vine `⟨I∪J⟩` into the
/// block vine `⟨I,J⟩`. Words use indexed letters; the `c` variant ends a
/// block move with a single cycling letter `c_k`.
pub fn c_word(i: &BTreeSet<u32>, j: &BTreeSet<u32>) -> Result<GWord> {
    if !i.is_disjoint(j) {
        return Err(Error::OverlappingSets);
    }
    Ok(sort_rec(i, j, SortKind::C))
}

/// The swap-only sorting word: regroups `⟨I∪J, t⟩` into `⟨I, J, t⟩`
/// (a trailing carrier subtree stays in place).
pub fn s_word(i: &BTreeSet<u32>, j: &BTreeSet<u32>) -> Result<GWord> {
    if !i.is_disjoint(j) {
        return Err(Error::OverlappingSets);
    }
    Ok(sort_rec(i, j, SortKind::S))
}

/// The contiguous-block sorting word `c_{p,q}` / `s_{p,q}`: moves a block
/// of `p` labels leftwards past a block of `q` labels. Either count being
/// zero gives the empty word.
pub fn block_word(p: u32, q: u32, kind: SortKind) -> GWord {
    let i: BTreeSet<u32> = (q + 1..=q + p).collect();
    let j: BTreeSet<u32> = (1..=q).collect();
    sort_rec(&i, &j, kind)
}

fn label_set(t: &ITree) -> BTreeSet<u32> {
    t.labels().into_iter().copied().collect()
}

fn wt_coloured_rec(t: &ITree) -> GWord {
    match t {
        Tree::Leaf(_) => Vec::new(),
        Tree::Node(t1, t2) => {
            let mut w = sort_rec(&label_set(t1), &label_set(t2), SortKind::C);
            w.extend(wt_star_coloured_rec(t1));
            w.extend(shift_indices(&wt_coloured_rec(t2), 1));
            w
        }
    }
}

fn wt_star_coloured_rec(t: &ITree) -> GWord {
    match t {
        Tree::Leaf(_) => Vec::new(),
        Tree::Node(t1, t2) => {
            let mut w = sort_rec(&label_set(t1), &label_set(t2), SortKind::S);
            w.extend(wt_star_coloured_rec(t1));
            w.extend(shift_indices(&wt_star_coloured_rec(t2), 1));
            w.push(Gen::a_i(1));
            w
        }
    }
}

/// The coloured construction word `w_t` for an injectively labeled tree:
/// applying it to the increasing vine on `t`'s label set yields `t`
/// itself, labels included. Uses indexed `a_i`/`c_i`/`s_i` letters.
pub fn wt_coloured(t: &ITree) -> Result<GWord> {
    if !t.is_injective() {
        return Err(Error::NotInjective);
    }
    Ok(wt_coloured_rec(t))
}

/// The coloured appended-carrier word `w_t*`: applying it to `⟨I, t′⟩`
/// (increasing vine on `t`'s labels, then a carrier) yields `(t)t′`.
pub fn wt_star_coloured(t: &ITree) -> Result<GWord> {
    if !t.is_injective() {
        return Err(Error::NotInjective);
    }
    Ok(wt_star_coloured_rec(t))
}
