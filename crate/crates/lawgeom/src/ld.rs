//! Self-distributive bracket structures on label algebras, the induced
//! bracket on trees, and checkers for the laws that gate the twisted
//! operators.

use crate::free::FreeWord;
use crate::tree::Tree;
use std::fmt::Debug;

/// A label algebra with a binary bracket `x[y]`, optional left division,
/// and a decidable equality.
///
/// The bracket need not satisfy any law a priori; the checkers below test
/// left self-distributivity `x[y[z]] = x[y][x[z]]`, left cancellativity
/// (`unbracket(x, x[y]) = y`), and the involutory law `x[x[y]] = y`.
pub trait LdSystem {
    type Elem: Clone + Eq + Debug;

    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    /// Left division: `unbracket(x, z)` is the `y` with `x[y] = z`, or
    /// `None` when the bracket has no cancellation rule.
    fn unbracket(&self, x: &Self::Elem, z: &Self::Elem) -> Option<Self::Elem>;

    /// The k-th atomic label: pairwise distinct for distinct k, so
    /// sampled trees are generic over the carrier.
    fn atom(&self, k: u32) -> Self::Elem;

    /// Carrier equality (structural by default; representation-backed
    /// carriers override this).
    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn name(&self) -> &'static str;
}

/// The trivial bracket `x[y] = y` on positive integers; twisted operators
/// over it coincide with the plain ones.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialLd;

impl LdSystem for TrivialLd {
    type Elem = u32;

    fn bracket(&self, _x: &u32, y: &u32) -> u32 {
        *y
    }

    fn unbracket(&self, _x: &u32, z: &u32) -> Option<u32> {
        Some(*z)
    }

    fn atom(&self, k: u32) -> u32 {
        k
    }

    fn name(&self) -> &'static str {
        "trivial"
    }
}

/// Conjugation `x[y] = x·y·x⁻¹` in a free group: a left-cancellative
/// self-distributive bracket that is not involutory.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConjFree;

impl LdSystem for ConjFree {
    type Elem = FreeWord<u32>;

    fn bracket(&self, x: &FreeWord<u32>, y: &FreeWord<u32>) -> FreeWord<u32> {
        x.conjugate(y)
    }

    fn unbracket(&self, x: &FreeWord<u32>, z: &FreeWord<u32>) -> Option<FreeWord<u32>> {
        Some(x.inverse().mul(z).mul(x))
    }

    fn atom(&self, k: u32) -> FreeWord<u32> {
        FreeWord::generator(k)
    }

    fn name(&self) -> &'static str {
        "conj-free"
    }
}

/// Negative control: `x[y] = y + x` on integers is left cancellative but
/// not self-distributive, so twisted-operator checks that depend on the
/// distributive law must fail over it.
#[derive(Debug, Clone, Copy, Default)]
pub struct AddControl;

impl LdSystem for AddControl {
    type Elem = i64;

    fn bracket(&self, x: &i64, y: &i64) -> i64 {
        y + x
    }

    fn unbracket(&self, x: &i64, z: &i64) -> Option<i64> {
        Some(z - x)
    }

    fn atom(&self, k: u32) -> i64 {
        i64::from(k)
    }

    fn name(&self) -> &'static str {
        "add-control"
    }
}

/// Outcome of a law check: either the law held on every sample, or a
/// witness tuple with the two differing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<E> {
    Holds { samples: usize },
    Fails { witness: Vec<E>, lhs: E, rhs: E },
}

impl<E> Verdict<E> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }
}

/// Checks left self-distributivity `x[y[z]] = x[y][x[z]]` on all triples
/// from `samples`.
pub fn check_ld<S: LdSystem>(sys: &S, samples: &[S::Elem]) -> Verdict<S::Elem> {
    let mut count = 0;
    for x in samples {
        for y in samples {
            for z in samples {
                let lhs = sys.bracket(x, &sys.bracket(y, z));
                let rhs = sys.bracket(&sys.bracket(x, y), &sys.bracket(x, z));
                count += 1;
                if !sys.elem_eq(&lhs, &rhs) {
                    return Verdict::Fails {
                        witness: vec![x.clone(), y.clone(), z.clone()],
                        lhs,
                        rhs,
                    };
                }
            }
        }
    }
    Verdict::Holds { samples: count }
}

/// Checks `unbracket(x, x[y]) = y` on all pairs from `samples`; a system
/// with no division rule fails immediately.
pub fn check_left_cancellative<S: LdSystem>(sys: &S, samples: &[S::Elem]) -> Verdict<S::Elem> {
    let mut count = 0;
    for x in samples {
        for y in samples {
            let z = sys.bracket(x, y);
            match sys.unbracket(x, &z) {
                None => {
                    return Verdict::Fails {
                        witness: vec![x.clone(), y.clone()],
                        lhs: z.clone(),
                        rhs: z,
                    }
                }
                Some(back) => {
                    count += 1;
                    if !sys.elem_eq(&back, y) {
                        return Verdict::Fails {
                            witness: vec![x.clone(), y.clone()],
                            lhs: back,
                            rhs: y.clone(),
                        };
                    }
                }
            }
        }
    }
    Verdict::Holds { samples: count }
}

/// Checks the involutory law `x[x[y]] = y` on all pairs from `samples`.
pub fn check_involutory<S: LdSystem>(sys: &S, samples: &[S::Elem]) -> Verdict<S::Elem> {
    let mut count = 0;
    for x in samples {
        for y in samples {
            let lhs = sys.bracket(x, &sys.bracket(x, y));
            count += 1;
            if !sys.elem_eq(&lhs, y) {
                return Verdict::Fails {
                    witness: vec![x.clone(), y.clone()],
                    lhs,
                    rhs: y.clone(),
                };
            }
        }
    }
    Verdict::Holds { samples: count }
}

/// The bracket induced on trees: every label `y` of `t2` is replaced by
/// `x₁[x₂[…xₙ[y]…]]`, where `x₁,…,xₙ` enumerates the labels of `t1` left
/// to right. The result has the shape of `t2`.
pub fn tree_bracket<S: LdSystem>(
    sys: &S,
    t1: &Tree<S::Elem>,
    t2: &Tree<S::Elem>,
) -> Tree<S::Elem> {
    let xs = t1.labels();
    t2.map_labels(&|y| {
        let mut acc = y.clone();
        for x in xs.iter().rev() {
            acc = sys.bracket(x, &acc);
        }
        acc
    })
}

/// Inverts [`tree_bracket`] in its second argument: recovers `t2` from
/// `t1` and `t1[t2]`, or `None` if the bracket has no division rule or a
/// label is not divisible.
pub fn tree_unbracket<S: LdSystem>(
    sys: &S,
    t1: &Tree<S::Elem>,
    bracketed: &Tree<S::Elem>,
) -> Option<Tree<S::Elem>> {
    let xs = t1.labels();
    try_map_labels(bracketed, &|z| {
        let mut acc = z.clone();
        for x in xs.iter() {
            acc = sys.unbracket(x, &acc)?;
        }
        Some(acc)
    })
}

fn try_map_labels<L: Clone>(t: &Tree<L>, f: &impl Fn(&L) -> Option<L>) -> Option<Tree<L>> {
    match t {
        Tree::Leaf(x) => Some(Tree::Leaf(f(x)?)),
        Tree::Node(l, r) => Some(Tree::node(try_map_labels(l, f)?, try_map_labels(r, f)?)),
    }
}

/// Short reduced words over three free generators — the standard sample
/// set for checking laws over the conjugation bracket.
pub fn conj_samples() -> Vec<FreeWord<u32>> {
    let mut out = vec![FreeWord::identity()];
    let gens: Vec<FreeWord<u32>> = (1..=3)
        .flat_map(|i| [FreeWord::generator(i), FreeWord::generator(i).inverse()])
        .collect();
    out.extend(gens.clone());
    for a in &gens {
        for b in &gens {
            let w = a.mul(b);
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn x(i: u32) -> FreeWord<u32> {
        FreeWord::generator(i)
    }

    #[test]
    fn trivial_laws() {
        let samples: Vec<u32> = (1..=6).collect();
        assert!(check_ld(&TrivialLd, &samples).holds());
        assert!(check_left_cancellative(&TrivialLd, &samples).holds());
        assert!(check_involutory(&TrivialLd, &samples).holds());
    }

    #[test]
    fn conj_is_ld_and_cancellative_but_not_involutory() {
        let samples = conj_samples();
        assert!(samples.len() > 20);
        assert!(check_ld(&ConjFree, &samples).holds());
        assert!(check_left_cancellative(&ConjFree, &samples).holds());
        let verdict = check_involutory(&ConjFree, &samples);
        assert!(!verdict.holds(), "conjugation is not involutory");
        // the canonical witness: x[x[y]] = x²yx⁻²
        let lhs = ConjFree.bracket(&x(1), &ConjFree.bracket(&x(1), &x(2)));
        assert_eq!(lhs, FreeWord::from_runs(vec![(1, 2), (2, 1), (1, -2)]));
        assert_ne!(lhs, x(2));
    }

    #[test]
    fn add_control_is_cancellative_but_not_ld() {
        let samples: Vec<i64> = (-3..=3).collect();
        assert!(check_left_cancellative(&AddControl, &samples).holds());
        let verdict = check_ld(&AddControl, &samples);
        let Verdict::Fails { witness, lhs, rhs } = verdict else {
            panic!("x[y] = y + x must fail the self-distributive law");
        };
        // x[y[z]] = z+y+x while x[y][x[z]] = z+y+2x
        let (wx, wy, wz) = (witness[0], witness[1], witness[2]);
        assert_eq!(lhs, wz + wy + wx);
        assert_eq!(rhs, wz + wy + 2 * wx);
    }

    #[test]
    fn tree_bracket_examples() {
        // one label crossing a cherry: •_x[•_y•_z] = •_{xyx⁻¹}•_{xzx⁻¹}
        let t1 = Tree::Leaf(x(1));
        let t2 = Tree::node(Tree::Leaf(x(2)), Tree::Leaf(x(3)));
        let b = tree_bracket(&ConjFree, &t1, &t2);
        assert_eq!(
            b,
            Tree::node(
                Tree::Leaf(x(1).conjugate(&x(2))),
                Tree::Leaf(x(1).conjugate(&x(3)))
            )
        );

        // two labels crossing a leaf: (•_x•_y)[•_z] = •_{xyzy⁻¹x⁻¹}
        let t1 = Tree::node(Tree::Leaf(x(1)), Tree::Leaf(x(2)));
        let t2 = Tree::Leaf(x(3));
        let b = tree_bracket(&ConjFree, &t1, &t2);
        let expected = FreeWord::from_runs(vec![(1, 1), (2, 1), (3, 1), (2, -1), (1, -1)]);
        assert_eq!(b, Tree::Leaf(expected));

        // trivial bracket leaves the right tree unchanged
        let t1 = parse_tree("(1 2)").unwrap();
        let t2 = parse_tree("(3 (4 5))").unwrap();
        assert_eq!(tree_bracket(&TrivialLd, &t1, &t2), t2);
    }

    #[test]
    fn tree_bracket_structural_identities() {
        // t₁[t₂t₃] = t₁[t₂]·t₁[t₃] and (t₁t₂)[t₃] = t₁[t₂[t₃]] hold for
        // any bracket, by construction; exercise them over a non-LD one.
        let sys = AddControl;
        let t1 = Tree::node(Tree::Leaf(5), Tree::Leaf(-2));
        let t2 = Tree::node(Tree::Leaf(1), Tree::node(Tree::Leaf(2), Tree::Leaf(3)));
        let t3 = Tree::Leaf(7);

        let lhs = tree_bracket(&sys, &t1, &Tree::node(t2.clone(), t3.clone()));
        let rhs = Tree::node(tree_bracket(&sys, &t1, &t2), tree_bracket(&sys, &t1, &t3));
        assert_eq!(lhs, rhs);

        let lhs = tree_bracket(&sys, &Tree::node(t1.clone(), t2.clone()), &t3);
        let rhs = tree_bracket(&sys, &t1, &tree_bracket(&sys, &t2, &t3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tree_unbracket_inverts() {
        let sys = ConjFree;
        let t1 = Tree::node(Tree::Leaf(x(1)), Tree::Leaf(x(2)));
        let t2 = Tree::node(Tree::Leaf(x(3)), Tree::Leaf(x(4).inverse()));
        let b = tree_bracket(&sys, &t1, &t2);
        assert_eq!(tree_unbracket(&sys, &t1, &b), Some(t2));
    }

    #[test]
    fn bracket_preserves_shape() {
        let sys = ConjFree;
        let t1 = Tree::node(Tree::Leaf(x(1)), Tree::Leaf(x(2)));
        let t2 = Tree::node(Tree::node(Tree::Leaf(x(3)), Tree::Leaf(x(4))), Tree::Leaf(x(5)));
        assert_eq!(tree_bracket(&sys, &t1, &t2).shape(), t2.shape());
    }
}
