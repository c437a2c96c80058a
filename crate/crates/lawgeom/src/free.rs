//! Reduced words in a free group over an arbitrary atom type.

use std::fmt;

/// A reduced free-group word stored in run-length form: a sequence of
/// (atom, nonzero exponent) pairs with no two adjacent equal atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord<G>(Vec<(G, i32)>);

impl<G: Clone + Eq> FreeWord<G> {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(g: G) -> Self {
        FreeWord(vec![(g, 1)])
    }

    pub fn generator_pow(g: G, k: i32) -> Self {
        if k == 0 {
            FreeWord::identity()
        } else {
            FreeWord(vec![(g, k)])
        }
    }

    pub fn from_runs(runs: Vec<(G, i32)>) -> Self {
        let mut out = FreeWord::identity();
        for (g, k) in runs {
            out.push(g, k);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn runs(&self) -> &[(G, i32)] {
        &self.0
    }

    fn push(&mut self, g: G, k: i32) {
        if k == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((last, e)) if *last == g => {
                *e += k;
                if *e == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, k)),
        }
    }

    pub fn mul(&self, other: &FreeWord<G>) -> FreeWord<G> {
        let mut out = self.clone();
        for (g, k) in &other.0 {
            out.push(g.clone(), *k);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord<G> {
        FreeWord(self.0.iter().rev().map(|(g, k)| (g.clone(), -k)).collect())
    }

    /// The conjugate `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &FreeWord<G>) -> FreeWord<G> {
        self.mul(other).mul(&self.inverse())
    }
}

impl<G: fmt::Display> fmt::Display for FreeWord<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, k)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *k == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{k}")?;
            }
        }
        Ok(())
    }
}
