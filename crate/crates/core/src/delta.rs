//! The simplex category: monotone maps `[m] → [n]` and their canonical
//! factorization into face and degeneracy generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CellError, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaMorphism {
    m: usize,
    n: usize,
    images: Vec<usize>,
}

impl fmt::Debug for DeltaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}] {:?}", self.m, self.n, self.images)
    }
}

/// A generator in tower indexing: `Face { n, i }` is `d_{n,i}: [n-1] → [n]`
/// skipping `i`, `Degen { n, i }` is `s_{n,i}: [n+1] → [n]` hitting `i`
/// twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Face { n: usize, i: usize },
    Degen { n: usize, i: usize },
}

impl Generator {
    pub fn source(self) -> usize {
        match self {
            Generator::Face { n, .. } => n - 1,
            Generator::Degen { n, .. } => n + 1,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Generator::Face { n, .. } | Generator::Degen { n, .. } => n,
        }
    }

    pub fn as_delta(self) -> DeltaMorphism {
        match self {
            Generator::Face { n, i } => DeltaMorphism::face(n, i),
            Generator::Degen { n, i } => DeltaMorphism::degeneracy(n, i),
        }
    }
}

impl DeltaMorphism {
    pub fn new(m: usize, n: usize, images: Vec<usize>) -> Result<Self> {
        if images.len() != m + 1 {
            return Err(CellError::InvalidInput(format!("[{m}] needs {} images", m + 1)));
        }
        if images.iter().any(|&v| v > n) || images.windows(2).any(|w| w[0] > w[1]) {
            return Err(CellError::InvalidInput(format!("{images:?} is not monotone into [{n}]")));
        }
        Ok(DeltaMorphism { m, n, images })
    }

    pub fn identity(n: usize) -> Self {
        DeltaMorphism { m: n, n, images: (0..=n).collect() }
    }

    /// `d_{n,i}`, the injection `[n-1] → [n]` missing `i`.
    pub fn face(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "face d_{{{n},{i}}} out of range");
        DeltaMorphism { m: n - 1, n, images: (0..n).map(|t| if t < i { t } else { t + 1 }).collect() }
    }

    /// `s_{n,i}`, the surjection `[n+1] → [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "degeneracy s_{{{n},{i}}} out of range");
        DeltaMorphism { m: n + 1, n, images: (0..=n + 1).map(|t| if t <= i { t } else { t - 1 }).collect() }
    }

    pub fn source(&self) -> usize {
        self.m
    }

    pub fn target(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DeltaMorphism) -> Result<DeltaMorphism> {
        if first.n != self.m {
            return Err(CellError::mismatch("Δ composition: endpoints"));
        }
        Ok(DeltaMorphism { m: first.m, n: self.n, images: first.images.iter().map(|&t| self.images[t]).collect() })
    }

    pub fn is_injective(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.images.first() == Some(&0) && self.images.last() == Some(&self.n) && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Degeneracies first, then faces; read left to right as application
    /// order. Degeneracy indices strictly decrease, face indices strictly
    /// increase.
    pub fn factorize(&self) -> Vec<Generator> {
        let mut word = Vec::new();
        // repeated positions t with images[t] == images[t+1], largest first
        let mut level = self.m;
        for t in (0..self.m).rev() {
            if self.images[t] == self.images[t + 1] {
                level -= 1;
                word.push(Generator::Degen { n: level, i: t });
            }
        }
        for v in 0..=self.n {
            if !self.images.contains(&v) {
                level += 1;
                word.push(Generator::Face { n: level, i: v });
            }
        }
        word
    }

    /// Composes a word given in application order; `None` for an empty word
    /// (whose meaning depends on the starting object).
    pub fn from_word(word: &[Generator]) -> Result<Option<DeltaMorphism>> {
        let mut acc: Option<DeltaMorphism> = None;
        for g in word {
            let d = g.as_delta();
            acc = Some(match acc {
                None => d,
                Some(prev) => d.after(&prev)?,
            });
        }
        Ok(acc)
    }
}

/// Every monotone map `[m] → [n]`, in lexicographic order.
pub fn all_monotone(m: usize, n: usize) -> Vec<DeltaMorphism> {
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<DeltaMorphism>) {
        if cur.len() == m + 1 {
            out.push(DeltaMorphism { m, n, images: cur.clone() });
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_empty_word() {
        assert!(DeltaMorphism::identity(3).factorize().is_empty());
    }

    #[test]
    fn constant_from_interval() {
        let c = DeltaMorphism::new(1, 0, vec![0, 0]).unwrap();
        assert_eq!(c.factorize(), vec![Generator::Degen { n: 0, i: 0 }]);
    }

    #[test]
    fn skip_middle() {
        let f = DeltaMorphism::new(1, 2, vec![0, 2]).unwrap();
        assert_eq!(f.factorize(), vec![Generator::Face { n: 2, i: 1 }]);
    }

    #[test]
    fn every_map_recomposes() {
        for m in 0..4 {
            for n in 0..4 {
                for phi in all_monotone(m, n) {
                    let word = phi.factorize();
                    match DeltaMorphism::from_word(&word).unwrap() {
                        None => assert_eq!(phi, DeltaMorphism::identity(n)),
                        Some(back) => assert_eq!(back, phi),
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_counts_are_binomial() {
        // C(m + n + 1, m + 1)
        assert_eq!(all_monotone(1, 2).len(), 6);
        assert_eq!(all_monotone(2, 2).len(), 10);
        assert_eq!(all_monotone(3, 1).len(), 5);
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(DeltaMorphism::new(1, 2, vec![2, 0]).is_err());
        assert!(DeltaMorphism::new(1, 1, vec![0, 2]).is_err());
    }

    #[test]
    fn face_and_degeneracy_tables() {
        assert_eq!(DeltaMorphism::face(2, 0).images(), &[1, 2]);
        assert_eq!(DeltaMorphism::degeneracy(1, 0).images(), &[0, 0, 1]);
        assert!(DeltaMorphism::degeneracy(2, 1).is_surjective());
        assert!(DeltaMorphism::face(3, 3).is_injective());
    }
}
