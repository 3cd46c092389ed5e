//! The generators `σ_t(w)`, `t ≤ 3`, one per class of primitive words.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sigma::{SigmaMonomial, SigmaPoly};
use crate::word::{enumerate_words, EnumOptions, Multidegree, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub t: u32,
    pub word: Word,
}

impl Generator {
    /// `word` is replaced by its class representative.
    pub fn new(t: u32, word: &Word) -> Result<Self> {
        if !(1..=3).contains(&t) {
            return Err(Error::Precondition(format!("σ_{t} is not a generator")));
        }
        if word.is_unit() {
            return Err(Error::EmptyWord);
        }
        if !word.is_primitive() {
            return Err(Error::Precondition(format!("{word} is not primitive")));
        }
        Ok(Generator { t, word: word.class_rep() })
    }

    pub fn degree(&self) -> usize {
        self.t as usize * self.word.len()
    }

    pub fn multidegree(&self, d: usize) -> Multidegree {
        self.word.multidegree(d).scale(self.t as usize)
    }

    pub fn symbol(&self) -> SigmaMonomial {
        SigmaMonomial::symbol(self.t, &self.word).expect("generator words are nonempty")
    }

    pub fn to_poly<F: Field>(&self) -> SigmaPoly<F> {
        SigmaPoly::monomial(self.symbol(), F::one())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Generators of multidegree exactly `delta`, in catalog order.
pub fn catalog_at(delta: &Multidegree) -> Vec<Generator> {
    let mut out = Vec::new();
    for t in 1..=3u32 {
        let Some(base) = delta.divide(t as usize) else { continue };
        if base.is_zero() {
            continue;
        }
        out.extend(enumerate_words(&base, EnumOptions::primitive_classes()).map(|word| Generator { t, word }));
    }
    out
}

/// All generators in `d` letters of degree at most `maxdeg`, sorted by degree,
/// then multidegree.
pub fn generator_catalog(d: usize, maxdeg: usize) -> Result<Vec<Generator>> {
    if maxdeg == 0 {
        return Err(Error::Precondition("maxdeg must be at least 1".into()));
    }
    if d == 0 {
        return Err(Error::InvalidMultidegree("d must be at least 1".into()));
    }
    let mut out = Vec::new();
    for k in 1..=maxdeg {
        let mut level: Vec<(Multidegree, Generator)> = Multidegree::compositions(d, k)
            .into_iter()
            .flat_map(|m| catalog_at(&m).into_iter().map(move |g| (m.clone(), g)))
            .collect();
        level.sort();
        out.extend(level.into_iter().map(|(_, g)| g));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalogs() {
        let c1 = generator_catalog(1, 1).unwrap();
        assert_eq!(c1.iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["tr(x1)"]);
        let c2: Vec<String> = generator_catalog(1, 2).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(c2, ["tr(x1)", "tr(x1*x1')", "s2(x1)"]);
        assert!(generator_catalog(1, 0).is_err());
    }

    #[test]
    fn catalog_properties() {
        let cat = generator_catalog(2, 5).unwrap();
        let mut seen = std::collections::HashSet::new();
        for w in cat.windows(2) {
            assert!(w[0].degree() <= w[1].degree());
        }
        for g in &cat {
            assert!(g.degree() <= 5);
            assert!(g.word.is_primitive() && g.word.is_class_rep());
            assert!(seen.insert(g.clone()));
        }
        assert_eq!(Generator::new(1, &"x1' x2".parse().unwrap()).unwrap().word, "x1 x2'".parse().unwrap());
        assert!(Generator::new(1, &"x1 x1".parse().unwrap()).is_err());
    }
}
