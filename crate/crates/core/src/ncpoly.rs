//! Noncommutative polynomials: finite linear combinations of words.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::word::{Letter, Multidegree, Word};

/// A finite linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly<F: Field> {
    terms: BTreeMap<Word, F>,
}

impl<F: Field> Default for NcPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> NcPoly<F> {
    pub fn zero() -> Self {
        NcPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(w: Word, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, F::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word::letter(l))
    }

    /// The unity of the unital monoid algebra.
    pub fn one() -> Self {
        Self::word(Word::unit())
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, F)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, F)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    /// The only word of a monomial with coefficient one.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.clone() * c.clone())).collect() }
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Applies the involution linearly.
    pub fn transpose(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.involute(), c.clone())))
    }

    /// `f - transpose(f)`.
    pub fn bar(&self) -> Self {
        self - &self.transpose()
    }

    /// Sends `x_i` to `images(i)` and `x_i'` to its involute. Images are monomials.
    pub fn substitute(&self, images: &dyn Fn(usize) -> Option<Word>) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.substitute(images)?, c.clone());
        }
        Ok(out)
    }

    /// Splits into multihomogeneous components over `d` indices.
    pub fn components(&self, d: usize) -> BTreeMap<Multidegree, Self> {
        let mut out: BTreeMap<Multidegree, Self> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.multidegree(d)).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    /// The common multidegree of all terms, if there is one.
    pub fn multidegree(&self, d: usize) -> Option<Multidegree> {
        let mut it = self.terms.keys().map(|w| w.multidegree(d));
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().map(|w| w.max_index()).max().unwrap_or(0)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> NcPoly<G> {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn check_indices(&self, d: usize) -> Result<()> {
        match self.max_index() {
            m if m > d => Err(Error::LetterOutOfRange { index: m, d }),
            _ => Ok(()),
        }
    }
}

impl<F: Field> Add for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn add(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Add for NcPoly<F> {
    type Output = NcPoly<F>;
    fn add(mut self, rhs: NcPoly<F>) -> NcPoly<F> {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<F: Field> Sub for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn sub(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Sub for NcPoly<F> {
    type Output = NcPoly<F>;
    fn sub(self, rhs: NcPoly<F>) -> NcPoly<F> {
        &self - &rhs
    }
}

impl<F: Field> Neg for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn neg(self) -> NcPoly<F> {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }
}

impl<F: Field> Mul for &NcPoly<F> {
    type Output = NcPoly<F>;
    fn mul(self, rhs: &NcPoly<F>) -> NcPoly<F> {
        self.product(rhs)
    }
}

impl<F: Field> Mul for NcPoly<F> {
    type Output = NcPoly<F>;
    fn mul(self, rhs: NcPoly<F>) -> NcPoly<F> {
        self.product(&rhs)
    }
}

/// Writes `c` in front of a term body, choosing the sign that reads best.
pub(crate) fn write_signed_term<F: Field>(f: &mut fmt::Formatter<'_>, first: bool, c: &F, body: &str) -> fmt::Result {
    let (neg, mag) = if c.prefers_minus() { (true, -c.clone()) } else { (false, c.clone()) };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let mag_text = mag.to_string();
    let is_unit_body = body == "1";
    if mag.is_one() {
        write!(f, "{body}")
    } else if is_unit_body {
        write!(f, "{mag_text}")
    } else if mag_text.contains('/') {
        write!(f, "({mag_text})*{body}")
    } else {
        write!(f, "{mag_text}*{body}")
    }
}

impl<F: Field> Display for NcPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, &w.to_string())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Fp, One};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type F3 = Fp<3>;
    type P = NcPoly<F3>;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn x(i: usize) -> P {
        P::letter(Letter::plain(i))
    }

    fn random_poly(rng: &mut ChaCha8Rng, d: usize, maxlen: usize, terms: usize) -> P {
        let mut p = P::zero();
        for _ in 0..terms {
            let len = rng.gen_range(1..=maxlen);
            let codes: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2 * d as u8)).collect();
            p.add_term(Word::from_codes(&codes), F3::random(rng));
        }
        p
    }

    #[test]
    fn bar_examples() {
        assert_eq!(x(1).bar(), P::from_terms([(w("x1"), F3::one()), (w("x1'"), -F3::one())]));
        assert_eq!(x(1).bar().bar(), x(1).bar().scale(&F3::from_i64(2)));
        assert_eq!((&x(1) * &P::letter(Letter::new(2, true))), P::word(w("x1 x2'")));
    }

    #[test]
    fn bar_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let f = random_poly(&mut rng, 2, 4, 5);
            let g = random_poly(&mut rng, 2, 4, 5);
            assert_eq!(f.bar().bar(), f.bar().scale(&F3::from_i64(2)));
            assert_eq!(f.transpose().bar(), -&f.bar());
            let (a, b) = (F3::random(&mut rng), F3::random(&mut rng));
            let lhs = (&f.scale(&a) + &g.scale(&b)).bar();
            let rhs = &f.bar().scale(&a) + &g.bar().scale(&b);
            assert_eq!(lhs, rhs);
            let h = random_poly(&mut rng, 2, 3, 3);
            assert_eq!((&(&f * &g) * &h), (&f * &(&g * &h)));
        }
    }

    #[test]
    fn substitution_examples() {
        let f = P::word(w("x1 x1'"));
        let img = |i: usize| (i == 1).then(|| w("x2 x3"));
        assert_eq!(f.substitute(&img).unwrap(), P::word(w("x2 x3 x3' x2'")));
        let g = x(1).bar();
        let img2 = |i: usize| (i == 1).then(|| w("x2"));
        assert_eq!(g.substitute(&img2).unwrap(), x(2).bar());
        assert!(matches!(x(2).substitute(&img).unwrap_err(), Error::UnmappedIndex(2)));
    }

    #[test]
    fn substitution_commutes_with_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let imgs: Vec<Word> = (0..3)
            .map(|_| {
                let len = rng.gen_range(1..=3);
                Word::from_codes(&(0..len).map(|_| rng.gen_range(0..6u8)).collect::<Vec<_>>())
            })
            .collect();
        let map = |i: usize| imgs.get(i - 1).cloned();
        for _ in 0..50 {
            let f = random_poly(&mut rng, 3, 3, 4);
            let g = random_poly(&mut rng, 3, 3, 4);
            let lhs = (&f * &g).substitute(&map).unwrap();
            let rhs = &f.substitute(&map).unwrap() * &g.substitute(&map).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn components_split_by_multidegree() {
        let p = P::from_terms([(w("x1"), F3::one()), (w("x1 x2"), F3::one()), (w("x2 x1'"), F3::one())]);
        let comps = p.components(2);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&Multidegree::new(vec![1, 1])].len(), 2);
        assert_eq!(p.multidegree(2), None);
    }

    #[test]
    fn display() {
        let p = x(1).bar();
        assert_eq!(p.to_string(), "x1 - x1'");
        assert_eq!(P::zero().to_string(), "0");
    }
}
