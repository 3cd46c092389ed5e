//! Formal polynomials in the symbols `σ_t(w)`, with `w` a word taken up to
//! cyclic rotation and reversal-with-transpose.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ncpoly::{write_signed_term, NcPoly};
use crate::word::{enumerate_words, EnumOptions, Letter, Multidegree, Word};

/// A product of symbols `σ_t(w)`, kept as a sorted list of `(t, class_rep(w))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SigmaMonomial(Vec<(u32, Word)>);

impl SigmaMonomial {
    pub fn one() -> Self {
        SigmaMonomial(Vec::new())
    }

    /// `σ_t(w)` for `t >= 1` and a nonempty word.
    pub fn symbol(t: u32, w: &Word) -> Result<Self> {
        if t == 0 {
            return Err(Error::Precondition("σ_0 is not a symbol".into()));
        }
        if w.is_unit() {
            return Err(Error::EmptyWord);
        }
        Ok(SigmaMonomial(vec![(t, w.class_rep())]))
    }

    pub fn factors(&self) -> &[(u32, Word)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        SigmaMonomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|(t, w)| *t as usize * w.len()).sum()
    }

    pub fn multidegree(&self, d: usize) -> Multidegree {
        self.0.iter().fold(Multidegree::zeros(d), |acc, (t, w)| &acc + &w.multidegree(d).scale(*t as usize))
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|(_, w)| w.max_index()).max().unwrap_or(0)
    }

    pub fn substitute(&self, images: &dyn Fn(usize) -> Option<Word>) -> Result<Self> {
        let mut v: Vec<(u32, Word)> =
            self.0.iter().map(|(t, w)| Ok((*t, w.substitute(images)?.class_rep()))).collect::<Result<_>>()?;
        v.sort();
        Ok(SigmaMonomial(v))
    }
}

fn symbol_text(t: u32, w: &Word) -> String {
    match t {
        1 => format!("tr({w})"),
        2 => format!("s2({w})"),
        3 => format!("s3({w})"),
        _ => format!("st({t}, {w})"),
    }
}

impl Display for SigmaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == self.0[i] {
                k += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", symbol_text(self.0[i].0, &self.0[i].1))?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
            i += k;
        }
        Ok(())
    }
}

/// A finite linear combination of [`SigmaMonomial`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPoly<F: Field> {
    terms: BTreeMap<SigmaMonomial, F>,
}

impl<F: Field> Default for SigmaPoly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SigmaPoly<F> {
    pub fn zero() -> Self {
        SigmaPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(SigmaMonomial::one(), F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(SigmaMonomial::one(), c)
    }

    pub fn monomial(m: SigmaMonomial, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn sigma(t: u32, w: &Word) -> Result<Self> {
        Ok(Self::monomial(SigmaMonomial::symbol(t, w)?, F::one()))
    }

    pub fn from_terms<I: IntoIterator<Item = (SigmaMonomial, F)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: SigmaMonomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
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

    pub fn terms(&self) -> impl Iterator<Item = (&SigmaMonomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &SigmaMonomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.product(self))
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().map(SigmaMonomial::max_index).max().unwrap_or(0)
    }

    /// The common multidegree of all terms, if there is one.
    pub fn multidegree(&self, d: usize) -> Option<Multidegree> {
        let mut it = self.terms.keys().map(|m| m.multidegree(d));
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }

    pub fn substitute(&self, images: &dyn Fn(usize) -> Option<Word>) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.substitute(images)?, c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> SigmaPoly<G> {
        SigmaPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

/// `tr` applied linearly: `σ_1` of each word, up to equivalence.
pub fn tr<F: Field>(f: &NcPoly<F>) -> SigmaPoly<F> {
    let mut out = SigmaPoly::zero();
    for (w, c) in f.terms() {
        if w.is_unit() {
            // tr(1) is the matrix size; unital inputs are not traced.
            continue;
        }
        out.add_term(SigmaMonomial(vec![(1, w.class_rep())]), c.clone());
    }
    out
}

pub fn tr_word<F: Field>(w: &Word) -> SigmaPoly<F> {
    tr(&NcPoly::word(w.clone()))
}

/// Replaces `x_i` by `args[i-1]` inside every symbol.
pub fn substitute_args<F: Field>(f: &SigmaPoly<F>, args: &[Word]) -> Result<SigmaPoly<F>> {
    f.substitute(&|i| args.get(i - 1).cloned())
}

/// As [`substitute_args`] for polynomial arguments, which must be single
/// words with coefficient one.
pub fn substitute_poly_args<F: Field>(f: &SigmaPoly<F>, args: &[NcPoly<F>]) -> Result<SigmaPoly<F>> {
    let words = args
        .iter()
        .map(|a| match a.terms().next() {
            Some((w, c)) if a.len() == 1 && c.is_one() && !w.is_unit() => Ok(w.clone()),
            _ => Err(Error::NonMonomialArgument(a.to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    substitute_args(f, &words)
}

/// Which letters may follow which in the words defining `σ_{t,r}`.
pub fn sigma_tr_follows(a: Letter, b: Letter) -> bool {
    let first_group = matches!((a.index(), a.is_transposed()), (1, false) | (3, _));
    if first_group {
        matches!((b.index(), b.is_transposed()), (1, false) | (2, _))
    } else {
        matches!((b.index(), b.is_transposed()), (1, true) | (3, _))
    }
}

/// One word contributing to `σ_{t,r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTrDatum {
    pub word: Word,
    pub multiplicity: u32,
    pub xi: usize,
}

/// The words, multiplicities and sign exponents making up `σ_{t,r}(x1,x2,x3)`.
pub fn sigma_tr_data(t: usize, r: usize) -> Vec<SigmaTrDatum> {
    if t == 0 && r == 0 {
        return Vec::new();
    }
    let g = t.gcd(&r);
    let follow: Arc<dyn Fn(Letter, Letter) -> bool + Send + Sync> = Arc::new(sigma_tr_follows);
    let mut out = Vec::new();
    for j in (1..=g).filter(|j| g.is_multiple_of(*j)) {
        let delta = Multidegree::new(vec![t / j, r / j, r / j]);
        let opts = EnumOptions {
            follow: Some(follow.clone()),
            classes_only: true,
            primitive_only: true,
            ..Default::default()
        };
        for a in enumerate_words(&delta, opts) {
            let plain = |i: usize| a.count(Letter::plain(i));
            let xi = t + j * (plain(2) + plain(3) + 1);
            out.push(SigmaTrDatum { word: a, multiplicity: j as u32, xi });
        }
    }
    out
}

/// `σ_{t,r}(x1, x2, x3)`.
pub fn build_sigma_tr<F: Field>(t: usize, r: usize) -> SigmaPoly<F> {
    if t == 0 && r == 0 {
        return SigmaPoly::one();
    }
    let mut out = SigmaPoly::zero();
    for datum in sigma_tr_data(t, r) {
        let sign = if datum.xi % 2 == 0 { F::one() } else { -F::one() };
        out.add_term(SigmaMonomial(vec![(datum.multiplicity, datum.word)]), sign);
    }
    out
}

impl<F: Field> Display for SigmaPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, &m.to_string())?;
        }
        Ok(())
    }
}

impl<F: Field> Add for &SigmaPoly<F> {
    type Output = SigmaPoly<F>;
    fn add(self, rhs: Self) -> SigmaPoly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &SigmaPoly<F> {
    type Output = SigmaPoly<F>;
    fn sub(self, rhs: Self) -> SigmaPoly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &SigmaPoly<F> {
    type Output = SigmaPoly<F>;
    fn neg(self) -> SigmaPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &SigmaPoly<F> {
    type Output = SigmaPoly<F>;
    fn mul(self, rhs: Self) -> SigmaPoly<F> {
        self.product(rhs)
    }
}
