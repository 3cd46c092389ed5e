//! 3×3 matrices over a commutative ring and evaluation of words, noncommutative
//! polynomials and σ-expressions at a tuple of matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::ncpoly::NcPoly;
use crate::sigma::{SigmaMonomial, SigmaPoly};
use crate::word::{Letter, Word};

/// Commutative rings the matrices may take entries in.
pub trait Ring:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self> + Send + Sync
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T> + Send + Sync
{
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3<R>(pub [[R; 3]; 3]);

impl<R: Ring> Mat3<R> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> R) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| R::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            self.0[i][0].clone() * other.0[0][j].clone()
                + self.0[i][1].clone() * other.0[1][j].clone()
                + self.0[i][2].clone() * other.0[2][j].clone()
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() + other.0[i][j].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() - other.0[i][j].clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_fn(|i, j| c.clone() * self.0[i][j].clone())
    }

    pub fn trace(&self) -> R {
        self.0[0][0].clone() + self.0[1][1].clone() + self.0[2][2].clone()
    }

    /// Sum of the principal 2×2 minors.
    pub fn sigma2(&self) -> R {
        let m = &self.0;
        let minor = |i: usize, j: usize| m[i][i].clone() * m[j][j].clone() - m[i][j].clone() * m[j][i].clone();
        minor(0, 1) + minor(0, 2) + minor(1, 2)
    }

    pub fn det(&self) -> R {
        let m = &self.0;
        let c = |i: usize, j: usize, k: usize, l: usize| {
            m[i][j].clone() * m[k][l].clone() - m[i][l].clone() * m[k][j].clone()
        };
        m[0][0].clone() * c(1, 1, 2, 2) - m[0][1].clone() * c(1, 0, 2, 2) + m[0][2].clone() * c(1, 0, 2, 1)
    }

    /// Coefficients of the characteristic polynomial; zero above three.
    pub fn sigma(&self, t: u32) -> R {
        match t {
            0 => R::one(),
            1 => self.trace(),
            2 => self.sigma2(),
            3 => self.det(),
            _ => R::zero(),
        }
    }
}

/// An instantiation `x_k ↦ X_k` of the generic matrices.
#[derive(Clone, Debug)]
pub struct EvaluationPoint<R> {
    /// Indexed by letter code, so transposes are stored alongside.
    letters: Vec<Mat3<R>>,
}

impl<R: Ring> EvaluationPoint<R> {
    pub fn new(mats: Vec<Mat3<R>>) -> Self {
        let letters = mats
            .into_iter()
            .flat_map(|m| {
                let t = m.transpose();
                [m, t]
            })
            .collect();
        EvaluationPoint { letters }
    }

    pub fn d(&self) -> usize {
        self.letters.len() / 2
    }

    /// `X_k` for `1 ≤ k ≤ d`.
    pub fn matrix(&self, k: usize) -> &Mat3<R> {
        &self.letters[2 * (k - 1)]
    }

    pub fn matrices(&self) -> Vec<Mat3<R>> {
        (1..=self.d()).map(|k| self.matrix(k).clone()).collect()
    }

    pub fn letter(&self, l: Letter) -> Result<&Mat3<R>> {
        self.letters.get(l.code() as usize).ok_or(Error::LetterOutOfRange { index: l.index(), d: self.d() })
    }

    pub fn word(&self, w: &Word) -> Result<Mat3<R>> {
        let mut it = w.letters().iter();
        let Some(&first) = it.next() else {
            return Ok(Mat3::identity());
        };
        let mut acc = self.letter(first)?.clone();
        for &l in it {
            acc = acc.mul(self.letter(l)?);
        }
        Ok(acc)
    }
}

impl<E: FiniteField> EvaluationPoint<E> {
    pub fn random<G: Rng + ?Sized>(d: usize, rng: &mut G) -> Self {
        Self::new((0..d).map(|_| Mat3::from_fn(|_, _| E::random(rng))).collect())
    }
}

pub fn eval_ncpoly<F: Field, R: Ring>(
    f: &NcPoly<F>,
    pt: &EvaluationPoint<R>,
    embed: impl Fn(&F) -> R,
) -> Result<Mat3<R>> {
    let mut acc = Mat3::zero();
    for (w, c) in f.terms() {
        acc = acc.add(&pt.word(w)?.scale(&embed(c)));
    }
    Ok(acc)
}

pub fn eval_symbol<R: Ring>(t: u32, w: &Word, pt: &EvaluationPoint<R>) -> Result<R> {
    Ok(pt.word(w)?.sigma(t))
}

pub fn eval_monomial<R: Ring>(m: &SigmaMonomial, pt: &EvaluationPoint<R>) -> Result<R> {
    let mut acc = R::one();
    for (t, w) in m.factors() {
        acc = acc * eval_symbol(*t, w, pt)?;
    }
    Ok(acc)
}

pub fn eval_sigma_poly<F: Field, R: Ring>(
    f: &SigmaPoly<F>,
    pt: &EvaluationPoint<R>,
    embed: impl Fn(&F) -> R,
) -> Result<R> {
    let mut acc = R::zero();
    for (m, c) in f.terms() {
        acc = acc + embed(c) * eval_monomial(m, pt)?;
    }
    Ok(acc)
}

/// [`eval_sigma_poly`] when coefficients and entries share a field.
pub fn eval_sigma<F: Field>(f: &SigmaPoly<F>, pt: &EvaluationPoint<F>) -> Result<F> {
    eval_sigma_poly(f, pt, F::clone)
}
