//! Cross-check between the quotient algebra and the invariant oracle:
//! for `u` free of `x_j`, `tr(u x_j)` is decomposable exactly when `u`
//! vanishes in the quotient (and in characteristic 3 likewise `tr(u x_j^2)`).

use serde::Serialize;

use crate::a3d::A3d;
use crate::error::{Error, Result};
use crate::field::{embed, FiniteField, PrimeField};
use crate::ncpoly::NcPoly;
use crate::oracle::decompose::Oracle;
use crate::sigma::tr;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub u: String,
    pub j: usize,
    pub squared: bool,
    pub zero_in_quotient: bool,
    pub decomposable: bool,
    pub agree: bool,
    pub samples: usize,
    pub error_bound: f64,
}

pub fn cor1_crosscheck<F: PrimeField, E: FiniteField>(
    engine: &A3d<F>,
    oracle: &mut Oracle<E>,
    u: &NcPoly<F>,
    j: usize,
    squared: bool,
) -> Result<CrossCheck> {
    if F::characteristic() != E::characteristic() {
        return Err(Error::Precondition("engine and oracle fields differ in characteristic".into()));
    }
    if squared && F::characteristic() != 3 {
        return Err(Error::Precondition("the squared variant needs characteristic 3".into()));
    }
    if j == 0 || j > oracle.d() {
        return Err(Error::LetterOutOfRange { index: j, d: oracle.d() });
    }
    if u.terms().any(|(w, _)| w.degree_in(j) > 0) {
        return Err(Error::FreshIndexUsed(j));
    }
    if u.multidegree(oracle.d()).is_none() && !u.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    let zero_in_quotient = engine.is_zero(u)?;
    let xj = Word::letter(Letter::plain(j));
    let tail = NcPoly::word(if squared { xj.pow(2) } else { xj });
    let target = tr(&u.product(&tail)).map_coeffs(embed::<F, E>);
    let (decomposable, samples, bound) = if target.is_zero() {
        (true, 0, 0.0)
    } else {
        let delta = target.multidegree(oracle.d()).ok_or(Error::NotHomogeneous)?;
        let v = oracle.decomposable(&target, &delta)?;
        (v.verdict, v.samples, v.error_bound)
    };
    Ok(CrossCheck {
        u: u.to_string(),
        j,
        squared,
        zero_in_quotient,
        decomposable,
        agree: zero_in_quotient == decomposable,
        samples,
        error_bound: bound,
    })
}
