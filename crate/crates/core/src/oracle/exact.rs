//! Deterministic checks on generic and specialized symbolic matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{dense_rank, Echelon, SparseVec};
use crate::oracle::catalog::{catalog_at, Generator};
use crate::oracle::matrix::{eval_sigma_poly, eval_symbol, EvaluationPoint, Mat3};
use crate::oracle::mpoly::{generic_point, MPoly, Monomial};
use crate::sigma::SigmaPoly;
use crate::word::Multidegree;

/// Outcome of an exact decomposability test.
#[derive(Clone, Debug, Serialize)]
pub struct ExactVerdict {
    pub delta: String,
    pub field: String,
    pub products: usize,
    pub rank: usize,
    pub verdict: bool,
}

/// Multisets of catalog entries of multidegrees below `delta` summing to it.
fn products(entries: &[(Multidegree, usize)], delta: &Multidegree) -> Vec<Vec<usize>> {
    fn rec(
        entries: &[(Multidegree, usize)],
        from: usize,
        rest: &Multidegree,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for i in from..entries.len() {
            if let Some(r) = rest.checked_sub(&entries[i].0) {
                cur.push(entries[i].1);
                rec(entries, i, &r, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(entries, 0, delta, &mut Vec::new(), &mut out);
    out
}

/// Exact decomposability of `target` by full expansion on generic matrices.
/// Feasible for small degrees only.
pub fn exact_decomposable<F: Field>(target: &SigmaPoly<F>, delta: &Multidegree) -> Result<ExactVerdict> {
    let d = delta.d();
    if delta.is_zero() {
        return Err(Error::InvalidMultidegree("zero multidegree".into()));
    }
    match target.multidegree(d) {
        Some(m) if &m == delta => {}
        None if target.is_zero() => {}
        _ => return Err(Error::NotHomogeneous),
    }
    let pt = generic_point::<F>(d);
    let mut gens: Vec<Generator> = Vec::new();
    let mut keyed = Vec::new();
    for m in delta.sub_multidegrees() {
        if m.is_zero() || &m == delta {
            continue;
        }
        for g in catalog_at(&m) {
            keyed.push((m.clone(), gens.len()));
            gens.push(g);
        }
    }
    let values: Vec<MPoly<F>> = gens.iter().map(|g| eval_symbol(g.t, &g.word, &pt)).collect::<Result<_>>()?;
    let prods = products(&keyed, delta);
    let mut polys: Vec<MPoly<F>> =
        prods.iter().map(|p| p.iter().fold(MPoly::one(), |acc, &i| acc * values[i].clone())).collect();
    polys.push(eval_sigma_poly(target, &pt, |c: &F| MPoly::constant(c.clone()))?);

    let mut cols: HashMap<Monomial, u32> = HashMap::new();
    let sparse: Vec<SparseVec<F>> = polys
        .iter()
        .map(|p| {
            let mut row: SparseVec<F> = p
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| {
                    let n = cols.len() as u32;
                    (*cols.entry(m.clone()).or_insert(n), c.clone())
                })
                .collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    let mut ech = Echelon::new(cols.len().max(1));
    let (target_row, product_rows) = sparse.split_last().expect("target row");
    for r in product_rows {
        ech.insert(r);
    }
    let verdict = ech.reduce(target_row).is_empty();
    Ok(ExactVerdict {
        delta: delta.to_string(),
        field: F::descriptor().to_string(),
        products: prods.len(),
        rank: ech.rank(),
        verdict,
    })
}

/// The side computation at the nilpotent matrix with superdiagonal `(a, b)`.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotentCertificate {
    /// `tr(X^2 X̄^2 X X̄)` with `X̄ = X - X^T`.
    pub lhs: String,
    pub tr_xxt: String,
    pub tr_x2xt2: String,
    pub s2_xxt: String,
    /// `tr(X)`, `σ2(X)`, `σ3(X)` and `tr(X^2 X^T)` vanish at `X`.
    pub others_vanish: bool,
    /// Setting `b = 0` forces the coefficient of `tr(XX^T)^3` to zero.
    pub alpha_forced_zero: bool,
    /// With that coefficient zero, the difference is
    /// `-(a^4 b^2 (1 + β + γ) + a^2 b^4 (β + γ))`.
    pub pattern_matches: bool,
    /// Whether some `α, β, γ` make the combination equal the left side.
    pub consistent: bool,
}

pub fn nilpotent_certificate<F: Field>() -> NilpotentCertificate {
    let (a, b) = (MPoly::<F>::var(0), MPoly::<F>::var(1));
    let z = MPoly::zero;
    let x = Mat3([[z(), a, z()], [z(), z(), b], [z(), z(), z()]]);
    let xt = x.transpose();
    let xb = x.sub(&xt);
    let x2 = x.mul(&x);
    let lhs = x2.mul(&xb).mul(&xb).mul(&x).mul(&xb).trace();
    let xxt = x.mul(&xt);
    let t1 = xxt.trace();
    let t2 = x2.mul(&xt).mul(&xt).trace();
    let s2 = xxt.sigma2();
    let others_vanish = [x.trace(), x.sigma2(), x.det(), x2.mul(&xt).trace()].iter().all(|v| v.is_zero());

    let p_alpha = t1.clone() * t1.clone() * t1.clone();
    let p_beta = t1.clone() * t2.clone();
    let p_gamma = t1.clone() * s2.clone();
    let a6: Monomial = vec![(0, 6)];
    let alpha_forced_zero = lhs.coeff(&a6).is_zero()
        && !p_alpha.coeff(&a6).is_zero()
        && p_beta.coeff(&a6).is_zero()
        && p_gamma.coeff(&a6).is_zero();

    let mut monos: Vec<Monomial> =
        [&lhs, &p_alpha, &p_beta, &p_gamma].iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();

    // Residual lhs - βPβ - γPγ as (constant, β, γ) coefficients per monomial.
    let residual: Vec<(Monomial, [F; 3])> = monos
        .iter()
        .map(|m| (m.clone(), [lhs.coeff(m), -p_beta.coeff(m), -p_gamma.coeff(m)]))
        .filter(|(_, c)| c.iter().any(|x| !x.is_zero()))
        .collect();
    let one = F::one;
    let expected: Vec<(Monomial, [F; 3])> =
        vec![(vec![(0, 2), (1, 4)], [F::zero(), -one(), -one()]), (vec![(0, 4), (1, 2)], [-one(), -one(), -one()])];
    let pattern_matches = residual == expected;

    let system: Vec<Vec<F>> =
        monos.iter().map(|m| vec![p_alpha.coeff(m), p_beta.coeff(m), p_gamma.coeff(m), lhs.coeff(m)]).collect();
    let coeff_only: Vec<Vec<F>> = system.iter().map(|r| r[..3].to_vec()).collect();
    let consistent = dense_rank(coeff_only) == dense_rank(system);

    let name = |v: u16| if v == 0 { "a".to_string() } else { "b".to_string() };
    NilpotentCertificate {
        lhs: lhs.to_string_with(&name),
        tr_xxt: t1.to_string_with(&name),
        tr_x2xt2: t2.to_string_with(&name),
        s2_xxt: s2.to_string_with(&name),
        others_vanish,
        alpha_forced_zero,
        pattern_matches,
        consistent,
    }
}

/// Values of a σ-expression on generic matrices, as a polynomial in the entries.
pub fn generic_value<F: Field>(f: &SigmaPoly<F>, d: usize) -> Result<MPoly<F>> {
    let pt: EvaluationPoint<MPoly<F>> = generic_point(d);
    eval_sigma_poly(f, &pt, |c: &F| MPoly::constant(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::sigma::tr_word;

    type F3 = Fp<3>;

    #[test]
    fn nilpotent_side_computation() {
        let c = nilpotent_certificate::<F3>();
        assert_eq!(c.tr_xxt, "a^2 + b^2");
        assert_eq!(c.tr_x2xt2, "a^2*b^2");
        assert_eq!(c.s2_xxt, "a^2*b^2");
        assert_eq!(c.lhs, "-a^4*b^2");
        assert!(c.others_vanish && c.alpha_forced_zero && c.pattern_matches && !c.consistent);
    }

    #[test]
    fn small_exact_verdicts() {
        let delta = Multidegree::new(vec![2]);
        let s2 = SigmaPoly::<F3>::sigma(2, &"x1".parse().unwrap()).unwrap();
        assert!(!exact_decomposable(&s2, &delta).unwrap().verdict);
        let sq = tr_word::<F3>(&"x1^2".parse().unwrap());
        assert!(!exact_decomposable(&sq, &delta).unwrap().verdict);
        let newton = &sq + &s2.scale(&F3::from_i64(2));
        assert!(exact_decomposable(&newton, &delta).unwrap().verdict);
    }
}
