//! Multihomogeneous components by interpolation in auxiliary weights.

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::oracle::matrix::{eval_sigma, EvaluationPoint, Mat3};
use crate::sigma::build_sigma_tr;

/// Coefficients (lowest first) of the Lagrange basis polynomials at `nodes`.
fn lagrange_coeffs<E: FiniteField>(nodes: &[E]) -> Vec<Vec<E>> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, &xi)| {
            let mut poly = vec![E::one()];
            let mut denom = E::one();
            for (j, &xj) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![E::zero(); poly.len() + 1];
                for (k, &c) in poly.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                poly = next;
                denom *= xi - xj;
            }
            let inv = denom.inv().expect("distinct nodes");
            poly.into_iter().map(|c| c * inv).collect()
        })
        .collect()
}

/// The coefficient of `λ_1^{target_1} ⋯ λ_m^{target_m}` in `f(λ)`, where `f`
/// returns a vector of values (one per sample point) and has degree at most
/// `bounds[i]` in `λ_i`.
pub fn extract_component<E: FiniteField>(
    f: impl Fn(&[E]) -> Result<Vec<E>>,
    bounds: &[usize],
    target: &[usize],
) -> Result<Vec<E>> {
    if bounds.len() != target.len() {
        return Err(Error::Arity { kind: "weight degree", expected: bounds.len(), got: target.len() });
    }
    if let Some(i) = (0..bounds.len()).find(|&i| target[i] > bounds[i]) {
        return Err(Error::Precondition(format!("weight degree {} exceeds the bound {}", target[i], bounds[i])));
    }
    let needed = bounds.iter().max().map_or(1, |b| b + 1);
    if needed as f64 > E::order() {
        return Err(Error::DegenerateNodes { needed, available: E::order() });
    }
    let nodes: Vec<Vec<E>> = bounds.iter().map(|&b| (0..=b as u64).map(E::from_index).collect()).collect();
    let weights: Vec<Vec<E>> =
        nodes.iter().zip(target).map(|(ns, &t)| lagrange_coeffs(ns).into_iter().map(|p| p[t]).collect()).collect();
    let mut acc: Option<Vec<E>> = None;
    let mut idx = vec![0usize; bounds.len()];
    loop {
        let lambda: Vec<E> = idx.iter().zip(&nodes).map(|(&i, ns)| ns[i]).collect();
        let w = idx.iter().zip(&weights).fold(E::one(), |a, (&i, ws)| a * ws[i]);
        let vals = f(&lambda)?;
        match &mut acc {
            None => acc = Some(vals.into_iter().map(|v| v * w).collect()),
            Some(a) => {
                if a.len() != vals.len() {
                    return Err(Error::Precondition("evaluations of different lengths".into()));
                }
                for (x, v) in a.iter_mut().zip(vals) {
                    *x += v * w;
                }
            }
        }
        // Next grid index, last coordinate fastest.
        let mut k = bounds.len();
        loop {
            if k == 0 {
                return Ok(acc.unwrap_or_default());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] <= bounds[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Matrix arguments `(a, b, c)` of a partially linearized `σ_{t,r}`.
pub type LinearizedArgs<E> = (Vec<Mat3<E>>, Vec<Mat3<E>>, Vec<Mat3<E>>);

/// Values of the partial linearization `σ_{t;r;s}(a;b;c)` of `σ_{t,r}` at
/// each argument triple: the coefficient of `λ^t μ^r ν^s` in
/// `σ_{|t|,|r|}(Σλ_i a_i, Σμ_j b_j, Σν_k c_k)`.
pub fn linearized_sigma_tr<E: FiniteField>(
    t: &[usize],
    r: &[usize],
    s: &[usize],
    args: &[LinearizedArgs<E>],
) -> Result<Vec<E>> {
    let (tt, rr, ss) = (t.iter().sum::<usize>(), r.iter().sum::<usize>(), s.iter().sum::<usize>());
    if rr != ss {
        return Err(Error::Precondition(format!("|r| = {rr} differs from |s| = {ss}")));
    }
    if let Some((a, b, c)) =
        args.iter().find(|(a, b, c)| a.len() != t.len() || b.len() != r.len() || c.len() != s.len())
    {
        return Err(Error::Arity {
            kind: "linearized σ",
            expected: t.len() + r.len() + s.len(),
            got: a.len() + b.len() + c.len(),
        });
    }
    let f = build_sigma_tr::<E>(tt, rr);
    let bounds: Vec<usize> = t.iter().map(|_| tt).chain(r.iter().map(|_| rr)).chain(s.iter().map(|_| ss)).collect();
    let target: Vec<usize> = t.iter().chain(r).chain(s).copied().collect();
    let combine = |ms: &[Mat3<E>], ws: &[E]| ms.iter().zip(ws).fold(Mat3::zero(), |acc, (m, &w)| acc.add(&m.scale(&w)));
    extract_component(
        |w| {
            let (wt, rest) = w.split_at(t.len());
            let (wr, ws) = rest.split_at(r.len());
            args.iter()
                .map(|(a, b, c)| {
                    let pt = EvaluationPoint::new(vec![combine(a, wt), combine(b, wr), combine(c, ws)]);
                    eval_sigma(&f, &pt)
                })
                .collect()
        },
        &bounds,
        &target,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Fp, Gf, One, Zero};

    type F = Fp<1_000_003>;

    #[test]
    fn scaled_vector() {
        let v: Vec<F> = (1..=5).map(F::from_i64).collect();
        let f = |l: &[F]| Ok(v.iter().map(|&x| x * l[0] * l[0]).collect());
        assert_eq!(extract_component(f, &[3], &[2]).unwrap(), v);
        assert!(extract_component(f, &[3], &[1]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn two_weights() {
        // (1 + 2λ + 3μ)^2 has λμ-coefficient 12.
        let f = |l: &[F]| {
            let s = F::one() + F::from_i64(2) * l[0] + F::from_i64(3) * l[1];
            Ok(vec![s * s])
        };
        assert_eq!(extract_component(f, &[2, 2], &[1, 1]).unwrap(), vec![F::from_i64(12)]);
    }

    #[test]
    fn too_few_nodes() {
        let f = |_: &[Fp<3>]| Ok(vec![]);
        assert!(matches!(extract_component(f, &[3], &[1]), Err(Error::DegenerateNodes { needed: 4, .. })));
        let g = |_: &[Gf<3, 20>]| Ok(vec![]);
        assert!(extract_component(g, &[3], &[1]).is_ok());
    }
}
