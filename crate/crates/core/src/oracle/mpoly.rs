//! Commutative polynomials over a field, used to evaluate invariants on
//! generic (symbolic) matrices.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::field::Field;
use crate::oracle::matrix::{EvaluationPoint, Mat3};

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(u16, u16)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<F: Field> {
    terms: HashMap<Monomial, F>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl<F: Field> MPoly<F> {
    pub fn var(i: u16) -> Self {
        Self::term(vec![(i, 1)], F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(Vec::new(), c)
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[(u16, u16)]) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Terms in a canonical order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn to_string_with(&self, name: &dyn Fn(u16) -> String) -> String {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.prefers_minus();
            let c = if neg { -c.clone() } else { c.clone() };
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let body: Vec<String> =
                m.iter().map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{e}", name(v)) }).collect();
            if body.is_empty() {
                s.push_str(&c.to_string());
            } else if c.is_one() {
                s.push_str(&body.join("*"));
            } else {
                s.push_str(&format!("{c}*{}", body.join("*")));
            }
        }
        s
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&|v| format!("v{v}")))
    }
}

impl<F: Field> Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly { terms: HashMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for MPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = Self;

    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = MPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(mono_mul(a, b), x.clone() * y.clone());
            }
        }
        out
    }
}

/// Generic matrices: `X_k` has entry `(i, j)` equal to variable `9(k-1) + 3i + j`.
pub fn generic_point<F: Field>(d: usize) -> EvaluationPoint<MPoly<F>> {
    EvaluationPoint::new((0..d).map(|k| Mat3::from_fn(|i, j| MPoly::var((9 * k + 3 * i + j) as u16))).collect())
}

/// Readable name of a generic-matrix variable, `x1_12` for entry (1,2) of `X_1`.
pub fn generic_var_name(v: u16) -> String {
    let (k, r) = (v / 9, v % 9);
    format!("x{}_{}{}", k + 1, r / 3 + 1, r % 3 + 1)
}
