//! Sparse exact row reduction.
//!
//! [`Echelon`] is the workhorse: an incrementally built echelon form over
//! integer-indexed columns, pivoting on the least column of each row.
//! [`EchelonSpan`] wraps it with an explicit word basis and optional
//! certificates expressing reduced rows through the rows supplied.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ncpoly::NcPoly;
use crate::word::Word;

/// Sorted `(column, value)` pairs with nonzero values.
pub type SparseVec<F> = Vec<(u32, F)>;

/// Reusable dense accumulator for reductions.
pub struct Scratch<F: Field> {
    acc: Vec<F>,
    touched: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl<F: Field> Scratch<F> {
    pub fn new(ncols: usize) -> Self {
        Scratch { acc: vec![F::zero(); ncols], touched: vec![false; ncols], heap: BinaryHeap::new() }
    }

    fn add(&mut self, c: u32, v: F) {
        let i = c as usize;
        self.acc[i] += v;
        if !self.touched[i] {
            self.touched[i] = true;
            self.heap.push(Reverse(c));
        }
    }

    fn pop(&mut self) -> Option<(u32, F)> {
        let Reverse(c) = self.heap.pop()?;
        let i = c as usize;
        self.touched[i] = false;
        Some((c, std::mem::replace(&mut self.acc[i], F::zero())))
    }
}

/// Echelon form over columns `0..ncols`. Each stored row has leading
/// coefficient one at its pivot; rows are mutually reduced after
/// [`Echelon::reduce_fully`].
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivot_of: Vec<Option<u32>>,
    combos: Option<Vec<BTreeMap<u32, F>>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_of: vec![None; ncols], combos: None }
    }

    /// Also records, for every stored row, its expression in the inserted rows.
    pub fn with_certificates(ncols: usize) -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::new(ncols) }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_of[col as usize].is_some()
    }

    /// The stored row whose pivot is `col`.
    pub fn pivot_row(&self, col: u32) -> Option<&SparseVec<F>> {
        self.pivot_of[col as usize].map(|r| &self.rows[r as usize])
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn scratch(&self) -> Scratch<F> {
        Scratch::new(self.ncols)
    }

    /// Residual of `row` after subtracting stored rows until no entry sits on a pivot.
    pub fn reduce_with(&self, row: &[(u32, F)], scratch: &mut Scratch<F>) -> SparseVec<F> {
        self.reduce_inner(row, scratch, None)
    }

    pub fn reduce(&self, row: &[(u32, F)]) -> SparseVec<F> {
        let mut s = self.scratch();
        self.reduce_with(row, &mut s)
    }

    /// Like [`Echelon::reduce`] but with a sparse accumulator; cheaper for
    /// short rows against a wide echelon form.
    pub fn reduce_small(&self, row: &[(u32, F)]) -> SparseVec<F> {
        let mut acc: BTreeMap<u32, F> = row.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((c, v)) = acc.pop_first() {
            if v.is_zero() {
                continue;
            }
            match self.pivot_of[c as usize] {
                Some(r) => {
                    for (c2, v2) in &self.rows[r as usize][1..] {
                        let e = acc.entry(*c2).or_insert_with(F::zero);
                        *e -= v.clone() * v2.clone();
                    }
                }
                None => out.push((c, v)),
            }
        }
        out
    }

    fn reduce_inner(
        &self,
        row: &[(u32, F)],
        s: &mut Scratch<F>,
        mut combo: Option<&mut BTreeMap<u32, F>>,
    ) -> SparseVec<F> {
        for (c, v) in row {
            s.add(*c, v.clone());
        }
        let mut out = Vec::new();
        while let Some((c, v)) = s.pop() {
            if v.is_zero() {
                continue;
            }
            match self.pivot_of[c as usize] {
                Some(r) => {
                    for (c2, v2) in &self.rows[r as usize][1..] {
                        s.add(*c2, -(v.clone() * v2.clone()));
                    }
                    if let (Some(acc), Some(combos)) = (combo.as_deref_mut(), &self.combos) {
                        for (j, x) in &combos[r as usize] {
                            add_to(acc, *j, -(v.clone() * x.clone()));
                        }
                    }
                }
                None => out.push((c, v)),
            }
        }
        out
    }

    /// Adds a row; returns its new pivot, or `None` if it was dependent.
    pub fn insert(&mut self, row: &[(u32, F)]) -> Option<u32> {
        let mut s = self.scratch();
        self.insert_with(row, &mut s)
    }

    pub fn insert_with(&mut self, row: &[(u32, F)], s: &mut Scratch<F>) -> Option<u32> {
        let id = self.rows.len() as u32;
        let r = self.reduce_inner(row, s, None);
        self.push_reduced(r, None).inspect(|_| debug_assert!(self.rows.len() as u32 == id + 1))
    }

    /// Adds row number `tag` of some external list, tracking certificates.
    pub fn insert_tagged(&mut self, row: &[(u32, F)], tag: u32) -> Option<u32> {
        let mut s = self.scratch();
        let mut combo = BTreeMap::new();
        combo.insert(tag, F::one());
        let r = self.reduce_inner(row, &mut s, Some(&mut combo));
        self.push_reduced(r, Some(combo))
    }

    /// Stores an already reduced row.
    pub fn push_reduced(&mut self, mut r: SparseVec<F>, combo: Option<BTreeMap<u32, F>>) -> Option<u32> {
        if r.is_empty() {
            return None;
        }
        let lead = r[0].1.inv().expect("nonzero lead");
        if !lead.is_one() {
            for (_, v) in r.iter_mut() {
                *v *= lead.clone();
            }
        }
        let pivot = r[0].0;
        self.pivot_of[pivot as usize] = Some(self.rows.len() as u32);
        self.rows.push(r);
        if let Some(combos) = self.combos.as_mut() {
            let mut c = combo.unwrap_or_default();
            for v in c.values_mut() {
                *v *= lead.clone();
            }
            combos.push(c);
        }
        Some(pivot)
    }

    /// Back-substitutes so that no stored row has an entry on another pivot,
    /// then orders rows by pivot.
    pub fn reduce_fully(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| Reverse(self.rows[r][0].0));
        let mut s = self.scratch();
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let (head, tail) = row.split_first().expect("nonempty row");
            let mut combo = self.combos.as_ref().map(|c| c[r].clone());
            // Rows with larger pivots are final; the reduction only touches those.
            let reduced = self.reduce_inner(tail, &mut s, combo.as_mut());
            let mut new_row = Vec::with_capacity(reduced.len() + 1);
            new_row.push(head.clone());
            new_row.extend(reduced);
            self.rows[r] = new_row;
            if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
                cs[r] = c;
            }
        }
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&r| self.rows[r][0].0);
        let rows: Vec<_> = idx.iter().map(|&r| std::mem::take(&mut self.rows[r])).collect();
        self.rows = rows;
        if let Some(cs) = self.combos.as_mut() {
            let new: Vec<_> = idx.iter().map(|&r| std::mem::take(&mut cs[r])).collect();
            *cs = new;
        }
        for p in self.pivot_of.iter_mut() {
            *p = None;
        }
        for (i, r) in self.rows.iter().enumerate() {
            self.pivot_of[r[0].0 as usize] = Some(i as u32);
        }
    }

    /// Residual and, with certificates enabled, the combination of inserted
    /// rows that was subtracted.
    pub fn reduce_certified(&self, row: &[(u32, F)]) -> (SparseVec<F>, BTreeMap<u32, F>) {
        let mut s = self.scratch();
        let mut combo = BTreeMap::new();
        let r = self.reduce_inner(row, &mut s, Some(&mut combo));
        for v in combo.values_mut() {
            *v = -v.clone();
        }
        (r, combo)
    }
}

fn add_to<F: Field>(m: &mut BTreeMap<u32, F>, k: u32, v: F) {
    let e = m.entry(k).or_insert_with(F::zero);
    *e += v;
    if e.is_zero() {
        m.remove(&k);
    }
}

/// Reduced echelon span of polynomials over an explicit ordered word basis.
#[derive(Clone, Debug)]
pub struct EchelonSpan<F: Field> {
    basis: Vec<Word>,
    index: HashMap<Word, u32>,
    echelon: Echelon<F>,
    inputs: Vec<NcPoly<F>>,
}

/// Outcome of [`EchelonSpan::membership`].
#[derive(Clone, Debug)]
pub struct Membership<F: Field> {
    pub member: bool,
    /// Coefficients on the rows originally handed to [`row_reduce`].
    pub certificate: Option<Vec<(usize, F)>>,
}

impl<F: Field> EchelonSpan<F> {
    pub fn empty(basis: Vec<Word>) -> Self {
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let n = basis.len();
        EchelonSpan { basis, index, echelon: Echelon::with_certificates(n), inputs: Vec::new() }
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &Echelon<F> {
        &self.echelon
    }

    /// Pivot words in increasing order.
    pub fn pivot_words(&self) -> Vec<Word> {
        self.echelon.rows().iter().map(|r| self.basis[r[0].0 as usize].clone()).collect()
    }

    /// Rows as polynomials.
    pub fn rows(&self) -> Vec<NcPoly<F>> {
        self.echelon
            .rows()
            .iter()
            .map(|r| NcPoly::from_terms(r.iter().map(|(c, v)| (self.basis[*c as usize].clone(), v.clone()))))
            .collect()
    }

    pub fn to_sparse(&self, f: &NcPoly<F>) -> Result<SparseVec<F>> {
        let mut v: SparseVec<F> = f
            .terms()
            .map(|(w, c)| self.index.get(w).map(|&i| (i, c.clone())).ok_or_else(|| Error::OutOfBasis(w.to_string())))
            .collect::<Result<_>>()?;
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn membership(&self, f: &NcPoly<F>, want_certificate: bool) -> Result<Membership<F>> {
        let v = self.to_sparse(f)?;
        let (residual, combo) = self.echelon.reduce_certified(&v);
        let member = residual.is_empty();
        let certificate =
            (member && want_certificate).then(|| combo.into_iter().map(|(k, c)| (k as usize, c)).collect());
        Ok(Membership { member, certificate })
    }

    pub fn contains(&self, f: &NcPoly<F>) -> Result<bool> {
        Ok(self.echelon.reduce(&self.to_sparse(f)?).is_empty())
    }

    /// The rows supplied to [`row_reduce`], in order.
    pub fn inputs(&self) -> &[NcPoly<F>] {
        &self.inputs
    }
}

/// Reduced row echelon form of `rows` over `basis`.
pub fn row_reduce<F: Field>(rows: &[NcPoly<F>], basis: Vec<Word>) -> Result<EchelonSpan<F>> {
    let mut span = EchelonSpan::empty(basis);
    for (i, r) in rows.iter().enumerate() {
        let v = span.to_sparse(r)?;
        span.echelon.insert_tagged(&v, i as u32);
    }
    span.echelon.reduce_fully();
    span.inputs = rows.to_vec();
    Ok(span)
}

/// Rank by plain dense Gaussian elimination; an independent check on [`Echelon`].
pub fn dense_rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv().unwrap();
        for x in m[rank].iter_mut() {
            *x *= inv.clone();
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[rank][col..].to_vec();
                for (x, y) in m[r][col..].iter_mut().zip(pivot) {
                    *x -= f.clone() * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Fp, One, Zero};
    use crate::word::{words_of, Multidegree};
    use num_rational::BigRational;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type F3 = Fp<3>;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn random_sparse(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Vec<Vec<F3>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { F3::random(rng) } else { F3::zero() }).collect())
            .collect()
    }

    fn to_sparse(row: &[F3]) -> SparseVec<F3> {
        row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i as u32, *v)).collect()
    }

    #[test]
    fn small_ranks() {
        let basis = vec![w("x1"), w("x2")];
        let p = |s: &[&str]| NcPoly::<F3>::from_terms(s.iter().map(|t| (w(t), F3::one())));
        assert_eq!(row_reduce(&[p(&["x1", "x2"]), p(&["x2"])], basis.clone()).unwrap().rank(), 2);
        assert_eq!(row_reduce(&[p(&["x1", "x2"]), p(&["x1", "x2"])], basis.clone()).unwrap().rank(), 1);
        assert!(matches!(row_reduce(&[p(&["x3"])], basis).unwrap_err(), Error::OutOfBasis(_)));
    }

    #[test]
    fn sparse_rank_matches_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let m = random_sparse(&mut rng, 200, 500, 0.01);
        let mut e = Echelon::new(500);
        for r in &m {
            e.insert(&to_sparse(r));
        }
        assert_eq!(e.rank(), dense_rank(m.clone()));
        // Low-rank case: rows drawn from a 40-dimensional space.
        let gens = random_sparse(&mut rng, 40, 120, 0.05);
        let combos: Vec<Vec<F3>> = (0..150)
            .map(|_| {
                let mut row = vec![F3::zero(); 120];
                for g in &gens {
                    let c = F3::random(&mut rng);
                    for (x, y) in row.iter_mut().zip(g) {
                        *x += c * *y;
                    }
                }
                row
            })
            .collect();
        let mut e = Echelon::new(120);
        for r in &combos {
            e.insert(&to_sparse(r));
        }
        assert_eq!(e.rank(), dense_rank(combos));
    }

    #[test]
    fn rank_is_invariant_under_row_permutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut m = random_sparse(&mut rng, 60, 80, 0.03);
        let base = dense_rank(m.clone());
        for _ in 0..20 {
            m.shuffle(&mut rng);
            let mut e = Echelon::new(80);
            for r in &m {
                e.insert(&to_sparse(r));
            }
            assert_eq!(e.rank(), base);
        }
    }

    #[test]
    fn reduced_form_is_unique() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut m = random_sparse(&mut rng, 40, 50, 0.08);
        let build = |m: &[Vec<F3>]| {
            let mut e = Echelon::new(50);
            for r in m {
                e.insert(&to_sparse(r));
            }
            e.reduce_fully();
            e.rows().to_vec()
        };
        let first = build(&m);
        for r in &first {
            for (c, _) in &r[1..] {
                assert!(first.iter().all(|o| o[0].0 != *c), "entry on a pivot column");
            }
        }
        m.shuffle(&mut rng);
        assert_eq!(build(&m), first);
    }

    #[test]
    fn membership_and_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let basis = words_of(&Multidegree::new(vec![2, 1]));
        let random_poly = |rng: &mut ChaCha8Rng| {
            NcPoly::<F3>::from_terms((0..4).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), F3::random(rng))))
        };
        let x1 = NcPoly::<F3>::word(w("x1"));
        let span = row_reduce(std::slice::from_ref(&x1), vec![w("x1"), w("x2")]).unwrap();
        assert!(span.contains(&x1).unwrap());
        let x2only = row_reduce(&[NcPoly::<F3>::word(w("x2"))], vec![w("x1"), w("x2")]).unwrap();
        assert!(!x2only.contains(&x1).unwrap());

        for _ in 0..100 {
            let rows: Vec<_> = (0..6).map(|_| random_poly(&mut rng)).collect();
            let span = row_reduce(&rows, basis.clone()).unwrap();
            let mut f = NcPoly::zero();
            for r in &rows {
                f = &f + &r.scale(&F3::random(&mut rng));
            }
            let m = span.membership(&f, true).unwrap();
            assert!(m.member);
            let mut recon = NcPoly::zero();
            for (i, c) in m.certificate.unwrap() {
                recon = &recon + &rows[i].scale(&c);
            }
            assert_eq!(recon, f);
        }
        let bad = NcPoly::<F3>::word(w("x3"));
        assert!(span.membership(&bad, false).is_err());
    }

    #[test]
    fn rationals_work_too() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let rows =
            vec![vec![q(1, 2), q(1, 3), q(0, 1)], vec![q(1, 1), q(2, 3), q(0, 1)], vec![q(0, 1), q(0, 1), q(5, 7)]];
        assert_eq!(dense_rank(rows.clone()), 2);
        let mut e = Echelon::new(3);
        for r in &rows {
            let s: SparseVec<BigRational> = r
                .iter()
                .enumerate()
                .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                .map(|(i, v)| (i as u32, v.clone()))
                .collect();
            e.insert(&s);
        }
        assert_eq!(e.rank(), 2);
    }
}
