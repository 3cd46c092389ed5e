//! Randomized membership modulo products of lower-degree invariants.
//!
//! For each multidegree `β` the oracle keeps a minimal set of generators `G_β`
//! (catalog entries independent modulo decomposables) and a basis of the
//! whole invariant space at `β` made of monomials in generators. The
//! decomposable part at `δ` is then spanned by `g·b` with `g ∈ G_β`,
//! `b` a basis monomial of multidegree `δ - β`. Invariants are compared
//! through their values at seeded random points of a finite field.

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::oracle::catalog::{catalog_at, Generator};
use crate::oracle::matrix::{eval_sigma, eval_symbol, EvaluationPoint};
use crate::sigma::SigmaPoly;
use crate::word::Multidegree;

const BATCH: usize = 512;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub seed: u64,
    /// Fixed sample count; adaptive when `None`.
    pub samples: Option<usize>,
    /// Required gap between the sample count and the rank of any span tested.
    pub margin: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { seed: 1, samples: None, margin: 10 }
    }
}

/// Sorted generator ids; the product of those generators.
type Recipe = Vec<u32>;

/// Row-echelon form of dense vectors; each row is zero before its pivot and
/// zero at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub(crate) struct DenseEchelon<E> {
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: FiniteField> DenseEchelon<E> {
    pub(crate) fn new() -> Self {
        DenseEchelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce_from(&self, start: usize, v: &mut [E]) {
        for (row, &p) in self.rows[start..].iter().zip(&self.pivots[start..]) {
            let c = v[p];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v[p..].iter_mut().zip(&row[p..]) {
                *x -= c * r;
            }
        }
    }

    /// Reduces `v` by the rows from `start` on and keeps it if independent.
    pub(crate) fn insert_from(&mut self, start: usize, mut v: Vec<E>) -> bool {
        self.reduce_from(start, &mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v[p..].iter_mut() {
            *x *= inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Decomposable part of one multidegree at a fixed number of points.
#[derive(Clone, Debug)]
struct Space<E> {
    n: usize,
    echelon: DenseEchelon<E>,
    /// Recipe of each echelon row, in insertion order.
    recipes: Vec<Recipe>,
}

#[derive(Clone, Debug)]
struct Level {
    gens: Vec<u32>,
    basis: Vec<Recipe>,
}

enum Built<E> {
    Done(Space<E>, Vec<u32>),
    TooFewSamples(usize),
}

/// A single membership verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub query: String,
    pub delta: String,
    pub field: String,
    pub samples: usize,
    /// Dimension of the decomposable part at the sample points.
    pub rank: usize,
    /// `true` when the target is decomposable.
    pub verdict: bool,
    /// Bound on the probability that a `true` verdict is wrong.
    pub error_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub indecomposable: bool,
    pub generators: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DmaxReport {
    pub d: usize,
    pub cap: usize,
    pub field: String,
    pub per_degree: Vec<DegreeVerdict>,
    /// Largest degree with an indecomposable generator.
    pub dmax: Option<usize>,
    pub error_bound: f64,
}

pub struct Oracle<E: FiniteField> {
    d: usize,
    cfg: OracleConfig,
    rng: ChaCha8Rng,
    points: Vec<EvaluationPoint<E>>,
    gens: Vec<Generator>,
    ids: HashMap<Generator, u32>,
    values: Vec<Vec<E>>,
    levels: HashMap<Multidegree, Level>,
    spaces: HashMap<Multidegree, Space<E>>,
    error_bound: f64,
    max_rank: usize,
}

impl<E: FiniteField> Oracle<E> {
    pub fn new(d: usize, cfg: OracleConfig) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidMultidegree("d must be at least 1".into()));
        }
        if E::characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        Ok(Oracle {
            d,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg,
            points: Vec::new(),
            gens: Vec::new(),
            ids: HashMap::new(),
            values: Vec::new(),
            levels: HashMap::new(),
            spaces: HashMap::new(),
            error_bound: 0.0,
            max_rank: 0,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn config(&self) -> &OracleConfig {
        &self.cfg
    }

    /// Sum of the failure bounds of every membership test run so far.
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    /// The first `n` sample points.
    pub fn points(&mut self, n: usize) -> &[EvaluationPoint<E>] {
        self.grow(n);
        &self.points[..n]
    }

    fn grow(&mut self, n: usize) {
        while self.points.len() < n {
            let p = EvaluationPoint::random(self.d, &mut self.rng);
            self.points.push(p);
        }
    }

    fn id(&mut self, g: &Generator) -> u32 {
        if let Some(&i) = self.ids.get(g) {
            return i;
        }
        let i = self.gens.len() as u32;
        self.gens.push(g.clone());
        self.ids.insert(g.clone(), i);
        self.values.push(Vec::new());
        i
    }

    fn fill_values(&mut self, ids: &[u32], n: usize) -> Result<()> {
        self.grow(n);
        for &i in ids {
            let have = self.values[i as usize].len();
            if have >= n {
                continue;
            }
            let g = &self.gens[i as usize];
            let new: Vec<E> =
                self.points[have..n].par_iter().map(|pt| eval_symbol(g.t, &g.word, pt)).collect::<Result<_>>()?;
            self.values[i as usize].extend(new);
        }
        Ok(())
    }

    fn recipe_vector(&self, r: &[u32], n: usize) -> Vec<E> {
        let mut v = self.values[r[0] as usize][..n].to_vec();
        for &i in &r[1..] {
            for (x, &y) in v.iter_mut().zip(&self.values[i as usize][..n]) {
                *x *= y;
            }
        }
        v
    }

    fn test_bound(&mut self, rank: usize, degree: usize) -> f64 {
        let b = (rank + 1) as f64 * degree as f64 / E::order();
        self.error_bound += b;
        b
    }

    fn check_delta(&self, delta: &Multidegree) -> Result<()> {
        if delta.d() != self.d {
            return Err(Error::InvalidMultidegree(format!("{delta} has {} entries, expected {}", delta.d(), self.d)));
        }
        if delta.is_zero() {
            return Err(Error::InvalidMultidegree("zero multidegree".into()));
        }
        Ok(())
    }

    /// Builds the levels of every nonzero multidegree strictly below `delta`.
    fn ensure_below(&mut self, delta: &Multidegree) -> Result<()> {
        let mut subs: Vec<Multidegree> = delta
            .sub_multidegrees()
            .into_iter()
            .filter(|m| !m.is_zero() && m != delta && !self.levels.contains_key(m))
            .collect();
        subs.sort_by_key(|m| m.total());
        for m in subs {
            self.build_level(&m)?;
        }
        Ok(())
    }

    fn candidates(&self, delta: &Multidegree) -> Vec<Recipe> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for low in delta.sub_multidegrees() {
            if low.is_zero() || &low == delta {
                continue;
            }
            let rest = delta.checked_sub(&low).expect("sub-multidegree");
            let (lv, rv) = (&self.levels[&low], &self.levels[&rest]);
            for &g in &lv.gens {
                for b in &rv.basis {
                    let mut r = b.clone();
                    let pos = r.partition_point(|&x| x < g);
                    r.insert(pos, g);
                    if seen.insert(r.clone()) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    fn sample_count(&self, upper: usize) -> usize {
        match self.cfg.samples {
            Some(s) => s,
            None => upper.min(self.max_rank.max(64)) + self.cfg.margin + 1,
        }
    }

    /// Decomposable part at `delta` followed by greedy selection among `extra`.
    fn build(&mut self, delta: &Multidegree, cands: &[Recipe], extra: &[u32], n: usize) -> Result<Built<E>> {
        let limit = n.saturating_sub(self.cfg.margin + 1);
        let ids: Vec<u32> = cands.iter().flatten().chain(extra).copied().collect::<HashSet<_>>().into_iter().collect();
        self.fill_values(&ids, n)?;
        let mut ech = DenseEchelon::new();
        let mut recipes = Vec::new();
        for chunk in cands.chunks(BATCH) {
            let start = ech.rank();
            let reduced: Vec<Vec<E>> = chunk
                .par_iter()
                .map(|r| {
                    let mut v = self.recipe_vector(r, n);
                    ech.reduce_from(0, &mut v);
                    v
                })
                .collect();
            for (r, v) in chunk.iter().zip(reduced) {
                if v.iter().all(|x| x.is_zero()) {
                    continue;
                }
                if ech.insert_from(start, v) {
                    recipes.push(r.clone());
                    if ech.rank() > limit {
                        return Ok(Built::TooFewSamples(ech.rank()));
                    }
                }
            }
        }
        let base = ech.rank();
        let mut chosen = Vec::new();
        for &g in extra {
            self.test_bound(ech.rank(), delta.total());
            let mut v = self.values[g as usize][..n].to_vec();
            ech.reduce_from(0, &mut v);
            if ech.insert_from(base, v) {
                chosen.push(g);
                if ech.rank() > limit {
                    return Ok(Built::TooFewSamples(ech.rank()));
                }
            }
        }
        // Drop the generator rows so the echelon is the decomposable part only.
        ech.rows.truncate(base);
        ech.pivots.truncate(base);
        Ok(Built::Done(Space { n, echelon: ech, recipes }, chosen))
    }

    fn build_adaptive(&mut self, delta: &Multidegree, extra: &[u32]) -> Result<(Space<E>, Vec<u32>)> {
        let cands = self.candidates(delta);
        let upper = cands.len() + extra.len() + 1;
        let mut n = self.sample_count(upper);
        loop {
            match self.build(delta, &cands, extra, n)? {
                Built::Done(space, chosen) => {
                    self.max_rank = self.max_rank.max(space.echelon.rank() + chosen.len());
                    return Ok((space, chosen));
                }
                Built::TooFewSamples(rank) => {
                    if let Some(given) = self.cfg.samples {
                        return Err(Error::InsufficientSamples { needed: rank + self.cfg.margin + 1, given });
                    }
                    n = (2 * n).min(upper + self.cfg.margin + 1).max(rank + self.cfg.margin + 1);
                }
            }
        }
    }

    fn build_level(&mut self, delta: &Multidegree) -> Result<()> {
        let entries = catalog_at(delta);
        let extra: Vec<u32> = entries.iter().map(|g| self.id(g)).collect();
        let (space, chosen) = self.build_adaptive(delta, &extra)?;
        let mut basis = space.recipes.clone();
        basis.extend(chosen.iter().map(|&g| vec![g]));
        self.levels.insert(delta.clone(), Level { gens: chosen, basis });
        Ok(())
    }

    fn space(&mut self, delta: &Multidegree) -> Result<&Space<E>> {
        if !self.spaces.contains_key(delta) {
            self.ensure_below(delta)?;
            let (space, _) = self.build_adaptive(delta, &[])?;
            self.spaces.insert(delta.clone(), space);
        }
        Ok(&self.spaces[delta])
    }

    /// Generators of multidegree `delta` that are independent modulo
    /// decomposables; a minimal generating set in that multidegree.
    pub fn generators(&mut self, delta: &Multidegree) -> Result<Vec<Generator>> {
        self.check_delta(delta)?;
        self.ensure_below(delta)?;
        if !self.levels.contains_key(delta) {
            self.build_level(delta)?;
        }
        Ok(self.levels[delta].gens.iter().map(|&i| self.gens[i as usize].clone()).collect())
    }

    /// Dimension of the invariant space at `delta`, as seen at the sample points.
    pub fn invariant_dimension(&mut self, delta: &Multidegree) -> Result<usize> {
        self.generators(delta)?;
        Ok(self.levels[delta].basis.len())
    }

    fn target_vector(&mut self, target: &SigmaPoly<E>, n: usize) -> Result<Vec<E>> {
        self.grow(n);
        self.points[..n].par_iter().map(|pt| eval_sigma(target, pt)).collect()
    }

    /// Whether `target`, of multidegree `delta`, is a polynomial in invariants
    /// of strictly lower degree.
    pub fn decomposable(&mut self, target: &SigmaPoly<E>, delta: &Multidegree) -> Result<Verdict> {
        self.decide(target, delta, false)
    }

    /// As [`Oracle::decomposable`], with the coefficients of a decomposition
    /// when one exists.
    pub fn decomposable_certified(&mut self, target: &SigmaPoly<E>, delta: &Multidegree) -> Result<Verdict> {
        self.decide(target, delta, true)
    }

    fn decide(&mut self, target: &SigmaPoly<E>, delta: &Multidegree, certify: bool) -> Result<Verdict> {
        self.check_delta(delta)?;
        if target.max_index() > self.d {
            return Err(Error::LetterOutOfRange { index: target.max_index(), d: self.d });
        }
        match target.multidegree(self.d) {
            Some(m) if &m == delta => {}
            None if target.is_zero() => {}
            _ => return Err(Error::NotHomogeneous),
        }
        let (n, rank) = {
            let s = self.space(delta)?;
            (s.n, s.echelon.rank())
        };
        let mut v = self.target_vector(target, n)?;
        self.spaces[delta].echelon.reduce_from(0, &mut v);
        let verdict = v.iter().all(|x| x.is_zero());
        let error_bound = self.test_bound(rank, delta.total());
        let certificate = if certify && verdict { Some(self.certificate(target, delta)?) } else { None };
        Ok(Verdict {
            query: target.to_string(),
            delta: delta.to_string(),
            field: E::descriptor().to_string(),
            samples: n,
            rank,
            verdict,
            error_bound,
            certificate,
        })
    }

    fn recipe_text(&self, r: &[u32]) -> String {
        r.iter().map(|&i| self.gens[i as usize].to_string()).collect::<Vec<_>>().join("*")
    }

    /// Solves `target = Σ c_i · product_i` over the independent products.
    fn certificate(&mut self, target: &SigmaPoly<E>, delta: &Multidegree) -> Result<Vec<(String, String)>> {
        let space = self.spaces[delta].clone();
        let (n, r) = (space.n, space.recipes.len());
        // Augment each product vector with a unit vector tracking the combination.
        let mut ech = DenseEchelon::new();
        for (k, rec) in space.recipes.iter().enumerate() {
            let mut v = self.recipe_vector(rec, n);
            v.extend((0..r).map(|i| if i == k { E::one() } else { E::zero() }));
            ech.insert_from(0, v);
        }
        let mut t = self.target_vector(target, n)?;
        t.extend(std::iter::repeat_n(E::zero(), r));
        ech.reduce_from(0, &mut t);
        if t[..n].iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal("target left the span while certifying".into()));
        }
        // t = target - Σ c_k product_k restricted to the tracking block is -c.
        Ok(space
            .recipes
            .iter()
            .zip(&t[n..])
            .filter(|(_, c)| !c.is_zero())
            .map(|(rec, c)| (self.recipe_text(rec), (-*c).to_string()))
            .collect())
    }

    /// For each degree up to `cap`, whether some generator of that degree is
    /// indecomposable.
    pub fn dmax_scan(&mut self, cap: usize) -> Result<DmaxReport> {
        if cap == 0 {
            return Err(Error::Precondition("cap must be at least 1".into()));
        }
        let mut per_degree = Vec::new();
        for k in 1..=cap {
            let mut count = 0;
            for m in Multidegree::compositions(self.d, k) {
                count += self.generators(&m)?.len();
            }
            per_degree.push(DegreeVerdict { degree: k, indecomposable: count > 0, generators: count });
        }
        let dmax = per_degree.iter().rev().find(|v| v.indecomposable).map(|v| v.degree);
        Ok(DmaxReport {
            d: self.d,
            cap,
            field: E::descriptor().to_string(),
            per_degree,
            dmax,
            error_bound: self.error_bound,
        })
    }
}
