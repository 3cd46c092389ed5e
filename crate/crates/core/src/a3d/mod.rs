//! The algebra `A(3,d)`: words in `x_k`, `x_k'` modulo the two-sided ideal
//! generated by `T1`, `T2`, `T3` and `T` on monomial arguments.
//!
//! Each multihomogeneous component is described by a set of *normal words*
//! and a normal-form map. The component at `δ` is built from the components
//! at `δ - e(y)`: every word `y·w` is first rewritten as `y·NF(w)`, so the
//! candidate basis is `{y·f : f normal at δ - e(y)}`. What remains of the
//! ideal at `δ` is spanned by `E·z` for the stored rows `E` of the component
//! `δ - e(z)` and by relation instances of degree exactly `δ` without outer
//! multipliers. Reducing those rows over the candidates gives the component.

mod cache;
mod relations;
mod rewrite;

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{CoeffField, Field};
use crate::linalg::{row_reduce, Echelon, EchelonSpan, SparseVec};
use crate::ncpoly::NcPoly;
use crate::word::{words_of, Letter, Multidegree, Word};

pub use relations::{relation_poly, RelationInstance, RelationKind};
pub use rewrite::rewrite_fast;

const BATCH: usize = 2048;
const NONE: u32 = u32::MAX;

/// Normal form of a word as (position, coefficient) pairs.
type Expansion<F> = Arc<[(u32, F)]>;

/// One multihomogeneous component of `A(3,d)`.
pub struct Component<F: Field> {
    delta: Multidegree,
    candidates: Vec<Word>,
    offsets: Vec<Option<u32>>,
    subs: Vec<Option<Arc<Component<F>>>>,
    echelon: Echelon<F>,
    normal: Vec<Word>,
    normal_pos: Vec<u32>,
    memo: DashMap<Box<[Letter]>, Expansion<F>>,
}

impl<F: Field> Component<F> {
    pub fn delta(&self) -> &Multidegree {
        &self.delta
    }

    pub fn candidates(&self) -> &[Word] {
        &self.candidates
    }

    /// Words forming a basis of the quotient, in increasing order.
    pub fn normal_words(&self) -> &[Word] {
        &self.normal
    }

    /// Relations among the candidates, in reduced echelon form.
    pub fn echelon(&self) -> &Echelon<F> {
        &self.echelon
    }

    pub fn quotient_dimension(&self) -> usize {
        self.normal.len()
    }

    pub fn ambient_dimension(&self) -> u128 {
        self.delta.word_count()
    }

    /// Normal form of a word of this multidegree, as `(position in
    /// normal_words, coefficient)` pairs.
    pub fn nf(&self, w: &[Letter]) -> Expansion<F> {
        let y = w[0];
        let off = self.offsets[y.code() as usize].expect("letter outside the multidegree");
        if w.len() == 1 {
            return Arc::from(vec![(self.normal_pos[off as usize], F::one())]);
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let sub = self.subs[y.code() as usize].as_ref().expect("lower component");
        let row: SparseVec<F> = sub.nf(&w[1..]).iter().map(|(p, c)| (off + p, c.clone())).collect();
        let reduced = if self.echelon.rank() == 0 { row } else { self.echelon.reduce_small(&row) };
        let out: Expansion<F> = reduced.into_iter().map(|(c, v)| (self.normal_pos[c as usize], v)).collect();
        self.memo.insert(w.into(), out.clone());
        out
    }

    /// Expresses a combination of words of this multidegree over the
    /// candidates, using normal forms one degree down.
    fn left_reduce<'a>(&self, terms: impl Iterator<Item = (&'a [Letter], F)>) -> SparseVec<F> {
        let mut acc: Vec<(u32, F)> = Vec::new();
        for (w, c) in terms {
            let off = self.offsets[w[0].code() as usize].expect("letter outside the multidegree");
            if w.len() == 1 {
                acc.push((off, c));
                continue;
            }
            let sub = self.subs[w[0].code() as usize].as_ref().expect("lower component");
            for (p, v) in sub.nf(&w[1..]).iter() {
                acc.push((off + p, c.clone() * v.clone()));
            }
        }
        merge(acc)
    }
}

fn merge<F: Field>(mut acc: Vec<(u32, F)>) -> SparseVec<F> {
    acc.sort_by_key(|e| e.0);
    let mut out: SparseVec<F> = Vec::with_capacity(acc.len());
    for (c, v) in acc {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Dimensions of one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub delta: Multidegree,
    pub ambient: u128,
    pub rank: u128,
    pub quotient: usize,
    pub field: CoeffField,
}

enum RowSource {
    Extra { code: u8, row: u32 },
    Fresh(RelationKind, Vec<Word>),
}

/// Components of `A(3,d)` over `F`, computed on demand and kept for reuse.
pub struct A3d<F: Field> {
    d: usize,
    cache_dir: Option<PathBuf>,
    components: Mutex<HashMap<Multidegree, Arc<Component<F>>>>,
}

impl<F: Field> A3d<F> {
    pub fn new(d: usize) -> Self {
        assert!(d >= 1, "d must be positive");
        A3d { d, cache_dir: None, components: Mutex::new(HashMap::new()) }
    }

    /// Persists components under `dir` and reuses them across runs.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    fn lookup(&self, delta: &Multidegree) -> Option<Arc<Component<F>>> {
        self.components.lock().unwrap().get(delta).cloned()
    }

    fn check_delta(&self, delta: &Multidegree) -> Result<()> {
        if delta.d() != self.d {
            return Err(Error::InvalidMultidegree(format!("{delta} has {} entries, expected {}", delta.d(), self.d)));
        }
        Ok(())
    }

    /// The component at `delta`, building every lower component it depends on.
    pub fn component(&self, delta: &Multidegree) -> Result<Arc<Component<F>>> {
        self.check_delta(delta)?;
        if delta.is_zero() {
            return Err(Error::InvalidMultidegree("the zero multidegree has no component".into()));
        }
        if let Some(c) = self.lookup(delta) {
            return Ok(c);
        }
        let mut needed = delta.sub_multidegrees();
        needed.retain(|m| !m.is_zero());
        needed.sort_by_key(Multidegree::total);
        for m in needed {
            if self.lookup(&m).is_none() {
                let c = Arc::new(self.load_or_build(&m)?);
                self.components.lock().unwrap().entry(m).or_insert(c);
            }
        }
        Ok(self.lookup(delta).expect("just built"))
    }

    fn shell(&self, delta: &Multidegree) -> Component<F> {
        let nletters = 2 * self.d;
        let mut candidates = Vec::new();
        let mut offsets = vec![None; nletters];
        let mut subs = vec![None; nletters];
        for code in 0..nletters as u8 {
            let y = Letter::from_code(code);
            let Some(rest) = delta.minus_unit(y.index()) else { continue };
            offsets[code as usize] = Some(candidates.len() as u32);
            if rest.is_zero() {
                candidates.push(Word::letter(y));
                continue;
            }
            let sub = self.lookup(&rest).expect("lower component");
            let yw = Word::letter(y);
            candidates.extend(sub.normal.iter().map(|f| yw.concat(f)));
            subs[code as usize] = Some(sub);
        }
        let n = candidates.len();
        Component {
            delta: delta.clone(),
            candidates,
            offsets,
            subs,
            echelon: Echelon::new(n),
            normal: Vec::new(),
            normal_pos: Vec::new(),
            memo: DashMap::new(),
        }
    }

    fn load_or_build(&self, delta: &Multidegree) -> Result<Component<F>> {
        let mut comp = self.shell(delta);
        let cached = match &self.cache_dir {
            Some(dir) => cache::load::<F>(&cache::path(dir, self.d, delta, &F::descriptor()), self.d, &comp)?,
            None => None,
        };
        let from_cache = cached.is_some();
        comp.echelon = match cached {
            Some(e) => e,
            None => self.eliminate(&comp),
        };
        let mut normal_pos = vec![NONE; comp.candidates.len()];
        for (i, w) in comp.candidates.iter().enumerate() {
            if !comp.echelon.is_pivot(i as u32) {
                normal_pos[i] = comp.normal.len() as u32;
                comp.normal.push(w.clone());
            }
        }
        comp.normal_pos = normal_pos;
        if let (Some(dir), false) = (&self.cache_dir, from_cache) {
            cache::save(&cache::path(dir, self.d, delta, &F::descriptor()), self.d, &comp)?;
        }
        Ok(comp)
    }

    fn eliminate(&self, comp: &Component<F>) -> Echelon<F> {
        let mut ech = Echelon::new(comp.candidates.len());
        if comp.delta.total() < 3 || comp.candidates.is_empty() {
            return ech;
        }
        let mut sources: Vec<RowSource> = Vec::new();
        for (code, sub) in comp.subs.iter().enumerate() {
            if let Some(sub) = sub {
                sources.extend((0..sub.echelon.rank() as u32).map(|row| RowSource::Extra { code: code as u8, row }));
            }
        }
        sources.extend(fresh_instances(&comp.delta).into_iter().map(|(k, a)| RowSource::Fresh(k, a)));
        let make_row = |src: &RowSource| -> SparseVec<F> {
            match src {
                RowSource::Extra { code, row } => {
                    let sub = comp.subs[*code as usize].as_ref().unwrap();
                    let z = Letter::from_code(*code);
                    let words: Vec<(Vec<Letter>, F)> = sub.echelon.rows()[*row as usize]
                        .iter()
                        .map(|(c, v)| {
                            let mut w = sub.candidates[*c as usize].letters().to_vec();
                            w.push(z);
                            (w, v.clone())
                        })
                        .collect();
                    comp.left_reduce(words.iter().map(|(w, v)| (&w[..], v.clone())))
                }
                RowSource::Fresh(kind, args) => {
                    let p: NcPoly<F> = relations::expand_unchecked(*kind, args);
                    comp.left_reduce(p.terms().map(|(w, c)| (w.letters(), c.clone())))
                }
            }
        };
        let mut scratch = ech.scratch();
        'outer: for batch in sources.chunks(BATCH) {
            let reduced: Vec<SparseVec<F>> = batch
                .par_iter()
                .map_init(|| ech.scratch(), |s, src| ech.reduce_with(&make_row(src), s))
                .filter(|r| !r.is_empty())
                .collect();
            for r in reduced {
                ech.insert_with(&r, &mut scratch);
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
        ech.reduce_fully();
        ech
    }

    pub fn quotient_dimension(&self, delta: &Multidegree) -> Result<usize> {
        self.check_delta(delta)?;
        if delta.is_zero() {
            return Ok(0);
        }
        Ok(self.component(delta)?.quotient_dimension())
    }

    pub fn report(&self, delta: &Multidegree) -> Result<ComponentReport> {
        let quotient = self.quotient_dimension(delta)?;
        let ambient = delta.word_count();
        Ok(ComponentReport {
            delta: delta.clone(),
            ambient,
            rank: ambient - quotient as u128,
            quotient,
            field: F::descriptor(),
        })
    }

    /// `f` rewritten in normal words; zero exactly when `f` is zero in `A(3,d)`.
    pub fn normal_form(&self, f: &NcPoly<F>) -> Result<NcPoly<F>> {
        f.check_indices(self.d)?;
        let mut out = NcPoly::zero();
        for (delta, part) in f.components(self.d) {
            if delta.is_zero() {
                return Err(Error::EmptyWord);
            }
            let comp = self.component(&delta)?;
            for (w, c) in part.terms() {
                for (p, v) in comp.nf(w.letters()).iter() {
                    out.add_term(comp.normal[*p as usize].clone(), c.clone() * v.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, f: &NcPoly<F>) -> Result<bool> {
        f.check_indices(self.d)?;
        let g = rewrite_fast(f);
        if g.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(&g)?.is_zero())
    }

    /// The ideal component at `delta` as an echelon span over all words of
    /// that multidegree. Materializes the ambient space; small `delta` only.
    pub fn ideal_component_basis(&self, delta: &Multidegree) -> Result<EchelonSpan<F>> {
        self.check_delta(delta)?;
        let words = words_of(delta);
        if delta.total() < 3 {
            return Ok(EchelonSpan::empty(words));
        }
        let comp = self.component(delta)?;
        let rows: Vec<NcPoly<F>> = words
            .iter()
            .filter_map(|w| {
                let mut r = NcPoly::word(w.clone());
                for (p, v) in comp.nf(w.letters()).iter() {
                    r.add_term(comp.normal[*p as usize].clone(), -v.clone());
                }
                (!r.is_zero()).then_some(r)
            })
            .collect();
        row_reduce(&rows, words)
    }

    /// Least `s` such that every product of `s` letters vanishes.
    pub fn nilpotency_degree(&self, cap: usize) -> Result<usize> {
        if cap == 0 {
            return Err(Error::Precondition("cap must be at least 1".into()));
        }
        let vanishes = |s: usize| -> Result<bool> {
            for delta in Multidegree::compositions(self.d, s) {
                if self.quotient_dimension(&delta)? != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        for s in 1..=cap {
            if vanishes(s)? {
                for t in s + 1..=cap {
                    if !vanishes(t)? {
                        return Err(Error::Internal(format!("degree {s} vanishes but degree {t} does not")));
                    }
                }
                return Ok(s);
            }
        }
        Err(Error::CapExceeded { cap })
    }
}

/// Relation instances of multidegree exactly `delta`, one per orbit of the
/// argument symmetries that leave the instance unchanged up to sign.
fn fresh_instances(delta: &Multidegree) -> Vec<(RelationKind, Vec<Word>)> {
    let parts: Vec<Multidegree> = delta.sub_multidegrees().into_iter().filter(|m| !m.is_zero() && m != delta).collect();
    let mut words: HashMap<Multidegree, Vec<Word>> = HashMap::new();
    for m in parts.iter().chain(std::iter::once(delta)) {
        words.insert(m.clone(), words_of(m));
    }
    let mut out = Vec::new();
    if let Some(a) = delta.divide(3) {
        out.extend(words[&a].iter().map(|w| (RelationKind::T1, vec![w.clone()])));
    }
    for alpha in &parts {
        let Some(beta) = delta.checked_sub(&alpha.scale(2)) else { continue };
        if beta.is_zero() {
            continue;
        }
        for a in &words[alpha] {
            for b in &words[&beta] {
                if a != b {
                    out.push((RelationKind::T2, vec![a.clone(), b.clone()]));
                }
            }
        }
    }
    let mut triples = Vec::new();
    for alpha in &parts {
        for beta in &parts {
            if let Some(gamma) = delta.checked_sub(&(alpha + beta)) {
                if !gamma.is_zero() {
                    triples.push((alpha, beta, gamma));
                }
            }
        }
    }
    for (alpha, beta, gamma) in &triples {
        for a in &words[*alpha] {
            for b in words[*beta].iter().filter(|b| *b >= a) {
                for c in words[gamma].iter().filter(|c| *c >= b) {
                    out.push((RelationKind::T3, vec![a.clone(), b.clone(), c.clone()]));
                }
            }
        }
    }
    let below_involute = |w: &&Word| **w < w.involute();
    for (alpha, beta, gamma) in &triples {
        for a in &words[*alpha] {
            for b in words[*beta].iter().filter(below_involute) {
                for c in words[gamma].iter().filter(below_involute) {
                    out.push((RelationKind::T, vec![a.clone(), b.clone(), c.clone()]));
                }
            }
        }
    }
    out
}

/// The substitution `x_i -> 1`, `x_i' -> 1`.
pub fn pi_substitute<F: Field>(f: &NcPoly<F>, i: usize) -> Result<NcPoly<F>> {
    if F::characteristic() != 3 {
        return Err(Error::Precondition(format!("deleting x{i} needs characteristic 3, have {}", F::descriptor())));
    }
    let mut out = NcPoly::zero();
    for (w, c) in f.terms() {
        let k = w.degree_in(i);
        if k >= 3 {
            return Err(Error::Precondition(format!("term {w} has degree {k} in x{i}")));
        }
        let v = w.delete_index(i);
        if v.is_unit() {
            return Err(Error::Precondition(format!("term {w} has no letters besides x{i}")));
        }
        out.add_term(v, c.clone());
    }
    Ok(out)
}

/// `x1^2 bar(x1)^2 x1 bar(x1) x2^2 ... xd^2`.
pub fn witness_ad<F: Field>(d: usize) -> NcPoly<F> {
    let x1 = NcPoly::letter(Letter::plain(1));
    let b = x1.bar();
    let mut f = x1.pow(2).product(&b.pow(2)).product(&x1).product(&b);
    for i in 2..=d {
        f = f.product(&NcPoly::word(Word::letter(Letter::plain(i)).pow(2)));
    }
    f
}
