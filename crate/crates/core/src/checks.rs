//! Property suites over words, linear algebra, `A(3,d)` and σ-expressions,
//! run as data rather than as unit tests so the CLI can report on them.

use std::collections::HashSet;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::a3d::{pi_substitute, relation_poly, rewrite_fast, A3d, RelationInstance, RelationKind};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::linalg::{dense_rank, row_reduce};
use crate::ncpoly::NcPoly;
use crate::sigma::{build_sigma_tr, sigma_tr_data, sigma_tr_follows, tr, SigmaMonomial, SigmaPoly};
use crate::word::{enumerate_words, words_of, EnumOptions, Letter, Multidegree, Word};
use crate::{FLarge, Gf3, F11, F13, F3, F5, F7};

pub const SUITES: [&str; 4] = ["word", "linalg", "a3d", "sigma"];

/// Outcome of one property over all its cases.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub suite: &'static str,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The first few counterexamples.
    pub examples: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

struct Tally {
    suite: &'static str,
    name: &'static str,
    cases: usize,
    failures: usize,
    examples: Vec<String>,
}

impl Tally {
    fn new(suite: &'static str, name: &'static str) -> Self {
        Tally { suite, name, cases: 0, failures: 0, examples: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 5 {
                self.examples.push(what());
            }
        }
    }

    /// Records a batch of outcomes, `Some(message)` for a failure.
    fn extend(&mut self, outcomes: Vec<Option<String>>) {
        for o in outcomes {
            let failed = o.is_some();
            self.check(!failed, || o.unwrap_or_default());
        }
    }

    fn done(self) -> CheckReport {
        CheckReport {
            suite: self.suite,
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            examples: self.examples,
        }
    }
}

/// Runs the named suite, or all of them for `"all"`.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<CheckReport>> {
    match name {
        "word" => Ok(word_suite(seed)),
        "linalg" => Ok(linalg_suite(seed)),
        "a3d" => a3d_suite(seed),
        "sigma" => Ok(sigma_suite(seed)),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, seed)?);
            }
            Ok(out)
        }
        _ => Err(Error::Precondition(format!("unknown suite `{name}`; expected one of {}, all", SUITES.join(", ")))),
    }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

fn random_word(rng: &mut impl Rng, d: usize, len: usize) -> Word {
    let codes: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2 * d as u8)).collect();
    Word::from_codes(&codes)
}

fn random_word_in(rng: &mut impl Rng, d: usize, lens: std::ops::RangeInclusive<usize>) -> Word {
    let len = rng.gen_range(lens);
    random_word(rng, d, len)
}

/// Every word over `d` indices of length `1..=maxlen`.
fn all_words(d: usize, maxlen: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..maxlen {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..2 * d as u8).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().map(|c| Word::from_codes(c)));
    }
    out
}

fn random_poly<F: Field>(rng: &mut impl Rng, d: usize, maxlen: usize, terms: usize) -> NcPoly<F> {
    let mut p = NcPoly::zero();
    for _ in 0..terms {
        let len = rng.gen_range(1..=maxlen);
        p.add_term(random_word(rng, d, len), F::from_i64(rng.gen_range(-3..=3)));
    }
    p
}

// ---------------------------------------------------------------------------
// Words

fn word_suite(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();

    let mut t = Tally::new("word", "involution is an anti-automorphism");
    let short = all_words(2, 6);
    for w in &short {
        t.check(&w.involute().involute() == w, || format!("{w}"));
    }
    for u in short.iter().filter(|u| u.len() <= 5) {
        for v in short.iter().filter(|v| u.len() + v.len() <= 6) {
            t.check(u.concat(v).involute() == v.involute().concat(&u.involute()), || format!("{u} · {v}"));
        }
    }
    out.push(t.done());

    let mut t = Tally::new("word", "class_rep is constant on classes");
    let outcomes: Vec<Option<String>> = all_words(2, 8)
        .par_iter()
        .map(|w| {
            let r = w.class_rep();
            let ok = r.class_rep() == r
                && w.involute().class_rep() == r
                && (1..w.len()).all(|k| w.rotate(k).class_rep() == r);
            (!ok).then(|| format!("{w}"))
        })
        .collect();
    t.extend(outcomes);
    out.push(t.done());

    let mut t = Tally::new("word", "multidegree is additive");
    let mut rng = rng_for(seed, 1);
    for _ in 0..1000 {
        let (a, b) = (rng.gen_range(1..8), rng.gen_range(1..8));
        let (u, v) = (random_word(&mut rng, 3, a), random_word(&mut rng, 3, b));
        let ok = u.concat(&v).multidegree(3) == &u.multidegree(3) + &v.multidegree(3)
            && u.involute().multidegree(3) == u.multidegree(3);
        t.check(ok, || format!("{u} · {v}"));
    }
    out.push(t.done());

    let mut t = Tally::new("word", "class enumeration partitions the words");
    for delta in ["3", "4", "5", "6", "7", "2,2", "3,2", "3,3", "2,1,1", "2,2,1", "1,1,1,1"] {
        let delta: Multidegree = delta.parse().expect("multidegree literal");
        let all = words_of(&delta);
        let reps: Vec<Word> = enumerate_words(&delta, EnumOptions::classes()).collect();
        let orbit = |w: &Word| {
            let mut s = HashSet::new();
            for v in [w.clone(), w.involute()] {
                for k in 0..v.len() {
                    s.insert(v.rotate(k));
                }
            }
            s.len()
        };
        let distinct: HashSet<Word> = all.iter().map(Word::class_rep).collect();
        let total: usize = reps.iter().map(orbit).sum();
        t.check(total == all.len() && distinct.len() == reps.len(), || format!("{delta}: {total} vs {}", all.len()));
    }
    out.push(t.done());
    out
}

// ---------------------------------------------------------------------------
// Linear algebra

fn field_axioms<F: Field>(t: &mut Tally, mut sample: impl FnMut() -> F, n: usize) {
    for _ in 0..n {
        let (a, b, c) = (sample(), sample(), sample());
        let mut ok = (a.clone() * b.clone()) * c.clone() == a.clone() * (b.clone() * c.clone())
            && (a.clone() + b.clone()) + c.clone() == a.clone() + (b.clone() + c.clone())
            && a.clone() * (b.clone() + c.clone()) == a.clone() * b.clone() + a.clone() * c.clone()
            && a.clone() - a.clone() == F::zero();
        if !a.is_zero() {
            ok &= a.clone() * a.inv().expect("nonzero is invertible") == F::one();
        }
        t.check(ok, || format!("{} over {}: {a}, {b}, {c}", "axioms", F::descriptor()));
    }
}

fn finite_axioms<F: FiniteField>(t: &mut Tally, rng: &mut ChaCha8Rng) {
    field_axioms::<F>(t, || F::random(rng), 10_000);
}

fn linalg_suite(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = rng_for(seed, 2);

    let mut t = Tally::new("linalg", "field axioms");
    finite_axioms::<F3>(&mut t, &mut rng);
    finite_axioms::<F5>(&mut t, &mut rng);
    finite_axioms::<F7>(&mut t, &mut rng);
    finite_axioms::<F11>(&mut t, &mut rng);
    finite_axioms::<F13>(&mut t, &mut rng);
    finite_axioms::<FLarge>(&mut t, &mut rng);
    finite_axioms::<Gf3>(&mut t, &mut rng);
    let mut r2 = rng_for(seed, 3);
    field_axioms::<BigRational>(
        &mut t,
        || BigRational::new(r2.gen_range(-50i64..50).into(), r2.gen_range(1i64..20).into()),
        10_000,
    );
    out.push(t.done());

    let mut t = Tally::new("linalg", "product, bar and transpose identities");
    type P = NcPoly<F7>;
    for _ in 0..200 {
        let f: P = random_poly(&mut rng, 2, 4, 5);
        let g: P = random_poly(&mut rng, 2, 4, 5);
        let h: P = random_poly(&mut rng, 2, 3, 3);
        let (a, b) = (F7::random(&mut rng), F7::random(&mut rng));
        let ok = (&(&f * &g) * &h) == (&f * &(&g * &h))
            && (&f.scale(&a) + &g.scale(&b)).bar() == &f.bar().scale(&a) + &g.bar().scale(&b)
            && f.bar().bar() == f.bar().scale(&F7::from_i64(2))
            && f.transpose().bar() == -&f.bar()
            && (&f * &g).transpose() == &g.transpose() * &f.transpose();
        t.check(ok, || format!("f = {f}, g = {g}"));
    }
    out.push(t.done());

    let mut t = Tally::new("linalg", "substitution commutes with product");
    for _ in 0..50 {
        let f: P = random_poly(&mut rng, 2, 3, 3);
        let g: P = random_poly(&mut rng, 2, 3, 3);
        let imgs = [random_word(&mut rng, 4, 2), random_word(&mut rng, 4, 3)];
        let map = |i: usize| imgs.get(i - 1).cloned();
        let lhs = (&f * &g).substitute(&map).expect("mapped");
        let rhs = &f.substitute(&map).expect("mapped") * &g.substitute(&map).expect("mapped");
        t.check(lhs == rhs, || format!("f = {f}, g = {g}"));
    }
    out.push(t.done());

    let mut t = Tally::new("linalg", "sparse rank matches dense and ignores row order");
    let basis = words_of(&"5,4".parse().expect("multidegree literal"));
    let basis: Vec<Word> = basis.into_iter().take(500).collect();
    let rows: Vec<NcPoly<F3>> = (0..200)
        .map(|_| {
            let k = rng.gen_range(1..6);
            NcPoly::from_terms((0..k).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), F3::random(&mut rng))))
        })
        .collect();
    let span = row_reduce(&rows, basis.clone()).expect("rows on the basis");
    let dense: Vec<Vec<F3>> = rows.iter().map(|r| basis.iter().map(|w| r.coeff(w)).collect()).collect();
    let rank = span.rank();
    t.check(rank == dense_rank(dense), || format!("sparse rank {rank}"));
    let mut shuffled = rows.clone();
    for _ in 0..20 {
        shuffled.shuffle(&mut rng);
        let r = row_reduce(&shuffled, basis.clone()).expect("rows on the basis").rank();
        t.check(r == rank, || format!("rank {r} after shuffling, {rank} before"));
    }
    out.push(t.done());

    let mut t = Tally::new("linalg", "membership certificates recombine");
    for _ in 0..100 {
        let small: Vec<Word> = basis.iter().take(40).cloned().collect();
        let rows: Vec<NcPoly<F7>> = (0..15)
            .map(|_| NcPoly::from_terms((0..3).map(|_| (small[rng.gen_range(0..40)].clone(), F7::random(&mut rng)))))
            .collect();
        let span = row_reduce(&rows, small.clone()).expect("rows on the basis");
        let f = rows.iter().fold(NcPoly::zero(), |acc, r| &acc + &r.scale(&F7::random(&mut rng)));
        let m = span.membership(&f, true).expect("on the basis");
        let recombined =
            m.certificate.as_ref().map(|c| c.iter().fold(NcPoly::zero(), |acc, (i, k)| &acc + &rows[*i].scale(k)));
        t.check(m.member && recombined.as_ref() == Some(&f), || format!("f = {f}"));
    }
    out.push(t.done());
    out
}

// ---------------------------------------------------------------------------
// A(3,d)

/// An element of the ideal: a relation instance with outer multipliers, or a
/// word minus its normal form.
fn random_ideal_element<F: Field>(rng: &mut impl Rng, e: &A3d<F>, maxdeg: usize) -> Result<NcPoly<F>> {
    let d = e.d();
    loop {
        let f = if rng.gen_bool(0.5) {
            let kind = [RelationKind::T1, RelationKind::T2, RelationKind::T3, RelationKind::T][rng.gen_range(0..4)];
            let args: Vec<Word> = (0..kind.arity()).map(|_| random_word_in(rng, d, 1..=2)).collect();
            let left = random_word_in(rng, d, 0..=1);
            let right = random_word_in(rng, d, 0..=1);
            let inst = RelationInstance::new(kind, args)?.with_multipliers(left, right);
            inst.expand::<F>()
        } else {
            let w = NcPoly::word(random_word_in(rng, d, 3..=maxdeg));
            &w - &e.normal_form(&w)?
        };
        let deg = f.terms().map(|(w, _)| w.len()).max().unwrap_or(0);
        if !f.is_zero() && deg <= maxdeg {
            return Ok(f);
        }
    }
}

fn word_poly<F: Field>(w: &Word) -> NcPoly<F> {
    NcPoly::word(w.clone())
}

fn n3d_poly<F: Field>(a: &Word, b: &Word, c: &Word) -> NcPoly<F> {
    let (pa, pb, pc) = (word_poly::<F>(a), word_poly::<F>(b), word_poly::<F>(c));
    let f = &(&(&(&(&pa * &pb) * &pc) * &pb) * &pa) + &(&(&pc * &pa.pow(2)) * &pb.pow(2));
    &f + &(&(&pb.pow(2) * &pa.pow(2)) * &pc)
}

fn a3d_suite(seed: u64) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let mut rng = rng_for(seed, 4);
    let e3 = A3d::<F3>::new(2);
    let e7 = A3d::<F7>::new(2);

    let mut t = Tally::new("a3d", "ideal is two-sided");
    for _ in 0..200 {
        let f = random_ideal_element(&mut rng, &e3, 6)?;
        let mut ok = e3.is_zero(&f)?;
        for code in 0..4u8 {
            let x = NcPoly::letter(Letter::from_code(code));
            ok &= e3.is_zero(&(&x * &f))? && e3.is_zero(&(&f * &x))?;
        }
        t.check(ok, || format!("{f}"));
    }
    out.push(t.done());

    let mut t = Tally::new("a3d", "square of a product reverses");
    for k in 0..100 {
        let s = rng.gen_range(1..=3);
        let budget = 5 / s;
        let parts: Vec<Word> = (0..s).map(|_| random_word_in(&mut rng, 2, 1..=budget.max(1))).collect();
        let prod = parts.iter().fold(Word::unit(), |a, w| a.concat(w));
        let rev = parts.iter().rev().fold(Word::unit(), |a, w| a.concat(&w.pow(2)));
        let (lhs, rhs) = (prod.pow(2), rev);
        let ok = if k % 2 == 0 {
            e3.is_zero(&(&word_poly::<F3>(&lhs) - &word_poly(&rhs)))?
        } else {
            e7.is_zero(&(&word_poly::<F7>(&lhs) - &word_poly(&rhs)))?
        };
        t.check(ok, || format!("({prod})^2 vs {rhs}"));
    }
    out.push(t.done());

    let mut t = Tally::new("a3d", "ab c ba + c a^2 b^2 + b^2 a^2 c vanishes");
    for k in 0..100 {
        let [a, b, c] = [0, 1, 2].map(|_| random_word_in(&mut rng, 2, 1..=2));
        let ok = if k % 2 == 0 { e3.is_zero(&n3d_poly(&a, &b, &c))? } else { e7.is_zero(&n3d_poly(&a, &b, &c))? };
        t.check(ok, || format!("a = {a}, b = {b}, c = {c}"));
    }
    out.push(t.done());

    let mut t = Tally::new("a3d", "bar(a)bar(b)bar(c) + bar(c)bar(b)bar(a) vanishes");
    for _ in 0..100 {
        let [a, b, c] = [0, 1, 2].map(|_| word_poly::<F3>(&random_word_in(&mut rng, 2, 1..=2)).bar());
        let f = &(&(&a * &b) * &c) + &(&(&c * &b) * &a);
        t.check(e3.is_zero(&f)?, || format!("{f}"));
    }
    out.push(t.done());

    let mut t = Tally::new("a3d", "four bars vanish");
    for _ in 0..100 {
        let bars: Vec<NcPoly<F3>> = (0..4).map(|_| word_poly(&random_word_in(&mut rng, 2, 1..=2)).bar()).collect();
        let gaps: Vec<NcPoly<F3>> = (0..3).map(|_| word_poly(&random_word_in(&mut rng, 2, 0..=1))).collect();
        let f = &(&(&(&(&(&bars[0] * &gaps[0]) * &bars[1]) * &gaps[1]) * &bars[2]) * &gaps[2]) * &bars[3];
        t.check(e3.is_zero(&f)?, || format!("{f}"));
    }
    out.push(t.done());

    let mut t = Tally::new("a3d", "deleting a letter preserves zero (char 3)");
    let e33 = A3d::<F3>::new(3);
    while t.cases < 30 {
        let f = random_ideal_element(&mut rng, &e33, 6)?;
        let Some(delta) = f.multidegree(3) else { continue };
        if !(1..=2).contains(&delta.get(3)) || delta.total() == delta.get(3) {
            continue;
        }
        let img = pi_substitute(&f, 3)?;
        let ok = e33.is_zero(&f)? && e33.is_zero(&img)?;
        t.check(ok, || format!("{f} -> {img}"));
    }
    out.push(t.done());

    let mut t = Tally::new("a3d", "a literal of degree above 3 kills a word (char 3, d = 1)");
    let e1 = A3d::<F3>::new(1);
    for w in all_words(1, 8) {
        let high = (0..2u8).any(|c| w.count(Letter::from_code(c)) > 3);
        if high {
            t.check(e1.is_zero(&word_poly(&w))?, || format!("{w}"));
        }
    }
    out.push(t.done());

    let mut t = Tally::new("a3d", "multilinear degree 6 vanishes (char 5, 7)");
    let ones = Multidegree::new(vec![1; 6]);
    t.check(A3d::<F5>::new(6).quotient_dimension(&ones)? == 0, || "char 5".into());
    t.check(A3d::<F7>::new(6).quotient_dimension(&ones)? == 0, || "char 7".into());
    out.push(t.done());

    let mut t = Tally::new("a3d", "dimensions independent of thread count");
    let dims = |threads: usize| -> Result<Vec<usize>> {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| {
            let e = A3d::<F3>::new(2);
            Multidegree::compositions(2, 6).iter().map(|m| e.quotient_dimension(m)).collect()
        })
    };
    let one = dims(1)?;
    let many = dims(rayon::current_num_threads().max(2))?;
    t.check(one == many, || format!("{one:?} vs {many:?}"));
    out.push(t.done());

    let mut t = Tally::new("a3d", "fast rewriting preserves the class");
    for _ in 0..100 {
        let f: NcPoly<F3> = random_poly(&mut rng, 2, 6, 3);
        let g = rewrite_fast(&f);
        t.check(e3.is_zero(&(&f - &g))?, || format!("{f} -> {g}"));
    }
    let t2 = relation_poly::<F3>(RelationKind::T2, &["x1".parse()?, "x2".parse()?])?;
    t.check(e3.is_zero(&t2)?, || "T2(x1, x2)".into());
    out.push(t.done());
    Ok(out)
}

// ---------------------------------------------------------------------------
// σ-expressions

fn sigma_suite(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = rng_for(seed, 5);

    let mut t = Tally::new("sigma", "σ_{t,r} words satisfy their constraints");
    for t_ in 0..=8usize {
        for r in 0..=4usize {
            if t_ + 2 * r > 9 || t_ + r == 0 {
                continue;
            }
            let data = sigma_tr_data(t_, r);
            let mut reps = HashSet::new();
            for a in &data {
                let w = &a.word;
                let n = w.len();
                let l = w.letters();
                let plain = |i: usize| w.count(Letter::plain(i));
                let ok = w.is_primitive()
                    && (0..n).all(|i| sigma_tr_follows(l[i], l[(i + 1) % n]))
                    && w.multidegree(3).scale(a.multiplicity as usize) == Multidegree::new(vec![t_, r, r])
                    && reps.insert(w.class_rep())
                    && a.xi == t_ + a.multiplicity as usize * (plain(2) + plain(3) + 1);
                t.check(ok, || format!("({t_},{r}): {w}"));
            }
            let f = build_sigma_tr::<F7>(t_, r);
            let homogeneous = f.multidegree(3) == Some(Multidegree::new(vec![t_, r, r])) || f.is_zero();
            let signs = data.iter().all(|a| {
                let m = SigmaMonomial::symbol(a.multiplicity, &a.word).expect("valid symbol");
                let want = if a.xi % 2 == 0 { F7::from_i64(1) } else { F7::from_i64(-1) };
                f.coeff(&m) == want
            });
            t.check(homogeneous && signs && f.len() == data.len(), || format!("σ_({t_},{r}) = {f}"));
        }
    }
    out.push(t.done());

    let mut t = Tally::new("sigma", "tr kills a - a' and ab - ba");
    let words = all_words(2, 6);
    for a in &words {
        let f = &word_poly::<F7>(a) - &word_poly(&a.involute());
        t.check(tr(&f).is_zero(), || format!("{a}"));
    }
    let outcomes: Vec<Option<String>> = words
        .par_iter()
        .filter(|a| a.len() <= 5)
        .flat_map_iter(|a| {
            words.iter().filter(move |b| a.len() + b.len() <= 6).map(move |b| {
                let f = &word_poly::<F7>(&a.concat(b)) - &word_poly(&b.concat(a));
                (!tr(&f).is_zero()).then(|| format!("{a} · {b}"))
            })
        })
        .collect();
    t.extend(outcomes);
    out.push(t.done());

    let mut t = Tally::new("sigma", "tr is linear");
    for _ in 0..100 {
        let f: NcPoly<F7> = random_poly(&mut rng, 3, 5, 4);
        let g: NcPoly<F7> = random_poly(&mut rng, 3, 5, 4);
        let (a, b) = (F7::random(&mut rng), F7::random(&mut rng));
        let ok = tr(&(&f.scale(&a) + &g.scale(&b))) == &tr(&f).scale(&a) + &tr(&g).scale(&b);
        t.check(ok, || format!("f = {f}, g = {g}"));
    }
    out.push(t.done());

    let mut t = Tally::new("sigma", "substitution transforms multidegrees");
    for _ in 0..100 {
        let mut f = SigmaPoly::<F7>::one();
        for _ in 0..rng.gen_range(1..=2) {
            let w = random_word_in(&mut rng, 3, 1..=3);
            let s = SigmaPoly::sigma(rng.gen_range(1..=3), &w).expect("nonempty word");
            f = &f * &s;
        }
        let imgs: Vec<Word> = (0..3).map(|_| random_word_in(&mut rng, 5, 1..=3)).collect();
        let g = f.substitute(&|i| imgs.get(i - 1).cloned()).expect("mapped");
        let src = f.multidegree(3).expect("single term");
        let want = (1..=3).fold(Multidegree::zeros(5), |acc, k| &acc + &imgs[k - 1].multidegree(5).scale(src.get(k)));
        t.check(g.multidegree(5) == Some(want.clone()), || format!("{f} under {imgs:?}"));
    }
    out.push(t.done());
    out
}
