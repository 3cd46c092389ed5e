use a3d_core::a3d::{pi_substitute, relation_poly, rewrite_fast, witness_ad, A3d, RelationKind};
use a3d_core::linalg::row_reduce;
use a3d_core::{words_of, Error, FLarge, Field, FiniteField, Letter, Multidegree, NcPoly, One, Word, F3, F5, F7, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn md(v: &[usize]) -> Multidegree {
    Multidegree::new(v.to_vec())
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn p<F: Field>(s: &str) -> NcPoly<F> {
    NcPoly::word(w(s))
}

fn words_or_unit(m: &Multidegree) -> Vec<Word> {
    if m.is_zero() {
        vec![Word::unit()]
    } else {
        words_of(m)
    }
}

/// Ordered splits of `m` into `k` nonzero parts.
fn splits(m: &Multidegree, k: usize) -> Vec<Vec<Multidegree>> {
    if k == 1 {
        return if m.is_zero() { vec![] } else { vec![vec![m.clone()]] };
    }
    let mut out = Vec::new();
    for first in m.sub_multidegrees() {
        if first.is_zero() {
            continue;
        }
        let rest = m.checked_sub(&first).unwrap();
        for mut tail in splits(&rest, k - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// Every instance `u R(args) v` of multidegree `delta`, all argument tuples.
fn brute_force_rank<F: Field>(delta: &Multidegree) -> usize {
    let mut rows = Vec::new();
    for core in delta.sub_multidegrees() {
        if core.total() < 3 {
            continue;
        }
        let outer = delta.checked_sub(&core).unwrap();
        for kind in [RelationKind::T1, RelationKind::T2, RelationKind::T3, RelationKind::T] {
            let k = kind.arity();
            let shapes: Vec<Vec<Multidegree>> = match kind {
                RelationKind::T1 => core.divide(3).into_iter().map(|a| vec![a]).collect(),
                RelationKind::T2 => core
                    .sub_multidegrees()
                    .into_iter()
                    .filter(|a| !a.is_zero())
                    .filter_map(|a| core.checked_sub(&a.scale(2)).filter(|b| !b.is_zero()).map(|b| vec![a, b]))
                    .collect(),
                _ => splits(&core, k),
            };
            for shape in shapes {
                let mut tuples: Vec<Vec<Word>> = vec![vec![]];
                for m in &shape {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            words_of(m).into_iter().map(move |x| {
                                let mut t = t.clone();
                                t.push(x);
                                t
                            })
                        })
                        .collect();
                }
                for args in tuples {
                    let r: NcPoly<F> = relation_poly(kind, &args).unwrap();
                    for left in outer.sub_multidegrees() {
                        let right = outer.checked_sub(&left).unwrap();
                        for u in words_or_unit(&left) {
                            for v in words_or_unit(&right) {
                                rows.push(NcPoly::word(u.clone()).product(&r).product(&NcPoly::word(v.clone())));
                            }
                        }
                    }
                }
            }
        }
    }
    row_reduce(&rows, words_of(delta)).unwrap().rank()
}

fn check_against_brute_force<F: Field>(d: usize, delta: &[usize]) {
    let e = A3d::<F>::new(d);
    let delta = md(delta);
    let span = e.ideal_component_basis(&delta).unwrap();
    let brute = brute_force_rank::<F>(&delta);
    assert_eq!(span.rank(), brute, "{delta} over {}", F::descriptor());
    let report = e.report(&delta).unwrap();
    assert_eq!(report.rank, brute as u128);
    assert_eq!(report.ambient, report.rank + report.quotient as u128);
}

#[test]
fn low_degrees_have_no_relations() {
    let e = A3d::<F3>::new(1);
    assert_eq!(e.quotient_dimension(&md(&[1])).unwrap(), 2);
    assert_eq!(e.quotient_dimension(&md(&[2])).unwrap(), 4);
    let span = e.ideal_component_basis(&md(&[2])).unwrap();
    assert_eq!(span.rank(), 0);
    assert_eq!(span.basis().len(), 4);
}

#[test]
fn components_match_brute_force() {
    for delta in [&[3][..], &[4], &[5], &[6]] {
        check_against_brute_force::<F3>(1, delta);
        check_against_brute_force::<F5>(1, delta);
        check_against_brute_force::<F7>(1, delta);
    }
    check_against_brute_force::<Q>(1, &[4]);
    for delta in [&[2, 1][..], &[1, 2], &[3, 1], &[2, 2]] {
        check_against_brute_force::<F3>(2, delta);
        check_against_brute_force::<F5>(2, delta);
    }
    check_against_brute_force::<F3>(3, &[1, 1, 1]);
    check_against_brute_force::<F5>(3, &[1, 1, 1]);
}

#[test]
fn degree_seven_vanishes_over_f3() {
    let e = A3d::<F3>::new(1);
    assert_eq!(e.quotient_dimension(&md(&[7])).unwrap(), 0);
    let span = e.ideal_component_basis(&md(&[4])).unwrap();
    assert!(span.contains(&p("x1^4")).unwrap());
}

#[test]
fn zero_tests() {
    let e = A3d::<F3>::new(2);
    let t2: NcPoly<F3> = relation_poly(RelationKind::T2, &[w("x1"), w("x2")]).unwrap();
    assert!(e.is_zero(&t2).unwrap());
    assert!(e.is_zero(&(&p("x1 x2 x1 x2") - &p("x2^2 x1^2"))).unwrap());
    assert!(!e.is_zero(&p("x1 x2")).unwrap());
    let e1 = A3d::<F3>::new(1);
    assert!(!e1.is_zero(&witness_ad(1)).unwrap());
    // Heterogeneous input is split by multidegree.
    assert!(!e.is_zero(&(&t2 + &p("x1"))).unwrap());
    assert!(e.is_zero(&(&t2 + &p("x1^4"))).unwrap());
}

#[test]
fn nilpotency() {
    assert_eq!(A3d::<F3>::new(1).nilpotency_degree(12).unwrap(), 7);
    assert!(matches!(A3d::<F3>::new(1).nilpotency_degree(3), Err(Error::CapExceeded { cap: 3 })));
    // Above characteristic three every product of six letters vanishes.
    assert_eq!(A3d::<F7>::new(1).nilpotency_degree(12).unwrap(), 6);
    assert_eq!(A3d::<FLarge>::new(1).nilpotency_degree(12).unwrap(), 6);
}

#[test]
fn witnesses() {
    let a1 = witness_ad::<F3>(1);
    assert_eq!(a1.len(), 8);
    assert!(a1.terms().all(|(w, c)| w.len() == 6 && (*c == F3::one() || *c == -F3::one())));
    let a2 = witness_ad::<F3>(2);
    assert_eq!(a2.multidegree(2), Some(md(&[6, 2])));
    assert!(!A3d::<F3>::new(2).is_zero(&a2).unwrap());
}

#[test]
fn pi_deletes_letters() {
    assert_eq!(pi_substitute(&p::<F3>("x1 x2 x1"), 2).unwrap(), p("x1^2"));
    assert_eq!(pi_substitute(&p::<F3>("x1 x2' x3"), 2).unwrap(), p("x1 x3"));
    assert!(matches!(pi_substitute(&p::<F3>("x2^3 x1"), 2), Err(Error::Precondition(_))));
    assert!(matches!(pi_substitute(&p::<F3>("x2"), 2), Err(Error::Precondition(_))));
    assert!(matches!(pi_substitute(&p::<F5>("x1 x2"), 2), Err(Error::Precondition(_))));
}

fn random_word(rng: &mut ChaCha8Rng, d: usize, len: usize) -> Word {
    Word::new((0..len).map(|_| Letter::new(rng.gen_range(1..=d), rng.gen_bool(0.5))).collect()).unwrap()
}

#[test]
fn rewrite_preserves_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = A3d::<F3>::new(2);
    for _ in 0..100 {
        let len = rng.gen_range(3..=6);
        let f = NcPoly::from_terms((0..3).map(|_| (random_word(&mut rng, 2, len), F3::random(&mut rng))));
        let g = rewrite_fast(&f);
        assert!(e.normal_form(&(&f - &g)).unwrap().is_zero(), "{f} vs {g}");
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let delta = md(&[3, 2]);
    let first = A3d::<F3>::new(2).with_cache_dir(dir.path());
    let c1 = first.component(&delta).unwrap();
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 5);
    let second = A3d::<F3>::new(2).with_cache_dir(dir.path());
    let c2 = second.component(&delta).unwrap();
    assert_eq!(c1.normal_words(), c2.normal_words());
    assert_eq!(c1.echelon().rows(), c2.echelon().rows());
    let f = witness_ad::<F3>(2);
    assert_eq!(first.normal_form(&f).unwrap(), second.normal_form(&f).unwrap());
}

#[test]
fn independent_of_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let e = A3d::<F3>::new(2);
            let c = e.component(&md(&[4, 3])).unwrap();
            (c.normal_words().to_vec(), c.echelon().rows().to_vec())
        })
    };
    assert_eq!(run(1), run(4));
}

/// Three bars between factors that carry x1 and x2 three times each. The
/// component (3,3,3) is far past the others in size; run with `--ignored`.
#[test]
#[ignore]
fn three_bars_with_cubed_letters() {
    let bar = |f: NcPoly<F3>| &f - &f.transpose();
    let x3b = bar(p("x3"));
    let us = [p::<F3>("x1"), p("x2 x1'"), p("x2"), p("x1 x2'")];
    let mut f = us[0].clone();
    for u in &us[1..] {
        f = f.product(&x3b).product(u);
    }
    assert_eq!(f.multidegree(3), Some(md(&[3, 3, 3])));
    assert!(A3d::<F3>::new(3).is_zero(&f).unwrap());
}
