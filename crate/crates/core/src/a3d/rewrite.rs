//! Cheap rewriting by consequences of `T1` and `T2`:
//! `x c x = -x^2 c - c x^2` and `x c x^2 = -x^2 c x` for a letter `x`,
//! and words with some letter of degree above three vanish.

use crate::field::Field;
use crate::ncpoly::NcPoly;
use crate::word::{Letter, Word};

const MAX_ROUNDS: usize = 64;

enum Step {
    Keep,
    Drop,
    Replace(Vec<Vec<Letter>>),
}

fn step(letters: &[Letter]) -> Step {
    let mut seen: Vec<Letter> = Vec::new();
    for &x in letters {
        if seen.contains(&x) {
            continue;
        }
        seen.push(x);
        let pos: Vec<usize> = (0..letters.len()).filter(|&i| letters[i] == x).collect();
        let gap_pair = |i: usize, j: usize| {
            let (pre, c, post) = (&letters[..i], &letters[i + 1..j], &letters[j + 1..]);
            Step::Replace(vec![[pre, &[x, x], c, post].concat(), [pre, c, &[x, x], post].concat()])
        };
        match pos[..] {
            [_] => {}
            [i, j] if j > i + 1 => return gap_pair(i, j),
            [_, _] => {}
            [i, j, k] if j == i + 1 && k == j + 1 => return Step::Drop,
            [i, j, _] if j == i + 1 => {}
            [i, j, k] if k == j + 1 => {
                let (pre, c, post) = (&letters[..i], &letters[i + 1..j], &letters[k + 1..]);
                return Step::Replace(vec![[pre, &[x, x], c, &[x], post].concat()]);
            }
            [i, j, _] => return gap_pair(i, j),
            _ => return Step::Drop,
        }
    }
    Step::Keep
}

/// An element equal to `f` modulo the defining ideal, with repeated letters
/// moved together and words that vanish by degree dropped.
pub fn rewrite_fast<F: Field>(f: &NcPoly<F>) -> NcPoly<F> {
    let mut cur = f.clone();
    for _ in 0..MAX_ROUNDS {
        let mut next = NcPoly::zero();
        let mut changed = false;
        for (w, c) in cur.terms() {
            match step(w.letters()) {
                Step::Keep => next.add_term(w.clone(), c.clone()),
                Step::Drop => changed = true,
                Step::Replace(ws) => {
                    changed = true;
                    for v in ws {
                        next.add_term(Word::from_vec_unchecked(v), -c.clone());
                    }
                }
            }
        }
        cur = next;
        if !changed {
            break;
        }
    }
    cur
}
