//! Letters, words and their combinatorics.
//!
//! A letter is `x_k` or its transpose `x_k'`. Letters are totally ordered
//! `x1 < x1' < x2 < x2' < ...`; words of equal length compare
//! lexicographically. Every canonical form in the crate derives from this
//! order.

use std::fmt::{self, Display};
use std::ops::{Add, Mul};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// `x_k` or `x_k'`, packed as `2 * (k - 1) + transposed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Letter(u8);

impl Letter {
    pub fn new(index: usize, transposed: bool) -> Self {
        assert!((1..=127).contains(&index), "letter index {index} out of range");
        Letter(((index - 1) * 2) as u8 | transposed as u8)
    }

    pub fn plain(index: usize) -> Self {
        Self::new(index, false)
    }

    pub fn from_code(code: u8) -> Self {
        Letter(code)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    /// 1-based matrix index.
    pub fn index(self) -> usize {
        (self.0 >> 1) as usize + 1
    }

    pub fn is_transposed(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn transpose(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.index(), if self.is_transposed() { "'" } else { "" })
    }
}

/// A finite product of letters.
///
/// The empty word (the unity of the unital monoid) exists only through
/// [`Word::unit`]; [`Word::new`] rejects it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Word(letters))
    }

    /// The unity, for computations in the monoid with one adjoined.
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_codes(codes: &[u8]) -> Self {
        Word(codes.iter().map(|&c| Letter(c)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True only for the unity.
    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Reverses the word and transposes every letter.
    pub fn involute(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.transpose()).collect())
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.len());
        Word(v)
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// Multidegree in `d` matrix indices; `x_k` and `x_k'` are pooled.
    pub fn multidegree(&self, d: usize) -> Multidegree {
        let mut m = vec![0; d];
        for l in &self.0 {
            m[l.index() - 1] += 1;
        }
        Multidegree(m)
    }

    /// Occurrences of the literal `l` (transposition distinguished).
    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    /// Occurrences of `x_k` and `x_k'` together.
    pub fn degree_in(&self, index: usize) -> usize {
        self.0.iter().filter(|l| l.index() == index).count()
    }

    /// Not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.len();
        (1..n).filter(|p| n.is_multiple_of(*p)).all(|p| (p..n).any(|i| self.0[i] != self.0[i - p]))
    }

    /// Least word among the cyclic rotations of `self` and of its involute.
    pub fn class_rep(&self) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let a = least_rotation(&self.0);
        let b = least_rotation(&self.involute().0);
        Word(a.min(b))
    }

    pub fn is_class_rep(&self) -> bool {
        *self == self.class_rep()
    }

    /// Applies `x_i -> images[i]`, `x_i' -> involute(images[i])`.
    pub fn substitute(&self, images: &dyn Fn(usize) -> Option<Word>) -> Result<Word> {
        let mut out = Vec::new();
        for l in &self.0 {
            let img = images(l.index()).ok_or(Error::UnmappedIndex(l.index()))?;
            if l.is_transposed() {
                out.extend(img.involute().0);
            } else {
                out.extend(img.0);
            }
        }
        Ok(Word(out))
    }

    /// Drops every occurrence of `x_i` and `x_i'`.
    pub fn delete_index(&self, index: usize) -> Word {
        Word(self.0.iter().copied().filter(|l| l.index() != index).collect())
    }
}

/// Booth's least-rotation algorithm.
fn least_rotation(s: &[Letter]) -> Vec<Letter> {
    let n = s.len();
    let ss: Vec<Letter> = s.iter().chain(s.iter()).copied().collect();
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = ss[j];
        let mut i = f[j - k - 1];
        while i != -1 && sj != ss[k + (i + 1) as usize] {
            if sj < ss[k + (i + 1) as usize] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if sj != ss[k + (i + 1) as usize] {
            // i == -1 here
            if sj < ss[k] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    ss[k..k + n].to_vec()
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.0[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Monomial grammar: `x3`, `x3'`, juxtaposition with `*` or blanks, `^k`.
    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        let mut i = 0;
        let mut out = Vec::new();
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let skip = |i: &mut usize| {
            while *i < b.len() && (b[*i] == b' ' || b[*i] == b'*' || b[*i] == b'\t') {
                *i += 1;
            }
        };
        let number = |i: &mut usize| -> Option<usize> {
            let start = *i;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            s[start..*i].parse().ok()
        };
        skip(&mut i);
        if i == b.len() || s.trim() == "1" {
            return Ok(Word::unit());
        }
        while i < b.len() {
            if b[i] != b'x' {
                return Err(err(i, "expected a letter `x<k>`"));
            }
            i += 1;
            let idx = number(&mut i).ok_or_else(|| err(i, "expected a letter index"))?;
            if !(1..=127).contains(&idx) {
                return Err(err(i, "letter index out of range"));
            }
            let mut t = false;
            while i < b.len() && b[i] == b'\'' {
                t = !t;
                i += 1;
            }
            let mut rep = 1;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                rep = number(&mut i).ok_or_else(|| err(i, "expected an exponent"))?;
            }
            for _ in 0..rep {
                out.push(Letter::new(idx, t));
            }
            skip(&mut i);
        }
        Ok(Word(out))
    }
}

/// Per-index degree vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(Vec<usize>);

impl Multidegree {
    pub fn new(entries: Vec<usize>) -> Self {
        Multidegree(entries)
    }

    pub fn zeros(d: usize) -> Self {
        Multidegree(vec![0; d])
    }

    pub fn unit(d: usize, index: usize) -> Self {
        let mut v = vec![0; d];
        v[index - 1] = 1;
        Multidegree(v)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Number of matrix indices.
    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn get(&self, index: usize) -> usize {
        self.0.get(index - 1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if !other.le(self) {
            return None;
        }
        Some(Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `self - e_index`, if that is nonnegative.
    pub fn minus_unit(&self, index: usize) -> Option<Multidegree> {
        let mut v = self.0.clone();
        let e = v.get_mut(index - 1)?;
        *e = e.checked_sub(1)?;
        Some(Multidegree(v))
    }

    pub fn scale(&self, k: usize) -> Multidegree {
        Multidegree(self.0.iter().map(|x| x * k).collect())
    }

    /// `self / k` when every entry is divisible by `k`.
    pub fn divide(&self, k: usize) -> Option<Multidegree> {
        if k == 0 || self.0.iter().any(|x| x % k != 0) {
            return None;
        }
        Some(Multidegree(self.0.iter().map(|x| x / k).collect()))
    }

    /// Extends or truncates to `d` indices (truncation must drop zeros only).
    pub fn resize(&self, d: usize) -> Multidegree {
        let mut v = self.0.clone();
        debug_assert!(v.iter().skip(d).all(|&x| x == 0));
        v.resize(d, 0);
        Multidegree(v)
    }

    /// Number of words of this multidegree: multinomial times `2^total`.
    pub fn word_count(&self) -> u128 {
        let mut acc: u128 = 1;
        let mut n: u128 = 0;
        for &k in &self.0 {
            for i in 1..=k as u128 {
                n += 1;
                acc = acc * n / i;
            }
        }
        acc << self.total()
    }

    /// Every multidegree `m` with `0 <= m <= self`, in lexicographic order.
    pub fn sub_multidegrees(&self) -> Vec<Multidegree> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &k in &self.0 {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=k).map(move |i| {
                        let mut q = p.clone();
                        q.push(i);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(Multidegree).collect()
    }

    /// All multidegrees in `d` indices with the given total degree.
    pub fn compositions(d: usize, total: usize) -> Vec<Multidegree> {
        fn rec(d: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Multidegree>) {
            if prefix.len() + 1 == d {
                prefix.push(total);
                out.push(Multidegree(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in (0..=total).rev() {
                prefix.push(k);
                rec(d, total - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if d == 0 {
            return out;
        }
        rec(d, total, &mut Vec::new(), &mut out);
        out
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        let n = self.0.len().max(rhs.0.len());
        Multidegree((0..n).map(|i| self.0.get(i).unwrap_or(&0) + rhs.0.get(i).unwrap_or(&0)).collect())
    }
}

impl Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Multidegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut v = Vec::new();
        for part in t.split(',') {
            let p = part.trim();
            let x: i64 = p.parse().map_err(|_| Error::InvalidMultidegree(s.to_string()))?;
            if x < 0 {
                return Err(Error::InvalidMultidegree(format!("negative entry in {s}")));
            }
            v.push(x as usize);
        }
        if v.is_empty() {
            return Err(Error::InvalidMultidegree(s.to_string()));
        }
        Ok(Multidegree(v))
    }
}

pub type FollowPredicate = Arc<dyn Fn(Letter, Letter) -> bool + Send + Sync>;

/// Filters for [`enumerate_words`].
#[derive(Clone, Default)]
pub struct EnumOptions {
    /// Maximum number of occurrences of any single literal.
    pub literal_cap: Option<usize>,
    /// Must hold for every pair of cyclically consecutive letters.
    pub follow: Option<FollowPredicate>,
    /// Emit only class representatives. Only meaningful when the other
    /// filters are closed under the equivalence.
    pub classes_only: bool,
    pub primitive_only: bool,
}

impl EnumOptions {
    pub fn classes() -> Self {
        EnumOptions { classes_only: true, ..Default::default() }
    }

    pub fn primitive_classes() -> Self {
        EnumOptions { classes_only: true, primitive_only: true, ..Default::default() }
    }
}

/// Words of a multidegree, produced lazily in increasing order.
pub struct WordIter {
    len: usize,
    alphabet: u8,
    remaining: Vec<usize>,
    literal_counts: Vec<usize>,
    cur: Vec<u8>,
    next_code: Vec<u8>,
    pending: bool,
    done: bool,
    opts: EnumOptions,
}

/// Enumerates the words of multidegree `delta`. The multidegree's length is
/// the number of matrix indices.
pub fn enumerate_words(delta: &Multidegree, opts: EnumOptions) -> WordIter {
    let len = delta.total();
    let alphabet = (2 * delta.d()) as u8;
    WordIter {
        len,
        alphabet,
        remaining: delta.0.clone(),
        literal_counts: vec![0; alphabet as usize],
        cur: Vec::with_capacity(len),
        next_code: vec![0; len + 1],
        pending: false,
        done: len == 0,
        opts,
    }
}

impl WordIter {
    fn admissible(&self, c: u8) -> bool {
        if self.remaining[(c >> 1) as usize] == 0 {
            return false;
        }
        if let Some(cap) = self.opts.literal_cap {
            if self.literal_counts[c as usize] >= cap {
                return false;
            }
        }
        if let (Some(f), Some(&prev)) = (&self.opts.follow, self.cur.last()) {
            if !f(Letter(prev), Letter(c)) {
                return false;
            }
        }
        true
    }

    fn push(&mut self, c: u8) {
        self.remaining[(c >> 1) as usize] -= 1;
        self.literal_counts[c as usize] += 1;
        self.cur.push(c);
    }

    fn pop(&mut self) {
        let c = self.cur.pop().expect("pop on empty prefix");
        self.remaining[(c >> 1) as usize] += 1;
        self.literal_counts[c as usize] -= 1;
    }

    fn next_raw(&mut self) -> Option<Word> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.cur.len();
            if depth == self.len {
                if self.pending {
                    self.pending = false;
                    return Some(Word::from_codes(&self.cur));
                }
                self.pop();
                continue;
            }
            let start = self.next_code[depth];
            let found = (start..self.alphabet).find(|&c| self.admissible(c));
            match found {
                Some(c) => {
                    self.next_code[depth] = c + 1;
                    self.push(c);
                    self.next_code[depth + 1] = 0;
                    if self.cur.len() == self.len {
                        self.pending = true;
                    }
                }
                None => {
                    if depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.pop();
                }
            }
        }
    }

    fn accept(&self, w: &Word) -> bool {
        if let Some(f) = &self.opts.follow {
            let l = w.letters();
            if !f(l[l.len() - 1], l[0]) {
                return false;
            }
        }
        if self.opts.primitive_only && !w.is_primitive() {
            return false;
        }
        if self.opts.classes_only && !w.is_class_rep() {
            return false;
        }
        true
    }
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            let w = self.next_raw()?;
            if self.accept(&w) {
                return Some(w);
            }
        }
    }
}

/// All words of multidegree `delta`, in increasing order.
pub fn words_of(delta: &Multidegree) -> Vec<Word> {
    enumerate_words(delta, EnumOptions::default()).collect()
}
