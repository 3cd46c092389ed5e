//! The four defining relation families.

use std::fmt::{self, Display};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ncpoly::NcPoly;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    T1,
    T2,
    T3,
    T,
}

impl RelationKind {
    pub fn arity(self) -> usize {
        match self {
            RelationKind::T1 => 1,
            RelationKind::T2 => 2,
            RelationKind::T3 | RelationKind::T => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            RelationKind::T1 => "T1",
            RelationKind::T2 => "T2",
            RelationKind::T3 => "T3",
            RelationKind::T => "T",
        }
    }
}

impl Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `left · kind(args) · right`, with `left` and `right` possibly the unit word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub args: Vec<Word>,
    pub left: Word,
    pub right: Word,
}

impl RelationInstance {
    pub fn new(kind: RelationKind, args: Vec<Word>) -> Result<Self> {
        check_args(kind, &args)?;
        Ok(RelationInstance { kind, args, left: Word::unit(), right: Word::unit() })
    }

    pub fn with_multipliers(mut self, left: Word, right: Word) -> Self {
        self.left = left;
        self.right = right;
        self
    }

    pub fn expand<F: Field>(&self) -> NcPoly<F> {
        let core = expand_unchecked(self.kind, &self.args);
        if self.left.is_unit() && self.right.is_unit() {
            return core;
        }
        NcPoly::word(self.left.clone()).product(&core).product(&NcPoly::word(self.right.clone()))
    }
}

fn check_args(kind: RelationKind, args: &[Word]) -> Result<()> {
    if args.len() != kind.arity() {
        return Err(Error::Arity { kind: kind.name(), expected: kind.arity(), got: args.len() });
    }
    if args.iter().any(Word::is_unit) {
        return Err(Error::EmptyWord);
    }
    Ok(())
}

/// The relation polynomial on monomial arguments.
pub fn relation_poly<F: Field>(kind: RelationKind, args: &[Word]) -> Result<NcPoly<F>> {
    check_args(kind, args)?;
    Ok(expand_unchecked(kind, args))
}

pub(crate) fn expand_unchecked<F: Field>(kind: RelationKind, args: &[Word]) -> NcPoly<F> {
    let one = F::one();
    let word = |parts: &[&Word]| {
        let mut w = parts[0].clone();
        for p in &parts[1..] {
            w = w.concat(p);
        }
        w
    };
    match kind {
        RelationKind::T1 => NcPoly::word(args[0].pow(3)),
        RelationKind::T2 => {
            let (a, b) = (&args[0], &args[1]);
            NcPoly::from_terms([
                (word(&[a, a, b]), one.clone()),
                (word(&[a, b, a]), one.clone()),
                (word(&[b, a, a]), one),
            ])
        }
        RelationKind::T3 => {
            let (a, b, c) = (&args[0], &args[1], &args[2]);
            NcPoly::from_terms(
                [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
                    .iter()
                    .map(|p| (word(p), one.clone())),
            )
        }
        RelationKind::T => {
            let a = NcPoly::word(args[0].clone());
            let at = NcPoly::word(args[0].involute());
            let b = NcPoly::word(args[1].clone()).bar();
            let c = NcPoly::word(args[2].clone()).bar();
            let bc = b.product(&c);
            &(&a.product(&bc) + &b.product(&at).product(&c)) + &bc.product(&a)
        }
    }
}
