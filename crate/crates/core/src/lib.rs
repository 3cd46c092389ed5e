//! Exact computations in the free algebra with involution modulo the
//! degree-three trace-identity ideal, plus the 3×3 matrix invariant oracle.

pub mod a3d;
pub mod checks;
pub mod error;
pub mod field;
pub mod linalg;
pub mod ncpoly;
pub mod oracle;
pub mod parse;
pub mod sigma;
pub mod tower;
pub mod word;

pub use error::{Error, Result};
pub use field::{CoeffField, Field, FiniteField, Fp, Gf, One, PrimeField, Zero};
pub use linalg::{row_reduce, Echelon, EchelonSpan, Membership};
pub use ncpoly::NcPoly;
pub use parse::{parse_expr, parse_nc, parse_sigma, Expr};
pub use sigma::{tr, SigmaMonomial, SigmaPoly};
pub use tower::Gf3Tower;
pub use word::{enumerate_words, words_of, EnumOptions, Letter, Multidegree, Word};

pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;
/// Large prime field standing in for characteristic zero.
pub type FLarge = Fp<2147483647>;
pub type Q = num_rational::BigRational;
pub type Gf3 = Gf3Tower;
pub type Gf5 = Gf<5, 13>;
pub type Gf7 = Gf<7, 11>;
pub type Gf11 = Gf<11, 10>;
pub type Gf13 = Gf<13, 9>;
