//! The field with 3^20 elements as a quadratic extension of GF(3^10).
//!
//! Subfield elements are stored as discrete logarithms to a primitive root
//! `g` (root of `x^10 + x^3 + x + 2`), with addition through a Zech table.
//! The extension is `GF(3^10)[y] / (y^2 - g)`; `g` is a non-square, so the
//! quotient is a field. An element is four bytes, a product is four
//! subfield products and two table lookups.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::Error;
use crate::field::{CoeffField, Field, FiniteField, One, Zero};

const Q: u32 = 59049;
const ORDER: u32 = Q - 1;
const HALF: u32 = ORDER / 2;
/// Log of zero.
const NIL: u16 = u16::MAX;

struct Tables {
    /// Base-3 index of `g^n`.
    exp: Vec<u16>,
    /// Log of the element with a given base-3 index.
    log: Vec<u16>,
    /// `log(1 + g^n)`.
    zech: Vec<u16>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        // Multiply by x modulo x^10 = 2x^3 + 2x + 1, on base-3 digit vectors.
        let times_x = |d: [u8; 10]| {
            let top = d[9];
            let mut n = [0u8; 10];
            n[1..].copy_from_slice(&d[..9]);
            n[0] = (n[0] + top) % 3;
            n[1] = (n[1] + 2 * top) % 3;
            n[3] = (n[3] + 2 * top) % 3;
            n
        };
        let index = |d: &[u8; 10]| d.iter().rev().fold(0u32, |a, &x| a * 3 + x as u32);
        let mut exp = vec![0u16; ORDER as usize];
        let mut log = vec![NIL; Q as usize];
        let mut cur = [0u8; 10];
        cur[0] = 1;
        for (n, e) in exp.iter_mut().enumerate() {
            let i = index(&cur);
            assert_eq!(log[i as usize], NIL, "x is not primitive");
            *e = i as u16;
            log[i as usize] = n as u16;
            cur = times_x(cur);
        }
        let zech = exp
            .iter()
            .map(|&i| {
                // Adding one changes the constant digit only.
                let d0 = i as u32 % 3;
                let j = i as u32 - d0 + (d0 + 1) % 3;
                log[j as usize]
            })
            .collect();
        Tables { exp, log, zech }
    })
}

#[inline]
fn modo(x: u32) -> u16 {
    (if x >= ORDER { x - ORDER } else { x }) as u16
}

#[inline]
fn smul(a: u16, b: u16) -> u16 {
    if a == NIL || b == NIL {
        NIL
    } else {
        modo(a as u32 + b as u32)
    }
}

#[inline]
fn sneg(a: u16) -> u16 {
    if a == NIL {
        NIL
    } else {
        modo(a as u32 + HALF)
    }
}

#[inline]
fn sadd(t: &Tables, a: u16, b: u16) -> u16 {
    if a == NIL {
        return b;
    }
    if b == NIL {
        return a;
    }
    let diff = if b >= a { b - a } else { (b as u32 + ORDER - a as u32) as u16 };
    let z = t.zech[diff as usize];
    if z == NIL {
        NIL
    } else {
        modo(a as u32 + z as u32)
    }
}

fn sindex(t: &Tables, a: u16) -> u64 {
    if a == NIL {
        0
    } else {
        t.exp[a as usize] as u64
    }
}

/// An element `a + b·y` of GF(3^20), both parts as subfield logarithms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf3Tower {
    a: u16,
    b: u16,
}

impl Gf3Tower {
    fn index(&self) -> u64 {
        let t = tables();
        sindex(t, self.a) + Q as u64 * sindex(t, self.b)
    }
}

impl Debug for Gf3Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf3Tower({})", self.index())
    }
}

impl Display for Gf3Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FromStr for Gf3Tower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let v: i64 = s.trim().parse().map_err(|_| Error::BadScalar(s.to_string()))?;
        let x = Self::from_index(v.unsigned_abs());
        Ok(if v < 0 { -x } else { x })
    }
}

impl Zero for Gf3Tower {
    fn zero() -> Self {
        Gf3Tower { a: NIL, b: NIL }
    }

    fn is_zero(&self) -> bool {
        self.a == NIL && self.b == NIL
    }
}

impl One for Gf3Tower {
    fn one() -> Self {
        Gf3Tower { a: 0, b: NIL }
    }
}

impl Add for Gf3Tower {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        let t = tables();
        Gf3Tower { a: sadd(t, self.a, rhs.a), b: sadd(t, self.b, rhs.b) }
    }
}

impl Neg for Gf3Tower {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        Gf3Tower { a: sneg(self.a), b: sneg(self.b) }
    }
}

impl Sub for Gf3Tower {
    type Output = Self;

    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Gf3Tower {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let t = tables();
        // (a + by)(c + dy) = ac + g·bd + (ad + bc)y
        let gbd = smul(smul(self.b, rhs.b), 1);
        Gf3Tower { a: sadd(t, smul(self.a, rhs.a), gbd), b: sadd(t, smul(self.a, rhs.b), smul(self.b, rhs.a)) }
    }
}

impl AddAssign for Gf3Tower {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for Gf3Tower {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for Gf3Tower {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Field for Gf3Tower {
    fn characteristic() -> u64 {
        3
    }

    fn descriptor() -> CoeffField {
        CoeffField::Extension { p: 3, k: 20 }
    }

    fn from_i64(v: i64) -> Self {
        match v.rem_euclid(3) {
            0 => Self::zero(),
            1 => Self::one(),
            _ => -Self::one(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let t = tables();
        // 1/(a + by) = (a - by) / (a^2 - g b^2)
        let norm = sadd(t, smul(self.a, self.a), sneg(smul(smul(self.b, self.b), 1)));
        let ninv = if norm == 0 { 0 } else { (ORDER - norm as u32) as u16 };
        Some(Gf3Tower { a: smul(self.a, ninv), b: smul(sneg(self.b), ninv) })
    }
}

impl FiniteField for Gf3Tower {
    fn order() -> f64 {
        (Q as f64) * (Q as f64)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_index(rng.gen_range(0..Q as u64 * Q as u64))
    }

    fn from_index(i: u64) -> Self {
        let t = tables();
        let i = i % (Q as u64 * Q as u64);
        Gf3Tower { a: t.log[(i % Q as u64) as usize], b: t.log[(i / Q as u64) as usize] }
    }
}
