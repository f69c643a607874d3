//! The rational function field `Q(t)`.
//!
//! Elements are fractions of dense integer polynomials (coefficients low to
//! high).  After every operation the fraction is reduced: numerator and
//! denominator share no common factor over `Z[t]` (content included) and the
//! denominator has positive leading coefficient.  This is a canonical form,
//! so structural equality is field equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rational;

/// Dense integer polynomial, low degree first, no trailing zeros.
pub type ZPoly = Vec<BigInt>;

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out: ZPoly = (0..n)
        .map(|k| match (a.get(k), b.get(k)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => BigInt::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

fn zneg(a: &[BigInt]) -> ZPoly {
    a.iter().map(|x| -x).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn zscale_div(a: &[BigInt], c: &BigInt) -> ZPoly {
    a.iter().map(|x| x / c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut r: ZPoly = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (k, y) in b.iter().enumerate() {
            r[dr - db + k] -= &lr * y;
        }
        trim(&mut r);
    }
    r
}

/// Gcd in `Z[t]`, normalised to positive leading coefficient.
pub fn zgcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return normalise_sign(b.to_vec());
    }
    if b.is_empty() {
        return normalise_sign(a.to_vec());
    }
    let ca = content(a);
    let cb = content(b);
    let g = ca.gcd(&cb);
    let mut x = zscale_div(a, &ca);
    let mut y = zscale_div(b, &cb);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = if r.is_empty() {
            r
        } else {
            let c = content(&r);
            zscale_div(&r, &c)
        };
    }
    let out: ZPoly = x.iter().map(|c| c * &g).collect();
    normalise_sign(out)
}

fn normalise_sign(mut p: ZPoly) -> ZPoly {
    trim(&mut p);
    if p.last().is_some_and(|c| c.is_negative()) {
        p = zneg(&p);
    }
    p
}

/// Exact division `a / b` in `Z[t]`; panics if not exact (internal use only).
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        for (k, y) in b.iter().enumerate() {
            r[dr - db + k] -= &c * y;
        }
        q[dr - db] = c;
        trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(&mut q);
    q
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Vec::new(), den: vec![BigInt::one()] }
    }

    pub fn one() -> Self {
        RatFunc { num: vec![BigInt::one()], den: vec![BigInt::one()] }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        RatFunc { num: vec![BigInt::zero(), BigInt::one()], den: vec![BigInt::one()] }
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i32) -> Self {
        let mono = |e: usize| {
            let mut v = vec![BigInt::zero(); e + 1];
            v[e] = BigInt::one();
            v
        };
        if k >= 0 {
            RatFunc { num: mono(k as usize), den: vec![BigInt::one()] }
        } else {
            RatFunc { num: vec![BigInt::one()], den: mono((-k) as usize) }
        }
    }

    pub fn constant(q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        RatFunc { num: vec![q.numer().clone()], den: vec![q.denom().clone()] }
    }

    pub fn from_parts(num: ZPoly, den: ZPoly) -> Result<Self> {
        let mut den = den;
        trim(&mut den);
        if den.is_empty() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(mut num: ZPoly, mut den: ZPoly) -> Self {
        trim(&mut num);
        trim(&mut den);
        if num.is_empty() {
            return Self::zero();
        }
        let g = zgcd(&num, &den);
        if !(g.len() == 1 && g[0].is_one()) {
            num = zdiv_exact(&num, &g);
            den = zdiv_exact(&den, &g);
        }
        if den.last().is_some_and(|c| c.is_negative()) {
            num = zneg(&num);
            den = zneg(&den);
        }
        RatFunc { num, den }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(zadd(&self.num, &o.num), self.den.clone());
        }
        Self::reduce(
            zadd(&zmul(&self.num, &o.den), &zmul(&o.num, &self.den)),
            zmul(&self.den, &o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: zneg(&self.num), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::reduce(zmul(&self.num, &o.num), zmul(&self.den, &o.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    /// Value at `t = 0`, or `None` when `t = 0` is a pole.
    pub fn eval_at_zero(&self) -> Option<Rational> {
        if self.den[0].is_zero() {
            return None;
        }
        let n = self.num.first().cloned().unwrap_or_else(BigInt::zero);
        Some(BigRational::new(n, self.den[0].clone()))
    }

    /// Exact evaluation at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let horner = |p: &[BigInt]| {
            p.iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
        };
        let d = horner(&self.den);
        if d.is_zero() {
            None
        } else {
            Some(horner(&self.num) / d)
        }
    }

    /// Order of vanishing at `t = 0` (negative for a pole); `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        let lo = |p: &[BigInt]| p.iter().position(|c| !c.is_zero()).unwrap_or(0) as i32;
        Some(lo(&self.num) - lo(&self.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn poly(p: &[BigInt]) -> String {
            if p.is_empty() {
                return "0".into();
            }
            let terms: Vec<String> = p
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| match k {
                    0 => format!("{c}"),
                    1 => format!("{c}*t"),
                    _ => format!("{c}*t^{k}"),
                })
                .collect();
            terms.join(" + ")
        }
        if self.den.len() == 1 && self.den[0].is_one() {
            write!(f, "{}", poly(&self.num))
        } else {
            write!(f, "({})/({})", poly(&self.num), poly(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// JSON shape `{"num":[c0,c1,...],"den":[...]}`; coefficients are written as
/// numbers when they fit in an `i64` and as decimal strings otherwise.
#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    num: Vec<serde_json::Value>,
    den: Vec<serde_json::Value>,
}

fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match i64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

fn coeff_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("non-integer coefficient {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad coefficient {s:?}")),
        other => Err(format!("bad coefficient {other}")),
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncJson {
            num: self.num.iter().map(coeff_to_json).collect(),
            den: self.den.iter().map(coeff_to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RatFuncJson::deserialize(d)?;
        let parse = |v: &[serde_json::Value]| {
            v.iter().map(coeff_from_json).collect::<std::result::Result<ZPoly, _>>()
        };
        let num = parse(&raw.num).map_err(D::Error::custom)?;
        let den = parse(&raw.den).map_err(D::Error::custom)?;
        RatFunc::from_parts(num, den).map_err(D::Error::custom)
    }
}
