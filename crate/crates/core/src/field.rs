//! Scalar fields: arbitrary-precision rationals, prime fields and `Q(t)`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;

/// Exact rationals, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Minimal field interface used by every solver in the crate.
///
/// Methods take references so that big-number fields avoid needless clones.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// 0 for characteristic zero.
    fn characteristic() -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn from_rational(q: &Rational) -> Result<Self> {
        let n = Self::from_bigint(q.numer());
        let d = Self::from_bigint(q.denom());
        n.div(&d)
            .ok_or_else(|| Error::Unsupported(format!("denominator of {q} vanishes in this field")))
    }

    fn from_bigint(n: &BigInt) -> Self {
        // Horner in base 2^32 keeps this generic over all fields.
        let (sign, digits) = n.to_u32_digits();
        let base = Self::from_i64(1i64 << 32);
        let mut acc = Self::zero();
        for d in digits.iter().rev() {
            acc = acc.mul(&base).add(&Self::from_i64(*d as i64));
        }
        if sign == num_bigint::Sign::Minus {
            acc.neg()
        } else {
            acc
        }
    }

    /// Row reduction hook.  The default is Gauss-Jordan elimination with the
    /// first nonzero row as pivot; rationals override it with a
    /// fraction-free variant producing the identical echelon form.
    fn row_reduce(rows: &mut Vec<Vec<Self>>, ncols: usize) -> Vec<usize> {
        gauss_jordan(rows, ncols)
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn gauss_jordan<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(prow[c..].iter()) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r.max(0));
    pivots
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic() -> u64 {
        0
    }
    fn from_rational(q: &Rational) -> Result<Self> {
        Ok(q.clone())
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn row_reduce(rows: &mut Vec<Vec<Self>>, ncols: usize) -> Vec<usize> {
        bareiss_rref(rows, ncols)
    }
}

/// Fraction-free elimination: rows are cleared to integers, eliminated with
/// Bareiss' exact-division update, back-substituted over the integers and
/// only divided by their pivots at the very end.
fn bareiss_rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for k in c..ncols {
                let v = &prow[c] * &row[k] - &f * &prow[k];
                row[k] = if prev.is_one() { v } else { v / &prev };
            }
            // Entries left of c are zero already in an echelon sweep.
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    // Integer back substitution, keeping rows primitive.
    for (k, &c) in pivots.iter().enumerate().rev() {
        let (head, tail) = m.split_at_mut(k);
        let prow = &tail[0];
        for row in head.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..ncols {
                row[j] = &prow[c] * &row[j] - &f * &prow[j];
            }
            let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
    }
    *rows = m
        .into_iter()
        .zip(pivots.iter())
        .map(|(row, &c)| {
            let p = row[c].clone();
            row.into_iter().map(|x| BigRational::new(x, p.clone())).collect()
        })
        .collect();
    pivots
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    pub fn value(self) -> u64 {
        self.0
    }
    fn pow(self, mut e: u64) -> Self {
        let mut b = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn characteristic() -> u64 {
        P
    }
    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits"))
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_i64(n: i64) -> Self {
        RatFunc::constant(&BigRational::from_integer(BigInt::from(n)))
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn characteristic() -> u64 {
        0
    }
    fn from_rational(q: &Rational) -> Result<Self> {
        Ok(RatFunc::constant(q))
    }
}

/// Primes accepted by the finite-field entry points.
pub const SUPPORTED_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Runs a const-generic body for a runtime prime.
///
/// ```
/// use adhm::{with_prime, field::{Field, Fp}};
/// let c = with_prime!(7, P => Fp::<P>::characteristic()).unwrap();
/// assert_eq!(c, 7);
/// ```
#[macro_export]
macro_rules! with_prime {
    ($p:expr, $P:ident => $body:expr) => {{
        match $p {
            3 => {
                const $P: u64 = 3;
                Ok($body)
            }
            5 => {
                const $P: u64 = 5;
                Ok($body)
            }
            7 => {
                const $P: u64 = 7;
                Ok($body)
            }
            11 => {
                const $P: u64 = 11;
                Ok($body)
            }
            13 => {
                const $P: u64 = 13;
                Ok($body)
            }
            other => Err($crate::error::Error::Unsupported(format!(
                "prime {other} is not one of {:?}",
                $crate::field::SUPPORTED_PRIMES
            ))),
        }
    }};
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_gauss_jordan_random() {
        use rand::{Rng, SeedableRng};
        let mut g = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let r = g.gen_range(1..9);
            let c = g.gen_range(1..9);
            let rank_cap = g.gen_range(1..=r.min(c));
            // Product of random r×cap and cap×c matrices, to get rank deficiency.
            let a: Vec<Vec<Rational>> = (0..r).map(|_| (0..rank_cap).map(|_| rat(g.gen_range(-3..=3), g.gen_range(1..=3))).collect()).collect();
            let b: Vec<Vec<Rational>> = (0..rank_cap).map(|_| (0..c).map(|_| rat(g.gen_range(-3..=3), 1)).collect()).collect();
            let m: Vec<Vec<Rational>> = (0..r)
                .map(|i| (0..c).map(|j| (0..rank_cap).fold(int(0), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
                .collect();
            let mut x = m.clone();
            let mut y = m.clone();
            let px = bareiss_rref(&mut x, c);
            let py = gauss_jordan(&mut y, c);
            assert_eq!(px, py, "pivots of {m:?}");
            assert_eq!(x, y, "rref of {m:?}");
        }
    }

    #[test]
    fn fp_inverse_roundtrip() {
        for a in 1..7 {
            let x = Fp::<7>::new(a);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert!(Fp::<7>::zero().inv().is_none());
    }

    #[test]
    fn from_rational_into_fp() {
        let x = Fp::<5>::from_rational(&rat(1, 2)).unwrap();
        assert_eq!(x, Fp::new(3));
        assert!(Fp::<5>::from_rational(&rat(1, 5)).is_err());
        assert_eq!(Fp::<5>::from_bigint(&BigInt::from(-7)), Fp::new(3));
    }

    #[test]
    fn generic_from_bigint_matches_native() {
        let n: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let via_horner = <RatFunc as Field>::from_bigint(&n);
        assert_eq!(via_horner, RatFunc::constant(&BigRational::from_integer(n)));
    }

    #[test]
    fn parse_and_sqrt() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 4 ").unwrap(), int(4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }

    #[test]
    fn bareiss_matches_gauss_jordan() {
        let rows = vec![
            vec![int(2), int(4), int(-2), int(1)],
            vec![rat(1, 3), int(2), int(0), int(5)],
            vec![int(1), int(2), int(-1), rat(1, 2)],
        ];
        let mut a = rows.clone();
        let mut b = rows;
        let pa = bareiss_rref(&mut a, 4);
        let pb = gauss_jordan(&mut b, 4);
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }

    #[test]
    fn prime_dispatch() {
        let r: Result<u64> = with_prime!(11, P => P * 2);
        assert_eq!(r.unwrap(), 22);
        let e: Result<u64> = with_prime!(2, P => P);
        assert!(e.is_err());
    }
}
