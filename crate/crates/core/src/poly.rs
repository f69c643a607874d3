//! Univariate polynomials over a field, characteristic polynomials and
//! rational root extraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::field::{Field, Rational};
use crate::matrix::Matrix;

/// Dense polynomial, coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![F::one()] }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => F::zero(),
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().and_then(F::inv).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty").mul(&inv);
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dj));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead().and_then(F::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul(&F::from_i64(k as i64)))
                .collect(),
        )
    }
}

/// `det(x·I − A)` by Berkowitz' division-free algorithm, so it runs over
/// any commutative coefficient ring without introducing fractions.
pub fn charpoly<F: Field>(a: &Matrix<F>) -> Poly<F> {
    assert_eq!(a.rows(), a.cols(), "charpoly of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Poly::one();
    }
    // Coefficients high degree first while iterating.
    let mut v: Vec<F> = vec![F::one(), a[(0, 0)].neg()];
    for r in 1..n {
        // Leading principal block M (r x r), row R = A[r][0..r],
        // column C = A[0..r][r], corner a = A[r][r].
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(F::one());
        toeplitz.push(a[(r, r)].neg());
        let mut col: Vec<F> = (0..r).map(|i| a[(i, r)].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(F::zero(), |acc, k| acc.add(&a[(r, k)].mul(&col[k])));
            toeplitz.push(rc.neg());
            col = (0..r)
                .map(|i| (0..r).fold(F::zero(), |acc, k| acc.add(&a[(i, k)].mul(&col[k]))))
                .collect();
        }
        let mut next = vec![F::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = F::zero();
            for (j, vj) in v.iter().enumerate() {
                if i >= j && !vj.is_zero() {
                    acc = acc.add(&toeplitz[i - j].mul(vj));
                }
            }
            *slot = acc;
        }
        v = next;
    }
    v.reverse();
    Poly::new(v)
}

/// Characteristic polynomial of a rational matrix, computed fraction-free on
/// the integer matrix `d·A` and rescaled at the end.
pub fn charpoly_rational(a: &Matrix<Rational>) -> Poly<Rational> {
    let n = a.rows();
    let d = a
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let scaled = a.map(|x| x * BigRational::from_integer(d.clone()));
    let p = charpoly(&scaled);
    // chi_A(x) = d^{-n} chi_{dA}(d x): coefficient k picks up d^{k-n}.
    let dq = BigRational::from_integer(d);
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c / num_traits::pow(dq.clone(), n - k))
            .collect(),
    )
}

/// Distinct rational roots with multiplicities, in increasing order, and the
/// total multiplicity they account for.
pub fn rational_roots(p: &Poly<Rational>) -> Vec<(Rational, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sqfree = {
        let g = p.gcd(&p.derivative());
        p.divrem(&g).0.monic()
    };
    let mut out = Vec::new();
    for r in isolate_rational_roots(&sqfree) {
        let lin = Poly::new(vec![-r.clone(), <Rational as Field>::one()]);
        let mut m = 0;
        let mut q = p.clone();
        loop {
            let (quot, rem) = q.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            m += 1;
            q = quot;
        }
        out.push((r, m));
    }
    out
}

/// Rational roots of a square-free polynomial: isolate real roots by
/// Sturm-sequence bisection until each interval is narrower than `1/|a_n|`
/// of the integer-cleared polynomial, then test the few candidates `m/a_n`
/// exactly.  No integer factorisation is needed.
fn isolate_rational_roots(f: &Poly<Rational>) -> Vec<Rational> {
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    // Clear denominators to find the integer leading coefficient.
    let l = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let lead = ints.last().expect("nonzero").abs();
    let lead_q = BigRational::from_integer(lead.clone());

    let sturm = sturm_sequence(f);
    let bound = {
        let lc = f.lead().expect("nonzero").abs();
        let m = f.coeffs()[..deg].iter().map(|c| c.abs() / &lc).fold(<Rational as Field>::zero(), |a, b| if b > a { b } else { a });
        m + <Rational as Field>::one() + <Rational as Field>::one()
    };
    let width = <Rational as Field>::one() / (&lead_q * Rational::from_integer(BigInt::from(2)));
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&sturm, &lo) as i64 - sign_changes(&sturm, &hi) as i64;
        if count <= 0 {
            continue;
        }
        if &hi - &lo > width {
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
            continue;
        }
        // Candidates m/lead with m/lead in (lo, hi].
        let lo_m = (&lo * &lead_q).floor().to_integer();
        let hi_m = (&hi * &lead_q).ceil().to_integer();
        let mut m = lo_m;
        while m <= hi_m {
            let r = BigRational::new(m.clone(), lead.clone());
            if r > lo && r <= hi && Field::is_zero(&f.eval(&r)) && !roots.contains(&r) {
                roots.push(r);
            }
            m += 1;
        }
    }
    roots.sort();
    roots
}

fn sturm_sequence(f: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-<Rational as Field>::one()));
    }
    seq
}

fn sign_changes(seq: &[Poly<Rational>], x: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    fn qp(v: &[Rational]) -> Poly<Rational> {
        Poly::new(v.to_vec())
    }

    #[test]
    fn charpoly_small() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(4)]]);
        // x^2 - 5x - 2
        assert_eq!(charpoly(&a), qp(&[int(-2), int(-5), int(1)]));
        assert_eq!(charpoly_rational(&a), qp(&[int(-2), int(-5), int(1)]));
        let b = a.map(|x| x * rat(1, 3));
        // x^2 - 5/3 x - 2/9
        assert_eq!(charpoly_rational(&b), qp(&[rat(-2, 9), rat(-5, 3), int(1)]));
        assert_eq!(charpoly(&b), charpoly_rational(&b));
    }

    #[test]
    fn charpoly_annihilates() {
        let a = Matrix::from_rows(vec![
            vec![int(2), int(-1), int(0), rat(1, 2)],
            vec![int(1), int(0), int(3), int(1)],
            vec![int(0), int(5), int(-2), int(0)],
            vec![rat(-1, 3), int(0), int(1), int(1)],
        ]);
        let p = charpoly_rational(&a);
        let mut acc = Matrix::<Rational>::zeros(4, 4);
        let mut pow = Matrix::identity(4);
        for c in p.coeffs() {
            acc = acc.add(&pow.scale(c));
            pow = pow.mul(&a);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x - 1/2)^2 (x + 3) (x^2 + 1)
        let p = qp(&[rat(-1, 2), int(1)])
            .mul(&qp(&[rat(-1, 2), int(1)]))
            .mul(&qp(&[int(3), int(1)]))
            .mul(&qp(&[int(1), int(0), int(1)]));
        let r = rational_roots(&p);
        assert_eq!(r, vec![(int(-3), 1), (rat(1, 2), 2)]);
    }

    #[test]
    fn irrational_roots_are_skipped() {
        let p = qp(&[int(-2), int(0), int(1)]);
        assert!(rational_roots(&p).is_empty());
    }

    #[test]
    fn gcd_of_polys() {
        let a = qp(&[int(-1), int(0), int(1)]);
        let b = qp(&[int(1), int(1)]);
        assert_eq!(a.gcd(&b), qp(&[int(1), int(1)]));
        let c = qp(&[int(2), int(1)]);
        assert_eq!(a.gcd(&c), Poly::one());
    }
}
