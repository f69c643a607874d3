//! Truncated torus characters in `t` (SO(3) torus), `z` (Sp(1) torus) and
//! `u = q^{-1}`, Weyl integration over Sp(1), and a brute-force oracle for
//! the graded invariants of `C[ρ^{-1}(0)]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{int, Rational};
use crate::linalg::Subspace;
use crate::matrix::Matrix;

/// Integer Laurent polynomial in `t, z`, keyed by `(deg_t, deg_z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: i64, t: i32, z: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, t, z);
        p
    }

    pub fn from_terms(terms: &[(i64, i32, i32)]) -> Self {
        let mut p = Self::zero();
        for &(c, t, z) in terms {
            p.add_term(c, t, z);
        }
        p
    }

    fn add_term(&mut self, c: i64, t: i32, z: i32) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((t, z)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(t, z));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: i32, z: i32) -> i64 {
        self.terms.get(&(t, z)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, i64)> + '_ {
        self.terms.iter().map(|(&(t, z), &c)| (t, z, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (t, z, c) in o.terms() {
            r.add_term(c, t, z);
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (t1, z1, c1) in self.terms() {
            for (t2, z2, c2) in o.terms() {
                r.add_term(c1 * c2, t1 + t2, z1 + z2);
            }
        }
        r
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Value at `t = z = 1`.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_z_free(&self) -> bool {
        self.terms.keys().all(|&(_, z)| z == 0)
    }
}

fn fmt_monomial(t: i32, z: i32) -> String {
    let var = |name: &str, e: i32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    let parts: Vec<String> = [var("t", t), var("z", z)].into_iter().filter(|s| !s.is_empty()).collect();
    parts.join("")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Descending in t then z, so `t + 1 + t^-1` reads naturally.
        let mut out = String::new();
        for (i, (&(t, z), &c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(t, z);
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            let a = c.abs();
            match (a, mono.is_empty()) {
                (_, true) => out.push_str(&a.to_string()),
                (1, false) => out.push_str(&mono),
                _ => out.push_str(&format!("{a}{mono}")),
            }
        }
        write!(f, "{out}")
    }
}

/// `Σ_{a ≤ U} c_a u^a` with Laurent-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![LaurentPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant term");
        TruncSeries { coeffs }
    }

    /// `1 + c u^a` (e.g. a Koszul factor with `c = -m`).
    pub fn binomial(order: usize, c: &LaurentPoly, a: usize) -> Self {
        let mut s = Self::one(order);
        if a <= order {
            s.coeffs[a] = s.coeffs[a].add(c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, a: usize) -> &LaurentPoly {
        &self.coeffs[a]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries { coeffs: (0..=n).map(|a| self.coeffs[a].add(&o.coeffs[a])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        TruncSeries { coeffs: (0..=n).map(|a| self.coeffs[a].sub(&o.coeffs[a])).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut r = Self::zero(n);
        for a in 0..=n {
            if self.coeffs[a].is_zero() {
                continue;
            }
            for b in 0..=n - a {
                r.coeffs[a + b] = r.coeffs[a + b].add(&self.coeffs[a].mul(&o.coeffs[b]));
            }
        }
        r
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<[i64; 3]>> = self.coeffs.iter().map(|p| p.terms().map(|(t, z, c)| [t as i64, z as i64, c]).collect()).collect();
        serde_json::json!({ "order": self.order(), "coeffs": rows })
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let single = c.terms().count() == 1;
            let body = if single || a == 0 { c.to_string() } else { format!("({c})") };
            parts.push(match a {
                0 => body,
                1 => format!("{body} u"),
                _ => format!("{body} u^{a}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ_s m^s u^{as}` up to `u^U`, the expansion of `1/(1 - m u^a)`.
pub fn geometric_inverse(m: &LaurentPoly, a: usize, order: usize) -> Result<TruncSeries> {
    if a == 0 {
        return Err(Error::Unsupported("geometric inverse needs a positive u-degree".into()));
    }
    let mut s = TruncSeries::zero(order);
    let mut p = LaurentPoly::one();
    let mut e = 0;
    while e <= order {
        s.coeffs[e] = p.clone();
        p = p.mul(m);
        e += a;
    }
    Ok(s)
}

/// Weights `t^a z^b` of the coordinate functions on `Hom(C^3, C^2)`.
fn hom_weights() -> Vec<(i32, i32)> {
    let mut w = Vec::new();
    for z in [1, -1] {
        for t in [1, 0, -1] {
            w.push((t, z));
        }
    }
    w
}

/// `1 / (P(zu) P(z^{-1}u))` with `P(x) = (1 - x)(1 - tx)(1 - t^{-1}x)`.
pub fn char_coordinate_ring(order: usize) -> TruncSeries {
    hom_weights().into_iter().fold(TruncSeries::one(order), |acc, (t, z)| {
        acc.mul(&geometric_inverse(&LaurentPoly::monomial(1, t, z), 1, order).expect("a = 1"))
    })
}

/// The Koszul factors `(1 - u^2)(1 - z^2 u^2)(1 - z^{-2} u^2)` of `sp(1)^∨`.
pub fn koszul_factors(order: usize) -> TruncSeries {
    [0, 2, -2]
        .into_iter()
        .fold(TruncSeries::one(order), |acc, z| acc.mul(&TruncSeries::binomial(order, &LaurentPoly::monomial(-1, 0, z), 2)))
}

pub fn koszul_character(order: usize) -> TruncSeries {
    char_coordinate_ring(order).mul(&koszul_factors(order))
}

/// `½ CT_z[(1 - z^2)(1 - z^{-2}) χ]` on a single Laurent polynomial.
pub fn weyl_integrate_poly(p: &LaurentPoly) -> Result<LaurentPoly> {
    let mut by_t: BTreeMap<i32, i64> = BTreeMap::new();
    for (t, z, c) in p.terms() {
        let w = match z {
            0 => 2,
            2 | -2 => -1,
            _ => 0,
        };
        *by_t.entry(t).or_insert(0) += w * c;
    }
    let mut out = LaurentPoly::zero();
    for (t, c) in by_t {
        if c % 2 != 0 {
            return Err(Error::InvariantViolation(format!("Weyl integral has a half-integer coefficient at t^{t}")));
        }
        out.add_term(c / 2, t, 0);
    }
    Ok(out)
}

pub fn weyl_integrate_sp1(s: &TruncSeries) -> Result<TruncSeries> {
    Ok(TruncSeries { coeffs: s.coeffs.iter().map(weyl_integrate_poly).collect::<Result<_>>()? })
}

/// `1 + (t + 1 + t^{-1}) u^2`.
pub fn expected_rho(order: usize) -> TruncSeries {
    let mut s = TruncSeries::one(order);
    if order >= 2 {
        s.coeffs[2] = LaurentPoly::from_terms(&[(1, 1, 0), (1, 0, 0), (1, -1, 0)]);
    }
    s
}

/// The invariant character of `C[ρ^{-1}(0)]`, checked against its closed form.
pub fn hilbert_rho(order: usize) -> Result<TruncSeries> {
    if order < 3 {
        return Err(Error::Unsupported("truncation order must be at least 3".into()));
    }
    let got = weyl_integrate_sp1(&koszul_character(order))?;
    let want = expected_rho(order);
    for a in 0..=order {
        if got.coeffs[a] != want.coeffs[a] {
            return Err(Error::SeriesMismatch { order: a, expected: want.coeffs[a].to_string(), got: got.coeffs[a].to_string() });
        }
    }
    Ok(got)
}

/// `1 / ((1 - t u^2)(1 - u^2)(1 - t^{-1} u^2))`: the character of `C[o(3)]`.
pub fn char_o3(order: usize) -> TruncSeries {
    [1, 0, -1].into_iter().fold(TruncSeries::one(order), |acc, t| {
        acc.mul(&geometric_inverse(&LaurentPoly::monomial(1, t, 0), 2, order).expect("a = 2"))
    })
}

/// Character of the ideal `(x, y, z)^2 ⊂ C[o(3)]` by listing its monomials.
pub fn char_o3_square_ideal(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    for deg in 2..=order / 2 {
        // x^a y^b z^c with weights t, 1, t^{-1}
        for a in 0..=deg {
            for c in 0..=deg - a {
                s.coeffs[2 * deg].add_term(1, a as i32 - c as i32, 0);
            }
        }
    }
    s
}

/// Character of `C[o(3)] / (x, y, z)^2` compared with the invariant character.
pub fn cor_a1_check(order: usize) -> Result<TruncSeries> {
    let quotient = char_o3(order).sub(&char_o3_square_ideal(order));
    let rho = hilbert_rho(order)?;
    if quotient != rho {
        let a = (0..=order).find(|&a| quotient.coeffs[a] != rho.coeffs[a]).unwrap_or(0);
        return Err(Error::SeriesMismatch { order: a, expected: rho.coeffs[a].to_string(), got: quotient.coeffs[a].to_string() });
    }
    Ok(quotient)
}

/// Per-degree data of the invariant oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleDegree {
    pub degree: usize,
    pub monomials: usize,
    pub ideal_dim: usize,
    /// `(t-weight, multiplicity)` of the invariants.
    pub invariant_weights: Vec<(i32, usize)>,
}

impl OracleDegree {
    pub fn character(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(t, m) in &self.invariant_weights {
            p.add_term(m as i64, t, 0);
        }
        p
    }
}

type Monomial = [u8; 6];

fn monomials(deg: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == 5 {
            cur[5] = left as u8;
            out.push(*cur);
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, deg, &mut [0; 6], &mut out);
    out
}

/// Sparse polynomial over `Z` in the six coordinates `x_{r,c}`, variable
/// index `3r + c`.
type Poly = BTreeMap<Monomial, i64>;

fn var(i: usize) -> Monomial {
    let mut m = [0; 6];
    m[i] = 1;
    m
}

fn poly_mul_mono(p: &Poly, m: &Monomial) -> Poly {
    p.iter()
        .map(|(k, &c)| {
            let mut e = *k;
            for i in 0..6 {
                e[i] += m[i];
            }
            (e, c)
        })
        .collect()
}

/// The entries of `i G_W^{-1} i^T` for the hyperbolic-plus-unit form on
/// `W`: `S_rs = x_{r0} x_{s1} + x_{r1} x_{s0} + x_{r2} x_{s2}`.
fn moment_quadrics() -> Vec<Poly> {
    let mut out = Vec::new();
    for (r, s) in [(0, 0), (0, 1), (1, 1)] {
        let mut p = Poly::new();
        for (a, b) in [(0, 1), (1, 0), (2, 2)] {
            let mut m = var(3 * r + a);
            m[3 * s + b] += 1;
            *p.entry(m).or_insert(0) += 1;
        }
        out.push(p);
    }
    out
}

/// Derivation of the `sl2` element acting on `V = C^2` by `ξ`, on
/// coordinate functions: `x_{r,c} ↦ -Σ_s ξ_{rs} x_{s,c}`.
fn derivation(m: &Monomial, xi: [[i64; 2]; 2]) -> Poly {
    let mut out = Poly::new();
    for i in 0..6 {
        if m[i] == 0 {
            continue;
        }
        let (r, c) = (i / 3, i % 3);
        for s in 0..2 {
            let coef = -xi[r][s] * m[i] as i64;
            if coef == 0 {
                continue;
            }
            let mut e = *m;
            e[i] -= 1;
            e[3 * s + c] += 1;
            *out.entry(e).or_insert(0) += coef;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn t_weight(m: &Monomial) -> i32 {
    let w = [1, -1, 0];
    (0..6).map(|i| m[i] as i32 * w[i % 3]).sum()
}

/// Joint kernel of `E`, `F` on the degree-`deg` part of `C[Hom(C^3, C^2)] / (ii^*)`,
/// split by `t`-weight.
pub fn oracle_degree(deg: usize) -> OracleDegree {
    let monos = monomials(deg);
    let index: BTreeMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = monos.len();
    let to_vec = |p: &Poly| {
        let mut v = vec![int(0); n];
        for (m, &c) in p {
            v[index[m]] = int(c);
        }
        v
    };
    let ideal_gens: Vec<Vec<Rational>> = if deg >= 2 {
        let q = moment_quadrics();
        monomials(deg - 2).iter().flat_map(|m| q.iter().map(|g| to_vec(&poly_mul_mono(g, m))).collect::<Vec<_>>()).collect()
    } else {
        Vec::new()
    };
    let ideal = Subspace::span(n, &ideal_gens).expect("ambient length");
    let e = [[0, 1], [0, 0]];
    let f = [[0, 0], [1, 0]];
    let mut weights: BTreeMap<i32, usize> = BTreeMap::new();
    let mut by_weight: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, m) in monos.iter().enumerate() {
        by_weight.entry(t_weight(m)).or_default().push(i);
    }
    for (w, idx) in &by_weight {
        // f ↦ (E f, F f) modulo the ideal; the kernel contains the ideal part.
        let cols: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| {
                let mut v = ideal.reduce(&to_vec(&derivation(&monos[i], e)));
                v.extend(ideal.reduce(&to_vec(&derivation(&monos[i], f))));
                v
            })
            .collect();
        let map = Matrix::from_cols(&cols, 2 * n);
        let ker = crate::linalg::kernel_basis(&map);
        // The ideal is t-homogeneous, so its echelon rows are too.
        let ideal_here = ideal.pivots().iter().filter(|p| idx.contains(p)).count();
        let inv = ker.dim() - ideal_here;
        if inv > 0 {
            weights.insert(*w, inv);
        }
    }
    OracleDegree { degree: deg, monomials: n, ideal_dim: ideal.dim(), invariant_weights: weights.into_iter().collect() }
}

/// Oracle for degrees `0..=max_degree` (at most 8).
pub fn invariants_oracle(max_degree: usize) -> Result<Vec<OracleDegree>> {
    if max_degree > 8 {
        return Err(Error::Unsupported("oracle degree is capped at 8".into()));
    }
    Ok((0..=max_degree).map(oracle_degree).collect())
}

/// Oracle degree `e` sits at `u^e`: each coordinate function has `u`-weight 1.
pub fn oracle_matches(oracle: &[OracleDegree], series: &TruncSeries) -> bool {
    oracle.iter().all(|o| o.degree > series.order() || o.character() == *series.coeff(o.degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i32, i32)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }

    #[test]
    fn geometric() {
        let g = geometric_inverse(&LaurentPoly::one(), 1, 2).unwrap();
        assert_eq!(g.coeffs(), &[LaurentPoly::one(), LaurentPoly::one(), LaurentPoly::one()]);
        let tz = lp(&[(1, 1, 1)]);
        let g = geometric_inverse(&tz, 1, 2).unwrap();
        assert_eq!(g.coeff(2), &lp(&[(1, 2, 2)]));
        let back = g.mul(&TruncSeries::binomial(2, &tz.neg(), 1));
        assert_eq!(back, TruncSeries::one(2));
        assert!(geometric_inverse(&tz, 0, 2).is_err());
    }

    #[test]
    fn coordinate_ring_low_orders() {
        let c = char_coordinate_ring(3);
        assert_eq!(c.coeff(0), &LaurentPoly::one());
        let want = lp(&[(1, 1, 0), (1, 0, 0), (1, -1, 0)]).mul(&lp(&[(1, 0, 1), (1, 0, -1)]));
        assert_eq!(c.coeff(1), &want);
        // Sym² of six weights: 21 monomials
        assert_eq!(c.coeff(2).total(), 21);
        let mut sym2 = LaurentPoly::zero();
        let w = hom_weights();
        for a in 0..6 {
            for b in a..6 {
                sym2 = sym2.add(&LaurentPoly::monomial(1, w[a].0 + w[b].0, w[a].1 + w[b].1));
            }
        }
        assert_eq!(c.coeff(2), &sym2);
    }

    #[test]
    fn koszul() {
        let k = koszul_character(4);
        assert_eq!(k.coeff(0), &LaurentPoly::one());
        assert_eq!(k.coeff(2).total(), 18);
        let mut back = k.clone();
        for z in [0, 2, -2] {
            back = back.mul(&geometric_inverse(&LaurentPoly::monomial(1, 0, z), 2, 4).unwrap());
        }
        assert_eq!(back, char_coordinate_ring(4));
    }

    #[test]
    fn weyl_small_reps() {
        assert_eq!(weyl_integrate_poly(&LaurentPoly::one()).unwrap(), LaurentPoly::one());
        let v = lp(&[(1, 0, 1), (1, 0, -1)]);
        assert!(weyl_integrate_poly(&v).unwrap().is_zero());
        assert_eq!(weyl_integrate_poly(&v.mul(&v)).unwrap(), LaurentPoly::one());
        // Sym^2 of the vector rep (adjoint) has no invariants; Sym^4 neither.
        let adj = lp(&[(1, 0, 2), (1, 0, 0), (1, 0, -2)]);
        assert!(weyl_integrate_poly(&adj).unwrap().is_zero());
        assert_eq!(weyl_integrate_poly(&adj.mul(&adj)).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn rho_and_display() {
        let r = hilbert_rho(8).unwrap();
        assert_eq!(r.to_string(), "1 + (t+1+t^-1) u^2");
        assert_eq!(r.coeffs().iter().map(LaurentPoly::total).sum::<i64>(), 4);
        for u in 3..=10 {
            assert_eq!(hilbert_rho(u).unwrap().truncate(3), hilbert_rho(3).unwrap());
        }
        assert!(hilbert_rho(2).is_err());
        assert!(cor_a1_check(8).is_ok());
    }

    #[test]
    fn oracle_low_degrees() {
        let o = invariants_oracle(3).unwrap();
        assert_eq!(o[0].character(), LaurentPoly::one());
        assert!(o[1].character().is_zero());
        assert_eq!(o[2].character(), lp(&[(1, 1, 0), (1, 0, 0), (1, -1, 0)]));
        assert!(o[3].character().is_zero());
        assert!(oracle_matches(&o, &hilbert_rho(8).unwrap()));
    }
}
