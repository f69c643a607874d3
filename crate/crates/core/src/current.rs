//! The truncated current algebra `g_d = sl2 ⊗ C[z]/(z^{d+1})` acting on
//! `V_d = T ⊗ C[z]/(z^{d+1})`, `T = C²` with `(e1, e2)_T = 1`.
//!
//! Coordinates: `V_d` uses index `2m + r` for the `r`-th component of the
//! `z^m` coefficient; `g_d` uses `3m + {0: E, 1: F, 2: H}`.

use serde::{Deserialize, Serialize};

use crate::adhm::{BilinearForm, FormKind};
use crate::error::{dim_err, Error, Result};
use crate::field::{int, parse_rational, Field, Rational};
use crate::linalg::{kernel_basis, rank, Subspace};
use crate::matrix::Matrix;

/// Element of `V_d`: `d + 1` coefficient vectors in `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurrentVec<F: Field = Rational> {
    d: usize,
    coeffs: Vec<[F; 2]>,
}

/// Element of `g_d`: `d + 1` traceless 2×2 coefficients `[[h, e], [f, -h]]`,
/// stored as `[e, f, h]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurrentMat<F: Field = Rational> {
    d: usize,
    coeffs: Vec<[F; 3]>,
}

fn pair<F: Field>(u: &[F; 2], v: &[F; 2]) -> F {
    u[0].mul(&v[1]).sub(&u[1].mul(&v[0]))
}

fn apply<F: Field>(x: &[F; 3], v: &[F; 2]) -> [F; 2] {
    let [e, f, h] = x;
    [h.mul(&v[0]).add(&e.mul(&v[1])), f.mul(&v[0]).sub(&h.mul(&v[1]))]
}

impl<F: Field> CurrentVec<F> {
    pub fn new(d: usize, coeffs: Vec<[F; 2]>) -> Result<Self> {
        if coeffs.len() != d + 1 {
            return Err(dim_err(format!("V_{d} needs {} coefficients, got {}", d + 1, coeffs.len())));
        }
        Ok(CurrentVec { d, coeffs })
    }

    pub fn zero(d: usize) -> Self {
        CurrentVec { d, coeffs: vec![[F::zero(), F::zero()]; d + 1] }
    }

    /// `e_r z^m` with `r ∈ {0, 1}` for `e1`, `e2`.
    pub fn basis(d: usize, r: usize, m: usize) -> Self {
        let mut v = Self::zero(d);
        v.coeffs[m][r] = F::one();
        v
    }

    pub fn from_coords(d: usize, c: &[F]) -> Result<Self> {
        if c.len() != 2 * (d + 1) {
            return Err(dim_err("V_d coordinate vector"));
        }
        Ok(CurrentVec { d, coeffs: c.chunks(2).map(|p| [p[0].clone(), p[1].clone()]).collect() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[[F; 2]] {
        &self.coeffs
    }

    pub fn coords(&self) -> Vec<F> {
        self.coeffs.iter().flat_map(|p| p.iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p[0].is_zero() && p[1].is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        CurrentVec { d: self.d, coeffs: self.coeffs.iter().map(|p| [p[0].mul(c), p[1].mul(c)]).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        CurrentVec {
            d: self.d,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| [a[0].add(&b[0]), a[1].add(&b[1])]).collect(),
        }
    }
}

impl<F: Field> CurrentMat<F> {
    pub fn zero(d: usize) -> Self {
        CurrentMat { d, coeffs: vec![[F::zero(), F::zero(), F::zero()]; d + 1] }
    }

    /// `s z^m` with `s ∈ {0: E, 1: F, 2: H}`.
    pub fn basis(d: usize, s: usize, m: usize) -> Self {
        let mut x = Self::zero(d);
        x.coeffs[m][s] = F::one();
        x
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[[F; 3]] {
        &self.coeffs
    }

    pub fn coords(&self) -> Vec<F> {
        self.coeffs.iter().flat_map(|p| p.iter().cloned()).collect()
    }

    /// The 2×2 matrix of the `z^m` coefficient.
    pub fn coeff_matrix(&self, m: usize) -> Matrix<F> {
        let [e, f, h] = &self.coeffs[m];
        Matrix::from_rows(vec![vec![h.clone(), e.clone()], vec![f.clone(), h.neg()]])
    }

    /// Multiplication by `z^s`, truncated.
    pub fn shift(&self, s: usize) -> Self {
        let mut out = Self::zero(self.d);
        for m in 0..=self.d {
            if m + s <= self.d {
                out.coeffs[m + s] = self.coeffs[m].clone();
            }
        }
        out
    }

    pub fn act(&self, v: &CurrentVec<F>) -> Result<CurrentVec<F>> {
        if v.d != self.d {
            return Err(dim_err("current algebra degree mismatch"));
        }
        let mut out = CurrentVec::<F>::zero(self.d);
        for a in 0..=self.d {
            for b in 0..=self.d - a {
                let w = apply(&self.coeffs[a], &v.coeffs[b]);
                let o = &mut out.coeffs[a + b];
                o[0] = o[0].add(&w[0]);
                o[1] = o[1].add(&w[1]);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.iter().all(Field::is_zero))
    }
}

/// `Res_{z=0} (f, g)_{T[z]} / z^{d+1}`.
pub fn residue_form<F: Field>(f: &CurrentVec<F>, g: &CurrentVec<F>) -> Result<F> {
    if f.d != g.d {
        return Err(dim_err("residue form degree mismatch"));
    }
    let d = f.d;
    Ok((0..=d).fold(F::zero(), |acc, a| acc.add(&pair(&f.coeffs[a], &g.coeffs[d - a]))))
}

/// Gram matrix of the residue form on the monomial basis.
pub fn residue_gram<F: Field>(d: usize) -> Matrix<F> {
    let n = 2 * (d + 1);
    Matrix::from_fn(n, n, |r, c| {
        let (a, b) = (r / 2, c / 2);
        if a + b != d {
            F::zero()
        } else {
            match (r % 2, c % 2) {
                (0, 1) => F::one(),
                (1, 0) => F::one().neg(),
                _ => F::zero(),
            }
        }
    })
}

/// Lowest index of a nonzero coefficient; `d + 1` for zero.
pub fn min_deg<F: Field>(x: &CurrentVec<F>) -> usize {
    x.coeffs.iter().position(|p| !(p[0].is_zero() && p[1].is_zero())).unwrap_or(x.d + 1)
}

/// Matrix of `ξ ↦ ξ.x`, `g_d → V_d`.
pub fn action_map<F: Field>(x: &CurrentVec<F>) -> Matrix<F> {
    let d = x.d;
    let cols: Vec<Vec<F>> = (0..=d)
        .flat_map(|m| (0..3).map(move |s| (m, s)))
        .map(|(m, s)| CurrentMat::basis(d, s, m).act(x).expect("same degree").coords())
        .collect();
    Matrix::from_cols(&cols, 2 * (d + 1))
}

/// A traceless `ξ` with `ξ u = r`, for `u ≠ 0`.
fn sl2_preimage<F: Field>(u: &[F; 2], r: &[F; 2]) -> [F; 3] {
    let [a, b] = u;
    if let Some(ai) = a.inv() {
        let h = r[0].mul(&ai);
        let f = r[1].add(&h.mul(b)).mul(&ai);
        [F::zero(), f, h]
    } else {
        let bi = b.inv().expect("nonzero vector");
        [r[0].mul(&bi), F::zero(), r[1].neg().mul(&bi)]
    }
}

/// Basis of the stabilizer `g_d^x`.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerBasis<F: Field = Rational> {
    pub n: usize,
    /// Generator with `min.deg ξ = 0`; absent for `x = 0`.
    pub xi: Option<CurrentMat<F>>,
    pub basis: Vec<CurrentMat<F>>,
}

impl<F: Field> StabilizerBasis<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn span(&self, d: usize) -> Subspace<F> {
        let v: Vec<Vec<F>> = self.basis.iter().map(CurrentMat::coords).collect();
        Subspace::span(3 * (d + 1), &v).expect("ambient length")
    }
}

/// Stabilizer by lifting a rank-one annihilator of the leading coefficient:
/// `C[z]ξ + z^{d+1-n} g_d`.
pub fn stabilizer<F: Field>(x: &CurrentVec<F>) -> StabilizerBasis<F> {
    let d = x.d;
    let n = min_deg(x);
    let mut basis = Vec::new();
    let mut xi = None;
    if n <= d {
        let [a, b] = &x.coeffs[n];
        let mut g = CurrentMat::zero(d);
        g.coeffs[0] = [a.mul(a), b.mul(b).neg(), a.mul(b).neg()];
        for m in 0..d - n {
            // Coefficient of z^{n+m+1} in (ξ_0 + … + ξ_m z^m) x, to be cancelled.
            let mut r = [F::zero(), F::zero()];
            for l in 0..=m {
                let w = apply(&g.coeffs[l], &x.coeffs[n + m + 1 - l]);
                r[0] = r[0].sub(&w[0]);
                r[1] = r[1].sub(&w[1]);
            }
            g.coeffs[m + 1] = sl2_preimage(&x.coeffs[n], &r);
        }
        for m in 0..=d - n {
            basis.push(g.shift(m));
        }
        xi = Some(g);
    }
    for m in d + 1 - n..=d {
        for s in 0..3 {
            basis.push(CurrentMat::basis(d, s, m));
        }
    }
    StabilizerBasis { n, xi, basis }
}

/// Stabilizer basis cross-checked against the kernel of the action map.
pub fn stabilizer_checked<F: Field>(x: &CurrentVec<F>) -> Result<StabilizerBasis<F>> {
    let s = stabilizer(x);
    let d = x.d;
    for g in &s.basis {
        if !g.act(x)?.is_zero() {
            return Err(Error::InvariantViolation("stabilizer element does not annihilate x".into()));
        }
    }
    let span = s.span(d);
    if span.dim() != s.dim() {
        return Err(Error::InvariantViolation("stabilizer basis is dependent".into()));
    }
    if span != kernel_basis(&action_map(x)) {
        return Err(Error::InvariantViolation("stabilizer differs from the kernel of the action map".into()));
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StratumData {
    pub n: usize,
    pub orbit_dim: usize,
    pub stratum_dim: usize,
}

pub fn stratum_data<F: Field>(x: &CurrentVec<F>) -> Result<StratumData> {
    let d = x.d;
    let s = stabilizer(x);
    let orbit_dim = 3 * (d + 1) - s.dim();
    if orbit_dim != orbit_tangent_rank(x) {
        return Err(Error::InvariantViolation("orbit dimension differs from the action-map rank".into()));
    }
    Ok(StratumData { n: s.n, orbit_dim, stratum_dim: 2 * (d + 1 - s.n) })
}

pub fn orbit_tangent_rank<F: Field>(x: &CurrentVec<F>) -> usize {
    rank(&action_map(x))
}

/// `(½ (ξ_a.v, v))_a` over the stabilizer basis of `x`.
pub fn mu_x_eval<F: Field>(x: &CurrentVec<F>, v: &CurrentVec<F>) -> Result<Vec<F>> {
    mu_on_basis(&stabilizer(x).basis, v)
}

pub fn mu_on_basis<F: Field>(basis: &[CurrentMat<F>], v: &CurrentVec<F>) -> Result<Vec<F>> {
    let half = F::from_i64(2).inv().ok_or_else(|| Error::Unsupported("characteristic 2".into()))?;
    basis.iter().map(|g| Ok(residue_form(&g.act(v)?, v)?.mul(&half))).collect()
}

/// Gram matrices `M_a` with `v^T M_a v = ½ (ξ_a.v, v)`, symmetric.
pub fn mu_grams<F: Field>(basis: &[CurrentMat<F>], d: usize) -> Result<Vec<Matrix<F>>> {
    let g = residue_gram::<F>(d);
    let quarter = F::from_i64(4).inv().ok_or_else(|| Error::Unsupported("characteristic 2".into()))?;
    basis
        .iter()
        .map(|xi| {
            // (ξv, v) = v^T A^T G v with A the action matrix of ξ.
            let cols: Vec<Vec<F>> = (0..2 * (d + 1))
                .map(|c| xi.act(&CurrentVec::from_coords(d, &unit::<F>(2 * (d + 1), c))?).map(|w| w.coords()))
                .collect::<Result<_>>()?;
            let a = Matrix::from_cols(&cols, 2 * (d + 1));
            let q = a.transpose().mul(&g);
            Ok(q.add(&q.transpose()).scale(&quarter))
        })
        .collect()
}

fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

/// `z^a C[z] e1 + z^b V_d` with `a = ⌊(n-1)/2⌋ + 1`, `b = ⌊d/2⌋ + 1`.
pub fn claimed_fiber<F: Field>(d: usize, n: usize) -> Result<Subspace<F>> {
    if n > d + 1 {
        return Err(Error::Unsupported(format!("min.deg {n} exceeds d + 1 = {}", d + 1)));
    }
    let a = ((n as i64 - 1).div_euclid(2) + 1) as usize;
    let b = d / 2 + 1;
    let mut vecs = Vec::new();
    for m in a..=d {
        vecs.push(CurrentVec::<F>::basis(d, 0, m).coords());
    }
    for m in b..=d {
        vecs.push(CurrentVec::<F>::basis(d, 1, m).coords());
    }
    Subspace::span(2 * (d + 1), &vecs)
}

/// `V_d` with its residue form, `B` = multiplication by `z`, and the
/// action matrices of a basis of `g_d`.
#[derive(Clone, Debug)]
pub struct NilpotentEmbedding {
    pub form: BilinearForm,
    pub b: Matrix<Rational>,
    pub images: Vec<Matrix<Rational>>,
    /// Dimension of the commutant of `B` inside `sp(V)`.
    pub commutant_dim: usize,
}

pub fn generic_nilpotent_embedding(d: usize) -> Result<NilpotentEmbedding> {
    let n = 2 * (d + 1);
    let form = BilinearForm::new(FormKind::Alternating, residue_gram::<Rational>(d))?;
    let b = Matrix::from_fn(n, n, |r, c| if r == c + 2 { int(1) } else { int(0) });
    if crate::adhm::adjoint_endo(&b, &form)? != b {
        return Err(Error::InvariantViolation("multiplication by z is not self-adjoint".into()));
    }
    let images: Vec<Matrix<Rational>> = (0..=d)
        .flat_map(|m| (0..3).map(move |s| (m, s)))
        .map(|(m, s)| {
            let g = CurrentMat::<Rational>::basis(d, s, m);
            let cols: Vec<Vec<Rational>> = (0..n)
                .map(|c| g.act(&CurrentVec::from_coords(d, &unit(n, c)).expect("length")).expect("degree").coords())
                .collect();
            Matrix::from_cols(&cols, n)
        })
        .collect();
    // Unknown M (column-major): MB - BM = 0 and M^T G + G M = 0.
    let g = form.gram();
    let cols: Vec<Vec<Rational>> = (0..n * n)
        .map(|k| {
            let m = Matrix::from_col_major(n, n, &unit(n * n, k));
            let mut col = m.mul(&b).sub(&b.mul(&m)).vec_col_major();
            col.extend(m.transpose().mul(g).add(&g.mul(&m)).vec_col_major());
            col
        })
        .collect();
    let commutant = kernel_basis(&Matrix::from_cols(&cols, 2 * n * n));
    let image = Subspace::span(n * n, &images.iter().map(Matrix::vec_col_major).collect::<Vec<_>>())?;
    if image != commutant {
        return Err(Error::InvariantViolation(format!(
            "commutant of B in sp(V) has dim {}, image of g_d has dim {}",
            commutant.dim(),
            image.dim()
        )));
    }
    Ok(NilpotentEmbedding { form, b, images, commutant_dim: commutant.dim() })
}

#[derive(Serialize, Deserialize)]
struct CurrentVecJson {
    d: usize,
    coeffs: Vec<[serde_json::Value; 2]>,
}

fn scalar_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

impl CurrentVec<Rational> {
    pub fn to_field<G: Field>(&self) -> Result<CurrentVec<G>> {
        let coeffs = self.coeffs.iter().map(|p| Ok([G::from_rational(&p[0])?, G::from_rational(&p[1])?])).collect::<Result<_>>()?;
        Ok(CurrentVec { d: self.d, coeffs })
    }

    /// `{"d": D, "coeffs": [[a, b], ...]}`; entries are integers or "p/q".
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: CurrentVecJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|[a, b]| Ok([scalar_from_json(a)?, scalar_from_json(b)?]))
            .collect::<Result<Vec<_>>>()?;
        CurrentVec::new(j.d, coeffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.d,
            "coeffs": self.coeffs.iter().map(|p| [p[0].to_string(), p[1].to_string()]).collect::<Vec<_>>(),
        })
    }

    /// Shorthands `0`, `e1`, `e2`, `e1z3`, `e2z^2`.
    pub fn parse_shorthand(d: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(d));
        }
        let (r, rest) = match s.get(..2) {
            Some("e1") => (0, &s[2..]),
            Some("e2") => (1, &s[2..]),
            _ => return Err(Error::Parse(format!("unrecognised vector {s:?}"))),
        };
        let m = if rest.is_empty() {
            0
        } else {
            let e = rest.strip_prefix('z').ok_or_else(|| Error::Parse(format!("unrecognised vector {s:?}")))?;
            let e = e.strip_prefix('^').unwrap_or(e);
            if e.is_empty() {
                1
            } else {
                e.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?
            }
        };
        if m > d {
            return Err(Error::Unsupported(format!("z^{m} vanishes in V_{d}")));
        }
        Ok(Self::basis(d, r, m))
    }
}

impl CurrentMat<Rational> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.d,
            "coeffs": self.coeffs.iter().map(|c| {
                let [e, f, h] = c;
                [[h.to_string(), e.to_string()], [f.to_string(), (-h).to_string()]]
            }).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type V = CurrentVec<Rational>;

    #[test]
    fn residue_examples() {
        let d = 3;
        assert_eq!(residue_form(&V::basis(d, 0, d), &V::basis(d, 1, 0)).unwrap(), int(1));
        let f = V::new(1, vec![[int(1), int(2)], [int(-1), int(3)]]).unwrap();
        assert_eq!(residue_form(&f, &f).unwrap(), int(0));
        for d in 0..=6 {
            assert!(crate::linalg::inverse(&residue_gram::<Rational>(d)).is_ok());
        }
    }

    #[test]
    fn min_deg_examples() {
        assert_eq!(min_deg(&V::zero(4)), 5);
        assert_eq!(min_deg(&V::basis(4, 0, 0)), 0);
        assert_eq!(min_deg(&V::basis(4, 1, 3)), 3);
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer_checked(&V::zero(2)).unwrap().dim(), 9);
        for d in 0..=4 {
            let s = stabilizer_checked(&V::basis(d, 0, 0)).unwrap();
            assert_eq!(s.dim(), d + 1);
            assert_eq!(s.xi.unwrap(), CurrentMat::basis(d, 0, 0));
        }
        assert_eq!(stabilizer_checked(&V::basis(3, 0, 3)).unwrap().dim(), 1 + 9);
    }

    #[test]
    fn stabilizer_lifts_nontrivial_tail() {
        let x = V::new(3, vec![[int(0), int(2)], [int(1), int(-1)], [int(3), int(0)], [int(0), int(5)]]).unwrap();
        let s = stabilizer_checked(&x).unwrap();
        assert_eq!(s.dim(), 4);
    }

    #[test]
    fn strata() {
        let e1 = V::basis(2, 0, 0);
        assert_eq!(stratum_data(&e1).unwrap(), StratumData { n: 0, orbit_dim: 6, stratum_dim: 6 });
        assert_eq!(stratum_data(&V::zero(2)).unwrap(), StratumData { n: 3, orbit_dim: 0, stratum_dim: 0 });
        assert_eq!(stratum_data(&V::basis(1, 1, 1)).unwrap(), StratumData { n: 1, orbit_dim: 2, stratum_dim: 2 });
    }

    #[test]
    fn mu_x_b_squared() {
        let x = V::basis(0, 0, 0);
        let v = V::new(0, vec![[int(3), int(5)]]).unwrap();
        // ½ (E v, v) = ½ b²
        assert_eq!(mu_x_eval(&x, &v).unwrap(), vec![Rational::new(25.into(), 2.into())]);
        let c = int(-2);
        let scaled = mu_x_eval(&x, &v.scale(&c)).unwrap();
        assert_eq!(scaled[0], mu_x_eval(&x, &v).unwrap()[0].clone() * int(4));
    }

    #[test]
    fn grams_agree_with_eval() {
        let x = V::basis(2, 0, 1);
        let s = stabilizer(&x);
        let grams = mu_grams(&s.basis, 2).unwrap();
        let v = V::new(2, vec![[int(1), int(-2)], [int(3), int(1)], [int(0), int(2)]]).unwrap();
        let c = v.coords();
        let direct = mu_x_eval(&x, &v).unwrap();
        for (g, want) in grams.iter().zip(direct) {
            let got = g.mul_vec(&c).iter().zip(&c).fold(int(0), |a, (p, q)| a + p * q);
            assert_eq!(got, want);
        }
    }

    #[test]
    fn claimed_fiber_examples() {
        assert_eq!(claimed_fiber::<Rational>(0, 0).unwrap().dim(), 1);
        let f = claimed_fiber::<Rational>(1, 0).unwrap();
        assert_eq!(f.dim(), 3);
        assert!(f.contains(&V::basis(1, 0, 0).coords()));
        assert!(!f.contains(&V::basis(1, 1, 0).coords()));
        let g = claimed_fiber::<Rational>(2, 3).unwrap();
        assert_eq!(g.dim(), 2);
        assert!(g.contains(&V::basis(2, 0, 2).coords()) && g.contains(&V::basis(2, 1, 2).coords()));
        assert!(claimed_fiber::<Rational>(2, 4).is_err());
    }

    #[test]
    fn nilpotent_embedding() {
        assert_eq!(generic_nilpotent_embedding(0).unwrap().commutant_dim, 3);
        assert_eq!(generic_nilpotent_embedding(1).unwrap().commutant_dim, 6);
        for d in 1..=4 {
            let e = generic_nilpotent_embedding(d).unwrap();
            assert_eq!(rank(&e.b.mul(&e.b)), 2 * (d + 1) - 4);
        }
    }

    #[test]
    fn finite_field_stabilizer() {
        let x = CurrentVec::<Fp<5>>::new(2, vec![[Fp::new(0), Fp::new(0)], [Fp::new(2), Fp::new(3)], [Fp::new(1), Fp::new(4)]]).unwrap();
        assert_eq!(stabilizer_checked(&x).unwrap().dim(), 2 + 3);
    }

    #[test]
    fn shorthand_and_json() {
        assert_eq!(V::parse_shorthand(3, "e2z^2").unwrap(), V::basis(3, 1, 2));
        assert_eq!(V::parse_shorthand(3, "e1").unwrap(), V::basis(3, 0, 0));
        assert!(V::parse_shorthand(1, "e1z2").is_err());
        let v = V::from_json_str(r#"{"d":1,"coeffs":[[1,"1/2"],[0,-3]]}"#).unwrap();
        assert_eq!(V::from_json_str(&v.to_json().to_string()).unwrap(), v);
        assert!(V::from_json_str(r#"{"d":2,"coeffs":[[1,0]]}"#).is_err());
    }
}
