//! Exceptional isomorphisms `SU(2) → SO(3)`, `USp(2) → SO(5)` and
//! `SU(4) → SO(6)` on ADHM data via the self-tensor limit.

use crate::adhm::{AdhmDatum, BilinearForm, FormKind, SoDatum, SoFlavor};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::kernel_basis;
use crate::matrix::Matrix;
use crate::samples::{random_unimodular, rng};
use crate::tensor::{
    ext_basis, restrict, self_tensor_aux, self_tensor_sp, sym_basis, vs_ve, SelfTensorResult,
};

/// Bounded number of candidate auxiliary forms tried by [`iso_so6`].
pub const MAX_OMEGA_ATTEMPTS: usize = 32;

#[derive(Clone, Debug)]
pub struct IsoOutput {
    pub datum: SoDatum,
    pub limit: SelfTensorResult,
    /// Auxiliary symplectic form used for the frame (SU(4) case).
    pub omega: Option<BilinearForm>,
    /// Number of candidates drawn before one was generic.
    pub attempts: usize,
}

fn sign_of_perm(p: [usize; 4]) -> i64 {
    let mut s = 1;
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] == p[b] {
                return 0;
            }
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

/// Gram matrix on `W⊗W` (`dim W = 4`) of the pairing `α∧β = B(α, β)·vol`,
/// normalised so that `B(u_ab, u_cd) = ε_abcd` for `u_ab = w_a⊗w_b − w_b⊗w_a`.
pub fn wedge_gram() -> Matrix<Rational> {
    let quarter = Rational::from_i64(4).inv().expect("nonzero");
    Matrix::from_fn(16, 16, |r, c| {
        let s = sign_of_perm([r / 4, r % 4, c / 4, c % 4]);
        Rational::from_i64(s).mul(&quarter)
    })
}

/// Pfaffian of a 4×4 antisymmetric matrix.
pub fn pfaffian4(a: &Matrix<Rational>) -> Rational {
    let t = |p: usize, q: usize, r: usize, s: usize| a[(p, q)].mul(&a[(r, s)]);
    t(0, 1, 2, 3).sub(&t(0, 2, 1, 3)).add(&t(0, 3, 1, 2))
}

fn restricted_form(kind: FormKind, gram: &Matrix<Rational>, basis: &Matrix<Rational>) -> Result<BilinearForm> {
    BilinearForm::new(kind, basis.transpose().mul(gram).mul(basis))
}

fn check_input(y: &SoDatum, n: usize) -> Result<()> {
    if y.flavor() != SoFlavor::Sp || y.datum().dim_w() != n {
        return Err(Error::Unsupported(format!("expected V orthogonal and W symplectic of dimension {n}")));
    }
    if !y.datum().is_regular() {
        return Err(Error::NotStable("input is not regular".into()));
    }
    Ok(())
}

/// `F ↦ ad F ≅ S²F` for `SU(2) = USp(1)`: the restriction of the
/// self-tensor limit to `(V_S, S²W)` with the induced forms.
pub fn iso_so3(y: &SoDatum) -> Result<IsoOutput> {
    check_input(y, 2)?;
    let r = self_tensor_sp(y)?;
    vs_ve(&r)?;
    let idx = r.vs_indices();
    let sb = sym_basis(2);
    let x = restrict(&r.datum, &idx, &sb)?;
    let gv = r.form_v.as_ref().expect("self-dual input").gram().select(&idx, &idx);
    let fw = restricted_form(FormKind::Symmetric, r.form_w.as_ref().expect("self-dual input").gram(), &sb)?;
    let datum = SoDatum::from_datum(x, BilinearForm::new(FormKind::Alternating, gv)?, fw)?;
    Ok(IsoOutput { datum, limit: r, omega: None, attempts: 1 })
}

/// Basis of `Ker(ω) ⊂ Λ²W` as columns in `W⊗W`.
pub fn ker_omega_basis(omega: &BilinearForm) -> Matrix<Rational> {
    let n = omega.dim();
    let eb = ext_basis(n);
    // ω(w_a⊗w_b − w_b⊗w_a) = ω_ab on the exterior basis.
    let mut row = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            row.push(omega.gram()[(a, b)].clone());
        }
    }
    let ker = kernel_basis(&Matrix::from_rows(vec![row]));
    eb.mul(&ker.basis().transpose())
}

/// `USp(2) → SO(5)`: restriction to `(V_E, Ker ω)`.  The orthogonal form on
/// `Ker ω` is the wedge pairing; on `V_E` the induced symplectic form is
/// rescaled by the same factor relating the wedge pairing to the form
/// induced from `W⊗W`.
pub fn iso_so5(y: &SoDatum) -> Result<IsoOutput> {
    check_input(y, 4)?;
    let r = self_tensor_sp(y)?;
    vs_ve(&r)?;
    let idx = r.ve_indices();
    let kb = ker_omega_basis(y.form_w());
    let x = restrict(&r.datum, &idx, &kb)?;
    let wedge = kb.transpose().mul(&wedge_gram()).mul(&kb);
    let induced = kb.transpose().mul(r.form_w.as_ref().expect("self-dual input").gram()).mul(&kb);
    let lambda = proportionality(&wedge, &induced)
        .ok_or_else(|| Error::InvariantViolation("wedge and induced forms on Ker omega are not proportional".into()))?;
    let gv = r.form_v.as_ref().expect("self-dual input").gram().select(&idx, &idx).scale(&lambda);
    let datum = SoDatum::from_datum(
        x,
        BilinearForm::new(FormKind::Alternating, gv)?,
        BilinearForm::new(FormKind::Symmetric, wedge)?,
    )?;
    Ok(IsoOutput { datum, limit: r, omega: None, attempts: 1 })
}

/// `λ` with `a = λ·b`, if any.
fn proportionality(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Option<Rational> {
    let pos = b.entries().iter().position(|v| !v.is_zero())?;
    let lambda = a.entries()[pos].div(&b.entries()[pos])?;
    (b.scale(&lambda) == *a && !lambda.is_zero()).then_some(lambda)
}

/// Candidate auxiliary forms `ω = Pᵀ·J·P` with `P` unimodular, so that
/// every candidate has the same Pfaffian and hence the same `∧²ω`.
pub fn omega_candidates(seed: u64, count: usize) -> Vec<BilinearForm> {
    let mut r = rng(seed);
    let j = BilinearForm::standard_symplectic(4).expect("even");
    (0..count)
        .map(|_| {
            let p = random_unimodular(&mut r, 4);
            BilinearForm::new(FormKind::Alternating, p.transpose().mul(j.gram()).mul(&p)).expect("unimodular")
        })
        .collect()
}

/// Solves for the symplectic form on `V` making `x` self-dual against the
/// given orthogonal form on `W`; the solution must be unique up to scale.
pub fn solve_self_dual_form(x: &AdhmDatum, form_w: &BilinearForm) -> Result<BilinearForm> {
    let m = x.dim_v();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let mut cols = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let mut g = Matrix::<Rational>::zeros(m, m);
        g[(a, b)] = Rational::one();
        g[(b, a)] = Rational::one().neg();
        let mut col = Vec::new();
        for bb in [&x.b1, &x.b2] {
            col.extend(bb.transpose().mul(&g).sub(&g.mul(bb)).entries().iter().cloned());
        }
        col.extend(x.i.transpose().mul(&g).neg().entries().iter().cloned());
        cols.push(col);
    }
    // Last unknown homogenizes G_W j, which does not scale with G.
    let mut last = vec![Rational::zero(); 2 * m * m];
    last.extend(form_w.gram().mul(&x.j).entries().iter().cloned());
    cols.push(last);
    let nrows = cols.first().map_or(0, Vec::len);
    let sys = Matrix::from_cols(&cols, nrows);
    let ker = kernel_basis(&sys);
    if ker.dim() != 1 {
        return Err(Error::InvariantViolation(format!("self-dual form on V_E has a {}-dim solution space", ker.dim())));
    }
    let v = ker.basis_vectors().remove(0);
    let scale = v[pairs.len()].inv().ok_or_else(|| Error::InvariantViolation("self-dual form on V_E is degenerate".into()))?;
    let mut g = Matrix::<Rational>::zeros(m, m);
    for (s, &(a, b)) in pairs.iter().enumerate() {
        g[(a, b)] = v[s].mul(&scale);
        g[(b, a)] = v[s].mul(&scale).neg();
    }
    BilinearForm::new(FormKind::Alternating, g)
}

/// `SU(4) → SO(6)`: restriction to `(V_E, Λ²W)` for a frame built from a
/// seeded generic auxiliary form `ω^x`.
pub fn iso_so6(x: &AdhmDatum, seed: u64) -> Result<IsoOutput> {
    if x.dim_w() != 4 {
        return Err(Error::Unsupported("iso_so6 needs dim W = 4".into()));
    }
    if !x.is_regular() {
        return Err(Error::NotStable("input is not regular".into()));
    }
    for (attempt, omega) in omega_candidates(seed, MAX_OMEGA_ATTEMPTS).into_iter().enumerate() {
        let r = match self_tensor_aux(x, &omega) {
            Ok(r) => r,
            Err(Error::GenericityFailure(_)) | Err(Error::DegenerateFrame(_)) => continue,
            Err(e) => return Err(e),
        };
        vs_ve(&r)?;
        let eb = ext_basis(4);
        let xe = restrict(&r.datum, &r.ve_indices(), &eb)?;
        let fw = restricted_form(FormKind::Symmetric, &wedge_gram(), &eb)?;
        let fv = solve_self_dual_form(&xe, &fw)?;
        let datum = SoDatum::from_datum(xe, fv, fw)?;
        return Ok(IsoOutput { datum, limit: r, omega: Some(omega), attempts: attempt + 1 });
    }
    Err(Error::GenericityFailure(MAX_OMEGA_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{gl_regular, rng as srng, sp_regular};

    #[test]
    fn wedge_form_basics() {
        let eb = ext_basis(4);
        let g = eb.transpose().mul(&wedge_gram()).mul(&eb);
        assert!(g.is_symmetric());
        assert!(crate::linalg::inverse(&g).is_ok());
        let om = omega_candidates(1, 4);
        let pf = pfaffian4(om[0].gram());
        assert!(om.iter().all(|o| pfaffian4(o.gram()) == pf));
        assert_eq!(ker_omega_basis(&om[0]).cols(), 5);
    }

    #[test]
    fn so3_k1() {
        let y = sp_regular(&mut srng(5), 1, 2).unwrap();
        let out = iso_so3(&y).unwrap();
        assert_eq!(out.datum.datum().dim_v(), 4);
        assert_eq!(out.datum.datum().dim_w(), 3);
        assert!(out.datum.moment_map().unwrap().is_zero());
        assert!(out.datum.datum().is_regular());
    }

    #[test]
    fn so5_k1() {
        let y = sp_regular(&mut srng(6), 1, 4).unwrap();
        let out = iso_so5(&y).unwrap();
        assert_eq!(out.datum.datum().dim_v(), 2);
        assert_eq!(out.datum.datum().dim_w(), 5);
        assert!(out.datum.moment_map().unwrap().is_zero());
        assert!(out.datum.datum().is_regular());
    }

    #[test]
    fn so6_k2() {
        let x = gl_regular(&mut srng(8), 2, 4);
        let out = iso_so6(&x, 3).unwrap();
        assert_eq!(out.datum.datum().dim_v(), 4);
        assert_eq!(out.datum.datum().dim_w(), 6);
        assert!(out.datum.moment_map().unwrap().is_zero());
        assert!(out.datum.datum().is_regular());
    }
}
