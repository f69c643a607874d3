//! Seeded random data: regular points of the zero fibre, built in an
//! eigenbasis and moved by random group elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adhm::{AdhmDatum, BilinearForm, SoDatum};
use crate::error::Result;
use crate::field::{int, rat, Field, Rational};
use crate::linalg::inverse;
use crate::matrix::Matrix;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a/b` with `|a| ≤ 3`, `b ∈ {1, 2}`.
pub fn small_rational(rng: &mut SampleRng) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn small_matrix(rng: &mut SampleRng, rows: usize, cols: usize) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng))
}

/// `k` distinct values from `{offset + m/2 : |m| ≤ 12}`, increasing.
pub fn distinct_eigenvalues(rng: &mut SampleRng, k: usize, offset: i64) -> Vec<Rational> {
    let mut pool: Vec<i64> = (-12..=12).collect();
    pool.shuffle(rng);
    let mut v: Vec<Rational> = pool[..k].iter().map(|m| rat(*m, 2) + int(offset)).collect();
    v.sort();
    v
}

/// Product of random integer shears; determinant 1.
pub fn random_unimodular(rng: &mut SampleRng, n: usize) -> Matrix<Rational> {
    let mut g = Matrix::identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..2 * n {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let c = int(rng.gen_range(-2..=2));
        let mut e = Matrix::identity(n);
        e[(a, b)] = c;
        g = e.mul(&g);
    }
    g
}

/// Cayley transform `(I − A)(I + A)⁻¹` of a random integer antisymmetric
/// `A`; orthogonal for the identity form.
pub fn cayley_orthogonal(rng: &mut SampleRng, n: usize) -> Matrix<Rational> {
    let mut a = Matrix::zeros(n, n);
    for r in 0..n {
        for c in r + 1..n {
            let v = int(rng.gen_range(-2..=2));
            a[(c, r)] = v.neg();
            a[(r, c)] = v;
        }
    }
    let id = Matrix::identity(n);
    id.sub(&a).mul(&inverse(&id.add(&a)).expect("I + A is invertible for antisymmetric A"))
}

/// Random element of `Sp(n)` for the standard `J`: a product of the
/// block shears `[[I, S], [0, I]]` and `[[I, 0], [T, I]]`, `S, T` symmetric.
pub fn random_symplectic(rng: &mut SampleRng, n: usize) -> Matrix<Rational> {
    let h = n / 2;
    let sym = |rng: &mut SampleRng| {
        let mut s = Matrix::zeros(h, h);
        for r in 0..h {
            for c in r..h {
                let v = int(rng.gen_range(-2..=2));
                s[(r, c)] = v.clone();
                s[(c, r)] = v;
            }
        }
        s
    };
    let mut upper = Matrix::identity(n);
    upper.set_block(0, h, &sym(rng));
    let mut lower = Matrix::identity(n);
    lower.set_block(h, 0, &sym(rng));
    upper.mul(&lower)
}

/// `B2` solving `[B1, B2] + M = 0` off the diagonal for diagonal `B1`,
/// with the diagonal drawn at random.
fn solve_b2(rng: &mut SampleRng, b: &[Rational], m: &Matrix<Rational>) -> Matrix<Rational> {
    let k = b.len();
    Matrix::from_fn(k, k, |l, n| {
        if l == n {
            small_rational(rng)
        } else {
            m[(l, n)].neg().div(&b[l].sub(&b[n])).expect("distinct eigenvalues")
        }
    })
}

/// Regular GL datum in the zero fibre with the given distinct eigenvalues
/// of `B1`, conjugated by a random unimodular matrix.  Needs `n >= 2` when
/// `k > 0`: with `dim W = 1` stability forces `j = 0`.
pub fn gl_regular_with_spectrum(rng: &mut SampleRng, b: &[Rational], n: usize) -> AdhmDatum {
    let k = b.len();
    assert!(k == 0 || n >= 2, "no regular data with dim W = {n} and dim V = {k}");
    loop {
        let i = small_matrix(rng, k, n);
        let mut j = small_matrix(rng, n, k);
        let mut ok = true;
        for l in 0..k {
            let Some(c0) = (0..n).find(|&c| !i[(l, c)].is_zero()) else {
                ok = false;
                break;
            };
            let s = (0..n).fold(Rational::zero(), |a, c| a.add(&i[(l, c)].mul(&j[(c, l)])));
            let adj = j[(c0, l)].sub(&s.div(&i[(l, c0)]).expect("nonzero"));
            j[(c0, l)] = adj;
        }
        if !ok {
            continue;
        }
        let ij = i.mul(&j);
        let b2 = solve_b2(rng, b, &ij);
        let x = AdhmDatum::new(Matrix::diagonal(b), b2, i, j).expect("shapes");
        if !x.is_regular() {
            continue;
        }
        let g = random_unimodular(rng, k);
        return x.act(&g).expect("unimodular");
    }
}

pub fn gl_regular(rng: &mut SampleRng, k: usize, n: usize) -> AdhmDatum {
    let b = distinct_eigenvalues(rng, k, 0);
    gl_regular_with_spectrum(rng, &b, n)
}

/// Regular self-dual datum with `V = Q^k` orthogonal (identity form) and
/// `W = Q^n` symplectic (standard `J`), in the zero fibre.
pub fn sp_regular(rng: &mut SampleRng, k: usize, n: usize) -> Result<SoDatum> {
    let fv = BilinearForm::standard_orthogonal(k);
    let fw = BilinearForm::standard_symplectic(n)?;
    loop {
        let b = distinct_eigenvalues(rng, k, 0);
        let i = small_matrix(rng, k, n);
        let ii = crate::adhm::moment_map_hom(&i, &fw, &fv)?;
        let b2 = solve_b2(rng, &b, &ii);
        let y = SoDatum::new(Matrix::diagonal(&b), b2, i, fv.clone(), fw.clone())?;
        if !y.datum().is_regular() {
            continue;
        }
        let o = cayley_orthogonal(rng, k);
        let h = random_symplectic(rng, n);
        let moved = y.datum().act(&o)?.act_frame(&h)?;
        return SoDatum::from_datum(moved, fv, fw);
    }
}

/// Random self-dual datum (not in the zero fibre) with `V = Q^k`
/// symplectic and `W` orthogonal with the given form.
pub fn so_random(rng: &mut SampleRng, k: usize, form_w: &BilinearForm) -> Result<SoDatum> {
    let fv = BilinearForm::standard_symplectic(k)?;
    let j_inv = fv.gram_inv().clone();
    let self_adjoint = |rng: &mut SampleRng| {
        let mut a = Matrix::zeros(k, k);
        for r in 0..k {
            for c in r + 1..k {
                let v = small_rational(rng);
                a[(c, r)] = v.neg();
                a[(r, c)] = v;
            }
        }
        j_inv.mul(&a)
    };
    let b1 = self_adjoint(rng);
    let b2 = self_adjoint(rng);
    let i = small_matrix(rng, k, form_w.dim());
    SoDatum::new(b1, b2, i, fv, form_w.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_regular_and_flat() {
        let mut r = rng(7);
        for k in 1..=3 {
            let x = gl_regular(&mut r, k, 3);
            assert!(x.moment_map().is_zero());
            assert!(x.is_regular());
            let y = sp_regular(&mut r, k, 2).unwrap();
            assert!(y.moment_map().unwrap().is_zero());
            assert!(y.datum().is_regular());
        }
    }

    #[test]
    fn group_elements() {
        let mut r = rng(3);
        let o = cayley_orthogonal(&mut r, 3);
        assert_eq!(o.transpose().mul(&o), Matrix::identity(3));
        let h = random_symplectic(&mut r, 4);
        assert!(BilinearForm::<Rational>::standard_symplectic(4).unwrap().is_preserved_by(&h));
        let g = random_unimodular(&mut r, 3);
        assert!(inverse(&g).is_ok());
    }

    #[test]
    fn seeded_reproducible() {
        assert_eq!(gl_regular(&mut rng(11), 2, 2), gl_regular(&mut rng(11), 2, 2));
    }
}
