//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use adhm::adhm::{AdhmDatum, AnyDatum, SoDatum};
use adhm::field::{int, rat, Field, Rational};
use adhm::linalg::inverse;
use adhm::matrix::Matrix;
use adhm::iso::{self, IsoOutput};
use adhm::samples;
use adhm::tensor::{self, SelfTensorResult};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> AnyDatum {
    AnyDatum::from_json_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn kron(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter().flat_map(|a| v.iter().map(move |b| a.mul(b))).collect()
}

fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.add(&c.mul(b));
    }
}

/// The `t = 0` limit for `dim V = 1` as tabulated by hand: entries on the
/// frame `(e,−e), (f,−f), (e,e), (f,f)` as listed, the rest unchanged from
/// `𝖳(x_t, x)`.  Written in the frame basis of `Ṽ` used by
/// [`SelfTensorResult`], with `W̃ = W⊗W` in Kronecker order.
///
/// `b2_sign` multiplies the off-diagonal part of `B̃2`; `1` reproduces the
/// table as printed.
pub fn hand_table(r: &SelfTensorResult, b1: &Rational, b2: &Rational, b2_sign: i64) -> AdhmDatum {
    assert_eq!(r.dim_v(), 1);
    let n = r.n();
    let m = n - 2;
    let nv = 2 * n;
    let (e, f, w0) = (&r.frame.e[0], &r.frame.f[0], &r.frame.w0[0]);
    let half = rat(1, 2);
    let sign = int(b2_sign);

    let mut tb1 = Matrix::scalar(nv, b1);
    tb1[(3, 1)] = half.clone();
    tb1[(0, 2)] = half.clone();
    let mut tb2 = Matrix::scalar(nv, b2);
    tb2[(3, 0)] = int(-1).mul(&sign);
    tb2[(1, 2)] = sign.clone();

    // j̃ column by column.
    let zero = vec![int(0); n * n];
    let mut jcols = vec![zero.clone(), zero.clone()];
    let mut c = kron(f, e);
    axpy(&mut c, &int(1), &kron(e, f));
    jcols.push(c);
    jcols.push(kron(f, f).iter().map(|v| v.mul(&int(2))).collect());
    for s in [1i64, -1] {
        for w in w0 {
            let mut c = kron(f, w);
            axpy(&mut c, &int(s), &kron(w, f));
            jcols.push(c);
        }
    }
    let tj = Matrix::from_cols(&jcols, n * n);

    // ĩ on the basis u_a⊗u_b with u = (e, f, W₀).
    let mut u = vec![e.clone(), f.clone()];
    u.extend(w0.iter().cloned());
    let unit = |k: usize, c: Rational| {
        let mut v = vec![int(0); nv];
        v[k] = c;
        v
    };
    let mut src = Vec::new();
    let mut img = Vec::new();
    for a in 0..n {
        for b in 0..n {
            src.push(kron(&u[a], &u[b]));
            let v = match (a, b) {
                (0, 0) => unit(2, int(1)),
                (1, 1) => vec![int(0); nv],
                (0, 1) | (1, 0) => unit(3, half.clone()),
                // e⊗w ↦ (w, 0), w⊗e ↦ (0, w); i kills f and W₀.
                (0, b) => {
                    let mut v = unit(4 + b - 2, half.clone());
                    v[4 + m + b - 2] = half.clone();
                    v
                }
                (a, 0) => {
                    let mut v = unit(4 + a - 2, half.clone());
                    v[4 + m + a - 2] = half.neg();
                    v
                }
                _ => vec![int(0); nv],
            };
            img.push(v);
        }
    }
    let s = Matrix::from_cols(&src, n * n);
    let ti = Matrix::from_cols(&img, nv).mul(&inverse(&s).unwrap());
    AdhmDatum::new(tb1, tb2, ti, tj).unwrap()
}

/// Which exceptional pipeline a suite exercises.
#[derive(Clone, Copy, Debug)]
pub enum Pipeline {
    So3,
    So5,
    So6,
}

fn check_output(out: &IsoOutput, dim_v: usize, dim_w: usize) -> Result<(), String> {
    let y: &SoDatum = &out.datum;
    let v = y.violations();
    if !v.is_empty() {
        return Err(v.join("; "));
    }
    if !y.moment_map().map_err(|e| e.to_string())?.is_zero() {
        return Err("moment map is nonzero".into());
    }
    if !y.datum().is_regular() {
        return Err("output is not regular".into());
    }
    if y.datum().dim_v() != dim_v || y.datum().dim_w() != dim_w {
        return Err(format!("dims ({}, {}), expected ({dim_v}, {dim_w})", y.datum().dim_v(), y.datum().dim_w()));
    }
    Ok(())
}

/// Runs `count` seeded samples with `k` cycling through 1..=3.  Returns the
/// number checked or the first failure.
pub fn pipeline_suite(p: Pipeline, count: u64) -> Result<u64, String> {
    for s in 0..count {
        let k = 1 + (s % 3) as usize;
        let mut r = samples::rng(1000 + s);
        let res = match p {
            Pipeline::So3 => {
                let y = samples::sp_regular(&mut r, k, 2).map_err(|e| e.to_string())?;
                iso::iso_so3(&y).map_err(|e| e.to_string()).and_then(|o| check_output(&o, 4 * k, 3))
            }
            Pipeline::So5 => {
                let y = samples::sp_regular(&mut r, k, 4).map_err(|e| e.to_string())?;
                iso::iso_so5(&y).map_err(|e| e.to_string()).and_then(|o| check_output(&o, 2 * k, 5))
            }
            Pipeline::So6 => {
                let x = samples::gl_regular(&mut r, k, 4);
                iso::iso_so6(&x, s).map_err(|e| e.to_string()).and_then(|o| check_output(&o, 2 * k, 6))
            }
        };
        res.map_err(|e| format!("{p:?} sample {s} (k = {k}): {e}"))?;
    }
    Ok(count)
}

/// Tensor laws on `count` seeded regular pairs with disjoint spectra.
pub fn tensor_suite(count: u64) -> Result<u64, String> {
    for s in 0..count {
        let mut r = samples::rng(5000 + s);
        let (k1, k2) = (1 + (s % 2) as usize, 1 + (s / 2 % 2) as usize);
        let (n1, n2) = (2 + (s % 2) as usize, 2 + (s / 3 % 2) as usize);
        let sa = samples::distinct_eigenvalues(&mut r, k1, 0);
        let sb = samples::distinct_eigenvalues(&mut r, k2, 50);
        let x = samples::gl_regular_with_spectrum(&mut r, &sa, n1);
        let y = samples::gl_regular_with_spectrum(&mut r, &sb, n2);
        let fail = |m: &str| Err(format!("pair {s}: {m}"));
        let t = tensor::tensor(&x, &y).map_err(|e| format!("pair {s}: {e}"))?;
        if !t.moment_map().is_zero() {
            return fail("moment map is nonzero");
        }
        if !t.is_stable() || !t.is_costable() {
            return fail("stability or costability lost");
        }
        if !tensor::dual_matches(&x, &y, &t).map_err(|e| e.to_string())? {
            return fail("dual law fails");
        }
    }
    Ok(count)
}
