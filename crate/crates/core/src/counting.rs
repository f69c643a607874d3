//! Exact point counts of moment-map zero fibres over `F_p`.
//!
//! Work is split into contiguous ranges of the enumeration index, i.e. by
//! prefix of the leading coordinates, and each range runs on its own scoped
//! thread; totals are plain sums, so they do not depend on the worker count.

use std::ops::Range;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::current::{self, CurrentMat, CurrentVec};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rational};
use crate::matrix::Matrix;

/// Largest histogram (number of slots) the enumeration engine allocates.
const MAX_HISTOGRAM: u64 = 1 << 26;

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub kind: String,
    pub params: serde_json::Value,
    pub prime: u64,
    pub count: u64,
    pub log_p: f64,
    pub predicted_dim: Option<usize>,
    pub method: String,
    pub elapsed_ms: u128,
    pub workers: usize,
    pub partition: String,
}

/// `log(N2/N1) / log(p2/p1)`.
pub fn slope(a: &CountReport, b: &CountReport) -> f64 {
    ((b.count as f64).ln() - (a.count as f64).ln()) / ((b.prime as f64).ln() - (a.prime as f64).ln())
}

pub fn rat_mod(q: &Rational, p: u64) -> Result<u64> {
    let m = BigInt::from(p);
    let n = q.numer().mod_floor(&m).to_u64().expect("residue");
    let d = q.denom().mod_floor(&m).to_u64().expect("residue");
    if d == 0 {
        return Err(Error::Unsupported(format!("denominator of {q} vanishes mod {p}")));
    }
    Ok(n * pow_mod(d, p - 2, p) % p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn legendre(a: u64, p: u64) -> i64 {
    match pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn check_prime(p: u64, allowed: &[u64]) -> Result<()> {
    if allowed.contains(&p) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("prime {p} not in {allowed:?}")))
    }
}

fn ranges(total: u64, workers: usize) -> Vec<Range<u64>> {
    let w = workers.max(1) as u64;
    (0..w).map(|i| total * i / w..total * (i + 1) / w).filter(|r| !r.is_empty()).collect()
}

fn partition_note(total: u64, workers: usize) -> String {
    format!("{} prefix range(s) of {total} leading-coordinate indices", ranges(total, workers).len())
}

/// Runs `f` on each prefix range in its own thread.
fn par_map<T: Send>(total: u64, workers: usize, f: impl Fn(Range<u64>) -> T + Sync) -> Vec<T> {
    let rs = ranges(total, workers);
    if rs.len() <= 1 {
        return rs.into_iter().map(&f).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = rs.into_iter().map(|r| s.spawn(|| f(r))).collect();
        handles.into_iter().map(|h| h.join().expect("counting worker panicked")).collect()
    })
}

/// Base-`p` digits of `idx`, leading coordinate first.
fn digits(mut idx: u64, p: u64, out: &mut [u64]) {
    for o in out.iter_mut().rev() {
        *o = idx % p;
        idx /= p;
    }
}

/// Quadratic forms `Q_a(v) = Σ_{i≤j} c_ij v_i v_j` over `F_p`.
#[derive(Clone, Debug)]
pub struct QuadSystem {
    pub p: u64,
    pub vars: usize,
    /// Per form: `(i, j, c_ij)` with nonzero `c_ij`.
    terms: Vec<Vec<(usize, usize, u64)>>,
    grams: Vec<Vec<u64>>,
}

impl QuadSystem {
    /// From symmetric Gram matrices with `Q(v) = v^T M v`.
    pub fn from_grams(grams: &[Matrix<Rational>], p: u64) -> Result<Self> {
        let vars = grams.first().map_or(0, Matrix::rows);
        let mut terms = Vec::new();
        let mut reduced = Vec::new();
        for g in grams {
            let mut t = Vec::new();
            let mut r = vec![0; vars * vars];
            for i in 0..vars {
                for j in 0..vars {
                    r[i * vars + j] = rat_mod(&g[(i, j)], p)?;
                }
                for j in i..vars {
                    let c = if i == j { r[i * vars + i] } else { 2 * rat_mod(&g[(i, j)], p)? % p };
                    if c != 0 {
                        t.push((i, j, c));
                    }
                }
            }
            terms.push(t);
            reduced.push(r);
        }
        Ok(QuadSystem { p, vars, terms, grams: reduced })
    }

    pub fn forms(&self) -> usize {
        self.terms.len()
    }

    fn eval(&self, a: usize, v: &[u64]) -> u64 {
        self.terms[a].iter().fold(0, |acc, &(i, j, c)| (acc + c * v[i] % self.p * v[j]) % self.p)
    }

    fn all_zero(&self, v: &[u64]) -> bool {
        (0..self.forms()).all(|a| self.eval(a, v) == 0)
    }

    /// Index of the value vector `(Q_a(v))_a` in base `p`.
    fn value_index(&self, v: &[u64]) -> u64 {
        (0..self.forms()).fold(0, |acc, a| acc * self.p + self.eval(a, v))
    }

    /// Number of `v` with each value, indexed by `value_index`.
    pub fn histogram(&self, workers: usize) -> Result<Vec<u64>> {
        let slots = self.p.checked_pow(self.forms() as u32).filter(|&s| s <= MAX_HISTOGRAM);
        let slots = slots.ok_or_else(|| Error::Unsupported("value space too large for a histogram".into()))?;
        let total = self.p.pow(self.vars as u32);
        let parts = par_map(total, workers, |r| {
            let mut h = vec![0u64; slots as usize];
            let mut v = vec![0; self.vars];
            for idx in r {
                digits(idx, self.p, &mut v);
                h[self.value_index(&v) as usize] += 1;
            }
            h
        });
        Ok(sum_histograms(parts, slots as usize))
    }

    /// `Σ_ψ S(ψ)^3 / p^m` with `S(ψ)` the Gauss sum of `Σ ψ_a Q_a`: the
    /// number of triples `(v1, v2, v3)` with `Σ Q(v_i) = 0`, from the rank
    /// and discriminant of each combined form.  Odd-rank terms cancel in
    /// pairs `ψ, cψ` with `c` a non-square.
    pub fn sum3_character(&self, workers: usize) -> Result<u64> {
        let (p, m, n) = (self.p, self.forms(), self.vars);
        let nonsq = (2..p).find(|&c| legendre(c, p) == -1).expect("odd prime");
        let sq_class = ((p - 1) / 2) as i128;
        let mut total: i128 = 0;
        // ψ = 0 separately; otherwise the first nonzero coordinate is 1 or a
        // fixed non-square, each representing (p-1)/2 forms.
        total += p.pow(3 * n as u32) as i128;
        for lead in 0..m {
            let tail = m - lead - 1;
            let count = p.pow(tail as u32);
            for first in [1, nonsq] {
                let parts = par_map(count, workers, |r| {
                    let mut psi = vec![0u64; m];
                    let mut t = vec![0u64; tail];
                    let mut acc: i128 = 0;
                    let mut mat = vec![0u64; n * n];
                    for idx in r {
                        digits(idx, p, &mut t);
                        psi[lead] = first;
                        psi[lead + 1..].copy_from_slice(&t);
                        for (k, e) in mat.iter_mut().enumerate() {
                            *e = (0..m).fold(0, |s, a| (s + psi[a] * self.grams[a][k]) % p);
                        }
                        let (r, disc) = rank_disc(&mut mat, n, p);
                        if r % 2 == 0 {
                            let sign = legendre(if (r / 2) % 2 == 1 { (p - disc) % p } else { disc }, p);
                            let e = 3 * n as u32 - 3 * r as u32 / 2;
                            acc += sign as i128 * (p as i128).pow(e);
                        }
                    }
                    acc
                });
                total += sq_class * parts.into_iter().sum::<i128>();
            }
        }
        let pm = (p as i128).pow(m as u32);
        if total % pm != 0 || total < 0 {
            return Err(Error::InvariantViolation("character sum is not a nonnegative multiple of p^m".into()));
        }
        Ok((total / pm) as u64)
    }
}

/// Rank and discriminant class (product of the diagonal after congruence
/// diagonalisation) of a symmetric matrix mod `p`; destroys `m`.
fn rank_disc(m: &mut [u64], n: usize, p: u64) -> (usize, u64) {
    let mut disc = 1u64;
    let mut rank = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let _ = first;
        let piv = active.iter().copied().find(|&i| m[i * n + i] != 0);
        let piv = match piv {
            Some(i) => i,
            None => {
                // Zero diagonal: add row/column j to i where m_ij ≠ 0.
                let found = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && m[i * n + j] != 0);
                let Some((i, j)) = found else { break };
                for k in 0..n {
                    m[i * n + k] = (m[i * n + k] + m[j * n + k]) % p;
                }
                for k in 0..n {
                    m[k * n + i] = (m[k * n + i] + m[k * n + j]) % p;
                }
                i
            }
        };
        let d = m[piv * n + piv];
        let dinv = pow_mod(d, p - 2, p);
        for &i in &active {
            if i == piv || m[i * n + piv] == 0 {
                continue;
            }
            let f = m[i * n + piv] * dinv % p;
            for &k in &active {
                m[i * n + k] = (m[i * n + k] + (p - f) * m[piv * n + k]) % p;
            }
        }
        for &i in &active {
            if i != piv {
                m[piv * n + i] = 0;
            }
        }
        disc = disc * d % p;
        rank += 1;
        active.retain(|&i| i != piv);
    }
    (rank, disc)
}

fn sum_histograms(parts: Vec<Vec<u64>>, slots: usize) -> Vec<u64> {
    let mut h = vec![0u64; slots];
    for part in parts {
        for (a, b) in h.iter_mut().zip(part) {
            *a += b;
        }
    }
    h
}

/// `#{(a, b, c) : a + b + c = 0}` weighted by a histogram on `F_p^m`,
/// with pairs reduced modulo scaling by nonzero squares (the histogram is
/// invariant under it because the forms are quadratic).
fn sum3_histogram(h: &[u64], p: u64, m: usize, workers: usize) -> u64 {
    let support: Vec<(Vec<u64>, u64)> = h
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| {
            let mut d = vec![0; m];
            digits(i as u64, p, &mut d);
            (d, c)
        })
        .collect();
    let squares: Vec<u64> = (1..p).map(|s| s * s % p).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let index = |d: &[u64]| d.iter().fold(0u64, |acc, &x| acc * p + x);
    let canonical = |d: &[u64]| {
        let me = index(d);
        squares.iter().all(|&s| index(&d.iter().map(|x| x * s % p).collect::<Vec<_>>()) >= me)
    };
    let is_zero = |d: &[u64]| d.iter().all(|&x| x == 0);
    let neg_sum = |a: &[u64], b: &[u64]| a.iter().zip(b).fold(0u64, |acc, (&x, &y)| acc * p + (2 * p - x - y) % p);
    let sq = (p - 1) / 2;
    let h0 = h[0];
    let parts = par_map(support.len() as u64, workers, |r| {
        let mut acc: u128 = 0;
        for ia in r {
            let (a, ca) = &support[ia as usize];
            if is_zero(a) {
                // a = 0: b runs over canonical nonzero values.
                for (b, cb) in &support {
                    if !is_zero(b) && canonical(b) {
                        acc += sq as u128 * (*ca as u128) * (*cb as u128) * h[neg_sum(a, b) as usize] as u128;
                    }
                }
                acc += (h0 as u128).pow(3);
            } else if canonical(a) {
                for (b, cb) in &support {
                    acc += sq as u128 * (*ca as u128) * (*cb as u128) * h[neg_sum(a, b) as usize] as u128;
                }
            }
        }
        acc
    });
    parts.into_iter().sum::<u128>() as u64
}

fn g_d_basis(d: usize) -> Vec<CurrentMat<Rational>> {
    (0..=d).flat_map(|m| (0..3).map(move |s| CurrentMat::basis(d, s, m))).collect()
}

/// The dimension `4d - 2⌊d/2⌋ + 3` of the zero fibre on `V_d^{⊕3}`.
pub fn homw_theorem_dim(d: usize) -> usize {
    4 * d - 2 * (d / 2) + 3
}

/// Points of `{(v1, v2, v3) ∈ V_d^3 : Σ μ(v_i) = 0}` over `F_p`.
pub fn count_homw_fiber(d: usize, p: u64, workers: usize, allow_long: bool) -> Result<CountReport> {
    if d > 2 {
        return Err(Error::Unsupported(format!("d = {d} exceeds 2")));
    }
    check_prime(p, if allow_long { &[3, 5, 7, 11] } else { &[3, 5, 7] })?;
    let start = Instant::now();
    let grams = current::mu_grams(&g_d_basis(d), d)?;
    let sys = QuadSystem::from_grams(&grams, p)?;
    let slots = p.pow(sys.forms() as u32);
    let (count, method, partition) = if slots <= MAX_HISTOGRAM / 8 {
        let h = sys.histogram(workers)?;
        let support = h.iter().filter(|&&c| c > 0).count() as u64;
        (sum3_histogram(&h, p, sys.forms(), workers), "enumeration", partition_note(support, workers))
    } else {
        (sys.sum3_character(workers)?, "character-sum", partition_note(p.pow(sys.forms() as u32 - 1), workers))
    };
    Ok(CountReport {
        kind: "homw".into(),
        params: serde_json::json!({ "d": d }),
        prime: p,
        count,
        log_p: (count as f64).ln() / (p as f64).ln(),
        predicted_dim: Some(homw_theorem_dim(d)),
        method: method.into(),
        elapsed_ms: start.elapsed().as_millis(),
        workers,
        partition,
    })
}

/// Result of comparing the zero set of `μ_x` with the claimed subspace.
#[derive(Clone, Debug, Serialize)]
pub struct MuxReport {
    pub report: CountReport,
    pub claimed_dim: usize,
    pub claimed_size: u64,
    pub set_equal: bool,
}

/// Coordinates allowed to be nonzero when the subspace is spanned by
/// coordinate vectors.
fn coordinate_support<F: Field>(s: &crate::linalg::Subspace<F>) -> Option<Vec<bool>> {
    let mut mask = vec![false; s.ambient_dim()];
    for v in s.basis_vectors() {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        if nz.len() != 1 {
            return None;
        }
        mask[nz[0]] = true;
    }
    Some(mask)
}

/// Enumerates `μ_x^{-1}(0)` for `x = e1 z^n` in `V_d(F_p)` and checks it
/// against the claimed subspace point by point.
pub fn count_mux_fiber(d: usize, n: usize, p: u64, workers: usize) -> Result<MuxReport> {
    if d > 3 || n > d + 1 {
        return Err(Error::Unsupported(format!("(d, n) = ({d}, {n}) outside d ≤ 3, n ≤ d + 1")));
    }
    check_prime(p, &[3, 5, 7])?;
    let start = Instant::now();
    let x = if n <= d { CurrentVec::<Rational>::basis(d, 0, n) } else { CurrentVec::zero(d) };
    let stab = current::stabilizer(&x);
    let sys = QuadSystem::from_grams(&current::mu_grams(&stab.basis, d)?, p)?;
    let (claimed_dim, mask) = crate::with_prime!(p, P => {
        let c = current::claimed_fiber::<Fp<P>>(d, n)?;
        (c.dim(), coordinate_support(&c))
    })?;
    let mask = mask.ok_or_else(|| Error::InvariantViolation("claimed fibre is not a coordinate subspace".into()))?;
    let vars = 2 * (d + 1);
    let total = p.pow(vars as u32);
    let parts = par_map(total, workers, |r| {
        let mut v = vec![0; vars];
        let (mut count, mut mismatch) = (0u64, None);
        for idx in r {
            digits(idx, p, &mut v);
            let sol = sys.all_zero(&v);
            let inside = (0..vars).all(|i| mask[i] || v[i] == 0);
            count += sol as u64;
            if sol != inside && mismatch.is_none() {
                mismatch = Some(v.clone());
            }
        }
        (count, mismatch)
    });
    let count = parts.iter().map(|(c, _)| c).sum::<u64>();
    let mismatch = parts.into_iter().find_map(|(_, m)| m);
    let set_equal = mismatch.is_none();
    let report = CountReport {
        kind: "mux".into(),
        params: serde_json::json!({ "d": d, "n": n }),
        prime: p,
        count,
        log_p: (count as f64).ln() / (p as f64).ln(),
        predicted_dim: Some(claimed_dim),
        method: "enumeration".into(),
        elapsed_ms: start.elapsed().as_millis(),
        workers,
        partition: partition_note(total, workers),
    };
    if let Some(v) = mismatch {
        return Err(Error::SetMismatch(format!("d={d} n={n} p={p}: vector {v:?} (count {count})")));
    }
    Ok(MuxReport { report, claimed_dim, claimed_size: p.pow(claimed_dim as u32), set_equal })
}

/// `(k² + 3k) / 2`.
pub fn so3_theorem_dim(k: usize) -> usize {
    (k * k + 3 * k) / 2
}

/// Small dense matrix helpers mod `p` for the SO(3) count.
fn mat_mul(a: &[u64], b: &[u64], k: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0; k * k];
    for i in 0..k {
        for l in 0..k {
            let x = a[i * k + l];
            if x == 0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] = (out[i * k + j] + x * b[l * k + j]) % p;
            }
        }
    }
    out
}

/// Points of `{(B1, B2, i) : B_a ∈ p(V), [B1, B2] + ii^* = 0}` over `F_p`,
/// `V = F_p^k` with the standard symplectic form and `W = F_p^3` with the
/// hyperbolic-plus-unit form.
///
/// Writing `S = i G_W^{-1} i^T` (symmetric), `ii^* = S J`, so the equation
/// is `S = -[B1, B2] J^{-1}`; points are a histogram of `S` over `i`
/// summed over pairs `B_a = J^{-1} A_a`, `A_a` antisymmetric.
pub fn count_so3_fiber(k: usize, p: u64, workers: usize, allow_long: bool) -> Result<CountReport> {
    match k {
        2 => check_prime(p, &[3, 5, 7, 11])?,
        4 if allow_long => check_prime(p, &[3, 5])?,
        4 => return Err(Error::Unsupported("k = 4 is long-running; pass --allow-long".into())),
        _ => return Err(Error::Unsupported(format!("k = {k} not in {{2, 4}}"))),
    }
    let start = Instant::now();
    let h = k / 2;
    // J = [[0, I], [-I, 0]], J^{-1} = -J.
    let mut j = vec![0u64; k * k];
    for r in 0..h {
        j[r * k + h + r] = 1;
        j[(h + r) * k + r] = p - 1;
    }
    let j_inv: Vec<u64> = j.iter().map(|&x| (p - x) % p).collect();
    let upper: Vec<(usize, usize)> = (0..k).flat_map(|r| (r..k).map(move |c| (r, c))).collect();
    let slots = p.pow(upper.len() as u32);
    let encode = |s: &[u64]| upper.iter().fold(0u64, |acc, &(r, c)| acc * p + s[r * k + c]);

    // Histogram of S = a b^T + b a^T + c c^T over the columns (a, b, c) of i.
    let kp = p.pow(k as u32);
    let ccs: Vec<Vec<u64>> = (0..kp)
        .map(|idx| {
            let mut c = vec![0; k];
            digits(idx, p, &mut c);
            upper.iter().map(|&(r, s)| c[r] * c[s] % p).collect()
        })
        .collect();
    let parts = par_map(kp * kp, workers, |r| {
        let mut hist = vec![0u64; slots as usize];
        let (mut a, mut b) = (vec![0; k], vec![0; k]);
        for idx in r {
            digits(idx / kp, p, &mut a);
            digits(idx % kp, p, &mut b);
            let ab: Vec<u64> = upper.iter().map(|&(r, s)| (a[r] * b[s] + b[r] * a[s]) % p).collect();
            for cc in &ccs {
                let key = ab.iter().zip(cc).fold(0u64, |acc, (x, y)| acc * p + (x + y) % p);
                hist[key as usize] += 1;
            }
        }
        hist
    });
    let hist = sum_histograms(parts, slots as usize);

    // Self-adjoint B = J^{-1} A with A antisymmetric.
    let lower: Vec<(usize, usize)> = (0..k).flat_map(|r| (r + 1..k).map(move |c| (r, c))).collect();
    let np = p.pow(lower.len() as u32);
    let bs: Vec<Vec<u64>> = (0..np)
        .map(|idx| {
            let mut coords = vec![0; lower.len()];
            digits(idx, p, &mut coords);
            let mut a = vec![0u64; k * k];
            for (&(r, c), &x) in lower.iter().zip(&coords) {
                a[r * k + c] = x;
                a[c * k + r] = (p - x) % p;
            }
            mat_mul(&j_inv, &a, k, p)
        })
        .collect();
    let parts = par_map(np, workers, |r| {
        let mut acc = 0u64;
        for i1 in r {
            let b1 = &bs[i1 as usize];
            for b2 in &bs {
                let x = mat_mul(b1, b2, k, p);
                let y = mat_mul(b2, b1, k, p);
                let comm: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + p - v) % p).collect();
                // S = -[B1, B2] J^{-1} = [B1, B2] J
                let s = mat_mul(&comm, &j, k, p);
                debug_assert!((0..k).all(|r| (0..k).all(|c| s[r * k + c] == s[c * k + r])));
                acc += hist[encode(&s) as usize];
            }
        }
        acc
    });
    let count: u64 = parts.into_iter().sum();
    Ok(CountReport {
        kind: "so3".into(),
        params: serde_json::json!({ "k": k }),
        prime: p,
        count,
        log_p: (count as f64).ln() / (p as f64).ln(),
        predicted_dim: Some(so3_theorem_dim(k)),
        method: "enumeration".into(),
        elapsed_ms: start.elapsed().as_millis(),
        workers,
        partition: partition_note(np, workers),
    })
}

/// One stratum's contribution to the dimension formula.
#[derive(Clone, Debug, Serialize)]
pub struct StratumTerm {
    pub n: usize,
    pub stratum_dim: usize,
    pub orbit_dim: usize,
    pub dim_v: usize,
    pub fiber_dim: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimFormulaReport {
    pub d: usize,
    pub strata: Vec<StratumTerm>,
    /// Max over strata of `stratum - orbit + dim V_d + dim μ_x^{-1}(0)`.
    pub predicted: usize,
    /// The closed form `4d - 2⌊d/2⌋ + 3`.
    pub theorem: usize,
    pub counts: Vec<CountReport>,
    /// Slopes between consecutive primes.
    pub slopes: Vec<f64>,
    pub agrees: bool,
}

/// Dimension formula over the strata of `V_d` (one per `min.deg`), using
/// `x = e1 z^n` as representative, against measured point-count slopes.
pub fn verify_dim_formula(d: usize, primes: &[u64], workers: usize) -> Result<DimFormulaReport> {
    if d > 2 {
        return Err(Error::Unsupported(format!("d = {d} exceeds 2")));
    }
    let dim_v = 2 * (d + 1);
    let mut strata = Vec::new();
    for n in 0..=d + 1 {
        let x = if n <= d { CurrentVec::<Rational>::basis(d, 0, n) } else { CurrentVec::zero(d) };
        let s = current::stratum_data(&x)?;
        let fiber_dim = current::claimed_fiber::<Rational>(d, n)?.dim();
        strata.push(StratumTerm {
            n,
            stratum_dim: s.stratum_dim,
            orbit_dim: s.orbit_dim,
            dim_v,
            fiber_dim,
            total: s.stratum_dim - s.orbit_dim + dim_v + fiber_dim,
        });
    }
    let predicted = strata.iter().map(|s| s.total).max().expect("nonempty");
    let counts = primes.iter().map(|&p| count_homw_fiber(d, p, workers, false)).collect::<Result<Vec<_>>>()?;
    let slopes: Vec<f64> = counts.windows(2).map(|w| slope(&w[0], &w[1])).collect();
    let agrees = !slopes.is_empty() && slopes.iter().all(|s| (s - predicted as f64).abs() <= 0.5);
    Ok(DimFormulaReport { d, strata, predicted, theorem: homw_theorem_dim(d), counts, slopes, agrees })
}
