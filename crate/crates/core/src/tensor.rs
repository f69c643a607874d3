//! Tensor products of ADHM data and the degenerate self-tensor limit.
//!
//! Coordinates on `Ṽ = V⊗W' ⊕ W⊗V'`: the `V⊗W'` block comes first with
//! `v_l⊗w'_b` at index `l·N' + b`, followed by `W⊗V'` with `w_a⊗v'_m` at
//! index `k·N' + a·k' + m`.  On `W̃ = W⊗W'` the vector `w_a⊗w'_b` sits at
//! `a·N' + b`; all of these are the usual Kronecker orders.

use crate::adhm::{AdhmDatum, BilinearForm, FormKind, SoDatum, SoFlavor};
use crate::error::{dim_err, Error, Result};
use crate::field::{rational_sqrt, Field, Rational};
use crate::linalg::{inverse, invariant_closure, kernel_basis, solve_linear, sylvester_solve, Subspace};
use crate::matrix::Matrix;
use crate::ratfunc::RatFunc;

fn is_diagonal<F: Field>(m: &Matrix<F>) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| r == c || m[(r, c)].is_zero()))
}

/// `A·X − X·B + C = 0`, entrywise when both sides are diagonal.
fn solve_offdiag<F: Field>(a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>) -> Result<Matrix<F>> {
    if is_diagonal(a) && is_diagonal(b) {
        let mut out = Matrix::zeros(a.rows(), b.rows());
        for r in 0..a.rows() {
            for s in 0..b.rows() {
                let gap = a[(r, r)].sub(&b[(s, s)]);
                let g = gap.inv().ok_or(Error::CommonEigenvalue)?;
                out[(r, s)] = c[(r, s)].mul(&g).neg();
            }
        }
        return Ok(out);
    }
    sylvester_solve(a, b, c)
}

/// The tensor product datum `𝖳(x, x')` on `(Ṽ, W̃)`.
///
/// The off-diagonal blocks of `B̃2` are the unique Sylvester solutions when
/// the `B1`-spectra are disjoint.  When they are not but `i⊗j' = 0 = j⊗i'`,
/// both blocks are set to zero; this extension is only a set-theoretic map
/// and is not continuous in the data.
pub fn tensor<F: Field>(x: &AdhmDatum<F>, y: &AdhmDatum<F>) -> Result<AdhmDatum<F>> {
    let (k, n) = (x.dim_v(), x.dim_w());
    let (k2, n2) = (y.dim_v(), y.dim_w());
    let id_n = Matrix::<F>::identity(n);
    let id_n2 = Matrix::<F>::identity(n2);
    let a1 = x.b1.kron(&id_n2);
    let a2 = id_n.kron(&y.b1);
    let c12 = x.i.kron(&y.j);
    let c21 = x.j.kron(&y.i);
    let (x12, x21) = match (solve_offdiag(&a1, &a2, &c12), solve_offdiag(&a2, &a1, &c21)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(Error::CommonEigenvalue), _) | (_, Err(Error::CommonEigenvalue)) => {
            if c12.is_zero() && c21.is_zero() {
                (Matrix::zeros(k * n2, n * k2), Matrix::zeros(n * k2, k * n2))
            } else {
                return Err(Error::CommonEigenvalue);
            }
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let nv = k * n2 + n * k2;
    let b1 = Matrix::block_diag(&[&a1, &a2]);
    let mut b2 = Matrix::zeros(nv, nv);
    b2.set_block(0, 0, &x.b2.kron(&id_n2));
    b2.set_block(k * n2, k * n2, &id_n.kron(&y.b2));
    b2.set_block(0, k * n2, &x12);
    b2.set_block(k * n2, 0, &x21);
    let i = Matrix::vstack(&[&x.i.kron(&id_n2), &id_n.kron(&y.i)])?;
    let j = Matrix::hstack(&[&x.j.kron(&id_n2), &id_n.kron(&y.j)])?;
    AdhmDatum::new(b1, b2, i, j)
}

/// `𝖳(x∨, x'∨) = 𝖳(x, x')∨`, with `(Ṽ)∨` identified with the `Ṽ` built from
/// the duals coordinate by coordinate.
pub fn tensor_dual_check<F: Field>(x: &AdhmDatum<F>, y: &AdhmDatum<F>) -> Result<bool> {
    let t = tensor(x, y)?;
    dual_matches(x, y, &t)
}

/// Compares `𝖳(x∨, x'∨)` against the dual of a candidate `t`.
pub fn dual_matches<F: Field>(x: &AdhmDatum<F>, y: &AdhmDatum<F>, t: &AdhmDatum<F>) -> Result<bool> {
    Ok(tensor(&x.dual(), &y.dual())? == t.dual())
}

/// Eigenbasis data: `x = P·x'·P⁻¹` with `x'.b1` diagonal in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenbasis {
    pub p: Matrix<Rational>,
    pub eigenvalues: Vec<Rational>,
    pub datum: AdhmDatum<Rational>,
}

/// Diagonalises `B1` over the rationals.  With `form_v` given, eigenvector
/// `q_l` is divided by `√c_l`, `c_l = (q_l, q_l)_V`, whenever that square
/// root is rational.
pub fn eigenbasis(x: &AdhmDatum<Rational>, form_v: Option<&BilinearForm<Rational>>) -> Result<Eigenbasis> {
    let spec = x.b1_spectrum()?;
    if !spec.is_distinct() {
        let rep: Vec<String> = spec.roots.iter().filter(|(_, m)| *m > 1).map(|(r, m)| format!("{r} (x{m})")).collect();
        return Err(Error::RepeatedEigenvalue(rep.join(", ")));
    }
    let k = x.dim_v();
    let mut cols = Vec::with_capacity(k);
    let mut eigenvalues = Vec::with_capacity(k);
    for (lam, _) in &spec.roots {
        let shifted = x.b1.sub(&Matrix::scalar(k, lam));
        let ker = kernel_basis(&shifted);
        let mut q = ker.basis_vectors().remove(0);
        if let Some(fv) = form_v {
            let c = fv.pair(&q, &q);
            if let Some(s) = rational_sqrt(&c) {
                if !s.is_zero() {
                    let s_inv = s.inv().expect("nonzero");
                    q = q.iter().map(|v| v.mul(&s_inv)).collect();
                }
            }
        }
        cols.push(q);
        eigenvalues.push(lam.clone());
    }
    let p = Matrix::from_cols(&cols, k);
    let p_inv = inverse(&p)?;
    let datum = x.act_with_inverse(&p_inv, &p);
    Ok(Eigenbasis { p, eigenvalues, datum })
}

/// Per-eigenvalue frame vectors in `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFrame {
    pub eigenvalues: Vec<Rational>,
    pub e: Vec<Vec<Rational>>,
    pub f: Vec<Vec<Rational>>,
    pub w0: Vec<Vec<Vec<Rational>>>,
}

/// How `e_l` and `W₀ˡ` are chosen.
#[derive(Clone, Copy, Debug)]
pub enum FrameRule<'a> {
    /// First echelon solution of `i_l(e) = 1`; `W₀ˡ` an echelon complement
    /// of `f_l` in `Ker i_l`.
    Plain,
    /// `W` carries the symplectic form; `W₀ˡ = ⟨e_l, f_l⟩^⊥`.
    Symplectic(&'a BilinearForm<Rational>),
    /// Auxiliary symplectic form `ω`: `e_l` also satisfies `ω(e_l, f_l) = 1`,
    /// `W₀ˡ` as in `Plain`.
    Auxiliary(&'a BilinearForm<Rational>),
}

fn row_functional(i: &Matrix<Rational>, l: usize) -> Vec<Rational> {
    i.row(l)
}

fn first_echelon_solution(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>, n: usize) -> Result<Option<Vec<Rational>>> {
    let a = Matrix::new(rows.len(), n, rows.into_iter().flatten().collect())?;
    solve_linear(&a, &rhs)
}

/// Frame for a datum whose `B1` is diagonal (see [`eigenbasis`]).
pub fn block_frame(xe: &AdhmDatum<Rational>, rule: FrameRule<'_>) -> Result<BlockFrame> {
    if !is_diagonal(&xe.b1) {
        return Err(Error::Unsupported("block_frame needs B1 in its eigenbasis".into()));
    }
    let (k, n) = (xe.dim_v(), xe.dim_w());
    let mut frame = BlockFrame { eigenvalues: Vec::new(), e: Vec::new(), f: Vec::new(), w0: Vec::new() };
    for l in 0..k {
        let il = row_functional(&xe.i, l);
        if il.iter().all(Field::is_zero) {
            return Err(Error::NotStable(format!("i vanishes on eigenline {l}")));
        }
        let f = xe.j.col(l);
        let e = match rule {
            FrameRule::Plain | FrameRule::Symplectic(_) => {
                first_echelon_solution(vec![il.clone()], vec![Rational::one()], n)?.expect("nonzero functional")
            }
            FrameRule::Auxiliary(om) => {
                // ω(e, f) = eᵀ·Ω·f is linear in e.
                let wf = om.gram().mul_vec(&f);
                first_echelon_solution(vec![il.clone(), wf], vec![Rational::one(), Rational::one()], n)?
                    .ok_or(Error::GenericityFailure(l))?
            }
        };
        let w0 = frame_complement(&il, &e, &f, rule)?;
        frame.eigenvalues.push(xe.b1[(l, l)].clone());
        frame.e.push(e);
        frame.f.push(f);
        frame.w0.push(w0);
    }
    validate_frame(xe, &frame, rule)?;
    Ok(frame)
}

fn frame_complement(il: &[Rational], e: &[Rational], f: &[Rational], rule: FrameRule<'_>) -> Result<Vec<Vec<Rational>>> {
    let n = il.len();
    let ef = Subspace::span(n, &[e.to_vec(), f.to_vec()])?;
    if ef.dim() < 2 {
        return Err(Error::DegenerateFrame("e and f are dependent".into()));
    }
    Ok(match rule {
        FrameRule::Symplectic(om) => {
            let rows = Matrix::from_rows(vec![om.gram().mul_vec(e), om.gram().mul_vec(f)]);
            kernel_basis(&rows).basis_vectors()
        }
        FrameRule::Plain | FrameRule::Auxiliary(_) => {
            let ker = kernel_basis(&Matrix::from_rows(vec![il.to_vec()]));
            let fs = Subspace::span(n, &[f.to_vec()])?;
            fs.complement_from(&ker.basis_vectors())
        }
    })
}

/// Checks the frame invariants against a diagonal-`B1` datum.
pub fn validate_frame(xe: &AdhmDatum<Rational>, frame: &BlockFrame, rule: FrameRule<'_>) -> Result<()> {
    let (k, n) = (xe.dim_v(), xe.dim_w());
    if frame.e.len() != k || frame.f.len() != k || frame.w0.len() != k {
        return Err(Error::DegenerateFrame("frame has the wrong number of blocks".into()));
    }
    for l in 0..k {
        let il = row_functional(&xe.i, l);
        let dot = |v: &[Rational]| il.iter().zip(v).fold(Rational::zero(), |a, (p, q)| a.add(&p.mul(q)));
        let (e, f) = (&frame.e[l], &frame.f[l]);
        if *f != xe.j.col(l) {
            return Err(Error::DegenerateFrame(format!("f_{l} differs from j(q_{l})")));
        }
        if !dot(e).is_one() {
            return Err(Error::DegenerateFrame(format!("i_{l}(e_{l}) != 1")));
        }
        if frame.w0[l].iter().any(|w| !dot(w).is_zero()) {
            return Err(Error::DegenerateFrame(format!("W0 of block {l} is not inside Ker i_{l}")));
        }
        let mut all = vec![e.clone(), f.clone()];
        all.extend(frame.w0[l].iter().cloned());
        if all.len() != n || Subspace::span(n, &all)?.dim() != n {
            return Err(Error::DegenerateFrame(format!("e, f, W0 do not form a basis of W in block {l}")));
        }
        match rule {
            FrameRule::Symplectic(om) => {
                for w in &frame.w0[l] {
                    if !om.pair(w, e).is_zero() || !om.pair(w, f).is_zero() {
                        return Err(Error::DegenerateFrame(format!("W0 of block {l} is not orthogonal to e, f")));
                    }
                }
            }
            FrameRule::Auxiliary(om) => {
                if !om.pair(e, f).is_one() {
                    return Err(Error::DegenerateFrame(format!("omega(e_{l}, f_{l}) != 1")));
                }
            }
            FrameRule::Plain => {}
        }
    }
    Ok(())
}

/// Result of the self-tensor limit.  The datum is written in the frame
/// basis of `Ṽ`; per block `l` (offset `2N·l`) the order is
/// `(e,−e), (f,−f), (e,e), (f,f)`, then `Δ⁺W₀ˡ`, then `Δ⁻W₀ˡ`.
#[derive(Clone, Debug)]
pub struct SelfTensorResult {
    pub datum: AdhmDatum<Rational>,
    pub frame: BlockFrame,
    pub eigenbasis: Matrix<Rational>,
    /// Frame vectors as columns, in the eigenbasis coordinates of `Ṽ`.
    pub frame_basis: Matrix<Rational>,
    /// `Φ(t)`-weight of each frame vector.
    pub weights: Vec<i32>,
    /// Induced forms (frame basis on `Ṽ`) when the input was self-dual.
    pub form_v: Option<BilinearForm<Rational>>,
    pub form_w: Option<BilinearForm<Rational>>,
}

impl SelfTensorResult {
    pub fn dim_v(&self) -> usize {
        self.frame.e.len()
    }

    /// `dim W` of the input.
    pub fn n(&self) -> usize {
        self.datum.dim_w().isqrt_exact()
    }

    /// Frame indices spanning the closed form of `V_S`.
    pub fn vs_indices(&self) -> Vec<usize> {
        let n = self.n();
        let m = n - 2;
        (0..self.dim_v()).flat_map(|l| (0..4 + m).map(move |s| 2 * n * l + s)).collect()
    }

    /// Frame indices spanning the closed form of `V_E`.
    pub fn ve_indices(&self) -> Vec<usize> {
        let n = self.n();
        let m = n - 2;
        (0..self.dim_v()).flat_map(|l| (0..m).map(move |s| 2 * n * l + 4 + m + s)).collect()
    }

    /// Indices of weight `w` frame vectors.
    pub fn weight_indices(&self, w: i32) -> Vec<usize> {
        self.weights.iter().enumerate().filter(|(_, x)| **x == w).map(|(a, _)| a).collect()
    }
}

trait IsqrtExact {
    fn isqrt_exact(self) -> usize;
}

impl IsqrtExact for usize {
    fn isqrt_exact(self) -> usize {
        let r = (self as f64).sqrt().round() as usize;
        assert_eq!(r * r, self, "W̃ dimension is a square");
        r
    }
}

/// Self-tensor limit of a GL datum.
pub fn self_tensor(x: &AdhmDatum<Rational>) -> Result<SelfTensorResult> {
    let eb = eigenbasis(x, None)?;
    let frame = block_frame(&eb.datum, FrameRule::Plain)?;
    self_tensor_framed(&eb, &frame, None)
}

/// Self-tensor limit of a self-dual datum with `V` orthogonal and `W`
/// symplectic; the result carries the induced forms.
pub fn self_tensor_sp(y: &SoDatum<Rational>) -> Result<SelfTensorResult> {
    if y.flavor() != SoFlavor::Sp {
        return Err(Error::Unsupported("self_tensor_sp needs V orthogonal and W symplectic".into()));
    }
    let v = y.violations();
    if !v.is_empty() {
        return Err(Error::InvariantViolation(v.join("; ")));
    }
    let eb = eigenbasis(y.datum(), Some(y.form_v()))?;
    let frame = block_frame(&eb.datum, FrameRule::Symplectic(y.form_w()))?;
    self_tensor_framed(&eb, &frame, Some((y.form_v(), y.form_w())))
}

/// Self-tensor limit with an auxiliary symplectic form on `W`.
pub fn self_tensor_aux(x: &AdhmDatum<Rational>, omega: &BilinearForm<Rational>) -> Result<SelfTensorResult> {
    let eb = eigenbasis(x, None)?;
    let frame = block_frame(&eb.datum, FrameRule::Auxiliary(omega))?;
    self_tensor_framed(&eb, &frame, None)
}

fn frame_vectors(k: usize, n: usize, frame: &BlockFrame) -> (Matrix<Rational>, Vec<i32>) {
    let nv = 2 * k * n;
    let mut cols = Vec::with_capacity(nv);
    let mut weights = Vec::with_capacity(nv);
    let neg = |v: &[Rational]| v.iter().map(Field::neg).collect::<Vec<_>>();
    for l in 0..k {
        let emb = |a: &[Rational], b: &[Rational]| {
            let mut v = vec![Rational::zero(); nv];
            for w in 0..n {
                v[l * n + w] = a[w].clone();
                v[k * n + w * k + l] = b[w].clone();
            }
            v
        };
        let (e, f) = (&frame.e[l], &frame.f[l]);
        cols.push(emb(e, &neg(e)));
        weights.push(-1);
        cols.push(emb(f, &neg(f)));
        weights.push(1);
        cols.push(emb(e, e));
        weights.push(0);
        cols.push(emb(f, f));
        weights.push(0);
        for w in &frame.w0[l] {
            cols.push(emb(w, w));
            weights.push(0);
        }
        for w in &frame.w0[l] {
            cols.push(emb(w, &neg(w)));
            weights.push(0);
        }
    }
    (Matrix::from_cols(&cols, nv), weights)
}

fn lift(m: &Matrix<Rational>) -> Matrix<RatFunc> {
    m.map(RatFunc::constant)
}

fn eval_limit(name: &str, m: &Matrix<RatFunc>) -> Result<Matrix<Rational>> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m[(r, c)].eval_at_zero().ok_or_else(|| Error::PoleAtZero { matrix: name.to_string(), row: r, col: c })?;
            out[(r, c)] = v;
        }
    }
    Ok(out)
}

/// Core of the limit: `𝖳(x_t, x)` over `Q(t)`, moved to the frame basis,
/// conjugated by `Φ(t)` and evaluated at `t = 0`.
pub fn self_tensor_framed(
    eb: &Eigenbasis,
    frame: &BlockFrame,
    forms: Option<(&BilinearForm<Rational>, &BilinearForm<Rational>)>,
) -> Result<SelfTensorResult> {
    let xe = &eb.datum;
    let (k, n) = (xe.dim_v(), xe.dim_w());
    if n < 2 && k > 0 {
        return Err(dim_err("self-tensor needs dim W >= 2"));
    }
    let (fb, weights) = frame_vectors(k, n, frame);
    let fb_inv = inverse(&fb).map_err(|_| Error::DegenerateFrame("frame vectors are dependent".into()))?;

    let xq = xe.map(RatFunc::constant);
    let xt = xq.translate_b1(&RatFunc::t());
    let big = tensor(&xt, &xq)?;

    let (fq, fq_inv) = (lift(&fb), lift(&fb_inv));
    let tp: Vec<RatFunc> = weights.iter().map(|w| RatFunc::t_pow(*w)).collect();
    let tm: Vec<RatFunc> = weights.iter().map(|w| RatFunc::t_pow(-*w)).collect();
    let conj = |m: &Matrix<RatFunc>| {
        let d = fq_inv.mul(m).mul(&fq);
        Matrix::from_fn(d.rows(), d.cols(), |a, b| d[(a, b)].mul(&tp[a]).mul(&tm[b]))
    };
    let b1 = eval_limit("B1", &conj(&big.b1))?;
    let b2 = eval_limit("B2", &conj(&big.b2))?;
    let ii = fq_inv.mul(&big.i);
    let ii = Matrix::from_fn(ii.rows(), ii.cols(), |a, c| ii[(a, c)].mul(&tp[a]));
    let jj = big.j.mul(&fq);
    let jj = Matrix::from_fn(jj.rows(), jj.cols(), |c, b| jj[(c, b)].mul(&tm[b]));
    let datum = AdhmDatum::new(b1, b2, eval_limit("i", &ii)?, eval_limit("j", &jj)?)?;

    let (form_v, form_w) = match forms {
        None => (None, None),
        Some((fv, fw)) => {
            let gv = eb.p.transpose().mul(fv.gram()).mul(&eb.p);
            let om = fw.gram();
            let mut gt = Matrix::zeros(2 * k * n, 2 * k * n);
            gt.set_block(0, 0, &gv.kron(om));
            gt.set_block(k * n, k * n, &om.kron(&gv));
            let g_frame = fb.transpose().mul(&gt).mul(&fb);
            check_phi_preserves(&g_frame, &weights)?;
            let fv_t = BilinearForm::new(FormKind::Alternating, g_frame)?;
            let fw_t = BilinearForm::new(FormKind::Symmetric, om.kron(om))?;
            let y = SoDatum::from_parts_unchecked(datum.clone(), fv_t.clone(), fw_t.clone());
            let v = y.violations();
            if !v.is_empty() {
                return Err(Error::InvariantViolation(format!("self-tensor limit: {}", v.join("; "))));
            }
            (Some(fv_t), Some(fw_t))
        }
    };
    Ok(SelfTensorResult {
        datum,
        frame: frame.clone(),
        eigenbasis: eb.p.clone(),
        frame_basis: fb,
        weights,
        form_v,
        form_w,
    })
}

/// `Φ(t)ᵀ·G·Φ(t) = G` over `Q(t)` with `Φ(t) = diag(t^w)` in the frame basis.
pub fn check_phi_preserves(g: &Matrix<Rational>, weights: &[i32]) -> Result<()> {
    let gq = lift(g);
    let phi = Matrix::diagonal(&weights.iter().map(|w| RatFunc::t_pow(*w)).collect::<Vec<_>>());
    if phi.transpose().mul(&gq).mul(&phi) != gq {
        return Err(Error::InvariantViolation("Phi(t) does not preserve the form on V~".into()));
    }
    Ok(())
}

/// Columns `w_a⊗w_b + w_b⊗w_a` (`a < b`) and `w_a⊗w_a`, in the order of
/// pairs `a ≤ b`.
pub fn sym_basis(n: usize) -> Matrix<Rational> {
    let mut cols = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut v = vec![Rational::zero(); n * n];
            v[a * n + b] = Rational::one();
            v[b * n + a] = Rational::one();
            cols.push(v);
        }
    }
    Matrix::from_cols(&cols, n * n)
}

/// Columns `w_a⊗w_b − w_b⊗w_a`, `a < b`.
pub fn ext_basis(n: usize) -> Matrix<Rational> {
    let mut cols = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut v = vec![Rational::zero(); n * n];
            v[a * n + b] = Rational::one();
            v[b * n + a] = Rational::one().neg();
            cols.push(v);
        }
    }
    Matrix::from_cols(&cols, n * n)
}

fn coordinate_subspace(dim: usize, idx: &[usize]) -> Subspace<Rational> {
    let vs: Vec<Vec<Rational>> = idx
        .iter()
        .map(|&a| {
            let mut v = vec![Rational::zero(); dim];
            v[a] = Rational::one();
            v
        })
        .collect();
    Subspace::span(dim, &vs).expect("unit vectors")
}

/// Closures of `ĩ₀(S²W)` and `ĩ₀(Λ²W)` under `(B̃₁)₀, (B̃₂)₀`, checked
/// against the coordinate subspaces of [`SelfTensorResult::vs_indices`] and
/// [`SelfTensorResult::ve_indices`].
pub fn vs_ve(r: &SelfTensorResult) -> Result<(Subspace<Rational>, Subspace<Rational>)> {
    let x = &r.datum;
    let nv = x.dim_v();
    let n = r.n();
    let ops = [&x.b1, &x.b2];
    let vs = invariant_closure(&Subspace::column_span(&x.i.mul(&sym_basis(n))), &ops)?;
    let ve = invariant_closure(&Subspace::column_span(&x.i.mul(&ext_basis(n))), &ops)?;
    if vs != coordinate_subspace(nv, &r.vs_indices()) {
        return Err(Error::ClosedFormMismatch(format!("V_S has dim {}, closed form {}", vs.dim(), r.vs_indices().len())));
    }
    if ve != coordinate_subspace(nv, &r.ve_indices()) {
        return Err(Error::ClosedFormMismatch(format!("V_E has dim {}, closed form {}", ve.dim(), r.ve_indices().len())));
    }
    Ok((vs, ve))
}

/// Restriction of a datum to a coordinate subspace of `V` and the column
/// span of `wbasis` in `W`.
pub fn restrict(x: &AdhmDatum<Rational>, idx: &[usize], wbasis: &Matrix<Rational>) -> Result<AdhmDatum<Rational>> {
    let nv = x.dim_v();
    let rest: Vec<usize> = (0..nv).filter(|a| !idx.contains(a)).collect();
    for (name, b) in [("B1", &x.b1), ("B2", &x.b2)] {
        if !b.select(&rest, idx).is_zero() {
            return Err(Error::ContainmentViolation(format!("{name} does not preserve the subspace")));
        }
    }
    let iw = x.i.mul(wbasis);
    if !iw.select(&rest, &(0..iw.cols()).collect::<Vec<_>>()).is_zero() {
        return Err(Error::ContainmentViolation("i does not map W-part into the subspace".into()));
    }
    let wspace = wbasis.cols();
    let mut jcols = Vec::with_capacity(idx.len());
    for &c in idx {
        let v = x.j.col(c);
        let coords = solve_linear(wbasis, &v)?
            .ok_or_else(|| Error::ContainmentViolation(format!("j maps basis vector {c} outside the W-part")))?;
        jcols.push(coords);
    }
    let all_w: Vec<usize> = (0..wspace).collect();
    AdhmDatum::new(
        x.b1.select(idx, idx),
        x.b2.select(idx, idx),
        iw.select(idx, &all_w),
        Matrix::from_cols(&jcols, wspace),
    )
}

/// Restriction to `(V_S, S²W)`.
pub fn restrict_sym(r: &SelfTensorResult) -> Result<AdhmDatum<Rational>> {
    restrict(&r.datum, &r.vs_indices(), &sym_basis(r.n()))
}

/// Restriction to `(V_E, Λ²W)`.
pub fn restrict_ext(r: &SelfTensorResult) -> Result<AdhmDatum<Rational>> {
    restrict(&r.datum, &r.ve_indices(), &ext_basis(r.n()))
}

/// `framed_sum(sym, ext)` transported back by the block base change equals
/// the self-tensor datum.
pub fn reconstruction_check(r: &SelfTensorResult) -> Result<bool> {
    let sym = restrict_sym(r)?;
    let ext = restrict_ext(r)?;
    let sum = AdhmDatum::framed_sum(&[&sym, &ext]);
    let mut perm = r.vs_indices();
    perm.extend(r.ve_indices());
    let nv = r.datum.dim_v();
    let g = Matrix::from_fn(nv, nv, |a, b| if perm[a] == b { Rational::one() } else { Rational::zero() });
    let n = r.n();
    let h = Matrix::hstack(&[&sym_basis(n), &ext_basis(n)])?;
    let moved = r.datum.act(&g)?.act_frame(&inverse(&h)?)?;
    Ok(moved == sum)
}

/// The unique `g` with `g·x = y` for stable `x`, if it exists.  Built from a
/// spanning set of words `h(B)·i(w)` and then checked on every equation.
pub fn intertwiner(x: &AdhmDatum<Rational>, y: &AdhmDatum<Rational>) -> Result<Option<Matrix<Rational>>> {
    if x.dim_v() != y.dim_v() || x.dim_w() != y.dim_w() {
        return Err(dim_err("intertwiner needs equal dimensions"));
    }
    let nv = x.dim_v();
    let mut src: Vec<Vec<Rational>> = Vec::new();
    let mut dst: Vec<Vec<Rational>> = Vec::new();
    let mut span = Subspace::zero(nv);
    let mut frontier: Vec<(Vec<Rational>, Vec<Rational>)> = (0..x.dim_w()).map(|c| (x.i.col(c), y.i.col(c))).collect();
    while !frontier.is_empty() && span.dim() < nv {
        let mut next = Vec::new();
        for (u, v) in frontier {
            if span.contains(&u) {
                continue;
            }
            let mut vs = span.basis_vectors();
            vs.push(u.clone());
            span = Subspace::span(nv, &vs)?;
            for (bx, by) in [(&x.b1, &y.b1), (&x.b2, &y.b2)] {
                next.push((bx.mul_vec(&u), by.mul_vec(&v)));
            }
            src.push(u);
            dst.push(v);
        }
        frontier = next;
    }
    if span.dim() < nv {
        return Err(Error::NotStable("intertwiner source is not stable".into()));
    }
    let s = Matrix::from_cols(&src, nv);
    let d = Matrix::from_cols(&dst, nv);
    let g = d.mul(&inverse(&s)?);
    match x.act(&g) {
        Ok(gx) if gx == *y => Ok(Some(g)),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn one_by_one_tensor() {
        // b1 = 0, b1' = 1, scalars i, j.
        let x = AdhmDatum::new(q(&[&[0]]), q(&[&[0]]), q(&[&[2]]), q(&[&[3]])).unwrap();
        let y = AdhmDatum::new(q(&[&[1]]), q(&[&[0]]), q(&[&[5]]), q(&[&[7]])).unwrap();
        let t = tensor(&x, &y).unwrap();
        // 0·X − X·1 + i·j' = 0, so X = i·j' = 14.
        assert_eq!(t.b2[(0, 1)], int(14));
        // 1·Y − Y·0 + j·i' = 0, so Y = −15.
        assert_eq!(t.b2[(1, 0)], int(-15));
    }

    #[test]
    fn empty_factor_pads() {
        let x = AdhmDatum::new(q(&[&[1]]), q(&[&[2]]), q(&[&[1, 0]]), q(&[&[0], &[1]])).unwrap();
        let y = AdhmDatum::<Rational>::zero(0, 2);
        let t = tensor(&x, &y).unwrap();
        assert_eq!(t.b1, x.b1.kron(&Matrix::identity(2)));
        assert_eq!(t.i, x.i.kron(&Matrix::identity(2)));
        assert!(tensor_dual_check(&x, &y).unwrap());
    }

    #[test]
    fn common_eigenvalue_rejected() {
        let x = AdhmDatum::new(q(&[&[1]]), q(&[&[0]]), q(&[&[1]]), q(&[&[1]])).unwrap();
        assert_eq!(tensor(&x, &x), Err(Error::CommonEigenvalue));
        let z = AdhmDatum::new(q(&[&[1]]), q(&[&[0]]), q(&[&[0]]), q(&[&[0]])).unwrap();
        assert!(tensor(&z, &z).unwrap().b2.is_zero());
    }

    #[test]
    fn frame_for_k1() {
        let x = AdhmDatum::new(q(&[&[0]]), q(&[&[0]]), q(&[&[1, 0, 0]]), q(&[&[0], &[1], &[0]])).unwrap();
        let eb = eigenbasis(&x, None).unwrap();
        let fr = block_frame(&eb.datum, FrameRule::Plain).unwrap();
        assert_eq!(fr.e[0], vec![int(1), int(0), int(0)]);
        assert_eq!(fr.f[0], vec![int(0), int(1), int(0)]);
        assert_eq!(fr.w0[0], vec![vec![int(0), int(0), int(1)]]);
        let bad = AdhmDatum::new(q(&[&[0]]), q(&[&[0]]), q(&[&[0, 0, 0]]), q(&[&[0], &[1], &[0]])).unwrap();
        assert!(matches!(block_frame(&bad, FrameRule::Plain), Err(Error::NotStable(_))));
    }

    #[test]
    fn self_tensor_k1_plain() {
        let x = AdhmDatum::new(q(&[&[3]]), q(&[&[0]]), q(&[&[1, 0, 0]]), q(&[&[0], &[1], &[0]])).unwrap();
        let r = self_tensor(&x).unwrap();
        assert!(r.datum.moment_map().is_zero());
        assert!(r.datum.is_regular());
        let (vs, ve) = vs_ve(&r).unwrap();
        assert_eq!(vs.dim(), 5);
        assert_eq!(ve.dim(), 1);
        assert!(reconstruction_check(&r).unwrap());
    }

    #[test]
    fn sym_ext_dims() {
        assert_eq!(sym_basis(3).cols(), 6);
        assert_eq!(ext_basis(4).cols(), 6);
    }
}
