//! ADHM data, bilinear forms, adjoints and moment maps.
//!
//! Conventions: a form on `V` is `(u, v) = uᵀ·G·v`.  The right adjoint of an
//! endomorphism is `B* = G⁻¹·Bᵀ·G`, and for `i: W → V` it is
//! `i* = G_W⁻¹·iᵀ·G_V`.  Moment-map values are returned as matrices; an
//! element `M` of `sp(V)` stands for the functional `ξ ↦ −½·tr(ξ·M)`, so that
//! `μ_V(v) = ½(•v, v)` is represented by `v·vᵀ·G`.

use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::{inverse, invariant_closure, sylvester_solve, Subspace};
use crate::matrix::{check_square, Matrix};
use crate::poly::{charpoly_rational, rational_roots};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Alternating,
}

impl FormKind {
    pub fn opposite(self) -> Self {
        match self {
            FormKind::Symmetric => FormKind::Alternating,
            FormKind::Alternating => FormKind::Symmetric,
        }
    }
}

/// Nondegenerate symmetric or alternating form given by its gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm<F: Field = Rational> {
    kind: FormKind,
    gram: Matrix<F>,
    gram_inv: Matrix<F>,
}

impl<F: Field> BilinearForm<F> {
    pub fn new(kind: FormKind, gram: Matrix<F>) -> Result<Self> {
        if !gram.is_square() {
            return Err(dim_err("gram matrix must be square"));
        }
        let ok = match kind {
            FormKind::Symmetric => gram.is_symmetric(),
            FormKind::Alternating => gram.is_antisymmetric(),
        };
        if !ok {
            return Err(Error::InvariantViolation(format!("gram matrix is not {kind:?}")));
        }
        let gram_inv = inverse(&gram).map_err(|_| Error::InvariantViolation("degenerate form".into()))?;
        Ok(BilinearForm { kind, gram, gram_inv })
    }

    /// `J = [[0, I], [−I, 0]]` on `F^n`, `n` even.
    pub fn standard_symplectic(n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(dim_err(format!("symplectic form needs even dimension, got {n}")));
        }
        let h = n / 2;
        let g = Matrix::from_fn(n, n, |i, j| {
            if j == i + h && i < h {
                F::one()
            } else if i == j + h && j < h {
                F::one().neg()
            } else {
                F::zero()
            }
        });
        Self::new(FormKind::Alternating, g)
    }

    pub fn standard_orthogonal(n: usize) -> Self {
        Self::new(FormKind::Symmetric, Matrix::identity(n)).expect("identity is a form")
    }

    /// On `F^3`: `e1, e2` hyperbolic (`(e1,e2) = 1`, both isotropic) and
    /// `(e3,e3) = 1`.
    pub fn hyperbolic_plus_unit() -> Self {
        let g = Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 1) | (1, 0) | (2, 2) => F::one(),
            _ => F::zero(),
        });
        Self::new(FormKind::Symmetric, g).expect("nondegenerate")
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix<F> {
        &self.gram_inv
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn pair(&self, u: &[F], v: &[F]) -> F {
        u.iter().zip(self.gram.mul_vec(v)).fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(&b)))
    }

    pub fn direct_sum(forms: &[&Self]) -> Result<Self> {
        let kind = forms.first().map_or(FormKind::Symmetric, |f| f.kind);
        if forms.iter().any(|f| f.kind != kind) {
            return Err(Error::InvariantViolation("direct sum of forms of different kinds".into()));
        }
        let grams: Vec<&Matrix<F>> = forms.iter().map(|f| &f.gram).collect();
        Self::new(kind, Matrix::block_diag(&grams))
    }

    /// Form `(u,v)ᵀ·G·(u,v)` on the tensor product, `G = G_1 ⊗ G_2`.
    pub fn tensor(&self, o: &Self) -> Result<Self> {
        let kind = if self.kind == o.kind { FormKind::Symmetric } else { FormKind::Alternating };
        Self::new(kind, self.gram.kron(&o.gram))
    }

    /// Restriction to the column span of `basis` (columns are the new basis).
    pub fn restrict(&self, basis: &Matrix<F>) -> Result<Self> {
        Self::new(self.kind, basis.transpose().mul(&self.gram).mul(basis))
    }

    pub fn scaled(&self, c: &F) -> Result<Self> {
        Self::new(self.kind, self.gram.scale(c))
    }

    pub fn is_preserved_by(&self, g: &Matrix<F>) -> bool {
        g.transpose().mul(&self.gram).mul(g) == self.gram
    }
}

/// `B* = G⁻¹·Bᵀ·G`.
pub fn adjoint_endo<F: Field>(b: &Matrix<F>, form: &BilinearForm<F>) -> Result<Matrix<F>> {
    check_square(b, form.dim(), "adjoint_endo")?;
    Ok(form.gram_inv().mul(&b.transpose()).mul(form.gram()))
}

/// For `i: W → V`, the map `i*: V → W` with `(i w, v)_V = (w, i* v)_W`.
pub fn adjoint_hom<F: Field>(i: &Matrix<F>, form_w: &BilinearForm<F>, form_v: &BilinearForm<F>) -> Result<Matrix<F>> {
    if i.shape() != (form_v.dim(), form_w.dim()) {
        return Err(dim_err(format!(
            "adjoint_hom: i is {:?}, forms are on dim V = {}, dim W = {}",
            i.shape(),
            form_v.dim(),
            form_w.dim()
        )));
    }
    Ok(form_w.gram_inv().mul(&i.transpose()).mul(form_v.gram()))
}

/// Anti-self-adjoint part `½(M − M*)`: the projection onto `sp(V)` (or
/// `so(V)`).
pub fn anti_self_adjoint_part<F: Field>(m: &Matrix<F>, form: &BilinearForm<F>) -> Result<Matrix<F>> {
    let half = F::from_i64(2).inv().ok_or_else(|| Error::Unsupported("characteristic 2".into()))?;
    Ok(m.sub(&adjoint_endo(m, form)?).scale(&half))
}

/// GL-type ADHM datum `(B1, B2, i, j)` with `i: W → V`, `j: V → W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdhmDatum<F: Field = Rational> {
    pub b1: Matrix<F>,
    pub b2: Matrix<F>,
    pub i: Matrix<F>,
    pub j: Matrix<F>,
}

impl<F: Field> AdhmDatum<F> {
    pub fn new(b1: Matrix<F>, b2: Matrix<F>, i: Matrix<F>, j: Matrix<F>) -> Result<Self> {
        let k = b1.rows();
        let n = i.cols();
        check_square(&b1, k, "B1")?;
        check_square(&b2, k, "B2")?;
        if i.rows() != k {
            return Err(dim_err(format!("i must be {k}xN, got {:?}", i.shape())));
        }
        if j.shape() != (n, k) {
            return Err(dim_err(format!("j must be {n}x{k}, got {:?}", j.shape())));
        }
        Ok(AdhmDatum { b1, b2, i, j })
    }

    pub fn zero(k: usize, n: usize) -> Self {
        AdhmDatum {
            b1: Matrix::zeros(k, k),
            b2: Matrix::zeros(k, k),
            i: Matrix::zeros(k, n),
            j: Matrix::zeros(n, k),
        }
    }

    pub fn dim_v(&self) -> usize {
        self.b1.rows()
    }

    pub fn dim_w(&self) -> usize {
        self.i.cols()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> AdhmDatum<G> {
        AdhmDatum { b1: self.b1.map(&f), b2: self.b2.map(&f), i: self.i.map(&f), j: self.j.map(&f) }
    }

    /// `[B1, B2] + i·j`.
    pub fn moment_map(&self) -> Matrix<F> {
        self.b1.commutator(&self.b2).add(&self.i.mul(&self.j))
    }

    /// `Im(i)` generates `V` under `B1, B2`.
    pub fn is_stable(&self) -> bool {
        let k = self.dim_v();
        if k == 0 {
            return true;
        }
        let seed = Subspace::column_span(&self.i);
        invariant_closure(&seed, &[&self.b1, &self.b2]).expect("square operators").dim() == k
    }

    /// No nonzero `B`-invariant subspace inside `Ker j`; computed as the
    /// stability of the dual datum.
    pub fn is_costable(&self) -> bool {
        self.dual().is_stable()
    }

    pub fn is_regular(&self) -> bool {
        self.is_stable() && self.is_costable()
    }

    /// `(B1ᵀ, B2ᵀ, −jᵀ, iᵀ)` on `(V∨, W∨)`.
    pub fn dual(&self) -> Self {
        AdhmDatum {
            b1: self.b1.transpose(),
            b2: self.b2.transpose(),
            i: self.j.transpose().neg(),
            j: self.i.transpose(),
        }
    }

    /// `(g B1 g⁻¹, g B2 g⁻¹, g i, j g⁻¹)`.
    pub fn act(&self, g: &Matrix<F>) -> Result<Self> {
        check_square(g, self.dim_v(), "act")?;
        let gi = inverse(g)?;
        Ok(self.act_with_inverse(g, &gi))
    }

    pub(crate) fn act_with_inverse(&self, g: &Matrix<F>, gi: &Matrix<F>) -> Self {
        AdhmDatum {
            b1: g.mul(&self.b1).mul(gi),
            b2: g.mul(&self.b2).mul(gi),
            i: g.mul(&self.i),
            j: self.j.mul(gi),
        }
    }

    /// Change of frame `h ∈ GL(W)`: `i ↦ i·h⁻¹`, `j ↦ h·j`.
    pub fn act_frame(&self, h: &Matrix<F>) -> Result<Self> {
        check_square(h, self.dim_w(), "act_frame")?;
        let hi = inverse(h)?;
        Ok(AdhmDatum { b1: self.b1.clone(), b2: self.b2.clone(), i: self.i.mul(&hi), j: h.mul(&self.j) })
    }

    /// `(B1 + t·Id, B2, i, j)`.
    pub fn translate_b1(&self, t: &F) -> Self {
        AdhmDatum {
            b1: self.b1.add(&Matrix::scalar(self.dim_v(), t)),
            b2: self.b2.clone(),
            i: self.i.clone(),
            j: self.j.clone(),
        }
    }

    /// Direct sum with a common framing `W`, assembled as in the
    /// factorisation property: `B1` and the diagonal blocks of `B2` are
    /// block-diagonal, `i` is stacked and `j` concatenated, and each
    /// off-diagonal block `X` of `B2` is the unique solution of
    /// `B1^l X − X B1^m + i_l j_m = 0`, so that the moment map of the sum is
    /// the block-diagonal of the summands' moment maps.  When two summands
    /// have overlapping `B1`-spectra the block is taken to be zero, which is
    /// only admissible if `i_l j_m = 0`.
    pub fn direct_sum(data: &[&Self]) -> Result<Self> {
        let Some(first) = data.first() else {
            return Err(dim_err("direct_sum of no summands"));
        };
        let n = first.dim_w();
        if data.iter().any(|x| x.dim_w() != n) {
            return Err(dim_err("direct_sum summands have different framing dimensions"));
        }
        let sizes: Vec<usize> = data.iter().map(|x| x.dim_v()).collect();
        let offs: Vec<usize> = sizes.iter().scan(0, |s, &k| {
            let o = *s;
            *s += k;
            Some(o)
        }).collect();
        let total: usize = sizes.iter().sum();
        let b1s: Vec<&Matrix<F>> = data.iter().map(|x| &x.b1).collect();
        let b1 = Matrix::block_diag(&b1s);
        let mut b2 = Matrix::zeros(total, total);
        for (l, x) in data.iter().enumerate() {
            b2.set_block(offs[l], offs[l], &x.b2);
            for (m, y) in data.iter().enumerate() {
                if l == m {
                    continue;
                }
                let c = x.i.mul(&y.j);
                let block = match sylvester_solve(&x.b1, &y.b1, &c) {
                    Ok(blk) => blk,
                    Err(Error::CommonEigenvalue) if c.is_zero() => Matrix::zeros(sizes[l], sizes[m]),
                    Err(e) => return Err(e),
                };
                b2.set_block(offs[l], offs[m], &block);
            }
        }
        let is: Vec<&Matrix<F>> = data.iter().map(|x| &x.i).collect();
        let js: Vec<&Matrix<F>> = data.iter().map(|x| &x.j).collect();
        Ok(AdhmDatum { b1, b2, i: Matrix::vstack(&is)?, j: Matrix::hstack(&js)? })
    }

    /// Direct sum of framed data: both `V` and `W` are summed and every map
    /// is block-diagonal.
    pub fn framed_sum(data: &[&Self]) -> Self {
        let pick = |f: fn(&Self) -> &Matrix<F>| data.iter().map(|x| f(x)).collect::<Vec<_>>();
        AdhmDatum {
            b1: Matrix::block_diag(&pick(|x| &x.b1)),
            b2: Matrix::block_diag(&pick(|x| &x.b2)),
            i: Matrix::block_diag(&pick(|x| &x.i)),
            j: Matrix::block_diag(&pick(|x| &x.j)),
        }
    }
}

/// Eigenvalues of `B1` found by rational-root extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    /// Distinct rational roots with multiplicity, increasing.
    pub roots: Vec<(Rational, usize)>,
}

impl Spectrum {
    pub fn is_distinct(&self) -> bool {
        self.roots.iter().all(|(_, m)| *m == 1)
    }

    pub fn values(&self) -> Vec<Rational> {
        self.roots.iter().flat_map(|(r, m)| std::iter::repeat(r.clone()).take(*m)).collect()
    }
}

impl AdhmDatum<Rational> {
    /// Rational eigenvalues of `B1`; [`Error::NotSplitOverBase`] when the
    /// characteristic polynomial has an irreducible factor of degree > 1.
    pub fn b1_spectrum(&self) -> Result<Spectrum> {
        let p = charpoly_rational(&self.b1);
        let roots = rational_roots(&p);
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        if total != self.dim_v() {
            return Err(Error::NotSplitOverBase);
        }
        Ok(Spectrum { roots })
    }
}

/// Which way round the forms go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SoFlavor {
    /// `V` symplectic, `W` orthogonal: `SO(N)` instantons.
    So,
    /// `V` orthogonal, `W` symplectic: `Sp(N/2)` instantons.
    Sp,
}

/// Self-dual datum: `B1, B2` self-adjoint for `formV`, `j = i*`, with forms
/// of opposite kinds on `V` and `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoDatum<F: Field = Rational> {
    datum: AdhmDatum<F>,
    form_v: BilinearForm<F>,
    form_w: BilinearForm<F>,
}

impl<F: Field> SoDatum<F> {
    /// Builds the datum with `j := i*` and checks every invariant.
    pub fn new(b1: Matrix<F>, b2: Matrix<F>, i: Matrix<F>, form_v: BilinearForm<F>, form_w: BilinearForm<F>) -> Result<Self> {
        let j = adjoint_hom(&i, &form_w, &form_v)?;
        let datum = AdhmDatum::new(b1, b2, i, j)?;
        let y = SoDatum { datum, form_v, form_w };
        let v = y.violations();
        if !v.is_empty() {
            return Err(Error::InvariantViolation(v.join("; ")));
        }
        Ok(y)
    }

    /// Wraps a datum without checking; use [`SoDatum::violations`] to audit.
    pub fn from_parts_unchecked(datum: AdhmDatum<F>, form_v: BilinearForm<F>, form_w: BilinearForm<F>) -> Self {
        SoDatum { datum, form_v, form_w }
    }

    pub fn from_datum(datum: AdhmDatum<F>, form_v: BilinearForm<F>, form_w: BilinearForm<F>) -> Result<Self> {
        let y = SoDatum { datum, form_v, form_w };
        let v = y.violations();
        if !v.is_empty() {
            return Err(Error::InvariantViolation(v.join("; ")));
        }
        Ok(y)
    }

    /// Human-readable list of failed invariants (empty when valid).
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let x = &self.datum;
        if self.form_v.dim() != x.dim_v() || self.form_w.dim() != x.dim_w() {
            out.push("form dimensions do not match the datum".to_string());
            return out;
        }
        if self.form_v.kind() == self.form_w.kind() {
            out.push("forms on V and W must be of opposite kinds".to_string());
        }
        if self.form_v.kind() == FormKind::Alternating && x.dim_v() % 2 != 0 {
            out.push("dim V must be even".to_string());
        }
        for (name, b) in [("B1", &x.b1), ("B2", &x.b2)] {
            if adjoint_endo(b, &self.form_v).map_or(true, |bs| bs != *b) {
                out.push(format!("{name} is not self-adjoint"));
            }
        }
        if adjoint_hom(&x.i, &self.form_w, &self.form_v).map_or(true, |is| is != x.j) {
            out.push("j differs from i*".to_string());
        }
        out
    }

    pub fn flavor(&self) -> SoFlavor {
        match self.form_v.kind() {
            FormKind::Alternating => SoFlavor::So,
            FormKind::Symmetric => SoFlavor::Sp,
        }
    }

    pub fn datum(&self) -> &AdhmDatum<F> {
        &self.datum
    }

    pub fn into_datum(self) -> AdhmDatum<F> {
        self.datum
    }

    pub fn form_v(&self) -> &BilinearForm<F> {
        &self.form_v
    }

    pub fn form_w(&self) -> &BilinearForm<F> {
        &self.form_w
    }

    /// `[B1, B2] + i·i*`, checked to be anti-self-adjoint.
    pub fn moment_map(&self) -> Result<Matrix<F>> {
        let v = self.violations();
        if !v.is_empty() {
            return Err(Error::InvariantViolation(v.join("; ")));
        }
        let m = self.datum.moment_map();
        let ms = adjoint_endo(&m, &self.form_v)?;
        if ms != m.neg() {
            return Err(Error::InvariantViolation("moment map is not anti-self-adjoint".into()));
        }
        Ok(m)
    }

    /// Action of `g` preserving `formV`.
    pub fn act(&self, g: &Matrix<F>) -> Result<Self> {
        if !self.form_v.is_preserved_by(g) {
            return Err(Error::InvariantViolation("g does not preserve the form on V".into()));
        }
        let datum = self.datum.act(g)?;
        Ok(SoDatum { datum, form_v: self.form_v.clone(), form_w: self.form_w.clone() })
    }

    /// Factorisation assembly of self-dual data with a common `formW`.
    pub fn direct_sum(data: &[&Self]) -> Result<Self> {
        let Some(first) = data.first() else {
            return Err(dim_err("direct_sum of no summands"));
        };
        if data.iter().any(|y| y.form_w != first.form_w) {
            return Err(dim_err("direct_sum summands have different forms on W"));
        }
        let xs: Vec<&AdhmDatum<F>> = data.iter().map(|y| &y.datum).collect();
        let fs: Vec<&BilinearForm<F>> = data.iter().map(|y| &y.form_v).collect();
        let datum = AdhmDatum::direct_sum(&xs)?;
        Self::from_datum(datum, BilinearForm::direct_sum(&fs)?, first.form_w.clone())
    }
}

/// `μ_{Hom(W,V)}(i) = i·i*`.
pub fn moment_map_hom<F: Field>(i: &Matrix<F>, form_w: &BilinearForm<F>, form_v: &BilinearForm<F>) -> Result<Matrix<F>> {
    Ok(i.mul(&adjoint_hom(i, form_w, form_v)?))
}

/// `μ_V(v) = ½(•v, v)`, represented by `v·vᵀ·G`.
pub fn moment_map_vector<F: Field>(v: &[F], form_v: &BilinearForm<F>) -> Matrix<F> {
    let col = Matrix::column(v);
    col.mul(&col.transpose()).mul(form_v.gram())
}

/// Moment map of `T*V` at `(a, φ)` with `a ∈ V`, `φ ∈ V∨` a row vector: the
/// projection of `a·φ` to `sp(V)`.
pub fn moment_map_cotangent<F: Field>(a: &[F], phi: &[F], form_v: &BilinearForm<F>) -> Result<Matrix<F>> {
    let m = Matrix::column(a).mul(&Matrix::from_rows(vec![phi.to_vec()]));
    anti_self_adjoint_part(&m, form_v)
}

/// Parts of a partition of `dim V` into even pieces, decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>, dim_v: usize) -> Result<Self> {
        if parts.iter().any(|&p| p == 0 || p % 2 != 0) {
            return Err(Error::InvariantViolation("parts must be positive and even".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvariantViolation("parts must be decreasing".into()));
        }
        if parts.iter().sum::<usize>() != dim_v {
            return Err(Error::InvariantViolation(format!("parts do not sum to {dim_v}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Check that a list of summands matches this partition.
    pub fn matches<F: Field>(&self, data: &[&SoDatum<F>]) -> bool {
        let mut sizes: Vec<usize> = data.iter().map(|y| y.datum().dim_v()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes == self.parts
    }
}

/// Serialized form `{"kind":"symmetric"|"alternating","gram":Matrix}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub kind: FormKind,
    pub gram: Matrix<Rational>,
}

impl From<&BilinearForm<Rational>> for FormJson {
    fn from(f: &BilinearForm<Rational>) -> Self {
        FormJson { kind: f.kind(), gram: f.gram().clone() }
    }
}

impl TryFrom<&FormJson> for BilinearForm<Rational> {
    type Error = Error;
    fn try_from(f: &FormJson) -> Result<Self> {
        BilinearForm::new(f.kind, f.gram.clone())
    }
}

/// Datum JSON: `{"dimV","dimW","B1","B2","i","j"?,"formV"?,"formW"?}`.
/// When both forms are present `j` may be omitted and is derived as `i*`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumJson {
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "dimW")]
    pub dim_w: usize,
    #[serde(rename = "B1")]
    pub b1: Matrix<Rational>,
    #[serde(rename = "B2")]
    pub b2: Matrix<Rational>,
    pub i: Matrix<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Matrix<Rational>>,
    #[serde(rename = "formV", default, skip_serializing_if = "Option::is_none")]
    pub form_v: Option<FormJson>,
    #[serde(rename = "formW", default, skip_serializing_if = "Option::is_none")]
    pub form_w: Option<FormJson>,
}

/// A parsed datum file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyDatum {
    Gl(AdhmDatum),
    /// Self-dual datum; may violate its invariants (see
    /// [`SoDatum::violations`]).
    SelfDual(SoDatum),
}

impl AnyDatum {
    pub fn datum(&self) -> &AdhmDatum {
        match self {
            AnyDatum::Gl(x) => x,
            AnyDatum::SelfDual(y) => y.datum(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: DatumJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(&raw)
    }

    pub fn to_json(&self) -> DatumJson {
        match self {
            AnyDatum::Gl(x) => DatumJson::from_gl(x),
            AnyDatum::SelfDual(y) => DatumJson::from_self_dual(y),
        }
    }
}

impl DatumJson {
    pub fn from_gl(x: &AdhmDatum) -> Self {
        DatumJson {
            dim_v: x.dim_v(),
            dim_w: x.dim_w(),
            b1: x.b1.clone(),
            b2: x.b2.clone(),
            i: x.i.clone(),
            j: Some(x.j.clone()),
            form_v: None,
            form_w: None,
        }
    }

    pub fn from_self_dual(y: &SoDatum) -> Self {
        let x = y.datum();
        DatumJson {
            dim_v: x.dim_v(),
            dim_w: x.dim_w(),
            b1: x.b1.clone(),
            b2: x.b2.clone(),
            i: x.i.clone(),
            j: None,
            form_v: Some(y.form_v().into()),
            form_w: Some(y.form_w().into()),
        }
    }
}

impl TryFrom<&DatumJson> for AnyDatum {
    type Error = Error;
    fn try_from(raw: &DatumJson) -> Result<Self> {
        let (k, n) = (raw.dim_v, raw.dim_w);
        let shape = |m: &Matrix<Rational>, r: usize, c: usize, name: &str| {
            if m.shape() != (r, c) {
                Err(dim_err(format!("{name} must be {r}x{c}, got {:?}", m.shape())))
            } else {
                Ok(())
            }
        };
        shape(&raw.b1, k, k, "B1")?;
        shape(&raw.b2, k, k, "B2")?;
        shape(&raw.i, k, n, "i")?;
        match (&raw.form_v, &raw.form_w) {
            (Some(fv), Some(fw)) => {
                let fv = BilinearForm::try_from(fv)?;
                let fw = BilinearForm::try_from(fw)?;
                if fv.dim() != k || fw.dim() != n {
                    return Err(dim_err("form dimensions do not match dimV/dimW"));
                }
                let j = match &raw.j {
                    Some(j) => {
                        shape(j, n, k, "j")?;
                        j.clone()
                    }
                    None => adjoint_hom(&raw.i, &fw, &fv)?,
                };
                let x = AdhmDatum::new(raw.b1.clone(), raw.b2.clone(), raw.i.clone(), j)?;
                Ok(AnyDatum::SelfDual(SoDatum::from_parts_unchecked(x, fv, fw)))
            }
            (None, None) => {
                let j = raw.j.as_ref().ok_or_else(|| Error::Parse("j is required without forms".into()))?;
                shape(j, n, k, "j")?;
                Ok(AnyDatum::Gl(AdhmDatum::new(raw.b1.clone(), raw.b2.clone(), raw.i.clone(), j.clone())?))
            }
            _ => Err(Error::Parse("formV and formW must be given together".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn adjoint_examples() {
        let j: BilinearForm = BilinearForm::standard_symplectic(2).unwrap();
        let b = q(&[&[2, 0], &[0, 5]]);
        assert_eq!(adjoint_endo(&b, &j).unwrap(), q(&[&[5, 0], &[0, 2]]));
        assert_eq!(adjoint_endo(&Matrix::identity(2), &j).unwrap(), Matrix::identity(2));
        let m = q(&[&[1, 2], &[3, 4]]);
        let mss = adjoint_endo(&adjoint_endo(&m, &j).unwrap(), &j).unwrap();
        assert_eq!(mss, m);
        // dim V = 2 symplectic, W = 1 with (w,w) = 1, i = e1.
        let fw = BilinearForm::standard_orthogonal(1);
        let i = q(&[&[1], &[0]]);
        let is = adjoint_hom(&i, &fw, &j).unwrap();
        for v in [vec![int(1), int(0)], vec![int(0), int(1)]] {
            let lhs = j.pair(&i.mul_vec(&[int(1)]), &v);
            let rhs = fw.pair(&[int(1)], &is.mul_vec(&v));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn explicit_moment_map_w3() {
        // k = 2, W = C^3 hyperbolic plus unit.
        let fv: BilinearForm = BilinearForm::standard_symplectic(2).unwrap();
        let fw = BilinearForm::hyperbolic_plus_unit();
        let i = q(&[&[1, 2, 0], &[0, 1, 3]]);
        // i G_W^{-1} iᵀ = i1 i2ᵀ + i2 i1ᵀ + i3 i3ᵀ with columns i1=(1,0), i2=(2,1), i3=(0,3)
        // = [[4,1],[1,9]]; times J = [[0,1],[-1,0]] gives [[-1,4],[-9,1]].
        let m = moment_map_hom(&i, &fw, &fv).unwrap();
        assert_eq!(m, q(&[&[-1, 4], &[-9, 1]]));
        let y = SoDatum::new(Matrix::zeros(2, 2), Matrix::zeros(2, 2), i, fv, fw).unwrap();
        assert_eq!(y.moment_map().unwrap(), m);
    }

    #[test]
    fn stability_examples() {
        let x = AdhmDatum::new(Matrix::zeros(1, 1), Matrix::zeros(1, 1), q(&[&[1]]), q(&[&[1]])).unwrap();
        assert!(x.is_regular());
        let y = AdhmDatum::new(Matrix::zeros(2, 2), Matrix::zeros(2, 2), q(&[&[1, 0], &[0, 1]]), Matrix::zeros(2, 2)).unwrap();
        assert!(y.is_stable());
        assert!(!y.is_costable());
        let z = AdhmDatum::<Rational>::zero(2, 1);
        assert!(!z.is_stable());
        assert_eq!(z.dual(), z);
    }

    #[test]
    fn dual_twice_is_minus_identity_action() {
        let x = AdhmDatum::new(q(&[&[1, 2], &[0, 3]]), q(&[&[0, 1], &[1, 0]]), q(&[&[1], &[2]]), q(&[&[3, 4]])).unwrap();
        let dd = x.dual().dual();
        assert_eq!(dd, x.act(&Matrix::identity(2).neg()).unwrap());
        assert_eq!(x.dual().moment_map(), x.moment_map().transpose().neg());
    }

    #[test]
    fn spectrum_examples() {
        let x = AdhmDatum::new(Matrix::diagonal(&[int(1), int(2), int(3)]), Matrix::zeros(3, 3), Matrix::zeros(3, 1), Matrix::zeros(1, 3)).unwrap();
        let s = x.b1_spectrum().unwrap();
        assert_eq!(s.values(), vec![int(1), int(2), int(3)]);
        assert!(s.is_distinct());
        let n = AdhmDatum::new(q(&[&[0, 1], &[0, 0]]), Matrix::zeros(2, 2), Matrix::zeros(2, 1), Matrix::zeros(1, 2)).unwrap();
        let s = n.b1_spectrum().unwrap();
        assert_eq!(s.roots, vec![(int(0), 2)]);
        assert!(!s.is_distinct());
        let r = AdhmDatum::new(q(&[&[0, -1], &[1, 0]]), Matrix::zeros(2, 2), Matrix::zeros(2, 1), Matrix::zeros(1, 2)).unwrap();
        assert_eq!(r.b1_spectrum(), Err(Error::NotSplitOverBase));
    }

    #[test]
    fn translate_shifts_spectrum() {
        let x = AdhmDatum::new(Matrix::diagonal(&[int(1), int(4)]), Matrix::zeros(2, 2), Matrix::zeros(2, 1), Matrix::zeros(1, 2)).unwrap();
        let y = x.translate_b1(&rat(1, 2));
        assert_eq!(y.b1_spectrum().unwrap().values(), vec![rat(3, 2), rat(9, 2)]);
        assert_eq!(y.moment_map(), x.moment_map());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![4, 2], 6).is_ok());
        assert!(Partition::new(vec![2, 4], 6).is_err());
        assert!(Partition::new(vec![3, 3], 6).is_err());
        assert!(Partition::new(vec![2], 4).is_err());
    }

    #[test]
    fn datum_json_roundtrip() {
        let x = AdhmDatum::new(q(&[&[1]]), q(&[&[2]]), q(&[&[1, 0]]), q(&[&[0], &[1]])).unwrap();
        let s = serde_json::to_string(&DatumJson::from_gl(&x)).unwrap();
        assert_eq!(AnyDatum::from_json_str(&s).unwrap(), AnyDatum::Gl(x));
        assert!(matches!(AnyDatum::from_json_str("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn form_validation() {
        assert!(BilinearForm::new(FormKind::Symmetric, q(&[&[0, 1], &[-1, 0]])).is_err());
        assert!(BilinearForm::new(FormKind::Symmetric, q(&[&[1, 1], &[1, 1]])).is_err());
        assert!(BilinearForm::<Rational>::standard_symplectic(3).is_err());
    }
}
