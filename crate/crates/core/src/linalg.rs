//! Solvers: echelon forms, kernels, subspaces, invariant closures and the
//! Sylvester equation.
//!
//! Pivoting is fixed (first row with a nonzero entry, columns scanned left to
//! right), so every result is bit-identical across runs.

use crate::error::{dim_err, Error, Result};
use crate::field::Field;
use crate::matrix::{check_square, Matrix};
use crate::poly::charpoly;

/// Reduced row echelon form and pivot columns.  Zero rows are dropped.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut rows = m.row_vecs();
    let pivots = F::row_reduce(&mut rows, m.cols());
    let r = rows.len();
    let out = if r == 0 {
        Matrix::zeros(0, m.cols())
    } else {
        Matrix::from_rows(rows)
    };
    debug_assert_eq!(out.rows(), r);
    (out, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// One solution of `A·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    if a.rows() != b.len() {
        return Err(dim_err(format!("solve_linear: A has {} rows, b has {}", a.rows(), b.len())));
    }
    let n = a.cols();
    let aug = Matrix::hstack(&[a, &Matrix::column(b)])?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = r[(i, n)].clone();
    }
    Ok(Some(x))
}

/// Solve `A·X = B` column by column.
pub fn solve_matrix<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Option<Matrix<F>>> {
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve_linear(a, &b.col(j))? {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_cols(&cols, a.cols())))
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Result<Matrix<F>> {
    check_square(a, a.rows(), "inverse")?;
    let n = a.rows();
    let aug = Matrix::hstack(&[a, &Matrix::identity(n)])?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(r.block(0, n, n, n))
}

/// A linear subspace stored by its reduced row echelon basis.  Two subspaces
/// are equal exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_span(m: &Matrix<F>) -> Self {
        let (basis, pivots) = rref(m);
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(dim_err("span: vector length differs from ambient dimension"));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        Ok(Self::row_span(&Matrix::from_rows(vectors.to_vec())))
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix<F>) -> Self {
        Self::row_span(&m.transpose())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.ambient, "coordinates: wrong length");
        // In RREF the coordinate on basis row i is v[pivot_i].
        let coords: Vec<F> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let mut recon = vec![F::zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, r) in recon.iter_mut().enumerate() {
                let b = &self.basis[(i, k)];
                if !b.is_zero() {
                    *r = r.add(&c.mul(b));
                }
            }
        }
        (recon == v).then_some(coords)
    }

    /// Normal form of `v` modulo the subspace: zero at every pivot column.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "reduce: wrong length");
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                let b = &self.basis[(i, k)];
                if !b.is_zero() {
                    *o = o.sub(&c.mul(b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Self) -> bool {
        o.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Result<Self> {
        if self.ambient != o.ambient {
            return Err(dim_err("subspace sum with different ambient spaces"));
        }
        let mut vs = self.basis_vectors();
        vs.extend(o.basis_vectors());
        Self::span(self.ambient, &vs)
    }

    /// Image of the subspace under a linear map given as a matrix acting on
    /// column vectors.
    pub fn image(&self, m: &Matrix<F>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(dim_err("subspace image: matrix does not act on the ambient space"));
        }
        let vs: Vec<Vec<F>> = self.basis_vectors().iter().map(|v| m.mul_vec(v)).collect();
        Self::span(m.rows(), &vs)
    }

    /// Basis vectors extended greedily by `candidates`, returning the
    /// candidates that were kept.  Used to pick echelon complements.
    pub fn complement_from(&self, candidates: &[Vec<F>]) -> Vec<Vec<F>> {
        let mut cur = self.clone();
        let mut kept = Vec::new();
        for c in candidates {
            if !cur.contains(c) {
                let mut vs = cur.basis_vectors();
                vs.push(c.clone());
                cur = Self::span(self.ambient, &vs).expect("same ambient");
                kept.push(c.clone());
            }
        }
        kept
    }
}

/// `{x : A·x = 0}` as an echelon subspace.
pub fn kernel_basis<F: Field>(a: &Matrix<F>) -> Subspace<F> {
    let n = a.cols();
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<F>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r[(i, f)].neg();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("kernel vectors have ambient length")
}

/// Smallest subspace containing `seed` and stable under every operator.
pub fn invariant_closure<F: Field>(seed: &Subspace<F>, operators: &[&Matrix<F>]) -> Result<Subspace<F>> {
    let n = seed.ambient_dim();
    for op in operators {
        check_square(op, n, "closure operator")?;
    }
    let mut cur = seed.clone();
    // Only newly added directions need to be pushed through the operators.
    let mut frontier = cur.basis_vectors();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for op in operators {
                let w = op.mul_vec(v);
                if !cur.contains(&w) {
                    let mut vs = cur.basis_vectors();
                    vs.push(w.clone());
                    cur = Subspace::span(n, &vs)?;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(cur)
}

/// The unique `X` with `A·X − X·B + C = 0`.
///
/// Uniqueness is certified first: `gcd(χ_A, χ_B) = 1` over the base field,
/// otherwise [`Error::CommonEigenvalue`].
pub fn sylvester_solve<F: Field>(a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>) -> Result<Matrix<F>> {
    check_square(a, a.rows(), "sylvester A")?;
    check_square(b, b.rows(), "sylvester B")?;
    if c.shape() != (a.rows(), b.rows()) {
        return Err(dim_err(format!(
            "sylvester: C is {:?}, expected {}x{}",
            c.shape(),
            a.rows(),
            b.rows()
        )));
    }
    let g = charpoly(a).gcd(&charpoly(b));
    if g.degree() != Some(0) {
        return Err(Error::CommonEigenvalue);
    }
    let op = sylvester_operator(a, b);
    let rhs: Vec<F> = c.vec_col_major().iter().map(F::neg).collect();
    let x = solve_linear(&op, &rhs)?.ok_or(Error::CommonEigenvalue)?;
    Ok(Matrix::from_col_major(a.rows(), b.rows(), &x))
}

/// Matrix of `X ↦ A·X − X·B` on column-major `vec(X)`:
/// `I_b ⊗ A − Bᵀ ⊗ I_a`.
pub fn sylvester_operator<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    Matrix::identity(b.rows()).kron(a).sub(&b.transpose().kron(&Matrix::identity(a.rows())))
}
