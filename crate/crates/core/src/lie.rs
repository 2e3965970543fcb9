//! Abstract Lie algebras given by rational structure constants, and their
//! affine realizations inside `aff(n)` (matrices of size `(n+1) x (n+1)`
//! with zero last row). Structural queries: nilpotency, unimodularity,
//! centralizers, normalizers, unipotence of a matrix realization.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{commutator, Matrix};
use crate::scalar::Rat;
use crate::Mat;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("structure constants are not antisymmetric at ({0},{1},{2})")]
    NotAntisymmetric(usize, usize, usize),
    #[error("Jacobi identity fails on basis triple ({0},{1},{2})")]
    JacobiFails(usize, usize, usize),
    #[error("commutator of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
    #[error("basis matrices are linearly dependent")]
    NotIndependent,
    #[error("matrix {0} is not an element of aff({1})")]
    NotAffine(usize, usize),
    #[error("vectors {0} and {1} do not span a subalgebra")]
    NotSubalgebra(usize, usize),
    #[error("{0}")]
    BadShape(String),
}

/// A finite-dimensional Lie algebra over the rationals, by structure
/// constants `[X_i, X_j] = sum_k c[i][j][k] X_k`. Antisymmetry and the
/// Jacobi identity are verified exactly at construction.
#[derive(Clone, Debug)]
pub struct AbstractLieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rat>>>,
    labels: Option<Vec<String>>,
}

impl AbstractLieAlgebra {
    pub fn new(dim: usize, c: Vec<Vec<Vec<Rat>>>) -> Result<Self, LieError> {
        if c.len() != dim || c.iter().any(|p| p.len() != dim || p.iter().any(|q| q.len() != dim)) {
            return Err(LieError::BadShape(format!(
                "structure constants must be a {dim}x{dim}x{dim} grid"
            )));
        }
        let alg = AbstractLieAlgebra { dim, c, labels: None };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if alg.c[i][j][k] != -alg.c[j][i][k].clone() {
                        return Err(LieError::NotAntisymmetric(i, j, k));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let ei = basis_vec(dim, i);
                    let ej = basis_vec(dim, j);
                    let ek = basis_vec(dim, k);
                    let mut s = alg.bracket(&ei, &alg.bracket(&ej, &ek));
                    for (a, b) in s.iter_mut().zip(alg.bracket(&ej, &alg.bracket(&ek, &ei))) {
                        *a = a.clone() + b;
                    }
                    for (a, b) in s.iter_mut().zip(alg.bracket(&ek, &alg.bracket(&ei, &ej))) {
                        *a = a.clone() + b;
                    }
                    if s.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::JacobiFails(i, j, k));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        AbstractLieAlgebra {
            dim,
            c: vec![vec![vec![Rat::zero(); dim]; dim]; dim],
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.c[i][j][k]
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Rat>>> {
        &self.c
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let f = x[i].clone() * y[j].clone();
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] = out[k].clone() + f.clone() * self.c[i][j][k].clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(x) = [x, .]` in the basis.
    pub fn ad(&self, x: &[Rat]) -> Mat {
        Matrix::from_cols(
            &(0..self.dim)
                .map(|j| self.bracket(x, &basis_vec(self.dim, j)))
                .collect::<Vec<_>>(),
        )
    }

    pub fn ad_basis(&self, i: usize) -> Mat {
        self.ad(&basis_vec(self.dim, i))
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|x| x.is_zero())
    }

    /// Nilpotency via the lower central series, depth capped at `dim`.
    pub fn is_nilpotent(&self) -> bool {
        let mut current: Vec<Vec<Rat>> = (0..self.dim).map(|i| basis_vec(self.dim, i)).collect();
        for _ in 0..=self.dim {
            if current.is_empty() {
                return true;
            }
            let mut products = Vec::new();
            for i in 0..self.dim {
                let ei = basis_vec(self.dim, i);
                for v in &current {
                    products.push(self.bracket(&ei, v));
                }
            }
            let next = span_basis(self.dim, &products);
            if next.len() == current.len() {
                return false; // series stabilized above zero
            }
            current = next;
        }
        current.is_empty()
    }

    /// `trace ad X = 0` for every `X`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_basis(i).trace().is_zero())
    }

    /// Nilpotency class ladder check for two-step: `[g, [g, g]] = 0`.
    pub fn is_two_step_nilpotent(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let inner = self.bracket(&basis_vec(self.dim, j), &basis_vec(self.dim, k));
                    let outer = self.bracket(&basis_vec(self.dim, i), &inner);
                    if outer.iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Canonical basis of the derived subalgebra `[g, g]`.
    pub fn derived_basis(&self) -> Vec<Vec<Rat>> {
        let mut products = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                products.push(self.bracket(&basis_vec(self.dim, i), &basis_vec(self.dim, j)));
            }
        }
        span_basis(self.dim, &products)
    }

    /// Basis of the center `{x : [x, g] = 0}`.
    pub fn center_basis(&self) -> Vec<Vec<Rat>> {
        // rows indexed by (j, k): sum_i x_i c[i][j][k] = 0
        let rows = self.dim * self.dim;
        let m = Matrix::from_fn(rows, self.dim, |r, i| {
            let (j, k) = (r / self.dim, r % self.dim);
            self.c[i][j][k].clone()
        });
        m.kernel_basis()
    }

    /// Normalizer `n(g, h) = {X : [X, h] <= h}` of a subalgebra.
    pub fn normalizer(&self, h: &SubalgebraSpec) -> SubalgebraSpec {
        if h.basis.is_empty() {
            return SubalgebraSpec {
                basis: (0..self.dim).map(|i| basis_vec(self.dim, i)).collect(),
            };
        }
        let h_mat = Matrix::from_cols(&h.basis);
        let left = h_mat.left_kernel_basis();
        if left.is_empty() {
            // h = g
            return SubalgebraSpec {
                basis: (0..self.dim).map(|i| basis_vec(self.dim, i)).collect(),
            };
        }
        let l = Matrix::from_rows(left);
        // condition rows: L * [X, h_j] = 0 <=> -L * ad(h_j) * X = 0
        let mut stacked: Option<Mat> = None;
        for hb in &h.basis {
            let block = &l * &self.ad(hb);
            stacked = Some(match stacked {
                None => block,
                Some(s) => s.vstack(&block),
            });
        }
        let basis = stacked.unwrap().kernel_basis();
        SubalgebraSpec { basis }
    }

    /// `trace ad_{g/h}(x)` for the quotient action on `g/h`;
    /// `x` must normalize `h`.
    pub fn trace_ad_quotient(&self, h: &SubalgebraSpec, x: &[Rat]) -> Rat {
        let full = self.ad(x).trace();
        if h.basis.is_empty() {
            return full;
        }
        // trace of ad(x) restricted to h
        let h_mat = Matrix::from_cols(&h.basis);
        let mut restr = Rat::zero();
        for (j, hb) in h.basis.iter().enumerate() {
            let img = self.bracket(x, hb);
            let coeffs = h_mat
                .solve(&img)
                .expect("x does not normalize h in trace_ad_quotient");
            restr = restr + coeffs[j].clone();
        }
        full - restr
    }
}

/// Subalgebra of an [`AbstractLieAlgebra`], by a basis in g-coordinates.
#[derive(Clone, Debug)]
pub struct SubalgebraSpec {
    pub basis: Vec<Vec<Rat>>,
}

impl SubalgebraSpec {
    /// Verifies bracket closure in the parent.
    pub fn new(g: &AbstractLieAlgebra, basis: Vec<Vec<Rat>>) -> Result<Self, LieError> {
        let basis = span_basis(g.dim(), &basis);
        if basis.is_empty() {
            return Ok(SubalgebraSpec { basis });
        }
        let h_mat = Matrix::from_cols(&basis);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let br = g.bracket(&basis[i], &basis[j]);
                if h_mat.solve(&br).is_none() {
                    return Err(LieError::NotSubalgebra(i, j));
                }
            }
        }
        Ok(SubalgebraSpec { basis })
    }

    pub fn zero() -> Self {
        SubalgebraSpec { basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if self.basis.is_empty() {
            return v.iter().all(|x| x.is_zero());
        }
        Matrix::from_cols(&self.basis).col_span_contains(v)
    }
}

/// A linear functional on `g`, as a row vector of rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinitesimalCharacter {
    pub coeffs: Vec<Rat>,
}

impl InfinitesimalCharacter {
    pub fn zero(dim: usize) -> Self {
        InfinitesimalCharacter {
            coeffs: vec![Rat::zero(); dim],
        }
    }

    pub fn new(coeffs: Vec<Rat>) -> Self {
        InfinitesimalCharacter { coeffs }
    }

    pub fn apply(&self, x: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// A character must kill brackets; testable exactly.
    pub fn vanishes_on_derived(&self, g: &AbstractLieAlgebra) -> bool {
        g.derived_basis().iter().all(|v| self.apply(v).is_zero())
    }
}

/// A Lie algebra of affine vector fields on `A^n`: a basis of matrices in
/// `aff(n)` together with the abstract algebra its commutators generate.
#[derive(Clone, Debug)]
pub struct AffineRealization {
    n: usize,
    basis: Vec<Mat>,
    algebra: AbstractLieAlgebra,
}

impl AffineRealization {
    /// Verifies shape, independence and bracket closure, and derives the
    /// structure constants from the matrices (input constants are never
    /// trusted; see [`AffineRealization::check_structure_constants`]).
    pub fn from_matrices(n: usize, matrices: Vec<Mat>) -> Result<Self, LieError> {
        for (idx, b) in matrices.iter().enumerate() {
            if b.rows() != n + 1 || b.cols() != n + 1 {
                return Err(LieError::NotAffine(idx, n));
            }
            if (0..=n).any(|j| !b[(n, j)].is_zero()) {
                return Err(LieError::NotAffine(idx, n));
            }
        }
        let m = matrices.len();
        let flat = Matrix::from_cols(
            &matrices.iter().map(flatten).collect::<Vec<_>>(),
        );
        if flat.rank() != m {
            return Err(LieError::NotIndependent);
        }
        let mut c = vec![vec![vec![Rat::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let br = commutator(&matrices[i], &matrices[j]);
                let coeffs = flat
                    .solve(&flatten(&br))
                    .ok_or(LieError::NotClosed(i, j))?;
                c[i][j] = coeffs;
            }
        }
        let algebra = AbstractLieAlgebra::new(m, c)?;
        Ok(AffineRealization {
            n,
            basis: matrices,
            algebra,
        })
    }

    /// Compares externally supplied structure constants against the ones
    /// recomputed from the matrices.
    pub fn check_structure_constants(&self, c: &[Vec<Vec<Rat>>]) -> Result<(), LieError> {
        let m = self.algebra.dim();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if c[i][j][k] != *self.algebra.structure_constant(i, j, k) {
                        return Err(LieError::BadShape(format!(
                            "supplied structure constant c[{i}][{j}][{k}] disagrees with the matrix commutators"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn algebra(&self) -> &AbstractLieAlgebra {
        &self.algebra
    }

    /// Linear part of the i-th basis element (top-left `n x n` block).
    pub fn linear_part(&self, i: usize) -> Mat {
        let b = &self.basis[i];
        Matrix::from_fn(self.n, self.n, |r, c| b[(r, c)].clone())
    }

    /// Translation part of the i-th basis element (last column).
    pub fn translation_part(&self, i: usize) -> Vec<Rat> {
        (0..self.n).map(|r| self.basis[i][(r, self.n)].clone()).collect()
    }

    /// Image of a g-coordinate vector in `aff(n)`.
    pub fn matrix_of(&self, x: &[Rat]) -> Mat {
        let mut out = Matrix::zeros(self.n + 1, self.n + 1);
        for (b, xi) in self.basis.iter().zip(x) {
            out = &out + &b.scale(xi);
        }
        out
    }

    /// Basis of the centralizer `{phi in aff(n) : [phi, B_i] = 0}`,
    /// by an exact linear solve. By the structure of affine centralizers
    /// of prehomogeneous groups the result is an associative algebra;
    /// see the pairwise-closure test below.
    pub fn centralizer_in_aff(&self) -> Vec<Mat> {
        let n = self.n;
        let unknowns = n * (n + 1); // entries of phi except the zero last row
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for b in &self.basis {
            // [phi, b] = 0 is linear in phi; build rows entry by entry
            for r in 0..=n {
                for c in 0..=n {
                    let mut row = vec![Rat::zero(); unknowns];
                    // (phi b)_{rc} = sum_k phi_{rk} b_{kc}   (r < n only; last row of phi is 0)
                    if r < n {
                        for k in 0..=n {
                            row[r * (n + 1) + k] = row[r * (n + 1) + k].clone() + b[(k, c)].clone();
                        }
                    }
                    // (b phi)_{rc} = sum_k b_{rk} phi_{kc}
                    for k in 0..n {
                        row[k * (n + 1) + c] = row[k * (n + 1) + c].clone() - b[(r, k)].clone();
                    }
                    rows.push(row);
                }
            }
        }
        let system = Matrix::from_rows(rows);
        system
            .kernel_basis()
            .into_iter()
            .map(|v| {
                Matrix::from_fn(n + 1, n + 1, |r, c| {
                    if r < n {
                        v[r * (n + 1) + c].clone()
                    } else {
                        Rat::zero()
                    }
                })
            })
            .collect()
    }

    /// For an affine transformation `a` normalizing the span of the basis,
    /// the coefficient matrix `C` with `a B_i a^{-1} = sum_j C_ji B_j`;
    /// `None` if `a` is singular or does not normalize the span.
    pub fn conjugation_coeffs(&self, a: &Mat) -> Option<Mat> {
        let a_inv = a.inverse()?;
        let flat = Matrix::from_cols(&self.basis.iter().map(flatten).collect::<Vec<_>>());
        let mut cols = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let conj = &(a * b) * &a_inv;
            cols.push(flat.solve(&flatten(&conj))?);
        }
        Some(Matrix::from_cols(&cols))
    }

    /// Engel-style flag algorithm: the matrix algebra is unipotent iff the
    /// ascending chain `W_{j+1} = {w : B_i w in W_j for all i}` exhausts
    /// `R^{n+1}`. Per-matrix nilpotency alone would not be sufficient.
    pub fn is_unipotent(&self) -> bool {
        let n1 = self.n + 1;
        if self.basis.is_empty() {
            return true;
        }
        let mut w: Vec<Vec<Rat>> = Vec::new();
        loop {
            let l_rows = if w.is_empty() {
                (0..n1).map(|i| basis_vec(n1, i)).collect()
            } else {
                Matrix::from_cols(&w).left_kernel_basis()
            };
            if l_rows.is_empty() {
                return true; // W = R^{n+1}
            }
            let l = Matrix::from_rows(l_rows);
            let mut stacked: Option<Mat> = None;
            for b in &self.basis {
                let block = &l * b;
                stacked = Some(match stacked {
                    None => block,
                    Some(s) => s.vstack(&block),
                });
            }
            let next = stacked.unwrap().kernel_basis();
            if next.len() == w.len() {
                return false; // chain stalled before exhausting the space
            }
            w = next;
        }
    }
}

/// Exact exponential of a nilpotent matrix (the series terminates).
/// Returns `None` if the matrix is not nilpotent.
pub fn exp_nilpotent(m: &Mat) -> Option<Mat> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut power = Matrix::identity(n);
    let mut sum = Matrix::identity(n);
    let mut factorial = Rat::one();
    for k in 1..=n {
        power = &power * m;
        if power.is_zero() {
            return Some(sum);
        }
        factorial = factorial * Rat::from_integer(k.into());
        sum = &sum + &power.scale(&(Rat::one() / factorial.clone()));
    }
    None
}

/// Whether a square matrix is nilpotent (some power vanishes).
pub fn is_nilpotent_matrix(m: &Mat) -> bool {
    let n = m.rows();
    let mut power = m.clone();
    for _ in 0..n {
        if power.is_zero() {
            return true;
        }
        power = &power * m;
    }
    power.is_zero()
}

pub fn basis_vec(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = Rat::one();
    v
}

/// Canonical basis of the span of the given vectors.
pub fn span_basis(dim: usize, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    debug_assert!(vectors.iter().all(|v| v.len() == dim));
    Matrix::from_rows(vectors.to_vec()).row_space_basis()
}

fn flatten(m: &Mat) -> Vec<Rat> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(m[(i, j)].clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    /// Elementary matrix E_{ij} (1-based) of size n.
    pub fn e(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Matrix::zeros(n, n);
        m[(i - 1, j - 1)] = Rat::one();
        m
    }

    fn gh_basis() -> Vec<Mat> {
        // 4x4 strictly upper triangular family in aff(3)
        let s = e(4, 1, 4);
        let t = &e(4, 1, 2) + &e(4, 2, 4);
        let u = &e(4, 2, 3) + &e(4, 3, 4);
        let v = e(4, 1, 3);
        vec![s, t, u, v]
    }

    pub fn gh_realization() -> AffineRealization {
        AffineRealization::from_matrices(3, gh_basis()).unwrap()
    }

    #[test]
    fn translations_are_abelian() {
        let b1 = e(3, 1, 3);
        let b2 = e(3, 2, 3);
        let r = AffineRealization::from_matrices(2, vec![b1, b2]).unwrap();
        assert!(r.algebra().is_abelian());
        assert!(r.algebra().is_nilpotent());
        assert!(r.algebra().is_unimodular());
    }

    #[test]
    fn gh_brackets() {
        let r = gh_realization();
        let g = r.algebra();
        // [T,U] = V, [V,U] = S, all other basis brackets zero
        let idx = |i: usize| basis_vec(4, i);
        assert_eq!(g.bracket(&idx(1), &idx(2)), idx(3));
        assert_eq!(g.bracket(&idx(3), &idx(2)), idx(0));
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 3)] {
            assert!(g.bracket(&idx(i), &idx(j)).iter().all(|x| x.is_zero()));
        }
        assert!(g.is_nilpotent());
        assert!(r.is_unipotent());
    }

    #[test]
    fn not_closed_reported() {
        // span{E11, E12} in aff(1): [E11, E12] = E12 ok, but {E11-like, rotation}
        // in aff(2) is not closed
        let rot = &e(3, 1, 2) - &e(3, 2, 1);
        let d = e(3, 1, 1);
        let err = AffineRealization::from_matrices(2, vec![d, rot]).unwrap_err();
        assert!(matches!(err, LieError::NotClosed(_, _)));
    }

    #[test]
    fn dependent_basis_rejected() {
        let b = e(3, 1, 3);
        let err = AffineRealization::from_matrices(2, vec![b.clone(), b.scale(&rint(2))]).unwrap_err();
        assert!(matches!(err, LieError::NotIndependent));
    }

    #[test]
    fn solvable_2dim_not_nilpotent() {
        // [X_t, X_s] = X_s
        let mut c = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        c[0][1][1] = rint(1); // [X_t, X_s] = X_s with X_t = e_0, X_s = e_1
        c[1][0][1] = rint(-1);
        let g = AbstractLieAlgebra::new(2, c).unwrap();
        assert!(!g.is_nilpotent());
        assert!(!g.is_unimodular());
    }

    #[test]
    fn family_b_not_unipotent() {
        let b1 = e(3, 1, 1);
        let b2 = e(3, 2, 3);
        let r = AffineRealization::from_matrices(2, vec![b1, b2]).unwrap();
        assert!(r.algebra().is_abelian());
        assert!(!r.is_unipotent());
    }

    #[test]
    fn centralizer_of_translations() {
        let b1 = e(3, 1, 3);
        let b2 = e(3, 2, 3);
        let r = AffineRealization::from_matrices(2, vec![b1.clone(), b2.clone()]).unwrap();
        let z = r.centralizer_in_aff();
        // centralizer of the full translation algebra = the translations
        assert_eq!(z.len(), 2);
        let span = Matrix::from_cols(&[flatten(&b1), flatten(&b2)]);
        for m in &z {
            assert!(span.col_span_contains(&flatten(m)));
        }
        // closed under matrix product (associative subalgebra)
        for a in &z {
            for b in &z {
                assert!(span.col_span_contains(&flatten(&(a * b))));
            }
        }
    }

    #[test]
    fn centralizer_of_dilation_contains_dilation() {
        let d = e(2, 1, 1);
        let r = AffineRealization::from_matrices(1, vec![d.clone()]).unwrap();
        let z = r.centralizer_in_aff();
        let span = Matrix::from_cols(&z.iter().map(flatten).collect::<Vec<_>>());
        assert!(span.col_span_contains(&flatten(&d)));
        assert!(z.iter().any(|m| !is_nilpotent_matrix(m)));
    }

    #[test]
    fn normalizer_cases() {
        let r = gh_realization();
        let g = r.algebra();
        // h = g and h = 0 both normalize to g
        let whole = SubalgebraSpec::new(g, (0..4).map(|i| basis_vec(4, i)).collect()).unwrap();
        assert_eq!(g.normalizer(&whole).dim(), 4);
        assert_eq!(g.normalizer(&SubalgebraSpec::zero()).dim(), 4);
        // h = span(V): [U, V] = -S not in h, so U is excluded
        let h = SubalgebraSpec::new(g, vec![basis_vec(4, 3)]).unwrap();
        let n = g.normalizer(&h);
        assert_eq!(n.dim(), 3);
        assert!(n.contains(&basis_vec(4, 0))); // S
        assert!(n.contains(&basis_vec(4, 1))); // T
        assert!(n.contains(&basis_vec(4, 3))); // V
        assert!(!n.contains(&basis_vec(4, 2))); // U
    }

    #[test]
    fn exp_nilpotent_translation() {
        let b = e(3, 1, 3);
        let g = exp_nilpotent(&b).unwrap();
        assert_eq!(g, &Matrix::identity(3) + &b);
        assert!(exp_nilpotent(&e(2, 1, 1)).is_none());
    }
}
