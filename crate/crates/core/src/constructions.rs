//! Constructions of metric Lie algebras: coadjoint extensions of two-step
//! nilpotent algebras with the neutral pairing, flat biinvariant metric
//! checks with an exact curvature cross-check, signatures by rational
//! congruence diagonalization, the structure decomposition of flat
//! biinvariant algebras, dual tube realizations, and affinizations.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lie::{basis_vec, AbstractLieAlgebra, AffineRealization};
use crate::matrix::Matrix;
use crate::prehomog::LeftSymmetricAlgebra;
use crate::scalar::{rat, Rat};
use crate::Mat;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("coadjoint base algebra must be nilpotent of class at most two")]
    NotTwoStepBase,
    #[error("the given grid is not a 2-cocycle with coadjoint coefficients")]
    NotACocycle,
    #[error("the bilinear form is degenerate or not symmetric")]
    DegenerateForm,
    #[error("the metric algebra is not flat biinvariant")]
    NotFlatBiinvariant,
    #[error("affinization by the half-bracket needs a two-step nilpotent algebra")]
    NotTwoStep,
    #[error("product table violates the left-symmetry identity")]
    NotLeftSymmetric,
}

/// A Lie algebra with a nondegenerate symmetric bilinear form, given by
/// its Gram matrix in the basis.
#[derive(Clone, Debug)]
pub struct MetricLieAlgebra {
    pub algebra: AbstractLieAlgebra,
    pub gram: Mat,
}

impl MetricLieAlgebra {
    pub fn new(algebra: AbstractLieAlgebra, gram: Mat) -> Result<Self, ConstructionError> {
        let n = algebra.dim();
        if gram.rows() != n || gram.cols() != n || gram.transpose() != gram {
            return Err(ConstructionError::DegenerateForm);
        }
        if gram.determinant().is_zero() {
            return Err(ConstructionError::DegenerateForm);
        }
        Ok(MetricLieAlgebra { algebra, gram })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(gy)
            .fold(Rat::zero(), |acc, (a, b)| acc + a.clone() * b)
    }
}

/// An antisymmetric map `omega : n x n -> n*`, stored as
/// `grid[i][j]` = the covector `omega(e_i, e_j)`. Antisymmetry and the
/// 2-cocycle identity for the coadjoint action are verified exactly.
#[derive(Clone, Debug)]
pub struct CoadjointCocycle {
    pub dim: usize,
    pub grid: Vec<Vec<Vec<Rat>>>,
}

impl CoadjointCocycle {
    pub fn zero(dim: usize) -> Self {
        CoadjointCocycle {
            dim,
            grid: vec![vec![vec![Rat::zero(); dim]; dim]; dim],
        }
    }

    pub fn new(
        base: &AbstractLieAlgebra,
        grid: Vec<Vec<Vec<Rat>>>,
    ) -> Result<Self, ConstructionError> {
        let k = base.dim();
        if grid.len() != k
            || grid.iter().any(|r| r.len() != k || r.iter().any(|v| v.len() != k))
        {
            return Err(ConstructionError::NotACocycle);
        }
        let omega = CoadjointCocycle { dim: k, grid };
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if omega.grid[i][j][l] != -omega.grid[j][i][l].clone() {
                        return Err(ConstructionError::NotACocycle);
                    }
                }
            }
        }
        // d omega (e_i, e_j, e_l) = ad*(e_i) w(e_j,e_l) - ad*(e_j) w(e_i,e_l)
        //   + ad*(e_l) w(e_i,e_j) - w([e_i,e_j], e_l) + w([e_i,e_l], e_j)
        //   - w([e_j,e_l], e_i)
        for i in 0..k {
            for j in i + 1..k {
                for l in j + 1..k {
                    let mut acc = coad(base, i, &omega.grid[j][l]);
                    sub_assign(&mut acc, &coad(base, j, &omega.grid[i][l]));
                    add_assign(&mut acc, &coad(base, l, &omega.grid[i][j]));
                    sub_assign(&mut acc, &omega.apply_left(base, i, j, l));
                    add_assign(&mut acc, &omega.apply_left(base, i, l, j));
                    sub_assign(&mut acc, &omega.apply_left(base, j, l, i));
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(ConstructionError::NotACocycle);
                    }
                }
            }
        }
        Ok(omega)
    }

    /// `omega([e_a, e_b], e_c)`, extended linearly in the first slot.
    fn apply_left(&self, base: &AbstractLieAlgebra, a: usize, b: usize, c: usize) -> Vec<Rat> {
        let br = base.bracket(&basis_vec(self.dim, a), &basis_vec(self.dim, b));
        let mut out = vec![Rat::zero(); self.dim];
        for (m, coeff) in br.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for t in 0..self.dim {
                out[t] = out[t].clone() + coeff.clone() * self.grid[m][c][t].clone();
            }
        }
        out
    }
}

/// `(ad*(e_i) lambda)(e_l) = -lambda([e_i, e_l])`, as a covector.
fn coad(base: &AbstractLieAlgebra, i: usize, lambda: &[Rat]) -> Vec<Rat> {
    let k = base.dim();
    (0..k)
        .map(|l| {
            let br = base.bracket(&basis_vec(k, i), &basis_vec(k, l));
            -lambda
                .iter()
                .zip(&br)
                .fold(Rat::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

fn add_assign(a: &mut [Rat], b: &[Rat]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.clone() + y.clone();
    }
}

fn sub_assign(a: &mut [Rat], b: &[Rat]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.clone() - y.clone();
    }
}

/// `F(u, v, w) = omega(u, v)(w)` on basis triples; antisymmetric in the
/// first two slots by construction.
#[derive(Clone, Debug)]
pub struct ThreeTensor {
    pub f: Vec<Vec<Vec<Rat>>>,
}

pub fn three_tensor(omega: &CoadjointCocycle) -> ThreeTensor {
    ThreeTensor {
        f: omega.grid.clone(),
    }
}

/// Flatness/biinvariance conditions on the extension data: `F` fully
/// alternating, and the two-step exchange identity
/// `F(u, [v,w], z) = F(v, w, [u,z])`.
pub fn check_f_conditions(base: &AbstractLieAlgebra, omega: &CoadjointCocycle) -> (bool, bool) {
    let k = base.dim();
    let f = &omega.grid;
    let alternating = (0..k).all(|i| {
        (0..k).all(|j| (0..k).all(|l| f[i][j][l] == -f[i][l][j].clone()))
    });
    let pair = |u: usize, vec: &[Rat], z: usize| -> Rat {
        vec.iter()
            .enumerate()
            .fold(Rat::zero(), |acc, (m, c)| acc + c.clone() * f[u][m][z].clone())
    };
    let contract = |v: usize, w: usize, vec: &[Rat]| -> Rat {
        vec.iter()
            .enumerate()
            .fold(Rat::zero(), |acc, (m, c)| acc + c.clone() * f[v][w][m].clone())
    };
    let mut two_step = true;
    'outer: for u in 0..k {
        for v in 0..k {
            for w in 0..k {
                for z in 0..k {
                    let vw = base.bracket(&basis_vec(k, v), &basis_vec(k, w));
                    let uz = base.bracket(&basis_vec(k, u), &basis_vec(k, z));
                    if pair(u, &vw, z) != contract(v, w, &uz) {
                        two_step = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    (alternating, two_step)
}

/// Neutral Gram matrix `[[0, I], [I, 0]]` of size 2k, for the basis order
/// (dual basis of n*, then basis of n).
pub fn neutral_gram(k: usize) -> Mat {
    Matrix::from_fn(2 * k, 2 * k, |i, j| {
        if i + k == j || j + k == i {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

/// The coadjoint extension `t_{n, omega}` on `n* + n` with the bracket
/// `[(l, v), (l', v')] = (ad*(v) l' - ad*(v') l + omega(v, v'), [v, v'])`
/// and the neutral pairing `<v, l> = l(v)`.
pub fn coadjoint_extension(
    base: &AbstractLieAlgebra,
    omega: &CoadjointCocycle,
) -> Result<MetricLieAlgebra, ConstructionError> {
    let k = base.dim();
    if !base.is_two_step_nilpotent() {
        return Err(ConstructionError::NotTwoStepBase);
    }
    assert_eq!(omega.dim, k);
    let dim = 2 * k;
    let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for i in 0..k {
        for j in 0..k {
            // [e_i, e_j] = (omega(e_i, e_j), [e_i, e_j]_n)
            for l in 0..k {
                c[k + i][k + j][l] = omega.grid[i][j][l].clone();
            }
            let br = base.bracket(&basis_vec(k, i), &basis_vec(k, j));
            for l in 0..k {
                c[k + i][k + j][k + l] = br[l].clone();
            }
            // [e_i, f^j] = ad*(e_i) f^j
            let cv = coad(base, i, &basis_vec(k, j));
            for l in 0..k {
                c[k + i][j][l] = cv[l].clone();
                c[j][k + i][l] = -cv[l].clone();
            }
        }
    }
    let algebra = AbstractLieAlgebra::new(dim, c).map_err(|_| ConstructionError::NotACocycle)?;
    MetricLieAlgebra::new(algebra, neutral_gram(k))
}

/// `<[X, Y], Z> = -<Y, [X, Z]>` on all basis triples.
pub fn is_biinvariant(m: &MetricLieAlgebra) -> bool {
    let d = m.dim();
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let x = basis_vec(d, i);
                let y = basis_vec(d, j);
                let z = basis_vec(d, l);
                let lhs = m.inner(&m.algebra.bracket(&x, &y), &z);
                let rhs = -m.inner(&y, &m.algebra.bracket(&x, &z));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Flat biinvariant = biinvariant and two-step nilpotent. When both hold,
/// the curvature of the canonical connection `nabla_X Y = (1/2)[X, Y]` is
/// asserted to vanish on all basis triples (cross-check, not assumption).
pub fn is_flat_biinvariant(m: &MetricLieAlgebra) -> bool {
    let flat = is_biinvariant(m) && m.algebra.is_two_step_nilpotent();
    if flat {
        let d = m.dim();
        let g = &m.algebra;
        let half = rat(1, 2);
        let quarter = rat(1, 4);
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    let x = basis_vec(d, i);
                    let y = basis_vec(d, j);
                    let z = basis_vec(d, l);
                    // R(X,Y)Z = 1/4 [X,[Y,Z]] - 1/4 [Y,[X,Z]] - 1/2 [[X,Y],Z]
                    let mut r: Vec<Rat> = g
                        .bracket(&x, &g.bracket(&y, &z))
                        .into_iter()
                        .map(|v| v * quarter.clone())
                        .collect();
                    for (a, b) in r.iter_mut().zip(g.bracket(&y, &g.bracket(&x, &z))) {
                        *a = a.clone() - b * quarter.clone();
                    }
                    for (a, b) in r.iter_mut().zip(g.bracket(&g.bracket(&x, &y), &z)) {
                        *a = a.clone() - b * half.clone();
                    }
                    assert!(
                        r.iter().all(Zero::is_zero),
                        "biinvariant two-step metric algebra must be flat"
                    );
                }
            }
        }
    }
    flat
}

/// Exact signature `(n_plus, n_minus)` of a symmetric matrix by rational
/// congruence diagonalization; a zero diagonal against a nonzero
/// off-diagonal entry is resolved by the hyperbolic `(x+y, x-y)` split.
pub fn signature(gram: &Mat) -> Result<(usize, usize), ConstructionError> {
    let n = gram.rows();
    if gram.cols() != n || gram.transpose() != *gram {
        return Err(ConstructionError::DegenerateForm);
    }
    let mut a = gram.clone();
    let congruence_add = |a: &mut Mat, to: usize, from: usize, f: &Rat| {
        for j in 0..n {
            a[(to, j)] = a[(to, j)].clone() + f.clone() * a[(from, j)].clone();
        }
        for i in 0..n {
            a[(i, to)] = a[(i, to)].clone() + f.clone() * a[(i, from)].clone();
        }
    };
    let congruence_swap = |a: &mut Mat, p: usize, q: usize| {
        for j in 0..n {
            let t = a[(p, j)].clone();
            a[(p, j)] = a[(q, j)].clone();
            a[(q, j)] = t;
        }
        for i in 0..n {
            let t = a[(i, p)].clone();
            a[(i, p)] = a[(i, q)].clone();
            a[(i, q)] = t;
        }
    };
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                congruence_swap(&mut a, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero())
            {
                // both diagonals zero: x -> x + y turns the hyperbolic
                // pair into a nonzero diagonal entry 2 a_ij
                congruence_add(&mut a, i, j, &Rat::one());
                if i != k {
                    congruence_swap(&mut a, k, i);
                }
            } else {
                // remaining block identically zero
                return Err(ConstructionError::DegenerateForm);
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            if !a[(i, k)].is_zero() {
                let f = -a[(i, k)].clone() / pivot.clone();
                congruence_add(&mut a, i, k, &f);
            }
        }
    }
    let mut plus = 0;
    let mut minus = 0;
    for k in 0..n {
        let d = &a[(k, k)];
        if d.is_positive() {
            plus += 1;
        } else if d.is_negative() {
            minus += 1;
        } else {
            return Err(ConstructionError::DegenerateForm);
        }
    }
    Ok((plus, minus))
}

/// Output of [`structure_decomposition`]: a flat biinvariant metric
/// algebra splits orthogonally as a nondegenerate central summand `z`
/// plus a coadjoint extension of an abelian algebra.
#[derive(Clone, Debug)]
pub struct StructureDecomposition {
    /// Basis of the nondegenerate central summand, in g-coordinates.
    pub central_summand: Vec<Vec<Rat>>,
    /// Basis of the isotropic abelian complement `a`.
    pub isotropic_basis: Vec<Vec<Rat>>,
    /// Basis of the derived subalgebra, dual to `a` under the metric.
    pub derived_basis: Vec<Vec<Rat>>,
    /// The recovered cocycle on the abelian model of `a`.
    pub cocycle: CoadjointCocycle,
    /// The rebuilt coadjoint extension `t_{a, omega}`.
    pub extension: MetricLieAlgebra,
    /// Columns: images in g of the extension basis (duals then `a`).
    pub isomorphism: Mat,
}

/// Runs the constructive proof of the structure theorem: splits off the
/// maximal nondegenerate central summand and rebuilds the rest as a
/// coadjoint extension, returning a verified isometric isomorphism.
pub fn structure_decomposition(
    m: &MetricLieAlgebra,
) -> Result<StructureDecomposition, ConstructionError> {
    if !is_flat_biinvariant(m) {
        return Err(ConstructionError::NotFlatBiinvariant);
    }
    let g = &m.algebra;
    let dim = g.dim();
    let derived = g.derived_basis();
    let p = derived.len();
    let center = g.center_basis();
    for d in &derived {
        assert!(
            Matrix::from_cols(&center).col_span_contains(d),
            "derived algebra must be central in the flat biinvariant case"
        );
    }
    // z: a complement of [g,g] inside the center, greedy by basis index
    let mut central_summand: Vec<Vec<Rat>> = Vec::new();
    {
        let mut span = derived.clone();
        let mut rank = Matrix::from_cols(&span).rank();
        for v in &center {
            let mut trial = span.clone();
            trial.push(v.clone());
            let r = Matrix::from_cols(&trial).rank();
            if r > rank {
                span = trial;
                rank = r;
                central_summand.push(v.clone());
            }
        }
    }
    // v = z-orthogonal complement; contains [g,g] and has dimension 2p
    let v_basis: Vec<Vec<Rat>> = if central_summand.is_empty() {
        (0..dim).map(|i| basis_vec(dim, i)).collect()
    } else {
        let zb = Matrix::from_rows(central_summand.clone());
        (&zb * &m.gram).kernel_basis()
    };
    assert_eq!(v_basis.len(), 2 * p, "complement of the central summand");
    let v_mat = Matrix::from_cols(&v_basis);
    // dual vectors w_i in v with <w_i, d_j> = delta_ij
    let pairing = Matrix::from_fn(p, v_basis.len(), |i, j| m.inner(&derived[i], &v_basis[j]));
    let mut w: Vec<Vec<Rat>> = Vec::with_capacity(p);
    for i in 0..p {
        let coeffs = pairing
            .solve(&basis_vec(p, i))
            .expect("metric pairs the derived algebra with its complement");
        w.push(v_mat.mul_vec(&coeffs));
    }
    // isotropic correction: a_i = w_i - 1/2 sum_l <w_i, w_l> d_l
    let half = rat(1, 2);
    let mut a_basis: Vec<Vec<Rat>> = Vec::with_capacity(p);
    for i in 0..p {
        let mut ai = w[i].clone();
        for l in 0..p {
            let coeff = half.clone() * m.inner(&w[i], &w[l]);
            for (x, y) in ai.iter_mut().zip(&derived[l]) {
                *x = x.clone() - coeff.clone() * y.clone();
            }
        }
        a_basis.push(ai);
    }
    // recovered cocycle on the abelian model of a:
    // omega(e_i, e_j)(e_l) = <[a_i, a_j], a_l>
    let abelian = AbstractLieAlgebra::abelian(p);
    let mut grid = vec![vec![vec![Rat::zero(); p]; p]; p];
    for i in 0..p {
        for j in 0..p {
            let br = g.bracket(&a_basis[i], &a_basis[j]);
            for l in 0..p {
                grid[i][j][l] = m.inner(&br, &a_basis[l]);
            }
        }
    }
    let cocycle = CoadjointCocycle::new(&abelian, grid)?;
    let extension = coadjoint_extension(&abelian, &cocycle)?;
    // isomorphism t_{a, omega} -> span(derived + a): f^i -> d_i, e_i -> a_i
    let mut cols = derived.clone();
    cols.extend(a_basis.iter().cloned());
    let iso = Matrix::from_cols(&cols);
    verify_metric_embedding(&extension, m, &iso);
    Ok(StructureDecomposition {
        central_summand,
        isotropic_basis: a_basis,
        derived_basis: derived,
        cocycle,
        extension,
        isomorphism: iso,
    })
}

/// Checks that the column map is a bracket- and metric-preserving
/// embedding of `small` into `big`.
fn verify_metric_embedding(small: &MetricLieAlgebra, big: &MetricLieAlgebra, map: &Mat) {
    let d = small.dim();
    assert_eq!(map.cols(), d);
    for i in 0..d {
        for j in 0..d {
            let xi = map.col(i);
            let xj = map.col(j);
            let lhs = big.algebra.bracket(&xi, &xj);
            let rhs = map.mul_vec(&small.algebra.bracket(&basis_vec(d, i), &basis_vec(d, j)));
            assert_eq!(lhs, rhs, "isomorphism must preserve brackets");
            assert_eq!(
                big.inner(&xi, &xj),
                small.inner(&basis_vec(d, i), &basis_vec(d, j)),
                "isomorphism must preserve the metric"
            );
        }
    }
}

/// A dual tube realization on `A^{2n}` together with its neutral metric,
/// symplectic form, and para-complex structure.
#[derive(Clone, Debug)]
pub struct DualTube {
    pub realization: AffineRealization,
    /// Gram matrix of the neutral pairing `k<u+l, u'+l'> = l(u') + l'(u)`.
    pub gram: Mat,
    /// Matrix of `omega(u+l, u'+l') = l(u') - l'(u)`.
    pub omega: Mat,
    /// The involution `J(u+l) = -u+l`.
    pub para: Mat,
}

/// Extends a realization on `A^n` to `g + (R^n)*` acting on `A^{2n}`:
/// each generator acts by `(l(X), -l(X)^T)` with translation `(v_X, 0)`,
/// and n extra dual translations are appended. The identities `J^2 = id`
/// and `g(., .) = omega(J., .)` are verified at construction.
pub fn dual_tube_realization(r: &AffineRealization) -> DualTube {
    let n = r.ambient_dim();
    let two_n = 2 * n;
    let mut basis: Vec<Mat> = Vec::with_capacity(r.dim() + n);
    for i in 0..r.dim() {
        let lin = r.linear_part(i);
        let v = r.translation_part(i);
        let mut b: Mat = Matrix::zeros(two_n + 1, two_n + 1);
        for a in 0..n {
            for c in 0..n {
                b[(a, c)] = lin[(a, c)].clone();
                b[(n + a, n + c)] = -lin[(c, a)].clone();
            }
            b[(a, two_n)] = v[a].clone();
        }
        basis.push(b);
    }
    for j in 0..n {
        let mut b: Mat = Matrix::zeros(two_n + 1, two_n + 1);
        b[(n + j, two_n)] = Rat::one();
        basis.push(b);
    }
    let realization = AffineRealization::from_matrices(two_n, basis)
        .expect("dual tube generators close under commutators");
    let gram = neutral_gram(n);
    let omega = Matrix::from_fn(two_n, two_n, |i, j| {
        if i == j + n {
            Rat::one()
        } else if j == i + n {
            -Rat::one()
        } else {
            Rat::zero()
        }
    });
    let para = Matrix::from_fn(two_n, two_n, |i, j| {
        if i != j {
            Rat::zero()
        } else if i < n {
            -Rat::one()
        } else {
            Rat::one()
        }
    });
    assert_eq!(&para * &para, Matrix::identity(two_n), "J^2 = id");
    assert_eq!(
        &para.transpose() * &omega,
        gram,
        "metric must equal omega(J., .)"
    );
    DualTube {
        realization,
        gram,
        omega,
        para,
    }
}

/// Group-level dual tube extension of an affine transformation: the block
/// map `(l(A), (l(A)^{-1})^T)` with translation `(t, 0)`.
pub fn dual_tube_group_element(n: usize, affine: &Mat) -> Option<Mat> {
    assert_eq!((affine.rows(), affine.cols()), (n + 1, n + 1));
    let lin = Matrix::from_fn(n, n, |i, j| affine[(i, j)].clone());
    let lin_inv_t = lin.inverse()?.transpose();
    let two_n = 2 * n;
    let mut out: Mat = Matrix::identity(two_n + 1);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = lin[(i, j)].clone();
            out[(n + i, n + j)] = lin_inv_t[(i, j)].clone();
        }
        out[(i, two_n)] = affine[(i, n)].clone();
    }
    Some(out)
}

/// Affinization of a two-step nilpotent algebra by the half-bracket
/// connection: `X` acts by `(1/2) ad X` with translation `X`.
pub fn affinization_two_step(
    g: &AbstractLieAlgebra,
) -> Result<AffineRealization, ConstructionError> {
    if !g.is_two_step_nilpotent() {
        return Err(ConstructionError::NotTwoStep);
    }
    let half = rat(1, 2);
    let mut table = vec![vec![vec![Rat::zero(); g.dim()]; g.dim()]; g.dim()];
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            table[i][j] = g
                .bracket(&basis_vec(g.dim(), i), &basis_vec(g.dim(), j))
                .into_iter()
                .map(|v| v * half.clone())
                .collect();
        }
    }
    affinization_table(g.dim(), table)
}

/// Affinization of a left-symmetric product table: `X` acts by its left
/// multiplication `L_X` with translation `X`; the result is etale.
pub fn affinization_table(
    dim: usize,
    table: Vec<Vec<Vec<Rat>>>,
) -> Result<AffineRealization, ConstructionError> {
    let lsa =
        LeftSymmetricAlgebra::new(dim, table).map_err(|_| ConstructionError::NotLeftSymmetric)?;
    Ok(affinization_lsa(&lsa))
}

pub fn affinization_lsa(lsa: &LeftSymmetricAlgebra) -> AffineRealization {
    let n = lsa.dim;
    let basis: Vec<Mat> = (0..n)
        .map(|i| {
            let l = lsa.left_mul(&basis_vec(n, i));
            let mut b: Mat = Matrix::zeros(n + 1, n + 1);
            for r in 0..n {
                for c in 0..n {
                    b[(r, c)] = l[(r, c)].clone();
                }
                b[(r, n)] = if r == i { Rat::one() } else { Rat::zero() };
            }
            b
        })
        .collect();
    AffineRealization::from_matrices(n, basis)
        .expect("left multiplications of an LSA close under commutators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prehomog::{
        invariant_form_check, is_prehomogeneous, is_simply_transitive_etale, relative_invariant,
        FormKind,
    };
    use crate::scalar::rint;

    fn h3() -> AbstractLieAlgebra {
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        c[0][1][2] = rint(1);
        c[1][0][2] = rint(-1);
        AbstractLieAlgebra::new(3, c).unwrap()
    }

    fn omega_det() -> CoadjointCocycle {
        // omega(e_i, e_j) = det(e_i, e_j, .) on the ordered basis
        let z = Rat::zero;
        let mut grid = vec![vec![vec![z(); 3]; 3]; 3];
        grid[0][1][2] = rint(1);
        grid[1][0][2] = rint(-1);
        grid[0][2][1] = rint(-1);
        grid[2][0][1] = rint(1);
        grid[1][2][0] = rint(1);
        grid[2][1][0] = rint(-1);
        CoadjointCocycle::new(&AbstractLieAlgebra::abelian(3), grid).unwrap()
    }

    fn t_h3_0() -> MetricLieAlgebra {
        coadjoint_extension(&h3(), &CoadjointCocycle::zero(3)).unwrap()
    }

    fn t_a3_det() -> MetricLieAlgebra {
        coadjoint_extension(&AbstractLieAlgebra::abelian(3), &omega_det()).unwrap()
    }

    #[test]
    fn abelian_coadjoint_extension() {
        let m = coadjoint_extension(&AbstractLieAlgebra::abelian(2), &CoadjointCocycle::zero(2))
            .unwrap();
        assert!(m.algebra.is_abelian());
        assert_eq!(signature(&m.gram).unwrap(), (2, 2));
        assert!(is_flat_biinvariant(&m));
    }

    #[test]
    fn t_h3_0_is_flat_biinvariant() {
        let m = t_h3_0();
        assert_eq!(m.dim(), 6);
        assert!(is_biinvariant(&m));
        assert!(is_flat_biinvariant(&m));
        assert_eq!(signature(&m.gram).unwrap(), (3, 3));
        assert!(!m.algebra.is_abelian());
    }

    #[test]
    fn t_a3_det_is_flat_biinvariant() {
        let m = t_a3_det();
        let (alt, two) = check_f_conditions(&AbstractLieAlgebra::abelian(3), &omega_det());
        assert!(alt);
        assert!(two);
        assert!(!m.algebra.is_abelian());
        assert!(is_flat_biinvariant(&m));
        assert_eq!(signature(&m.gram).unwrap(), (3, 3));
    }

    #[test]
    fn non_alternating_cocycle_detected() {
        // omega(e1, e2) = f^1 on abelian a_2: valid cocycle, F not alternating
        let mut grid = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        grid[0][1][0] = rint(1);
        grid[1][0][0] = rint(-1);
        let base = AbstractLieAlgebra::abelian(2);
        let omega = CoadjointCocycle::new(&base, grid).unwrap();
        let (alt, two) = check_f_conditions(&base, &omega);
        assert!(!alt);
        assert!(two);
    }

    #[test]
    fn heisenberg_euclidean_not_biinvariant() {
        let m = MetricLieAlgebra::new(h3(), Matrix::identity(3)).unwrap();
        assert!(!is_biinvariant(&m));
        assert!(!is_flat_biinvariant(&m));
    }

    #[test]
    fn non_two_step_base_rejected() {
        // free nilpotent of class 3: [e1,e2]=e3, [e1,e3]=e4
        let mut c = vec![vec![vec![Rat::zero(); 4]; 4]; 4];
        c[0][1][2] = rint(1);
        c[1][0][2] = rint(-1);
        c[0][2][3] = rint(1);
        c[2][0][3] = rint(-1);
        let g = AbstractLieAlgebra::new(4, c).unwrap();
        let err = coadjoint_extension(&g, &CoadjointCocycle::zero(4)).unwrap_err();
        assert!(matches!(err, ConstructionError::NotTwoStepBase));
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&Matrix::identity(4)).unwrap(), (4, 0));
        assert_eq!(signature(&neutral_gram(3)).unwrap(), (3, 3));
        let minus = Matrix::identity(2).scale(&rint(-1));
        assert_eq!(signature(&minus).unwrap(), (0, 2));
        let mut mixed: Mat = Matrix::zeros(2, 2);
        mixed[(0, 0)] = rint(2);
        mixed[(1, 1)] = rat(-1, 3);
        assert_eq!(signature(&mixed).unwrap(), (1, 1));
        assert!(matches!(
            signature(&Matrix::zeros(2, 2)),
            Err(ConstructionError::DegenerateForm)
        ));
    }

    #[test]
    fn ax_skew_for_biinvariant_metrics() {
        // A_X = 1/2 ad X is skew with respect to the Gram matrix
        for m in [t_h3_0(), t_a3_det()] {
            for i in 0..m.dim() {
                let a = m.algebra.ad_basis(i).scale(&rat(1, 2));
                let skew = &(&a.transpose() * &m.gram) + &(&m.gram * &a);
                assert!(skew.is_zero());
            }
        }
    }

    #[test]
    fn two_step_operator_identities() {
        // A_X A_X' A_X'' = 0 and A_[X,X'] = [A_X, A_X'] = 2 A_X A_X'
        let m = t_a3_det();
        let d = m.dim();
        let a = |x: &[Rat]| m.algebra.ad(x).scale(&rat(1, 2));
        for i in 0..d {
            for j in 0..d {
                let ai = a(&basis_vec(d, i));
                let aj = a(&basis_vec(d, j));
                let br = m.algebra.bracket(&basis_vec(d, i), &basis_vec(d, j));
                let prod = &ai * &aj;
                assert_eq!(a(&br), &prod - &(&aj * &ai), "A_[X,X'] = [A_X, A_X']");
                assert_eq!(a(&br), prod.scale(&rint(2)), "A_[X,X'] = 2 A_X A_X'");
                for l in 0..d {
                    let al = a(&basis_vec(d, l));
                    assert!((&prod * &al).is_zero());
                }
                assert!((&ai * &ai).is_zero());
            }
        }
    }

    #[test]
    fn decomposition_of_abelian() {
        let m = coadjoint_extension(&AbstractLieAlgebra::abelian(2), &CoadjointCocycle::zero(2))
            .unwrap();
        let dec = structure_decomposition(&m).unwrap();
        assert_eq!(dec.central_summand.len(), 4);
        assert!(dec.isotropic_basis.is_empty());
        assert!(dec.derived_basis.is_empty());
    }

    #[test]
    fn decomposition_of_t_a3_det() {
        let dec = structure_decomposition(&t_a3_det()).unwrap();
        assert!(dec.central_summand.is_empty());
        assert_eq!(dec.isotropic_basis.len(), 3);
        // recovered F is alternating and nonzero: a determinant form up to
        // basis change
        let (alt, two) =
            check_f_conditions(&AbstractLieAlgebra::abelian(3), &dec.cocycle);
        assert!(alt);
        assert!(two);
        assert!(dec.cocycle.grid.iter().flatten().flatten().any(|x| !x.is_zero()));
    }

    #[test]
    fn decomposition_splits_central_line() {
        // t_{h3,0} + (R, <1>): one-dimensional central summand splits off
        let t = t_h3_0();
        let d = t.dim() + 1;
        let mut c = vec![vec![vec![Rat::zero(); d]; d]; d];
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                for k in 0..t.dim() {
                    c[i][j][k] = t.algebra.structure_constant(i, j, k).clone();
                }
            }
        }
        let g = AbstractLieAlgebra::new(d, c).unwrap();
        let mut gram: Mat = Matrix::zeros(d, d);
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                gram[(i, j)] = t.gram[(i, j)].clone();
            }
        }
        gram[(d - 1, d - 1)] = rint(1);
        let m = MetricLieAlgebra::new(g, gram).unwrap();
        let dec = structure_decomposition(&m).unwrap();
        assert_eq!(dec.central_summand.len(), 1);
        assert_eq!(dec.isotropic_basis.len(), 3);
        assert_eq!(dec.extension.dim(), 6);
    }

    #[test]
    fn decomposition_rejects_non_flat() {
        let m = MetricLieAlgebra::new(h3(), Matrix::identity(3)).unwrap();
        assert!(matches!(
            structure_decomposition(&m),
            Err(ConstructionError::NotFlatBiinvariant)
        ));
    }

    fn e(n: usize, i: usize, j: usize) -> Mat {
        let mut m: Mat = Matrix::zeros(n, n);
        m[(i - 1, j - 1)] = Rat::one();
        m
    }

    #[test]
    fn dual_tube_of_translations() {
        let b1 = e(3, 1, 3);
        let b2 = e(3, 2, 3);
        let r = AffineRealization::from_matrices(2, vec![b1, b2]).unwrap();
        let tube = dual_tube_realization(&r);
        assert_eq!(tube.realization.ambient_dim(), 4);
        assert_eq!(tube.realization.dim(), 4);
        assert!(tube.realization.algebra().is_abelian());
        for i in 0..4 {
            assert!(tube.realization.linear_part(i).is_zero());
        }
    }

    #[test]
    fn dual_tube_of_family_b() {
        let r = AffineRealization::from_matrices(2, vec![e(3, 1, 1), e(3, 2, 3)]).unwrap();
        let tube = dual_tube_realization(&r);
        assert_eq!(tube.realization.dim(), 4);
        assert_eq!(tube.realization.ambient_dim(), 4);
        let (prehomog, witness) = is_prehomogeneous(&tube.realization).unwrap();
        assert!(prehomog);
        assert!(witness.is_some());
        assert!(invariant_form_check(
            &tube.realization,
            &tube.gram,
            FormKind::Symmetric
        ));
        assert!(invariant_form_check(
            &tube.realization,
            &tube.omega,
            FormKind::Skew
        ));
    }

    #[test]
    fn dual_tube_group_element_of_dilation() {
        // scalar dilation on A^1 extends to diag(a, 1/a)
        let mut aff: Mat = Matrix::identity(2);
        aff[(0, 0)] = rint(3);
        let g = dual_tube_group_element(1, &aff).unwrap();
        assert_eq!(g[(0, 0)], rint(3));
        assert_eq!(g[(1, 1)], rat(1, 3));
        // preserves the neutral pairing
        let lin = Matrix::from_fn(2, 2, |i, j| g[(i, j)].clone());
        assert_eq!(&(&lin.transpose() * &neutral_gram(1)) * &lin, neutral_gram(1));
    }

    #[test]
    fn affinization_of_abelian_is_translations() {
        let r = affinization_two_step(&AbstractLieAlgebra::abelian(3)).unwrap();
        for i in 0..3 {
            assert!(r.linear_part(i).is_zero());
            assert_eq!(r.translation_part(i), basis_vec(3, i));
        }
    }

    #[test]
    fn affinization_of_h3() {
        let r = affinization_two_step(&h3()).unwrap();
        assert!(r.is_unipotent());
        let delta = relative_invariant(&r).unwrap().delta;
        assert!(delta.is_nonzero_constant());
        assert!(is_simply_transitive_etale(&r).unwrap());
    }

    #[test]
    fn affinization_of_t_h3_0_preserves_metric() {
        let m = t_h3_0();
        let r = affinization_two_step(&m.algebra).unwrap();
        assert!(relative_invariant(&r).unwrap().delta.is_nonzero_constant());
        assert!(invariant_form_check(&r, &m.gram, FormKind::Symmetric));
    }

    #[test]
    fn affinization_rejects_class_three() {
        let mut c = vec![vec![vec![Rat::zero(); 4]; 4]; 4];
        c[0][1][2] = rint(1);
        c[1][0][2] = rint(-1);
        c[0][2][3] = rint(1);
        c[2][0][3] = rint(-1);
        let g = AbstractLieAlgebra::new(4, c).unwrap();
        assert!(matches!(
            affinization_two_step(&g),
            Err(ConstructionError::NotTwoStep)
        ));
    }
}
