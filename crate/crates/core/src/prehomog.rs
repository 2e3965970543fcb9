//! Orbit-map differentials, the characteristic map and its cohomology
//! classes, relative invariants, characters, and the decision procedures
//! for prehomogeneity and transitivity of affine representations.
//!
//! Prehomogeneity is decided symbolically (is some component of the
//! characteristic form a nonzero polynomial?); point sampling is used only
//! to produce open-orbit witness points, with a fixed deterministic search
//! order for reproducibility.

use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::koszul::{binomial, boundary_matrix, subsets, Cochain, RelativeComplex};
use crate::lie::{basis_vec, AbstractLieAlgebra, AffineRealization, InfinitesimalCharacter, SubalgebraSpec};
use crate::matrix::Matrix;
use crate::poly::{poly_determinant, Polynomial};
use crate::scalar::{rat, Rat};
use crate::{Mat, Poly};

/// Cap on the number of characteristic-form components C(m, n).
pub const COMPONENT_GUARD: usize = 512;

const RANDOM_WITNESS_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error)]
pub enum PrehomogError {
    #[error("relative invariant requires dim g = {m} to equal the ambient dimension {n}")]
    NotEtaleDimension { m: usize, n: usize },
    #[error("the characteristic form vanishes at the given point")]
    NotPrehomogeneousAt(String),
    #[error("the orbit differential is singular at the given point")]
    NotEtaleAt(String),
    #[error("characteristic form would have {0} components, exceeding the guard {COMPONENT_GUARD}")]
    DimensionGuard(usize),
    #[error("characteristic cochain fails the cocycle identity")]
    NotACocycle,
    #[error("product table violates the left-symmetry identity")]
    NotLeftSymmetric,
}

/// The symbolic differential of the orbit map: an `n x m` grid of
/// degree-`<= 1` polynomials whose column `i` is `l(B_i) x + v_i`.
#[derive(Clone, Debug)]
pub struct OrbitDifferential {
    n: usize,
    m: usize,
    grid: Vec<Vec<Poly>>,
}

impl OrbitDifferential {
    pub fn new(r: &AffineRealization) -> Self {
        let n = r.ambient_dim();
        let m = r.dim();
        let mut grid = vec![vec![Polynomial::zero(n); m]; n];
        for j in 0..m {
            let lin = r.linear_part(j);
            let v = r.translation_part(j);
            for row in 0..n {
                let mut p = Polynomial::constant(n, v[row].clone());
                for k in 0..n {
                    if !lin[(row, k)].is_zero() {
                        p = &p + &Polynomial::var(n, k).scale(&lin[(row, k)]);
                    }
                }
                grid[row][j] = p;
            }
        }
        OrbitDifferential { n, m, grid }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn algebra_dim(&self) -> usize {
        self.m
    }

    pub fn grid(&self) -> &Vec<Vec<Poly>> {
        &self.grid
    }

    /// The literal `n x m` matrix `tau_x` at a rational point.
    pub fn eval(&self, x: &[Rat]) -> Mat {
        Matrix::from_fn(self.n, self.m, |i, j| self.grid[i][j].eval(x))
    }
}

/// The characteristic form: one polynomial per n-subset of the basis
/// index set (lexicographic order), the n-minors of the orbit
/// differential against the reference volume.
#[derive(Clone, Debug)]
pub struct CharacteristicForm {
    n: usize,
    m: usize,
    pub components: Vec<Poly>,
    pub index_sets: Vec<Vec<usize>>,
}

impl CharacteristicForm {
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn algebra_dim(&self) -> usize {
        self.m
    }

    pub fn is_identically_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// All component values at a point, as a degree-n cochain over the
    /// n-subset basis.
    pub fn at(&self, x: &[Rat]) -> Cochain {
        Cochain {
            degree: self.n,
            coeffs: self.components.iter().map(|p| p.eval(x)).collect(),
        }
    }

    pub fn nonzero_at(&self, x: &[Rat]) -> bool {
        self.components.iter().any(|p| !p.eval(x).is_zero())
    }
}

/// The relative invariant `delta(x) = det tau_x` of an etale realization.
#[derive(Clone, Debug)]
pub struct RelativeInvariant {
    pub delta: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitivityVerdict {
    Transitive,
    NotTransitive,
    NotApplicable,
}

/// Full analysis of one affine realization; every verdict names the
/// criterion that produced it.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub prehomogeneous: bool,
    pub witness: Option<Vec<Rat>>,
    pub delta: Option<Poly>,
    pub chi: InfinitesimalCharacter,
    /// Quotient character values on a normalizer basis at the witness.
    pub chi_gh: Option<Vec<(Vec<Rat>, Rat)>>,
    pub simply_transitive: Option<bool>,
    pub absolute_class_vanishes: Option<bool>,
    pub relative_class_vanishes: Option<bool>,
    pub transitivity: TransitivityVerdict,
    pub criterion: &'static str,
    pub centralizer_dim: usize,
    pub top_relative_cohomology_dim: Option<usize>,
}

/// `Phi(x) = tau_x^* (e^1 ^ ... ^ e^n)`: all `C(m, n)` minors, symbolic.
pub fn characteristic_map(r: &AffineRealization) -> Result<CharacteristicForm, PrehomogError> {
    let n = r.ambient_dim();
    let m = r.dim();
    let count = binomial(m, n);
    if count > COMPONENT_GUARD {
        return Err(PrehomogError::DimensionGuard(count));
    }
    let od = OrbitDifferential::new(r);
    let index_sets = subsets(m, n);
    let components = index_sets
        .iter()
        .map(|s| {
            let minor: Vec<Vec<Poly>> = (0..n)
                .map(|row| s.iter().map(|&j| od.grid[row][j].clone()).collect())
                .collect();
            poly_determinant(&minor)
        })
        .collect();
    Ok(CharacteristicForm {
        n,
        m,
        components,
        index_sets,
    })
}

/// Symbolic prehomogeneity test plus a deterministic witness search.
/// `m < n` is reported false without computing anything (no n-subsets).
pub fn is_prehomogeneous(r: &AffineRealization) -> Result<(bool, Option<Vec<Rat>>), PrehomogError> {
    is_prehomogeneous_seeded(r, 0)
}

pub fn is_prehomogeneous_seeded(
    r: &AffineRealization,
    seed: u64,
) -> Result<(bool, Option<Vec<Rat>>), PrehomogError> {
    if r.dim() < r.ambient_dim() {
        return Ok((false, None));
    }
    let cf = characteristic_map(r)?;
    if cf.is_identically_zero() {
        return Ok((false, None));
    }
    Ok((true, find_witness(&cf, seed)))
}

/// Search order: origin, standard basis points, all points with
/// coordinates in {1, -1, 2, -2, 1/2, -1/2}, then seeded random rationals
/// with denominator at most 8.
pub fn find_witness(cf: &CharacteristicForm, seed: u64) -> Option<Vec<Rat>> {
    let n = cf.n;
    let origin = vec![Rat::zero(); n];
    if cf.nonzero_at(&origin) {
        return Some(origin);
    }
    for i in 0..n {
        let p = basis_vec(n, i);
        if cf.nonzero_at(&p) {
            return Some(p);
        }
    }
    let small = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1), rat(1, 2), rat(-1, 2)];
    for p in (0..n).map(|_| small.iter().cloned()).multi_cartesian_product() {
        if cf.nonzero_at(&p) {
            return Some(p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_WITNESS_ATTEMPTS {
        let p: Vec<Rat> = (0..n)
            .map(|_| rat(rng.gen_range(-32..=32), rng.gen_range(1..=8)))
            .collect();
        if cf.nonzero_at(&p) {
            return Some(p);
        }
    }
    None
}

/// `delta(x) = det tau_x`, defined only in the etale case `m = n`.
pub fn relative_invariant(r: &AffineRealization) -> Result<RelativeInvariant, PrehomogError> {
    let (n, m) = (r.ambient_dim(), r.dim());
    if m != n {
        return Err(PrehomogError::NotEtaleDimension { m, n });
    }
    let od = OrbitDifferential::new(r);
    Ok(RelativeInvariant {
        delta: poly_determinant(&od.grid),
    })
}

/// `trace l(X)` as a functional on g.
pub fn trace_linear_character(r: &AffineRealization) -> InfinitesimalCharacter {
    InfinitesimalCharacter::new((0..r.dim()).map(|i| r.linear_part(i).trace()).collect())
}

/// The infinitesimal character `chi(X) = trace l(X) - trace ad(X)`.
pub fn char_chi(r: &AffineRealization) -> InfinitesimalCharacter {
    let g = r.algebra();
    InfinitesimalCharacter::new(
        (0..r.dim())
            .map(|i| r.linear_part(i).trace() - g.ad_basis(i).trace())
            .collect(),
    )
}

/// The quotient character at a base point: the stabilizer subalgebra
/// `h = ker tau_x`, its normalizer, and the values
/// `chi_{G/H}(X) = trace l(X) - trace ad_{g/h}(X)` on the normalizer basis.
pub struct QuotientCharacter {
    pub stabilizer: SubalgebraSpec,
    pub normalizer: SubalgebraSpec,
    pub values: Vec<(Vec<Rat>, Rat)>,
}

pub fn char_chi_gh(r: &AffineRealization, x: &[Rat]) -> QuotientCharacter {
    let g = r.algebra();
    let tau = OrbitDifferential::new(r).eval(x);
    let stabilizer = SubalgebraSpec::new(g, tau.kernel_basis())
        .expect("stabilizer at a point must be a subalgebra");
    let normalizer = g.normalizer(&stabilizer);
    let lin = trace_linear_character(r);
    let values = normalizer
        .basis
        .iter()
        .map(|v| {
            let val = lin.apply(v) - g.trace_ad_quotient(&stabilizer, v);
            (v.clone(), val)
        })
        .collect();
    QuotientCharacter {
        stabilizer,
        normalizer,
        values,
    }
}

/// Etale case: simply transitive iff `delta` is a nonzero constant; the
/// equivalence with `chi = 0` is cross-checked, not assumed.
pub fn is_simply_transitive_etale(r: &AffineRealization) -> Result<bool, PrehomogError> {
    let delta = relative_invariant(r)?.delta;
    let simply = delta.is_nonzero_constant();
    if !delta.is_zero() {
        // prehomogeneous etale: constant delta must coincide with chi = 0
        assert_eq!(
            simply,
            char_chi(r).is_zero(),
            "constant relative invariant must match vanishing character"
        );
    }
    Ok(simply)
}

/// Nilpotent criterion: a prehomogeneous action of a nilpotent algebra is
/// transitive iff it is infinitesimally volume preserving
/// (`trace l(B_i) = 0` for all i); transitivity is cross-checked against
/// unipotence of the realization.
pub fn decide_transitive_nilpotent(
    r: &AffineRealization,
) -> Result<TransitivityVerdict, PrehomogError> {
    if !r.algebra().is_nilpotent() {
        return Ok(TransitivityVerdict::NotApplicable);
    }
    let (prehomog, _) = is_prehomogeneous(r)?;
    if !prehomog {
        return Ok(TransitivityVerdict::NotApplicable);
    }
    let volume_preserving = (0..r.dim()).all(|i| r.linear_part(i).trace().is_zero());
    if volume_preserving {
        assert!(
            r.is_unipotent(),
            "volume-preserving prehomogeneous nilpotent realization must be unipotent"
        );
        Ok(TransitivityVerdict::Transitive)
    } else {
        Ok(TransitivityVerdict::NotTransitive)
    }
}

#[derive(Clone, Debug)]
pub struct ClassResult {
    pub vanishes: bool,
    pub representative: Cochain,
}

/// Assembles `Phi_x` as an n-cochain with the coefficient character
/// `lambda = trace l`, checks the cocycle identity, and decides whether
/// it bounds in the absolute complex. The base point is an open-orbit
/// witness when one exists, else the origin.
pub fn absolute_class(r: &AffineRealization) -> Result<ClassResult, PrehomogError> {
    let (_, witness) = is_prehomogeneous(r)?;
    let x = witness.unwrap_or_else(|| vec![Rat::zero(); r.ambient_dim()]);
    absolute_class_at(r, &x)
}

pub fn absolute_class_at(r: &AffineRealization, x: &[Rat]) -> Result<ClassResult, PrehomogError> {
    let cf = characteristic_map(r)?;
    let phi = cf.at(x);
    let g = r.algebra();
    let lambda = trace_linear_character(r);
    let d = boundary_matrix(g, &lambda, phi.degree);
    if !d.mul_vec(&phi.coeffs).iter().all(Zero::is_zero) {
        return Err(PrehomogError::NotACocycle);
    }
    let cx = RelativeComplex::new_unguarded(g, &SubalgebraSpec::zero(), &lambda);
    let vanishes = cx
        .is_coboundary(&phi, false)
        .expect("cocycle identity already checked");
    Ok(ClassResult {
        vanishes,
        representative: phi,
    })
}

/// The relative characteristic class at `x`, in the complex relative to
/// the stabilizer `h = ker tau_x`. When `Phi_x != 0` the verdict is
/// cross-checked against the top relative cohomology dimension.
pub fn relative_class(r: &AffineRealization, x: &[Rat]) -> Result<ClassResult, PrehomogError> {
    let cf = characteristic_map(r)?;
    let phi = cf.at(x);
    let g = r.algebra();
    let lambda = trace_linear_character(r);
    let d = boundary_matrix(g, &lambda, phi.degree);
    if !d.mul_vec(&phi.coeffs).iter().all(Zero::is_zero) {
        return Err(PrehomogError::NotACocycle);
    }
    let qc = char_chi_gh(r, x);
    let cx = RelativeComplex::new_unguarded(g, &qc.stabilizer, &lambda);
    let vanishes = cx
        .is_coboundary(&phi, true)
        .expect("cocycle identity already checked");
    if !phi.is_zero() {
        let top = cx.cohomology_dim(r.ambient_dim());
        assert_eq!(
            vanishes,
            top == 0,
            "relative class vanishing must agree with the top cohomology dimension"
        );
    }
    Ok(ClassResult {
        vanishes,
        representative: phi,
    })
}

/// The radiance obstruction cocycle `u(X_i) = v_i` (translation parts),
/// a 1-cochain with values in `R^n` twisted by the linear parts. The
/// cocycle identity `l(X) u(Y) - l(Y) u(X) - u([X, Y]) = 0` is asserted.
pub fn radiance_cocycle(r: &AffineRealization) -> Vec<Vec<Rat>> {
    let m = r.dim();
    let g = r.algebra();
    let u: Vec<Vec<Rat>> = (0..m).map(|i| r.translation_part(i)).collect();
    for i in 0..m {
        for j in 0..m {
            let mut lhs = r.linear_part(i).mul_vec(&u[j]);
            for (a, b) in lhs.iter_mut().zip(r.linear_part(j).mul_vec(&u[i])) {
                *a = a.clone() - b;
            }
            let br = g.bracket(&basis_vec(m, i), &basis_vec(m, j));
            for k in 0..m {
                if br[k].is_zero() {
                    continue;
                }
                for (a, b) in lhs.iter_mut().zip(&u[k]) {
                    *a = a.clone() - br[k].clone() * b.clone();
                }
            }
            assert!(
                lhs.iter().all(Zero::is_zero),
                "translation parts must form a cocycle"
            );
        }
    }
    u
}

/// `Lambda^n u` paired with the reference volume: the n-cochain whose
/// value on an n-subset is the determinant of the selected translation
/// parts. Equals the characteristic form evaluated at the origin.
pub fn radiance_top_power(r: &AffineRealization) -> Cochain {
    let n = r.ambient_dim();
    let u = radiance_cocycle(r);
    let coeffs = subsets(r.dim(), n)
        .iter()
        .map(|s| {
            Matrix::from_cols(&s.iter().map(|&j| u[j].clone()).collect::<Vec<_>>()).determinant()
        })
        .collect();
    Cochain { degree: n, coeffs }
}

/// Necessary condition for transitivity: the quotient character must
/// vanish on the normalizer of the stabilizer at `x`. `false` proves
/// non-transitivity; `true` is only necessary.
pub fn transitivity_necessary_check(
    r: &AffineRealization,
    x: &[Rat],
) -> Result<bool, PrehomogError> {
    let cf = characteristic_map(r)?;
    if !cf.nonzero_at(x) {
        return Err(PrehomogError::NotPrehomogeneousAt(format_point(x)));
    }
    Ok(char_chi_gh(r, x).values.iter().all(|(_, v)| v.is_zero()))
}

/// A left-symmetric algebra by its product table
/// `X_i * X_j = sum_k table[i][j][k] X_k`; left-symmetry is verified at
/// construction.
#[derive(Clone, Debug)]
pub struct LeftSymmetricAlgebra {
    pub dim: usize,
    pub table: Vec<Vec<Vec<Rat>>>,
}

impl LeftSymmetricAlgebra {
    pub fn new(dim: usize, table: Vec<Vec<Vec<Rat>>>) -> Result<Self, PrehomogError> {
        let lsa = LeftSymmetricAlgebra { dim, table };
        if !lsa.is_left_symmetric() {
            return Err(PrehomogError::NotLeftSymmetric);
        }
        Ok(lsa)
    }

    pub fn product(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
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
                    if !self.table[i][j][k].is_zero() {
                        out[k] = out[k].clone() + f.clone() * self.table[i][j][k].clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication `L_x`.
    pub fn left_mul(&self, x: &[Rat]) -> Mat {
        Matrix::from_cols(
            &(0..self.dim)
                .map(|j| self.product(x, &basis_vec(self.dim, j)))
                .collect::<Vec<_>>(),
        )
    }

    /// The associator `(x*y)*z - x*(y*z)` must be symmetric in `x, y`.
    fn is_left_symmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let ei = basis_vec(self.dim, i);
                    let ej = basis_vec(self.dim, j);
                    let ek = basis_vec(self.dim, k);
                    let a1 = self.associator(&ei, &ej, &ek);
                    let a2 = self.associator(&ej, &ei, &ek);
                    if a1 != a2 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn associator(&self, x: &[Rat], y: &[Rat], z: &[Rat]) -> Vec<Rat> {
        let mut out = self.product(&self.product(x, y), z);
        for (a, b) in out.iter_mut().zip(self.product(x, &self.product(y, z))) {
            *a = a.clone() - b;
        }
        out
    }

    /// The underlying Lie algebra of the commutator `x*y - y*x`.
    pub fn commutator_algebra(&self) -> AbstractLieAlgebra {
        let mut c = vec![vec![vec![Rat::zero(); self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ei = basis_vec(self.dim, i);
                let ej = basis_vec(self.dim, j);
                let mut br = self.product(&ei, &ej);
                for (a, b) in br.iter_mut().zip(self.product(&ej, &ei)) {
                    *a = a.clone() - b;
                }
                c[i][j] = br;
            }
        }
        AbstractLieAlgebra::new(self.dim, c).expect("commutator of an LSA is a Lie bracket")
    }
}

/// The left-symmetric product induced on g by an etale base point:
/// `X * Y = tau_x^{-1}( l(X) tau_x(Y) )`. Left-symmetry and the match of
/// the commutator with the bracket are verified, not assumed.
pub fn lsa_from_etale(
    r: &AffineRealization,
    x: &[Rat],
) -> Result<LeftSymmetricAlgebra, PrehomogError> {
    let (n, m) = (r.ambient_dim(), r.dim());
    if m != n {
        return Err(PrehomogError::NotEtaleDimension { m, n });
    }
    let tau = OrbitDifferential::new(r).eval(x);
    let tau_inv = tau
        .inverse()
        .ok_or_else(|| PrehomogError::NotEtaleAt(format_point(x)))?;
    let mut table = vec![vec![vec![Rat::zero(); m]; m]; m];
    for i in 0..m {
        // column j of tau is tau_x(B_j); the product matrix of B_i is
        // tau^{-1} l(B_i) tau
        let li = &(&tau_inv * &r.linear_part(i)) * &tau;
        for j in 0..m {
            table[i][j] = li.col(j);
        }
    }
    let lsa = LeftSymmetricAlgebra::new(m, table)?;
    let commutator = lsa.commutator_algebra();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                assert_eq!(
                    commutator.structure_constant(i, j, k),
                    r.algebra().structure_constant(i, j, k),
                    "LSA commutator must reproduce the Lie bracket"
                );
            }
        }
    }
    Ok(lsa)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Symmetric,
    Skew,
}

/// Infinitesimal invariance of a constant-coefficient bilinear form under
/// the realization: `l(B_i)^T B + B l(B_i) = 0` for all i (translations
/// preserve any parallel form automatically).
pub fn invariant_form_check(r: &AffineRealization, b: &Mat, kind: FormKind) -> bool {
    let n = r.ambient_dim();
    assert_eq!((b.rows(), b.cols()), (n, n));
    let bt = b.transpose();
    let shape_ok = match kind {
        FormKind::Symmetric => bt == *b,
        FormKind::Skew => bt == -b,
    };
    if !shape_ok {
        return false;
    }
    (0..r.dim()).all(|i| {
        let l = r.linear_part(i);
        (&(&l.transpose() * b) + &(b * &l)).is_zero()
    })
}

/// Runs the whole pipeline on one realization.
pub fn analyze(r: &AffineRealization, seed: u64) -> Result<AnalysisReport, PrehomogError> {
    let n = r.ambient_dim();
    let m = r.dim();
    let g = r.algebra();
    let (prehomogeneous, witness) = is_prehomogeneous_seeded(r, seed)?;
    let delta = if m == n {
        Some(relative_invariant(r)?.delta)
    } else {
        None
    };
    let chi = char_chi(r);
    let simply_transitive = if m == n {
        Some(is_simply_transitive_etale(r)?)
    } else {
        None
    };
    let (chi_gh, relative_class_vanishes, top_dim) = match &witness {
        Some(x) => {
            let qc = char_chi_gh(r, x);
            let lambda = trace_linear_character(r);
            let cx = RelativeComplex::new_unguarded(g, &qc.stabilizer, &lambda);
            let rel = relative_class(r, x)?;
            (
                Some(qc.values),
                Some(rel.vanishes),
                Some(cx.cohomology_dim(n)),
            )
        }
        None => (None, None, None),
    };
    let absolute_class_vanishes = if m <= crate::koszul::DEGREE_GUARD {
        Some(absolute_class(r)?.vanishes)
    } else {
        None
    };
    let (transitivity, criterion) = if !prehomogeneous {
        (TransitivityVerdict::NotTransitive, "no open orbit")
    } else if g.is_nilpotent() {
        (
            decide_transitive_nilpotent(r)?,
            "volume criterion for nilpotent algebras",
        )
    } else if simply_transitive == Some(true) {
        (
            TransitivityVerdict::Transitive,
            "constant nonzero relative invariant",
        )
    } else if let Some(x) = &witness {
        if !transitivity_necessary_check(r, x)? {
            (
                TransitivityVerdict::NotTransitive,
                "quotient character obstruction on the normalizer",
            )
        } else {
            (TransitivityVerdict::NotApplicable, "no applicable criterion")
        }
    } else {
        (TransitivityVerdict::NotApplicable, "no applicable criterion")
    };
    Ok(AnalysisReport {
        prehomogeneous,
        witness,
        delta,
        chi,
        chi_gh,
        simply_transitive,
        absolute_class_vanishes,
        relative_class_vanishes,
        transitivity,
        criterion,
        centralizer_dim: r.centralizer_in_aff().len(),
        top_relative_cohomology_dim: top_dim,
    })
}

fn format_point(x: &[Rat]) -> String {
    format!("({})", x.iter().map(|v| v.to_string()).join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;
    use num_traits::One;

    fn e(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Matrix::zeros(n, n);
        m[(i - 1, j - 1)] = Rat::one();
        m
    }

    fn translations(n: usize) -> AffineRealization {
        let basis = (1..=n).map(|i| e(n + 1, i, n + 1)).collect();
        AffineRealization::from_matrices(n, basis).unwrap()
    }

    fn gh_realization() -> AffineRealization {
        let s = e(4, 1, 4);
        let t = &e(4, 1, 2) + &e(4, 2, 4);
        let u = &e(4, 2, 3) + &e(4, 3, 4);
        let v = e(4, 1, 3);
        AffineRealization::from_matrices(3, vec![s, t, u, v]).unwrap()
    }

    fn family_b() -> AffineRealization {
        AffineRealization::from_matrices(2, vec![e(3, 1, 1), e(3, 2, 3)]).unwrap()
    }

    fn family_e() -> AffineRealization {
        let x1 = &e(3, 1, 1) + &e(3, 2, 2);
        let x2 = &e(3, 1, 2) - &e(3, 2, 1);
        AffineRealization::from_matrices(2, vec![x1, x2]).unwrap()
    }

    #[test]
    fn translations_characteristic_form() {
        let r = translations(3);
        let cf = characteristic_map(&r).unwrap();
        assert_eq!(cf.components.len(), 1);
        assert!(cf.components[0].is_nonzero_constant());
        let (p, w) = is_prehomogeneous(&r).unwrap();
        assert!(p);
        assert_eq!(w.unwrap(), vec![Rat::zero(); 3]);
        assert!(is_simply_transitive_etale(&r).unwrap());
        assert_eq!(
            decide_transitive_nilpotent(&r).unwrap(),
            TransitivityVerdict::Transitive
        );
    }

    #[test]
    fn rotation_generator_too_small() {
        let rot = &e(3, 1, 2) - &e(3, 2, 1);
        let r = AffineRealization::from_matrices(2, vec![rot]).unwrap();
        let (p, w) = is_prehomogeneous(&r).unwrap();
        assert!(!p);
        assert!(w.is_none());
    }

    #[test]
    fn gh_characteristic_form_at_origin() {
        let r = gh_realization();
        let cf = characteristic_map(&r).unwrap();
        assert_eq!(cf.components.len(), 4);
        let phi0 = cf.at(&[Rat::zero(), Rat::zero(), Rat::zero()]);
        // subsets of {S,T,U,V}: {0,1,2} is the S,T,U minor
        assert_eq!(phi0.coeffs[0], rint(1));
        for (s, c) in cf.index_sets.iter().zip(&phi0.coeffs) {
            if s.contains(&3) {
                assert!(c.is_zero(), "components with the V column vanish at 0");
            }
        }
    }

    #[test]
    fn gh_transitive_and_classes() {
        let r = gh_realization();
        assert_eq!(
            decide_transitive_nilpotent(&r).unwrap(),
            TransitivityVerdict::Transitive
        );
        let abs = absolute_class(&r).unwrap();
        assert!(abs.vanishes);
        let rel = relative_class(&r, &[Rat::zero(), Rat::zero(), Rat::zero()]).unwrap();
        assert!(!rel.vanishes);
        assert!(transitivity_necessary_check(&r, &[Rat::zero(), Rat::zero(), Rat::zero()]).unwrap());
    }

    #[test]
    fn family_b_delta_and_character() {
        let r = family_b();
        let delta = relative_invariant(&r).unwrap().delta;
        assert_eq!(delta, Poly::var(2, 0));
        assert!(!is_simply_transitive_etale(&r).unwrap());
        let chi = char_chi(&r);
        assert_eq!(chi.coeffs, vec![rint(1), rint(0)]);
        // nilpotent (abelian), prehomogeneous, trace 1 -> not transitive
        assert_eq!(
            decide_transitive_nilpotent(&r).unwrap(),
            TransitivityVerdict::NotTransitive
        );
        let x = vec![rint(1), rint(0)];
        assert!(!transitivity_necessary_check(&r, &x).unwrap());
        let rel = relative_class(&r, &x).unwrap();
        assert!(rel.vanishes);
    }

    #[test]
    fn family_e_pipeline() {
        let r = family_e();
        let delta = relative_invariant(&r).unwrap().delta;
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!(delta, -&(&(&x * &x) + &(&y * &y)));
        assert!(!is_simply_transitive_etale(&r).unwrap());
        let report = analyze(&r, 0).unwrap();
        assert!(report.prehomogeneous);
        assert_eq!(report.simply_transitive, Some(false));
        // purely linear: zero radiance cocycle
        let u = radiance_cocycle(&r);
        assert!(u.iter().flatten().all(Zero::is_zero));
        assert!(radiance_top_power(&r).is_zero());
    }

    #[test]
    fn radiance_matches_characteristic_form_at_origin() {
        for r in [translations(2), gh_realization(), family_b()] {
            let top = radiance_top_power(&r);
            let cf = characteristic_map(&r).unwrap();
            let phi0 = cf.at(&vec![Rat::zero(); r.ambient_dim()]);
            assert_eq!(top, phi0);
        }
    }

    #[test]
    fn lsa_from_shear_family() {
        // X1 = E13, X2 = E12 + E23 in aff(2): X2 * X2 = X1
        let x1 = e(3, 1, 3);
        let x2 = &e(3, 1, 2) + &e(3, 2, 3);
        let r = AffineRealization::from_matrices(2, vec![x1, x2]).unwrap();
        let delta = relative_invariant(&r).unwrap().delta;
        assert!(delta.is_nonzero_constant());
        let lsa = lsa_from_etale(&r, &[Rat::zero(), Rat::zero()]).unwrap();
        assert_eq!(lsa.table[1][1], vec![rint(1), rint(0)]);
        // translations: zero product
        let t = translations(2);
        let triv = lsa_from_etale(&t, &[Rat::zero(), Rat::zero()]).unwrap();
        assert!(triv.table.iter().flatten().flatten().all(Zero::is_zero));
    }

    #[test]
    fn lsa_requires_etale_point() {
        let r = family_b();
        // delta = x vanishes at the origin
        let err = lsa_from_etale(&r, &[Rat::zero(), Rat::zero()]).unwrap_err();
        assert!(matches!(err, PrehomogError::NotEtaleAt(_)));
        let rot = &e(3, 1, 2) - &e(3, 2, 1);
        let small = AffineRealization::from_matrices(2, vec![rot]).unwrap();
        let err = lsa_from_etale(&small, &[Rat::zero(), Rat::zero()]).unwrap_err();
        assert!(matches!(err, PrehomogError::NotEtaleDimension { .. }));
    }

    #[test]
    fn invariant_forms_of_rotation_family() {
        let r = family_e();
        // rotations preserve the euclidean form but X1 = identity scales it
        let id = Matrix::identity(2);
        assert!(!invariant_form_check(&r, &id, FormKind::Symmetric));
        let rot_only =
            AffineRealization::from_matrices(2, vec![&e(3, 1, 2) - &e(3, 2, 1)]).unwrap();
        assert!(invariant_form_check(&rot_only, &id, FormKind::Symmetric));
        let omega = &e(2, 1, 2) - &e(2, 2, 1);
        assert!(invariant_form_check(&rot_only, &omega, FormKind::Skew));
        // kind mismatch is rejected
        assert!(!invariant_form_check(&rot_only, &omega, FormKind::Symmetric));
    }

    #[test]
    fn translations_absolute_class_nonzero() {
        let r = translations(2);
        let abs = absolute_class(&r).unwrap();
        assert!(!abs.vanishes);
        assert!(!abs.representative.is_zero());
    }

    #[test]
    fn analyze_family_b() {
        let report = analyze(&family_b(), 0).unwrap();
        assert!(report.prehomogeneous);
        assert_eq!(report.transitivity, TransitivityVerdict::NotTransitive);
        assert_eq!(report.simply_transitive, Some(false));
        assert_eq!(report.relative_class_vanishes, Some(true));
        assert_eq!(report.top_relative_cohomology_dim, Some(0));
    }

    #[test]
    fn analyze_gh() {
        let report = analyze(&gh_realization(), 0).unwrap();
        assert!(report.prehomogeneous);
        assert_eq!(report.transitivity, TransitivityVerdict::Transitive);
        assert_eq!(report.absolute_class_vanishes, Some(true));
        assert_eq!(report.relative_class_vanishes, Some(false));
        assert_eq!(report.top_relative_cohomology_dim, Some(1));
    }
}
