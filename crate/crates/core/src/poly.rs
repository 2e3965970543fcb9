//! Sparse multivariate polynomials over an exact field, with a fixed
//! graded-lexicographic term order for canonical equality and printing.
//!
//! Symbolic determinants are expanded by minors with an explicit size
//! guard; polynomial Gaussian elimination is avoided because of
//! coefficient blow-up.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::scalar::Field;

/// Largest polynomial-matrix size accepted by [`poly_determinant`].
pub const POLY_DET_SIZE_GUARD: usize = 8;

/// Exponent vector, ordered graded-lexicographically (total degree first).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial in `n_vars` variables. No zero coefficients
/// are ever stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<F> {
    n_vars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: F) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; n_vars]), c);
        }
        p
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars);
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        let mut p = Self::zero(n_vars);
        p.terms.insert(Monomial(exps), F::one());
        p
    }

    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, F)>) -> Self {
        let mut p = Self::zero(n_vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), n_vars);
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Nonzero constant polynomial?
    pub fn is_nonzero_constant(&self) -> bool {
        self.is_constant() && !self.is_zero()
    }

    pub fn constant_part(&self) -> F {
        self.terms
            .get(&Monomial(vec![0; self.n_vars]))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.n_vars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes a polynomial for each variable (composition). All
    /// images must share one variable count, which the result uses.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.n_vars);
        let out_vars = images.first().map_or(self.n_vars, Self::n_vars);
        let mut acc = Self::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(out_vars, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * img;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// `self == c * other` for some nonzero scalar `c`?
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (m, a) = self.terms.iter().next_back().unwrap();
        let Some(b) = other.terms.get(m) else {
            return false;
        };
        let c = a.clone() / b.clone();
        *self == other.scale(&c)
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        assert_eq!(self.n_vars, rhs.n_vars);
        let mut out = Polynomial::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let exps: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // descending graded-lex
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Exact symbolic determinant of a square grid of polynomials, by
/// expansion along the first column. Guarded at [`POLY_DET_SIZE_GUARD`].
pub fn poly_determinant<F: Field>(grid: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = grid.len();
    assert!(grid.iter().all(|r| r.len() == n), "non-square grid");
    assert!(
        n <= POLY_DET_SIZE_GUARD,
        "polynomial determinant size {n} exceeds guard {POLY_DET_SIZE_GUARD}"
    );
    let n_vars = grid
        .first()
        .and_then(|r| r.first())
        .map_or(0, Polynomial::n_vars);
    det_minors(grid, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>(), n_vars)
}

fn det_minors<F: Field>(
    grid: &[Vec<Polynomial<F>>],
    rows: &[usize],
    cols: &[usize],
    n_vars: usize,
) -> Polynomial<F> {
    match rows.len() {
        0 => Polynomial::constant(n_vars, F::one()),
        1 => grid[rows[0]][cols[0]].clone(),
        _ => {
            let mut acc = Polynomial::zero(n_vars);
            let sub_cols: Vec<usize> = cols[1..].to_vec();
            for (k, &r) in rows.iter().enumerate() {
                let entry = &grid[r][cols[0]];
                if entry.is_zero() {
                    continue;
                }
                let sub_rows: Vec<usize> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != k)
                    .map(|(_, &x)| x)
                    .collect();
                let minor = det_minors(grid, &sub_rows, &sub_cols, n_vars);
                let term = entry * &minor;
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, Rat};

    type P = Polynomial<Rat>;

    #[test]
    fn det_rotation_grid() {
        // [[x, y], [y, -x]] -> -x^2 - y^2
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let d = poly_determinant(&[vec![x.clone(), y.clone()], vec![y.clone(), -&x]]);
        let expect = &(-&(&x * &x)) - &(&y * &y);
        assert_eq!(d, expect);
        assert_eq!(d.to_string(), "-x1^2 - x2^2");
    }

    #[test]
    fn det_identity_and_diagonal() {
        let one = P::constant(2, rint(1));
        let zero = P::zero(2);
        let id = poly_determinant(&[vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]);
        assert_eq!(id, one);
        let x = P::var(2, 0);
        let d = poly_determinant(&[vec![x.clone(), zero.clone()], vec![zero, one]]);
        assert_eq!(d, x);
    }

    #[test]
    fn graded_lex_display() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = &(&(&y * &y) + &x) + &P::constant(2, rint(3));
        assert_eq!(p.to_string(), "x2^2 + x1 + 3");
    }

    #[test]
    fn proportionality() {
        let x = P::var(1, 0);
        assert!(x.scale(&rint(3)).proportional_to(&x));
        assert!(!x.proportional_to(&P::constant(1, rint(1))));
        assert!(P::zero(1).proportional_to(&P::zero(1)));
    }
}
