//! Matrix model of su(2,m): Cartan involution, bracket, Killing form, the
//! Cartan decomposition g = k ⊕ p and the Riemannian metric on p.
//!
//! Tangent vectors at the base point are stored as their 2×m block `C`, the
//! element of p being `[[0, C], [C*, 0]]`. The metric is normalized as
//! `g(X, Y) = −½ Re tr(X θY) = Re tr(C D*)`, which makes the real and
//! imaginary parts of the block entries an orthonormal coordinate system.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{orthonormalize, ComplexMatrix, VectorSpace, C64};

/// The rank parameter `m ≥ 2` of SU(2,m)/S(U2 Um).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrassmannParameter(usize);

impl GrassmannParameter {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(m));
        }
        Ok(Self(m))
    }

    pub fn m(self) -> usize {
        self.0
    }

    /// Size `m + 2` of the matrices in g.
    pub fn size(self) -> usize {
        self.0 + 2
    }

    pub fn dim_g(self) -> usize {
        self.size() * self.size() - 1
    }

    pub fn dim_p(self) -> usize {
        4 * self.0
    }

    pub fn dim_k(self) -> usize {
        self.dim_g() - self.dim_p()
    }
}

/// An element of su(2,m) as an `(m+2)×(m+2)` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement(ComplexMatrix);

impl AlgebraElement {
    /// Wraps a matrix after checking `X* I₂ₘ + I₂ₘ X = 0` and `tr X = 0`.
    pub fn new(matrix: ComplexMatrix, eps_resid: f64) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() < 4 {
            return Err(Error::DimensionMismatch {
                expected: "(m+2)x(m+2) with m >= 2".into(),
                found: format!("{}x{}", matrix.rows(), matrix.cols()),
            });
        }
        let x = Self(matrix);
        let residual = x.membership_residual();
        if residual > eps_resid * x.0.max_abs().max(1.0) {
            return Err(Error::DimensionMismatch {
                expected: "element of su(2,m)".into(),
                found: format!("membership residual {residual:.3e}"),
            });
        }
        Ok(x)
    }

    pub fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self(matrix)
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    /// Max of `‖X* I₂ₘ + I₂ₘ X‖` and `|tr X|`.
    pub fn membership_residual(&self) -> f64 {
        let n = self.size();
        let mut r: f64 = self.0.trace().norm();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.0[(j, i)].conj() * sign(j) + sign(i) * self.0[(i, j)];
                r = r.max(lhs.norm());
            }
        }
        r
    }

    pub fn norm(&self) -> f64 {
        inner(self, self).max(0.0).sqrt()
    }
}

fn sign(i: usize) -> f64 {
    if i < 2 {
        -1.0
    } else {
        1.0
    }
}

impl VectorSpace for AlgebraElement {
    fn zero_like(&self) -> Self {
        Self::zeros(self.size())
    }

    fn axpy(&mut self, alpha: f64, x: &Self) {
        self.0.axpy(alpha, &x.0);
    }

    fn scale(&mut self, alpha: f64) {
        VectorSpace::scale(&mut self.0, alpha);
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(&self.0 + &rhs.0)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(&self.0 - &rhs.0)
    }
}

/// A tangent vector at the base point, stored as the 2×m block of its
/// element of p.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    block: ComplexMatrix,
}

impl TangentVector {
    pub fn from_block(block: ComplexMatrix) -> Result<Self> {
        if block.rows() != 2 || block.cols() < 2 {
            return Err(Error::DimensionMismatch {
                expected: "2xm block with m >= 2".into(),
                found: format!("{}x{}", block.rows(), block.cols()),
            });
        }
        Ok(Self { block })
    }

    pub fn zero(m: usize) -> Self {
        Self {
            block: ComplexMatrix::zeros(2, m),
        }
    }

    /// Vector with a single entry `z` at block position `(row, col)`.
    pub fn elementary(m: usize, row: usize, col: usize, z: C64) -> Self {
        let mut v = Self::zero(m);
        v.block[(row, col)] = z;
        v
    }

    pub fn m(&self) -> usize {
        self.block.cols()
    }

    pub fn block(&self) -> &ComplexMatrix {
        &self.block
    }

    /// Real coordinates `(Re C₀₀, Im C₀₀, Re C₀₁, …)`, orthonormal for g.
    pub fn coords(&self) -> Vec<f64> {
        self.block.as_slice().iter().flat_map(|z| [z.re, z.im]).collect()
    }

    pub fn from_coords(m: usize, coords: &[f64]) -> Self {
        assert_eq!(coords.len(), 4 * m, "expected 4m coordinates");
        Self {
            block: ComplexMatrix::from_fn(2, m, |i, j| {
                let k = 2 * (i * m + j);
                C64::new(coords[k], coords[k + 1])
            }),
        }
    }

    /// Left multiplication of the block by a 2×2 matrix.
    pub fn left_mul(&self, q: &ComplexMatrix) -> Self {
        Self { block: q * &self.block }
    }

    pub fn mul_complex(&self, z: C64) -> Self {
        Self {
            block: self.block.scale_complex(z),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            block: self.block.scale(s),
        }
    }

    pub fn norm(&self) -> f64 {
        self.block.frobenius_norm()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(1.0 / n))
    }
}

impl VectorSpace for TangentVector {
    fn zero_like(&self) -> Self {
        Self::zero(self.m())
    }

    fn axpy(&mut self, alpha: f64, x: &Self) {
        self.block.axpy(alpha, &x.block);
    }

    fn scale(&mut self, alpha: f64) {
        VectorSpace::scale(&mut self.block, alpha);
    }
}

impl Add for &TangentVector {
    type Output = TangentVector;

    fn add(self, rhs: &TangentVector) -> TangentVector {
        TangentVector {
            block: &self.block + &rhs.block,
        }
    }
}

impl Sub for &TangentVector {
    type Output = TangentVector;

    fn sub(self, rhs: &TangentVector) -> TangentVector {
        TangentVector {
            block: &self.block - &rhs.block,
        }
    }
}

impl Neg for &TangentVector {
    type Output = TangentVector;

    fn neg(self) -> TangentVector {
        TangentVector { block: -&self.block }
    }
}

/// `θ(X) = I₂ₘ X I₂ₘ`: negates the off-diagonal blocks.
pub fn theta(x: &AlgebraElement) -> AlgebraElement {
    let n = x.size();
    AlgebraElement(ComplexMatrix::from_fn(n, n, |i, j| x.0[(i, j)] * sign(i) * sign(j)))
}

pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if x.size() != y.size() {
        return Err(Error::DimensionMismatch {
            expected: format!("{0}x{0}", x.size()),
            found: format!("{0}x{0}", y.size()),
        });
    }
    Ok(AlgebraElement(x.0.commutator(&y.0)))
}

/// Killing form `B(X, Y) = 2(m+2) Re tr(XY)` of su(2,m).
pub fn killing_form(x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    2.0 * x.size() as f64 * x.0.trace_of_product(&y.0).re
}

/// Positive definite product `−½ Re tr(X θY)` on all of g; restricts to the
/// metric on p.
pub fn inner(x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    -0.5 * x.0.trace_of_product(&theta(y).0).re
}

/// Riemannian metric `g(X, Y) = Re tr(C D*)` on p.
pub fn metric(x: &TangentVector, y: &TangentVector) -> f64 {
    x.block
        .as_slice()
        .iter()
        .zip(y.block.as_slice())
        .map(|(a, b)| (a * b.conj()).re)
        .sum()
}

/// Splits `X` into `((X + θX)/2, (X − θX)/2) ∈ k × p`.
pub fn cartan_split(x: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
    let t = theta(x);
    let mut k = x + &t;
    VectorSpace::scale(&mut k, 0.5);
    let mut p = x - &t;
    VectorSpace::scale(&mut p, 0.5);
    (k, p)
}

/// `C ↦ [[0, C], [C*, 0]]`.
pub fn embed_block(v: &TangentVector) -> AlgebraElement {
    let m = v.m();
    let mut x = ComplexMatrix::zeros(m + 2, m + 2);
    x.set_block(0, 2, &v.block);
    x.set_block(2, 0, &v.block.adjoint());
    AlgebraElement(x)
}

/// Inverse of [`embed_block`]; fails if `X` has a k-part above `eps_resid`.
pub fn block_of(x: &AlgebraElement, eps_resid: f64) -> Result<TangentVector> {
    let (k, p) = cartan_split(x);
    let residual = k.0.max_abs();
    if residual > eps_resid * x.0.max_abs().max(1.0) {
        return Err(Error::NotInP { residual });
    }
    let m = x.size() - 2;
    Ok(TangentVector {
        block: p.0.block(0, 2, 2, m),
    })
}

/// Orthonormal bases of k and p for the product [`inner`].
#[derive(Debug, Clone)]
pub struct CartanDecomposition {
    pub k_basis: Vec<AlgebraElement>,
    pub p_basis: Vec<TangentVector>,
}

impl CartanDecomposition {
    pub fn new(param: GrassmannParameter, eps_rank: f64) -> Self {
        let n = param.size();
        let m = param.m();
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);

        let mut k_candidates = Vec::new();
        let in_same_block = |a: usize, b: usize| (a < 2) == (b < 2);
        for a in 0..n {
            for b in a + 1..n {
                if !in_same_block(a, b) {
                    continue;
                }
                let mut re = ComplexMatrix::zeros(n, n);
                re[(a, b)] = one;
                re[(b, a)] = -one;
                k_candidates.push(AlgebraElement(re));
                let mut im = ComplexMatrix::zeros(n, n);
                im[(a, b)] = i;
                im[(b, a)] = i;
                k_candidates.push(AlgebraElement(im));
            }
        }
        for a in 0..n - 1 {
            let mut d = ComplexMatrix::zeros(n, n);
            d[(a, a)] = i;
            d[(a + 1, a + 1)] = -i;
            k_candidates.push(AlgebraElement(d));
        }
        let k_basis = orthonormalize(&k_candidates, inner, eps_rank);

        let p_basis = (0..4 * m)
            .map(|idx| {
                let mut c = vec![0.0; 4 * m];
                c[idx] = 1.0;
                TangentVector::from_coords(m, &c)
            })
            .collect();
        Self { k_basis, p_basis }
    }

    /// Basis of g: the k-basis followed by the embedded p-basis.
    pub fn g_basis(&self) -> Vec<AlgebraElement> {
        self.k_basis
            .iter()
            .cloned()
            .chain(self.p_basis.iter().map(embed_block))
            .collect()
    }

    /// Largest violation of `[k,k] ⊆ k`, `[k,p] ⊆ p`, `[p,p] ⊆ k` over all
    /// pairs of basis elements.
    pub fn bracket_relations_residual(&self) -> f64 {
        let p: Vec<AlgebraElement> = self.p_basis.iter().map(embed_block).collect();
        let part_norm = |x: &AlgebraElement, want_k: bool| {
            let (k, p) = cartan_split(x);
            if want_k {
                p.0.max_abs()
            } else {
                k.0.max_abs()
            }
        };
        let mut r: f64 = 0.0;
        for a in &self.k_basis {
            for b in &self.k_basis {
                r = r.max(part_norm(&AlgebraElement(a.0.commutator(&b.0)), true));
            }
            for b in &p {
                r = r.max(part_norm(&AlgebraElement(a.0.commutator(&b.0)), false));
            }
        }
        for a in &p {
            for b in &p {
                r = r.max(part_norm(&AlgebraElement(a.0.commutator(&b.0)), true));
            }
        }
        r
    }
}
